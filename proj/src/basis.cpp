#include <ddr/basis.hpp>

#include <Eigen/Cholesky>

#include <cmath>

namespace ddr
{

  MatrixXd Frame::local_coords(const Eigen::Matrix<double, Eigen::Dynamic, 3> & pts) const
  {
    MatrixXd out(pts.rows(), nvar);
    for (int i = 0; i < pts.rows(); i++) {
      Vector3d d = pts.row(i).transpose() - origin;
      for (int j = 0; j < nvar; j++) out(i, j) = axes.col(j).dot(d) / scale;
    }
    return out;
  }

  Frame cell_frame(const Mesh & mesh, int iT)
  {
    const Cell & T = mesh.cell(iT);
    return Frame{T.center, Matrix3d::Identity(), T.diameter, 3};
  }

  Frame face_frame(const Mesh & mesh, int iF)
  {
    const Face & F = mesh.face(iF);
    Matrix3d axes;
    axes.col(0) = F.tangent1;
    axes.col(1) = F.tangent2;
    axes.col(2) = F.normal;
    return Frame{F.center, axes, F.diameter, 2};
  }

  Frame edge_frame(const Mesh & mesh, int iE)
  {
    const Edge & E = mesh.edge(iE);
    Matrix3d axes;
    axes.col(0) = E.tangent;
    axes.col(1) = E.normal1;
    axes.col(2) = E.normal2;
    return Frame{E.midpoint, axes, 0.5 * E.length, 1};
  }

  Frame entity_frame(const Mesh & mesh, EntityRef ent)
  {
    switch (ent.kind) {
    case EntityKind::Cell: return cell_frame(mesh, ent.index);
    case EntityKind::Face: return face_frame(mesh, ent.index);
    default: return edge_frame(mesh, ent.index);
    }
  }

  std::vector<MatrixXd> evaluate(const PolyBasis & basis,
                                 const Eigen::Matrix<double, Eigen::Dynamic, 3> & pts)
  {
    MatrixXd local = basis.frame.local_coords(pts);
    MatrixXd phi = monomial_values(basis.frame.nvar, basis.degree, local);
    std::vector<MatrixXd> vals(basis.ncomp);
    for (int c = 0; c < basis.ncomp; c++) vals[c] = basis.comp_block(c) * phi;
    return vals;
  }

  MatrixXd gram_matrix(const PolyBasis & a, const PolyBasis & b, const QuadratureRule & quad)
  {
    if (a.ncomp != b.ncomp) throw InvalidArgument("gram_matrix: component mismatch");
    auto va = evaluate(a, quad.points);
    auto vb = evaluate(b, quad.points);
    MatrixXd G = MatrixXd::Zero(a.size(), b.size());
    for (int c = 0; c < a.ncomp; c++) {
      G += va[c] * quad.weights.asDiagonal() * vb[c].transpose();
    }
    return G;
  }

  VectorXd integrate_against(const PolyBasis & basis, const QuadratureRule & quad,
                             const MatrixXd & fvals)
  {
    if (fvals.rows() != basis.ncomp) throw InvalidArgument("integrate_against: component mismatch");
    auto vb = evaluate(basis, quad.points);
    VectorXd out = VectorXd::Zero(basis.size());
    for (int c = 0; c < basis.ncomp; c++) {
      out += vb[c] * quad.weights.cwiseProduct(fvals.row(c).transpose());
    }
    return out;
  }

  void orthonormalize(PolyBasis & basis, const QuadratureRule & quad)
  {
    for (int pass = 0; pass < 2; pass++) {
      MatrixXd G = gram_matrix(basis, basis, quad);
      Eigen::LLT<MatrixXd> llt(G);
      if (llt.info() != Eigen::Success) {
        throw DimensionMismatch("orthonormalize: Gram matrix is not positive definite");
      }
      basis.coeff = llt.matrixL().solve(basis.coeff);
    }
  }

  //------------------------------------------------------------------------------
  // Full spaces
  //------------------------------------------------------------------------------

  PolyBasis scalar_basis(const Mesh & mesh, EntityRef ent, int ell)
  {
    PolyBasis b;
    b.entity = ent;
    b.frame = entity_frame(mesh, ent);
    b.codomain = Codomain::Scalar;
    b.ncomp = 1;
    b.degree = ell;
    b.coeff = MatrixXd::Identity(poly_dim(b.frame.nvar, ell), poly_dim(b.frame.nvar, ell));
    orthonormalize(b, entity_quadrature(mesh, ent, 2 * ell));
    return b;
  }

  const std::vector<Matrix2d> & sym2_components()
  {
    static const std::vector<Matrix2d> comps = [] {
      std::vector<Matrix2d> c(3, Matrix2d::Zero());
      c[0](0, 0) = 1.;
      c[1](0, 1) = c[1](1, 0) = 1. / std::sqrt(2.);
      c[2](1, 1) = 1.;
      return c;
    }();
    return comps;
  }

  const std::vector<Matrix3d> & sym3_components()
  {
    static const std::vector<Matrix3d> comps = [] {
      std::vector<Matrix3d> c(6, Matrix3d::Zero());
      c[0](0, 0) = 1.;
      c[1](1, 1) = 1.;
      c[2](2, 2) = 1.;
      c[3](0, 1) = c[3](1, 0) = 1. / std::sqrt(2.);
      c[4](0, 2) = c[4](2, 0) = 1. / std::sqrt(2.);
      c[5](1, 2) = c[5](2, 1) = 1. / std::sqrt(2.);
      return c;
    }();
    return comps;
  }

  const std::vector<Matrix3d> & traceless3_components()
  {
    static const std::vector<Matrix3d> comps = [] {
      std::vector<Matrix3d> c(8, Matrix3d::Zero());
      c[0](0, 0) = 1. / std::sqrt(2.);
      c[0](1, 1) = -1. / std::sqrt(2.);
      c[1](0, 0) = c[1](1, 1) = 1. / std::sqrt(6.);
      c[1](2, 2) = -2. / std::sqrt(6.);
      int idx = 2;
      for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
          if (i != j) c[idx++](i, j) = 1.;
        }
      }
      return c;
    }();
    return comps;
  }

  PolyBasis tensor_basis(const Mesh & mesh, EntityRef ent, int ell, Codomain storage, TensorSub sub)
  {
    PolyBasis scalar = scalar_basis(mesh, ent, ell);
    int nmono = scalar.nmono();
    int nscalar = scalar.size();
    int ncomp = codomain_components(storage);

    // orthonormal component vectors in the storage layout
    std::vector<VectorXd> units;
    if (sub == TensorSub::Full) {
      for (int c = 0; c < ncomp; c++) units.push_back(VectorXd::Unit(ncomp, c));
    } else if (storage == Codomain::Mat2) {
      for (const auto & M : sym2_components()) {
        VectorXd u(4);
        u << M(0, 0), M(0, 1), M(1, 0), M(1, 1);
        units.push_back(u);
      }
    } else {
      const auto & comps = (sub == TensorSub::Sym) ? sym3_components() : traceless3_components();
      for (const auto & M : comps) {
        VectorXd u(9);
        for (int i = 0; i < 3; i++)
          for (int j = 0; j < 3; j++) u(3 * i + j) = M(i, j);
        units.push_back(u);
      }
    }

    PolyBasis b;
    b.entity = ent;
    b.frame = scalar.frame;
    b.codomain = storage;
    b.ncomp = ncomp;
    b.degree = ell;
    b.coeff = MatrixXd::Zero(units.size() * nscalar, ncomp * nmono);
    for (size_t u = 0; u < units.size(); u++) {
      for (int c = 0; c < ncomp; c++) {
        if (units[u](c) == 0.) continue;
        b.coeff.block(u * nscalar, c * nmono, nscalar, nmono) = units[u](c) * scalar.coeff;
      }
    }
    return b;
  }

  //------------------------------------------------------------------------------
  // Coefficient calculus
  //------------------------------------------------------------------------------

  namespace
  {
    PolyBasis like(const PolyBasis & src, Codomain codomain, int degree, int nbasis)
    {
      PolyBasis out;
      out.entity = src.entity;
      out.frame = src.frame;
      out.codomain = codomain;
      out.ncomp = codomain_components(codomain);
      out.degree = degree;
      out.coeff = MatrixXd::Zero(nbasis, out.ncomp * poly_dim(src.frame.nvar, degree));
      return out;
    }

    // physical derivative along frame axis `axis` on one component block
    MatrixXd dmap(const PolyBasis & b, int axis)
    {
      return monomial_derivative_map(b.frame.nvar, b.degree, axis, 1. / b.frame.scale);
    }

    int levi_civita(int i, int j, int k)
    {
      if (i == j || j == k || i == k) return 0;
      return ((j - i + 3) % 3 == 1) ? 1 : -1;
    }
  } // namespace

  PolyBasis apply_gradient(const PolyBasis & s)
  {
    if (s.codomain != Codomain::Scalar) throw InvalidArgument("apply_gradient: scalar input required");
    int n = s.frame.nvar;
    if (n < 2) throw InvalidArgument("apply_gradient: use the derivative map directly on edges");
    PolyBasis out = like(s, n == 3 ? Codomain::Vec3 : Codomain::Vec2, s.degree - 1, s.size());
    int nm = out.nmono();
    for (int j = 0; j < n; j++) {
      out.coeff.block(0, j * nm, s.size(), nm) = s.coeff * dmap(s, j).transpose();
    }
    return out;
  }

  PolyBasis apply_jacobian(const PolyBasis & v)
  {
    int n = v.frame.nvar;
    if ((n == 3 && v.codomain != Codomain::Vec3) || (n == 2 && v.codomain != Codomain::Vec2))
      throw InvalidArgument("apply_jacobian: vector input required");
    PolyBasis out = like(v, n == 3 ? Codomain::Mat3 : Codomain::Mat2, v.degree - 1, v.size());
    int nm_in = v.nmono(), nm = out.nmono();
    for (int i = 0; i < n; i++) {
      for (int j = 0; j < n; j++) {
        out.coeff.block(0, (i * n + j) * nm, v.size(), nm) =
          v.coeff.block(0, i * nm_in, v.size(), nm_in) * dmap(v, j).transpose();
      }
    }
    return out;
  }

  PolyBasis apply_divergence(const PolyBasis & v)
  {
    int n = v.frame.nvar;
    PolyBasis out = like(v, Codomain::Scalar, v.degree - 1, v.size());
    int nm_in = v.nmono();
    for (int j = 0; j < n; j++) {
      out.coeff += v.coeff.block(0, j * nm_in, v.size(), nm_in) * dmap(v, j).transpose();
    }
    return out;
  }

  PolyBasis apply_matrix_divergence(const PolyBasis & m)
  {
    int n = (m.codomain == Codomain::Mat3) ? 3 : 2;
    PolyBasis out = like(m, n == 3 ? Codomain::Vec3 : Codomain::Vec2, m.degree - 1, m.size());
    int nm_in = m.nmono(), nm = out.nmono();
    for (int i = 0; i < n; i++) {
      for (int j = 0; j < n; j++) {
        out.coeff.block(0, i * nm, m.size(), nm) +=
          m.coeff.block(0, (i * n + j) * nm_in, m.size(), nm_in) * dmap(m, j).transpose();
      }
    }
    return out;
  }

  PolyBasis apply_hessian(const PolyBasis & s)
  {
    if (s.codomain != Codomain::Scalar) throw InvalidArgument("apply_hessian: scalar input required");
    int n = s.frame.nvar;
    PolyBasis out = like(s, n == 3 ? Codomain::Mat3 : Codomain::Mat2, s.degree - 2, s.size());
    int nm = out.nmono();
    MatrixXd d1 = monomial_derivative_map(n, s.degree, 0, 1. / s.frame.scale);
    for (int i = 0; i < n; i++) {
      MatrixXd di = monomial_derivative_map(n, s.degree, i, 1. / s.frame.scale);
      for (int j = 0; j < n; j++) {
        MatrixXd dj = monomial_derivative_map(n, s.degree - 1, j, 1. / s.frame.scale);
        out.coeff.block(0, (i * n + j) * nm, s.size(), nm) = s.coeff * (dj * di).transpose();
      }
    }
    return out;
  }

  PolyBasis apply_curl3(const PolyBasis & m)
  {
    if (m.codomain != Codomain::Mat3) throw InvalidArgument("apply_curl3: Mat3 input required");
    PolyBasis out = like(m, Codomain::Mat3, m.degree - 1, m.size());
    int nm_in = m.nmono(), nm = out.nmono();
    for (int i = 0; i < 3; i++) {
      for (int j = 0; j < 3; j++) {
        for (int l = 0; l < 3; l++) {
          for (int mm = 0; mm < 3; mm++) {
            int eps = levi_civita(j, l, mm);
            if (eps == 0) continue;
            out.coeff.block(0, (3 * i + j) * nm, m.size(), nm) +=
              eps * m.coeff.block(0, (3 * i + mm) * nm_in, m.size(), nm_in) * dmap(m, l).transpose();
          }
        }
      }
    }
    return out;
  }

  PolyBasis apply_curl2(const PolyBasis & s)
  {
    if (s.codomain != Codomain::Scalar || s.frame.nvar != 2)
      throw InvalidArgument("apply_curl2: scalar face input required");
    PolyBasis out = like(s, Codomain::Vec2, s.degree - 1, s.size());
    int nm = out.nmono();
    out.coeff.block(0, 0, s.size(), nm) = s.coeff * dmap(s, 1).transpose();
    out.coeff.block(0, nm, s.size(), nm) = -s.coeff * dmap(s, 0).transpose();
    return out;
  }

  PolyBasis apply_curl2_rowwise(const PolyBasis & v)
  {
    if (v.codomain != Codomain::Vec2) throw InvalidArgument("apply_curl2_rowwise: Vec2 input required");
    PolyBasis out = like(v, Codomain::Mat2, v.degree - 1, v.size());
    int nm_in = v.nmono(), nm = out.nmono();
    for (int i = 0; i < 2; i++) {
      out.coeff.block(0, (2 * i + 0) * nm, v.size(), nm) =
        v.coeff.block(0, i * nm_in, v.size(), nm_in) * dmap(v, 1).transpose();
      out.coeff.block(0, (2 * i + 1) * nm, v.size(), nm) =
        -v.coeff.block(0, i * nm_in, v.size(), nm_in) * dmap(v, 0).transpose();
    }
    return out;
  }

  PolyBasis apply_rot2(const PolyBasis & v)
  {
    if (v.codomain != Codomain::Vec2) throw InvalidArgument("apply_rot2: Vec2 input required");
    PolyBasis out = like(v, Codomain::Scalar, v.degree - 1, v.size());
    int nm_in = v.nmono();
    out.coeff = v.coeff.block(0, nm_in, v.size(), nm_in) * dmap(v, 0).transpose() -
                v.coeff.block(0, 0, v.size(), nm_in) * dmap(v, 1).transpose();
    return out;
  }

  PolyBasis apply_dev3(const PolyBasis & m)
  {
    if (m.codomain != Codomain::Mat3) throw InvalidArgument("apply_dev3: Mat3 input required");
    PolyBasis out = m;
    int nm = m.nmono();
    MatrixXd tr = MatrixXd::Zero(m.size(), nm);
    for (int i = 0; i < 3; i++) tr += m.comp_block(4 * i);
    for (int i = 0; i < 3; i++) out.coeff.block(0, 4 * i * nm, m.size(), nm) -= tr / 3.;
    return out;
  }

  PolyBasis apply_sym(const PolyBasis & m)
  {
    int n = (m.codomain == Codomain::Mat3) ? 3 : 2;
    PolyBasis out = m;
    int nm = m.nmono();
    for (int i = 0; i < n; i++) {
      for (int j = i + 1; j < n; j++) {
        MatrixXd half = 0.5 * (m.comp_block(i * n + j) + m.comp_block(j * n + i));
        out.coeff.block(0, (i * n + j) * nm, m.size(), nm) = half;
        out.coeff.block(0, (j * n + i) * nm, m.size(), nm) = half;
      }
    }
    return out;
  }

  PolyBasis apply_trace(const PolyBasis & m)
  {
    int n = (m.codomain == Codomain::Mat3) ? 3 : 2;
    PolyBasis out = like(m, Codomain::Scalar, m.degree, m.size());
    for (int i = 0; i < n; i++) out.coeff += m.comp_block(i * n + i);
    return out;
  }

  PolyBasis apply_adjugate2(const PolyBasis & m)
  {
    if (m.codomain != Codomain::Mat2) throw InvalidArgument("apply_adjugate2: Mat2 input required");
    PolyBasis out = m;
    int nm = m.nmono();
    out.coeff.block(0, 0 * nm, m.size(), nm) = m.comp_block(3);
    out.coeff.block(0, 1 * nm, m.size(), nm) = -m.comp_block(1);
    out.coeff.block(0, 2 * nm, m.size(), nm) = -m.comp_block(2);
    out.coeff.block(0, 3 * nm, m.size(), nm) = m.comp_block(0);
    return out;
  }

  PolyBasis apply_cross_coordinate(const PolyBasis & m)
  {
    if (m.codomain != Codomain::Mat3 || m.frame.nvar != 3)
      throw InvalidArgument("apply_cross_coordinate: Mat3 cell input required");
    PolyBasis out = like(m, Codomain::Mat3, m.degree + 1, m.size());
    int nm_in = m.nmono(), nm = out.nmono();
    // (M x z)_{ij} = sum_{l,mm} eps_{j l mm} M_{il} z_mm, z = x - origin = scale * local
    for (int i = 0; i < 3; i++) {
      for (int j = 0; j < 3; j++) {
        for (int l = 0; l < 3; l++) {
          for (int mm = 0; mm < 3; mm++) {
            int eps = levi_civita(j, l, mm);
            if (eps == 0) continue;
            MatrixXd mul = m.frame.scale * monomial_multiply_map(3, m.degree, mm);
            out.coeff.block(0, (3 * i + j) * nm, m.size(), nm) +=
              eps * m.coeff.block(0, (3 * i + l) * nm_in, m.size(), nm_in) * mul.transpose();
          }
        }
      }
    }
    return out;
  }

  PolyBasis apply_tensor_coordinate(const PolyBasis & v)
  {
    int n = v.frame.nvar;
    PolyBasis out = like(v, n == 3 ? Codomain::Mat3 : Codomain::Mat2, v.degree + 1, v.size());
    int nm_in = v.nmono(), nm = out.nmono();
    for (int i = 0; i < n; i++) {
      for (int j = 0; j < n; j++) {
        MatrixXd mul = v.frame.scale * monomial_multiply_map(n, v.degree, j);
        out.coeff.block(0, (i * n + j) * nm, v.size(), nm) =
          v.coeff.block(0, i * nm_in, v.size(), nm_in) * mul.transpose();
      }
    }
    return out;
  }

  PolyBasis apply_coordinate_multiply(const PolyBasis & s)
  {
    if (s.codomain != Codomain::Scalar) throw InvalidArgument("apply_coordinate_multiply: scalar input required");
    int n = s.frame.nvar;
    PolyBasis out = like(s, n == 3 ? Codomain::Vec3 : Codomain::Vec2, s.degree + 1, s.size());
    int nm = out.nmono();
    for (int j = 0; j < n; j++) {
      MatrixXd mul = s.frame.scale * monomial_multiply_map(n, s.degree, j);
      out.coeff.block(0, j * nm, s.size(), nm) = s.coeff * mul.transpose();
    }
    return out;
  }

  PolyBasis contract_matrix(const PolyBasis & m, const VectorXd & left, const VectorXd & right)
  {
    int n = (m.codomain == Codomain::Mat3) ? 3 : 2;
    PolyBasis out = like(m, Codomain::Scalar, m.degree, m.size());
    for (int i = 0; i < n; i++) {
      for (int j = 0; j < n; j++) {
        if (left(i) == 0. || right(j) == 0.) continue;
        out.coeff += left(i) * right(j) * m.comp_block(i * n + j);
      }
    }
    return out;
  }

  PolyBasis contract_matrix_right(const PolyBasis & m, const VectorXd & right)
  {
    int n = (m.codomain == Codomain::Mat3) ? 3 : 2;
    PolyBasis out = like(m, n == 3 ? Codomain::Vec3 : Codomain::Vec2, m.degree, m.size());
    int nm = m.nmono();
    for (int i = 0; i < n; i++) {
      for (int j = 0; j < n; j++) {
        if (right(j) == 0.) continue;
        out.coeff.block(0, i * nm, m.size(), nm) += right(j) * m.comp_block(i * n + j);
      }
    }
    return out;
  }

  PolyBasis contract_vector(const PolyBasis & v, const VectorXd & a)
  {
    int n = codomain_components(v.codomain);
    PolyBasis out = like(v, Codomain::Scalar, v.degree, v.size());
    for (int i = 0; i < n; i++) {
      if (a(i) == 0.) continue;
      out.coeff += a(i) * v.comp_block(i);
    }
    return out;
  }

  PolyBasis cross_matrix_constant(const PolyBasis & m, const Vector3d & b)
  {
    if (m.codomain != Codomain::Mat3) throw InvalidArgument("cross_matrix_constant: Mat3 input required");
    PolyBasis out = like(m, Codomain::Mat3, m.degree, m.size());
    int nm = m.nmono();
    for (int i = 0; i < 3; i++) {
      for (int j = 0; j < 3; j++) {
        for (int l = 0; l < 3; l++) {
          for (int mm = 0; mm < 3; mm++) {
            int eps = levi_civita(j, l, mm);
            if (eps == 0 || b(mm) == 0.) continue;
            out.coeff.block(0, (3 * i + j) * nm, m.size(), nm) += eps * b(mm) * m.comp_block(3 * i + l);
          }
        }
      }
    }
    return out;
  }

  PolyBasis recombine_components(const PolyBasis & in, const MatrixXd & W, Codomain out_codomain)
  {
    if (W.cols() != in.ncomp) throw InvalidArgument("recombine_components: shape mismatch");
    PolyBasis out = like(in, out_codomain, in.degree, in.size());
    if (W.rows() != out.ncomp) throw InvalidArgument("recombine_components: shape mismatch");
    int nm = in.nmono();
    for (int c = 0; c < out.ncomp; c++) {
      for (int d = 0; d < in.ncomp; d++) {
        if (W(c, d) == 0.) continue;
        out.coeff.block(0, c * nm, in.size(), nm) += W(c, d) * in.comp_block(d);
      }
    }
    return out;
  }

  PolyBasis restrict_to_frame(const PolyBasis & src, EntityRef dst_entity, const Frame & dst)
  {
    // source local coordinates of a point with target coordinates eta:
    // y = axes_s^T (origin_d - origin_s)/scale_s + (scale_d/scale_s) axes_s^T axes_d eta
    Vector3d c = Vector3d::Zero();
    Vector3d delta = dst.origin - src.frame.origin;
    for (int i = 0; i < src.frame.nvar; i++) c(i) = src.frame.axes.col(i).dot(delta) / src.frame.scale;
    Eigen::Matrix<double, 3, Eigen::Dynamic> B(3, dst.nvar);
    for (int i = 0; i < src.frame.nvar; i++) {
      for (int j = 0; j < dst.nvar; j++) {
        B(i, j) = (dst.scale / src.frame.scale) * src.frame.axes.col(i).dot(dst.axes.col(j));
      }
    }
    MatrixXd compose = monomial_affine_compose(src.frame.nvar, src.degree, c, B, dst.nvar);

    PolyBasis out;
    out.entity = dst_entity;
    out.frame = dst;
    out.codomain = src.codomain;
    out.ncomp = src.ncomp;
    out.degree = src.degree;
    int nm_in = src.nmono();
    int nm = poly_dim(dst.nvar, src.degree);
    out.coeff = MatrixXd::Zero(src.size(), src.ncomp * nm);
    for (int cb = 0; cb < src.ncomp; cb++) {
      out.coeff.block(0, cb * nm, src.size(), nm) =
        src.coeff.block(0, cb * nm_in, src.size(), nm_in) * compose.transpose();
    }
    return out;
  }

  MatrixXd edge_derivative_matrix(const Mesh & mesh, int iE, int ell)
  {
    if (ell < 0) throw InvalidArgument("edge_derivative_matrix: negative degree");
    const Edge & E = mesh.edge(iE);
    EntityRef ent{EntityKind::Edge, iE};
    PolyBasis basis = scalar_basis(mesh, ent, ell);
    QuadratureRule quad = edge_quadrature(mesh, iE, 2 * ell);

    int n = basis.size();
    int n_in = poly_dim(1, ell - 1);
    MatrixXd D(n, 2 + n_in);

    Eigen::Matrix<double, Eigen::Dynamic, 3> endpoints(2, 3);
    endpoints.row(0) = mesh.vertex(E.vertex[0]).coords.transpose();
    endpoints.row(1) = mesh.vertex(E.vertex[1]).coords.transpose();
    MatrixXd endvals = evaluate(basis, endpoints)[0]; // n x 2
    D.col(0) = -endvals.col(0);
    D.col(1) = endvals.col(1);

    if (n_in > 0) {
      // -int_E phi_j dphi_i; the P^{ell-1} basis is the truncated graded basis
      MatrixXd dm = monomial_derivative_map(1, ell, 0, 1. / basis.frame.scale);
      PolyBasis deriv = basis;
      deriv.degree = ell - 1;
      deriv.coeff = basis.coeff * dm.transpose();
      PolyBasis trunc = basis;
      trunc.coeff = basis.coeff.topRows(n_in);
      MatrixXd S(n, n_in);
      auto vd = evaluate(deriv, quad.points)[0];
      auto vt = evaluate(trunc, quad.points)[0];
      S = vd * quad.weights.asDiagonal() * vt.transpose();
      D.rightCols(n_in) = -S;
    }
    return D;
  }

} // namespace ddr
