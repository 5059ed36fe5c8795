#include <ddr/polyfield.hpp>

namespace ddr
{

  namespace
  {
    MatrixXd global_monomial_values(int degree, const Eigen::Matrix<double, Eigen::Dynamic, 3> & pts)
    {
      return monomial_values(3, degree, pts);
    }
  }

  double PolyField::eval_scalar(const Vector3d & x) const
  {
    return poly_eval(3, degree, coeff.row(0).transpose(), x);
  }

  Vector3d PolyField::eval_vector(const Vector3d & x) const
  {
    Vector3d out;
    for (int i = 0; i < 3; i++) out(i) = poly_eval(3, degree, coeff.row(i).transpose(), x);
    return out;
  }

  Matrix3d PolyField::eval_matrix(const Vector3d & x) const
  {
    Matrix3d out;
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++) out(i, j) = poly_eval(3, degree, coeff.row(3 * i + j).transpose(), x);
    return out;
  }

  MatrixXd PolyField::eval(const Eigen::Matrix<double, Eigen::Dynamic, 3> & pts) const
  {
    return coeff * global_monomial_values(degree, pts);
  }

  PolyField field_zero(Codomain codomain, int degree)
  {
    PolyField f;
    f.codomain = codomain;
    f.degree = degree;
    f.coeff = MatrixXd::Zero(codomain_components(codomain), poly_dim(3, degree));
    return f;
  }

  PolyBasis field_on_frame(const PolyField & f, EntityRef ent, const Frame & frame)
  {
    // global coordinates of a point with local scaled coordinates eta:
    // x = origin + scale * axes * eta
    Eigen::Matrix<double, 3, Eigen::Dynamic> B(3, frame.nvar);
    for (int j = 0; j < frame.nvar; j++) B.col(j) = frame.scale * frame.axes.col(j);
    MatrixXd compose = monomial_affine_compose(3, f.degree, frame.origin, B, frame.nvar);

    PolyBasis out;
    out.entity = ent;
    out.frame = frame;
    out.codomain = f.codomain;
    out.ncomp = f.ncomp();
    out.degree = f.degree;
    int nm = poly_dim(frame.nvar, f.degree);
    out.coeff = MatrixXd::Zero(f.ncomp(), f.ncomp() * nm);
    for (int c = 0; c < f.ncomp(); c++) {
      out.coeff.block(c, c * nm, 1, nm) = (compose * f.coeff.row(c).transpose()).transpose();
    }
    return out;
  }

  namespace
  {
    MatrixXd dmap(int degree, int axis) { return monomial_derivative_map(3, degree, axis, 1.); }

    int levi_civita(int i, int j, int k)
    {
      if (i == j || j == k || i == k) return 0;
      return ((j - i + 3) % 3 == 1) ? 1 : -1;
    }
  }

  PolyField field_gradient(const PolyField & s)
  {
    if (s.codomain != Codomain::Scalar) throw InvalidArgument("field_gradient: scalar input required");
    PolyField out = field_zero(Codomain::Vec3, s.degree - 1);
    for (int j = 0; j < 3; j++) out.coeff.row(j) = (dmap(s.degree, j) * s.coeff.row(0).transpose()).transpose();
    return out;
  }

  PolyField field_jacobian(const PolyField & v)
  {
    if (v.codomain != Codomain::Vec3) throw InvalidArgument("field_jacobian: vector input required");
    PolyField out = field_zero(Codomain::Mat3, v.degree - 1);
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++)
        out.coeff.row(3 * i + j) = (dmap(v.degree, j) * v.coeff.row(i).transpose()).transpose();
    return out;
  }

  PolyField field_divergence(const PolyField & v)
  {
    if (v.codomain != Codomain::Vec3) throw InvalidArgument("field_divergence: vector input required");
    PolyField out = field_zero(Codomain::Scalar, v.degree - 1);
    for (int j = 0; j < 3; j++) out.coeff.row(0) += (dmap(v.degree, j) * v.coeff.row(j).transpose()).transpose();
    return out;
  }

  PolyField field_matrix_divergence(const PolyField & m)
  {
    if (m.codomain != Codomain::Mat3) throw InvalidArgument("field_matrix_divergence: matrix input required");
    PolyField out = field_zero(Codomain::Vec3, m.degree - 1);
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++)
        out.coeff.row(i) += (dmap(m.degree, j) * m.coeff.row(3 * i + j).transpose()).transpose();
    return out;
  }

  PolyField field_hessian(const PolyField & s)
  {
    return field_jacobian(field_gradient(s));
  }

  PolyField field_curl3(const PolyField & m)
  {
    if (m.codomain != Codomain::Mat3) throw InvalidArgument("field_curl3: matrix input required");
    PolyField out = field_zero(Codomain::Mat3, m.degree - 1);
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++)
        for (int l = 0; l < 3; l++)
          for (int mm = 0; mm < 3; mm++) {
            int eps = levi_civita(j, l, mm);
            if (eps == 0) continue;
            out.coeff.row(3 * i + j) +=
              eps * (dmap(m.degree, l) * m.coeff.row(3 * i + mm).transpose()).transpose();
          }
    return out;
  }

  PolyField field_laplacian(const PolyField & s)
  {
    return field_divergence(field_gradient(s));
  }

  PolyField field_dev(const PolyField & m)
  {
    PolyField out = m;
    Eigen::RowVectorXd tr = m.coeff.row(0) + m.coeff.row(4) + m.coeff.row(8);
    for (int i = 0; i < 3; i++) out.coeff.row(4 * i) -= tr / 3.;
    return out;
  }

  PolyField field_sym(const PolyField & m)
  {
    PolyField out = m;
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++)
        out.coeff.row(3 * i + j) = 0.5 * (m.coeff.row(3 * i + j) + m.coeff.row(3 * j + i));
    return out;
  }

  PolyField field_div_div(const PolyField & m)
  {
    return field_divergence(field_matrix_divergence(m));
  }

  PolyField field_sum(const PolyField & a, const PolyField & b, double wa, double wb)
  {
    if (a.codomain != b.codomain) throw InvalidArgument("field_sum: codomain mismatch");
    const PolyField & hi = (a.degree >= b.degree) ? a : b;
    const PolyField & lo = (a.degree >= b.degree) ? b : a;
    double whi = (a.degree >= b.degree) ? wa : wb;
    double wlo = (a.degree >= b.degree) ? wb : wa;
    PolyField out = field_zero(a.codomain, hi.degree);
    out.coeff = whi * hi.coeff;
    out.coeff.leftCols(lo.coeff.cols()) += wlo * lo.coeff;
    return out;
  }

  PolyField field_scale(const PolyField & a, double s)
  {
    PolyField out = a;
    out.coeff *= s;
    return out;
  }

  PolyField random_field(FieldShape shape, int degree, const Frame & frame, std::mt19937_64 & rng)
  {
    std::normal_distribution<double> gauss(0., 1.);
    int nm_local = poly_dim(3, degree);

    // random coefficients over the frame's scaled monomials, one row per component
    int ncomp_draw = 0;
    switch (shape) {
    case FieldShape::Scalar: ncomp_draw = 1; break;
    case FieldShape::Vector: ncomp_draw = 3; break;
    case FieldShape::Matrix: ncomp_draw = 9; break;
    case FieldShape::Symmetric: ncomp_draw = 6; break;
    case FieldShape::Traceless: ncomp_draw = 8; break;
    }
    MatrixXd local = MatrixXd::Zero(ncomp_draw, nm_local);
    for (int c = 0; c < ncomp_draw; c++)
      for (int m = 0; m < nm_local; m++) local(c, m) = gauss(rng);

    // expand symmetric/traceless draws into row-major matrix components
    MatrixXd comp;
    if (shape == FieldShape::Symmetric) {
      comp = MatrixXd::Zero(9, nm_local);
      const auto & basis = sym3_components();
      for (int c = 0; c < 6; c++)
        for (int i = 0; i < 3; i++)
          for (int j = 0; j < 3; j++) comp.row(3 * i + j) += basis[c](i, j) * local.row(c);
    } else if (shape == FieldShape::Traceless) {
      comp = MatrixXd::Zero(9, nm_local);
      const auto & basis = traceless3_components();
      for (int c = 0; c < 8; c++)
        for (int i = 0; i < 3; i++)
          for (int j = 0; j < 3; j++) comp.row(3 * i + j) += basis[c](i, j) * local.row(c);
    } else {
      comp = local;
    }

    // re-express on global monomials: local scaled coordinate eta = axes^T (x - origin)/scale
    Vector3d c0 = -frame.axes.transpose() * frame.origin / frame.scale;
    Eigen::Matrix<double, 3, Eigen::Dynamic> B = frame.axes.transpose() / frame.scale;
    MatrixXd compose = monomial_affine_compose(3, degree, c0, B, 3);

    PolyField out;
    out.codomain = (comp.rows() == 1) ? Codomain::Scalar : (comp.rows() == 3 ? Codomain::Vec3 : Codomain::Mat3);
    out.degree = degree;
    out.coeff = comp * compose.transpose();
    return out;
  }

} // namespace ddr
