#include <ddr/interpolators.hpp>

namespace ddr
{

  namespace
  {
    // a^T M(q) b for matrix values stored as 9 row-major rows
    Eigen::RowVectorXd bilinear_rows(const MatrixXd & matvals, const Vector3d & a, const Vector3d & b)
    {
      Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(matvals.cols());
      for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
          if (a(i) == 0. || b(j) == 0.) continue;
          out += a(i) * b(j) * matvals.row(3 * i + j);
        }
      }
      return out;
    }

    Eigen::RowVectorXd dot_rows(const MatrixXd & vecvals, const Vector3d & a)
    {
      Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(vecvals.cols());
      for (int i = 0; i < 3; i++) {
        if (a(i) != 0.) out += a(i) * vecvals.row(i);
      }
      return out;
    }

    // projection coefficients onto an orthonormal scalar basis
    VectorXd project_scalar(const PolyBasis & basis, const QuadratureRule & quad,
                            const Eigen::RowVectorXd & vals)
    {
      MatrixXd f(1, vals.size());
      f.row(0) = vals;
      return integrate_against(basis, quad, f);
    }

    // quadrature rule able to integrate (field degree + basis degree) exactly
    QuadratureRule rule_for(const Mesh & mesh, EntityRef ent, int needed, const QuadratureRule & cached)
    {
      if (needed <= cached.degree) return cached;
      return entity_quadrature(mesh, ent, needed);
    }
  } // namespace

  VectorXd interpolate_devgrad(const CoreSpaces & core, int iT, const PolyField & v)
  {
    if (v.codomain != Codomain::Vec3) throw InvalidArgument("interpolate_devgrad: vector field required");
    const Mesh & mesh = core.mesh();
    const Cell & T = mesh.cell(iT);
    const int k = core.degree();
    DofLayout layout = devgrad_layout(mesh, iT, k);
    VectorXd out = VectorXd::Zero(layout.total);

    PolyField gradv = field_jacobian(v);

    for (size_t i = 0; i < T.vertices.size(); i++) {
      const Vector3d & x = mesh.vertex(T.vertices[i]).coords;
      out.segment(layout.block(Slot::VertexValue, i).offset, 3) = v.eval_vector(x);
      Matrix3d G = gradv.eval_matrix(x);
      for (int a = 0; a < 3; a++)
        for (int b = 0; b < 3; b++) out(layout.block(Slot::VertexGradient, i).offset + 3 * a + b) = G(a, b);
    }

    for (size_t i = 0; i < T.edges.size(); i++) {
      int iE = T.edges[i];
      const Edge & E = mesh.edge(iE);
      const auto & ed = core.edge(iE);
      QuadratureRule quad = rule_for(mesh, EntityRef{EntityKind::Edge, iE}, v.degree + k + 1, ed.quad);
      MatrixXd vv = v.eval(quad.points);
      MatrixXd gv = gradv.eval(quad.points);

      if (k >= 1) {
        PolyBasis Pkm1 = CoreSpaces::truncate(ed.P, k - 1);
        out.segment(layout.block(Slot::EdgeTangent, i).offset, Pkm1.size()) =
          project_scalar(Pkm1, quad, dot_rows(vv, E.tangent));
      }
      PolyBasis Pk = CoreSpaces::truncate(ed.P, k);
      const DofBlock & bn = layout.block(Slot::EdgeNormal, i);
      Vector3d normals[2] = {E.normal1, E.normal2};
      for (int c = 0; c < 2; c++) {
        out.segment(bn.offset + c * Pk.size(), Pk.size()) =
          project_scalar(Pk, quad, dot_rows(vv, normals[c]));
      }
      const DofBlock & bg = layout.block(Slot::EdgeGradient, i);
      for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
          out.segment(bg.offset + (2 * a + b) * Pk.size(), Pk.size()) =
            project_scalar(Pk, quad, bilinear_rows(gv, normals[a], normals[b]));
        }
      }
    }

    PolyField divv = field_divergence(v);
    for (size_t i = 0; i < T.faces.size(); i++) {
      int iF = T.faces[i];
      const Face & F = mesh.face(iF);
      const auto & fd = core.face(iF);
      QuadratureRule quad = rule_for(mesh, EntityRef{EntityKind::Face, iF}, v.degree + k + 1, fd.quad);
      MatrixXd vv = v.eval(quad.points);

      PolyBasis Pk = CoreSpaces::truncate(fd.P, k);
      out.segment(layout.block(Slot::FaceNormal, i).offset, Pk.size()) =
        project_scalar(Pk, quad, dot_rows(vv, F.normal));

      if (k >= 1) {
        PolyBasis Pkm1 = CoreSpaces::truncate(fd.P, k - 1);
        const DofBlock & bt = layout.block(Slot::FaceTangent, i);
        Vector3d tangents[2] = {F.tangent1, F.tangent2};
        for (int c = 0; c < 2; c++) {
          out.segment(bt.offset + c * Pkm1.size(), Pkm1.size()) =
            project_scalar(Pkm1, quad, dot_rows(vv, tangents[c]));
        }
        MatrixXd dv = divv.eval(quad.points);
        out.segment(layout.block(Slot::FaceDivergence, i).offset, Pkm1.size()) =
          project_scalar(Pkm1, quad, dv.row(0));
      }
    }

    if (k >= 1) {
      const auto & cd = core.cell(iT);
      QuadratureRule quad = rule_for(mesh, EntityRef{EntityKind::Cell, iT}, v.degree + k + 1, cd.quad);
      MatrixXd vv = v.eval(quad.points);
      PolyBasis Pkm1 = CoreSpaces::truncate(cd.P, k - 1);
      const DofBlock & bT = layout.block(Slot::CellValue);
      for (int c = 0; c < 3; c++) {
        out.segment(bT.offset + c * Pkm1.size(), Pkm1.size()) = project_scalar(Pkm1, quad, vv.row(c));
      }
    }
    return out;
  }

  VectorXd interpolate_symcurl(const CoreSpaces & core, int iT, const PolyField & tau)
  {
    if (tau.codomain != Codomain::Mat3) throw InvalidArgument("interpolate_symcurl: matrix field required");
    const Mesh & mesh = core.mesh();
    const Cell & T = mesh.cell(iT);
    const int k = core.degree();

    // traceless check at the coefficient level
    double trace_norm = (tau.coeff.row(0) + tau.coeff.row(4) + tau.coeff.row(8)).norm();
    if (trace_norm > 1e-10 * std::max(1., tau.coeff.norm())) {
      throw InvalidArgument("interpolate_symcurl: input is not traceless");
    }

    DofLayout layout = symcurl_layout(mesh, iT, k);
    VectorXd out = VectorXd::Zero(layout.total);

    const auto & traceless = traceless3_components();
    for (size_t i = 0; i < T.vertices.size(); i++) {
      Matrix3d val = tau.eval_matrix(mesh.vertex(T.vertices[i]).coords);
      const DofBlock & bv = layout.block(Slot::VertexTraceless, i);
      for (int c = 0; c < 8; c++) out(bv.offset + c) = (traceless[c].array() * val.array()).sum();
    }

    for (size_t i = 0; i < T.edges.size(); i++) {
      int iE = T.edges[i];
      const Edge & E = mesh.edge(iE);
      const auto & ed = core.edge(iE);
      QuadratureRule quad = rule_for(mesh, EntityRef{EntityKind::Edge, iE}, tau.degree + k + 2, ed.quad);
      MatrixXd tv = tau.eval(quad.points);

      Vector3d normals[2] = {E.normal1, E.normal2};
      PolyBasis Pk = CoreSpaces::truncate(ed.P, k);
      const DofBlock & bm = layout.block(Slot::EdgeMatrix, i);
      for (int a = 0; a < 2; a++)
        for (int b = 0; b < 2; b++)
          out.segment(bm.offset + (2 * a + b) * Pk.size(), Pk.size()) =
            project_scalar(Pk, quad, bilinear_rows(tv, normals[a], normals[b]));

      const PolyBasis & Pkp1 = ed.P;
      const DofBlock & bt = layout.block(Slot::EdgeNormalTangent, i);
      for (int a = 0; a < 2; a++)
        out.segment(bt.offset + a * Pkp1.size(), Pkp1.size()) =
          project_scalar(Pkp1, quad, bilinear_rows(tv, normals[a], E.tangent));

      // grad(tau t_E): jacobian of the vector field tau applied to the tangent
      PolyField w = field_zero(Codomain::Vec3, tau.degree);
      for (int r = 0; r < 3; r++)
        for (int j = 0; j < 3; j++) w.coeff.row(r) += E.tangent(j) * tau.coeff.row(3 * r + j);
      PolyField gw = field_jacobian(w);
      MatrixXd gv = gw.eval(quad.points);
      const DofBlock & bc = layout.block(Slot::EdgeC, i);
      for (int a = 0; a < 2; a++)
        for (int b = 0; b < 2; b++)
          out.segment(bc.offset + (2 * a + b) * Pkp1.size(), Pkp1.size()) =
            project_scalar(Pkp1, quad, bilinear_rows(gv, normals[a], normals[b]));
    }

    for (size_t i = 0; i < T.faces.size(); i++) {
      int iF = T.faces[i];
      const Face & F = mesh.face(iF);
      const auto & fd = core.face(iF);
      QuadratureRule quad = rule_for(mesh, EntityRef{EntityKind::Face, iF}, tau.degree + k + 2, fd.quad);
      MatrixXd tv = tau.eval(quad.points);

      Vector3d tangents[2] = {F.tangent1, F.tangent2};
      // normal-tangential trace onto RT^{k+1}(F)
      if (fd.RT.size() > 0) {
        MatrixXd nt(2, quad.size());
        for (int j = 0; j < 2; j++) nt.row(j) = bilinear_rows(tv, F.normal, tangents[j]);
        auto rtv = evaluate(fd.RT, quad.points);
        VectorXd coef = VectorXd::Zero(fd.RT.size());
        for (int c = 0; c < 2; c++)
          coef += rtv[c] * quad.weights.cwiseProduct(nt.row(c).transpose());
        out.segment(layout.block(Slot::FaceRT, i).offset, coef.size()) = coef;
      }
      // tangential-tangential trace onto CGtrim^k(F)
      if (fd.CG.size() > 0) {
        MatrixXd tt(4, quad.size());
        for (int a = 0; a < 2; a++)
          for (int b = 0; b < 2; b++) tt.row(2 * a + b) = bilinear_rows(tv, tangents[a], tangents[b]);
        auto cgv = evaluate(fd.CG, quad.points);
        VectorXd coef = VectorXd::Zero(fd.CG.size());
        for (int c = 0; c < 4; c++)
          coef += cgv[c] * quad.weights.cwiseProduct(tt.row(c).transpose());
        out.segment(layout.block(Slot::FaceCG, i).offset, coef.size()) = coef;
      }
    }

    const auto & cd = core.cell(iT);
    if (cd.SR.size() > 0) {
      QuadratureRule quad = rule_for(mesh, EntityRef{EntityKind::Cell, iT}, tau.degree + k + 1, cd.quad);
      MatrixXd tv = tau.eval(quad.points);
      out.segment(layout.block(Slot::CellSR).offset, cd.SR.size()) =
        integrate_against(cd.SR, quad, tv);
    }
    return out;
  }

  VectorXd interpolate_divdiv(const CoreSpaces & core, int iT, const PolyField & ups)
  {
    if (ups.codomain != Codomain::Mat3) throw InvalidArgument("interpolate_divdiv: matrix field required");
    const Mesh & mesh = core.mesh();
    const Cell & T = mesh.cell(iT);
    const int k = core.degree();

    double sym_residual = 0.;
    for (int i = 0; i < 3; i++)
      for (int j = i + 1; j < 3; j++)
        sym_residual += (ups.coeff.row(3 * i + j) - ups.coeff.row(3 * j + i)).norm();
    if (sym_residual > 1e-10 * std::max(1., ups.coeff.norm())) {
      throw InvalidArgument("interpolate_divdiv: input is not symmetric");
    }

    DofLayout layout = divdiv_layout(mesh, iT, k);
    VectorXd out = VectorXd::Zero(layout.total);
    const auto & sym2 = sym2_components();

    for (size_t i = 0; i < T.edges.size(); i++) {
      int iE = T.edges[i];
      const Edge & E = mesh.edge(iE);
      const auto & ed = core.edge(iE);
      QuadratureRule quad = rule_for(mesh, EntityRef{EntityKind::Edge, iE}, ups.degree + k + 2, ed.quad);
      MatrixXd uv = ups.eval(quad.points);

      Vector3d normals[2] = {E.normal1, E.normal2};
      MatrixXd nn(4, quad.size());
      for (int a = 0; a < 2; a++)
        for (int b = 0; b < 2; b++) nn.row(2 * a + b) = bilinear_rows(uv, normals[a], normals[b]);

      const PolyBasis & Pkp1 = ed.P;
      const DofBlock & be = layout.block(Slot::EdgeSym, i);
      for (int s = 0; s < 3; s++) {
        Eigen::RowVectorXd comp = Eigen::RowVectorXd::Zero(quad.size());
        for (int a = 0; a < 2; a++)
          for (int b = 0; b < 2; b++)
            if (sym2[s](a, b) != 0.) comp += sym2[s](a, b) * nn.row(2 * a + b);
        out.segment(be.offset + s * Pkp1.size(), Pkp1.size()) = project_scalar(Pkp1, quad, comp);
      }
    }

    for (size_t i = 0; i < T.faces.size(); i++) {
      int iF = T.faces[i];
      const Face & F = mesh.face(iF);
      const auto & fd = core.face(iF);
      QuadratureRule quad = rule_for(mesh, EntityRef{EntityKind::Face, iF}, ups.degree + k + 2, fd.quad);
      MatrixXd uv = ups.eval(quad.points);

      const PolyBasis & Pkp1 = fd.P;
      out.segment(layout.block(Slot::FaceValue, i).offset, Pkp1.size()) =
        project_scalar(Pkp1, quad, bilinear_rows(uv, F.normal, F.normal));

      // 2 div_F of the tangential part of (ups n_F) + normal derivative of ups_nn
      PolyField w = field_zero(Codomain::Vec3, ups.degree);
      for (int r = 0; r < 3; r++)
        for (int j = 0; j < 3; j++) w.coeff.row(r) += F.normal(j) * ups.coeff.row(3 * r + j);
      PolyField Jw = field_jacobian(w);
      MatrixXd jv = Jw.eval(quad.points);
      Vector3d tangents[2] = {F.tangent1, F.tangent2};
      Eigen::RowVectorXd divf = Eigen::RowVectorXd::Zero(quad.size());
      for (int c = 0; c < 2; c++) divf += bilinear_rows(jv, tangents[c], tangents[c]);

      PolyField unn = field_zero(Codomain::Scalar, ups.degree);
      for (int a = 0; a < 3; a++)
        for (int b = 0; b < 3; b++) unn.coeff.row(0) += F.normal(a) * F.normal(b) * ups.coeff.row(3 * a + b);
      PolyField gunn = field_gradient(unn);
      MatrixXd gv = gunn.eval(quad.points);
      Eigen::RowVectorXd dnn = dot_rows(gv, F.normal);

      out.segment(layout.block(Slot::FaceD, i).offset, Pkp1.size()) =
        project_scalar(Pkp1, quad, (2. * divf + dnn).eval());
    }

    const auto & cd = core.cell(iT);
    if (cd.H.size() > 0) {
      QuadratureRule quad = rule_for(mesh, EntityRef{EntityKind::Cell, iT}, ups.degree + k + 1, cd.quad);
      MatrixXd uv = ups.eval(quad.points);
      out.segment(layout.block(Slot::CellHtrim).offset, cd.H.size()) =
        integrate_against(cd.H, quad, uv);
    }
    return out;
  }

  MatrixXd divdiv_polynomial_interpolation(const CoreSpaces & core, int iT)
  {
    const auto & S = core.cell(iT).S;
    DofLayout layout = divdiv_layout(core.mesh(), iT, core.degree());
    MatrixXd J(layout.total, S.size());
    // each basis function of S as a global polynomial field
    const Frame & frame = S.frame;
    Vector3d c0 = -frame.axes.transpose() * frame.origin / frame.scale;
    Eigen::Matrix<double, 3, Eigen::Dynamic> B = frame.axes.transpose() / frame.scale;
    MatrixXd compose = monomial_affine_compose(3, S.degree, c0, B, 3);
    for (int j = 0; j < S.size(); j++) {
      PolyField f = field_zero(Codomain::Mat3, S.degree);
      for (int c = 0; c < 9; c++) {
        f.coeff.row(c) = (compose * S.comp_block(c).row(j).transpose()).transpose();
      }
      J.col(j) = interpolate_divdiv(core, iT, f);
    }
    return J;
  }

  std::vector<PolyField> rt1_basis(const Mesh & mesh, int iT)
  {
    std::vector<PolyField> fields;
    for (int c = 0; c < 3; c++) {
      PolyField f = field_zero(Codomain::Vec3, 1);
      f.coeff(c, 0) = 1.;
      fields.push_back(f);
    }
    PolyField radial = field_zero(Codomain::Vec3, 1);
    const Vector3d & xT = mesh.cell(iT).center;
    // components x_c - xT_c over the monomial order 1, x, y, z
    for (int c = 0; c < 3; c++) {
      radial.coeff(c, 0) = -xT(c);
      radial.coeff(c, 1 + c) = 1.;
    }
    fields.push_back(radial);
    return fields;
  }

} // namespace ddr
