#include <ddr/potential.hpp>
#include <ddr/interpolators.hpp>

#include <Eigen/LU>

namespace ddr
{

  namespace
  {
    Vector2d in_edge_plane(const Edge & E, const Vector3d & v)
    {
      return Vector2d(E.normal1.dot(v), E.normal2.dot(v));
    }
  }

  MatrixXd gamma_nnF(const CoreSpaces & core, int iT, int fi, const DofLayout & layout)
  {
    const Mesh & mesh = core.mesh();
    const Cell & T = mesh.cell(iT);
    const int k = core.degree();
    int iF = T.faces[fi];
    const Face & F = mesh.face(iF);
    const auto & fd = core.face(iF);
    const auto & sym2 = sym2_components();

    PolyBasis Pk_F = CoreSpaces::truncate(fd.P, k);
    int n = Pk_F.size();

    // stiffness and boundary-average functional
    PolyBasis grad = (k >= 1) ? apply_gradient(Pk_F) : Pk_F;
    MatrixXd K = MatrixXd::Zero(n, n);
    if (k >= 1) {
      auto gv = evaluate(grad, fd.quad.points);
      K = gv[0] * fd.quad.weights.asDiagonal() * gv[0].transpose() +
          gv[1] * fd.quad.weights.asDiagonal() * gv[1].transpose();
    }

    MatrixXd A = MatrixXd::Zero(n + 1, n + 1);
    A.topLeftCorner(n, n) = K;
    MatrixXd R = MatrixXd::Zero(n + 1, layout.total);

    // Laplacian term against the face value unknown (only its P^{k-1} part acts)
    if (k >= 2) {
      PolyBasis lap = apply_divergence(grad);
      auto lv = evaluate(lap, fd.quad.points);
      PolyBasis Pkm1 = CoreSpaces::truncate(fd.P, k - 1);
      auto pv = evaluate(Pkm1, fd.quad.points);
      const DofBlock & bF = layout.block(Slot::FaceValue, fi);
      R.block(0, bF.offset, n, Pkm1.size()) -=
        lv[0] * fd.quad.weights.asDiagonal() * pv[0].transpose();
    }

    for (size_t li = 0; li < F.edges.size(); li++) {
      int iE = F.edges[li];
      const Edge & E = mesh.edge(iE);
      const auto & ed = core.edge(iE);
      int lei = -1;
      for (size_t e2 = 0; e2 < T.edges.size(); e2++) {
        if (T.edges[e2] == iE) lei = static_cast<int>(e2);
      }
      const DofBlock & bE = layout.block(Slot::EdgeSym, lei);
      double sgn = F.edge_sign[li];
      Vector2d nf = in_edge_plane(E, F.normal);
      Vector2d nFE_f(F.tangent1.dot(F.edge_normal[li]), F.tangent2.dot(F.edge_normal[li]));
      auto pE = evaluate(ed.P, ed.quad.points);
      int nk1 = k + 2;

      // boundary-average row and functional
      auto pF_onE = evaluate(Pk_F, ed.quad.points);
      A.block(n, 0, 1, n) += (pF_onE[0] * ed.quad.weights).transpose();
      A.block(0, n, n, 1) += pF_onE[0] * ed.quad.weights;

      Eigen::RowVectorXd edge_mass = (pE[0] * ed.quad.weights).transpose();
      for (int s = 0; s < 3; s++) {
        double w = nf.dot(sym2[s] * nf);
        if (w == 0.) continue;
        R.block(n, bE.offset + s * nk1, 1, nk1) += w * edge_mass;
      }

      if (k >= 1) {
        auto gE = evaluate(grad, ed.quad.points);
        MatrixXd dn = nFE_f(0) * gE[0] + nFE_f(1) * gE[1];
        MatrixXd base = dn * ed.quad.weights.asDiagonal() * pE[0].transpose();
        for (int s = 0; s < 3; s++) {
          double w = sgn * nf.dot(sym2[s] * nf);
          if (w == 0.) continue;
          R.block(0, bE.offset + s * nk1, n, nk1) += w * base;
        }
      }
    }

    Eigen::PartialPivLU<MatrixXd> lu(A);
    MatrixXd X = lu.solve(R);
    return X.topRows(n);
  }

  DivDivLocal build_divdiv_local(const CoreSpaces & core, int iT)
  {
    const Mesh & mesh = core.mesh();
    const Cell & T = mesh.cell(iT);
    const int k = core.degree();
    const auto & cd = core.cell(iT);
    const auto & sym2 = sym2_components();

    DivDivLocal local;
    local.layout = divdiv_layout(mesh, iT, k);
    local.DD = assemble_divdiv_op(core, iT);
    for (size_t fi = 0; fi < T.faces.size(); fi++) {
      local.gamma.push_back(gamma_nnF(core, iT, static_cast<int>(fi), local.layout));
    }

    // potential: tests are the cell scalar basis beyond the affine functions plus the
    // symmetric complement; the images Hess v + tau span the symmetric polynomials
    const PolyBasis & S = cd.S;
    int nS = S.size();
    int n_v = poly_dim(3, k + 2) - 4;
    int n_tau = cd.Hc.size();
    if (n_v + n_tau != nS) throw DimensionMismatch("potential: test space does not match");

    MatrixXd L = MatrixXd::Zero(nS, nS);
    MatrixXd R = MatrixXd::Zero(nS, local.layout.total);

    PolyBasis hess = apply_hessian(cd.P); // rows aligned with cd.P
    {
      auto hv = evaluate(hess, cd.quad.points);
      auto sv = evaluate(S, cd.quad.points);
      MatrixXd HS = MatrixXd::Zero(cd.P.size(), nS);
      for (int c = 0; c < 9; c++) HS += hv[c] * cd.quad.weights.asDiagonal() * sv[c].transpose();
      L.topRows(n_v) = HS.bottomRows(n_v);
      if (n_tau > 0) {
        auto tv = evaluate(cd.Hc, cd.quad.points);
        MatrixXd TS = MatrixXd::Zero(n_tau, nS);
        for (int c = 0; c < 9; c++) TS += tv[c] * cd.quad.weights.asDiagonal() * sv[c].transpose();
        L.bottomRows(n_tau) = TS;
      }
    }

    // v-test rows of the right-hand side
    {
      // int_T DD(u) v_i: nonzero only while v_i stays within P^k
      int nPk = poly_dim(3, k);
      for (int i = 4; i < nPk; i++) {
        R.row(i - 4) += local.DD.row(i);
      }

      // face terms: gamma against the normal derivative, plus the D unknown
      for (size_t fi = 0; fi < T.faces.size(); fi++) {
        int iF = T.faces[fi];
        const Face & F = mesh.face(iF);
        const auto & fd = core.face(iF);
        double sgnF = T.face_sign[fi];
        PolyBasis Pk_F = CoreSpaces::truncate(fd.P, k);

        PolyBasis gradP = apply_gradient(cd.P);
        auto gv = evaluate(gradP, fd.quad.points);
        MatrixXd dn = MatrixXd::Zero(cd.P.size(), fd.quad.size());
        for (int c = 0; c < 3; c++)
          if (F.normal(c) != 0.) dn += F.normal(c) * gv[c];
        auto pkv = evaluate(Pk_F, fd.quad.points);
        MatrixXd G2 = dn * fd.quad.weights.asDiagonal() * pkv[0].transpose(); // (nP) x dim P^k(F)
        R.topRows(n_v) += sgnF * G2.bottomRows(n_v) * local.gamma[fi];

        const DofBlock & bD = local.layout.block(Slot::FaceD, fi);
        auto pv = evaluate(cd.P, fd.quad.points);
        auto pf = evaluate(fd.P, fd.quad.points);
        MatrixXd DFterm = pv[0] * fd.quad.weights.asDiagonal() * pf[0].transpose();
        R.block(0, bD.offset, n_v, bD.size) -= sgnF * DFterm.bottomRows(n_v);

        // edge terms
        for (size_t li = 0; li < F.edges.size(); li++) {
          int iE = F.edges[li];
          const Edge & E = mesh.edge(iE);
          const auto & ed = core.edge(iE);
          int lei = -1;
          for (size_t e2 = 0; e2 < T.edges.size(); e2++) {
            if (T.edges[e2] == iE) lei = static_cast<int>(e2);
          }
          const DofBlock & bE = local.layout.block(Slot::EdgeSym, lei);
          double sgn = sgnF * F.edge_sign[li];
          Vector2d en = in_edge_plane(E, F.edge_normal[li]);
          Vector2d nf = in_edge_plane(E, F.normal);
          auto pTE = evaluate(cd.P, ed.quad.points);
          auto pE = evaluate(ed.P, ed.quad.points);
          MatrixXd base = pTE[0] * ed.quad.weights.asDiagonal() * pE[0].transpose();
          int nk1 = k + 2;
          for (int s = 0; s < 3; s++) {
            double factor = sgn * en.dot(sym2[s] * nf);
            if (factor == 0.) continue;
            R.block(0, bE.offset + s * nk1, n_v, nk1) += factor * base.bottomRows(n_v);
          }
        }
      }
    }

    // tau-test rows: int_T ups_H : tau_j
    if (n_tau > 0 && cd.H.size() > 0) {
      const DofBlock & bH = local.layout.block(Slot::CellHtrim);
      auto tv = evaluate(cd.Hc, cd.quad.points);
      auto hb = evaluate(cd.H, cd.quad.points);
      MatrixXd TH = MatrixXd::Zero(n_tau, cd.H.size());
      for (int c = 0; c < 9; c++) TH += tv[c] * cd.quad.weights.asDiagonal() * hb[c].transpose();
      R.block(n_v, bH.offset, n_tau, bH.size) += TH;
    }

    Eigen::PartialPivLU<MatrixXd> lu(L);
    local.potential = lu.solve(R);

    // component inner product: orthonormal blocks make it diagonal
    local.comp_weights = VectorXd::Zero(local.layout.total);
    double hT = T.diameter;
    for (const auto & b : local.layout.blocks) {
      double w = 1.;
      if (b.slot == Slot::EdgeSym) w = hT * hT;
      else if (b.slot == Slot::FaceValue) w = hT;
      else if (b.slot == Slot::FaceD) w = hT * hT * hT;
      local.comp_weights.segment(b.offset, b.size).setConstant(w);
    }

    // stabilization and product
    MatrixXd J = divdiv_polynomial_interpolation(core, iT);
    MatrixXd defect = J * local.potential - MatrixXd::Identity(local.layout.total, local.layout.total);
    local.stab = defect.transpose() * local.comp_weights.asDiagonal() * defect;
    local.product = local.potential.transpose() * local.potential + local.stab;
    return local;
  }

} // namespace ddr
