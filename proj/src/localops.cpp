#include <ddr/localops.hpp>

#include <cmath>

namespace ddr
{

  namespace
  {
    int local_vertex_index(const Cell & T, int v)
    {
      for (size_t i = 0; i < T.vertices.size(); i++) {
        if (T.vertices[i] == v) return static_cast<int>(i);
      }
      throw InvalidArgument("vertex not found in cell");
    }

    // face-frame coordinates of a 3D vector lying in the face plane
    Vector2d in_face(const Face & F, const Vector3d & v)
    {
      return Vector2d(F.tangent1.dot(v), F.tangent2.dot(v));
    }

    // edge-frame coordinates of a 3D vector lying in the plane normal to the edge
    Vector2d in_edge_plane(const Edge & E, const Vector3d & v)
    {
      return Vector2d(E.normal1.dot(v), E.normal2.dot(v));
    }

    // int_entity a_i b_j for evaluated families (each ncomp x (n x npts))
    MatrixXd pair_integral(const std::vector<MatrixXd> & a, const std::vector<MatrixXd> & b,
                           const VectorXd & w)
    {
      MatrixXd out = MatrixXd::Zero(a[0].rows(), b[0].rows());
      for (size_t c = 0; c < a.size(); c++) out += a[c] * w.asDiagonal() * b[c].transpose();
      return out;
    }
  } // namespace

  const MatrixXd & symmetrizing_tensor_map()
  {
    static const MatrixXd map = [] {
      // row-major input components (00, 01, 10, 11); rows over the symmetric pair basis
      MatrixXd m = MatrixXd::Zero(3, 4);
      const double inv_sqrt2 = 1. / std::sqrt(2.);
      m(0, 1) = 1.;           // (0,0) entry of the image is eta_01
      m(1, 0) = -inv_sqrt2;   // off-diagonal (eta_11 - eta_00)/2, coordinate sqrt(2) * value
      m(1, 3) = inv_sqrt2;
      m(2, 2) = -1.;          // (1,1) entry is -eta_10
      return m;
    }();
    return map;
  }

  //------------------------------------------------------------------------------
  // devgrad
  //------------------------------------------------------------------------------

  MatrixXd assemble_devgrad(const CoreSpaces & core, int iT)
  {
    const Mesh & mesh = core.mesh();
    const Cell & T = mesh.cell(iT);
    const int k = core.degree();
    DofLayout in = devgrad_layout(mesh, iT, k);
    DofLayout out = symcurl_layout(mesh, iT, k);
    MatrixXd DG = MatrixXd::Zero(out.total, in.total);

    const auto & traceless = traceless3_components();

    // vertex components: dev of the vertex gradient
    for (size_t vi = 0; vi < T.vertices.size(); vi++) {
      const DofBlock & src = in.block(Slot::VertexGradient, vi);
      const DofBlock & dst = out.block(Slot::VertexTraceless, vi);
      for (int c = 0; c < 8; c++) {
        for (int a = 0; a < 3; a++) {
          for (int b = 0; b < 3; b++) {
            DG(dst.offset + c, src.offset + 3 * a + b) += traceless[c](a, b);
          }
        }
      }
    }

    // edge components
    for (size_t ei = 0; ei < T.edges.size(); ei++) {
      int iE = T.edges[ei];
      const Edge & E = mesh.edge(iE);
      const auto & ed = core.edge(iE);
      int nk = k + 1;      // dim P^k(E)
      int nk1 = k + 2;     // dim P^{k+1}(E)
      int v1 = local_vertex_index(T, E.vertex[0]);
      int v2 = local_vertex_index(T, E.vertex[1]);
      const DofBlock & bV1 = in.block(Slot::VertexValue, v1);
      const DofBlock & bV2 = in.block(Slot::VertexValue, v2);
      const DofBlock & bG1 = in.block(Slot::VertexGradient, v1);
      const DofBlock & bG2 = in.block(Slot::VertexGradient, v2);
      const DofBlock & btE = in.block(Slot::EdgeTangent, ei);
      const DofBlock & bnE = in.block(Slot::EdgeNormal, ei);
      const DofBlock & bGE = in.block(Slot::EdgeGradient, ei);
      Vector3d normals[2] = {E.normal1, E.normal2};

      // tau_E block: G_E - (1/3)(tr G_E + D_E^k(v.t_E data)) Id_2
      {
        const DofBlock & dst = out.block(Slot::EdgeMatrix, ei);
        for (int a = 0; a < 2; a++) {
          for (int b = 0; b < 2; b++) {
            int comp = 2 * a + b;
            for (int r = 0; r < nk; r++) {
              DG(dst.offset + comp * nk + r, bGE.offset + comp * nk + r) += 1.;
            }
            if (a == b) {
              for (int r = 0; r < nk; r++) {
                // -(1/3) tr G_E
                DG(dst.offset + comp * nk + r, bGE.offset + 0 * nk + r) -= 1. / 3.;
                DG(dst.offset + comp * nk + r, bGE.offset + 3 * nk + r) -= 1. / 3.;
                // -(1/3) D_E^k(v_V1.t_E, v_V2.t_E, v_tE)
                for (int d = 0; d < 3; d++) {
                  DG(dst.offset + comp * nk + r, bV1.offset + d) -= ed.D_k(r, 0) * E.tangent(d) / 3.;
                  DG(dst.offset + comp * nk + r, bV2.offset + d) -= ed.D_k(r, 1) * E.tangent(d) / 3.;
                }
                for (int j = 0; j < btE.size; j++) {
                  DG(dst.offset + comp * nk + r, btE.offset + j) -= ed.D_k(r, 2 + j) / 3.;
                }
              }
            }
          }
        }
      }

      // tau_{t,E} block: D_E^{k+1} of the edge-normal components of v
      {
        const DofBlock & dst = out.block(Slot::EdgeNormalTangent, ei);
        for (int c = 0; c < 2; c++) {
          for (int r = 0; r < nk1; r++) {
            for (int d = 0; d < 3; d++) {
              DG(dst.offset + c * nk1 + r, bV1.offset + d) += ed.D_kp1(r, 0) * normals[c](d);
              DG(dst.offset + c * nk1 + r, bV2.offset + d) += ed.D_kp1(r, 1) * normals[c](d);
            }
            for (int j = 0; j < nk; j++) {
              DG(dst.offset + c * nk1 + r, bnE.offset + c * nk + j) += ed.D_kp1(r, 2 + j);
            }
          }
        }
      }

      // C_E block: D_E^{k+1} of the edge-normal block of the gradient data
      {
        const DofBlock & dst = out.block(Slot::EdgeC, ei);
        for (int a = 0; a < 2; a++) {
          for (int b = 0; b < 2; b++) {
            int comp = 2 * a + b;
            for (int r = 0; r < nk1; r++) {
              for (int i = 0; i < 3; i++) {
                for (int j = 0; j < 3; j++) {
                  double w = normals[a](i) * normals[b](j);
                  if (w == 0.) continue;
                  DG(dst.offset + comp * nk1 + r, bG1.offset + 3 * i + j) += ed.D_kp1(r, 0) * w;
                  DG(dst.offset + comp * nk1 + r, bG2.offset + 3 * i + j) += ed.D_kp1(r, 1) * w;
                }
              }
              for (int j = 0; j < nk; j++) {
                DG(dst.offset + comp * nk1 + r, bGE.offset + comp * nk + j) += ed.D_kp1(r, 2 + j);
              }
            }
          }
        }
      }
    }

    // face components
    for (size_t fi = 0; fi < T.faces.size(); fi++) {
      int iF = T.faces[fi];
      const Face & F = mesh.face(iF);
      const auto & fd = core.face(iF);
      const DofBlock & bnF = in.block(Slot::FaceNormal, fi);
      const DofBlock & btF = in.block(Slot::FaceTangent, fi);
      const DofBlock & bGF = in.block(Slot::FaceDivergence, fi);
      PolyBasis Pk_F = CoreSpaces::truncate(fd.P, k);
      PolyBasis Pkm1_F = CoreSpaces::truncate(fd.P, k - 1);

      // normal-tangential component into RT^{k+1}(F)
      {
        const DofBlock & dst = out.block(Slot::FaceRT, fi);
        PolyBasis divRT = apply_divergence(fd.RT);
        auto dv = evaluate(divRT, fd.quad.points);
        auto pv = evaluate(Pk_F, fd.quad.points);
        DG.block(dst.offset, bnF.offset, dst.size, bnF.size) -=
          dv[0] * fd.quad.weights.asDiagonal() * pv[0].transpose();

        for (size_t li = 0; li < F.edges.size(); li++) {
          int iE = F.edges[li];
          const Edge & E = mesh.edge(iE);
          const auto & ed = core.edge(iE);
          int lei = -1;
          for (size_t e2 = 0; e2 < T.edges.size(); e2++) {
            if (T.edges[e2] == iE) lei = static_cast<int>(e2);
          }
          const DofBlock & bnE = in.block(Slot::EdgeNormal, lei);
          double sgn = F.edge_sign[li];
          Vector2d nFE_f = in_face(F, F.edge_normal[li]);
          auto rtE = evaluate(fd.RT, ed.quad.points);
          MatrixXd rt_dot_nFE = nFE_f(0) * rtE[0] + nFE_f(1) * rtE[1];
          PolyBasis PkE = CoreSpaces::truncate(ed.P, k);
          auto peE = evaluate(PkE, ed.quad.points);
          MatrixXd base = rt_dot_nFE * ed.quad.weights.asDiagonal() * peE[0].transpose();
          Vector3d normals[2] = {E.normal1, E.normal2};
          for (int c = 0; c < 2; c++) {
            double factor = sgn * normals[c].dot(F.normal);
            if (factor == 0.) continue;
            DG.block(dst.offset, bnE.offset + c * PkE.size(), dst.size, PkE.size()) += factor * base;
          }
        }
      }

      // tangential-tangential component into CGtrim^k(F)
      if (fd.CG.size() > 0) {
        const DofBlock & dst = out.block(Slot::FaceCG, fi);
        PolyBasis vdivCG = apply_matrix_divergence(fd.CG);
        auto vd = evaluate(vdivCG, fd.quad.points);
        auto pm = evaluate(Pkm1_F, fd.quad.points);
        for (int c = 0; c < 2; c++) {
          DG.block(dst.offset, btF.offset + c * Pkm1_F.size(), dst.size, Pkm1_F.size()) -=
            vd[c] * fd.quad.weights.asDiagonal() * pm[0].transpose();
        }
        PolyBasis trCG = apply_trace(fd.CG);
        auto tv = evaluate(trCG, fd.quad.points);
        DG.block(dst.offset, bGF.offset, dst.size, bGF.size) -=
          (1. / 3.) * tv[0] * fd.quad.weights.asDiagonal() * pm[0].transpose();

        for (size_t li = 0; li < F.edges.size(); li++) {
          int iE = F.edges[li];
          const Edge & E = mesh.edge(iE);
          const auto & ed = core.edge(iE);
          int lei = -1;
          for (size_t e2 = 0; e2 < T.edges.size(); e2++) {
            if (T.edges[e2] == iE) lei = static_cast<int>(e2);
          }
          const DofBlock & btE = in.block(Slot::EdgeTangent, lei);
          const DofBlock & bnE = in.block(Slot::EdgeNormal, lei);
          double sgn = F.edge_sign[li];
          Vector2d tE_f = in_face(F, E.tangent);
          Vector2d nFE_f = in_face(F, F.edge_normal[li]);
          auto cgE = evaluate(fd.CG, ed.quad.points);

          MatrixXd t_cg_n = MatrixXd::Zero(dst.size, ed.quad.size());
          MatrixXd n_cg_n = MatrixXd::Zero(dst.size, ed.quad.size());
          for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
              t_cg_n += tE_f(a) * nFE_f(b) * cgE[2 * a + b];
              n_cg_n += nFE_f(a) * nFE_f(b) * cgE[2 * a + b];
            }
          }
          PolyBasis PkE = CoreSpaces::truncate(ed.P, k);
          PolyBasis Pkm1E = CoreSpaces::truncate(ed.P, k - 1);
          if (Pkm1E.size() > 0) {
            auto pe = evaluate(Pkm1E, ed.quad.points);
            DG.block(dst.offset, btE.offset, dst.size, btE.size) +=
              sgn * t_cg_n * ed.quad.weights.asDiagonal() * pe[0].transpose();
          }
          auto pe = evaluate(PkE, ed.quad.points);
          MatrixXd base = n_cg_n * ed.quad.weights.asDiagonal() * pe[0].transpose();
          Vector3d normals[2] = {E.normal1, E.normal2};
          for (int c = 0; c < 2; c++) {
            double factor = sgn * normals[c].dot(F.edge_normal[li]);
            if (factor == 0.) continue;
            DG.block(dst.offset, bnE.offset + c * PkE.size(), dst.size, PkE.size()) += factor * base;
          }
        }
      }
    }

    // element component into SRtrim^k(T)
    const auto & cd = core.cell(iT);
    if (cd.SR.size() > 0) {
      const DofBlock & dst = out.block(Slot::CellSR);
      const DofBlock & bT = in.block(Slot::CellValue);
      PolyBasis vdivSR = apply_matrix_divergence(cd.SR);
      auto vd = evaluate(vdivSR, cd.quad.points);
      PolyBasis Pkm1_T = CoreSpaces::truncate(cd.P, k - 1);
      if (Pkm1_T.size() > 0) {
        auto pv = evaluate(Pkm1_T, cd.quad.points);
        for (int c = 0; c < 3; c++) {
          DG.block(dst.offset, bT.offset + c * Pkm1_T.size(), dst.size, Pkm1_T.size()) -=
            vd[c] * cd.quad.weights.asDiagonal() * pv[0].transpose();
        }
      }
      for (size_t fi = 0; fi < T.faces.size(); fi++) {
        int iF = T.faces[fi];
        const Face & F = mesh.face(iF);
        const auto & fd = core.face(iF);
        double sgn = T.face_sign[fi];
        const DofBlock & bnF = in.block(Slot::FaceNormal, fi);
        const DofBlock & btF = in.block(Slot::FaceTangent, fi);
        auto srF = evaluate(cd.SR, fd.quad.points);

        MatrixXd n_sr_n = MatrixXd::Zero(dst.size, fd.quad.size());
        for (int a = 0; a < 3; a++)
          for (int b = 0; b < 3; b++)
            if (F.normal(a) != 0. && F.normal(b) != 0.)
              n_sr_n += F.normal(a) * F.normal(b) * srF[3 * a + b];
        PolyBasis Pk_F = CoreSpaces::truncate(fd.P, k);
        auto pk = evaluate(Pk_F, fd.quad.points);
        DG.block(dst.offset, bnF.offset, dst.size, bnF.size) +=
          sgn * n_sr_n * fd.quad.weights.asDiagonal() * pk[0].transpose();

        PolyBasis Pkm1_F = CoreSpaces::truncate(fd.P, k - 1);
        if (Pkm1_F.size() > 0) {
          auto pm = evaluate(Pkm1_F, fd.quad.points);
          Vector3d tangents[2] = {F.tangent1, F.tangent2};
          for (int c = 0; c < 2; c++) {
            MatrixXd t_sr_n = MatrixXd::Zero(dst.size, fd.quad.size());
            for (int a = 0; a < 3; a++)
              for (int b = 0; b < 3; b++)
                if (tangents[c](a) != 0. && F.normal(b) != 0.)
                  t_sr_n += tangents[c](a) * F.normal(b) * srF[3 * a + b];
            DG.block(dst.offset, btF.offset + c * Pkm1_F.size(), dst.size, Pkm1_F.size()) +=
              sgn * t_sr_n * fd.quad.weights.asDiagonal() * pm[0].transpose();
          }
        }
      }
    }
    return DG;
  }

  //------------------------------------------------------------------------------
  // symcurl
  //------------------------------------------------------------------------------

  MatrixXd assemble_symcurl(const CoreSpaces & core, int iT)
  {
    const Mesh & mesh = core.mesh();
    const Cell & T = mesh.cell(iT);
    const int k = core.degree();
    DofLayout in = symcurl_layout(mesh, iT, k);
    DofLayout out = divdiv_layout(mesh, iT, k);
    MatrixXd SC = MatrixXd::Zero(out.total, in.total);

    const MatrixXd & cmap = symmetrizing_tensor_map();
    const auto & traceless = traceless3_components();

    // edge components
    for (size_t ei = 0; ei < T.edges.size(); ei++) {
      int iE = T.edges[ei];
      const Edge & E = mesh.edge(iE);
      const auto & ed = core.edge(iE);
      int nk = k + 1, nk1 = k + 2;
      int v1 = local_vertex_index(T, E.vertex[0]);
      int v2 = local_vertex_index(T, E.vertex[1]);
      const DofBlock & dst = out.block(Slot::EdgeSym, ei);
      const DofBlock & bCE = in.block(Slot::EdgeC, ei);
      const DofBlock & btauE = in.block(Slot::EdgeMatrix, ei);
      const DofBlock & bv1 = in.block(Slot::VertexTraceless, v1);
      const DofBlock & bv2 = in.block(Slot::VertexTraceless, v2);
      Vector3d normals[2] = {E.normal1, E.normal2};

      for (int s = 0; s < 3; s++) {
        for (int a = 0; a < 2; a++) {
          for (int b = 0; b < 2; b++) {
            int comp = 2 * a + b;
            double w = cmap(s, comp);
            if (w == 0.) continue;
            for (int r = 0; r < nk1; r++) {
              SC(dst.offset + s * nk1 + r, bCE.offset + comp * nk1 + r) += w;
              for (int j = 0; j < nk; j++) {
                SC(dst.offset + s * nk1 + r, btauE.offset + comp * nk + j) -= w * ed.D_kp1(r, 2 + j);
              }
              for (int c = 0; c < 8; c++) {
                double nn = normals[a].dot(traceless[c] * normals[b]);
                if (nn == 0.) continue;
                SC(dst.offset + s * nk1 + r, bv1.offset + c) -= w * ed.D_kp1(r, 0) * nn;
                SC(dst.offset + s * nk1 + r, bv2.offset + c) -= w * ed.D_kp1(r, 1) * nn;
              }
            }
          }
        }
      }
    }

    // face components
    for (size_t fi = 0; fi < T.faces.size(); fi++) {
      int iF = T.faces[fi];
      const Face & F = mesh.face(iF);
      const auto & fd = core.face(iF);
      const DofBlock & dnn = out.block(Slot::FaceValue, fi);
      const DofBlock & dD = out.block(Slot::FaceD, fi);
      const DofBlock & bRT = in.block(Slot::FaceRT, fi);
      const DofBlock & bCG = in.block(Slot::FaceCG, fi);

      // normal-normal component: int_F tau_RT . curl_F r - sum_E ...
      {
        PolyBasis curlP = apply_curl2(fd.P);
        auto cv = evaluate(curlP, fd.quad.points);
        auto rv = evaluate(fd.RT, fd.quad.points);
        SC.block(dnn.offset, bRT.offset, dnn.size, bRT.size) +=
          (cv[0] * fd.quad.weights.asDiagonal() * rv[0].transpose() +
           cv[1] * fd.quad.weights.asDiagonal() * rv[1].transpose());
      }

      // D component: -int_F tau_CG : curl_F grad_F r + edge terms
      if (fd.CG.size() > 0) {
        PolyBasis curlgrad = apply_curl2_rowwise(apply_gradient(fd.P));
        auto cg = evaluate(curlgrad, fd.quad.points);
        auto cgb = evaluate(fd.CG, fd.quad.points);
        MatrixXd block = MatrixXd::Zero(dD.size, bCG.size);
        for (int c = 0; c < 4; c++) {
          block -= cg[c] * fd.quad.weights.asDiagonal() * cgb[c].transpose();
        }
        SC.block(dD.offset, bCG.offset, dD.size, bCG.size) += block;
      }

      PolyBasis gradP = apply_gradient(fd.P);
      for (size_t li = 0; li < F.edges.size(); li++) {
        int iE = F.edges[li];
        const Edge & E = mesh.edge(iE);
        const auto & ed = core.edge(iE);
        int lei = -1;
        for (size_t e2 = 0; e2 < T.edges.size(); e2++) {
          if (T.edges[e2] == iE) lei = static_cast<int>(e2);
        }
        double sgn = F.edge_sign[li];
        const DofBlock & btauE = in.block(Slot::EdgeMatrix, lei);
        const DofBlock & btaut = in.block(Slot::EdgeNormalTangent, lei);
        const DofBlock & bCE = in.block(Slot::EdgeC, lei);
        int nk = k + 1, nk1 = k + 2;

        auto pF = evaluate(fd.P, ed.quad.points);       // face test functions on E
        auto gF = evaluate(gradP, ed.quad.points);      // their face gradients on E
        auto pE = evaluate(ed.P, ed.quad.points);       // edge P^{k+1}
        Vector2d nFE_f = in_face(F, F.edge_normal[li]);
        Vector2d tE_f = in_face(F, E.tangent);
        MatrixXd dn = nFE_f(0) * gF[0] + nFE_f(1) * gF[1]; // normal derivative along n_FE
        MatrixXd dt = tE_f(0) * gF[0] + tE_f(1) * gF[1];   // tangential derivative

        Vector3d normals[2] = {E.normal1, E.normal2};

        // SC_nn: - sum_E omega_FE int_E (tau_tE . n_F) r
        {
          MatrixXd base = pF[0] * ed.quad.weights.asDiagonal() * pE[0].transpose();
          for (int c = 0; c < 2; c++) {
            double factor = -sgn * normals[c].dot(F.normal);
            if (factor == 0.) continue;
            SC.block(dnn.offset, btaut.offset + c * nk1, dnn.size, nk1) += factor * base;
          }
        }
        // SC_D edge terms
        {
          // + omega int (tau_tE . n_FE) d_{n_FE} r
          MatrixXd base = dn * ed.quad.weights.asDiagonal() * pE[0].transpose();
          for (int c = 0; c < 2; c++) {
            double factor = sgn * normals[c].dot(F.edge_normal[li]);
            if (factor == 0.) continue;
            SC.block(dD.offset, btaut.offset + c * nk1, dD.size, nk1) += factor * base;
          }

          // - omega int (2 nFE^T tau_E nFE + nF^T tau_E nF) d_{t_E} r
          Vector2d en = in_edge_plane(E, F.edge_normal[li]);
          Vector2d nf = in_edge_plane(E, F.normal);
          PolyBasis PkE = CoreSpaces::truncate(ed.P, k);
          auto pkE = evaluate(PkE, ed.quad.points);
          MatrixXd base_t = dt * ed.quad.weights.asDiagonal() * pkE[0].transpose();
          for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
              double factor = -sgn * (2. * en(a) * en(b) + nf(a) * nf(b));
              if (factor == 0.) continue;
              SC.block(dD.offset, btauE.offset + (2 * a + b) * nk, dD.size, nk) += factor * base_t;
            }
          }

          // - omega int (nFE^T C_E nFE) r
          MatrixXd base_c = pF[0] * ed.quad.weights.asDiagonal() * pE[0].transpose();
          for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
              double factor = -sgn * en(a) * en(b);
              if (factor == 0.) continue;
              SC.block(dD.offset, bCE.offset + (2 * a + b) * nk1, dD.size, nk1) += factor * base_c;
            }
          }

          // + omega [ (nFE^T tau_V nFE) r ]_{V1}^{V2}
          int v1 = local_vertex_index(T, E.vertex[0]);
          int v2 = local_vertex_index(T, E.vertex[1]);
          const DofBlock & bv1 = in.block(Slot::VertexTraceless, v1);
          const DofBlock & bv2 = in.block(Slot::VertexTraceless, v2);
          Eigen::Matrix<double, Eigen::Dynamic, 3> ends(2, 3);
          ends.row(0) = mesh.vertex(E.vertex[0]).coords.transpose();
          ends.row(1) = mesh.vertex(E.vertex[1]).coords.transpose();
          MatrixXd pF_ends = evaluate(fd.P, ends)[0];
          const Vector3d nFE = F.edge_normal[li];
          for (int c = 0; c < 8; c++) {
            double nn = nFE.dot(traceless3_components()[c] * nFE);
            if (nn == 0.) continue;
            SC.block(dD.offset, bv2.offset + c, dD.size, 1) += sgn * nn * pF_ends.col(1);
            SC.block(dD.offset, bv1.offset + c, dD.size, 1) -= sgn * nn * pF_ends.col(0);
          }
        }
      }
    }

    // element component into Htrim^k(T)
    const auto & cd = core.cell(iT);
    if (cd.H.size() > 0) {
      const DofBlock & dst = out.block(Slot::CellHtrim);
      const DofBlock & bSR = in.block(Slot::CellSR);
      if (cd.SR.size() > 0) {
        PolyBasis curlH = apply_curl3(cd.H);
        auto ch = evaluate(curlH, cd.quad.points);
        auto sr = evaluate(cd.SR, cd.quad.points);
        SC.block(dst.offset, bSR.offset, dst.size, bSR.size) +=
          pair_integral(ch, sr, cd.quad.weights);
      }
      for (size_t fi = 0; fi < T.faces.size(); fi++) {
        int iF = T.faces[fi];
        const Face & F = mesh.face(iF);
        const auto & fd = core.face(iF);
        double sgn = T.face_sign[fi];
        const DofBlock & bRT = in.block(Slot::FaceRT, fi);
        const DofBlock & bCG = in.block(Slot::FaceCG, fi);

        PolyBasis HxN = cross_matrix_constant(cd.H, F.normal);
        auto hx = evaluate(HxN, fd.quad.points);
        Vector3d tangents[2] = {F.tangent1, F.tangent2};

        if (fd.CG.size() > 0) {
          auto cg = evaluate(fd.CG, fd.quad.points);
          MatrixXd block = MatrixXd::Zero(dst.size, bCG.size);
          for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
              MatrixXd tt = MatrixXd::Zero(dst.size, fd.quad.size());
              for (int i = 0; i < 3; i++)
                for (int j = 0; j < 3; j++)
                  if (tangents[a](i) != 0. && tangents[b](j) != 0.)
                    tt += tangents[a](i) * tangents[b](j) * hx[3 * i + j];
              block += tt * fd.quad.weights.asDiagonal() * cg[2 * a + b].transpose();
            }
          }
          SC.block(dst.offset, bCG.offset, dst.size, bCG.size) += sgn * block;
        }
        {
          auto rt = evaluate(fd.RT, fd.quad.points);
          MatrixXd block = MatrixXd::Zero(dst.size, bRT.size);
          for (int b = 0; b < 2; b++) {
            MatrixXd nt = MatrixXd::Zero(dst.size, fd.quad.size());
            for (int i = 0; i < 3; i++)
              for (int j = 0; j < 3; j++)
                if (F.normal(i) != 0. && tangents[b](j) != 0.)
                  nt += F.normal(i) * tangents[b](j) * hx[3 * i + j];
            block += nt * fd.quad.weights.asDiagonal() * rt[b].transpose();
          }
          SC.block(dst.offset, bRT.offset, dst.size, bRT.size) += sgn * block;
        }
      }
    }
    return SC;
  }

  //------------------------------------------------------------------------------
  // divdiv
  //------------------------------------------------------------------------------

  MatrixXd assemble_divdiv_op(const CoreSpaces & core, int iT)
  {
    const Mesh & mesh = core.mesh();
    const Cell & T = mesh.cell(iT);
    const int k = core.degree();
    DofLayout in = divdiv_layout(mesh, iT, k);
    const auto & cd = core.cell(iT);
    PolyBasis Pk_T = CoreSpaces::truncate(cd.P, k);
    MatrixXd DD = MatrixXd::Zero(Pk_T.size(), in.total);

    // int_T ups_H : Hess v
    if (cd.H.size() > 0 && k >= 2) {
      PolyBasis hess = apply_hessian(Pk_T);
      auto hv = evaluate(hess, cd.quad.points);
      auto hb = evaluate(cd.H, cd.quad.points);
      const DofBlock & bH = in.block(Slot::CellHtrim);
      DD.block(0, bH.offset, Pk_T.size(), bH.size) += pair_integral(hv, hb, cd.quad.weights);
    }

    PolyBasis gradPk = (k >= 1) ? apply_gradient(Pk_T) : Pk_T; // unused at k = 0
    const auto & sym2 = sym2_components();

    for (size_t fi = 0; fi < T.faces.size(); fi++) {
      int iF = T.faces[fi];
      const Face & F = mesh.face(iF);
      const auto & fd = core.face(iF);
      double sgnF = T.face_sign[fi];
      const DofBlock & bnn = in.block(Slot::FaceValue, fi);
      const DofBlock & bD = in.block(Slot::FaceD, fi);

      auto pT = evaluate(Pk_T, fd.quad.points);
      auto pF = evaluate(fd.P, fd.quad.points);

      // - omega_TF int_F ups_F d_{n_F} v
      if (k >= 1) {
        auto gT = evaluate(gradPk, fd.quad.points);
        MatrixXd dn = MatrixXd::Zero(Pk_T.size(), fd.quad.size());
        for (int c = 0; c < 3; c++)
          if (F.normal(c) != 0.) dn += F.normal(c) * gT[c];
        DD.block(0, bnn.offset, Pk_T.size(), bnn.size) -=
          sgnF * dn * fd.quad.weights.asDiagonal() * pF[0].transpose();
      }

      // + omega_TF int_F D_F v
      DD.block(0, bD.offset, Pk_T.size(), bD.size) +=
        sgnF * pT[0] * fd.quad.weights.asDiagonal() * pF[0].transpose();

      // - omega_TF omega_FE int_E (nFE^T ups_E nF) v
      for (size_t li = 0; li < F.edges.size(); li++) {
        int iE = F.edges[li];
        const Edge & E = mesh.edge(iE);
        const auto & ed = core.edge(iE);
        int lei = -1;
        for (size_t e2 = 0; e2 < T.edges.size(); e2++) {
          if (T.edges[e2] == iE) lei = static_cast<int>(e2);
        }
        const DofBlock & bE = in.block(Slot::EdgeSym, lei);
        double sgn = sgnF * F.edge_sign[li];
        Vector2d en = in_edge_plane(E, F.edge_normal[li]);
        Vector2d nf = in_edge_plane(E, F.normal);
        auto pTE = evaluate(Pk_T, ed.quad.points);
        auto pE = evaluate(ed.P, ed.quad.points);
        MatrixXd base = pTE[0] * ed.quad.weights.asDiagonal() * pE[0].transpose();
        int nk1 = k + 2;
        for (int s = 0; s < 3; s++) {
          double factor = -sgn * en.dot(sym2[s] * nf);
          if (factor == 0.) continue;
          DD.block(0, bE.offset + s * nk1, Pk_T.size(), nk1) += factor * base;
        }
      }
    }
    return DD;
  }

  ComplexOperators build_complex_operators(const CoreSpaces & core, int iT)
  {
    ComplexOperators ops;
    const Mesh & mesh = core.mesh();
    const int k = core.degree();
    ops.devgrad = devgrad_layout(mesh, iT, k);
    ops.symcurl = symcurl_layout(mesh, iT, k);
    ops.divdiv = divdiv_layout(mesh, iT, k);
    ops.DG = assemble_devgrad(core, iT);
    ops.SC = assemble_symcurl(core, iT);
    ops.DD = assemble_divdiv_op(core, iT);
    return ops;
  }

} // namespace ddr
