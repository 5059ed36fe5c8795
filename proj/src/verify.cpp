#include <ddr/verify.hpp>
#include <ddr/interpolators.hpp>

#include <Eigen/SVD>
#include <json.hpp>

#include <random>

namespace ddr
{

  namespace
  {
    int svd_rank(const Eigen::JacobiSVD<MatrixXd> & svd)
    {
      const VectorXd & sv = svd.singularValues();
      if (sv.size() == 0 || sv(0) == 0.) return 0;
      int rank = 0;
      for (int i = 0; i < sv.size(); i++) {
        if (sv(i) > rank_cutoff * sv(0)) rank++;
      }
      return rank;
    }
  }

  ComplexCheck check_complex(const CoreSpaces & core, int iT, int trials, unsigned seed)
  {
    ComplexCheck check;
    check.cell = iT;
    check.k = core.degree();
    check.trials = trials;
    ComplexOperators ops = build_complex_operators(core, iT);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    check.max_residual_SC_DG = 0.;
    check.max_residual_DD_SC = 0.;
    for (int trial = 0; trial < trials; trial++) {
      VectorXd u(ops.devgrad.total);
      for (int i = 0; i < u.size(); i++) u(i) = gauss(rng);
      u.normalize();
      check.max_residual_SC_DG = std::max(check.max_residual_SC_DG, (ops.SC * (ops.DG * u)).norm());
      VectorXd t(ops.symcurl.total);
      for (int i = 0; i < t.size(); i++) t(i) = gauss(rng);
      t.normalize();
      check.max_residual_DD_SC = std::max(check.max_residual_DD_SC, (ops.DD * (ops.SC * t)).norm());
    }
    check.norm_SC_DG = (ops.SC * ops.DG).norm();
    check.norm_DD_SC = (ops.DD * ops.SC).norm();
    return check;
  }

  ExactnessReport check_exactness(const CoreSpaces & core, int iT)
  {
    const Mesh & mesh = core.mesh();
    const Cell & T = mesh.cell(iT);
    const int k = core.degree();

    ExactnessReport report;
    report.cell = iT;
    report.k = k;
    report.euler_characteristic = static_cast<int>(T.vertices.size()) -
                                  static_cast<int>(T.edges.size()) +
                                  static_cast<int>(T.faces.size());
    report.trivial_topology = (report.euler_characteristic == 2);

    ComplexOperators ops = build_complex_operators(core, iT);
    report.dim_devgrad = ops.devgrad.total;
    report.dim_symcurl = ops.symcurl.total;
    report.dim_divdiv = ops.divdiv.total;
    report.dim_poly = poly_dim(3, k);

    Eigen::JacobiSVD<MatrixXd> svd_DG(ops.DG, Eigen::ComputeThinV);
    Eigen::JacobiSVD<MatrixXd> svd_SC(ops.SC);
    Eigen::JacobiSVD<MatrixXd> svd_DD(ops.DD);
    report.rank_DG = svd_rank(svd_DG);
    report.rank_SC = svd_rank(svd_SC);
    report.rank_DD = svd_rank(svd_DD);
    report.ker_DG = report.dim_devgrad - report.rank_DG;
    report.ker_SC = report.dim_symcurl - report.rank_SC;
    report.ker_DD = report.dim_divdiv - report.rank_DD;
    report.tail_defect = report.ker_DD - report.rank_SC;

    // kernel of DG vs the interpolates of the lowest-order Raviart-Thomas fields:
    // project each interpolate onto the orthonormal kernel basis (trailing right
    // singular vectors) and measure the relative defect
    report.rt1_containment_residual = 0.;
    {
      MatrixXd V = svd_DG.matrixV();
      MatrixXd kernel = V.rightCols(report.ker_DG);
      for (const PolyField & w : rt1_basis(mesh, iT)) {
        VectorXd dofs = interpolate_devgrad(core, iT, w);
        double defect = (dofs - kernel * (kernel.transpose() * dofs)).norm() / dofs.norm();
        report.rt1_containment_residual = std::max(report.rt1_containment_residual, defect);
      }
    }

    report.head_exact = (report.ker_DG == 4) && (report.rt1_containment_residual <= 1e-9) &&
                        (report.ker_SC == report.rank_DG);
    if (k >= 1) {
      report.tail_exact = (report.tail_defect == 0) && (report.rank_DD == report.dim_poly);
      report.pass = report.head_exact && report.tail_exact;
    } else {
      // the tail is not exact at k = 0: the defect equals 3 on trivial topology
      report.tail_exact = (report.tail_defect == 3) && (report.rank_DD == report.dim_poly);
      report.pass = report.head_exact && report.tail_exact;
    }
    return report;
  }

  DimensionCheck check_dimensions(const Mesh & mesh, int iT, int k)
  {
    const Cell & T = mesh.cell(iT);
    int nv = static_cast<int>(T.vertices.size());
    int ne = static_cast<int>(T.edges.size());
    int nf = static_cast<int>(T.faces.size());

    DimensionCheck check;
    check.cell = iT;
    check.k = k;
    check.devgrad_built = devgrad_layout(mesh, iT, k).total;
    check.devgrad_formula = devgrad_dim_formula(nv, ne, nf, k);
    check.symcurl_built = symcurl_layout(mesh, iT, k).total;
    check.symcurl_formula = symcurl_dim_formula(nv, ne, nf, k);
    check.divdiv_built = divdiv_layout(mesh, iT, k).total;
    check.divdiv_formula = divdiv_dim_formula(ne, nf, k);
    check.poly_built = poly_dim(3, k);
    check.poly_formula = 1 + (k * k * k + 6 * k * k + 11 * k) / 6;
    check.pass = (check.devgrad_built == check.devgrad_formula) &&
                 (check.symcurl_built == check.symcurl_formula) &&
                 (check.divdiv_built == check.divdiv_formula) &&
                 (check.poly_built == check.poly_formula);
    if (!check.pass) {
      throw DimensionMismatch("check_dimensions: constructed layout disagrees with the closed form");
    }
    return check;
  }

  FaceDivergenceCheck check_face_divergence(const Mesh & mesh, int iF, int ell)
  {
    FaceDivergenceCheck check;
    check.face = iF;
    check.ell = ell;
    EntityRef face{EntityKind::Face, iF};

    if (ell < 1) {
      check.rows = check.cols = 0;
      check.sigma_min = check.sigma_max = 0.;
      check.monomial_identity_residual = 0.;
      check.pass = true;
      return check;
    }

    PolyBasis compl_basis = decomposition_basis(mesh, face, SpaceKind::CGolyCompl, ell);
    PolyBasis target = tensor_basis(mesh, face, ell - 1, Codomain::Vec2);
    PolyBasis div = apply_matrix_divergence(compl_basis);
    QuadratureRule quad = face_quadrature(mesh, iF, 2 * ell);
    MatrixXd M = gram_matrix(div, target, quad);
    check.rows = static_cast<int>(M.rows());
    check.cols = static_cast<int>(M.cols());
    Eigen::JacobiSVD<MatrixXd> svd(M);
    check.sigma_max = svd.singularValues()(0);
    check.sigma_min = svd.singularValues()(svd.singularValues().size() - 1);

    // the image of (1, 0): div_F [(Id - adj)(e_1 (x - x_F)^T)] = (3, 0)
    {
      PolyBasis source = tensor_basis(mesh, face, 0, Codomain::Vec2);
      PolyBasis tensored = apply_tensor_coordinate(source);
      PolyBasis raw = tensored;
      raw.coeff -= apply_adjugate2(tensored).coeff;
      PolyBasis divA = apply_matrix_divergence(raw);
      double c = source.coeff(0, 0); // normalization of the constant basis function
      Eigen::Matrix<double, Eigen::Dynamic, 3> pt(1, 3);
      pt.row(0) = mesh.face(iF).center.transpose();
      auto vals = evaluate(divA, pt);
      check.monomial_identity_residual = std::max(std::abs(vals[0](0, 0) / c - 3.),
                                                  std::abs(vals[1](0, 0) / c));
    }

    check.pass = (check.rows == check.cols) && (check.rows == ell * ell + ell) &&
                 (check.sigma_min / check.sigma_max > 1e-8) &&
                 (check.monomial_identity_residual <= 1e-12);
    return check;
  }

  std::string report_json(const std::vector<ComplexCheck> & complex_checks,
                          const std::vector<ExactnessReport> & exactness,
                          const std::vector<DimensionCheck> & dims,
                          const std::vector<FaceDivergenceCheck> & facediv)
  {
    nlohmann::json out;
    out["complex"] = nlohmann::json::array();
    for (const auto & c : complex_checks) {
      out["complex"].push_back({{"cell", c.cell},
                                {"k", c.k},
                                {"trials", c.trials},
                                {"max_residual_SC_DG", c.max_residual_SC_DG},
                                {"max_residual_DD_SC", c.max_residual_DD_SC},
                                {"norm_SC_DG", c.norm_SC_DG},
                                {"norm_DD_SC", c.norm_DD_SC},
                                {"pass", c.pass()}});
    }
    out["exactness"] = nlohmann::json::array();
    for (const auto & r : exactness) {
      out["exactness"].push_back({{"cell", r.cell},
                                  {"k", r.k},
                                  {"euler_characteristic", r.euler_characteristic},
                                  {"dims", {r.dim_devgrad, r.dim_symcurl, r.dim_divdiv, r.dim_poly}},
                                  {"rank_DG", r.rank_DG},
                                  {"rank_SC", r.rank_SC},
                                  {"rank_DD", r.rank_DD},
                                  {"ker_DG", r.ker_DG},
                                  {"ker_SC", r.ker_SC},
                                  {"ker_DD", r.ker_DD},
                                  {"rt1_containment_residual", r.rt1_containment_residual},
                                  {"tail_defect", r.tail_defect},
                                  {"tail_defect_note", (r.k == 0 ? "expected (k=0)" : "")},
                                  {"pass", r.pass}});
    }
    out["dimensions"] = nlohmann::json::array();
    for (const auto & d : dims) {
      out["dimensions"].push_back({{"cell", d.cell},
                                   {"k", d.k},
                                   {"devgrad", {d.devgrad_built, d.devgrad_formula}},
                                   {"symcurl", {d.symcurl_built, d.symcurl_formula}},
                                   {"divdiv", {d.divdiv_built, d.divdiv_formula}},
                                   {"poly", {d.poly_built, d.poly_formula}},
                                   {"pass", d.pass}});
    }
    out["face_divergence"] = nlohmann::json::array();
    for (const auto & f : facediv) {
      out["face_divergence"].push_back({{"face", f.face},
                                        {"ell", f.ell},
                                        {"size", {f.rows, f.cols}},
                                        {"sigma_min", f.sigma_min},
                                        {"sigma_max", f.sigma_max},
                                        {"monomial_identity_residual", f.monomial_identity_residual},
                                        {"pass", f.pass}});
    }
    return out.dump(2);
  }

} // namespace ddr
