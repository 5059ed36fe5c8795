#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ddr/biharmonic.hpp>
#include <ddr/interpolators.hpp>

#include <Eigen/Eigenvalues>

using namespace ddr;

TEST_CASE("manufactured case values")
{
  ManufacturedCase mc = manufactured_case("paper-bubble");
  Vector3d center(0.5, 0.5, 0.5);
  // u at the center: (1/16)^3
  CHECK(mc.u.eval_scalar(center) == doctest::Approx(2.44140625e-4).epsilon(1e-13));
  // f = biharmonic of u at the center (frozen from the 1D factor calculus:
  // sum_i g''''(1/2) g(1/2)^2 + 2 sum_{i<j} g''(1/2)^2 g(1/2) with g''''=24, g''=-1)
  CHECK(mc.f.eval_scalar(center) == doctest::Approx(0.65625).epsilon(1e-13));
  // sigma = -Hess u
  PolyField hess = field_hessian(mc.u);
  CHECK((mc.sigma.eval_matrix(center) + hess.eval_matrix(center)).norm() <= 1e-14);

  // f agrees with a finite-difference biharmonic at a generic point
  Vector3d x(0.3, 0.7, 0.4);
  double eps = 1e-2;
  auto lap = [&](const Vector3d & p) {
    double sum = 0.;
    for (int d = 0; d < 3; d++) {
      Vector3d dp = Vector3d::Zero();
      dp(d) = eps;
      sum += (mc.u.eval_scalar(p + dp) - 2. * mc.u.eval_scalar(p) + mc.u.eval_scalar(p - dp)) /
             (eps * eps);
    }
    return sum;
  };
  double bilap = 0.;
  for (int d = 0; d < 3; d++) {
    Vector3d dp = Vector3d::Zero();
    dp(d) = eps;
    bilap += (lap(x + dp) - 2. * lap(x) + lap(x - dp)) / (eps * eps);
  }
  CHECK(mc.f.eval_scalar(x) == doctest::Approx(bilap).epsilon(1e-3));

  // u and its normal derivative vanish on the boundary
  PolyField grad_u = field_gradient(mc.u);
  for (double s : {0., 1.}) {
    Vector3d p(s, 0.33, 0.77);
    CHECK(std::abs(mc.u.eval_scalar(p)) <= 1e-15);
    CHECK(std::abs(grad_u.eval_vector(p)(0)) <= 1e-15);
  }

  CHECK_THROWS_AS(manufactured_case("unknown"), InvalidArgument);
}

TEST_CASE("global map deduplicates shared entities")
{
  Mesh mesh = build_cartesian_mesh(2);
  for (int k : {0, 1}) {
    GlobalDofMap map = build_global_map(mesh, k);
    int expected = mesh.n_faces() * 2 * poly_dim(2, k + 1) + mesh.n_edges() * 3 * (k + 2) +
                   mesh.n_cells() * CellSpaceDim::Htrim(k);
    CHECK(map.sigma_total == expected);
    CHECK(map.total == expected + mesh.n_cells() * poly_dim(3, k));
  }
}

TEST_CASE("system structure on one element")
{
  Mesh mesh = build_cartesian_mesh(1);
  CoreSpaces core(mesh, 0);
  GlobalSystem system = assemble(mesh, core, std::nullopt);
  // size = dim of the local divdiv space + dim P^0
  CHECK(system.map.total == divdiv_layout(mesh, 0, 0).total + 1);
  // symmetry
  Eigen::SparseMatrix<double> diff = system.matrix - Eigen::SparseMatrix<double>(system.matrix.transpose());
  CHECK(diff.norm() <= 1e-12 * system.matrix.norm());
}

TEST_CASE("zero right-hand side yields the zero solution")
{
  for (int n : {1, 2}) {
    for (int k : {0, 1}) {
      Mesh mesh = build_cartesian_mesh(n);
      CoreSpaces core(mesh, k, 2);
      GlobalSystem system = assemble(mesh, core, std::nullopt, 2);
      Solution sol = solve(system);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(sol.sigma.norm() + sol.u.norm() <= 1e-10);
      CHECK(sol.residual <= 1e-10);
    }
  }
}

TEST_CASE("parallel assembly matches the serial reference exactly")
{
  Mesh mesh = build_cartesian_mesh(2);
  CoreSpaces core(mesh, 0);
  ManufacturedCase mc = manufactured_case("paper-bubble");
  GlobalSystem serial = assemble(mesh, core, mc.f, 1);
  GlobalSystem parallel = assemble(mesh, core, mc.f, 2);
  CHECK((serial.rhs - parallel.rhs).norm() == 0.);
  Eigen::SparseMatrix<double> diff = serial.matrix - parallel.matrix;
  CHECK(diff.norm() == 0.);
}

TEST_CASE("Schur complement is positive definite on small meshes")
{
  for (int n : {1, 2}) {
    for (int k : {0, 1}) {
      if (n == 2 && k == 1) continue; // keep the dense inverse small
      Mesh mesh = build_cartesian_mesh(n);
      CoreSpaces core(mesh, k);
      GlobalSystem system = assemble(mesh, core, std::nullopt);
      MatrixXd K = MatrixXd(system.matrix);
      int ns = system.map.sigma_total;
      int nu = system.map.total - ns;
      MatrixXd A = K.topLeftCorner(ns, ns);
      MatrixXd B = K.bottomLeftCorner(nu, ns);
      MatrixXd schur = B * A.ldlt().solve(B.transpose());
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig(schur);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(eig.eigenvalues()(0) > 0.);
    }
  }
}

TEST_CASE("manufactured solve on the 2-cube mesh")
{
  Mesh mesh = build_cartesian_mesh(2);
  CoreSpaces core(mesh, 0, 2);
  ManufacturedCase mc = manufactured_case("paper-bubble");
  GlobalSystem system = assemble(mesh, core, mc.f, 2);
  Solution sol = solve(system);
  CHECK(sol.residual <= 1e-8);
  CHECK(std::isfinite(sol.sigma.norm()));

  ErrorNorms err = compute_error(mesh, core, system, sol, mc);
  CHECK(err.err_total > 0.);
  CHECK(std::isfinite(err.err_total));

  SUBCASE("error vanishes when the discrete solution is the interpolate")
  {
    Solution exact;
    exact.sigma = VectorXd::Zero(system.map.sigma_total);
    exact.u = VectorXd::Zero(system.map.total - system.map.sigma_total);
    for (int iT = 0; iT < mesh.n_cells(); iT++) {
      const DivDivLocal & local = system.locals[iT];
      std::vector<int> glob = system.map.local_to_global(mesh, iT, local.layout);
      VectorXd dofs = interpolate_divdiv(core, iT, mc.sigma);
      for (int i = 0; i < local.layout.total; i++) exact.sigma(glob[i]) = dofs(i);
      PolyBasis Pk = CoreSpaces::truncate(core.cell(iT).P, 0);
      QuadratureRule quad = cell_quadrature(mesh, iT, mc.u.degree);
      VectorXd proj = integrate_against(Pk, quad, mc.u.eval(quad.points));
      exact.u.segment(system.map.u_offset[iT] - system.map.sigma_total, proj.size()) = proj;
    }
    exact.residual = 0.;
    ErrorNorms zero_err = compute_error(mesh, core, system, exact, mc);
    CHECK(zero_err.err_total <= 1e-12);

    // absolute homogeneity of the error measure: scaling the difference doubles it
    Solution scaled;
    scaled.sigma = 2. * sol.sigma - exact.sigma;
    scaled.u = 2. * sol.u - exact.u;
    scaled.residual = 0.;
    ErrorNorms doubled = compute_error(mesh, core, system, scaled, mc);
    CHECK(doubled.err_total == doctest::Approx(2. * err.err_total).epsilon(1e-10));
  }

  SUBCASE("Galerkin residual of the discrete solution reproduces the data")
  {
    VectorXd z(system.map.total);
    z << sol.sigma, sol.u;
    CHECK((system.matrix * z - system.rhs).norm() <= 1e-8 * std::max(1., system.rhs.norm()));
  }
}

TEST_CASE("convergence rows and slope utilities")
{
  std::vector<ConvergenceRow> rows;
  CHECK(std::isnan(fitted_slope(rows)));
  rows.push_back({0.5, 100, 1., 1., 2.});
  CHECK(std::isnan(fitted_slope(rows)));
  rows.push_back({0.25, 800, 0.5, 0.5, 1.});
  CHECK(fitted_slope(rows) == doctest::Approx(1.).epsilon(1e-12));
  std::string csv = convergence_csv(rows);
  CHECK(csv.rfind("h,ndof,err_sigma,err_u,err_total\n", 0) == 0);
  CHECK(csv.find("0.25,800,") != std::string::npos);
}
