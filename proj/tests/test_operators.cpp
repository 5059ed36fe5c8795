#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ddr/interpolators.hpp>
#include <ddr/localops.hpp>

#include <Eigen/SVD>
#include <fstream>
#include <sstream>

using namespace ddr;

namespace
{
  double rel(const VectorXd & a, const VectorXd & b)
  {
    return (a - b).norm() / std::max({1e-30, a.norm(), b.norm()});
  }

  Mesh perturbed_hexahedron(unsigned seed = 3)
  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-0.15, 0.15);
    Matrix3d A = Matrix3d::Identity();
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++) A(i, j) += unif(rng);
    std::vector<Vector3d> coords;
    std::vector<std::vector<int>> faces = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                           {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
    std::vector<Vector3d> cube = {Vector3d(0, 0, 0), Vector3d(1, 0, 0), Vector3d(1, 1, 0),
                                  Vector3d(0, 1, 0), Vector3d(0, 0, 1), Vector3d(1, 0, 1),
                                  Vector3d(1, 1, 1), Vector3d(0, 1, 1)};
    for (const auto & v : cube) coords.push_back(A * v);
    return Mesh::build(std::move(coords), std::move(faces), {{0, 1, 2, 3, 4, 5}});
  }
}

TEST_CASE("the symmetrizing tensor map on reference inputs")
{
  const MatrixXd & cmap = symmetrizing_tensor_map();
  // image of [[1,0],[0,0]] is [[0,-1/2],[-1/2,0]]
  VectorXd e00 = VectorXd::Zero(4);
  e00(0) = 1.;
  VectorXd img = cmap * e00;
  // coordinates over (E00, (E01+E10)/sqrt2, E11): expect (0, -1/sqrt2, 0)
  CHECK(img(0) == 0.);
  CHECK(img(1) == doctest::Approx(-1. / std::sqrt(2.)));
  CHECK(img(2) == 0.);
  // image of the identity vanishes
  VectorXd id(4);
  id << 1., 0., 0., 1.;
  CHECK((cmap * id).norm() <= 1e-15);
}

TEST_CASE("devgrad commutation: DG of an interpolate equals the interpolate of dev grad")
{
  std::mt19937_64 rng(2024);
  for (int k = 0; k <= 2; k++) {
    for (int shape = 0; shape < 2; shape++) {
      Mesh mesh = (shape == 0) ? build_cartesian_mesh(1) : build_reference_tetrahedron();
      CoreSpaces core(mesh, k);
      MatrixXd DG = assemble_devgrad(core, 0);
      for (int trial = 0; trial < 3; trial++) {
        PolyField v = random_field(FieldShape::Vector, k + 1, cell_frame(mesh, 0), rng);
        PolyField dgv = field_dev(field_jacobian(v));
        VectorXd lhs = DG * interpolate_devgrad(core, 0, v);
        VectorXd rhs = interpolate_symcurl(core, 0, dgv);
        CAPTURE(k);
        CAPTURE(shape);
        CHECK(rel(lhs, rhs) <= 1e-10);
      }
    }
  }
}

TEST_CASE("symcurl commutation")
{
  std::mt19937_64 rng(99);
  for (int k = 0; k <= 2; k++) {
    Mesh mesh = build_reference_tetrahedron();
    CoreSpaces core(mesh, k);
    MatrixXd SC = assemble_symcurl(core, 0);
    for (int trial = 0; trial < 3; trial++) {
      PolyField tau = random_field(FieldShape::Traceless, k + 1, cell_frame(mesh, 0), rng);
      PolyField sc = field_sym(field_curl3(tau));
      VectorXd lhs = SC * interpolate_symcurl(core, 0, tau);
      VectorXd rhs = interpolate_divdiv(core, 0, sc);
      CAPTURE(k);
      CHECK(rel(lhs, rhs) <= 1e-10);
    }
  }
}

TEST_CASE("divdiv commutation (the projected divdiv of the interpolate)")
{
  std::mt19937_64 rng(7);
  for (int k = 0; k <= 2; k++) {
    Mesh mesh = build_cartesian_mesh(1);
    CoreSpaces core(mesh, k);
    MatrixXd DD = assemble_divdiv_op(core, 0);
    PolyBasis Pk = CoreSpaces::truncate(core.cell(0).P, k);
    for (int trial = 0; trial < 3; trial++) {
      PolyField ups = random_field(FieldShape::Symmetric, k + 2, cell_frame(mesh, 0), rng);
      VectorXd lhs = DD * interpolate_divdiv(core, 0, ups);
      PolyField dd = field_div_div(ups);
      QuadratureRule quad = cell_quadrature(mesh, 0, 2 * k + 6);
      VectorXd rhs = integrate_against(Pk, quad, dd.eval(quad.points));
      CAPTURE(k);
      CHECK(rel(lhs, rhs) <= 1e-10);
    }

    // constant symmetric field maps to zero
    PolyField c = field_zero(Codomain::Mat3, 0);
    c.coeff(0, 0) = 2.;
    c.coeff(4, 0) = -1.;
    c.coeff(8, 0) = 0.5;
    c.coeff(1, 0) = c.coeff(3, 0) = 0.7;
    CHECK((DD * interpolate_divdiv(core, 0, c)).norm() <= 1e-12);
  }
}

TEST_CASE("interpolates of the lowest-order Raviart-Thomas fields are in the kernel")
{
  std::vector<Mesh> meshes;
  meshes.push_back(build_cartesian_mesh(1));
  meshes.push_back(perturbed_hexahedron());
  for (const Mesh & mesh : meshes) {
    for (int k = 0; k <= 2; k++) {
      CoreSpaces core(mesh, k);
      MatrixXd DG = assemble_devgrad(core, 0);
      for (const PolyField & w : rt1_basis(mesh, 0)) {
        VectorXd dofs = interpolate_devgrad(core, 0, w);
        CHECK((DG * dofs).norm() <= 1e-11 * std::max(1., dofs.norm()));
      }
    }
  }
}

TEST_CASE("complex property: SC after DG and DD after SC vanish")
{
  std::mt19937_64 rng(31);
  std::vector<Mesh> meshes;
  meshes.push_back(build_cartesian_mesh(1));
  meshes.push_back(build_reference_tetrahedron());
  meshes.push_back(perturbed_hexahedron());
  for (const Mesh & mesh : meshes) {
    for (int k = 0; k <= 2; k++) {
      CoreSpaces core(mesh, k);
      ComplexOperators ops = build_complex_operators(core, 0);
      // operator-norm style checks via random unit vectors
      std::normal_distribution<double> gauss;
      for (int trial = 0; trial < 5; trial++) {
        VectorXd u(ops.devgrad.total);
        for (int i = 0; i < u.size(); i++) u(i) = gauss(rng);
        u.normalize();
        CHECK((ops.SC * (ops.DG * u)).norm() <= 1e-10);
        VectorXd t(ops.symcurl.total);
        for (int i = 0; i < t.size(); i++) t(i) = gauss(rng);
        t.normalize();
        CHECK((ops.DD * (ops.SC * t)).norm() <= 1e-10);
      }
      CHECK((ops.SC * ops.DG).norm() <= 1e-10 * std::max(1., ops.SC.norm() * ops.DG.norm()));
      CHECK((ops.DD * ops.SC).norm() <= 1e-10 * std::max(1., ops.DD.norm() * ops.SC.norm()));
    }
  }
}

TEST_CASE("divdiv operator is onto the scalar polynomials")
{
  Mesh mesh = build_cartesian_mesh(1);
  for (int k = 0; k <= 2; k++) {
    CoreSpaces core(mesh, k);
    MatrixXd DD = assemble_divdiv_op(core, 0);
    Eigen::JacobiSVD<MatrixXd> svd(DD);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); i++) {
      if (svd.singularValues()(i) > rank_cutoff * svd.singularValues()(0)) rank++;
    }
    CHECK(rank == poly_dim(3, k)); // 10 at k = 2
  }
}
