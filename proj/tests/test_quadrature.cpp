#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ddr/mesh.hpp>
#include <ddr/monomials.hpp>
#include <ddr/quadrature.hpp>

using namespace ddr;

namespace
{
  // integral of x^a y^b z^c over the unit cube
  double cube_monomial_integral(int a, int b, int c)
  {
    return 1. / ((a + 1.) * (b + 1.) * (c + 1.));
  }

  // integral of x^a y^b z^c over the reference tetrahedron: a! b! c! / (a+b+c+3)!
  double tet_monomial_integral(int a, int b, int c)
  {
    double val = 1.;
    int num = 0;
    for (int i = 1; i <= a; i++) val *= static_cast<double>(i) / (++num + 3);
    for (int i = 1; i <= b; i++) val *= static_cast<double>(i) / (++num + 3);
    for (int i = 1; i <= c; i++) val *= static_cast<double>(i) / (++num + 3);
    // remaining factor 1/( (3)(2)(1) * ... ) handled incrementally: start from volume 1/6
    return val / 6.;
  }
}

TEST_CASE("gauss-legendre weights sum to 2 and integrate powers")
{
  for (int n = 1; n <= 12; n++) {
    VectorXd x, w;
    gauss_legendre(n, x, w);
    CHECK(w.sum() == doctest::Approx(2.).epsilon(1e-14));
    for (int p = 0; p <= 2 * n - 1; p++) {
      double val = 0.;
      for (int i = 0; i < n; i++) val += w(i) * std::pow(x(i), p);
      double exact = (p % 2 == 0) ? 2. / (p + 1.) : 0.;
      CHECK(val == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("cell rules integrate monomials exactly on the unit cube")
{
  Mesh mesh = build_cartesian_mesh(1);
  for (int degree : {0, 3, 6, 9}) {
    QuadratureRule quad = cell_quadrature(mesh, 0, degree);
    CHECK(quad.weights.sum() == doctest::Approx(1.).epsilon(1e-13));
    for (const auto & p : monomial_powers(3, degree)) {
      double val = 0.;
      for (int q = 0; q < quad.size(); q++) {
        Vector3d x = quad.point(q);
        val += quad.weights(q) * std::pow(x(0), p(0)) * std::pow(x(1), p(1)) * std::pow(x(2), p(2));
      }
      double exact = cube_monomial_integral(p(0), p(1), p(2));
      CHECK(val == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  // int x^2 y = 1/6 at degree 3
  QuadratureRule quad = cell_quadrature(mesh, 0, 3);
  double val = 0.;
  for (int q = 0; q < quad.size(); q++) {
    val += quad.weights(q) * quad.point(q)(0) * quad.point(q)(0) * quad.point(q)(1);
  }
  CHECK(val == doctest::Approx(1. / 6.).epsilon(1e-13));
}

TEST_CASE("cell rules integrate monomials exactly on the reference tetrahedron")
{
  Mesh mesh = build_reference_tetrahedron();
  for (int degree : {1, 4, 8}) {
    QuadratureRule quad = cell_quadrature(mesh, 0, degree);
    CHECK(quad.weights.sum() == doctest::Approx(1. / 6.).epsilon(1e-13));
    for (const auto & p : monomial_powers(3, degree)) {
      double val = 0.;
      for (int q = 0; q < quad.size(); q++) {
        Vector3d x = quad.point(q);
        val += quad.weights(q) * std::pow(x(0), p(0)) * std::pow(x(1), p(1)) * std::pow(x(2), p(2));
      }
      double exact = tet_monomial_integral(p(0), p(1), p(2));
      CHECK(val == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  // int x = 1/24 at degree 1
  QuadratureRule quad = cell_quadrature(mesh, 0, 1);
  double val = 0.;
  for (int q = 0; q < quad.size(); q++) val += quad.weights(q) * quad.point(q)(0);
  CHECK(val == doctest::Approx(1. / 24.).epsilon(1e-14));
}

TEST_CASE("face and edge rules reproduce measures on a general cell")
{
  Mesh mesh = build_cartesian_mesh(2);
  for (int iF = 0; iF < mesh.n_faces(); iF++) {
    QuadratureRule quad = face_quadrature(mesh, iF, 2);
    CHECK(quad.weights.sum() == doctest::Approx(mesh.face(iF).area).epsilon(1e-13));
  }
  for (int iE = 0; iE < mesh.n_edges(); iE++) {
    QuadratureRule quad = edge_quadrature(mesh, iE, 2);
    CHECK(quad.weights.sum() == doctest::Approx(mesh.edge(iE).length).epsilon(1e-13));
  }
}

TEST_CASE("cell volume by quadrature matches the divergence-theorem volume")
{
  Mesh mesh = build_reference_tetrahedron();
  QuadratureRule quad = cell_quadrature(mesh, 0, 0);
  CHECK(quad.weights.sum() == doctest::Approx(mesh.cell(0).volume).epsilon(1e-13));
}
