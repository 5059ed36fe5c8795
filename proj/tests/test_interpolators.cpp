#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ddr/interpolators.hpp>

using namespace ddr;

namespace
{
  double rel(const VectorXd & a, const VectorXd & b)
  {
    return (a - b).norm() / std::max({1e-30, a.norm(), b.norm()});
  }
}

TEST_CASE("interpolation of constants")
{
  Mesh mesh = build_cartesian_mesh(1);
  for (int k = 0; k <= 2; k++) {
    CoreSpaces core(mesh, k);

    // constant vector: all derivative components vanish, vertex values are the constant
    PolyField c = field_zero(Codomain::Vec3, 1);
    c.coeff(0, 0) = 1.5;
    c.coeff(1, 0) = -0.25;
    c.coeff(2, 0) = 2.;
    VectorXd dofs = interpolate_devgrad(core, 0, c);
    DofLayout layout = devgrad_layout(mesh, 0, k);
    for (size_t vi = 0; vi < mesh.cell(0).vertices.size(); vi++) {
      CHECK((layout.at(dofs, Slot::VertexValue, vi) - Vector3d(1.5, -0.25, 2.)).norm() <= 1e-13);
      CHECK(layout.at(dofs, Slot::VertexGradient, vi).norm() <= 1e-13);
    }
    for (size_t ei = 0; ei < mesh.cell(0).edges.size(); ei++) {
      CHECK(layout.at(dofs, Slot::EdgeGradient, ei).norm() <= 1e-13);
    }
    for (size_t fi = 0; fi < mesh.cell(0).faces.size(); fi++) {
      if (k >= 1) CHECK(layout.at(dofs, Slot::FaceDivergence, fi).norm() <= 1e-13);
    }

    // zero traceless field
    CHECK(interpolate_symcurl(core, 0, field_zero(Codomain::Mat3, 1)).norm() == 0.);
  }
}

TEST_CASE("traceless and symmetric guards")
{
  Mesh mesh = build_cartesian_mesh(1);
  CoreSpaces core(mesh, 0);
  PolyField bad = field_zero(Codomain::Mat3, 0);
  bad.coeff(0, 0) = 1.; // trace 1
  CHECK_THROWS_AS(interpolate_symcurl(core, 0, bad), InvalidArgument);
  PolyField asym = field_zero(Codomain::Mat3, 0);
  asym.coeff(1, 0) = 1.; // (0,1) only
  CHECK_THROWS_AS(interpolate_divdiv(core, 0, asym), InvalidArgument);
}

TEST_CASE("interpolation is linear and deterministic")
{
  Mesh mesh = build_reference_tetrahedron();
  CoreSpaces core(mesh, 1);
  std::mt19937_64 rng(11);
  PolyField a = random_field(FieldShape::Symmetric, 2, cell_frame(mesh, 0), rng);
  PolyField b = random_field(FieldShape::Symmetric, 2, cell_frame(mesh, 0), rng);
  VectorXd ia = interpolate_divdiv(core, 0, a);
  VectorXd ib = interpolate_divdiv(core, 0, b);
  VectorXd iab = interpolate_divdiv(core, 0, field_sum(a, b, 2., -0.5));
  CHECK(rel(iab, (2. * ia - 0.5 * ib).eval()) <= 1e-12);
}

TEST_CASE("polynomial interpolation matrix columns match direct interpolation")
{
  Mesh mesh = build_cartesian_mesh(1);
  CoreSpaces core(mesh, 1);
  MatrixXd J = divdiv_polynomial_interpolation(core, 0);
  const PolyBasis & S = core.cell(0).S;
  REQUIRE(J.cols() == S.size());
  // spot-check one column against an explicitly constructed field
  const Frame & frame = S.frame;
  Vector3d c0 = -frame.axes.transpose() * frame.origin / frame.scale;
  Eigen::Matrix<double, 3, Eigen::Dynamic> B = frame.axes.transpose() / frame.scale;
  MatrixXd compose = monomial_affine_compose(3, S.degree, c0, B, 3);
  int j = S.size() / 2;
  PolyField f = field_zero(Codomain::Mat3, S.degree);
  for (int c = 0; c < 9; c++) f.coeff.row(c) = (compose * S.comp_block(c).row(j).transpose()).transpose();
  CHECK(rel(J.col(j), interpolate_divdiv(core, 0, f)) <= 1e-12);
}

TEST_CASE("the radial lowest-order field evaluates as expected")
{
  Mesh mesh = build_cartesian_mesh(1);
  auto rt = rt1_basis(mesh, 0);
  REQUIRE(rt.size() == 4);
  Vector3d x(0.3, 0.9, 0.1);
  CHECK((rt[3].eval_vector(x) - (x - mesh.cell(0).center)).norm() <= 1e-14);
  CHECK((rt[0].eval_vector(x) - Vector3d(1, 0, 0)).norm() == 0.);
}
