#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ddr/decompositions.hpp>
#include <ddr/polyfield.hpp>

#include <Eigen/SVD>

using namespace ddr;

namespace
{
  // largest cosine of a principal angle between the spans (0 for an empty pair)
  double max_mutual_cosine(const MatrixXd & X)
  {
    if (X.rows() == 0 || X.cols() == 0) return 0.;
    Eigen::JacobiSVD<MatrixXd> svd(X);
    return svd.singularValues()(0);
  }

  // affine image of the unit cube: a perturbed hexahedron with planar faces
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

TEST_CASE("dimension formulas of the partial spaces")
{
  // CGoly: l^2 + 5l + 4; CGolyCompl: l^2 + l
  CHECK(space_dim(SpaceKind::CGoly, 1) == 10);
  CHECK(space_dim(SpaceKind::CGolyCompl, 1) == 2);
  for (int l = 0; l <= 4; l++) {
    CHECK(space_dim(SpaceKind::CGoly, l) == l * l + 5 * l + 4);
    CHECK(space_dim(SpaceKind::CGolyCompl, l) == l * l + l);
  }
  // all trimmed spaces are trivial at degree 0
  CHECK(space_dim(SpaceKind::RT, 0) == 0);
  CHECK(space_dim(SpaceKind::CGtrim, 0) == 0);
  CHECK(space_dim(SpaceKind::SRtrim, 0) == 0);
  CHECK(space_dim(SpaceKind::Htrim, 0) == 0);
  // negative-index conventions
  CHECK(space_dim(SpaceKind::Roly, -1) == 0);
  CHECK(space_dim(SpaceKind::CGoly, -1) == 0);
  CHECK(space_dim(SpaceKind::SRoly, -1) == 0);
  CHECK(space_dim(SpaceKind::Holy, -1) == 0);
  CHECK(space_dim(SpaceKind::Holy, -2) == 0);
}

TEST_CASE("constructed bases have the advertised dimensions and identity Gram")
{
  Mesh mesh = perturbed_hexahedron();
  EntityRef cell{EntityKind::Cell, 0};
  EntityRef face{EntityKind::Face, 1};

  for (int l = 0; l <= 3; l++) {
    for (SpaceKind kind : {SpaceKind::Roly, SpaceKind::RolyCompl, SpaceKind::CGoly,
                           SpaceKind::CGolyCompl, SpaceKind::RT, SpaceKind::CGtrim}) {
      PolyBasis b = decomposition_basis(mesh, face, kind, l);
      CHECK(b.size() == space_dim(kind, l));
      if (b.size() > 0) {
        QuadratureRule quad = face_quadrature(mesh, face.index, 2 * b.degree);
        MatrixXd G = gram_matrix(b, b, quad);
        CHECK((G - MatrixXd::Identity(G.rows(), G.cols())).norm() <= 1e-11);
      }
    }
    for (SpaceKind kind : {SpaceKind::SRoly, SpaceKind::SRolyCompl, SpaceKind::Holy,
                           SpaceKind::HolyCompl, SpaceKind::SRtrim, SpaceKind::Htrim}) {
      PolyBasis b = decomposition_basis(mesh, cell, kind, l);
      CHECK(b.size() == space_dim(kind, l));
      if (b.size() > 0) {
        QuadratureRule quad = cell_quadrature(mesh, 0, 2 * b.degree);
        MatrixXd G = gram_matrix(b, b, quad);
        CHECK((G - MatrixXd::Identity(G.rows(), G.cols())).norm() <= 1e-11);
      }
    }
  }
}

TEST_CASE("direct sums span the full spaces")
{
  Mesh mesh = perturbed_hexahedron(11);
  EntityRef cell{EntityKind::Cell, 0};
  EntityRef face{EntityKind::Face, 4};

  struct Pair
  {
    SpaceKind a, b;
    EntityRef ent;
    int full_dim_factor; // components of the ambient space
  };

  for (int l = 0; l <= 4; l++) {
    // faces: vector and matrix decompositions
    {
      PolyBasis A = decomposition_basis(mesh, face, SpaceKind::Roly, l);
      PolyBasis B = decomposition_basis(mesh, face, SpaceKind::RolyCompl, l);
      CHECK(A.size() + B.size() == 2 * poly_dim(2, l));
      if (A.size() + B.size() > 0) {
        QuadratureRule quad = face_quadrature(mesh, face.index, 2 * std::max(A.degree, B.degree));
        // mutual angle strictly below 1: the concatenation has full rank
        CHECK(max_mutual_cosine(gram_matrix(A, B, quad)) < 1. - 1e-8);
      }
    }
    {
      PolyBasis A = decomposition_basis(mesh, face, SpaceKind::CGoly, l);
      PolyBasis B = decomposition_basis(mesh, face, SpaceKind::CGolyCompl, l);
      CHECK(A.size() + B.size() == 4 * poly_dim(2, l));
      QuadratureRule quad = face_quadrature(mesh, face.index, 2 * std::max(A.degree, B.degree));
      CHECK(max_mutual_cosine(gram_matrix(A, B, quad)) < 1. - 1e-8);
    }
    if (l <= 3) { // keep runtime small on the element
      PolyBasis A = decomposition_basis(mesh, cell, SpaceKind::SRoly, l);
      PolyBasis B = decomposition_basis(mesh, cell, SpaceKind::SRolyCompl, l);
      CHECK(A.size() + B.size() == 8 * poly_dim(3, l));
      PolyBasis C = decomposition_basis(mesh, cell, SpaceKind::Holy, l);
      PolyBasis D = decomposition_basis(mesh, cell, SpaceKind::HolyCompl, l);
      CHECK(C.size() + D.size() == 6 * poly_dim(3, l));
      QuadratureRule quad = cell_quadrature(mesh, 0, 2 * (l + 1));
      CHECK(max_mutual_cosine(gram_matrix(C, D, quad)) < 1. - 1e-8);
      CHECK(max_mutual_cosine(gram_matrix(A, B, quad)) < 1. - 1e-8);
    }
  }
}

TEST_CASE("curl of the symmetric complement spans the traceless image space")
{
  Mesh mesh = build_reference_tetrahedron();
  EntityRef cell{EntityKind::Cell, 0};
  for (int l = 0; l <= 3; l++) {
    PolyBasis target = decomposition_basis(mesh, cell, SpaceKind::SRoly, l);
    PolyBasis source = decomposition_basis(mesh, cell, SpaceKind::HolyCompl, l + 1);
    PolyBasis curl = apply_curl3(source);
    QuadratureRule quad = cell_quadrature(mesh, 0, 2 * (l + 2));

    // mutual projection residuals: each family lies in the span of the other
    MatrixXd X = gram_matrix(curl, target, quad);   // coords of curl in the target basis
    MatrixXd Gc = gram_matrix(curl, curl, quad);
    double res1 = (Gc - X * X.transpose()).norm() / std::max(1e-30, Gc.norm());
    CHECK(res1 <= 1e-10);

    // target inside span(curl): compare dimensions + rank of X
    Eigen::JacobiSVD<MatrixXd> svd(X);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); i++) {
      if (svd.singularValues()(i) > rank_cutoff * svd.singularValues()(0)) rank++;
    }
    CHECK(rank == target.size());
  }
}

TEST_CASE("the complement image of (1, 0) and its face divergence")
{
  Mesh mesh = perturbed_hexahedron(5);
  EntityRef face{EntityKind::Face, 0};
  Frame frame = face_frame(mesh, face.index);

  // A(P1, P2) with P1 = 1, P2 = 0 and x_F = 0 in face coordinates: [[x, 2y], [0, -x]]
  PolyBasis source = tensor_basis(mesh, face, 0, Codomain::Vec2);
  PolyBasis tensored = apply_tensor_coordinate(source);
  PolyBasis raw = tensored;
  raw.coeff -= apply_adjugate2(tensored).coeff;

  // the first basis function of `source` is c * e_1 with c the normalized constant
  double c = source.coeff(0, 0);
  QuadratureRule quad = face_quadrature(mesh, face.index, 4);
  auto vals = evaluate(raw, quad.points);
  for (int q = 0; q < quad.size(); q++) {
    Vector3d xy3 = quad.point(q) - frame.origin;
    double x = frame.axes.col(0).dot(xy3), y = frame.axes.col(1).dot(xy3);
    CHECK(vals[0](0, q) == doctest::Approx(c * x).epsilon(1e-12));       // (0,0): x
    CHECK(vals[1](0, q) == doctest::Approx(c * 2. * y).epsilon(1e-12));  // (0,1): 2y
    CHECK(std::abs(vals[2](0, q)) <= 1e-13);                             // (1,0): 0
    CHECK(vals[3](0, q) == doctest::Approx(-c * x).epsilon(1e-12));      // (1,1): -x
  }

  // div_F A(1,0) = (3, 0)
  PolyBasis div = apply_matrix_divergence(raw);
  auto dv = evaluate(div, quad.points);
  for (int q = 0; q < quad.size(); q++) {
    CHECK(dv[0](0, q) == doctest::Approx(3. * c).epsilon(1e-12));
    CHECK(std::abs(dv[1](0, q)) <= 1e-12);
  }
}

TEST_CASE("face divergence is an isomorphism on the matrix complement")
{
  Mesh cube = build_cartesian_mesh(1);
  for (int l = 1; l <= 4; l++) {
    EntityRef face{EntityKind::Face, 3};
    PolyBasis compl_basis = decomposition_basis(cube, face, SpaceKind::CGolyCompl, l);
    PolyBasis target = tensor_basis(cube, face, l - 1, Codomain::Vec2);
    PolyBasis div = apply_matrix_divergence(compl_basis);
    QuadratureRule quad = face_quadrature(cube, face.index, 2 * l);
    MatrixXd M = gram_matrix(div, target, quad);
    REQUIRE(M.rows() == M.cols());
    CHECK(M.rows() == l * l + l);
    Eigen::JacobiSVD<MatrixXd> svd(M);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    double smax = svd.singularValues()(0);
    CHECK(smin / smax > 1e-8);
  }
}
