#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ddr/mesh.hpp>
#include <ddr/quadrature.hpp>

#include <fstream>
#include <sstream>

using namespace ddr;

namespace
{
  std::string read_file(const std::string & path)
  {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
}

TEST_CASE("cartesian mesh entity counts")
{
  Mesh m1 = build_cartesian_mesh(1);
  CHECK(m1.n_cells() == 1);
  CHECK(m1.n_faces() == 6);
  CHECK(m1.n_edges() == 12);
  CHECK(m1.n_vertices() == 8);
  CHECK(m1.h() == doctest::Approx(std::sqrt(3.)));

  Mesh m2 = build_cartesian_mesh(2);
  CHECK(m2.n_cells() == 8);
  CHECK(m2.n_faces() == 36);
  CHECK(m2.n_edges() == 54);
  CHECK(m2.n_vertices() == 27);
  CHECK(m2.h() == doctest::Approx(std::sqrt(3.) / 2.));

  CHECK_THROWS_AS(build_cartesian_mesh(0), InvalidArgument);
}

TEST_CASE("frame conventions hold on every face-edge pair")
{
  Mesh mesh = build_cartesian_mesh(2);
  for (const auto & F : mesh.faces()) {
    for (size_t i = 0; i < F.edges.size(); i++) {
      const Edge & E = mesh.edge(F.edges[i]);
      // (t_E, n_FE, n_F) right-handed orthonormal
      CHECK((E.tangent.cross(F.edge_normal[i]) - F.normal).norm() <= 1e-12);
      CHECK(std::abs(F.edge_normal[i].norm() - 1.) <= 1e-12);
    }
  }
  for (const auto & E : mesh.edges()) {
    const Vector3d expect =
      (mesh.vertex(E.vertex[1]).coords - mesh.vertex(E.vertex[0]).coords) / E.length;
    CHECK((E.tangent - expect).norm() <= 1e-14);
    // right-handed orthonormal edge frame
    CHECK(std::abs(E.normal1.dot(E.tangent)) <= 1e-14);
    CHECK((E.normal1.cross(E.normal2) - E.tangent).norm() <= 1e-12);
  }
}

TEST_CASE("discrete divergence theorem on constants")
{
  for (const Mesh & mesh : {build_cartesian_mesh(2), build_reference_tetrahedron()}) {
    for (int iT = 0; iT < mesh.n_cells(); iT++) {
      const Cell & T = mesh.cell(iT);
      Vector3d sum = Vector3d::Zero();
      for (size_t i = 0; i < T.faces.size(); i++) {
        QuadratureRule quad = face_quadrature(mesh, T.faces[i], 0);
        sum += T.face_sign[i] * quad.weights.sum() * mesh.face(T.faces[i]).normal;
      }
      CHECK(sum.norm() <= 1e-12 * T.diameter * T.diameter);
    }
  }
}

TEST_CASE("interior faces carry opposite signs")
{
  Mesh mesh = build_cartesian_mesh(2);
  for (int iF = 0; iF < mesh.n_faces(); iF++) {
    const Face & F = mesh.face(iF);
    if (F.cells.size() == 2) {
      int s0 = 0, s1 = 0;
      const Cell & T0 = mesh.cell(F.cells[0]);
      const Cell & T1 = mesh.cell(F.cells[1]);
      for (size_t i = 0; i < T0.faces.size(); i++)
        if (T0.faces[i] == iF) s0 = T0.face_sign[i];
      for (size_t i = 0; i < T1.faces.size(); i++)
        if (T1.faces[i] == iF) s1 = T1.face_sign[i];
      CHECK(s0 * s1 == -1);
    }
  }
}

TEST_CASE("validation report")
{
  SUBCASE("unit cube")
  {
    Mesh mesh = build_cartesian_mesh(1);
    MeshValidationReport report = validate_mesh(mesh);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].euler_characteristic == 2);
    CHECK_FALSE(!report.cells[0].euler_ok);
    CHECK(report.all_ok());
  }
  SUBCASE("tetrahedron")
  {
    MeshValidationReport report = validate_mesh(build_reference_tetrahedron());
    CHECK(report.cells[0].euler_characteristic == 2);
  }
  SUBCASE("voronoi cell from file: 24 - 36 + 14 = 2")
  {
    Mesh mesh = load_mesh(read_file(std::string(DDR_DATA_DIR) + "/voronoi_cell.json"));
    CHECK(mesh.n_vertices() == 24);
    CHECK(mesh.n_edges() == 36);
    CHECK(mesh.n_faces() == 14);
    CHECK(mesh.n_cells() == 1);
    MeshValidationReport report = validate_mesh(mesh);
    CHECK(report.cells[0].euler_characteristic == 2);
    CHECK(report.all_ok());
  }
}

TEST_CASE("single tetrahedron file loads")
{
  std::string json = R"({
    "vertices": [[0,0,0],[1,0,0],[0,1,0],[0,0,1]],
    "faces": [[0,2,1],[0,1,3],[0,3,2],[1,2,3]],
    "cells": [[0,1,2,3]]
  })";
  Mesh mesh = load_mesh(json);
  CHECK(mesh.n_cells() == 1);
  CHECK(mesh.n_faces() == 4);
  CHECK(mesh.n_edges() == 6);
  CHECK(mesh.n_vertices() == 4);
}

TEST_CASE("non-planar face is rejected")
{
  // unit square face with one vertex pushed off the plane by ~1e-3 h_F
  std::string json = R"({
    "vertices": [[0,0,0],[1,0,0],[1,1,0.00141],[0,1,0],
                 [0,0,1],[1,0,1],[1,1,1],[0,1,1]],
    "faces": [[0,3,2,1],[4,5,6,7],[0,1,5,4],[1,2,6,5],[2,3,7,6],[3,0,4,7]],
    "cells": [[0,1,2,3,4,5]]
  })";
  CHECK_THROWS_AS(load_mesh(json), InvalidArgument);
}

TEST_CASE("reversed face loop still yields outward-consistent signs")
{
  // same cube twice, one face loop reversed in the second copy
  std::string base = R"({
    "vertices": [[0,0,0],[1,0,0],[1,1,0],[0,1,0],
                 [0,0,1],[1,0,1],[1,1,1],[0,1,1]],
    "faces": [[0,3,2,1],[4,5,6,7],[0,1,5,4],[1,2,6,5],[2,3,7,6],[3,0,4,7]],
    "cells": [[0,1,2,3,4,5]]
  })";
  std::string reversed = R"({
    "vertices": [[0,0,0],[1,0,0],[1,1,0],[0,1,0],
                 [0,0,1],[1,0,1],[1,1,1],[0,1,1]],
    "faces": [[0,3,2,1],[7,6,5,4],[0,1,5,4],[1,2,6,5],[2,3,7,6],[3,0,4,7]],
    "cells": [[0,1,2,3,4,5]]
  })";
  Mesh m1 = load_mesh(base);
  Mesh m2 = load_mesh(reversed);
  // the Newell normal flips with the loop, the cell sign compensates
  CHECK((m1.face(1).normal + m2.face(1).normal).norm() <= 1e-14);
  CHECK(m1.cell(0).face_sign[1] == -m2.cell(0).face_sign[1]);
  CHECK(validate_mesh(m2).all_ok());
  CHECK(m1.cell(0).volume == doctest::Approx(m2.cell(0).volume));
}

TEST_CASE("save and reload reproduces counts, frames and signs")
{
  Mesh mesh = build_cartesian_mesh(2);
  Mesh again = load_mesh(save_mesh(mesh));
  REQUIRE(again.n_cells() == mesh.n_cells());
  REQUIRE(again.n_faces() == mesh.n_faces());
  REQUIRE(again.n_edges() == mesh.n_edges());
  REQUIRE(again.n_vertices() == mesh.n_vertices());
  for (int iF = 0; iF < mesh.n_faces(); iF++) {
    CHECK((mesh.face(iF).normal - again.face(iF).normal).norm() <= 1e-15);
    CHECK((mesh.face(iF).tangent1 - again.face(iF).tangent1).norm() <= 1e-15);
    CHECK(mesh.face(iF).edge_sign == again.face(iF).edge_sign);
  }
  for (int iE = 0; iE < mesh.n_edges(); iE++) {
    CHECK((mesh.edge(iE).normal1 - again.edge(iE).normal1).norm() <= 1e-15);
  }
  for (int iT = 0; iT < mesh.n_cells(); iT++) {
    CHECK(mesh.cell(iT).face_sign == again.cell(iT).face_sign);
  }
}
