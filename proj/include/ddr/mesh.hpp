// Polyhedral mesh data model: vertices, edges, faces and elements with oriented
// incidence in both directions, geometric frames, and orientation signs.
//
// Conventions:
//  - each edge stores its vertices (V1, V2) with unit tangent t_E = (x_V2 - x_V1)/h_E
//    and a global orthonormal frame (n_E1, n_E2) of the plane normal to the edge;
//  - each face stores a vertex loop, the unit normal n_F obtained from the Newell
//    formula on the loop, a global tangent frame (t_F1, t_F2) with t_F1 x t_F2 = n_F,
//    and, per edge, the in-plane normal n_FE = n_F x t_E so that (t_E, n_FE, n_F) is
//    right-handed, together with the sign omega_FE = +1 iff n_FE points out of F;
//  - each element stores its faces with signs omega_TF = +1 iff n_F points out of T.
//
// Meshes are immutable once built and safe to share read-only across threads.

#ifndef DDR_MESH_HPP
#define DDR_MESH_HPP

#include <ddr/common.hpp>

#include <string>
#include <vector>

namespace ddr
{

  struct Vertex
  {
    Vector3d coords;
    std::vector<int> edges; ///< incident edges
  };

  struct Edge
  {
    int vertex[2];       ///< ordered endpoints (V1, V2)
    Vector3d tangent;    ///< t_E = (x_V2 - x_V1)/h_E
    Vector3d midpoint;
    double length;       ///< h_E
    Vector3d normal1;    ///< n_E1, first vector of the global edge frame
    Vector3d normal2;    ///< n_E2 = t_E x n_E1
    std::vector<int> faces; ///< incident faces
  };

  struct Face
  {
    std::vector<int> vertices; ///< oriented vertex loop
    std::vector<int> edges;    ///< edges[i] joins vertices[i] and vertices[i+1]
    Vector3d normal;           ///< n_F (Newell over the loop, normalized)
    Vector3d tangent1;         ///< t_F1
    Vector3d tangent2;         ///< t_F2 = n_F x t_F1
    Vector3d center;           ///< x_F (vertex centroid)
    double diameter;           ///< h_F
    double area;
    std::vector<Vector3d> edge_normal; ///< n_FE = n_F x t_E per edge of the loop
    std::vector<int> edge_sign;        ///< omega_FE per edge of the loop
    std::vector<int> cells;            ///< incident elements (1 or 2)
  };

  struct Cell
  {
    std::vector<int> faces;
    std::vector<int> face_sign; ///< omega_TF per face
    std::vector<int> edges;     ///< edges of the boundary, each once
    std::vector<int> vertices;  ///< vertices of the boundary, each once
    Vector3d center;            ///< x_T (vertex centroid)
    double diameter;            ///< h_T
    double volume;
  };

  /// Per-element entries of the validation report
  struct CellCheck
  {
    int cell;
    int euler_characteristic; ///< |V_T| - |E_T| + |F_T|
    bool euler_ok;            ///< true iff the characteristic equals 2
    double planarity_residual; ///< max over faces of the distance-to-plane ratio
    double orientation_checksum; ///< max |sum_{F in F_T, F ~ E} omega_TF omega_FE| over edges E of T
    double divergence_residual;  ///< |sum_F omega_TF int_F n_F| relative to h_T^2
  };

  struct MeshValidationReport
  {
    std::vector<CellCheck> cells;
    bool all_ok() const
    {
      for (const auto & c : cells) {
        if (!c.euler_ok || c.orientation_checksum > 1e-12 || c.divergence_residual > 1e-12) return false;
      }
      return true;
    }
  };

  class Mesh
  {
  public:
    const std::vector<Vertex> & vertices() const { return m_vertices; }
    const std::vector<Edge> & edges() const { return m_edges; }
    const std::vector<Face> & faces() const { return m_faces; }
    const std::vector<Cell> & cells() const { return m_cells; }

    const Vertex & vertex(int i) const { return m_vertices[i]; }
    const Edge & edge(int i) const { return m_edges[i]; }
    const Face & face(int i) const { return m_faces[i]; }
    const Cell & cell(int i) const { return m_cells[i]; }

    int n_vertices() const { return static_cast<int>(m_vertices.size()); }
    int n_edges() const { return static_cast<int>(m_edges.size()); }
    int n_faces() const { return static_cast<int>(m_faces.size()); }
    int n_cells() const { return static_cast<int>(m_cells.size()); }

    /// global mesh size h = max h_T
    double h() const;

    /// Index of an edge inside a face loop; -1 if absent
    int face_edge_index(int iF, int iE) const;

    /// Build from raw vertex coordinates, face loops and cell face lists.
    /// Computes all frames, signs and derived quantities, and validates the input.
    static Mesh build(std::vector<Vector3d> vertex_coords,
                      std::vector<std::vector<int>> face_loops,
                      std::vector<std::vector<int>> cell_faces);

  private:
    std::vector<Vertex> m_vertices;
    std::vector<Edge> m_edges;
    std::vector<Face> m_faces;
    std::vector<Cell> m_cells;
  };

  /// n x n x n subdivision of an axis-aligned box into hexahedral elements
  Mesh build_cartesian_mesh(int n, const Vector3d & box_min = Vector3d::Zero(),
                            const Vector3d & box_max = Vector3d::Ones());

  /// Single reference tetrahedron (0, e1, e2, e3)
  Mesh build_reference_tetrahedron();

  /// Parse the JSON mesh format ("vertices", "faces", "cells"; 0-based indices)
  Mesh load_mesh(const std::string & json_text);

  /// Emit the JSON mesh format accepted by load_mesh
  std::string save_mesh(const Mesh & mesh);

  /// Per-element Euler characteristic, planarity residuals and orientation checksums
  MeshValidationReport validate_mesh(const Mesh & mesh);

} // namespace ddr

#endif
