#include <ddr/mesh.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ddr
{

  namespace
  {
    // canonical axis least aligned with v, orthonormalized against it
    Vector3d stable_orthogonal(const Vector3d & v)
    {
      int axis = 0;
      double best = std::abs(v(0));
      for (int d = 1; d < 3; d++) {
        if (std::abs(v(d)) < best) {
          best = std::abs(v(d));
          axis = d;
        }
      }
      Vector3d e = Vector3d::Zero();
      e(axis) = 1.;
      Vector3d w = e - (e.dot(v)) * v;
      return w.normalized();
    }

    Vector3d newell_normal(const std::vector<int> & loop, const std::vector<Vertex> & verts)
    {
      Vector3d n = Vector3d::Zero();
      int nv = static_cast<int>(loop.size());
      for (int i = 0; i < nv; i++) {
        const Vector3d & a = verts[loop[i]].coords;
        const Vector3d & b = verts[loop[(i + 1) % nv]].coords;
        n(0) += (a(1) - b(1)) * (a(2) + b(2));
        n(1) += (a(2) - b(2)) * (a(0) + b(0));
        n(2) += (a(0) - b(0)) * (a(1) + b(1));
      }
      double len = n.norm();
      if (len == 0.) throw InvalidArgument("degenerate face: zero Newell normal");
      return n / len;
    }

    double polygon_area(const Face & F, const std::vector<Vertex> & verts)
    {
      // fan around the vertex centroid; faces are star-shaped with respect to it
      double area = 0.;
      int nv = static_cast<int>(F.vertices.size());
      for (int i = 0; i < nv; i++) {
        const Vector3d & a = verts[F.vertices[i]].coords;
        const Vector3d & b = verts[F.vertices[(i + 1) % nv]].coords;
        area += 0.5 * ((a - F.center).cross(b - F.center)).norm();
      }
      return area;
    }
  } // namespace

  double Mesh::h() const
  {
    double h = 0.;
    for (const auto & T : m_cells) h = std::max(h, T.diameter);
    return h;
  }

  int Mesh::face_edge_index(int iF, int iE) const
  {
    const auto & edges = m_faces[iF].edges;
    for (size_t i = 0; i < edges.size(); i++) {
      if (edges[i] == iE) return static_cast<int>(i);
    }
    return -1;
  }

  Mesh Mesh::build(std::vector<Vector3d> vertex_coords,
                   std::vector<std::vector<int>> face_loops,
                   std::vector<std::vector<int>> cell_faces)
  {
    Mesh mesh;
    mesh.m_vertices.resize(vertex_coords.size());
    for (size_t i = 0; i < vertex_coords.size(); i++) {
      mesh.m_vertices[i].coords = vertex_coords[i];
    }
    const auto & verts = mesh.m_vertices;

    // edges from face loops, deduplicated on the sorted vertex pair
    std::map<std::pair<int, int>, int> edge_index;
    mesh.m_faces.resize(face_loops.size());
    for (size_t iF = 0; iF < face_loops.size(); iF++) {
      const auto & loop = face_loops[iF];
      if (loop.size() < 3) throw InvalidArgument("face " + std::to_string(iF) + " has fewer than 3 vertices");
      for (int v : loop) {
        if (v < 0 || v >= static_cast<int>(verts.size()))
          throw InvalidArgument("face " + std::to_string(iF) + " references missing vertex " + std::to_string(v));
      }
      Face & F = mesh.m_faces[iF];
      F.vertices = loop;
      int nv = static_cast<int>(loop.size());
      for (int i = 0; i < nv; i++) {
        int a = loop[i], b = loop[(i + 1) % nv];
        if (a == b) throw InvalidArgument("face " + std::to_string(iF) + " repeats vertex " + std::to_string(a));
        auto key = std::minmax(a, b);
        auto it = edge_index.find(key);
        if (it == edge_index.end()) {
          Edge E;
          E.vertex[0] = key.first;
          E.vertex[1] = key.second;
          it = edge_index.emplace(key, static_cast<int>(mesh.m_edges.size())).first;
          mesh.m_edges.push_back(E);
        }
        F.edges.push_back(it->second);
      }
    }

    // edge geometry and global frames
    for (auto & E : mesh.m_edges) {
      const Vector3d & a = verts[E.vertex[0]].coords;
      const Vector3d & b = verts[E.vertex[1]].coords;
      E.length = (b - a).norm();
      if (E.length == 0.) throw InvalidArgument("zero-length edge");
      E.tangent = (b - a) / E.length;
      E.midpoint = 0.5 * (a + b);
      E.normal1 = stable_orthogonal(E.tangent);
      E.normal2 = E.tangent.cross(E.normal1);
    }

    // face geometry: centroid, Newell normal, global tangent frame, per-edge normals
    for (size_t iF = 0; iF < mesh.m_faces.size(); iF++) {
      Face & F = mesh.m_faces[iF];
      int nv = static_cast<int>(F.vertices.size());
      F.center = Vector3d::Zero();
      for (int v : F.vertices) F.center += verts[v].coords;
      F.center /= nv;
      F.normal = newell_normal(F.vertices, verts);

      F.diameter = 0.;
      for (int i = 0; i < nv; i++) {
        for (int j = i + 1; j < nv; j++) {
          F.diameter = std::max(F.diameter, (verts[F.vertices[i]].coords - verts[F.vertices[j]].coords).norm());
        }
      }

      // planarity: max vertex distance to the plane through the centroid
      double planarity = 0.;
      for (int v : F.vertices) {
        planarity = std::max(planarity, std::abs(F.normal.dot(verts[v].coords - F.center)));
      }
      if (planarity > 1e-9 * F.diameter) {
        std::ostringstream msg;
        msg << "face " << iF << " is not planar: deviation " << planarity << " exceeds 1e-9 * h_F";
        throw InvalidArgument(msg.str());
      }

      F.tangent1 = stable_orthogonal(F.normal);
      F.tangent2 = F.normal.cross(F.tangent1);
      F.area = polygon_area(F, verts);

      for (size_t i = 0; i < F.edges.size(); i++) {
        const Edge & E = mesh.m_edges[F.edges[i]];
        Vector3d nFE = F.normal.cross(E.tangent);
        F.edge_normal.push_back(nFE);
        // outward test against the face centroid
        Vector3d out = E.midpoint - F.center;
        out -= out.dot(F.normal) * F.normal;
        F.edge_sign.push_back(nFE.dot(out) > 0. ? 1 : -1);
      }
    }

    // cells
    mesh.m_cells.resize(cell_faces.size());
    for (size_t iT = 0; iT < cell_faces.size(); iT++) {
      Cell & T = mesh.m_cells[iT];
      T.faces = cell_faces[iT];
      if (T.faces.size() < 4) throw InvalidArgument("cell " + std::to_string(iT) + " has fewer than 4 faces");
      std::set<int> vset, eset;
      for (int f : T.faces) {
        if (f < 0 || f >= static_cast<int>(mesh.m_faces.size()))
          throw InvalidArgument("cell " + std::to_string(iT) + " references missing face " + std::to_string(f));
        for (int v : mesh.m_faces[f].vertices) vset.insert(v);
        for (int e : mesh.m_faces[f].edges) eset.insert(e);
        mesh.m_faces[f].cells.push_back(static_cast<int>(iT));
      }
      T.vertices.assign(vset.begin(), vset.end());
      T.edges.assign(eset.begin(), eset.end());

      T.center = Vector3d::Zero();
      for (int v : T.vertices) T.center += verts[v].coords;
      T.center /= static_cast<double>(T.vertices.size());

      T.diameter = 0.;
      for (size_t i = 0; i < T.vertices.size(); i++) {
        for (size_t j = i + 1; j < T.vertices.size(); j++) {
          T.diameter = std::max(T.diameter,
                                (verts[T.vertices[i]].coords - verts[T.vertices[j]].coords).norm());
        }
      }

      // watertightness: each edge of the boundary belongs to exactly two faces of T
      std::map<int, int> edge_count;
      for (int f : T.faces) {
        for (int e : mesh.m_faces[f].edges) edge_count[e]++;
      }
      for (const auto & [e, count] : edge_count) {
        if (count != 2) {
          std::ostringstream msg;
          msg << "cell " << iT << " is not watertight: edge " << e << " appears in " << count << " of its faces";
          throw InvalidArgument(msg.str());
        }
      }

      // orientation signs from the outward test against the cell centroid
      for (int f : T.faces) {
        const Face & F = mesh.m_faces[f];
        T.face_sign.push_back(F.normal.dot(F.center - T.center) > 0. ? 1 : -1);
      }

      // volume by the divergence theorem
      T.volume = 0.;
      for (size_t i = 0; i < T.faces.size(); i++) {
        const Face & F = mesh.m_faces[T.faces[i]];
        T.volume += T.face_sign[i] * F.area * F.normal.dot(F.center - T.center) / 3.;
      }
      if (T.volume <= 0.) throw InvalidArgument("cell " + std::to_string(iT) + " has non-positive volume");
    }

    // upward incidence and dangling-entity checks
    for (size_t iF = 0; iF < mesh.m_faces.size(); iF++) {
      if (mesh.m_faces[iF].cells.empty())
        throw InvalidArgument("dangling face " + std::to_string(iF) + ": not referenced by any cell");
      if (mesh.m_faces[iF].cells.size() > 2)
        throw InvalidArgument("face " + std::to_string(iF) + " is shared by more than two cells");
    }
    for (size_t iF = 0; iF < mesh.m_faces.size(); iF++) {
      for (int e : mesh.m_faces[iF].edges) mesh.m_edges[e].faces.push_back(static_cast<int>(iF));
    }
    for (auto & E : mesh.m_edges) {
      std::sort(E.faces.begin(), E.faces.end());
      E.faces.erase(std::unique(E.faces.begin(), E.faces.end()), E.faces.end());
    }
    for (size_t iE = 0; iE < mesh.m_edges.size(); iE++) {
      mesh.m_vertices[mesh.m_edges[iE].vertex[0]].edges.push_back(static_cast<int>(iE));
      mesh.m_vertices[mesh.m_edges[iE].vertex[1]].edges.push_back(static_cast<int>(iE));
    }
    for (size_t iV = 0; iV < mesh.m_vertices.size(); iV++) {
      if (mesh.m_vertices[iV].edges.empty())
        throw InvalidArgument("dangling vertex " + std::to_string(iV));
    }

    return mesh;
  }

  Mesh build_cartesian_mesh(int n, const Vector3d & box_min, const Vector3d & box_max)
  {
    if (n < 1) throw InvalidArgument("build_cartesian_mesh: n must be >= 1");

    auto vid = [n](int i, int j, int k) { return (k * (n + 1) + j) * (n + 1) + i; };

    std::vector<Vector3d> coords;
    coords.reserve((n + 1) * (n + 1) * (n + 1));
    Vector3d step = (box_max - box_min) / n;
    for (int k = 0; k <= n; k++) {
      for (int j = 0; j <= n; j++) {
        for (int i = 0; i <= n; i++) {
          coords.push_back(box_min + Vector3d(i * step(0), j * step(1), k * step(2)));
        }
      }
    }

    // faces normal to x, y, z; loops oriented with the Newell normal along +axis
    std::vector<std::vector<int>> faces;
    std::map<std::array<int, 4>, int> face_id;
    auto add_face = [&](std::array<int, 4> loop) {
      auto key = loop;
      std::sort(key.begin(), key.end());
      auto it = face_id.find(key);
      if (it == face_id.end()) {
        it = face_id.emplace(key, static_cast<int>(faces.size())).first;
        faces.push_back(std::vector<int>(loop.begin(), loop.end()));
      }
      return it->second;
    };

    std::vector<std::vector<int>> cells;
    for (int k = 0; k < n; k++) {
      for (int j = 0; j < n; j++) {
        for (int i = 0; i < n; i++) {
          int xlo = add_face({vid(i, j, k), vid(i, j, k + 1), vid(i, j + 1, k + 1), vid(i, j + 1, k)});
          int xhi = add_face({vid(i + 1, j, k), vid(i + 1, j + 1, k), vid(i + 1, j + 1, k + 1), vid(i + 1, j, k + 1)});
          int ylo = add_face({vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j, k + 1), vid(i, j, k + 1)});
          int yhi = add_face({vid(i, j + 1, k), vid(i, j + 1, k + 1), vid(i + 1, j + 1, k + 1), vid(i + 1, j + 1, k)});
          int zlo = add_face({vid(i, j, k), vid(i, j + 1, k), vid(i + 1, j + 1, k), vid(i + 1, j, k)});
          int zhi = add_face({vid(i, j, k + 1), vid(i + 1, j, k + 1), vid(i + 1, j + 1, k + 1), vid(i, j + 1, k + 1)});
          cells.push_back({xlo, xhi, ylo, yhi, zlo, zhi});
        }
      }
    }

    return Mesh::build(std::move(coords), std::move(faces), std::move(cells));
  }

  Mesh build_reference_tetrahedron()
  {
    std::vector<Vector3d> coords = {
      Vector3d(0, 0, 0), Vector3d(1, 0, 0), Vector3d(0, 1, 0), Vector3d(0, 0, 1)};
    std::vector<std::vector<int>> faces = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
    std::vector<std::vector<int>> cells = {{0, 1, 2, 3}};
    return Mesh::build(std::move(coords), std::move(faces), std::move(cells));
  }

  Mesh load_mesh(const std::string & json_text)
  {
    nlohmann::json data;
    try {
      data = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error & err) {
      throw InvalidArgument(std::string("mesh file is not valid JSON: ") + err.what());
    }
    if (!data.contains("vertices") || !data.contains("faces") || !data.contains("cells")) {
      throw InvalidArgument("mesh file must contain \"vertices\", \"faces\" and \"cells\"");
    }

    std::vector<Vector3d> coords;
    for (const auto & v : data["vertices"]) {
      if (!v.is_array() || v.size() != 3) throw InvalidArgument("vertex entries must be [x, y, z]");
      coords.push_back(Vector3d(v[0].get<double>(), v[1].get<double>(), v[2].get<double>()));
    }
    std::vector<std::vector<int>> faces;
    for (const auto & f : data["faces"]) faces.push_back(f.get<std::vector<int>>());
    std::vector<std::vector<int>> cells;
    for (const auto & c : data["cells"]) cells.push_back(c.get<std::vector<int>>());

    return Mesh::build(std::move(coords), std::move(faces), std::move(cells));
  }

  std::string save_mesh(const Mesh & mesh)
  {
    nlohmann::json data;
    data["vertices"] = nlohmann::json::array();
    for (const auto & V : mesh.vertices()) {
      data["vertices"].push_back({V.coords(0), V.coords(1), V.coords(2)});
    }
    data["faces"] = nlohmann::json::array();
    for (const auto & F : mesh.faces()) data["faces"].push_back(F.vertices);
    data["cells"] = nlohmann::json::array();
    for (const auto & T : mesh.cells()) data["cells"].push_back(T.faces);
    return data.dump(2);
  }

  MeshValidationReport validate_mesh(const Mesh & mesh)
  {
    MeshValidationReport report;
    for (int iT = 0; iT < mesh.n_cells(); iT++) {
      const Cell & T = mesh.cell(iT);
      CellCheck check;
      check.cell = iT;
      check.euler_characteristic = static_cast<int>(T.vertices.size()) -
                                   static_cast<int>(T.edges.size()) +
                                   static_cast<int>(T.faces.size());
      check.euler_ok = (check.euler_characteristic == 2);

      check.planarity_residual = 0.;
      for (int f : T.faces) {
        const Face & F = mesh.face(f);
        for (int v : F.vertices) {
          double d = std::abs(F.normal.dot(mesh.vertex(v).coords - F.center));
          check.planarity_residual = std::max(check.planarity_residual, d / F.diameter);
        }
      }

      // per edge of T: sum over the two incident faces of omega_TF * omega_FE
      check.orientation_checksum = 0.;
      for (int e : T.edges) {
        int sum = 0;
        for (size_t i = 0; i < T.faces.size(); i++) {
          int idx = mesh.face_edge_index(T.faces[i], e);
          if (idx >= 0) sum += T.face_sign[i] * mesh.face(T.faces[i]).edge_sign[idx];
        }
        check.orientation_checksum = std::max(check.orientation_checksum, static_cast<double>(std::abs(sum)));
      }

      Vector3d div = Vector3d::Zero();
      for (size_t i = 0; i < T.faces.size(); i++) {
        const Face & F = mesh.face(T.faces[i]);
        div += T.face_sign[i] * F.area * F.normal;
      }
      check.divergence_residual = div.norm() / (T.diameter * T.diameter);

      report.cells.push_back(check);
    }
    return report;
  }

} // namespace ddr
