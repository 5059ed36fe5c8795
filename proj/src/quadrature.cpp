#include <ddr/quadrature.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace ddr
{

  void gauss_legendre(int npoints, VectorXd & nodes, VectorXd & weights)
  {
    nodes.resize(npoints);
    weights.resize(npoints);
    for (int i = 0; i < npoints; i++) {
      // Newton iteration from the Chebyshev estimate
      double x = std::cos(std::numbers::pi * (i + 0.75) / (npoints + 0.5));
      double p0 = 0., p1 = 0.;
      for (int iter = 0; iter < 100; iter++) {
        p0 = 1.;
        p1 = 0.;
        for (int j = 0; j < npoints; j++) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
        }
        double dp = npoints * (x * p0 - p1) / (x * x - 1.);
        double dx = p0 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double dp = npoints * (x * p0 - p1) / (x * x - 1.);
      nodes(npoints - 1 - i) = x;
      weights(npoints - 1 - i) = 2. / ((1. - x * x) * dp * dp);
    }
  }

  namespace
  {
    int gl_points_for(int degree) { return degree / 2 + 1; }

    // collapsed rule on the triangle (a, b, c), exact for total degree `degree`
    void append_triangle_rule(const Vector3d & a, const Vector3d & b, const Vector3d & c,
                              int degree,
                              std::vector<Vector3d> & pts, std::vector<double> & wts)
    {
      // x = a + s (b-a) + t (c-a) with s = u, t = v (1-u); Jacobian (1-u)
      int nu = gl_points_for(degree + 1);
      int nv = gl_points_for(degree);
      VectorXd xu, wu, xv, wv;
      gauss_legendre(nu, xu, wu);
      gauss_legendre(nv, xv, wv);
      double darea = (b - a).cross(c - a).norm(); // twice the area
      for (int i = 0; i < nu; i++) {
        double u = 0.5 * (xu(i) + 1.);
        for (int j = 0; j < nv; j++) {
          double v = 0.5 * (xv(j) + 1.);
          double s = u, t = v * (1. - u);
          pts.push_back(a + s * (b - a) + t * (c - a));
          wts.push_back(0.25 * wu(i) * wv(j) * (1. - u) * darea);
        }
      }
    }

    // collapsed rule on the tetrahedron (p, a, b, c)
    void append_tet_rule(const Vector3d & p, const Vector3d & a, const Vector3d & b, const Vector3d & c,
                         int degree,
                         std::vector<Vector3d> & pts, std::vector<double> & wts)
    {
      // x = p + s (a-p) + t (b-p) + r (c-p), s = u, t = v (1-u), r = w (1-u)(1-v);
      // Jacobian (1-u)^2 (1-v)
      int nu = gl_points_for(degree + 2);
      int nv = gl_points_for(degree + 1);
      int nw = gl_points_for(degree);
      VectorXd xu, wu, xv, wv, xw, ww;
      gauss_legendre(nu, xu, wu);
      gauss_legendre(nv, xv, wv);
      gauss_legendre(nw, xw, ww);
      Eigen::Matrix3d J;
      J.col(0) = a - p;
      J.col(1) = b - p;
      J.col(2) = c - p;
      double dvol = std::abs(J.determinant()); // six times the volume
      for (int i = 0; i < nu; i++) {
        double u = 0.5 * (xu(i) + 1.);
        for (int j = 0; j < nv; j++) {
          double v = 0.5 * (xv(j) + 1.);
          for (int l = 0; l < nw; l++) {
            double w = 0.5 * (xw(l) + 1.);
            double s = u, t = v * (1. - u), r = w * (1. - u) * (1. - v);
            pts.push_back(p + s * (a - p) + t * (b - p) + r * (c - p));
            wts.push_back(0.125 * wu(i) * wv(j) * ww(l) * (1. - u) * (1. - u) * (1. - v) * dvol);
          }
        }
      }
    }

    QuadratureRule pack(std::vector<Vector3d> & pts, std::vector<double> & wts, int degree)
    {
      QuadratureRule rule;
      rule.degree = degree;
      rule.points.resize(pts.size(), 3);
      rule.weights.resize(wts.size());
      for (size_t i = 0; i < pts.size(); i++) {
        rule.points.row(i) = pts[i].transpose();
        rule.weights(i) = wts[i];
      }
      return rule;
    }
  } // namespace

  QuadratureRule edge_quadrature(const Mesh & mesh, int iE, int degree)
  {
    const Edge & E = mesh.edge(iE);
    if (E.length <= 0.) throw InvalidArgument("edge_quadrature: degenerate edge");
    int n = gl_points_for(degree);
    VectorXd x, w;
    gauss_legendre(n, x, w);
    QuadratureRule rule;
    rule.degree = degree;
    rule.points.resize(n, 3);
    rule.weights.resize(n);
    const Vector3d & a = mesh.vertex(E.vertex[0]).coords;
    const Vector3d & b = mesh.vertex(E.vertex[1]).coords;
    for (int i = 0; i < n; i++) {
      double s = 0.5 * (x(i) + 1.);
      rule.points.row(i) = ((1. - s) * a + s * b).transpose();
      rule.weights(i) = 0.5 * w(i) * E.length;
    }
    return rule;
  }

  QuadratureRule face_quadrature(const Mesh & mesh, int iF, int degree)
  {
    const Face & F = mesh.face(iF);
    if (F.area <= 0.) throw InvalidArgument("face_quadrature: degenerate face");
    std::vector<Vector3d> pts;
    std::vector<double> wts;
    int nv = static_cast<int>(F.vertices.size());
    for (int i = 0; i < nv; i++) {
      const Vector3d & a = mesh.vertex(F.vertices[i]).coords;
      const Vector3d & b = mesh.vertex(F.vertices[(i + 1) % nv]).coords;
      append_triangle_rule(F.center, a, b, degree, pts, wts);
    }
    return pack(pts, wts, degree);
  }

  QuadratureRule cell_quadrature(const Mesh & mesh, int iT, int degree)
  {
    const Cell & T = mesh.cell(iT);
    if (T.volume <= 0.) throw InvalidArgument("cell_quadrature: degenerate cell");
    std::vector<Vector3d> pts;
    std::vector<double> wts;
    for (int f : T.faces) {
      const Face & F = mesh.face(f);
      int nv = static_cast<int>(F.vertices.size());
      for (int i = 0; i < nv; i++) {
        const Vector3d & a = mesh.vertex(F.vertices[i]).coords;
        const Vector3d & b = mesh.vertex(F.vertices[(i + 1) % nv]).coords;
        append_tet_rule(T.center, F.center, a, b, degree, pts, wts);
      }
    }
    return pack(pts, wts, degree);
  }

  QuadratureRule entity_quadrature(const Mesh & mesh, EntityRef ent, int degree)
  {
    switch (ent.kind) {
    case EntityKind::Cell: return cell_quadrature(mesh, ent.index, degree);
    case EntityKind::Face: return face_quadrature(mesh, ent.index, degree);
    default: return edge_quadrature(mesh, ent.index, degree);
    }
  }

} // namespace ddr
