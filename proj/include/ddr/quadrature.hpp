// Quadrature rules on mesh edges, faces and elements, exact for polynomials up to a
// requested total degree. Faces are fan-triangulated from x_F, elements are split into
// tetrahedra coning the face triangles to x_T; both use collapsed Gauss-Legendre rules.

#ifndef DDR_QUADRATURE_HPP
#define DDR_QUADRATURE_HPP

#include <ddr/common.hpp>
#include <ddr/mesh.hpp>

namespace ddr
{

  struct QuadratureRule
  {
    Eigen::Matrix<double, Eigen::Dynamic, 3> points; ///< quadrature nodes in R^3
    VectorXd weights;
    int degree; ///< polynomial exactness degree

    int size() const { return static_cast<int>(weights.size()); }
    Vector3d point(int i) const { return points.row(i).transpose(); }
  };

  /// Gauss-Legendre nodes and weights on [-1, 1]
  void gauss_legendre(int npoints, VectorXd & nodes, VectorXd & weights);

  QuadratureRule edge_quadrature(const Mesh & mesh, int iE, int degree);
  QuadratureRule face_quadrature(const Mesh & mesh, int iF, int degree);
  QuadratureRule cell_quadrature(const Mesh & mesh, int iT, int degree);

  QuadratureRule entity_quadrature(const Mesh & mesh, EntityRef ent, int degree);

} // namespace ddr

#endif
