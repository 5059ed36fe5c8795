// Polynomial bases attached to mesh entities, stored as coefficients over scaled
// monomials in the entity's local frame, together with exact coefficient-level
// calculus (differentiation, algebraic maps, restriction to sub-entities) and
// L^2-orthonormalization through the Cholesky factor of the Gram matrix.
//
// Storage convention: a basis function is one row of `coeff`, laid out
// component-major, [component 0 monomials | component 1 monomials | ...].
// Matrix codomains are stored row-major ((0,0), (0,1), ...). Symmetric and
// traceless subspaces are realized as coefficient rows inside the full matrix
// storage, spanned through orthonormal component matrices.

#ifndef DDR_BASIS_HPP
#define DDR_BASIS_HPP

#include <ddr/common.hpp>
#include <ddr/mesh.hpp>
#include <ddr/monomials.hpp>
#include <ddr/quadrature.hpp>

#include <vector>

namespace ddr
{

  /// Storage codomains; subspaces (symmetric, traceless) live inside Mat2/Mat3
  enum class Codomain { Scalar, Vec2, Vec3, Mat2, Mat3 };

  inline int codomain_components(Codomain c)
  {
    switch (c) {
    case Codomain::Scalar: return 1;
    case Codomain::Vec2: return 2;
    case Codomain::Vec3: return 3;
    case Codomain::Mat2: return 4;
    default: return 9;
    }
  }

  /// Local coordinate system of an entity: y = axes^T (x - origin) / scale
  struct Frame
  {
    Vector3d origin;
    Matrix3d axes;  ///< orthonormal columns; only the first nvar are meaningful
    double scale;
    int nvar;

    /// local scaled coordinates of 3D points (rows); result npts x nvar
    MatrixXd local_coords(const Eigen::Matrix<double, Eigen::Dynamic, 3> & pts) const;
  };

  Frame cell_frame(const Mesh & mesh, int iT);
  Frame face_frame(const Mesh & mesh, int iF);
  Frame edge_frame(const Mesh & mesh, int iE);
  Frame entity_frame(const Mesh & mesh, EntityRef ent);

  /// A family of polynomial functions on one mesh entity
  struct PolyBasis
  {
    EntityRef entity;
    Frame frame;
    Codomain codomain;
    int ncomp;   ///< stored scalar components
    int degree;  ///< monomial degree bound
    MatrixXd coeff; ///< nbasis x (ncomp * nmono)

    int size() const { return static_cast<int>(coeff.rows()); }
    int nmono() const { return poly_dim(frame.nvar, degree); }
    /// coefficient block of one component
    Eigen::Block<const MatrixXd> comp_block(int c) const
    {
      return coeff.block(0, c * nmono(), coeff.rows(), nmono());
    }
  };

  /// Values of every basis function at the given 3D points, one matrix per component
  std::vector<MatrixXd> evaluate(const PolyBasis & basis,
                                 const Eigen::Matrix<double, Eigen::Dynamic, 3> & pts);

  /// Gram matrix of two families on the same entity (same codomain), by quadrature
  MatrixXd gram_matrix(const PolyBasis & a, const PolyBasis & b, const QuadratureRule & quad);

  /// sum_c int (a_c f_c) for a function given by per-component values at the quadrature
  /// points (each row of `fvals` is one component); result has one entry per basis function
  VectorXd integrate_against(const PolyBasis & basis, const QuadratureRule & quad,
                             const MatrixXd & fvals);

  /// L^2-orthonormalize in place (two Cholesky passes on the Gram matrix).
  /// Graded scalar bases stay graded: the first dim P^l functions span P^l.
  void orthonormalize(PolyBasis & basis, const QuadratureRule & quad);

  //------------------------------------------------------------------------------
  // Full polynomial spaces (orthonormalized on construction)
  //------------------------------------------------------------------------------

  /// Orthonormal graded scalar basis of P^ell on the entity
  PolyBasis scalar_basis(const Mesh & mesh, EntityRef ent, int ell);

  /// Component matrices of the tensorized subspaces (orthonormal under Frobenius)
  const std::vector<Matrix2d> & sym2_components();
  const std::vector<Matrix3d> & sym3_components();
  const std::vector<Matrix3d> & traceless3_components();

  /// Tensorized basis: (orthonormal scalar) x (orthonormal component), component-major.
  /// `sub` selects the component set: full Vec/Mat, or the symmetric / traceless subspace.
  enum class TensorSub { Full, Sym, Traceless };
  PolyBasis tensor_basis(const Mesh & mesh, EntityRef ent, int ell, Codomain storage,
                         TensorSub sub = TensorSub::Full);

  //------------------------------------------------------------------------------
  // Exact coefficient calculus (results are raw families on the same entity,
  // not orthonormalized; use them for evaluation and span construction)
  //------------------------------------------------------------------------------

  PolyBasis apply_gradient(const PolyBasis & scalar);       ///< Scalar -> Vec{nvar}
  PolyBasis apply_jacobian(const PolyBasis & vec);          ///< Vec{n} -> Mat{n}, (J v)_{ij} = d_j v_i
  PolyBasis apply_divergence(const PolyBasis & vec);        ///< Vec{n} -> Scalar
  PolyBasis apply_matrix_divergence(const PolyBasis & mat); ///< Mat{n} -> Vec{n}, row-wise
  PolyBasis apply_hessian(const PolyBasis & scalar);        ///< Scalar -> Mat{n}
  PolyBasis apply_curl3(const PolyBasis & mat);             ///< Mat3 -> Mat3, row-wise curl
  PolyBasis apply_curl2(const PolyBasis & scalar);          ///< Scalar -> Vec2, (d_2 q, -d_1 q)
  PolyBasis apply_curl2_rowwise(const PolyBasis & vec);     ///< Vec2 -> Mat2
  PolyBasis apply_rot2(const PolyBasis & vec);              ///< Vec2 -> Scalar, d_1 w_2 - d_2 w_1
  PolyBasis apply_dev3(const PolyBasis & mat);              ///< Mat3 -> Mat3
  PolyBasis apply_sym(const PolyBasis & mat);               ///< Mat{n} -> Mat{n}
  PolyBasis apply_trace(const PolyBasis & mat);             ///< Mat{n} -> Scalar
  PolyBasis apply_adjugate2(const PolyBasis & mat);         ///< Mat2 -> Mat2

  /// row-wise cross product with (x - origin): Mat3 -> Mat3, degree + 1
  PolyBasis apply_cross_coordinate(const PolyBasis & mat);
  /// v (x - origin)^T : Vec{n} -> Mat{n}, degree + 1
  PolyBasis apply_tensor_coordinate(const PolyBasis & vec);
  /// q (x - origin) : Scalar -> Vec{nvar}, degree + 1
  PolyBasis apply_coordinate_multiply(const PolyBasis & scalar);

  /// Algebraic contractions with constant vectors (components of a and b match the storage)
  PolyBasis contract_matrix(const PolyBasis & mat, const VectorXd & left, const VectorXd & right); ///< Mat -> Scalar
  PolyBasis contract_matrix_right(const PolyBasis & mat, const VectorXd & right);                  ///< Mat -> Vec
  PolyBasis contract_vector(const PolyBasis & vec, const VectorXd & v);                            ///< Vec -> Scalar
  PolyBasis cross_matrix_constant(const PolyBasis & mat, const Vector3d & b);                      ///< Mat3 -> Mat3, rows x b

  /// Linear recombination of components: out_c = sum_d W(c, d) in_d
  PolyBasis recombine_components(const PolyBasis & in, const MatrixXd & W, Codomain out_codomain);

  /// Restriction to a sub-entity frame: same components, monomials composed with the
  /// affine change of coordinates (degree preserved)
  PolyBasis restrict_to_frame(const PolyBasis & src, EntityRef dst_entity, const Frame & dst);

  //------------------------------------------------------------------------------
  // Tangential derivative reconstruction on an edge
  //------------------------------------------------------------------------------

  /// Matrix of the reconstruction P^{ell-1}(E) x vertex values -> P^ell(E) defined by
  /// duality with every r in P^ell(E): int_E out r = -int_E v_E r' + [v_V r]_{V1}^{V2}.
  /// Columns: [v_V1, v_V2, coefficients of v_E]; rows: coefficients over the
  /// orthonormal scalar basis of P^ell(E). Acts component-wise on tensor data.
  MatrixXd edge_derivative_matrix(const Mesh & mesh, int iE, int ell);

} // namespace ddr

#endif
