// Concrete polynomial fields with exact calculus, used for interpolator inputs,
// manufactured solutions and the verification harness. A field stores plain (unscaled,
// uncentered) global monomial coefficients; per-element views re-center the
// coefficients on the element frame through an affine change of variables.

#ifndef DDR_POLYFIELD_HPP
#define DDR_POLYFIELD_HPP

#include <ddr/basis.hpp>

#include <random>

namespace ddr
{

  /// Polynomial field over global coordinates; rows of `coeff` are components
  /// (1 scalar, 3 vector, 9 matrix row-major), columns are graded 3-variate monomials
  struct PolyField
  {
    Codomain codomain; ///< Scalar, Vec3 or Mat3
    int degree;
    MatrixXd coeff; ///< ncomp x dim P^degree

    int ncomp() const { return codomain_components(codomain); }

    double eval_scalar(const Vector3d & x) const;
    Vector3d eval_vector(const Vector3d & x) const;
    Matrix3d eval_matrix(const Vector3d & x) const;

    /// per-component values at 3D points (rows of pts); result ncomp x npts
    MatrixXd eval(const Eigen::Matrix<double, Eigen::Dynamic, 3> & pts) const;
  };

  PolyField field_zero(Codomain codomain, int degree);

  /// coefficients re-expressed over the scaled monomials of an entity frame,
  /// as a raw PolyBasis whose "basis functions" are the components of the field
  PolyBasis field_on_frame(const PolyField & f, EntityRef ent, const Frame & frame);

  //------------------------------------------------------------------------------
  // Exact calculus on global coefficients
  //------------------------------------------------------------------------------

  PolyField field_gradient(const PolyField & scalar);   ///< Scalar -> Vec3
  PolyField field_jacobian(const PolyField & vec);      ///< Vec3 -> Mat3, (Jv)_{ij} = d_j v_i
  PolyField field_divergence(const PolyField & vec);    ///< Vec3 -> Scalar
  PolyField field_matrix_divergence(const PolyField & mat); ///< Mat3 -> Vec3 row-wise
  PolyField field_hessian(const PolyField & scalar);    ///< Scalar -> Mat3
  PolyField field_curl3(const PolyField & mat);         ///< Mat3 -> Mat3 row-wise
  PolyField field_laplacian(const PolyField & scalar);  ///< Scalar -> Scalar
  PolyField field_dev(const PolyField & mat);
  PolyField field_sym(const PolyField & mat);
  PolyField field_div_div(const PolyField & mat);       ///< Mat3 -> Scalar

  PolyField field_sum(const PolyField & a, const PolyField & b, double wa = 1., double wb = 1.);
  PolyField field_scale(const PolyField & a, double s);

  //------------------------------------------------------------------------------
  // Random polynomial fields (for property tests; deterministic under a fixed seed)
  //------------------------------------------------------------------------------

  enum class FieldShape { Scalar, Vector, Matrix, Symmetric, Traceless };

  /// random field with coefficients drawn from N(0,1) over the monomials of the
  /// element frame (re-expressed globally so all exact calculus applies)
  PolyField random_field(FieldShape shape, int degree, const Frame & frame, std::mt19937_64 & rng);

} // namespace ddr

#endif
