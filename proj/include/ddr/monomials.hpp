// Graded monomial index sets in one to three variables and exact coefficient-level
// calculus on them: differentiation, multiplication by a coordinate, generic products,
// and composition with affine maps (used to restrict element polynomials to faces and
// edges and to re-center global polynomials on an element).
//
// All bases are graded: the first poly_dim(nvar, l) entries span exactly the
// polynomials of degree <= l, a property the rest of the library relies on.

#ifndef DDR_MONOMIALS_HPP
#define DDR_MONOMIALS_HPP

#include <ddr/common.hpp>
#include <ddr/dimensions.hpp>

#include <vector>

namespace ddr
{

  /// Exponent lists of the graded monomial basis of n-variate polynomials of degree <= ell.
  /// Unused exponents are zero; the order is degree-major, lexicographic inside a degree.
  const std::vector<Eigen::Vector3i> & monomial_powers(int nvar, int ell);

  /// Values of all monomials with coordinates in the rows of pts (npts x nvar); result is (nmono x npts)
  MatrixXd monomial_values(int nvar, int ell, const MatrixXd & pts);

  /// Coefficient map of d/dy_axis scaled by inv_h (y the local coordinate): P^ell -> P^{ell-1}
  MatrixXd monomial_derivative_map(int nvar, int ell, int axis, double inv_h);

  /// Coefficient map of multiplication by the local coordinate y_axis: P^ell -> P^{ell+1}
  MatrixXd monomial_multiply_map(int nvar, int ell, int axis);

  /// Product of two polynomials given by coefficient vectors; result has degree degA + degB
  VectorXd poly_product(int nvar, int degA, const VectorXd & a, int degB, const VectorXd & b);

  /// Coefficients of the composition m_alpha(c + B eta), eta in nvar_out variables.
  /// Returns a (dim P^ell_{nvar_in}) x (dim P^ell_{nvar_out}) matrix mapping coefficient
  /// vectors of the source monomials to coefficients over the target monomials.
  MatrixXd monomial_affine_compose(int nvar_in, int ell, const Vector3d & c,
                                   const Eigen::Matrix<double, 3, Eigen::Dynamic> & B,
                                   int nvar_out);

  /// Evaluate a polynomial (coefficients over graded monomials) at one point
  double poly_eval(int nvar, int ell, const VectorXd & coeff, const Vector3d & y);

} // namespace ddr

#endif
