// Interpolators onto the three local discrete spaces. Inputs are exact polynomial
// fields (any degree); every component is the L^2-orthogonal projection or point
// value prescribed by the space definition, computed with quadrature of sufficient
// degree for exactness.

#ifndef DDR_INTERPOLATORS_HPP
#define DDR_INTERPOLATORS_HPP

#include <ddr/corespaces.hpp>
#include <ddr/polyfield.hpp>

namespace ddr
{

  /// Components: element projection of v; per face projections of v.n_F, the tangential
  /// trace and div v; per edge projections of v.t_E, the edge-normal trace and the
  /// edge-normal block of grad v; vertex values of v and grad v.
  VectorXd interpolate_devgrad(const CoreSpaces & core, int iT, const PolyField & v);

  /// Components: trimmed projection on T; face projections of the normal-tangential and
  /// tangential-tangential traces; edge projections of the normal-normal block, the
  /// normal-tangential trace and the normal-normal block of grad(tau t_E); vertex values.
  /// Throws InvalidArgument if tau is not traceless.
  VectorXd interpolate_symcurl(const CoreSpaces & core, int iT, const PolyField & tau);

  /// Components: trimmed projection on T; per face projections of the normal-normal
  /// trace and of 2 div_F(ups n_F) + d_{n_F}(ups_nn); per edge projections of the
  /// edge-normal block. Throws InvalidArgument if ups is not symmetric.
  VectorXd interpolate_divdiv(const CoreSpaces & core, int iT, const PolyField & ups);

  /// Interpolation matrix of the symmetric polynomial basis core.cell(iT).S:
  /// column j is interpolate_divdiv of the j-th basis field
  MatrixXd divdiv_polynomial_interpolation(const CoreSpaces & core, int iT);

  /// The four fields spanning the lowest-order Raviart-Thomas space a + c (x - x_T)
  std::vector<PolyField> rt1_basis(const Mesh & mesh, int iT);

} // namespace ddr

#endif
