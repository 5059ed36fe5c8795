// Local discrete operators of the divdiv complex on one element: the devgrad operator
// mapping into the symcurl unknowns, the symcurl operator mapping into the divdiv
// unknowns, and the divdiv operator mapping into P^k(T). Each face/element component
// solves its defining variational identity against the orthonormalized test basis, so
// the identity mass matrix short-circuits the solve; edge and vertex components apply
// the tangential derivative reconstructions and algebraic maps directly.

#ifndef DDR_LOCALOPS_HPP
#define DDR_LOCALOPS_HPP

#include <ddr/corespaces.hpp>

namespace ddr
{

  /// The three operator matrices of the local complex on one element.
  /// Rows/columns are indexed by the layouts; DD rows are coefficients over the
  /// orthonormal scalar basis of P^k(T) (the truncated cell basis).
  struct ComplexOperators
  {
    DofLayout devgrad;
    DofLayout symcurl;
    DofLayout divdiv;
    MatrixXd DG; ///< symcurl.total x devgrad.total
    MatrixXd SC; ///< divdiv.total  x symcurl.total
    MatrixXd DD; ///< dim P^k(T)    x divdiv.total
  };

  MatrixXd assemble_devgrad(const CoreSpaces & core, int iT);
  MatrixXd assemble_symcurl(const CoreSpaces & core, int iT);
  MatrixXd assemble_divdiv_op(const CoreSpaces & core, int iT);

  ComplexOperators build_complex_operators(const CoreSpaces & core, int iT);

  /// 2x2 map eta -> [[eta_01, (eta_11 - eta_00)/2], [(eta_11 - eta_00)/2, -eta_10]]
  /// expressed from row-major components into the orthonormal symmetric pair basis
  const MatrixXd & symmetrizing_tensor_map();

} // namespace ddr

#endif
