// Potential reconstructions and products on the divdiv space of one element: the
// face normal-normal trace reconstruction, the symmetric matrix potential, the
// weighted component inner product, the stabilization form and the discrete L^2
// product they induce.

#ifndef DDR_POTENTIAL_HPP
#define DDR_POTENTIAL_HPP

#include <ddr/localops.hpp>

namespace ddr
{

  /// Normal-normal trace reconstruction on the local face `fi` of the cell: rows are
  /// coefficients over the orthonormal basis of P^k(F), columns span the full divdiv
  /// layout of the cell (only the face's and its edges' columns are populated).
  /// gamma solves, against all q in P^k(F),
  ///   int_F grad_F gamma . grad_F q
  ///     = -int_F pi^{k-1}(ups_F) lap_F q + sum_E omega_FE int_E (n_F^T ups_E n_F)(grad_F q . n_FE)
  /// closed by int_{boundary} gamma = sum_E int_E n_F^T ups_E n_F.
  MatrixXd gamma_nnF(const CoreSpaces & core, int iT, int fi, const DofLayout & layout);

  /// Everything the scheme needs from one element
  struct DivDivLocal
  {
    DofLayout layout;
    MatrixXd DD;                 ///< P^k(T) coefficients x layout.total
    std::vector<MatrixXd> gamma; ///< per local face
    MatrixXd potential;          ///< coefficients over the symmetric basis x layout.total
    VectorXd comp_weights;       ///< diagonal of the component inner product
    MatrixXd stab;               ///< stabilization bilinear form
    MatrixXd product;            ///< discrete L^2 product = potential^T potential + stab
  };

  DivDivLocal build_divdiv_local(const CoreSpaces & core, int iT);

} // namespace ddr

#endif
