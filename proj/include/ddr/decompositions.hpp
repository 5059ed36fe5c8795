// Construction of the partial polynomial spaces entering the direct decompositions of
// vector- and matrix-valued fields on faces and elements, and of the trimmed spaces
// obtained by lowering the degree of the image-type component.
//
// Every space is built by applying its defining differential or algebraic operator to a
// full polynomial basis, followed by a rank-revealing SVD reduction inside an
// L^2-orthonormal ambient basis. The computed rank is checked against the closed-form
// dimension; a mismatch raises DimensionMismatch. All returned bases are orthonormal.

#ifndef DDR_DECOMPOSITIONS_HPP
#define DDR_DECOMPOSITIONS_HPP

#include <ddr/basis.hpp>
#include <ddr/dimensions.hpp>

namespace ddr
{

  /// Partial and trimmed polynomial spaces on faces (F) and elements (T)
  enum class SpaceKind {
    Roly,       ///< curl_F P^{l+1}(F), in-plane vector fields
    RolyCompl,  ///< (x - x_F) P^{l-1}(F)
    CGoly,      ///< row-wise curl_F of P^{l+1}(F; R^2), 2x2 fields
    CGolyCompl, ///< (Id - adj)[P^{l-1}(F; R^2) (x - x_F)^T]
    SRoly,      ///< row-wise CURL of P^{l+1}(T; S), traceless fields
    SRolyCompl, ///< dev[P^{l-1}(T; R^3) (x - x_T)^T]
    Holy,       ///< Hess P^{l+2}(T), symmetric fields
    HolyCompl,  ///< sym[P^{l-1}(T; traceless) x (x - x_T)], row-wise cross product
    RT,         ///< Roly^{l-1} + RolyCompl^l
    CGtrim,     ///< CGoly^{l-1} + CGolyCompl^l
    SRtrim,     ///< SRoly^{l-1} + SRolyCompl^l
    Htrim       ///< Holy^{l-2} + HolyCompl^l
  };

  /// Closed-form dimension of a space (0 at negative index; trimmed spaces trivial at 0)
  int space_dim(SpaceKind kind, int ell);

  /// Storage codomain of a space
  Codomain space_codomain(SpaceKind kind);

  /// Orthonormal basis of the requested space on the entity (face or element as
  /// appropriate). Trivial spaces yield a basis of size zero.
  PolyBasis decomposition_basis(const Mesh & mesh, EntityRef ent, SpaceKind kind, int ell);

  /// Orthonormal basis of the span of raw coefficient rows (SVD with the shared
  /// relative cutoff); throws DimensionMismatch if the rank differs from expected_dim.
  PolyBasis span_basis(const Mesh & mesh, const PolyBasis & raw, int expected_dim);

} // namespace ddr

#endif
