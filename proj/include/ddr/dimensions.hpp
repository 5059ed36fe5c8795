// Closed-form dimensions of the full and partial polynomial spaces attached to
// edges, faces and elements, including the trimmed variants and the negative-index
// conventions (all partial spaces are trivial at negative index, the trimmed ones
// also at index zero).

#ifndef DDR_DIMENSIONS_HPP
#define DDR_DIMENSIONS_HPP

#include <algorithm>

namespace ddr
{

  /// dim of n-variate polynomials of total degree <= ell (0 for ell < 0)
  inline int poly_dim(int nvar, int ell)
  {
    if (ell < 0) return 0;
    switch (nvar) {
    case 1: return ell + 1;
    case 2: return (ell + 1) * (ell + 2) / 2;
    case 3: return (ell + 1) * (ell + 2) * (ell + 3) / 6;
    default: return 0;
    }
  }

  /// Polynomial space dimensions on a face (two-variate)
  struct FaceSpaceDim
  {
    static int Poly(int ell) { return poly_dim(2, ell); }
    static int Roly(int ell) { return ell < 0 ? 0 : poly_dim(2, ell + 1) - 1; }
    static int RolyCompl(int ell) { return poly_dim(2, ell - 1); }
    static int CGoly(int ell) { return ell < 0 ? 0 : 2 * (poly_dim(2, ell + 1) - 1); }
    static int CGolyCompl(int ell) { return 2 * poly_dim(2, ell - 1); }
    /// trimmed Raviart-Thomas space RT^ell = Roly^{ell-1} + RolyCompl^ell
    static int RT(int ell) { return Roly(ell - 1) + RolyCompl(ell); }
    static int CGtrim(int ell) { return CGoly(ell - 1) + CGolyCompl(ell); }
  };

  /// Polynomial space dimensions on an element (three-variate)
  struct CellSpaceDim
  {
    static int Poly(int ell) { return poly_dim(3, ell); }
    static int SRoly(int ell) { return ell < 0 ? 0 : 8 * poly_dim(3, ell) - 3 * poly_dim(3, ell - 1); }
    static int SRolyCompl(int ell) { return 3 * poly_dim(3, ell - 1); }
    static int Holy(int ell) { return ell < -1 ? 0 : std::max(0, poly_dim(3, ell + 2) - 4); }
    static int HolyCompl(int ell)
    {
      if (ell < 1) return 0;
      return 6 * poly_dim(3, ell) - poly_dim(3, ell + 2) + 4;
    }
    static int SRtrim(int ell) { return SRoly(ell - 1) + SRolyCompl(ell); }
    static int Htrim(int ell) { return Holy(ell - 2) + HolyCompl(ell); }
  };

} // namespace ddr

#endif
