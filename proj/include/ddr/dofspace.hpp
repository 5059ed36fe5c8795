// Degree-of-freedom layouts of the three local discrete spaces. A layout lists the
// polynomial blocks attached to the vertices, edges, faces and element of one cell,
// in that order, with deterministic offsets. Coefficients are always taken in the
// orthonormalized basis of each block (for vertex values: raw components, or
// coordinates over the orthonormal component matrices for matrix-valued blocks).

#ifndef DDR_DOFSPACE_HPP
#define DDR_DOFSPACE_HPP

#include <ddr/basis.hpp>
#include <ddr/decompositions.hpp>

#include <string>
#include <vector>

namespace ddr
{

  enum class SpaceTag { DevGrad, SymCurl, DivDiv };

  /// Identifies the role of a block inside its layout
  enum class Slot {
    // devgrad
    VertexValue,     ///< v_V in R^3
    VertexGradient,  ///< G_V in R^{3x3} (row-major entries)
    EdgeTangent,     ///< v_{t,E} in P^{k-1}(E)
    EdgeNormal,      ///< v_{n,E} in P^k(E; R^2), edge-frame components
    EdgeGradient,    ///< G_E in P^k(E; R^{2x2}), edge-frame nn block
    FaceNormal,      ///< v_{n,F} in P^k(F)
    FaceTangent,     ///< v_{t,F} in P^{k-1}(F; R^2), face-frame components
    FaceDivergence,  ///< G_F in P^{k-1}(F)
    CellValue,       ///< v_T in P^{k-1}(T; R^3)
    // symcurl
    VertexTraceless, ///< tau_V, coordinates over the traceless component matrices
    EdgeMatrix,      ///< tau_E in P^k(E; R^{2x2})
    EdgeNormalTangent, ///< tau_{t,E} in P^{k+1}(E; R^2)
    EdgeC,           ///< C_E in P^{k+1}(E; R^{2x2})
    FaceRT,          ///< RT^{k+1}(F) coefficients
    FaceCG,          ///< CGtrim^k(F) coefficients
    CellSR,          ///< SRtrim^k(T) coefficients
    // divdiv
    EdgeSym,         ///< ups_E in P^{k+1}(E; S_2), coordinates over the symmetric pair basis
    FaceValue,       ///< ups_F in P^{k+1}(F)
    FaceD,           ///< D_F in P^{k+1}(F)
    CellHtrim        ///< Htrim^k(T) coefficients
  };

  struct DofBlock
  {
    Slot slot;
    EntityRef entity;  ///< global entity
    int local;         ///< index of the entity inside the cell's vertex/edge/face list
    int degree;        ///< polynomial degree of the block (ignored for vertex blocks)
    int ncomp;         ///< tensor components of the block
    int offset;
    int size;
  };

  struct DofLayout
  {
    SpaceTag tag;
    int k;
    int cell;
    std::vector<DofBlock> blocks;
    int total = 0;

    /// the block at (slot, local entity index); throws if absent
    const DofBlock & block(Slot slot, int local = 0) const;
    /// view of the block coefficients inside a local vector
    Eigen::VectorBlock<const VectorXd> at(const VectorXd & v, Slot slot, int local = 0) const;
  };

  DofLayout devgrad_layout(const Mesh & mesh, int iT, int k);
  DofLayout symcurl_layout(const Mesh & mesh, int iT, int k);
  DofLayout divdiv_layout(const Mesh & mesh, int iT, int k);

  /// Closed-form totals (the k = 0 element block of the divdiv space is corrected to
  /// its true value: the trimmed symmetric space is trivial at degree 0)
  int devgrad_dim_formula(int nv, int ne, int nf, int k);
  int symcurl_dim_formula(int nv, int ne, int nf, int k);
  int divdiv_dim_formula(int ne, int nf, int k);

} // namespace ddr

#endif
