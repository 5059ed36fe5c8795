// Per-entity polynomial machinery for a fixed mesh and degree k: orthonormal scalar
// bases, trimmed spaces, quadrature rules of assembly degree 2k+6 and the edge
// derivative reconstruction matrices. Built once per mesh (optionally in parallel)
// and shared read-only by interpolators, operators and the verification harness.

#ifndef DDR_CORESPACES_HPP
#define DDR_CORESPACES_HPP

#include <ddr/basis.hpp>
#include <ddr/decompositions.hpp>
#include <ddr/dofspace.hpp>

#include <vector>

namespace ddr
{

  class CoreSpaces
  {
  public:
    struct EdgeData
    {
      QuadratureRule quad;   ///< degree 2k+6
      PolyBasis P;           ///< orthonormal graded scalar basis of P^{k+1}(E)
      MatrixXd D_k;          ///< derivative reconstruction into P^k(E)
      MatrixXd D_kp1;        ///< derivative reconstruction into P^{k+1}(E)
    };
    struct FaceData
    {
      QuadratureRule quad;   ///< degree 2k+6
      PolyBasis P;           ///< orthonormal graded scalar basis of P^{k+1}(F)
      PolyBasis RT;          ///< RT^{k+1}(F)
      PolyBasis CG;          ///< CGtrim^k(F)
    };
    struct CellData
    {
      QuadratureRule quad;   ///< degree 2k+6
      PolyBasis P;           ///< orthonormal graded scalar basis of P^{k+2}(T)
      PolyBasis SR;          ///< SRtrim^k(T)
      PolyBasis H;           ///< Htrim^k(T)
      PolyBasis Hc;          ///< HolyCompl^k(T) (potential test space)
      PolyBasis S;           ///< symmetric tensorized basis of P^k(T; S)
    };

    CoreSpaces(const Mesh & mesh, int k, int nthreads = 1);

    const Mesh & mesh() const { return m_mesh; }
    int degree() const { return m_k; }
    int quad_degree() const { return 2 * m_k + 6; }

    const EdgeData & edge(int iE) const { return m_edges[iE]; }
    const FaceData & face(int iF) const { return m_faces[iF]; }
    const CellData & cell(int iT) const { return m_cells[iT]; }

    /// truncated view of a graded scalar basis: the orthonormal basis of P^deg
    static PolyBasis truncate(const PolyBasis & scalar, int deg);

  private:
    const Mesh & m_mesh;
    int m_k;
    std::vector<EdgeData> m_edges;
    std::vector<FaceData> m_faces;
    std::vector<CellData> m_cells;
  };

  /// Derivative reconstruction matrix expressed over a given graded edge basis
  /// (rows: P^ell coefficients; columns: [v_V1, v_V2, P^{ell-1} coefficients])
  MatrixXd edge_derivative_matrix(const Mesh & mesh, int iE, int ell,
                                  const PolyBasis & edge_scalar, const QuadratureRule & quad);

} // namespace ddr

#endif
