// Global divdiv space assembly and the mixed scheme for the fourth-order problem:
// find (sigma_h, u_h) with sigma_h in the global divdiv space and u_h broken P^k with
//   (sigma_h, tau_h) + int DD tau_h u_h = 0        for all tau_h,
//   -int DD sigma_h v_h = int f v_h                for all v_h.
// Face and edge unknowns are shared between elements (their bases are built from
// entity data only); element unknowns are private. The global ordering is all face
// blocks, then edge blocks, then element blocks, then the broken scalar unknowns.

#ifndef DDR_BIHARMONIC_HPP
#define DDR_BIHARMONIC_HPP

#include <ddr/polyfield.hpp>
#include <ddr/potential.hpp>

#include <Eigen/Sparse>

#include <optional>
#include <string>

namespace ddr
{

  struct GlobalDofMap
  {
    int k = 0;
    std::vector<int> face_offset;  ///< offset of each face block (value + D, contiguous)
    std::vector<int> edge_offset;
    std::vector<int> cell_offset;  ///< element (trimmed space) blocks
    std::vector<int> u_offset;     ///< broken P^k blocks, after all sigma dofs
    int sigma_total = 0;
    int total = 0;

    /// scatter map: global index of each local divdiv dof of cell iT
    std::vector<int> local_to_global(const Mesh & mesh, int iT, const DofLayout & layout) const;
  };

  GlobalDofMap build_global_map(const Mesh & mesh, int k);

  /// Exact polynomial data of a manufactured problem
  struct ManufacturedCase
  {
    std::string name;
    PolyField u;     ///< scalar
    PolyField sigma; ///< symmetric, -Hess u
    PolyField f;     ///< scalar, div DIV Hess u
  };

  /// The built-in case "paper-bubble": u = x^2(1-x)^2 y^2(1-y)^2 z^2(1-z)^2 on the unit
  /// cube; u and its normal derivative vanish on the boundary
  ManufacturedCase manufactured_case(const std::string & name);

  struct GlobalSystem
  {
    GlobalDofMap map;
    Eigen::SparseMatrix<double> matrix; ///< [[A, B^T], [B, 0]], symmetric indefinite
    VectorXd rhs;                       ///< (0, -F) with F_i = int f v_i
    std::vector<DivDivLocal> locals;    ///< per-element operators (kept for the error norm)
  };

  /// Assemble the saddle-point system; local computations run in parallel over the
  /// elements when nthreads > 1 and are concatenated in element order, so the result
  /// is identical to the serial reference.
  GlobalSystem assemble(const Mesh & mesh, const CoreSpaces & core,
                        const std::optional<PolyField> & f, int nthreads = 1);

  struct Solution
  {
    VectorXd sigma; ///< global divdiv coefficients
    VectorXd u;     ///< broken P^k coefficients
    double residual;
  };

  /// Sparse direct factorization of the full indefinite matrix
  Solution solve(const GlobalSystem & system);

  struct ErrorNorms
  {
    double err_sigma; ///< discrete L^2 norm of sigma_h - interpolate of sigma
    double err_u;     ///< broken L^2 norm of u_h - projection of u
    double err_total; ///< err_sigma + err_u
  };

  ErrorNorms compute_error(const Mesh & mesh, const CoreSpaces & core, const GlobalSystem & system,
                           const Solution & sol, const ManufacturedCase & mc);

  struct ConvergenceRow
  {
    double h;
    int ndof;
    double err_sigma, err_u, err_total;
  };

  /// least-squares slope of log(err_total) against log(h); NaN with fewer than 2 rows
  double fitted_slope(const std::vector<ConvergenceRow> & rows);

  /// CSV with the exact header h,ndof,err_sigma,err_u,err_total
  std::string convergence_csv(const std::vector<ConvergenceRow> & rows);

} // namespace ddr

#endif
