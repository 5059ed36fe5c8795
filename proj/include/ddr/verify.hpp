// Executable verification of the algebraic properties of the local complex on a single
// element: complex property residuals, rank/kernel bookkeeping with exactness checks,
// dimension counts against the closed forms, and the face-divergence isomorphism.

#ifndef DDR_VERIFY_HPP
#define DDR_VERIFY_HPP

#include <ddr/localops.hpp>

#include <string>

namespace ddr
{

  struct ComplexCheck
  {
    int cell;
    int k;
    int trials;
    double max_residual_SC_DG;  ///< max over random unit inputs of |SC(DG u)|
    double max_residual_DD_SC;  ///< max over random unit inputs of |DD(SC t)|
    double norm_SC_DG;          ///< matrix product norms (scale-free diagnostics)
    double norm_DD_SC;
    bool pass(double tol = 1e-9) const
    {
      return max_residual_SC_DG <= tol && max_residual_DD_SC <= tol;
    }
  };

  struct ExactnessReport
  {
    int cell;
    int k;
    int euler_characteristic;
    bool trivial_topology;
    int dim_devgrad, dim_symcurl, dim_divdiv, dim_poly;
    int rank_DG, rank_SC, rank_DD;
    int ker_DG, ker_SC, ker_DD;
    double rt1_containment_residual; ///< residual of the interpolated lowest-order
                                     ///< Raviart-Thomas fields against the kernel of DG
    int tail_defect;                 ///< ker DD - rank SC (0 for k >= 1, 3 at k = 0)
    bool head_exact;                 ///< ker DG = 4 with containment, ker SC = rank DG
    bool tail_exact;                 ///< ker DD = rank SC and rank DD = dim P^k
    bool pass;                       ///< all checks expected for this k hold
  };

  ComplexCheck check_complex(const CoreSpaces & core, int iT, int trials, unsigned seed = 0);
  ExactnessReport check_exactness(const CoreSpaces & core, int iT);

  struct DimensionCheck
  {
    int cell;
    int k;
    int devgrad_built, devgrad_formula;
    int symcurl_built, symcurl_formula;
    int divdiv_built, divdiv_formula;
    int poly_built, poly_formula;
    bool pass;
  };

  DimensionCheck check_dimensions(const Mesh & mesh, int iT, int k);

  struct FaceDivergenceCheck
  {
    int face;
    int ell;
    int rows, cols;
    double sigma_min, sigma_max;
    double monomial_identity_residual; ///< |div_F A(1,0) - (3,0)| in the face frame
    bool pass;
  };

  FaceDivergenceCheck check_face_divergence(const Mesh & mesh, int iF, int ell);

  /// JSON for CI consumption: one object per requested check
  std::string report_json(const std::vector<ComplexCheck> & complex_checks,
                          const std::vector<ExactnessReport> & exactness,
                          const std::vector<DimensionCheck> & dims,
                          const std::vector<FaceDivergenceCheck> & facediv);

} // namespace ddr

#endif
