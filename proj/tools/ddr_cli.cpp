// Command-line front end: verification runs on single elements, biharmonic solves,
// convergence studies over mesh families, and mesh generation.
//
// Exit codes: 0 when every requested assertion passes, 1 when a check fails,
// 2 on invalid flags.

#include <ddr/biharmonic.hpp>
#include <ddr/interpolators.hpp>
#include <ddr/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ddr;

namespace
{
  std::string read_file(const std::string & path)
  {
    std::ifstream in(path);
    if (!in.good()) throw InvalidArgument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Mesh element_mesh(const std::string & spec)
  {
    if (spec == "cube") return build_cartesian_mesh(1);
    if (spec == "tet") return build_reference_tetrahedron();
    return load_mesh(read_file(spec));
  }

  int run_check(const std::string & element, int degree, bool json, unsigned seed, int trials,
                int threads)
  {
    Mesh mesh = element_mesh(element);
    CoreSpaces core(mesh, degree, threads);

    std::vector<ComplexCheck> complex_checks;
    std::vector<ExactnessReport> exactness;
    std::vector<DimensionCheck> dims;
    std::vector<FaceDivergenceCheck> facediv;

    bool ok = true;
    for (int iT = 0; iT < mesh.n_cells(); iT++) {
      ComplexCheck cc = check_complex(core, iT, trials, seed);
      ok = ok && cc.pass();
      complex_checks.push_back(cc);
      ExactnessReport ex = check_exactness(core, iT);
      ok = ok && ex.pass;
      exactness.push_back(ex);
      DimensionCheck dc = check_dimensions(mesh, iT, degree);
      ok = ok && dc.pass;
      dims.push_back(dc);
    }
    for (int iF = 0; iF < std::min(mesh.n_faces(), 6); iF++) {
      for (int ell = 1; ell <= 4; ell++) {
        FaceDivergenceCheck fc = check_face_divergence(mesh, iF, ell);
        ok = ok && fc.pass;
        facediv.push_back(fc);
      }
    }

    if (json) {
      std::cout << report_json(complex_checks, exactness, dims, facediv) << "\n";
    } else {
      for (const auto & cc : complex_checks) {
        std::cout << "complex        cell " << cc.cell << " k " << cc.k << "  residuals "
                  << cc.max_residual_SC_DG << " / " << cc.max_residual_DD_SC
                  << (cc.pass() ? "  [pass]" : "  [FAIL]") << "\n";
      }
      for (const auto & ex : exactness) {
        std::cout << "exactness      cell " << ex.cell << " k " << ex.k << "  ker DG " << ex.ker_DG
                  << "  tail defect " << ex.tail_defect
                  << (ex.k == 0 ? " (expected (k=0))" : "")
                  << (ex.pass ? "  [pass]" : "  [FAIL]") << "\n";
      }
      for (const auto & dc : dims) {
        std::cout << "dimensions     cell " << dc.cell << " k " << dc.k << "  "
                  << dc.devgrad_built << "/" << dc.symcurl_built << "/" << dc.divdiv_built
                  << (dc.pass ? "  [pass]" : "  [FAIL]") << "\n";
      }
      for (const auto & fc : facediv) {
        std::cout << "face-div       face " << fc.face << " l " << fc.ell << "  sigma "
                  << fc.sigma_min << ".." << fc.sigma_max << (fc.pass ? "  [pass]" : "  [FAIL]")
                  << "\n";
      }
    }
    if (!ok) std::cerr << "check: at least one assertion failed\n";
    return ok ? 0 : 1;
  }

  int run_solve(const std::string & mesh_path, int cube_n, int degree,
                const std::string & case_name, const std::string & out, int threads)
  {
    Mesh mesh = mesh_path.empty() ? build_cartesian_mesh(cube_n) : load_mesh(read_file(mesh_path));
    ManufacturedCase mc = manufactured_case(case_name);
    CoreSpaces core(mesh, degree, threads);
    GlobalSystem system = assemble(mesh, core, mc.f, threads);
    Solution sol = solve(system);
    ErrorNorms err = compute_error(mesh, core, system, sol, mc);

    std::vector<ConvergenceRow> rows = {
      {mesh.h(), system.map.total, err.err_sigma, err.err_u, err.err_total}};
    std::string csv = convergence_csv(rows);
    if (!out.empty()) {
      std::ofstream file(out);
      file << csv;
    }
    std::cout << csv;
    std::cout << "# residual " << sol.residual << "\n";
    return (sol.residual <= 1e-8) ? 0 : 1;
  }

  int run_convergence(const std::string & family, const std::string & degrees,
                      const std::string & sizes, const std::string & out, int threads)
  {
    int k_lo = 0, k_hi = 0;
    {
      auto dots = degrees.find("..");
      if (dots == std::string::npos) {
        k_lo = k_hi = std::stoi(degrees);
      } else {
        k_lo = std::stoi(degrees.substr(0, dots));
        k_hi = std::stoi(degrees.substr(dots + 2));
      }
    }

    // the family is either the cubic generator or a comma-separated mesh file list
    std::vector<std::string> files;
    std::vector<int> cube_sizes;
    if (family == "cube") {
      std::stringstream ss(sizes);
      std::string tok;
      while (std::getline(ss, tok, ',')) cube_sizes.push_back(std::stoi(tok));
    } else {
      std::stringstream ss(family);
      std::string tok;
      while (std::getline(ss, tok, ',')) files.push_back(tok);
    }

    ManufacturedCase mc = manufactured_case("paper-bubble");
    int exit_code = 0;
    for (int k = k_lo; k <= k_hi; k++) {
      std::vector<ConvergenceRow> rows;
      int nmeshes = family == "cube" ? static_cast<int>(cube_sizes.size())
                                     : static_cast<int>(files.size());
      for (int m = 0; m < nmeshes; m++) {
        Mesh mesh = (family == "cube") ? build_cartesian_mesh(cube_sizes[m])
                                       : load_mesh(read_file(files[m]));
        CoreSpaces core(mesh, k, threads);
        GlobalSystem system = assemble(mesh, core, mc.f, threads);
        Solution sol = solve(system);
        ErrorNorms err = compute_error(mesh, core, system, sol, mc);
        rows.push_back({mesh.h(), system.map.total, err.err_sigma, err.err_u, err.err_total});
        std::cout << "# k=" << k << " h=" << mesh.h() << " ndof=" << system.map.total
                  << " err_total=" << err.err_total << "\n";
      }
      std::string csv = convergence_csv(rows);
      double slope = fitted_slope(rows);
      if (!out.empty()) {
        std::string name = out + "_" + (family == "cube" ? "cube" : "files") + "_k" +
                           std::to_string(k) + ".csv";
        std::ofstream file(name);
        file << csv;
        std::cout << "# wrote " << name << "\n";
      } else {
        std::cout << csv;
      }
      if (rows.size() >= 2) {
        std::cout << "# k=" << k << " slope=" << slope << "\n";
      }
    }
    return exit_code;
  }
} // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"arbitrary-order discrete divdiv complex on polyhedral meshes"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "threads for entity-parallel work");

  auto * check = app.add_subcommand("check", "verify the complex on a single element");
  std::string element = "cube";
  int degree = 1;
  bool json = false;
  unsigned seed = 0;
  int trials = 20;
  check->add_option("--element", element, "cube, tet, or a mesh file path");
  check->add_option("--degree", degree, "polynomial degree k >= 0")->check(CLI::NonNegativeNumber);
  check->add_flag("--json", json, "machine-readable report");
  check->add_option("--seed", seed, "seed of the randomized residual checks");
  check->add_option("--trials", trials, "random unit inputs per residual check");

  auto * solve_cmd = app.add_subcommand("solve", "solve the mixed fourth-order problem");
  std::string mesh_path, case_name = "paper-bubble", out;
  int cube_n = 2, solve_degree = 0;
  solve_cmd->add_option("--mesh", mesh_path, "mesh file path");
  solve_cmd->add_option("--cube", cube_n, "cubic mesh subdivisions");
  solve_cmd->add_option("--degree", solve_degree, "polynomial degree")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--case", case_name, "manufactured case name");
  solve_cmd->add_option("--out", out, "CSV output path");

  auto * conv = app.add_subcommand("convergence", "error decay over a mesh family");
  std::string family = "cube", degrees = "0..1", sizes = "2,4";
  std::string conv_out;
  conv->add_option("--family", family, "cube, or comma-separated mesh files");
  conv->add_option("--degrees", degrees, "degree range a..b");
  conv->add_option("--sizes", sizes, "comma-separated cubic subdivisions");
  conv->add_option("--out", conv_out, "CSV path prefix (one file per degree)");

  auto * gen = app.add_subcommand("gen-mesh", "emit a mesh file");
  int gen_n = 1;
  std::string gen_out = "mesh.json";
  gen->add_option("--cube", gen_n, "cubic mesh subdivisions")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(check)) return run_check(element, degree, json, seed, trials, threads);
    if (app.got_subcommand(solve_cmd))
      return run_solve(mesh_path, cube_n, solve_degree, case_name, out, threads);
    if (app.got_subcommand(conv)) return run_convergence(family, degrees, sizes, conv_out, threads);
    if (app.got_subcommand(gen)) {
      std::ofstream file(gen_out);
      file << save_mesh(build_cartesian_mesh(gen_n));
      std::cout << "wrote " << gen_out << "\n";
      return 0;
    }
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
