#include <ddr/biharmonic.hpp>
#include <ddr/interpolators.hpp>
#include <ddr/parallel.hpp>

#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>

namespace ddr
{

  GlobalDofMap build_global_map(const Mesh & mesh, int k)
  {
    GlobalDofMap map;
    map.k = k;
    int offset = 0;
    map.face_offset.resize(mesh.n_faces());
    int face_block = 2 * poly_dim(2, k + 1);
    for (int iF = 0; iF < mesh.n_faces(); iF++) {
      map.face_offset[iF] = offset;
      offset += face_block;
    }
    map.edge_offset.resize(mesh.n_edges());
    int edge_block = 3 * (k + 2);
    for (int iE = 0; iE < mesh.n_edges(); iE++) {
      map.edge_offset[iE] = offset;
      offset += edge_block;
    }
    map.cell_offset.resize(mesh.n_cells());
    int cell_block = CellSpaceDim::Htrim(k);
    for (int iT = 0; iT < mesh.n_cells(); iT++) {
      map.cell_offset[iT] = offset;
      offset += cell_block;
    }
    map.sigma_total = offset;
    map.u_offset.resize(mesh.n_cells());
    for (int iT = 0; iT < mesh.n_cells(); iT++) {
      map.u_offset[iT] = offset;
      offset += poly_dim(3, k);
    }
    map.total = offset;
    return map;
  }

  std::vector<int> GlobalDofMap::local_to_global(const Mesh & mesh, int iT,
                                                 const DofLayout & layout) const
  {
    (void)mesh;
    std::vector<int> glob(layout.total);
    for (const auto & b : layout.blocks) {
      int base = 0;
      switch (b.slot) {
      case Slot::EdgeSym:
        base = edge_offset[b.entity.index];
        break;
      case Slot::FaceValue:
        base = face_offset[b.entity.index];
        break;
      case Slot::FaceD:
        base = face_offset[b.entity.index] + poly_dim(2, k + 1);
        break;
      case Slot::CellHtrim:
        base = cell_offset[b.entity.index];
        break;
      default:
        throw InvalidArgument("local_to_global: unexpected block in the divdiv layout");
      }
      for (int i = 0; i < b.size; i++) glob[b.offset + i] = base + i;
    }
    return glob;
  }

  namespace
  {
    // g(t) = t^2 (1 - t)^2 as coefficients over 1, t, t^2, t^3, t^4
    VectorXd bubble_1d()
    {
      VectorXd g = VectorXd::Zero(5);
      g(2) = 1.;
      g(3) = -2.;
      g(4) = 1.;
      return g;
    }
  }

  ManufacturedCase manufactured_case(const std::string & name)
  {
    if (name != "paper-bubble") {
      throw InvalidArgument("manufactured_case: unknown case \"" + name + "\"");
    }
    // u(x, y, z) = g(x) g(y) g(z) via 1D coefficient products
    VectorXd g = bubble_1d();
    PolyField gx = field_zero(Codomain::Scalar, 4);
    PolyField gy = field_zero(Codomain::Scalar, 4);
    PolyField gz = field_zero(Codomain::Scalar, 4);
    const auto & powers1 = monomial_powers(1, 4);
    for (size_t m = 0; m < powers1.size(); m++) {
      int p = powers1[m](0);
      // place t^p into the corresponding 3-variate monomial
      auto place = [&](PolyField & f, int axis) {
        const auto & powers3 = monomial_powers(3, 4);
        for (size_t mm = 0; mm < powers3.size(); mm++) {
          Eigen::Vector3i pw = powers3[mm];
          if (pw(axis) == p && pw.sum() == p) f.coeff(0, mm) = g(p);
        }
      };
      place(gx, 0);
      place(gy, 1);
      place(gz, 2);
    }
    PolyField u = field_zero(Codomain::Scalar, 12);
    u.coeff.row(0) = poly_product(3, 8, poly_product(3, 4, gx.coeff.row(0).transpose(), 4,
                                                     gy.coeff.row(0).transpose()),
                                  4, gz.coeff.row(0).transpose())
                       .transpose();

    ManufacturedCase mc;
    mc.name = name;
    mc.u = u;
    mc.sigma = field_scale(field_hessian(u), -1.);
    mc.f = field_div_div(field_hessian(u)); // biharmonic of u
    return mc;
  }

  GlobalSystem assemble(const Mesh & mesh, const CoreSpaces & core,
                        const std::optional<PolyField> & f, int nthreads)
  {
    const int k = core.degree();
    GlobalSystem system;
    system.map = build_global_map(mesh, k);
    system.locals.resize(mesh.n_cells());
    std::vector<std::vector<Eigen::Triplet<double>>> triplets(mesh.n_cells());
    std::vector<VectorXd> rhs_blocks(mesh.n_cells());

    parallel_for(mesh.n_cells(), nthreads, [&](int iT) {
      DivDivLocal local = build_divdiv_local(core, iT);
      std::vector<int> glob = system.map.local_to_global(mesh, iT, local.layout);
      auto & trip = triplets[iT];
      trip.reserve(local.layout.total * (local.layout.total + 2 * poly_dim(3, k)));

      // A block
      for (int i = 0; i < local.layout.total; i++) {
        for (int j = 0; j < local.layout.total; j++) {
          double v = local.product(i, j);
          if (v != 0.) trip.emplace_back(glob[i], glob[j], v);
        }
      }
      // B and B^T blocks: B[v, dof] = int_T DD(dof) v
      int u0 = system.map.u_offset[iT];
      for (int r = 0; r < local.DD.rows(); r++) {
        for (int j = 0; j < local.layout.total; j++) {
          double v = local.DD(r, j);
          if (v != 0.) {
            trip.emplace_back(u0 + r, glob[j], v);
            trip.emplace_back(glob[j], u0 + r, v);
          }
        }
      }

      // rhs: -int_T f v_i over the orthonormal broken basis
      if (f.has_value()) {
        PolyBasis Pk = CoreSpaces::truncate(core.cell(iT).P, k);
        int needed = f->degree + k;
        QuadratureRule quad = (needed <= core.cell(iT).quad.degree)
                                ? core.cell(iT).quad
                                : cell_quadrature(mesh, iT, needed);
        rhs_blocks[iT] = -integrate_against(Pk, quad, f->eval(quad.points));
      } else {
        rhs_blocks[iT] = VectorXd::Zero(poly_dim(3, k));
      }
      system.locals[iT] = std::move(local);
    });

    // deterministic concatenation in element order
    std::vector<Eigen::Triplet<double>> all;
    size_t count = 0;
    for (const auto & t : triplets) count += t.size();
    all.reserve(count);
    for (const auto & t : triplets) all.insert(all.end(), t.begin(), t.end());

    system.matrix.resize(system.map.total, system.map.total);
    system.matrix.setFromTriplets(all.begin(), all.end());
    system.rhs = VectorXd::Zero(system.map.total);
    for (int iT = 0; iT < mesh.n_cells(); iT++) {
      system.rhs.segment(system.map.u_offset[iT], rhs_blocks[iT].size()) = rhs_blocks[iT];
    }
    return system;
  }

  Solution solve(const GlobalSystem & system)
  {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(system.matrix);
    if (lu.info() != Eigen::Success) {
      throw std::runtime_error("solve: sparse factorization failed (singular system)");
    }
    VectorXd z = lu.solve(system.rhs);
    Solution sol;
    sol.sigma = z.head(system.map.sigma_total);
    sol.u = z.tail(system.map.total - system.map.sigma_total);
    double scale = std::max(1., system.rhs.norm());
    sol.residual = (system.matrix * z - system.rhs).norm() / scale;
    return sol;
  }

  ErrorNorms compute_error(const Mesh & mesh, const CoreSpaces & core, const GlobalSystem & system,
                           const Solution & sol, const ManufacturedCase & mc)
  {
    const int k = core.degree();
    double err_sigma_sq = 0., err_u_sq = 0.;
    for (int iT = 0; iT < mesh.n_cells(); iT++) {
      const DivDivLocal & local = system.locals[iT];
      std::vector<int> glob = system.map.local_to_global(mesh, iT, local.layout);
      VectorXd sigma_local(local.layout.total);
      for (int i = 0; i < local.layout.total; i++) sigma_local(i) = sol.sigma(glob[i]);
      VectorXd diff = sigma_local - interpolate_divdiv(core, iT, mc.sigma);
      err_sigma_sq += diff.dot(local.product * diff);

      PolyBasis Pk = CoreSpaces::truncate(core.cell(iT).P, k);
      int needed = mc.u.degree + k;
      QuadratureRule quad = (needed <= core.cell(iT).quad.degree)
                              ? core.cell(iT).quad
                              : cell_quadrature(mesh, iT, needed);
      VectorXd proj = integrate_against(Pk, quad, mc.u.eval(quad.points));
      int u0 = system.map.u_offset[iT] - system.map.sigma_total;
      err_u_sq += (sol.u.segment(u0, proj.size()) - proj).squaredNorm();
    }
    ErrorNorms err;
    err.err_sigma = std::sqrt(err_sigma_sq);
    err.err_u = std::sqrt(err_u_sq);
    err.err_total = err.err_sigma + err.err_u;
    return err;
  }

  double fitted_slope(const std::vector<ConvergenceRow> & rows)
  {
    if (rows.size() < 2) return std::nan("");
    double sx = 0., sy = 0., sxx = 0., sxy = 0.;
    for (const auto & r : rows) {
      double x = std::log(r.h), y = std::log(r.err_total);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double n = static_cast<double>(rows.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }

  std::string convergence_csv(const std::vector<ConvergenceRow> & rows)
  {
    std::ostringstream out;
    out << "h,ndof,err_sigma,err_u,err_total\n";
    out.precision(16);
    for (const auto & r : rows) {
      out << r.h << "," << r.ndof << "," << r.err_sigma << "," << r.err_u << "," << r.err_total
          << "\n";
    }
    return out.str();
  }

} // namespace ddr
