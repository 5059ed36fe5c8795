#include <ddr/monomials.hpp>

#include <map>
#include <mutex>

namespace ddr
{

  namespace
  {
    std::vector<Eigen::Vector3i> build_powers(int nvar, int ell)
    {
      std::vector<Eigen::Vector3i> powers;
      powers.reserve(poly_dim(nvar, ell));
      for (int l = 0; l <= ell; l++) {
        if (nvar == 1) {
          powers.push_back(Eigen::Vector3i(l, 0, 0));
        } else if (nvar == 2) {
          for (int i = l; i >= 0; i--) {
            powers.push_back(Eigen::Vector3i(i, l - i, 0));
          }
        } else {
          for (int i = l; i >= 0; i--) {
            for (int j = l - i; j >= 0; j--) {
              powers.push_back(Eigen::Vector3i(i, j, l - i - j));
            }
          }
        }
      }
      return powers;
    }

    // index of a monomial inside the graded basis of its variable count
    int power_index(int nvar, const Eigen::Vector3i & p)
    {
      int l = p.sum();
      int base = poly_dim(nvar, l - 1);
      if (nvar == 1) return base;
      if (nvar == 2) return base + (l - p(0));
      // nvar == 3: monomials of degree l ordered by decreasing i then decreasing j
      int off = 0;
      for (int i = l; i > p(0); i--) off += l - i + 1;
      off += (l - p(0)) - p(1);
      return base + off;
    }
  } // namespace

  const std::vector<Eigen::Vector3i> & monomial_powers(int nvar, int ell)
  {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::vector<Eigen::Vector3i>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(nvar, ell);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, build_powers(nvar, ell)).first;
    }
    return it->second;
  }

  MatrixXd monomial_values(int nvar, int ell, const MatrixXd & pts)
  {
    if (ell < 0) return MatrixXd::Zero(0, pts.rows());
    const auto & powers = monomial_powers(nvar, ell);
    int npts = pts.rows();
    MatrixXd vals(powers.size(), npts);
    for (int q = 0; q < npts; q++) {
      // powers of each coordinate up to ell
      Eigen::Matrix<double, 3, Eigen::Dynamic> cp(3, ell + 1);
      cp.col(0).setOnes();
      for (int l = 1; l <= ell; l++) {
        for (int d = 0; d < nvar; d++) cp(d, l) = cp(d, l - 1) * pts(q, d);
      }
      for (size_t m = 0; m < powers.size(); m++) {
        double v = cp(0, powers[m](0));
        if (nvar > 1) v *= cp(1, powers[m](1));
        if (nvar > 2) v *= cp(2, powers[m](2));
        vals(m, q) = v;
      }
    }
    return vals;
  }

  MatrixXd monomial_derivative_map(int nvar, int ell, int axis, double inv_h)
  {
    const auto & in = monomial_powers(nvar, ell);
    MatrixXd map = MatrixXd::Zero(poly_dim(nvar, ell - 1), in.size());
    for (size_t m = 0; m < in.size(); m++) {
      if (in[m](axis) == 0) continue;
      Eigen::Vector3i p = in[m];
      p(axis) -= 1;
      map(power_index(nvar, p), m) = in[m](axis) * inv_h;
    }
    return map;
  }

  MatrixXd monomial_multiply_map(int nvar, int ell, int axis)
  {
    const auto & in = monomial_powers(nvar, ell);
    MatrixXd map = MatrixXd::Zero(poly_dim(nvar, ell + 1), in.size());
    for (size_t m = 0; m < in.size(); m++) {
      Eigen::Vector3i p = in[m];
      p(axis) += 1;
      map(power_index(nvar, p), m) = 1.;
    }
    return map;
  }

  VectorXd poly_product(int nvar, int degA, const VectorXd & a, int degB, const VectorXd & b)
  {
    const auto & pa = monomial_powers(nvar, degA);
    const auto & pb = monomial_powers(nvar, degB);
    VectorXd out = VectorXd::Zero(poly_dim(nvar, degA + degB));
    for (int i = 0; i < a.size(); i++) {
      if (a(i) == 0.) continue;
      for (int j = 0; j < b.size(); j++) {
        if (b(j) == 0.) continue;
        out(power_index(nvar, pa[i] + pb[j])) += a(i) * b(j);
      }
    }
    return out;
  }

  MatrixXd monomial_affine_compose(int nvar_in, int ell, const Vector3d & c,
                                   const Eigen::Matrix<double, 3, Eigen::Dynamic> & B,
                                   int nvar_out)
  {
    const auto & in = monomial_powers(nvar_in, ell);
    int nout = poly_dim(nvar_out, ell);
    MatrixXd map = MatrixXd::Zero(nout, in.size());

    // affine factors c_d + sum_j B(d,j) eta_j as degree-1 polynomials in eta
    std::vector<VectorXd> factor(nvar_in);
    for (int d = 0; d < nvar_in; d++) {
      VectorXd f = VectorXd::Zero(poly_dim(nvar_out, 1));
      f(0) = c(d);
      const auto & lin = monomial_powers(nvar_out, 1);
      for (size_t m = 1; m < lin.size(); m++) {
        for (int j = 0; j < nvar_out; j++) {
          if (lin[m](j) == 1) f(m) = B(d, j);
        }
      }
      factor[d] = f;
    }

    for (size_t m = 0; m < in.size(); m++) {
      VectorXd acc = VectorXd::Ones(1);
      int deg = 0;
      for (int d = 0; d < nvar_in; d++) {
        for (int rep = 0; rep < in[m](d); rep++) {
          acc = poly_product(nvar_out, deg, acc, 1, factor[d]);
          deg += 1;
        }
      }
      map.block(0, m, acc.size(), 1) = acc;
    }
    return map;
  }

  double poly_eval(int nvar, int ell, const VectorXd & coeff, const Vector3d & y)
  {
    MatrixXd pt(1, nvar);
    for (int d = 0; d < nvar; d++) pt(0, d) = y(d);
    MatrixXd vals = monomial_values(nvar, ell, pt);
    return (coeff.transpose() * vals)(0, 0);
  }

} // namespace ddr
