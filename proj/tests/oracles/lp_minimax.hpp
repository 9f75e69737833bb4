#pragma once

// Exact discrete minimax oracle. The complex modulus |e| is replaced by the
// maximum of Re(e * exp(-i theta_k)) over K equally spaced directions, which
// turns the problem into a linear program. The LP optimum t satisfies
//   t <= min max |e| <= t / cos(pi / K).
// The LP is solved in its dual form (few rows, many columns) with a revised
// simplex method. Polynomials are expanded in Chebyshev polynomials of
// u = (z - center) / scale, which stay well conditioned near the real axis.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

struct LpResult {
  double value = 0.0;  // LP optimum t
  double upper = 0.0;  // t / cos(pi / K)
  int pivots = 0;
};

// maximize c^T y subject to A y = b, y >= 0. The basis is refactored at
// every iteration, which keeps the iterates accurate over many pivots.
class Simplex {
 public:
  Simplex(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      if (b_(i) < 0) {
        a_.row(i) *= -1.0;
        b_(i) = -b_(i);
      }
    }
  }

  double solve(int& pivots) {
    const Eigen::Index m = a_.rows();
    const Eigen::Index n = a_.cols();
    Eigen::MatrixXd full(m, n + m);
    full << a_, Eigen::MatrixXd::Identity(m, m);
    std::vector<Eigen::Index> basis;
    for (Eigen::Index i = 0; i < m; ++i) basis.push_back(n + i);

    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
    phase1.tail(m).setConstant(-1.0);
    if (-run(full, phase1, basis, n + m, pivots) > 1e-9) throw std::runtime_error("LP infeasible");

    // Basic artificials sit at zero; they may leave but never re-enter.
    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
    phase2.head(n) = c_;
    return run(full, phase2, basis, n, pivots);
  }

 private:
  double run(const Eigen::MatrixXd& a, const Eigen::VectorXd& cost, std::vector<Eigen::Index>& basis,
             Eigen::Index allowed, int& pivots) const {
    const Eigen::Index m = a.rows();
    int degenerate = 0;
    for (int guard = 0; guard < 100000; ++guard) {
      Eigen::MatrixXd bm(m, m);
      Eigen::VectorXd cb(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        bm.col(i) = a.col(basis[static_cast<std::size_t>(i)]);
        cb(i) = cost(basis[static_cast<std::size_t>(i)]);
      }
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
      const Eigen::VectorXd x = lu.solve(b_);
      const Eigen::VectorXd dual = lu.transpose().solve(cb);
      const Eigen::VectorXd reduced = cost.head(allowed) - a.leftCols(allowed).transpose() * dual;

      const bool bland = degenerate > 50;
      Eigen::Index enter = -1;
      double best = 1e-12;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
        if (reduced(j) > best) {
          enter = j;
          if (bland) break;
          best = reduced(j);
        }
      }
      if (enter < 0) return cb.dot(x);

      const Eigen::VectorXd dir = lu.solve(a.col(enter));
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        if (dir(i) > 1e-11) {
          const double q = std::max(0.0, x(i)) / dir(i);
          if (q < ratio) {
            ratio = q;
            leave = i;
          }
        }
      }
      if (leave < 0) throw std::runtime_error("LP unbounded");
      degenerate = ratio < 1e-15 ? degenerate + 1 : 0;
      basis[static_cast<std::size_t>(leave)] = enter;
      ++pivots;
    }
    throw std::runtime_error("simplex iteration limit");
  }

  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd c_;
};

// Minimax error of degree-n polynomial approximation of f on the points.
inline LpResult lp_minimax(const std::vector<cd>& z, const std::vector<cd>& f, std::size_t n,
                           std::size_t directions = 128) {
  cd center = 0.0;
  for (const cd& p : z) center += p;
  center /= static_cast<double>(z.size());
  double scale = 0.0;
  for (const cd& p : z) scale = std::max(scale, std::abs(p - center));

  // Chebyshev values T_m(u_j).
  std::vector<std::vector<cd>> phi(z.size(), std::vector<cd>(n + 1));
  for (std::size_t j = 0; j < z.size(); ++j) {
    const cd u = (z[j] - center) / scale;
    phi[j][0] = 1.0;
    if (n >= 1) phi[j][1] = u;
    for (std::size_t m = 2; m <= n; ++m) phi[j][m] = 2.0 * u * phi[j][m - 1] - phi[j][m - 2];
  }

  const auto rows = static_cast<Eigen::Index>(1 + 2 * (n + 1));
  const auto cols = static_cast<Eigen::Index>(z.size() * directions);
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd c(cols);
  Eigen::Index col = 0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (std::size_t k = 0; k < directions; ++k, ++col) {
      const cd w = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(directions));
      c(col) = (w * f[j]).real();
      a(0, col) = 1.0;
      for (std::size_t m = 0; m <= n; ++m) {
        const cd v = w * phi[j][m];
        a(static_cast<Eigen::Index>(1 + 2 * m), col) = v.real();
        a(static_cast<Eigen::Index>(2 + 2 * m), col) = v.imag();
      }
    }
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  b(0) = 1.0;
  Simplex lp(std::move(a), std::move(b), std::move(c));
  LpResult r;
  r.value = lp.solve(r.pivots);
  r.upper = r.value / std::cos(std::numbers::pi / static_cast<double>(directions));
  return r;
}

}  // namespace oracle
