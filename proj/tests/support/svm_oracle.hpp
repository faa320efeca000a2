#pragma once

// Exact primal optimum of a tiny hinge-loss SVM by active-set enumeration.
// Independent of the dual solver: it never touches alpha.
//
// At the optimum every point is either outside the margin (no loss), inside
// it (loss gradient C * y_i z_i), or exactly on it. Fixing that assignment
// with a linearly independent on-margin subset M turns the problem into an
// equality-constrained quadratic whose solution is
//   v = C * sum_{inside} a_i + sum_{M} lambda_j a_j,   a_j . v = 1 (j in M)
// with a_i = y_i z_i. Evaluating the true primal at every such candidate and
// taking the minimum returns the optimum exactly, since the optimum is one
// of the candidates and every candidate is a feasible point.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace hostdet::testing {

struct PrimalOptimum {
  Eigen::VectorXd v;  // weights, with the bias weight last when augmented
  double objective = std::numeric_limits<double>::infinity();
};

inline double hinge_primal(const Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& z,
                           const std::vector<int>& y, double C) {
  double loss = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) loss += std::max(0.0, 1.0 - y[i] * z[i].dot(v));
  return 0.5 * v.squaredNorm() + C * loss;
}

/// z holds the (already augmented, if a bias is wanted) feature rows.
inline PrimalOptimum brute_force_primal(const std::vector<Eigen::VectorXd>& z,
                                        const std::vector<int>& y, double C) {
  const auto n = z.size();
  const auto d = static_cast<std::size_t>(z.front().size());
  std::vector<Eigen::VectorXd> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = y[i] * z[i];

  PrimalOptimum best;
  std::vector<int> state(n, 0);  // 0 outside, 1 inside, 2 on margin

  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t i, std::size_t on) {
    if (i == n) {
      Eigen::VectorXd base = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
      std::vector<std::size_t> margin;
      for (std::size_t k = 0; k < n; ++k) {
        if (state[k] == 1) base += C * a[k];
        if (state[k] == 2) margin.push_back(k);
      }
      Eigen::VectorXd v = base;
      if (!margin.empty()) {
        const auto m = static_cast<Eigen::Index>(margin.size());
        Eigen::MatrixXd G(m, m);
        Eigen::VectorXd rhs(m);
        for (Eigen::Index r = 0; r < m; ++r) {
          rhs(r) = 1.0 - a[margin[r]].dot(base);
          for (Eigen::Index c = 0; c < m; ++c) G(r, c) = a[margin[r]].dot(a[margin[c]]);
        }
        const Eigen::VectorXd lambda = G.completeOrthogonalDecomposition().solve(rhs);
        for (Eigen::Index r = 0; r < m; ++r) v += lambda(r) * a[margin[r]];
      }
      const double obj = hinge_primal(v, z, y, C);
      if (obj < best.objective) {
        best.objective = obj;
        best.v = v;
      }
      return;
    }
    for (int s = 0; s < 3; ++s) {
      if (s == 2 && on == d) continue;
      state[i] = s;
      recurse(i + 1, on + (s == 2 ? 1 : 0));
    }
  };
  recurse(0, 0);
  return best;
}

}  // namespace hostdet::testing
