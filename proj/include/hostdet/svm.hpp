#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hostdet/features.hpp"

namespace hostdet {

struct TrainOptions {
  double C = 1.0;
  double tol = 1e-4;
  int max_iter = 1000;
  std::uint64_t seed = 1;
  /// Appends a constant-1 feature whose weight acts as the (regularized)
  /// bias. Off only for textbook checks of the bias-free problem.
  bool fit_bias = true;

  void validate() const;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  double C = 1.0;

  std::size_t dim() const { return weights.size(); }

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

/// Per-run diagnostics of the dual coordinate descent solver.
struct TrainTrace {
  int epochs = 0;
  bool converged = false;
  /// Largest projected-gradient magnitude seen in the final epoch.
  double max_violation = 0.0;
  /// Dual objective sum(alpha) - |w|^2 / 2 after each epoch; index 0 is
  /// the starting point alpha = 0.
  std::vector<double> dual_objective;
  std::vector<double> alpha;
};

/// L2-regularized hinge-loss SVM,
///   min_w  |w|^2 / 2 + C * sum_i max(0, 1 - y_i w.x_i),
/// solved in the dual with one coordinate per example, alpha_i in [0, C].
/// Examples are swept in a fresh seeded permutation each epoch; training
/// stops when every projected gradient is below tol or after max_iter
/// epochs. Labels must be +1 or -1 with both present.
LinearModel train_linear_svm(std::span<const SparseVector> X, std::span<const int> y,
                             const TrainOptions& opt, TrainTrace* trace = nullptr);

double decision_score(const LinearModel& model, const SparseVector& x);
double decision_score(const LinearModel& model, std::span<const double> x);

inline int predict_binary(const LinearModel& model, const SparseVector& x) {
  return decision_score(model, x) >= 0.0 ? 1 : -1;
}

/// Primal objective of (w, bias) on the data, with the bias term included
/// in the regularizer the way the solver treats it.
double primal_objective(const LinearModel& model, std::span<const SparseVector> X,
                        std::span<const int> y, bool bias_regularized = true);

struct MultiClassModel {
  std::vector<std::uint32_t> classes;
  std::vector<LinearModel> models;

  std::size_t dim() const { return models.empty() ? 0 : models.front().dim(); }

  friend bool operator==(const MultiClassModel&, const MultiClassModel&) = default;
};

/// One binary model per class (class vs rest), classes ordered by first
/// appearance in y.
MultiClassModel train_one_vs_rest(std::span<const SparseVector> X,
                                  std::span<const std::uint32_t> y, const TrainOptions& opt);

/// Argmax of the per-class scores; ties go to the earliest class.
std::uint32_t predict_class(const MultiClassModel& model, const SparseVector& x);
std::size_t argmax_first(std::span<const double> scores);

}  // namespace hostdet
