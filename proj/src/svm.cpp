#include "hostdet/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hostdet/random.hpp"

namespace hostdet {

namespace {

void check_dim(const LinearModel& model, std::size_t dim) {
  if (dim != model.dim()) {
    throw std::invalid_argument("feature dimension " + std::to_string(dim) +
                                " does not match model dimension " +
                                std::to_string(model.dim()));
  }
}

double squared_norm(std::span<const double> w) {
  double s = 0.0;
  for (double x : w) s += x * x;
  return s;
}

}  // namespace

void TrainOptions::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("C must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
}

LinearModel train_linear_svm(std::span<const SparseVector> X, std::span<const int> y,
                             const TrainOptions& opt, TrainTrace* trace) {
  opt.validate();
  if (X.empty()) throw std::invalid_argument("no training examples");
  if (X.size() != y.size()) throw std::invalid_argument("feature and label counts differ");
  const std::size_t dim = X.front().dim;
  bool has_pos = false;
  bool has_neg = false;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].dim != dim) throw std::invalid_argument("inconsistent feature dimensions");
    if (y[i] == 1) {
      has_pos = true;
    } else if (y[i] == -1) {
      has_neg = true;
    } else {
      throw std::invalid_argument("binary labels must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) throw std::invalid_argument("training data holds a single class");

  const double bias_feature = opt.fit_bias ? 1.0 : 0.0;
  const std::size_t n = X.size();
  // w[dim] is the bias weight.
  std::vector<double> w(dim + 1, 0.0);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = X[i].squared_norm() + bias_feature;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(opt.seed);

  auto dual = [&] {
    return std::accumulate(alpha.begin(), alpha.end(), 0.0) - 0.5 * squared_norm(w);
  };
  if (trace) {
    trace->dual_objective.clear();
    trace->dual_objective.push_back(0.0);
  }

  auto gradient = [&](std::size_t i) {
    return y[i] * (X[i].dot(w) + w[dim] * bias_feature) - 1.0;
  };
  auto projected = [&](std::size_t i, double grad) {
    if (alpha[i] <= 0.0) return std::min(grad, 0.0);
    if (alpha[i] >= opt.C) return std::max(grad, 0.0);
    return grad;
  };

  int epoch = 0;
  bool converged = false;
  double max_violation = 0.0;
  while (epoch < opt.max_iter) {
    rng.shuffle(std::span<std::size_t>(order));
    max_violation = 0.0;
    for (const auto i : order) {
      const auto& xi = X[i];
      const double yi = y[i];
      const double grad = gradient(i);
      const double pg = projected(i, grad);
      max_violation = std::max(max_violation, std::abs(pg));
      if (pg == 0.0 || diag[i] <= 0.0) continue;

      const double old = alpha[i];
      alpha[i] = std::clamp(old - grad / diag[i], 0.0, opt.C);
      const double step = (alpha[i] - old) * yi;
      if (step == 0.0) continue;
      for (const auto& e : xi.entries) w[e.index] += step * e.value;
      w[dim] += step * bias_feature;
    }
    ++epoch;
    if (trace) trace->dual_objective.push_back(dual());
    if (max_violation < opt.tol) {
      // Updates later in the sweep move w; confirm the condition on the
      // final weights before stopping.
      max_violation = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        max_violation = std::max(max_violation, std::abs(projected(i, gradient(i))));
      }
      if (max_violation < opt.tol) {
        converged = true;
        break;
      }
    }
  }

  if (trace) {
    trace->epochs = epoch;
    trace->converged = converged;
    trace->max_violation = max_violation;
    trace->alpha = alpha;
  }

  LinearModel model;
  model.bias = w[dim];
  w.pop_back();
  model.weights = std::move(w);
  model.C = opt.C;
  return model;
}

double decision_score(const LinearModel& model, const SparseVector& x) {
  check_dim(model, x.dim);
  return x.dot(model.weights) + model.bias;
}

double decision_score(const LinearModel& model, std::span<const double> x) {
  check_dim(model, x.size());
  double s = model.bias;
  for (std::size_t i = 0; i < x.size(); ++i) s += model.weights[i] * x[i];
  return s;
}

double primal_objective(const LinearModel& model, std::span<const SparseVector> X,
                        std::span<const int> y, bool bias_regularized) {
  double reg = squared_norm(model.weights);
  if (bias_regularized) reg += model.bias * model.bias;
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    loss += std::max(0.0, 1.0 - y[i] * decision_score(model, X[i]));
  }
  return 0.5 * reg + model.C * loss;
}

MultiClassModel train_one_vs_rest(std::span<const SparseVector> X,
                                  std::span<const std::uint32_t> y, const TrainOptions& opt) {
  if (X.size() != y.size()) throw std::invalid_argument("feature and label counts differ");
  MultiClassModel model;
  for (auto c : y) {
    if (std::find(model.classes.begin(), model.classes.end(), c) == model.classes.end()) {
      model.classes.push_back(c);
    }
  }
  if (model.classes.size() < 2) {
    throw std::invalid_argument("one-vs-rest needs at least two classes");
  }
  std::vector<int> binary(y.size());
  for (auto c : model.classes) {
    for (std::size_t i = 0; i < y.size(); ++i) binary[i] = y[i] == c ? 1 : -1;
    model.models.push_back(train_linear_svm(X, binary, opt));
  }
  return model;
}

std::size_t argmax_first(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::uint32_t predict_class(const MultiClassModel& model, const SparseVector& x) {
  std::vector<double> scores;
  scores.reserve(model.models.size());
  for (const auto& m : model.models) scores.push_back(decision_score(m, x));
  return model.classes[argmax_first(scores)];
}

}  // namespace hostdet
