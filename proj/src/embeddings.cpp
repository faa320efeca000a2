#include "hostdet/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hostdet {

namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// -ln sigmoid(x), stable for large |x|.
double neg_log_sigmoid(double x) {
  if (x >= 0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_dims(std::size_t dim, std::span<const double> context,
                std::span<const std::span<const double>> negatives) {
  if (context.size() != dim) throw std::invalid_argument("context vector dimension mismatch");
  for (const auto& n : negatives) {
    if (n.size() != dim) throw std::invalid_argument("negative vector dimension mismatch");
  }
}

}  // namespace

void EmbeddingConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("embedding dim must be >= 1");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (negatives < 1) throw std::invalid_argument("negatives must be >= 1");
  if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
}

SgnsLoss sgns_pair_loss(std::span<const double> center, std::span<const double> context,
                        std::span<const std::span<const double>> negatives) {
  const auto dim = center.size();
  check_dims(dim, context, negatives);

  SgnsLoss out;
  out.grad_center.assign(dim, 0.0);
  out.grad_context.assign(dim, 0.0);

  const double pos = dot(center, context);
  out.loss = neg_log_sigmoid(pos);
  const double pos_coeff = sigmoid(pos) - 1.0;
  for (std::size_t i = 0; i < dim; ++i) {
    out.grad_center[i] += pos_coeff * context[i];
    out.grad_context[i] = pos_coeff * center[i];
  }

  out.grad_negatives.reserve(negatives.size());
  for (const auto& neg : negatives) {
    const double s = dot(center, neg);
    out.loss += neg_log_sigmoid(-s);
    const double coeff = sigmoid(s);
    std::vector<double> g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      out.grad_center[i] += coeff * neg[i];
      g[i] = coeff * center[i];
    }
    out.grad_negatives.push_back(std::move(g));
  }
  return out;
}

double sgns_sgd_step(std::span<double> center, std::span<double> context,
                     std::span<const std::span<double>> negatives, double learning_rate) {
  const auto dim = center.size();
  const double pos = dot(center, context);
  double loss = neg_log_sigmoid(pos);
  const double pos_coeff = sigmoid(pos) - 1.0;

  std::vector<double> coeffs(negatives.size());
  for (std::size_t j = 0; j < negatives.size(); ++j) {
    const double s = dot(center, negatives[j]);
    loss += neg_log_sigmoid(-s);
    coeffs[j] = sigmoid(s);
  }

  std::vector<double> grad_center(dim);
  for (std::size_t i = 0; i < dim; ++i) grad_center[i] = pos_coeff * context[i];
  for (std::size_t j = 0; j < negatives.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) grad_center[i] += coeffs[j] * negatives[j][i];
  }

  for (std::size_t i = 0; i < dim; ++i) context[i] -= learning_rate * pos_coeff * center[i];
  for (std::size_t j = 0; j < negatives.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      negatives[j][i] -= learning_rate * coeffs[j] * center[i];
    }
  }
  for (std::size_t i = 0; i < dim; ++i) center[i] -= learning_rate * grad_center[i];
  return loss;
}

NegativeSampler::NegativeSampler(std::span<const std::size_t> counts, double power) {
  if (counts.empty()) throw std::invalid_argument("negative sampler needs a vocabulary");
  cumulative_.reserve(counts.size());
  double total = 0.0;
  for (auto c : counts) {
    total += std::pow(static_cast<double>(c), power);
    cumulative_.push_back(total);
  }
  for (auto& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;
}

std::size_t NegativeSampler::sample(Rng& rng) const {
  const double r = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
      it - cumulative_.begin(), static_cast<std::ptrdiff_t>(cumulative_.size()) - 1));
}

double NegativeSampler::probability(std::size_t id) const {
  return id == 0 ? cumulative_[0] : cumulative_[id] - cumulative_[id - 1];
}

EmbeddingMatrix EmbeddingMatrix::initialize(std::vector<std::string> terms, int dim,
                                            std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("embedding dim must be >= 1");
  Rng rng(seed);
  const auto n = terms.size() * static_cast<std::size_t>(dim);
  std::vector<double> input(n);
  for (auto& x : input) x = (rng.uniform() - 0.5) / dim;
  return from_parts(std::move(terms), dim, std::move(input), std::vector<double>(n, 0.0));
}

EmbeddingMatrix EmbeddingMatrix::from_parts(std::vector<std::string> terms, int dim,
                                            std::vector<double> input,
                                            std::vector<double> output) {
  if (dim < 1) throw std::invalid_argument("embedding dim must be >= 1");
  const auto n = terms.size() * static_cast<std::size_t>(dim);
  if (input.size() != n || output.size() != n) {
    throw std::invalid_argument("embedding matrices do not match vocabulary size x dim");
  }
  EmbeddingMatrix m;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!m.index_.emplace(terms[i], static_cast<std::uint32_t>(i)).second) {
      throw std::invalid_argument("duplicate embedding term '" + terms[i] + "'");
    }
  }
  m.terms_ = std::move(terms);
  m.dim_ = dim;
  m.input_ = std::move(input);
  m.output_ = std::move(output);
  return m;
}

std::int64_t EmbeddingMatrix::index_of(const std::string& term) const {
  const auto it = index_.find(term);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::span<const double> EmbeddingMatrix::input_vector(std::size_t id) const {
  return std::span<const double>(input_).subspan(id * dim_, dim_);
}
std::span<const double> EmbeddingMatrix::output_vector(std::size_t id) const {
  return std::span<const double>(output_).subspan(id * dim_, dim_);
}
std::span<double> EmbeddingMatrix::input_vector(std::size_t id) {
  return std::span<double>(input_).subspan(id * dim_, dim_);
}
std::span<double> EmbeddingMatrix::output_vector(std::size_t id) {
  return std::span<double>(output_).subspan(id * dim_, dim_);
}

std::vector<double> EmbeddingMatrix::doc_vector(const TokenList& tokens) const {
  std::vector<double> mean(static_cast<std::size_t>(dim_), 0.0);
  std::size_t known = 0;
  for (const auto& t : tokens) {
    const auto id = index_of(t);
    if (id < 0) continue;
    const auto v = input_vector(static_cast<std::size_t>(id));
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += v[i];
    ++known;
  }
  if (known > 0) {
    for (auto& x : mean) x /= static_cast<double>(known);
  }
  return mean;
}

EmbeddingMatrix train_sgns(std::span<const TokenList> corpus, const EmbeddingConfig& cfg) {
  cfg.validate();

  std::vector<std::string> order;
  std::unordered_map<std::string, std::size_t> first_seen;
  std::vector<std::size_t> raw_counts;
  for (const auto& doc : corpus) {
    for (const auto& t : doc) {
      auto [it, inserted] = first_seen.try_emplace(t, order.size());
      if (inserted) {
        order.push_back(t);
        raw_counts.push_back(0);
      }
      ++raw_counts[it->second];
    }
  }

  std::vector<std::string> terms;
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (raw_counts[i] >= static_cast<std::size_t>(cfg.min_count)) {
      terms.push_back(order[i]);
      counts.push_back(raw_counts[i]);
    }
  }
  if (terms.empty()) throw std::invalid_argument("no term reaches min_count; nothing to embed");

  auto emb = EmbeddingMatrix::initialize(std::move(terms), cfg.dim, cfg.seed);

  // Corpus as id sequences with out-of-vocabulary tokens removed.
  std::vector<std::vector<std::uint32_t>> docs;
  std::size_t total_tokens = 0;
  for (const auto& doc : corpus) {
    std::vector<std::uint32_t> ids;
    for (const auto& t : doc) {
      const auto id = emb.index_of(t);
      if (id >= 0) ids.push_back(static_cast<std::uint32_t>(id));
    }
    total_tokens += ids.size();
    docs.push_back(std::move(ids));
  }

  const NegativeSampler sampler(counts);
  // Separate stream from initialization so epochs=0 is a pure no-op.
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  const double total_steps = static_cast<double>(total_tokens) * cfg.epochs;
  const double min_lr = 1e-4 * cfg.learning_rate;
  std::size_t step = 0;
  std::vector<std::span<double>> negs;
  negs.reserve(static_cast<std::size_t>(cfg.negatives));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (const auto& ids : docs) {
      for (std::size_t pos = 0; pos < ids.size(); ++pos, ++step) {
        const double progress = static_cast<double>(step) / total_steps;
        const double lr = cfg.learning_rate - (cfg.learning_rate - min_lr) * progress;
        const auto lo = pos >= static_cast<std::size_t>(cfg.window) ? pos - cfg.window : 0;
        const auto hi = std::min(ids.size() - 1, pos + static_cast<std::size_t>(cfg.window));
        for (auto c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          negs.clear();
          for (int k = 0; k < cfg.negatives; ++k) {
            const auto neg = sampler.sample(rng);
            if (neg == ids[c]) continue;
            negs.push_back(emb.output_vector(neg));
          }
          sgns_sgd_step(emb.input_vector(ids[pos]), emb.output_vector(ids[c]), negs, lr);
        }
      }
    }
  }
  return emb;
}

}  // namespace hostdet
