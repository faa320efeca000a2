#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hostdet/random.hpp"
#include "hostdet/textprep.hpp"

namespace hostdet {

struct EmbeddingConfig {
  int dim = 150;
  int window = 5;
  int negatives = 5;
  int epochs = 10;
  double learning_rate = 0.025;
  int min_count = 1;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument when a field is out of range. epochs may
  /// be zero, which leaves the seeded initialization untouched.
  void validate() const;
};

/// Skip-gram negative-sampling loss of one (center, context) pair with its
/// negatives, together with the exact gradients:
///   loss = -ln s(u.v) - sum_j ln s(-u.n_j)
struct SgnsLoss {
  double loss = 0.0;
  std::vector<double> grad_center;
  std::vector<double> grad_context;
  std::vector<std::vector<double>> grad_negatives;
};

SgnsLoss sgns_pair_loss(std::span<const double> center, std::span<const double> context,
                        std::span<const std::span<const double>> negatives);

/// One in-place SGD step on the pair loss; every gradient is evaluated at
/// the pre-step vectors. Returns the pre-step loss.
double sgns_sgd_step(std::span<double> center, std::span<double> context,
                     std::span<const std::span<double>> negatives, double learning_rate);

/// Draws word ids from the unigram distribution raised to the 3/4 power.
class NegativeSampler {
 public:
  explicit NegativeSampler(std::span<const std::size_t> counts, double power = 0.75);

  std::size_t sample(Rng& rng) const;
  double probability(std::size_t id) const;
  std::size_t size() const { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

class EmbeddingMatrix {
 public:
  /// Input vectors uniform in [-0.5/dim, 0.5/dim], output vectors zero.
  static EmbeddingMatrix initialize(std::vector<std::string> terms, int dim, std::uint64_t seed);
  static EmbeddingMatrix from_parts(std::vector<std::string> terms, int dim,
                                    std::vector<double> input, std::vector<double> output);

  std::size_t size() const { return terms_.size(); }
  int dim() const { return dim_; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::int64_t index_of(const std::string& term) const;

  std::span<const double> input_vector(std::size_t id) const;
  std::span<const double> output_vector(std::size_t id) const;
  std::span<double> input_vector(std::size_t id);
  std::span<double> output_vector(std::size_t id);
  const std::vector<double>& input() const { return input_; }
  const std::vector<double>& output() const { return output_; }

  /// Mean input vector of the in-vocabulary tokens; zero when none are known.
  std::vector<double> doc_vector(const TokenList& tokens) const;

  friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_ && a.input_ == b.input_ &&
           a.output_ == b.output_;
  }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
  int dim_ = 0;
  std::vector<double> input_;
  std::vector<double> output_;
};

/// Trains skip-gram vectors with negative sampling. Single-threaded and
/// fully determined by cfg.seed. Vocabulary order is first-seen order of
/// the terms that survive min_count.
EmbeddingMatrix train_sgns(std::span<const TokenList> corpus, const EmbeddingConfig& cfg);

inline std::vector<double> doc_vector(const EmbeddingMatrix& emb, const TokenList& tokens) {
  return emb.doc_vector(tokens);
}

}  // namespace hostdet
