#pragma once

#include <span>
#include <string_view>
#include <variant>

#include "hostdet/embeddings.hpp"
#include "hostdet/features.hpp"
#include "hostdet/textprep.hpp"

namespace hostdet {

enum class FeatureKind { Tfidf, Embedding };

struct FeatureConfig {
  FeatureKind kind = FeatureKind::Tfidf;
  NgramRange ngram{1, 1};
  std::size_t min_df = 1;
  EmbeddingConfig embedding;
};

/// Maps normalized tokens to the feature rows the SVM consumes: tf-idf
/// rows, or mean word vectors stored as sparse rows.
class Featurizer {
 public:
  explicit Featurizer(Vocabulary vocab) : impl_(std::move(vocab)) {}
  explicit Featurizer(EmbeddingMatrix emb) : impl_(std::move(emb)) {}

  static Featurizer fit(std::span<const TokenList> corpus, const FeatureConfig& cfg);

  FeatureKind kind() const {
    return std::holds_alternative<Vocabulary>(impl_) ? FeatureKind::Tfidf : FeatureKind::Embedding;
  }
  std::size_t dim() const;
  /// Number of terms the featurizer knows (n-grams or embedded words).
  std::size_t vocabulary_size() const;
  SparseVector featurize(const TokenList& tokens) const;

  const Vocabulary* vocabulary() const { return std::get_if<Vocabulary>(&impl_); }
  const EmbeddingMatrix* embeddings() const { return std::get_if<EmbeddingMatrix>(&impl_); }

 private:
  std::variant<Vocabulary, EmbeddingMatrix> impl_;
};

}  // namespace hostdet
