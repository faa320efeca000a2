#include "hostdet/featurizer.hpp"

namespace hostdet {

Featurizer Featurizer::fit(std::span<const TokenList> corpus, const FeatureConfig& cfg) {
  if (cfg.kind == FeatureKind::Tfidf) {
    return Featurizer(Vocabulary::fit(corpus, cfg.ngram, cfg.min_df));
  }
  return Featurizer(train_sgns(corpus, cfg.embedding));
}

std::size_t Featurizer::dim() const {
  if (const auto* v = vocabulary()) return v->size();
  return static_cast<std::size_t>(embeddings()->dim());
}

std::size_t Featurizer::vocabulary_size() const {
  if (const auto* v = vocabulary()) return v->size();
  return embeddings()->size();
}

SparseVector Featurizer::featurize(const TokenList& tokens) const {
  if (const auto* v = vocabulary()) return v->transform(tokens);
  return SparseVector::from_dense(embeddings()->doc_vector(tokens));
}

}  // namespace hostdet
