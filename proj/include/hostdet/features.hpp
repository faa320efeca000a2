#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hostdet/textprep.hpp"

namespace hostdet {

struct SparseEntry {
  std::uint32_t index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sparse row with strictly increasing indices and non-zero values.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<SparseEntry> entries;

  double dot(std::span<const double> dense) const;
  double squared_norm() const;
  /// Builds a sparse row from a dense one, dropping exact zeros.
  static SparseVector from_dense(std::span<const double> dense);

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

/// N-gram vocabulary with smoothed inverse document frequencies:
///   idf(t) = ln((1 + n_docs) / (1 + df(t))) + 1
/// Indices follow first-seen corpus order after min_df pruning.
class Vocabulary {
 public:
  static Vocabulary fit(std::span<const TokenList> documents, NgramRange range,
                        std::size_t min_df);
  /// Rebuilds a fitted vocabulary from stored parts (model loading).
  static Vocabulary from_parts(std::vector<std::string> terms, std::vector<std::size_t> df,
                               std::vector<double> idf, std::size_t n_docs, NgramRange range,
                               std::size_t min_df);

  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& df() const { return df_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t n_docs() const { return n_docs_; }
  NgramRange range() const { return range_; }
  std::size_t min_df() const { return min_df_; }

  /// Index of `term`, or -1 when out of vocabulary.
  std::int64_t index_of(const std::string& term) const;

  /// Raw n-gram counts times idf, L2-normalized. Documents without any
  /// known term map to an empty vector of dimension size().
  SparseVector transform(const TokenList& tokens) const;

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::size_t> df_;
  std::vector<double> idf_;
  std::size_t n_docs_ = 0;
  NgramRange range_{1, 1};
  std::size_t min_df_ = 1;
};

inline SparseVector tfidf_transform(const Vocabulary& vocab, const TokenList& tokens) {
  return vocab.transform(tokens);
}

}  // namespace hostdet
