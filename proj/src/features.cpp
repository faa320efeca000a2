#include "hostdet/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hostdet {

double SparseVector::dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (const auto& e : entries) sum += e.value * dense[e.index];
  return sum;
}

double SparseVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& e : entries) sum += e.value * e.value;
  return sum;
}

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector v;
  v.dim = dense.size();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) v.entries.push_back({static_cast<std::uint32_t>(i), dense[i]});
  }
  return v;
}

Vocabulary Vocabulary::fit(std::span<const TokenList> documents, NgramRange range,
                           std::size_t min_df) {
  if (min_df < 1) throw std::invalid_argument("min_df must be >= 1");
  if (documents.empty()) throw std::invalid_argument("cannot fit a vocabulary on an empty corpus");

  std::vector<std::string> order;
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<std::size_t> df;
  std::vector<std::size_t> last_doc;

  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (auto& term : ngrams(documents[d], range)) {
      auto [it, inserted] = seen.try_emplace(term, order.size());
      if (inserted) {
        order.push_back(std::move(term));
        df.push_back(1);
        last_doc.push_back(d);
        continue;
      }
      const auto slot = it->second;
      if (last_doc[slot] != d) {
        last_doc[slot] = d;
        ++df[slot];
      }
    }
  }

  Vocabulary vocab;
  vocab.n_docs_ = documents.size();
  vocab.range_ = range;
  vocab.min_df_ = min_df;
  const double n = static_cast<double>(documents.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (df[i] < min_df) continue;
    vocab.index_.emplace(order[i], static_cast<std::uint32_t>(vocab.terms_.size()));
    vocab.terms_.push_back(std::move(order[i]));
    vocab.df_.push_back(df[i]);
    vocab.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(df[i]))) + 1.0);
  }
  return vocab;
}

Vocabulary Vocabulary::from_parts(std::vector<std::string> terms, std::vector<std::size_t> df,
                                  std::vector<double> idf, std::size_t n_docs, NgramRange range,
                                  std::size_t min_df) {
  if (terms.size() != df.size() || terms.size() != idf.size()) {
    throw std::invalid_argument("vocabulary parts have inconsistent lengths");
  }
  Vocabulary vocab;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!vocab.index_.emplace(terms[i], static_cast<std::uint32_t>(i)).second) {
      throw std::invalid_argument("duplicate vocabulary term '" + terms[i] + "'");
    }
    if (!std::isfinite(idf[i]) || idf[i] <= 0.0) {
      throw std::invalid_argument("non-positive idf for term '" + terms[i] + "'");
    }
  }
  vocab.terms_ = std::move(terms);
  vocab.df_ = std::move(df);
  vocab.idf_ = std::move(idf);
  vocab.n_docs_ = n_docs;
  vocab.range_ = range;
  vocab.min_df_ = min_df;
  return vocab;
}

std::int64_t Vocabulary::index_of(const std::string& term) const {
  const auto it = index_.find(term);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

SparseVector Vocabulary::transform(const TokenList& tokens) const {
  SparseVector v;
  v.dim = terms_.size();
  std::unordered_map<std::uint32_t, std::size_t> counts;
  for (const auto& term : ngrams(tokens, range_)) {
    const auto it = index_.find(term);
    if (it != index_.end()) ++counts[it->second];
  }
  if (counts.empty()) return v;

  v.entries.reserve(counts.size());
  for (const auto& [index, count] : counts) {
    v.entries.push_back({index, static_cast<double>(count) * idf_[index]});
  }
  std::sort(v.entries.begin(), v.entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  const double norm = std::sqrt(v.squared_norm());
  for (auto& e : v.entries) e.value /= norm;
  return v;
}

}  // namespace hostdet
