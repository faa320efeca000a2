#include "hostdet/multilabel.hpp"

#include <stdexcept>
#include <string>

namespace hostdet {

ComboMask combo_encode(const LabelSet& labels) {
  if (labels.task() != TaskKind::B) {
    throw std::invalid_argument("label powerset applies to task-b label sets only");
  }
  return labels.mask();
}

ComboTable::ComboTable(std::span<const ComboMask> masks_in_first_seen_order) {
  for (auto m : masks_in_first_seen_order) {
    if (contains(m)) throw std::invalid_argument("combo table lists a mask twice");
    insert(m);
  }
}

std::uint32_t ComboTable::insert(ComboMask mask) {
  if (const auto it = ids_.find(mask); it != ids_.end()) return it->second;
  // Rejects masks that no valid task-B label set produces.
  (void)LabelSet::from_mask(TaskKind::B, mask);
  const auto id = static_cast<std::uint32_t>(masks_.size());
  ids_.emplace(mask, id);
  masks_.push_back(mask);
  return id;
}

std::uint32_t ComboTable::id_of(ComboMask mask) const {
  const auto it = ids_.find(mask);
  if (it == ids_.end()) throw std::out_of_range("label combination not in combo table");
  return it->second;
}

LabelSet combo_decode(ComboMask mask, const ComboTable& table) {
  if (!table.contains(mask)) {
    throw std::out_of_range("label combination " + std::to_string(mask) +
                            " was not seen in training");
  }
  return LabelSet::from_mask(TaskKind::B, mask);
}

std::vector<double> LabelPowersetModel::scores(const TokenList& tokens) const {
  const auto x = featurizer.featurize(tokens);
  std::vector<double> out;
  out.reserve(classifier.models.size());
  for (const auto& m : classifier.models) out.push_back(decision_score(m, x));
  return out;
}

LabelSet LabelPowersetModel::predict(const TokenList& tokens) const {
  const auto id = predict_class(classifier, featurizer.featurize(tokens));
  return combo_decode(combos.mask_of(id), combos);
}

LabelPowersetModel fit_label_powerset(const Dataset& dataset, const FeatureConfig& features,
                                      const TrainOptions& svm) {
  if (dataset.task != TaskKind::B || !dataset.labeled) {
    throw std::invalid_argument("label powerset needs a labeled task-b dataset");
  }
  ComboTable combos;
  std::vector<std::uint32_t> ids;
  std::vector<TokenList> tokens;
  ids.reserve(dataset.documents.size());
  tokens.reserve(dataset.documents.size());
  for (const auto& doc : dataset.documents) {
    ids.push_back(combos.insert(combo_encode(*doc.labels)));
    tokens.push_back(normalize(doc.text));
  }
  if (combos.size() < 2) {
    throw std::invalid_argument("label powerset needs at least two distinct label combinations");
  }

  auto featurizer = Featurizer::fit(tokens, features);
  std::vector<SparseVector> X;
  X.reserve(tokens.size());
  for (const auto& t : tokens) X.push_back(featurizer.featurize(t));

  auto classifier = train_one_vs_rest(X, ids, svm);
  return LabelPowersetModel{std::move(combos), std::move(classifier), std::move(featurizer)};
}

LabelSet predict_labels(const LabelPowersetModel& model, const Document& doc) {
  return model.predict(normalize(doc.text));
}

}  // namespace hostdet
