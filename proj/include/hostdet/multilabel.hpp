#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "hostdet/corpus.hpp"
#include "hostdet/featurizer.hpp"
#include "hostdet/svm.hpp"

namespace hostdet {

/// Bit i set for task-B label i: defame, fake, hate, offensive, non-hostile.
using ComboMask = std::uint8_t;

/// Throws std::invalid_argument for task-A label sets.
ComboMask combo_encode(const LabelSet& labels);

/// Bijection between the label combinations seen in training and dense
/// atomic class ids, assigned in first-seen order.
class ComboTable {
 public:
  ComboTable() = default;
  explicit ComboTable(std::span<const ComboMask> masks_in_first_seen_order);

  /// Id of `mask`, registering it if new.
  std::uint32_t insert(ComboMask mask);
  bool contains(ComboMask mask) const { return ids_.contains(mask); }
  std::uint32_t id_of(ComboMask mask) const;
  ComboMask mask_of(std::uint32_t id) const { return masks_.at(id); }
  std::size_t size() const { return masks_.size(); }
  const std::vector<ComboMask>& masks() const { return masks_; }

  friend bool operator==(const ComboTable& a, const ComboTable& b) { return a.masks_ == b.masks_; }

 private:
  std::vector<ComboMask> masks_;
  std::unordered_map<ComboMask, std::uint32_t> ids_;
};

/// Throws std::out_of_range if the mask was never seen in training.
LabelSet combo_decode(ComboMask mask, const ComboTable& table);

struct LabelPowersetModel {
  ComboTable combos;
  MultiClassModel classifier;
  Featurizer featurizer;

  /// Atomic class scores in classifier order.
  std::vector<double> scores(const TokenList& tokens) const;
  LabelSet predict(const TokenList& tokens) const;
};

/// Builds the combo table, fits the featurizer on the training texts and
/// trains a one-vs-rest SVM over atomic class ids.
LabelPowersetModel fit_label_powerset(const Dataset& dataset, const FeatureConfig& features,
                                      const TrainOptions& svm);

LabelSet predict_labels(const LabelPowersetModel& model, const Document& doc);

}  // namespace hostdet
