#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hostdet/corpus.hpp"
#include "hostdet/featurizer.hpp"
#include "hostdet/multilabel.hpp"
#include "hostdet/svm.hpp"

namespace hostdet {

enum class ModelKind { SvmTfidf, SvmW2v, Lpsvm };

std::string_view model_kind_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

/// Raised for configurations that violate the pipeline rules (wrong task
/// for a model kind, out-of-range hyperparameters).
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PipelineSpec {
  TaskKind task = TaskKind::A;
  ModelKind model = ModelKind::SvmTfidf;
  FeatureConfig features;
  TrainOptions svm;
  std::uint64_t seed = 1;

  /// Defaults per task: task A uses word 1-2 grams, min_df 1, C 1.0;
  /// task B uses 1-3 grams, min_df 5, C 1.7.
  static PipelineSpec defaults(TaskKind task, ModelKind model);

  /// Throws SpecError.
  void validate() const;

  friend bool operator==(const PipelineSpec& a, const PipelineSpec& b);
};

/// Binary task-A model; a non-negative score means `fake`.
struct BinaryTextModel {
  Featurizer featurizer;
  LinearModel svm;

  double score(const TokenList& tokens) const;
  LabelSet predict(const TokenList& tokens) const;
};

class TextClassifier {
 public:
  using Head = std::variant<BinaryTextModel, LabelPowersetModel>;

  TextClassifier(PipelineSpec spec, Head head);

  const PipelineSpec& spec() const { return spec_; }
  TaskKind task() const { return spec_.task; }
  const Head& head() const { return head_; }
  const Featurizer& featurizer() const;

  /// Decision scores: one value for task A, one per atomic class for task B.
  std::vector<double> scores(const std::string& text) const;
  LabelSet predict(const std::string& text) const;
  std::vector<LabelSet> predict_all(const Dataset& dataset) const;

 private:
  PipelineSpec spec_;
  Head head_;
};

/// Fits featurizer and classifier on a labeled dataset of spec.task.
TextClassifier train_classifier(const Dataset& dataset, const PipelineSpec& spec);

}  // namespace hostdet
