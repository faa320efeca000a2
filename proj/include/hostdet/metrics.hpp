#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hostdet/corpus.hpp"

namespace hostdet {

/// counts[i][j] = number of items of actual class i predicted as class j.
struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<std::uint64_t>> counts;

  std::size_t index_of(const std::string& cls) const;
  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::uint64_t row_sum(std::size_t i) const;
  std::uint64_t column_sum(std::size_t j) const;
};

struct ClassScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct NamedScore {
  std::string label;
  ClassScore score;
};

ConfusionMatrix confusion_matrix(std::span<const std::string> actual,
                                 std::span<const std::string> predicted,
                                 std::span<const std::string> classes);

/// Zero denominators give zero precision, recall or F1.
ClassScore precision_recall_f1(const ConfusionMatrix& cm, const std::string& cls);

/// Support-weighted mean F1; throws when the total support is zero.
double weighted_f1(std::span<const ClassScore> scores);

struct EvaluationReport {
  TaskKind task = TaskKind::A;
  std::uint64_t n_documents = 0;
  /// Task A: fraction correct. Task B: exact label-set match ratio.
  double accuracy = 0.0;
  /// Task A: real and fake. Task B: the four hostile labels, positive class
  /// of each label-vs-rest problem.
  std::vector<NamedScore> per_class;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  /// For task B this equals fine_grained_f1.
  double weighted_f1 = 0.0;
  /// Task A: the 2x2 matrix. Task B: one [label, other] matrix per hostile
  /// label followed by the [non-hostile, hostile] matrix.
  std::vector<ConfusionMatrix> confusions;
  std::optional<std::vector<NamedScore>> coarse_classes;
  std::optional<double> coarse_grained_f1;
  std::optional<double> fine_grained_f1;

  nlohmann::ordered_json to_json() const;
};

EvaluationReport evaluate_binary(std::span<const std::string> actual,
                                 std::span<const std::string> predicted);

/// Coarse-grained F1: weighted F1 of hostile vs non-hostile, a set being
/// non-hostile iff it equals {non-hostile}. Fine-grained F1: support-
/// weighted F1 of the four hostile labels.
EvaluationReport evaluate_multilabel(std::span<const LabelSet> actual,
                                     std::span<const LabelSet> predicted);

/// Dispatches on the task of the label sets.
EvaluationReport evaluate(TaskKind task, std::span<const LabelSet> actual,
                          std::span<const LabelSet> predicted);

/// Support-weighted mean of per-class F1 values given in any unit.
double fine_grained_f1(std::span<const double> f1, std::span<const std::uint64_t> support);

std::string report_to_string(const EvaluationReport& report);

}  // namespace hostdet
