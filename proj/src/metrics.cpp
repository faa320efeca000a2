#include "hostdet/metrics.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <iomanip>

namespace hostdet {

namespace {

const std::vector<std::string> kHostileLabels{"defame", "fake", "hate", "offensive"};

std::vector<NamedScore> class_scores(const ConfusionMatrix& cm) {
  std::vector<NamedScore> out;
  for (const auto& c : cm.classes) out.push_back({c, precision_recall_f1(cm, c)});
  return out;
}

struct Weighted {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Weighted weighted_means(std::span<const NamedScore> scores) {
  Weighted w;
  double total = 0.0;
  for (const auto& s : scores) {
    const auto n = static_cast<double>(s.score.support);
    w.precision += n * s.score.precision;
    w.recall += n * s.score.recall;
    w.f1 += n * s.score.f1;
    total += n;
  }
  if (total > 0) {
    w.precision /= total;
    w.recall /= total;
    w.f1 /= total;
  }
  return w;
}

nlohmann::ordered_json confusion_json(const ConfusionMatrix& cm) {
  return {{"classes", cm.classes}, {"counts", cm.counts}};
}

nlohmann::ordered_json scores_json(std::span<const NamedScore> scores) {
  auto out = nlohmann::ordered_json::object();
  for (const auto& s : scores) {
    out[s.label] = {{"precision", s.score.precision},
                    {"recall", s.score.recall},
                    {"f1", s.score.f1},
                    {"support", s.score.support}};
  }
  return out;
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("actual and predicted lengths differ (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

std::size_t ConfusionMatrix::index_of(const std::string& cls) const {
  const auto it = std::find(classes.begin(), classes.end(), cls);
  if (it == classes.end()) throw std::invalid_argument("unknown class '" + cls + "'");
  return static_cast<std::size_t>(it - classes.begin());
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts) {
    for (auto c : row) t += c;
  }
  return t;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t i) const {
  std::uint64_t t = 0;
  for (auto c : counts[i]) t += c;
  return t;
}

std::uint64_t ConfusionMatrix::column_sum(std::size_t j) const {
  std::uint64_t t = 0;
  for (const auto& row : counts) t += row[j];
  return t;
}

ConfusionMatrix confusion_matrix(std::span<const std::string> actual,
                                 std::span<const std::string> predicted,
                                 std::span<const std::string> classes) {
  check_lengths(actual.size(), predicted.size());
  ConfusionMatrix cm;
  cm.classes.assign(classes.begin(), classes.end());
  cm.counts.assign(classes.size(), std::vector<std::uint64_t>(classes.size(), 0));
  for (std::size_t i = 0; i < actual.size(); ++i) {
    ++cm.counts[cm.index_of(actual[i])][cm.index_of(predicted[i])];
  }
  return cm;
}

ClassScore precision_recall_f1(const ConfusionMatrix& cm, const std::string& cls) {
  const auto k = cm.index_of(cls);
  const auto tp = static_cast<double>(cm.counts[k][k]);
  const auto predicted = static_cast<double>(cm.column_sum(k));
  const auto support = cm.row_sum(k);

  ClassScore s;
  s.support = support;
  s.precision = predicted > 0 ? tp / predicted : 0.0;
  s.recall = support > 0 ? tp / static_cast<double>(support) : 0.0;
  s.f1 = s.precision + s.recall > 0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

double weighted_f1(std::span<const ClassScore> scores) {
  double num = 0.0;
  std::uint64_t total = 0;
  for (const auto& s : scores) {
    num += static_cast<double>(s.support) * s.f1;
    total += s.support;
  }
  if (total == 0) throw std::invalid_argument("weighted F1 needs a positive total support");
  return num / static_cast<double>(total);
}

double fine_grained_f1(std::span<const double> f1, std::span<const std::uint64_t> support) {
  check_lengths(f1.size(), support.size());
  std::vector<ClassScore> scores(f1.size());
  for (std::size_t i = 0; i < f1.size(); ++i) {
    scores[i].f1 = f1[i];
    scores[i].support = support[i];
  }
  return weighted_f1(scores);
}

EvaluationReport evaluate_binary(std::span<const std::string> actual,
                                 std::span<const std::string> predicted) {
  check_lengths(actual.size(), predicted.size());
  const std::vector<std::string> classes{"real", "fake"};
  EvaluationReport r;
  r.task = TaskKind::A;
  r.n_documents = actual.size();
  auto cm = confusion_matrix(actual, predicted, classes);
  r.accuracy = cm.total() > 0 ? static_cast<double>(cm.trace()) / static_cast<double>(cm.total())
                              : 0.0;
  r.per_class = class_scores(cm);
  const auto w = weighted_means(r.per_class);
  r.weighted_precision = w.precision;
  r.weighted_recall = w.recall;
  r.weighted_f1 = w.f1;
  r.confusions.push_back(std::move(cm));
  return r;
}

EvaluationReport evaluate_multilabel(std::span<const LabelSet> actual,
                                     std::span<const LabelSet> predicted) {
  check_lengths(actual.size(), predicted.size());
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i].task() != TaskKind::B || predicted[i].task() != TaskKind::B) {
      throw std::invalid_argument("multi-label evaluation needs task-b label sets");
    }
  }

  EvaluationReport r;
  r.task = TaskKind::B;
  r.n_documents = actual.size();

  std::uint64_t exact = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) exact += actual[i] == predicted[i] ? 1 : 0;
  r.accuracy = actual.empty() ? 0.0
                              : static_cast<double>(exact) / static_cast<double>(actual.size());

  std::vector<std::string> a(actual.size());
  std::vector<std::string> p(actual.size());
  for (const auto& label : kHostileLabels) {
    for (std::size_t i = 0; i < actual.size(); ++i) {
      a[i] = actual[i].contains(label) ? label : "other";
      p[i] = predicted[i].contains(label) ? label : "other";
    }
    const std::vector<std::string> classes{label, "other"};
    auto cm = confusion_matrix(a, p, classes);
    r.per_class.push_back({label, precision_recall_f1(cm, label)});
    r.confusions.push_back(std::move(cm));
  }
  const auto w = weighted_means(r.per_class);
  r.weighted_precision = w.precision;
  r.weighted_recall = w.recall;
  r.weighted_f1 = w.f1;
  r.fine_grained_f1 = w.f1;

  auto coarse = [](const LabelSet& s) {
    return s.mask() == kNonHostileBit ? std::string("non-hostile") : std::string("hostile");
  };
  for (std::size_t i = 0; i < actual.size(); ++i) {
    a[i] = coarse(actual[i]);
    p[i] = coarse(predicted[i]);
  }
  const std::vector<std::string> coarse_classes{"non-hostile", "hostile"};
  auto cm = confusion_matrix(a, p, coarse_classes);
  auto scores = class_scores(cm);
  r.coarse_grained_f1 = weighted_means(scores).f1;
  r.coarse_classes = std::move(scores);
  r.confusions.push_back(std::move(cm));
  return r;
}

EvaluationReport evaluate(TaskKind task, std::span<const LabelSet> actual,
                          std::span<const LabelSet> predicted) {
  if (task == TaskKind::B) return evaluate_multilabel(actual, predicted);
  check_lengths(actual.size(), predicted.size());
  std::vector<std::string> a;
  std::vector<std::string> p;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i].task() != TaskKind::A || predicted[i].task() != TaskKind::A) {
      throw std::invalid_argument("binary evaluation needs task-a label sets");
    }
    a.push_back(actual[i].to_string());
    p.push_back(predicted[i].to_string());
  }
  return evaluate_binary(a, p);
}

nlohmann::ordered_json EvaluationReport::to_json() const {
  nlohmann::ordered_json j;
  j["task"] = std::string(task_name(task));
  j["n_documents"] = n_documents;
  j["accuracy"] = accuracy;
  j["weighted_precision"] = weighted_precision;
  j["weighted_recall"] = weighted_recall;
  j["weighted_f1"] = weighted_f1;
  j["per_class"] = scores_json(per_class);
  if (task == TaskKind::A) {
    j["confusion"] = confusion_json(confusions.front());
    return j;
  }
  j["coarse_grained_f1"] = coarse_grained_f1.value_or(0.0);
  j["fine_grained_f1"] = fine_grained_f1.value_or(0.0);
  if (coarse_classes) j["coarse_per_class"] = scores_json(*coarse_classes);
  auto confusion = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < kHostileLabels.size(); ++i) {
    confusion[kHostileLabels[i]] = confusion_json(confusions[i]);
  }
  confusion["coarse"] = confusion_json(confusions.back());
  j["confusion"] = std::move(confusion);
  return j;
}

std::string report_to_string(const EvaluationReport& report) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << "accuracy     " << report.accuracy << '\n';
  for (const auto& s : report.per_class) {
    os << std::left << std::setw(12) << s.label << " P " << s.score.precision << "  R "
       << s.score.recall << "  F1 " << s.score.f1 << "  n " << s.score.support << '\n';
  }
  os << "weighted F1  " << report.weighted_f1 << '\n';
  if (report.coarse_grained_f1) os << "coarse F1    " << *report.coarse_grained_f1 << '\n';
  if (report.fine_grained_f1) os << "fine F1      " << *report.fine_grained_f1 << '\n';
  return os.str();
}

}  // namespace hostdet
