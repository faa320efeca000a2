#include "hostdet/pipeline.hpp"

#include <cmath>

namespace hostdet {

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::SvmTfidf: return "svm-tfidf";
    case ModelKind::SvmW2v: return "svm-w2v";
    case ModelKind::Lpsvm: return "lpsvm";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "svm-tfidf") return ModelKind::SvmTfidf;
  if (name == "svm-w2v") return ModelKind::SvmW2v;
  if (name == "lpsvm") return ModelKind::Lpsvm;
  throw SpecError("unknown model kind '" + std::string(name) + "'");
}

PipelineSpec PipelineSpec::defaults(TaskKind task, ModelKind model) {
  PipelineSpec spec;
  spec.task = task;
  spec.model = model;
  spec.features.kind = model == ModelKind::SvmW2v ? FeatureKind::Embedding : FeatureKind::Tfidf;
  if (task == TaskKind::A) {
    spec.features.ngram = NgramRange(1, 2);
    spec.features.min_df = 1;
    spec.svm.C = 1.0;
  } else {
    spec.features.ngram = NgramRange(1, 3);
    spec.features.min_df = 5;
    spec.svm.C = 1.7;
  }
  return spec;
}

void PipelineSpec::validate() const {
  if (model == ModelKind::Lpsvm && task != TaskKind::B) {
    throw SpecError("model lpsvm requires task b");
  }
  if (model != ModelKind::Lpsvm && task != TaskKind::A) {
    throw SpecError("model " + std::string(model_kind_name(model)) + " requires task a");
  }
  const auto expected = model == ModelKind::SvmW2v ? FeatureKind::Embedding : FeatureKind::Tfidf;
  if (features.kind != expected) throw SpecError("feature kind does not match the model kind");
  if (features.ngram.lo < 1 || features.ngram.hi < features.ngram.lo) {
    throw SpecError("invalid n-gram range");
  }
  if (features.min_df < 1) throw SpecError("min-df must be >= 1");
  try {
    svm.validate();
    if (features.kind == FeatureKind::Embedding) features.embedding.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
}

bool operator==(const PipelineSpec& a, const PipelineSpec& b) {
  const auto& ea = a.features.embedding;
  const auto& eb = b.features.embedding;
  return a.task == b.task && a.model == b.model && a.seed == b.seed &&
         a.features.kind == b.features.kind && a.features.ngram == b.features.ngram &&
         a.features.min_df == b.features.min_df && ea.dim == eb.dim && ea.window == eb.window &&
         ea.negatives == eb.negatives && ea.epochs == eb.epochs &&
         ea.learning_rate == eb.learning_rate && ea.min_count == eb.min_count &&
         ea.seed == eb.seed && a.svm.C == b.svm.C && a.svm.tol == b.svm.tol &&
         a.svm.max_iter == b.svm.max_iter && a.svm.seed == b.svm.seed &&
         a.svm.fit_bias == b.svm.fit_bias;
}

double BinaryTextModel::score(const TokenList& tokens) const {
  return decision_score(svm, featurizer.featurize(tokens));
}

LabelSet BinaryTextModel::predict(const TokenList& tokens) const {
  const std::string label = score(tokens) >= 0.0 ? "fake" : "real";
  return LabelSet::parse(TaskKind::A, label);
}

TextClassifier::TextClassifier(PipelineSpec spec, Head head)
    : spec_(std::move(spec)), head_(std::move(head)) {
  const bool binary = std::holds_alternative<BinaryTextModel>(head_);
  if (binary != (spec_.task == TaskKind::A)) {
    throw SpecError("classifier head does not match the task");
  }
}

const Featurizer& TextClassifier::featurizer() const {
  if (const auto* b = std::get_if<BinaryTextModel>(&head_)) return b->featurizer;
  return std::get<LabelPowersetModel>(head_).featurizer;
}

std::vector<double> TextClassifier::scores(const std::string& text) const {
  const auto tokens = normalize(text);
  if (const auto* b = std::get_if<BinaryTextModel>(&head_)) return {b->score(tokens)};
  return std::get<LabelPowersetModel>(head_).scores(tokens);
}

LabelSet TextClassifier::predict(const std::string& text) const {
  const auto tokens = normalize(text);
  if (const auto* b = std::get_if<BinaryTextModel>(&head_)) return b->predict(tokens);
  return std::get<LabelPowersetModel>(head_).predict(tokens);
}

std::vector<LabelSet> TextClassifier::predict_all(const Dataset& dataset) const {
  std::vector<LabelSet> out;
  out.reserve(dataset.documents.size());
  for (const auto& doc : dataset.documents) out.push_back(predict(doc.text));
  return out;
}

TextClassifier train_classifier(const Dataset& dataset, const PipelineSpec& spec_in) {
  spec_in.validate();
  if (dataset.task != spec_in.task) throw SpecError("dataset task does not match the pipeline");
  if (!dataset.labeled) throw SpecError("training needs a labeled dataset");

  PipelineSpec spec = spec_in;
  spec.svm.seed = spec.seed;
  spec.features.embedding.seed = spec.seed;

  if (spec.task == TaskKind::B) {
    auto lp = fit_label_powerset(dataset, spec.features, spec.svm);
    return TextClassifier(spec, std::move(lp));
  }

  std::vector<TokenList> tokens;
  std::vector<int> y;
  for (const auto& doc : dataset.documents) {
    tokens.push_back(normalize(doc.text));
    y.push_back(doc.labels->contains("fake") ? 1 : -1);
  }
  auto featurizer = Featurizer::fit(tokens, spec.features);
  std::vector<SparseVector> X;
  X.reserve(tokens.size());
  for (const auto& t : tokens) X.push_back(featurizer.featurize(t));
  auto svm = train_linear_svm(X, y, spec.svm);
  return TextClassifier(spec, BinaryTextModel{std::move(featurizer), std::move(svm)});
}

}  // namespace hostdet
