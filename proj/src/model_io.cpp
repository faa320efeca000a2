#include "hostdet/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hostdet/z85.hpp"

namespace hostdet {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kFormatName = "hostdet-model";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json blob(std::span<const double> values) {
  return Json{{"count", values.size()},
              {"fnv1a64", hex64(z85::checksum(values))},
              {"z85", z85::encode_doubles(values)}};
}

std::vector<double> unblob(const Json& j, std::string_view what) {
  const auto count = j.at("count").get<std::size_t>();
  auto values = z85::decode_doubles(j.at("z85").get_ref<const std::string&>());
  if (!values) {
    throw ModelError(ModelError::Kind::Corrupt, std::string(what) + ": invalid Z85 payload");
  }
  if (values->size() != count) {
    throw ModelError(ModelError::Kind::Corrupt,
                     std::string(what) + ": payload holds " + std::to_string(values->size()) +
                         " values, header says " + std::to_string(count));
  }
  if (hex64(z85::checksum(*values)) != j.at("fnv1a64").get<std::string>()) {
    throw ModelError(ModelError::Kind::Corrupt, std::string(what) + ": checksum mismatch");
  }
  return std::move(*values);
}

void require_dim(bool ok, const std::string& detail) {
  if (!ok) throw ModelError(ModelError::Kind::DimensionMismatch, detail);
}

Json spec_json(const PipelineSpec& spec) {
  const auto& e = spec.features.embedding;
  return Json{{"task", std::string(task_name(spec.task))},
              {"model", std::string(model_kind_name(spec.model))},
              {"ngram", {spec.features.ngram.lo, spec.features.ngram.hi}},
              {"min_df", spec.features.min_df},
              {"C", spec.svm.C},
              {"tol", spec.svm.tol},
              {"max_iter", spec.svm.max_iter},
              {"fit_bias", spec.svm.fit_bias},
              {"seed", spec.seed},
              {"embedding",
               {{"dim", e.dim},
                {"window", e.window},
                {"negatives", e.negatives},
                {"epochs", e.epochs},
                {"learning_rate", e.learning_rate},
                {"min_count", e.min_count}}}};
}

PipelineSpec spec_from_json(const Json& j) {
  PipelineSpec spec;
  spec.task = parse_task(j.at("task").get<std::string>());
  spec.model = parse_model_kind(j.at("model").get<std::string>());
  spec.features.kind =
      spec.model == ModelKind::SvmW2v ? FeatureKind::Embedding : FeatureKind::Tfidf;
  const auto& ngram = j.at("ngram");
  spec.features.ngram = NgramRange(ngram.at(0).get<int>(), ngram.at(1).get<int>());
  spec.features.min_df = j.at("min_df").get<std::size_t>();
  spec.svm.C = j.at("C").get<double>();
  spec.svm.tol = j.at("tol").get<double>();
  spec.svm.max_iter = j.at("max_iter").get<int>();
  spec.svm.fit_bias = j.at("fit_bias").get<bool>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.svm.seed = spec.seed;
  const auto& e = j.at("embedding");
  auto& cfg = spec.features.embedding;
  cfg.dim = e.at("dim").get<int>();
  cfg.window = e.at("window").get<int>();
  cfg.negatives = e.at("negatives").get<int>();
  cfg.epochs = e.at("epochs").get<int>();
  cfg.learning_rate = e.at("learning_rate").get<double>();
  cfg.min_count = e.at("min_count").get<int>();
  cfg.seed = spec.seed;
  spec.validate();
  return spec;
}

Json featurizer_json(const Featurizer& f) {
  if (const auto* v = f.vocabulary()) {
    return Json{{"kind", "tfidf"},
                {"n_docs", v->n_docs()},
                {"terms", v->terms()},
                {"df", v->df()},
                {"idf", blob(v->idf())}};
  }
  const auto* e = f.embeddings();
  return Json{{"kind", "embedding"},
              {"dim", e->dim()},
              {"terms", e->terms()},
              {"input", blob(e->input())},
              {"output", blob(e->output())}};
}

Featurizer featurizer_from_json(const Json& j, const PipelineSpec& spec) {
  const auto kind = j.at("kind").get<std::string>();
  auto terms = j.at("terms").get<std::vector<std::string>>();
  if (kind == "tfidf") {
    if (spec.features.kind != FeatureKind::Tfidf) {
      throw ModelError(ModelError::Kind::Malformed, "featurizer kind contradicts the model kind");
    }
    auto df = j.at("df").get<std::vector<std::size_t>>();
    auto idf = unblob(j.at("idf"), "idf");
    require_dim(df.size() == terms.size() && idf.size() == terms.size(),
                "vocabulary arrays disagree in length");
    return Featurizer(Vocabulary::from_parts(std::move(terms), std::move(df), std::move(idf),
                                             j.at("n_docs").get<std::size_t>(),
                                             spec.features.ngram, spec.features.min_df));
  }
  if (kind == "embedding") {
    if (spec.features.kind != FeatureKind::Embedding) {
      throw ModelError(ModelError::Kind::Malformed, "featurizer kind contradicts the model kind");
    }
    const auto dim = j.at("dim").get<int>();
    require_dim(dim == spec.features.embedding.dim, "embedding dim disagrees with the pipeline settings");
    auto input = unblob(j.at("input"), "input vectors");
    auto output = unblob(j.at("output"), "output vectors");
    const auto expected = terms.size() * static_cast<std::size_t>(dim);
    require_dim(input.size() == expected && output.size() == expected,
                "embedding matrices do not match terms x dim");
    return Featurizer(
        EmbeddingMatrix::from_parts(std::move(terms), dim, std::move(input), std::move(output)));
  }
  throw ModelError(ModelError::Kind::Malformed, "unknown featurizer kind '" + kind + "'");
}

Json linear_json(const LinearModel& m) {
  std::vector<double> packed = m.weights;
  packed.push_back(m.bias);
  return blob(packed);
}

LinearModel linear_from_json(const Json& j, std::size_t dim, double C, std::string_view what) {
  auto packed = unblob(j, what);
  require_dim(packed.size() == dim + 1, std::string(what) + ": expected " +
                                            std::to_string(dim + 1) + " values, found " +
                                            std::to_string(packed.size()));
  LinearModel m;
  m.bias = packed.back();
  packed.pop_back();
  m.weights = std::move(packed);
  m.C = C;
  return m;
}

}  // namespace

ModelError::ModelError(Kind kind, const std::string& detail)
    : std::runtime_error("model file: " + std::string(error_kind_name(kind)) + ": " + detail),
      kind_(kind) {}

std::string_view error_kind_name(ModelError::Kind kind) {
  switch (kind) {
    case ModelError::Kind::Io: return "i/o error";
    case ModelError::Kind::Malformed: return "malformed";
    case ModelError::Kind::Truncated: return "truncated";
    case ModelError::Kind::UnsupportedVersion: return "unsupported format version";
    case ModelError::Kind::Corrupt: return "corrupt numeric payload";
    case ModelError::Kind::DimensionMismatch: return "dimension mismatch";
  }
  return "unknown";
}

std::string save_model(const TextClassifier& model) {
  Json j;
  j["format"] = std::string(kFormatName);
  j["format_version"] = kModelFormatVersion;
  j["spec"] = spec_json(model.spec());
  j["featurizer"] = featurizer_json(model.featurizer());

  Json classifier;
  if (const auto* b = std::get_if<BinaryTextModel>(&model.head())) {
    classifier["positive_label"] = "fake";
    classifier["weights"] = Json::array({linear_json(b->svm)});
  } else {
    const auto& lp = std::get<LabelPowersetModel>(model.head());
    classifier["classes"] = lp.classifier.classes;
    auto weights = Json::array();
    for (const auto& m : lp.classifier.models) weights.push_back(linear_json(m));
    classifier["weights"] = std::move(weights);
    auto combos = Json::array();
    for (auto mask : lp.combos.masks()) combos.push_back(LabelSet::from_mask(TaskKind::B, mask).tokens());
    j["combos"] = std::move(combos);
  }
  j["classifier"] = std::move(classifier);
  return j.dump(1) + "\n";
}

TextClassifier load_model(std::string_view content) {
  Json j;
  try {
    j = Json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    // The parser reports the byte it failed on; failing at the end of the
    // input means the file stopped early.
    const bool at_end = e.byte >= content.size();
    throw ModelError(at_end ? ModelError::Kind::Truncated : ModelError::Kind::Malformed, e.what());
  }

  try {
    if (!j.is_object() || j.value("format", std::string{}) != kFormatName) {
      throw ModelError(ModelError::Kind::Malformed, "not a hostdet model file");
    }
    const auto version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw ModelError(ModelError::Kind::UnsupportedVersion,
                       "file has version " + std::to_string(version) + ", this build reads " +
                           std::to_string(kModelFormatVersion));
    }
    const auto spec = spec_from_json(j.at("spec"));
    auto featurizer = featurizer_from_json(j.at("featurizer"), spec);
    const auto dim = featurizer.dim();
    const auto& classifier = j.at("classifier");
    const auto& weights = classifier.at("weights");

    if (spec.task == TaskKind::A) {
      require_dim(weights.size() == 1, "binary model needs exactly one weight vector");
      auto svm = linear_from_json(weights.at(0), dim, spec.svm.C, "weights");
      return TextClassifier(spec, BinaryTextModel{std::move(featurizer), std::move(svm)});
    }

    std::vector<ComboMask> masks;
    for (const auto& combo : j.at("combos")) {
      const auto tokens = combo.get<std::vector<std::string>>();
      masks.push_back(combo_encode(LabelSet::from_tokens(TaskKind::B, tokens)));
    }
    ComboTable combos(masks);
    MultiClassModel mc;
    mc.classes = classifier.at("classes").get<std::vector<std::uint32_t>>();
    require_dim(mc.classes.size() == combos.size() && weights.size() == combos.size(),
                "class, weight and combo counts disagree");
    for (auto c : mc.classes) {
      require_dim(c < combos.size(), "class id outside the combo table");
    }
    for (std::size_t k = 0; k < weights.size(); ++k) {
      mc.models.push_back(
          linear_from_json(weights.at(k), dim, spec.svm.C, "weights[" + std::to_string(k) + "]"));
    }
    return TextClassifier(
        spec, LabelPowersetModel{std::move(combos), std::move(mc), std::move(featurizer)});
  } catch (const ModelError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelError(ModelError::Kind::Malformed, e.what());
  }
}

void write_model(const TextClassifier& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ModelError(ModelError::Kind::Io, "cannot write '" + path + "'");
  out << save_model(model);
  if (!out) throw ModelError(ModelError::Kind::Io, "failed writing '" + path + "'");
}

TextClassifier read_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(ModelError::Kind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

}  // namespace hostdet
