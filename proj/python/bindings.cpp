#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hostdet/cli.hpp"
#include "hostdet/embeddings.hpp"
#include "hostdet/metrics.hpp"
#include "hostdet/model_io.hpp"
#include "hostdet/pipeline.hpp"
#include "hostdet/svm.hpp"
#include "hostdet/textprep.hpp"

namespace py = pybind11;
using namespace hostdet;

namespace {

std::vector<SparseVector> rows(const std::vector<std::vector<double>>& X) {
  std::vector<SparseVector> out;
  out.reserve(X.size());
  for (const auto& x : X) out.push_back(SparseVector::from_dense(x));
  return out;
}

std::vector<double> densify(const SparseVector& x) {
  std::vector<double> out(x.dim, 0.0);
  for (const auto& e : x.entries) out[e.index] = e.value;
  return out;
}

std::vector<LabelSet> label_sets(TaskKind task, const std::vector<std::string>& fields) {
  std::vector<LabelSet> out;
  out.reserve(fields.size());
  for (const auto& f : fields) out.push_back(LabelSet::parse(task, f));
  return out;
}

// Reports cross the boundary as JSON text; the Python side decodes it.
std::string report_json(const EvaluationReport& r) { return r.to_json().dump(); }

}  // namespace

PYBIND11_MODULE(_hostdet, m) {
  m.doc() = "Text classification core: preprocessing, features, SVM training, metrics";

  py::register_exception<DatasetError>(m, "DatasetError", PyExc_ValueError);
  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

  m.def("normalize", &normalize, py::arg("text"));
  m.def(
      "ngrams",
      [](const TokenList& tokens, int lo, int hi) { return ngrams(tokens, NgramRange(lo, hi)); },
      py::arg("tokens"), py::arg("lo") = 1, py::arg("hi") = 1);

  py::class_<Vocabulary>(m, "Vocabulary")
      .def_static(
          "fit",
          [](const std::vector<TokenList>& corpus, int lo, int hi, std::size_t min_df) {
            return Vocabulary::fit(corpus, NgramRange(lo, hi), min_df);
          },
          py::arg("corpus"), py::arg("lo") = 1, py::arg("hi") = 1, py::arg("min_df") = 1)
      .def_property_readonly("terms", &Vocabulary::terms)
      .def_property_readonly("df", &Vocabulary::df)
      .def_property_readonly("idf", &Vocabulary::idf)
      .def("__len__", &Vocabulary::size)
      .def(
          "transform", [](const Vocabulary& v, const TokenList& t) { return densify(v.transform(t)); },
          py::arg("tokens"), "Dense tf-idf row of a token list.");

  m.def(
      "sgns_pair_loss",
      [](const std::vector<double>& center, const std::vector<double>& context,
         const std::vector<std::vector<double>>& negatives) {
        std::vector<std::span<const double>> spans(negatives.begin(), negatives.end());
        const auto r = sgns_pair_loss(center, context, spans);
        py::dict d;
        d["loss"] = r.loss;
        d["grad_center"] = r.grad_center;
        d["grad_context"] = r.grad_context;
        d["grad_negatives"] = r.grad_negatives;
        return d;
      },
      py::arg("center"), py::arg("context"), py::arg("negatives"));

  py::class_<LinearModel>(m, "LinearModel")
      .def_readonly("weights", &LinearModel::weights)
      .def_readonly("bias", &LinearModel::bias)
      .def_readonly("C", &LinearModel::C)
      .def(
          "decision_score",
          [](const LinearModel& lm, const std::vector<double>& x) { return decision_score(lm, x); },
          py::arg("x"));

  m.def(
      "train_linear_svm",
      [](const std::vector<std::vector<double>>& X, const std::vector<int>& y, double C, double tol,
         int max_iter, std::uint64_t seed, bool fit_bias) {
        TrainOptions opt{C, tol, max_iter, seed, fit_bias};
        return train_linear_svm(rows(X), y, opt);
      },
      py::arg("X"), py::arg("y"), py::arg("C") = 1.0, py::arg("tol") = 1e-4,
      py::arg("max_iter") = 1000, py::arg("seed") = 1, py::arg("fit_bias") = true);

  m.def(
      "evaluate_binary",
      [](const std::vector<std::string>& actual, const std::vector<std::string>& predicted) {
        return report_json(evaluate_binary(actual, predicted));
      },
      py::arg("actual"), py::arg("predicted"));
  m.def(
      "evaluate_multilabel",
      [](const std::vector<std::string>& actual, const std::vector<std::string>& predicted) {
        return report_json(evaluate_multilabel(label_sets(TaskKind::B, actual),
                                               label_sets(TaskKind::B, predicted)));
      },
      py::arg("actual"), py::arg("predicted"));
  m.def(
      "fine_grained_f1",
      [](const std::vector<double>& f1, const std::vector<std::uint64_t>& support) {
        return fine_grained_f1(f1, support);
      },
      py::arg("f1"), py::arg("support"));

  m.def(
      "parse_dataset",
      [](const std::string& content, const std::string& task, bool labeled) {
        const auto ds = parse_dataset(content, parse_task(task), labeled);
        py::list out;
        for (const auto& d : ds.documents) {
          out.append(py::make_tuple(d.id, d.text,
                                    d.labels ? py::object(py::str(d.labels->to_string()))
                                             : py::object(py::none())));
        }
        return out;
      },
      py::arg("content"), py::arg("task"), py::arg("labeled") = true,
      "List of (id, text, labels) tuples; labels is None when unlabeled.");

  py::class_<TextClassifier>(m, "TextClassifier")
      .def_static(
          "train",
          [](const std::string& content, const std::string& task, const std::string& model,
             std::uint64_t seed) {
            const auto t = parse_task(task);
            auto spec = PipelineSpec::defaults(t, parse_model_kind(model));
            spec.seed = seed;
            return train_classifier(parse_dataset(content, t, true), spec);
          },
          py::arg("content"), py::arg("task"), py::arg("model"), py::arg("seed") = 1,
          "Train with the task defaults on TSV content.")
      .def_static(
          "load", [](const std::string& text) { return load_model(text); }, py::arg("text"))
      .def("save", [](const TextClassifier& c) { return save_model(c); })
      .def_property_readonly("task", [](const TextClassifier& c) { return std::string(task_name(c.task())); })
      .def("scores", &TextClassifier::scores, py::arg("text"))
      .def(
          "predict", [](const TextClassifier& c, const std::string& text) { return c.predict(text).to_string(); },
          py::arg("text"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a hostdet subcommand; returns (exit code, stdout, stderr).");
}
