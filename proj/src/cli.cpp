#include "hostdet/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hostdet/metrics.hpp"
#include "hostdet/model_io.hpp"
#include "hostdet/pipeline.hpp"

namespace hostdet {

namespace {

struct TrainArgs {
  std::string task;
  std::string model;
  std::vector<int> ngram;
  std::size_t min_df = 0;
  double C = 0.0;
  double tol = 1e-4;
  int max_iter = 1000;
  int dim = 150;
  int window = 5;
  int negatives = 5;
  int epochs = 10;
  double lr = 0.025;
  int min_count = 1;
  std::uint64_t seed = 1;
  std::string input;
  std::string out;
};

struct ApplyArgs {
  std::string model;
  std::string input;
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

bool is_label_error(DatasetError::Kind kind) {
  using K = DatasetError::Kind;
  return kind == K::UnknownLabel || kind == K::MultiLabelTaskA || kind == K::ExclusivityViolation;
}

/// Parses a labeled file for `task`. A file whose labels only make sense
/// for the other task is reported as a task mismatch.
struct TaskMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Dataset parse_labeled_for(const std::string& content, TaskKind task) {
  try {
    return parse_dataset(content, task, true);
  } catch (const DatasetError& e) {
    if (!is_label_error(e.kind())) throw;
    const auto other = task == TaskKind::A ? TaskKind::B : TaskKind::A;
    try {
      (void)parse_dataset(content, other, true);
    } catch (const DatasetError&) {
      throw e;
    }
    throw TaskMismatch("file holds task-" + std::string(task_name(other)) +
                       " labels but the model is for task " + std::string(task_name(task)));
  }
}

PipelineSpec build_spec(const TrainArgs& a, const CLI::App& train) {
  PipelineSpec spec;
  try {
    spec = PipelineSpec::defaults(parse_task(a.task), parse_model_kind(a.model));
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  if (train.count("--ngram") > 0) {
    try {
      spec.features.ngram = NgramRange(a.ngram.at(0), a.ngram.at(1));
    } catch (const std::exception& e) {
      throw SpecError(e.what());
    }
  }
  if (train.count("--min-df") > 0) spec.features.min_df = a.min_df;
  if (train.count("--c") > 0) spec.svm.C = a.C;
  spec.svm.tol = a.tol;
  spec.svm.max_iter = a.max_iter;
  auto& e = spec.features.embedding;
  e.dim = a.dim;
  e.window = a.window;
  e.negatives = a.negatives;
  e.epochs = a.epochs;
  e.learning_rate = a.lr;
  e.min_count = a.min_count;
  spec.seed = a.seed;
  spec.validate();
  return spec;
}

int cmd_train(const TrainArgs& a, const CLI::App& sub, std::ostream& out) {
  const auto spec = build_spec(a, sub);
  const auto dataset = parse_dataset(read_file(a.input), spec.task, true);
  const auto model = train_classifier(dataset, spec);

  const auto predicted = model.predict_all(dataset);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    correct += predicted[i] == *dataset.documents[i].labels ? 1 : 0;
  }
  write_model(model, a.out);

  out << "documents: " << dataset.documents.size() << '\n';
  out << "vocabulary size: " << model.featurizer().vocabulary_size() << '\n';
  out << "feature dimension: " << model.featurizer().dim() << '\n';
  out << "training accuracy: " << std::fixed << std::setprecision(4)
      << static_cast<double>(correct) / static_cast<double>(predicted.size()) << '\n';
  out << "model written to " << a.out << '\n';
  return kExitOk;
}

int cmd_eval(const ApplyArgs& a, std::ostream& out) {
  const auto model = read_model(a.model);
  const auto dataset = parse_labeled_for(read_file(a.input), model.task());
  const auto predicted = model.predict_all(dataset);
  std::vector<LabelSet> actual;
  actual.reserve(dataset.documents.size());
  for (const auto& d : dataset.documents) actual.push_back(*d.labels);
  const auto report = evaluate(model.task(), actual, predicted);
  const auto json = report.to_json().dump(2) + "\n";
  if (a.out.empty()) {
    out << json;
  } else {
    write_file(a.out, json);
    out << report_to_string(report);
  }
  return kExitOk;
}

int cmd_predict(const ApplyArgs& a, std::ostream& out) {
  const auto model = read_model(a.model);
  const auto dataset = parse_dataset(read_file(a.input), model.task(), false);
  std::ostringstream os;
  os << "id\tlabels\n";
  for (const auto& doc : dataset.documents) {
    os << escape_field(doc.id) << '\t' << model.predict(doc.text).to_string() << '\n';
  }
  if (a.out.empty()) {
    out << os.str();
  } else {
    write_file(a.out, os.str());
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fake-news and hostile-post text classification (tf-idf / word2vec + linear SVM)",
               "hostdet"};
  app.require_subcommand(1);

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "Train a model on a labeled TSV file");
  train->add_option("--task", ta.task, "Task: a (fake news) or b (hostility)")->required();
  train->add_option("--model", ta.model, "svm-tfidf | svm-w2v | lpsvm")->required();
  train->add_option("--ngram", ta.ngram, "N-gram range LO HI")->expected(2);
  train->add_option("--min-df", ta.min_df, "Minimum document frequency of a term");
  train->add_option("--c", ta.C, "SVM regularization constant C");
  train->add_option("--tol", ta.tol, "Solver tolerance")->capture_default_str();
  train->add_option("--max-iter", ta.max_iter, "Solver epochs limit")->capture_default_str();
  train->add_option("--dim", ta.dim, "Embedding dimension (svm-w2v)")->capture_default_str();
  train->add_option("--window", ta.window, "Context window (svm-w2v)")->capture_default_str();
  train->add_option("--negatives", ta.negatives, "Negative samples (svm-w2v)")
      ->capture_default_str();
  train->add_option("--epochs", ta.epochs, "Embedding epochs (svm-w2v)")->capture_default_str();
  train->add_option("--lr", ta.lr, "Embedding learning rate (svm-w2v)")->capture_default_str();
  train->add_option("--min-count", ta.min_count, "Embedding min count (svm-w2v)")
      ->capture_default_str();
  train->add_option("--seed", ta.seed, "Random seed")->capture_default_str();
  train->add_option("--input", ta.input, "Training TSV")->required();
  train->add_option("--out", ta.out, "Model file to write")->required();

  ApplyArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a model on a labeled TSV file");
  eval->add_option("--model", ea.model, "Model file")->required();
  eval->add_option("--input", ea.input, "Labeled TSV")->required();
  eval->add_option("--out", ea.out, "Report JSON (stdout when omitted)");

  ApplyArgs pa;
  auto* predict = app.add_subcommand("predict", "Label every row of a TSV file");
  predict->add_option("--model", pa.model, "Model file")->required();
  predict->add_option("--input", pa.input, "TSV with id and text columns")->required();
  predict->add_option("--out", pa.out, "Output TSV (stdout when omitted)");

  std::vector<const char*> argv{"hostdet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitSpecError;
  }

  try {
    if (*train) return cmd_train(ta, *train, out);
    if (*eval) return cmd_eval(ea, out);
    return cmd_predict(pa, out);
  } catch (const TaskMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitTaskMismatch;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSpecError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace hostdet
