#include "hostdet/corpus.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "utf8.hpp"

namespace hostdet {

namespace {

constexpr std::array<std::string_view, 2> kTaskALabels{"real", "fake"};
constexpr std::array<std::string_view, 5> kTaskBLabels{"defame", "fake", "hate", "offensive",
                                                       "non-hostile"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int label_bit(TaskKind task, std::string_view token) {
  if (task == TaskKind::B && token == "offense") token = "offensive";
  const auto labels = task_labels(task);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == token) return static_cast<int>(i);
  }
  return -1;
}

// Rule check shared by every LabelSet constructor.
std::optional<DatasetError::Kind> check_mask(TaskKind task, std::uint8_t mask) {
  const auto n = std::popcount(mask);
  if (n == 0) return DatasetError::Kind::EmptyLabels;
  if (task == TaskKind::A) {
    if (mask >= (1u << kTaskALabels.size())) return DatasetError::Kind::UnknownLabel;
    if (n != 1) return DatasetError::Kind::MultiLabelTaskA;
  } else {
    if (mask >= (1u << kTaskBLabels.size())) return DatasetError::Kind::UnknownLabel;
    if ((mask & kNonHostileBit) && n != 1) return DatasetError::Kind::ExclusivityViolation;
  }
  return std::nullopt;
}

}  // namespace

std::string_view task_name(TaskKind task) { return task == TaskKind::A ? "a" : "b"; }

TaskKind parse_task(std::string_view name) {
  if (name == "a" || name == "A") return TaskKind::A;
  if (name == "b" || name == "B") return TaskKind::B;
  throw std::invalid_argument("unknown task '" + std::string(name) + "' (expected a or b)");
}

std::span<const std::string_view> task_labels(TaskKind task) {
  if (task == TaskKind::A) return kTaskALabels;
  return kTaskBLabels;
}

LabelSet LabelSet::from_mask(TaskKind task, std::uint8_t mask) {
  if (auto err = check_mask(task, mask)) {
    throw DatasetError(*err, 0, "label mask " + std::to_string(mask));
  }
  return LabelSet(task, mask);
}

LabelSet LabelSet::from_tokens(TaskKind task, std::span<const std::string> tokens) {
  std::uint8_t mask = 0;
  for (const auto& raw : tokens) {
    const auto token = trim(raw);
    const int bit = label_bit(task, token);
    if (bit < 0) {
      throw DatasetError(DatasetError::Kind::UnknownLabel, 0,
                         "unknown label '" + std::string(token) + "' for task " +
                             std::string(task_name(task)));
    }
    mask |= static_cast<std::uint8_t>(1u << bit);
  }
  if (auto err = check_mask(task, mask)) {
    throw DatasetError(*err, 0, "invalid label set");
  }
  return LabelSet(task, mask);
}

LabelSet LabelSet::parse(TaskKind task, std::string_view field) {
  std::vector<std::string> tokens;
  if (!trim(field).empty()) {
    for (auto part : split(field, ',')) tokens.emplace_back(trim(part));
  }
  // A task-A field listing two labels is a multi-label error, not an
  // unknown-label error, so count tokens before resolving them.
  if (task == TaskKind::A && tokens.size() > 1) {
    for (const auto& t : tokens) {
      if (label_bit(task, t) < 0) return from_tokens(task, tokens);
    }
    throw DatasetError(DatasetError::Kind::MultiLabelTaskA, 0,
                       "task a expects exactly one label, got '" + std::string(field) + "'");
  }
  return from_tokens(task, tokens);
}

std::size_t LabelSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

bool LabelSet::contains(std::string_view label) const {
  const int bit = label_bit(task_, label);
  return bit >= 0 && (mask_ & (1u << bit)) != 0;
}

std::vector<std::string> LabelSet::tokens() const {
  std::vector<std::string> out;
  const auto labels = task_labels(task_);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (mask_ & (1u << i)) out.emplace_back(labels[i]);
  }
  return out;
}

std::string LabelSet::to_string() const {
  std::string out;
  for (const auto& t : tokens()) {
    if (!out.empty()) out.push_back(',');
    out += t;
  }
  return out;
}

DatasetError::DatasetError(Kind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                        std::string(error_kind_name(kind)) + ": " + detail
                                  : std::string(error_kind_name(kind)) + ": " + detail),
      kind_(kind),
      line_(line) {}

std::string_view error_kind_name(DatasetError::Kind kind) {
  switch (kind) {
    case DatasetError::Kind::MissingHeader: return "missing header";
    case DatasetError::Kind::MalformedRow: return "malformed row";
    case DatasetError::Kind::EmptyId: return "empty id";
    case DatasetError::Kind::UnknownLabel: return "unknown label";
    case DatasetError::Kind::MultiLabelTaskA: return "multiple labels for task a";
    case DatasetError::Kind::ExclusivityViolation: return "non-hostile combined with hostile label";
    case DatasetError::Kind::EmptyLabels: return "empty label set";
    case DatasetError::Kind::DuplicateId: return "duplicate id";
    case DatasetError::Kind::InvalidUtf8: return "invalid utf-8";
    case DatasetError::Kind::Unlabeled: return "dataset is unlabeled";
  }
  return "unknown error";
}

std::string escape_field(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape_field(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    const char c = escaped[i];
    if (c == '\\' && i + 1 < escaped.size()) {
      const char next = escaped[i + 1];
      if (next == 't' || next == 'n' || next == '\\') {
        out.push_back(next == 't' ? '\t' : next == 'n' ? '\n' : '\\');
        ++i;
        continue;
      }
    }
    out.push_back(c);
  }
  return out;
}

Dataset parse_dataset(std::string_view content, TaskKind task, bool labeled) {
  Dataset ds;
  ds.task = task;
  ds.labeled = labeled;
  if (content.empty()) return ds;

  auto lines = split(content, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();

  std::string_view first = lines.front();
  if (first.starts_with("\xEF\xBB\xBF")) first.remove_prefix(3);
  const auto header = split(trim(first), '\t');
  // Accepted layouts: id,text,labels | id,text | id,labels (prediction output).
  int text_col = -1;
  int labels_col = -1;
  if (header.size() == 3 && header[0] == "id" && header[1] == "text" && header[2] == "labels") {
    text_col = 1;
    labels_col = 2;
  } else if (header.size() == 2 && header[0] == "id" && header[1] == "text") {
    text_col = 1;
  } else if (header.size() == 2 && header[0] == "id" && header[1] == "labels") {
    labels_col = 1;
  }
  if ((text_col < 0 && labels_col < 0) || (labeled && labels_col < 0)) {
    throw DatasetError(DatasetError::Kind::MissingHeader, 1,
                       labeled ? "expected header 'id<TAB>text<TAB>labels'"
                               : "expected header 'id<TAB>text[<TAB>labels]'");
  }

  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!detail::valid_utf8(line)) {
      throw DatasetError(DatasetError::Kind::InvalidUtf8, lineno, "row is not valid UTF-8");
    }
    const auto cols = split(line, '\t');
    if (cols.size() != header.size()) {
      throw DatasetError(DatasetError::Kind::MalformedRow, lineno,
                         "expected " + std::to_string(header.size()) + " columns, got " +
                             std::to_string(cols.size()));
    }
    Document doc;
    doc.id = unescape_field(cols[0]);
    if (doc.id.empty()) throw DatasetError(DatasetError::Kind::EmptyId, lineno, "id is empty");
    if (!seen.insert(doc.id).second) {
      throw DatasetError(DatasetError::Kind::DuplicateId, lineno, "id '" + doc.id + "' repeats");
    }
    if (text_col >= 0) doc.text = unescape_field(cols[text_col]);
    if (labeled) {
      try {
        doc.labels = LabelSet::parse(task, cols[labels_col]);
      } catch (const DatasetError& e) {
        throw DatasetError(e.kind(), lineno, "labels '" + std::string(cols[labels_col]) + "'");
      }
    }
    ds.documents.push_back(std::move(doc));
  }
  return ds;
}

std::string serialize_dataset(const Dataset& dataset) {
  std::ostringstream os;
  os << (dataset.labeled ? "id\ttext\tlabels\n" : "id\ttext\n");
  for (const auto& doc : dataset.documents) {
    os << escape_field(doc.id) << '\t' << escape_field(doc.text);
    if (dataset.labeled) os << '\t' << (doc.labels ? doc.labels->to_string() : std::string{});
    os << '\n';
  }
  return os.str();
}

Dataset read_dataset(const std::string& path, TaskKind task, bool labeled) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), task, labeled);
}

std::map<std::string, std::size_t> class_support(const Dataset& dataset) {
  if (!dataset.labeled) {
    throw DatasetError(DatasetError::Kind::Unlabeled, 0, "class support needs labels");
  }
  std::map<std::string, std::size_t> counts;
  for (auto label : task_labels(dataset.task)) counts[std::string(label)] = 0;
  for (const auto& doc : dataset.documents) {
    if (!doc.labels) {
      throw DatasetError(DatasetError::Kind::Unlabeled, 0, "document '" + doc.id + "' has no labels");
    }
    for (const auto& t : doc.labels->tokens()) ++counts[t];
  }
  return counts;
}

}  // namespace hostdet
