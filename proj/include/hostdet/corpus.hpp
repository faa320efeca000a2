#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hostdet {

enum class TaskKind { A, B };

std::string_view task_name(TaskKind task);
TaskKind parse_task(std::string_view name);

/// Label tokens of a task, in canonical (bit) order.
///   A: real, fake
///   B: defame, fake, hate, offensive, non-hostile
std::span<const std::string_view> task_labels(TaskKind task);

inline constexpr std::uint8_t kNonHostileBit = 1u << 4;

/// A validated set of labels for one document. Stored as a bitmask over
/// task_labels(task), so the set is ordering-independent by construction.
class LabelSet {
 public:
  /// Parses and validates tokens. `offense` is accepted as an alias of
  /// `offensive`. Throws DatasetError (line 0) on any violation.
  static LabelSet from_tokens(TaskKind task, std::span<const std::string> tokens);
  /// Comma-separated form as it appears in TSV files.
  static LabelSet parse(TaskKind task, std::string_view field);
  static LabelSet from_mask(TaskKind task, std::uint8_t mask);

  TaskKind task() const { return task_; }
  std::uint8_t mask() const { return mask_; }
  std::size_t size() const;
  bool contains(std::string_view label) const;
  std::vector<std::string> tokens() const;
  std::string to_string() const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  LabelSet(TaskKind task, std::uint8_t mask) : task_(task), mask_(mask) {}

  TaskKind task_;
  std::uint8_t mask_;
};

struct Document {
  std::string id;
  std::string text;
  std::optional<LabelSet> labels;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Dataset {
  TaskKind task = TaskKind::A;
  bool labeled = true;
  std::vector<Document> documents;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

class DatasetError : public std::runtime_error {
 public:
  enum class Kind {
    MissingHeader,
    MalformedRow,
    EmptyId,
    UnknownLabel,
    MultiLabelTaskA,
    ExclusivityViolation,
    EmptyLabels,
    DuplicateId,
    InvalidUtf8,
    Unlabeled,
  };

  DatasetError(Kind kind, std::size_t line, const std::string& detail);

  Kind kind() const { return kind_; }
  /// 1-based line number in the input (the header is line 1); 0 when the
  /// error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

std::string_view error_kind_name(DatasetError::Kind kind);

/// Parses a UTF-8 TSV document with header `id<TAB>text<TAB>labels`.
/// When `labeled` is false the labels column is optional and ignored.
/// An `id<TAB>labels` header (prediction output) is also accepted; its
/// documents have empty text. Empty content yields an empty dataset.
Dataset parse_dataset(std::string_view content, TaskKind task, bool labeled);

/// Inverse of parse_dataset; escapes tabs, newlines and backslashes in text.
std::string serialize_dataset(const Dataset& dataset);

Dataset read_dataset(const std::string& path, TaskKind task, bool labeled);

/// Number of documents carrying each label of the dataset's task.
std::map<std::string, std::size_t> class_support(const Dataset& dataset);

std::string escape_field(std::string_view raw);
std::string unescape_field(std::string_view escaped);

}  // namespace hostdet
