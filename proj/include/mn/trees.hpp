#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mn {

/// Raised by read_ptb with the byte offset of the first offending character.
class PtbParseError : public std::runtime_error {
 public:
  PtbParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Token span over a sentence: [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool contains(const Span& o) const { return start <= o.start && o.end <= end; }
  bool disjoint(const Span& o) const { return end <= o.start || o.end <= start; }
  friend auto operator<=>(const Span&, const Span&) = default;
};

/// Child-index path from the root; the root is the empty path.
using NodePath = std::vector<std::size_t>;

/// A constituency tree node.
///
/// Leaves are preterminals: a label plus exactly one surface token. Internal
/// nodes have one or more children and no token. Any node may additionally
/// carry markers: daughter tokens inserted by pattern rules (AUX,
/// VoicePassive, TrigRequire, ...) that are not part of the sentence yield.
class ParseTree {
 public:
  ParseTree() = default;

  static ParseTree leaf(std::string label, std::string token);
  static ParseTree node(std::string label, std::vector<ParseTree> children);

  const std::string& label() const { return label_; }
  bool is_leaf() const { return token_.has_value(); }
  const std::string& token() const;
  std::span<const ParseTree> children() const { return children_; }
  const ParseTree& child(std::size_t i) const { return children_.at(i); }
  std::size_t num_children() const { return children_.size(); }
  std::span<const std::string> markers() const { return markers_; }
  bool has_marker(std::string_view m) const;

  /// Label up to the first '-' ("VP-TargNOTAble" -> "VP").
  std::string_view base_category() const;

  /// Surface tokens left to right.
  std::vector<std::string> yield() const;
  std::size_t leaf_count() const;
  std::size_t node_count() const;

  const ParseTree& at(const NodePath& path) const;
  ParseTree& at(const NodePath& path);
  bool contains_path(const NodePath& path) const;

  // Editing. Trees are values; library operations copy then edit.
  void set_label(std::string label);
  void set_token(std::string token);
  std::vector<ParseTree>& mutable_children() { return children_; }
  /// Inserts at marker index (clamped to the current marker count).
  void insert_marker(std::size_t index, std::string marker);
  void add_marker(std::string marker) { insert_marker(markers_.size(), std::move(marker)); }
  std::vector<std::string>& mutable_markers() { return markers_; }

  friend bool operator==(const ParseTree&, const ParseTree&) = default;

 private:
  std::string label_;
  std::optional<std::string> token_;
  std::vector<ParseTree> children_;
  std::vector<std::string> markers_;
};

std::string_view base_category(std::string_view label);
bool is_valid_label(std::string_view label);

/// Parses a sequence of bracketed trees. Inside a preterminal, every token
/// but the last is a marker; bare tokens inside an internal node are markers.
std::vector<ParseTree> read_ptb(std::string_view text);
/// Exactly one tree; anything else is an error.
ParseTree read_ptb_tree(std::string_view text);
/// Single-line bracketed form; '(' and ')' tokens become -LRB-/-RRB-.
std::string write_ptb(const ParseTree& tree);

/// Splices out VP nodes under VP/S and NP nodes under PP/NP, to fixpoint.
ParseTree flatten(const ParseTree& tree);

Span node_span(const ParseTree& tree, const NodePath& path);

struct NodeInfo {
  NodePath path;
  Span span;
  std::size_t depth = 0;
  /// Index into the same vector, npos for the root.
  std::size_t parent = static_cast<std::size_t>(-1);
};

/// Every node in preorder (document order) with its span.
std::vector<NodeInfo> enumerate_nodes(const ParseTree& tree);

/// Leaf paths in yield order.
std::vector<NodePath> leaf_paths(const ParseTree& tree);

}  // namespace mn
