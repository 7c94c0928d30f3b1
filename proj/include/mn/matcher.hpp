#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mn/trees.hpp"

namespace mn {

/// Syntax error in a pattern or action, with 1-based line and column.
class PatternError : public std::runtime_error {
 public:
  PatternError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A pattern's capture is used by an action but never bound.
class UnboundCaptureError : public std::runtime_error {
 public:
  explicit UnboundCaptureError(const std::string& name)
      : std::runtime_error("action refers to unbound capture '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// A rule kept re-enabling itself past the rewrite budget.
class RewriteBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Node description: alternatives separated by '|'. A literal matches a node
/// whose label or base category equals it, a word case-insensitively, or a
/// marker exactly; /^prefix/ matches any label, word or marker starting
/// with prefix.
struct LabelTest {
  struct Alternative {
    bool prefix = false;
    std::string text;
    friend bool operator==(const Alternative&, const Alternative&) = default;
  };
  std::vector<Alternative> alternatives;

  friend bool operator==(const LabelTest&, const LabelTest&) = default;
};

enum class Relation {
  Dominates,       // A < B: B is an immediate daughter of A
  SisterPrecedes,  // A $.. B: B is a following sister of A
  DominatesLeaf,   // (A w): A has the terminal w among its daughters
};

struct Clause;

struct PatternNode {
  LabelTest test;
  /// Captures bind tree nodes only; a capturing description never matches
  /// a word or marker.
  std::optional<std::string> capture;
  std::vector<Clause> clauses;

  friend bool operator==(const PatternNode&, const PatternNode&);
};

struct Clause {
  Relation relation = Relation::Dominates;
  bool negated = false;
  PatternNode operand;  // Dominates / SisterPrecedes
  std::string leaf;     // DominatesLeaf

  friend bool operator==(const Clause&, const Clause&) = default;
};

inline bool operator==(const PatternNode& a, const PatternNode& b) {
  return a.test == b.test && a.capture == b.capture && a.clauses == b.clauses;
}

struct Action {
  enum class Kind { InsertDaughter, AugmentLabel };
  Kind kind = Kind::InsertDaughter;
  /// Marker label to insert, or label suffix to append.
  std::string payload;
  /// 1-based daughter position for InsertDaughter.
  std::size_t position = 1;
  std::string capture;

  friend bool operator==(const Action&, const Action&) = default;
};

struct PatternRule {
  std::string name;
  PatternNode pattern;
  std::vector<Action> actions;

  friend bool operator==(const PatternRule&, const PatternRule&) = default;
};

/// Parses one rule:
///
///     Name: V3-passive-basic:require
///     VB=trigger !< /^Trig/ < VoicePassive < required $.. (S < (VB=target !< AUX))
///     insert (TargRequire) >2 target
///     insert (TrigRequire) >2 trigger
///
/// Relations: '<', '!<', '$..', '!$..'; inside parentheses a bare word is a
/// leaf-string test. Actions: "insert (M) >N name" and "augment name S".
PatternRule parse_pattern(std::string_view source);

/// Blank-line separated rules; '#' starts a comment line.
std::vector<PatternRule> parse_rules(std::string_view text);

/// Source text that parses back to an equal rule.
std::string to_source(const PatternRule& rule);
std::string rules_to_source(const std::vector<PatternRule>& rules);

/// Capture names bound by a pattern (negated clauses bind nothing).
std::vector<std::string> bound_captures(const PatternNode& pattern);

struct Match {
  NodePath root;
  std::map<std::string, NodePath> captures;

  friend auto operator<=>(const Match&, const Match&) = default;
};

/// All distinct bindings, ordered by the root node's document position and
/// then by daughter/sister order.
std::vector<Match> match(const PatternRule& rule, const ParseTree& tree);

struct ApplyResult {
  ParseTree tree;
  /// Matches whose actions were applied, in application order.
  std::vector<Match> applied;
};

inline constexpr std::size_t kDefaultRewriteBudget = 100;

/// Repeatedly applies the first match whose actions change the tree,
/// recomputing matches after each rewrite, until none does.
ApplyResult apply(const PatternRule& rule, const ParseTree& tree,
                  std::size_t budget = kDefaultRewriteBudget);

}  // namespace mn
