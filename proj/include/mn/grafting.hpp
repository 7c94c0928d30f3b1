#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mn/taggers.hpp"
#include "mn/trees.hpp"

namespace mn {

struct GraftConfig {
  /// Families are grafted in this order; later families overlay earlier ones.
  std::vector<Family> order = {Family::NE, Family::MN};
  /// Within MN, targets are applied after triggers so they win a shared node.
  bool target_over_trigger = true;
};

enum class GraftOutcome {
  GraftedExact,
  GraftedInserted,
  Overlaid,
  CrossingSkipped,
  Composed,
  DroppedUncomposable,
};
inline constexpr std::size_t kGraftOutcomes = 6;

std::string_view outcome_name(GraftOutcome o);

struct GraftReport {
  std::array<std::size_t, kGraftOutcomes> counts{};

  std::size_t& operator[](GraftOutcome o) { return counts[static_cast<std::size_t>(o)]; }
  std::size_t operator[](GraftOutcome o) const { return counts[static_cast<std::size_t>(o)]; }
  std::size_t total() const;
  GraftReport& operator+=(const GraftReport& o);
  /// "name: count" lines.
  std::string format() const;

  friend bool operator==(const GraftReport&, const GraftReport&) = default;
};

struct SpanClass {
  enum class Kind { Exact, AdjacentDaughters, Crossing };
  Kind kind = Kind::Crossing;
  /// Exact: topmost node with the span. AdjacentDaughters: the parent.
  NodePath node;
  /// AdjacentDaughters: daughters first..last (inclusive) make up the span.
  std::size_t first = 0;
  std::size_t last = 0;

  friend bool operator==(const SpanClass&, const SpanClass&) = default;
};

/// Throws std::out_of_range for an empty span or one past the yield.
SpanClass classify_span(const ParseTree& tree, const Span& span);

struct GraftResult {
  ParseTree tree;
  GraftReport report;
  /// Outcome per input annotation, in input order.
  std::vector<GraftOutcome> outcomes;
};

/// Grafts one sentence's annotations onto its tree. Sentence indices are
/// ignored. Throws std::out_of_range for a span past the yield.
GraftResult graft(const ParseTree& tree, std::span<const StandoffAnnotation> annotations,
                  const GraftConfig& config = {});

}  // namespace mn
