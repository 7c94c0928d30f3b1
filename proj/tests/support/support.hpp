#pragma once

#include <random>
#include <string>
#include <vector>

#include "mn/grafting.hpp"
#include "mn/matcher.hpp"
#include "mn/taggers.hpp"
#include "mn/trees.hpp"

namespace mn::testing {

using Rng = std::mt19937_64;

struct TreeGenOptions {
  std::size_t max_nodes = 12;
  /// Probability that a node carries a marker.
  double marker_rate = 0.0;
  /// Allow tokens that need escaping and labels with suffixes.
  bool awkward = false;
};

ParseTree random_tree(Rng& rng, const TreeGenOptions& opt = {});

/// A random pattern with at most max_clauses clauses in total, drawing
/// labels and words from the vocabulary random_tree uses.
PatternNode random_pattern(Rng& rng, std::size_t max_clauses = 3);

/// Every binding found by trying each assignment of capture names to tree
/// nodes at each root, checked against a direct reading of the semantics.
std::vector<Match> brute_force_match(const PatternNode& pattern, const ParseTree& tree);

/// Classification of a span by comparing it with the leaf positions under
/// every node.
SpanClass brute_force_classify(const ParseTree& tree, const Span& span);

/// Splicing oracle: true iff no VP sits under VP/S and no NP under PP/NP.
bool is_flat(const ParseTree& tree);

std::vector<StandoffAnnotation> random_annotations(Rng& rng, const ParseTree& tree, std::size_t count);

/// Labels grafting may add, for the single-suffix check.
bool is_semantic_label(const std::string& segment);

std::string slurp(const std::string& path);

}  // namespace mn::testing
