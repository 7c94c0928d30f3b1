#include "mn/corpus.hpp"

#include <exception>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace mn {

namespace {

// Runs body(i) for every i, in parallel or not, keeping the first failure.
template <class Body>
void for_each_sentence(std::size_t n, bool parallel, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<StructureTagResult> structure(std::span<const ParseTree> trees, std::span<const PatternRule> rules,
                                          bool prepare, bool parallel) {
  std::vector<StructureTagResult> out(trees.size());
  for_each_sentence(trees.size(), parallel, [&](std::size_t i) {
    out[i] = tag_structure(prepare ? prepare_tree(trees[i]) : trees[i], rules, i);
  });
  return out;
}

std::vector<StringTagResult> strings(std::span<const std::vector<TaggedToken>> sentences, const Lexicon& lexicon,
                                     bool parallel) {
  std::vector<StringTagResult> out(sentences.size());
  for_each_sentence(sentences.size(), parallel,
                    [&](std::size_t i) { out[i] = tag_string(sentences[i], lexicon, i); });
  return out;
}

std::vector<GraftResult> grafts(std::span<const ParseTree> trees, std::span<const StandoffAnnotation> annotations,
                                const GraftConfig& config, bool parallel) {
  auto grouped = group_by_sentence(annotations, trees.size());
  std::vector<GraftResult> out(trees.size());
  for_each_sentence(trees.size(), parallel, [&](std::size_t i) { out[i] = graft(trees[i], grouped[i], config); });
  return out;
}

}  // namespace

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

std::vector<StructureTagResult> tag_structure_corpus(std::span<const ParseTree> trees,
                                                     std::span<const PatternRule> rules, bool prepare) {
  return structure(trees, rules, prepare, true);
}

std::vector<StructureTagResult> tag_structure_corpus_serial(std::span<const ParseTree> trees,
                                                            std::span<const PatternRule> rules, bool prepare) {
  return structure(trees, rules, prepare, false);
}

std::vector<StringTagResult> tag_string_corpus(std::span<const std::vector<TaggedToken>> sentences,
                                               const Lexicon& lexicon) {
  return strings(sentences, lexicon, true);
}

std::vector<StringTagResult> tag_string_corpus_serial(std::span<const std::vector<TaggedToken>> sentences,
                                                      const Lexicon& lexicon) {
  return strings(sentences, lexicon, false);
}

std::vector<GraftResult> graft_corpus(std::span<const ParseTree> trees,
                                      std::span<const StandoffAnnotation> annotations, const GraftConfig& config) {
  return grafts(trees, annotations, config, true);
}

std::vector<GraftResult> graft_corpus_serial(std::span<const ParseTree> trees,
                                             std::span<const StandoffAnnotation> annotations,
                                             const GraftConfig& config) {
  return grafts(trees, annotations, config, false);
}

std::vector<std::vector<StandoffAnnotation>> group_by_sentence(std::span<const StandoffAnnotation> annotations,
                                                               std::size_t sentences) {
  std::vector<std::vector<StandoffAnnotation>> out(sentences);
  for (const auto& a : annotations) {
    if (a.sentence >= sentences)
      throw std::out_of_range("annotation for sentence " + std::to_string(a.sentence) + " but only " +
                              std::to_string(sentences) + " sentences");
    out[a.sentence].push_back(a);
  }
  return out;
}

}  // namespace mn
