#pragma once

#include <span>
#include <vector>

#include "mn/grafting.hpp"
#include "mn/lexicon.hpp"
#include "mn/matcher.hpp"
#include "mn/taggers.hpp"
#include "mn/trees.hpp"

// Whole-corpus drivers. Sentences are independent, so each driver has an
// OpenMP version and a serial reference with identical results. Output
// order always equals input order; when sentences fail, the exception of
// the first failing sentence is rethrown.
namespace mn {

/// 0 leaves the OpenMP default in place.
void set_thread_count(int threads);
int thread_count();

/// Each tree is flattened and preprocessed first when prepare is set.
std::vector<StructureTagResult> tag_structure_corpus(std::span<const ParseTree> trees,
                                                     std::span<const PatternRule> rules, bool prepare = true);
std::vector<StructureTagResult> tag_structure_corpus_serial(std::span<const ParseTree> trees,
                                                            std::span<const PatternRule> rules,
                                                            bool prepare = true);

std::vector<StringTagResult> tag_string_corpus(std::span<const std::vector<TaggedToken>> sentences,
                                               const Lexicon& lexicon);
std::vector<StringTagResult> tag_string_corpus_serial(std::span<const std::vector<TaggedToken>> sentences,
                                                      const Lexicon& lexicon);

/// Annotations are routed by sentence index; an index past the corpus
/// throws std::out_of_range.
std::vector<GraftResult> graft_corpus(std::span<const ParseTree> trees,
                                      std::span<const StandoffAnnotation> annotations,
                                      const GraftConfig& config = {});
std::vector<GraftResult> graft_corpus_serial(std::span<const ParseTree> trees,
                                             std::span<const StandoffAnnotation> annotations,
                                             const GraftConfig& config = {});

std::vector<std::vector<StandoffAnnotation>> group_by_sentence(std::span<const StandoffAnnotation> annotations,
                                                               std::size_t sentences);

}  // namespace mn
