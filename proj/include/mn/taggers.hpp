#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mn/lexicon.hpp"
#include "mn/matcher.hpp"
#include "mn/tags.hpp"
#include "mn/trees.hpp"

namespace mn {

enum class Family { MN, NE };

std::string_view family_name(Family f);
Family parse_family(std::string_view s);

struct StandoffAnnotation {
  std::size_t sentence = 0;
  Span span;
  std::string label;
  Family family = Family::MN;

  friend auto operator<=>(const StandoffAnnotation&, const StandoffAnnotation&) = default;
};

class StandoffError : public std::runtime_error {
 public:
  StandoffError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// sentence \t start \t end \t label \t family, one annotation per line.
std::vector<StandoffAnnotation> read_standoff(std::string_view text);
std::string write_standoff(std::span<const StandoffAnnotation> annotations);

struct TaggedToken {
  std::string token;
  std::string pos;
  /// Sorted, no duplicates.
  std::vector<MNTag> tags;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

/// token \t POS per line, blank line between sentences.
std::vector<std::vector<TaggedToken>> read_token_tsv(std::string_view text);

/// A trigger and, when one was found, its target.
struct Link {
  Span trigger;
  MNTag trigger_tag;
  std::optional<Span> target;
  std::optional<MNTag> target_tag;

  friend bool operator==(const Link&, const Link&) = default;
};

/// Annotations for links as tagged, without negation composition.
std::vector<StandoffAnnotation> link_annotations(std::span<const Link> links, std::size_t sentence);

/// Annotations with negation composed into modality targets. A negation
/// whose target is the target of a modality trigger it follows, or whose
/// target is itself a modality trigger, puts NOT on that modality's target
/// and its own TargNegation disappears.
std::vector<StandoffAnnotation> compose_links(std::span<const Link> links, std::size_t sentence);

struct StringTagResult {
  std::vector<TaggedToken> tokens;
  std::vector<StandoffAnnotation> annotations;
  std::vector<Link> links;
  std::vector<std::string> diagnostics;
};

/// The head word of each lexicon match becomes a trigger; each target is the next verbal token to
/// the right that is not an auxiliary.
StringTagResult tag_string(std::span<const TaggedToken> tokens, const Lexicon& lexicon, std::size_t sentence = 0);

/// Modal, or a be/have/do form whose next non-adverb token is verbal.
bool is_auxiliary_at(std::span<const TaggedToken> tokens, std::size_t i);

struct StructureTagResult {
  /// Tags folded into label suffixes.
  ParseTree tree;
  /// Tags still inserted as daughter markers.
  ParseTree marked;
  /// One annotation per tag marker, uncomposed.
  std::vector<StandoffAnnotation> annotations;
  std::vector<Link> links;
};

/// flatten then preprocess: the input form the structure rules expect.
ParseTree prepare_tree(const ParseTree& tree);

/// Applies rules in order, each to fixpoint. The tree must be prepared.
StructureTagResult tag_structure(const ParseTree& tree, std::span<const PatternRule> rules,
                                 std::size_t sentence = 0);

/// Moves tag markers into "-Tag" label suffixes ordered by precedence and
/// drops AUX/VoicePassive. Other markers stay.
ParseTree fold_markers(const ParseTree& tree);

/// Tokens with the tags of every annotation covering them.
std::vector<TaggedToken> tokens_from(std::span<const std::string> words,
                                     std::span<const StandoffAnnotation> annotations);

/// "<Tag word>" markup. Tags on one span nest outermost first by
/// precedence, triggers before targets. Spans that cross an enclosing
/// span shrink to their first token.
std::string render_inline(std::span<const std::string> words, std::span<const StandoffAnnotation> annotations);
std::string render_inline(std::span<const TaggedToken> tokens);

struct InlineSentence {
  std::vector<std::string> words;
  std::vector<StandoffAnnotation> annotations;
};
InlineSentence parse_inline(std::string_view text, std::size_t sentence = 0);

struct TagScore {
  std::size_t in_a = 0;
  std::size_t in_b = 0;
  std::size_t both = 0;
  double precision() const { return in_a ? static_cast<double>(both) / static_cast<double>(in_a) : 1.0; }
  double recall() const { return in_b ? static_cast<double>(both) / static_cast<double>(in_b) : 1.0; }
};

struct AgreementReport {
  std::size_t sentences = 0;
  /// Jaccard overlap of the (sentence, label) sets; 1 when both are empty.
  double sentence_level = 1.0;
  /// Exact (sentence, span, label) matches of a against b as reference.
  std::map<std::string, TagScore> per_tag;
};

/// Throws std::invalid_argument when the sentence counts differ or an
/// annotation lies outside its corpus.
AgreementReport agreement(std::span<const StandoffAnnotation> a, std::size_t sentences_a,
                          std::span<const StandoffAnnotation> b, std::size_t sentences_b);

std::string format_agreement(const AgreementReport& r);

}  // namespace mn
