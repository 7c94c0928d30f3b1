#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mn/lexicon.hpp"
#include "mn/matcher.hpp"
#include "mn/trees.hpp"

namespace mn {

inline constexpr std::string_view kAuxMarker = "AUX";
inline constexpr std::string_view kPassiveMarker = "VoicePassive";

/// Marks auxiliary be/have/do leaves with AUX (a verbal sister follows) and
/// passive participles with VoicePassive (the nearest preceding verbal
/// sister is a form of be). Idempotent.
ParseTree preprocess(const ParseTree& tree);

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rule with placeholders, named by the subcategorization code it serves.
///
///   {WORD}  trigger head word        {FORMS} all inflections, '|' separated
///   {PPT}   past participle          {TRIG} / {TARG} tag strings
struct Template {
  std::string name;
  std::string source;  // pattern and action lines, without the Name: line

  friend bool operator==(const Template&, const Template&) = default;
};

class TemplateRegistry {
 public:
  void add(Template t);
  const Template* find(std::string_view code) const;
  /// Templates in file order.
  const std::vector<Template>& templates() const { return templates_; }
  std::size_t size() const { return templates_.size(); }

 private:
  std::vector<Template> templates_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
};

/// Same record syntax as rule files; each record's Name: is its code.
TemplateRegistry load_templates(std::string_view text);

/// Placeholder bindings for one lexicon entry.
std::map<std::string, std::string> template_bindings(const LexiconEntry& entry);
PatternRule instantiate(const Template& t, const LexiconEntry& entry);

struct Expansion {
  std::vector<PatternRule> rules;
  /// "surface: code" for every subcat the registry does not know.
  std::vector<std::string> unresolved;
};

/// One rule per (entry, subcat) in lexicon order, named "<code>:<surface>".
Expansion expand_templates(const Lexicon& lexicon, const TemplateRegistry& registry);

}  // namespace mn
