#pragma once

#include <string>
#include <string_view>
#include <vector>

// Closed-class English facts shared by the lexicon, the string tagger and
// the preprocessing rules.
namespace mn::english {

/// VB, VBD, VBG, VBN, VBP, VBZ or MD (base category only).
bool is_verbal_pos(std::string_view pos);

bool is_be_form(std::string_view word);
/// Inflections of be, have and do.
bool is_auxiliary_verb_form(std::string_view word);
/// can, could, may, might, must, shall, should, will, would, need, ought.
bool is_modal(std::string_view word);

std::string lowercase(std::string_view s);

/// Regular inflectional paradigm of a verb lemma.
struct VerbForms {
  std::string base;
  std::string third_singular;
  std::string past;
  std::string past_participle;
  std::string gerund;
};

VerbForms inflect_verb(std::string_view lemma);
/// Comma separated base,3sg,past,participle,gerund override.
VerbForms parse_verb_forms(std::string_view spec);

/// Every (form, Penn POS) pair licensed by a verb paradigm.
std::vector<std::pair<std::string, std::string>> verb_form_tags(const VerbForms& f);

std::string pluralize(std::string_view noun);

}  // namespace mn::english
