#include "mn/english.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace mn::english {

namespace {

constexpr std::array<std::string_view, 8> kBe = {"be", "am", "is", "are", "was", "were", "been", "being"};
constexpr std::array<std::string_view, 6> kHaveDo = {"have", "has", "had", "having", "do", "does"};
constexpr std::array<std::string_view, 3> kDoMore = {"did", "done", "doing"};
constexpr std::array<std::string_view, 11> kModals = {"can",  "could", "may",  "might", "must", "shall",
                                                      "should", "will", "would", "need", "ought"};

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

template <std::size_t N>
bool in(const std::array<std::string_view, N>& set, std::string_view w) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

// One vowel group ending consonant-vowel-consonant: plan, stop, beg.
bool doubles_final_consonant(std::string_view w) {
  if (w.size() < 3) return false;
  char last = w.back();
  if (is_vowel(last) || last == 'w' || last == 'x' || last == 'y') return false;
  if (!is_vowel(w[w.size() - 2]) || is_vowel(w[w.size() - 3])) return false;
  int groups = 0;
  bool prev = false;
  for (char c : w) {
    bool v = is_vowel(c);
    if (v && !prev) ++groups;
    prev = v;
  }
  return groups == 1;
}

}  // namespace

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_verbal_pos(std::string_view pos) {
  std::string_view base = pos.substr(0, pos.find('-'));
  return base == "MD" || base == "VB" || base == "VBD" || base == "VBG" || base == "VBN" || base == "VBP" ||
         base == "VBZ";
}

bool is_be_form(std::string_view word) { return in(kBe, lowercase(word)); }

bool is_auxiliary_verb_form(std::string_view word) {
  std::string w = lowercase(word);
  return in(kBe, w) || in(kHaveDo, w) || in(kDoMore, w);
}

bool is_modal(std::string_view word) { return in(kModals, lowercase(word)); }

VerbForms inflect_verb(std::string_view lemma) {
  std::string w = lowercase(lemma);
  VerbForms f;
  f.base = w;
  auto ends = [&](std::string_view s) { return w.ends_with(s); };
  bool cons_y = w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]);

  if (cons_y) {
    std::string stem = w.substr(0, w.size() - 1);
    f.third_singular = stem + "ies";
    f.past = stem + "ied";
    f.gerund = w + "ing";
  } else if (ends("e")) {
    f.third_singular = w + "s";
    f.past = w + "d";
    f.gerund = (ends("ee") ? w : w.substr(0, w.size() - 1)) + "ing";
  } else {
    bool sibilant = ends("s") || ends("sh") || ends("ch") || ends("x") || ends("z");
    f.third_singular = w + (sibilant ? "es" : "s");
    std::string stem = doubles_final_consonant(w) ? w + w.back() : w;
    f.past = stem + "ed";
    f.gerund = stem + "ing";
  }
  f.past_participle = f.past;
  return f;
}

VerbForms parse_verb_forms(std::string_view spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  parts.push_back(cur);
  if (parts.size() != 5 || std::any_of(parts.begin(), parts.end(), [](auto& p) { return p.empty(); }))
    throw std::invalid_argument("verb forms must be 'base,3sg,past,participle,gerund': '" + std::string(spec) +
                                "'");
  return VerbForms{parts[0], parts[1], parts[2], parts[3], parts[4]};
}

std::vector<std::pair<std::string, std::string>> verb_form_tags(const VerbForms& f) {
  return {
      {f.base, "VB"}, {f.base, "VBP"}, {f.third_singular, "VBZ"}, {f.past, "VBD"}, {f.past_participle, "VBN"},
      {f.gerund, "VBG"},
  };
}

std::string pluralize(std::string_view noun) {
  std::string w = lowercase(noun);
  if (w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2])) return w.substr(0, w.size() - 1) + "ies";
  if (w.ends_with("s") || w.ends_with("sh") || w.ends_with("ch") || w.ends_with("x") || w.ends_with("z"))
    return w + "es";
  return w + "s";
}

}  // namespace mn::english
