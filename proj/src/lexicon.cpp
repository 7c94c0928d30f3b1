#include "mn/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

namespace mn {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool iequals(std::string_view a, std::string_view b) { return english::lowercase(a) == english::lowercase(b); }

struct RawRecord {
  std::size_t ordinal = 0;
  std::vector<std::pair<std::string, std::string>> fields;
};

std::vector<RawRecord> split_records(std::string_view text) {
  std::vector<RawRecord> out;
  RawRecord cur;
  std::size_t ordinal = 0;
  auto flush = [&] {
    if (!cur.fields.empty()) {
      cur.ordinal = ++ordinal;
      out.push_back(std::move(cur));
    }
    cur = RawRecord{};
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw LexiconError("expected 'Key: Value', got '" + line + "'", ordinal + 1);
    cur.fields.emplace_back(trim(std::string_view(line).substr(0, colon)),
                            trim(std::string_view(line).substr(colon + 1)));
  }
  flush();
  return out;
}

std::pair<Modality, bool> parse_lexicon_modality(const std::string& v, std::size_t ordinal) {
  try {
    if (v != "Negation" && v.size() > 8 && v.ends_with("Negation"))
      return {parse_modality(std::string_view(v).substr(0, v.size() - 8)), true};
    return {parse_modality(v), false};
  } catch (const TagError&) {
    throw LexiconError("unknown modality '" + v + "'", ordinal);
  }
}

LexiconEntry build_entry(const RawRecord& rec) {
  LexiconEntry e;
  std::optional<std::string> surface, pos, modality, trigger;
  for (const auto& [key, value] : rec.fields) {
    if (iequals(key, "String")) {
      surface = value;
    } else if (iequals(key, "Pos")) {
      pos = value;
    } else if (iequals(key, "Modality")) {
      modality = value;
    } else if (iequals(key, "Trigger")) {
      trigger = value;
    } else if (iequals(key, "Subcat")) {
      std::size_t sep = value.find(" -- ");
      Subcat sc;
      if (sep == std::string::npos) {
        sc.code = value;
      } else {
        sc.code = trim(std::string_view(value).substr(0, sep));
        sc.example = trim(std::string_view(value).substr(sep + 4));
      }
      if (sc.code.empty()) throw LexiconError("empty Subcat code", rec.ordinal);
      e.subcats.push_back(std::move(sc));
    } else if (iequals(key, "Forms")) {
      e.forms = value;
    } else {
      e.extras.emplace_back(key, value);
    }
  }
  if (!surface || surface->empty()) throw LexiconError("missing String", rec.ordinal);
  if (!modality) throw LexiconError("missing Modality", rec.ordinal);
  if (!pos) throw LexiconError("missing Pos", rec.ordinal);

  e.surface = *surface;
  e.words = split_ws(e.surface);
  e.pos = split_ws(*pos);
  if (e.pos.size() != e.words.size())
    throw LexiconError("Pos has " + std::to_string(e.pos.size()) + " tags for " + std::to_string(e.words.size()) +
                           " words",
                       rec.ordinal);
  std::tie(e.modality, e.inherent_negation) = parse_lexicon_modality(*modality, rec.ordinal);
  e.head = trigger ? *trigger : e.words.front();
  if (std::none_of(e.words.begin(), e.words.end(), [&](auto& w) { return iequals(w, e.head); }))
    throw LexiconError("Trigger '" + e.head + "' is not a word of '" + e.surface + "'", rec.ordinal);
  if (e.forms) {
    try {
      english::parse_verb_forms(*e.forms);
    } catch (const std::invalid_argument& ex) {
      throw LexiconError(ex.what(), rec.ordinal);
    }
  }
  if (e.is_verbal() && e.subcats.empty())
    throw LexiconError("verbal entry '" + e.surface + "' has no Subcat", rec.ordinal);
  return e;
}

}  // namespace

std::size_t LexiconEntry::head_index() const {
  for (std::size_t i = 0; i < words.size(); ++i)
    if (iequals(words[i], head)) return i;
  return 0;
}

bool LexiconEntry::is_verbal() const { return head_pos().starts_with("VB"); }

english::VerbForms LexiconEntry::head_forms() const {
  if (forms) return english::parse_verb_forms(*forms);
  return english::inflect_verb(words.at(head_index()));
}

MNTag LexiconEntry::trigger_tag() const {
  if (modality == Modality::Negation) return MNTag{Role::Trigger, false, Modality::Negation, false};
  return canonicalize(MNTag{Role::Trigger, false, modality, inherent_negation});
}

MNTag LexiconEntry::target_tag() const {
  MNTag t = trigger_tag();
  t.role = Role::Target;
  return t;
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries) : entries_(std::move(entries)) { build_index(); }

void Lexicon::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const LexiconEntry& e = entries_[i];
    std::vector<std::string> words;
    for (const auto& w : e.words) words.push_back(english::lowercase(w));

    std::vector<std::pair<std::string, std::string>> head_variants;
    const std::string& hp = e.head_pos();
    std::size_t h = e.head_index();
    if (hp == "VB") {
      head_variants = english::verb_form_tags(e.head_forms());
    } else if (hp == "NN") {
      head_variants = {{words[h], "NN"}, {english::pluralize(words[h]), "NNS"}};
    } else {
      head_variants = {{words[h], hp}};
    }

    std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> seen;
    for (const auto& [form, tag] : head_variants) {
      Variant v{i, words, e.pos};
      v.words[h] = form;
      v.pos[h] = tag;
      if (!seen.insert({v.words, v.pos}).second) continue;
      index_[v.words.front()].push_back(std::move(v));
    }
  }
}

std::vector<LexiconMatch> Lexicon::lookup(std::span<const PosToken> tokens, std::size_t position) const {
  std::vector<LexiconMatch> out;
  if (position >= tokens.size()) return out;
  auto it = index_.find(english::lowercase(tokens[position].word));
  if (it == index_.end()) return out;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Variant& v : it->second) {
    std::size_t n = v.words.size();
    if (position + n > tokens.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      const PosToken& t = tokens[position + k];
      ok = t.pos == v.pos[k] && english::lowercase(t.word) == v.words[k];
    }
    if (ok && seen.insert({v.entry, n}).second) out.push_back(LexiconMatch{&entries_[v.entry], position, n});
  }
  std::stable_sort(out.begin(), out.end(), [&](const LexiconMatch& a, const LexiconMatch& b) {
    if (a.length != b.length) return a.length > b.length;
    return a.entry < b.entry;
  });
  return out;
}

Lexicon load_lexicon(std::string_view text) {
  std::vector<LexiconEntry> entries;
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  for (const RawRecord& rec : split_records(text)) {
    LexiconEntry e = build_entry(rec);
    std::string pos;
    for (const auto& p : e.pos) pos += p + " ";
    std::string key_mod = std::string(modality_name(e.modality)) + (e.inherent_negation ? "Negation" : "");
    if (!keys.insert({english::lowercase(e.surface), pos, key_mod}).second)
      throw LexiconError("duplicate entry '" + e.surface + "' / " + pos + "/ " + key_mod, rec.ordinal);
    entries.push_back(std::move(e));
  }
  return Lexicon(std::move(entries));
}

std::string serialize_lexicon(const Lexicon& lexicon) {
  std::string out;
  bool first = true;
  for (const LexiconEntry& e : lexicon.entries()) {
    if (!first) out += '\n';
    first = false;
    out += "String: " + e.surface + "\n";
    out += "Pos:";
    for (const auto& p : e.pos) out += " " + p;
    out += "\n";
    out += "Modality: " + std::string(modality_name(e.modality)) + (e.inherent_negation ? "Negation" : "") + "\n";
    out += "Trigger: " + e.head + "\n";
    for (const auto& sc : e.subcats) {
      out += "Subcat: " + sc.code;
      if (!sc.example.empty()) out += " -- " + sc.example;
      out += "\n";
    }
    if (e.forms) out += "Forms: " + *e.forms + "\n";
    for (const auto& [k, v] : e.extras) out += k + ": " + v + "\n";
  }
  return out;
}

}  // namespace mn
