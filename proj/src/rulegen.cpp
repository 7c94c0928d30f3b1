#include "mn/rulegen.hpp"

#include <algorithm>

#include "mn/english.hpp"

namespace mn {

namespace {

bool is_verbal_node(const ParseTree& n) {
  return english::is_verbal_pos(n.label()) || n.base_category() == "VP";
}

void preprocess_into(ParseTree& node) {
  auto& kids = node.mutable_children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    ParseTree& k = kids[i];
    if (!k.is_leaf()) continue;
    if (english::is_verbal_pos(k.label()) && english::is_auxiliary_verb_form(k.token()) &&
        !k.has_marker(kAuxMarker)) {
      bool verbal_follows = std::any_of(kids.begin() + static_cast<std::ptrdiff_t>(i) + 1, kids.end(),
                                        [](const ParseTree& s) { return is_verbal_node(s); });
      if (verbal_follows) k.add_marker(std::string(kAuxMarker));
    }
    if (k.base_category() == "VBN" && !k.has_marker(kPassiveMarker)) {
      for (std::size_t j = i; j-- > 0;) {
        if (!is_verbal_node(kids[j])) continue;
        if (kids[j].is_leaf() && english::is_be_form(kids[j].token())) k.add_marker(std::string(kPassiveMarker));
        break;
      }
    }
  }
  for (auto& k : kids) preprocess_into(k);
}

std::string substitute(std::string_view src, const std::map<std::string, std::string>& b) {
  std::string out;
  std::size_t i = 0;
  while (i < src.size()) {
    if (src[i] == '{') {
      auto close = src.find('}', i);
      if (close != std::string_view::npos) {
        auto it = b.find(std::string(src.substr(i + 1, close - i - 1)));
        if (it != b.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += src[i++];
  }
  return out;
}

void add_unique(std::vector<std::string>& v, std::string s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

}  // namespace

ParseTree preprocess(const ParseTree& tree) {
  ParseTree out = tree;
  preprocess_into(out);
  return out;
}

void TemplateRegistry::add(Template t) {
  if (by_name_.contains(t.name)) throw TemplateError("duplicate template '" + t.name + "'");
  by_name_.emplace(t.name, templates_.size());
  templates_.push_back(std::move(t));
}

const Template* TemplateRegistry::find(std::string_view code) const {
  auto it = by_name_.find(code);
  return it == by_name_.end() ? nullptr : &templates_[it->second];
}

TemplateRegistry load_templates(std::string_view text) {
  TemplateRegistry reg;
  std::string record;
  std::string name;
  auto flush = [&] {
    if (record.empty() && name.empty()) return;
    if (name.empty()) throw TemplateError("template record without a Name: line");
    for (const char* ph : {"{TRIG}", "{TARG}"})
      if (record.find(ph) == std::string::npos) throw TemplateError("template '" + name + "' lacks " + ph);
    if (record.find("{WORD}") == std::string::npos && record.find("{FORMS}") == std::string::npos &&
        record.find("{PPT}") == std::string::npos)
      throw TemplateError("template '" + name + "' never mentions the trigger word");
    Template t{name, record};
    std::map<std::string, std::string> dummy = {
        {"WORD", "w"}, {"FORMS", "w|ws"}, {"PPT", "wed"}, {"TRIG", "TrigWant"}, {"TARG", "TargWant"}};
    try {
      parse_pattern(substitute(t.source, dummy));
    } catch (const std::exception& e) {
      throw TemplateError("template '" + name + "': " + e.what());
    }
    reg.add(std::move(t));
    record.clear();
    name.clear();
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) {
      flush();
    } else if (line[a] != '#') {
      std::string_view body = line.substr(a);
      if (body.starts_with("Name:")) {
        if (!record.empty() || !name.empty()) flush();
        std::string_view n = body.substr(5);
        n.remove_prefix(std::min(n.find_first_not_of(" \t"), n.size()));
        while (!n.empty() && (n.back() == ' ' || n.back() == '\r' || n.back() == '\t')) n.remove_suffix(1);
        name = std::string(n);
      } else {
        record += std::string(line);
        record += '\n';
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  flush();
  return reg;
}

std::map<std::string, std::string> template_bindings(const LexiconEntry& entry) {
  std::string head = english::lowercase(entry.words.at(entry.head_index()));
  std::vector<std::string> forms;
  std::string ppt = head;
  if (entry.is_verbal()) {
    auto f = entry.head_forms();
    for (const auto& s : {f.base, f.third_singular, f.past, f.past_participle, f.gerund}) add_unique(forms, s);
    ppt = f.past_participle;
  } else {
    forms.push_back(head);
    if (entry.head_pos() == "NN") add_unique(forms, english::pluralize(head));
  }
  std::string joined;
  for (const auto& f : forms) joined += (joined.empty() ? "" : "|") + f;
  return {
      {"WORD", head},
      {"FORMS", joined},
      {"PPT", ppt},
      {"TRIG", entry.trigger_tag().to_string()},
      {"TARG", entry.target_tag().to_string()},
  };
}

PatternRule instantiate(const Template& t, const LexiconEntry& entry) {
  PatternRule rule = parse_pattern(substitute(t.source, template_bindings(entry)));
  rule.name = t.name + ":" + entry.surface;
  return rule;
}

Expansion expand_templates(const Lexicon& lexicon, const TemplateRegistry& registry) {
  Expansion out;
  for (const LexiconEntry& e : lexicon.entries()) {
    for (const Subcat& sc : e.subcats) {
      const Template* t = registry.find(sc.code);
      if (!t) {
        out.unresolved.push_back(e.surface + ": " + sc.code);
        continue;
      }
      out.rules.push_back(instantiate(*t, e));
    }
  }
  return out;
}

}  // namespace mn
