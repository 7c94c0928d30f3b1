#include "mn/taggers.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include "mn/english.hpp"
#include "mn/rulegen.hpp"

namespace mn {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::size_t parse_index(const std::string& s, std::size_t line, const char* what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw StandoffError(std::string("bad ") + what + " '" + s + "'", line);
  return std::stoul(s);
}

// Precedence order for tags sharing a node or span: rank, then triggers
// before targets. Labels that are not MN tags sort after all MN tags.
std::tuple<int, int, std::string> tag_key(const std::string& label) {
  MNTag t;
  if (try_parse_tag(label, t)) return {specificity_rank(t), t.role == Role::Trigger ? 0 : 1, label};
  return {kInventorySize, 2, label};
}

bool key_less(const std::string& a, const std::string& b) { return tag_key(a) < tag_key(b); }

bool is_negation(const MNTag& t) { return t.modality == Modality::Negation; }

void collect_markers(const ParseTree& node, const ParseTree& root, NodePath& path, std::size_t sentence,
                     std::set<StandoffAnnotation>& out) {
  for (const auto& m : node.markers()) {
    MNTag t;
    if (try_parse_tag(m, t)) out.insert(StandoffAnnotation{sentence, node_span(root, path), m, Family::MN});
  }
  for (std::size_t i = 0; i < node.num_children(); ++i) {
    path.push_back(i);
    collect_markers(node.child(i), root, path, sentence, out);
    path.pop_back();
  }
}

void fold_into(ParseTree& node) {
  std::vector<std::string> tags, kept;
  for (const auto& m : node.markers()) {
    MNTag t;
    if (try_parse_tag(m, t)) {
      if (std::find(tags.begin(), tags.end(), m) == tags.end()) tags.push_back(m);
    } else if (m != kAuxMarker && m != kPassiveMarker) {
      kept.push_back(m);
    }
  }
  std::sort(tags.begin(), tags.end(), key_less);
  std::string label = node.label();
  for (const auto& t : tags)
    if (!label.ends_with("-" + t) && label.find("-" + t + "-") == std::string::npos) label += "-" + t;
  node.set_label(label);
  node.mutable_markers() = kept;
  for (auto& c : node.mutable_children()) fold_into(c);
}

}  // namespace

std::string_view family_name(Family f) { return f == Family::MN ? "MN" : "NE"; }

Family parse_family(std::string_view s) {
  if (s == "MN") return Family::MN;
  if (s == "NE") return Family::NE;
  throw std::invalid_argument("unknown annotation family '" + std::string(s) + "'");
}

std::vector<StandoffAnnotation> read_standoff(std::string_view text) {
  std::vector<StandoffAnnotation> out;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t lineno = i + 1;
    if (lines[i].empty() || lines[i].front() == '#') continue;
    auto f = split_tabs(lines[i]);
    if (f.size() != 5) throw StandoffError("expected 5 tab-separated fields", lineno);
    StandoffAnnotation a;
    a.sentence = parse_index(f[0], lineno, "sentence index");
    a.span.start = parse_index(f[1], lineno, "start");
    a.span.end = parse_index(f[2], lineno, "end");
    if (a.span.start >= a.span.end) throw StandoffError("empty span", lineno);
    a.label = f[3];
    if (a.label.empty() || !is_valid_label(a.label)) throw StandoffError("bad label '" + f[3] + "'", lineno);
    try {
      a.family = parse_family(f[4]);
      if (a.family == Family::MN) parse_tag(a.label);
    } catch (const std::exception& e) {
      throw StandoffError(e.what(), lineno);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::string write_standoff(std::span<const StandoffAnnotation> annotations) {
  std::string out;
  for (const auto& a : annotations) {
    out += std::to_string(a.sentence) + '\t' + std::to_string(a.span.start) + '\t' + std::to_string(a.span.end) +
           '\t' + a.label + '\t' + std::string(family_name(a.family)) + '\n';
  }
  return out;
}

std::vector<std::vector<TaggedToken>> read_token_tsv(std::string_view text) {
  std::vector<std::vector<TaggedToken>> out;
  std::vector<TaggedToken> cur;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string_view::npos) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    auto f = split_tabs(lines[i]);
    if (f.size() != 2 || f[0].empty() || f[1].empty())
      throw StandoffError("expected 'token<TAB>POS'", i + 1);
    cur.push_back(TaggedToken{f[0], f[1], {}});
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<StandoffAnnotation> link_annotations(std::span<const Link> links, std::size_t sentence) {
  std::set<StandoffAnnotation> out;
  for (const auto& l : links) {
    out.insert({sentence, l.trigger, l.trigger_tag.to_string(), Family::MN});
    if (l.target && l.target_tag) out.insert({sentence, *l.target, l.target_tag->to_string(), Family::MN});
  }
  return {out.begin(), out.end()};
}

std::vector<StandoffAnnotation> compose_links(std::span<const Link> links, std::size_t sentence) {
  std::vector<std::optional<MNTag>> targets;
  for (const auto& l : links) targets.push_back(l.target_tag);
  std::vector<bool> absorbed(links.size(), false);

  auto modal_with_target = [&](std::size_t i) {
    return !is_negation(links[i].trigger_tag) && links[i].target && targets[i];
  };
  for (std::size_t n = 0; n < links.size(); ++n) {
    const Link& neg = links[n];
    if (!is_negation(neg.trigger_tag) || !neg.target) continue;
    const Span t = *neg.target;
    std::optional<std::size_t> host;
    // A modality trigger ... NOT ... shared target.
    for (std::size_t i = 0; i < links.size() && !host; ++i)
      if (modal_with_target(i) && *links[i].target == t && links[i].trigger.end <= neg.trigger.start &&
          neg.trigger.end <= t.start)
        host = i;
    // NOT scoping over a modality trigger.
    for (std::size_t i = 0; i < links.size() && !host; ++i)
      if (modal_with_target(i) && links[i].trigger == t) host = i;
    if (!host) continue;
    targets[*host] = compose_negation(*targets[*host], true);
    absorbed[n] = true;
  }
  std::set<StandoffAnnotation> out;
  for (std::size_t i = 0; i < links.size(); ++i) {
    out.insert({sentence, links[i].trigger, links[i].trigger_tag.to_string(), Family::MN});
    if (links[i].target && targets[i] && !absorbed[i])
      out.insert({sentence, *links[i].target, targets[i]->to_string(), Family::MN});
  }
  return {out.begin(), out.end()};
}

bool is_auxiliary_at(std::span<const TaggedToken> tokens, std::size_t i) {
  const TaggedToken& t = tokens[i];
  if (base_category(t.pos) == "MD") return true;
  if (!english::is_verbal_pos(t.pos) || !english::is_auxiliary_verb_form(t.token)) return false;
  std::size_t j = i + 1;
  while (j < tokens.size() && tokens[j].pos.starts_with("RB")) ++j;
  return j < tokens.size() && english::is_verbal_pos(tokens[j].pos);
}

StringTagResult tag_string(std::span<const TaggedToken> tokens, const Lexicon& lexicon, std::size_t sentence) {
  StringTagResult r;
  std::vector<PosToken> keys;
  keys.reserve(tokens.size());
  for (const auto& t : tokens) keys.push_back({t.token, t.pos});
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (const auto& m : lexicon.lookup(keys, i)) {
      // The head word is the trigger; the target search starts after the whole match.
      std::size_t head = m.start + m.entry->head_index();
      Link link{Span{head, head + 1}, m.entry->trigger_tag(), std::nullopt, std::nullopt};
      for (std::size_t j = m.start + m.length; j < tokens.size(); ++j) {
        if (english::is_verbal_pos(tokens[j].pos) && !is_auxiliary_at(tokens, j)) {
          link.target = Span{j, j + 1};
          link.target_tag = m.entry->target_tag();
          break;
        }
      }
      if (!link.target)
        r.diagnostics.push_back("sentence " + std::to_string(sentence) + ": trigger '" + m.entry->surface +
                                "' at token " + std::to_string(i) + " has no following main verb");
      r.links.push_back(std::move(link));
    }
  }
  r.annotations = compose_links(r.links, sentence);
  std::vector<std::string> words;
  for (const auto& t : tokens) words.push_back(t.token);
  r.tokens = tokens_from(words, r.annotations);
  for (std::size_t i = 0; i < tokens.size(); ++i) r.tokens[i].pos = tokens[i].pos;
  return r;
}

ParseTree prepare_tree(const ParseTree& tree) { return preprocess(flatten(tree)); }

StructureTagResult tag_structure(const ParseTree& tree, std::span<const PatternRule> rules, std::size_t sentence) {
  StructureTagResult r;
  ParseTree cur = tree;
  struct Pending {
    NodePath trigger;
    MNTag trigger_tag;
    std::optional<NodePath> target;
    std::optional<MNTag> target_tag;
  };
  std::vector<Pending> pending;
  for (const auto& rule : rules) {
    ApplyResult ar = apply(rule, cur);
    cur = std::move(ar.tree);
    for (const auto& m : ar.applied) {
      Pending p;
      bool has_trigger = false;
      for (const auto& a : rule.actions) {
        MNTag t;
        if (a.kind != Action::Kind::InsertDaughter || !try_parse_tag(a.payload, t)) continue;
        if (t.role == Role::Trigger) {
          p.trigger = m.captures.at(a.capture);
          p.trigger_tag = t;
          has_trigger = true;
        } else {
          p.target = m.captures.at(a.capture);
          p.target_tag = t;
        }
      }
      if (has_trigger) pending.push_back(std::move(p));
    }
  }
  // Markers never move nodes, so paths stay valid in the final tree.
  for (const auto& p : pending) {
    Link l{node_span(cur, p.trigger), p.trigger_tag, std::nullopt, p.target_tag};
    if (p.target) l.target = node_span(cur, *p.target);
    r.links.push_back(std::move(l));
  }
  std::set<StandoffAnnotation> anns;
  NodePath path;
  collect_markers(cur, cur, path, sentence, anns);
  r.annotations.assign(anns.begin(), anns.end());
  r.tree = fold_markers(cur);
  r.marked = std::move(cur);
  return r;
}

ParseTree fold_markers(const ParseTree& tree) {
  ParseTree out = tree;
  fold_into(out);
  return out;
}

std::vector<TaggedToken> tokens_from(std::span<const std::string> words,
                                     std::span<const StandoffAnnotation> annotations) {
  std::vector<TaggedToken> out;
  for (const auto& w : words) out.push_back(TaggedToken{w, "", {}});
  for (const auto& a : annotations) {
    MNTag t;
    if (a.family != Family::MN || !try_parse_tag(a.label, t)) continue;
    for (std::size_t i = a.span.start; i < a.span.end && i < out.size(); ++i) out[i].tags.push_back(t);
  }
  for (auto& t : out) {
    std::sort(t.tags.begin(), t.tags.end());
    t.tags.erase(std::unique(t.tags.begin(), t.tags.end()), t.tags.end());
  }
  return out;
}

std::string render_inline(std::span<const std::string> words, std::span<const StandoffAnnotation> annotations) {
  std::map<Span, std::vector<std::string>> raw;
  for (const auto& a : annotations)
    if (a.span.end <= words.size() && a.span.start < a.span.end) raw[a.span].push_back(a.label);

  auto outer_first = [](const Span& x, const Span& y) {
    return x.start != y.start ? x.start < y.start : x.end > y.end;
  };
  std::vector<Span> order;
  for (const auto& [s, _] : raw) order.push_back(s);
  std::sort(order.begin(), order.end(), outer_first);

  std::map<Span, std::vector<std::string>> spans;
  std::vector<Span> stack;
  for (const Span& s0 : order) {
    Span s = s0;
    while (!stack.empty() && stack.back().end <= s.start) stack.pop_back();
    if (!stack.empty() && s.end > stack.back().end) s = Span{s.start, s.start + 1};
    auto& labels = spans[s];
    labels.insert(labels.end(), raw[s0].begin(), raw[s0].end());
    stack.push_back(s);
  }

  std::vector<std::string> opens(words.size());
  std::vector<std::size_t> closes(words.size(), 0);
  std::vector<Span> final_order;
  for (const auto& [s, _] : spans) final_order.push_back(s);
  std::sort(final_order.begin(), final_order.end(), outer_first);
  for (const Span& s : final_order) {
    auto labels = spans[s];
    std::sort(labels.begin(), labels.end(), key_less);
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (const auto& l : labels) opens[s.start] += "<" + l + " ";
    closes[s.end - 1] += labels.size();
  }
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += opens[i] + words[i] + std::string(closes[i], '>');
  }
  return out;
}

std::string render_inline(std::span<const TaggedToken> tokens) {
  std::vector<std::string> words;
  std::vector<StandoffAnnotation> anns;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    words.push_back(tokens[i].token);
    for (const auto& t : tokens[i].tags) anns.push_back({0, Span{i, i + 1}, t.to_string(), Family::MN});
  }
  return render_inline(words, anns);
}

InlineSentence parse_inline(std::string_view text, std::size_t sentence) {
  InlineSentence out;
  std::vector<std::pair<std::string, std::size_t>> open;
  std::istringstream in{std::string(text)};
  std::string piece;
  while (in >> piece) {
    if (piece.size() > 1 && piece.front() == '<') {
      open.emplace_back(piece.substr(1), out.words.size());
      continue;
    }
    std::size_t k = 0;
    while (k < piece.size() - 1 && piece[piece.size() - 1 - k] == '>') ++k;
    out.words.push_back(piece.substr(0, piece.size() - k));
    for (std::size_t c = 0; c < k; ++c) {
      if (open.empty()) throw std::invalid_argument("unbalanced '>' after '" + out.words.back() + "'");
      auto [label, start] = open.back();
      open.pop_back();
      MNTag t;
      Family f = try_parse_tag(label, t) ? Family::MN : Family::NE;
      out.annotations.push_back({sentence, Span{start, out.words.size()}, label, f});
    }
  }
  if (!open.empty()) throw std::invalid_argument("unclosed '<" + open.back().first + "'");
  std::sort(out.annotations.begin(), out.annotations.end());
  return out;
}

AgreementReport agreement(std::span<const StandoffAnnotation> a, std::size_t sentences_a,
                          std::span<const StandoffAnnotation> b, std::size_t sentences_b) {
  if (sentences_a != sentences_b)
    throw std::invalid_argument("sentence counts differ: " + std::to_string(sentences_a) + " vs " +
                                std::to_string(sentences_b));
  for (auto side : {a, b})
    for (const auto& x : side)
      if (x.sentence >= sentences_a)
        throw std::invalid_argument("annotation for sentence " + std::to_string(x.sentence) + " beyond " +
                                    std::to_string(sentences_a) + " sentences");
  AgreementReport r;
  r.sentences = sentences_a;
  using Pair = std::pair<std::size_t, std::string>;
  using Triple = std::tuple<std::size_t, Span, std::string>;
  std::set<Pair> pa, pb;
  std::set<Triple> ta, tb;
  for (const auto& x : a) {
    pa.insert({x.sentence, x.label});
    ta.insert({x.sentence, x.span, x.label});
  }
  for (const auto& x : b) {
    pb.insert({x.sentence, x.label});
    tb.insert({x.sentence, x.span, x.label});
  }
  std::size_t inter = 0;
  for (const auto& p : pa) inter += pb.count(p);
  std::size_t uni = pa.size() + pb.size() - inter;
  r.sentence_level = uni ? static_cast<double>(inter) / static_cast<double>(uni) : 1.0;
  for (const auto& t : ta) {
    auto& s = r.per_tag[std::get<2>(t)];
    ++s.in_a;
    if (tb.contains(t)) ++s.both;
  }
  for (const auto& t : tb) ++r.per_tag[std::get<2>(t)].in_b;
  return r;
}

std::string format_agreement(const AgreementReport& r) {
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof buf, "sentences: %zu\nagreement: %.1f\n", r.sentences, 100.0 * r.sentence_level);
  out += buf;
  for (const auto& [label, s] : r.per_tag) {
    std::snprintf(buf, sizeof buf, "%s\tprecision %.1f\trecall %.1f\t(%zu/%zu/%zu)\n", label.c_str(),
                  100.0 * s.precision(), 100.0 * s.recall(), s.both, s.in_a, s.in_b);
    out += buf;
  }
  return out;
}

}  // namespace mn
