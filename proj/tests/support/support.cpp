#include "support.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace mn::testing {

namespace {

constexpr std::array<const char*, 6> kPhrase = {"S", "NP", "VP", "PP", "SBAR", "ADJP"};
constexpr std::array<const char*, 9> kPos = {"NN", "VB", "VBN", "DT", "IN", "MD", "JJ", "RB", "TO"};
constexpr std::array<const char*, 10> kWords = {"the", "a", "can", "be", "was", "required", "to", "not", "go", "Need"};
constexpr std::array<const char*, 5> kMarkers = {"AUX", "VoicePassive", "TrigAble", "TargAble", "TrigNegation"};
constexpr std::array<const char*, 3> kNe = {"GPE", "PER", "ORG"};

template <class A>
const char* pick(Rng& rng, const A& a) {
  return a[std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng)];
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

ParseTree gen(Rng& rng, std::size_t budget, const TreeGenOptions& opt) {
  ParseTree t;
  if (budget <= 1 || coin(rng, 0.3)) {
    std::string word = pick(rng, kWords);
    if (opt.awkward && coin(rng, 0.15)) word = coin(rng, 0.5) ? "(" : ")";
    t = ParseTree::leaf(pick(rng, kPos), word);
  } else {
    std::size_t remaining = budget - 1;
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, remaining))(rng);
    std::vector<ParseTree> kids;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t after = k - i - 1;
      std::size_t cap = remaining - after;
      std::size_t cb = std::uniform_int_distribution<std::size_t>(1, cap)(rng);
      kids.push_back(gen(rng, cb, opt));
      remaining -= kids.back().node_count();
    }
    std::string label = pick(rng, kPhrase);
    if (opt.awkward && coin(rng, 0.2)) label += "-TargNOTAble";
    t = ParseTree::node(label, std::move(kids));
  }
  if (opt.marker_rate > 0 && coin(rng, opt.marker_rate)) t.add_marker(pick(rng, kMarkers));
  return t;
}

struct PatternGen {
  Rng& rng;
  std::size_t budget;
  int next_capture = 0;

  LabelTest test() {
    LabelTest t;
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t i = 0; i < n; ++i) {
      LabelTest::Alternative a;
      double r = std::uniform_real_distribution<double>(0, 1)(rng);
      if (r < 0.6) {
        a.text = coin(rng, 0.5) ? pick(rng, kPhrase) : pick(rng, kPos);
      } else if (r < 0.75) {
        a.prefix = true;
        a.text = pick(rng, std::array<const char*, 4>{"V", "N", "Trig", "Targ"});
      } else if (r < 0.9) {
        a.text = pick(rng, kWords);
      } else {
        a.text = pick(rng, kMarkers);
      }
      t.alternatives.push_back(a);
    }
    return t;
  }

  PatternNode node(std::size_t depth) {
    PatternNode n;
    n.test = test();
    if (coin(rng, 0.4)) n.capture = "c" + std::to_string(next_capture++);
    while (budget > 0 && depth < 3 && coin(rng, 0.6)) {
      --budget;
      Clause c;
      double r = std::uniform_real_distribution<double>(0, 1)(rng);
      if (r < 0.15) {
        c.relation = Relation::DominatesLeaf;
        c.leaf = pick(rng, coin(rng, 0.8) ? std::vector<const char*>(kWords.begin(), kWords.end())
                                          : std::vector<const char*>(kMarkers.begin(), kMarkers.end()));
      } else {
        c.relation = r < 0.6 ? Relation::Dominates : Relation::SisterPrecedes;
        c.negated = coin(rng, 0.3);
        c.operand = node(depth + 1);
      }
      n.clauses.push_back(std::move(c));
    }
    return n;
  }
};

bool ieq(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

bool label_ok(const LabelTest& t, const std::string& label) {
  std::string base = label.substr(0, label.find('-'));
  for (const auto& a : t.alternatives)
    if (a.prefix ? label.rfind(a.text, 0) == 0 : (label == a.text || base == a.text)) return true;
  return false;
}

bool terminal_ok(const LabelTest& t, const std::string& s, bool word) {
  for (const auto& a : t.alternatives)
    if (a.prefix ? s.rfind(a.text, 0) == 0 : (word ? ieq(s, a.text) : s == a.text)) return true;
  return false;
}

void positive_captures(const PatternNode& p, std::vector<std::string>& out) {
  if (p.capture) out.push_back(*p.capture);
  for (const auto& c : p.clauses)
    if (!c.negated && c.relation != Relation::DominatesLeaf) positive_captures(c.operand, out);
}

struct Oracle {
  const ParseTree& tree;
  const std::map<std::string, NodePath>& assign;

  bool sat(const PatternNode& p, const NodePath& path, bool positive) const {
    const ParseTree& node = tree.at(path);
    if (!label_ok(p.test, node.label())) return false;
    if (p.capture && positive && assign.at(*p.capture) != path) return false;
    for (const auto& c : p.clauses) {
      if (c.relation == Relation::DominatesLeaf) {
        bool hit = (node.is_leaf() && ieq(node.token(), c.leaf));
        for (const auto& m : node.markers()) hit = hit || m == c.leaf;
        if (!hit) return false;
        continue;
      }
      bool bare = !c.operand.capture && c.operand.clauses.empty();
      bool inner_positive = positive && !c.negated;
      bool exists = false;
      if (c.relation == Relation::Dominates) {
        for (std::size_t i = 0; i < node.num_children() && !exists; ++i) {
          NodePath cp = path;
          cp.push_back(i);
          exists = sat(c.operand, cp, inner_positive);
        }
        if (bare && node.is_leaf()) exists = exists || terminal_ok(c.operand.test, node.token(), true);
        if (bare)
          for (const auto& m : node.markers()) exists = exists || terminal_ok(c.operand.test, m, false);
      } else if (!path.empty()) {
        NodePath parent(path.begin(), path.end() - 1);
        const ParseTree& pn = tree.at(parent);
        for (std::size_t i = path.back() + 1; i < pn.num_children() && !exists; ++i) {
          NodePath sp = parent;
          sp.push_back(i);
          exists = sat(c.operand, sp, inner_positive);
        }
      }
      if (exists == c.negated) return false;
    }
    return true;
  }
};

void collect_positions(const ParseTree& t, std::size_t& next, std::vector<std::vector<std::size_t>>& out,
                       std::vector<NodePath>& paths, NodePath& path) {
  std::size_t me = out.size();
  out.emplace_back();
  paths.push_back(path);
  if (t.is_leaf()) {
    out[me].push_back(next++);
    return;
  }
  for (std::size_t i = 0; i < t.num_children(); ++i) {
    std::size_t child = out.size();
    path.push_back(i);
    collect_positions(t.child(i), next, out, paths, path);
    path.pop_back();
    // Gather the child's positions plus any of its descendants.
    for (std::size_t k = child; k < out.size(); ++k)
      if (paths[k].size() == path.size() + 1) out[me].insert(out[me].end(), out[k].begin(), out[k].end());
  }
}

}  // namespace

ParseTree random_tree(Rng& rng, const TreeGenOptions& opt) { return gen(rng, opt.max_nodes, opt); }

PatternNode random_pattern(Rng& rng, std::size_t max_clauses) {
  PatternGen g{rng, max_clauses};
  return g.node(0);
}

std::vector<Match> brute_force_match(const PatternNode& pattern, const ParseTree& tree) {
  std::vector<std::string> caps;
  positive_captures(pattern, caps);
  auto nodes = enumerate_nodes(tree);
  std::vector<Match> out;
  for (const auto& root : nodes) {
    std::set<Match> here;
    std::vector<std::size_t> choice(caps.size(), 0);
    while (true) {
      std::map<std::string, NodePath> assign;
      for (std::size_t k = 0; k < caps.size(); ++k) assign[caps[k]] = nodes[choice[k]].path;
      Oracle o{tree, assign};
      if (o.sat(pattern, root.path, true)) here.insert(Match{root.path, assign});
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == nodes.size()) choice[k++] = 0;
      if (k == choice.size()) break;
    }
    out.insert(out.end(), here.begin(), here.end());
  }
  return out;
}

SpanClass brute_force_classify(const ParseTree& tree, const Span& span) {
  std::vector<std::vector<std::size_t>> pos;
  std::vector<NodePath> paths;
  NodePath path;
  std::size_t next = 0;
  collect_positions(tree, next, pos, paths, path);
  std::vector<std::size_t> want;
  for (std::size_t i = span.start; i < span.end; ++i) want.push_back(i);

  std::optional<std::size_t> exact;
  for (std::size_t n = 0; n < pos.size(); ++n)
    if (pos[n] == want && (!exact || paths[n].size() < paths[*exact].size())) exact = n;
  if (exact) return SpanClass{SpanClass::Kind::Exact, paths[*exact], 0, 0};

  for (std::size_t n = 0; n < pos.size(); ++n) {
    const ParseTree& node = tree.at(paths[n]);
    for (std::size_t i = 0; i < node.num_children(); ++i) {
      std::vector<std::size_t> acc;
      for (std::size_t j = i; j < node.num_children(); ++j) {
        NodePath cp = paths[n];
        cp.push_back(j);
        auto it = std::find(paths.begin(), paths.end(), cp);
        const auto& cpos = pos[static_cast<std::size_t>(it - paths.begin())];
        acc.insert(acc.end(), cpos.begin(), cpos.end());
        if (j > i && acc == want) return SpanClass{SpanClass::Kind::AdjacentDaughters, paths[n], i, j};
      }
    }
  }
  // Crossing: report the deepest node covering the span.
  std::size_t deepest = 0;
  for (std::size_t n = 0; n < pos.size(); ++n) {
    bool covers = std::includes(pos[n].begin(), pos[n].end(), want.begin(), want.end());
    if (covers && paths[n].size() >= paths[deepest].size()) deepest = n;
  }
  return SpanClass{SpanClass::Kind::Crossing, paths[deepest], 0, 0};
}

bool is_flat(const ParseTree& tree) {
  std::function<bool(const ParseTree&)> ok = [&](const ParseTree& n) {
    std::string_view p = n.base_category();
    for (const auto& c : n.children()) {
      if (!c.is_leaf()) {
        std::string_view b = c.base_category();
        if (b == "VP" && (p == "VP" || p == "S")) return false;
        if (b == "NP" && (p == "PP" || p == "NP")) return false;
      }
      if (!ok(c)) return false;
    }
    return true;
  };
  return ok(tree);
}

std::vector<StandoffAnnotation> random_annotations(Rng& rng, const ParseTree& tree, std::size_t count) {
  std::size_t n = tree.leaf_count();
  auto inv = tag_inventory(Role::Target);
  std::vector<StandoffAnnotation> out;
  // Now and then plant a trigger, an adjacent negation and a later target
  // of the same modality, the shape negation composition looks for.
  if (count >= 3 && n >= 3 && coin(rng, 0.4)) {
    std::size_t p = std::uniform_int_distribution<std::size_t>(0, n - 3)(rng);
    std::size_t q = std::uniform_int_distribution<std::size_t>(p + 2, n - 1)(rng);
    MNTag trig{Role::Trigger, false, inv[std::uniform_int_distribution<std::size_t>(0, inv.size() - 2)(rng)].modality,
               false};
    if (trig.modality == Modality::Negation) trig.modality = Modality::Able;
    MNTag targ = trig;
    targ.role = Role::Target;
    out.push_back({0, {p, p + 1}, trig.to_string(), Family::MN});
    out.push_back({0, {p + 1, p + 2}, "TrigNegation", Family::MN});
    out.push_back({0, {q, q + 1}, targ.to_string(), Family::MN});
    if (coin(rng, 0.5)) out.push_back({0, {q, q + 1}, "TargNegation", Family::MN});
  }
  while (out.size() < count) {
    StandoffAnnotation a;
    a.span.start = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    a.span.end = std::uniform_int_distribution<std::size_t>(a.span.start + 1, std::min(n, a.span.start + 3))(rng);
    if (coin(rng, 0.3)) {
      a.family = Family::NE;
      a.label = pick(rng, kNe);
    } else {
      MNTag t = inv[std::uniform_int_distribution<std::size_t>(0, inv.size() - 1)(rng)];
      if (coin(rng, 0.5)) t.role = Role::Trigger;
      a.label = t.to_string();
    }
    out.push_back(a);
  }
  return out;
}

bool is_semantic_label(const std::string& segment) {
  MNTag t;
  return try_parse_tag(segment, t) || std::find(kNe.begin(), kNe.end(), segment) != kNe.end();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mn::testing
