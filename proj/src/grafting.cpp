#include "mn/grafting.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace mn {

namespace {

// Mutable working copy of a tree that remembers which part of a label is
// the grafted semantic tag.
struct GNode {
  std::string base;
  std::string tag;
  bool inserted = false;
  std::optional<std::string> token;
  std::vector<std::string> markers;
  std::vector<GNode> kids;
};

GNode from_tree(const ParseTree& t) {
  GNode g;
  g.base = t.label();
  if (t.is_leaf()) g.token = t.token();
  g.markers.assign(t.markers().begin(), t.markers().end());
  for (const auto& c : t.children()) g.kids.push_back(from_tree(c));
  return g;
}

ParseTree to_tree(const GNode& g) {
  std::string label = g.inserted ? g.tag : (g.tag.empty() ? g.base : g.base + "-" + g.tag);
  ParseTree out;
  if (g.token) {
    out = ParseTree::leaf(label, *g.token);
  } else {
    std::vector<ParseTree> kids;
    for (const auto& k : g.kids) kids.push_back(to_tree(k));
    out = ParseTree::node(label, std::move(kids));
  }
  for (const auto& m : g.markers) out.add_marker(m);
  return out;
}

std::size_t leaves(const GNode& n) {
  if (n.token) return 1;
  std::size_t s = 0;
  for (const auto& k : n.kids) s += leaves(k);
  return s;
}

const std::vector<GNode>& kids_of(const GNode& n) { return n.kids; }
std::span<const ParseTree> kids_of(const ParseTree& n) { return n.children(); }
std::size_t leaves(const ParseTree& n) { return n.leaf_count(); }

template <class N>
SpanClass classify(const N& root, const Span& s) {
  const N* node = &root;
  NodePath path;
  std::size_t offset = 0;
  while (true) {
    std::size_t size = leaves(*node);
    if (offset == s.start && offset + size == s.end) return SpanClass{SpanClass::Kind::Exact, path, 0, 0};
    const auto& kids = kids_of(*node);
    std::optional<std::size_t> first, last;
    std::size_t pos = offset;
    bool descended = false;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      std::size_t n = leaves(kids[i]);
      Span cs{pos, pos + n};
      if (cs.contains(s)) {
        node = &kids[i];
        path.push_back(i);
        offset = pos;
        descended = true;
        break;
      }
      if (cs.start == s.start) first = i;
      if (cs.end == s.end) last = i;
      pos += n;
    }
    if (descended) continue;
    if (first && last) return SpanClass{SpanClass::Kind::AdjacentDaughters, path, *first, *last};
    return SpanClass{SpanClass::Kind::Crossing, path, 0, 0};
  }
}

GNode& at(GNode& root, const NodePath& p) {
  GNode* n = &root;
  for (auto i : p) n = &n->kids[i];
  return *n;
}

void check_span(const Span& s, std::size_t n) {
  if (s.start >= s.end || s.end > n)
    throw std::out_of_range("span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                            ") invalid for a sentence of " + std::to_string(n) + " tokens");
}

// Index into infos of the nearest S (or the root) above the lowest node
// covering the span.
std::size_t clause_of(const std::vector<NodeInfo>& infos, const Span& s) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < infos.size(); ++i)
    if (infos[i].span.contains(s) && infos[i].depth >= infos[best].depth) best = i;
  return best;
}

struct Work {
  std::size_t index;
  StandoffAnnotation ann;
  bool composed = false;
};

// Negation composition over the MN annotations of one sentence. Returns
// the annotations to graft; absorbed or dropped ones get their outcome set.
std::vector<Work> compose(const ParseTree& tree, std::span<const StandoffAnnotation> anns,
                          std::vector<std::optional<GraftOutcome>>& outcome) {
  std::vector<Work> work;
  for (std::size_t i = 0; i < anns.size(); ++i) work.push_back({i, anns[i], false});

  auto infos = enumerate_nodes(tree);
  auto leaves_p = leaf_paths(tree);
  auto clause = [&](const Span& s) {
    std::size_t i = clause_of(infos, s);
    while (infos[i].parent != static_cast<std::size_t>(-1) && base_category(tree.at(infos[i].path).label()) != "S")
      i = infos[i].parent;
    return i;
  };
  auto leaf_sisters = [&](const Span& a, const Span& b) {
    if (a.size() != 1 || b.size() != 1) return false;
    const NodePath& pa = leaves_p[a.start];
    const NodePath& pb = leaves_p[b.start];
    return !pa.empty() && pa.size() == pb.size() && std::equal(pa.begin(), pa.end() - 1, pb.begin());
  };
  auto tag_of = [](const Work& w, MNTag& t) { return w.ann.family == Family::MN && try_parse_tag(w.ann.label, t); };

  std::vector<bool> rewritten(work.size(), false);
  std::vector<Span> trigger_spans;
  for (std::size_t n = 0; n < work.size(); ++n) {
    MNTag nt;
    if (!tag_of(work[n], nt) || nt.role != Role::Trigger || nt.modality != Modality::Negation) continue;
    const Span ns = work[n].ann.span;
    std::size_t cl = clause(ns);
    for (std::size_t m = 0; m < work.size(); ++m) {
      MNTag mt;
      if (!tag_of(work[m], mt) || mt.role != Role::Trigger || mt.modality == Modality::Negation) continue;
      const Span ms = work[m].ann.span;
      bool adjacent = ms.end == ns.start || ns.end == ms.start || leaf_sisters(ms, ns);
      if (!adjacent || clause(ms) != cl) continue;
      trigger_spans.push_back(ms);
      const Span cspan = infos[cl].span;
      for (std::size_t t = 0; t < work.size(); ++t) {
        MNTag tt;
        if (rewritten[t] || !tag_of(work[t], tt) || tt.role != Role::Target) continue;
        if (tt.modality != mt.modality || tt.lexical_negation != mt.lexical_negation || tt.outer_not) continue;
        if (!cspan.contains(work[t].ann.span)) continue;
        work[t].ann.label = compose_negation(tt, true).to_string();
        work[t].composed = true;
        rewritten[t] = true;
        trigger_spans.push_back(work[t].ann.span);
      }
    }
  }

  std::vector<Work> out;
  for (std::size_t i = 0; i < work.size(); ++i) {
    MNTag t;
    bool targ_neg = tag_of(work[i], t) && t.role == Role::Target && t.modality == Modality::Negation;
    if (targ_neg) {
      const Span s = work[i].ann.span;
      if (std::find(trigger_spans.begin(), trigger_spans.end(), s) != trigger_spans.end()) {
        outcome[work[i].index] = GraftOutcome::Composed;
        continue;
      }
      bool shares = std::any_of(work.begin(), work.end(), [&](const Work& o) {
        MNTag ot;
        return o.ann.span == s && tag_of(o, ot) && ot.modality != Modality::Negation;
      });
      if (shares) {
        outcome[work[i].index] = GraftOutcome::DroppedUncomposable;
        continue;
      }
    }
    out.push_back(work[i]);
  }
  return out;
}

// Sort key: lower-precedence annotations first so higher ones overlay them.
auto order_key(const Work& w, const GraftConfig& cfg) {
  std::size_t fam = std::find(cfg.order.begin(), cfg.order.end(), w.ann.family) - cfg.order.begin();
  int role = 0, rank = 0;
  MNTag t;
  if (w.ann.family == Family::MN && try_parse_tag(w.ann.label, t)) {
    role = cfg.target_over_trigger ? (t.role == Role::Trigger ? 0 : 1) : 0;
    rank = -specificity_rank(t);
  }
  return std::make_tuple(fam, role, rank, w.ann.label, w.ann.span);
}

GraftOutcome graft_one(GNode& root, const StandoffAnnotation& a) {
  SpanClass c = classify(root, a.span);
  switch (c.kind) {
    case SpanClass::Kind::Crossing:
      return GraftOutcome::CrossingSkipped;
    case SpanClass::Kind::Exact: {
      // The whole same-span chain carries the tag.
      GNode* n = &at(root, c.node);
      bool overlaid = false;
      while (true) {
        overlaid = overlaid || !n->tag.empty();
        n->tag = a.label;
        if (n->kids.size() != 1) break;
        n = &n->kids[0];
      }
      return overlaid ? GraftOutcome::Overlaid : GraftOutcome::GraftedExact;
    }
    case SpanClass::Kind::AdjacentDaughters: {
      GNode& parent = at(root, c.node);
      GNode fresh;
      fresh.inserted = true;
      fresh.tag = a.label;
      auto b = parent.kids.begin() + static_cast<std::ptrdiff_t>(c.first);
      auto e = parent.kids.begin() + static_cast<std::ptrdiff_t>(c.last) + 1;
      fresh.kids.assign(std::make_move_iterator(b), std::make_move_iterator(e));
      parent.kids.erase(b, e);
      parent.kids.insert(parent.kids.begin() + static_cast<std::ptrdiff_t>(c.first), std::move(fresh));
      return GraftOutcome::GraftedInserted;
    }
  }
  return GraftOutcome::CrossingSkipped;
}

}  // namespace

std::string_view outcome_name(GraftOutcome o) {
  switch (o) {
    case GraftOutcome::GraftedExact: return "grafted-exact";
    case GraftOutcome::GraftedInserted: return "grafted-inserted";
    case GraftOutcome::Overlaid: return "overlaid";
    case GraftOutcome::CrossingSkipped: return "crossing-skipped";
    case GraftOutcome::Composed: return "composed";
    case GraftOutcome::DroppedUncomposable: return "dropped-uncomposable";
  }
  return "";
}

std::size_t GraftReport::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

GraftReport& GraftReport::operator+=(const GraftReport& o) {
  for (std::size_t i = 0; i < kGraftOutcomes; ++i) counts[i] += o.counts[i];
  return *this;
}

std::string GraftReport::format() const {
  std::string out;
  for (std::size_t i = 0; i < kGraftOutcomes; ++i)
    out += std::string(outcome_name(static_cast<GraftOutcome>(i))) + ": " + std::to_string(counts[i]) + "\n";
  return out;
}

SpanClass classify_span(const ParseTree& tree, const Span& span) {
  check_span(span, tree.leaf_count());
  return classify(tree, span);
}

GraftResult graft(const ParseTree& tree, std::span<const StandoffAnnotation> annotations, const GraftConfig& config) {
  std::size_t n = tree.leaf_count();
  for (const auto& a : annotations) check_span(a.span, n);

  std::vector<std::optional<GraftOutcome>> outcome(annotations.size());
  std::vector<Work> work = compose(tree, annotations, outcome);
  for (const auto& w : work)
    if (std::find(config.order.begin(), config.order.end(), w.ann.family) == config.order.end())
      throw std::invalid_argument("family " + std::string(family_name(w.ann.family)) + " missing from graft order");
  std::stable_sort(work.begin(), work.end(),
                   [&](const Work& x, const Work& y) { return order_key(x, config) < order_key(y, config); });

  GNode root = from_tree(tree);
  for (const Work& w : work) {
    GraftOutcome g = graft_one(root, w.ann);
    if (w.composed && g != GraftOutcome::GraftedInserted && g != GraftOutcome::CrossingSkipped)
      g = GraftOutcome::Composed;
    outcome[w.index] = g;
  }

  GraftResult r;
  r.tree = to_tree(root);
  for (const auto& o : outcome) {
    r.outcomes.push_back(*o);
    ++r.report[*o];
  }
  return r;
}

}  // namespace mn
