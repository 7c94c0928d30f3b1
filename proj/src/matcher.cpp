#include "mn/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "mn/english.hpp"

namespace mn {

namespace {

// ---------------------------------------------------------------- parsing

enum class TokKind { LParen, RParen, Op, Word, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::vector<Token> tokenize(std::string_view src, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line, col = 1;
  // End of input is reported just past the last token, not after trailing newlines.
  std::size_t end_line = first_line, end_col = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (is_space(c)) {
      advance(c);
      ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (c == '(' || c == ')') {
      t.kind = c == '(' ? TokKind::LParen : TokKind::RParen;
      t.text = std::string(1, c);
      out.push_back(t);
      advance(c);
      ++i;
      end_line = line;
      end_col = col;
      continue;
    }
    std::size_t j = i;
    // A /^.../ test may contain anything but whitespace and parentheses.
    while (j < src.size() && !is_space(src[j]) && src[j] != '(' && src[j] != ')') ++j;
    t.text = std::string(src.substr(i, j - i));
    for (std::size_t k = i; k < j; ++k) advance(src[k]);
    i = j;
    if (t.text == "<" || t.text == "!<" || t.text == "$.." || t.text == "!$..") {
      t.kind = TokKind::Op;
    } else {
      t.kind = TokKind::Word;
      // Operator characters glued to a word, or an unsupported operator.
      bool in_regex = false;
      for (std::size_t k = 0; k < t.text.size(); ++k) {
        char ch = t.text[k];
        if (ch == '/') in_regex = !in_regex;
        if (!in_regex && (ch == '<' || ch == '>' || ch == '$' || ch == '!'))
          throw PatternError("unknown operator '" + t.text + "'", t.line, t.column + k);
      }
    }
    out.push_back(std::move(t));
    end_line = line;
    end_col = col;
  }
  Token end;
  end.kind = TokKind::End;
  end.line = end_line;
  end.column = end_col;
  out.push_back(end);
  return out;
}

class PatternParser {
 public:
  explicit PatternParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  PatternNode parse_root() {
    PatternNode root;
    if (peek().kind == TokKind::LParen) {
      next();
      root = parse_body(true);
      expect_rparen();
      parse_relations(root, false);
    } else {
      root = parse_body(false);
    }
    if (peek().kind != TokKind::End) fail("unexpected '" + peek().text + "'", peek());
    return root;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& what, const Token& t) { throw PatternError(what, t.line, t.column); }

  void expect_rparen() {
    if (peek().kind != TokKind::RParen) fail("missing ')'", peek());
    next();
  }

  void claim(const std::string& name, const Token& t) {
    if (!captures_.insert(name).second) fail("duplicate capture '" + name + "'", t);
  }

  PatternNode parse_description(const Token& t) {
    PatternNode node;
    std::string_view text = t.text;
    auto eq = text.find('=');
    if (eq != std::string_view::npos) {
      std::string name(text.substr(eq + 1));
      if (!is_ident(name)) fail("bad capture name '" + name + "'", t);
      claim(name, t);
      node.capture = name;
      text = text.substr(0, eq);
    }
    std::size_t start = 0;
    while (true) {
      auto bar = text.find('|', start);
      std::string_view alt = text.substr(start, bar == std::string_view::npos ? bar : bar - start);
      LabelTest::Alternative a;
      if (alt.starts_with('/')) {
        if (alt.size() < 4 || !alt.starts_with("/^") || !alt.ends_with('/'))
          fail("only anchored-prefix regexes /^.../ are supported: '" + std::string(alt) + "'", t);
        a.prefix = true;
        a.text = std::string(alt.substr(2, alt.size() - 3));
      } else {
        if (alt.empty()) fail("empty label test in '" + t.text + "'", t);
        a.text = std::string(alt);
      }
      node.test.alternatives.push_back(std::move(a));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    return node;
  }

  PatternNode parse_body(bool in_parens) {
    const Token& t = peek();
    if (t.kind != TokKind::Word) fail("expected a node description", t);
    next();
    PatternNode node = parse_description(t);
    parse_relations(node, in_parens);
    return node;
  }

  void parse_relations(PatternNode& node, bool in_parens) {
    while (true) {
      const Token& t = peek();
      switch (t.kind) {
        case TokKind::End:
          if (in_parens) fail("missing ')'", t);
          return;
        case TokKind::RParen:
          if (!in_parens) fail("unbalanced ')'", t);
          return;
        case TokKind::LParen:
          fail("expected a relation operator before '('", t);
        case TokKind::Word: {
          if (!in_parens) fail("expected a relation operator before '" + t.text + "'", t);
          if (t.text.find_first_of("=|/") != std::string::npos) fail("bad leaf string '" + t.text + "'", t);
          Clause c;
          c.relation = Relation::DominatesLeaf;
          c.leaf = t.text;
          next();
          node.clauses.push_back(std::move(c));
          break;
        }
        case TokKind::Op: {
          Clause c;
          c.negated = t.text[0] == '!';
          c.relation = t.text.find('$') != std::string::npos ? Relation::SisterPrecedes : Relation::Dominates;
          next();
          if (peek().kind == TokKind::LParen) {
            next();
            c.operand = parse_body(true);
            expect_rparen();
          } else if (peek().kind == TokKind::Word) {
            c.operand = parse_description(next());
          } else {
            fail("expected an operand after '" + t.text + "'", peek());
          }
          node.clauses.push_back(std::move(c));
          break;
        }
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> captures_;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && is_space(s[a])) ++a;
  while (b > a && is_space(s[b - 1])) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool is_action_line(std::string_view line) {
  auto words = split_ws(line);
  return !words.empty() && (words[0] == "insert" || words[0] == "augment");
}

Action parse_action(std::string_view line, std::size_t lineno) {
  auto words = split_ws(line);
  Action a;
  auto col_of = [&](std::size_t w) {
    std::size_t p = line.find(words[w]);
    return p == std::string_view::npos ? 1 : p + 1;
  };
  if (words[0] == "insert") {
    // insert (M) >N name
    if (words.size() != 4) throw PatternError("expected 'insert (M) >N name'", lineno, 1);
    const std::string& payload = words[1];
    if (payload.size() < 3 || payload.front() != '(' || payload.back() != ')')
      throw PatternError("insert payload must be parenthesized", lineno, col_of(1));
    a.kind = Action::Kind::InsertDaughter;
    a.payload = payload.substr(1, payload.size() - 2);
    if (!is_valid_label(a.payload)) throw PatternError("bad marker '" + a.payload + "'", lineno, col_of(1));
    const std::string& pos = words[2];
    if (pos.size() < 2 || pos[0] != '>' ||
        !std::all_of(pos.begin() + 1, pos.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw PatternError("unknown operator '" + pos + "'", lineno, col_of(2));
    a.position = std::stoul(pos.substr(1));
    if (a.position < 1) throw PatternError("daughter position must be at least 1", lineno, col_of(2));
    a.capture = words[3];
  } else {
    // augment name S
    if (words.size() != 3) throw PatternError("expected 'augment name S'", lineno, 1);
    a.kind = Action::Kind::AugmentLabel;
    a.capture = words[1];
    a.payload = words[2];
    if (!is_valid_label(a.payload) || a.payload.find('-') != std::string::npos)
      throw PatternError("bad label suffix '" + a.payload + "'", lineno, col_of(2));
  }
  return a;
}

PatternRule parse_rule_lines(const std::vector<std::pair<std::size_t, std::string>>& lines) {
  PatternRule rule;
  std::size_t i = 0;
  if (i < lines.size()) {
    std::string first = trim(lines[i].second);
    if (first.starts_with("Name:")) {
      rule.name = trim(std::string_view(first).substr(5));
      ++i;
    }
  }
  std::string pattern_text;
  std::size_t pattern_line = i < lines.size() ? lines[i].first : 1;
  for (; i < lines.size() && !is_action_line(lines[i].second); ++i) {
    pattern_text += lines[i].second;
    pattern_text += '\n';
  }
  if (trim(pattern_text).empty()) throw PatternError("missing pattern", pattern_line, 1);
  PatternParser parser(tokenize(pattern_text, pattern_line));
  rule.pattern = parser.parse_root();
  for (; i < lines.size(); ++i) {
    if (!is_action_line(lines[i].second))
      throw PatternError("pattern text after actions", lines[i].first, 1);
    rule.actions.push_back(parse_action(lines[i].second, lines[i].first));
  }
  auto bound = bound_captures(rule.pattern);
  for (const auto& a : rule.actions)
    if (std::find(bound.begin(), bound.end(), a.capture) == bound.end()) throw UnboundCaptureError(a.capture);
  return rule;
}

// ---------------------------------------------------------------- writing

void write_description(const PatternNode& n, std::string& out) {
  for (std::size_t i = 0; i < n.test.alternatives.size(); ++i) {
    if (i) out += '|';
    const auto& a = n.test.alternatives[i];
    out += a.prefix ? "/^" + a.text + "/" : a.text;
  }
  if (n.capture) out += "=" + *n.capture;
}

void write_node(const PatternNode& n, std::string& out);

void write_clauses(const PatternNode& n, std::string& out) {
  for (const auto& c : n.clauses) {
    out += ' ';
    if (c.relation == Relation::DominatesLeaf) {
      out += c.leaf;
      continue;
    }
    if (c.negated) out += '!';
    out += c.relation == Relation::Dominates ? "< " : "$.. ";
    if (c.operand.clauses.empty()) {
      write_description(c.operand, out);
    } else {
      out += '(';
      write_node(c.operand, out);
      out += ')';
    }
  }
}

void write_node(const PatternNode& n, std::string& out) {
  write_description(n, out);
  write_clauses(n, out);
}

void collect_captures(const PatternNode& n, std::vector<std::string>& out) {
  if (n.capture) out.push_back(*n.capture);
  for (const auto& c : n.clauses)
    if (!c.negated && c.relation != Relation::DominatesLeaf) collect_captures(c.operand, out);
}

// --------------------------------------------------------------- matching

using Bindings = std::map<std::string, NodePath>;

bool equals_ci(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

bool test_label(const LabelTest& t, std::string_view label) {
  for (const auto& a : t.alternatives) {
    if (a.prefix ? label.starts_with(a.text) : (label == a.text || base_category(label) == a.text)) return true;
  }
  return false;
}

bool test_terminal(const LabelTest& t, std::string_view s, bool is_word) {
  for (const auto& a : t.alternatives) {
    if (a.prefix ? s.starts_with(a.text) : (is_word ? equals_ci(s, a.text) : s == a.text)) return true;
  }
  return false;
}

class Matcher {
 public:
  explicit Matcher(const ParseTree& tree) : tree_(tree) {}

  std::vector<Bindings> at(const PatternNode& p, const NodePath& path) {
    const ParseTree& node = tree_.at(path);
    if (!test_label(p.test, node.label())) return {};
    std::vector<Bindings> envs(1);
    if (p.capture) envs[0][*p.capture] = path;
    for (const auto& c : p.clauses) {
      if (envs.empty()) break;
      envs = apply_clause(c, node, path, envs);
    }
    return envs;
  }

 private:
  // Bindings produced by the operand at each candidate position.
  std::vector<Bindings> candidates(const Clause& c, const ParseTree& node, const NodePath& path) {
    std::vector<Bindings> out;
    auto try_child = [&](std::size_t i) {
      NodePath cp = path;
      cp.push_back(i);
      auto r = at(c.operand, cp);
      out.insert(out.end(), r.begin(), r.end());
    };
    bool bare = !c.operand.capture && c.operand.clauses.empty();
    if (c.relation == Relation::Dominates) {
      if (node.is_leaf()) {
        if (bare && test_terminal(c.operand.test, node.token(), true)) out.emplace_back();
      } else {
        for (std::size_t i = 0; i < node.num_children(); ++i) try_child(i);
      }
      if (bare)
        for (const auto& m : node.markers())
          if (test_terminal(c.operand.test, m, false)) out.emplace_back();
    } else {  // SisterPrecedes
      if (path.empty()) return out;
      NodePath parent(path.begin(), path.end() - 1);
      const ParseTree& pn = tree_.at(parent);
      for (std::size_t i = path.back() + 1; i < pn.num_children(); ++i) {
        NodePath sp = parent;
        sp.push_back(i);
        auto r = at(c.operand, sp);
        out.insert(out.end(), r.begin(), r.end());
      }
    }
    return out;
  }

  std::vector<Bindings> apply_clause(const Clause& c, const ParseTree& node, const NodePath& path,
                                     const std::vector<Bindings>& envs) {
    if (c.relation == Relation::DominatesLeaf) {
      bool hit = (node.is_leaf() && equals_ci(node.token(), c.leaf)) ||
                 std::find(node.markers().begin(), node.markers().end(), c.leaf) != node.markers().end();
      return hit ? envs : std::vector<Bindings>{};
    }
    auto cands = candidates(c, node, path);
    if (c.negated) return cands.empty() ? envs : std::vector<Bindings>{};
    std::vector<Bindings> out;
    for (const auto& e : envs) {
      for (const auto& k : cands) {
        Bindings merged = e;
        merged.insert(k.begin(), k.end());
        out.push_back(std::move(merged));
      }
    }
    return out;
  }

  const ParseTree& tree_;
};

bool perform(const Action& a, const Match& m, ParseTree& tree) {
  ParseTree& node = tree.at(m.captures.at(a.capture));
  if (a.kind == Action::Kind::AugmentLabel) {
    std::string suffix = "-" + a.payload;
    if (node.label().ends_with(suffix)) return false;
    node.set_label(node.label() + suffix);
    return true;
  }
  // Daughters are [word, markers...] for a leaf and [children..., markers...]
  // otherwise, so position N maps onto the marker list with an offset.
  std::size_t offset = node.is_leaf() ? 1 : node.num_children();
  std::size_t index = a.position - 1 > offset ? a.position - 1 - offset : 0;
  node.insert_marker(std::min(index, node.markers().size()), a.payload);
  return true;
}

}  // namespace

PatternRule parse_pattern(std::string_view source) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    auto nl = source.find('\n', start);
    std::string_view line = source.substr(start, nl == std::string_view::npos ? source.size() - start : nl - start);
    ++lineno;
    std::string t = trim(line);
    if (!t.empty() && t[0] != '#') lines.emplace_back(lineno, std::string(line));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return parse_rule_lines(lines);
}

std::vector<PatternRule> parse_rules(std::string_view text) {
  std::vector<PatternRule> rules;
  std::vector<std::pair<std::size_t, std::string>> record;
  std::size_t lineno = 0;
  std::size_t start = 0;
  auto flush = [&] {
    if (!record.empty()) rules.push_back(parse_rule_lines(record));
    record.clear();
  };
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) {
      flush();
    } else if (t[0] != '#') {
      record.emplace_back(lineno, std::string(line));
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  flush();
  return rules;
}

std::string to_source(const PatternRule& rule) {
  std::string out;
  if (!rule.name.empty()) out += "Name: " + rule.name + "\n";
  bool wrap = std::any_of(rule.pattern.clauses.begin(), rule.pattern.clauses.end(),
                          [](const Clause& c) { return c.relation == Relation::DominatesLeaf; });
  if (wrap) {
    // Leaf tests are only legal inside parentheses.
    out += '(';
    write_node(rule.pattern, out);
    out += ')';
  } else {
    write_node(rule.pattern, out);
  }
  out += '\n';
  for (const auto& a : rule.actions) {
    if (a.kind == Action::Kind::InsertDaughter)
      out += "insert (" + a.payload + ") >" + std::to_string(a.position) + " " + a.capture + "\n";
    else
      out += "augment " + a.capture + " " + a.payload + "\n";
  }
  return out;
}

std::string rules_to_source(const std::vector<PatternRule>& rules) {
  std::string out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i) out += '\n';
    out += to_source(rules[i]);
  }
  return out;
}

std::vector<std::string> bound_captures(const PatternNode& pattern) {
  std::vector<std::string> out;
  collect_captures(pattern, out);
  return out;
}

std::vector<Match> match(const PatternRule& rule, const ParseTree& tree) {
  Matcher m(tree);
  std::vector<Match> out;
  for (const auto& info : enumerate_nodes(tree)) {
    std::set<Match> here;
    for (auto& env : m.at(rule.pattern, info.path)) here.insert(Match{info.path, std::move(env)});
    out.insert(out.end(), here.begin(), here.end());
  }
  return out;
}

ApplyResult apply(const PatternRule& rule, const ParseTree& tree, std::size_t budget) {
  ApplyResult result{tree, {}};
  while (true) {
    bool changed = false;
    for (const auto& m : match(rule, result.tree)) {
      ParseTree next = result.tree;
      bool any = false;
      for (const auto& a : rule.actions) any = perform(a, m, next) || any;
      if (!any) continue;
      if (result.applied.size() >= budget)
        throw RewriteBudgetExceeded("rule '" + rule.name + "' exceeded the rewrite budget of " +
                                    std::to_string(budget));
      result.tree = std::move(next);
      result.applied.push_back(m);
      changed = true;
      break;
    }
    if (!changed) break;
  }
  return result;
}

}  // namespace mn
