#include "mn/trees.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace mn {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_valid_token(std::string_view t) {
  if (t.empty()) return false;
  return std::none_of(t.begin(), t.end(), [](char c) { return is_space(c); });
}

std::string escape_token(const std::string& t) {
  if (t == "(") return "-LRB-";
  if (t == ")") return "-RRB-";
  return t;
}

std::string unescape_token(std::string t) {
  if (t == "-LRB-") return "(";
  if (t == "-RRB-") return ")";
  return t;
}

class PtbReader {
 public:
  explicit PtbReader(std::string_view text) : text_(text) {}

  std::vector<ParseTree> read_all() {
    std::vector<ParseTree> out;
    skip_space();
    while (pos_ < text_.size()) {
      if (text_[pos_] != '(') throw PtbParseError("expected '('", pos_);
      out.push_back(read_bracket());
      skip_space();
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string read_atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' && text_[pos_] != ')') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // pos_ is at '('.
  ParseTree read_bracket() {
    std::size_t open = pos_;
    ++pos_;
    skip_space();
    if (pos_ >= text_.size()) throw PtbParseError("unbalanced parentheses", pos_);
    std::string label;
    if (text_[pos_] != '(' && text_[pos_] != ')') label = read_atom();

    std::vector<std::string> atoms;
    std::vector<ParseTree> kids;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) throw PtbParseError("unbalanced parentheses", pos_);
      char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        kids.push_back(read_bracket());
      } else {
        atoms.push_back(read_atom());
      }
    }

    if (label.empty()) {
      // "( (S ...) )" style unlabeled wrapper around a single tree.
      if (kids.size() == 1 && atoms.empty()) return std::move(kids.front());
      throw PtbParseError("empty node", open);
    }
    if (kids.empty()) {
      if (atoms.empty()) throw PtbParseError("node without children or token", open);
      ParseTree leaf = ParseTree::leaf(label, unescape_token(atoms.back()));
      atoms.pop_back();
      for (auto& a : atoms) leaf.add_marker(std::move(a));
      return leaf;
    }
    ParseTree n = ParseTree::node(label, std::move(kids));
    for (auto& a : atoms) n.add_marker(std::move(a));
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void write_into(const ParseTree& t, std::string& out) {
  out += '(';
  out += t.label();
  for (const auto& m : t.markers()) {
    out += ' ';
    out += m;
  }
  if (t.is_leaf()) {
    out += ' ';
    out += escape_token(t.token());
  } else {
    for (const auto& c : t.children()) {
      out += ' ';
      write_into(c, out);
    }
  }
  out += ')';
}

bool should_splice(std::string_view parent, const ParseTree& child) {
  if (child.is_leaf()) return false;
  std::string_view c = child.base_category();
  if (c == "VP") return parent == "VP" || parent == "S";
  if (c == "NP") return parent == "PP" || parent == "NP";
  return false;
}

bool flatten_once(ParseTree& t) {
  if (t.is_leaf()) return false;
  bool changed = false;
  for (auto& c : t.mutable_children()) changed |= flatten_once(c);

  std::string_view parent = t.base_category();
  std::vector<ParseTree> out;
  out.reserve(t.num_children());
  for (auto& c : t.mutable_children()) {
    if (should_splice(parent, c)) {
      for (auto& m : c.mutable_markers()) t.mutable_markers().push_back(std::move(m));
      for (auto& g : c.mutable_children()) out.push_back(std::move(g));
      changed = true;
    } else {
      out.push_back(std::move(c));
    }
  }
  t.mutable_children() = std::move(out);
  return changed;
}

void enumerate_into(const ParseTree& t, NodePath& path, std::size_t depth, std::size_t parent,
                    std::size_t& next_leaf, std::vector<NodeInfo>& out) {
  std::size_t self = out.size();
  out.push_back(NodeInfo{path, Span{next_leaf, next_leaf}, depth, parent});
  if (t.is_leaf()) {
    ++next_leaf;
  } else {
    for (std::size_t i = 0; i < t.num_children(); ++i) {
      path.push_back(i);
      enumerate_into(t.child(i), path, depth + 1, self, next_leaf, out);
      path.pop_back();
    }
  }
  out[self].span.end = next_leaf;
}

}  // namespace

std::string_view base_category(std::string_view label) {
  // Treebank labels such as -NONE- and -LRB- are their own category.
  if (label.empty() || label.front() == '-') return label;
  return label.substr(0, label.find('-'));
}

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(),
                      [](char c) { return is_space(c) || c == '(' || c == ')'; });
}

ParseTree ParseTree::leaf(std::string label, std::string token) {
  if (!is_valid_label(label)) throw TreeError("invalid label '" + label + "'");
  if (!is_valid_token(token)) throw TreeError("invalid token '" + token + "'");
  ParseTree t;
  t.label_ = std::move(label);
  t.token_ = std::move(token);
  return t;
}

ParseTree ParseTree::node(std::string label, std::vector<ParseTree> children) {
  if (!is_valid_label(label)) throw TreeError("invalid label '" + label + "'");
  if (children.empty()) throw TreeError("internal node '" + label + "' without children");
  ParseTree t;
  t.label_ = std::move(label);
  t.children_ = std::move(children);
  return t;
}

const std::string& ParseTree::token() const {
  if (!token_) throw TreeError("node '" + label_ + "' has no token");
  return *token_;
}

bool ParseTree::has_marker(std::string_view m) const {
  return std::find(markers_.begin(), markers_.end(), m) != markers_.end();
}

std::string_view ParseTree::base_category() const { return mn::base_category(label_); }

std::vector<std::string> ParseTree::yield() const {
  std::vector<std::string> out;
  std::vector<const ParseTree*> stack{this};
  while (!stack.empty()) {
    const ParseTree* n = stack.back();
    stack.pop_back();
    if (n->is_leaf()) {
      out.push_back(*n->token_);
      continue;
    }
    for (auto it = n->children_.rbegin(); it != n->children_.rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

std::size_t ParseTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children_) n += c.leaf_count();
  return n;
}

std::size_t ParseTree::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.node_count();
  return n;
}

const ParseTree& ParseTree::at(const NodePath& path) const {
  const ParseTree* n = this;
  for (std::size_t i : path) {
    if (i >= n->children_.size()) throw TreeError("node path does not belong to tree");
    n = &n->children_[i];
  }
  return *n;
}

ParseTree& ParseTree::at(const NodePath& path) {
  return const_cast<ParseTree&>(std::as_const(*this).at(path));
}

bool ParseTree::contains_path(const NodePath& path) const {
  const ParseTree* n = this;
  for (std::size_t i : path) {
    if (i >= n->children_.size()) return false;
    n = &n->children_[i];
  }
  return true;
}

void ParseTree::set_label(std::string label) {
  if (!is_valid_label(label)) throw TreeError("invalid label '" + label + "'");
  label_ = std::move(label);
}

void ParseTree::set_token(std::string token) {
  if (!is_leaf()) throw TreeError("cannot set token on internal node");
  if (!is_valid_token(token)) throw TreeError("invalid token '" + token + "'");
  token_ = std::move(token);
}

void ParseTree::insert_marker(std::size_t index, std::string marker) {
  if (!is_valid_label(marker)) throw TreeError("invalid marker '" + marker + "'");
  index = std::min(index, markers_.size());
  markers_.insert(markers_.begin() + static_cast<std::ptrdiff_t>(index), std::move(marker));
}

std::vector<ParseTree> read_ptb(std::string_view text) { return PtbReader(text).read_all(); }

ParseTree read_ptb_tree(std::string_view text) {
  auto trees = read_ptb(text);
  if (trees.size() != 1)
    throw PtbParseError("expected exactly one tree, found " + std::to_string(trees.size()), 0);
  return std::move(trees.front());
}

std::string write_ptb(const ParseTree& tree) {
  std::string out;
  write_into(tree, out);
  return out;
}

ParseTree flatten(const ParseTree& tree) {
  ParseTree t = tree;
  while (flatten_once(t)) {
  }
  return t;
}

Span node_span(const ParseTree& tree, const NodePath& path) {
  if (!tree.contains_path(path)) throw TreeError("node path does not belong to tree");
  std::size_t start = 0;
  const ParseTree* n = &tree;
  for (std::size_t i : path) {
    for (std::size_t k = 0; k < i; ++k) start += n->child(k).leaf_count();
    n = &n->child(i);
  }
  return Span{start, start + n->leaf_count()};
}

std::vector<NodeInfo> enumerate_nodes(const ParseTree& tree) {
  std::vector<NodeInfo> out;
  NodePath path;
  std::size_t next_leaf = 0;
  enumerate_into(tree, path, 0, static_cast<std::size_t>(-1), next_leaf, out);
  return out;
}

std::vector<NodePath> leaf_paths(const ParseTree& tree) {
  std::vector<NodePath> out;
  for (auto& info : enumerate_nodes(tree))
    if (tree.at(info.path).is_leaf()) out.push_back(std::move(info.path));
  return out;
}

}  // namespace mn
