// mn: command-line front end for the modality/negation toolkit.
//
// Exit status: 0 success, 1 processing failure, 2 input or configuration
// error. Data goes to the named output files (or stdout), logs to stderr.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mn/corpus.hpp"
#include "mn/grafting.hpp"
#include "mn/lexicon.hpp"
#include "mn/matcher.hpp"
#include "mn/rulegen.hpp"
#include "mn/taggers.hpp"
#include "mn/trees.hpp"

#ifndef MN_DATA_DIR
#define MN_DATA_DIR "data"
#endif

namespace {

using namespace mn;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

struct TreeFile {
  std::vector<std::string> raw;
  std::vector<ParseTree> trees;
};

// One tree per non-blank line.
TreeFile read_trees(const std::string& path) {
  TreeFile f;
  auto lines = lines_of(read_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    try {
      f.trees.push_back(read_ptb_tree(lines[i]));
    } catch (const std::exception& e) {
      throw InputError(path + ":" + std::to_string(i + 1) + ": " + e.what());
    }
    f.raw.push_back(lines[i]);
  }
  return f;
}

template <class F>
auto with_context(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

Lexicon read_lexicon(const std::string& path) {
  return with_context(path, [&] { return load_lexicon(read_file(path)); });
}

std::vector<StandoffAnnotation> read_standoff_file(const std::string& path) {
  return with_context(path, [&] { return read_standoff(read_file(path)); });
}

std::vector<PatternRule> load_rules(const std::string& lexicon, const std::string& templates,
                                    const std::string& rules) {
  if (!rules.empty()) return with_context(rules, [&] { return parse_rules(read_file(rules)); });
  Lexicon lex = read_lexicon(lexicon);
  TemplateRegistry reg = with_context(templates, [&] { return load_templates(read_file(templates)); });
  Expansion ex = expand_templates(lex, reg);
  for (const auto& u : ex.unresolved) std::cerr << "warning: no template for " << u << "\n";
  return ex.rules;
}

std::string join_tags(const std::vector<MNTag>& tags) {
  if (tags.empty()) return "_";
  std::string out;
  for (const auto& t : tags) out += (out.empty() ? "" : ",") + t.to_string();
  return out;
}

struct TagOptions {
  std::string mode;
  std::string lexicon;
  std::string templates = std::string(MN_DATA_DIR) + "/templates.txt";
  std::string rules;
  std::string in;
  std::string out;
  std::string standoff;
  bool inline_out = false;
  bool compose = false;
  bool markers = false;
};

void cmd_tag(const TagOptions& o) {
  std::string out, standoff;
  if (o.mode == "string") {
    Lexicon lex = read_lexicon(o.lexicon);
    auto sentences = with_context(o.in, [&] { return read_token_tsv(read_file(o.in)); });
    auto results = tag_string_corpus(sentences, lex);
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      for (const auto& d : r.diagnostics) std::cerr << d << "\n";
      if (o.inline_out) {
        std::vector<std::string> words;
        for (const auto& t : r.tokens) words.push_back(t.token);
        out += render_inline(words, r.annotations) + "\n";
      } else {
        if (i) out += "\n";
        for (const auto& t : r.tokens) out += t.token + "\t" + t.pos + "\t" + join_tags(t.tags) + "\n";
      }
      standoff += write_standoff(r.annotations);
    }
    std::cerr << "tagged " << results.size() << " sentences (string mode)\n";
  } else {
    auto rules = load_rules(o.lexicon, o.templates, o.rules);
    TreeFile trees = read_trees(o.in);
    auto results = tag_structure_corpus(trees.trees, rules);
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      auto composed = compose_links(r.links, i);
      if (o.inline_out) {
        out += render_inline(r.tree.yield(), composed) + "\n";
      } else {
        out += write_ptb(o.markers ? r.marked : r.tree) + "\n";
      }
      standoff += write_standoff(o.compose ? composed : r.annotations);
    }
    std::cerr << "tagged " << results.size() << " sentences with " << rules.size() << " rules\n";
  }
  write_output(o.out, out);
  if (!o.standoff.empty()) write_output(o.standoff, standoff);
}

struct GraftOptions {
  std::string trees;
  std::vector<std::string> standoff;
  std::string order = "NE,MN";
  std::string out;
  std::string report;
};

GraftConfig parse_order(const std::string& s) {
  GraftConfig c;
  c.order.clear();
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      Family f = parse_family(part);
      if (std::find(c.order.begin(), c.order.end(), f) != c.order.end())
        throw InputError("family '" + part + "' repeated in --order");
      c.order.push_back(f);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--order: ") + e.what());
    }
  }
  if (c.order.empty()) throw InputError("--order is empty");
  return c;
}

void cmd_graft(const GraftOptions& o) {
  GraftConfig config = parse_order(o.order);
  TreeFile trees = read_trees(o.trees);
  std::vector<StandoffAnnotation> all;
  for (const auto& path : o.standoff) {
    auto anns = read_standoff_file(path);
    for (const auto& a : anns) {
      if (a.sentence >= trees.trees.size())
        throw InputError(path + " refers to sentence " + std::to_string(a.sentence) + " but " + o.trees + " has " +
                         std::to_string(trees.trees.size()) + " trees");
      if (std::find(config.order.begin(), config.order.end(), a.family) == config.order.end())
        throw InputError(path + ": family " + std::string(family_name(a.family)) + " is not in --order");
      if (a.span.end > trees.trees[a.sentence].leaf_count())
        throw InputError(path + ": span past the end of sentence " + std::to_string(a.sentence));
    }
    all.insert(all.end(), anns.begin(), anns.end());
  }
  auto grouped = group_by_sentence(all, trees.trees.size());
  auto results = graft_corpus(trees.trees, all, config);
  std::string out;
  GraftReport total;
  for (std::size_t i = 0; i < results.size(); ++i) {
    out += (grouped[i].empty() ? trees.raw[i] : write_ptb(results[i].tree)) + "\n";
    total += results[i].report;
  }
  write_output(o.out, out);
  if (!o.report.empty()) write_output(o.report, total.format());
  std::cerr << "grafted " << total.total() << " annotations onto " << results.size() << " trees\n";
}

void cmd_transform(const std::string& in, const std::string& out, bool prep) {
  TreeFile trees = read_trees(in);
  std::string text;
  for (const auto& t : trees.trees) text += write_ptb(prep ? preprocess(t) : flatten(t)) + "\n";
  write_output(out, text);
}

void cmd_rules(const std::string& lexicon, const std::string& templates, const std::string& out) {
  write_output(out, rules_to_source(load_rules(lexicon, templates, "")));
}

std::size_t sentence_span(const std::vector<StandoffAnnotation>& anns) {
  std::size_t n = 0;
  for (const auto& a : anns) n = std::max(n, a.sentence + 1);
  return n;
}

void cmd_agreement(const std::string& a_path, const std::string& b_path, long sentences) {
  auto a = read_standoff_file(a_path);
  auto b = read_standoff_file(b_path);
  std::size_t na = sentences >= 0 ? static_cast<std::size_t>(sentences) : sentence_span(a);
  std::size_t nb = sentences >= 0 ? static_cast<std::size_t>(sentences) : sentence_span(b);
  if (sentences < 0) na = nb = std::max(na, nb);
  try {
    std::cout << format_agreement(agreement(a, na, b, nb));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

void cmd_lexicon_validate(const std::string& path) {
  Lexicon lex = read_lexicon(path);
  std::cout << path << ": " << lex.size() << " entries\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modality/negation tagging and tree grafting"};
  app.require_subcommand(1);
  std::function<void()> action;
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);

  TagOptions tag;
  auto* t = app.add_subcommand("tag", "Tag sentences with modality/negation triggers and targets");
  t->add_option("--mode", tag.mode, "string (token/POS TSV input) or structure (PTB lines)")
      ->required()
      ->check(CLI::IsMember({"string", "structure"}));
  t->add_option("--lexicon", tag.lexicon, "Lexicon file")->check(CLI::ExistingFile);
  t->add_option("--templates", tag.templates, "Template registry (structure mode)");
  t->add_option("--rules", tag.rules, "Rule file used instead of expanding templates")->check(CLI::ExistingFile);
  t->add_option("--in", tag.in, "Input file")->required();
  t->add_option("--out", tag.out, "Output file (default stdout)");
  t->add_option("--standoff", tag.standoff, "Write standoff annotations here");
  t->add_flag("--inline", tag.inline_out, "Write <Tag word> inline text, negation composed");
  t->add_flag("--compose", tag.compose, "Structure mode: compose negation in the standoff output");
  t->add_flag("--markers", tag.markers, "Structure mode: keep tags as daughter tokens in output trees");
  t->callback([&] {
    if (tag.lexicon.empty() && tag.rules.empty()) throw CLI::ValidationError("--lexicon", "required");
    if (tag.mode == "string" && tag.lexicon.empty()) throw CLI::ValidationError("--lexicon", "required in string mode");
    if (tag.mode == "string" && (tag.markers || tag.compose || !tag.rules.empty()))
      throw CLI::ValidationError("--mode", "--rules, --markers and --compose apply to structure mode only");
    if (tag.inline_out && tag.markers) throw CLI::ValidationError("--inline", "excludes --markers");
    action = [&] { cmd_tag(tag); };
  });

  GraftOptions graft_opts;
  auto* g = app.add_subcommand("graft", "Graft standoff annotations onto parse trees");
  g->add_option("--trees", graft_opts.trees, "PTB lines")->required();
  g->add_option("--standoff", graft_opts.standoff, "Standoff TSV (repeatable)")->required();
  g->add_option("--order", graft_opts.order, "Family order, e.g. NE,MN");
  g->add_option("--out", graft_opts.out, "Output PTB lines (default stdout)");
  g->add_option("--report", graft_opts.report, "Outcome counts");
  g->callback([&] { action = [&] { cmd_graft(graft_opts); }; });

  std::string in, out;
  auto* f = app.add_subcommand("flatten", "Splice VP under VP/S and NP under PP/NP");
  f->add_option("--in", in, "PTB lines")->required();
  f->add_option("--out", out, "Output (default stdout)");
  f->callback([&] { action = [&] { cmd_transform(in, out, false); }; });

  auto* p = app.add_subcommand("preprocess", "Insert AUX and VoicePassive markers");
  p->add_option("--in", in, "PTB lines (flattened)")->required();
  p->add_option("--out", out, "Output (default stdout)");
  p->callback([&] { action = [&] { cmd_transform(in, out, true); }; });

  std::string lexicon, templates = std::string(MN_DATA_DIR) + "/templates.txt";
  auto* r = app.add_subcommand("rules", "Expand templates over a lexicon and print the rules");
  r->add_option("--lexicon", lexicon, "Lexicon file")->required();
  r->add_option("--templates", templates, "Template registry");
  r->add_option("--out", out, "Output (default stdout)");
  r->callback([&] { action = [&] { cmd_rules(lexicon, templates, out); }; });

  std::string a_path, b_path;
  long sentences = -1;
  auto* a = app.add_subcommand("agreement", "Compare two standoff files (second is the reference)");
  a->add_option("a", a_path, "Standoff TSV")->required();
  a->add_option("b", b_path, "Reference standoff TSV")->required();
  a->add_option("--sentences", sentences, "Sentence count (default: highest index + 1)");
  a->callback([&] { action = [&] { cmd_agreement(a_path, b_path, sentences); }; });

  std::string lex_path;
  auto* l = app.add_subcommand("lexicon", "Lexicon utilities");
  l->require_subcommand(1);
  auto* lv = l->add_subcommand("validate", "Load a lexicon and report its size");
  lv->add_option("file", lex_path, "Lexicon file")->required();
  lv->callback([&] { action = [&] { cmd_lexicon_validate(lex_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  set_thread_count(threads);
  try {
    action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RewriteBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
