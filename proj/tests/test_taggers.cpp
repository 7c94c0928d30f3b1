#include <doctest.h>

#include <set>

#include "mn/english.hpp"
#include "mn/rulegen.hpp"
#include "mn/taggers.hpp"
#include "support/support.hpp"

using namespace mn;

namespace {

const char* kAmericans =
    "Americans <TrigRequire should> <TargRequire know> that we <TrigAble can> <TrigNegation not> "
    "<TargNOTAble hand> over Dr. Khan to them .";

Lexicon seed() { return load_lexicon(testing::slurp(MN_DATA_DIR "/seed_lexicon.txt")); }

std::vector<PatternRule> seed_rules() {
  return expand_templates(seed(), load_templates(testing::slurp(MN_DATA_DIR "/templates.txt"))).rules;
}

std::vector<std::string> words_of(std::span<const TaggedToken> ts) {
  std::vector<std::string> w;
  for (const auto& t : ts) w.push_back(t.token);
  return w;
}

// Independent reading of the string tagger: try every entry at every
// offset, then pick targets with a separate auxiliary test.
std::set<std::tuple<std::size_t, std::string, std::optional<std::size_t>>> oracle(std::span<const TaggedToken> ts,
                                                                               const Lexicon& lex) {
  auto verbal = [](const std::string& p) {
    return p == "MD" || p == "VB" || p == "VBD" || p == "VBG" || p == "VBN" || p == "VBP" || p == "VBZ";
  };
  auto aux = [&](std::size_t i) {
    if (ts[i].pos == "MD") return true;
    if (!english::is_auxiliary_verb_form(ts[i].token)) return false;
    std::size_t j = i + 1;
    while (j < ts.size() && ts[j].pos == "RB") ++j;
    return j < ts.size() && verbal(ts[j].pos);
  };
  std::set<std::tuple<std::size_t, std::string, std::optional<std::size_t>>> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (const auto& e : lex.entries()) {
      std::size_t n = e.words.size();
      if (i + n > ts.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) {
        std::string w = english::lowercase(ts[i + k].token);
        if (k == e.head_index() && e.head_pos() == "VB") {
          bool any = false;
          for (const auto& [form, tag] : english::verb_form_tags(e.head_forms())) any = any || (form == w && tag == ts[i + k].pos);
          ok = any;
        } else if (k == e.head_index() && e.head_pos() == "NN") {
          ok = (w == english::lowercase(e.words[k]) && ts[i + k].pos == "NN") ||
               (w == english::pluralize(e.words[k]) && ts[i + k].pos == "NNS");
        } else {
          ok = w == english::lowercase(e.words[k]) && ts[i + k].pos == e.pos[k];
        }
      }
      if (!ok) continue;
      std::optional<std::size_t> target;
      for (std::size_t j = i + n; j < ts.size() && !target; ++j)
        if (verbal(ts[j].pos) && !aux(j)) target = j;
      out.insert({i + e.head_index(), e.trigger_tag().to_string(), target});
    }
  }
  return out;
}

std::vector<TaggedToken> random_sentence(testing::Rng& rng) {
  static const std::vector<std::pair<const char*, const char*>> vocab = {
      {"should", "MD"}, {"can", "MD"},      {"can", "NN"},       {"not", "RB"},      {"n't", "RB"},
      {"need", "VB"},   {"needs", "VBZ"},   {"needed", "VBN"},   {"need", "MD"},     {"was", "VBD"},
      {"be", "VB"},     {"have", "VBP"},    {"did", "VBD"},      {"go", "VB"},       {"went", "VBD"},
      {"hope", "VB"},   {"for", "IN"},      {"peace", "NN"},     {"able", "JJ"},     {"to", "TO"},
      {"attempts", "NNS"}, {"failed", "VBD"}, {"tried", "VBD"}, {"the", "DT"},      {"permitted", "VBN"},
      {"likely", "JJ"}, {"definitely", "RB"}, {"win", "VB"},     {"Believe", "VBP"}, {"that", "IN"},
  };
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
  std::vector<TaggedToken> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto [w, p] = vocab[std::uniform_int_distribution<std::size_t>(0, vocab.size() - 1)(rng)];
    out.push_back({w, p, {}});
  }
  return out;
}

}  // namespace

TEST_CASE("standoff format") {
  std::vector<StandoffAnnotation> a = {{0, {1, 2}, "TrigRequire", Family::MN}, {3, {0, 2}, "GPE", Family::NE}};
  std::string text = write_standoff(a);
  CHECK(text == "0\t1\t2\tTrigRequire\tMN\n3\t0\t2\tGPE\tNE\n");
  CHECK(read_standoff(text) == a);
  CHECK(read_standoff("").empty());
  CHECK_THROWS_AS(read_standoff("0\t2\t1\tTrigAble\tMN\n"), StandoffError);
  CHECK_THROWS_AS(read_standoff("0\t1\t2\tTrigWish\tMN\n"), StandoffError);
  CHECK_THROWS_AS(read_standoff("0\t1\t2\tGPE\tXX\n"), StandoffError);
  try {
    read_standoff("0\t1\t2\tTrigAble\tMN\n0\t1\n");
    FAIL("expected an error");
  } catch (const StandoffError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("string tagger on the Americans sentence") {
  auto sentences = read_token_tsv(testing::slurp(MN_DATA_DIR "/corpus/gold.tokens.tsv"));
  REQUIRE(sentences.size() == 25);
  StringTagResult r = tag_string(sentences[0], seed());
  CHECK(words_of(r.tokens) == words_of(sentences[0]));
  CHECK(render_inline(words_of(r.tokens), r.annotations) == kAmericans);
  CHECK(render_inline(r.tokens) == kAmericans);

  StringTagResult none = tag_string(sentences[24], seed());
  CHECK(none.annotations.empty());
  CHECK(none.links.empty());
}

TEST_CASE("string tagger agrees with the exhaustive oracle") {
  Lexicon lex = seed();
  testing::Rng rng(5);
  auto corpus = read_token_tsv(testing::slurp(MN_DATA_DIR "/corpus/gold.tokens.tsv"));
  for (int i = 0; i < 500; ++i) corpus.push_back(random_sentence(rng));
  for (const auto& s : corpus) {
    StringTagResult r = tag_string(s, lex);
    std::set<std::tuple<std::size_t, std::string, std::optional<std::size_t>>> got;
    for (const auto& l : r.links) {
      CHECK(l.trigger.size() == 1);
      got.insert({l.trigger.start, l.trigger_tag.to_string(),
                  l.target ? std::optional<std::size_t>(l.target->start) : std::nullopt});
    }
    CHECK(got == oracle(s, lex));
    CHECK(words_of(r.tokens) == words_of(s));
    for (const auto& a : r.annotations) {
      CHECK(a.span.end <= s.size());
      // Trigger annotations only ever sit on lexicon matches.
      if (parse_tag(a.label).role == Role::Trigger) {
        bool from_link = false;
        for (const auto& l : r.links) from_link = from_link || l.trigger == a.span;
        CHECK(from_link);
      }
    }
  }
}

TEST_CASE("negation composition on links") {
  // can not hand: TrigAble, TrigNegation, with both targets on hand.
  std::vector<Link> links = {
      {{0, 1}, parse_tag("TrigAble"), Span{2, 3}, parse_tag("TargAble")},
      {{1, 2}, parse_tag("TrigNegation"), Span{2, 3}, parse_tag("TargNegation")},
  };
  auto raw = link_annotations(links, 0);
  CHECK(raw.size() == 4);
  auto composed = compose_links(links, 0);
  std::set<std::string> labels;
  for (const auto& a : composed) labels.insert(a.label);
  CHECK(labels == std::set<std::string>{"TrigAble", "TrigNegation", "TargNOTAble"});

  // not want: the negation's target is itself a modality trigger.
  std::vector<Link> want = {
      {{0, 1}, parse_tag("TrigNegation"), Span{1, 2}, parse_tag("TargNegation")},
      {{1, 2}, parse_tag("TrigWant"), Span{3, 4}, parse_tag("TargWant")},
  };
  labels.clear();
  for (const auto& a : compose_links(want, 0)) labels.insert(a.label);
  CHECK(labels == std::set<std::string>{"TrigNegation", "TrigWant", "TargNOTWant"});
}

TEST_CASE("structure tagger on the Pakistan and solution trees") {
  auto trees = read_ptb(testing::slurp(MN_DATA_DIR "/corpus/gold.ptb"));
  REQUIRE(trees.size() == 25);
  auto rules = seed_rules();

  StructureTagResult pak = tag_structure(prepare_tree(trees[2]), rules, 2);
  std::string s = write_ptb(pak.tree);
  CHECK(s.find("(MD-TrigAble could)") != std::string::npos);
  CHECK(s.find("(RB-TrigNegation not)") != std::string::npos);
  CHECK(s.find("(VB-TrigSucceed-TargAble-TargNegation reach)") != std::string::npos);
  CHECK(s.find("(JJ-TargSucceed semi-final)") != std::string::npos);
  CHECK(pak.tree.yield() == trees[2].yield());
  std::set<std::pair<std::size_t, std::string>> got;
  for (const auto& a : pak.annotations) got.insert({a.span.start, a.label});
  CHECK(got == std::set<std::pair<std::size_t, std::string>>{
                   {2, "TrigAble"}, {3, "TrigNegation"}, {4, "TargAble"}, {4, "TrigSucceed"}, {4, "TargNegation"},
                   {5, "TargSucceed"}});

  StructureTagResult sol = tag_structure(prepare_tree(trees[3]), rules, 3);
  std::string ss = write_ptb(sol.tree);
  CHECK(ss.find("(MD-TrigBelief must)") != std::string::npos);
  CHECK(ss.find("(VB be)") != std::string::npos);
  CHECK(ss.find("(VBN-TargBelief found)") != std::string::npos);

  ParseTree plain = prepare_tree(trees[24]);
  StructureTagResult none = tag_structure(plain, rules, 24);
  CHECK(none.annotations.empty());
  CHECK(none.tree == plain);
}

TEST_CASE("fold_markers") {
  ParseTree t = read_ptb_tree("(S (VB AUX TargNegation TrigSucceed TargAble reach) (NN Other x))");
  CHECK(write_ptb(fold_markers(t)) == "(S (VB-TrigSucceed-TargAble-TargNegation reach) (NN Other x))");
}

TEST_CASE("render_inline") {
  std::vector<std::string> w = {"we", "should", "go"};
  std::vector<StandoffAnnotation> a = {{0, {1, 2}, "TrigRequire", Family::MN}};
  CHECK(render_inline(w, a) == "we <TrigRequire should> go");
  CHECK(render_inline(w, {}) == "we should go");

  std::vector<StandoffAnnotation> three = {{0, {1, 2}, "TargNegation", Family::MN},
                                           {0, {1, 2}, "TargAble", Family::MN},
                                           {0, {1, 2}, "TrigSucceed", Family::MN}};
  std::string once = render_inline(w, three);
  CHECK(once == "we <TrigSucceed <TargAble <TargNegation should>>> go");
  std::reverse(three.begin(), three.end());
  CHECK(render_inline(w, three) == once);
}

TEST_CASE("inline round-trip") {
  testing::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    ParseTree t = testing::random_tree(rng);
    std::vector<StandoffAnnotation> a;
    for (auto& x : testing::random_annotations(rng, t, 4))
      if (x.family == Family::MN) a.push_back(x);
    // Keep a laminar set, which inline markup can express.
    std::vector<StandoffAnnotation> laminar;
    for (const auto& x : a) {
      bool ok = true;
      for (const auto& y : laminar)
        ok = ok && (x.span.contains(y.span) || y.span.contains(x.span) || x.span.disjoint(y.span)) &&
             !(x.span == y.span && x.label == y.label);
      if (ok) laminar.push_back(x);
    }
    auto words = t.yield();
    InlineSentence back = parse_inline(render_inline(words, laminar));
    CHECK(back.words == words);
    std::multiset<StandoffAnnotation> want(laminar.begin(), laminar.end()), got(back.annotations.begin(), back.annotations.end());
    CHECK(got == want);
  }
  CHECK(parse_inline(kAmericans).annotations.size() == 5);
  CHECK_THROWS(parse_inline("<TrigAble can"));
}

TEST_CASE("agreement") {
  std::vector<StandoffAnnotation> a = {{0, {0, 1}, "TrigAble", Family::MN}, {1, {2, 3}, "TargAble", Family::MN}};
  std::vector<StandoffAnnotation> b = {{0, {0, 1}, "TrigWant", Family::MN}};
  AgreementReport same = agreement(a, 2, a, 2);
  CHECK(same.sentence_level == doctest::Approx(1.0));
  CHECK(format_agreement(same).find("agreement: 100.0") != std::string::npos);
  CHECK(agreement(a, 2, b, 2).sentence_level == doctest::Approx(0.0));
  CHECK(agreement({}, 2, {}, 2).sentence_level == doctest::Approx(1.0));
  CHECK_THROWS_AS(agreement(a, 2, a, 3), std::invalid_argument);
  CHECK_THROWS_AS(agreement(a, 1, a, 1), std::invalid_argument);

  AgreementReport half = agreement(a, 2, std::vector<StandoffAnnotation>{a[0]}, 2);
  CHECK(half.sentence_level == doctest::Approx(0.5));
  CHECK(half.per_tag.at("TargAble").precision() == doctest::Approx(0.0));
  CHECK(half.per_tag.at("TrigAble").recall() == doctest::Approx(1.0));
}
