// Times the OpenMP corpus drivers against their serial references on a
// replicated copy of the bundled corpus.
#include <chrono>
#include <algorithm>
#include <cstdio>
#include <functional>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mn/corpus.hpp"
#include "mn/rulegen.hpp"

using namespace mn;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
std::vector<T> replicate(const std::vector<T>& v, std::size_t times) {
  std::vector<T> out;
  out.reserve(v.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), v.begin(), v.end());
  return out;
}

template <class F>
double best_of(int repeat, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel vs serial corpus drivers"};
  std::size_t copies = 200;
  int repeat = 3;
  std::vector<int> threads = {1, 2, 4, 8};
  std::string data = MN_DATA_DIR;
  app.add_option("--copies", copies, "Times the 25-sentence corpus is replicated");
  app.add_option("--repeat", repeat, "Runs per measurement (best is reported)");
  app.add_option("--threads", threads, "Thread counts to try")->delimiter(',');
  app.add_option("--data", data, "Data directory");
  CLI11_PARSE(app, argc, argv);

  Lexicon lex = load_lexicon(slurp(data + "/seed_lexicon.txt"));
  auto rules = expand_templates(lex, load_templates(slurp(data + "/templates.txt"))).rules;
  auto trees = replicate(read_ptb(slurp(data + "/corpus/gold.ptb")), copies);
  auto tokens = replicate(read_token_tsv(slurp(data + "/corpus/gold.tokens.tsv")), copies);

  auto tagged = tag_structure_corpus_serial(trees, rules);
  std::vector<StandoffAnnotation> anns;
  for (std::size_t i = 0; i < tagged.size(); ++i)
    for (auto a : tagged[i].annotations) {
      a.sentence = i;
      anns.push_back(a);
    }

  std::printf("%zu sentences, %zu rules, %zu annotations\n\n", trees.size(), rules.size(), anns.size());
  std::printf("%-10s %8s %12s %12s %8s\n", "kernel", "threads", "serial (s)", "omp (s)", "speedup");

  struct Kernel {
    const char* name;
    std::function<void()> serial, parallel;
  };
  std::vector<Kernel> kernels = {
      {"structure", [&] { tag_structure_corpus_serial(trees, rules); }, [&] { tag_structure_corpus(trees, rules); }},
      {"string", [&] { tag_string_corpus_serial(tokens, lex); }, [&] { tag_string_corpus(tokens, lex); }},
      {"graft", [&] { graft_corpus_serial(trees, anns); }, [&] { graft_corpus(trees, anns); }},
  };
  for (const auto& k : kernels) {
    double serial = best_of(repeat, k.serial);
    for (int th : threads) {
      set_thread_count(th);
      double par = best_of(repeat, k.parallel);
      std::printf("%-10s %8d %12.4f %12.4f %7.2fx\n", k.name, th, serial, par, serial / par);
    }
  }

  // Same answers either way.
  set_thread_count(threads.back());
  auto p = tag_structure_corpus(trees, rules);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i].tree != tagged[i].tree || p[i].annotations != tagged[i].annotations) {
      std::fprintf(stderr, "mismatch at sentence %zu\n", i);
      return 1;
    }
  return 0;
}
