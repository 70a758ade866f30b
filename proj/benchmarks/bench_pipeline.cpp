#include <benchmark/benchmark.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cogniview/emit.hpp"
#include "cogniview/equivalence.hpp"
#include "cogniview/lexer.hpp"
#include "cogniview/liveness.hpp"
#include "cogniview/metrics.hpp"
#include "cogniview/optimize.hpp"
#include "cogniview/parser.hpp"
#include "cogniview/printer.hpp"
#include "cogniview/wrap.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cogniview;

struct Corpus {
  std::vector<syntax::SourceUnit> sources;
  std::vector<syntax::ModuleAst> modules;
  std::size_t bytes = 0;
};

const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus out;
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(COGNIVIEW_CORPUS_DIR)) {
      if (e.path().extension() == ".mpy") paths.push_back(e.path());
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) {
      std::ifstream in(p, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      out.bytes += ss.str().size();
      out.sources.emplace_back(p.string(), ss.str());
      out.modules.push_back(syntax::parse_source(out.sources.back()).module);
    }
    return out;
  }();
  return c;
}

void BM_Tokenize(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state) {
    for (const auto& s : c.sources) benchmark::DoNotOptimize(syntax::tokenize(s));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * c.bytes));
}
BENCHMARK(BM_Tokenize);

void BM_Parse(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state) {
    for (const auto& s : c.sources) benchmark::DoNotOptimize(syntax::parse_source(s));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * c.bytes));
}
BENCHMARK(BM_Parse);

void BM_Print(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state) {
    for (const auto& m : c.modules) benchmark::DoNotOptimize(syntax::print_ast(m));
  }
}
BENCHMARK(BM_Print);

void BM_Metrics(benchmark::State& state) {
  const auto& c = corpus();
  const analysis::CLConfig cfg;
  for (auto _ : state) {
    for (std::size_t i = 0; i < c.modules.size(); ++i) {
      benchmark::DoNotOptimize(analysis::cl_report(c.modules[i], c.sources[i], cfg));
    }
  }
}
BENCHMARK(BM_Metrics);

void BM_Wrap(benchmark::State& state) {
  const auto& c = corpus();
  analysis::CLConfig cfg;
  cfg.line_limit = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (const auto& m : c.modules) benchmark::DoNotOptimize(emit::wrap_lines(m, cfg));
  }
}
BENCHMARK(BM_Wrap)->Arg(20)->Arg(40)->Arg(80);

void BM_OptimizeNoCheck(benchmark::State& state) {
  const auto& c = corpus();
  const analysis::CLConfig cfg;
  for (auto _ : state) {
    for (const auto& m : c.modules) benchmark::DoNotOptimize(refactor::optimize(m, cfg, false));
  }
}
BENCHMARK(BM_OptimizeNoCheck)->Unit(benchmark::kMillisecond);

void BM_OptimizeChecked(benchmark::State& state) {
  const auto& c = corpus();
  const analysis::CLConfig cfg;
  for (auto _ : state) {
    for (const auto& m : c.modules) benchmark::DoNotOptimize(refactor::optimize(m, cfg, true));
  }
}
BENCHMARK(BM_OptimizeChecked)->Unit(benchmark::kMillisecond);

void BM_EquivalenceTrials(benchmark::State& state) {
  const auto& c = corpus();
  analysis::CLConfig cfg;
  cfg.fuzz_trials = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (const auto& m : c.modules) benchmark::DoNotOptimize(interp::check_equivalence(m, m, cfg));
  }
}
BENCHMARK(BM_EquivalenceTrials)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_EmitView(benchmark::State& state) {
  const auto& c = corpus();
  const analysis::CLConfig cfg;
  std::vector<syntax::ModuleAst> optimized;
  for (const auto& m : c.modules) optimized.push_back(refactor::optimize(m, cfg).module);
  for (auto _ : state) {
    for (std::size_t i = 0; i < optimized.size(); ++i) {
      benchmark::DoNotOptimize(emit::emit_view(optimized[i], c.sources[i], cfg));
    }
  }
}
BENCHMARK(BM_EmitView);

}  // namespace

BENCHMARK_MAIN();
