#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cogniview/emit.hpp"
#include "cogniview/equivalence.hpp"
#include "cogniview/error.hpp"
#include "cogniview/metrics.hpp"
#include "cogniview/optimize.hpp"
#include "cogniview/parser.hpp"

namespace cogniview::cli {
namespace {

namespace fs = std::filesystem;
using analysis::CLConfig;

/// Config flags shared by several subcommands. Each field keeps every
/// option registered for it; at most one subcommand is parsed per run.
struct ConfigFlags {
  std::vector<CLI::Option*> capacity;
  std::vector<CLI::Option*> line_limit;
  std::vector<CLI::Option*> depth_budget;
  std::vector<CLI::Option*> max_iters;
  std::vector<CLI::Option*> trials;
  std::vector<CLI::Option*> seed;
  int capacity_v = 0;
  int line_limit_v = 0;
  int depth_budget_v = 0;
  int max_iters_v = 0;
  int trials_v = 0;
  std::uint64_t seed_v = 0;

  void add_metric_flags(CLI::App& app) {
    capacity.push_back(app.add_option("--capacity", capacity_v, "Working-memory capacity (live variables)"));
    line_limit.push_back(app.add_option("--line-limit", line_limit_v, "Maximum code points per line"));
    depth_budget.push_back(app.add_option("--depth-budget", depth_budget_v, "Call-stack frames before charging"));
  }
  void add_search_flags(CLI::App& app) {
    max_iters.push_back(app.add_option("--max-iters", max_iters_v, "Optimizer iteration cap"));
    add_check_flags(app);
  }
  void add_check_flags(CLI::App& app) {
    trials.push_back(app.add_option("--trials", trials_v, "Fuzz trials per function"));
    seed.push_back(app.add_option("--seed", seed_v, "Fuzz seed"));
  }

  /// Defaults, then the COGNIVIEW_CONFIG file, then explicit flags.
  [[nodiscard]] CLConfig resolve() const {
    CLConfig cfg;
    if (const char* path = std::getenv("COGNIVIEW_CONFIG"); path != nullptr && *path != '\0') {
      std::ifstream in(path);
      if (!in) throw Error(ErrorKind::ConfigError, std::string("cannot read config file ") + path);
      nlohmann::json json;
      try {
        in >> json;
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("invalid JSON in ") + path + ": " + e.what());
      }
      cfg.merge_json(json);
    }
    const auto set = [](const std::vector<CLI::Option*>& opts, auto& field, auto value) {
      for (const CLI::Option* opt : opts) {
        if (opt->count() > 0) field = value;
      }
    };
    set(capacity, cfg.capacity, capacity_v);
    set(line_limit, cfg.line_limit, line_limit_v);
    set(depth_budget, cfg.depth_budget, depth_budget_v);
    set(max_iters, cfg.max_iters, max_iters_v);
    set(trials, cfg.fuzz_trials, trials_v);
    set(seed, cfg.seed, seed_v);
    cfg.validate();
    return cfg;
  }
};

void print_error(std::ostream& err, const Error& e, const std::string& file) {
  err << "error: " << to_string(e.kind()) << ": " << e.detail() << " at " << file << ":" << e.span().line << ":"
      << e.span().col << "\n";
}

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::ConfigError ? kUsage : kInputError;
}

std::string replace_suffix(const std::string& path, const std::string& suffix, const std::string& with) {
  if (path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return path.substr(0, path.size() - suffix.size()) + with;
  }
  return path + with;
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path);
}

std::string format_score(const Rational& r) { return analysis::score_to_json(r).dump(); }

// --- shared pipeline ----------------------------------------------------------

struct Pipeline {
  refactor::OptimizeResult opt;
  emit::VirtualView view;
  bool fell_back = false;  // final re-check failed; the view shows the input
};

Pipeline run_pipeline(const syntax::SourceUnit& source, const CLConfig& cfg, bool check,
                      const std::string& view_label) {
  const syntax::ParsedSource parsed = syntax::parse_source(source);
  analysis::cl_report(parsed.module, source, cfg);  // surfaces unresolved calls up front
  Pipeline p;
  p.opt = refactor::optimize(parsed.module, cfg, check);
  const auto& final_check = p.opt.trace.final_check;
  p.fell_back = final_check && !final_check->equivalent;
  p.view = emit::emit_view(p.fell_back ? parsed.module : p.opt.module, source, cfg, view_label);
  return p;
}

std::size_t failures(const Pipeline& p) { return p.opt.trace.equivalence_failures(); }

// --- metrics --------------------------------------------------------------------

void print_human(std::ostream& out, const analysis::CognitiveLoadReport& r) {
  out << "file: " << r.file << "\n";
  out << "composite score: " << format_score(r.composite_score) << "\n";
  for (const auto& f : r.functions) {
    out << "  " << f.name << ": max_nesting=" << f.max_nesting << " mean_nesting=" << std::fixed
        << std::setprecision(2) << f.mean_nesting << std::defaultfloat << " peak_live=" << f.peak_live
        << " overload=" << f.overload_count << "\n";
  }
  out << "call depth: " << r.call_max_depth << " (budget " << r.depth_budget << ")";
  if (!r.recursive_names.empty()) {
    out << ", recursive:";
    for (const auto& n : r.recursive_names) out << " " << n;
  }
  out << "\n";
  out << "overlong lines (> " << r.line_limit << "): " << r.overlong_lines.size() << "\n";
  for (const auto& l : r.overlong_lines) out << "  line " << l.line << ": " << l.length << "\n";
}

int cmd_metrics(const std::string& file, bool json, const CLConfig& cfg, std::ostream& out) {
  const syntax::SourceUnit source = syntax::SourceUnit::load(file);
  const syntax::ParsedSource parsed = syntax::parse_source(source);
  const analysis::CognitiveLoadReport report = analysis::cl_report(parsed.module, source, cfg);
  if (json) {
    out << report.to_json().dump(2) << "\n";
  } else {
    print_human(out, report);
  }
  return kOk;
}

// --- view -------------------------------------------------------------------------

struct ViewPaths {
  std::string view;
  std::string map;
  std::string trace;
};

ViewPaths view_paths(const std::string& input, const std::string& out_flag, const std::string& map_flag) {
  ViewPaths p;
  p.view = out_flag.empty() ? replace_suffix(input, ".mpy", ".view.mpy") : out_flag;
  p.map = map_flag.empty() ? replace_suffix(p.view, ".mpy", ".map.json") : map_flag;
  p.trace = replace_suffix(p.view, ".mpy", ".trace.json");
  return p;
}

void write_view(const Pipeline& p, const ViewPaths& paths) {
  write_file(paths.view, p.view.text);
  write_file(paths.map, p.view.map_json().dump(2) + "\n");
  write_file(paths.trace, p.opt.trace.to_json().dump(2) + "\n");
}

int cmd_view(const std::string& file, const std::string& out_flag, const std::string& map_flag, bool no_check,
             const CLConfig& cfg, std::ostream& out, std::ostream& err) {
  const syntax::SourceUnit source = syntax::SourceUnit::load(file);
  const ViewPaths paths = view_paths(file, out_flag, map_flag);
  const Pipeline p = run_pipeline(source, cfg, !no_check, paths.view);
  write_view(p, paths);
  out << "score " << format_score(p.view.report_before.composite_score) << " -> "
      << format_score(p.view.report_after.composite_score) << ", " << p.opt.trace.applied_count()
      << " applied, view " << paths.view << "\n";
  for (const auto& u : p.view.unbreakable) {
    out << "  unbreakable line " << u.view_line << " (" << u.length << " code points)\n";
  }
  if (failures(p) > 0) {
    err << "error: EquivalenceFailure: " << failures(p) << " candidate(s) changed behavior and were skipped at "
        << file << ":0:0\n";
    return kEquivalenceFailure;
  }
  return kOk;
}

// --- check ------------------------------------------------------------------------

int cmd_check(const std::string& orig, const std::string& view, const CLConfig& cfg, std::ostream& out,
              std::ostream& err) {
  syntax::ModuleAst a;
  syntax::ModuleAst b;
  try {
    a = syntax::parse_source(syntax::SourceUnit::load(orig)).module;
  } catch (const Error& e) {
    print_error(err, e, orig);
    return exit_code_for(e);
  }
  try {
    b = syntax::parse_source(syntax::SourceUnit::load(view)).module;
  } catch (const Error& e) {
    print_error(err, e, view);
    return exit_code_for(e);
  }
  const interp::EquivalenceVerdict verdict = interp::check_equivalence(a, b, cfg);
  if (verdict.equivalent) {
    out << "equivalent (" << verdict.trials << " trials)\n";
    return kOk;
  }
  out << verdict.counterexample->to_json().dump(2) << "\n";
  err << "error: EquivalenceFailure: " << verdict.counterexample->reason << " in "
      << verdict.counterexample->function << " at " << view << ":0:0\n";
  return kEquivalenceFailure;
}

// --- corpus -----------------------------------------------------------------------

struct CorpusRow {
  std::string path;  // relative to the corpus root, '/' separated
  std::optional<Pipeline> result;
  std::optional<Error> error;
};

std::vector<std::string> corpus_files(const fs::path& root) {
  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const bool is_view = name.size() >= 9 && name.compare(name.size() - 9, 9, ".view.mpy") == 0;
    if (entry.path().extension() != ".mpy" || is_view) continue;
    files.push_back(fs::relative(entry.path(), root).generic_string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

nlohmann::ordered_json row_json(const CorpusRow& row) {
  nlohmann::ordered_json j;
  j["path"] = row.path;
  if (row.error) {
    j["error"] = {{"kind", std::string(to_string(row.error->kind()))},
                  {"detail", row.error->detail()},
                  {"line", row.error->span().line},
                  {"col", row.error->span().col}};
    return j;
  }
  const Pipeline& p = *row.result;
  j["score_before"] = analysis::score_to_json(p.view.report_before.composite_score);
  j["score_after"] = analysis::score_to_json(p.view.report_after.composite_score);
  j["applied_count"] = p.opt.trace.applied_count();
  j["equivalence_failures"] = failures(p);
  j["before"] = p.view.report_before.to_json();
  j["after"] = p.view.report_after.to_json();
  return j;
}

int cmd_corpus(const std::string& dir, const std::string& report_path, const std::string& out_dir, int jobs,
               bool timing, bool no_check, const CLConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw Error(ErrorKind::IoError, "not a directory: " + dir);
  const std::vector<std::string> files = corpus_files(root);
  std::vector<CorpusRow> rows(files.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      CorpusRow& row = rows[i];
      row.path = files[i];
      try {
        const syntax::SourceUnit loaded = syntax::SourceUnit::load((root / files[i]).string());
        const syntax::SourceUnit source(files[i], std::string(loaded.content()));
        const std::string view_label = replace_suffix(files[i], ".mpy", ".view.mpy");
        row.result = run_pipeline(source, cfg, !no_check, view_label);
        if (!out_dir.empty()) {
          const std::string target = (fs::path(out_dir) / view_label).string();
          write_view(*row.result, view_paths(target, target, ""));
        }
      } catch (const Error& e) {
        row.error = e;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(files.size(), 1))));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  nlohmann::ordered_json report;
  report["config"] = cfg.to_json();
  auto& rows_json = report["files"] = nlohmann::ordered_json::array();
  Rational reduction;
  std::size_t processed = 0;
  std::size_t at_zero = 0;
  std::size_t errors = 0;
  std::size_t eq_failures = 0;
  for (const CorpusRow& row : rows) {
    rows_json.push_back(row_json(row));
    if (row.error) {
      ++errors;
      print_error(err, *row.error, row.path);
      continue;
    }
    ++processed;
    const auto& v = row.result->view;
    reduction += v.report_before.composite_score - v.report_after.composite_score;
    if (v.report_after.composite_score == Rational(0)) ++at_zero;
    eq_failures += failures(*row.result);
  }
  nlohmann::ordered_json agg;
  agg["files"] = rows.size();
  agg["processed"] = processed;
  agg["errors"] = errors;
  agg["equivalence_failures"] = eq_failures;
  agg["mean_score_reduction"] =
      processed == 0 ? nlohmann::ordered_json(0)
                     : analysis::score_to_json(reduction * Rational(1, static_cast<std::int64_t>(processed)));
  agg["fixpoint_zero_pct"] =
      processed == 0 ? nlohmann::ordered_json(0)
                     : analysis::score_to_json(Rational(static_cast<std::int64_t>(at_zero * 100),
                                                        static_cast<std::int64_t>(processed)));
  if (timing) {
    agg["total_runtime_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
  }
  report["aggregates"] = agg;
  write_file(report_path, report.dump(2) + "\n");
  out << processed << "/" << rows.size() << " files processed, mean score reduction "
      << agg["mean_score_reduction"].dump() << ", report " << report_path << "\n";
  if (errors > 0) return kInputError;
  if (eq_failures > 0) {
    err << "error: EquivalenceFailure: " << eq_failures << " candidate(s) changed behavior and were skipped at "
        << dir << ":0:0\n";
    return kEquivalenceFailure;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cognitive-load-reducing virtual views of MiniPy code", "cogniview"};
  app.require_subcommand(1);

  ConfigFlags flags;
  std::string file;
  bool json = false;
  CLI::App* metrics = app.add_subcommand("metrics", "Print the cognitive-load report of a file");
  metrics->add_option("file", file, "MiniPy source")->required();
  metrics->add_flag("--json", json, "Emit JSON");
  flags.add_metric_flags(*metrics);

  std::string out_path;
  std::string map_path;
  bool no_check = false;
  CLI::App* view = app.add_subcommand("view", "Optimize a file and write its virtual view");
  view->add_option("file", file, "MiniPy source")->required();
  view->add_option("-o,--output", out_path, "View path (default <input>.view.mpy)");
  view->add_option("--map", map_path, "Provenance map path");
  view->add_flag("--no-check", no_check, "Skip the equivalence oracle (unsafe)");
  flags.add_metric_flags(*view);
  flags.add_search_flags(*view);

  std::string view_file;
  CLI::App* check = app.add_subcommand("check", "Differentially test a view against its original");
  check->add_option("orig", file, "Original source")->required();
  check->add_option("view", view_file, "View source")->required();
  flags.add_check_flags(*check);

  std::string report_path;
  std::string out_dir;
  int jobs = 1;
  bool timing = false;
  CLI::App* corpus = app.add_subcommand("corpus", "Process every *.mpy file below a directory");
  corpus->add_option("dir", file, "Corpus directory")->required();
  corpus->add_option("--report", report_path, "Summary JSON path")->required();
  corpus->add_option("--out-dir", out_dir, "Write views below this directory");
  corpus->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  corpus->add_flag("--timing", timing, "Include total runtime in the report");
  corpus->add_flag("--no-check", no_check, "Skip the equivalence oracle (unsafe)");
  flags.add_metric_flags(*corpus);
  flags.add_search_flags(*corpus);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: Usage: " << e.what() << " at <command line>:0:0\n";
    return kUsage;
  }

  try {
    const CLConfig cfg = flags.resolve();
    if (metrics->parsed()) return cmd_metrics(file, json, cfg, out);
    if (view->parsed()) return cmd_view(file, out_path, map_path, no_check, cfg, out, err);
    if (check->parsed()) return cmd_check(file, view_file, cfg, out, err);
    return cmd_corpus(file, report_path, out_dir, jobs, timing, no_check, cfg, out, err);
  } catch (const Error& e) {
    print_error(err, e, file);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << " at " << file << ":0:0\n";
    return kInputError;
  }
}

}  // namespace cogniview::cli
