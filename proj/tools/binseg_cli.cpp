// binseg: binary segmentation with candidate-split instrumentation.
//
// Subcommands: synth, fit, bounds, tree, analyze. All CSV output is
// deterministic: identical invocations produce byte-identical files.
// Exit codes: 0 success, 1 usage, 2 data error, 3 infeasible parameters.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "binseg/analyze.hpp"
#include "binseg/bounds.hpp"
#include "binseg/csv.hpp"
#include "binseg/errors.hpp"
#include "binseg/segmenter.hpp"
#include "binseg/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInfeasible = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw binseg::ParseError(path, 0, "cannot open output file");
  out << content;
  if (!out) throw binseg::ParseError(path, 0, "write failed");
}

struct SynthArgs {
  std::string kind;
  std::int64_t n = 0;
  double scale = 1.0;
  binseg::TieBreakParams tie;
  std::string out;
};

int run_synth(const SynthArgs& args) {
  std::vector<double> values;
  if (args.kind == "tiebreak") {
    values = binseg::tiebreak_data(args.tie);
  } else if (args.kind == "worst") {
    values = binseg::worst_case_data(args.n);
  } else {
    values = binseg::best_case_data(args.n, args.scale);
  }
  std::string csv = "value\n";
  for (double v : values) csv += binseg::format_double(v) + "\n";
  write_output(args.out, csv);
  return kExitOk;
}

struct FitArgs {
  std::string data;
  std::string loss = "square";
  std::int64_t max_splits = -1;  // -1: n-1 per sequence
  std::int64_t min_seg_len = 1;
  std::string tie_break = "full";
  std::string out;
  std::string metrics_out;
  std::string trace_out;
};

int run_fit(const FitArgs& args) {
  const binseg::LossKind loss = binseg::loss_kind_from_string(args.loss);
  const binseg::TieBreakMode mode =
      binseg::tie_break_from_string(args.tie_break);
  const auto sequences = binseg::read_sequence_file(args.data);
  const bool tag = sequences.size() > 1;  // prepend sequence_id column

  std::string splits_csv =
      std::string(tag ? "sequence_id," : "") +
      "iteration,position,decrease,model_loss\n";
  std::string metrics_csv =
      std::string(tag ? "sequence_id," : "") +
      "iteration,candidates_this_iteration,candidates_total,"
      "container_size_after,max_container_size\n";
  std::string trace_csv =
      std::string(tag ? "sequence_id," : "") + "iteration,size_before_insert\n";

  for (const auto& named : sequences) {
    const binseg::DataSequence seq(named.values);
    const std::int64_t budget =
        args.max_splits >= 0 ? args.max_splits : seq.size() - 1;
    binseg::BinsegResult run;
    try {
      run = binseg::binseg(seq, loss, budget, args.min_seg_len, mode);
    } catch (const std::domain_error& e) {
      throw std::domain_error("sequence '" + named.id + "': " + e.what());
    }
    const std::string prefix = tag ? named.id + "," : "";
    std::int64_t max_so_far = 0;
    for (std::size_t i = 0; i < run.metrics.iterations.size(); ++i) {
      const auto& it = run.metrics.iterations[i];
      splits_csv += prefix + std::to_string(it.iteration) + "," +
                    std::to_string(it.split) + "," +
                    binseg::format_double(it.decrease) + "," +
                    binseg::format_double(it.model_loss) + "\n";
      max_so_far = std::max(max_so_far, it.container_size_after);
      metrics_csv += prefix + std::to_string(it.iteration) + "," +
                     std::to_string(it.candidates) + "," +
                     std::to_string(it.cumulative_candidates) + "," +
                     std::to_string(it.container_size_after) + "," +
                     std::to_string(max_so_far) + "\n";
      for (std::int64_t size : it.sizes_before_inserts) {
        trace_csv += prefix + std::to_string(it.iteration) + "," +
                     std::to_string(size) + "\n";
      }
    }
  }
  write_output(args.out, splits_csv);
  if (!args.metrics_out.empty()) write_output(args.metrics_out, metrics_csv);
  if (!args.trace_out.empty()) write_output(args.trace_out, trace_csv);
  return kExitOk;
}

struct BoundsArgs {
  std::int64_t n = 0;
  std::int64_t splits = 0;
  std::int64_t m = 1;
  std::string mode = "all";
  std::string out;
};

std::int64_t one_bound(const std::string& mode, std::int64_t n, std::int64_t k,
                       std::int64_t m) {
  if (mode == "dp-literal") return binseg::dp_literal(n, k, m).best();
  if (mode == "dp-operational") {
    // with no splits nothing is ever evaluated
    return k == 0 ? 0 : binseg::dp_operational(n, k, m);
  }
  if (mode == "heuristic") return binseg::heuristic_lower_bound(n, k, m);
  return binseg::worst_case(n, k, m);
}

int run_bounds(const BoundsArgs& args) {
  std::vector<std::string> modes;
  if (args.mode == "all") {
    modes = {"dp-literal", "dp-operational", "heuristic", "worst"};
  } else {
    modes = {args.mode};
  }
  std::string csv = "mode,n,splits,m,candidates\n";
  for (const std::string& mode : modes) {
    csv += mode + "," + std::to_string(args.n) + "," +
           std::to_string(args.splits) + "," + std::to_string(args.m) + "," +
           std::to_string(one_bound(mode, args.n, args.splits, args.m)) + "\n";
  }
  write_output(args.out, csv);
  return kExitOk;
}

struct TreeArgs {
  std::int64_t n = 0;
  std::int64_t splits = 0;
  std::int64_t m = 1;
  std::string format = "text";
  std::string out;
};

int run_tree(const TreeArgs& args) {
  const binseg::SplitTree tree =
      binseg::reconstruct_tree(binseg::dp_literal(args.n, args.splits, args.m));
  std::string body;
  if (args.format == "text") {
    body = binseg::tree_text(tree);
  } else if (args.format == "json") {
    body = binseg::tree_json(tree) + "\n";
  } else {
    body = binseg::tree_dot(tree);
  }
  write_output(args.out, body);
  return kExitOk;
}

struct AnalyzeArgs {
  std::string data;
  std::string loss = "square";
  std::int64_t splits = -1;  // -1: max policy K = N-1
  std::int64_t m = 1;
  std::int64_t dp_threshold = 200;
  int jobs = 1;
  bool timings = false;
  std::string out;
};

int run_analyze(const AnalyzeArgs& args) {
  binseg::AnalyzeOptions options;
  options.loss = binseg::loss_kind_from_string(args.loss);
  options.fixed_splits = args.splits;
  options.min_seg_len = args.m;
  options.dp_threshold = args.dp_threshold;
  options.jobs = args.jobs;
  options.timings = args.timings;

  auto sequences = binseg::read_sequence_input(args.data);
  // report and skip sequences the loss cannot handle; the rest still run
  std::size_t skipped = 0;
  if (options.loss == binseg::LossKind::Poisson) {
    std::vector<binseg::NamedSequence> usable;
    usable.reserve(sequences.size());
    for (auto& named : sequences) {
      bool negative = false;
      for (double v : named.values) negative = negative || v < 0.0;
      if (negative) {
        std::cerr << "binseg: sequence '" << named.id
                  << "': poisson loss requires nonnegative data; skipped\n";
        ++skipped;
      } else {
        usable.push_back(std::move(named));
      }
    }
    sequences = std::move(usable);
  }
  const auto rows = binseg::analyze_sequences(sequences, options);
  std::string csv = binseg::analysis_csv_header() + "\n";
  for (const auto& row : rows) csv += binseg::analysis_csv_row(row) + "\n";
  write_output(args.out, csv);
  return skipped == 0 ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binary segmentation with candidate-split instrumentation"};
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "generate a synthetic dataset as CSV");
  synth_cmd
      ->add_option("--kind", synth.kind, "best | worst | tiebreak")
      ->required()
      ->check(CLI::IsMember({"best", "worst", "tiebreak"}));
  synth_cmd->add_option("--n", synth.n,
                        "length (best: power of two; worst: >= 2)");
  synth_cmd->add_option("--scale", synth.scale,
                        "contrast scale for --kind best");
  synth_cmd->add_option("--a", synth.tie.a, "tiebreak low-block amplitude");
  synth_cmd->add_option("--b", synth.tie.b, "tiebreak high-block level");
  synth_cmd->add_option("--x", synth.tie.x, "tiebreak outer stagger");
  synth_cmd->add_option("--eps", synth.tie.eps, "tiebreak inner stagger");
  synth_cmd->add_option("--out", synth.out, "output file (default stdout)");

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand(
      "fit", "run the segmentation engine on a CSV sequence file");
  fit_cmd->add_option("data", fit.data, "CSV file with a value column")
      ->required();
  fit_cmd->add_option("--loss", fit.loss, "square | l1 | poisson")
      ->check(CLI::IsMember({"square", "l1", "poisson"}));
  fit_cmd->add_option("--max-splits", fit.max_splits,
                      "split budget K (default: N-1 per sequence)");
  fit_cmd->add_option("--m,--min-seg-len", fit.min_seg_len,
                      "minimum segment length")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--tie-break", fit.tie_break, "full | naive")
      ->check(CLI::IsMember({"full", "naive"}));
  fit_cmd->add_option("--out", fit.out, "splits CSV (default stdout)");
  fit_cmd->add_option("--metrics-out", fit.metrics_out,
                      "per-iteration candidate and container metrics CSV");
  fit_cmd->add_option("--trace-out", fit.trace_out,
                      "container size before every insert, as CSV");

  BoundsArgs bounds;
  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "candidate-count bounds for given n, splits and m");
  bounds_cmd->add_option("--n", bounds.n, "sequence length")
      ->required()
      ->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--splits", bounds.splits, "split count K")
      ->required()
      ->check(CLI::NonNegativeNumber);
  bounds_cmd->add_option("--m,--min-seg-len", bounds.m,
                         "minimum segment length")
      ->check(CLI::PositiveNumber);
  bounds_cmd
      ->add_option("--mode", bounds.mode,
                   "dp-literal | dp-operational | heuristic | worst | all")
      ->check(CLI::IsMember(
          {"dp-literal", "dp-operational", "heuristic", "worst", "all"}));
  bounds_cmd->add_option("--out", bounds.out, "output file (default stdout)");

  TreeArgs tree;
  CLI::App* tree_cmd = app.add_subcommand(
      "tree", "reconstruct and print one best-case split tree");
  tree_cmd->add_option("--n", tree.n, "sequence length")
      ->required()
      ->check(CLI::PositiveNumber);
  tree_cmd->add_option("--splits", tree.splits, "split count K")
      ->required()
      ->check(CLI::NonNegativeNumber);
  tree_cmd->add_option("--m,--min-seg-len", tree.m, "minimum segment length")
      ->check(CLI::PositiveNumber);
  tree_cmd->add_option("--format", tree.format, "text | json | dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  tree_cmd->add_option("--out", tree.out, "output file (default stdout)");

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "per-sequence empirical counts and bounds for a corpus");
  analyze_cmd
      ->add_option("data", analyze.data, "CSV file or directory of CSV files")
      ->required();
  analyze_cmd->add_option("--loss", analyze.loss, "square | l1 | poisson")
      ->check(CLI::IsMember({"square", "l1", "poisson"}));
  analyze_cmd->add_option(
      "--splits", analyze.splits,
      "fixed split budget K (default: max policy K = N-1)");
  analyze_cmd
      ->add_option("--m,--min-seg-len", analyze.m, "minimum segment length")
      ->check(CLI::PositiveNumber);
  analyze_cmd
      ->add_option("--dp-threshold", analyze.dp_threshold,
                   "compute the exact dp bound only for N <= this")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--jobs", analyze.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--timings", analyze.timings,
                        "fill the runtime_ms column (not deterministic)");
  analyze_cmd->add_option("--out", analyze.out,
                          "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // synth needs --n for best and worst only
  if (synth_cmd->parsed() && synth.kind != "tiebreak" &&
      synth_cmd->count("--n") == 0) {
    std::cerr << "binseg: synth --kind " << synth.kind << " requires --n\n";
    return kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) return run_synth(synth);
    if (fit_cmd->parsed()) return run_fit(fit);
    if (bounds_cmd->parsed()) return run_bounds(bounds);
    if (tree_cmd->parsed()) return run_tree(tree);
    return run_analyze(analyze);
  } catch (const binseg::InfeasibleError& e) {
    std::cerr << "binseg: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const binseg::ParseError& e) {
    std::cerr << "binseg: " << e.what() << "\n";
    return kExitData;
  } catch (const std::domain_error& e) {
    std::cerr << "binseg: " << e.what() << "\n";
    // feasibility/shape problems for parameter-driven commands, bad data for
    // the data-driven ones
    const bool parameter_cmd = synth_cmd->parsed() || bounds_cmd->parsed() ||
                               tree_cmd->parsed();
    return parameter_cmd ? kExitInfeasible : kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "binseg: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "binseg: " << e.what() << "\n";
    return kExitData;
  }
}
