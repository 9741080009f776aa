// ackcensus: acknowledgee extraction and collaboration statistics.
//
//   ackcensus run      --corpus C --lexicon L --blacklist B --out DIR [...]
//   ackcensus report   --summaries FILE --out DIR [--k-max N]
//   ackcensus generate --out DIR [--seed N] [--records N | --papers-per-discipline N]
//   ackcensus evaluate --run DIR --truth FILE

#include "ackcensus/ner.hpp"
#include "ackcensus/report.hpp"
#include "ackcensus/synth.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>

namespace {

namespace report = ackcensus::report;
namespace synth = ackcensus::synth;

std::string format_share(const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : "n/a"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extract acknowledged individuals and compute collaboration statistics"};
  app.require_subcommand(1);

  report::PipelineConfig run_config;
  std::optional<std::string> discipline_map, honorifics, stopwords, particles;
  bool no_strict = false;
  auto* run = app.add_subcommand("run", "Full pipeline: corpus to tables, charts and audit trail");
  run->add_option("--corpus", run_config.corpus, "Line-delimited JSON corpus")->required();
  run->add_option("--lexicon", run_config.lexicon, "Surname benchmark list")->required();
  run->add_option("--blacklist", run_config.blacklist, "Names rejected as non-persons")->required();
  run->add_option("--out", run_config.out_dir, "Output directory")->required();
  run->add_option("--discipline-map", discipline_map, "journal,discipline CSV; overrides inline disciplines");
  run->add_option("--workers", run_config.workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--strict", run_config.strict, "Abort on the first malformed line (default)");
  run->add_flag("--no-strict", no_strict, "Skip malformed lines and report them");
  run->add_option("--k-max", run_config.k_max, "Largest author count in the fig4 table")->check(CLI::PositiveNumber);
  run->add_option("--honorifics", honorifics, "Replacement honorific list");
  run->add_option("--stopwords", stopwords, "Replacement stopword list");
  run->add_option("--particles", particles, "Replacement surname particle list");

  std::string summaries, report_out;
  int report_k_max = 9;
  auto* rep = app.add_subcommand("report", "Recompute statistics from a saved summaries file");
  rep->add_option("--summaries", summaries, "summaries.csv from a previous run")->required();
  rep->add_option("--out", report_out, "Output directory")->required();
  rep->add_option("--k-max", report_k_max, "Largest author count in the fig4 table")->check(CLI::PositiveNumber);

  std::string generate_out;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> records, per_discipline;
  auto* gen = app.add_subcommand("generate", "Write a synthetic corpus with ground truth");
  gen->add_option("--out", generate_out, "Output directory")->required();
  gen->add_option("--seed", seed, "Random seed");
  auto* records_opt = gen->add_option("--records", records, "Total papers, split like the real disciplines");
  gen->add_option("--papers-per-discipline", per_discipline, "Papers in every discipline")->excludes(records_opt);

  std::string eval_run, eval_truth;
  auto* eval = app.add_subcommand("evaluate", "Score a run against generated ground truth");
  eval->add_option("--run", eval_run, "Output directory of `run`")->required();
  eval->add_option("--truth", eval_truth, "truth.jsonl from `generate`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : report::kInputError;
  }

  if (*run) {
    if (discipline_map) run_config.discipline_map = *discipline_map;
    if (honorifics) run_config.honorifics = *honorifics;
    if (stopwords) run_config.stopwords = *stopwords;
    if (particles) run_config.particles = *particles;
    if (no_strict && run_config.strict) {
      std::cerr << "error: --strict and --no-strict are mutually exclusive\n";
      return report::kInputError;
    }
    run_config.strict = !no_strict;
    return report::run_pipeline(run_config, std::cerr).status;
  }
  if (*rep) return report::run_report(summaries, report_out, report_k_max, std::cerr).status;

  if (*gen) {
    try {
      auto config = per_discipline ? synth::GeneratorConfig::with_papers_per_discipline(*per_discipline, seed)
                                   : synth::GeneratorConfig::with_total(records.value_or(10000), seed);
      const auto result = synth::generate(config, generate_out);
      fmt::print(stderr, "{} records written to {}\n", result.records, generate_out);
      return report::kOk;
    } catch (const std::invalid_argument& e) {
      fmt::print(stderr, "error: {}\n", e.what());
      return report::kInputError;
    } catch (const std::exception& e) {
      fmt::print(stderr, "error: {}\n", e.what());
      return report::kOutputError;
    }
  }

  if (*eval) {
    try {
      std::ifstream truth_in(eval_truth);
      if (!truth_in) throw std::runtime_error("cannot read " + eval_truth);
      const auto truth = synth::read_truth(truth_in);
      const auto output = synth::load_run_output(eval_run);
      const auto e = synth::evaluate(output, truth);
      fmt::print("records,{}\nplanted,{}\nextracted,{}\nmatched,{}\nprecision,{}\nrecall,{}\n", truth.size(),
                 e.overall.planted, e.overall.extracted, e.overall.matched, format_share(e.overall.precision()),
                 format_share(e.overall.recall()));
      return report::kOk;
    } catch (const std::exception& e) {
      fmt::print(stderr, "error: {}\n", e.what());
      return report::kInputError;
    }
  }
  return report::kInputError;
}
