#pragma once

// Tables, charts, run manifest and the end-to-end pipeline driver.

#include "ackcensus/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ackcensus::report {

namespace fs = std::filesystem;

enum ExitStatus : int { kOk = 0, kInputError = 2, kParseError = 3, kOutputError = 4 };

/// Finalized per-discipline aggregates (sorted by label) plus their total.
struct Statistics {
  std::vector<metrics::DisciplineAggregate> disciplines;
  metrics::DisciplineAggregate total{"Total"};
  int k_max = 9;

  static Statistics from(const std::map<std::string, metrics::DisciplineAggregate>& by_discipline, int k_max = 9);
};

// ---- Tables ----------------------------------------------------------------

/// Columns discipline,N,N_ack,pct_ack,N_acknowledgee,pct_of_ack,pct_of_total.
/// Rows are sorted by pct_of_total descending (ties by label) with the total
/// row last. With no discipline rows only the header is written.
void emit_table1(std::ostream& out, std::span<const metrics::Table1Row> rows,
                 const std::optional<metrics::Table1Row>& total);

enum class FigureKind { Fig1, Fig2, Fig3, Fig4 };

std::string_view to_string(FigureKind kind);
/// Throws std::invalid_argument for anything but fig1..fig4.
FigureKind parse_figure_kind(std::string_view name);

/// Writes the data table of a figure as CSV.
void emit_figure_table(FigureKind kind, const Statistics& stats, std::ostream& out);
/// Renders a figure as a standalone SVG document.
std::string render_figure_svg(FigureKind kind, const Statistics& stats);

/// Writes `<kind>.csv` and `<kind>.svg` into `dir`.
void emit_figure_data(std::string_view kind, const Statistics& stats, const fs::path& dir);

/// Dispersion of per-discipline means (authors, acknowledgees, contributors).
void emit_dispersion(const Statistics& stats, std::ostream& out);
void emit_single_author_share(const Statistics& stats, std::ostream& out);

/// Every statistics file: table1, fig1..fig4 (csv + svg), dispersion,
/// single_author. Returns the file names written.
std::vector<std::string> write_statistics(const Statistics& stats, const fs::path& dir);

// ---- Summaries file --------------------------------------------------------

void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const metrics::ContributorSummary& summary);

/// Calls `sink` for every summary row. Throws std::runtime_error naming the
/// line on malformed input.
void read_summaries(std::istream& in, const std::function<void(metrics::ContributorSummary&&)>& sink);

// ---- Manifest --------------------------------------------------------------

std::string sha256_hex(std::string_view bytes);
/// Throws std::runtime_error when the file cannot be read.
std::string sha256_file(const fs::path& path);

struct RunManifest {
  struct Input {
    std::string role;
    std::string path;
    std::string sha256;
  };

  std::string command;
  std::vector<Input> inputs;
  std::string recognizer;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::string timestamp;  // UTC, ISO 8601

  std::string to_json() const;
};

std::string utc_timestamp();

// ---- Pipeline --------------------------------------------------------------

struct PipelineConfig {
  fs::path corpus;
  fs::path lexicon;
  fs::path blacklist;
  fs::path out_dir;
  std::optional<fs::path> discipline_map;
  std::optional<fs::path> honorifics;
  std::optional<fs::path> stopwords;
  std::optional<fs::path> particles;
  unsigned workers = 1;
  bool strict = true;
  int k_max = 9;
  std::size_t chunk_size = 8192;
};

struct PipelineResult {
  int status = kOk;
  std::string message;
  std::uint64_t records = 0;
  std::uint64_t skipped_lines = 0;
};

/// corpus -> recognizer -> cleaning -> aggregation -> files in out_dir.
/// Outputs are byte-identical for any worker count. On failure no table is
/// left behind in out_dir.
PipelineResult run_pipeline(const PipelineConfig& config, std::ostream& log);

/// Recomputes every statistics file from a saved summaries file.
PipelineResult run_report(const fs::path& summaries, const fs::path& out_dir, int k_max, std::ostream& log);

}  // namespace ackcensus::report
