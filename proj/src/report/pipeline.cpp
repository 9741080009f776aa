#include "ackcensus/cleanse.hpp"
#include "ackcensus/ingest.hpp"
#include "ackcensus/ner.hpp"
#include "ackcensus/report.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <thread>
#include <variant>

namespace ackcensus::report {

namespace {

// Failure carrying an exit status; caught once at the top of each driver.
struct Failure {
  int status;
  std::string message;
};

[[noreturn]] void fail(int status, std::string message) { throw Failure{status, std::move(message)}; }

std::ifstream open_input(const fs::path& path, std::string_view role) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) fail(kInputError, fmt::format("{} not found: {}", role, path.string()));
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kInputError, fmt::format("cannot read {}: {}", role, path.string()));
  return in;
}

std::vector<std::string> load_tokens(const fs::path& path, std::string_view role) {
  auto in = open_input(path, role);
  return ingest::load_token_list(in);
}

// All outputs are written into a hidden staging directory inside out_dir and
// moved into place only after the whole run succeeded.
class Staging {
 public:
  explicit Staging(const fs::path& out_dir) : out_dir_(out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    if (ec || !fs::is_directory(out_dir_))
      fail(kOutputError, fmt::format("cannot create output directory {}: {}", out_dir_.string(), ec.message()));
    dir_ = out_dir_ / ".ackcensus-staging";
    fs::remove_all(dir_, ec);
    if (!fs::create_directory(dir_, ec) || ec)
      fail(kOutputError, fmt::format("output directory not writable: {}", out_dir_.string()));
  }

  Staging(const Staging&) = delete;
  Staging& operator=(const Staging&) = delete;

  ~Staging() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  const fs::path& dir() const { return dir_; }

  std::ofstream open(const std::string& name) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) fail(kOutputError, fmt::format("cannot write {}", (out_dir_ / name).string()));
    names_.push_back(name);
    return out;
  }

  void adopt(const std::vector<std::string>& names) { names_.insert(names_.end(), names.begin(), names.end()); }

  void commit() {
    for (const auto& name : names_) {
      std::error_code ec;
      fs::rename(dir_ / name, out_dir_ / name, ec);
      if (ec) fail(kOutputError, fmt::format("cannot move {} into place: {}", name, ec.message()));
    }
  }

 private:
  fs::path out_dir_;
  fs::path dir_;
  std::vector<std::string> names_;
};

void close_checked(std::ofstream& out, std::string_view name) {
  out.flush();
  if (!out) fail(kOutputError, fmt::format("write failed: {}", name));
  out.close();
}

std::vector<std::string> write_statistics_checked(const Statistics& stats, const fs::path& dir) {
  try {
    return write_statistics(stats, dir);
  } catch (const std::runtime_error& e) {
    fail(kOutputError, e.what());
  }
}

// What one corpus line turns into. Text fields are preformatted by the
// worker so the writer thread only appends bytes.
struct LineResult {
  std::size_t line = 0;
  bool blank = false;
  std::optional<ingest::MalformedLine> error;
  metrics::ContributorSummary summary;
  std::string audit;
  std::string acknowledgees;
  std::size_t candidates = 0;
  std::array<std::uint64_t, 5> rejections{};
};

struct Context {
  const ingest::DisciplineMap* map;
  const ner::Recognizer& recognizer;
  const cleanse::Filters& filters;
};

void process_line(const std::string& text, LineResult& out, const Context& ctx) {
  if (ingest::trim(text).empty()) {
    out.blank = true;
    return;
  }
  Record record;
  try {
    record = ingest::parse_record(text, out.line, ctx.map);
  } catch (const ingest::MalformedLine& e) {
    out.error = e;
    return;
  }

  std::vector<ner::NameCandidate> candidates;
  if (record.ack_text) candidates = ctx.recognizer.extract(*record.ack_text);
  auto result = cleanse::clean_record(record, candidates, ctx.filters);

  out.candidates = result.outcomes.size();
  for (const auto& o : result.outcomes)
    if (o.rejection) ++out.rejections[static_cast<std::size_t>(stage_of(*o.rejection) - 1)];

  std::ostringstream audit;
  cleanse::write_audit_rows(audit, record.id, result.outcomes);
  out.audit = std::move(audit).str();

  const std::string id = ingest::csv_field(record.id);
  for (const auto& name : result.acknowledgees.members()) {
    out.acknowledgees += id;
    out.acknowledgees += ',';
    out.acknowledgees += ingest::csv_field(name.canonical());
    out.acknowledgees += '\n';
  }
  out.summary = metrics::summarize(record, result.acknowledgees);
}

void process_chunk(const std::vector<std::string>& lines, std::vector<LineResult>& results, const Context& ctx,
                   unsigned workers) {
  const std::size_t n = lines.size();
  if (workers <= 1 || n < 2 * workers) {
    for (std::size_t i = 0; i < n; ++i) process_line(lines[i], results[i], ctx);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  const std::size_t slice = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * slice);
    const std::size_t end = std::min(n, begin + slice);
    threads.emplace_back([&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) process_line(lines[i], results[i], ctx);
    });
  }
}

struct Totals {
  std::uint64_t records = 0;
  std::uint64_t skipped = 0;
  std::uint64_t with_ack_text = 0;
  std::uint64_t candidates = 0;
  std::uint64_t acknowledgees = 0;
  std::array<std::uint64_t, 5> rejections{};
};

PipelineResult run_pipeline_impl(const PipelineConfig& config, std::ostream& log) {
  if (config.workers == 0) fail(kInputError, "workers must be at least 1");
  if (config.k_max < 1) fail(kInputError, "k-max must be at least 1");
  if (config.chunk_size == 0) fail(kInputError, "chunk size must be at least 1");

  // Inputs first, so a missing file never touches the output directory.
  auto corpus = open_input(config.corpus, "corpus");
  ingest::SurnameSet lexicon;
  {
    auto in = open_input(config.lexicon, "lexicon");
    lexicon = ingest::load_surname_set(in);
  }

  NameRules rules = NameRules::defaults();
  if (config.particles) {
    std::set<std::string, std::less<>> particles;
    for (const auto& p : load_tokens(*config.particles, "particles")) particles.insert(fold_text(p));
    rules = NameRules(std::move(particles));
  }

  ingest::Blacklist blacklist;
  {
    auto in = open_input(config.blacklist, "blacklist");
    blacklist = ingest::load_blacklist(in, rules);
    for (const auto& r : blacklist.rejected())
      fmt::print(log, "blacklist line {}: \"{}\" is not a complete name, ignored\n", r.line, r.text);
  }

  std::optional<ingest::DisciplineMap> map;
  if (config.discipline_map) {
    auto in = open_input(*config.discipline_map, "discipline map");
    try {
      map = ingest::load_discipline_map(in);
    } catch (const ingest::MalformedLine& e) {
      fail(kInputError, fmt::format("discipline map line {}: {}", e.line(), e.cause()));
    }
  }

  const ner::Recognizer recognizer(
      config.honorifics ? load_tokens(*config.honorifics, "honorifics") : ner::Recognizer::default_honorifics(),
      config.stopwords ? load_tokens(*config.stopwords, "stopwords") : ner::Recognizer::default_stopwords(), rules);

  RunManifest manifest;
  manifest.command = "run";
  manifest.recognizer = std::string(ner::recognizer_info());
  auto add_input = [&](std::string role, const fs::path& path) {
    try {
      manifest.inputs.push_back({std::move(role), path.string(), sha256_file(path)});
    } catch (const std::runtime_error& e) {
      fail(kInputError, e.what());
    }
  };
  add_input("corpus", config.corpus);
  add_input("lexicon", config.lexicon);
  add_input("blacklist", config.blacklist);
  if (config.discipline_map) add_input("discipline_map", *config.discipline_map);
  if (config.honorifics) add_input("honorifics", *config.honorifics);
  if (config.stopwords) add_input("stopwords", *config.stopwords);
  if (config.particles) add_input("particles", *config.particles);
  manifest.config = {{"workers", std::to_string(config.workers)},
                     {"strict", config.strict ? "true" : "false"},
                     {"k_max", std::to_string(config.k_max)},
                     {"chunk_size", std::to_string(config.chunk_size)}};

  Staging staging(config.out_dir);
  auto summaries = staging.open("summaries.csv");
  auto audit = staging.open("audit.csv");
  auto acknowledgees = staging.open("acknowledgees.csv");
  write_summary_header(summaries);
  cleanse::write_audit_header(audit);
  acknowledgees << "record_id,name\n";

  const cleanse::Filters filters{lexicon, blacklist, rules};
  const Context ctx{map ? &*map : nullptr, recognizer, filters};
  std::map<std::string, metrics::DisciplineAggregate> by_discipline;
  Totals totals;

  std::vector<std::string> lines;
  std::vector<LineResult> results;
  lines.reserve(config.chunk_size);
  std::size_t line_number = 0;
  bool eof = false;
  while (!eof) {
    lines.clear();
    std::string text;
    while (lines.size() < config.chunk_size && std::getline(corpus, text)) lines.push_back(std::move(text));
    eof = lines.size() < config.chunk_size;
    if (corpus.bad()) fail(kInputError, "read error on corpus");
    if (lines.empty()) break;

    results.assign(lines.size(), LineResult{});
    for (std::size_t i = 0; i < lines.size(); ++i) results[i].line = ++line_number;
    process_chunk(lines, results, ctx, config.workers);

    for (auto& r : results) {
      if (r.blank) continue;
      if (r.error) {
        if (config.strict) fail(kParseError, r.error->what());
        fmt::print(log, "skipping {}\n", r.error->what());
        ++totals.skipped;
        continue;
      }
      write_summary_row(summaries, r.summary);
      audit << r.audit;
      acknowledgees << r.acknowledgees;

      auto it = by_discipline.find(r.summary.discipline);
      if (it == by_discipline.end())
        it = by_discipline.emplace(r.summary.discipline, metrics::DisciplineAggregate(r.summary.discipline)).first;
      it->second.add(r.summary);

      ++totals.records;
      totals.with_ack_text += r.summary.has_ack_text ? 1 : 0;
      totals.acknowledgees += static_cast<std::uint64_t>(r.summary.n_acknowledgees);
      totals.candidates += r.candidates;
      for (std::size_t s = 0; s < r.rejections.size(); ++s) totals.rejections[s] += r.rejections[s];
    }
    if (!summaries || !audit || !acknowledgees) fail(kOutputError, "write failed in output directory");
  }
  close_checked(summaries, "summaries.csv");
  close_checked(audit, "audit.csv");
  close_checked(acknowledgees, "acknowledgees.csv");

  const Statistics stats = Statistics::from(by_discipline, config.k_max);
  staging.adopt(write_statistics_checked(stats, staging.dir()));

  manifest.counts = {{"records", totals.records},
                     {"skipped_lines", totals.skipped},
                     {"with_ack_text", totals.with_ack_text},
                     {"candidates", totals.candidates},
                     {"acknowledgees", totals.acknowledgees}};
  for (std::size_t s = 0; s < totals.rejections.size(); ++s)
    manifest.counts.emplace_back(std::string("rejected_") + std::string(to_string(static_cast<RejectionReason>(s))),
                                 totals.rejections[s]);
  manifest.timestamp = utc_timestamp();
  {
    auto out = staging.open("manifest.json");
    out << manifest.to_json();
    close_checked(out, "manifest.json");
  }
  staging.commit();

  fmt::print(log, "{} records ({} with acknowledgement text, {} acknowledgees), {} lines skipped\n", totals.records,
             totals.with_ack_text, totals.acknowledgees, totals.skipped);
  return {kOk, {}, totals.records, totals.skipped};
}

PipelineResult run_report_impl(const fs::path& summaries_path, const fs::path& out_dir, int k_max,
                               std::ostream& log) {
  if (k_max < 1) fail(kInputError, "k-max must be at least 1");
  auto in = open_input(summaries_path, "summaries");
  std::map<std::string, metrics::DisciplineAggregate> by_discipline;
  std::uint64_t records = 0;
  try {
    read_summaries(in, [&](metrics::ContributorSummary&& s) {
      auto it = by_discipline.find(s.discipline);
      if (it == by_discipline.end()) it = by_discipline.emplace(s.discipline, metrics::DisciplineAggregate(s.discipline)).first;
      it->second.add(s);
      ++records;
    });
  } catch (const std::runtime_error& e) {
    fail(kParseError, e.what());
  }

  RunManifest manifest;
  manifest.command = "report";
  manifest.recognizer = std::string(ner::recognizer_info());
  manifest.inputs.push_back({"summaries", summaries_path.string(), sha256_file(summaries_path)});
  manifest.config = {{"k_max", std::to_string(k_max)}};
  manifest.counts = {{"records", records}};
  manifest.timestamp = utc_timestamp();

  Staging staging(out_dir);
  staging.adopt(write_statistics_checked(Statistics::from(by_discipline, k_max), staging.dir()));
  {
    auto out = staging.open("manifest.json");
    out << manifest.to_json();
    close_checked(out, "manifest.json");
  }
  staging.commit();
  fmt::print(log, "{} summaries\n", records);
  return {kOk, {}, records, 0};
}

template <typename F>
PipelineResult guarded(F&& body, std::ostream& log) {
  try {
    return body();
  } catch (const Failure& f) {
    fmt::print(log, "error: {}\n", f.message);
    return {f.status, f.message, 0, 0};
  } catch (const fs::filesystem_error& e) {
    fmt::print(log, "error: {}\n", e.what());
    return {kOutputError, e.what(), 0, 0};
  }
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, std::ostream& log) {
  return guarded([&] { return run_pipeline_impl(config, log); }, log);
}

PipelineResult run_report(const fs::path& summaries, const fs::path& out_dir, int k_max, std::ostream& log) {
  return guarded([&] { return run_report_impl(summaries, out_dir, k_max, log); }, log);
}

}  // namespace ackcensus::report
