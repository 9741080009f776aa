#include "ackcensus/ingest.hpp"
#include "ackcensus/report.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace ackcensus::report {

using metrics::DisciplineAggregate;
using metrics::Table1Row;

Statistics Statistics::from(const std::map<std::string, DisciplineAggregate>& by_discipline, int k_max) {
  Statistics stats;
  stats.k_max = k_max;
  for (const auto& [label, agg] : by_discipline) stats.disciplines.push_back(agg);
  stats.total = metrics::combine("Total", stats.disciplines);
  return stats;
}

namespace {

std::string pct_field(const std::optional<double>& pct) { return pct ? fmt::format("{:.1f}", *pct) : std::string(); }

void write_table1_row(std::ostream& out, const Table1Row& r) {
  out << ingest::csv_field(r.discipline) << ',' << r.n_papers << ',' << r.n_with_ack << ',' << pct_field(r.pct_ack)
      << ',' << r.n_with_acknowledgee << ',' << pct_field(r.pct_of_ack) << ',' << pct_field(r.pct_of_total) << '\n';
}

// a.acknowledgee/a.papers > b.acknowledgee/b.papers, exactly; empty rows last.
bool higher_share(const Table1Row& a, const Table1Row& b) {
  if ((a.n_papers == 0) != (b.n_papers == 0)) return b.n_papers == 0;
  using Wide = unsigned __int128;
  const Wide lhs = static_cast<Wide>(a.n_with_acknowledgee) * b.n_papers;
  const Wide rhs = static_cast<Wide>(b.n_with_acknowledgee) * a.n_papers;
  if (lhs != rhs) return lhs > rhs;
  return a.discipline < b.discipline;
}

std::string fixed2(double v) { return fmt::format("{:.2f}", v); }

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void emit_table1(std::ostream& out, std::span<const Table1Row> rows, const std::optional<Table1Row>& total) {
  out << "discipline,N,N_ack,pct_ack,N_acknowledgee,pct_of_ack,pct_of_total\n";
  if (rows.empty()) return;
  std::vector<Table1Row> sorted(rows.begin(), rows.end());
  std::sort(sorted.begin(), sorted.end(), higher_share);
  for (const auto& r : sorted) write_table1_row(out, r);
  if (total) write_table1_row(out, *total);
}

std::string_view to_string(FigureKind kind) {
  switch (kind) {
    case FigureKind::Fig1:
      return "fig1";
    case FigureKind::Fig2:
      return "fig2";
    case FigureKind::Fig3:
      return "fig3";
    case FigureKind::Fig4:
      return "fig4";
  }
  return "";
}

FigureKind parse_figure_kind(std::string_view name) {
  if (name == "fig1") return FigureKind::Fig1;
  if (name == "fig2") return FigureKind::Fig2;
  if (name == "fig3") return FigureKind::Fig3;
  if (name == "fig4") return FigureKind::Fig4;
  throw std::invalid_argument("unknown figure kind: " + std::string(name));
}

void emit_figure_table(FigureKind kind, const Statistics& stats, std::ostream& out) {
  switch (kind) {
    case FigureKind::Fig1:
      out << "discipline,authors,cumulative_pct\n";
      for (const auto& agg : stats.disciplines) {
        const std::string label = ingest::csv_field(agg.discipline());
        for (const auto& p : metrics::cumulative_author_distribution(agg))
          out << label << ',' << p.authors << ',' << fmt::format("{:.1f}", p.percent) << '\n';
      }
      break;
    case FigureKind::Fig2: {
      out << "panel,count,papers\n";
      const auto dist = metrics::count_distributions(stats.total);
      for (const auto& [k, n] : dist.authors) out << "authors," << k << ',' << n << '\n';
      for (const auto& [k, n] : dist.acknowledgees) out << "acknowledgees," << k << ',' << n << '\n';
      break;
    }
    case FigureKind::Fig3:
      out << "discipline,mean_authors,mean_acknowledgees,mean_contributors,"
             "min_authors,max_authors,min_acknowledgees,max_acknowledgees\n";
      for (const auto& agg : stats.disciplines) {
        const auto m = metrics::mean_counts(agg);
        if (!m) continue;
        out << ingest::csv_field(agg.discipline()) << ',' << fixed2(m->authors) << ',' << fixed2(m->acknowledgees)
            << ',' << fixed2(m->contributors) << ',' << m->author_range.first << ',' << m->author_range.second << ','
            << m->acknowledgee_range.first << ',' << m->acknowledgee_range.second << '\n';
      }
      break;
    case FigureKind::Fig4:
      out << "discipline,authors,papers,mean_acknowledgees\n";
      for (const auto& agg : stats.disciplines) {
        if (agg.n_with_ack() == 0) continue;
        const std::string label = ingest::csv_field(agg.discipline());
        for (const auto& row : metrics::mean_acks_by_author_count(agg, stats.k_max)) {
          out << label << ',' << row.authors << ',' << row.papers << ','
              << (row.mean_acknowledgees ? fixed2(*row.mean_acknowledgees) : std::string()) << '\n';
        }
      }
      break;
  }
}

void emit_figure_data(std::string_view kind_name, const Statistics& stats, const fs::path& dir) {
  const FigureKind kind = parse_figure_kind(kind_name);
  {
    auto table = open_output(dir / (std::string(kind_name) + ".csv"));
    emit_figure_table(kind, stats, table);
  }
  auto svg = open_output(dir / (std::string(kind_name) + ".svg"));
  svg << render_figure_svg(kind, stats);
}

void emit_dispersion(const Statistics& stats, std::ostream& out) {
  out << "measure,disciplines,M,SD,RSD\n";
  std::vector<double> authors, acknowledgees, contributors;
  for (const auto& agg : stats.disciplines) {
    if (auto m = metrics::mean_counts(agg)) {
      authors.push_back(m->authors);
      acknowledgees.push_back(m->acknowledgees);
      contributors.push_back(m->contributors);
    }
  }
  if (authors.empty()) return;
  auto row = [&](std::string_view name, const std::vector<double>& means) {
    const auto d = metrics::cross_discipline_dispersion(means);
    out << name << ',' << means.size() << ',' << fixed2(d.mean) << ',' << fixed2(d.sd) << ','
        << (d.rsd_percent ? std::to_string(*d.rsd_percent) : std::string()) << '\n';
  };
  row("authors", authors);
  row("acknowledgees", acknowledgees);
  row("contributors", contributors);
}

void emit_single_author_share(const Statistics& stats, std::ostream& out) {
  out << "single_author_papers,with_acknowledgee,pct\n";
  std::uint64_t papers = 0, with = 0;
  if (auto it = stats.total.by_author_count().find(1); it != stats.total.by_author_count().end()) {
    papers = it->second.papers;
    with = it->second.with_acknowledgee;
  }
  const auto share = metrics::single_author_ack_share(stats.disciplines);
  out << papers << ',' << with << ',' << (share ? fmt::format("{:.1f}", *share) : std::string()) << '\n';
}

std::vector<std::string> write_statistics(const Statistics& stats, const fs::path& dir) {
  std::vector<std::string> written;
  {
    std::vector<Table1Row> rows;
    for (const auto& agg : stats.disciplines) rows.push_back(metrics::table1_row(agg));
    std::optional<Table1Row> total;
    if (!rows.empty()) total = metrics::table1_row(stats.total);
    auto out = open_output(dir / "table1.csv");
    emit_table1(out, rows, total);
    written.push_back("table1.csv");
  }
  for (auto kind : {FigureKind::Fig1, FigureKind::Fig2, FigureKind::Fig3, FigureKind::Fig4}) {
    emit_figure_data(to_string(kind), stats, dir);
    written.push_back(std::string(to_string(kind)) + ".csv");
    written.push_back(std::string(to_string(kind)) + ".svg");
  }
  {
    auto out = open_output(dir / "dispersion.csv");
    emit_dispersion(stats, out);
    written.push_back("dispersion.csv");
  }
  {
    auto out = open_output(dir / "single_author.csv");
    emit_single_author_share(stats, out);
    written.push_back("single_author.csv");
  }
  return written;
}

void write_summary_header(std::ostream& out) { out << "id,discipline,n_authors,n_acknowledgees,has_ack_text\n"; }

void write_summary_row(std::ostream& out, const metrics::ContributorSummary& s) {
  out << ingest::csv_field(s.record_id) << ',' << ingest::csv_field(s.discipline) << ',' << s.n_authors << ','
      << s.n_acknowledgees << ',' << (s.has_ack_text ? 1 : 0) << '\n';
}

namespace {

int parse_count(const std::string& field, std::size_t line, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value < 0)
    throw std::runtime_error(fmt::format("summaries line {}: bad {} \"{}\"", line, what, field));
  return value;
}

}  // namespace

void read_summaries(std::istream& in, const std::function<void(metrics::ContributorSummary&&)>& sink) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (ingest::trim(line).empty()) continue;
    if (number == 1 && line.rfind("id,discipline,", 0) == 0) continue;
    std::vector<std::string> fields;
    try {
      fields = ingest::parse_csv_line(line);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(fmt::format("summaries line {}: {}", number, e.what()));
    }
    if (fields.size() != 5) throw std::runtime_error(fmt::format("summaries line {}: expected 5 fields", number));
    metrics::ContributorSummary s;
    s.record_id = fields[0];
    s.discipline = fields[1];
    s.n_authors = parse_count(fields[2], number, "n_authors");
    s.n_acknowledgees = parse_count(fields[3], number, "n_acknowledgees");
    if (fields[4] != "0" && fields[4] != "1")
      throw std::runtime_error(fmt::format("summaries line {}: has_ack_text must be 0 or 1", number));
    s.has_ack_text = fields[4] == "1";
    if (s.n_authors < 1) throw std::runtime_error(fmt::format("summaries line {}: n_authors < 1", number));
    if (s.n_acknowledgees > 0 && !s.has_ack_text)
      throw std::runtime_error(fmt::format("summaries line {}: acknowledgees without acknowledgement text", number));
    sink(std::move(s));
  }
}

}  // namespace ackcensus::report
