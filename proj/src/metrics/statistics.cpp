#include "ackcensus/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace ackcensus::metrics {

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

namespace {

std::optional<double> percent(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return std::nullopt;
  return round_to(100.0 * static_cast<double>(part) / static_cast<double>(whole), 1);
}

}  // namespace

Table1Row table1_row(std::string discipline, std::uint64_t n_papers, std::uint64_t n_with_ack,
                     std::uint64_t n_with_acknowledgee) {
  Table1Row row;
  row.discipline = std::move(discipline);
  row.n_papers = n_papers;
  row.n_with_ack = n_with_ack;
  row.n_with_acknowledgee = n_with_acknowledgee;
  row.pct_ack = percent(n_with_ack, n_papers);
  row.pct_of_ack = percent(n_with_acknowledgee, n_with_ack);
  row.pct_of_total = percent(n_with_acknowledgee, n_papers);
  return row;
}

Table1Row table1_row(const DisciplineAggregate& agg) {
  return table1_row(agg.discipline(), agg.n_papers(), agg.n_with_ack(), agg.n_with_acknowledgee());
}

std::vector<CumulativePoint> cumulative_author_distribution(const DisciplineAggregate& agg) {
  std::vector<CumulativePoint> points;
  const std::uint64_t total = agg.n_with_ack();
  if (total == 0) return points;
  std::uint64_t running = 0;
  for (const auto& [k, n] : agg.author_histogram()) {
    running += n;
    const double pct = running == total ? 100.0 : 100.0 * static_cast<double>(running) / static_cast<double>(total);
    points.push_back({k, pct});
  }
  return points;
}

CountDistributions count_distributions(const DisciplineAggregate& agg) {
  return {agg.author_histogram(), agg.acknowledgee_histogram()};
}

std::optional<int> histogram_median(const Histogram& histogram) {
  std::uint64_t total = 0;
  for (const auto& [k, n] : histogram) total += n;
  if (total == 0) return std::nullopt;
  const std::uint64_t target = (total + 1) / 2;  // 1-based rank of the lower median
  std::uint64_t running = 0;
  for (const auto& [k, n] : histogram) {
    running += n;
    if (running >= target) return k;
  }
  return histogram.rbegin()->first;
}

std::optional<MeanCounts> mean_counts(const DisciplineAggregate& agg) {
  const std::uint64_t n = agg.n_with_ack();
  if (n == 0) return std::nullopt;
  MeanCounts m;
  m.authors = static_cast<double>(agg.author_sum()) / static_cast<double>(n);
  m.acknowledgees = static_cast<double>(agg.acknowledgee_sum()) / static_cast<double>(n);
  m.contributors = m.authors + m.acknowledgees;
  m.author_range = {agg.author_histogram().begin()->first, agg.author_histogram().rbegin()->first};
  m.acknowledgee_range = {agg.acknowledgee_histogram().begin()->first, agg.acknowledgee_histogram().rbegin()->first};
  return m;
}

std::vector<ConditionalMean> mean_acks_by_author_count(const DisciplineAggregate& agg, int k_max) {
  std::vector<ConditionalMean> rows;
  for (int k = 1; k <= k_max; ++k) {
    ConditionalMean row{k, 0, std::nullopt};
    if (auto it = agg.by_author_count().find(k); it != agg.by_author_count().end() && it->second.papers > 0) {
      row.papers = it->second.papers;
      row.mean_acknowledgees = static_cast<double>(it->second.acknowledgees) / static_cast<double>(it->second.papers);
    }
    rows.push_back(row);
  }
  return rows;
}

DispersionStats cross_discipline_dispersion(std::span<const double> means) {
  if (means.empty()) throw std::invalid_argument("cross_discipline_dispersion: no means");
  const double n = static_cast<double>(means.size());
  double sum = 0;
  for (double m : means) sum += m;
  DispersionStats stats;
  stats.mean = sum / n;
  double squares = 0;
  for (double m : means) squares += (m - stats.mean) * (m - stats.mean);
  stats.sd = std::sqrt(squares / n);
  if (stats.mean != 0) {
    stats.rsd = 100.0 * stats.sd / stats.mean;
    stats.rsd_percent = static_cast<int>(std::lround(*stats.rsd));
  }
  return stats;
}

std::optional<double> single_author_ack_share(std::span<const DisciplineAggregate> aggregates) {
  std::uint64_t papers = 0;
  std::uint64_t with_acknowledgee = 0;
  for (const auto& agg : aggregates) {
    if (auto it = agg.by_author_count().find(1); it != agg.by_author_count().end()) {
      papers += it->second.papers;
      with_acknowledgee += it->second.with_acknowledgee;
    }
  }
  if (papers == 0) return std::nullopt;
  return 100.0 * static_cast<double>(with_acknowledgee) / static_cast<double>(papers);
}

}  // namespace ackcensus::metrics
