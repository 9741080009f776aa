#pragma once

// Per-discipline collaboration statistics built from per-paper contributor
// summaries. Aggregates are mergeable: fold records into shard-local
// aggregates, merge shards, then read statistics from the result.
//
// Two populations live in one aggregate. Paper counts for the coverage table
// (all papers, papers with acknowledgement text, papers with at least one
// acknowledgee) cover every folded summary; every distribution, mean and
// range covers only papers with acknowledgement text.

#include "ackcensus/cleanse.hpp"
#include "ackcensus/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ackcensus::metrics {

struct ContributorSummary {
  std::string record_id;
  std::string discipline;
  int n_authors = 1;
  int n_acknowledgees = 0;
  bool has_ack_text = false;

  int n_contributors() const { return n_authors + n_acknowledgees; }
  bool operator==(const ContributorSummary&) const = default;
};

ContributorSummary summarize(const Record& record, const cleanse::AcknowledgeeSet& acknowledgees);

using Histogram = std::map<int, std::uint64_t>;

struct AuthorCountCell {
  std::uint64_t papers = 0;
  std::uint64_t with_acknowledgee = 0;
  std::uint64_t acknowledgees = 0;

  bool operator==(const AuthorCountCell&) const = default;
};

class DisciplineAggregate {
 public:
  DisciplineAggregate() = default;
  explicit DisciplineAggregate(std::string discipline) : discipline_(std::move(discipline)) {}

  const std::string& discipline() const { return discipline_; }

  /// Throws std::invalid_argument when the summary belongs to another discipline.
  void add(const ContributorSummary& summary);
  /// Throws std::invalid_argument on a discipline mismatch.
  void merge(const DisciplineAggregate& other);

  /// Same counts under a different label, e.g. for a Total row.
  DisciplineAggregate relabeled(std::string discipline) const;

  std::uint64_t n_papers() const { return n_papers_; }
  std::uint64_t n_with_ack() const { return n_with_ack_; }
  std::uint64_t n_with_acknowledgee() const { return n_with_acknowledgee_; }

  const Histogram& author_histogram() const { return authors_; }
  const Histogram& acknowledgee_histogram() const { return acknowledgees_; }
  const std::map<int, AuthorCountCell>& by_author_count() const { return by_authors_; }

  std::uint64_t author_sum() const { return author_sum_; }
  std::uint64_t acknowledgee_sum() const { return acknowledgee_sum_; }

  bool operator==(const DisciplineAggregate&) const = default;

 private:
  std::string discipline_;
  std::uint64_t n_papers_ = 0;
  std::uint64_t n_with_ack_ = 0;
  std::uint64_t n_with_acknowledgee_ = 0;
  Histogram authors_;
  Histogram acknowledgees_;
  std::map<int, AuthorCountCell> by_authors_;
  std::uint64_t author_sum_ = 0;
  std::uint64_t acknowledgee_sum_ = 0;
};

DisciplineAggregate fold(DisciplineAggregate agg, const ContributorSummary& summary);
DisciplineAggregate merge(DisciplineAggregate a, const DisciplineAggregate& b);

/// Sums aggregates of any disciplines under one label.
DisciplineAggregate combine(std::string label, std::span<const DisciplineAggregate> aggregates);

// ---- Coverage table --------------------------------------------------------

struct Table1Row {
  std::string discipline;
  std::uint64_t n_papers = 0;
  std::uint64_t n_with_ack = 0;
  std::uint64_t n_with_acknowledgee = 0;
  // Rounded to one decimal; absent when the denominator is zero.
  std::optional<double> pct_ack;
  std::optional<double> pct_of_ack;
  std::optional<double> pct_of_total;
};

Table1Row table1_row(std::string discipline, std::uint64_t n_papers, std::uint64_t n_with_ack,
                     std::uint64_t n_with_acknowledgee);
Table1Row table1_row(const DisciplineAggregate& agg);

/// Round half away from zero to `decimals` places.
double round_to(double value, int decimals);

// ---- Distributions ---------------------------------------------------------

struct CumulativePoint {
  int authors;
  double percent;  // papers with at most `authors` authors
};

/// One point per observed author count; the last point is exactly 100.
std::vector<CumulativePoint> cumulative_author_distribution(const DisciplineAggregate& agg);

struct CountDistributions {
  Histogram authors;
  Histogram acknowledgees;
};

CountDistributions count_distributions(const DisciplineAggregate& agg);

/// Lower median of a histogram; absent when empty.
std::optional<int> histogram_median(const Histogram& histogram);

struct MeanCounts {
  double authors;
  double acknowledgees;
  double contributors;  // authors + acknowledgees
  std::pair<int, int> author_range;
  std::pair<int, int> acknowledgee_range;
};

/// Absent when the aggregate holds no paper with acknowledgement text.
std::optional<MeanCounts> mean_counts(const DisciplineAggregate& agg);

struct ConditionalMean {
  int authors;
  std::uint64_t papers;
  std::optional<double> mean_acknowledgees;  // absent when papers == 0
};

/// Rows for author counts 1..k_max.
std::vector<ConditionalMean> mean_acks_by_author_count(const DisciplineAggregate& agg, int k_max = 9);

// ---- Cross-discipline ------------------------------------------------------

struct DispersionStats {
  double mean = 0;
  double sd = 0;                   // population standard deviation
  std::optional<double> rsd;       // 100 * sd / mean, absent when mean == 0
  std::optional<int> rsd_percent;  // rsd rounded to an integer
};

/// Throws std::invalid_argument on an empty input.
DispersionStats cross_discipline_dispersion(std::span<const double> means);

/// Percentage of single-authored papers (with acknowledgement text) that name
/// at least one acknowledgee. Absent when there are no such papers.
std::optional<double> single_author_ack_share(std::span<const DisciplineAggregate> aggregates);

}  // namespace ackcensus::metrics
