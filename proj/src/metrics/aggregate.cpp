#include "ackcensus/metrics.hpp"

#include <stdexcept>

namespace ackcensus::metrics {

ContributorSummary summarize(const Record& record, const cleanse::AcknowledgeeSet& acknowledgees) {
  return {record.id, record.discipline, static_cast<int>(record.authors.size()),
          static_cast<int>(cleanse::count_acknowledgees(acknowledgees)), record.ack_text.has_value()};
}

void DisciplineAggregate::add(const ContributorSummary& s) {
  if (s.discipline != discipline_)
    throw std::invalid_argument("fold: summary for \"" + s.discipline + "\" into aggregate \"" + discipline_ + "\"");

  ++n_papers_;
  if (!s.has_ack_text) return;

  ++n_with_ack_;
  if (s.n_acknowledgees > 0) ++n_with_acknowledgee_;
  ++authors_[s.n_authors];
  ++acknowledgees_[s.n_acknowledgees];
  auto& cell = by_authors_[s.n_authors];
  ++cell.papers;
  if (s.n_acknowledgees > 0) ++cell.with_acknowledgee;
  cell.acknowledgees += static_cast<std::uint64_t>(s.n_acknowledgees);
  author_sum_ += static_cast<std::uint64_t>(s.n_authors);
  acknowledgee_sum_ += static_cast<std::uint64_t>(s.n_acknowledgees);
}

void DisciplineAggregate::merge(const DisciplineAggregate& other) {
  if (other.discipline_ != discipline_)
    throw std::invalid_argument("merge: aggregates for \"" + discipline_ + "\" and \"" + other.discipline_ + "\"");

  n_papers_ += other.n_papers_;
  n_with_ack_ += other.n_with_ack_;
  n_with_acknowledgee_ += other.n_with_acknowledgee_;
  for (const auto& [k, n] : other.authors_) authors_[k] += n;
  for (const auto& [k, n] : other.acknowledgees_) acknowledgees_[k] += n;
  for (const auto& [k, cell] : other.by_authors_) {
    auto& mine = by_authors_[k];
    mine.papers += cell.papers;
    mine.with_acknowledgee += cell.with_acknowledgee;
    mine.acknowledgees += cell.acknowledgees;
  }
  author_sum_ += other.author_sum_;
  acknowledgee_sum_ += other.acknowledgee_sum_;
}

DisciplineAggregate DisciplineAggregate::relabeled(std::string discipline) const {
  DisciplineAggregate copy = *this;
  copy.discipline_ = std::move(discipline);
  return copy;
}

DisciplineAggregate fold(DisciplineAggregate agg, const ContributorSummary& summary) {
  agg.add(summary);
  return agg;
}

DisciplineAggregate merge(DisciplineAggregate a, const DisciplineAggregate& b) {
  a.merge(b);
  return a;
}

DisciplineAggregate combine(std::string label, std::span<const DisciplineAggregate> aggregates) {
  DisciplineAggregate total(label);
  for (const auto& agg : aggregates) total.merge(agg.relabeled(label));
  return total;
}

}  // namespace ackcensus::metrics
