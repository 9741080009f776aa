#include "ackcensus/cleanse.hpp"

#include <algorithm>

namespace ackcensus::cleanse {

bool AcknowledgeeSet::contains(const LinkageKey& key) const {
  return std::find(keys_.begin(), keys_.end(), key) != keys_.end();
}

bool AcknowledgeeSet::insert(NormalizedName name) {
  LinkageKey key = linkage_key(name);
  if (contains(key)) return false;
  keys_.push_back(std::move(key));
  members_.push_back(std::move(name));
  return true;
}

CleaningResult clean_record(const Record& record, std::span<const ner::NameCandidate> candidates,
                            const Filters& filters) {
  std::vector<LinkageKey> byline;
  byline.reserve(record.authors.size());
  for (const auto& author : record.authors) {
    if (auto key = author_key(author)) byline.push_back(std::move(*key));
  }

  CleaningResult result{AcknowledgeeSet(record.id), {}};
  result.outcomes.reserve(candidates.size());

  for (const auto& candidate : candidates) {
    CleaningOutcome outcome{candidate, normalize_name(candidate.surface, filters.rules), std::nullopt};
    if (!outcome.normalized) {
      outcome.rejection = RejectionReason::Incomplete;
    } else if (!filters.lexicon.contains_folded(outcome.normalized->joined_surname())) {
      outcome.rejection = RejectionReason::NotInBenchmark;
    } else if (filters.blacklist.contains(*outcome.normalized)) {
      outcome.rejection = RejectionReason::Blacklisted;
    } else {
      const LinkageKey key = linkage_key(*outcome.normalized);
      if (std::find(byline.begin(), byline.end(), key) != byline.end()) {
        outcome.rejection = RejectionReason::SelfAuthor;
      } else if (!result.acknowledgees.insert(*outcome.normalized)) {
        outcome.rejection = RejectionReason::DuplicateInPaper;
      }
    }
    result.outcomes.push_back(std::move(outcome));
  }
  return result;
}

std::string_view verdict_name(const CleaningOutcome& outcome) {
  return outcome.rejection ? to_string(*outcome.rejection) : std::string_view("accepted");
}

void write_audit_header(std::ostream& out) { out << "record_id,surface,verdict,stage\n"; }

void write_audit_rows(std::ostream& out, const std::string& record_id, std::span<const CleaningOutcome> outcomes) {
  const std::string id = ingest::csv_field(record_id);
  for (const auto& o : outcomes) {
    out << id << ',' << ingest::csv_field(o.candidate.surface) << ',' << verdict_name(o) << ',';
    if (o.rejection) out << stage_of(*o.rejection);
    out << '\n';
  }
}

}  // namespace ackcensus::cleanse
