#pragma once

// Cleaning cascade for the name candidates of one record. Stages run in a
// fixed order and the first failing stage labels the candidate:
//   1. normalize          -> Incomplete
//   2. benchmark lexicon  -> NotInBenchmark
//   3. blacklist          -> Blacklisted
//   4. byline match       -> SelfAuthor
//   5. within-paper dedup -> DuplicateInPaper

#include "ackcensus/ingest.hpp"
#include "ackcensus/model.hpp"
#include "ackcensus/ner.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace ackcensus::cleanse {

struct CleaningOutcome {
  ner::NameCandidate candidate;
  std::optional<NormalizedName> normalized;  // absent iff rejected as Incomplete
  std::optional<RejectionReason> rejection;  // absent iff accepted

  bool accepted() const { return !rejection; }
};

/// Accepted acknowledgees of one record, unique by linkage key, in order of
/// first mention.
class AcknowledgeeSet {
 public:
  AcknowledgeeSet() = default;
  explicit AcknowledgeeSet(std::string record_id) : record_id_(std::move(record_id)) {}

  const std::string& record_id() const { return record_id_; }
  const std::vector<NormalizedName>& members() const { return members_; }
  const std::vector<LinkageKey>& keys() const { return keys_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const LinkageKey& key) const;

  /// Returns false (and leaves the set unchanged) when the key is present.
  bool insert(NormalizedName name);

 private:
  std::string record_id_;
  std::vector<NormalizedName> members_;
  std::vector<LinkageKey> keys_;
};

struct CleaningResult {
  AcknowledgeeSet acknowledgees;
  std::vector<CleaningOutcome> outcomes;  // one per candidate, input order
};

struct Filters {
  const ingest::SurnameSet& lexicon;
  const ingest::Blacklist& blacklist;
  const NameRules& rules = NameRules::defaults();
};

CleaningResult clean_record(const Record& record, std::span<const ner::NameCandidate> candidates,
                            const Filters& filters);

inline std::size_t count_acknowledgees(const AcknowledgeeSet& set) { return set.size(); }

/// Audit trail rows: `record_id,surface,verdict,stage`. Accepted rows carry
/// the verdict `accepted` and an empty stage.
void write_audit_header(std::ostream& out);
void write_audit_rows(std::ostream& out, const std::string& record_id, std::span<const CleaningOutcome> outcomes);

std::string_view verdict_name(const CleaningOutcome& outcome);

}  // namespace ackcensus::cleanse
