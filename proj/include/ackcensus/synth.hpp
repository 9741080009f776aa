#pragma once

// Seeded synthetic corpus generator with planted ground truth, and the
// evaluation of pipeline output against that truth.
//
// Randomness comes from std::mt19937_64 (seeded through std::seed_seq, both
// fully specified by the standard) with sampling done here rather than by
// <random> distributions, whose output differs between standard libraries.

#include "ackcensus/model.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ackcensus::synth {

namespace fs = std::filesystem;

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  bool chance(double p) { return uniform() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(below(items.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

/// Finite distribution over consecutive integers first, first+1, ...
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;
  /// Throws std::invalid_argument unless the probabilities are finite,
  /// non-negative, non-empty and sum to 1 within 1e-9.
  DiscreteDistribution(int first, std::vector<double> probabilities);

  static DiscreteDistribution constant(int value) { return DiscreteDistribution(value, {1.0}); }

  /// Inverse-CDF sampling with one uniform draw.
  int sample(Rng& rng) const;

  int first() const { return first_; }
  int last() const { return first_ + static_cast<int>(probabilities_.size()) - 1; }
  double probability(int value) const;
  const std::vector<double>& probabilities() const { return probabilities_; }
  double mean() const;
  /// P(X >= value)
  double tail(int value) const;

 private:
  int first_ = 0;
  std::vector<double> probabilities_{1.0};
  std::vector<double> cumulative_{1.0};
};

/// Geometric weights r^(k-first) on first..last, renormalized, with r chosen
/// by bisection so the mean equals `mean`. Throws std::invalid_argument when
/// the mean is outside what the support allows.
DiscreteDistribution truncated_geometric(int first, int last, double mean);

/// 1 + Poisson(mean - 1) truncated to 1..last and renormalized, then
/// rescaled by bisection so the mean is exact.
DiscreteDistribution shifted_poisson(int last, double mean);

struct DisciplineProfile {
  std::string name;
  std::string code;             // record id prefix, e.g. "PHYS"
  std::uint64_t papers = 0;
  double ack_text_share = 1.0;  // papers carrying acknowledgement text
  DiscreteDistribution authors;
  /// Acknowledgee count given k authors, for papers with acknowledgement
  /// text. Entry k-1 applies to k authors; the last entry covers every
  /// larger k. A single entry means no dependence on k.
  std::vector<DiscreteDistribution> acknowledgees;

  const DiscreteDistribution& acknowledgees_for(int authors) const;
};

/// Targets from which a profile is derived.
struct CalibrationTarget {
  std::string name;
  std::string code;
  std::uint64_t papers = 0;
  double ack_text_share = 1.0;
  double acknowledgee_share = 0.5;  // of papers with text, share naming anyone
  double single_author_share = 0.1;
  double mean_authors = 3.0;        // over papers with text
  double mean_acknowledgees = 1.0;  // over papers with text
  double single_author_acknowledgee_share = 0.40;
  /// Conditional mean of positive acknowledgee counts shrinks by this factor
  /// per extra author (capped at ten authors); 1 keeps it flat.
  double decay = 1.0;
  int max_authors = 100;
  int max_acknowledgees = 40;
};

/// Throws std::invalid_argument when the targets are inconsistent.
DisciplineProfile calibrate(const CalibrationTarget& target);

/// The twelve discipline targets with their real paper counts.
const std::vector<CalibrationTarget>& default_targets();
std::vector<DisciplineProfile> default_profiles();

struct Templates {
  std::vector<std::string> funding;       // {org}
  std::vector<std::string> thanks;        // {names}
  std::vector<std::string> solo;          // {name}
  std::vector<std::string> self_mention;  // {names}
  std::vector<std::string> grant;         // {eponym}
  std::vector<std::string> repeat;        // {name}

  static Templates defaults();
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::vector<DisciplineProfile> profiles = default_profiles();
  Templates templates = Templates::defaults();
  double self_mention_rate = 0.10;  // of papers with text
  double grant_rate = 0.10;         // blacklisted grant-name distractor
  double repeat_rate = 0.05;        // per planted acknowledgee
  double honorific_rate = 0.10;
  double acronym_rate = 0.30;
  double review_share = 0.10;
  std::size_t given_names = 800;
  std::size_t surnames = 6000;
  std::size_t noise_surnames = 3000;
  std::size_t eponyms = 40;
  int journals_per_discipline = 4;

  /// Default profiles with `total` papers split in proportion to the real
  /// discipline sizes (largest remainder).
  static GeneratorConfig with_total(std::uint64_t total, std::uint64_t seed = 1);
  /// Default profiles with the same paper count everywhere.
  static GeneratorConfig with_papers_per_discipline(std::uint64_t papers, std::uint64_t seed = 1);

  /// Throws std::invalid_argument on rates outside [0, 1], empty template
  /// lists, misplaced placeholders or template words the recognizer would
  /// pick up as names.
  void validate() const;
};

enum class MentionKind { Acknowledgee, SelfAuthor, Blacklisted, NonPerson, Repeat };

std::string_view to_string(MentionKind kind);
MentionKind parse_mention_kind(std::string_view text);

struct PlantedMention {
  std::string surface;
  MentionKind kind;

  bool operator==(const PlantedMention&) const = default;
};

struct TruthRecord {
  std::string id;
  std::vector<std::string> acknowledgees;  // canonical forms
  std::vector<PlantedMention> mentions;    // in text order

  bool operator==(const TruthRecord&) const = default;
};

std::string to_json_line(const TruthRecord& record);
/// Throws std::runtime_error naming the line on malformed input.
std::vector<TruthRecord> read_truth(std::istream& in);

struct GenerateResult {
  fs::path corpus;
  fs::path lexicon;
  fs::path blacklist;
  fs::path truth;
  fs::path discipline_map;
  std::uint64_t records = 0;
};

/// Writes corpus.jsonl, lexicon.txt, blacklist.txt, truth.jsonl and
/// discipline_map.csv into `out_dir`. Validates the config first.
GenerateResult generate(const GeneratorConfig& config, const fs::path& out_dir);

/// Same bytes as the files written by generate().
struct GeneratedText {
  std::string corpus;
  std::string lexicon;
  std::string blacklist;
  std::string truth;
  std::string discipline_map;
};
GeneratedText generate_text(const GeneratorConfig& config);

// ---- Evaluation ------------------------------------------------------------

struct Score {
  std::uint64_t matched = 0;
  std::uint64_t extracted = 0;
  std::uint64_t planted = 0;

  /// Absent when nothing was extracted.
  std::optional<double> precision() const;
  /// Absent when nothing was planted.
  std::optional<double> recall() const;

  Score& operator+=(const Score& other);
};

/// Names for one record; raw or canonical forms both work.
struct ExtractedRecord {
  std::string id;
  std::vector<std::string> names;
};

struct Evaluation {
  Score overall;  // micro-average
  std::vector<std::pair<std::string, Score>> per_record;  // truth order
};

/// Matches names on LinkageKey, each truth name at most once. Throws
/// std::invalid_argument when the two sides do not cover the same ids.
Evaluation evaluate(std::span<const ExtractedRecord> output, std::span<const TruthRecord> truth);

/// Multiset match of extracted surfaces against every planted mention.
Score score_mentions(std::span<const std::string> extracted, std::span<const PlantedMention> planted);

/// Reads summaries.csv (for the record ids) and acknowledgees.csv from a run
/// output directory.
std::vector<ExtractedRecord> load_run_output(const fs::path& out_dir);

}  // namespace ackcensus::synth
