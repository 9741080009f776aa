#pragma once

// Core domain values: bibliographic records, person names, and the
// (first initial, surname) linkage key used to match names across a paper.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ackcensus {

enum class DocType { Article, Review };

std::string_view to_string(DocType type);
std::optional<DocType> parse_doc_type(std::string_view text);

struct AuthorName {
  std::string given;    // full given name(s) and/or initials, may be empty
  std::string surname;  // never empty

  bool operator==(const AuthorName&) const = default;
};

struct Record {
  std::string id;
  int year = 0;
  std::string discipline;
  DocType doc_type = DocType::Article;
  std::vector<AuthorName> authors;      // byline order, non-empty
  std::optional<std::string> ack_text;  // absent when no acknowledgement is indexed

  bool operator==(const Record&) const = default;
};

struct NameToken {
  enum class Kind { Initial, Full };

  std::string text;  // folded, non-empty
  Kind kind = Kind::Full;

  bool operator==(const NameToken&) const = default;
};

/// A person name split into given tokens and surname tokens. All tokens are
/// case-folded and stripped of diacritics, hyphens and apostrophes.
///
/// Equality compares the tokens only; `display` keeps the surface form the
/// name was built from.
struct NormalizedName {
  std::vector<NameToken> given_tokens;
  std::vector<std::string> surname_tokens;
  std::string display;

  /// Canonical rendering, e.g. "j. r. smith" or "maria van berg". Feeding it
  /// back into normalize_name() yields an equal value.
  std::string canonical() const;

  /// Surname tokens concatenated, the form used for lexicon lookups.
  std::string joined_surname() const;

  bool operator==(const NormalizedName& other) const {
    return given_tokens == other.given_tokens && surname_tokens == other.surname_tokens;
  }
};

struct LinkageKey {
  std::string first_initial;  // exactly one code point, UTF-8 encoded
  std::string surname;

  auto operator<=>(const LinkageKey&) const = default;
  bool operator==(const LinkageKey&) const = default;
};

struct LinkageKeyHash {
  std::size_t operator()(const LinkageKey& key) const noexcept {
    const std::size_t h = std::hash<std::string>{}(key.surname);
    return h ^ (std::hash<std::string>{}(key.first_initial) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

enum class RejectionReason { Incomplete, NotInBenchmark, Blacklisted, SelfAuthor, DuplicateInPaper };

std::string_view to_string(RejectionReason reason);

/// 1-based position of the cleaning stage that produces this reason.
int stage_of(RejectionReason reason);

/// Surname particles attached to the following surname token
/// ("van", "de", "der", "da", "del", "von", "la" by default).
class NameRules {
 public:
  NameRules();
  explicit NameRules(std::set<std::string, std::less<>> particles);

  static const NameRules& defaults();

  bool is_particle(std::string_view folded_token) const;
  const std::set<std::string, std::less<>>& particles() const { return particles_; }

 private:
  std::set<std::string, std::less<>> particles_;
};

/// Unicode compatibility decomposition, combining marks removed, case-folded.
std::string fold_text(std::string_view text);

/// fold_text() followed by removal of hyphens, apostrophes and whitespace.
/// This is the lexicon form of a surname: "Paul-Roux" -> "paulroux",
/// "van Berg" -> "vanberg".
std::string fold_surname(std::string_view text);

/// Splits a candidate surface string into given and surname tokens. Returns
/// nullopt (the Incomplete verdict) unless the string yields at least one
/// given token and one surname token.
std::optional<NormalizedName> normalize_name(std::string_view raw,
                                             const NameRules& rules = NameRules::defaults());

/// Byline names are already split, so the surname field is taken verbatim
/// (particles included). Returns nullopt when either part folds to nothing.
std::optional<NormalizedName> normalize_author(const AuthorName& author);

LinkageKey linkage_key(const NormalizedName& name);

std::optional<LinkageKey> author_key(const AuthorName& author);

}  // namespace ackcensus
