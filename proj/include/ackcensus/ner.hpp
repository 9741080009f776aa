#pragma once

// Rule-based person-name recognizer for acknowledgement text.
//
// A candidate is a maximal run of name-like tokens separated by whitespace:
//   - a capitalized word of two or more letters (acronyms included), or
//   - an initial: one capital letter, optionally followed by a period.
// Lowercase surname particles ("van", "de", ...) are kept inside a run when
// another name-like token follows them. Honorifics (Dr, Prof, ...) and
// sentence-opening stopwords (We, The, ...) never enter a candidate; any other
// word, digit or punctuation mark ends the run.

#include "ackcensus/model.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ackcensus::ner {

struct Span {
  std::size_t begin = 0;  // byte offsets into the text, [begin, end)
  std::size_t end = 0;

  bool operator==(const Span&) const = default;
};

struct NameCandidate {
  std::string surface;
  Span span;
  std::vector<std::string> tokens;

  bool operator==(const NameCandidate&) const = default;
};

class Recognizer {
 public:
  /// Built-in honorific, stopword and particle lists.
  Recognizer();
  Recognizer(std::vector<std::string> honorifics, std::vector<std::string> stopwords,
             const NameRules& rules = NameRules::defaults());

  static const std::vector<std::string>& default_honorifics();
  static const std::vector<std::string>& default_stopwords();

  std::vector<NameCandidate> extract(std::string_view text) const;

  const NameRules& rules() const { return rules_; }

 private:
  std::set<std::string, std::less<>> honorifics_;  // folded
  std::set<std::string, std::less<>> stopwords_;   // folded
  NameRules rules_;
};

/// Extraction with the built-in lists.
std::vector<NameCandidate> extract_candidates(std::string_view text);

std::string_view recognizer_info();

}  // namespace ackcensus::ner
