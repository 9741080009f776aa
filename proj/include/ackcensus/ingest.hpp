#pragma once

// Streaming readers for the line-delimited corpus and for the lexicon files
// (surname benchmark list, blacklist, discipline map, token lists).

#include "ackcensus/model.hpp"

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ackcensus::ingest {

class MalformedLine : public std::runtime_error {
 public:
  MalformedLine(std::size_t line, const std::string& cause);

  std::size_t line() const { return line_; }
  const std::string& cause() const { return cause_; }

 private:
  std::size_t line_;
  std::string cause_;
};

/// journal identifier -> discipline label
class DisciplineMap {
 public:
  DisciplineMap() = default;
  explicit DisciplineMap(std::map<std::string, std::string, std::less<>> entries) : entries_(std::move(entries)) {}

  std::optional<std::string> lookup(std::string_view journal) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

/// Two comma-separated columns, `journal,discipline`. Fields may be quoted.
/// A header line `journal,discipline` is skipped. Throws MalformedLine.
DisciplineMap load_discipline_map(std::istream& in);

/// Parses one corpus line. When `map` is given the discipline comes from the
/// record's `journal` field, otherwise from its inline `discipline` field.
/// Throws MalformedLine carrying `line_number`.
Record parse_record(std::string_view line, std::size_t line_number, const DisciplineMap* map = nullptr);

/// Serializes a record into the one-line corpus format. A non-empty
/// `journal` is written as the optional `journal` field.
std::string to_corpus_line(const Record& record, std::string_view journal = {});

/// Pull-based reader over a corpus stream. Holds one line at a time.
class CorpusReader {
 public:
  enum class Mode { Strict, Skip };

  explicit CorpusReader(std::istream& in, Mode mode = Mode::Strict, const DisciplineMap* map = nullptr);

  /// Next record in file order, or nullopt at end of input. Blank lines are
  /// ignored. In Strict mode a malformed line throws MalformedLine; in Skip
  /// mode it is recorded in errors() and reading continues.
  std::optional<Record> next();

  std::size_t line_number() const { return line_number_; }
  const std::vector<MalformedLine>& errors() const { return errors_; }

 private:
  std::istream& in_;
  Mode mode_;
  const DisciplineMap* map_;
  std::size_t line_number_ = 0;
  std::string line_;
  std::vector<MalformedLine> errors_;
};

/// Convenience for tests and small inputs: reads every record eagerly.
std::vector<Record> parse_corpus(std::istream& in, CorpusReader::Mode mode = CorpusReader::Mode::Strict,
                                 const DisciplineMap* map = nullptr);

class SurnameSet {
 public:
  SurnameSet() = default;

  /// Adds the folded form of `surname`; returns false for empty or duplicate entries.
  bool insert(std::string_view surname);

  /// `surname` may be raw or already folded.
  bool contains(std::string_view surname) const;
  bool contains_folded(const std::string& folded) const { return members_.count(folded) != 0; }

  std::size_t count() const { return members_.size(); }

 private:
  std::unordered_set<std::string> members_;
};

/// One surname per line; blank lines and `#` comments are ignored.
SurnameSet load_surname_set(std::istream& in);

class Blacklist {
 public:
  struct Rejected {
    std::size_t line;
    std::string text;
  };

  Blacklist() = default;

  /// Returns false when `full_name` does not normalize to a complete name.
  bool insert(std::string_view full_name, const NameRules& rules = NameRules::defaults());

  bool contains(const NormalizedName& name) const { return members_.count(name.canonical()) != 0; }
  bool contains_canonical(const std::string& canonical) const { return members_.count(canonical) != 0; }

  std::size_t count() const { return members_.size(); }
  const std::vector<Rejected>& rejected() const { return rejected_; }

 private:
  friend Blacklist load_blacklist(std::istream&, const NameRules&);

  std::unordered_set<std::string> members_;
  std::vector<Rejected> rejected_;
};

/// One full name per line; blank lines and `#` comments are ignored. Lines
/// that fail normalization are listed in rejected() and skipped.
Blacklist load_blacklist(std::istream& in, const NameRules& rules = NameRules::defaults());

/// One token per line with `#` comments; used for honorific, stopword and
/// particle override files.
std::vector<std::string> load_token_list(std::istream& in);

std::string_view trim(std::string_view text);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view text);

/// Splits one CSV line, honouring double-quoted fields. Throws
/// std::invalid_argument on unbalanced quotes.
std::vector<std::string> parse_csv_line(std::string_view line);

}  // namespace ackcensus::ingest
