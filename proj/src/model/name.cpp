#include "ackcensus/model.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace ackcensus {

namespace {

struct Piece {
  std::string folded;
  bool abbreviated = false;  // written with a trailing period
};

bool is_joiner(UChar32 c) {
  return c == '-' || c == '\'' || c == 0x2010 || c == 0x2011 || c == 0x2019;
}

bool is_name_char(UChar32 c) {
  if (u_isalpha(c)) return true;
  const int8_t type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK || type == U_ENCLOSING_MARK;
}

std::size_t code_point_count(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

// Splits on whitespace and periods. Any character that can't belong to a
// personal name (digits, punctuation other than joiners) rejects the input.
std::optional<std::vector<Piece>> split_pieces(std::string_view raw) {
  std::vector<Piece> pieces;
  std::string current;

  auto flush = [&](bool period) {
    if (current.empty()) {
      if (period && !pieces.empty() && !pieces.back().abbreviated) pieces.back().abbreviated = true;
      return;
    }
    std::string folded = fold_surname(current);
    current.clear();
    if (folded.empty()) return;
    pieces.push_back({std::move(folded), period});
  };

  const auto* bytes = reinterpret_cast<const uint8_t*>(raw.data());
  const auto length = static_cast<int32_t>(raw.size());
  for (int32_t i = 0; i < length;) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return std::nullopt;
    if (c == '.') {
      flush(true);
    } else if (u_isUWhiteSpace(c)) {
      flush(false);
    } else if (is_name_char(c) || is_joiner(c)) {
      current.append(raw.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)));
    } else {
      return std::nullopt;
    }
  }
  flush(false);
  return pieces;
}

NameToken to_given_token(Piece piece) {
  const bool initial = code_point_count(piece.folded) == 1;
  return {std::move(piece.folded), initial ? NameToken::Kind::Initial : NameToken::Kind::Full};
}

}  // namespace

std::string_view to_string(DocType type) {
  return type == DocType::Review ? "review" : "article";
}

std::optional<DocType> parse_doc_type(std::string_view text) {
  if (text == "article") return DocType::Article;
  if (text == "review") return DocType::Review;
  return std::nullopt;
}

std::string_view to_string(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::Incomplete:
      return "incomplete";
    case RejectionReason::NotInBenchmark:
      return "not_in_benchmark";
    case RejectionReason::Blacklisted:
      return "blacklisted";
    case RejectionReason::SelfAuthor:
      return "self_author";
    case RejectionReason::DuplicateInPaper:
      return "duplicate_in_paper";
  }
  return "unknown";
}

int stage_of(RejectionReason reason) {
  return static_cast<int>(reason) + 1;
}

NameRules::NameRules() : particles_{"da", "de", "del", "der", "la", "van", "von"} {}

NameRules::NameRules(std::set<std::string, std::less<>> particles) {
  for (const auto& p : particles) {
    std::string folded = fold_surname(p);
    if (!folded.empty()) particles_.insert(std::move(folded));
  }
}

const NameRules& NameRules::defaults() {
  static const NameRules rules;
  return rules;
}

bool NameRules::is_particle(std::string_view folded_token) const {
  return particles_.find(folded_token) != particles_.end();
}

std::string NormalizedName::canonical() const {
  std::string out;
  for (const auto& token : given_tokens) {
    out += token.text;
    if (token.kind == NameToken::Kind::Initial) out += '.';
    out += ' ';
  }
  for (std::size_t i = 0; i < surname_tokens.size(); ++i) {
    if (i) out += ' ';
    out += surname_tokens[i];
  }
  return out;
}

std::string NormalizedName::joined_surname() const {
  std::string out;
  for (const auto& token : surname_tokens) out += token;
  return out;
}

std::optional<NormalizedName> normalize_name(std::string_view raw, const NameRules& rules) {
  auto pieces = split_pieces(raw);
  if (!pieces || pieces->size() < 2) return std::nullopt;

  // An abbreviated single letter in last position means the string is all
  // initials ("J. R.") or written surname-last with a trailing initial.
  const Piece& last = pieces->back();
  if (last.abbreviated && code_point_count(last.folded) == 1) return std::nullopt;

  std::size_t surname_begin = pieces->size() - 1;
  while (surname_begin > 0) {
    const Piece& p = (*pieces)[surname_begin - 1];
    if (p.abbreviated || !rules.is_particle(p.folded)) break;
    --surname_begin;
  }
  if (surname_begin == 0) return std::nullopt;

  NormalizedName name;
  name.display = std::string(raw);
  for (std::size_t i = 0; i < surname_begin; ++i) name.given_tokens.push_back(to_given_token(std::move((*pieces)[i])));
  for (std::size_t i = surname_begin; i < pieces->size(); ++i) name.surname_tokens.push_back(std::move((*pieces)[i].folded));
  return name;
}

std::optional<NormalizedName> normalize_author(const AuthorName& author) {
  auto given = split_pieces(author.given);
  auto surname = split_pieces(author.surname);
  if (!given || !surname || given->empty() || surname->empty()) return std::nullopt;

  NormalizedName name;
  name.display = author.given.empty() ? author.surname : author.given + " " + author.surname;
  for (auto& p : *given) name.given_tokens.push_back(to_given_token(std::move(p)));
  for (auto& p : *surname) name.surname_tokens.push_back(std::move(p.folded));
  return name;
}

LinkageKey linkage_key(const NormalizedName& name) {
  if (name.given_tokens.empty() || name.surname_tokens.empty())
    throw std::invalid_argument("linkage_key: name has no given or surname tokens");
  const std::string& first = name.given_tokens.front().text;
  std::size_t len = 1;
  while (len < first.size() && (static_cast<unsigned char>(first[len]) & 0xC0) == 0x80) ++len;
  return {first.substr(0, len), name.joined_surname()};
}

std::optional<LinkageKey> author_key(const AuthorName& author) {
  auto name = normalize_author(author);
  if (!name) return std::nullopt;
  return linkage_key(*name);
}

}  // namespace ackcensus
