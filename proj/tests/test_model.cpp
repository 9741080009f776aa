#include "ackcensus/model.hpp"

#include <doctest.h>

#include <random>

using namespace ackcensus;

namespace {

NameToken initial(std::string t) { return {std::move(t), NameToken::Kind::Initial}; }
NameToken full(std::string t) { return {std::move(t), NameToken::Kind::Full}; }

}  // namespace

TEST_SUITE("model") {

TEST_CASE("initial plus surname") {
  const auto n = normalize_name("J. Smith");
  REQUIRE(n);
  CHECK(n->given_tokens == std::vector{initial("j")});
  CHECK(n->surname_tokens == std::vector<std::string>{"smith"});
  CHECK(n->display == "J. Smith");
  CHECK(n->canonical() == "j. smith");
}

TEST_CASE("incomplete names") {
  CHECK_FALSE(normalize_name("Smith"));
  CHECK_FALSE(normalize_name("J. R."));
  CHECK_FALSE(normalize_name(""));
  CHECK_FALSE(normalize_name("   "));
  CHECK_FALSE(normalize_name("J. Smith3"));
  CHECK_FALSE(normalize_name("van Berg"));
}

TEST_CASE("diacritics and case are folded") {
  const auto n = normalize_name("Jürgen Müller");
  REQUIRE(n);
  CHECK(n->given_tokens == std::vector{full("jurgen")});
  CHECK(n->surname_tokens == std::vector<std::string>{"muller"});

  const auto a = normalize_name("K. Müller");
  const auto b = normalize_name("k. MULLER");
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->surname_tokens == b->surname_tokens);
  CHECK(*a == *b);
  CHECK(fold_text("Ångström") == "angstrom");
  CHECK(fold_text("Straße") == "strasse");
}

TEST_CASE("hyphens and apostrophes vanish from surnames") {
  const auto n = normalize_name("Stefanie Paul-Roux");
  REQUIRE(n);
  CHECK(n->surname_tokens == std::vector<std::string>{"paulroux"});
  CHECK(fold_surname("Paul-Roux") == "paulroux");
  CHECK(fold_surname("O'Brien") == "obrien");
  CHECK(fold_surname("van Berg") == "vanberg");
}

TEST_CASE("particles attach to the surname") {
  const auto n = normalize_name("Maria van Berg");
  REQUIRE(n);
  CHECK(n->given_tokens == std::vector{full("maria")});
  CHECK(n->surname_tokens == std::vector<std::string>{"van", "berg"});
  CHECK(n->joined_surname() == "vanberg");
  CHECK(n->canonical() == "maria van berg");

  const auto key = linkage_key(*n);
  CHECK(key.first_initial == "m");
  CHECK(key.surname == "vanberg");

  const auto multi = normalize_name("Ludwig van der Waals");
  REQUIRE(multi);
  CHECK(multi->surname_tokens == std::vector<std::string>{"van", "der", "waals"});
}

TEST_CASE("custom particle list") {
  const NameRules rules({"bin"});
  const auto n = normalize_name("Ahmad bin Ali", rules);
  REQUIRE(n);
  CHECK(n->surname_tokens == std::vector<std::string>{"bin", "ali"});
  const auto d = normalize_name("Maria van Berg", rules);
  REQUIRE(d);
  CHECK(d->surname_tokens == std::vector<std::string>{"berg"});
}

TEST_CASE("linkage key ignores initial versus full given name") {
  const auto a = normalize_name("Jinsong Zhang");
  const auto b = normalize_name("J. Zhang");
  REQUIRE(a);
  REQUIRE(b);
  CHECK(linkage_key(*a) == LinkageKey{"j", "zhang"});
  CHECK(linkage_key(*b) == LinkageKey{"j", "zhang"});
  CHECK_FALSE(*a == *b);
}

TEST_CASE("single character surname is accepted") {
  const auto n = normalize_name("Wei Z");
  REQUIRE(n);
  CHECK(n->surname_tokens == std::vector<std::string>{"z"});
}

TEST_CASE("several initials and full names") {
  const auto n = normalize_name("J. R. Smith");
  REQUIRE(n);
  CHECK(n->given_tokens == std::vector{initial("j"), initial("r")});
  CHECK(n->canonical() == "j. r. smith");

  const auto m = normalize_name("Ana B. Kalo");
  REQUIRE(m);
  CHECK(m->given_tokens == std::vector{full("ana"), initial("b")});
}

TEST_CASE("byline authors") {
  CHECK(author_key({"J.", "Zhang"}) == LinkageKey{"j", "zhang"});
  CHECK(author_key({"Émile", "Durand"}) == LinkageKey{"e", "durand"});
  CHECK(author_key({"M.", "van Berg"}) == LinkageKey{"m", "vanberg"});
  CHECK_FALSE(author_key({"", "Zhang"}));
}

TEST_CASE("rejection reasons map to stages") {
  CHECK(stage_of(RejectionReason::Incomplete) == 1);
  CHECK(stage_of(RejectionReason::NotInBenchmark) == 2);
  CHECK(stage_of(RejectionReason::Blacklisted) == 3);
  CHECK(stage_of(RejectionReason::SelfAuthor) == 4);
  CHECK(stage_of(RejectionReason::DuplicateInPaper) == 5);
  CHECK(to_string(RejectionReason::SelfAuthor) == "self_author");
}

TEST_CASE("doc types") {
  CHECK(parse_doc_type("article") == DocType::Article);
  CHECK(parse_doc_type("review") == DocType::Review);
  CHECK_FALSE(parse_doc_type("letter"));
  CHECK(to_string(DocType::Review) == "review");
}

TEST_CASE("normalization is idempotent on canonical output") {
  const std::vector<std::string> pieces = {"J.",   "R.",     "Jürgen", "Müller", "van", "de", "la",  "Paul-Roux",
                                           "Zoë",  "O'Neil", "ÅSA",    "x",      "Li",  "Ng", "Émile", "der",
                                           "3rd",  "Smith",  "M",      "Çelik",  "Øst", "ß",  "İ.",    "Ñúñez"};
  std::mt19937 rng(7);
  int complete = 0;
  for (int i = 0; i < 5000; ++i) {
    const int len = 1 + static_cast<int>(rng() % 5);
    std::string raw;
    for (int t = 0; t < len; ++t) {
      if (t) raw += ' ';
      raw += pieces[rng() % pieces.size()];
    }
    const auto n = normalize_name(raw);
    if (!n) continue;
    ++complete;
    CHECK(!n->given_tokens.empty());
    CHECK(!n->surname_tokens.empty());
    for (const auto& t : n->given_tokens) CHECK(!t.text.empty());
    for (const auto& t : n->surname_tokens) CHECK(!t.empty());
    const auto again = normalize_name(n->canonical());
    REQUIRE_MESSAGE(again, raw);
    CHECK_MESSAGE(*again == *n, raw);
    CHECK(again->canonical() == n->canonical());
    CHECK(linkage_key(*again) == linkage_key(*n));
  }
  CHECK(complete > 1000);
}

}  // TEST_SUITE
