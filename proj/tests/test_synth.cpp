#include "ackcensus/cleanse.hpp"
#include "ackcensus/ingest.hpp"
#include "ackcensus/synth.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

using namespace ackcensus;
using namespace ackcensus::synth;

namespace {

GeneratorConfig single_profile(const DisciplineProfile& profile, std::uint64_t seed) {
  GeneratorConfig c;
  c.seed = seed;
  c.profiles = {profile};
  return c;
}

CalibrationTarget social_target(std::uint64_t papers) {
  CalibrationTarget t;
  t.name = "Social Sciences";
  t.code = "SOCS";
  t.papers = papers;
  t.ack_text_share = 1.0;
  t.acknowledgee_share = 0.547;
  t.single_author_share = 0.25;
  t.mean_authors = 2.7;
  t.mean_acknowledgees = 2.8;
  return t;
}

struct Sample {
  std::vector<Record> records;
  std::vector<TruthRecord> truth;
};

Sample load(const GeneratedText& text) {
  std::istringstream corpus(text.corpus), truth(text.truth);
  return {ingest::parse_corpus(corpus), read_truth(truth)};
}

double variance(const DiscreteDistribution& d) {
  double v = 0;
  for (int k = d.first(); k <= d.last(); ++k) v += d.probability(k) * std::pow(k - d.mean(), 2);
  return v;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("same seed, same bytes") {
  const auto a = generate_text(GeneratorConfig::with_total(500, 1));
  const auto b = generate_text(GeneratorConfig::with_total(500, 1));
  CHECK(a.corpus == b.corpus);
  CHECK(a.truth == b.truth);
  CHECK(a.lexicon == b.lexicon);
  CHECK(a.blacklist == b.blacklist);
  CHECK(a.discipline_map == b.discipline_map);
  CHECK(generate_text(GeneratorConfig::with_total(500, 2)).corpus != a.corpus);

  test_support::TempDir dir;
  const auto files = generate(GeneratorConfig::with_total(500, 1), dir.path());
  CHECK(files.records == 500);
  CHECK(test_support::slurp(files.corpus) == a.corpus);
  CHECK(test_support::slurp(files.truth) == a.truth);
  CHECK(test_support::slurp(files.lexicon) == a.lexicon);
  CHECK(test_support::slurp(files.blacklist) == a.blacklist);
  CHECK(test_support::slurp(files.discipline_map) == a.discipline_map);
}

TEST_CASE("rng primitives") {
  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(3);
  for (int i = 0; i < 10000; ++i) {
    CHECK(r.below(7) < 7);
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK_THROWS_AS(r.below(0), std::invalid_argument);
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(DiscreteDistribution(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution(0, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution(0, {1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution(0, {NAN, 1.0}), std::invalid_argument);
  const DiscreteDistribution d(2, {0.25, 0.75});
  CHECK(d.mean() == doctest::Approx(2.75));
  CHECK(d.tail(3) == doctest::Approx(0.75));
  CHECK(d.probability(9) == 0.0);
  CHECK(d.last() == 3);

  const auto g = truncated_geometric(2, 100, 5.0);
  CHECK(g.mean() == doctest::Approx(5.0).epsilon(1e-9));
  const auto p = shifted_poisson(40, 3.3);
  CHECK(p.mean() == doctest::Approx(3.3).epsilon(1e-9));
  CHECK(p.first() == 1);
  CHECK_THROWS_AS(truncated_geometric(2, 5, 7.0), std::invalid_argument);

  auto bad = GeneratorConfig::with_total(10, 1);
  bad.grant_rate = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  auto noisy = GeneratorConfig::with_total(10, 1);
  noisy.templates.thanks = {"We thank {names} and Albert Einstein."};
  CHECK_THROWS_AS(noisy.validate(), std::invalid_argument);
  auto missing = GeneratorConfig::with_total(10, 1);
  missing.templates.solo = {"Nobody helped."};
  CHECK_THROWS_AS(missing.validate(), std::invalid_argument);
  test_support::TempDir dir;
  CHECK_THROWS_AS(generate(bad, dir.path()), std::invalid_argument);
  CHECK_FALSE(fs::exists(dir / "corpus.jsonl"));

  auto target = social_target(100);
  target.mean_acknowledgees = 0.1;
  CHECK_THROWS_AS(calibrate(target), std::invalid_argument);
}

TEST_CASE("profile without acknowledgees plants none") {
  DisciplineProfile p = calibrate(social_target(2000));
  p.acknowledgees = {DiscreteDistribution::constant(0)};
  const auto sample = load(generate_text(single_profile(p, 5)));
  REQUIRE(sample.truth.size() == 2000);
  for (const auto& t : sample.truth) {
    CHECK(t.acknowledgees.empty());
    for (const auto& m : t.mentions) CHECK(m.kind != MentionKind::Acknowledgee);
  }
}

TEST_CASE("sample means track the calibrated targets") {
  const auto profile = calibrate(social_target(10000));
  CHECK(profile.authors.mean() == doctest::Approx(2.7).epsilon(1e-6));
  const auto sample = load(generate_text(single_profile(profile, 42)));
  REQUIRE(sample.records.size() == 10000);
  double authors = 0, acks = 0;
  for (std::size_t i = 0; i < sample.records.size(); ++i) {
    authors += static_cast<double>(sample.records[i].authors.size());
    acks += static_cast<double>(sample.truth[i].acknowledgees.size());
  }
  CHECK(std::abs(authors / 10000 - 2.7) < 0.1);
  CHECK(std::abs(acks / 10000 - 2.8) < 0.1);
}

TEST_CASE("sampling error shrinks with the square root of the size") {
  const auto d = truncated_geometric(1, 60, 4.2);
  const double sd = std::sqrt(variance(d));
  Rng rng(77);
  for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += d.sample(rng);
    CHECK_MESSAGE(std::abs(sum / static_cast<double>(n) - d.mean()) <= 5 * sd / std::sqrt(static_cast<double>(n)), n);
  }
}

TEST_CASE("default profiles") {
  const auto profiles = default_profiles();
  CHECK(profiles.size() == 12);
  std::map<std::string, const DisciplineProfile*> by;
  for (const auto& p : profiles) by[p.name] = &p;
  CHECK(by.at("Physics")->authors.mean() == doctest::Approx(10.7).epsilon(0.01));
  const auto& social = *by.at("Social Sciences");
  double acks = 0;
  for (int k = social.authors.first(); k <= social.authors.last(); ++k)
    acks += social.authors.probability(k) * social.acknowledgees_for(k).mean();
  CHECK(acks > social.authors.mean());
  CHECK(social.acknowledgees_for(1).tail(1) == doctest::Approx(0.40));

  std::uint64_t total = 0;
  for (const auto& p : GeneratorConfig::with_total(10007, 1).profiles) total += p.papers;
  CHECK(total == 10007);
  for (const auto& p : GeneratorConfig::with_papers_per_discipline(33, 1).profiles) CHECK(p.papers == 33);
}

TEST_CASE("planted mentions survive cleaning exactly as labelled") {
  const auto text = generate_text(GeneratorConfig::with_total(4000, 11));
  std::istringstream lex_in(text.lexicon), bl_in(text.blacklist);
  const auto lexicon = ingest::load_surname_set(lex_in);
  const auto blacklist = ingest::load_blacklist(bl_in);
  CHECK(blacklist.rejected().empty());
  const auto sample = load(text);
  REQUIRE(sample.records.size() == sample.truth.size());

  std::size_t planted = 0;
  for (std::size_t i = 0; i < sample.records.size(); ++i) {
    const auto& record = sample.records[i];
    const auto& truth = sample.truth[i];
    REQUIRE(record.id == truth.id);
    std::vector<ner::NameCandidate> candidates;
    for (const auto& m : truth.mentions) candidates.push_back({m.surface, {0, m.surface.size()}, {m.surface}});
    const auto result = cleanse::clean_record(record, candidates, cleanse::Filters{lexicon, blacklist});

    std::vector<std::string> accepted;
    for (const auto& m : result.acknowledgees.members()) accepted.push_back(m.canonical());
    CHECK_MESSAGE(accepted == truth.acknowledgees, record.id);
    planted += truth.acknowledgees.size();

    for (std::size_t k = 0; k < truth.mentions.size(); ++k) {
      const auto& o = result.outcomes[k];
      switch (truth.mentions[k].kind) {
        case MentionKind::Acknowledgee:
          CHECK(o.accepted());
          break;
        case MentionKind::SelfAuthor:
          CHECK(o.rejection == RejectionReason::SelfAuthor);
          break;
        case MentionKind::Blacklisted:
          CHECK(o.rejection == RejectionReason::Blacklisted);
          break;
        case MentionKind::Repeat:
          CHECK(o.rejection == RejectionReason::DuplicateInPaper);
          break;
        case MentionKind::NonPerson:
          CHECK((o.rejection == RejectionReason::Incomplete || o.rejection == RejectionReason::NotInBenchmark));
          break;
      }
    }
    // Planted acknowledgees never collide with the byline.
    for (const auto& name : truth.acknowledgees)
      for (const auto& a : record.authors) CHECK(author_key(a) != linkage_key(*normalize_name(name)));
  }
  CHECK(planted > 2000);
}

TEST_CASE("truth lines round trip") {
  const TruthRecord r{"X-1", {"ana kalo", "j. smith"},
                      {{"Ana Kalo", MentionKind::Acknowledgee}, {"Marie Curie", MentionKind::Blacklisted},
                       {"\"Q\" Org", MentionKind::NonPerson}}};
  std::istringstream in(to_json_line(r) + "\n\n" + to_json_line(r) + "\n");
  const auto back = read_truth(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == r);
  std::istringstream bad("{\"id\":\"x\"}\n");
  CHECK_THROWS_AS(read_truth(bad), std::runtime_error);
  CHECK_THROWS_AS(parse_mention_kind("person"), std::invalid_argument);
}

TEST_CASE("evaluation examples") {
  const std::vector<TruthRecord> truth = {
      {"A", {"ana kalo", "j. smith", "li wu", "karl vos", "maria van berg"}, {}},
      {"B", {"wei z", "emile durand", "o. okafor", "kenji tanaka", "x. feng"}, {}},
  };

  const std::vector<ExtractedRecord> perfect = {{"A", {"Ana Kalo", "John Smith", "L. Wu", "Karl Vos", "M. van Berg"}},
                                                {"B", {"Wei Z", "Émile Durand", "O. Okafor", "Kenji Tanaka", "X. Feng"}}};
  const auto p = evaluate(perfect, truth);
  CHECK(*p.overall.precision() == 1.0);
  CHECK(*p.overall.recall() == 1.0);

  const std::vector<ExtractedRecord> nothing = {{"A", {}}, {"B", {}}};
  const auto n = evaluate(nothing, truth);
  CHECK(*n.overall.recall() == 0.0);
  CHECK_FALSE(n.overall.precision());

  const std::vector<ExtractedRecord> one_off = {{"B", {"Wei Z", "Emile Durand", "O. Okafor", "Kenji Tanaka", "Yan Qi"}},
                                                {"A", {"Ana Kalo", "J. Smith", "Li Wu", "Karl Vos", "Maria van Berg"}}};
  const auto o = evaluate(one_off, truth);
  CHECK(o.overall.matched == 9);
  CHECK(*o.overall.precision() == doctest::Approx(0.9));
  CHECK(*o.overall.recall() == doctest::Approx(0.9));
  REQUIRE(o.per_record.size() == 2);
  CHECK(o.per_record[0].first == "A");
  CHECK(*o.per_record[1].second.precision() == doctest::Approx(0.8));

  // Repeated extraction of the same person only matches once.
  const std::vector<ExtractedRecord> doubled = {{"A", {"Ana Kalo", "A. Kalo"}}, {"B", {}}};
  CHECK(evaluate(doubled, truth).overall.matched == 1);

  const std::vector<ExtractedRecord> wrong_ids = {{"A", {}}, {"C", {}}};
  CHECK_THROWS_AS(evaluate(wrong_ids, truth), std::invalid_argument);
  const std::vector<ExtractedRecord> duplicate = {{"A", {}}, {"A", {}}};
  CHECK_THROWS_AS(evaluate(duplicate, truth), std::invalid_argument);
  const std::vector<ExtractedRecord> short_list = {{"A", {}}};
  CHECK_THROWS_AS(evaluate(short_list, truth), std::invalid_argument);
}

TEST_CASE("mention scoring is a multiset match") {
  const std::vector<PlantedMention> planted = {{"Ana Kalo", MentionKind::Acknowledgee},
                                               {"Ana Kalo", MentionKind::Repeat},
                                               {"NIH", MentionKind::NonPerson}};
  const std::vector<std::string> found = {"Ana Kalo", "NIH", "NIH", "Li Wu"};
  const auto s = score_mentions(found, planted);
  CHECK(s.matched == 2);
  CHECK(s.extracted == 4);
  CHECK(s.planted == 3);
}

TEST_CASE("run output loader") {
  test_support::TempDir dir;
  test_support::spit(dir / "summaries.csv", "id,discipline,n_authors,n_acknowledgees,has_ack_text\nA,X,1,2,1\nB,X,1,0,0\n");
  test_support::spit(dir / "acknowledgees.csv", "record_id,name\nA,ana kalo\nA,\"j. smith\"\n");
  const auto out = load_run_output(dir.path());
  REQUIRE(out.size() == 2);
  CHECK(out[0].id == "A");
  CHECK(out[0].names == std::vector<std::string>{"ana kalo", "j. smith"});
  CHECK(out[1].names.empty());
}

}  // TEST_SUITE
