#include "ackcensus/ingest.hpp"
#include "ackcensus/ner.hpp"
#include "ackcensus/synth.hpp"
#include "names.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ackcensus::synth {

using detail::NamePool;
using detail::Person;

Templates Templates::defaults() {
  Templates t;
  t.funding = {"This work was supported by the {org}.",
               "Funding was provided by the {org} (grant no. {grant}).",
               "We acknowledge financial support from the {org}.",
               "Financial support from the {org} under grant {grant} is gratefully acknowledged."};
  t.thanks = {"We thank {names} for helpful discussions.",
              "The authors are grateful to {names} for comments on the manuscript.",
              "Thanks are due to {names} for assistance with data collection.",
              "We are indebted to {names} for their support during fieldwork.",
              "We would like to thank {names} for technical help."};
  t.solo = {"{name} provided technical assistance.", "We thank {name} for access to samples.",
            "{name} kindly provided the reagents."};
  t.self_mention = {"{names} contributed equally to this work.",
                    "{names} also acknowledge support from their home institutions."};
  t.grant = {"Part of this work was funded by a {eponym} fellowship.",
             "This research was partly supported by the {eponym} programme."};
  t.repeat = {"{name} also helped with the figures.", "We again thank {name} for advice."};
  return t;
}

namespace {

const std::vector<std::string> kOrgSuffixes = {"Research Council", "Foundation",         "Institute", "Trust",
                                               "Agency",           "Science Foundation", "Fund",      "Society"};

std::string replace_all(std::string text, std::string_view key, std::string_view value) {
  for (std::size_t at = text.find(key); at != std::string::npos; at = text.find(key, at + value.size()))
    text.replace(at, key.size(), value);
  return text;
}

std::size_t occurrences(std::string_view text, std::string_view key) {
  std::size_t n = 0;
  for (std::size_t at = text.find(key); at != std::string_view::npos; at = text.find(key, at + key.size())) ++n;
  return n;
}

void check_templates(const std::vector<std::string>& list, std::string_view placeholder, const char* what) {
  if (list.empty()) throw std::invalid_argument(std::string("no ") + what + " templates");
  for (const auto& t : list) {
    if (occurrences(t, placeholder) != 1)
      throw std::invalid_argument(fmt::format("{} template needs {} exactly once: \"{}\"", what, placeholder, t));
    std::string bare = replace_all(t, placeholder, "");
    bare = replace_all(bare, "{grant}", "1");
    if (!ner::extract_candidates(bare).empty())
      throw std::invalid_argument(fmt::format("{} template contains name-like words: \"{}\"", what, t));
  }
}

std::set<std::string, std::less<>> reserved_words() {
  std::set<std::string, std::less<>> out;
  auto add = [&](std::string_view w) { out.insert(fold_surname(w)); };
  for (const auto& w : ner::Recognizer::default_honorifics()) add(w);
  for (const auto& w : ner::Recognizer::default_stopwords()) add(w);
  for (const auto& w : NameRules::defaults().particles()) add(w);
  for (const auto& suffix : kOrgSuffixes) {
    std::istringstream words(suffix);
    std::string w;
    while (words >> w) add(w);
  }
  return out;
}

std::string initial_of(const std::string& given) {
  // First code point of a UTF-8 string.
  std::size_t len = 1;
  const auto lead = static_cast<unsigned char>(given[0]);
  if (lead >= 0xF0)
    len = 4;
  else if (lead >= 0xE0)
    len = 3;
  else if (lead >= 0xC0)
    len = 2;
  return given.substr(0, len) + ".";
}

char random_capital(Rng& rng) { return static_cast<char>('A' + rng.below(26)); }

std::string join_names(const std::vector<std::string>& names, Rng& rng) {
  if (names.size() == 1) return names[0];
  if (names.size() == 2) return names[0] + " and " + names[1];
  std::string out = names[0];
  for (std::size_t i = 1; i + 1 < names.size(); ++i) out += ", " + names[i];
  out += rng.chance(0.5) ? ", and " : " and ";
  return out + names.back();
}

// One sentence of acknowledgement text with its planted mentions in order.
struct Sentence {
  std::string text;
  std::vector<PlantedMention> mentions;
};

class RecordBuilder {
 public:
  RecordBuilder(const GeneratorConfig& config, const NamePool& pool, const std::set<std::string, std::less<>>& reserved)
      : config_(config), pool_(pool), reserved_(reserved) {}

  // Writes the corpus line and the truth line of one record.
  void build(const DisciplineProfile& profile, std::uint64_t index, Rng& rng, std::ostream& corpus,
             std::ostream& truth) {
    Record record;
    record.id = fmt::format("{}-{:06d}", profile.code, index + 1);
    record.year = 2015;
    record.discipline = profile.name;
    record.doc_type = rng.chance(config_.review_share) ? DocType::Review : DocType::Article;

    const int n_authors = profile.authors.sample(rng);
    std::vector<Person> authors;
    std::vector<LinkageKey> taken;
    for (int a = 0; a < n_authors; ++a) {
      const Person p = fresh_person(rng, taken);
      record.authors.push_back({byline_given(p, rng), p.surname});
      authors.push_back(p);
    }
    const std::string journal =
        fmt::format("{}-J{:02d}", profile.code, 1 + rng.below(static_cast<std::uint64_t>(config_.journals_per_discipline)));

    TruthRecord t;
    t.id = record.id;
    if (rng.chance(profile.ack_text_share)) {
      const int n_ack = profile.acknowledgees_for(n_authors).sample(rng);
      std::vector<Sentence> body;
      std::vector<Person> planted;
      for (int j = 0; j < n_ack; ++j) planted.push_back(fresh_person(rng, taken));
      plant_acknowledgees(planted, rng, body, t);
      if (rng.chance(config_.self_mention_rate)) body.push_back(self_mention(authors, rng));
      for (const auto& p : planted)
        if (rng.chance(config_.repeat_rate)) body.push_back(repeat(p, rng));

      Sentence funding = funding_sentence(rng);
      if (rng.chance(0.5))
        body.insert(body.begin(), std::move(funding));
      else
        body.push_back(std::move(funding));
      if (rng.chance(config_.grant_rate)) body.push_back(grant(rng));

      std::string text;
      for (auto& s : body) {
        if (!text.empty()) text += ' ';
        text += s.text;
        for (auto& m : s.mentions) t.mentions.push_back(std::move(m));
      }
      record.ack_text = std::move(text);
    }
    corpus << ingest::to_corpus_line(record, journal) << '\n';
    truth << to_json_line(t) << '\n';
  }

 private:
  Person fresh_person(Rng& rng, std::vector<LinkageKey>& taken) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Person p = pool_.person(rng);
      auto key = author_key({p.given, p.surname});
      if (!key) continue;
      if (std::find(taken.begin(), taken.end(), *key) != taken.end()) continue;
      taken.push_back(std::move(*key));
      return p;
    }
    throw std::runtime_error("name pool too small for a record");
  }

  static std::string byline_given(const Person& p, Rng& rng) {
    const double roll = rng.uniform();
    if (roll < 0.5) return p.given;
    if (roll < 0.85) return initial_of(p.given);
    return initial_of(p.given) + " " + random_capital(rng) + ".";
  }

  static std::string mention_form(const Person& p, Rng& rng) {
    const double roll = rng.uniform();
    if (roll < 0.55) return p.given + " " + p.surname;
    if (roll < 0.80) return initial_of(p.given) + " " + p.surname;
    if (roll < 0.92) return p.given + " " + random_capital(rng) + ". " + p.surname;
    return initial_of(p.given) + " " + random_capital(rng) + ". " + p.surname;
  }

  std::string with_honorific(const std::string& surface, Rng& rng) const {
    if (!rng.chance(config_.honorific_rate)) return surface;
    return (rng.chance(0.5) ? "Dr. " : "Prof. ") + surface;
  }

  void plant_acknowledgees(const std::vector<Person>& planted, Rng& rng, std::vector<Sentence>& body,
                           TruthRecord& truth) {
    std::size_t listed = planted.size();
    const bool solo = !planted.empty() && rng.chance(0.3);
    if (solo) --listed;

    auto mention = [&](const Person& p, std::vector<PlantedMention>& mentions) {
      const std::string surface = mention_form(p, rng);
      const auto normalized = normalize_name(surface);
      if (!normalized) throw std::logic_error("generated name does not normalize: " + surface);
      truth.acknowledgees.push_back(normalized->canonical());
      mentions.push_back({surface, MentionKind::Acknowledgee});
      return with_honorific(surface, rng);
    };

    for (std::size_t begin = 0; begin < listed;) {
      const std::size_t size = std::min<std::size_t>(listed - begin, 1 + rng.below(6));
      Sentence s;
      std::vector<std::string> surfaces;
      for (std::size_t i = begin; i < begin + size; ++i) surfaces.push_back(mention(planted[i], s.mentions));
      s.text = replace_all(rng.pick(config_.templates.thanks), "{names}", join_names(surfaces, rng));
      body.push_back(std::move(s));
      begin += size;
    }
    if (solo) {
      Sentence s;
      const std::string surface = mention(planted.back(), s.mentions);
      s.text = replace_all(rng.pick(config_.templates.solo), "{name}", surface);
      body.push_back(std::move(s));
    }
  }

  Sentence self_mention(const std::vector<Person>& authors, Rng& rng) const {
    const std::size_t count = std::min<std::size_t>(authors.size(), 1 + rng.below(3));
    Sentence s;
    std::vector<std::string> surfaces;
    for (std::size_t i = 0; i < count; ++i) {
      const Person& a = authors[i];
      surfaces.push_back(a.given + " " + a.surname);
      s.mentions.push_back({surfaces.back(), MentionKind::SelfAuthor});
    }
    s.text = replace_all(rng.pick(config_.templates.self_mention), "{names}", join_names(surfaces, rng));
    return s;
  }

  Sentence repeat(const Person& p, Rng& rng) const {
    Sentence s;
    const std::string surface = initial_of(p.given) + " " + p.surname;
    s.mentions.push_back({surface, MentionKind::Repeat});
    s.text = replace_all(rng.pick(config_.templates.repeat), "{name}", surface);
    return s;
  }

  Sentence funding_sentence(Rng& rng) const {
    Sentence s;
    std::string prefix = detail::syllable_word(rng);
    while (reserved_.count(fold_text(prefix))) prefix = detail::syllable_word(rng);
    const std::string& suffix = rng.pick(kOrgSuffixes);
    std::string org = prefix + " " + suffix;
    s.mentions.push_back({org, MentionKind::NonPerson});
    if (rng.chance(config_.acronym_rate)) {
      std::string acronym;
      std::istringstream words(org);
      std::string w;
      while (words >> w) acronym += w[0];
      // An acronym such as "IT" would read as a stopword.
      if (!reserved_.count(fold_text(acronym))) {
        org += " (" + acronym + ")";
        s.mentions.push_back({acronym, MentionKind::NonPerson});
      }
    }
    s.text = replace_all(rng.pick(config_.templates.funding), "{org}", org);
    s.text = replace_all(s.text, "{grant}", fmt::format("{}", 1000 + rng.below(9000)));
    return s;
  }

  Sentence grant(Rng& rng) const {
    const Person& e = rng.pick(pool_.eponyms());
    Sentence s;
    const std::string surface = e.given + " " + e.surname;
    s.mentions.push_back({surface, MentionKind::Blacklisted});
    s.text = replace_all(rng.pick(config_.templates.grant), "{eponym}", surface);
    return s;
  }

  const GeneratorConfig& config_;
  const NamePool& pool_;
  const std::set<std::string, std::less<>>& reserved_;
};

void generate_streams(const GeneratorConfig& config, std::ostream& corpus, std::ostream& lexicon,
                      std::ostream& blacklist, std::ostream& truth, std::ostream& discipline_map) {
  config.validate();
  const auto reserved = reserved_words();
  const NamePool pool(config.seed ^ 0x9e3779b97f4a7c15ULL,
                      {config.given_names, config.surnames, config.noise_surnames, config.eponyms}, reserved);

  lexicon << "# surnames\n";
  for (const auto& s : pool.surnames()) lexicon << s << '\n';
  for (const auto& s : pool.noise_surnames()) lexicon << s << '\n';
  for (const auto& e : pool.eponyms()) lexicon << e.surname << '\n';

  blacklist << "# grant and organisation names that look like people\n";
  for (const auto& e : pool.eponyms()) blacklist << e.given << ' ' << e.surname << '\n';

  discipline_map << "journal,discipline\n";
  for (const auto& profile : config.profiles)
    for (int j = 1; j <= config.journals_per_discipline; ++j)
      discipline_map << ingest::csv_field(fmt::format("{}-J{:02d}", profile.code, j)) << ','
                     << ingest::csv_field(profile.name) << '\n';

  RecordBuilder builder(config, pool, reserved);
  for (std::size_t d = 0; d < config.profiles.size(); ++d) {
    const auto& profile = config.profiles[d];
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(d)};
    Rng rng(seq);
    for (std::uint64_t i = 0; i < profile.papers; ++i) builder.build(profile, i, rng, corpus, truth);
  }
}

}  // namespace

void GeneratorConfig::validate() const {
  for (double rate : {self_mention_rate, grant_rate, repeat_rate, honorific_rate, acronym_rate, review_share})
    if (!(rate >= 0 && rate <= 1)) throw std::invalid_argument("generator rates must lie in [0, 1]");
  if (journals_per_discipline < 1) throw std::invalid_argument("journals_per_discipline must be positive");
  if (given_names == 0 || surnames == 0) throw std::invalid_argument("name pools must not be empty");
  if (grant_rate > 0 && eponyms == 0) throw std::invalid_argument("grant distractors need eponyms");
  std::set<std::string> codes;
  for (const auto& p : profiles) {
    if (p.code.empty() || p.name.empty()) throw std::invalid_argument("profile needs a name and an id code");
    if (!codes.insert(p.code).second) throw std::invalid_argument("duplicate profile code " + p.code);
    if (!(p.ack_text_share >= 0 && p.ack_text_share <= 1))
      throw std::invalid_argument(p.name + ": ack_text_share outside [0, 1]");
    if (p.authors.first() < 1) throw std::invalid_argument(p.name + ": author counts must start at 1");
    if (p.acknowledgees.empty()) throw std::invalid_argument(p.name + ": no acknowledgee distribution");
    for (const auto& a : p.acknowledgees)
      if (a.first() < 0) throw std::invalid_argument(p.name + ": negative acknowledgee count");
  }
  check_templates(templates.funding, "{org}", "funding");
  check_templates(templates.thanks, "{names}", "thanks");
  check_templates(templates.solo, "{name}", "solo");
  check_templates(templates.self_mention, "{names}", "self-mention");
  check_templates(templates.grant, "{eponym}", "grant");
  check_templates(templates.repeat, "{name}", "repeat");
}

GenerateResult generate(const GeneratorConfig& config, const fs::path& out_dir) {
  config.validate();
  fs::create_directories(out_dir);
  GenerateResult result{out_dir / "corpus.jsonl", out_dir / "lexicon.txt", out_dir / "blacklist.txt",
                        out_dir / "truth.jsonl", out_dir / "discipline_map.csv", 0};
  auto open = [](const fs::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
  };
  auto corpus = open(result.corpus);
  auto lexicon = open(result.lexicon);
  auto blacklist = open(result.blacklist);
  auto truth = open(result.truth);
  auto map = open(result.discipline_map);
  generate_streams(config, corpus, lexicon, blacklist, truth, map);
  for (auto* out : {&corpus, &lexicon, &blacklist, &truth, &map}) {
    out->flush();
    if (!*out) throw std::runtime_error("write failed in " + out_dir.string());
  }
  for (const auto& p : config.profiles) result.records += p.papers;
  return result;
}

GeneratedText generate_text(const GeneratorConfig& config) {
  std::ostringstream corpus, lexicon, blacklist, truth, map;
  generate_streams(config, corpus, lexicon, blacklist, truth, map);
  return {std::move(corpus).str(), std::move(lexicon).str(), std::move(blacklist).str(), std::move(truth).str(),
          std::move(map).str()};
}

}  // namespace ackcensus::synth
