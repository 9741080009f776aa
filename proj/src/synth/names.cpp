#include "names.hpp"

#include <stdexcept>
#include <unordered_set>

namespace ackcensus::synth::detail {

namespace {

const std::vector<std::string> kOnsets = {"b",  "c",  "d",  "f",  "g",  "h",  "j",  "k",  "l",  "m",
                                          "n",  "p",  "r",  "s",  "t",  "v",  "w",  "z",  "br", "ch",
                                          "cl", "dr", "gr", "kr", "pl", "st", "tr", "sh", "th", ""};
const std::vector<std::string> kVowels = {"a", "e", "i", "o", "u", "a", "e", "o", "ai", "ei", "ou", "ia"};
const std::vector<std::string> kCodas = {"", "", "", "", "n", "r", "l", "s", "m", "k", "t"};

const std::vector<Person> kRealEponyms = {{"Frederick", "Banting"},
                                          {"Marie", "Curie"},
                                          {"Boehringer", "Ingelheim"},
                                          {"Instituto de Salud Carlos", "III"}};

std::string accented(char vowel) {
  switch (vowel) {
    case 'a':
      return "á";
    case 'e':
      return "é";
    case 'i':
      return "í";
    case 'o':
      return "ö";
    case 'u':
      return "ü";
    case 'n':
      return "ñ";
    default:
      return std::string(1, vowel);
  }
}

// Replaces one lowercase vowel (or n) after the first letter.
std::string with_diacritic(const std::string& word, Rng& rng) {
  std::vector<std::size_t> spots;
  for (std::size_t i = 1; i < word.size(); ++i)
    if (std::string_view("aeioun").find(word[i]) != std::string_view::npos) spots.push_back(i);
  if (spots.empty()) return word;
  const std::size_t at = rng.pick(spots);
  return word.substr(0, at) + accented(word[at]) + word.substr(at + 1);
}

class Unique {
 public:
  explicit Unique(const std::set<std::string, std::less<>>& reserved) : reserved_(reserved) {}

  // Claims the folded key; false when reserved, too short or already taken.
  bool claim(const std::string& folded) {
    if (folded.size() < 3 || reserved_.count(folded)) return false;
    return seen_.insert(folded).second;
  }

 private:
  const std::set<std::string, std::less<>>& reserved_;
  std::unordered_set<std::string> seen_;
};

template <typename Make>
std::vector<std::string> draw(std::size_t count, Unique& unique, Rng& rng, Make&& make, const char* what) {
  std::vector<std::string> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 50 * count + 1000) throw std::runtime_error(std::string("cannot generate enough ") + what);
    std::string name = make(rng);
    if (unique.claim(fold_surname(name))) out.push_back(std::move(name));
  }
  return out;
}

}  // namespace

std::string syllable_word(Rng& rng) {
  const int syllables = 2 + static_cast<int>(rng.below(2));
  std::string word;
  for (int i = 0; i < syllables; ++i) {
    word += rng.pick(kOnsets);
    word += rng.pick(kVowels);
    if (i + 1 == syllables || rng.chance(0.3)) word += rng.pick(kCodas);
  }
  word[0] = static_cast<char>(word[0] - 'a' + 'A');
  return word;
}

NamePool::NamePool(std::uint64_t seed, Sizes sizes, const std::set<std::string, std::less<>>& reserved) {
  Rng rng(seed);
  Unique unique(reserved);
  for (const auto& p : kRealEponyms) unique.claim(fold_surname(p.surname));

  given_ = draw(sizes.given, unique, rng,
                [](Rng& r) {
                  std::string w = syllable_word(r);
                  return r.chance(0.1) ? with_diacritic(w, r) : w;
                },
                "given names");

  static const std::vector<std::string> particles = {"van", "de", "da", "von", "del"};
  surnames_ = draw(sizes.surnames, unique, rng,
                   [](Rng& r) {
                     const double roll = r.uniform();
                     std::string w = syllable_word(r);
                     if (roll < 0.08) return r.pick(particles) + " " + w;
                     if (roll < 0.14) return w + "-" + syllable_word(r);
                     if (roll < 0.26) return with_diacritic(w, r);
                     return w;
                   },
                   "surnames");

  noise_ = draw(sizes.noise, unique, rng, [](Rng& r) { return syllable_word(r); }, "noise surnames");

  const auto eponym_surnames = draw(sizes.eponyms, unique, rng, [](Rng& r) { return syllable_word(r); }, "eponyms");
  for (const auto& s : eponym_surnames) eponyms_.push_back({rng.pick(given_), s});
  eponyms_.insert(eponyms_.end(), kRealEponyms.begin(), kRealEponyms.end());
}

}  // namespace ackcensus::synth::detail
