#pragma once

// Pronounceable made-up names for the generator.

#include "ackcensus/synth.hpp"

#include <set>
#include <string>
#include <vector>

namespace ackcensus::synth::detail {

struct Person {
  std::string given;
  std::string surname;
};

class NamePool {
 public:
  struct Sizes {
    std::size_t given;
    std::size_t surnames;
    std::size_t noise;
    std::size_t eponyms;
  };

  /// `reserved` holds folded words no generated name may fold to.
  NamePool(std::uint64_t seed, Sizes sizes, const std::set<std::string, std::less<>>& reserved);

  const std::vector<std::string>& given_names() const { return given_; }
  const std::vector<std::string>& surnames() const { return surnames_; }
  const std::vector<std::string>& noise_surnames() const { return noise_; }
  /// Grant names: generated eponyms followed by a few real ones.
  const std::vector<Person>& eponyms() const { return eponyms_; }

  Person person(Rng& rng) const { return {rng.pick(given_), rng.pick(surnames_)}; }

 private:
  std::vector<std::string> given_;
  std::vector<std::string> surnames_;
  std::vector<std::string> noise_;
  std::vector<Person> eponyms_;
};

/// A capitalized ASCII word of two or three syllables.
std::string syllable_word(Rng& rng);

}  // namespace ackcensus::synth::detail
