#include "ackcensus/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ackcensus::synth {

Rng::Rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  // Reject the short top slice so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % n;
  }
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

DiscreteDistribution::DiscreteDistribution(int first, std::vector<double> probabilities)
    : first_(first), probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) throw std::invalid_argument("distribution has empty support");
  double sum = 0;
  cumulative_.clear();
  cumulative_.reserve(probabilities_.size());
  for (double p : probabilities_) {
    if (!std::isfinite(p) || p < 0) throw std::invalid_argument("distribution has a negative or non-finite mass");
    sum += p;
    cumulative_.push_back(sum);
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("distribution masses sum to " + std::to_string(sum) + ", not 1");
}

int DiscreteDistribution::sample(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  // Zero-mass values share their cumulative with a predecessor and can never
  // be returned; the clamp only matters for rounding at the very top.
  const auto index = std::min<std::ptrdiff_t>(it - cumulative_.begin(), static_cast<std::ptrdiff_t>(cumulative_.size()) - 1);
  return first_ + static_cast<int>(index);
}

double DiscreteDistribution::probability(int value) const {
  if (value < first_ || value > last()) return 0;
  return probabilities_[static_cast<std::size_t>(value - first_)];
}

double DiscreteDistribution::mean() const {
  double m = 0;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) m += probabilities_[i] * (first_ + static_cast<double>(i));
  return m;
}

double DiscreteDistribution::tail(int value) const {
  double t = 0;
  for (int v = std::max(value, first_); v <= last(); ++v) t += probability(v);
  return t;
}

namespace {

std::vector<double> normalized(std::vector<double> w) {
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
  return w;
}

double weighted_mean(int first, const std::vector<double>& p) {
  double m = 0;
  for (std::size_t i = 0; i < p.size(); ++i) m += p[i] * (first + static_cast<double>(i));
  return m;
}

// Bisection on a parameter whose mean is increasing in it.
template <typename Weights>
std::vector<double> solve_mean(int first, double lo, double hi, double target, Weights&& weights) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (weighted_mean(first, weights(mid)) < target)
      lo = mid;
    else
      hi = mid;
  }
  return weights(0.5 * (lo + hi));
}

}  // namespace

DiscreteDistribution truncated_geometric(int first, int last, double mean) {
  if (last < first) throw std::invalid_argument("empty support");
  if (mean == first) return DiscreteDistribution::constant(first);
  const auto weights = [&](double r) {
    std::vector<double> w(static_cast<std::size_t>(last - first + 1));
    double x = 1;
    for (double& v : w) {
      v = x;
      x *= r;
    }
    return normalized(std::move(w));
  };
  // r = 1 is the uniform distribution, the largest mean a decreasing shape allows.
  if (!(mean > first) || mean > 0.5 * (first + last))
    throw std::invalid_argument("mean " + std::to_string(mean) + " unreachable on " + std::to_string(first) + ".." +
                                std::to_string(last));
  return DiscreteDistribution(first, solve_mean(first, 0.0, 1.0, mean, weights));
}

DiscreteDistribution shifted_poisson(int last, double mean) {
  if (last < 1) throw std::invalid_argument("empty support");
  if (mean == 1) return DiscreteDistribution::constant(1);
  if (!(mean > 1) || mean > 0.5 * (1 + last))
    throw std::invalid_argument("mean " + std::to_string(mean) + " unreachable on 1.." + std::to_string(last));
  const auto weights = [&](double lambda) {
    std::vector<double> w(static_cast<std::size_t>(last));
    double x = 1;
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] = x;
      x *= lambda / static_cast<double>(j + 1);
    }
    return normalized(std::move(w));
  };
  return DiscreteDistribution(1, solve_mean(1, 0.0, 2.0 * last, mean, weights));
}

const DiscreteDistribution& DisciplineProfile::acknowledgees_for(int authors) const {
  if (acknowledgees.empty()) throw std::logic_error("profile " + name + " has no acknowledgee distribution");
  const auto index = static_cast<std::size_t>(std::max(authors, 1) - 1);
  return acknowledgees[std::min(index, acknowledgees.size() - 1)];
}

DisciplineProfile calibrate(const CalibrationTarget& t) {
  auto check_share = [&](double v, const char* what) {
    if (!(v >= 0 && v <= 1)) throw std::invalid_argument(t.name + ": " + what + " outside [0, 1]");
  };
  check_share(t.ack_text_share, "ack_text_share");
  check_share(t.acknowledgee_share, "acknowledgee_share");
  check_share(t.single_author_share, "single_author_share");
  check_share(t.single_author_acknowledgee_share, "single_author_acknowledgee_share");
  if (!(t.decay > 0 && t.decay <= 1)) throw std::invalid_argument(t.name + ": decay outside (0, 1]");

  DisciplineProfile profile;
  profile.name = t.name;
  profile.code = t.code;
  profile.papers = t.papers;
  profile.ack_text_share = t.ack_text_share;

  // Authors: a point mass at 1 plus a geometric tail on 2..max.
  const double s = t.single_author_share;
  std::vector<double> authors(static_cast<std::size_t>(t.max_authors), 0.0);
  authors[0] = s;
  if (s < 1) {
    const auto multi = truncated_geometric(2, t.max_authors, (t.mean_authors - s) / (1 - s));
    for (int k = 2; k <= t.max_authors; ++k) authors[static_cast<std::size_t>(k - 1)] = (1 - s) * multi.probability(k);
  } else if (t.mean_authors != 1) {
    throw std::invalid_argument(t.name + ": all papers single-authored but mean authors != 1");
  }
  profile.authors = DiscreteDistribution(1, authors);

  // P(any acknowledgee | k authors): fixed for k = 1, shared by k >= 2 so
  // the overall share matches.
  constexpr int kLevels = 10;
  const double p1 = s > 0 ? t.single_author_acknowledgee_share : 0;
  double p_multi = t.acknowledgee_share;
  if (s >= 1) {
    p_multi = 0;
    if (std::abs(p1 - t.acknowledgee_share) > 1e-12)
      throw std::invalid_argument(t.name + ": single-author share fixes the acknowledgee share");
  } else {
    p_multi = (t.acknowledgee_share - s * p1) / (1 - s);
  }
  if (p_multi < -1e-12 || p_multi > 1 + 1e-12)
    throw std::invalid_argument(t.name + ": acknowledgee shares are inconsistent");
  p_multi = std::clamp(p_multi, 0.0, 1.0);

  std::vector<double> level_weight(kLevels, 0.0);
  for (int k = 1; k <= t.max_authors; ++k) level_weight[static_cast<std::size_t>(std::min(k, kLevels) - 1)] += profile.authors.probability(k);

  auto any_share = [&](int level) { return level == 1 ? p1 : p_multi; };
  double base = 0, slope = 0;
  for (int level = 1; level <= kLevels; ++level) {
    const double w = level_weight[static_cast<std::size_t>(level - 1)] * any_share(level);
    base += w;
    slope += w * std::pow(t.decay, level - 1);
  }
  if (t.mean_acknowledgees < base - 1e-12)
    throw std::invalid_argument(t.name + ": mean acknowledgees below the share of papers naming anyone");
  const double excess = slope > 0 ? std::max(0.0, t.mean_acknowledgees - base) / slope : 0.0;

  for (int level = 1; level <= kLevels; ++level) {
    const double any = any_share(level);
    std::vector<double> p(static_cast<std::size_t>(t.max_acknowledgees + 1), 0.0);
    p[0] = 1 - any;
    if (any > 0) {
      const auto positive = shifted_poisson(t.max_acknowledgees, 1 + excess * std::pow(t.decay, level - 1));
      for (int j = positive.first(); j <= positive.last(); ++j) p[static_cast<std::size_t>(j)] = any * positive.probability(j);
    }
    profile.acknowledgees.emplace_back(0, std::move(p));
  }
  return profile;
}

const std::vector<CalibrationTarget>& default_targets() {
  // name, code, N, N with text, N naming someone, single-author share,
  // mean authors, mean acknowledgees, decay
  struct Row {
    const char* name;
    const char* code;
    std::uint64_t n, n_ack, n_ackee;
    double single, authors, acks, decay;
  };
  static const Row rows[] = {
      {"Earth & Space", "EASP", 92238, 72922, 41633, 0.05, 5.1, 2.5, 1.0},
      {"Biology", "BIOL", 105279, 76281, 43365, 0.06, 4.8, 2.4, 0.8},
      {"Biomedical Research", "BIOM", 189066, 158067, 59142, 0.015, 6.9, 1.3, 1.0},
      {"Physics", "PHYS", 124556, 95676, 35063, 0.05, 10.7, 1.0, 1.0},
      {"Psychology", "PSYC", 31286, 15085, 7736, 0.08, 3.9, 2.1, 1.0},
      {"Chemistry", "CHEM", 151947, 123806, 36583, 0.03, 5.3, 0.9, 1.0},
      {"Social Sciences", "SOCS", 50420, 16972, 9291, 0.28, 2.66, 2.84, 0.8},
      {"Engineering & Technology", "ENGT", 241124, 165590, 43899, 0.05, 4.2, 0.9, 1.0},
      {"Clinical Medicine", "CLIN", 389311, 218367, 67019, 0.018, 6.9, 1.2, 1.0},
      {"Mathematics", "MATH", 49997, 35390, 8314, 0.20, 2.6, 0.5, 1.0},
      {"Health", "HLTH", 37309, 18703, 5651, 0.08, 4.6, 1.6, 1.0},
      {"Professional Fields", "PROF", 41015, 12552, 5071, 0.15, 2.6, 2.6, 0.8},
  };
  static const std::vector<CalibrationTarget> targets = [] {
    std::vector<CalibrationTarget> out;
    for (const auto& r : rows) {
      CalibrationTarget t;
      t.name = r.name;
      t.code = r.code;
      t.papers = r.n;
      t.ack_text_share = static_cast<double>(r.n_ack) / static_cast<double>(r.n);
      t.acknowledgee_share = static_cast<double>(r.n_ackee) / static_cast<double>(r.n_ack);
      t.single_author_share = r.single;
      t.mean_authors = r.authors;
      t.mean_acknowledgees = r.acks;
      t.decay = r.decay;
      out.push_back(std::move(t));
    }
    return out;
  }();
  return targets;
}

std::vector<DisciplineProfile> default_profiles() {
  std::vector<DisciplineProfile> out;
  for (const auto& t : default_targets()) out.push_back(calibrate(t));
  return out;
}

GeneratorConfig GeneratorConfig::with_total(std::uint64_t total, std::uint64_t seed) {
  GeneratorConfig config;
  config.seed = seed;
  const auto& targets = default_targets();
  std::uint64_t population = 0;
  for (const auto& t : targets) population += t.papers;

  // Largest remainder apportionment, ties to the earlier discipline.
  std::vector<std::pair<std::uint64_t, std::size_t>> remainders;
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto share = static_cast<unsigned __int128>(total) * targets[i].papers;
    config.profiles[i].papers = static_cast<std::uint64_t>(share / population);
    remainders.emplace_back(static_cast<std::uint64_t>(share % population), i);
    assigned += config.profiles[i].papers;
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) ++config.profiles[remainders[i].second].papers;
  return config;
}

GeneratorConfig GeneratorConfig::with_papers_per_discipline(std::uint64_t papers, std::uint64_t seed) {
  GeneratorConfig config;
  config.seed = seed;
  for (auto& p : config.profiles) p.papers = papers;
  return config;
}

}  // namespace ackcensus::synth
