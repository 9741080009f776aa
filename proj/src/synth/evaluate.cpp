#include "ackcensus/ingest.hpp"
#include "ackcensus/synth.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace ackcensus::synth {

std::string_view to_string(MentionKind kind) {
  switch (kind) {
    case MentionKind::Acknowledgee:
      return "acknowledgee";
    case MentionKind::SelfAuthor:
      return "self_author";
    case MentionKind::Blacklisted:
      return "blacklisted";
    case MentionKind::NonPerson:
      return "non_person";
    case MentionKind::Repeat:
      return "repeat";
  }
  return "";
}

MentionKind parse_mention_kind(std::string_view text) {
  for (auto kind : {MentionKind::Acknowledgee, MentionKind::SelfAuthor, MentionKind::Blacklisted,
                    MentionKind::NonPerson, MentionKind::Repeat})
    if (to_string(kind) == text) return kind;
  throw std::invalid_argument("unknown mention kind: " + std::string(text));
}

std::string to_json_line(const TruthRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["acknowledgees"] = record.acknowledgees;
  j["mentions"] = nlohmann::ordered_json::array();
  for (const auto& m : record.mentions) j["mentions"].push_back({{"surface", m.surface}, {"kind", to_string(m.kind)}});
  return j.dump();
}

std::vector<TruthRecord> read_truth(std::istream& in) {
  std::vector<TruthRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (ingest::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TruthRecord r;
      r.id = j.at("id").get<std::string>();
      r.acknowledgees = j.at("acknowledgees").get<std::vector<std::string>>();
      for (const auto& m : j.at("mentions"))
        r.mentions.push_back({m.at("surface").get<std::string>(), parse_mention_kind(m.at("kind").get<std::string>())});
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error(fmt::format("truth line {}: {}", number, e.what()));
    }
  }
  return out;
}

std::optional<double> Score::precision() const {
  if (extracted == 0) return std::nullopt;
  return static_cast<double>(matched) / static_cast<double>(extracted);
}

std::optional<double> Score::recall() const {
  if (planted == 0) return std::nullopt;
  return static_cast<double>(matched) / static_cast<double>(planted);
}

Score& Score::operator+=(const Score& other) {
  matched += other.matched;
  extracted += other.extracted;
  planted += other.planted;
  return *this;
}

namespace {

Score score_names(const std::vector<std::string>& extracted, const std::vector<std::string>& planted) {
  std::vector<std::optional<LinkageKey>> remaining;
  for (const auto& name : planted) {
    const auto n = normalize_name(name);
    remaining.push_back(n ? std::optional(linkage_key(*n)) : std::nullopt);
  }
  Score s{0, extracted.size(), planted.size()};
  for (const auto& name : extracted) {
    const auto n = normalize_name(name);
    if (!n) continue;
    const LinkageKey key = linkage_key(*n);
    for (auto& slot : remaining) {
      if (slot && *slot == key) {
        slot.reset();
        ++s.matched;
        break;
      }
    }
  }
  return s;
}

}  // namespace

Evaluation evaluate(std::span<const ExtractedRecord> output, std::span<const TruthRecord> truth) {
  std::unordered_map<std::string, const ExtractedRecord*> by_id;
  for (const auto& r : output)
    if (!by_id.emplace(r.id, &r).second) throw std::invalid_argument("duplicate record id in output: " + r.id);
  if (by_id.size() != truth.size())
    throw std::invalid_argument(
        fmt::format("record ids differ: {} in output, {} in ground truth", by_id.size(), truth.size()));

  Evaluation e;
  for (const auto& t : truth) {
    const auto it = by_id.find(t.id);
    if (it == by_id.end()) throw std::invalid_argument("record missing from output: " + t.id);
    const Score s = score_names(it->second->names, t.acknowledgees);
    e.overall += s;
    e.per_record.emplace_back(t.id, s);
  }
  return e;
}

Score score_mentions(std::span<const std::string> extracted, std::span<const PlantedMention> planted) {
  std::unordered_map<std::string, std::uint64_t> pending;
  for (const auto& m : planted) ++pending[m.surface];
  Score s{0, extracted.size(), planted.size()};
  for (const auto& surface : extracted) {
    auto it = pending.find(surface);
    if (it != pending.end() && it->second > 0) {
      --it->second;
      ++s.matched;
    }
  }
  return s;
}

std::vector<ExtractedRecord> load_run_output(const fs::path& out_dir) {
  auto open = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    return in;
  };
  std::vector<ExtractedRecord> out;
  std::unordered_map<std::string, std::size_t> index;
  {
    auto in = open(out_dir / "summaries.csv");
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto fields = ingest::parse_csv_line(line);
      if (fields.empty()) continue;
      index.emplace(fields[0], out.size());
      out.push_back({fields[0], {}});
    }
  }
  auto in = open(out_dir / "acknowledgees.csv");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = ingest::parse_csv_line(line);
    if (fields.size() != 2) throw std::runtime_error("acknowledgees.csv: expected 2 fields");
    const auto it = index.find(fields[0]);
    if (it == index.end()) throw std::runtime_error("acknowledgees.csv: unknown record " + fields[0]);
    out[it->second].names.push_back(fields[1]);
  }
  return out;
}

}  // namespace ackcensus::synth
