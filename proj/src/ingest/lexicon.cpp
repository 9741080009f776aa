#include "ackcensus/ingest.hpp"

#include <stdexcept>

namespace ackcensus::ingest {

namespace {

// Calls `fn(line_number, trimmed)` for every non-blank, non-comment line.
template <typename Fn>
void for_each_entry(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    fn(number, entry);
  }
}

}  // namespace

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> parse_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c != '"') {
        fields.back() += c;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  return fields;
}

std::optional<std::string> DisciplineMap::lookup(std::string_view journal) const {
  auto it = entries_.find(journal);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

DisciplineMap load_discipline_map(std::istream& in) {
  std::map<std::string, std::string, std::less<>> entries;
  for_each_entry(in, [&](std::size_t number, std::string_view entry) {
    std::vector<std::string> fields;
    try {
      fields = parse_csv_line(entry);
    } catch (const std::invalid_argument& e) {
      throw MalformedLine(number, e.what());
    }
    for (auto& f : fields) f = std::string(trim(f));
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw MalformedLine(number, "expected two non-empty columns journal,discipline");
    if (number == 1 && fields[0] == "journal" && fields[1] == "discipline") return;
    auto [it, inserted] = entries.emplace(fields[0], fields[1]);
    if (!inserted && it->second != fields[1])
      throw MalformedLine(number, "journal mapped to two disciplines: " + fields[0]);
  });
  return DisciplineMap(std::move(entries));
}

bool SurnameSet::insert(std::string_view surname) {
  std::string folded = fold_surname(surname);
  if (folded.empty()) return false;
  return members_.insert(std::move(folded)).second;
}

bool SurnameSet::contains(std::string_view surname) const {
  return members_.count(fold_surname(surname)) != 0;
}

SurnameSet load_surname_set(std::istream& in) {
  SurnameSet set;
  for_each_entry(in, [&](std::size_t, std::string_view entry) { set.insert(entry); });
  return set;
}

bool Blacklist::insert(std::string_view full_name, const NameRules& rules) {
  auto name = normalize_name(full_name, rules);
  if (!name) return false;
  members_.insert(name->canonical());
  return true;
}

Blacklist load_blacklist(std::istream& in, const NameRules& rules) {
  Blacklist list;
  for_each_entry(in, [&](std::size_t number, std::string_view entry) {
    if (!list.insert(entry, rules)) list.rejected_.push_back({number, std::string(entry)});
  });
  return list;
}

std::vector<std::string> load_token_list(std::istream& in) {
  std::vector<std::string> tokens;
  for_each_entry(in, [&](std::size_t, std::string_view entry) { tokens.emplace_back(entry); });
  return tokens;
}

}  // namespace ackcensus::ingest
