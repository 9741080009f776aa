#include "ackcensus/ingest.hpp"

#include <json.hpp>

namespace ackcensus::ingest {

using nlohmann::json;

MalformedLine::MalformedLine(std::size_t line, const std::string& cause)
    : std::runtime_error("line " + std::to_string(line) + ": " + cause), line_(line), cause_(cause) {}

std::string_view trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

namespace {

const json* find_field(const json& object, const char* name) {
  auto it = object.find(name);
  return it == object.end() ? nullptr : &*it;
}

std::string require_string(const json& object, const char* name, std::size_t line) {
  const json* field = find_field(object, name);
  if (!field) throw MalformedLine(line, std::string("missing \"") + name + "\"");
  if (!field->is_string()) throw MalformedLine(line, std::string("\"") + name + "\" is not a string");
  return field->get<std::string>();
}

AuthorName parse_author(const json& entry, std::size_t line) {
  if (!entry.is_object()) throw MalformedLine(line, "author entry is not an object");
  AuthorName author;
  if (const json* given = find_field(entry, "given"); given && !given->is_null()) {
    if (!given->is_string()) throw MalformedLine(line, "author \"given\" is not a string");
    author.given = std::string(trim(given->get_ref<const std::string&>()));
  }
  author.surname = std::string(trim(require_string(entry, "surname", line)));
  if (author.surname.empty()) throw MalformedLine(line, "author with empty surname");
  return author;
}

}  // namespace

Record parse_record(std::string_view line, std::size_t line_number, const DisciplineMap* map) {
  json doc = json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded()) throw MalformedLine(line_number, "not valid JSON");
  if (!doc.is_object()) throw MalformedLine(line_number, "record is not a JSON object");

  Record record;
  record.id = require_string(doc, "id", line_number);
  if (record.id.empty()) throw MalformedLine(line_number, "empty \"id\"");

  const json* year = find_field(doc, "year");
  if (!year || !year->is_number_integer()) throw MalformedLine(line_number, "missing or non-integer \"year\"");
  record.year = year->get<int>();

  const auto doc_type = parse_doc_type(require_string(doc, "doc_type", line_number));
  if (!doc_type) throw MalformedLine(line_number, "\"doc_type\" must be \"article\" or \"review\"");
  record.doc_type = *doc_type;

  if (map) {
    const json* journal = find_field(doc, "journal");
    if (!journal || !journal->is_string()) throw MalformedLine(line_number, "missing \"journal\" for discipline lookup");
    auto discipline = map->lookup(journal->get_ref<const std::string&>());
    if (!discipline) throw MalformedLine(line_number, "journal not in discipline map: " + journal->get<std::string>());
    record.discipline = std::move(*discipline);
  } else {
    record.discipline = require_string(doc, "discipline", line_number);
    if (trim(record.discipline).empty()) throw MalformedLine(line_number, "empty \"discipline\"");
  }

  const json* authors = find_field(doc, "authors");
  if (!authors) throw MalformedLine(line_number, "missing \"authors\"");
  if (!authors->is_array() || authors->empty()) throw MalformedLine(line_number, "\"authors\" must be a non-empty array");
  record.authors.reserve(authors->size());
  for (const auto& entry : *authors) record.authors.push_back(parse_author(entry, line_number));

  if (const json* ack = find_field(doc, "ack_text"); ack && !ack->is_null()) {
    if (!ack->is_string()) throw MalformedLine(line_number, "\"ack_text\" is neither a string nor null");
    const auto& text = ack->get_ref<const std::string&>();
    if (!trim(text).empty()) record.ack_text = text;
  }
  return record;
}

std::string to_corpus_line(const Record& record, std::string_view journal) {
  json authors = json::array();
  for (const auto& a : record.authors) authors.push_back({{"given", a.given}, {"surname", a.surname}});
  json doc = {
      {"id", record.id},
      {"year", record.year},
      {"discipline", record.discipline},
      {"doc_type", std::string(to_string(record.doc_type))},
      {"authors", std::move(authors)},
      {"ack_text", record.ack_text ? json(*record.ack_text) : json(nullptr)},
  };
  if (!journal.empty()) doc["journal"] = std::string(journal);
  return doc.dump();
}

CorpusReader::CorpusReader(std::istream& in, Mode mode, const DisciplineMap* map) : in_(in), mode_(mode), map_(map) {}

std::optional<Record> CorpusReader::next() {
  while (std::getline(in_, line_)) {
    ++line_number_;
    if (trim(line_).empty()) continue;
    try {
      return parse_record(line_, line_number_, map_);
    } catch (const MalformedLine& e) {
      if (mode_ == Mode::Strict) throw;
      errors_.push_back(e);
    }
  }
  return std::nullopt;
}

std::vector<Record> parse_corpus(std::istream& in, CorpusReader::Mode mode, const DisciplineMap* map) {
  CorpusReader reader(in, mode, map);
  std::vector<Record> records;
  while (auto record = reader.next()) records.push_back(std::move(*record));
  return records;
}

}  // namespace ackcensus::ingest
