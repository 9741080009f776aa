#include "ackcensus/ner.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <optional>

namespace ackcensus::ner {

namespace {

bool is_joiner(UChar32 c) {
  return c == '-' || c == '\'' || c == 0x2010 || c == 0x2011 || c == 0x2019;
}

bool is_apostrophe(UChar32 c) { return c == '\'' || c == 0x2019; }

bool is_word_char(UChar32 c) {
  if (u_isalpha(c)) return true;
  const int8_t type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK;
}

struct Word {
  std::size_t begin = 0;
  std::size_t end = 0;          // excludes a trailing period
  std::size_t letters = 0;
  bool capitalized = false;
  bool has_period = false;      // immediately followed by '.'
};

// Either a word or a hard break (punctuation, digits, invalid bytes).
struct Item {
  std::optional<Word> word;
};

class Scanner {
 public:
  explicit Scanner(std::string_view text)
      : text_(text), bytes_(reinterpret_cast<const uint8_t*>(text.data())), length_(static_cast<int32_t>(text.size())) {}

  // Returns false at end of text.
  bool next(Item& item) {
    while (pos_ < length_) {
      int32_t i = pos_;
      UChar32 c;
      U8_NEXT(bytes_, i, length_, c);
      if (c >= 0 && u_isUWhiteSpace(c)) {
        pos_ = i;
        continue;
      }
      if (c >= 0 && u_isalpha(c)) {
        item.word = scan_word();
        return true;
      }
      pos_ = i;
      item.word.reset();
      return true;
    }
    return false;
  }

 private:
  UChar32 peek(int32_t at, int32_t* after = nullptr) const {
    if (at >= length_) return -1;
    UChar32 c;
    U8_NEXT(bytes_, at, length_, c);
    if (after) *after = at;
    return c;
  }

  Word scan_word() {
    Word w;
    w.begin = static_cast<std::size_t>(pos_);
    int32_t i = pos_;
    bool first = true;
    while (i < length_) {
      int32_t after = i;
      const UChar32 c = peek(i, &after);
      if (c >= 0 && is_word_char(c)) {
        if (first) w.capitalized = u_isupper(c) || u_istitle(c);
        if (u_isalpha(c)) ++w.letters;
        first = false;
        i = after;
        continue;
      }
      if (c >= 0 && is_joiner(c)) {
        int32_t after2 = after;
        const UChar32 next = peek(after, &after2);
        if (next < 0 || !u_isalpha(next)) break;
        // Possessive 's ends the word before the apostrophe.
        if (is_apostrophe(c) && (next == 's' || next == 'S')) {
          const UChar32 following = peek(after2);
          if (following < 0 || !is_word_char(following)) break;
        }
        i = after;
        continue;
      }
      break;
    }
    w.end = static_cast<std::size_t>(i);
    pos_ = i;
    if (pos_ < length_ && text_[static_cast<std::size_t>(pos_)] == '.') {
      w.has_period = true;
      ++pos_;
    }
    return w;
  }

  std::string_view text_;
  const uint8_t* bytes_;
  int32_t length_;
  int32_t pos_ = 0;
};

struct Token {
  std::size_t begin;
  std::size_t end;  // includes the period of an initial
  std::string_view text;
};

const std::vector<std::string> kHonorifics = {"Dr", "Drs", "Prof", "Profs", "Professor", "Mr",
                                              "Mrs", "Ms", "Miss", "Mx", "Sir", "Dame"};

const std::vector<std::string> kStopwords = {
    "A",          "Acknowledgement", "Acknowledgements", "Acknowledgment", "Acknowledgments", "Additionally",
    "After",      "All",             "Also",             "An",             "And",             "Any",
    "As",         "At",              "Author",           "Authors",        "Both",            "But",
    "By",         "During",          "Each",             "Finally",        "Financial",       "For",
    "From",       "Funding",         "Further",          "Furthermore",    "Grateful",        "Gratefully",
    "He",         "Her",             "Here",             "His",            "However",         "I",
    "If",         "In",              "It",               "Its",            "Many",            "Moreover",
    "My",         "No",              "Not",              "Of",             "On",              "Or",
    "Other",      "Others",          "Our",              "Part",           "Partial",         "She",
    "Sincere",    "Some",            "Special",          "Support",        "Thank",           "Thanks",
    "That",       "The",             "Their",            "There",          "These",           "They",
    "This",       "Those",           "Thus",             "To",             "Under",           "We",
    "When",       "Where",           "Which",            "While",          "Who",             "With",
    "Within",     "Without",         "You",              "Your"};

std::set<std::string, std::less<>> fold_all(const std::vector<std::string>& words) {
  std::set<std::string, std::less<>> out;
  for (const auto& w : words) {
    std::string folded = fold_text(w);
    if (!folded.empty()) out.insert(std::move(folded));
  }
  return out;
}

}  // namespace

Recognizer::Recognizer() : Recognizer(kHonorifics, kStopwords) {}

Recognizer::Recognizer(std::vector<std::string> honorifics, std::vector<std::string> stopwords, const NameRules& rules)
    : honorifics_(fold_all(honorifics)), stopwords_(fold_all(stopwords)), rules_(rules) {}

const std::vector<std::string>& Recognizer::default_honorifics() { return kHonorifics; }
const std::vector<std::string>& Recognizer::default_stopwords() { return kStopwords; }

std::vector<NameCandidate> Recognizer::extract(std::string_view text) const {
  std::vector<NameCandidate> out;
  std::vector<Token> run;
  std::vector<Token> pending_particles;

  auto close = [&] {
    pending_particles.clear();
    if (run.empty()) return;
    NameCandidate c;
    c.span = {run.front().begin, run.back().end};
    c.surface = std::string(text.substr(c.span.begin, c.span.end - c.span.begin));
    c.tokens.reserve(run.size());
    for (const auto& t : run) c.tokens.emplace_back(t.text);
    out.push_back(std::move(c));
    run.clear();
  };

  Scanner scanner(text);
  Item item;
  while (scanner.next(item)) {
    if (!item.word) {
      close();
      continue;
    }
    const Word& w = *item.word;
    const std::string_view word_text = text.substr(w.begin, w.end - w.begin);

    if (!w.capitalized) {
      if (!run.empty() && !w.has_period && rules_.is_particle(fold_text(word_text))) {
        pending_particles.push_back({w.begin, w.end, word_text});
      } else {
        close();
      }
      continue;
    }

    const std::string folded = fold_text(word_text);
    if (w.letters == 1 && w.has_period) {
      // Initial; the period belongs to the name.
    } else if (honorifics_.count(folded) || stopwords_.count(folded)) {
      close();
      continue;
    }

    run.insert(run.end(), pending_particles.begin(), pending_particles.end());
    pending_particles.clear();
    if (w.letters == 1) {
      run.push_back({w.begin, w.has_period ? w.end + 1 : w.end, word_text});
    } else {
      run.push_back({w.begin, w.end, word_text});
      if (w.has_period) close();
    }
  }
  close();
  return out;
}

std::vector<NameCandidate> extract_candidates(std::string_view text) {
  static const Recognizer recognizer;
  return recognizer.extract(text);
}

std::string_view recognizer_info() { return "rule-ner v1"; }

}  // namespace ackcensus::ner
