#include "uitext/nlp.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "uitext/text_util.hpp"

namespace uitext::nlp {

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::Noun: return "noun";
    case PartOfSpeech::Verb: return "verb";
    case PartOfSpeech::Preposition: return "preposition";
    case PartOfSpeech::Number: return "number";
    case PartOfSpeech::Other: return "other";
  }
  return "other";
}

// --- tokenizer -------------------------------------------------------------

namespace {

enum class CharClass { Upper, Lower, Digit, Separator };

CharClass classify_byte(unsigned char c) {
  if (c >= 'A' && c <= 'Z') return CharClass::Upper;
  if (c >= 'a' && c <= 'z') return CharClass::Lower;
  if (c >= '0' && c <= '9') return CharClass::Digit;
  // Multi-byte UTF-8 sequences are treated as caseless letters.
  if (c >= 0x80) return CharClass::Lower;
  return CharClass::Separator;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(text::to_lower(current));
    current.clear();
  };

  std::size_t i = 0;
  while (i < raw.size()) {
    if (const std::size_t ws = text::whitespace_len(raw, i)) {
      flush();
      i += ws;
      continue;
    }
    const auto c = static_cast<unsigned char>(raw[i]);
    const CharClass cls = classify_byte(c);
    if (cls == CharClass::Separator) {
      flush();
      ++i;
      continue;
    }
    if (!current.empty()) {
      const CharClass prev = classify_byte(static_cast<unsigned char>(current.back()));
      const bool next_lower =
          i + 1 < raw.size() && classify_byte(static_cast<unsigned char>(raw[i + 1])) == CharClass::Lower;
      const bool boundary =
          (prev == CharClass::Lower && cls == CharClass::Upper) ||
          (prev == CharClass::Upper && cls == CharClass::Upper && next_lower) ||  // "NBATeam"
          ((prev == CharClass::Digit) != (cls == CharClass::Digit));
      if (boundary) flush();
    }
    current.push_back(static_cast<char>(c));
    ++i;
  }
  flush();
  return tokens;
}

// --- stopwords -------------------------------------------------------------

namespace {

std::unordered_set<std::string> parse_word_list(std::string_view text_data) {
  std::unordered_set<std::string> out;
  std::istringstream in{std::string(text_data)};
  std::string line;
  while (std::getline(in, line)) {
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.insert(text::to_lower(line));
  }
  return out;
}

}  // namespace

const std::unordered_set<std::string>& default_stopwords() {
  static const auto kStopwords = parse_word_list(text::embedded_resource("stopwords.txt"));
  return kStopwords;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::unordered_set<std::string>& stopwords) {
  std::vector<std::string> out;
  std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(out),
               [&](const std::string& t) { return !stopwords.contains(t); });
  return out;
}

// --- tagger ----------------------------------------------------------------

LexiconTagger::LexiconTagger(std::string_view lexicon_text) {
  std::istringstream in{std::string(lexicon_text)};
  std::string line;
  while (std::getline(in, line)) {
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string word, tag;
    fields >> word >> tag;
    if (word.empty()) continue;
    Entry entry = Entry::Noun;
    if (tag == "V") entry = Entry::Verb;
    else if (tag == "P") entry = Entry::Preposition;
    else if (tag == "O") entry = Entry::Other;
    entries_[text::to_lower(word)] = entry;
  }
}

const LexiconTagger& LexiconTagger::bundled() {
  static const LexiconTagger kTagger(text::embedded_resource("lexicon.txt"));
  return kTagger;
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::vector<Token> LexiconTagger::tag(const std::vector<std::string>& tokens) const {
  std::vector<Token> out;
  out.reserve(tokens.size());
  bool at_head = true;  // only Other tokens seen so far
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    PartOfSpeech pos = PartOfSpeech::Noun;
    if (all_digits(t)) {
      pos = PartOfSpeech::Number;
    } else if (auto it = entries_.find(t); it != entries_.end()) {
      switch (it->second) {
        case Entry::Noun: pos = PartOfSpeech::Noun; break;
        case Entry::Preposition: pos = PartOfSpeech::Preposition; break;
        case Entry::Other: pos = PartOfSpeech::Other; break;
        case Entry::Verb:
          // Imperative reading only at the head of a phrase: "search movie".
          pos = (at_head && i + 1 < tokens.size()) ? PartOfSpeech::Verb : PartOfSpeech::Noun;
          break;
      }
    } else if (t.size() > 4 && (ends_with(t, "ing") || ends_with(t, "ed"))) {
      pos = PartOfSpeech::Verb;
    }
    if (pos != PartOfSpeech::Other) at_head = false;
    out.push_back(Token{t, pos});
  }
  return out;
}

std::vector<Token> pos_tag(const std::vector<std::string>& tokens, const Tagger& tagger) {
  return tagger.tag(tokens);
}

// --- slot selection --------------------------------------------------------

const std::unordered_set<std::string>& unit_tokens() {
  static const std::unordered_set<std::string> kUnits = {"kg", "cm", "lb", "km", "mi",
                                                         "dollar", "usd", "eur", "year", "kcal"};
  return kUnits;
}

SlotPhrases select_slots(const std::vector<Token>& tagged) {
  SlotPhrases slots;
  const auto& units = unit_tokens();
  auto is_noun = [&](const Token& t) {
    return t.pos == PartOfSpeech::Noun && !units.contains(t.surface);
  };

  std::size_t best_start = 0, best_len = 0;
  for (std::size_t i = 0; i < tagged.size();) {
    if (!is_noun(tagged[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < tagged.size() && is_noun(tagged[j])) ++j;
    if (j - i > best_len) {
      best_start = i;
      best_len = j - i;
    }
    i = j;
  }

  if (best_len > 0) {
    // Keep the head of long compounds.
    if (best_len > 3) {
      best_start += best_len - 3;
      best_len = 3;
    }
    std::vector<std::string> words;
    for (std::size_t k = best_start; k < best_start + best_len; ++k) words.push_back(tagged[k].surface);
    slots.noun_phrase = text::join(words, " ");
    for (std::size_t k = 0; k < best_start; ++k) {
      if (tagged[k].pos == PartOfSpeech::Verb) {
        slots.verb_noun_phrase = tagged[k].surface + " the " + *slots.noun_phrase;
        break;
      }
    }
  }
  for (const Token& t : tagged) {
    if (!slots.preposition && t.pos == PartOfSpeech::Preposition) slots.preposition = t.surface;
    if (!slots.unit_suffix && units.contains(t.surface)) slots.unit_suffix = t.surface;
  }
  return slots;
}

SlotPhrases analyze(std::string_view raw, const Tagger& tagger) {
  // "com.app:id/departure_city" -> "departure_city"
  if (const auto marker = raw.find(":id/"); marker != std::string_view::npos) {
    raw.remove_prefix(marker + 4);
  }
  return select_slots(pos_tag(remove_stopwords(tokenize(raw)), tagger));
}

}  // namespace uitext::nlp
