#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace uitext::nlp {

enum class PartOfSpeech { Noun, Verb, Preposition, Number, Other };

std::string_view to_string(PartOfSpeech pos);

struct Token {
  std::string surface;  // lowercase, no whitespace or underscores
  PartOfSpeech pos = PartOfSpeech::Other;

  bool operator==(const Token&) const = default;
};

struct SlotPhrases {
  std::optional<std::string> noun_phrase;
  std::optional<std::string> verb_noun_phrase;
  std::optional<std::string> preposition;
  std::optional<std::string> unit_suffix;

  bool empty() const { return !noun_phrase && !verb_noun_phrase && !preposition && !unit_suffix; }
  bool operator==(const SlotPhrases&) const = default;
};

// Splits on underscores, punctuation, whitespace, letter/digit changes and
// camel-case boundaries. "NBATeam" -> {"nba", "team"}. Output is lowercase.
std::vector<std::string> tokenize(std::string_view raw);

// Bundled stopword list: English function words plus UI noise terms.
// Prepositions are kept because they feed the "[prep] [MASK]" pattern.
const std::unordered_set<std::string>& default_stopwords();

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::unordered_set<std::string>& stopwords = default_stopwords());

class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<Token> tag(const std::vector<std::string>& tokens) const = 0;
};

// Lexicon lookup with suffix and digit fallbacks. Lexicon lines are
// "word TAG" where TAG is N, V, P or O. V words read as verbs only at the
// head of a multi-token phrase.
class LexiconTagger final : public Tagger {
 public:
  enum class Entry { Noun, Verb, Preposition, Other };

  explicit LexiconTagger(std::string_view lexicon_text);

  // Tagger over the bundled lexicon.
  static const LexiconTagger& bundled();

  std::vector<Token> tag(const std::vector<std::string>& tokens) const override;
  std::size_t lexicon_size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Entry> entries_;
};

std::vector<Token> pos_tag(const std::vector<std::string>& tokens,
                           const Tagger& tagger = LexiconTagger::bundled());

const std::unordered_set<std::string>& unit_tokens();

// noun_phrase: longest run of nouns (first on ties, at most 3 tokens, unit
// tokens excluded); verb_noun_phrase: "<verb> the <noun_phrase>" for the first
// verb preceding it; preposition: first preposition; unit_suffix: first unit.
SlotPhrases select_slots(const std::vector<Token>& tagged);

// tokenize -> remove_stopwords -> pos_tag -> select_slots. A leading
// "<package>:id/" resource prefix is dropped first.
SlotPhrases analyze(std::string_view raw, const Tagger& tagger = LexiconTagger::bundled());

}  // namespace uitext::nlp
