#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "uitext/nlp.hpp"

namespace uitext::nlp {
namespace {

using Strings = std::vector<std::string>;

TEST(Tokenize, Underscore) { EXPECT_EQ(tokenize("departure_city"), (Strings{"departure", "city"})); }

TEST(Tokenize, CamelCase) { EXPECT_EQ(tokenize("FlightDepartureCity"), (Strings{"flight", "departure", "city"})); }

TEST(Tokenize, ResourceIdPunctuation) {
  EXPECT_EQ(tokenize("com.app:id/searchBar"), (Strings{"com", "app", "id", "search", "bar"}));
}

TEST(Tokenize, Acronyms) {
  EXPECT_EQ(tokenize("NBATeam"), (Strings{"nba", "team"}));
  EXPECT_EQ(tokenize("parseURL"), (Strings{"parse", "url"}));
  EXPECT_EQ(tokenize("NBA"), (Strings{"nba"}));
}

TEST(Tokenize, DigitsAndSeparators) {
  EXPECT_EQ(tokenize("weight_kg"), (Strings{"weight", "kg"}));
  EXPECT_EQ(tokenize("step2Height"), (Strings{"step", "2", "height"}));
  EXPECT_EQ(tokenize("  One-way   flight! "), (Strings{"one", "way", "flight"}));
}

TEST(Tokenize, Empty) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("__..--  ").empty());
}

TEST(Tokenize, NonAsciiKeptAsLetters) {
  // "café" keeps its accented byte sequence inside the token.
  EXPECT_EQ(tokenize("caf\xC3\xA9_menu"), (Strings{"caf\xC3\xA9", "menu"}));
}

TEST(Stopwords, RemovesFunctionWords) { EXPECT_EQ(remove_stopwords({"the", "game", "name"}), (Strings{"game", "name"})); }

TEST(Stopwords, RemovesUiNoise) {
  EXPECT_EQ(remove_stopwords({"com", "app", "id", "search", "bar"}), (Strings{"search", "bar"}));
  for (const char* noise : {"id", "txt", "edt", "btn", "view", "widget", "com", "android"}) {
    EXPECT_TRUE(default_stopwords().contains(noise)) << noise;
  }
}

TEST(Stopwords, KeepsPrepositions) { EXPECT_EQ(remove_stopwords({"from"}), (Strings{"from"})); }

TEST(Stopwords, Empty) { EXPECT_TRUE(remove_stopwords({}).empty()); }

TEST(PosTag, Preposition) {
  EXPECT_EQ(pos_tag({"from"}), (std::vector<Token>{{"from", PartOfSpeech::Preposition}}));
}

TEST(PosTag, VerbNoun) {
  EXPECT_EQ(pos_tag({"search", "movie"}),
            (std::vector<Token>{{"search", PartOfSpeech::Verb}, {"movie", PartOfSpeech::Noun}}));
}

TEST(PosTag, Number) { EXPECT_EQ(pos_tag({"70"}), (std::vector<Token>{{"70", PartOfSpeech::Number}})); }

TEST(PosTag, VerbOnlyAtPhraseHead) {
  // Alone or after a noun, an action word reads as a noun.
  EXPECT_EQ(pos_tag({"search"})[0].pos, PartOfSpeech::Noun);
  EXPECT_EQ(pos_tag({"movie", "search"})[1].pos, PartOfSpeech::Noun);
  // Leading function words do not stop the imperative reading.
  EXPECT_EQ(pos_tag({"please", "search", "movie"})[1].pos, PartOfSpeech::Verb);
}

TEST(PosTag, UnknownWordFallbacks) {
  const auto tags = pos_tag({"zorbing", "flumped", "qwzx", "ring"});
  EXPECT_EQ(tags[0].pos, PartOfSpeech::Verb);
  EXPECT_EQ(tags[1].pos, PartOfSpeech::Verb);
  EXPECT_EQ(tags[2].pos, PartOfSpeech::Noun);
  EXPECT_EQ(tags[3].pos, PartOfSpeech::Noun);  // too short for the suffix rule
}

TEST(PosTag, OneTokenPerInput) {
  const Strings in = {"enter", "your", "zip", "code", "in", "2", "boxes"};
  EXPECT_EQ(pos_tag(in).size(), in.size());
}

TEST(PosTag, CustomLexicon) {
  const LexiconTagger tagger("# comment\nfoo V\nbar P\n");
  EXPECT_EQ(tagger.lexicon_size(), 2u);
  const auto tags = pos_tag({"foo", "bar", "baz"}, tagger);
  EXPECT_EQ(tags[0].pos, PartOfSpeech::Verb);
  EXPECT_EQ(tags[1].pos, PartOfSpeech::Preposition);
  EXPECT_EQ(tags[2].pos, PartOfSpeech::Noun);
}

TEST(PosTag, BundledLexiconLoaded) { EXPECT_GT(LexiconTagger::bundled().lexicon_size(), 1000u); }

TEST(SelectSlots, SearchMovie) {
  const SlotPhrases s = select_slots(pos_tag({"search", "movie"}));
  EXPECT_EQ(s.noun_phrase, "movie");
  EXPECT_EQ(s.verb_noun_phrase, "search the movie");
  EXPECT_FALSE(s.preposition.has_value());
  EXPECT_FALSE(s.unit_suffix.has_value());
}

TEST(SelectSlots, WeightKg) {
  const SlotPhrases s = select_slots(pos_tag({"weight", "kg"}));
  EXPECT_EQ(s.noun_phrase, "weight");
  EXPECT_EQ(s.unit_suffix, "kg");
  EXPECT_FALSE(s.verb_noun_phrase.has_value());
}

TEST(SelectSlots, Empty) { EXPECT_TRUE(select_slots({}).empty()); }

TEST(SelectSlots, LongestNounRunFirstOnTies) {
  // runs: [game name] and [team]; the longer one wins
  EXPECT_EQ(select_slots(pos_tag({"game", "name", "from", "team"})).noun_phrase, "game name");
  // equal runs: the first wins
  EXPECT_EQ(select_slots(pos_tag({"city", "from", "team"})).noun_phrase, "city");
  EXPECT_EQ(select_slots(pos_tag({"city", "from", "team"})).preposition, "from");
}

TEST(SelectSlots, LongCompoundKeepsHead) {
  EXPECT_EQ(select_slots(pos_tag({"user", "home", "street", "address"})).noun_phrase, "home street address");
}

TEST(SelectSlots, VerbMustPrecedeNoun) {
  const SlotPhrases s = select_slots({{"movie", PartOfSpeech::Noun}, {"search", PartOfSpeech::Verb}});
  EXPECT_EQ(s.noun_phrase, "movie");
  EXPECT_FALSE(s.verb_noun_phrase.has_value());
}

TEST(Analyze, FullPipeline) {
  EXPECT_EQ(analyze("Search movie").verb_noun_phrase, "search the movie");
  EXPECT_EQ(analyze("com.fittrack:id/weight_kg").noun_phrase, "weight");
  EXPECT_EQ(analyze("com.fittrack:id/weight_kg").unit_suffix, "kg");
  EXPECT_EQ(analyze("From").preposition, "from");
  EXPECT_FALSE(analyze("From").noun_phrase.has_value());
  EXPECT_EQ(analyze("income_dollar").noun_phrase, "income");
  EXPECT_EQ(analyze("Last name").noun_phrase, "last name");
  EXPECT_FALSE(analyze("Last name").verb_noun_phrase.has_value());
  EXPECT_EQ(analyze("the").noun_phrase, std::nullopt);
}

}  // namespace
}  // namespace uitext::nlp
