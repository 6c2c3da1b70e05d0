#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esckit/corpus_io.hpp"
#include "esckit/errors.hpp"

using namespace esckit;

static Utterance utt(SpeakerRole r, std::optional<InitiativeType> init) {
    Utterance u;
    u.role = r;
    u.initiative = init;
    return u;
}

TEST_CASE("utterance class mapping") {
    CHECK(eafr_label(utt(SpeakerRole::User, InitiativeType::Initiative)) ==
          EafrLabel::Expression);
    CHECK(eafr_label(utt(SpeakerRole::System, InitiativeType::Initiative)) ==
          EafrLabel::Action);
    CHECK(eafr_label(utt(SpeakerRole::User, InitiativeType::NonInitiative)) ==
          EafrLabel::Feedback);
    CHECK(eafr_label(utt(SpeakerRole::System, InitiativeType::NonInitiative)) ==
          EafrLabel::Reflection);
    CHECK_FALSE(eafr_label(utt(SpeakerRole::User, std::nullopt)).has_value());
}

TEST_CASE("native corpus parsing") {
    Corpus c = load_corpus(ESCKIT_TEST_DATA_DIR "/corpus_small.json",
                           CorpusFormat::Native);
    CHECK(c.name == "corpus_small");
    REQUIRE(c.dialogues.size() == 3);
    const Dialogue& d1 = c.dialogues[0];
    CHECK(d1.id == "d1");
    REQUIRE(d1.utterances.size() == 5);
    CHECK(d1.utterances[0].role == SpeakerRole::User);
    CHECK(d1.utterances[0].intensity->level == 4);
    CHECK(d1.utterances[3].strategy == "Question");
    CHECK(d1.utterances[1].initiative == InitiativeType::NonInitiative);
    CHECK_FALSE(c.dialogues[2].utterances[2].initiative.has_value());
}

TEST_CASE("errors cite dialogue and utterance") {
    std::string bad = R"([{"id":"x","utterances":[
        {"text":"hi","role":"user"},
        {"text":"yo","role":"martian"}]}])";
    CHECK_THROWS_WITH_AS(parse_corpus(bad, CorpusFormat::Native, "t"),
                         doctest::Contains("dialogue 'x', utterance 1"), Error);

    std::string bad_intensity = R"([{"id":"y","utterances":[
        {"text":"hi","role":"user","intensity":9}]}])";
    CHECK_THROWS_WITH_AS(parse_corpus(bad_intensity, CorpusFormat::Native, "t"),
                         doctest::Contains("outside [1,5]"), Error);
}

TEST_CASE("duplicate dialogue ids rejected") {
    std::string dup = R"([{"id":"a","utterances":[{"text":"x","role":"user"}]},
                          {"id":"a","utterances":[{"text":"y","role":"user"}]}])";
    CHECK_THROWS_WITH_AS(parse_corpus(dup, CorpusFormat::Native, "t"),
                         doctest::Contains("duplicate dialogue id 'a'"), Error);
}

TEST_CASE("esconv adapter") {
    std::string text = R"([{
        "situation": "s",
        "dialog": [
            {"speaker": "seeker", "content": "help me",
             "annotation": {"initiative": "I", "intensity": 4}},
            {"speaker": "supporter", "content": "tell me more",
             "annotation": {"strategy": "Question", "initiative": "N"}}
        ]}])";
    Corpus c = parse_corpus(text, CorpusFormat::Esconv, "esc");
    REQUIRE(c.dialogues.size() == 1);
    const Dialogue& d = c.dialogues[0];
    REQUIRE(d.utterances.size() == 2);
    CHECK(d.utterances[0].role == SpeakerRole::User);
    CHECK(d.utterances[0].initiative == InitiativeType::Initiative);
    CHECK(d.utterances[0].intensity->level == 4);
    CHECK(d.utterances[1].role == SpeakerRole::System);
    CHECK(d.utterances[1].strategy == "Question");
    CHECK(d.utterances[1].initiative == InitiativeType::NonInitiative);
}

TEST_CASE("serialization round-trip") {
    Corpus c = load_corpus(ESCKIT_TEST_DATA_DIR "/corpus_small.json",
                           CorpusFormat::Native);
    Corpus back = parse_corpus(serialize_corpus(c), CorpusFormat::Native, c.name);
    REQUIRE(back.dialogues.size() == c.dialogues.size());
    for (size_t i = 0; i < c.dialogues.size(); ++i) {
        const Dialogue &a = c.dialogues[i], &b = back.dialogues[i];
        CHECK(a.id == b.id);
        CHECK(a.situation == b.situation);
        REQUIRE(a.utterances.size() == b.utterances.size());
        for (size_t j = 0; j < a.utterances.size(); ++j) {
            CHECK(a.utterances[j].text == b.utterances[j].text);
            CHECK(a.utterances[j].role == b.utterances[j].role);
            CHECK(a.utterances[j].initiative == b.utterances[j].initiative);
            CHECK(a.utterances[j].strategy == b.utterances[j].strategy);
        }
    }
}
