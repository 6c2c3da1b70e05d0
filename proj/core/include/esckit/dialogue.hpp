#ifndef ESCKIT_DIALOGUE_HPP
#define ESCKIT_DIALOGUE_HPP

#include <optional>
#include <string>
#include <vector>

namespace esckit {

enum class SpeakerRole { User, System };

enum class InitiativeType { Initiative, NonInitiative };

// The four utterance classes: which speaker holds the floor and whether
// that speaker is driving the conversation.
enum class EafrLabel { Expression, Action, Feedback, Reflection };

// Negative emotion intensity on a 1..5 scale; lower is calmer.
struct EmotionIntensity {
    int level;
};

struct Utterance {
    int index = 0;  // 0-based, contiguous within a dialogue
    std::string text;
    SpeakerRole role = SpeakerRole::User;
    std::optional<InitiativeType> initiative;
    std::optional<EmotionIntensity> intensity;
    std::optional<std::string> strategy;
};

struct Dialogue {
    std::string id;
    std::string situation;
    std::vector<Utterance> utterances;
};

struct Corpus {
    std::string name;
    std::vector<Dialogue> dialogues;
};

// Pure mapping from (role, initiative) to the utterance class; absent when
// the initiative is unannotated.
inline std::optional<EafrLabel> eafr_label(const Utterance& u) {
    if (!u.initiative) return std::nullopt;
    if (u.role == SpeakerRole::User)
        return *u.initiative == InitiativeType::Initiative ? EafrLabel::Expression
                                                          : EafrLabel::Feedback;
    return *u.initiative == InitiativeType::Initiative ? EafrLabel::Action
                                                       : EafrLabel::Reflection;
}

const char* to_string(SpeakerRole r);
const char* to_string(InitiativeType t);
const char* to_string(EafrLabel l);

}  // namespace esckit

#endif
