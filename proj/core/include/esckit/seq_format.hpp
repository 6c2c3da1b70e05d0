#ifndef ESCKIT_SEQ_FORMAT_HPP
#define ESCKIT_SEQ_FORMAT_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "esckit/dialogue.hpp"
#include "esckit/retrieval.hpp"

namespace esckit {

// Knowledge payload serialized after the [know.] marker: the five
// commonsense expansions followed by the four retrieved node texts, always
// in this order. Absent fields are omitted together with their markers.
struct KnowledgePayload {
    std::array<std::optional<std::string>, kRelationCount> expansions;
    std::optional<std::string> expectation;
    std::optional<std::string> affective_state;
    std::optional<std::string> stressor;
    std::optional<std::string> response;

    static KnowledgePayload from_result(const QueryGraph& q,
                                        const ScoredSubgraph& s,
                                        const KnowledgeGraph& g);
};

struct EncodeOptions {
    // Whitespace-delimited unit budget for the X sequence; oldest context
    // utterances are dropped first. Situation, knowledge and the newest
    // utterance are never truncated.
    int token_budget = 160;
};

struct EncodedInput {
    std::string text;
    int dropped_utterances = 0;  // context lost to the budget
};

struct DecodedInput {
    std::string situation;
    std::vector<std::pair<SpeakerRole, std::string>> context;
    std::vector<KnowledgePayload> knowledge;
};

// X sequence: [CLS] [situ.] s [usr] u1 [sys] u2 ... [know.] <fields> ...
// Multiple knowledge payloads repeat the [know.] section in rank order.
EncodedInput encode_input(const std::string& situation,
                          const std::vector<const Utterance*>& context,
                          const std::vector<KnowledgePayload>& knowledge,
                          const EncodeOptions& opts = {});
EncodedInput encode_input(const Dialogue& d, int turn_end,
                          const std::vector<KnowledgePayload>& knowledge,
                          const EncodeOptions& opts = {});

DecodedInput parse_input(const std::string& text);

// Y sequence: [strategy] y [response] r
std::string encode_output(const std::string& strategy, const std::string& response);

struct ParsedOutput {
    std::string strategy;
    std::string response;
};

// Splits on the first [strategy] and the first subsequent [response].
// Malformed generations raise an error carrying the raw text.
ParsedOutput parse_output(const std::string& text);

// Escaping for payload occurrences of special-token surfaces: bracket runs
// around a token body are doubled on encode and halved on decode, so only
// encoder-emitted single-bracket markers parse as structure.
std::string escape_payload(const std::string& raw);
std::string unescape_payload(const std::string& escaped);

int count_tokens(const std::string& text);  // whitespace-delimited units

}  // namespace esckit

#endif
