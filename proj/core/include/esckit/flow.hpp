#ifndef ESCKIT_FLOW_HPP
#define ESCKIT_FLOW_HPP

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "esckit/dialogue.hpp"

namespace esckit {

enum class FlowNode { Hi, Bye, Expression, Action, Feedback, Reflection };
constexpr int kFlowNodeCount = 6;
const char* to_string(FlowNode n);

enum class GreetingTag { Hi, Body, Bye };

// Word-sequence lexicon for the greeting/farewell heuristic. Matching is on
// lowercased punctuation-stripped tokens.
class Lexicon {
public:
    static Lexicon load(const std::filesystem::path& path);
    static Lexicon from_text(std::string_view text);
    static const Lexicon& builtin_greetings();
    static const Lexicon& builtin_farewells();

    // Some phrase is a prefix of the utterance's token sequence.
    bool matches_prefix(std::string_view utterance_text) const;
    // Some phrase occurs contiguously anywhere in the token sequence.
    bool matches_anywhere(std::string_view utterance_text) const;

private:
    std::vector<std::vector<std::string>> phrases_;
};

// Hi = maximal greeting prefix, Bye = maximal farewell suffix, never
// overlapping; when the two would cover the whole dialogue the utterance
// nearest the middle stays body.
std::vector<GreetingTag> tag_greetings(const Dialogue& d, const Lexicon& greetings,
                                       const Lexicon& farewells);

struct TransitionMatrix {
    // counts[from][to] over FlowNode x FlowNode, plus Start/End edges.
    std::array<std::array<long long, kFlowNodeCount>, kFlowNodeCount> counts{};
    std::array<long long, kFlowNodeCount> start_counts{};
    std::array<long long, kFlowNodeCount> end_counts{};
    long long excluded_utterances = 0;  // body utterances without initiative

    long long total_transitions() const;
    // Row-normalized over (node, End) targets; zero rows stay zero.
    std::array<std::array<double, kFlowNodeCount + 1>, kFlowNodeCount>
    proportions() const;
    void add(const TransitionMatrix& o);
};

TransitionMatrix transition_matrix(const Corpus& c, const Lexicon& greetings,
                                   const Lexicon& farewells);

struct PhaseStats {
    long long sys_init = 0, sys_non = 0, sys_unknown = 0;
    double rel_sum_init = 0, rel_sum_non = 0;
    long long rel_n_init = 0, rel_n_non = 0;
    void add(const PhaseStats& o);
};

// Five contiguous phases over each dialogue's body utterances, pooled
// across the corpus.
struct ProgressProfile {
    std::array<PhaseStats, 5> phases{};
    void add(const ProgressProfile& o);
};

// Phase of body utterance ib of n: floor(5*ib/n), clamped to [0,4].
int phase_of(int body_index, int body_count);

ProgressProfile progress_profile(const Corpus& c, const Lexicon& greetings,
                                 const Lexicon& farewells);

std::string transition_matrix_json(const TransitionMatrix& m);
std::string transition_matrix_dot(const TransitionMatrix& m);
std::string progress_profile_json(const ProgressProfile& p);

}  // namespace esckit

#endif
