#ifndef ESCKIT_METRICS_HPP
#define ESCKIT_METRICS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esckit/dialogue.hpp"
#include "esckit/text_pipeline.hpp"

namespace esckit {

// One metric split by the initiative class of the system utterance, plus the
// pooled column. Classes with no qualifying utterances stay absent; class
// columns also stay absent (with a warning) when a counted system utterance
// has no initiative annotation.
struct ClassValues {
    std::optional<double> init;
    std::optional<double> non_init;
    std::optional<double> all;
};

// Raw numerator/denominator sums, kept so corpus aggregation can pool them.
struct ClassTally {
    double sum_init = 0, sum_non = 0, sum_unknown = 0;
    long long n_init = 0, n_non = 0, n_unknown = 0;
    long long skipped = 0;  // relaxation: system utterances with no usable pair

    double total_sum() const { return sum_init + sum_non + sum_unknown; }
    long long total_n() const { return n_init + n_non + n_unknown; }
    void add(const ClassTally& o);
    ClassValues values() const;
};

struct ProactivityTally {
    long long n_sys = 0, n_sys_init = 0;
    void add(const ProactivityTally& o) { n_sys += o.n_sys; n_sys_init += o.n_sys_init; }
};

struct MetricsReport {
    std::optional<double> proactivity;  // share of system-initiative utterances
    ClassValues information;
    ClassValues repetition;
    ClassValues relaxation;
    long long system_utterances = 0;
    long long system_utterances_init = 0;
    long long system_utterances_non = 0;
    long long relaxation_skipped = 0;
};

// ---- Per-dialogue metrics ----------------------------------------------

// Ratio of system-initiative utterances. Throws when the dialogue has no
// system utterance or a system utterance lacks an initiative annotation.
double proactivity(const Dialogue& d);
ProactivityTally proactivity_tally(const Dialogue& d);

// Average number of frequent terms first introduced to the dialogue by a
// system utterance. `terms` must come from build_vocabulary on d.
ClassValues information(const Dialogue& d, const DialogueTerms& terms);
ClassTally information_tally(const Dialogue& d, const DialogueTerms& terms);

// Average number of frequent terms in system utterances that some earlier
// user utterance already used.
ClassValues repetition(const Dialogue& d, const DialogueTerms& terms);
ClassTally repetition_tally(const Dialogue& d, const DialogueTerms& terms);

// Intensity drop across each system utterance: nearest annotated user
// utterance before minus nearest annotated user utterance after. Entries are
// aligned with utterance indices; absent for non-system utterances and for
// system utterances missing either side.
std::vector<std::optional<double>> relaxation_per_utterance(const Dialogue& d);
ClassValues relaxation(const Dialogue& d);
ClassTally relaxation_tally(const Dialogue& d);

// ---- Pluggable estimators for generated-response evaluation -------------

struct DialogueContext {
    const Dialogue* dialogue;
    int position;  // utterances [0, position) form the context
};

class IntensityEstimator {
public:
    virtual ~IntensityEstimator() = default;
    virtual EmotionIntensity estimate(std::string_view user_text,
                                      const DialogueContext& ctx) const = 0;
};

class FeedbackProvider {
public:
    virtual ~FeedbackProvider() = default;
    virtual std::string feedback(std::string_view situation,
                                 const DialogueContext& ctx,
                                 std::string_view response) const = 0;
};

// Reads the recorded intensity annotation of the context utterance whose
// text matches; the usual pairing with ReplayFeedbackProvider reduces the
// simulated metric to the annotated one.
class AnnotationIntensityEstimator : public IntensityEstimator {
public:
    EmotionIntensity estimate(std::string_view user_text,
                              const DialogueContext& ctx) const override;
};

// Replays the recorded next user utterance after the context position.
class ReplayFeedbackProvider : public FeedbackProvider {
public:
    std::string feedback(std::string_view situation, const DialogueContext& ctx,
                         std::string_view response) const override;
};

// Intensity change caused by `response` at utterance position `i`:
// estimated intensity of the nearest user utterance before i minus the
// estimated intensity of the simulated user feedback.
double simulated_relaxation(const Dialogue& d, int i, std::string_view response,
                            const IntensityEstimator& est,
                            const FeedbackProvider& fb);

// ---- Corpus aggregation --------------------------------------------------

struct CorpusReport {
    std::string corpus_name;
    long long dialogues = 0;
    MetricsReport micro;  // pooled over system utterances
    MetricsReport macro;  // mean of per-dialogue values
    std::vector<std::string> errors;    // dialogues excluded per metric
    std::vector<std::string> warnings;  // partial class columns etc.
};

CorpusReport corpus_report(const Corpus& c, const Stopwords& sw);

}  // namespace esckit

#endif
