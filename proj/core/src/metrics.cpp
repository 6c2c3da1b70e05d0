#include "esckit/metrics.hpp"

#include <cmath>
#include <sstream>

#include "esckit/errors.hpp"

namespace esckit {

void ClassTally::add(const ClassTally& o) {
    sum_init += o.sum_init;
    sum_non += o.sum_non;
    sum_unknown += o.sum_unknown;
    n_init += o.n_init;
    n_non += o.n_non;
    n_unknown += o.n_unknown;
    skipped += o.skipped;
}

ClassValues ClassTally::values() const {
    ClassValues v;
    if (total_n() > 0) v.all = total_sum() / static_cast<double>(total_n());
    if (n_unknown == 0) {
        if (n_init > 0) v.init = sum_init / static_cast<double>(n_init);
        if (n_non > 0) v.non_init = sum_non / static_cast<double>(n_non);
    }
    return v;
}

namespace {

void tally_value(ClassTally& t, const Utterance& u, double value) {
    if (!u.initiative) {
        t.sum_unknown += value;
        t.n_unknown += 1;
    } else if (*u.initiative == InitiativeType::Initiative) {
        t.sum_init += value;
        t.n_init += 1;
    } else {
        t.sum_non += value;
        t.n_non += 1;
    }
}

}  // namespace

ProactivityTally proactivity_tally(const Dialogue& d) {
    ProactivityTally t;
    for (const Utterance& u : d.utterances) {
        if (u.role != SpeakerRole::System) continue;
        if (!u.initiative)
            throw Error("proactivity: dialogue '" + d.id + "' utterance " +
                        std::to_string(u.index) +
                        ": system utterance lacks initiative annotation");
        t.n_sys += 1;
        if (*u.initiative == InitiativeType::Initiative) t.n_sys_init += 1;
    }
    if (t.n_sys == 0)
        throw Error("proactivity: dialogue '" + d.id + "' has no system utterances");
    return t;
}

double proactivity(const Dialogue& d) {
    ProactivityTally t = proactivity_tally(d);
    return static_cast<double>(t.n_sys_init) / static_cast<double>(t.n_sys);
}

ClassTally information_tally(const Dialogue& d, const DialogueTerms& terms) {
    const Vocabulary& vocab = terms.vocabulary;
    std::vector<bool> frequent(vocab.size(), false);
    for (TermId id : frequent_terms(vocab)) frequent[id] = true;

    ClassTally t;
    std::vector<bool> seen(vocab.size(), false);
    for (size_t i = 0; i < d.utterances.size(); ++i) {
        const Utterance& u = d.utterances[i];
        const TermSet& set = terms.utterance_terms[i];
        if (u.role == SpeakerRole::System) {
            int fresh = 0;
            for (TermId id : set)
                if (frequent[id] && !seen[id]) ++fresh;
            tally_value(t, u, fresh);
        }
        for (TermId id : set) seen[id] = true;
    }
    return t;
}

ClassValues information(const Dialogue& d, const DialogueTerms& terms) {
    return information_tally(d, terms).values();
}

ClassTally repetition_tally(const Dialogue& d, const DialogueTerms& terms) {
    const Vocabulary& vocab = terms.vocabulary;
    std::vector<bool> frequent(vocab.size(), false);
    for (TermId id : frequent_terms(vocab)) frequent[id] = true;

    ClassTally t;
    std::vector<bool> user_seen(vocab.size(), false);
    for (size_t i = 0; i < d.utterances.size(); ++i) {
        const Utterance& u = d.utterances[i];
        const TermSet& set = terms.utterance_terms[i];
        if (u.role == SpeakerRole::System) {
            int echoed = 0;
            for (TermId id : set)
                if (frequent[id] && user_seen[id]) ++echoed;
            tally_value(t, u, echoed);
        }
        if (u.role == SpeakerRole::User)
            for (TermId id : set) user_seen[id] = true;
    }
    return t;
}

ClassValues repetition(const Dialogue& d, const DialogueTerms& terms) {
    return repetition_tally(d, terms).values();
}

std::vector<std::optional<double>> relaxation_per_utterance(const Dialogue& d) {
    size_t n = d.utterances.size();
    std::vector<std::optional<int>> before(n), after(n);
    std::optional<int> last;
    for (size_t i = 0; i < n; ++i) {
        before[i] = last;
        const Utterance& u = d.utterances[i];
        if (u.role == SpeakerRole::User && u.intensity) last = u.intensity->level;
    }
    last.reset();
    for (size_t i = n; i-- > 0;) {
        after[i] = last;
        const Utterance& u = d.utterances[i];
        if (u.role == SpeakerRole::User && u.intensity) last = u.intensity->level;
    }
    std::vector<std::optional<double>> rel(n);
    for (size_t i = 0; i < n; ++i) {
        if (d.utterances[i].role != SpeakerRole::System) continue;
        if (before[i] && after[i]) rel[i] = static_cast<double>(*before[i] - *after[i]);
    }
    return rel;
}

ClassTally relaxation_tally(const Dialogue& d) {
    ClassTally t;
    std::vector<std::optional<double>> rel = relaxation_per_utterance(d);
    for (size_t i = 0; i < d.utterances.size(); ++i) {
        const Utterance& u = d.utterances[i];
        if (u.role != SpeakerRole::System) continue;
        if (rel[i])
            tally_value(t, u, *rel[i]);
        else
            t.skipped += 1;
    }
    return t;
}

ClassValues relaxation(const Dialogue& d) { return relaxation_tally(d).values(); }

EmotionIntensity AnnotationIntensityEstimator::estimate(
    std::string_view user_text, const DialogueContext& ctx) const {
    for (const Utterance& u : ctx.dialogue->utterances)
        if (u.role == SpeakerRole::User && u.intensity && u.text == user_text)
            return *u.intensity;
    throw Error("no intensity annotation found for utterance text");
}

std::string ReplayFeedbackProvider::feedback(std::string_view, const DialogueContext& ctx,
                                             std::string_view) const {
    for (size_t i = ctx.position + 1; i < ctx.dialogue->utterances.size(); ++i)
        if (ctx.dialogue->utterances[i].role == SpeakerRole::User)
            return ctx.dialogue->utterances[i].text;
    throw Error("no recorded user feedback after position " +
                std::to_string(ctx.position));
}

double simulated_relaxation(const Dialogue& d, int i, std::string_view response,
                            const IntensityEstimator& est,
                            const FeedbackProvider& fb) {
    const Utterance* prior_user = nullptr;
    for (int j = i - 1; j >= 0; --j) {
        if (d.utterances[j].role == SpeakerRole::User) {
            prior_user = &d.utterances[j];
            break;
        }
    }
    if (!prior_user)
        throw Error("simulated_relaxation: no user utterance before position " +
                    std::to_string(i) + " in dialogue '" + d.id + "'");
    DialogueContext ctx{&d, i};
    try {
        int before = est.estimate(prior_user->text, ctx).level;
        std::string fb_text = fb.feedback(d.situation, ctx, response);
        int after = est.estimate(fb_text, ctx).level;
        return static_cast<double>(before - after);
    } catch (const Error& e) {
        throw Error("simulated_relaxation at position " + std::to_string(i) +
                    " in dialogue '" + d.id + "': " + e.what());
    }
}

namespace {

struct MacroAcc {
    double sum = 0;
    long long n = 0;
    void add(const std::optional<double>& v) {
        if (v) { sum += *v; n += 1; }
    }
    std::optional<double> mean() const {
        if (n == 0) return std::nullopt;
        return sum / static_cast<double>(n);
    }
};

}  // namespace

CorpusReport corpus_report(const Corpus& c, const Stopwords& sw) {
    CorpusReport report;
    report.corpus_name = c.name;
    report.dialogues = static_cast<long long>(c.dialogues.size());

    ProactivityTally pro_pool;
    bool pro_any = false;
    ClassTally inf_pool, rep_pool, rel_pool;
    MacroAcc m_pro, m_inf_i, m_inf_n, m_inf_a, m_rep_i, m_rep_n, m_rep_a,
        m_rel_i, m_rel_n, m_rel_a;
    bool class_warning = false;

    for (const Dialogue& d : c.dialogues) {
        try {
            ProactivityTally t = proactivity_tally(d);
            pro_pool.add(t);
            pro_any = true;
            m_pro.add(static_cast<double>(t.n_sys_init) /
                      static_cast<double>(t.n_sys));
        } catch (const Error& e) {
            report.errors.push_back(e.what());
        }

        DialogueTerms terms = build_vocabulary(d, sw);
        ClassTally inf = information_tally(d, terms);
        ClassTally rep = repetition_tally(d, terms);
        ClassTally rel = relaxation_tally(d);
        if (inf.n_unknown > 0) class_warning = true;
        inf_pool.add(inf);
        rep_pool.add(rep);
        rel_pool.add(rel);

        ClassValues iv = inf.values(), pv = rep.values(), rv = rel.values();
        m_inf_i.add(iv.init); m_inf_n.add(iv.non_init); m_inf_a.add(iv.all);
        m_rep_i.add(pv.init); m_rep_n.add(pv.non_init); m_rep_a.add(pv.all);
        m_rel_i.add(rv.init); m_rel_n.add(rv.non_init); m_rel_a.add(rv.all);
    }

    if (class_warning)
        report.warnings.push_back(
            "some system utterances lack initiative annotations; "
            "per-class columns omitted where affected");

    MetricsReport& micro = report.micro;
    if (pro_any)
        micro.proactivity = static_cast<double>(pro_pool.n_sys_init) /
                            static_cast<double>(pro_pool.n_sys);
    micro.information = inf_pool.values();
    micro.repetition = rep_pool.values();
    micro.relaxation = rel_pool.values();
    micro.system_utterances = inf_pool.total_n();
    micro.system_utterances_init = inf_pool.n_init;
    micro.system_utterances_non = inf_pool.n_non;
    micro.relaxation_skipped = rel_pool.skipped;

    MetricsReport& macro = report.macro;
    macro.proactivity = m_pro.mean();
    macro.information = {m_inf_i.mean(), m_inf_n.mean(), m_inf_a.mean()};
    macro.repetition = {m_rep_i.mean(), m_rep_n.mean(), m_rep_a.mean()};
    macro.relaxation = {m_rel_i.mean(), m_rel_n.mean(), m_rel_a.mean()};
    macro.system_utterances = micro.system_utterances;
    macro.system_utterances_init = micro.system_utterances_init;
    macro.system_utterances_non = micro.system_utterances_non;
    macro.relaxation_skipped = micro.relaxation_skipped;
    return report;
}

}  // namespace esckit
