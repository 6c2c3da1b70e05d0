#include "esckit/flow.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "esckit/builtin_data.hpp"
#include "esckit/errors.hpp"
#include "esckit/metrics.hpp"

namespace esckit {

using nlohmann::json;

const char* to_string(FlowNode n) {
    switch (n) {
        case FlowNode::Hi: return "Hi";
        case FlowNode::Bye: return "Bye";
        case FlowNode::Expression: return "Expression";
        case FlowNode::Action: return "Action";
        case FlowNode::Feedback: return "Feedback";
        case FlowNode::Reflection: return "Reflection";
    }
    return "?";
}

namespace {

std::vector<std::string> simple_tokens(std::string_view text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (c == '\'') continue;
        if (c < 0x80 && std::ispunct(c))
            cleaned += ' ';
        else
            cleaned += static_cast<char>(std::tolower(c));
    }
    std::vector<std::string> out;
    std::istringstream in(cleaned);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

FlowNode flow_node(EafrLabel l) {
    switch (l) {
        case EafrLabel::Expression: return FlowNode::Expression;
        case EafrLabel::Action: return FlowNode::Action;
        case EafrLabel::Feedback: return FlowNode::Feedback;
        case EafrLabel::Reflection: return FlowNode::Reflection;
    }
    return FlowNode::Expression;
}

}  // namespace

Lexicon Lexicon::from_text(std::string_view text) {
    Lexicon lex;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> phrase = simple_tokens(line);
        if (!phrase.empty()) lex.phrases_.push_back(std::move(phrase));
    }
    return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open lexicon file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

const Lexicon& Lexicon::builtin_greetings() {
    static const Lexicon lex = from_text(data::builtin_greetings());
    return lex;
}

const Lexicon& Lexicon::builtin_farewells() {
    static const Lexicon lex = from_text(data::builtin_farewells());
    return lex;
}

bool Lexicon::matches_prefix(std::string_view utterance_text) const {
    std::vector<std::string> toks = simple_tokens(utterance_text);
    for (const auto& phrase : phrases_) {
        if (phrase.size() > toks.size()) continue;
        if (std::equal(phrase.begin(), phrase.end(), toks.begin())) return true;
    }
    return false;
}

bool Lexicon::matches_anywhere(std::string_view utterance_text) const {
    std::vector<std::string> toks = simple_tokens(utterance_text);
    for (const auto& phrase : phrases_) {
        if (phrase.size() > toks.size()) continue;
        for (size_t i = 0; i + phrase.size() <= toks.size(); ++i)
            if (std::equal(phrase.begin(), phrase.end(), toks.begin() + i))
                return true;
    }
    return false;
}

std::vector<GreetingTag> tag_greetings(const Dialogue& d, const Lexicon& greetings,
                                       const Lexicon& farewells) {
    int n = static_cast<int>(d.utterances.size());
    int hi_end = 0;
    while (hi_end < n && greetings.matches_prefix(d.utterances[hi_end].text))
        ++hi_end;
    int bye_start = n;
    while (bye_start > hi_end &&
           farewells.matches_anywhere(d.utterances[bye_start - 1].text))
        --bye_start;
    if (hi_end >= bye_start) {
        // The whole dialogue matched; keep the middle utterance as body.
        int mid = n / 2;
        hi_end = std::min(hi_end, mid);
        bye_start = std::max(bye_start, mid + 1);
    }
    std::vector<GreetingTag> tags(n, GreetingTag::Body);
    for (int i = 0; i < hi_end; ++i) tags[i] = GreetingTag::Hi;
    for (int i = bye_start; i < n; ++i) tags[i] = GreetingTag::Bye;
    return tags;
}

long long TransitionMatrix::total_transitions() const {
    long long total = 0;
    for (const auto& row : counts)
        for (long long v : row) total += v;
    for (long long v : start_counts) total += v;
    for (long long v : end_counts) total += v;
    return total;
}

std::array<std::array<double, kFlowNodeCount + 1>, kFlowNodeCount>
TransitionMatrix::proportions() const {
    std::array<std::array<double, kFlowNodeCount + 1>, kFlowNodeCount> p{};
    for (int i = 0; i < kFlowNodeCount; ++i) {
        long long row_total = end_counts[i];
        for (long long v : counts[i]) row_total += v;
        if (row_total == 0) continue;
        for (int j = 0; j < kFlowNodeCount; ++j)
            p[i][j] = static_cast<double>(counts[i][j]) / row_total;
        p[i][kFlowNodeCount] = static_cast<double>(end_counts[i]) / row_total;
    }
    return p;
}

void TransitionMatrix::add(const TransitionMatrix& o) {
    for (int i = 0; i < kFlowNodeCount; ++i) {
        start_counts[i] += o.start_counts[i];
        end_counts[i] += o.end_counts[i];
        for (int j = 0; j < kFlowNodeCount; ++j) counts[i][j] += o.counts[i][j];
    }
    excluded_utterances += o.excluded_utterances;
}

TransitionMatrix transition_matrix(const Corpus& c, const Lexicon& greetings,
                                   const Lexicon& farewells) {
    TransitionMatrix m;
    for (const Dialogue& d : c.dialogues) {
        std::vector<GreetingTag> tags = tag_greetings(d, greetings, farewells);
        std::vector<FlowNode> seq;
        for (size_t i = 0; i < d.utterances.size(); ++i) {
            if (tags[i] == GreetingTag::Hi) {
                seq.push_back(FlowNode::Hi);
            } else if (tags[i] == GreetingTag::Bye) {
                seq.push_back(FlowNode::Bye);
            } else if (auto label = eafr_label(d.utterances[i])) {
                seq.push_back(flow_node(*label));
            } else {
                m.excluded_utterances += 1;
            }
        }
        if (seq.empty()) continue;
        m.start_counts[static_cast<int>(seq.front())] += 1;
        for (size_t i = 0; i + 1 < seq.size(); ++i)
            m.counts[static_cast<int>(seq[i])][static_cast<int>(seq[i + 1])] += 1;
        m.end_counts[static_cast<int>(seq.back())] += 1;
    }
    return m;
}

void PhaseStats::add(const PhaseStats& o) {
    sys_init += o.sys_init;
    sys_non += o.sys_non;
    sys_unknown += o.sys_unknown;
    rel_sum_init += o.rel_sum_init;
    rel_sum_non += o.rel_sum_non;
    rel_n_init += o.rel_n_init;
    rel_n_non += o.rel_n_non;
}

void ProgressProfile::add(const ProgressProfile& o) {
    for (int i = 0; i < 5; ++i) phases[i].add(o.phases[i]);
}

int phase_of(int body_index, int body_count) {
    if (body_count <= 0) return 0;
    int phase = (5 * body_index) / body_count;
    return std::clamp(phase, 0, 4);
}

ProgressProfile progress_profile(const Corpus& c, const Lexicon& greetings,
                                 const Lexicon& farewells) {
    ProgressProfile profile;
    for (const Dialogue& d : c.dialogues) {
        std::vector<GreetingTag> tags = tag_greetings(d, greetings, farewells);
        std::vector<std::optional<double>> rel = relaxation_per_utterance(d);
        std::vector<size_t> body;
        for (size_t i = 0; i < d.utterances.size(); ++i)
            if (tags[i] == GreetingTag::Body) body.push_back(i);
        int n_body = static_cast<int>(body.size());
        for (int ib = 0; ib < n_body; ++ib) {
            const Utterance& u = d.utterances[body[ib]];
            if (u.role != SpeakerRole::System) continue;
            PhaseStats& ph = profile.phases[phase_of(ib, n_body)];
            if (!u.initiative) {
                ph.sys_unknown += 1;
                continue;
            }
            bool init = *u.initiative == InitiativeType::Initiative;
            (init ? ph.sys_init : ph.sys_non) += 1;
            if (rel[body[ib]]) {
                if (init) {
                    ph.rel_sum_init += *rel[body[ib]];
                    ph.rel_n_init += 1;
                } else {
                    ph.rel_sum_non += *rel[body[ib]];
                    ph.rel_n_non += 1;
                }
            }
        }
    }
    return profile;
}

std::string transition_matrix_json(const TransitionMatrix& m) {
    json root;
    json nodes = json::array();
    for (int i = 0; i < kFlowNodeCount; ++i)
        nodes.push_back(to_string(static_cast<FlowNode>(i)));
    root["nodes"] = nodes;
    json counts = json::object(), props = json::object();
    auto p = m.proportions();
    for (int i = 0; i < kFlowNodeCount; ++i) {
        json crow = json::object(), prow = json::object();
        for (int j = 0; j < kFlowNodeCount; ++j) {
            crow[to_string(static_cast<FlowNode>(j))] = m.counts[i][j];
            prow[to_string(static_cast<FlowNode>(j))] = p[i][j];
        }
        crow["End"] = m.end_counts[i];
        prow["End"] = p[i][kFlowNodeCount];
        counts[to_string(static_cast<FlowNode>(i))] = std::move(crow);
        props[to_string(static_cast<FlowNode>(i))] = std::move(prow);
    }
    json start = json::object();
    for (int i = 0; i < kFlowNodeCount; ++i)
        start[to_string(static_cast<FlowNode>(i))] = m.start_counts[i];
    root["counts"] = std::move(counts);
    root["proportions"] = std::move(props);
    root["start"] = std::move(start);
    root["total_transitions"] = m.total_transitions();
    root["excluded_utterances"] = m.excluded_utterances;
    return root.dump(2);
}

std::string transition_matrix_dot(const TransitionMatrix& m) {
    std::ostringstream os;
    os << "digraph flow {\n  rankdir=LR;\n";
    os << "  Start [shape=circle];\n  End [shape=circle];\n";
    for (int i = 0; i < kFlowNodeCount; ++i)
        os << "  " << to_string(static_cast<FlowNode>(i)) << " [shape=box];\n";
    for (int i = 0; i < kFlowNodeCount; ++i)
        if (m.start_counts[i] > 0)
            os << "  Start -> " << to_string(static_cast<FlowNode>(i))
               << " [label=\"" << m.start_counts[i] << "\"];\n";
    for (int i = 0; i < kFlowNodeCount; ++i)
        for (int j = 0; j < kFlowNodeCount; ++j)
            if (m.counts[i][j] > 0)
                os << "  " << to_string(static_cast<FlowNode>(i)) << " -> "
                   << to_string(static_cast<FlowNode>(j)) << " [label=\""
                   << m.counts[i][j] << "\"];\n";
    for (int i = 0; i < kFlowNodeCount; ++i)
        if (m.end_counts[i] > 0)
            os << "  " << to_string(static_cast<FlowNode>(i)) << " -> End"
               << " [label=\"" << m.end_counts[i] << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string progress_profile_json(const ProgressProfile& p) {
    json root;
    json phases = json::array();
    for (int i = 0; i < 5; ++i) {
        const PhaseStats& ph = p.phases[i];
        json jp;
        jp["phase"] = i;
        long long known = ph.sys_init + ph.sys_non;
        jp["system_utterances"] = known + ph.sys_unknown;
        jp["system_utterances_unannotated"] = ph.sys_unknown;
        if (known > 0) {
            jp["initiative_proportion"] = static_cast<double>(ph.sys_init) / known;
            jp["non_initiative_proportion"] = static_cast<double>(ph.sys_non) / known;
        }
        if (ph.rel_n_init > 0)
            jp["intensity_change_init"] = ph.rel_sum_init / ph.rel_n_init;
        if (ph.rel_n_non > 0)
            jp["intensity_change_non"] = ph.rel_sum_non / ph.rel_n_non;
        phases.push_back(std::move(jp));
    }
    root["phases"] = std::move(phases);
    return root.dump(2);
}

}  // namespace esckit
