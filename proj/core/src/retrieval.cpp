#include "esckit/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "esckit/errors.hpp"

namespace esckit {

using nlohmann::json;

const char* to_string(CommonsenseRelation r) {
    switch (r) {
        case CommonsenseRelation::XReact: return "xReact";
        case CommonsenseRelation::XIntent: return "xIntent";
        case CommonsenseRelation::XWant: return "xWant";
        case CommonsenseRelation::XNeed: return "xNeed";
        case CommonsenseRelation::XEffect: return "xEffect";
    }
    return "?";
}

std::optional<CommonsenseRelation> relation_from_string(const std::string& s) {
    if (s == "xReact") return CommonsenseRelation::XReact;
    if (s == "xIntent") return CommonsenseRelation::XIntent;
    if (s == "xWant") return CommonsenseRelation::XWant;
    if (s == "xNeed") return CommonsenseRelation::XNeed;
    if (s == "xEffect") return CommonsenseRelation::XEffect;
    return std::nullopt;
}

std::optional<std::string> QueryGraph::slot_description(NodeType t) const {
    switch (t) {
        case NodeType::Expectation:
            return utterance;
        case NodeType::AffectiveState:
            return expansion(CommonsenseRelation::XReact);
        case NodeType::Stressor:
            return expansion(CommonsenseRelation::XIntent);
        case NodeType::Response: {
            std::string joined;
            for (CommonsenseRelation r : {CommonsenseRelation::XWant,
                                          CommonsenseRelation::XNeed,
                                          CommonsenseRelation::XEffect}) {
                const auto& e = expansion(r);
                if (!e) continue;
                if (!joined.empty()) joined += ' ';
                joined += *e;
            }
            if (joined.empty()) return std::nullopt;
            return joined;
        }
    }
    return std::nullopt;
}

QueryGraph build_query_graph(
    const std::string& utterance,
    const std::map<CommonsenseRelation, std::string>& expansions) {
    if (utterance.empty()) throw Error("query: utterance must be non-empty");
    QueryGraph q;
    q.utterance = utterance;
    for (const auto& [rel, text] : expansions)
        q.expansions[static_cast<int>(rel)] = text;
    return q;
}

double LexicalDiceProvider::score(const std::string& description,
                                  const KgNode& node) const {
    std::vector<std::string> a = preprocess(description, *stopwords_);
    std::vector<std::string> b = preprocess(node.text, *stopwords_);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    if (a.empty() && b.empty()) return 0.0;
    size_t overlap = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) { ++overlap; ++i; ++j; }
        else if (a[i] < b[j]) ++i;
        else ++j;
    }
    return 2.0 * static_cast<double>(overlap) /
           static_cast<double>(a.size() + b.size());
}

void EmbeddingCosineProvider::set_query_embedding(const std::string& description,
                                                  std::vector<float> vec) {
    query_embeddings_[description] = std::move(vec);
}

double EmbeddingCosineProvider::score(const std::string& description,
                                      const KgNode& node) const {
    auto it = query_embeddings_.find(description);
    if (it == query_embeddings_.end())
        throw Error("no query embedding registered for description: " + description);
    if (node.embedding.empty())
        throw Error("node '" + node.id + "' has no embedding");
    const std::vector<float>& a = it->second;
    const std::vector<float>& b = node.embedding;
    if (a.size() != b.size())
        throw Error("embedding dimension mismatch for node '" + node.id + "'");
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

struct TieKey {
    const std::string *exp, *str, *aff, *resp;
};

TieKey tie_key(const KnowledgeGraph& g, const CaseSubgraph& s) {
    return {&g.node(s.expectation).id, &g.node(s.stressor).id,
            &g.node(s.affective_state).id, &g.node(s.response).id};
}

bool tie_less(const TieKey& a, const TieKey& b) {
    if (*a.exp != *b.exp) return *a.exp < *b.exp;
    if (*a.str != *b.str) return *a.str < *b.str;
    if (*a.aff != *b.aff) return *a.aff < *b.aff;
    return *a.resp < *b.resp;
}

void rank(std::vector<ScoredSubgraph>& v, const KnowledgeGraph& g, int n) {
    std::sort(v.begin(), v.end(),
              [&g](const ScoredSubgraph& a, const ScoredSubgraph& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return tie_less(tie_key(g, a.subgraph), tie_key(g, b.subgraph));
              });
    if (static_cast<int>(v.size()) > n) v.resize(n);
}

// Per-slot node selection: scores of the top-K nodes of one type.
struct SlotSelection {
    bool active = false;  // slot description present -> restricts candidates
    std::unordered_map<NodeIndex, double> scores;
};

SlotSelection select_top_k(const QueryGraph& q, const KnowledgeGraph& g,
                           const SimilarityProvider& f, NodeType t, int k) {
    SlotSelection sel;
    auto desc = q.slot_description(t);
    if (!desc) return sel;
    sel.active = true;
    std::vector<std::pair<NodeIndex, double>> scored;
    scored.reserve(g.nodes_of_type(t).size());
    for (NodeIndex i : g.nodes_of_type(t)) {
        try {
            scored.emplace_back(i, f.score(*desc, g.node(i)));
        } catch (const Error& e) {
            throw Error(std::string("similarity provider failed on node '") +
                        g.node(i).id + "': " + e.what());
        }
    }
    size_t keep = std::min<size_t>(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                      [&g](const auto& a, const auto& b) {
                          if (a.second != b.second) return a.second > b.second;
                          return g.node(a.first).id < g.node(b.first).id;
                      });
    scored.resize(keep);
    for (const auto& [idx, s] : scored) sel.scores.emplace(idx, s);
    return sel;
}

}  // namespace

ScoredSubgraph score_subgraph(const QueryGraph& q, const CaseSubgraph& s,
                              const KnowledgeGraph& g, const SimilarityProvider& f) {
    ScoredSubgraph out;
    out.subgraph = s;
    const std::array<std::pair<NodeType, NodeIndex>, 4> slots = {{
        {NodeType::Expectation, s.expectation},
        {NodeType::AffectiveState, s.affective_state},
        {NodeType::Stressor, s.stressor},
        {NodeType::Response, s.response},
    }};
    for (int i = 0; i < 4; ++i) {
        auto desc = q.slot_description(slots[i].first);
        if (!desc) continue;
        double component;
        try {
            component = f.score(*desc, g.node(slots[i].second));
        } catch (const Error& e) {
            throw Error(std::string("similarity provider failed on node '") +
                        g.node(slots[i].second).id + "': " + e.what());
        }
        out.components[i] = component;
        out.score += component;
    }
    return out;
}

RetrievalResult retrieve(const QueryGraph& q, const KnowledgeGraph& g,
                         const SimilarityProvider& f, const RetrievalConfig& cfg) {
    if (cfg.k_per_type < 1 || cfg.n_subgraphs < 1)
        throw Error("retrieval config: k and n must be >= 1");
    RetrievalResult result;

    SlotSelection sel_exp = select_top_k(q, g, f, NodeType::Expectation, cfg.k_per_type);
    SlotSelection sel_aff = select_top_k(q, g, f, NodeType::AffectiveState, cfg.k_per_type);
    SlotSelection sel_str = select_top_k(q, g, f, NodeType::Stressor, cfg.k_per_type);
    SlotSelection sel_resp = select_top_k(q, g, f, NodeType::Response, cfg.k_per_type);

    // The expectation hub bounds the join: iterate candidate expectations
    // and intersect their adjacency with each slot's selection.
    std::vector<NodeIndex> expectations;
    if (sel_exp.active) {
        expectations.reserve(sel_exp.scores.size());
        for (NodeIndex i : g.nodes_of_type(NodeType::Expectation))
            if (sel_exp.scores.count(i)) expectations.push_back(i);
    } else {
        expectations = g.nodes_of_type(NodeType::Expectation);
    }

    auto satellites = [&](NodeIndex e, NodeType t,
                          const SlotSelection& sel) -> std::vector<NodeIndex> {
        const std::vector<NodeIndex>& adj = g.neighbors(e, t);
        if (!sel.active) return adj;
        std::vector<NodeIndex> out;
        for (NodeIndex i : adj)
            if (sel.scores.count(i)) out.push_back(i);
        return out;
    };

    std::vector<ScoredSubgraph> candidates;
    for (NodeIndex e : expectations) {
        std::vector<NodeIndex> strs = satellites(e, NodeType::Stressor, sel_str);
        if (strs.empty()) continue;
        std::vector<NodeIndex> affs = satellites(e, NodeType::AffectiveState, sel_aff);
        if (affs.empty()) continue;
        std::vector<NodeIndex> resps = satellites(e, NodeType::Response, sel_resp);
        if (resps.empty()) continue;
        for (NodeIndex str : strs) {
            for (NodeIndex aff : affs) {
                for (NodeIndex resp : resps) {
                    ScoredSubgraph cand;
                    cand.subgraph = CaseSubgraph{e, aff, str, resp};
                    if (sel_exp.active) cand.components[0] = sel_exp.scores.at(e);
                    if (sel_aff.active) cand.components[1] = sel_aff.scores.at(aff);
                    if (sel_str.active) cand.components[2] = sel_str.scores.at(str);
                    if (sel_resp.active) cand.components[3] = sel_resp.scores.at(resp);
                    for (int i = 0; i < 4; ++i)
                        if (cand.components[i]) cand.score += *cand.components[i];
                    result.scored_candidates += 1;
                    candidates.push_back(std::move(cand));
                }
            }
        }
    }
    rank(candidates, g, cfg.n_subgraphs);
    result.ranked = std::move(candidates);
    if (result.ranked.empty())
        result.diagnostic =
            "no candidate subgraph joins the per-slot top-K selections; "
            "consider increasing K";
    return result;
}

RetrievalResult brute_force_retrieve(const QueryGraph& q, const KnowledgeGraph& g,
                                     const SimilarityProvider& f, int n_subgraphs,
                                     unsigned long long cap) {
    unsigned long long total = g.subgraph_count();
    if (total > cap)
        throw Error("brute-force retrieval refused: " + std::to_string(total) +
                    " subgraphs exceed the cap of " + std::to_string(cap) +
                    "; use the indexed retrieve path");
    RetrievalResult result;
    std::vector<ScoredSubgraph> scored;
    scored.reserve(static_cast<size_t>(total));
    g.enumerate_subgraphs([&](const CaseSubgraph& s) {
        scored.push_back(score_subgraph(q, s, g, f));
        result.scored_candidates += 1;
        return true;
    });
    rank(scored, g, n_subgraphs);
    result.ranked = std::move(scored);
    if (result.ranked.empty())
        result.diagnostic = "graph contains no hub-pattern subgraphs";
    return result;
}

std::string results_json(const RetrievalResult& r, const KnowledgeGraph& g) {
    json root;
    json arr = json::array();
    static const char* slot_names[4] = {"expectation", "affective_state",
                                        "stressor", "response"};
    for (size_t rank_i = 0; rank_i < r.ranked.size(); ++rank_i) {
        const ScoredSubgraph& s = r.ranked[rank_i];
        json js;
        js["rank"] = rank_i + 1;
        js["score"] = s.score;
        const std::array<NodeIndex, 4> idx = {s.subgraph.expectation,
                                              s.subgraph.affective_state,
                                              s.subgraph.stressor,
                                              s.subgraph.response};
        json nodes = json::object();
        for (int i = 0; i < 4; ++i) {
            json jn;
            jn["id"] = g.node(idx[i]).id;
            jn["text"] = g.node(idx[i]).text;
            if (s.components[i]) jn["score"] = *s.components[i];
            nodes[slot_names[i]] = std::move(jn);
        }
        js["nodes"] = std::move(nodes);
        arr.push_back(std::move(js));
    }
    root["results"] = std::move(arr);
    if (!r.diagnostic.empty()) root["diagnostic"] = r.diagnostic;
    root["scored_candidates"] = r.scored_candidates;
    return root.dump(2);
}

}  // namespace esckit
