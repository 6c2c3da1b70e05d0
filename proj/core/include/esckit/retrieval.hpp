#ifndef ESCKIT_RETRIEVAL_HPP
#define ESCKIT_RETRIEVAL_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esckit/knowledge_graph.hpp"
#include "esckit/text_pipeline.hpp"

namespace esckit {

enum class CommonsenseRelation { XReact, XIntent, XWant, XNeed, XEffect };
constexpr int kRelationCount = 5;
const char* to_string(CommonsenseRelation r);
std::optional<CommonsenseRelation> relation_from_string(const std::string& s);

// Current user utterance plus its commonsense expansions. The utterance
// targets expectation nodes, xReact affective states, xIntent stressors,
// and xWant/xNeed/xEffect jointly (concatenated in that order) responses.
struct QueryGraph {
    std::string utterance;
    std::array<std::optional<std::string>, kRelationCount> expansions;

    const std::optional<std::string>& expansion(CommonsenseRelation r) const {
        return expansions[static_cast<int>(r)];
    }
    // The description used to match nodes of `t`; absent when every feeding
    // slot is absent.
    std::optional<std::string> slot_description(NodeType t) const;
};

QueryGraph build_query_graph(
    const std::string& utterance,
    const std::map<CommonsenseRelation, std::string>& expansions);

// Deterministic similarity between a query-side description and a node.
class SimilarityProvider {
public:
    virtual ~SimilarityProvider() = default;
    virtual double score(const std::string& description, const KgNode& node) const = 0;
};

// Token-overlap Dice coefficient over Snowball stems; works without
// embeddings and is fully deterministic.
class LexicalDiceProvider : public SimilarityProvider {
public:
    explicit LexicalDiceProvider(const Stopwords& sw = Stopwords::builtin())
        : stopwords_(&sw) {}
    double score(const std::string& description, const KgNode& node) const override;

private:
    const Stopwords* stopwords_;
};

// Cosine between a per-slot query embedding and the stored node embeddings.
// Query embeddings come keyed by slot description text.
class EmbeddingCosineProvider : public SimilarityProvider {
public:
    void set_query_embedding(const std::string& description, std::vector<float> vec);
    double score(const std::string& description, const KgNode& node) const override;

private:
    std::map<std::string, std::vector<float>> query_embeddings_;
};

struct RetrievalConfig {
    int k_per_type = 10;  // top-K candidate nodes per slot
    int n_subgraphs = 1;  // top-N results
};

struct ScoredSubgraph {
    CaseSubgraph subgraph;
    double score = 0;
    // Component per slot in (expectation, affective, stressor, response)
    // order; absent slots contribute nothing.
    std::array<std::optional<double>, 4> components{};
};

struct RetrievalResult {
    std::vector<ScoredSubgraph> ranked;
    std::string diagnostic;         // set when no candidate survives the join
    long long scored_candidates = 0;  // instrumentation: score_subgraph calls
};

ScoredSubgraph score_subgraph(const QueryGraph& q, const CaseSubgraph& s,
                              const KnowledgeGraph& g, const SimilarityProvider& f);

// Indexed path: per-slot top-K selection, hub join, rank by summed
// similarity. Ties break lexicographically on the node ids of
// (expectation, stressor, affective state, response).
RetrievalResult retrieve(const QueryGraph& q, const KnowledgeGraph& g,
                         const SimilarityProvider& f, const RetrievalConfig& cfg);

// Exhaustive oracle: scores every hub-pattern subgraph. Refuses graphs with
// more than `cap` subgraphs.
RetrievalResult brute_force_retrieve(const QueryGraph& q, const KnowledgeGraph& g,
                                     const SimilarityProvider& f, int n_subgraphs,
                                     unsigned long long cap = 5'000'000);

std::string results_json(const RetrievalResult& r, const KnowledgeGraph& g);

}  // namespace esckit

#endif
