#ifndef ESCKIT_KNOWLEDGE_GRAPH_HPP
#define ESCKIT_KNOWLEDGE_GRAPH_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "esckit/dialogue.hpp"

namespace esckit {

enum class NodeType { Expectation, AffectiveState, Stressor, Response };
constexpr int kNodeTypeCount = 4;
const char* to_string(NodeType t);
std::optional<NodeType> node_type_from_string(const std::string& s);

using NodeIndex = std::uint32_t;

struct KgNode {
    std::string id;
    NodeType type;
    std::string text;
    std::vector<float> embedding;  // empty when absent
};

// One retrieved case: the expectation hub with one satellite of each other
// type, joined by the edges (str,exp), (exp,aff), (exp,resp).
struct CaseSubgraph {
    NodeIndex expectation;
    NodeIndex affective_state;
    NodeIndex stressor;
    NodeIndex response;
};

struct TypePairStats {
    // Symmetric edge counts indexed by (NodeType, NodeType).
    std::array<std::array<long long, kNodeTypeCount>, kNodeTypeCount> edges{};
    std::array<long long, kNodeTypeCount> nodes{};
};

class KnowledgeGraph {
public:
    // Nodes: JSON-lines, one object per line with id/type/text and an
    // optional embedding array. Edges: TSV id pairs, undirected. The five
    // allowed endpoint-type pairs are validated; anything else is rejected
    // with its line number.
    static KnowledgeGraph load(const std::filesystem::path& nodes_path,
                               const std::filesystem::path& edges_path);
    static KnowledgeGraph from_text(const std::string& nodes_jsonl,
                                    const std::string& edges_tsv);

    size_t node_count() const { return nodes_.size(); }
    const KgNode& node(NodeIndex i) const { return nodes_[i]; }
    std::optional<NodeIndex> find(const std::string& id) const;
    const std::vector<NodeIndex>& nodes_of_type(NodeType t) const {
        return by_type_[static_cast<int>(t)];
    }
    // Neighbors of `i` having type `t`, sorted by node id.
    const std::vector<NodeIndex>& neighbors(NodeIndex i, NodeType t) const {
        return adjacency_[i][static_cast<int>(t)];
    }
    bool has_edge(NodeIndex a, NodeIndex b) const;
    size_t edge_count() const { return edge_count_; }
    std::optional<size_t> embedding_dim() const { return embedding_dim_; }

    TypePairStats stats() const;

    // Exact number of hub-pattern subgraphs (closed form over expectations).
    unsigned long long subgraph_count() const;

    // Yields every hub-pattern quadruple once, ordered by the node ids of
    // (expectation, stressor, affective state, response). Returning false
    // from the visitor stops the enumeration.
    void enumerate_subgraphs(const std::function<bool(const CaseSubgraph&)>& visit) const;
    std::vector<CaseSubgraph> enumerate_subgraphs(
        std::optional<size_t> limit = std::nullopt) const;

    bool valid_case(const CaseSubgraph& s) const;

    // Mutation used by graph builders and tests; validates endpoint types.
    NodeIndex add_node(KgNode node);
    void add_edge(const std::string& a, const std::string& b);
    void finalize();  // sorts adjacency; call after the last add_edge

private:
    std::vector<KgNode> nodes_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<std::array<std::vector<NodeIndex>, kNodeTypeCount>> adjacency_;
    std::array<std::vector<NodeIndex>, kNodeTypeCount> by_type_;
    std::optional<size_t> embedding_dim_;
    size_t edge_count_ = 0;
};

// Table-layout CSV of per-type node counts and type-pair edge counts.
std::string stats_csv(const TypePairStats& s);

}  // namespace esckit

#endif
