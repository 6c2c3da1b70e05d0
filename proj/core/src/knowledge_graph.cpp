#include "esckit/knowledge_graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "esckit/errors.hpp"

namespace esckit {

using nlohmann::json;

const char* to_string(NodeType t) {
    switch (t) {
        case NodeType::Expectation: return "expectation";
        case NodeType::AffectiveState: return "affective_state";
        case NodeType::Stressor: return "stressor";
        case NodeType::Response: return "response";
    }
    return "?";
}

std::optional<NodeType> node_type_from_string(const std::string& s) {
    if (s == "expectation") return NodeType::Expectation;
    if (s == "affective_state" || s == "affective state" || s == "affect")
        return NodeType::AffectiveState;
    if (s == "stressor") return NodeType::Stressor;
    if (s == "response") return NodeType::Response;
    return std::nullopt;
}

namespace {

// The endpoint-type pairs that occur in the graph; every other pair is
// rejected at load time.
bool pair_allowed(NodeType a, NodeType b) {
    auto key = [](NodeType x, NodeType y) {
        return static_cast<int>(x) * kNodeTypeCount + static_cast<int>(y);
    };
    static const std::unordered_set<int> allowed = [] {
        std::unordered_set<int> s;
        auto put = [&s](NodeType x, NodeType y) {
            s.insert(static_cast<int>(x) * kNodeTypeCount + static_cast<int>(y));
            s.insert(static_cast<int>(y) * kNodeTypeCount + static_cast<int>(x));
        };
        put(NodeType::Stressor, NodeType::Stressor);
        put(NodeType::Stressor, NodeType::Expectation);
        put(NodeType::Expectation, NodeType::Expectation);
        put(NodeType::Expectation, NodeType::Response);
        put(NodeType::Expectation, NodeType::AffectiveState);
        put(NodeType::Response, NodeType::Response);
        return s;
    }();
    return allowed.count(key(a, b)) > 0;
}

}  // namespace

std::optional<NodeIndex> KnowledgeGraph::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeIndex KnowledgeGraph::add_node(KgNode node) {
    if (index_.count(node.id))
        throw Error("knowledge graph: duplicate node id '" + node.id + "'");
    if (!node.embedding.empty()) {
        if (embedding_dim_ && *embedding_dim_ != node.embedding.size())
            throw Error("knowledge graph: node '" + node.id +
                        "' embedding dimension " +
                        std::to_string(node.embedding.size()) +
                        " differs from " + std::to_string(*embedding_dim_));
        embedding_dim_ = node.embedding.size();
    }
    NodeIndex idx = static_cast<NodeIndex>(nodes_.size());
    index_.emplace(node.id, idx);
    by_type_[static_cast<int>(node.type)].push_back(idx);
    nodes_.push_back(std::move(node));
    adjacency_.emplace_back();
    return idx;
}

void KnowledgeGraph::add_edge(const std::string& a, const std::string& b) {
    auto ia = find(a), ib = find(b);
    if (!ia) throw Error("knowledge graph: edge endpoint '" + a + "' does not exist");
    if (!ib) throw Error("knowledge graph: edge endpoint '" + b + "' does not exist");
    NodeType ta = nodes_[*ia].type, tb = nodes_[*ib].type;
    if (!pair_allowed(ta, tb))
        throw Error(std::string("knowledge graph: edge type pair (") +
                    to_string(ta) + ", " + to_string(tb) + ") is not allowed");
    adjacency_[*ia][static_cast<int>(tb)].push_back(*ib);
    if (*ia != *ib) adjacency_[*ib][static_cast<int>(ta)].push_back(*ia);
    ++edge_count_;
}

void KnowledgeGraph::finalize() {
    auto by_id = [this](NodeIndex x, NodeIndex y) {
        return nodes_[x].id < nodes_[y].id;
    };
    for (auto& per_type : adjacency_)
        for (auto& bucket : per_type) {
            std::sort(bucket.begin(), bucket.end(), by_id);
            bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
        }
    for (auto& bucket : by_type_) std::sort(bucket.begin(), bucket.end(), by_id);
}

bool KnowledgeGraph::has_edge(NodeIndex a, NodeIndex b) const {
    const auto& bucket = adjacency_[a][static_cast<int>(nodes_[b].type)];
    return std::find(bucket.begin(), bucket.end(), b) != bucket.end();
}

KnowledgeGraph KnowledgeGraph::from_text(const std::string& nodes_jsonl,
                                         const std::string& edges_tsv) {
    KnowledgeGraph g;
    {
        std::istringstream in(nodes_jsonl);
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::parse_error& e) {
                throw Error("node file line " + std::to_string(lineno) +
                            ": JSON parse error: " + e.what());
            }
            KgNode node;
            if (!j.contains("id") || !j.contains("type"))
                throw Error("node file line " + std::to_string(lineno) +
                            ": missing 'id' or 'type'");
            node.id = j["id"].get<std::string>();
            std::string type_str = j["type"].get<std::string>();
            auto type = node_type_from_string(type_str);
            if (!type) {
                if (type_str == "feedback")
                    throw Error("node file line " + std::to_string(lineno) +
                                ": node type 'feedback' is not supported; only "
                                "expectation, affective_state, stressor and "
                                "response nodes are used");
                throw Error("node file line " + std::to_string(lineno) +
                            ": unknown node type '" + type_str + "'");
            }
            node.type = *type;
            if (j.contains("text")) node.text = j["text"].get<std::string>();
            if (j.contains("embedding"))
                node.embedding = j["embedding"].get<std::vector<float>>();
            try {
                g.add_node(std::move(node));
            } catch (const Error& e) {
                throw Error("node file line " + std::to_string(lineno) + ": " +
                            e.what());
            }
        }
    }
    {
        std::istringstream in(edges_tsv);
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw Error("edge file line " + std::to_string(lineno) +
                            ": expected two tab-separated node ids");
            try {
                g.add_edge(line.substr(0, tab), line.substr(tab + 1));
            } catch (const Error& e) {
                throw Error("edge file line " + std::to_string(lineno) + ": " +
                            e.what());
            }
        }
    }
    g.finalize();
    return g;
}

KnowledgeGraph KnowledgeGraph::load(const std::filesystem::path& nodes_path,
                                    const std::filesystem::path& edges_path) {
    std::ifstream nodes_in(nodes_path);
    if (!nodes_in) throw Error("cannot open node file: " + nodes_path.string());
    std::ifstream edges_in(edges_path);
    if (!edges_in) throw Error("cannot open edge file: " + edges_path.string());
    std::ostringstream nodes_buf, edges_buf;
    nodes_buf << nodes_in.rdbuf();
    edges_buf << edges_in.rdbuf();
    return from_text(nodes_buf.str(), edges_buf.str());
}

TypePairStats KnowledgeGraph::stats() const {
    TypePairStats s;
    for (int t = 0; t < kNodeTypeCount; ++t)
        s.nodes[t] = static_cast<long long>(by_type_[t].size());
    for (NodeIndex i = 0; i < nodes_.size(); ++i) {
        int ti = static_cast<int>(nodes_[i].type);
        for (int tj = 0; tj < kNodeTypeCount; ++tj) {
            for (NodeIndex j : adjacency_[i][tj]) {
                if (i == j) {
                    s.edges[ti][tj] += 2;  // self loop counted once below
                } else {
                    s.edges[ti][tj] += 1;
                }
            }
        }
    }
    // Each undirected edge was stored twice (once per endpoint); report it once.
    for (int a = 0; a < kNodeTypeCount; ++a)
        for (int b = 0; b < kNodeTypeCount; ++b)
            if (a == b) s.edges[a][b] /= 2;
    return s;
}

unsigned long long KnowledgeGraph::subgraph_count() const {
    unsigned long long total = 0;
    for (NodeIndex e : by_type_[static_cast<int>(NodeType::Expectation)]) {
        total += static_cast<unsigned long long>(
                     neighbors(e, NodeType::Stressor).size()) *
                 neighbors(e, NodeType::AffectiveState).size() *
                 neighbors(e, NodeType::Response).size();
    }
    return total;
}

void KnowledgeGraph::enumerate_subgraphs(
    const std::function<bool(const CaseSubgraph&)>& visit) const {
    for (NodeIndex e : by_type_[static_cast<int>(NodeType::Expectation)]) {
        for (NodeIndex str : neighbors(e, NodeType::Stressor))
            for (NodeIndex aff : neighbors(e, NodeType::AffectiveState))
                for (NodeIndex resp : neighbors(e, NodeType::Response))
                    if (!visit(CaseSubgraph{e, aff, str, resp})) return;
    }
}

std::vector<CaseSubgraph> KnowledgeGraph::enumerate_subgraphs(
    std::optional<size_t> limit) const {
    std::vector<CaseSubgraph> out;
    enumerate_subgraphs([&](const CaseSubgraph& s) {
        out.push_back(s);
        return !limit || out.size() < *limit;
    });
    return out;
}

bool KnowledgeGraph::valid_case(const CaseSubgraph& s) const {
    return nodes_[s.expectation].type == NodeType::Expectation &&
           nodes_[s.affective_state].type == NodeType::AffectiveState &&
           nodes_[s.stressor].type == NodeType::Stressor &&
           nodes_[s.response].type == NodeType::Response &&
           has_edge(s.stressor, s.expectation) &&
           has_edge(s.expectation, s.affective_state) &&
           has_edge(s.expectation, s.response);
}

std::string stats_csv(const TypePairStats& s) {
    // Same row/column layout as the validation table: the diagonal carries
    // node counts, off-diagonal cells carry edge counts, dashes mark
    // disallowed pairs.
    static const NodeType order[] = {NodeType::Stressor, NodeType::Expectation,
                                     NodeType::Response, NodeType::AffectiveState};
    std::ostringstream os;
    os << "type";
    for (NodeType t : order) os << ',' << to_string(t);
    os << '\n';
    for (NodeType a : order) {
        os << to_string(a);
        for (NodeType b : order) {
            os << ',';
            if (a == b)
                os << s.nodes[static_cast<int>(a)];
            else if (pair_allowed(a, b))
                os << s.edges[static_cast<int>(a)][static_cast<int>(b)];
            else
                os << '-';
        }
        os << '\n';
    }
    // The matrix diagonal carries node counts; same-type edge totals go on
    // their own rows so nothing is lost.
    for (NodeType t : {NodeType::Stressor, NodeType::Expectation, NodeType::Response})
        os << "same_type_edges_" << to_string(t) << ','
           << s.edges[static_cast<int>(t)][static_cast<int>(t)] << ",,,\n";
    return os.str();
}

}  // namespace esckit
