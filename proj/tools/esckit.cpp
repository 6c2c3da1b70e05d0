#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "esckit/corpus_io.hpp"
#include "esckit/errors.hpp"
#include "esckit/flow.hpp"
#include "esckit/knowledge_graph.hpp"
#include "esckit/metrics.hpp"
#include "esckit/report.hpp"
#include "esckit/retrieval.hpp"
#include "esckit/seq_format.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonPaths {
    std::string stopwords, greetings, farewells;
};

esckit::Stopwords resolve_stopwords(const CommonPaths& p) {
    return p.stopwords.empty() ? esckit::Stopwords::builtin()
                               : esckit::Stopwords::load(p.stopwords);
}

esckit::Lexicon resolve_greetings(const CommonPaths& p) {
    return p.greetings.empty() ? esckit::Lexicon::builtin_greetings()
                               : esckit::Lexicon::load(p.greetings);
}

esckit::Lexicon resolve_farewells(const CommonPaths& p) {
    return p.farewells.empty() ? esckit::Lexicon::builtin_farewells()
                               : esckit::Lexicon::load(p.farewells);
}

void write_file(const fs::path& path, const std::string& content, bool force) {
    if (!force && fs::exists(path))
        throw esckit::Error("refusing to overwrite " + path.string() +
                            " without --force");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw esckit::Error("cannot write " + path.string());
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw esckit::Error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_analyze(const std::string& corpus_path, const std::string& format_id,
                const std::string& out_dir, const std::string& report_format,
                const CommonPaths& paths, bool force) {
    esckit::Corpus corpus = esckit::load_corpus(
        corpus_path, esckit::corpus_format_from_string(format_id));
    esckit::Stopwords sw = resolve_stopwords(paths);
    esckit::Lexicon greetings = resolve_greetings(paths);
    esckit::Lexicon farewells = resolve_farewells(paths);

    esckit::CorpusReport report = esckit::corpus_report(corpus, sw);
    esckit::TransitionMatrix matrix =
        esckit::transition_matrix(corpus, greetings, farewells);
    esckit::ProgressProfile profile =
        esckit::progress_profile(corpus, greetings, farewells);

    fs::create_directories(out_dir);
    fs::path out(out_dir);
    write_file(out / "metrics.json", esckit::report_json(report), force);
    write_file(out / "metrics.csv", esckit::report_csv(report), force);
    write_file(out / "flow.json", esckit::transition_matrix_json(matrix), force);
    write_file(out / "flow.dot", esckit::transition_matrix_dot(matrix), force);
    write_file(out / "progress.json", esckit::progress_profile_json(profile), force);
    write_file(out / "progress_phases.csv", esckit::progress_profile_csv(profile),
               force);
    write_file(out / "transitions.csv", esckit::transitions_csv(matrix), force);

    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
    for (const std::string& e : report.errors) std::cerr << "warning: " << e << '\n';
    std::cout << (report_format == "csv" ? esckit::report_csv(report)
                                         : esckit::report_json(report))
              << '\n';
    return 0;
}

int run_index(const std::string& nodes, const std::string& edges,
              const std::string& out_dir, bool force) {
    esckit::KnowledgeGraph g = esckit::KnowledgeGraph::load(nodes, edges);
    std::string csv = esckit::stats_csv(g.stats());
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "graph_stats.csv", csv, force);
    }
    std::cout << csv;
    std::cerr << "nodes: " << g.node_count() << ", edges: " << g.edge_count()
              << ", case subgraphs: " << g.subgraph_count() << '\n';
    return 0;
}

esckit::QueryGraph load_query(const fs::path& path) {
    json j = json::parse(read_file(path));
    if (!j.contains("utterance"))
        throw esckit::Error("query file must contain 'utterance'");
    std::map<esckit::CommonsenseRelation, std::string> expansions;
    for (auto& [key, value] : j.items()) {
        if (key == "utterance") continue;
        auto rel = esckit::relation_from_string(key);
        if (!rel) throw esckit::Error("query file: unknown field '" + key + "'");
        if (!value.is_null()) expansions[*rel] = value.get<std::string>();
    }
    return esckit::build_query_graph(j["utterance"].get<std::string>(), expansions);
}

int run_retrieve(const std::string& query_path, const std::string& nodes,
                 const std::string& edges, int k, int n, bool oracle,
                 const std::string& embeddings_path, const std::string& out_path,
                 bool force) {
    esckit::KnowledgeGraph g = esckit::KnowledgeGraph::load(nodes, edges);
    esckit::QueryGraph q = load_query(query_path);

    std::unique_ptr<esckit::SimilarityProvider> provider;
    if (!embeddings_path.empty()) {
        json j = json::parse(read_file(embeddings_path));
        auto p = std::make_unique<esckit::EmbeddingCosineProvider>();
        auto bind = [&](const char* key, esckit::NodeType t) {
            if (!j.contains(key)) return;
            auto desc = q.slot_description(t);
            if (desc) p->set_query_embedding(*desc, j[key].get<std::vector<float>>());
        };
        bind("expectation", esckit::NodeType::Expectation);
        bind("affective_state", esckit::NodeType::AffectiveState);
        bind("stressor", esckit::NodeType::Stressor);
        bind("response", esckit::NodeType::Response);
        provider = std::move(p);
    } else {
        provider = std::make_unique<esckit::LexicalDiceProvider>();
    }

    esckit::RetrievalResult result;
    if (oracle) {
        result = esckit::brute_force_retrieve(q, g, *provider, n);
    } else {
        esckit::RetrievalConfig cfg;
        cfg.k_per_type = k;
        cfg.n_subgraphs = n;
        result = esckit::retrieve(q, g, *provider, cfg);
    }
    if (!result.diagnostic.empty())
        std::cerr << "note: " << result.diagnostic << '\n';
    std::string out = esckit::results_json(result, g);
    if (!out_path.empty())
        write_file(out_path, out + "\n", force);
    else
        std::cout << out << '\n';
    return 0;
}

esckit::KnowledgePayload payload_from_result_json(const json& jr,
                                                  const esckit::QueryGraph& q) {
    esckit::KnowledgePayload k;
    k.expansions = q.expansions;
    const json& nodes = jr.at("nodes");
    auto get = [&](const char* key) -> std::optional<std::string> {
        if (!nodes.contains(key)) return std::nullopt;
        return nodes[key].at("text").get<std::string>();
    };
    k.expectation = get("expectation");
    k.affective_state = get("affective_state");
    k.stressor = get("stressor");
    k.response = get("response");
    return k;
}

int run_format(const std::string& corpus_path, const std::string& format_id,
               const std::string& dialogue_id, int turn,
               const std::string& query_path, const std::string& results_path,
               int budget, const std::string& out_dir, bool force) {
    esckit::Corpus corpus = esckit::load_corpus(
        corpus_path, esckit::corpus_format_from_string(format_id));
    const esckit::Dialogue* d = nullptr;
    if (dialogue_id.empty()) {
        if (corpus.dialogues.empty()) throw esckit::Error("corpus is empty");
        d = &corpus.dialogues.front();
    } else {
        for (const esckit::Dialogue& cand : corpus.dialogues)
            if (cand.id == dialogue_id) d = &cand;
        if (!d) throw esckit::Error("dialogue '" + dialogue_id + "' not found");
    }
    // Default target: the last utterance; context is everything before it.
    int target = turn >= 0 ? turn : static_cast<int>(d->utterances.size()) - 1;
    if (target <= 0 || target >= static_cast<int>(d->utterances.size()))
        throw esckit::Error("target utterance index out of range");

    std::vector<esckit::KnowledgePayload> knowledge;
    if (!query_path.empty() && !results_path.empty()) {
        esckit::QueryGraph q = load_query(query_path);
        json jr = json::parse(read_file(results_path));
        for (const json& one : jr.at("results"))
            knowledge.push_back(payload_from_result_json(one, q));
    }

    esckit::EncodeOptions opts;
    opts.token_budget = budget;
    esckit::EncodedInput x = esckit::encode_input(*d, target, knowledge, opts);
    const esckit::Utterance& tgt = d->utterances[target];
    std::string y = esckit::encode_output(tgt.strategy.value_or(""), tgt.text);

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "input.txt", x.text + "\n", force);
    write_file(fs::path(out_dir) / "output.txt", y + "\n", force);
    if (x.dropped_utterances > 0)
        std::cerr << "note: dropped " << x.dropped_utterances
                  << " oldest context utterances to fit the budget\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Emotional-support conversation analytics and case-knowledge retrieval"};
    app.require_subcommand(1);

    CommonPaths paths;
    bool force = false;

    auto* analyze = app.add_subcommand("analyze", "Compute metrics, flow and progress reports");
    analyze->add_flag("--force", force, "Overwrite existing output files");
    std::string corpus_path, corpus_format = "native", out_dir = "analysis",
                report_format = "json";
    analyze->add_option("--corpus", corpus_path, "Corpus JSON file")->required();
    analyze->add_option("--corpus-format", corpus_format, "native or esconv");
    analyze->add_option("--out", out_dir, "Output directory");
    analyze->add_option("--format", report_format, "Report echo format")
        ->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("--stopwords", paths.stopwords, "Stopword list file");
    analyze->add_option("--greetings", paths.greetings, "Greeting lexicon file");
    analyze->add_option("--farewells", paths.farewells, "Farewell lexicon file");

    auto* index = app.add_subcommand("index", "Validate a knowledge graph and emit statistics");
    index->add_flag("--force", force, "Overwrite existing output files");
    std::string nodes_path, edges_path, index_out;
    index->add_option("--nodes", nodes_path, "Node JSONL file")->required();
    index->add_option("--edges", edges_path, "Edge TSV file")->required();
    index->add_option("--out", index_out, "Output directory for graph_stats.csv");

    auto* retrieve = app.add_subcommand("retrieve", "Retrieve top-N case subgraphs for a query");
    retrieve->add_flag("--force", force, "Overwrite existing output files");
    std::string query_path, embeddings_path, results_out;
    int k = 10, n = 1;
    bool oracle = false;
    retrieve->add_option("--query", query_path, "Query JSON file")->required();
    retrieve->add_option("--nodes", nodes_path, "Node JSONL file")->required();
    retrieve->add_option("--edges", edges_path, "Edge TSV file")->required();
    retrieve->add_option("--k", k, "Top-K nodes per slot");
    retrieve->add_option("--n", n, "Top-N subgraphs");
    retrieve->add_flag("--oracle", oracle, "Exhaustive brute-force ranking");
    retrieve->add_option("--query-embeddings", embeddings_path,
                         "JSON sidecar: slot name to embedding vector");
    retrieve->add_option("--out", results_out, "Results JSON path (default stdout)");

    auto* format = app.add_subcommand("format", "Emit linearized X/Y sequences for a dialogue turn");
    format->add_flag("--force", force, "Overwrite existing output files");
    std::string dialogue_id, format_query, format_results, format_out = "formatted";
    int turn = -1, budget = 160;
    format->add_option("--corpus", corpus_path, "Corpus JSON file")->required();
    format->add_option("--corpus-format", corpus_format, "native or esconv");
    format->add_option("--dialogue", dialogue_id, "Dialogue id (default: first)");
    format->add_option("--turn", turn, "Target utterance index (default: last)");
    format->add_option("--query", format_query, "Query JSON used for retrieval");
    format->add_option("--results", format_results, "Retrieval results JSON");
    format->add_option("--budget", budget, "Input token budget");
    format->add_option("--out", format_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze)
            return run_analyze(corpus_path, corpus_format, out_dir, report_format,
                               paths, force);
        if (*index) return run_index(nodes_path, edges_path, index_out, force);
        if (*retrieve)
            return run_retrieve(query_path, nodes_path, edges_path, k, n, oracle,
                                embeddings_path, results_out, force);
        if (*format)
            return run_format(corpus_path, corpus_format, dialogue_id, turn,
                              format_query, format_results, budget, format_out,
                              force);
    } catch (const esckit::Error& e) {
        std::cerr << json{{"errors", {e.what()}}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"errors", {e.what()}}}.dump() << '\n';
        return 2;
    }
    return 0;
}
