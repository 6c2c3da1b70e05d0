#include <random>

#include <benchmark/benchmark.h>

#include "esckit/knowledge_graph.hpp"
#include "esckit/metrics.hpp"
#include "esckit/retrieval.hpp"
#include "esckit/snowball.hpp"
#include "esckit/text_pipeline.hpp"

using namespace esckit;

namespace {

std::vector<std::string> sample_words() {
    return {"frustrated", "dogs",      "generously", "communication", "exam",
            "running",    "happiness", "stressful",  "relationship",  "agreed",
            "sympathize", "apologies", "tiredness",  "skies",         "vet"};
}

void BM_Stemmer(benchmark::State& state) {
    std::vector<std::string> words = sample_words();
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(snowball::stem_english(words[i % words.size()]));
        ++i;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Stemmer);

Dialogue bench_dialogue() {
    std::mt19937 rng(5);
    std::vector<std::string> words = sample_words();
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    Dialogue d;
    d.id = "bench";
    for (int i = 0; i < 24; ++i) {
        Utterance u;
        u.index = i;
        u.role = i % 2 ? SpeakerRole::System : SpeakerRole::User;
        u.initiative = i % 3 ? InitiativeType::Initiative : InitiativeType::NonInitiative;
        if (u.role == SpeakerRole::User) u.intensity = EmotionIntensity{1 + i % 5};
        for (int w = 0; w < 12; ++w) {
            if (!u.text.empty()) u.text += ' ';
            u.text += words[pick(rng)];
        }
        d.utterances.push_back(std::move(u));
    }
    return d;
}

void BM_DialogueMetrics(benchmark::State& state) {
    Dialogue d = bench_dialogue();
    const Stopwords& sw = Stopwords::builtin();
    for (auto _ : state) {
        DialogueTerms t = build_vocabulary(d, sw);
        benchmark::DoNotOptimize(information(d, t));
        benchmark::DoNotOptimize(repetition(d, t));
        benchmark::DoNotOptimize(relaxation(d));
        benchmark::DoNotOptimize(proactivity(d));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DialogueMetrics);

KnowledgeGraph bench_graph(int exps, int sat) {
    std::mt19937 rng(7);
    std::normal_distribution<float> gauss(0.f, 1.f);
    auto vec = [&] {
        std::vector<float> v(128);
        for (float& x : v) x = gauss(rng);
        return v;
    };
    KnowledgeGraph g;
    for (int e = 0; e < exps; ++e) {
        std::string eid = "e" + std::to_string(e);
        g.add_node({eid, NodeType::Expectation, "", vec()});
        for (int s = 0; s < sat; ++s) {
            std::string id = eid + "s" + std::to_string(s);
            g.add_node({id, NodeType::Stressor, "", vec()});
            g.add_edge(id, eid);
            id = eid + "a" + std::to_string(s);
            g.add_node({id, NodeType::AffectiveState, "", vec()});
            g.add_edge(eid, id);
            id = eid + "r" + std::to_string(s);
            g.add_node({id, NodeType::Response, "", vec()});
            g.add_edge(eid, id);
        }
    }
    g.finalize();
    return g;
}

void BM_RetrieveQuery(benchmark::State& state) {
    KnowledgeGraph g = bench_graph(static_cast<int>(state.range(0)), 13);
    QueryGraph q = build_query_graph(
        "u", {{CommonsenseRelation::XReact, "xr"},
              {CommonsenseRelation::XIntent, "xi"},
              {CommonsenseRelation::XWant, "xw"}});
    EmbeddingCosineProvider f;
    f.set_query_embedding(*q.slot_description(NodeType::Expectation),
                          g.node(*g.find("e0")).embedding);
    f.set_query_embedding(*q.slot_description(NodeType::AffectiveState),
                          g.node(*g.find("e0a1")).embedding);
    f.set_query_embedding(*q.slot_description(NodeType::Stressor),
                          g.node(*g.find("e0s1")).embedding);
    f.set_query_embedding(*q.slot_description(NodeType::Response),
                          g.node(*g.find("e0r1")).embedding);
    RetrievalConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(retrieve(q, g, f, cfg));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RetrieveQuery)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
