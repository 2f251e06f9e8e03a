// Serial vs OpenMP forward-kernel comparison on a synthetic document.
// Run with --benchmark_filter=... to narrow; both variants compute
// bitwise-identical results (asserted in tests/test_kernels.cpp).

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "coref/kernels.hpp"
#include "coref/scorer.hpp"
#include "coref/spans.hpp"
#include "coref/types.hpp"

namespace {

using namespace coref;

struct Fixture {
    ParameterSet params;
    Document doc;
    std::vector<int> token_ids;
    std::vector<double> x, alpha, g, sm;
    std::vector<Span> spans;
    std::vector<int> kept;

    explicit Fixture(int n_tokens) {
        ModelConfig cfg;
        cfg.dim = 16;
        cfg.hidden = 32;
        cfg.vocab = 1024;
        cfg.max_segment = 64;
        cfg.max_span_length = 10;
        cfg.seed = 9;
        params = init_parameters(cfg);

        std::mt19937_64 rng(9);
        std::uniform_int_distribution<int> word(0, 499), slen(6, 14);
        int t = 0, s = 0;
        while (t < n_tokens) {
            int len = std::min(slen(rng), n_tokens - t);
            int start = t;
            for (int k = 0; k < len; ++k, ++t)
                doc.tokens.push_back({"w" + std::to_string(word(rng)), s, false});
            doc.sentence_boundaries.emplace_back(start, t);
            doc.speakers.push_back("spk");
            ++s;
        }
        doc.doc_key = "bench_0";

        token_ids = kernels::hash_tokens(doc, cfg.vocab);
        x = kernels::serial::encode(params, token_ids);
        alpha = kernels::serial::attention_scores(params, x, n_tokens);
        spans = enumerate_spans(doc, cfg.max_span_length);
        g = kernels::serial::span_representations(x, alpha, spans, cfg.dim);
        sm = kernels::serial::mention_scores(params, g, static_cast<int>(spans.size()));
        kept = prune_top_spans(sm, n_tokens, cfg.prune_ratio);
    }
};

Fixture& fixture(int n) {
    static Fixture small(128), large(1024);
    return n <= 128 ? small : large;
}

template <bool Parallel>
void bench_encode(benchmark::State& state) {
    Fixture& f = fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto out = Parallel ? kernels::omp::encode(f.params, f.token_ids)
                            : kernels::serial::encode(f.params, f.token_ids);
        benchmark::DoNotOptimize(out);
    }
}

template <bool Parallel>
void bench_attention(benchmark::State& state) {
    Fixture& f = fixture(static_cast<int>(state.range(0)));
    int n = f.doc.num_tokens();
    for (auto _ : state) {
        auto out = Parallel ? kernels::omp::attention_scores(f.params, f.x, n)
                            : kernels::serial::attention_scores(f.params, f.x, n);
        benchmark::DoNotOptimize(out);
    }
}

template <bool Parallel>
void bench_span_reps(benchmark::State& state) {
    Fixture& f = fixture(static_cast<int>(state.range(0)));
    int dim = f.params.config.dim;
    for (auto _ : state) {
        auto out = Parallel
                       ? kernels::omp::span_representations(f.x, f.alpha, f.spans, dim)
                       : kernels::serial::span_representations(f.x, f.alpha, f.spans, dim);
        benchmark::DoNotOptimize(out);
    }
}

template <bool Parallel>
void bench_mention_scores(benchmark::State& state) {
    Fixture& f = fixture(static_cast<int>(state.range(0)));
    int num_spans = static_cast<int>(f.spans.size());
    for (auto _ : state) {
        auto out = Parallel ? kernels::omp::mention_scores(f.params, f.g, num_spans)
                            : kernels::serial::mention_scores(f.params, f.g, num_spans);
        benchmark::DoNotOptimize(out);
    }
}

template <bool Parallel>
void bench_antecedent_scores(benchmark::State& state) {
    Fixture& f = fixture(static_cast<int>(state.range(0)));
    int cap = f.params.config.max_antecedents;
    for (auto _ : state) {
        auto out = Parallel
                       ? kernels::omp::antecedent_scores(f.params, f.g, f.kept, f.sm, cap)
                       : kernels::serial::antecedent_scores(f.params, f.g, f.kept, f.sm, cap);
        benchmark::DoNotOptimize(out);
    }
}

#define BENCH_PAIR(fn)                                             \
    BENCHMARK(fn<false>)->Name(#fn "/serial")->Arg(128)->Arg(1024); \
    BENCHMARK(fn<true>)->Name(#fn "/omp")->Arg(128)->Arg(1024)

BENCH_PAIR(bench_encode);
BENCH_PAIR(bench_attention);
BENCH_PAIR(bench_span_reps);
BENCH_PAIR(bench_mention_scores);
BENCH_PAIR(bench_antecedent_scores);

#undef BENCH_PAIR

}  // namespace

BENCHMARK_MAIN();
