// Acceptance gate: one criterion per line, PASS/FAIL/SKIP, nonzero exit on
// any FAIL. Heavy phases honor ACCEPT_FAST=1 for abbreviated development
// runs; the full defaults match the committed acceptance parameters.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "congraph/graph.hpp"
#include "congraph/lin_check.hpp"
#include "congraph/seq_graph.hpp"
#include "congraph/workload.hpp"
#include "corpus.hpp"

using namespace congraph;

namespace {

bool fast_mode() {
    const char* v = std::getenv("ACCEPT_FAST");
    return v != nullptr && std::strcmp(v, "0") != 0;
}

// Wall-clock bounds assume an uninstrumented build; sanitizers slow every
// memory access by an order of magnitude.
#if defined(__SANITIZE_ADDRESS__) || defined(__SANITIZE_THREAD__)
constexpr double kTimeScale = 20.0;
#elif defined(__has_feature)
#if __has_feature(address_sanitizer) || __has_feature(thread_sanitizer)
constexpr double kTimeScale = 20.0;
#else
constexpr double kTimeScale = 1.0;
#endif
#else
constexpr double kTimeScale = 1.0;
#endif

struct Outcome {
    enum Kind { Pass, Fail, Skip } kind = Fail;
    std::string detail;
};

// --------------------------------------------------------------------------
// 1. Linearizability: randomized recorded histories all linearizable, the
//    curated violation corpus all rejected.

Outcome criterion1() {
    const unsigned n_histories = fast_mode() ? 500 : 10000;
    unsigned not_lin = 0, budget = 0;
    History first_bad;
    for (unsigned i = 0; i < n_histories; ++i) {
        RecordConfig cfg;
        cfg.threads = 2 + i % 3;  // 2..4
        unsigned total_ops = 10 + i % 11;  // 10..20
        cfg.ops_per_thread = std::max(1u, total_ops / cfg.threads);
        cfg.key_lo = 1;
        cfg.key_hi = 6;
        cfg.scan_cap = 3;
        cfg.seed = 0x9000 + i;
        History h = record(cfg);
        CheckResult r = check_linearizable(h, 20'000'000);
        if (r.verdict == Verdict::NotLinearizable) {
            ++not_lin;
            if (first_bad.empty()) first_bad = h;
        } else if (r.verdict == Verdict::BudgetExceeded) {
            ++budget;
        }
    }
    unsigned corpus_wrong = 0;
    for (const auto& e : congraph_tests::corpus()) {
        History h = parse_history_string(e.text);
        CheckResult r = check_linearizable(h);
        bool lin = r.verdict == Verdict::Linearizable;
        if (r.verdict == Verdict::BudgetExceeded || lin != e.linearizable) {
            ++corpus_wrong;
        }
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%u histories: %u non-linearizable, %u budget-exceeded; "
                  "corpus: %u wrong of %zu",
                  n_histories, not_lin, budget, corpus_wrong,
                  congraph_tests::corpus().size());
    if (not_lin == 0 && budget == 0 && corpus_wrong == 0) {
        return {Outcome::Pass, buf};
    }
    if (!first_bad.empty()) {
        std::fprintf(stderr, "first non-linearizable history:\n%s",
                     serialize_history(first_bad).c_str());
    }
    return {Outcome::Fail, buf};
}

// --------------------------------------------------------------------------
// 2. Sequential equivalence: identical single-threaded outputs across the
//    lock-free engine, the coarse-lock engine, and the oracle.

Outcome criterion2() {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        RecordConfig cfg;
        cfg.ops_per_thread = 10000;
        cfg.key_lo = 1;
        cfg.key_hi = 64;
        cfg.with_getpath = true;
        cfg.seed = seed;
        auto lf = run_deterministic(Engine::LockFree, cfg);
        auto co = run_deterministic(Engine::Coarse, cfg);
        auto sq = run_deterministic(Engine::Sequential, cfg);
        for (std::size_t i = 0; i < lf.size(); ++i) {
            if (lf[i] != co[i] || lf[i] != sq[i]) {
                char buf[256];
                std::snprintf(buf, sizeof(buf),
                              "seed %llu diverges at op %zu: lockfree='%s' "
                              "coarse='%s' seq='%s'",
                              static_cast<unsigned long long>(seed), i,
                              lf[i].c_str(), co[i].c_str(), sq[i].c_str());
                return {Outcome::Fail, buf};
            }
        }
    }
    return {Outcome::Pass,
            "3 seeds x 10000 single-threaded ops identical on all engines"};
}

// --------------------------------------------------------------------------
// 3. Counter discipline: after an update-intensive stress, every surviving
//    source vertex's ecnt equals its attributable add/remove/purge count.
//    Edge sources live in a reserved key range that is never removed so the
//    per-key tallies attribute to exactly one vertex node.

Outcome criterion3() {
    const double seconds = fast_mode() ? 5.0 : 60.0;
    constexpr unsigned kThreads = 8;
    constexpr Key kSrcLo = 1, kSrcHi = 100;     // never removed
    constexpr Key kVolLo = 101, kVolHi = 200;   // vertex churn targets
    Graph g(kThreads + 1);
    auto main_h = g.attach();
    for (Key k = kSrcLo; k <= kVolHi; ++k) main_h.add_vertex(k);

    std::vector<std::map<Key, std::uint64_t>> tallies(kThreads);
    std::vector<std::thread> ts;
    auto weights = mix_weights(MixKind::Update, false);
    std::atomic<bool> stop{false};
    for (unsigned t = 0; t < kThreads; ++t) {
        ts.emplace_back([&, t] {
            auto h = g.attach();
            std::mt19937_64 rng(0xC3 + t);
            std::uniform_int_distribution<std::uint32_t> pick(0, 9999);
            std::uniform_int_distribution<Key> src(kSrcLo, kSrcHi);
            std::uniform_int_distribution<Key> vol(kVolLo, kVolHi);
            std::uniform_int_distribution<Key> any(kSrcLo, kVolHi);
            while (!stop.load(std::memory_order_relaxed)) {
                std::uint32_t r = pick(rng);
                std::uint32_t acc = 0;
                int kind = 0;
                for (; kind < 6; ++kind) {
                    acc += weights[static_cast<std::size_t>(kind)];
                    if (r < acc) break;
                }
                switch (static_cast<OpKind>(kind)) {
                    case OpKind::AddVertex: h.add_vertex(vol(rng)); break;
                    case OpKind::RemoveVertex: h.remove_vertex(vol(rng)); break;
                    case OpKind::ContainsVertex:
                        h.contains_vertex(any(rng));
                        break;
                    case OpKind::AddEdge:
                    case OpKind::RemoveEdge: {
                        Key a = src(rng);
                        Key b = any(rng);
                        if (a == b) break;
                        EdgeOutcome o = kind == 3 ? h.add_edge(a, b)
                                                  : h.remove_edge(a, b);
                        if (o == EdgeOutcome::EdgeAdded ||
                            o == EdgeOutcome::EdgeRemoved) {
                            ++tallies[t][a];
                        }
                        break;
                    }
                    default: {
                        Key a = any(rng);
                        Key b = any(rng);
                        if (a != b) h.contains_edge(a, b);
                        break;
                    }
                }
            }
        });
    }
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    stop.store(true);
    for (auto& t : ts) t.join();

    unsigned mismatches = 0;
    std::uint64_t total_mods = 0;
    for (Key k = kSrcLo; k <= kSrcHi; ++k) {
        std::uint64_t attributed = 0;
        for (auto& m : tallies) {
            auto it = m.find(k);
            if (it != m.end()) attributed += it->second;
        }
        auto c = main_h.vertex_counters(k);
        if (!c || c->modifications != attributed + c->purges) {
            ++mismatches;
            continue;
        }
        total_mods += c->modifications;
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%u threads, %.0f s: %llu modifications across %d source "
                  "vertices, %u counter mismatches",
                  kThreads, seconds,
                  static_cast<unsigned long long>(total_mods),
                  static_cast<int>(kSrcHi - kSrcLo + 1), mismatches);
    return {mismatches == 0 ? Outcome::Pass : Outcome::Fail, buf};
}

// --------------------------------------------------------------------------
// 4. Lookup purity and bounded lookup steps.

Outcome criterion4() {
    const double seconds = fast_mode() ? 2.0 : 10.0;
    constexpr unsigned kThreads = 4;
    Graph g(kThreads + 1);
    auto main_h = g.attach();
    for (Key k = 1; k <= 300; ++k) main_h.add_vertex(k);
    for (Key k = 1; k < 300; ++k) main_h.add_edge(k, k + 1);

    std::atomic<std::uint64_t> violations{0};
    std::atomic<bool> stop{false};
    std::vector<std::thread> ts;
    for (unsigned t = 0; t < kThreads; ++t) {
        ts.emplace_back([&, t] {
            auto h = g.attach();
            std::mt19937_64 rng(0xC4 + t);
            std::uniform_int_distribution<Key> key(1, 320);
            while (!stop.load(std::memory_order_relaxed)) {
                Key a = key(rng), b = key(rng);
                if (t == 0) {  // one modifier thread keeps the graph moving
                    if (rng() & 1) {
                        h.add_vertex(a);
                        if (a != b) h.add_edge(a, b);
                    } else {
                        if (a != b) h.remove_edge(a, b);
                        if ((rng() & 7) == 0) h.remove_vertex(a);
                    }
                    continue;
                }
                OpCounters before = op_counters();
                switch (rng() % 3) {
                    case 0: h.contains_vertex(a); break;
                    case 1:
                        if (a != b) h.contains_edge(a, b);
                        break;
                    default:
                        if (a != b) h.get_path_bounded(a, b, 4);
                        break;
                }
                OpCounters after = op_counters();
                if (after.cas_attempts != before.cas_attempts ||
                    after.faa_ops != before.faa_ops) {
                    violations.fetch_add(1);
                }
            }
        });
    }
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    stop.store(true);
    for (auto& t : ts) t.join();

    // Bounded steps with all modifiers paused: a lookup traverses at most
    // the vertex list plus one edge list plus a constant.
    main_h.purge();
    std::uint64_t n_vertices = main_h.vertex_keys().size();
    std::uint64_t worst_cv = 0, worst_ce = 0;
    for (Key k = 1; k <= 320; ++k) {
        reset_op_counters();
        main_h.contains_vertex(k);
        worst_cv = std::max(worst_cv, op_counters().traversal_steps);
        Key l = k == 1 ? 2 : 1;
        reset_op_counters();
        main_h.contains_edge(k, l);
        worst_ce = std::max(worst_ce, op_counters().traversal_steps);
    }
    std::uint64_t cv_bound = n_vertices + 2;
    std::uint64_t ce_bound = 2 * n_vertices + 16;  // two locates + one elist
    char buf[256];
    std::snprintf(
        buf, sizeof(buf),
        "%llu purity violations; worst contains_vertex %llu steps "
        "(bound %llu), worst contains_edge %llu steps (bound %llu)",
        static_cast<unsigned long long>(violations.load()),
        static_cast<unsigned long long>(worst_cv),
        static_cast<unsigned long long>(cv_bound),
        static_cast<unsigned long long>(worst_ce),
        static_cast<unsigned long long>(ce_bound));
    bool ok = violations.load() == 0 && worst_cv <= cv_bound &&
              worst_ce <= ce_bound;
    return {ok ? Outcome::Pass : Outcome::Fail, buf};
}

// --------------------------------------------------------------------------
// 5. Obstruction-freedom proxy: an adversary toggling one edge can defeat
//    the bounded search; once paused, the same query finishes in exactly
//    two collections within 10 ms.

Outcome criterion5() {
    const int attempts = fast_mode() ? 300 : 2000;
    constexpr Key kChain = 30000;
    Graph g(2);
    auto h = g.attach();
    // Descending insertion keeps the build linear; edges k -> k+1.
    for (Key k = kChain; k >= 1; --k) h.add_vertex(k);
    for (Key k = 1; k < kChain; ++k) h.add_edge(k, k + 1);

    std::atomic<bool> stop{false};
    std::atomic<bool> pause{false};
    std::atomic<bool> paused_ack{false};
    std::thread adversary([&] {
        auto a = g.attach();
        while (!stop.load(std::memory_order_relaxed)) {
            if (pause.load(std::memory_order_relaxed)) {
                paused_ack.store(true);
                std::this_thread::yield();
                continue;
            }
            // Toggling an edge off the query's root bumps the root's
            // modification counter, invalidating any in-flight collection
            // pair that straddles it.
            a.add_edge(1, 3);
            a.remove_edge(1, 3);
        }
    });

    int inconclusive = 0;
    int tried = 0;
    for (; tried < attempts; ++tried) {
        PathResult r = h.get_path_bounded(1, kChain, 2);
        if (r.status == PathStatus::Inconclusive) {
            ++inconclusive;
            break;
        }
    }

    pause.store(true);
    while (!paused_ack.load()) std::this_thread::yield();
    auto t0 = std::chrono::steady_clock::now();
    PathResult calm = h.get_path_bounded(1, kChain, 2);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    stop.store(true);
    adversary.join();

    double bound_ms = 10.0 * kTimeScale;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "starved after %d queries under toggling: %s; calm query: "
                  "%s in %u collections, %.2f ms (bound %.0f ms)",
                  tried + 1,
                  inconclusive > 0 ? "INCONCLUSIVE observed" : "never starved",
                  calm.found() ? "found" : "not-found", calm.collects, ms,
                  bound_ms);
    bool ok = inconclusive > 0 && calm.found() && calm.collects == 2 &&
              ms < bound_ms;
    return {ok ? Outcome::Pass : Outcome::Fail, buf};
}

// --------------------------------------------------------------------------
// 6. Adversary-counter defense: removing and re-adding an edge between two
//    collections restores the topology but must still be detected via the
//    counter snapshots, in every one of 1,000 staged trials.

Outcome criterion6() {
    Graph g(1);
    auto h = g.attach();
    for (Key k : {1, 2, 9}) h.add_vertex(k);
    h.add_edge(1, 2);
    int detected = 0;
    constexpr int kTrials = 1000;
    BfsTree a, b;
    for (int i = 0; i < kTrials; ++i) {
        bool fa = h.tree_collect(1, 9, a);
        h.remove_edge(1, 2);
        h.add_edge(1, 2);
        bool fb = h.tree_collect(1, 9, b);
        if (!fa && !fb && a.size() == b.size() &&
            !GraphHandle::compare_tree(a, b)) {
            ++detected;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "%d of %d identical-topology toggles detected by counter "
                  "mismatch",
                  detected, kTrials);
    return {detected == kTrials ? Outcome::Pass : Outcome::Fail, buf};
}

// --------------------------------------------------------------------------
// 7. Throughput: desk-scaled comparison against the coarse-lock baseline at
//    8 threads. Requires at least 8 hardware threads to be meaningful.

double avg_ops(Engine e, MixKind m, unsigned runs, double secs) {
    double total = 0;
    for (unsigned i = 0; i < runs; ++i) {
        WorkloadConfig cfg;
        cfg.engine = e;
        cfg.threads = 8;
        cfg.mix = m;
        cfg.duration_s = secs;
        cfg.seed = 77 + i;
        cfg.prefill_vertices = 1000;
        cfg.prefill_degree = 8;
        total += run_bench(cfg).ops_per_sec;
    }
    return total / runs;
}

Outcome criterion7() {
    unsigned hw = std::thread::hardware_concurrency();
    bool meaningful = hw >= 8;
    unsigned runs = meaningful ? 5 : 1;
    double secs = meaningful ? 5.0 : 2.0;
    if (fast_mode()) {
        runs = 1;
        secs = 0.5;
    }
    double worst = 1e9, balanced_ratio = 0;
    std::string detail;
    for (MixKind m : {MixKind::Lookup, MixKind::Balanced, MixKind::Update}) {
        double lf = avg_ops(Engine::LockFree, m, runs, secs);
        double co = avg_ops(Engine::Coarse, m, runs, secs);
        double ratio = co > 0 ? lf / co : 0;
        if (m == MixKind::Balanced) balanced_ratio = ratio;
        worst = std::min(worst, ratio);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s %.2fx ", to_string(m), ratio);
        detail += buf;
    }
    char buf[256];
    if (!meaningful) {
        std::snprintf(buf, sizeof(buf),
                      "only %u hardware threads (need >= 8); measured "
                      "oversubscribed anyway: %s",
                      hw, detail.c_str());
        return {Outcome::Skip, buf};
    }
    std::snprintf(buf, sizeof(buf),
                  "lockfree/coarse at 8 threads: %s(need balanced >= 2.0, "
                  "all >= 1.0)",
                  detail.c_str());
    bool ok = balanced_ratio >= 2.0 && worst >= 1.0;
    return {ok ? Outcome::Pass : Outcome::Fail, buf};
}

// --------------------------------------------------------------------------
// 8. Memory safety: an in-process stress (meaningful under sanitizer
//    builds) plus reclamation accounting — after global quiescence at least
//    99% of retired nodes must have been freed.

Outcome criterion8() {
    const double seconds = fast_mode() ? 2.0 : 8.0;
    constexpr unsigned kThreads = 4;
    std::uint64_t retired = 0, freed = 0;
    {
        Graph g(kThreads);
        std::atomic<bool> stop{false};
        std::vector<std::thread> ts;
        for (unsigned t = 0; t < kThreads; ++t) {
            ts.emplace_back([&, t] {
                auto h = g.attach();
                std::mt19937_64 rng(0xC8 + t);
                std::uniform_int_distribution<Key> key(1, 150);
                while (!stop.load(std::memory_order_relaxed)) {
                    Key a = key(rng), b = key(rng);
                    switch (rng() % 6) {
                        case 0: h.add_vertex(a); break;
                        case 1: h.remove_vertex(a); break;
                        case 2:
                            if (a != b) h.add_edge(a, b);
                            break;
                        case 3:
                            if (a != b) h.remove_edge(a, b);
                            break;
                        case 4:
                            if (a != b) h.get_path_bounded(a, b, 3);
                            break;
                        default:
                            h.contains_vertex(a);
                            if (a != b) h.contains_edge(a, b);
                            break;
                    }
                }
            });
        }
        std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
        stop.store(true);
        for (auto& t : ts) t.join();
        g.quiesce();
        ReclaimStats st = g.reclaim_stats();
        retired = st.retired;
        freed = st.freed;
    }
    double ratio = retired == 0 ? 1.0
                                : static_cast<double>(freed) /
                                      static_cast<double>(retired);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "stress clean; %llu retired, %llu freed after quiescence "
                  "(%.2f%%, need >= 99%%)",
                  static_cast<unsigned long long>(retired),
                  static_cast<unsigned long long>(freed), 100.0 * ratio);
    return {ratio >= 0.99 ? Outcome::Pass : Outcome::Fail, buf};
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "linearizability", criterion1},
        {2, "sequential equivalence", criterion2},
        {3, "counter discipline", criterion3},
        {4, "lookup purity and bounded steps", criterion4},
        {5, "obstruction-freedom proxy", criterion5},
        {6, "adversary counter defense", criterion6},
        {7, "throughput vs coarse lock", criterion7},
        {8, "memory safety and reclamation", criterion8},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        Outcome o = e.fn();
        const char* verdict = o.kind == Outcome::Pass   ? "PASS"
                              : o.kind == Outcome::Skip ? "SKIP"
                                                        : "FAIL";
        std::printf("criterion %d (%s): %s — %s\n", e.id, e.name, verdict,
                    o.detail.c_str());
        std::fflush(stdout);
        if (o.kind == Outcome::Fail) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
