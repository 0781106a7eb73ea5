#include "congraph/workload.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "congraph/seq_graph.hpp"

namespace congraph {

const char* to_string(Engine e) {
    switch (e) {
        case Engine::LockFree: return "lockfree";
        case Engine::Coarse: return "coarse";
        case Engine::Sequential: return "seq";
    }
    return "?";
}

const char* to_string(MixKind m) {
    switch (m) {
        case MixKind::Lookup: return "lookup";
        case MixKind::Balanced: return "balanced";
        case MixKind::Update: return "update";
    }
    return "?";
}

std::optional<Engine> engine_from_string(const std::string& s) {
    if (s == "lockfree") return Engine::LockFree;
    if (s == "coarse") return Engine::Coarse;
    if (s == "seq") return Engine::Sequential;
    return std::nullopt;
}

std::optional<MixKind> mix_from_string(const std::string& s) {
    if (s == "lookup") return MixKind::Lookup;
    if (s == "balanced") return MixKind::Balanced;
    if (s == "update") return MixKind::Update;
    return std::nullopt;
}

std::array<std::uint32_t, 7> mix_weights(MixKind mix, bool with_getpath) {
    std::uint32_t lookup_share = 0;
    switch (mix) {
        case MixKind::Lookup: lookup_share = 9000; break;
        case MixKind::Balanced: lookup_share = 5000; break;
        case MixKind::Update: lookup_share = 1000; break;
    }
    std::uint32_t update_share = 10000 - lookup_share;
    if (with_getpath) {
        // Reassign 10 percentage points to get_path, scaling the rest.
        lookup_share = lookup_share * 9 / 10;
        update_share = update_share * 9 / 10;
    }
    std::uint32_t per_lookup = lookup_share / 2;
    std::uint32_t per_update = update_share / 4;
    std::array<std::uint32_t, 7> w{};
    w[static_cast<int>(OpKind::AddVertex)] = per_update;
    w[static_cast<int>(OpKind::RemoveVertex)] = per_update;
    w[static_cast<int>(OpKind::ContainsVertex)] = per_lookup;
    w[static_cast<int>(OpKind::AddEdge)] = per_update;
    w[static_cast<int>(OpKind::RemoveEdge)] = per_update;
    w[static_cast<int>(OpKind::ContainsEdge)] = per_lookup;
    w[static_cast<int>(OpKind::GetPath)] = with_getpath ? 1000 : 0;
    return w;
}

// ---------------------------------------------------------------------------
// Sessions

namespace {

class LockFreeSession final : public Session {
public:
    explicit LockFreeSession(Graph* g) : h_(g->attach()) {}

    bool add_vertex(Key k) override { return h_.add_vertex(k); }
    bool remove_vertex(Key k) override { return h_.remove_vertex(k); }
    bool contains_vertex(Key k) override { return h_.contains_vertex(k); }
    EdgeOutcome add_edge(Key k, Key l) override { return h_.add_edge(k, l); }
    EdgeOutcome remove_edge(Key k, Key l) override {
        return h_.remove_edge(k, l);
    }
    EdgeOutcome contains_edge(Key k, Key l) override {
        return h_.contains_edge(k, l);
    }
    std::optional<std::vector<Key>> get_path(Key k, Key l,
                                             std::uint32_t scan_cap,
                                             bool& inconclusive) override {
        inconclusive = false;
        PathResult r = scan_cap == 0 ? h_.get_path(k, l)
                                     : h_.get_path_bounded(k, l, scan_cap);
        if (r.status == PathStatus::Inconclusive) {
            inconclusive = true;
            return std::nullopt;
        }
        if (r.status == PathStatus::Found) return r.path;
        return std::nullopt;
    }

    GraphHandle& handle() { return h_; }

private:
    GraphHandle h_;
};

struct SharedSeq {
    std::mutex mu;
    SeqGraph g;
};

class CoarseSession final : public Session {
public:
    explicit CoarseSession(SharedSeq* s) : s_(s) {}

    bool add_vertex(Key k) override {
        std::lock_guard lk(s_->mu);
        return s_->g.add_vertex(k);
    }
    bool remove_vertex(Key k) override {
        std::lock_guard lk(s_->mu);
        return s_->g.remove_vertex(k);
    }
    bool contains_vertex(Key k) override {
        std::lock_guard lk(s_->mu);
        return s_->g.contains_vertex(k);
    }
    EdgeOutcome add_edge(Key k, Key l) override {
        std::lock_guard lk(s_->mu);
        return s_->g.add_edge(k, l);
    }
    EdgeOutcome remove_edge(Key k, Key l) override {
        std::lock_guard lk(s_->mu);
        return s_->g.remove_edge(k, l);
    }
    EdgeOutcome contains_edge(Key k, Key l) override {
        std::lock_guard lk(s_->mu);
        return s_->g.contains_edge(k, l);
    }
    std::optional<std::vector<Key>> get_path(Key k, Key l, std::uint32_t,
                                             bool& inconclusive) override {
        inconclusive = false;
        std::lock_guard lk(s_->mu);
        return s_->g.get_path(k, l);
    }

private:
    SharedSeq* s_;
};

class SeqSession final : public Session {
public:
    explicit SeqSession(SeqGraph* g) : g_(g) {}

    bool add_vertex(Key k) override { return g_->add_vertex(k); }
    bool remove_vertex(Key k) override { return g_->remove_vertex(k); }
    bool contains_vertex(Key k) override { return g_->contains_vertex(k); }
    EdgeOutcome add_edge(Key k, Key l) override { return g_->add_edge(k, l); }
    EdgeOutcome remove_edge(Key k, Key l) override {
        return g_->remove_edge(k, l);
    }
    EdgeOutcome contains_edge(Key k, Key l) override {
        return g_->contains_edge(k, l);
    }
    std::optional<std::vector<Key>> get_path(Key k, Key l, std::uint32_t,
                                             bool& inconclusive) override {
        inconclusive = false;
        return g_->get_path(k, l);
    }

private:
    SeqGraph* g_;
};

}  // namespace

struct EngineContext::Impl {
    SharedSeq shared;
};

EngineContext::EngineContext(Engine engine, unsigned max_threads)
    : engine_(engine) {
    if (engine == Engine::LockFree) {
        graph_ = std::make_unique<Graph>(max_threads);
    } else {
        impl_ = std::make_unique<Impl>();
    }
}

EngineContext::~EngineContext() = default;

std::unique_ptr<Session> EngineContext::make_session() {
    switch (engine_) {
        case Engine::LockFree:
            return std::make_unique<LockFreeSession>(graph_.get());
        case Engine::Coarse:
            return std::make_unique<CoarseSession>(&impl_->shared);
        case Engine::Sequential:
            return std::make_unique<SeqSession>(&impl_->shared.g);
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Op generation

namespace {

struct GenOp {
    OpKind kind;
    std::vector<Key> args;
};

std::mt19937_64 thread_rng(std::uint64_t seed, unsigned tid) {
    std::seed_seq sq{seed, static_cast<std::uint64_t>(tid) + 1};
    return std::mt19937_64(sq);
}

GenOp gen_op(std::mt19937_64& rng, const std::array<std::uint32_t, 7>& w,
             Key lo, Key hi) {
    std::uniform_int_distribution<std::uint32_t> pick(0, 9999);
    std::uniform_int_distribution<Key> key(lo, hi);
    std::uint32_t r = pick(rng);
    int kind = 0;
    for (; kind < 7; ++kind) {
        if (r < w[static_cast<std::size_t>(kind)]) break;
        r -= w[static_cast<std::size_t>(kind)];
    }
    GenOp op;
    op.kind = static_cast<OpKind>(kind);
    Key k = key(rng);
    op.args.push_back(k);
    if (op.kind == OpKind::AddEdge || op.kind == OpKind::RemoveEdge ||
        op.kind == OpKind::ContainsEdge || op.kind == OpKind::GetPath) {
        Key l = key(rng);
        while (l == k) l = key(rng);
        op.args.push_back(l);
    }
    return op;
}

// Runs one generated op; returns nullopt for an inconclusive get_path.
std::optional<OpResult> apply_op(Session& s, const GenOp& op,
                                 std::uint32_t scan_cap) {
    switch (op.kind) {
        case OpKind::AddVertex:
            return OpResult::of_bool(s.add_vertex(op.args[0]));
        case OpKind::RemoveVertex:
            return OpResult::of_bool(s.remove_vertex(op.args[0]));
        case OpKind::ContainsVertex:
            return OpResult::of_bool(s.contains_vertex(op.args[0]));
        case OpKind::AddEdge:
            return OpResult::of_edge(s.add_edge(op.args[0], op.args[1]));
        case OpKind::RemoveEdge:
            return OpResult::of_edge(s.remove_edge(op.args[0], op.args[1]));
        case OpKind::ContainsEdge:
            return OpResult::of_edge(s.contains_edge(op.args[0], op.args[1]));
        case OpKind::GetPath: {
            bool inconclusive = false;
            auto p = s.get_path(op.args[0], op.args[1], scan_cap,
                                inconclusive);
            if (inconclusive) return std::nullopt;
            return OpResult::of_path(std::move(p));
        }
    }
    return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// History recording

History record(const RecordConfig& cfg) {
    if (cfg.threads == 0 || cfg.key_lo > cfg.key_hi) {
        throw std::invalid_argument("record: bad config");
    }
    EngineContext ctx(Engine::LockFree, cfg.threads);
    std::atomic<std::uint64_t> clock{0};
    std::barrier gate(static_cast<std::ptrdiff_t>(cfg.threads));
    std::vector<History> per_thread(cfg.threads);
    auto weights = mix_weights(cfg.mix, cfg.with_getpath);

    auto worker = [&](unsigned tid) {
        auto session = ctx.make_session();
        auto rng = thread_rng(cfg.seed, tid);
        gate.arrive_and_wait();
        for (unsigned i = 0; i < cfg.ops_per_thread; ++i) {
            GenOp op = gen_op(rng, weights, cfg.key_lo, cfg.key_hi);
            HistoryEvent ev;
            ev.tid = tid;
            ev.op = op.kind;
            ev.args = op.args;
            ev.t_inv = clock.fetch_add(1, std::memory_order_relaxed);
            // Random pauses inside the invocation window force overlapping
            // intervals even on a single hardware thread.
            if ((rng() & 7u) == 0) std::this_thread::yield();
            auto res = apply_op(*session, op, cfg.scan_cap);
            if ((rng() & 7u) == 0) std::this_thread::yield();
            ev.t_res = clock.fetch_add(1, std::memory_order_relaxed);
            if (!res) continue;  // inconclusive get_path: not in the history
            ev.result = std::move(*res);
            per_thread[tid].push_back(std::move(ev));
        }
    };

    std::vector<std::thread> ts;
    for (unsigned t = 0; t < cfg.threads; ++t) ts.emplace_back(worker, t);
    for (auto& t : ts) t.join();

    History h;
    for (auto& ph : per_thread) {
        h.insert(h.end(), ph.begin(), ph.end());
    }
    return h;
}

std::vector<std::string> run_deterministic(Engine engine,
                                           const RecordConfig& cfg) {
    EngineContext ctx(engine, 1);
    auto session = ctx.make_session();
    auto rng = thread_rng(cfg.seed, 0);
    auto weights = mix_weights(cfg.mix, cfg.with_getpath);
    std::vector<std::string> out;
    out.reserve(cfg.ops_per_thread);
    for (unsigned i = 0; i < cfg.ops_per_thread; ++i) {
        GenOp op = gen_op(rng, weights, cfg.key_lo, cfg.key_hi);
        auto res = apply_op(*session, op, 0);  // unbounded: never gives up
        out.push_back(std::string(to_string(op.kind)) + ' ' +
                      (res ? res->to_wire() : "INCONCLUSIVE"));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Benchmark

BenchResult run_bench(const WorkloadConfig& cfg) {
    if (cfg.duration_s <= 0 || cfg.key_lo > cfg.key_hi ||
        cfg.threads == 0) {
        throw std::invalid_argument("run_bench: bad config");
    }
    unsigned threads =
        cfg.engine == Engine::Sequential ? 1u : cfg.threads;
    unsigned capacity = cfg.max_threads != 0 ? cfg.max_threads : threads + 1;
    if (capacity < threads + 1) {
        throw std::invalid_argument("run_bench: thread capacity too small");
    }
    EngineContext ctx(cfg.engine, capacity);

    // Prefill: distinct random vertices, then random edges between them up
    // to the requested average out-degree.
    std::vector<Key> prefilled;
    {
        auto session = ctx.make_session();
        auto rng = thread_rng(cfg.seed, 0xfeed);
        std::uniform_int_distribution<Key> key(cfg.key_lo, cfg.key_hi);
        std::uint64_t span =
            static_cast<std::uint64_t>(cfg.key_hi - cfg.key_lo) + 1;
        unsigned want = static_cast<unsigned>(std::min<std::uint64_t>(
            cfg.prefill_vertices, span));
        while (prefilled.size() < want) {
            Key k = key(rng);
            if (session->add_vertex(k)) prefilled.push_back(k);
        }
        if (prefilled.size() >= 2) {
            std::uniform_int_distribution<std::size_t> idx(
                0, prefilled.size() - 1);
            std::uint64_t target = static_cast<std::uint64_t>(want) *
                                   cfg.prefill_degree;
            std::uint64_t added = 0, attempts = 0;
            while (added < target && attempts < target * 20) {
                ++attempts;
                Key a = prefilled[idx(rng)];
                Key b = prefilled[idx(rng)];
                if (a == b) continue;
                if (session->add_edge(a, b) == EdgeOutcome::EdgeAdded) {
                    ++added;
                }
            }
        }
    }

    auto weights = mix_weights(cfg.mix, cfg.with_getpath);
    std::barrier gate(static_cast<std::ptrdiff_t>(threads));
    struct WorkerOut {
        std::uint64_t ops = 0;
        std::uint64_t inconclusive = 0;
        std::array<std::uint64_t, 7> counts{};
        std::vector<std::uint32_t> lat_us;
    };
    std::vector<WorkerOut> outs(threads);
    auto dur = std::chrono::duration<double>(cfg.duration_s);

    auto worker = [&](unsigned tid) {
        auto session = ctx.make_session();
        auto rng = thread_rng(cfg.seed, tid);
        WorkerOut& wo = outs[tid];
        wo.lat_us.reserve(1 << 16);
        gate.arrive_and_wait();
        auto deadline = std::chrono::steady_clock::now() + dur;
        for (;;) {
            auto t0 = std::chrono::steady_clock::now();
            if (t0 >= deadline) break;
            GenOp op = gen_op(rng, weights, cfg.key_lo, cfg.key_hi);
            auto res = apply_op(*session, op, cfg.scan_cap);
            auto t1 = std::chrono::steady_clock::now();
            ++wo.ops;
            ++wo.counts[static_cast<std::size_t>(op.kind)];
            if (!res) ++wo.inconclusive;
            wo.lat_us.push_back(static_cast<std::uint32_t>(
                std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
                    .count()));
        }
    };

    std::vector<std::thread> ts;
    for (unsigned t = 0; t < threads; ++t) ts.emplace_back(worker, t);
    for (auto& t : ts) t.join();

    BenchResult r;
    r.engine = cfg.engine;
    r.threads = threads;
    r.mix_label = std::string(to_string(cfg.mix)) +
                  (cfg.with_getpath ? "_getpath" : "");
    r.duration_s = cfg.duration_s;
    std::vector<std::uint32_t> all_lat;
    for (auto& wo : outs) {
        r.total_ops += wo.ops;
        r.getpath_inconclusive += wo.inconclusive;
        for (int i = 0; i < 7; ++i) {
            r.op_counts[static_cast<std::size_t>(i)] +=
                wo.counts[static_cast<std::size_t>(i)];
        }
        all_lat.insert(all_lat.end(), wo.lat_us.begin(), wo.lat_us.end());
    }
    r.ops_per_sec = static_cast<double>(r.total_ops) / cfg.duration_s;
    if (!all_lat.empty()) {
        auto pct = [&](double q) {
            std::size_t i = static_cast<std::size_t>(
                q * static_cast<double>(all_lat.size() - 1));
            std::nth_element(all_lat.begin(),
                             all_lat.begin() + static_cast<std::ptrdiff_t>(i),
                             all_lat.end());
            return static_cast<double>(all_lat[i]);
        };
        r.p50_us = pct(0.50);
        r.p99_us = pct(0.99);
    }
    return r;
}

std::string csv_header() {
    return "engine,threads,mix,duration_s,total_ops,ops_per_sec,"
           "getpath_inconclusive,p50_us,p99_us";
}

std::string csv_row(const BenchResult& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%u,%s,%g,%llu,%.2f,%llu,%.2f,%.2f",
                  to_string(r.engine), r.threads, r.mix_label.c_str(),
                  r.duration_s,
                  static_cast<unsigned long long>(r.total_ops), r.ops_per_sec,
                  static_cast<unsigned long long>(r.getpath_inconclusive),
                  r.p50_us, r.p99_us);
    return buf;
}

void emit_csv(const std::vector<BenchResult>& results,
              const std::string& path, bool append) {
    bool have_file =
        append && std::filesystem::exists(path) &&
        std::filesystem::file_size(path) > 0;
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
    if (!have_file) out << csv_header() << '\n';
    for (const BenchResult& r : results) out << csv_row(r) << '\n';
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace congraph
