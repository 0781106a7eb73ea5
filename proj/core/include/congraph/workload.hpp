#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "congraph/graph.hpp"
#include "congraph/history.hpp"

namespace congraph {

enum class Engine { LockFree, Coarse, Sequential };
enum class MixKind { Lookup, Balanced, Update };

const char* to_string(Engine e);
const char* to_string(MixKind m);
std::optional<Engine> engine_from_string(const std::string& s);
std::optional<MixKind> mix_from_string(const std::string& s);

// Operation weights per 10,000 draws, indexed by OpKind order. The lookup
// share splits evenly between the two contains ops, the update share evenly
// among the four modifiers; the with-getpath variant reassigns 10 percentage
// points to get_path.
std::array<std::uint32_t, 7> mix_weights(MixKind mix, bool with_getpath);

// Uniform per-thread access to one engine instance. Sessions are
// thread-confined; the owning EngineContext is shared.
class Session {
public:
    virtual ~Session() = default;
    virtual bool add_vertex(Key k) = 0;
    virtual bool remove_vertex(Key k) = 0;
    virtual bool contains_vertex(Key k) = 0;
    virtual EdgeOutcome add_edge(Key k, Key l) = 0;
    virtual EdgeOutcome remove_edge(Key k, Key l) = 0;
    virtual EdgeOutcome contains_edge(Key k, Key l) = 0;
    // scan_cap == 0 means unbounded; `inconclusive` set when the bounded
    // search gave up.
    virtual std::optional<std::vector<Key>> get_path(Key k, Key l,
                                                     std::uint32_t scan_cap,
                                                     bool& inconclusive) = 0;
};

class EngineContext {
public:
    EngineContext(Engine engine, unsigned max_threads);
    ~EngineContext();

    Engine engine() const { return engine_; }
    std::unique_ptr<Session> make_session();

    // Lock-free engine only; null otherwise.
    Graph* graph() { return graph_.get(); }

private:
    struct Impl;
    Engine engine_;
    std::unique_ptr<Graph> graph_;
    std::unique_ptr<Impl> impl_;
};

struct RecordConfig {
    unsigned threads = 2;
    unsigned ops_per_thread = 10;
    Key key_lo = 1;
    Key key_hi = 6;
    MixKind mix = MixKind::Balanced;
    bool with_getpath = true;
    std::uint32_t scan_cap = 3;
    std::uint64_t seed = 1;
};

// Runs a randomized concurrent workload against the lock-free graph and
// returns the completed-operation history with logical timestamps.
// Inconclusive bounded get_path calls are dropped.
History record(const RecordConfig& cfg);

struct WorkloadConfig {
    Engine engine = Engine::LockFree;
    unsigned threads = 1;
    MixKind mix = MixKind::Balanced;
    bool with_getpath = false;
    double duration_s = 5.0;
    std::uint64_t seed = 1;
    unsigned prefill_vertices = 1000;
    unsigned prefill_degree = 8;  // average out-degree
    Key key_lo = 1;
    Key key_hi = 100000;
    std::uint32_t scan_cap = 16;
    unsigned max_threads = 0;  // 0: threads + 1
};

struct BenchResult {
    Engine engine = Engine::LockFree;
    unsigned threads = 1;
    std::string mix_label;
    double duration_s = 0;
    std::uint64_t total_ops = 0;
    double ops_per_sec = 0;
    std::uint64_t getpath_inconclusive = 0;
    double p50_us = 0;
    double p99_us = 0;
    std::array<std::uint64_t, 7> op_counts{};  // by OpKind order
};

BenchResult run_bench(const WorkloadConfig& cfg);

std::string csv_header();
std::string csv_row(const BenchResult& r);
// Writes header + one row per result; appends without header when `append`
// and the file already exists. Throws std::runtime_error on I/O failure.
void emit_csv(const std::vector<BenchResult>& results,
              const std::string& path, bool append);

// Single-threaded deterministic run of `nops` generated operations against
// the chosen engine; returns one wire-format result string per op. Identical
// across engines for the same configuration.
std::vector<std::string> run_deterministic(Engine engine,
                                           const RecordConfig& cfg);

}  // namespace congraph
