#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congraph/reclaim.hpp"
#include "congraph/tagged_link.hpp"

namespace congraph {

using Key = std::int64_t;

// Sentinel keys; user keys must lie strictly between them.
inline constexpr Key kKeyMin = std::numeric_limits<Key>::min();
inline constexpr Key kKeyMax = std::numeric_limits<Key>::max();

inline bool key_in_domain(Key k) { return k > kKeyMin && k < kKeyMax; }

// Return cases of the edge operations, one per indicative string.
enum class EdgeOutcome {
    VertexNotPresent,
    EdgePresent,
    EdgeAdded,
    EdgeNotPresent,
    EdgeRemoved,
    EdgeFound,  // lookup hit; rendered "EDGE FOUND"
    VertexOrEdgeNotPresent,
};

// Wire spelling, e.g. "EDGE_ADDED".
const char* to_string(EdgeOutcome o);
// Display spelling with spaces, e.g. "EDGE ADDED".
const char* indicative_string(EdgeOutcome o);
// Parses either spelling; returns std::nullopt on unknown input.
std::optional<EdgeOutcome> edge_outcome_from_string(const std::string& s);

enum class PathStatus {
    Found,
    NoPath,
    Inconclusive,  // bounded reachability gave up under contention
};

struct PathResult {
    PathStatus status = PathStatus::NoPath;
    std::vector<Key> path;       // [k, ..., l] when status == Found
    std::uint32_t collects = 0;  // BFS collections performed

    bool found() const { return status == PathStatus::Found; }
};

namespace detail {
struct VNode;
struct ENode;
}  // namespace detail

// One BFS collection: visit-ordered records with predecessor links and a
// snapshot of each vertex's edge-modification counter. When the producing
// collection found the destination, the last record is the destination.
class BfsTree {
public:
    struct Record {
        const void* node;        // vertex identity at collection time
        Key key;
        std::uint64_t mod_count; // vertex ecnt snapshot at record creation
        std::int32_t pred;       // index of predecessor record, -1 for root
    };

    std::size_t size() const { return recs_.size(); }
    bool empty() const { return recs_.empty(); }
    const Record& operator[](std::size_t i) const { return recs_[i]; }
    void clear() { recs_.clear(); }

    // Keys along the predecessor chain from the last record to the root,
    // in root-to-tail order.
    std::vector<Key> path_keys() const;

private:
    friend class Graph;
    std::vector<Record> recs_;
};

struct ReclaimStats {
    std::uint64_t retired = 0;
    std::uint64_t freed = 0;
};

struct VertexCounters {
    std::uint64_t modifications = 0;  // ecnt
    std::uint64_t purges = 0;         // ecnt increments made at the stale-edge
                                      // purge site, on delayed removers' behalf
};

class GraphHandle;

// Concurrent unbounded directed graph: a sorted lock-free list of vertices,
// each rooting a sorted lock-free list of outgoing edges. Vertex and edge
// modifications are lock-free, lookups are wait-free for a finite key set,
// and reachability queries are obstruction-free. All operations go through
// a GraphHandle obtained from attach(); the Graph itself is shareable
// across threads, handles are not.
class Graph {
public:
    explicit Graph(unsigned max_threads,
                   ReclaimMode mode = ReclaimMode::Epoch);
    ~Graph();

    Graph(const Graph&) = delete;
    Graph& operator=(const Graph&) = delete;

    GraphHandle attach();

    unsigned max_threads() const { return max_threads_; }
    ReclaimStats reclaim_stats() const;

    // Runs all pending deleters. Call only when no operation is in flight
    // and no handle is mid-operation.
    void quiesce();

private:
    friend class GraphHandle;

    struct Locate {
        detail::VNode* pred;
        detail::VNode* curr;
    };
    struct LocateE {
        detail::ENode* pred;
        detail::ENode* curr;
    };
    struct PairResult {
        detail::VNode* u;  // vertex with key k
        detail::VNode* v;  // vertex with key l
        bool ok;
    };

    // Helping traversal: physically unlinks marked vertices on the way and
    // returns adjacent (pred, curr) with curr unmarked at read time and
    // curr->key >= k. Returns {nullptr, nullptr} when `start` itself became
    // marked (caller restarts from the head).
    Locate loc_v(unsigned slot, detail::VNode* start, Key k);
    // Help-free traversal; may return a marked curr.
    Locate loc_c(detail::VNode* start, Key k) const;
    // Helping edge traversal on u's list; purges edges to removed vertices
    // and detaches logically removed edges, incrementing u->ecnt on the
    // delayed remover's behalf for the latter.
    LocateE loc_e(unsigned slot, detail::VNode* u, Key l);

    PairResult conv_plus(unsigned slot, Key k, Key l);
    PairResult conc_plus(Key k, Key l) const;

    bool add_vertex(unsigned slot, Key k);
    bool remove_vertex(unsigned slot, Key k);
    bool contains_vertex(Key k) const;
    EdgeOutcome add_edge(unsigned slot, Key k, Key l);
    EdgeOutcome remove_edge(unsigned slot, Key k, Key l);
    EdgeOutcome contains_edge(Key k, Key l) const;

    bool tree_collect(detail::VNode* u, detail::VNode* v, unsigned tid,
                      std::uint64_t visit_epoch, BfsTree& out) const;
    PathResult scan(detail::VNode* u, detail::VNode* v, unsigned tid,
                    std::uint64_t& visit_epoch, std::uint32_t max_rounds);
    PathResult get_path(unsigned slot, Key k, Key l,
                        std::uint64_t& visit_epoch, std::uint32_t max_rounds);

    void purge(unsigned slot);

    detail::VNode* make_vnode(Key k) const;
    void free_unpublished_vnode(detail::VNode* v) const;
    void retire_vnode(unsigned slot, detail::VNode* v);
    void retire_enode(unsigned slot, detail::ENode* e);
    void free_edge_chain(detail::VNode* v);
    void dec_target_ref(detail::VNode* v);
    static void vnode_deleter(void* node, void* ctx);
    static void enode_deleter(void* node, void* ctx);

    unsigned max_threads_;
    mutable EpochReclaimer reclaimer_;
    detail::VNode* head_;
    detail::VNode* tail_;
    std::atomic<std::uint64_t> freed_retired_{0};
};

// Per-thread access point. Movable, not copyable; must not be used from two
// threads at once. Dropping the handle frees its registry slot.
class GraphHandle {
public:
    GraphHandle(GraphHandle&& other) noexcept;
    GraphHandle& operator=(GraphHandle&& other) noexcept;
    GraphHandle(const GraphHandle&) = delete;
    GraphHandle& operator=(const GraphHandle&) = delete;
    ~GraphHandle();

    unsigned tid() const { return slot_; }

    // Vertex operations. Keys must be in (kKeyMin, kKeyMax); violations
    // throw std::invalid_argument.
    bool add_vertex(Key k);
    bool remove_vertex(Key k);
    bool contains_vertex(Key k);

    // Edge operations; additionally require k != l.
    EdgeOutcome add_edge(Key k, Key l);
    EdgeOutcome remove_edge(Key k, Key l);
    EdgeOutcome contains_edge(Key k, Key l);

    // Reachability. get_path loops until two consecutive BFS collections
    // agree (obstruction-free); the bounded variant gives up after
    // max_scans agreement rounds and reports Inconclusive. max_scans must
    // be >= 1.
    PathResult get_path(Key k, Key l);
    PathResult get_path_bounded(Key k, Key l, std::uint32_t max_scans);

    // Reachability building blocks, usable for staged experiments. A
    // collection locates both endpoints first; returns true iff the
    // destination was reached. Record pointers in the output are stable
    // only while the referenced vertices are not reclaimed.
    bool tree_collect(Key from, Key to, BfsTree& out);
    static bool compare_tree(const BfsTree& a, const BfsTree& b);
    static bool compare_path(const BfsTree& a, const BfsTree& b);

    // Introspection and staging hooks for tests and harnesses.
    std::pair<Key, Key> locate(Key k);           // helping traversal
    std::pair<Key, Key> locate_relaxed(Key k);   // help-free traversal
    bool debug_mark_vertex(Key k);  // logical removal only, no unlink
    bool debug_mark_edge(Key k, Key l);
    std::optional<VertexCounters> vertex_counters(Key k);
    std::vector<Key> vertex_keys();  // unmarked keys; quiescent use

    // Full helping pass: unlinks every marked vertex and purges every
    // stale edge reachable at call time.
    void purge();

private:
    friend class Graph;
    GraphHandle(Graph* g, unsigned slot) : graph_(g), slot_(slot) {}

    Graph* graph_;
    unsigned slot_ = 0;
    std::uint64_t visit_epoch_ = 0;
};

}  // namespace congraph
