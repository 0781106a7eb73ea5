#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "congraph/graph.hpp"

namespace congraph {

// Sequential reference implementation of the graph ADT. Removing a vertex
// removes its incident edges in both directions immediately. get_path runs
// a BFS that visits out-neighbors in ascending key order, matching the
// concurrent structure's sorted adjacency lists, so quiescent results are
// comparable path-for-path.
class SeqGraph {
public:
    bool add_vertex(Key k);
    bool remove_vertex(Key k);
    bool contains_vertex(Key k) const;

    EdgeOutcome add_edge(Key k, Key l);
    EdgeOutcome remove_edge(Key k, Key l);
    EdgeOutcome contains_edge(Key k, Key l) const;

    // Key sequence [k, ..., l], or std::nullopt when l is unreachable.
    std::optional<std::vector<Key>> get_path(Key k, Key l) const;

    bool has_path(Key k, Key l) const { return get_path(k, l).has_value(); }

    std::size_t vertex_count() const { return adj_.size(); }
    std::vector<Key> vertex_keys() const;
    std::vector<Key> out_neighbors(Key k) const;

    bool operator==(const SeqGraph& other) const { return adj_ == other.adj_; }

    // Canonical one-line rendering, usable as a memoization key.
    std::string serialize() const;

private:
    std::map<Key, std::set<Key>> adj_;
};

}  // namespace congraph
