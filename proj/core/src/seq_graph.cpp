#include "congraph/seq_graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace congraph {

namespace {

void check_key(Key k) {
    if (!key_in_domain(k)) {
        throw std::invalid_argument("key outside (KEY_MIN, KEY_MAX)");
    }
}

void check_edge_args(Key k, Key l) {
    check_key(k);
    check_key(l);
    if (k == l) {
        throw std::invalid_argument("self-loops are not supported");
    }
}

}  // namespace

bool SeqGraph::add_vertex(Key k) {
    check_key(k);
    return adj_.emplace(k, std::set<Key>{}).second;
}

bool SeqGraph::remove_vertex(Key k) {
    check_key(k);
    auto it = adj_.find(k);
    if (it == adj_.end()) return false;
    adj_.erase(it);
    for (auto& [key, nbrs] : adj_) nbrs.erase(k);
    return true;
}

bool SeqGraph::contains_vertex(Key k) const {
    check_key(k);
    return adj_.count(k) != 0;
}

EdgeOutcome SeqGraph::add_edge(Key k, Key l) {
    check_edge_args(k, l);
    auto it = adj_.find(k);
    if (it == adj_.end() || adj_.count(l) == 0) {
        return EdgeOutcome::VertexNotPresent;
    }
    return it->second.insert(l).second ? EdgeOutcome::EdgeAdded
                                       : EdgeOutcome::EdgePresent;
}

EdgeOutcome SeqGraph::remove_edge(Key k, Key l) {
    check_edge_args(k, l);
    auto it = adj_.find(k);
    if (it == adj_.end() || adj_.count(l) == 0) {
        return EdgeOutcome::VertexNotPresent;
    }
    return it->second.erase(l) != 0 ? EdgeOutcome::EdgeRemoved
                                    : EdgeOutcome::EdgeNotPresent;
}

EdgeOutcome SeqGraph::contains_edge(Key k, Key l) const {
    check_edge_args(k, l);
    auto it = adj_.find(k);
    if (it == adj_.end() || adj_.count(l) == 0) {
        return EdgeOutcome::VertexNotPresent;
    }
    return it->second.count(l) != 0 ? EdgeOutcome::EdgeFound
                                    : EdgeOutcome::VertexOrEdgeNotPresent;
}

std::optional<std::vector<Key>> SeqGraph::get_path(Key k, Key l) const {
    check_edge_args(k, l);
    auto src = adj_.find(k);
    if (src == adj_.end() || adj_.count(l) == 0) return std::nullopt;
    std::map<Key, Key> pred;  // discovered vertex -> predecessor
    std::deque<Key> frontier{k};
    pred.emplace(k, k);
    while (!frontier.empty()) {
        Key cur = frontier.front();
        frontier.pop_front();
        for (Key nb : adj_.at(cur)) {
            if (adj_.count(nb) == 0) continue;  // defensive; never happens
            if (pred.emplace(nb, cur).second) {
                if (nb == l) {
                    std::vector<Key> path;
                    for (Key v = l; v != k; v = pred.at(v)) path.push_back(v);
                    path.push_back(k);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                frontier.push_back(nb);
            }
        }
    }
    return std::nullopt;
}

std::vector<Key> SeqGraph::vertex_keys() const {
    std::vector<Key> out;
    out.reserve(adj_.size());
    for (const auto& [k, nbrs] : adj_) out.push_back(k);
    return out;
}

std::vector<Key> SeqGraph::out_neighbors(Key k) const {
    auto it = adj_.find(k);
    if (it == adj_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

std::string SeqGraph::serialize() const {
    std::ostringstream os;
    for (const auto& [k, nbrs] : adj_) {
        os << k << ':';
        for (Key nb : nbrs) os << nb << ',';
        os << ';';
    }
    return os.str();
}

}  // namespace congraph
