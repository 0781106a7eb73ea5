#include "congraph/lin_check.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace congraph {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Linearizable: return "LINEARIZABLE";
        case Verdict::NotLinearizable: return "NOT_LINEARIZABLE";
        case Verdict::BudgetExceeded: return "BUDGET_EXCEEDED";
    }
    return "?";
}

bool replay_event(SeqGraph& g, const HistoryEvent& ev) {
    switch (ev.op) {
        case OpKind::AddVertex:
            return g.add_vertex(ev.args[0]) == ev.result.b;
        case OpKind::RemoveVertex:
            return g.remove_vertex(ev.args[0]) == ev.result.b;
        case OpKind::ContainsVertex:
            return g.contains_vertex(ev.args[0]) == ev.result.b;
        case OpKind::AddEdge:
            return g.add_edge(ev.args[0], ev.args[1]) == ev.result.edge;
        case OpKind::RemoveEdge:
            return g.remove_edge(ev.args[0], ev.args[1]) == ev.result.edge;
        case OpKind::ContainsEdge:
            return g.contains_edge(ev.args[0], ev.args[1]) == ev.result.edge;
        case OpKind::GetPath: {
            // A nil answer must coincide with unreachability here; a
            // returned path need only consist of edges that exist here
            // (concurrent runs may legitimately find a different path).
            if (!ev.result.path.has_value()) {
                return !g.has_path(ev.args[0], ev.args[1]);
            }
            const std::vector<Key>& p = *ev.result.path;
            if (p.size() < 2 || p.front() != ev.args[0] ||
                p.back() != ev.args[1]) {
                return false;
            }
            for (std::size_t i = 0; i + 1 < p.size(); ++i) {
                if (g.contains_edge(p[i], p[i + 1]) !=
                    EdgeOutcome::EdgeFound) {
                    return false;
                }
            }
            return true;
        }
    }
    return false;
}

namespace {

struct Searcher {
    const History& h;
    std::uint64_t budget;
    std::uint64_t explored = 0;
    std::vector<std::size_t> order;
    std::unordered_set<std::string> dead;  // mask|state known unlinearizable

    explicit Searcher(const History& hist, std::uint64_t b)
        : h(hist), budget(b) {}

    // Returns 1 found, 0 not found, -1 budget exhausted.
    int dfs(std::uint64_t done, const SeqGraph& g) {
        if (order.size() == h.size()) return 1;
        if (++explored > budget) return -1;
        std::string key = std::to_string(done) + '|' + g.serialize();
        if (dead.count(key)) return 0;
        // An undone event may be linearized next only if no other undone
        // event responded before it was invoked.
        std::uint64_t min_res = UINT64_MAX;
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (!(done & (1ull << i))) min_res = std::min(min_res, h[i].t_res);
        }
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (done & (1ull << i)) continue;
            if (h[i].t_inv > min_res) continue;
            SeqGraph next = g;
            if (!replay_event(next, h[i])) continue;
            order.push_back(i);
            int r = dfs(done | (1ull << i), next);
            if (r != 0) return r;
            order.pop_back();
        }
        dead.insert(std::move(key));
        return 0;
    }
};

// Verdict for the history as given, without prefix minimization.
CheckResult check_whole(const History& h, std::uint64_t budget) {
    CheckResult out;
    if (h.size() > 64) {
        throw std::invalid_argument("history too long (max 64 events)");
    }
    Searcher s(h, budget);
    SeqGraph g;
    int r = s.dfs(0, g);
    out.states_explored = s.explored;
    if (r == 1) {
        out.verdict = Verdict::Linearizable;
        out.witness = std::move(s.order);
    } else if (r == 0) {
        out.verdict = Verdict::NotLinearizable;
    } else {
        out.verdict = Verdict::BudgetExceeded;
    }
    return out;
}

}  // namespace

CheckResult check_linearizable(const History& h, std::uint64_t budget) {
    CheckResult full = check_whole(h, budget);
    if (full.verdict != Verdict::NotLinearizable) return full;
    History by_res = h;
    std::sort(by_res.begin(), by_res.end(),
              [](const HistoryEvent& a, const HistoryEvent& b) {
                  return a.t_res < b.t_res;
              });
    std::uint64_t spent = full.states_explored;
    for (std::size_t n = 1; n <= by_res.size(); ++n) {
        History prefix(by_res.begin(),
                       by_res.begin() + static_cast<std::ptrdiff_t>(n));
        if (spent >= budget) {
            full.verdict = Verdict::BudgetExceeded;
            full.failing_prefix.clear();
            return full;
        }
        CheckResult pr = check_whole(prefix, budget - spent);
        spent += pr.states_explored;
        full.states_explored = spent;
        if (pr.verdict == Verdict::BudgetExceeded) {
            full.verdict = Verdict::BudgetExceeded;
            full.failing_prefix.clear();
            return full;
        }
        if (pr.verdict == Verdict::NotLinearizable) {
            full.failing_prefix = std::move(prefix);
            return full;
        }
    }
    // Unreachable: the full history is one of the prefixes.
    return full;
}

bool witness_valid(const History& h, const std::vector<std::size_t>& order) {
    if (order.size() != h.size()) return false;
    std::vector<bool> seen(h.size(), false);
    for (std::size_t i : order) {
        if (i >= h.size() || seen[i]) return false;
        seen[i] = true;
    }
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            if (h[order[b]].t_res < h[order[a]].t_inv) return false;
        }
    }
    SeqGraph g;
    for (std::size_t i : order) {
        if (!replay_event(g, h[i])) return false;
    }
    return true;
}

}  // namespace congraph
