#pragma once

#include <cstdint>
#include <vector>

#include "congraph/history.hpp"
#include "congraph/seq_graph.hpp"

namespace congraph {

enum class Verdict {
    Linearizable,
    NotLinearizable,
    BudgetExceeded,  // search budget exhausted; no verdict either way
};

const char* to_string(Verdict v);

struct CheckResult {
    Verdict verdict = Verdict::Linearizable;
    // Event indices into the input history, in linearization order.
    // Populated iff verdict == Linearizable.
    std::vector<std::size_t> witness;
    // Smallest response-ordered prefix that is itself non-linearizable.
    // Populated iff verdict == NotLinearizable.
    History failing_prefix;
    std::uint64_t states_explored = 0;
};

// Exhaustive search for a real-time-respecting linear order of the history
// whose sequential replay reproduces every response, with memoized-state
// pruning. Sound and complete within the budget; histories are limited to
// 64 events. get_path responses are matched semantically: nil must coincide
// with unreachability in the replay state, and a returned path must consist
// of edges present in the replay state at that point.
CheckResult check_linearizable(const History& h,
                               std::uint64_t budget = 5'000'000);

// True iff `order` covers the history exactly once, respects real-time
// precedence, and replays on a fresh oracle reproducing every response.
bool witness_valid(const History& h, const std::vector<std::size_t>& order);

// Replays one event against the oracle, mutating it; returns true iff the
// oracle's answer matches the recorded result under the matching rules
// above.
bool replay_event(SeqGraph& g, const HistoryEvent& ev);

}  // namespace congraph
