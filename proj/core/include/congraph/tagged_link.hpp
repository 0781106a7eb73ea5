#pragma once

#include <atomic>
#include <cstdint>

namespace congraph {

// Per-thread counts of synchronization instructions issued against the
// shared structure. Lookup operations are required to leave these untouched;
// tests read them around calls.
struct OpCounters {
    std::uint64_t cas_attempts = 0;
    std::uint64_t faa_ops = 0;
    std::uint64_t traversal_steps = 0;
};

namespace detail {
inline thread_local OpCounters tl_op_counters;
}

inline OpCounters& op_counters() { return detail::tl_op_counters; }
inline void reset_op_counters() { detail::tl_op_counters = OpCounters{}; }

// A link word packs a node address and a removal mark into one CAS-able
// word. Nodes are allocated with at least 8-byte alignment, so the three
// low bits of an address are free; the mark uses bit 0 and bits 1-2 stay
// zero.
using LinkWord = std::uintptr_t;

inline constexpr LinkWord kMarkBit = 1u;

constexpr LinkWord mark_ref(LinkWord w) { return w | kMarkBit; }
constexpr LinkWord unmark_ref(LinkWord w) { return w & ~kMarkBit; }
constexpr bool is_marked(LinkWord w) { return (w & kMarkBit) != 0; }

template <typename Node>
Node* link_target(LinkWord w) {
    return reinterpret_cast<Node*>(unmark_ref(w));
}

inline LinkWord make_link(const void* p) {
    return reinterpret_cast<LinkWord>(p);
}

// Atomic (target, mark) cell. A cell whose mark is set is terminal: the
// algorithm never CASes a marked expected value, so the word is frozen.
class TaggedLink {
public:
    TaggedLink() = default;
    explicit TaggedLink(LinkWord w) : word_(w) {}

    TaggedLink(const TaggedLink&) = delete;
    TaggedLink& operator=(const TaggedLink&) = delete;

    LinkWord load(std::memory_order mo = std::memory_order_acquire) const {
        return word_.load(mo);
    }

    // Pre-publication initialization only.
    void init(LinkWord w) { word_.store(w, std::memory_order_relaxed); }

    bool cas(LinkWord expected, LinkWord desired) {
        ++detail::tl_op_counters.cas_attempts;
        return word_.compare_exchange_strong(expected, desired,
                                             std::memory_order_acq_rel,
                                             std::memory_order_acquire);
    }

private:
    std::atomic<LinkWord> word_{0};
};

// Fetch-and-add on a shared counter, routed through the instruction counter.
inline std::uint64_t counter_faa(std::atomic<std::uint64_t>& c,
                                 std::uint64_t delta) {
    ++detail::tl_op_counters.faa_ops;
    return c.fetch_add(delta, std::memory_order_acq_rel);
}

}  // namespace congraph
