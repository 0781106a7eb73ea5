#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_set>
#include <vector>

namespace congraph {

enum class ReclaimMode {
    Epoch,  // deferred free after a two-epoch grace period
    Leak,   // never free until quiesce/destruction (deterministic addresses)
};

// Epoch-based deferred reclamation. Threads occupy numbered slots; an
// operation pins its slot for its duration. A node may be retired only once
// it is physically unlinked from every list; its deleter runs no earlier
// than two epoch advances later, so every slot pinned at retirement time has
// been released in between. This discharges the fresh-address (ABA)
// assumption for tagged links.
class EpochReclaimer {
public:
    using Deleter = void (*)(void* node, void* ctx);

    EpochReclaimer(unsigned max_slots, ReclaimMode mode,
                   bool debug_track_retired = false);
    ~EpochReclaimer();

    EpochReclaimer(const EpochReclaimer&) = delete;
    EpochReclaimer& operator=(const EpochReclaimer&) = delete;

    unsigned max_slots() const { return max_slots_; }
    ReclaimMode mode() const { return mode_; }

    // Throws std::runtime_error when all slots are taken.
    unsigned acquire_slot();
    void release_slot(unsigned slot);

    void pin(unsigned slot);
    void unpin(unsigned slot);
    bool is_pinned(unsigned slot) const;

    // Caller must have physically unlinked `node`. Throws std::logic_error
    // on a duplicate retire when debug tracking is on.
    void retire(unsigned slot, void* node, Deleter deleter, void* ctx);

    // Opportunistic: advance the epoch if possible and run deleters for
    // entries whose grace period has passed. Owner thread only.
    void flush(unsigned slot);

    // Drains every retire list. Precondition: no slot is pinned and no
    // operation is in flight.
    void quiesce();

    std::uint64_t retired_count() const {
        return retired_total_.load(std::memory_order_relaxed);
    }
    // Number of retire entries whose deleter has run.
    std::uint64_t drained_count() const {
        return drained_total_.load(std::memory_order_relaxed);
    }
    std::uint64_t global_epoch() const {
        return global_epoch_.load(std::memory_order_relaxed);
    }

private:
    struct Entry {
        void* node;
        Deleter deleter;
        void* ctx;
        std::uint64_t epoch;
    };

    struct alignas(64) Slot {
        // 0 when quiescent, else (epoch << 1) | 1.
        std::atomic<std::uint64_t> state{0};
        std::atomic<bool> in_use{false};
        std::vector<Entry> retired;  // owner thread (or quiesce) only
    };

    bool try_advance();
    void drain_eligible(Slot& s);
    void run_deleter(const Entry& e);

    unsigned max_slots_;
    ReclaimMode mode_;
    std::unique_ptr<Slot[]> slots_;
    std::atomic<std::uint64_t> global_epoch_{1};
    std::atomic<std::uint64_t> retired_total_{0};
    std::atomic<std::uint64_t> drained_total_{0};

    bool debug_track_;
    std::mutex track_mu_;
    std::unordered_set<void*> tracked_;

    static constexpr std::size_t kFlushThreshold = 64;
};

}  // namespace congraph
