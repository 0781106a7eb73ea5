#include "congraph/reclaim.hpp"

#include <stdexcept>

namespace congraph {

EpochReclaimer::EpochReclaimer(unsigned max_slots, ReclaimMode mode,
                               bool debug_track_retired)
    : max_slots_(max_slots),
      mode_(mode),
      slots_(std::make_unique<Slot[]>(max_slots)),
      debug_track_(debug_track_retired) {
    if (max_slots == 0) {
        throw std::invalid_argument("EpochReclaimer: max_slots must be > 0");
    }
}

EpochReclaimer::~EpochReclaimer() {
    for (unsigned i = 0; i < max_slots_; ++i) {
        for (const Entry& e : slots_[i].retired) {
            run_deleter(e);
        }
        slots_[i].retired.clear();
    }
}

unsigned EpochReclaimer::acquire_slot() {
    for (unsigned i = 0; i < max_slots_; ++i) {
        bool expected = false;
        if (slots_[i].in_use.compare_exchange_strong(expected, true)) {
            return i;
        }
    }
    throw std::runtime_error("EpochReclaimer: thread capacity exceeded");
}

void EpochReclaimer::release_slot(unsigned slot) {
    slots_[slot].state.store(0, std::memory_order_release);
    slots_[slot].in_use.store(false, std::memory_order_release);
}

void EpochReclaimer::pin(unsigned slot) {
    Slot& s = slots_[slot];
    for (;;) {
        std::uint64_t e = global_epoch_.load(std::memory_order_acquire);
        s.state.store((e << 1) | 1, std::memory_order_seq_cst);
        if (global_epoch_.load(std::memory_order_seq_cst) == e) {
            return;
        }
    }
}

void EpochReclaimer::unpin(unsigned slot) {
    slots_[slot].state.store(0, std::memory_order_release);
}

bool EpochReclaimer::is_pinned(unsigned slot) const {
    return (slots_[slot].state.load(std::memory_order_acquire) & 1) != 0;
}

void EpochReclaimer::retire(unsigned slot, void* node, Deleter deleter,
                            void* ctx) {
    if (debug_track_) {
        std::lock_guard<std::mutex> lk(track_mu_);
        if (!tracked_.insert(node).second) {
            throw std::logic_error("EpochReclaimer: node retired twice");
        }
    }
    Slot& s = slots_[slot];
    std::uint64_t e = global_epoch_.load(std::memory_order_acquire);
    s.retired.push_back(Entry{node, deleter, ctx, e});
    retired_total_.fetch_add(1, std::memory_order_relaxed);
    if (mode_ == ReclaimMode::Epoch && s.retired.size() >= kFlushThreshold) {
        flush(slot);
    }
}

bool EpochReclaimer::try_advance() {
    std::uint64_t e = global_epoch_.load(std::memory_order_seq_cst);
    for (unsigned i = 0; i < max_slots_; ++i) {
        std::uint64_t st = slots_[i].state.load(std::memory_order_seq_cst);
        if ((st & 1) && (st >> 1) != e) {
            return false;
        }
    }
    std::uint64_t expected = e;
    return global_epoch_.compare_exchange_strong(expected, e + 1,
                                                 std::memory_order_seq_cst);
}

void EpochReclaimer::drain_eligible(Slot& s) {
    std::uint64_t e = global_epoch_.load(std::memory_order_acquire);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < s.retired.size(); ++i) {
        const Entry& ent = s.retired[i];
        if (ent.epoch + 2 <= e) {
            run_deleter(ent);
        } else {
            s.retired[kept++] = ent;
        }
    }
    s.retired.resize(kept);
}

void EpochReclaimer::flush(unsigned slot) {
    if (mode_ == ReclaimMode::Leak) {
        return;
    }
    try_advance();
    drain_eligible(slots_[slot]);
}

void EpochReclaimer::quiesce() {
    global_epoch_.fetch_add(2, std::memory_order_seq_cst);
    for (unsigned i = 0; i < max_slots_; ++i) {
        for (const Entry& e : slots_[i].retired) {
            run_deleter(e);
        }
        slots_[i].retired.clear();
    }
}

void EpochReclaimer::run_deleter(const Entry& e) {
    if (debug_track_) {
        std::lock_guard<std::mutex> lk(track_mu_);
        tracked_.erase(e.node);
    }
    e.deleter(e.node, e.ctx);
    drained_total_.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace congraph
