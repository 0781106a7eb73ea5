#include <doctest.h>

#include <atomic>

#include "congraph/reclaim.hpp"

using namespace congraph;

namespace {

std::atomic<int> freed_count{0};

void counting_deleter(void* node, void*) {
    ++freed_count;
    delete static_cast<int*>(node);
}

}  // namespace

TEST_CASE("retire with no concurrent guards frees after a flush cycle") {
    freed_count = 0;
    EpochReclaimer r(2, ReclaimMode::Epoch);
    unsigned s = r.acquire_slot();
    r.retire(s, new int(1), counting_deleter, nullptr);
    CHECK(freed_count == 0);
    // Two flushes: each advances the epoch once; entries age out after two.
    r.flush(s);
    r.flush(s);
    r.flush(s);
    CHECK(freed_count == 1);
    CHECK(r.drained_count() == 1);
    r.release_slot(s);
}

TEST_CASE("a guard pinned before retirement blocks reclamation") {
    freed_count = 0;
    EpochReclaimer r(2, ReclaimMode::Epoch);
    unsigned a = r.acquire_slot();
    unsigned b = r.acquire_slot();
    r.pin(b);  // reader active before the retire
    r.retire(a, new int(2), counting_deleter, nullptr);
    for (int i = 0; i < 10; ++i) r.flush(a);
    CHECK(freed_count == 0);  // epoch cannot advance past the pinned reader
    r.unpin(b);
    r.flush(a);
    r.flush(a);
    r.flush(a);
    CHECK(freed_count == 1);
    r.release_slot(a);
    r.release_slot(b);
}

TEST_CASE("quiesce drains everything regardless of epoch age") {
    freed_count = 0;
    EpochReclaimer r(1, ReclaimMode::Epoch);
    unsigned s = r.acquire_slot();
    for (int i = 0; i < 5; ++i) {
        r.retire(s, new int(i), counting_deleter, nullptr);
    }
    r.quiesce();
    CHECK(freed_count == 5);
    CHECK(r.retired_count() == 5);
    CHECK(r.drained_count() == 5);
    r.release_slot(s);
}

TEST_CASE("leak mode defers every free to quiesce") {
    freed_count = 0;
    EpochReclaimer r(1, ReclaimMode::Leak);
    unsigned s = r.acquire_slot();
    for (int i = 0; i < 200; ++i) {  // above the auto-flush threshold
        r.retire(s, new int(i), counting_deleter, nullptr);
    }
    r.flush(s);
    CHECK(freed_count == 0);
    r.quiesce();
    CHECK(freed_count == 200);
    r.release_slot(s);
}

TEST_CASE("double retire is detected with debug tracking") {
    freed_count = 0;
    EpochReclaimer r(1, ReclaimMode::Leak, /*debug_track_retired=*/true);
    unsigned s = r.acquire_slot();
    int* n = new int(7);
    r.retire(s, n, counting_deleter, nullptr);
    CHECK_THROWS_AS(r.retire(s, n, counting_deleter, nullptr),
                    std::logic_error);
    r.quiesce();
    CHECK(freed_count == 1);
    r.release_slot(s);
}

TEST_CASE("slot registry enforces capacity and reuse") {
    EpochReclaimer r(2, ReclaimMode::Epoch);
    unsigned a = r.acquire_slot();
    unsigned b = r.acquire_slot();
    CHECK(a != b);
    CHECK_THROWS_AS(r.acquire_slot(), std::runtime_error);
    r.release_slot(a);
    unsigned c = r.acquire_slot();
    CHECK(c == a);
    r.release_slot(b);
    r.release_slot(c);
}

TEST_CASE("pin and unpin toggle the slot's active state") {
    EpochReclaimer r(1, ReclaimMode::Epoch);
    unsigned s = r.acquire_slot();
    CHECK(!r.is_pinned(s));
    r.pin(s);
    CHECK(r.is_pinned(s));
    r.unpin(s);
    CHECK(!r.is_pinned(s));
    r.release_slot(s);
}

TEST_CASE("destructor frees whatever is still pending") {
    freed_count = 0;
    {
        EpochReclaimer r(1, ReclaimMode::Epoch);
        unsigned s = r.acquire_slot();
        r.retire(s, new int(9), counting_deleter, nullptr);
        r.release_slot(s);
    }
    CHECK(freed_count == 1);
}
