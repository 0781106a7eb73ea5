#include <doctest.h>

#include <atomic>
#include <thread>
#include <vector>

#include "congraph/graph.hpp"

using namespace congraph;

TEST_CASE("add, contains, remove on a fresh graph") {
    Graph g(1);
    auto h = g.attach();
    CHECK(!h.contains_vertex(1));
    CHECK(h.add_vertex(5));
    CHECK(!h.add_vertex(5));  // already present
    CHECK(h.contains_vertex(5));
    CHECK(h.remove_vertex(5));
    CHECK(!h.contains_vertex(5));
    CHECK(!h.remove_vertex(5));
    CHECK(!h.remove_vertex(7));  // never present
}

TEST_CASE("keys outside the open sentinel interval are rejected") {
    Graph g(1);
    auto h = g.attach();
    CHECK_THROWS_AS(h.add_vertex(kKeyMin), std::invalid_argument);
    CHECK_THROWS_AS(h.contains_vertex(kKeyMax), std::invalid_argument);
    CHECK_THROWS_AS(h.remove_vertex(kKeyMin), std::invalid_argument);
}

TEST_CASE("locate returns the adjacent pair around the search key") {
    Graph g(1);
    auto h = g.attach();
    h.add_vertex(5);
    h.add_vertex(9);
    // list is [-inf, 5, 9, +inf]
    CHECK(h.locate(9) == std::pair<Key, Key>(5, 9));
    CHECK(h.locate(6) == std::pair<Key, Key>(5, 9));
    CHECK(h.locate(5) == std::pair<Key, Key>(kKeyMin, 5));
    CHECK(h.locate(100) == std::pair<Key, Key>(9, kKeyMax));
}

TEST_CASE("locate on an empty graph straddles the sentinels") {
    Graph g(1);
    auto h = g.attach();
    CHECK(h.locate(7) == std::pair<Key, Key>(kKeyMin, kKeyMax));
    CHECK(h.locate_relaxed(7) == std::pair<Key, Key>(kKeyMin, kKeyMax));
}

TEST_CASE("helping traversal unlinks a logically removed vertex") {
    Graph g(1, ReclaimMode::Leak);
    auto h = g.attach();
    h.add_vertex(5);
    h.add_vertex(9);
    REQUIRE(h.debug_mark_vertex(5));  // logical removal without unlink
    CHECK(!h.contains_vertex(5));
    // The help-free traversal still walks through the marked node.
    CHECK(h.locate_relaxed(5) == std::pair<Key, Key>(kKeyMin, 5));
    // The helping traversal detaches it and returns the clean pair.
    CHECK(h.locate(9) == std::pair<Key, Key>(kKeyMin, 9));
    CHECK(h.locate_relaxed(5) == std::pair<Key, Key>(kKeyMin, 9));
    CHECK(h.vertex_keys() == std::vector<Key>{9});
}

TEST_CASE("removal after a mark injection reports not-present") {
    Graph g(1, ReclaimMode::Leak);
    auto h = g.attach();
    h.add_vertex(5);
    REQUIRE(h.debug_mark_vertex(5));
    CHECK(!h.remove_vertex(5));  // the injected removal already won
}

TEST_CASE("vertex keys stay sorted and unique under churn") {
    Graph g(1);
    auto h = g.attach();
    for (Key k : {9, 3, 7, 1, 5, 3, 9}) h.add_vertex(k);
    CHECK(h.vertex_keys() == std::vector<Key>{1, 3, 5, 7, 9});
    h.remove_vertex(3);
    h.remove_vertex(9);
    h.add_vertex(4);
    CHECK(h.vertex_keys() == std::vector<Key>{1, 4, 5, 7});
}

TEST_CASE("concurrent add_vertex on one key has exactly one winner") {
    constexpr int kThreads = 4;
    constexpr int kRounds = 300;
    Graph g(kThreads);
    std::atomic<int> round{-1};
    std::atomic<int> done{0};
    std::atomic<int> wins{0};
    std::vector<std::thread> ts;
    for (int t = 0; t < kThreads; ++t) {
        ts.emplace_back([&] {
            auto h = g.attach();
            for (int r = 0; r < kRounds; ++r) {
                while (round.load() < r) std::this_thread::yield();
                if (h.add_vertex(r + 1)) wins.fetch_add(1);
                done.fetch_add(1);
            }
        });
    }
    for (int r = 0; r < kRounds; ++r) {
        round.store(r);
        while (done.load() < (r + 1) * kThreads) std::this_thread::yield();
    }
    for (auto& t : ts) t.join();
    CHECK(wins.load() == kRounds);
}

TEST_CASE("concurrent remove_vertex on one key has exactly one winner") {
    constexpr int kThreads = 4;
    constexpr int kRounds = 300;
    Graph g(kThreads + 1);
    auto setup = g.attach();
    std::atomic<int> round{-1};
    std::atomic<int> done{0};
    std::atomic<int> wins{0};
    std::vector<std::thread> ts;
    for (int t = 0; t < kThreads; ++t) {
        ts.emplace_back([&] {
            auto h = g.attach();
            for (int r = 0; r < kRounds; ++r) {
                while (round.load() < r) std::this_thread::yield();
                if (h.remove_vertex(r + 1)) wins.fetch_add(1);
                done.fetch_add(1);
            }
        });
    }
    for (int r = 0; r < kRounds; ++r) {
        setup.add_vertex(r + 1);
        round.store(r);
        while (done.load() < (r + 1) * kThreads) std::this_thread::yield();
    }
    for (auto& t : ts) t.join();
    CHECK(wins.load() == kRounds);
}

TEST_CASE("contains_vertex performs no synchronization instructions") {
    Graph g(1);
    auto h = g.attach();
    for (Key k = 1; k <= 50; ++k) h.add_vertex(k);
    reset_op_counters();
    for (Key k = 1; k <= 60; ++k) h.contains_vertex(k);
    CHECK(op_counters().cas_attempts == 0);
    CHECK(op_counters().faa_ops == 0);
    CHECK(op_counters().traversal_steps > 0);
}

TEST_CASE("mixed concurrent churn keeps the list consistent") {
    constexpr int kThreads = 4;
    Graph g(kThreads);
    std::vector<std::thread> ts;
    for (int t = 0; t < kThreads; ++t) {
        ts.emplace_back([&, t] {
            auto h = g.attach();
            for (int i = 0; i < 3000; ++i) {
                Key k = 1 + ((i * 7 + t * 13) % 40);
                switch ((i + t) % 3) {
                    case 0: h.add_vertex(k); break;
                    case 1: h.remove_vertex(k); break;
                    default: h.contains_vertex(k); break;
                }
            }
        });
    }
    for (auto& t : ts) t.join();
    auto h = g.attach();
    h.purge();
    auto keys = h.vertex_keys();
    for (std::size_t i = 1; i < keys.size(); ++i) {
        CHECK(keys[i - 1] < keys[i]);
    }
    for (Key k : keys) CHECK(h.contains_vertex(k));
}
