#include "congraph/graph.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <stdexcept>
#include <thread>

namespace congraph {

namespace detail {

struct ENode {
    const Key dest_key;
    VNode* const ptv;  // destination vertex; null for sentinels
    TaggedLink enxt;

    ENode(Key k, VNode* v) : dest_key(k), ptv(v) {}
};

struct VNode {
    const Key key;
    TaggedLink vnxt;
    TaggedLink enxt;  // head sentinel of the edge list; set once
    std::atomic<std::uint64_t> ecnt{0};
    // Shadow of the ecnt increments made at the loc_e purge site; lets the
    // harness reconcile ecnt exactly at quiescence.
    std::atomic<std::uint64_t> purge_cnt{0};
    // Incoming ENode reference count plus lifecycle flags; the node's
    // storage is released only once it is condemned and no edge points
    // at it, so stale ptv pointers never dangle.
    std::atomic<std::uint64_t> ref_state{0};
    std::unique_ptr<std::uint64_t[]> visited;  // slot t written by thread t

    VNode(Key k, unsigned nthreads) : key(k) {
        if (nthreads > 0) {
            visited = std::make_unique<std::uint64_t[]>(nthreads);
            for (unsigned i = 0; i < nthreads; ++i) visited[i] = 0;
        }
    }
};

static_assert(alignof(VNode) >= 8 && alignof(ENode) >= 8,
              "mark bit needs free low pointer bits");

// ref_state layout: low bits count incoming edges; flags mark the node as
// condemned (safe to delete at count zero) and as having gone through retire.
inline constexpr std::uint64_t kCondemned = 1ull << 63;
inline constexpr std::uint64_t kRetired = 1ull << 62;
inline constexpr std::uint64_t kRefCountMask = kRetired - 1;

inline ENode* edge_head(const VNode* v) {
    return link_target<ENode>(v->enxt.load(std::memory_order_relaxed));
}

inline bool node_marked(const VNode* v) {
    return is_marked(v->vnxt.load());
}

}  // namespace detail

using detail::ENode;
using detail::VNode;

namespace {

struct PinGuard {
    EpochReclaimer& r;
    unsigned slot;
    PinGuard(EpochReclaimer& rec, unsigned s) : r(rec), slot(s) { r.pin(s); }
    ~PinGuard() { r.unpin(slot); }
};

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

// ---------------------------------------------------------------------------
// EdgeOutcome strings

const char* to_string(EdgeOutcome o) {
    switch (o) {
        case EdgeOutcome::VertexNotPresent: return "VERTEX_NOT_PRESENT";
        case EdgeOutcome::EdgePresent: return "EDGE_PRESENT";
        case EdgeOutcome::EdgeAdded: return "EDGE_ADDED";
        case EdgeOutcome::EdgeNotPresent: return "EDGE_NOT_PRESENT";
        case EdgeOutcome::EdgeRemoved: return "EDGE_REMOVED";
        case EdgeOutcome::EdgeFound: return "EDGE_FOUND";
        case EdgeOutcome::VertexOrEdgeNotPresent:
            return "VERTEX_OR_EDGE_NOT_PRESENT";
    }
    return "?";
}

const char* indicative_string(EdgeOutcome o) {
    switch (o) {
        case EdgeOutcome::VertexNotPresent: return "VERTEX NOT PRESENT";
        case EdgeOutcome::EdgePresent: return "EDGE PRESENT";
        case EdgeOutcome::EdgeAdded: return "EDGE ADDED";
        case EdgeOutcome::EdgeNotPresent: return "EDGE NOT PRESENT";
        case EdgeOutcome::EdgeRemoved: return "EDGE REMOVED";
        case EdgeOutcome::EdgeFound: return "EDGE FOUND";
        case EdgeOutcome::VertexOrEdgeNotPresent:
            return "VERTEX OR EDGE NOT PRESENT";
    }
    return "?";
}

std::optional<EdgeOutcome> edge_outcome_from_string(const std::string& s) {
    static const EdgeOutcome all[] = {
        EdgeOutcome::VertexNotPresent,  EdgeOutcome::EdgePresent,
        EdgeOutcome::EdgeAdded,         EdgeOutcome::EdgeNotPresent,
        EdgeOutcome::EdgeRemoved,       EdgeOutcome::EdgeFound,
        EdgeOutcome::VertexOrEdgeNotPresent,
    };
    for (EdgeOutcome o : all) {
        if (s == to_string(o) || s == indicative_string(o)) return o;
    }
    // "EDGE PRESENT" doubles as the lookup hit spelling in the ADT text.
    if (s == "EDGE PRESENT" || s == "EDGE_PRESENT") {
        return EdgeOutcome::EdgePresent;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// BfsTree

std::vector<Key> BfsTree::path_keys() const {
    std::vector<Key> out;
    if (recs_.empty()) return out;
    std::int32_t i = static_cast<std::int32_t>(recs_.size()) - 1;
    while (i >= 0) {
        out.push_back(recs_[static_cast<std::size_t>(i)].key);
        i = recs_[static_cast<std::size_t>(i)].pred;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Graph construction / destruction

Graph::Graph(unsigned max_threads, ReclaimMode mode)
    : max_threads_(max_threads), reclaimer_(max_threads, mode) {
    if (max_threads == 0) {
        throw std::invalid_argument("Graph: max_threads must be > 0");
    }
    head_ = new VNode(kKeyMin, 0);
    tail_ = new VNode(kKeyMax, 0);
    head_->vnxt.init(make_link(tail_));
}

Graph::~Graph() {
    // Snapshot the vertex chain (marked nodes included), then release edge
    // chains first so every incoming reference is dropped before any vertex
    // object goes away.
    std::vector<VNode*> chain;
    for (VNode* v = link_target<VNode>(head_->vnxt.load()); v != tail_;
         v = link_target<VNode>(v->vnxt.load())) {
        chain.push_back(v);
    }
    for (VNode* v : chain) free_edge_chain(v);
    reclaimer_.quiesce();
    for (VNode* v : chain) {
        std::uint64_t prev =
            v->ref_state.fetch_or(detail::kCondemned, std::memory_order_acq_rel);
        if ((prev & detail::kRefCountMask) == 0) delete v;
    }
    delete head_;
    delete tail_;
}

GraphHandle Graph::attach() {
    return GraphHandle(this, reclaimer_.acquire_slot());
}

ReclaimStats Graph::reclaim_stats() const {
    return {reclaimer_.retired_count(),
            freed_retired_.load(std::memory_order_relaxed)};
}

void Graph::quiesce() { reclaimer_.quiesce(); }

VNode* Graph::make_vnode(Key k) const {
    auto* v = new VNode(k, max_threads_);
    auto* eh = new ENode(kKeyMin, nullptr);
    auto* et = new ENode(kKeyMax, nullptr);
    eh->enxt.init(make_link(et));
    v->enxt.init(make_link(eh));
    return v;
}

void Graph::free_unpublished_vnode(VNode* v) const {
    ENode* eh = detail::edge_head(v);
    delete link_target<ENode>(eh->enxt.load());
    delete eh;
    delete v;
}

// ---------------------------------------------------------------------------
// Reclamation plumbing

void Graph::dec_target_ref(VNode* v) {
    std::uint64_t prev = v->ref_state.fetch_sub(1, std::memory_order_acq_rel);
    assert((prev & detail::kRefCountMask) != 0);
    if (prev == (detail::kCondemned | detail::kRetired | 1)) {
        freed_retired_.fetch_add(1, std::memory_order_relaxed);
        delete v;
    } else if (prev == (detail::kCondemned | 1)) {
        delete v;
    }
}

void Graph::free_edge_chain(VNode* v) {
    ENode* e = detail::edge_head(v);
    while (e != nullptr) {
        ENode* nx = link_target<ENode>(e->enxt.load());
        if (e->ptv != nullptr) dec_target_ref(e->ptv);
        delete e;
        e = nx;
    }
}

void Graph::enode_deleter(void* node, void* ctx) {
    auto* self = static_cast<Graph*>(ctx);
    auto* e = static_cast<ENode*>(node);
    if (e->ptv != nullptr) self->dec_target_ref(e->ptv);
    self->freed_retired_.fetch_add(1, std::memory_order_relaxed);
    delete e;
}

void Graph::vnode_deleter(void* node, void* ctx) {
    auto* self = static_cast<Graph*>(ctx);
    auto* v = static_cast<VNode*>(node);
    self->free_edge_chain(v);
    std::uint64_t prev = v->ref_state.fetch_or(
        detail::kCondemned | detail::kRetired, std::memory_order_acq_rel);
    if ((prev & detail::kRefCountMask) == 0) {
        self->freed_retired_.fetch_add(1, std::memory_order_relaxed);
        delete v;
    }
}

void Graph::retire_vnode(unsigned slot, VNode* v) {
    reclaimer_.retire(slot, v, &Graph::vnode_deleter, this);
}

void Graph::retire_enode(unsigned slot, ENode* e) {
    reclaimer_.retire(slot, e, &Graph::enode_deleter, this);
}

// ---------------------------------------------------------------------------
// Vertex traversals

Graph::Locate Graph::loc_v(unsigned slot, VNode* start, Key k) {
retry:
    VNode* pv = start;
    VNode* cv = link_target<VNode>(pv->vnxt.load());
    for (;;) {
        ++detail::tl_op_counters.traversal_steps;
        LinkWord cn = cv->vnxt.load();
        if (is_marked(cn)) {
            // cv is logically removed: complete the pending removal.
            if (!pv->vnxt.cas(make_link(cv), unmark_ref(cn))) {
                if (start != head_ && detail::node_marked(start)) {
                    return {nullptr, nullptr};
                }
                goto retry;
            }
            retire_vnode(slot, cv);
            cv = link_target<VNode>(cn);
            continue;
        }
        if (cv->key >= k) return {pv, cv};
        pv = cv;
        cv = link_target<VNode>(cn);
    }
}

Graph::Locate Graph::loc_c(VNode* start, Key k) const {
    VNode* pv = start;
    VNode* cv = link_target<VNode>(pv->vnxt.load());
    while (cv->key < k) {
        ++detail::tl_op_counters.traversal_steps;
        pv = cv;
        cv = link_target<VNode>(cv->vnxt.load());
    }
    return {pv, cv};
}

Graph::PairResult Graph::conv_plus(unsigned slot, Key k, Key l) {
    for (;;) {
        Key lo = std::min(k, l);
        Key hi = std::max(k, l);
        Locate first = loc_v(slot, head_, lo);
        if (first.curr->key != lo) return {nullptr, nullptr, false};
        Locate second = loc_v(slot, first.curr, hi);
        if (second.curr == nullptr) continue;  // first got removed mid-way
        if (second.curr->key != hi) return {nullptr, nullptr, false};
        VNode* u = (k < l) ? first.curr : second.curr;
        VNode* v = (k < l) ? second.curr : first.curr;
        return {u, v, true};
    }
}

Graph::PairResult Graph::conc_plus(Key k, Key l) const {
    Key lo = std::min(k, l);
    Key hi = std::max(k, l);
    Locate first = loc_c(head_, lo);
    if (first.curr->key != lo) return {nullptr, nullptr, false};
    Locate second = loc_c(first.curr, hi);
    if (second.curr->key != hi) return {nullptr, nullptr, false};
    VNode* u = (k < l) ? first.curr : second.curr;
    VNode* v = (k < l) ? second.curr : first.curr;
    return {u, v, true};
}

// ---------------------------------------------------------------------------
// Vertex operations

bool Graph::add_vertex(unsigned slot, Key k) {
    for (;;) {
        Locate pos = loc_v(slot, head_, k);
        if (pos.curr->key == k) return false;
        VNode* nv = make_vnode(k);
        nv->vnxt.init(make_link(pos.curr));
        if (pos.pred->vnxt.cas(make_link(pos.curr), make_link(nv))) {
            return true;
        }
        free_unpublished_vnode(nv);
    }
}

bool Graph::remove_vertex(unsigned slot, Key k) {
    for (;;) {
        Locate pos = loc_v(slot, head_, k);
        if (pos.curr->key != k) return false;
        VNode* cv = pos.curr;
        LinkWord cn = cv->vnxt.load();
        if (is_marked(cn)) continue;  // lost to a concurrent removal
        if (cv->vnxt.cas(cn, mark_ref(cn))) {
            // Logical removal done; one best-effort unlink, then helpers
            // take over.
            if (pos.pred->vnxt.cas(make_link(cv), unmark_ref(cn))) {
                retire_vnode(slot, cv);
            }
            return true;
        }
    }
}

bool Graph::contains_vertex(Key k) const {
    VNode* cv = link_target<VNode>(head_->vnxt.load());
    while (cv->key < k) {
        ++detail::tl_op_counters.traversal_steps;
        cv = link_target<VNode>(cv->vnxt.load());
    }
    return cv->key == k && !detail::node_marked(cv);
}

// ---------------------------------------------------------------------------
// Edge traversal and operations

Graph::LocateE Graph::loc_e(unsigned slot, VNode* u, Key l) {
    ENode* head = detail::edge_head(u);
retry:
    ENode* pe = head;
    ENode* ce = link_target<ENode>(pe->enxt.load());
    for (;;) {
        ++detail::tl_op_counters.traversal_steps;
        LinkWord cnt = ce->enxt.load();
        VNode* vn = ce->ptv;
        if (vn != nullptr && detail::node_marked(vn) && !is_marked(cnt)) {
            // Destination vertex is logically removed: condemn this edge,
            // then detach it.
            if (!ce->enxt.cas(cnt, mark_ref(cnt))) goto retry;
            if (!pe->enxt.cas(make_link(ce), unmark_ref(cnt))) goto retry;
            retire_enode(slot, ce);
            ce = link_target<ENode>(cnt);
            continue;
        }
        if (is_marked(cnt)) {
            // Logically removed edge: bump the owner's counter on the
            // remover's behalf before detaching.
            counter_faa(u->ecnt, 1);
            u->purge_cnt.fetch_add(1, std::memory_order_relaxed);
            if (!pe->enxt.cas(make_link(ce), unmark_ref(cnt))) goto retry;
            retire_enode(slot, ce);
            ce = link_target<ENode>(cnt);
            continue;
        }
        if (ce->dest_key >= l) return {pe, ce};
        pe = ce;
        ce = link_target<ENode>(cnt);
    }
}

EdgeOutcome Graph::add_edge(unsigned slot, Key k, Key l) {
    PairResult pr = conv_plus(slot, k, l);
    if (!pr.ok) return EdgeOutcome::VertexNotPresent;
    for (;;) {
        // Revalidate before every attempt; otherwise an edge could be
        // published between two vertices that never coexisted.
        if (detail::node_marked(pr.u) || detail::node_marked(pr.v)) {
            return EdgeOutcome::VertexNotPresent;
        }
        LocateE pos = loc_e(slot, pr.u, l);
        if (pos.curr->dest_key == l) return EdgeOutcome::EdgePresent;
        auto* ne = new ENode(l, pr.v);
        pr.v->ref_state.fetch_add(1, std::memory_order_acq_rel);
        ne->enxt.init(make_link(pos.curr));
        if (pos.pred->enxt.cas(make_link(pos.curr), make_link(ne))) {
            counter_faa(pr.u->ecnt, 1);
            return EdgeOutcome::EdgeAdded;
        }
        pr.v->ref_state.fetch_sub(1, std::memory_order_acq_rel);
        delete ne;
    }
}

EdgeOutcome Graph::remove_edge(unsigned slot, Key k, Key l) {
    PairResult pr = conv_plus(slot, k, l);
    if (!pr.ok) return EdgeOutcome::VertexNotPresent;
    for (;;) {
        if (detail::node_marked(pr.u) || detail::node_marked(pr.v)) {
            return EdgeOutcome::VertexNotPresent;
        }
        LocateE pos = loc_e(slot, pr.u, l);
        if (pos.curr->dest_key != l) return EdgeOutcome::EdgeNotPresent;
        ENode* ce = pos.curr;
        LinkWord cnt = ce->enxt.load();
        if (is_marked(cnt)) continue;  // another remover got here first
        if (ce->enxt.cas(cnt, mark_ref(cnt))) {
            counter_faa(pr.u->ecnt, 1);
            if (pos.pred->enxt.cas(make_link(ce), cnt)) {
                retire_enode(slot, ce);
            } else {
                // A traversal ahead of us will detach it; make sure it is
                // gone before reporting.
                loc_e(slot, pr.u, l);
            }
            return EdgeOutcome::EdgeRemoved;
        }
    }
}

EdgeOutcome Graph::contains_edge(Key k, Key l) const {
    PairResult pr = conc_plus(k, l);
    if (!pr.ok) return EdgeOutcome::VertexNotPresent;
    ENode* ce = link_target<ENode>(detail::edge_head(pr.u)->enxt.load());
    while (ce->dest_key < l) {
        ++detail::tl_op_counters.traversal_steps;
        ce = link_target<ENode>(ce->enxt.load());
    }
    // The destination is validated through the edge's own ptv: a stale
    // ENode left behind by a removed vertex keeps pointing at the marked
    // old node even after the key is re-added, and must not be reported.
    if (ce->dest_key == l && !detail::node_marked(pr.u) &&
        !detail::node_marked(ce->ptv) && !is_marked(ce->enxt.load())) {
        return EdgeOutcome::EdgeFound;
    }
    return EdgeOutcome::VertexOrEdgeNotPresent;
}

// ---------------------------------------------------------------------------
// Reachability

bool Graph::tree_collect(VNode* u, VNode* v, unsigned tid,
                         std::uint64_t visit_epoch, BfsTree& out) const {
    out.recs_.clear();
    u->visited[tid] = visit_epoch;
    out.recs_.push_back(
        {u, u->key, u->ecnt.load(std::memory_order_acquire), -1});
    for (std::size_t qi = 0; qi < out.recs_.size(); ++qi) {
        auto* cur = static_cast<const VNode*>(out.recs_[qi].node);
        ENode* itn = link_target<ENode>(detail::edge_head(cur)->enxt.load());
        while (itn->dest_key < kKeyMax) {
            LinkWord en = itn->enxt.load();
            if (!is_marked(en)) {
                VNode* adjn = itn->ptv;
                if (!detail::node_marked(adjn)) {
                    if (adjn == v) {
                        out.recs_.push_back(
                            {adjn, adjn->key,
                             adjn->ecnt.load(std::memory_order_acquire),
                             static_cast<std::int32_t>(qi)});
                        return true;
                    }
                    if (adjn->visited[tid] != visit_epoch) {
                        adjn->visited[tid] = visit_epoch;
                        out.recs_.push_back(
                            {adjn, adjn->key,
                             adjn->ecnt.load(std::memory_order_acquire),
                             static_cast<std::int32_t>(qi)});
                    }
                }
            }
            itn = link_target<ENode>(en);
        }
    }
    return false;
}

namespace {

bool records_equal(const BfsTree::Record& a, const BfsTree::Record& b) {
    return a.node == b.node && a.mod_count == b.mod_count && a.pred == b.pred;
}

}  // namespace

bool GraphHandle::compare_tree(const BfsTree& a, const BfsTree& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!records_equal(a[i], b[i])) return false;
    }
    return true;
}

bool GraphHandle::compare_path(const BfsTree& a, const BfsTree& b) {
    if (a.empty() || b.empty()) return false;
    std::int32_t ia = static_cast<std::int32_t>(a.size()) - 1;
    std::int32_t ib = static_cast<std::int32_t>(b.size()) - 1;
    while (ia >= 0 && ib >= 0) {
        const auto& ra = a[static_cast<std::size_t>(ia)];
        const auto& rb = b[static_cast<std::size_t>(ib)];
        if (ra.node != rb.node || ra.mod_count != rb.mod_count) return false;
        ia = ra.pred;
        ib = rb.pred;
    }
    return ia < 0 && ib < 0;
}

PathResult Graph::scan(VNode* u, VNode* v, unsigned tid,
                       std::uint64_t& visit_epoch, std::uint32_t max_rounds) {
    BfsTree ot, nt;
    std::uint32_t collects = 0;
    bool f1 = tree_collect(u, v, tid, ++visit_epoch, ot);
    ++collects;
    std::uint32_t rounds = 0;
    for (;;) {
        bool f2 = tree_collect(u, v, tid, ++visit_epoch, nt);
        ++collects;
        if (f1 && f2 && GraphHandle::compare_path(ot, nt)) {
            return {PathStatus::Found, nt.path_keys(), collects};
        }
        if (!f1 && !f2 && GraphHandle::compare_tree(ot, nt)) {
            return {PathStatus::NoPath, {}, collects};
        }
        ++rounds;
        if (max_rounds != 0 && rounds >= max_rounds) {
            return {PathStatus::Inconclusive, {}, collects};
        }
        f1 = f2;
        std::swap(ot, nt);
        // Contention backoff: give the interfering modifier a chance to
        // finish before the next collection.
        std::this_thread::yield();
    }
}

PathResult Graph::get_path(unsigned slot, Key k, Key l,
                           std::uint64_t& visit_epoch,
                           std::uint32_t max_rounds) {
    PairResult pr = conc_plus(k, l);
    if (!pr.ok) return {PathStatus::NoPath, {}, 0};
    if (detail::node_marked(pr.u) || detail::node_marked(pr.v)) {
        return {PathStatus::NoPath, {}, 0};
    }
    return scan(pr.u, pr.v, slot, visit_epoch, max_rounds);
}

void Graph::purge(unsigned slot) {
    loc_v(slot, head_, kKeyMax);
    for (VNode* v = link_target<VNode>(head_->vnxt.load()); v != tail_;
         v = link_target<VNode>(v->vnxt.load())) {
        if (!detail::node_marked(v)) {
            loc_e(slot, v, kKeyMax);
        }
    }
    reclaimer_.flush(slot);
}

// ---------------------------------------------------------------------------
// GraphHandle

GraphHandle::GraphHandle(GraphHandle&& other) noexcept
    : graph_(other.graph_),
      slot_(other.slot_),
      visit_epoch_(other.visit_epoch_) {
    other.graph_ = nullptr;
}

GraphHandle& GraphHandle::operator=(GraphHandle&& other) noexcept {
    if (this != &other) {
        if (graph_ != nullptr) graph_->reclaimer_.release_slot(slot_);
        graph_ = other.graph_;
        slot_ = other.slot_;
        visit_epoch_ = other.visit_epoch_;
        other.graph_ = nullptr;
    }
    return *this;
}

GraphHandle::~GraphHandle() {
    if (graph_ != nullptr) graph_->reclaimer_.release_slot(slot_);
}

bool GraphHandle::add_vertex(Key k) {
    check_key(k);
    PinGuard pin(graph_->reclaimer_, slot_);
    return graph_->add_vertex(slot_, k);
}

bool GraphHandle::remove_vertex(Key k) {
    check_key(k);
    PinGuard pin(graph_->reclaimer_, slot_);
    return graph_->remove_vertex(slot_, k);
}

bool GraphHandle::contains_vertex(Key k) {
    check_key(k);
    PinGuard pin(graph_->reclaimer_, slot_);
    return graph_->contains_vertex(k);
}

EdgeOutcome GraphHandle::add_edge(Key k, Key l) {
    check_edge_args(k, l);
    PinGuard pin(graph_->reclaimer_, slot_);
    return graph_->add_edge(slot_, k, l);
}

EdgeOutcome GraphHandle::remove_edge(Key k, Key l) {
    check_edge_args(k, l);
    PinGuard pin(graph_->reclaimer_, slot_);
    return graph_->remove_edge(slot_, k, l);
}

EdgeOutcome GraphHandle::contains_edge(Key k, Key l) {
    check_edge_args(k, l);
    PinGuard pin(graph_->reclaimer_, slot_);
    return graph_->contains_edge(k, l);
}

PathResult GraphHandle::get_path(Key k, Key l) {
    check_edge_args(k, l);
    PinGuard pin(graph_->reclaimer_, slot_);
    return graph_->get_path(slot_, k, l, visit_epoch_, 0);
}

PathResult GraphHandle::get_path_bounded(Key k, Key l,
                                         std::uint32_t max_scans) {
    check_edge_args(k, l);
    if (max_scans == 0) {
        throw std::invalid_argument("max_scans must be >= 1");
    }
    PinGuard pin(graph_->reclaimer_, slot_);
    return graph_->get_path(slot_, k, l, visit_epoch_, max_scans);
}

bool GraphHandle::tree_collect(Key from, Key to, BfsTree& out) {
    check_edge_args(from, to);
    PinGuard pin(graph_->reclaimer_, slot_);
    Graph::PairResult pr = graph_->conc_plus(from, to);
    if (!pr.ok || detail::node_marked(pr.u) || detail::node_marked(pr.v)) {
        out.clear();
        return false;
    }
    return graph_->tree_collect(pr.u, pr.v, slot_, ++visit_epoch_, out);
}

std::pair<Key, Key> GraphHandle::locate(Key k) {
    check_key(k);
    PinGuard pin(graph_->reclaimer_, slot_);
    Graph::Locate pos = graph_->loc_v(slot_, graph_->head_, k);
    return {pos.pred->key, pos.curr->key};
}

std::pair<Key, Key> GraphHandle::locate_relaxed(Key k) {
    check_key(k);
    PinGuard pin(graph_->reclaimer_, slot_);
    Graph::Locate pos = graph_->loc_c(graph_->head_, k);
    return {pos.pred->key, pos.curr->key};
}

bool GraphHandle::debug_mark_vertex(Key k) {
    check_key(k);
    PinGuard pin(graph_->reclaimer_, slot_);
    Graph::Locate pos = graph_->loc_c(graph_->head_, k);
    VNode* cv = pos.curr;
    if (cv->key != k) return false;
    LinkWord cn = cv->vnxt.load();
    if (is_marked(cn)) return false;
    return cv->vnxt.cas(cn, mark_ref(cn));
}

bool GraphHandle::debug_mark_edge(Key k, Key l) {
    check_edge_args(k, l);
    PinGuard pin(graph_->reclaimer_, slot_);
    Graph::PairResult pr = graph_->conc_plus(k, l);
    if (!pr.ok) return false;
    ENode* ce = link_target<ENode>(detail::edge_head(pr.u)->enxt.load());
    while (ce->dest_key < l) {
        ce = link_target<ENode>(ce->enxt.load());
    }
    if (ce->dest_key != l) return false;
    LinkWord cnt = ce->enxt.load();
    if (is_marked(cnt)) return false;
    return ce->enxt.cas(cnt, mark_ref(cnt));
}

std::optional<VertexCounters> GraphHandle::vertex_counters(Key k) {
    check_key(k);
    PinGuard pin(graph_->reclaimer_, slot_);
    Graph::Locate pos = graph_->loc_c(graph_->head_, k);
    if (pos.curr->key != k || detail::node_marked(pos.curr)) {
        return std::nullopt;
    }
    return VertexCounters{
        pos.curr->ecnt.load(std::memory_order_acquire),
        pos.curr->purge_cnt.load(std::memory_order_acquire)};
}

std::vector<Key> GraphHandle::vertex_keys() {
    PinGuard pin(graph_->reclaimer_, slot_);
    std::vector<Key> out;
    for (VNode* v = link_target<VNode>(graph_->head_->vnxt.load());
         v != graph_->tail_; v = link_target<VNode>(v->vnxt.load())) {
        if (!detail::node_marked(v)) out.push_back(v->key);
    }
    return out;
}

void GraphHandle::purge() {
    PinGuard pin(graph_->reclaimer_, slot_);
    graph_->purge(slot_);
}

}  // namespace congraph
