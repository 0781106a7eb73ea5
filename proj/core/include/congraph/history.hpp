#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "congraph/graph.hpp"

namespace congraph {

enum class OpKind {
    AddVertex,
    RemoveVertex,
    ContainsVertex,
    AddEdge,
    RemoveEdge,
    ContainsEdge,
    GetPath,
};

const char* to_string(OpKind op);
std::optional<OpKind> op_kind_from_string(const std::string& s);

// Operation result in one of three shapes, depending on the op.
struct OpResult {
    enum class Kind { Bool, Edge, Path } kind = Kind::Bool;
    bool b = false;
    EdgeOutcome edge = EdgeOutcome::VertexNotPresent;
    std::optional<std::vector<Key>> path;  // nullopt means nil

    static OpResult of_bool(bool v);
    static OpResult of_edge(EdgeOutcome o);
    static OpResult of_path(std::optional<std::vector<Key>> p);

    bool operator==(const OpResult& other) const;
    std::string to_wire() const;
};

// One completed operation: invocation and response with logical timestamps.
// Per-thread events never overlap.
struct HistoryEvent {
    unsigned tid = 0;
    OpKind op = OpKind::AddVertex;
    std::vector<Key> args;
    OpResult result;
    std::uint64_t t_inv = 0;
    std::uint64_t t_res = 0;

    // `tid op args result t_inv t_res`, args comma-joined.
    std::string to_line() const;
    static std::optional<HistoryEvent> from_line(const std::string& line);
};

using History = std::vector<HistoryEvent>;

std::string serialize_history(const History& h);
// Throws std::runtime_error with a line number on malformed input.
History parse_history(std::istream& in);
History parse_history_string(const std::string& text);

// True iff events of each thread are non-overlapping and every event has
// t_inv < t_res.
bool history_well_formed(const History& h);

}  // namespace congraph
