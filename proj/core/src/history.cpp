#include "congraph/history.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace congraph {

const char* to_string(OpKind op) {
    switch (op) {
        case OpKind::AddVertex: return "add_vertex";
        case OpKind::RemoveVertex: return "remove_vertex";
        case OpKind::ContainsVertex: return "contains_vertex";
        case OpKind::AddEdge: return "add_edge";
        case OpKind::RemoveEdge: return "remove_edge";
        case OpKind::ContainsEdge: return "contains_edge";
        case OpKind::GetPath: return "get_path";
    }
    return "?";
}

std::optional<OpKind> op_kind_from_string(const std::string& s) {
    static const OpKind all[] = {
        OpKind::AddVertex,    OpKind::RemoveVertex, OpKind::ContainsVertex,
        OpKind::AddEdge,      OpKind::RemoveEdge,   OpKind::ContainsEdge,
        OpKind::GetPath,
    };
    for (OpKind op : all) {
        if (s == to_string(op)) return op;
    }
    return std::nullopt;
}

OpResult OpResult::of_bool(bool v) {
    OpResult r;
    r.kind = Kind::Bool;
    r.b = v;
    return r;
}

OpResult OpResult::of_edge(EdgeOutcome o) {
    OpResult r;
    r.kind = Kind::Edge;
    r.edge = o;
    return r;
}

OpResult OpResult::of_path(std::optional<std::vector<Key>> p) {
    OpResult r;
    r.kind = Kind::Path;
    r.path = std::move(p);
    return r;
}

bool OpResult::operator==(const OpResult& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
        case Kind::Bool: return b == other.b;
        case Kind::Edge: return edge == other.edge;
        case Kind::Path: return path == other.path;
    }
    return false;
}

namespace {

std::string join_keys(const std::vector<Key>& ks) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (i != 0) os << ',';
        os << ks[i];
    }
    return os.str();
}

std::optional<std::vector<Key>> split_keys(const std::string& s) {
    std::vector<Key> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (out.empty()) return std::nullopt;
    return out;
}

}  // namespace

std::string OpResult::to_wire() const {
    switch (kind) {
        case Kind::Bool: return b ? "true" : "false";
        case Kind::Edge: return to_string(edge);
        case Kind::Path: return path.has_value() ? join_keys(*path) : "nil";
    }
    return "?";
}

std::string HistoryEvent::to_line() const {
    std::ostringstream os;
    os << tid << ' ' << congraph::to_string(op) << ' ' << join_keys(args)
       << ' ' << result.to_wire() << ' ' << t_inv << ' ' << t_res;
    return os.str();
}

std::optional<HistoryEvent> HistoryEvent::from_line(const std::string& line) {
    std::istringstream is(line);
    HistoryEvent ev;
    std::string op_s, args_s, result_s;
    if (!(is >> ev.tid >> op_s >> args_s >> result_s >> ev.t_inv >>
          ev.t_res)) {
        return std::nullopt;
    }
    std::string extra;
    if (is >> extra) return std::nullopt;
    auto op = op_kind_from_string(op_s);
    if (!op) return std::nullopt;
    ev.op = *op;
    auto args = split_keys(args_s);
    if (!args) return std::nullopt;
    ev.args = std::move(*args);
    switch (ev.op) {
        case OpKind::AddVertex:
        case OpKind::RemoveVertex:
        case OpKind::ContainsVertex: {
            if (ev.args.size() != 1) return std::nullopt;
            if (result_s != "true" && result_s != "false") return std::nullopt;
            ev.result = OpResult::of_bool(result_s == "true");
            break;
        }
        case OpKind::AddEdge:
        case OpKind::RemoveEdge:
        case OpKind::ContainsEdge: {
            if (ev.args.size() != 2) return std::nullopt;
            auto o = edge_outcome_from_string(result_s);
            if (!o) return std::nullopt;
            ev.result = OpResult::of_edge(*o);
            break;
        }
        case OpKind::GetPath: {
            if (ev.args.size() != 2) return std::nullopt;
            if (result_s == "nil") {
                ev.result = OpResult::of_path(std::nullopt);
            } else {
                auto p = split_keys(result_s);
                if (!p) return std::nullopt;
                ev.result = OpResult::of_path(std::move(*p));
            }
            break;
        }
    }
    return ev;
}

std::string serialize_history(const History& h) {
    std::string out;
    for (const HistoryEvent& ev : h) {
        out += ev.to_line();
        out += '\n';
    }
    return out;
}

History parse_history(std::istream& in) {
    History h;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto ev = HistoryEvent::from_line(line);
        if (!ev) {
            throw std::runtime_error("history parse error at line " +
                                     std::to_string(lineno));
        }
        h.push_back(std::move(*ev));
    }
    return h;
}

History parse_history_string(const std::string& text) {
    std::istringstream is(text);
    return parse_history(is);
}

bool history_well_formed(const History& h) {
    std::map<unsigned, std::vector<std::pair<std::uint64_t, std::uint64_t>>>
        by_thread;
    for (const HistoryEvent& ev : h) {
        if (ev.t_inv >= ev.t_res) return false;
        by_thread[ev.tid].emplace_back(ev.t_inv, ev.t_res);
    }
    for (auto& [tid, spans] : by_thread) {
        std::sort(spans.begin(), spans.end());
        for (std::size_t i = 1; i < spans.size(); ++i) {
            if (spans[i].first < spans[i - 1].second) return false;
        }
    }
    return true;
}

}  // namespace congraph
