#pragma once

#include "kamrfp/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kamrfp {

/// Input could not be read: carries the 1-based line number when known.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line(line) {}
    int line;
};

/// Semantic violation (infeasible flow, bad arc id, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Directed arc; capacity std::nullopt means unbounded (only the dummy arc).
struct Arc {
    int tail = 0;
    int head = 0;
    std::optional<Rat> capacity;

    bool unbounded() const { return !capacity.has_value(); }
    friend bool operator==(const Arc&, const Arc&) = default;
};

enum class NetworkFormat { Dimacs, Json };

/// Capacitated digraph with source, sink and the implicit dummy arc (t,s).
/// Arc ids are 1-based in input order; the dummy arc always has id m+1.
class Network {
public:
    /// `arcs` are the m user arcs; the unbounded dummy (sink,source) arc is
    /// appended automatically. Throws ValidationError on self-loops,
    /// source==sink, negative capacities or out-of-range vertex ids.
    Network(int vertex_count, std::vector<Arc> arcs, int source, int sink);

    int vertex_count() const { return n_; }
    /// Number of user (deletable) arcs, excluding the dummy.
    int arc_count() const { return static_cast<int>(arcs_.size()) - 1; }
    int dummy_arc_id() const { return static_cast<int>(arcs_.size()); }
    int source() const { return source_; }
    int sink() const { return sink_; }

    /// 1-based; id in [1, m+1].
    const Arc& arc(int id) const { return arcs_.at(static_cast<std::size_t>(id) - 1); }

    friend bool operator==(const Network&, const Network&) = default;

private:
    int n_;
    int source_;
    int sink_;
    std::vector<Arc> arcs_;  // size m+1, dummy last
};

Network parse_network(std::istream& in, NetworkFormat format);
Network parse_network(const std::string& text, NetworkFormat format);

std::string serialize_dimacs(const Network& net);
std::string serialize_json(const Network& net);

/// n x (m+1) vertex-arc incidence matrix: +1 where the arc leaves the
/// vertex, -1 where it enters.
class IncidenceMatrix {
public:
    explicit IncidenceMatrix(const Network& net);

    int rows() const { return n_; }
    int cols() const { return cols_; }
    /// vertex and arc_id are 1-based.
    int entry(int vertex, int arc_id) const {
        return data_[static_cast<std::size_t>(vertex - 1) * cols_ + (arc_id - 1)];
    }

private:
    int n_;
    int cols_;
    std::vector<std::int8_t> data_;
};

inline IncidenceMatrix incidence(const Network& net) { return IncidenceMatrix(net); }

/// Circulation-form flow: one exact value per arc, dummy included.
/// values[a-1] is the flow on arc a; the dummy value is the flow value.
struct Flow {
    std::vector<Rat> values;

    explicit Flow(std::size_t total_arcs = 0) : values(total_arcs) {}

    const Rat& at(int arc_id) const { return values.at(static_cast<std::size_t>(arc_id) - 1); }
    Rat& at(int arc_id) { return values.at(static_cast<std::size_t>(arc_id) - 1); }
    /// Flow value phi_ts = value on the dummy arc.
    const Rat& value() const { return values.back(); }

    friend bool operator==(const Flow&, const Flow&) = default;
};

/// Reads "f <arc_id> <p/q>" lines; omitted arcs are 0 and the dummy value is
/// inferred from conservation at the source when not given.
Flow parse_flow(std::istream& in, const Network& net);
std::string serialize_flow(const Flow& flow);

/// Throws ValidationError naming the violated arc bound or vertex
/// conservation constraint; exact, no tolerance.
void check_feasible(const Network& net, const Flow& flow);

}  // namespace kamrfp
