#include "kamrfp/network.hpp"

#include <nlohmann/json.hpp>

#include <istream>
#include <sstream>

namespace kamrfp {

Network::Network(int vertex_count, std::vector<Arc> arcs, int source, int sink)
    : n_(vertex_count), source_(source), sink_(sink), arcs_(std::move(arcs)) {
    if (n_ <= 0) throw ValidationError("vertex count must be positive");
    auto check_vertex = [&](int v, const char* what) {
        if (v < 1 || v > n_) {
            throw ValidationError(std::string(what) + " vertex id " + std::to_string(v) +
                                  " out of range [1," + std::to_string(n_) + "]");
        }
    };
    check_vertex(source_, "source");
    check_vertex(sink_, "sink");
    if (source_ == sink_) throw ValidationError("source and sink must differ");
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& a = arcs_[i];
        const std::string tag = "arc " + std::to_string(i + 1);
        check_vertex(a.tail, "tail");
        check_vertex(a.head, "head");
        if (a.tail == a.head) throw ValidationError(tag + " is a self-loop");
        if (!a.capacity.has_value()) {
            throw ValidationError(tag + " has unbounded capacity; only the dummy arc may");
        }
        if (*a.capacity < 0) throw ValidationError(tag + " has negative capacity");
    }
    arcs_.push_back(Arc{sink_, source_, std::nullopt});  // dummy (t,s), id m+1
}

namespace {

Network parse_dimacs(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1;
    int declared_m = -1;
    std::optional<int> source, sink;
    std::vector<Arc> arcs;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;  // blank line
        if (kind == "c") continue;
        if (kind == "p") {
            if (n != -1) throw ParseError("duplicate problem line", line_no);
            std::string prob;
            if (!(ls >> prob >> n >> declared_m) || prob != "max") {
                throw ParseError("expected 'p max <n> <m>'", line_no);
            }
        } else if (kind == "n") {
            int v;
            std::string role;
            if (!(ls >> v >> role)) throw ParseError("expected 'n <id> s|t'", line_no);
            if (role == "s") {
                if (source) throw ParseError("duplicate source declaration", line_no);
                source = v;
            } else if (role == "t") {
                if (sink) throw ParseError("duplicate sink declaration", line_no);
                sink = v;
            } else {
                throw ParseError("node role must be 's' or 't'", line_no);
            }
        } else if (kind == "a") {
            int tail, head;
            std::string cap;
            if (!(ls >> tail >> head >> cap)) {
                throw ParseError("expected 'a <tail> <head> <capacity>'", line_no);
            }
            Rat capacity;
            try {
                capacity = parse_rational(cap);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line_no);
            }
            if (capacity < 0) throw ParseError("negative capacity", line_no);
            arcs.push_back(Arc{tail, head, capacity});
        } else {
            throw ParseError("unknown record type '" + kind + "'", line_no);
        }
        std::string rest;
        if (ls >> rest) throw ParseError("trailing tokens: '" + rest + "'", line_no);
    }
    if (n == -1) throw ParseError("missing problem line 'p max <n> <m>'");
    if (!source) throw ParseError("missing source declaration 'n <id> s'");
    if (!sink) throw ParseError("missing sink declaration 'n <id> t'");
    if (declared_m != static_cast<int>(arcs.size())) {
        throw ParseError("problem line declares " + std::to_string(declared_m) +
                         " arcs but " + std::to_string(arcs.size()) + " were given");
    }
    try {
        return Network(n, std::move(arcs), *source, *sink);
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

Network parse_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    try {
        const int n = doc.at("n").get<int>();
        const int source = doc.at("source").get<int>();
        const int sink = doc.at("sink").get<int>();
        std::vector<Arc> arcs;
        for (const auto& item : doc.at("arcs")) {
            const std::string cap = item.at("cap").is_string()
                                        ? item.at("cap").get<std::string>()
                                        : item.at("cap").dump();
            arcs.push_back(Arc{item.at("tail").get<int>(), item.at("head").get<int>(),
                               parse_rational(cap)});
        }
        return Network(n, std::move(arcs), source, sink);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

Network parse_network(std::istream& in, NetworkFormat format) {
    return format == NetworkFormat::Dimacs ? parse_dimacs(in) : parse_json(in);
}

Network parse_network(const std::string& text, NetworkFormat format) {
    std::istringstream in(text);
    return parse_network(in, format);
}

std::string serialize_dimacs(const Network& net) {
    std::ostringstream out;
    out << "p max " << net.vertex_count() << ' ' << net.arc_count() << '\n';
    out << "n " << net.source() << " s\n";
    out << "n " << net.sink() << " t\n";
    for (int a = 1; a <= net.arc_count(); ++a) {
        const Arc& arc = net.arc(a);
        out << "a " << arc.tail << ' ' << arc.head << ' ' << rat_to_string(*arc.capacity)
            << '\n';
    }
    return out.str();
}

std::string serialize_json(const Network& net) {
    nlohmann::json doc;
    doc["n"] = net.vertex_count();
    doc["source"] = net.source();
    doc["sink"] = net.sink();
    auto& arcs = doc["arcs"] = nlohmann::json::array();
    for (int a = 1; a <= net.arc_count(); ++a) {
        const Arc& arc = net.arc(a);
        arcs.push_back({{"tail", arc.tail}, {"head", arc.head},
                        {"cap", rat_to_string(*arc.capacity)}});
    }
    return doc.dump();
}

IncidenceMatrix::IncidenceMatrix(const Network& net)
    : n_(net.vertex_count()),
      cols_(net.arc_count() + 1),
      data_(static_cast<std::size_t>(n_) * cols_, 0) {
    for (int a = 1; a <= cols_; ++a) {
        const Arc& arc = net.arc(a);
        data_[static_cast<std::size_t>(arc.tail - 1) * cols_ + (a - 1)] = 1;
        data_[static_cast<std::size_t>(arc.head - 1) * cols_ + (a - 1)] = -1;
    }
}

Flow parse_flow(std::istream& in, const Network& net) {
    Flow flow(static_cast<std::size_t>(net.arc_count()) + 1);
    std::vector<bool> seen(flow.values.size(), false);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "c") continue;
        if (kind != "f") throw ParseError("expected 'f <arc_id> <value>'", line_no);
        int id;
        std::string value;
        if (!(ls >> id >> value)) throw ParseError("expected 'f <arc_id> <value>'", line_no);
        if (id < 1 || id > net.dummy_arc_id()) {
            throw ParseError("arc id " + std::to_string(id) + " out of range", line_no);
        }
        if (seen[id - 1]) throw ParseError("duplicate value for arc " + std::to_string(id), line_no);
        seen[id - 1] = true;
        try {
            flow.at(id) = parse_rational(value);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    if (!seen.back()) {
        // Infer the dummy value from conservation at the source.
        Rat out_minus_in = 0;
        for (int a = 1; a <= net.arc_count(); ++a) {
            const Arc& arc = net.arc(a);
            if (arc.tail == net.source()) out_minus_in += flow.at(a);
            if (arc.head == net.source()) out_minus_in -= flow.at(a);
        }
        flow.values.back() = out_minus_in;
    }
    return flow;
}

std::string serialize_flow(const Flow& flow) {
    std::ostringstream out;
    for (std::size_t i = 0; i < flow.values.size(); ++i) {
        if (flow.values[i] != 0) {
            out << "f " << (i + 1) << ' ' << rat_to_string(flow.values[i]) << '\n';
        }
    }
    return out.str();
}

void check_feasible(const Network& net, const Flow& flow) {
    const int total = net.dummy_arc_id();
    if (flow.values.size() != static_cast<std::size_t>(total)) {
        throw ValidationError("flow has " + std::to_string(flow.values.size()) +
                              " values, expected " + std::to_string(total));
    }
    for (int a = 1; a <= total; ++a) {
        const Rat& v = flow.at(a);
        if (v < 0) throw ValidationError("arc " + std::to_string(a) + " carries negative flow");
        const Arc& arc = net.arc(a);
        if (arc.capacity && v > *arc.capacity) {
            throw ValidationError("arc " + std::to_string(a) + " exceeds capacity: " +
                                  rat_to_string(v) + " > " + rat_to_string(*arc.capacity));
        }
    }
    for (int v = 1; v <= net.vertex_count(); ++v) {
        Rat balance = 0;
        for (int a = 1; a <= total; ++a) {
            const Arc& arc = net.arc(a);
            if (arc.tail == v) balance += flow.at(a);
            if (arc.head == v) balance -= flow.at(a);
        }
        if (balance != 0) {
            throw ValidationError("conservation violated at vertex " + std::to_string(v) +
                                  " (imbalance " + rat_to_string(balance) + ")");
        }
    }
}

}  // namespace kamrfp
