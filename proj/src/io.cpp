#include "mgo/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace mgo {

bool Instance::all_mandated() const {
    if (mandated.size() != requests.size()) {
        return false;
    }
    return std::all_of(mandated.begin(), mandated.end(),
                       [](const auto& m) { return m.has_value(); });
}

namespace {

[[noreturn]] void fail(int line, const std::string& message) {
    throw InputError("line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        if (token[0] == '#') {
            break;
        }
        tokens.push_back(token);
    }
    return tokens;
}

int parse_int(const std::string& token, int line, const std::string& what) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(token, &used);
        if (used != token.size()) {
            fail(line, what + ": trailing characters in '" + token + "'");
        }
        return value;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, what + ": expected an integer, got '" + token + "'");
    }
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_number = 0;

    int n = -1, expect_d = -1, expect_u = -1, expect_p = -1;
    std::vector<DirectedEdge> directed;
    std::vector<UndirectedEdge> undirected;
    std::vector<std::pair<Vertex, Vertex>> request_pairs;
    std::vector<std::pair<int, Vertex>> fvs_lines;             // (line, vertex)
    std::vector<std::pair<int, std::vector<int>>> bag_lines;   // (line, id + vertices)
    std::vector<std::pair<int, std::pair<int, int>>> tree_lines;
    std::vector<std::pair<int, std::vector<int>>> path_lines;  // (line, reqid + vertices)

    while (std::getline(in, raw)) {
        ++line_number;
        const std::vector<std::string> tokens = tokenize(raw);
        if (tokens.empty()) {
            continue;
        }
        if (n < 0) {
            if (tokens.size() != 6 || tokens[0] != "MGO" || tokens[1] != "1") {
                fail(line_number, "expected header 'MGO 1 <n> <directed> <undirected> <requests>'");
            }
            n = parse_int(tokens[2], line_number, "vertex count");
            expect_d = parse_int(tokens[3], line_number, "directed count");
            expect_u = parse_int(tokens[4], line_number, "undirected count");
            expect_p = parse_int(tokens[5], line_number, "request count");
            if (n < 0 || expect_d < 0 || expect_u < 0 || expect_p < 0) {
                fail(line_number, "negative count in header");
            }
            continue;
        }
        const std::string& kind = tokens[0];
        auto arg = [&](std::size_t i, const std::string& what) {
            if (i >= tokens.size()) {
                fail(line_number, kind + " line: missing " + what);
            }
            return parse_int(tokens[i], line_number, what);
        };
        if (kind == "D") {
            if (tokens.size() != 3) {
                fail(line_number, "D line needs exactly 'D tail head'");
            }
            directed.push_back(DirectedEdge{arg(1, "tail"), arg(2, "head")});
        } else if (kind == "U") {
            if (tokens.size() != 3) {
                fail(line_number, "U line needs exactly 'U a b'");
            }
            undirected.push_back(UndirectedEdge{arg(1, "endpoint"), arg(2, "endpoint")});
        } else if (kind == "R") {
            if (tokens.size() != 3) {
                fail(line_number, "R line needs exactly 'R source target'");
            }
            request_pairs.emplace_back(arg(1, "source"), arg(2, "target"));
        } else if (kind == "F") {
            if (tokens.size() != 2) {
                fail(line_number, "F line needs exactly 'F vertex'");
            }
            fvs_lines.emplace_back(line_number, arg(1, "vertex"));
        } else if (kind == "B") {
            std::vector<int> values;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                values.push_back(arg(i, "bag entry"));
            }
            if (values.empty()) {
                fail(line_number, "B line needs 'B id v1 v2 ...'");
            }
            bag_lines.emplace_back(line_number, std::move(values));
        } else if (kind == "T") {
            if (tokens.size() != 3) {
                fail(line_number, "T line needs exactly 'T id1 id2'");
            }
            tree_lines.emplace_back(line_number, std::pair{arg(1, "bag id"), arg(2, "bag id")});
        } else if (kind == "X") {
            std::vector<int> values;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                values.push_back(arg(i, "path entry"));
            }
            if (values.size() < 2) {
                fail(line_number, "X line needs 'X reqid v1 v2 ...'");
            }
            path_lines.emplace_back(line_number, std::move(values));
        } else {
            fail(line_number, "unknown line kind '" + kind + "'");
        }
    }
    if (n < 0) {
        throw InputError("missing 'MGO 1' header");
    }
    if (static_cast<int>(directed.size()) != expect_d) {
        throw InputError("header promises " + std::to_string(expect_d) +
                         " directed edges, file has " + std::to_string(directed.size()));
    }
    if (static_cast<int>(undirected.size()) != expect_u) {
        throw InputError("header promises " + std::to_string(expect_u) +
                         " undirected edges, file has " + std::to_string(undirected.size()));
    }
    if (static_cast<int>(request_pairs.size()) != expect_p) {
        throw InputError("header promises " + std::to_string(expect_p) +
                         " requests, file has " + std::to_string(request_pairs.size()));
    }

    Instance instance;
    instance.graph = MixedGraph(n, std::move(directed), std::move(undirected));
    for (std::size_t i = 0; i < request_pairs.size(); ++i) {
        const auto [s, t] = request_pairs[i];
        if (s < 0 || s >= n || t < 0 || t >= n) {
            throw InputError("request " + std::to_string(i) + ": endpoint out of range");
        }
        instance.requests.push_back(Request{static_cast<int>(i), s, t});
    }
    for (const auto& [line, v] : fvs_lines) {
        if (v < 0 || v >= n) {
            fail(line, "feedback vertex out of range");
        }
        instance.fvs_hint.push_back(v);
    }
    std::sort(instance.fvs_hint.begin(), instance.fvs_hint.end());
    instance.fvs_hint.erase(
        std::unique(instance.fvs_hint.begin(), instance.fvs_hint.end()),
        instance.fvs_hint.end());

    if (!bag_lines.empty() || !tree_lines.empty()) {
        TreeDecomposition decomposition;
        decomposition.bags.resize(bag_lines.size());
        std::vector<char> seen(bag_lines.size(), 0);
        for (const auto& [line, values] : bag_lines) {
            const int id = values[0];
            if (id < 0 || id >= static_cast<int>(bag_lines.size())) {
                fail(line, "bag ids must be dense 0.." +
                               std::to_string(bag_lines.size() - 1));
            }
            if (seen[id]) {
                fail(line, "duplicate bag id " + std::to_string(id));
            }
            seen[id] = 1;
            std::vector<Vertex> bag(values.begin() + 1, values.end());
            for (Vertex v : bag) {
                if (v < 0 || v >= n) {
                    fail(line, "bag vertex out of range");
                }
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            decomposition.bags[id] = std::move(bag);
        }
        for (const auto& [line, edge] : tree_lines) {
            if (edge.first < 0 || edge.first >= static_cast<int>(bag_lines.size()) ||
                edge.second < 0 || edge.second >= static_cast<int>(bag_lines.size())) {
                fail(line, "tree edge references a missing bag");
            }
            decomposition.tree_edges.emplace_back(std::min(edge.first, edge.second),
                                                  std::max(edge.first, edge.second));
        }
        std::sort(decomposition.tree_edges.begin(), decomposition.tree_edges.end());
        instance.decomposition = std::move(decomposition);
    }

    instance.mandated.assign(instance.requests.size(), std::nullopt);
    for (const auto& [line, values] : path_lines) {
        const int req = values[0];
        if (req < 0 || req >= static_cast<int>(instance.requests.size())) {
            fail(line, "mandated path references request " + std::to_string(req) +
                           " which does not exist");
        }
        if (instance.mandated[req].has_value()) {
            fail(line, "duplicate mandated path for request " + std::to_string(req));
        }
        std::vector<Vertex> path(values.begin() + 1, values.end());
        for (Vertex v : path) {
            if (v < 0 || v >= n) {
                fail(line, "mandated path vertex out of range");
            }
        }
        if (path.front() != instance.requests[req].source ||
            path.back() != instance.requests[req].target) {
            fail(line, "mandated path must run from the request's source to its target");
        }
        instance.mandated[req] = std::move(path);
    }
    return instance;
}

std::string emit_instance(const Instance& instance) {
    std::ostringstream out;
    const MixedGraph& g = instance.graph;
    out << "MGO 1 " << g.vertex_count() << ' ' << g.directed_count() << ' '
        << g.undirected_count() << ' ' << instance.requests.size() << '\n';
    for (const auto& e : g.directed_edges()) {
        out << "D " << e.tail << ' ' << e.head << '\n';
    }
    for (const auto& e : g.undirected_edges()) {
        out << "U " << e.a << ' ' << e.b << '\n';
    }
    for (const auto& r : instance.requests) {
        out << "R " << r.source << ' ' << r.target << '\n';
    }
    std::vector<Vertex> fvs = instance.fvs_hint;
    std::sort(fvs.begin(), fvs.end());
    for (Vertex v : fvs) {
        out << "F " << v << '\n';
    }
    if (instance.decomposition) {
        for (std::size_t i = 0; i < instance.decomposition->bags.size(); ++i) {
            out << "B " << i;
            for (Vertex v : instance.decomposition->bags[i]) {
                out << ' ' << v;
            }
            out << '\n';
        }
        auto edges = instance.decomposition->tree_edges;
        for (auto& e : edges) {
            if (e.first > e.second) {
                std::swap(e.first, e.second);
            }
        }
        std::sort(edges.begin(), edges.end());
        for (const auto& [a, b] : edges) {
            out << "T " << a << ' ' << b << '\n';
        }
    }
    for (std::size_t i = 0; i < instance.mandated.size(); ++i) {
        if (!instance.mandated[i]) {
            continue;
        }
        out << "X " << i;
        for (Vertex v : *instance.mandated[i]) {
            out << ' ' << v;
        }
        out << '\n';
    }
    return out.str();
}

PartialOrientation parse_orientation_text(const std::string& text, const MixedGraph& graph) {
    std::istringstream in(text);
    std::string raw;
    int line_number = 0;
    PartialOrientation partial(graph.undirected_count());
    int next_edge = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        const std::vector<std::string> tokens = tokenize(raw);
        if (tokens.empty()) {
            continue;
        }
        if (tokens[0] != "O" || tokens.size() != 3) {
            fail(line_number, "expected 'O from to'");
        }
        if (next_edge >= graph.undirected_count()) {
            fail(line_number, "more O lines than undirected edges");
        }
        const int from = parse_int(tokens[1], line_number, "from");
        const int to = parse_int(tokens[2], line_number, "to");
        partial.assign(next_edge++, Arc{from, to});
    }
    return partial;
}

std::string emit_orientation(const Orientation& orientation) {
    std::ostringstream out;
    for (const Arc& arc : orientation.arcs) {
        out << "O " << arc.from << ' ' << arc.to << '\n';
    }
    return out.str();
}

std::string emit_metadata(const std::vector<std::pair<std::string, std::string>>& metadata) {
    std::ostringstream out;
    for (const auto& [key, value] : metadata) {
        out << key << '=' << value << '\n';
    }
    return out.str();
}

std::string instance_digest(const Instance& instance) {
    const std::string text = emit_instance(instance);
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) {
        out << ((hash >> shift) & 0xfull);
    }
    return out.str();
}

std::string emit_report(const ReportRecord& report) {
    std::ostringstream out;
    const Certificate& c = report.certificate;
    out << "instance_digest=" << report.instance_digest << '\n'
        << "algorithm=" << report.algorithm << '\n'
        << "satisfied=" << report.satisfied << '\n'
        << "requests_total=" << c.requests_total + report.auto_satisfied << '\n'
        << "auto_satisfied=" << report.auto_satisfied << '\n'
        << "routable=" << c.routable << '\n'
        << "unroutable=" << c.unroutable << '\n'
        << "main_loop_satisfied=" << c.main_loop_satisfied << '\n'
        << "iterations=" << c.iterations << '\n'
        << "discards_total=" << c.discards_total << '\n'
        << "max_iteration_removals=" << c.max_iteration_removals << '\n'
        << "pending_final=" << c.pending_final << '\n'
        << "exit_min_pending_degree=" << c.exit_min_pending_degree << '\n'
        << "local_phase_run=" << (c.local_phase_run ? 1 : 0) << '\n'
        << "junction_vertex=" << c.junction_vertex << '\n'
        << "junction_crossing=" << c.junction_crossing << '\n'
        << "local_satisfied=" << c.local_satisfied << '\n'
        << "pre_blocked=" << c.pre_blocked << '\n'
        << "delta=" << c.delta << '\n'
        << "aborted_to_local=" << (c.aborted_to_local ? 1 : 0) << '\n';
    out << "class_sizes=";
    for (std::size_t i = 0; i < c.class_sizes.size(); ++i) {
        out << (i ? "," : "") << c.class_sizes[i];
    }
    out << '\n'
        << "chosen_class=" << c.chosen_class << '\n'
        << "levels=" << c.levels << '\n'
        << "width=" << c.width << '\n'
        << "fvs_size=" << c.fvs_size << '\n'
        << "enumerated=" << c.enumerated << '\n'
        << "wall_ms=" << static_cast<long long>(report.wall_seconds * 1000.0) << '\n';
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << content;
}

Instance load_instance(const std::string& path) {
    try {
        return parse_instance_text(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void save_instance(const Instance& instance, const std::string& path) {
    write_file(path, emit_instance(instance));
}

PartialOrientation load_orientation(const std::string& path, const MixedGraph& graph) {
    try {
        return parse_orientation_text(read_file(path), graph);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void save_orientation(const Orientation& orientation, const std::string& path) {
    write_file(path, emit_orientation(orientation));
}

}  // namespace mgo
