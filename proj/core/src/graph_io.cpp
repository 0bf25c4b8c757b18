#include "objloc/graph/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "objloc/errors.hpp"
#include "text_format.hpp"

namespace objloc::graph {

using detail::format_double;
using detail::parse_double;
using detail::parse_int;

namespace {

Agent parse_agent(std::string_view s, std::size_t line_no) {
    if (s == "robot") return Agent::robot;
    if (s == "object") return Agent::object;
    throw ParseError(line_no, "unknown agent '" + std::string(s) + "'");
}

void put_node(std::ostream& os, const NodeId& id) { os << ' ' << to_string(id.agent) << ' ' << id.t; }

}  // namespace

void write_graph(std::ostream& os, const PoseGraph& graph) {
    for (const auto& [id, pose] : graph.nodes()) {
        os << "VERTEX";
        put_node(os, id);
        os << ' ' << format_double(pose.x()) << ' ' << format_double(pose.y()) << ' ' << format_double(pose.theta())
           << '\n';
    }
    for (const auto& id : graph.fixed()) {
        os << "FIX";
        put_node(os, id);
        os << '\n';
    }
    for (const auto& e : graph.edges()) {
        os << "EDGE " << to_string(e.kind);
        put_node(os, e.first);
        if (e.second) put_node(os, *e.second);
        const int d = e.dimension();
        for (int i = 0; i < d; ++i) os << ' ' << format_double(e.measurement(i));
        for (int r = 0; r < d; ++r) {
            for (int c = r; c < d; ++c) os << ' ' << format_double(e.information(r, c));
        }
        os << '\n';
    }
}

PoseGraph read_graph(std::istream& is) {
    PoseGraph graph;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto f = detail::split_fields(line);
        if (f.empty() || f.front().starts_with('#')) continue;

        if (f[0] == "VERTEX") {
            if (f.size() != 6) throw ParseError(line_no, "VERTEX expects 5 fields");
            graph.add_node({parse_agent(f[1], line_no), parse_int(f[2], line_no)},
                           Pose2(parse_double(f[3], line_no), parse_double(f[4], line_no), parse_double(f[5], line_no)));
        } else if (f[0] == "FIX") {
            if (f.size() != 3) throw ParseError(line_no, "FIX expects 2 fields");
            graph.fix({parse_agent(f[1], line_no), parse_int(f[2], line_no)});
        } else if (f[0] == "EDGE") {
            if (f.size() < 2) throw ParseError(line_no, "EDGE without kind");
            const auto kind = edge_kind_from_string(f[1]);
            if (!kind) throw ParseError(line_no, "unknown edge kind '" + std::string(f[1]) + "'");
            Edge e;
            e.kind = *kind;
            const int d = e.dimension();
            const std::size_t endpoints = 2;
            const std::size_t expected = 2 + 2 * endpoints + static_cast<std::size_t>(d + d * (d + 1) / 2);
            if (f.size() != expected) {
                throw ParseError(line_no, "EDGE " + std::string(f[1]) + " expects " + std::to_string(expected - 1) +
                                              " fields");
            }
            std::size_t k = 2;
            e.first = {parse_agent(f[k], line_no), parse_int(f[k + 1], line_no)};
            k += 2;
            if (endpoints == 2) {
                e.second = NodeId{parse_agent(f[k], line_no), parse_int(f[k + 1], line_no)};
                k += 2;
            }
            for (int i = 0; i < d; ++i) e.measurement(i) = parse_double(f[k++], line_no);
            for (int r = 0; r < d; ++r) {
                for (int c = r; c < d; ++c) {
                    e.information(r, c) = parse_double(f[k++], line_no);
                    e.information(c, r) = e.information(r, c);
                }
            }
            try {
                graph.add_edge(std::move(e));
            } catch (const std::invalid_argument& ex) {
                throw ParseError(line_no, ex.what());
            }
        } else {
            throw ParseError(line_no, "unknown record '" + std::string(f[0]) + "'");
        }
    }
    return graph;
}

void save_graph(const std::filesystem::path& path, const PoseGraph& graph) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    write_graph(os, graph);
    if (!os) throw IoError("failed writing " + path.string());
}

PoseGraph load_graph(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    return read_graph(is);
}

}  // namespace objloc::graph
