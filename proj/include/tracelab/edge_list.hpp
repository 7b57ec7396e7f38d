#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tracelab/errors.hpp"
#include "tracelab/hypergraph.hpp"

namespace tracelab {

/// Edge list as parsed, before any hypergraph semantics are applied.  This
/// is the one piece deliberately shared with the brute-force oracle: both
/// sides speak the same file format and nothing else.
struct RawEdgeList {
    int n = 0;
    std::vector<std::vector<int>> edges;
};

/// Format: first line "n m", then exactly m lines with the sorted vertex
/// indices of one edge each; an empty line is the empty edge.  Unsorted
/// lines are accepted and canonicalized, duplicate vertices in a line are
/// rejected.
inline RawEdgeList parse_edge_list(std::istream& in) {
    RawEdgeList out;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    long long n = 0, m = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra))
            throw ParseError("header must be exactly 'n m'", 1);
    }
    if (n < 0 || m < 0) throw ParseError("negative count in header", 1);
    out.n = static_cast<int>(n);
    out.edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        int line_no = static_cast<int>(i) + 2;
        if (!std::getline(in, line))
            throw ParseError("expected " + std::to_string(m) + " edge lines, got " +
                                 std::to_string(i),
                             line_no);
        std::vector<int> edge;
        std::istringstream es(line);
        std::string tok;
        while (es >> tok) {
            std::size_t used = 0;
            long long v;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("bad vertex token '" + tok + "'", line_no);
            }
            if (used != tok.size()) throw ParseError("bad vertex token '" + tok + "'", line_no);
            if (v < 0 || v >= n)
                throw ParseError("vertex " + std::to_string(v) + " out of range [0, " +
                                     std::to_string(n) + ")",
                                 line_no);
            edge.push_back(static_cast<int>(v));
        }
        std::sort(edge.begin(), edge.end());
        for (std::size_t j = 1; j < edge.size(); ++j)
            if (edge[j] == edge[j - 1])
                throw ParseError("duplicate vertex " + std::to_string(edge[j]) + " in edge",
                                 line_no);
        out.edges.push_back(std::move(edge));
    }
    return out;
}

inline RawEdgeList parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

inline void write_edge_list(std::ostream& os, int n,
                            const std::vector<std::vector<int>>& edges) {
    os << n << ' ' << edges.size() << '\n';
    for (const auto& e : edges) {
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (j) os << ' ';
            os << e[j];
        }
        os << '\n';
    }
}

/// Hypergraph from a parsed edge list; duplicate edges collapse silently
/// (set semantics).
inline Hypergraph to_hypergraph(const RawEdgeList& raw) {
    std::vector<VertexSet> edges;
    edges.reserve(raw.edges.size());
    for (const auto& e : raw.edges) edges.push_back(VertexSet::from_vertices(raw.n, e));
    return Hypergraph::from_edges(raw.n, edges);
}

inline Hypergraph read_edge_list(std::istream& in) { return to_hypergraph(parse_edge_list(in)); }

inline void write_edge_list(std::ostream& os, const Hypergraph& h) {
    os << h.n() << ' ' << h.size() << '\n';
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto vs = h.edge_vertices(i);
        for (std::size_t j = 0; j < vs.size(); ++j) {
            if (j) os << ' ';
            os << vs[j];
        }
        os << '\n';
    }
}

inline std::string to_edge_list_string(const Hypergraph& h) {
    std::ostringstream os;
    write_edge_list(os, h);
    return os.str();
}

} // namespace tracelab
