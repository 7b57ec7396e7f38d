#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "tracelab/edge_list.hpp"
#include "tracelab/hypergraph.hpp"
#include "tracelab/rng.hpp"

using namespace tracelab;

namespace {

Hypergraph triangle() {
    // The three 2-subsets of {0,1,2} on a 3-vertex universe.
    return Hypergraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
}

Hypergraph power_set_of_3(int n = 3) {
    std::vector<std::vector<int>> edges;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> e;
        for (int v = 0; v < 3; ++v)
            if (mask & (1 << v)) e.push_back(v);
        edges.push_back(e);
    }
    return Hypergraph::from_edges(n, edges);
}

} // namespace

TEST_CASE("vertex set basics") {
    auto s = VertexSet::from_vertices(70, {0, 5, 64, 69});
    CHECK(s.size() == 4);
    CHECK(s.universe() == 70);
    CHECK(s.test(64));
    CHECK_FALSE(s.test(63));
    CHECK(s.vertices() == std::vector<int>{0, 5, 64, 69});

    auto t = VertexSet::from_vertices(70, {5, 69});
    CHECK(s.intersection_size(t) == 2);

    CHECK_THROWS_AS(VertexSet::from_vertices(4, {4}), std::invalid_argument);
    CHECK_THROWS_AS(VertexSet::from_vertices(4, {-1}), std::invalid_argument);
}

TEST_CASE("colex order matches numeric mask order") {
    // On one word, colex order of subsets is exactly unsigned mask order.
    std::vector<VertexSet> sets;
    for (int mask = 0; mask < 32; ++mask) {
        VertexSet s(5);
        for (int v = 0; v < 5; ++v)
            if (mask & (1 << v)) s.set(v);
        sets.push_back(s);
    }
    for (int a = 0; a < 32; ++a)
        for (int b = 0; b < 32; ++b)
            CHECK(sets[a].colex_less(sets[b]) == (a < b));
}

TEST_CASE("packed colex keys preserve colex order") {
    REQUIRE(detail::pack_colex_ok(8190, 9));
    CHECK_FALSE(detail::pack_colex_ok(8191, 2));
    CHECK_FALSE(detail::pack_colex_ok(100, 10));

    SplitMix64 rng(7);
    std::vector<std::vector<int>> subs;
    for (int t = 0; t < 200; ++t) {
        int sz = static_cast<int>(rng.below(10));
        std::set<int> pick;
        while (static_cast<int>(pick.size()) < sz)
            pick.insert(static_cast<int>(rng.below(300)));
        subs.emplace_back(pick.begin(), pick.end());
    }
    for (const auto& a : subs) {
        // Round trip.
        std::vector<int> back;
        detail::unpack_colex(detail::pack_colex(a), back);
        CHECK(back == a);
    }
    for (const auto& a : subs)
        for (const auto& b : subs) {
            auto va = VertexSet::from_vertices(300, a);
            auto vb = VertexSet::from_vertices(300, b);
            bool packed_less = detail::pack_colex(a) < detail::pack_colex(b);
            CHECK(packed_less == va.colex_less(vb));
        }
}

TEST_CASE("edge list round trip and parse errors") {
    auto h = power_set_of_3();
    auto text = to_edge_list_string(h);
    std::istringstream in(text);
    auto h2 = read_edge_list(in);
    CHECK(h == h2);

    // The empty edge is an empty line.
    CHECK(text.substr(0, 4) == "3 8\n");
    CHECK(text[4] == '\n');

    auto line_of = [](const std::string& text) {
        try {
            parse_edge_list(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(line_of("") == "missing header (line 1)");
    CHECK(line_of("3\n") == "header must be exactly 'n m' (line 1)");
    CHECK(line_of("3 2\n0 1\n") ==
          "expected 2 edge lines, got 1 (line 3)");
    CHECK(line_of("3 1\n0 7\n") == "vertex 7 out of range [0, 3) (line 2)");
    CHECK(line_of("3 1\nx\n") == "bad vertex token 'x' (line 2)");
    CHECK(line_of("3 1\n1 1\n") == "duplicate vertex 1 in edge (line 2)");

    // Unsorted input is canonicalized, and duplicate edges collapse.
    auto raw = parse_edge_list("4 3\n2 0\n0 2\n1\n");
    CHECK(raw.edges[0] == std::vector<int>{0, 2});
    CHECK(to_hypergraph(raw).size() == 2);
}

TEST_CASE("trace, induction, link on the triangle") {
    auto h = triangle();
    auto w01 = VertexSet::from_vertices(3, {0, 1});
    CHECK(trace_count(h, w01) == 3);  // {0}, {1}, {0,1}
    CHECK(induced_count(h, w01) == 1);
    CHECK(trace_value(h, 1) == 2);
    CHECK(trace_value(h, 2) == 3);
    CHECK(link_size(h, VertexSet::from_vertices(3, {0})) == 2);
    CHECK(link_size(h, VertexSet::from_vertices(3, {0, 1})) == 1);
    CHECK(shadow_size(h, 1) == 3);
    CHECK(shadow_size(h, 2) == 3);
    CHECK(shadow_size(h, 0) == 1);
    CHECK(shadow_size(h, 3) == 0);
    CHECK(wp(h, 2) == 1);
    CHECK(vc_dimension(h) == 1);

    auto [val, win] = trace_value_witness(h, 2);
    CHECK(val == 3);
    CHECK(trace_count(h, win) == 3);
}

TEST_CASE("power set closure, layers, vc") {
    auto h = power_set_of_3();
    CHECK(vc_dimension(h) == 3);
    CHECK(exists_shattered(h, 3));
    CHECK_FALSE(exists_shattered(h, 4));

    auto closure = downward_closure(Hypergraph::from_edges(3, {{0, 1, 2}}));
    CHECK(closure == h);

    auto [k, layer] = popular_layer(h);
    CHECK(k == 1);  // sizes 1 and 2 tie at three edges; the smaller k wins
    CHECK(layer.size() == 3);
    CHECK(layer.uniformity() == 1);
}

TEST_CASE("colex prefix and equality") {
    auto h = power_set_of_3();
    auto p = h.take_colex_prefix(3);
    // Colex-first masks are {}, {0}, {1}.
    CHECK(p.size() == 3);
    CHECK(p.has_edge(VertexSet(3)));
    CHECK(p.has_edge(VertexSet::from_vertices(3, {0})));
    CHECK(p.has_edge(VertexSet::from_vertices(3, {1})));
    CHECK_THROWS_AS(h.take_colex_prefix(9), std::invalid_argument);
    CHECK_FALSE(p == h);
}

TEST_CASE("degrees") {
    auto h = Hypergraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(h.degree(0) == 3);
    CHECK(h.degrees() == std::vector<std::uint64_t>{3, 1, 1, 1});
}

TEST_CASE("wp over windows and the capacity gate") {
    auto h = triangle();
    CHECK(wp(h, 3) == 3);
    CHECK(wp(h, 0) == 0);

    std::vector<std::vector<int>> one = {{0, 1}};
    // Past the zeta-transform cap the window scan takes over and still
    // answers exactly; only the scan's own limits raise CapacityError.
    auto big = Hypergraph::from_edges(kMaxZetaVertices + 1, one);
    CHECK(wp(big, 2) == 1);
    auto vast = Hypergraph::from_edges(kMaxExhaustiveVertices + 1, one);
    CHECK_THROWS_AS(wp(vast, 2), CapacityError);
    auto wide = Hypergraph::from_edges(kMaxExhaustiveVertices, one);
    CHECK_THROWS_AS(wp(wide, kMaxExhaustiveVertices / 2), CapacityError);
    auto ok = Hypergraph::from_edges(kMaxZetaVertices, one);
    CHECK(wp(ok, 2) == 1);
}

TEST_CASE("sampled statistics are seed-deterministic") {
    auto h = power_set_of_3(8);
    auto a = sampled_wp_stats(h, 4, 500, 42);
    auto b = sampled_wp_stats(h, 4, 500, 42);
    CHECK(a.max == b.max);
    CHECK(a.mean == b.mean);
    CHECK(a.stddev == b.stddev);
    auto c = sampled_wp_stats(h, 4, 500, 43);
    CHECK((a.max != c.max || a.mean != c.mean));

    auto t1 = sampled_trace_stats(h, 4, 300, 7);
    auto t2 = sampled_trace_stats(h, 4, 300, 7);
    CHECK(t1.max == t2.max);
    CHECK(t1.mean == t2.mean);
    // Projections of the 8 subsets of {0,1,2} onto any window stay <= 8.
    CHECK(t1.max <= 8);
}

TEST_CASE("separating subset search is deterministic and verified") {
    auto h = power_set_of_3(6);
    auto a = find_separating_subset(h, 3, 400, 11);
    auto b = find_separating_subset(h, 3, 400, 11);
    CHECK(a.subset.vertices() == b.subset.vertices());
    CHECK(a.representatives == b.representatives);
    CHECK(a.distinct_projections == 8);  // {0,1,2} is hit quickly
    CHECK(a.representatives.size() == 8);
}
