#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/binomials.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/hypergraph.hpp"

namespace tracelab {

/// Result of iterated minimum-degree peeling.  The subgraph is induced on
/// the survivors and relabeled; removed_order and kept_vertices use the
/// original labels.  min_degree_bound = |E'| / (2 |V'| log2 n) with n the
/// ORIGINAL vertex count (the peeling threshold keeps referring to it).
struct RegularizationResult {
    Hypergraph subgraph;
    VertexSet kept_vertices;
    std::vector<int> removed_order;
    double min_degree_bound = 0.0;
};

/// Peel minimum-degree vertices (ties toward the smaller index) until every
/// remaining vertex has degree >= |E'| / (2 |V'| log2 n).  The surviving
/// subgraph keeps more than half the edges and at least the original
/// edge/vertex density.
inline RegularizationResult regularize(const Hypergraph& f) {
    if (f.empty()) throw std::invalid_argument("regularize: empty family");
    int n = f.n();
    // log2 n of the original universe; clamped so micro-universes (n < 2)
    // don't produce a divide-by-zero threshold.
    double log_term = std::log2(static_cast<double>(std::max(n, 2)));

    detail::EdgeLists el(f);
    std::size_t m = f.size();
    std::vector<std::vector<std::uint32_t>> incident(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < m; ++e)
        for (std::uint32_t v : el.edge(e)) incident[v].push_back(static_cast<std::uint32_t>(e));

    std::vector<std::int64_t> degree(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) degree[static_cast<std::size_t>(v)] =
        static_cast<std::int64_t>(incident[static_cast<std::size_t>(v)].size());
    std::vector<std::uint8_t> vertex_alive(static_cast<std::size_t>(n), 1);
    std::vector<std::uint8_t> edge_alive(m, 1);
    std::int64_t alive_v = n;
    std::int64_t alive_e = static_cast<std::int64_t>(m);

    RegularizationResult out;
    while (alive_v > 0) {
        double threshold = static_cast<double>(alive_e) /
                           (2.0 * static_cast<double>(alive_v) * log_term);
        int victim = -1;
        std::int64_t min_deg = 0;
        for (int v = 0; v < n; ++v) {
            if (!vertex_alive[static_cast<std::size_t>(v)]) continue;
            if (victim < 0 || degree[static_cast<std::size_t>(v)] < min_deg) {
                victim = v;
                min_deg = degree[static_cast<std::size_t>(v)];
            }
        }
        if (static_cast<double>(min_deg) >= threshold) break;  // condition met everywhere
        vertex_alive[static_cast<std::size_t>(victim)] = 0;
        --alive_v;
        out.removed_order.push_back(victim);
        for (std::uint32_t e : incident[static_cast<std::size_t>(victim)]) {
            if (!edge_alive[e]) continue;
            edge_alive[e] = 0;
            --alive_e;
            for (std::uint32_t w : el.edge(e))
                if (static_cast<int>(w) != victim) --degree[w];
        }
    }

    out.kept_vertices = VertexSet(n);
    for (int v = 0; v < n; ++v)
        if (vertex_alive[static_cast<std::size_t>(v)]) out.kept_vertices.set(v);
    out.subgraph = induced(f, out.kept_vertices);
    out.min_degree_bound =
        alive_v > 0 ? static_cast<double>(alive_e) /
                          (2.0 * static_cast<double>(alive_v) * log_term)
                    : 0.0;
    return out;
}

/// All vertices of degree >= |F| / 2n.  Requires wp(F, i) <= |F|/2; under
/// that hypothesis more than i vertices qualify.
inline std::vector<int> heavy_vertices(const Hypergraph& f, int i) {
    if (i < 0 || i > f.n()) throw std::invalid_argument("heavy_vertices: i out of range");
    std::uint64_t w = wp(f, i);
    if (2.0 * static_cast<double>(w) > static_cast<double>(f.size()))
        throw ContractError("heavy_vertices: wp(F,i) exceeds |F|/2",
                            static_cast<double>(w));
    double threshold = static_cast<double>(f.size()) / (2.0 * static_cast<double>(f.n()));
    std::vector<int> out;
    auto deg = f.degrees();
    for (int v = 0; v < f.n(); ++v)
        if (static_cast<double>(deg[static_cast<std::size_t>(v)]) >= threshold)
            out.push_back(v);
    return out;
}

/// Tuples whose links stay heavy through s levels of restriction.
struct HeavyLinkFamily {
    std::vector<VertexTuple> tuples;
    double threshold = 0.0;  // b = |F| / (2n)^s
};

/// Level-by-level extension: a tuple U of length d-1 grows by every vertex
/// whose degree inside F^U (edges containing all of U) is at least
/// |F| / (2n)^d.  Repeated vertices are allowed, exactly as in tuple sums.
/// Requires wp(F, i) <= |F| / (2^s n^{s-1}); then at least i^s tuples come
/// back, each with |F(U)| >= |F| / (2n)^s.
inline HeavyLinkFamily heavy_tuples(const Hypergraph& f, int s, int i) {
    if (s < 0) throw std::invalid_argument("heavy_tuples: negative s");
    if (i < 0 || i > f.n()) throw std::invalid_argument("heavy_tuples: i out of range");
    int n = f.n();
    double fsize = static_cast<double>(f.size());
    double cap = fsize / (std::pow(2.0, s) * std::pow(static_cast<double>(n), s - 1));
    std::uint64_t w = wp(f, i);
    if (static_cast<double>(w) > cap)
        throw ContractError("heavy_tuples: wp(F,i) exceeds |F| / (2^s n^{s-1})",
                            static_cast<double>(w));

    HeavyLinkFamily out;
    out.threshold = fsize / std::pow(2.0 * n, s);
    if (s == 0) {
        out.tuples.push_back(VertexTuple{});
        out.threshold = fsize;
        return out;
    }

    detail::EdgeLists el(f);
    struct Node {
        std::vector<int> entries;
        std::vector<std::uint32_t> edges;  // indices of edges containing all entries
    };
    std::vector<Node> level(1);
    level[0].edges.resize(f.size());
    for (std::size_t e = 0; e < f.size(); ++e)
        level[0].edges[e] = static_cast<std::uint32_t>(e);

    std::vector<std::int64_t> deg(static_cast<std::size_t>(n));
    for (int d = 1; d <= s; ++d) {
        double threshold_d = fsize / std::pow(2.0 * n, d);
        std::vector<Node> next;
        for (const Node& node : level) {
            std::fill(deg.begin(), deg.end(), 0);
            for (std::uint32_t e : node.edges)
                for (std::uint32_t v : el.edge(e)) ++deg[v];
            for (int v = 0; v < n; ++v) {
                // A vertex already in the tuple has full degree |F^U|.
                std::int64_t dv = deg[static_cast<std::size_t>(v)];
                bool member = std::find(node.entries.begin(), node.entries.end(), v) !=
                              node.entries.end();
                if (member) dv = static_cast<std::int64_t>(node.edges.size());
                if (static_cast<double>(dv) < threshold_d) continue;
                Node child;
                child.entries = node.entries;
                child.entries.push_back(v);
                if (member) {
                    child.edges = node.edges;
                } else {
                    for (std::uint32_t e : node.edges) {
                        auto ev = el.edge(e);
                        if (std::find(ev.begin(), ev.end(), static_cast<std::uint32_t>(v)) !=
                            ev.end())
                            child.edges.push_back(e);
                    }
                }
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    for (auto& node : level) out.tuples.emplace_back(std::move(node.entries));
    return out;
}

/// Link-shadow lower bound: i^{-t} * sum over all t-tuples U in V^t of
/// C(x_U, i - |U|), where C(x_U, k - |U|) = |F(U)|.  Empty links contribute
/// nothing (their inverted binomial is undefined and the sum skips them).
/// t = 0 recovers the classical shadow bound C(y, i) with C(y, k) = |F|.
inline double collect_link_shadow_lower(const Hypergraph& f, int t, int i) {
    auto k_opt = f.uniformity();
    if (!k_opt) throw std::invalid_argument("collect_link_shadow_lower: family not uniform");
    int k = *k_opt;
    if (t < 0 || t > i || i > k)
        throw std::invalid_argument("collect_link_shadow_lower: need 0 <= t <= i <= k");

    long double sum = 0.0L;
    std::vector<int> entries(static_cast<std::size_t>(t), 0);
    int n = f.n();
    auto term_for = [&](const std::vector<int>& tup) -> long double {
        VertexTuple u(tup);
        auto d = u.distinct_vertices();
        int du = static_cast<int>(d.size());
        std::uint64_t m_u = link_size(f, VertexSet::from_vertices(n, d));
        if (m_u == 0) return 0.0L;
        if (k - du == 0) return 1.0L;  // link is {empty}, C(x,0) terms are 1
        double x_u = invert_binomial(static_cast<double>(m_u), k - du);
        return binom_real(static_cast<long double>(x_u), i - du);
    };
    if (t == 0) {
        sum = term_for({});
    } else {
        for (;;) {
            sum += term_for(entries);
            int p = t - 1;
            while (p >= 0 && entries[static_cast<std::size_t>(p)] == n - 1) {
                entries[static_cast<std::size_t>(p)] = 0;
                --p;
            }
            if (p < 0) break;
            ++entries[static_cast<std::size_t>(p)];
        }
    }
    long double factor =
        (t == 0) ? 1.0L : std::pow(static_cast<long double>(i), -static_cast<long double>(t));
    return static_cast<double>(factor * sum);
}

/// Parameter bundle for the sparse shadow bounds; carries every constant of
/// the statement so reports can print them.
struct SparseKKParams {
    double r = 0.0;
    double alpha = 0.0;
    int k = 0;
    int n = 0;
    double x = 0.0;
    int s = 0;
    int t = 0;
    double c = 0.0;      // (8k)^ceil(2r) / alpha^ceil(r)
    double C_err = 0.0;  // (8k/alpha)^ceil(4r) * log2 n
    double f_size = 0.0;
    double wp_value = 0.0;

    bool relations_hold() const {
        double rc = std::ceil(r);
        return t <= rc && rc <= static_cast<double>(k);
    }
    /// Corollary constant (8k/(alpha*gamma))^ceil(5r) * log2 n.
    double c_prime(double gamma) const {
        return std::pow(8.0 * k / (alpha * gamma), std::ceil(5.0 * r)) *
               std::log2(static_cast<double>(n));
    }
    /// Final lower-bound constant (8 r log2 n / alpha^2)^ceil(6r).
    double c_double_prime() const {
        return std::pow(8.0 * r * std::log2(static_cast<double>(n)) / (alpha * alpha),
                        std::ceil(6.0 * r));
    }
    /// Intro-variant constant (8k/alpha)^ceil(5r) * log2 n.
    double c_intro() const {
        return std::pow(8.0 * k / alpha, std::ceil(5.0 * r)) *
               std::log2(static_cast<double>(n));
    }
};

/// Derive s, t and the constants from (n, r, alpha, k, wp, |F|).  Pass
/// r = nullopt to take r = log |F| / log n.  s uses the closed form
/// ceil(log(|F|/sigma) / log(2n)) with sigma = c * wp, clamped at 0, and the
/// sandwich |F|/(2n)^s < sigma <= |F|/(2n)^{s-1} is verified when s >= 1.
inline SparseKKParams sparse_kk_params(int n, std::optional<double> r, double alpha, int k,
                                       double wp_value, double f_size) {
    if (n < 2) throw std::invalid_argument("sparse_kk_params: need n >= 2");
    if (k < 1) throw std::invalid_argument("sparse_kk_params: need k >= 1");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("sparse_kk_params: alpha outside (0, 1]");
    if (!(wp_value >= 1.0)) throw std::invalid_argument("sparse_kk_params: wp must be >= 1");
    if (!(f_size >= 1.0)) throw std::invalid_argument("sparse_kk_params: |F| must be >= 1");

    SparseKKParams p;
    p.n = n;
    p.k = k;
    p.alpha = alpha;
    p.f_size = f_size;
    p.wp_value = wp_value;
    p.r = r ? *r : std::log2(f_size) / std::log2(static_cast<double>(n));
    p.c = std::pow(8.0 * k, std::ceil(2.0 * p.r)) / std::pow(alpha, std::ceil(p.r));
    double sigma = p.c * wp_value;
    double raw = std::log2(f_size / sigma) / std::log2(2.0 * n);
    p.s = raw <= 0.0 ? 0 : static_cast<int>(std::ceil(raw - 1e-12));
    p.t = p.s + 1;
    p.C_err = std::pow(8.0 * k / alpha, std::ceil(4.0 * p.r)) *
              std::log2(static_cast<double>(n));

    if (p.s >= 1) {
        double hi = f_size / std::pow(2.0 * n, p.s - 1);
        double lo = f_size / std::pow(2.0 * n, p.s);
        if (!(lo < sigma && sigma <= hi))
            throw ContractError(
                "sparse_kk_params: s fails the sandwich |F|/(2n)^s < c*wp <= |F|/(2n)^{s-1} "
                "(s=" + std::to_string(p.s) + ", c*wp=" + std::to_string(sigma) + ")",
                sigma);
    }

    // Tightest admissible x: C(x, k-t) * n = wp, so the shadow bound's side
    // condition wp <= C(x,k-t) n holds with equality.  When t >= k the ratio
    // in the bound is constant and x is conventional.
    if (k - p.t >= 1)
        p.x = invert_binomial(wp_value / static_cast<double>(n), k - p.t);
    else
        p.x = static_cast<double>(k);
    return p;
}

/// A bound evaluation: the raw real value plus flags.  `vacuous` marks
/// values below 1 (true but useless at desk scale); `clamped` marks negative
/// falling-factorial artifacts zeroed out.
struct BoundValue {
    double value = 0.0;
    bool vacuous = false;
    bool clamped = false;
};

namespace detail {

inline BoundValue ratio_bound(double f_size, double constant, long double num,
                              long double den) {
    BoundValue out;
    if (!(den > 0.0L)) {
        out.value = 0.0;
        out.clamped = true;
        out.vacuous = true;
        return out;
    }
    if (num < 0.0L) {
        num = 0.0L;
        out.clamped = true;
    }
    out.value = static_cast<double>(static_cast<long double>(f_size) / constant * num / den);
    out.vacuous = out.value < 1.0;
    return out;
}

} // namespace detail

/// Shadow lower bound (1/C_err) * (C(x,i-t)/C(x,k-t)) * |F| for t <= i <= k.
/// Caller certifies wp(F, alpha n) <= min{C(x,k-t) n, |F|/2}.
inline BoundValue sparse_kk_bound(const SparseKKParams& p, int i) {
    if (i < p.t || i > p.k)
        throw std::invalid_argument("sparse_kk_bound: i outside [t, k]");
    return detail::ratio_bound(p.f_size, p.C_err,
                               binom_real(static_cast<long double>(p.x), i - p.t),
                               binom_real(static_cast<long double>(p.x), p.k - p.t));
}

/// Intro-variant bound (1/C_intro) * (C(x,i)/C(x,k)) * |F|.
inline BoundValue sparse_kk_bound_intro(const SparseKKParams& p, int i) {
    if (i < p.t || i > p.k)
        throw std::invalid_argument("sparse_kk_bound_intro: i outside [t, k]");
    return detail::ratio_bound(p.f_size, p.c_intro(),
                               binom_real(static_cast<long double>(p.x), i),
                               binom_real(static_cast<long double>(p.x), p.k));
}

/// Expected-trace lower bound (1/C') * |F| / B^{1 - log2(1+gamma)} on a
/// uniformly random floor(gamma n)-subset; requires k <= sqrt(gamma n).
inline BoundValue expected_trace_lower(const SparseKKParams& p, double B, double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("expected_trace_lower: gamma outside [0, 1]");
    if (!(B > 0.0)) throw std::invalid_argument("expected_trace_lower: B must be positive");
    if (static_cast<double>(p.k) > std::sqrt(gamma * p.n))
        throw ContractError("expected_trace_lower: k exceeds sqrt(gamma n)",
                            static_cast<double>(p.k));
    if (p.wp_value > B * p.n * (1.0 + 1e-12) || p.wp_value > p.f_size / 2.0 + 1e-9)
        throw ContractError("expected_trace_lower: wp exceeds min(B n, |F|/2)", p.wp_value);
    double cp = p.c_prime(gamma);
    double expo = 1.0 - std::log2(1.0 + gamma);
    BoundValue out;
    out.value = p.f_size / (cp * std::pow(B, expo));
    out.vacuous = out.value < 1.0;
    return out;
}

/// Explicit-constant trace lower bound (1/C'') * n^mu.
struct TraceLowerBound {
    double value = 0.0;
    double mu = 0.0;
    double exponent_loss = 0.0;  // log_n C''
    bool vacuous = false;
};

inline TraceLowerBound trace_tau_lower(int n, double r, double alpha) {
    if (n < 2) throw std::invalid_argument("trace_tau_lower: need n >= 2");
    TraceLowerBound out;
    out.mu = mu_exponent(r, alpha);
    double log2n = std::log2(static_cast<double>(n));
    double cpp = std::pow(8.0 * r * log2n / (alpha * alpha), std::ceil(6.0 * r));
    out.value = std::pow(static_cast<double>(n), out.mu) / cpp;
    out.exponent_loss = std::log2(cpp) / log2n;
    out.vacuous = out.value < 1.0;
    return out;
}

} // namespace tracelab
