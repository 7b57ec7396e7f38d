#pragma once

// Brute-force ground truth, deliberately written against plain std
// containers with naive loops.  Nothing here may call into the main
// library: differential tests are only meaningful if the two sides share
// no code beyond the on-disk edge-list format.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracelab/errors.hpp"

namespace tracelab::oracle {

using Edge = std::vector<int>;        // strictly increasing vertices
using SetFamily = std::vector<Edge>;  // distinct edges

/// Hard limits for exhaustive enumeration.  Any limit crossed aborts with a
/// partial result carried in the exception; a default-constructed budget is
/// effectively unlimited for desk-scale calls.
struct OracleBudget {
    int max_n = 20;
    int max_m = 1 << 20;
    std::uint64_t max_families = std::numeric_limits<std::uint64_t>::max();
    double time_limit = std::numeric_limits<double>::infinity();  // seconds

    bool empty() const {
        return max_n <= 0 || max_m <= 0 || max_families == 0 || !(time_limit > 0.0);
    }
};

namespace detail {

inline void check_universe(int n, const SetFamily& f, const char* who) {
    if (n < 0) throw std::invalid_argument(std::string(who) + ": negative n");
    if (n > 20) throw CapacityError(std::string(who) + ": oracle capped at n <= 20");
    for (const Edge& e : f)
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n)
                throw std::invalid_argument(std::string(who) + ": vertex out of range");
            if (i > 0 && e[i - 1] >= e[i])
                throw std::invalid_argument(std::string(who) + ": edge not strictly increasing");
        }
}

inline Edge intersect(const Edge& a, const Edge& b) {
    Edge out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool contains_all(const Edge& big, const Edge& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Visit every size-`sz` subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int sz, Fn fn) {
    if (sz < 0 || sz > n) return;
    Edge cur(static_cast<std::size_t>(sz));
    std::iota(cur.begin(), cur.end(), 0);
    for (;;) {
        fn(const_cast<const Edge&>(cur));
        int i = sz - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - sz + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < sz; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
}

} // namespace detail

/// |F_I|: number of distinct intersections of edges with the window.
inline std::size_t trace_exact(int n, const SetFamily& f, const Edge& window) {
    detail::check_universe(n, f, "trace_exact");
    detail::check_universe(n, SetFamily{window}, "trace_exact");
    std::set<Edge> seen;
    for (const Edge& e : f) seen.insert(detail::intersect(e, window));
    return seen.size();
}

/// tau(F, k): maximum of |F_I| over all k-vertex windows.
inline std::size_t trace_value_exact(int n, const SetFamily& f, int k) {
    detail::check_universe(n, f, "trace_value_exact");
    if (k < 0 || k > n) throw std::invalid_argument("trace_value_exact: k out of range");
    if (f.empty()) return 0;
    std::size_t best = 0;
    detail::for_each_combination(n, k, [&](const Edge& w) {
        std::size_t t = trace_exact(n, f, w);
        if (t > best) best = t;
    });
    return best;
}

/// |C(F, i)|: distinct i-subsets of edges.
inline std::size_t shadow_exact(int n, const SetFamily& f, int i) {
    detail::check_universe(n, f, "shadow_exact");
    if (i < 0) throw std::invalid_argument("shadow_exact: negative i");
    std::set<Edge> seen;
    for (const Edge& e : f)
        detail::for_each_combination(static_cast<int>(e.size()), i, [&](const Edge& idx) {
            Edge sub;
            sub.reserve(idx.size());
            for (int p : idx) sub.push_back(e[static_cast<std::size_t>(p)]);
            seen.insert(sub);
        });
    return seen.size();
}

/// wp(F, i): maximum number of edges inside a single i-vertex window.
inline std::size_t wp_exact(int n, const SetFamily& f, int i) {
    detail::check_universe(n, f, "wp_exact");
    if (i < 0 || i > n) throw std::invalid_argument("wp_exact: i out of range");
    std::size_t best = 0;
    detail::for_each_combination(n, i, [&](const Edge& w) {
        std::size_t c = 0;
        for (const Edge& e : f)
            if (detail::contains_all(w, e)) ++c;
        if (c > best) best = c;
    });
    return best;
}

/// Is every subset of the window a projection of some edge?
inline bool shattered_exact(int n, const SetFamily& f, const Edge& window) {
    detail::check_universe(n, f, "shattered_exact");
    std::set<Edge> seen;
    for (const Edge& e : f) seen.insert(detail::intersect(e, window));
    std::size_t want = std::size_t{1} << window.size();
    return seen.size() == want;
}

/// VC dimension: largest shattered window size, -1 for the empty family.
inline int vc_exact(int n, const SetFamily& f) {
    detail::check_universe(n, f, "vc_exact");
    if (f.empty()) return -1;
    int best = 0;
    for (int k = 1; k <= n; ++k) {
        bool found = false;
        detail::for_each_combination(n, k, [&](const Edge& w) {
            if (!found && shattered_exact(n, f, w)) found = true;
        });
        if (!found) break;
        best = k;
    }
    return best;
}

/// Number of edges containing every vertex of u (the size of the link F(U)).
inline std::size_t link_size_exact(int n, const SetFamily& f, const Edge& u) {
    detail::check_universe(n, f, "link_size_exact");
    std::size_t c = 0;
    for (const Edge& e : f)
        if (detail::contains_all(e, u)) ++c;
    return c;
}

namespace detail {

inline int permute_mask(int mask, const std::vector<int>& perm) {
    int out = 0;
    for (std::size_t v = 0; v < perm.size(); ++v)
        if (mask & (1 << v)) out |= 1 << perm[v];
    return out;
}

/// Lexicographic minimality of the sorted edge-mask list over all vertex
/// permutations; only canonical families get evaluated.
inline bool is_canonical(const std::vector<int>& family,
                         const std::vector<std::vector<int>>& perms) {
    std::vector<int> image(family.size());
    for (const auto& perm : perms) {
        for (std::size_t i = 0; i < family.size(); ++i)
            image[i] = permute_mask(family[i], perm);
        std::sort(image.begin(), image.end());
        if (image < family) return false;
    }
    return true;
}

} // namespace detail

/// Exact tau(n, m, k): minimum over all m-edge families on n vertices of the
/// maximum trace on a k-window.  Families are enumerated up to vertex
/// relabeling; pruning inside a family stops once its max trace reaches the
/// best minimum so far.
inline int tau_exact(int n, int m, int k, const OracleBudget& budget = {}) {
    if (n < 0 || n > 5) throw std::invalid_argument("tau_exact: need 0 <= n <= 5");
    if (k < 0 || k > n) throw std::invalid_argument("tau_exact: k out of range");
    int universe = 1 << n;
    if (m < 0 || m > universe)
        throw std::invalid_argument("tau_exact: m outside [0, 2^n]");
    if (m == 0) return 0;

    // Any single family's max trace is an upper bound for the minimum.
    auto best = static_cast<std::size_t>(std::min(m, 1 << k));
    std::uint64_t examined = 0;
    if (n > budget.max_n || m > budget.max_m || budget.empty())
        throw BudgetExceeded("tau_exact: instance larger than the budget allows",
                             static_cast<long long>(best), examined);

    std::vector<std::vector<int>> perms;
    {
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
    std::vector<int> windows;
    detail::for_each_combination(n, k, [&](const Edge& w) {
        int wm = 0;
        for (int v : w) wm |= 1 << v;
        windows.push_back(wm);
    });

    auto start = std::chrono::steady_clock::now();
    std::vector<int> family(static_cast<std::size_t>(m));
    std::iota(family.begin(), family.end(), 0);
    std::vector<int> proj;
    proj.reserve(family.size());
    for (;;) {
        if (detail::is_canonical(family, perms)) {
            ++examined;
            if (examined > budget.max_families)
                throw BudgetExceeded("tau_exact: family budget exhausted",
                                     static_cast<long long>(best), examined - 1);
            if ((examined & 511u) == 0) {
                std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
                if (el.count() > budget.time_limit)
                    throw BudgetExceeded("tau_exact: time limit exhausted",
                                         static_cast<long long>(best), examined);
            }
            std::size_t fam_max = 0;
            for (int wm : windows) {
                proj.clear();
                for (int e : family) proj.push_back(e & wm);
                std::sort(proj.begin(), proj.end());
                auto distinct = static_cast<std::size_t>(
                    std::unique(proj.begin(), proj.end()) - proj.begin());
                if (distinct > fam_max) fam_max = distinct;
                if (fam_max >= best) break;  // cannot improve the minimum
            }
            if (fam_max < best) best = fam_max;
        }
        int i = m - 1;
        while (i >= 0 && family[static_cast<std::size_t>(i)] == universe - m + i) --i;
        if (i < 0) break;
        ++family[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j)
            family[static_cast<std::size_t>(j)] = family[static_cast<std::size_t>(j - 1)] + 1;
    }
    return static_cast<int>(best);
}

} // namespace tracelab::oracle
