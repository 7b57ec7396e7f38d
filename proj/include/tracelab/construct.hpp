#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/binomials.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/hypergraph.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

/// Parameters for the randomized extremal builders.  The clique construction
/// (build_sparse_kk_extremal) reads every field; the power-set construction
/// (build_trace_ub_family) derives k, x and ell itself and ignores those
/// inputs.  sample_trials / exact_trace_trials size the report's Monte Carlo
/// estimates; zero skips them.
struct ConstructionSpec {
    int n = 0;
    double r = 0.0;
    double alpha = 0.5;
    int k = 0;
    int x = 0;
    std::uint64_t ell = 0;
    std::uint64_t seed = kDefaultSeed;
    int max_retries = 16;
    bool relaxed = false;  // waive the asymptotic-only caps (x <= n^{1/6}, n <= alpha^k n^r)
    std::uint64_t sample_trials = 10000;
    std::uint64_t exact_trace_trials = 256;
};

enum class ConstructionMode { sparse_kk_extremal, trace_upper_family };

/// What a build produced, with the success-event diagnostics.  For the
/// clique construction the success event is all pairwise seed-set
/// intersections staying below 3r; for the power-set construction it is
/// the deduplicated family reaching n^r edges.
struct ConstructionReport {
    ConstructionMode mode = ConstructionMode::sparse_kk_extremal;
    Hypergraph family;
    std::vector<VertexSet> seed_sets;
    bool e1_holds = false;
    int max_pairwise_intersection = -1;  // -1 when skipped (quadratic in ell)
    int retries_used = 0;
    bool relaxed = false;
    std::uint64_t edges_before_trim = 0;
    // Induced-edge counts on random floor(alpha n)-subsets (clique build).
    std::optional<SampleStats> wp_estimate;
    // Exact projection counts |F_I| on a subsample of the same windows the
    // X statistic sees (power-set build).
    std::optional<SampleStats> trace_estimate;
    // X = sum_j 2^{|S_j cap I|}, the dominating statistic: every projection
    // of the family onto I is a subset of some S_j cap I, so |F_I| <= X.
    std::optional<SampleStats> x_estimate;
};

namespace detail {

// Distinct salt per sampling purpose so verification windows are not the
// construction's own randomness.
inline constexpr std::uint64_t kWpSampleSalt = 0x57ca77e12ab34cd5ull;
inline constexpr std::uint64_t kWindowSampleSalt = 0x3c65fb1d9e024a8bull;

inline std::vector<VertexSet> sample_seed_sets(int n, int x, std::uint64_t ell,
                                               std::uint64_t seed, std::uint64_t attempt) {
    SubsetSampler sampler(static_cast<std::uint32_t>(n));
    std::vector<std::uint32_t> buf;
    std::vector<VertexSet> sets;
    sets.reserve(ell);
    for (std::uint64_t j = 0; j < ell; ++j) {
        SplitMix64 rng(derive_seed(seed, attempt * ell + j));
        sampler.sample(rng, static_cast<std::uint32_t>(x), buf);
        VertexSet s(n);
        for (std::uint32_t v : buf) s.set(static_cast<int>(v));
        sets.push_back(std::move(s));
    }
    return sets;
}

struct PairwiseScan {
    int max = 0;
    std::vector<std::uint64_t> histogram;  // index = intersection size
};

inline PairwiseScan scan_pairwise(const std::vector<VertexSet>& sets, int x) {
    PairwiseScan out;
    out.histogram.assign(static_cast<std::size_t>(x) + 1, 0);
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            int c = sets[i].intersection_size(sets[j]);
            ++out.histogram[static_cast<std::size_t>(c)];
            if (c > out.max) out.max = c;
        }
    return out;
}

} // namespace detail

/// Union of k-cliques over ell random x-subsets, the extremal family for the
/// sparse shadow bound.  Retries until every pairwise seed-set intersection
/// has fewer than 3r vertices; under that event the cliques are edge-disjoint,
/// so |F| = ell * C(x,k), and the family is trimmed to the colex-first
/// ceil(n^r) edges.
inline ConstructionReport build_sparse_kk_extremal(const ConstructionSpec& spec) {
    int n = spec.n, k = spec.k, x = spec.x;
    if (n < 2) throw std::invalid_argument("build_sparse_kk_extremal: need n >= 2");
    if (!(spec.alpha > 0.0) || spec.alpha > 1.0)
        throw std::invalid_argument("build_sparse_kk_extremal: alpha outside (0, 1]");
    if (!(spec.r > 0.0)) throw std::invalid_argument("build_sparse_kk_extremal: need r > 0");
    if (k < 1 || k > x || x > n)
        throw std::invalid_argument("build_sparse_kk_extremal: need 1 <= k <= x <= n");
    if (3.0 * spec.r > static_cast<double>(k) + 1e-9)
        throw std::invalid_argument("build_sparse_kk_extremal: need 3r <= k");
    if (spec.ell < 1) throw std::invalid_argument("build_sparse_kk_extremal: need ell >= 1");
    if (spec.max_retries < 0)
        throw std::invalid_argument("build_sparse_kk_extremal: negative max_retries");

    double nr = std::pow(static_cast<double>(n), spec.r);
    double cxk = binom_real(static_cast<long double>(x), k);
    double akn = std::pow(spec.alpha, k) * nr;
    if (!spec.relaxed) {
        if (static_cast<double>(x) > std::pow(static_cast<double>(n), 1.0 / 6.0) + 1e-9)
            throw std::invalid_argument(
                "build_sparse_kk_extremal: x > n^{1/6}; pass relaxed to waive");
        if (static_cast<double>(n) > akn + 1e-9)
            throw std::invalid_argument(
                "build_sparse_kk_extremal: n > alpha^k n^r; pass relaxed to waive");
    }
    if (akn > cxk * n + 1e-9)
        throw std::invalid_argument("build_sparse_kk_extremal: alpha^k n^r > C(x,k) n");
    double ell = static_cast<double>(spec.ell);
    if (ell < nr / cxk - 1e-9 || ell > static_cast<double>(n) / std::pow(spec.alpha, k) + 1e-9)
        throw std::invalid_argument(
            "build_sparse_kk_extremal: ell outside [n^r / C(x,k), n / alpha^k]");

    std::vector<VertexSet> sets;
    detail::PairwiseScan scan;
    int attempt = 0;
    bool ok = false;
    for (; attempt <= spec.max_retries; ++attempt) {
        sets = detail::sample_seed_sets(n, x, spec.ell, spec.seed,
                                        static_cast<std::uint64_t>(attempt));
        scan = detail::scan_pairwise(sets, x);
        if (static_cast<double>(scan.max) < 3.0 * spec.r) {
            ok = true;
            break;
        }
    }
    if (!ok)
        throw ConstructionError(
            "build_sparse_kk_extremal: pairwise intersections reached " +
                std::to_string(scan.max) + " (need < 3r = " + std::to_string(3.0 * spec.r) +
                ") in every attempt",
            std::move(scan.histogram), spec.max_retries + 1);

    std::size_t wpe = VertexSet::word_count(n);
    std::vector<std::uint64_t> pool;
    pool.reserve(sets.size() * static_cast<std::size_t>(cxk) * wpe);
    std::vector<std::uint64_t> row(wpe);
    for (const auto& s : sets) {
        auto verts = s.vertices();
        detail::for_each_subset_of_size(verts, k, [&](std::span<const int> sub) {
            std::fill(row.begin(), row.end(), 0);
            for (int v : sub) row[static_cast<std::size_t>(v) >> 6] |= 1ull << (v & 63);
            pool.insert(pool.end(), row.begin(), row.end());
        });
    }
    std::size_t raw_edges = pool.size() / wpe;

    ConstructionReport rep;
    rep.mode = ConstructionMode::sparse_kk_extremal;
    rep.relaxed = spec.relaxed;
    rep.retries_used = attempt;
    rep.e1_holds = true;
    rep.max_pairwise_intersection = scan.max;
    rep.seed_sets = std::move(sets);
    rep.family = Hypergraph::from_mask_pool(n, std::move(pool), raw_edges);
    rep.edges_before_trim = rep.family.size();
    auto cap = static_cast<std::uint64_t>(std::ceil(nr - 1e-9));
    if (static_cast<double>(rep.family.size()) >= nr && rep.family.size() > cap)
        rep.family = rep.family.take_colex_prefix(cap);
    if (spec.sample_trials > 0) {
        int sz = static_cast<int>(spec.alpha * n);
        rep.wp_estimate = sampled_wp_stats(rep.family, sz, spec.sample_trials,
                                           spec.seed ^ detail::kWpSampleSalt);
    }
    return rep;
}

struct ShadowCheck {
    std::uint64_t shadow_size = 0;
    double bound = 0.0;  // ell * C(x, i)
    bool holds = false;
};

/// Exact i-shadow of a clique-union build against ell * C(x,i).  Equality at
/// i = k pre-trim; strict slack appears once cliques share sub-edges or the
/// family was trimmed.
inline ShadowCheck verify_shadow_upper(const ConstructionReport& report,
                                       const ConstructionSpec& spec, int i) {
    if (report.mode != ConstructionMode::sparse_kk_extremal)
        throw std::invalid_argument("verify_shadow_upper: report is not a clique-union build");
    if (!report.e1_holds)
        throw std::invalid_argument("verify_shadow_upper: build did not certify E1");
    if (i < 0 || i > spec.k)
        throw std::invalid_argument("verify_shadow_upper: i outside [0, k]");
    ShadowCheck out;
    out.shadow_size = shadow_size(report.family, i);
    out.bound = static_cast<double>(spec.ell) * binom_real(static_cast<long double>(spec.x), i);
    out.holds = static_cast<double>(out.shadow_size) <= out.bound + 0.5;
    return out;
}

enum class VerifyMode { exact, sample };

struct WpCheck {
    double bound = 0.0;  // 6 C(x,k) n
    bool exact = false;
    std::uint64_t exact_value = 0;
    SampleStats stats;  // sampled mode
    bool holds = false;
    // Exact mode proves wp <= bound.  Sampling can only refute: the sampled
    // max is a certified lower bound on wp, so holds=true just means the
    // bound survived the trials.
    bool certifies = false;
};

/// Induced-density check wp(F, alpha n) <= 6 C(x,k) n for a clique-union
/// build, exhaustively for n <= 24 or by Monte Carlo above that.
inline WpCheck verify_wp_upper(const ConstructionReport& report, const ConstructionSpec& spec,
                               VerifyMode mode, std::uint64_t trials = 10000) {
    if (report.mode != ConstructionMode::sparse_kk_extremal)
        throw std::invalid_argument("verify_wp_upper: report is not a clique-union build");
    WpCheck out;
    out.bound = 6.0 * binom_real(static_cast<long double>(spec.x), spec.k) * spec.n;
    int sz = static_cast<int>(spec.alpha * spec.n);
    if (mode == VerifyMode::exact) {
        if (spec.n > kMaxZetaVertices)
            throw CapacityError("verify_wp_upper: exact mode needs n <= " +
                                std::to_string(kMaxZetaVertices));
        out.exact = true;
        out.certifies = true;
        out.exact_value = wp(report.family, sz);
        out.holds = static_cast<double>(out.exact_value) <= out.bound + 0.5;
    } else {
        if (trials == 0) throw std::invalid_argument("verify_wp_upper: need trials >= 1");
        out.stats = sampled_wp_stats(report.family, sz, trials,
                                     spec.seed ^ detail::kWpSampleSalt);
        out.holds = static_cast<double>(out.stats.max) <= out.bound + 0.5;
    }
    return out;
}

/// Union of power sets of ell random x-subsets with x = floor((mu-1) log2 n)
/// and ell = ceil(2 n^r / 2^x); the family whose every trace stays near n^mu.
/// Success event: the deduplicated union reaches n^r sets.  The report
/// samples the dominating statistic X = sum_j 2^{|S_j cap I|} on random
/// floor(alpha n)-windows and takes exact projection counts on a subsample
/// of those same windows.
inline ConstructionReport build_trace_ub_family(const ConstructionSpec& spec) {
    int n = spec.n;
    if (n < 2) throw std::invalid_argument("build_trace_ub_family: need n >= 2");
    if (!(spec.alpha > 0.0) || spec.alpha > 1.0)
        throw std::invalid_argument("build_trace_ub_family: alpha outside (0, 1]");
    double log2n = std::log2(static_cast<double>(n));
    if (spec.r > std::sqrt(static_cast<double>(n)) / log2n + 1e-12)
        throw std::invalid_argument("build_trace_ub_family: need r <= sqrt(n) / log2 n");
    double mu = mu_exponent(spec.r, spec.alpha);
    int x = static_cast<int>(std::floor((mu - 1.0) * log2n));
    if (x < 1)
        throw std::invalid_argument("build_trace_ub_family: (mu-1) log2 n floors to zero");
    if (x > n) throw std::invalid_argument("build_trace_ub_family: x exceeds n");
    double nr = std::pow(static_cast<double>(n), spec.r);
    auto ell = static_cast<std::uint64_t>(std::ceil(2.0 * nr / std::exp2(x) - 1e-9));
    if (ell < 1) ell = 1;
    if (spec.max_retries < 0)
        throw std::invalid_argument("build_trace_ub_family: negative max_retries");

    std::size_t wpe = VertexSet::word_count(n);
    bool packed = detail::pack_colex_ok(n, x);
    if (x >= 63 || (ell << x) > (1ull << 27))
        throw CapacityError("build_trace_ub_family: ell * 2^x sets will not fit in memory");

    std::vector<VertexSet> sets;
    std::uint64_t family_size = 0;
    std::vector<unsigned __int128> packed_edges;
    std::vector<std::uint64_t> pool;
    int attempt = 0;
    bool ok = false;
    for (; attempt <= spec.max_retries; ++attempt) {
        sets = detail::sample_seed_sets(n, x, ell, spec.seed,
                                        static_cast<std::uint64_t>(attempt));
        if (packed) {
            packed_edges.clear();
            packed_edges.reserve(ell << x);
            std::vector<int> sub;
            for (const auto& s : sets) {
                auto verts = s.vertices();
                for (std::uint32_t b = 0; b < (1u << x); ++b) {
                    sub.clear();
                    for (int p = 0; p < x; ++p)
                        if (b & (1u << p)) sub.push_back(verts[static_cast<std::size_t>(p)]);
                    packed_edges.push_back(detail::pack_colex(sub));
                }
            }
            std::sort(packed_edges.begin(), packed_edges.end());
            packed_edges.erase(std::unique(packed_edges.begin(), packed_edges.end()),
                               packed_edges.end());
            family_size = packed_edges.size();
        } else {
            pool.clear();
            pool.reserve((ell << x) * wpe);
            std::vector<std::uint64_t> row(wpe);
            for (const auto& s : sets) {
                auto verts = s.vertices();
                for (std::uint64_t b = 0; b < (1ull << x); ++b) {
                    std::fill(row.begin(), row.end(), 0);
                    for (int p = 0; p < x; ++p)
                        if (b & (1ull << p)) {
                            int v = verts[static_cast<std::size_t>(p)];
                            row[static_cast<std::size_t>(v) >> 6] |= 1ull << (v & 63);
                        }
                    pool.insert(pool.end(), row.begin(), row.end());
                }
            }
            Hypergraph probe = Hypergraph::from_mask_pool(n, pool, ell << x);
            family_size = probe.size();
            pool.assign(probe.pool().begin(), probe.pool().end());
        }
        if (static_cast<double>(family_size) >= nr - 1e-9) {
            ok = true;
            break;
        }
    }
    if (!ok)
        throw ConstructionError(
            "build_trace_ub_family: union reached only " + std::to_string(family_size) +
                " sets (need n^r = " + std::to_string(nr) + ") in every attempt",
            {}, spec.max_retries + 1);

    ConstructionReport rep;
    rep.mode = ConstructionMode::trace_upper_family;
    rep.relaxed = spec.relaxed;
    rep.retries_used = attempt;
    rep.e1_holds = true;
    if (ell <= 2048) rep.max_pairwise_intersection = detail::scan_pairwise(sets, x).max;
    if (packed) {
        pool.clear();
        pool.resize(packed_edges.size() * wpe, 0);
        std::vector<int> buf;
        for (std::size_t i = 0; i < packed_edges.size(); ++i) {
            detail::unpack_colex(packed_edges[i], buf);
            for (int v : buf)
                pool[i * wpe + (static_cast<std::size_t>(v) >> 6)] |= 1ull << (v & 63);
        }
        std::size_t edge_count = packed_edges.size();
        packed_edges.clear();
        packed_edges.shrink_to_fit();
        rep.family = Hypergraph::from_mask_pool(n, std::move(pool), edge_count);
    } else {
        rep.family = Hypergraph::from_mask_pool(n, std::move(pool), family_size);
    }
    rep.edges_before_trim = rep.family.size();

    int sz = static_cast<int>(spec.alpha * n);
    std::uint64_t window_seed = spec.seed ^ detail::kWindowSampleSalt;
    if (spec.sample_trials > 0) {
        // X is integer-valued (a sum of powers of two), so the integer
        // statistics path applies verbatim.
        std::vector<std::uint64_t> set_words;
        set_words.reserve(sets.size() * wpe);
        for (const auto& s : sets) {
            auto w = s.words();
            set_words.insert(set_words.end(), w.begin(), w.end());
        }
        auto nn = static_cast<std::uint32_t>(n);
        rep.x_estimate = detail::sampled_stats(spec.sample_trials, [&, nn, wpe](std::uint64_t t) {
            thread_local std::vector<std::uint32_t> sample;
            thread_local std::vector<std::uint64_t> window;
            thread_local std::unique_ptr<SubsetSampler> sampler;
            thread_local std::uint32_t sampler_n = ~0u;
            if (sampler_n != nn) {
                sampler = std::make_unique<SubsetSampler>(nn);
                sampler_n = nn;
            }
            window.assign(wpe, 0);
            SplitMix64 rng(derive_seed(window_seed, t));
            sampler->sample(rng, static_cast<std::uint32_t>(sz), sample);
            for (std::uint32_t v : sample) window[v >> 6] |= 1ull << (v & 63);
            std::uint64_t xstat = 0;
            const std::uint64_t* p = set_words.data();
            for (std::size_t j = 0; j < sets.size(); ++j, p += wpe) {
                int c = 0;
                for (std::size_t w = 0; w < wpe; ++w)
                    c += std::popcount(p[w] & window[w]);
                xstat += 1ull << c;
            }
            return xstat;
        });
    }
    rep.seed_sets = std::move(sets);
    std::uint64_t tr = std::min(spec.exact_trace_trials, spec.sample_trials);
    if (tr > 0)
        // Same seed and trial indices as the X pass: trial t projects onto
        // the identical window, so trace <= X holds sample-by-sample.
        rep.trace_estimate = sampled_trace_stats(rep.family, sz, tr, window_seed);
    return rep;
}

/// Bounded-summand distribution for the tail check: `count` i.i.d. values in
/// [0,1], each Bernoulli(param), the constant `param`, or Uniform[0,1].
struct BoundedSumSpec {
    enum class Kind { bernoulli, constant, uniform01 };
    Kind kind = Kind::bernoulli;
    int count = 0;
    double param = 0.5;

    double mean() const {
        switch (kind) {
            case Kind::bernoulli: return count * param;
            case Kind::constant: return count * param;
            case Kind::uniform01: return count * 0.5;
        }
        return 0.0;
    }
};

struct TailCheckResult {
    double empirical = 0.0;  // observed Pr(X >= 6 x_param)
    double bound = 0.0;      // exp(-x_param)
    bool holds = false;
    double mean = 0.0;
    double sigma = 0.0;  // sampling-error scale used in the 3-sigma margin
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
};

/// Monte Carlo check of the Chernoff tail Pr(X >= 6x) <= exp(-x) for sums of
/// independent [0,1] variables with x at least a third of the mean.
inline TailCheckResult chernoff_tail_check(std::uint64_t trials, const BoundedSumSpec& dist,
                                           double x_param, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("chernoff_tail_check: need trials >= 1");
    if (dist.count < 0) throw std::invalid_argument("chernoff_tail_check: negative count");
    if (dist.kind != BoundedSumSpec::Kind::uniform01 &&
        (dist.param < 0.0 || dist.param > 1.0))
        throw std::invalid_argument("chernoff_tail_check: param outside [0, 1]");
    double mean = dist.mean();
    if (x_param < mean / 3.0 - 1e-12)
        throw std::invalid_argument("chernoff_tail_check: x below mean/3");

    double threshold = 6.0 * x_param;
    auto work = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t hits = 0;
        for (std::uint64_t t = b; t < e; ++t) {
            SplitMix64 rng(derive_seed(seed, t));
            double sum = 0.0;
            switch (dist.kind) {
                case BoundedSumSpec::Kind::bernoulli:
                    for (int i = 0; i < dist.count; ++i)
                        sum += rng.uniform01() < dist.param ? 1.0 : 0.0;
                    break;
                case BoundedSumSpec::Kind::constant:
                    sum = dist.mean();
                    break;
                case BoundedSumSpec::Kind::uniform01:
                    for (int i = 0; i < dist.count; ++i) sum += rng.uniform01();
                    break;
            }
            if (sum >= threshold) ++hits;
        }
        return hits;
    };
    std::uint64_t hits = chunked_reduce<std::uint64_t>(
        trials, 0, work, [](std::uint64_t a, std::uint64_t b) { return a + b; }, 256);

    TailCheckResult out;
    out.trials = trials;
    out.hits = hits;
    out.mean = mean;
    out.empirical = static_cast<double>(hits) / static_cast<double>(trials);
    out.bound = std::exp(-x_param);
    out.sigma = std::sqrt(out.empirical * (1.0 - out.empirical) /
                          static_cast<double>(trials)) +
                1.0 / static_cast<double>(trials);
    out.holds = out.empirical <= out.bound + 3.0 * out.sigma;
    return out;
}

} // namespace tracelab
