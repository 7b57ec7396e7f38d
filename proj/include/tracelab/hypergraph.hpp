#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tracelab/errors.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

/// Exhaustive subset scans refuse universes past this point.
inline constexpr int kMaxExhaustiveVertices = 4096;

/// Per-edge subset enumeration (downward closure and friends) refuses edges
/// wider than this, since 2^|e| blows past any index type.
inline constexpr int kMaxEnumerableEdge = 62;

/// Cap for the subset-transform (exact wp over all windows at once) path.
inline constexpr int kMaxZetaVertices = 24;

/// Subset of {0..n-1} as a packed bit mask with a cached popcount.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(int n) : n_(n), words_(word_count(n), 0) {
        if (n < 0) throw std::invalid_argument("VertexSet: negative universe");
    }

    static VertexSet from_vertices(int n, std::span<const int> vs) {
        VertexSet s(n);
        for (int v : vs) s.set(v);
        return s;
    }

    static VertexSet from_vertices(int n, std::initializer_list<int> vs) {
        return from_vertices(n, std::span<const int>(vs.begin(), vs.size()));
    }

    static VertexSet full(int n) {
        VertexSet s(n);
        for (int v = 0; v < n; ++v) s.set(v);
        return s;
    }

    int universe() const { return n_; }
    int size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool test(int v) const {
        if (v < 0 || v >= n_) return false;
        return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
    }

    void set(int v) {
        if (v < 0 || v >= n_) throw std::invalid_argument("VertexSet::set: vertex out of range");
        std::uint64_t& w = words_[static_cast<std::size_t>(v) >> 6];
        std::uint64_t bit = 1ull << (v & 63);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }

    void reset(int v) {
        if (v < 0 || v >= n_) throw std::invalid_argument("VertexSet::reset: vertex out of range");
        std::uint64_t& w = words_[static_cast<std::size_t>(v) >> 6];
        std::uint64_t bit = 1ull << (v & 63);
        if (w & bit) {
            w &= ~bit;
            --count_;
        }
    }

    /// Is `other` a subset of *this?
    bool contains(const VertexSet& other) const {
        require_same_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (other.words_[i] & ~words_[i]) return false;
        return true;
    }

    bool is_subset_of(const VertexSet& other) const { return other.contains(*this); }

    VertexSet operator&(const VertexSet& other) const {
        require_same_universe(other);
        VertexSet r(n_);
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            r.words_[i] = words_[i] & other.words_[i];
            c += std::popcount(r.words_[i]);
        }
        r.count_ = c;
        return r;
    }

    VertexSet operator|(const VertexSet& other) const {
        require_same_universe(other);
        VertexSet r(n_);
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            r.words_[i] = words_[i] | other.words_[i];
            c += std::popcount(r.words_[i]);
        }
        r.count_ = c;
        return r;
    }

    VertexSet difference(const VertexSet& other) const {
        require_same_universe(other);
        VertexSet r(n_);
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            r.words_[i] = words_[i] & ~other.words_[i];
            c += std::popcount(r.words_[i]);
        }
        r.count_ = c;
        return r;
    }

    int intersection_size(const VertexSet& other) const {
        require_same_universe(other);
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(words_[i] & other.words_[i]);
        return c;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

    /// Colex order on same-universe sets: compare the largest element on
    /// which the two differ, i.e. numeric order of the masks.
    bool colex_less(const VertexSet& other) const {
        require_same_universe(other);
        for (std::size_t i = words_.size(); i-- > 0;)
            if (words_[i] != other.words_[i]) return words_[i] < other.words_[i];
        return false;
    }

    std::vector<int> vertices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count_));
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                int b = std::countr_zero(w);
                out.push_back(static_cast<int>(i * 64) + b);
                w &= w - 1;
            }
        }
        return out;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    std::size_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ull ^ static_cast<std::uint64_t>(n_);
        for (std::uint64_t w : words_) {
            h ^= w;
            h *= 0x100000001b3ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }

    struct Hash {
        std::size_t operator()(const VertexSet& s) const { return s.hash(); }
    };

    static std::size_t word_count(int n) {
        return (static_cast<std::size_t>(n) + 63) / 64;
    }

private:
    void require_same_universe(const VertexSet& other) const {
        if (n_ != other.n_)
            throw std::invalid_argument("VertexSet: universe mismatch");
    }

    int n_ = 0;
    int count_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Ordered vertex tuple, repetition allowed.  Lemma-style tuple sums run
/// over all n^t of these, so the distinct-vertex view matters constantly.
struct VertexTuple {
    std::vector<int> entries;

    VertexTuple() = default;
    VertexTuple(std::initializer_list<int> vs) : entries(vs) {}
    explicit VertexTuple(std::vector<int> vs) : entries(std::move(vs)) {}

    std::size_t length() const { return entries.size(); }

    std::vector<int> distinct_vertices() const {
        std::vector<int> d = entries;
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        return d;
    }

    int distinct_count() const { return static_cast<int>(distinct_vertices().size()); }

    VertexSet distinct_set(int n) const {
        auto d = distinct_vertices();
        return VertexSet::from_vertices(n, d);
    }

    friend bool operator==(const VertexTuple& a, const VertexTuple& b) {
        return a.entries == b.entries;
    }
    friend bool operator<(const VertexTuple& a, const VertexTuple& b) {
        return a.entries < b.entries;
    }
};

namespace detail {

inline constexpr std::uint64_t kBinomInf = ~0ull;

/// Saturating integer binomial, used only for window ranking.
inline std::uint64_t binom_sat(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t j = 1; j <= k; ++j) {
        r = r * (n - k + j) / j;
        if (r > (static_cast<unsigned __int128>(1) << 63)) return kBinomInf;
    }
    return static_cast<std::uint64_t>(r);
}

/// Colex rank of a sorted k-subset: sum of C(w[t], t+1).
inline std::uint64_t colex_rank(std::span<const int> w) {
    std::uint64_t r = 0;
    for (std::size_t t = 0; t < w.size(); ++t)
        r += binom_sat(static_cast<std::uint64_t>(w[t]), t + 1);
    return r;
}

/// Inverse of colex_rank for k-subsets of {0..n-1}.
inline void colex_unrank(std::uint64_t rank, int n, int k, std::vector<int>& w) {
    w.assign(static_cast<std::size_t>(k), 0);
    int c = n - 1;
    for (int t = k; t >= 1; --t) {
        while (binom_sat(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(t)) > rank)
            --c;
        w[static_cast<std::size_t>(t - 1)] = c;
        rank -= binom_sat(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(t));
        --c;
    }
}

/// Advance a sorted k-subset to its colex successor.  Returns false when the
/// current subset is the last one ({n-k..n-1}).
inline bool colex_next(std::vector<int>& w, int n) {
    int k = static_cast<int>(w.size());
    for (int t = 0; t < k; ++t) {
        int limit = (t + 1 < k) ? w[static_cast<std::size_t>(t + 1)] : n;
        if (w[static_cast<std::size_t>(t)] + 1 < limit) {
            ++w[static_cast<std::size_t>(t)];
            for (int j = 0; j < t; ++j) w[static_cast<std::size_t>(j)] = j;
            return true;
        }
    }
    return false;
}

/// Colex packing of a small sorted set into 128 bits: 13-bit chunks, largest
/// vertex in the top chunk, (v+1) so padding can't collide with vertex 0.
/// Numeric order of the packed values equals colex order of the sets, also
/// across different sizes.  Fits size <= 9 and vertices <= 8190.
inline constexpr int kPackChunks = 9;

inline bool pack_colex_ok(int n, int size) { return size <= kPackChunks && n <= 8190; }

inline unsigned __int128 pack_colex(std::span<const int> sorted_asc) {
    unsigned __int128 p = 0;
    std::size_t s = sorted_asc.size();
    for (std::size_t t = 0; t < s; ++t) {
        auto chunk = static_cast<unsigned __int128>(sorted_asc[s - 1 - t] + 1);
        p |= chunk << (13 * (kPackChunks - 1 - static_cast<int>(t)));
    }
    return p;
}

inline void unpack_colex(unsigned __int128 p, std::vector<int>& out) {
    out.clear();
    for (int t = kPackChunks - 1; t >= 0; --t) {
        auto chunk = static_cast<std::uint32_t>((p >> (13 * t)) & 0x1FFF);
        if (chunk != 0) out.push_back(static_cast<int>(chunk) - 1);
    }
    std::reverse(out.begin(), out.end());  // emit ascending
}

struct U128Hash {
    std::size_t operator()(unsigned __int128 v) const {
        auto lo = static_cast<std::uint64_t>(v);
        auto hi = static_cast<std::uint64_t>(v >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ull;
        h ^= h >> 32;
        h += hi * 0xBF58476D1CE4E5B9ull;
        h ^= h >> 29;
        return static_cast<std::size_t>(h);
    }
};

inline bool colex_less_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

} // namespace detail

/// Finite hypergraph on dense vertices {0..n-1}.  Edges are distinct vertex
/// subsets stored as fixed-width masks in one flat pool, kept in colex order,
/// so iteration order, trimming and equality are all deterministic.
class Hypergraph {
public:
    Hypergraph() = default;

    explicit Hypergraph(int n) : n_(check_n(n)), wpe_(VertexSet::word_count(n)) {}

    static Hypergraph from_edges(int n, const std::vector<VertexSet>& edges) {
        Hypergraph h(n);
        std::vector<std::uint64_t> pool;
        pool.reserve(edges.size() * h.wpe_);
        for (const auto& e : edges) {
            if (e.universe() != n)
                throw std::invalid_argument("Hypergraph: edge universe mismatch");
            auto w = e.words();
            pool.insert(pool.end(), w.begin(), w.end());
        }
        h.adopt_pool(std::move(pool), edges.size());
        return h;
    }

    static Hypergraph from_edges(int n, const std::vector<std::vector<int>>& edges) {
        std::vector<VertexSet> sets;
        sets.reserve(edges.size());
        for (const auto& e : edges) sets.push_back(VertexSet::from_vertices(n, e));
        return from_edges(n, sets);
    }

    /// Takes a raw mask pool (edge_count * words_per_edge words), dedups and
    /// colex-sorts it.
    static Hypergraph from_mask_pool(int n, std::vector<std::uint64_t> pool,
                                     std::size_t edge_count) {
        Hypergraph h(n);
        if (h.wpe_ == 0 ? false : pool.size() != edge_count * h.wpe_)
            throw std::invalid_argument("Hypergraph: pool size mismatch");
        h.adopt_pool(std::move(pool), edge_count);
        return h;
    }

    int n() const { return n_; }
    std::size_t size() const { return m_; }
    bool empty() const { return m_ == 0; }
    std::size_t words_per_edge() const { return wpe_; }
    std::optional<int> uniformity() const { return uniformity_; }

    std::span<const std::uint64_t> edge_words(std::size_t i) const {
        return {pool_.data() + i * wpe_, wpe_};
    }

    /// The whole colex-sorted mask pool (size() * words_per_edge() words).
    std::span<const std::uint64_t> pool() const { return pool_; }

    int edge_size(std::size_t i) const {
        int c = 0;
        for (std::uint64_t w : edge_words(i)) c += std::popcount(w);
        return c;
    }

    VertexSet edge(std::size_t i) const {
        VertexSet s(n_);
        auto w = edge_words(i);
        for (std::size_t j = 0; j < wpe_; ++j)
            for (std::uint64_t word = w[j]; word; word &= word - 1)
                s.set(static_cast<int>(j * 64) + std::countr_zero(word));
        return s;
    }

    std::vector<int> edge_vertices(std::size_t i) const {
        std::vector<int> out;
        auto w = edge_words(i);
        for (std::size_t j = 0; j < wpe_; ++j)
            for (std::uint64_t word = w[j]; word; word &= word - 1)
                out.push_back(static_cast<int>(j * 64) + std::countr_zero(word));
        return out;
    }

    std::vector<VertexSet> edges_as_sets() const {
        std::vector<VertexSet> out;
        out.reserve(m_);
        for (std::size_t i = 0; i < m_; ++i) out.push_back(edge(i));
        return out;
    }

    bool has_edge(const VertexSet& e) const {
        if (e.universe() != n_) return false;
        auto target = e.words();
        std::size_t lo = 0, hi = m_;
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            auto w = edge_words(mid);
            if (detail::colex_less_words(w, target)) lo = mid + 1;
            else if (detail::colex_less_words(target, w)) hi = mid;
            else return true;
        }
        return false;
    }

    /// Number of edges containing v.
    std::size_t degree(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("degree: vertex out of range");
        std::size_t word = static_cast<std::size_t>(v) >> 6;
        std::uint64_t bit = 1ull << (v & 63);
        std::size_t d = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (pool_[i * wpe_ + word] & bit) ++d;
        return d;
    }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> d(static_cast<std::size_t>(n_), 0);
        for (std::size_t i = 0; i < m_; ++i) {
            auto w = edge_words(i);
            for (std::size_t j = 0; j < wpe_; ++j)
                for (std::uint64_t word = w[j]; word; word &= word - 1)
                    ++d[j * 64 + static_cast<std::size_t>(std::countr_zero(word))];
        }
        return d;
    }

    /// First `count` edges in colex order, as their own hypergraph.
    Hypergraph take_colex_prefix(std::size_t count) const {
        if (count > m_) throw std::invalid_argument("take_colex_prefix: not enough edges");
        Hypergraph h(n_);
        std::vector<std::uint64_t> pool(pool_.begin(),
                                        pool_.begin() + static_cast<std::ptrdiff_t>(count * wpe_));
        h.adopt_sorted_pool(std::move(pool), count);
        return h;
    }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.m_ == b.m_ && a.pool_ == b.pool_;
    }

private:
    static int check_n(int n) {
        if (n < 0) throw std::invalid_argument("Hypergraph: negative vertex count");
        return n;
    }

    void adopt_pool(std::vector<std::uint64_t> pool, std::size_t edge_count) {
        if (wpe_ == 0) {
            // Universe of size 0: the only possible edge is the empty set.
            pool_.clear();
            m_ = edge_count > 0 ? 1 : 0;
            uniformity_ = m_ == 1 ? std::optional<int>(0) : std::nullopt;
            return;
        }
        std::vector<std::size_t> idx(edge_count);
        std::iota(idx.begin(), idx.end(), 0);
        auto row = [&](std::size_t i) {
            return std::span<const std::uint64_t>(pool.data() + i * wpe_, wpe_);
        };
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return detail::colex_less_words(row(a), row(b));
        });
        idx.erase(std::unique(idx.begin(), idx.end(),
                              [&](std::size_t a, std::size_t b) {
                                  return !detail::colex_less_words(row(a), row(b)) &&
                                         !detail::colex_less_words(row(b), row(a));
                              }),
                  idx.end());
        std::vector<std::uint64_t> sorted;
        sorted.reserve(idx.size() * wpe_);
        for (std::size_t i : idx) {
            auto w = row(i);
            sorted.insert(sorted.end(), w.begin(), w.end());
        }
        adopt_sorted_pool(std::move(sorted), idx.size());
    }

    void adopt_sorted_pool(std::vector<std::uint64_t> pool, std::size_t edge_count) {
        pool_ = std::move(pool);
        m_ = edge_count;
        uniformity_.reset();
        if (m_ > 0) {
            int k = edge_size(0);
            bool uniform = true;
            for (std::size_t i = 1; i < m_ && uniform; ++i)
                uniform = edge_size(i) == k;
            if (uniform) uniformity_ = k;
        }
    }

    int n_ = 0;
    std::size_t wpe_ = 0;
    std::size_t m_ = 0;
    std::vector<std::uint64_t> pool_;
    std::optional<int> uniformity_;
};

namespace detail {

/// Flattened vertex lists of all edges; the cheap row-major view every
/// per-window loop wants.
struct EdgeLists {
    std::vector<std::uint32_t> flat;
    std::vector<std::size_t> offsets;  // size m+1

    explicit EdgeLists(const Hypergraph& h) {
        offsets.reserve(h.size() + 1);
        offsets.push_back(0);
        for (std::size_t i = 0; i < h.size(); ++i) {
            auto w = h.edge_words(i);
            for (std::size_t j = 0; j < w.size(); ++j)
                for (std::uint64_t word = w[j]; word; word &= word - 1)
                    flat.push_back(static_cast<std::uint32_t>(j * 64) +
                                   static_cast<std::uint32_t>(std::countr_zero(word)));
            offsets.push_back(flat.size());
        }
    }

    std::size_t edge_count() const { return offsets.size() - 1; }
    std::span<const std::uint32_t> edge(std::size_t i) const {
        return {flat.data() + offsets[i], offsets[i + 1] - offsets[i]};
    }
};

/// Scratch for distinct-projection counting within one window.  Projections
/// are <= window-size bits; an epoch-stamped table avoids clearing between
/// windows.
struct ProjectionScratch {
    std::vector<std::uint32_t> pos_stamp;   // per vertex: last window epoch
    std::vector<std::uint32_t> pos_value;   // per vertex: position within window
    std::vector<std::uint32_t> seen_stamp;  // per local mask: last window epoch
    std::vector<std::uint64_t> seen_large;  // fallback buffer for wide windows
    std::uint32_t epoch = 0;

    explicit ProjectionScratch(int n) : pos_stamp(static_cast<std::size_t>(n), 0),
                                        pos_value(static_cast<std::size_t>(n), 0) {}
};

/// Distinct projections of all edges onto the window (local masks), counted
/// with early exit once `cap` distinct values are seen.  Window size <= 25.
inline std::uint64_t count_projections(const EdgeLists& el, std::span<const int> window,
                                       ProjectionScratch& sc, std::uint64_t cap) {
    int k = static_cast<int>(window.size());
    ++sc.epoch;
    for (int p = 0; p < k; ++p) {
        sc.pos_stamp[static_cast<std::size_t>(window[p])] = sc.epoch;
        sc.pos_value[static_cast<std::size_t>(window[p])] = static_cast<std::uint32_t>(p);
    }
    std::size_t slots = static_cast<std::size_t>(1) << k;
    if (sc.seen_stamp.size() < slots) sc.seen_stamp.resize(slots, 0);
    std::uint64_t distinct = 0;
    std::size_t m = el.edge_count();
    for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t local = 0;
        for (std::uint32_t v : el.edge(i))
            if (sc.pos_stamp[v] == sc.epoch) local |= 1u << sc.pos_value[v];
        if (sc.seen_stamp[local] != sc.epoch) {
            sc.seen_stamp[local] = sc.epoch;
            if (++distinct >= cap) return distinct;
        }
    }
    return distinct;
}

/// Number of edges fully inside the window.
inline std::uint64_t count_inside(const EdgeLists& el, const std::vector<std::uint8_t>& in_window) {
    std::uint64_t c = 0;
    std::size_t m = el.edge_count();
    for (std::size_t i = 0; i < m; ++i) {
        bool inside = true;
        for (std::uint32_t v : el.edge(i))
            if (!in_window[v]) {
                inside = false;
                break;
            }
        c += inside;
    }
    return c;
}

} // namespace detail

/// F_I: distinct intersections of the edges with I, in colex order.
inline std::vector<VertexSet> trace_onto(const Hypergraph& f, const VertexSet& window) {
    if (window.universe() != f.n())
        throw std::invalid_argument("trace_onto: universe mismatch");
    std::unordered_set<VertexSet, VertexSet::Hash> seen;
    seen.reserve(f.size() * 2 + 1);
    for (std::size_t i = 0; i < f.size(); ++i) seen.insert(f.edge(i) & window);
    std::vector<VertexSet> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.colex_less(b); });
    return out;
}

inline std::uint64_t trace_count(const Hypergraph& f, const VertexSet& window) {
    if (window.universe() != f.n())
        throw std::invalid_argument("trace_count: universe mismatch");
    auto verts = window.vertices();
    if (verts.size() <= 25) {
        detail::EdgeLists el(f);
        detail::ProjectionScratch sc(f.n());
        return detail::count_projections(el, verts, sc, detail::kBinomInf);
    }
    std::unordered_set<VertexSet, VertexSet::Hash> seen;
    seen.reserve(f.size() * 2 + 1);
    for (std::size_t i = 0; i < f.size(); ++i) seen.insert(f.edge(i) & window);
    return seen.size();
}

namespace detail {

template <typename PerWindow>
std::uint64_t window_scan_max(int n, int k, std::uint64_t max_possible, PerWindow per_window) {
    std::uint64_t total = binom_sat(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
    std::atomic<bool> saturated{false};

    struct Part {
        std::uint64_t best = 0;
        std::uint64_t rank = kBinomInf;  // first rank achieving best
    };

    std::uint64_t grain = 512;
    auto work = [&](std::uint64_t b, std::uint64_t e) {
        Part p;
        if (saturated.load(std::memory_order_relaxed)) return p;
        std::vector<int> w;
        colex_unrank(b, n, k, w);
        ProjectionScratch sc(n);
        for (std::uint64_t r = b; r < e; ++r) {
            std::uint64_t val = per_window(std::span<const int>(w), sc);
            if (val > p.best) {
                p.best = val;
                p.rank = r;
                if (val >= max_possible) {
                    saturated.store(true, std::memory_order_relaxed);
                    return p;
                }
            }
            if (r + 1 < e) colex_next(w, n);
        }
        return p;
    };
    auto combine = [](Part a, Part b) {
        if (b.best > a.best) return b;
        if (b.best == a.best && b.rank < a.rank) return b;
        return a;
    };
    Part result = chunked_reduce<Part>(total, Part{}, work, combine, grain);
    return result.best;
}

} // namespace detail

/// tr(F, k): max over all k-windows of the projection count.  Exhaustive.
inline std::uint64_t trace_value(const Hypergraph& f, int k) {
    if (k < 0 || k > f.n()) throw std::invalid_argument("trace_value: k out of range");
    if (f.n() > kMaxExhaustiveVertices)
        throw CapacityError("trace_value: exhaustive scan capped at 4096 vertices");
    if (f.empty()) return 0;
    if (k == 0) return 1;
    if (k > 25) throw CapacityError("trace_value: window wider than 25 bits");
    detail::EdgeLists el(f);
    std::uint64_t cap = std::uint64_t{1} << k;
    return detail::window_scan_max(f.n(), k, cap,
                                   [&](std::span<const int> w, detail::ProjectionScratch& sc) {
                                       return detail::count_projections(el, w, sc, cap);
                                   });
}

/// Like trace_value but also reports the colex-first maximizing window.
inline std::pair<std::uint64_t, VertexSet> trace_value_witness(const Hypergraph& f, int k) {
    if (k < 0 || k > f.n()) throw std::invalid_argument("trace_value: k out of range");
    if (f.n() > kMaxExhaustiveVertices)
        throw CapacityError("trace_value: exhaustive scan capped at 4096 vertices");
    if (f.empty()) return {0, VertexSet(f.n())};
    if (k == 0) return {1, VertexSet(f.n())};
    if (k > 25) throw CapacityError("trace_value: window wider than 25 bits");
    detail::EdgeLists el(f);
    std::uint64_t cap = std::uint64_t{1} << k;

    // No global early exit here: the colex-first witness needs every earlier
    // rank examined.
    std::uint64_t total =
        detail::binom_sat(static_cast<std::uint64_t>(f.n()), static_cast<std::uint64_t>(k));
    struct Part {
        std::uint64_t best = 0;
        std::uint64_t rank = detail::kBinomInf;
    };
    auto work = [&](std::uint64_t b, std::uint64_t e) {
        Part p;
        std::vector<int> w;
        detail::colex_unrank(b, f.n(), k, w);
        detail::ProjectionScratch sc(f.n());
        for (std::uint64_t r = b; r < e; ++r) {
            std::uint64_t val = detail::count_projections(el, w, sc, cap);
            if (val > p.best) {
                p.best = val;
                p.rank = r;
            }
            if (r + 1 < e) detail::colex_next(w, f.n());
        }
        return p;
    };
    auto combine = [](Part a, Part b) {
        if (b.best > a.best) return b;
        if (b.best == a.best && b.rank < a.rank) return b;
        return a;
    };
    Part res = chunked_reduce<Part>(total, Part{}, work, combine, 512);
    std::vector<int> w;
    detail::colex_unrank(res.rank, f.n(), k, w);
    return {res.best, VertexSet::from_vertices(f.n(), w)};
}

/// Is some k-window fully shattered (2^k projections)?
inline bool exists_shattered(const Hypergraph& f, int k) {
    if (k < 0 || k > f.n()) return false;
    if (f.empty()) return false;
    if (k == 0) return true;
    if (k > 25) throw CapacityError("exists_shattered: window wider than 25 bits");
    return trace_value(f, k) == (std::uint64_t{1} << k);
}

/// VC dimension: largest shattered-window size; -1 for the empty family.
inline int vc_dimension(const Hypergraph& f) {
    if (f.empty()) return -1;
    int k = 0;
    // Sauer caps the dimension at log2(m); no window bigger than n either.
    while (k < f.n() && (std::uint64_t{1} << (k + 1)) <= 2 * f.size()) {
        if (!exists_shattered(f, k + 1)) break;
        ++k;
    }
    return k;
}

/// F[I]: edges fully inside I, relabeled order-preservingly onto {0..|I|-1}.
inline Hypergraph induced(const Hypergraph& f, const VertexSet& window) {
    if (window.universe() != f.n())
        throw std::invalid_argument("induced: universe mismatch");
    auto verts = window.vertices();
    std::vector<int> relabel(static_cast<std::size_t>(f.n()), -1);
    for (std::size_t p = 0; p < verts.size(); ++p)
        relabel[static_cast<std::size_t>(verts[p])] = static_cast<int>(p);

    int n2 = static_cast<int>(verts.size());
    std::vector<std::uint64_t> pool;
    std::size_t wpe2 = VertexSet::word_count(n2);
    std::size_t kept = 0;
    std::vector<std::uint64_t> row(wpe2, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        bool inside = true;
        std::fill(row.begin(), row.end(), 0);
        auto w = f.edge_words(i);
        for (std::size_t j = 0; j < w.size() && inside; ++j)
            for (std::uint64_t word = w[j]; word; word &= word - 1) {
                int v = static_cast<int>(j * 64) + std::countr_zero(word);
                int nv = relabel[static_cast<std::size_t>(v)];
                if (nv < 0) {
                    inside = false;
                    break;
                }
                row[static_cast<std::size_t>(nv) >> 6] |= 1ull << (nv & 63);
            }
        if (inside) {
            pool.insert(pool.end(), row.begin(), row.end());
            ++kept;
        }
    }
    // Order-preserving relabeling keeps colex order, so the pool is sorted.
    return Hypergraph::from_mask_pool(n2, std::move(pool), kept);
}

inline std::uint64_t induced_count(const Hypergraph& f, const VertexSet& window) {
    if (window.universe() != f.n())
        throw std::invalid_argument("induced_count: universe mismatch");
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto w = f.edge_words(i);
        auto ww = window.words();
        bool inside = true;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j] & ~ww[j]) {
                inside = false;
                break;
            }
        c += inside;
    }
    return c;
}

/// All wp(F, i) for i = 0..n at once via a subset-sum transform; needs
/// n <= 24.  wp(F, i) = max over i-windows of the induced edge count.
inline std::vector<std::uint64_t> wp_all(const Hypergraph& f) {
    int n = f.n();
    if (n > kMaxZetaVertices)
        throw CapacityError("wp_all: exact transform capped at 24 vertices");
    std::size_t full = std::size_t{1} << n;
    std::vector<std::uint32_t> cnt(full, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::uint64_t mask = f.words_per_edge() ? f.edge_words(i)[0] : 0;
        ++cnt[static_cast<std::size_t>(mask)];
    }
    for (int b = 0; b < n; ++b) {
        std::size_t bit = std::size_t{1} << b;
        for (std::size_t m = 0; m < full; ++m)
            if (m & bit) cnt[m] += cnt[m ^ bit];
    }
    std::vector<std::uint64_t> best(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t m = 0; m < full; ++m) {
        int pc = std::popcount(static_cast<std::uint64_t>(m));
        if (cnt[m] > best[static_cast<std::size_t>(pc)])
            best[static_cast<std::size_t>(pc)] = cnt[m];
    }
    return best;
}

/// wp(F, i), the popularity of the densest i-window.
inline std::uint64_t wp(const Hypergraph& f, int i) {
    if (i < 0 || i > f.n()) throw std::invalid_argument("wp: window size out of range");
    if (f.empty()) return 0;
    if (f.n() <= kMaxZetaVertices) return wp_all(f)[static_cast<std::size_t>(i)];
    if (f.n() > kMaxExhaustiveVertices)
        throw CapacityError("wp: exhaustive scan capped at 4096 vertices");
    detail::EdgeLists el(f);
    std::uint64_t total =
        detail::binom_sat(static_cast<std::uint64_t>(f.n()), static_cast<std::uint64_t>(i));
    if (total == detail::kBinomInf)
        throw CapacityError("wp: too many windows to enumerate");
    auto work = [&](std::uint64_t b, std::uint64_t e) {
        std::vector<int> w;
        detail::colex_unrank(b, f.n(), i, w);
        std::vector<std::uint8_t> in_window(static_cast<std::size_t>(f.n()), 0);
        std::uint64_t best = 0;
        for (std::uint64_t r = b; r < e; ++r) {
            for (int v : w) in_window[static_cast<std::size_t>(v)] = 1;
            std::uint64_t c = detail::count_inside(el, in_window);
            for (int v : w) in_window[static_cast<std::size_t>(v)] = 0;
            if (c > best) best = c;
            if (r + 1 < e) detail::colex_next(w, f.n());
        }
        return best;
    };
    return chunked_reduce<std::uint64_t>(
        total, 0, work, [](std::uint64_t a, std::uint64_t b) { return a < b ? b : a; }, 256);
}

/// F(U): link of the distinct vertices of U, on the remaining universe,
/// relabeled order-preservingly.
inline Hypergraph link(const Hypergraph& f, const VertexSet& u) {
    if (u.universe() != f.n()) throw std::invalid_argument("link: universe mismatch");
    std::vector<int> relabel(static_cast<std::size_t>(f.n()), -1);
    int next = 0;
    for (int v = 0; v < f.n(); ++v)
        if (!u.test(v)) relabel[static_cast<std::size_t>(v)] = next++;

    int n2 = f.n() - u.size();
    std::size_t wpe2 = VertexSet::word_count(n2);
    std::vector<std::uint64_t> pool;
    std::size_t kept = 0;
    std::vector<std::uint64_t> row(wpe2, 0);
    auto uw = u.words();
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto w = f.edge_words(i);
        bool contains_u = true;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (uw[j] & ~w[j]) {
                contains_u = false;
                break;
            }
        if (!contains_u) continue;
        std::fill(row.begin(), row.end(), 0);
        for (std::size_t j = 0; j < w.size(); ++j)
            for (std::uint64_t word = w[j] & ~uw[j]; word; word &= word - 1) {
                int v = static_cast<int>(j * 64) + std::countr_zero(word);
                int nv = relabel[static_cast<std::size_t>(v)];
                row[static_cast<std::size_t>(nv) >> 6] |= 1ull << (nv & 63);
            }
        pool.insert(pool.end(), row.begin(), row.end());
        ++kept;
    }
    // Distinct edges stay distinct after removing a common subset, and the
    // order-preserving relabeling keeps colex order.
    return Hypergraph::from_mask_pool(n2, std::move(pool), kept);
}

inline Hypergraph link(const Hypergraph& f, const VertexTuple& u) {
    return link(f, u.distinct_set(f.n()));
}

/// Number of edges containing all of U (the link's edge count, computed
/// without materializing it).
inline std::uint64_t link_size(const Hypergraph& f, const VertexSet& u) {
    if (u.universe() != f.n()) throw std::invalid_argument("link_size: universe mismatch");
    auto uw = u.words();
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto w = f.edge_words(i);
        bool contains_u = true;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (uw[j] & ~w[j]) {
                contains_u = false;
                break;
            }
        c += contains_u;
    }
    return c;
}

namespace detail {

/// Dedup + colex-sort a stream of small same-or-mixed-size subsets given as
/// sorted vertex lists.  Uses the 128-bit colex packing.
class PackedSetCollector {
public:
    void add(std::span<const int> sorted_vertices) {
        vals_.push_back(pack_colex(sorted_vertices));
    }
    std::uint64_t distinct_count() {
        finish();
        return static_cast<std::uint64_t>(vals_.size());
    }
    const std::vector<unsigned __int128>& sorted_values() {
        finish();
        return vals_;
    }

private:
    void finish() {
        if (finished_) return;
        std::sort(vals_.begin(), vals_.end());
        vals_.erase(std::unique(vals_.begin(), vals_.end()), vals_.end());
        finished_ = true;
    }
    std::vector<unsigned __int128> vals_;
    bool finished_ = false;
};

template <typename Emit>
void for_each_subset_of_size(std::span<const int> verts, int i, Emit emit) {
    int s = static_cast<int>(verts.size());
    if (i > s || i < 0) return;
    std::vector<int> pick(static_cast<std::size_t>(i));
    std::vector<int> idx(static_cast<std::size_t>(i));
    for (int t = 0; t < i; ++t) idx[static_cast<std::size_t>(t)] = t;
    for (;;) {
        for (int t = 0; t < i; ++t)
            pick[static_cast<std::size_t>(t)] = verts[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])];
        emit(std::span<const int>(pick));
        int t = i - 1;
        while (t >= 0 && idx[static_cast<std::size_t>(t)] == s - i + t) --t;
        if (t < 0) break;
        ++idx[static_cast<std::size_t>(t)];
        for (int j = t + 1; j < i; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

} // namespace detail

/// |C(F, i)| without materializing the shadow.
inline std::uint64_t shadow_size(const Hypergraph& f, int i) {
    if (i < 0) throw std::invalid_argument("shadow_size: negative subset size");
    if (detail::pack_colex_ok(f.n(), i)) {
        detail::PackedSetCollector coll;
        std::vector<int> verts;
        for (std::size_t e = 0; e < f.size(); ++e) {
            verts = f.edge_vertices(e);
            detail::for_each_subset_of_size(verts, i,
                                            [&](std::span<const int> s) { coll.add(s); });
        }
        return coll.distinct_count();
    }
    std::unordered_set<VertexSet, VertexSet::Hash> seen;
    for (std::size_t e = 0; e < f.size(); ++e) {
        auto verts = f.edge_vertices(e);
        detail::for_each_subset_of_size(verts, i, [&](std::span<const int> s) {
            seen.insert(VertexSet::from_vertices(f.n(), std::vector<int>(s.begin(), s.end())));
        });
    }
    return seen.size();
}

/// C(F, i): the i-th shadow, all i-subsets of edges, in colex order.
inline std::vector<VertexSet> shadow(const Hypergraph& f, int i) {
    if (i < 0) throw std::invalid_argument("shadow: negative subset size");
    std::vector<VertexSet> out;
    if (detail::pack_colex_ok(f.n(), i)) {
        detail::PackedSetCollector coll;
        std::vector<int> verts;
        for (std::size_t e = 0; e < f.size(); ++e) {
            verts = f.edge_vertices(e);
            detail::for_each_subset_of_size(verts, i,
                                            [&](std::span<const int> s) { coll.add(s); });
        }
        std::vector<int> buf;
        for (unsigned __int128 p : coll.sorted_values()) {
            detail::unpack_colex(p, buf);
            out.push_back(VertexSet::from_vertices(f.n(), buf));
        }
        return out;
    }
    std::unordered_set<VertexSet, VertexSet::Hash> seen;
    for (std::size_t e = 0; e < f.size(); ++e) {
        auto verts = f.edge_vertices(e);
        detail::for_each_subset_of_size(verts, i, [&](std::span<const int> s) {
            seen.insert(VertexSet::from_vertices(f.n(), std::vector<int>(s.begin(), s.end())));
        });
    }
    out.assign(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.colex_less(b); });
    return out;
}

/// Smallest down-closed family containing F.
inline Hypergraph downward_closure(const Hypergraph& f) {
    std::unordered_set<VertexSet, VertexSet::Hash> seen;
    for (std::size_t e = 0; e < f.size(); ++e) {
        auto verts = f.edge_vertices(e);
        int s = static_cast<int>(verts.size());
        if (s > kMaxEnumerableEdge)
            throw CapacityError("downward_closure: edge wider than 62 vertices");
        for (std::uint64_t sub = 0;; ++sub) {
            VertexSet vs(f.n());
            for (int b = 0; b < s; ++b)
                if (sub & (std::uint64_t{1} << b)) vs.set(verts[static_cast<std::size_t>(b)]);
            seen.insert(std::move(vs));
            if (sub == (std::uint64_t{1} << s) - 1) break;
        }
    }
    std::vector<VertexSet> edges(seen.begin(), seen.end());
    return Hypergraph::from_edges(f.n(), edges);
}

/// Largest uniform layer of H; ties go to the smaller size.  Returns the
/// layer size and the layer as a uniform hypergraph.
inline std::pair<int, Hypergraph> popular_layer(const Hypergraph& h) {
    if (h.empty()) throw std::invalid_argument("popular_layer: empty family");
    std::vector<std::uint64_t> by_size;
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto s = static_cast<std::size_t>(h.edge_size(i));
        if (by_size.size() <= s) by_size.resize(s + 1, 0);
        ++by_size[s];
    }
    std::size_t best = 0;
    for (std::size_t s = 1; s < by_size.size(); ++s)
        if (by_size[s] > by_size[best]) best = s;

    std::vector<std::uint64_t> pool;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (static_cast<std::size_t>(h.edge_size(i)) == best) {
            auto w = h.edge_words(i);
            pool.insert(pool.end(), w.begin(), w.end());
            ++kept;
        }
    return {static_cast<int>(best), Hypergraph::from_mask_pool(h.n(), std::move(pool), kept)};
}

/// Statistics of a sampled per-trial integer quantity.  Mean / stddev are
/// accumulated chunk-by-chunk in fixed order, so they are bit-stable across
/// thread counts.
struct SampleStats {
    std::uint64_t trials = 0;
    std::uint64_t max = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double ci99_halfwidth = 0.0;
};

namespace detail {

struct MomentPart {
    std::uint64_t max = 0;
    long double sum = 0.0L;
    long double sumsq = 0.0L;
};

inline SampleStats finish_stats(std::uint64_t trials, const MomentPart& m) {
    SampleStats st;
    st.trials = trials;
    st.max = m.max;
    if (trials == 0) return st;
    long double mean = m.sum / static_cast<long double>(trials);
    st.mean = static_cast<double>(mean);
    if (trials > 1) {
        long double var =
            (m.sumsq - m.sum * mean) / static_cast<long double>(trials - 1);
        if (var < 0) var = 0;
        st.stddev = static_cast<double>(std::sqrt(static_cast<double>(var)));
        // 99% normal CI half-width for the mean.
        st.ci99_halfwidth = 2.5758293035489 * st.stddev / std::sqrt(static_cast<double>(trials));
    }
    return st;
}

template <typename PerTrial>
SampleStats sampled_stats(std::uint64_t trials, PerTrial per_trial) {
    auto work = [&](std::uint64_t b, std::uint64_t e) {
        MomentPart p;
        for (std::uint64_t t = b; t < e; ++t) {
            std::uint64_t v = per_trial(t);
            if (v > p.max) p.max = v;
            auto lv = static_cast<long double>(v);
            p.sum += lv;
            p.sumsq += lv * lv;
        }
        return p;
    };
    auto combine = [](MomentPart a, const MomentPart& b) {
        if (b.max > a.max) a.max = b.max;
        a.sum += b.sum;
        a.sumsq += b.sumsq;
        return a;
    };
    MomentPart total = chunked_reduce<MomentPart>(trials, MomentPart{}, work, combine, 64);
    return finish_stats(trials, total);
}

} // namespace detail

/// Sampled induced-edge counts over random subsets of the given size.
/// Per-trial seeds are derived from `seed`, so results do not depend on the
/// thread partition.  The max is a certified lower bound on wp(F, size).
inline SampleStats sampled_wp_stats(const Hypergraph& f, int subset_size, std::uint64_t trials,
                                    std::uint64_t seed) {
    if (subset_size < 0 || subset_size > f.n())
        throw std::invalid_argument("sampled_wp_stats: subset size out of range");
    detail::EdgeLists el(f);
    auto n = static_cast<std::uint32_t>(f.n());
    return detail::sampled_stats(trials, [&, n](std::uint64_t t) {
        thread_local std::vector<std::uint8_t> in_window;
        thread_local std::vector<std::uint32_t> sample;
        thread_local std::unique_ptr<SubsetSampler> sampler;
        thread_local std::uint32_t sampler_n = ~0u;
        if (sampler_n != n) {
            sampler = std::make_unique<SubsetSampler>(n);
            sampler_n = n;
            in_window.assign(n, 0);
        }
        SplitMix64 rng(derive_seed(seed, t));
        sampler->sample(rng, static_cast<std::uint32_t>(subset_size), sample);
        for (std::uint32_t v : sample) in_window[v] = 1;
        std::uint64_t c = detail::count_inside(el, in_window);
        for (std::uint32_t v : sample) in_window[v] = 0;
        return c;
    });
}

/// Sampled projection counts |F_I| over random subsets; same determinism
/// contract as sampled_wp_stats.  Cost is O(|F|) per trial.
inline SampleStats sampled_trace_stats(const Hypergraph& f, int subset_size,
                                       std::uint64_t trials, std::uint64_t seed) {
    if (subset_size < 0 || subset_size > f.n())
        throw std::invalid_argument("sampled_trace_stats: subset size out of range");
    auto n = static_cast<std::uint32_t>(f.n());
    std::size_t wpe = f.words_per_edge();
    return detail::sampled_stats(trials, [&, n, wpe](std::uint64_t t) {
        thread_local std::vector<std::uint32_t> sample;
        thread_local std::vector<std::uint64_t> window;
        thread_local std::unique_ptr<SubsetSampler> sampler;
        thread_local std::uint32_t sampler_n = ~0u;
        if (sampler_n != n) {
            sampler = std::make_unique<SubsetSampler>(n);
            sampler_n = n;
        }
        window.assign(wpe, 0);
        SplitMix64 rng(derive_seed(seed, t));
        sampler->sample(rng, static_cast<std::uint32_t>(subset_size), sample);
        for (std::uint32_t v : sample) window[v >> 6] |= 1ull << (v & 63);

        thread_local std::vector<std::uint64_t> proj;
        proj.clear();
        // Project every edge, then count distinct masks.  Wide masks get
        // hashed word-wise into 64 bits; equal masks hash equal, and at
        // sampling scale collisions are negligible compared to the sampling
        // error this estimate already carries.
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto w = f.edge_words(i);
            std::uint64_t h = 0x9E3779B97F4A7C15ull;
            for (std::size_t j = 0; j < wpe; ++j) {
                h ^= w[j] & window[j];
                h *= 0x100000001b3ull;
                h ^= h >> 31;
            }
            proj.push_back(h);
        }
        std::sort(proj.begin(), proj.end());
        return static_cast<std::uint64_t>(
            std::unique(proj.begin(), proj.end()) - proj.begin());
    });
}

/// Result of the randomized separating-subset search: the best sampled
/// window and one representative edge index per distinct projection.
struct SeparatingSubset {
    VertexSet subset;
    std::vector<std::size_t> representatives;
    std::uint64_t distinct_projections = 0;
};

/// Samples `trials` windows of the target size and keeps the one with the
/// most distinct projections (earliest trial wins ties).  Representatives
/// are the lowest edge index realizing each projection.
inline SeparatingSubset find_separating_subset(const Hypergraph& f, int target_size,
                                               std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("find_separating_subset: zero trials");
    if (target_size < 0 || target_size > f.n())
        throw std::invalid_argument("find_separating_subset: target size out of range");

    struct Part {
        std::uint64_t best = 0;
        std::uint64_t trial = ~0ull;
    };
    auto n = static_cast<std::uint32_t>(f.n());
    std::size_t wpe = f.words_per_edge();
    auto count_for_trial = [&](std::uint64_t t, std::vector<std::uint64_t>* window_out) {
        SubsetSampler sampler(n);
        std::vector<std::uint32_t> sample;
        SplitMix64 rng(derive_seed(seed, t));
        sampler.sample(rng, static_cast<std::uint32_t>(target_size), sample);
        std::vector<std::uint64_t> window(wpe, 0);
        for (std::uint32_t v : sample) window[v >> 6] |= 1ull << (v & 63);
        if (window_out) *window_out = window;
        std::vector<std::vector<std::uint64_t>> proj;
        proj.reserve(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto w = f.edge_words(i);
            std::vector<std::uint64_t> p(wpe);
            for (std::size_t j = 0; j < wpe; ++j) p[j] = w[j] & window[j];
            proj.push_back(std::move(p));
        }
        std::sort(proj.begin(), proj.end());
        return static_cast<std::uint64_t>(
            std::unique(proj.begin(), proj.end()) - proj.begin());
    };

    auto work = [&](std::uint64_t b, std::uint64_t e) {
        Part p;
        for (std::uint64_t t = b; t < e; ++t) {
            std::uint64_t c = count_for_trial(t, nullptr);
            if (c > p.best) {
                p.best = c;
                p.trial = t;
            }
        }
        return p;
    };
    auto combine = [](Part a, Part b) {
        if (b.best > a.best) return b;
        if (b.best == a.best && b.trial < a.trial) return b;
        return a;
    };
    Part res = chunked_reduce<Part>(trials, Part{}, work, combine, 16);

    // Reconstruct the winning window and pick representatives.
    std::vector<std::uint64_t> window;
    count_for_trial(res.trial, &window);
    VertexSet subset(f.n());
    for (std::size_t j = 0; j < wpe; ++j)
        for (std::uint64_t word = window[j]; word; word &= word - 1)
            subset.set(static_cast<int>(j * 64) + std::countr_zero(word));

    std::vector<std::vector<std::uint64_t>> seen;
    SeparatingSubset out;
    out.subset = subset;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto w = f.edge_words(i);
        std::vector<std::uint64_t> p(wpe);
        for (std::size_t j = 0; j < wpe; ++j) p[j] = w[j] & window[j];
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) {
            seen.push_back(p);
            out.representatives.push_back(i);
        }
    }
    out.distinct_projections = seen.size();
    return out;
}

} // namespace tracelab
