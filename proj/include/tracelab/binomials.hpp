#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <vector>

#include "tracelab/errors.hpp"

namespace tracelab {

/// Generalized binomial coefficient C(y, i) = y(y-1)...(y-i+1) / i! for real
/// y.  Stable product form: each partial of prod_{j=1..i} (y-i+j)/j is itself
/// a binomial coefficient, so for integer y every intermediate is an integer
/// and the result is exact while it fits the 64-bit mantissa.  If the direct
/// product overflows, the value is recomputed in log space with the sign
/// tracked separately.
inline long double binom_real(long double y, int i) {
    if (i < 0) throw std::invalid_argument("binom_real: negative lower index");
    if (i == 0) return 1.0L;
    long double r = 1.0L;
    for (int j = 1; j <= i; ++j) r *= (y - i + j) / j;
    if (!std::isinf(r)) return r;

    int negatives = 0;
    long double log2abs = 0.0L;
    for (int j = 1; j <= i; ++j) {
        long double f = y - i + j;
        if (f == 0.0L) return 0.0L;
        if (f < 0.0L) ++negatives;
        log2abs += std::log2(std::fabs(f)) - std::log2(static_cast<long double>(j));
    }
    long double sign = (negatives % 2) ? -1.0L : 1.0L;
    return sign * std::exp2(log2abs);
}

/// The unique y >= k-1 with C(y, k) = m, by bisection.  C(., k) is strictly
/// increasing from 0 on [k-1, inf), so the root exists for every m >= 0.
/// The bracket grows geometrically until it contains the root; bisection
/// then runs to the precision floor (well past the documented 1e-9).
inline double invert_binomial(double m, int k) {
    if (k < 1) throw std::invalid_argument("invert_binomial: k must be >= 1");
    if (!(m >= 0.0) || !std::isfinite(m))
        throw std::invalid_argument("invert_binomial: m must be finite and >= 0");
    auto target = static_cast<long double>(m);
    long double lo = k - 1.0L;
    long double width = std::max(2.0L, 2.0L * std::pow(static_cast<long double>(m),
                                                       1.0L / k) * k);
    long double hi = lo + width;
    int grow = 0;
    while (binom_real(hi, k) < target) {
        width *= 2.0L;
        hi = lo + width;
        if (++grow > 200) throw NumericError("invert_binomial: bracket growth failed");
    }
    for (int iter = 0; iter < 200; ++iter) {
        long double mid = 0.5L * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (binom_real(mid, k) < target) lo = mid;
        else hi = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

/// Binary entropy, H(0) = H(1) = 0.
inline double binary_entropy(double z) {
    if (z < 0.0 || z > 1.0) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    double h = 0.0;
    if (z > 0.0) h -= z * std::log2(z);
    if (z < 1.0) h -= (1.0 - z) * std::log2(1.0 - z);
    return h;
}

/// Trace exponent mu(r, alpha) = (r + 1 - log2(1+alpha)) / (2 - log2(1+alpha)).
inline double mu_exponent(double r, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("mu_exponent: alpha outside (0, 1]");
    if (!(r >= 1.0)) throw std::invalid_argument("mu_exponent: r must be >= 1");
    double l = std::log2(1.0 + alpha);
    return (r + 1.0 - l) / (2.0 - l);
}

/// Per-r exponent of the classical comparison lower bound: log2(1+alpha) for
/// alpha in [sqrt(2)-1, 1], otherwise log2(1+alpha) / H(log2(1+alpha)).
inline double lambda_exponent(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("lambda_exponent: alpha outside (0, 1]");
    double l = std::log2(1.0 + alpha);
    const double boundary = std::sqrt(2.0) - 1.0;
    if (alpha >= boundary) return l;
    return l / binary_entropy(l);
}

/// Two sides of an inequality plus its verdict; evaluators below all speak
/// this shape so reports can print them uniformly.
struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// sum_{i=0}^{k} C(x,i) gamma^i  >=  (1/4) (sum_{i=0}^{k} C(x,i))^{log2(1+gamma)}.
inline InequalityCheck sum_binom_gamma_lower(int k, double x, double gamma) {
    if (k < 1) throw std::invalid_argument("sum_binom_gamma_lower: k must be >= 1");
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("sum_binom_gamma_lower: gamma outside [0,1]");
    if (x < k) throw std::invalid_argument("sum_binom_gamma_lower: x must be >= k");
    long double lhs = 0.0L, total = 0.0L, g = 1.0L;
    for (int i = 0; i <= k; ++i) {
        long double c = binom_real(static_cast<long double>(x), i);
        lhs += c * g;
        total += c;
        g *= gamma;
    }
    long double rhs = 0.25L * std::pow(total, static_cast<long double>(std::log2(1.0 + gamma)));
    InequalityCheck out;
    out.lhs = static_cast<double>(lhs);
    out.rhs = static_cast<double>(rhs);
    out.holds = lhs >= rhs;
    return out;
}

/// 2^{x-1} < sum_{i=0}^{floor(x)} C(x,i) <= 2^x for x > 0 (strict lower,
/// weak upper).
struct NewtonSumBounds {
    double lower = 0.0;
    double sum = 0.0;
    double upper = 0.0;
    bool holds = false;
};

inline NewtonSumBounds newton_partial_sum_bounds(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("newton_partial_sum_bounds: x must be > 0");
    int fl = static_cast<int>(std::floor(x));
    long double s = 0.0L;
    for (int i = 0; i <= fl; ++i) s += binom_real(static_cast<long double>(x), i);
    NewtonSumBounds out;
    out.lower = static_cast<double>(std::exp2(static_cast<long double>(x) - 1.0L));
    out.sum = static_cast<double>(s);
    out.upper = static_cast<double>(std::exp2(static_cast<long double>(x)));
    out.holds = out.lower < out.sum && out.sum <= out.upper;
    return out;
}

/// C(y,i)/C(y,k) >= i^{-delta} C(x,i-delta)/C(x,k-delta), given
/// C(y,k) <= C(x,k-delta) and delta <= i <= k.
inline InequalityCheck binom_ratio_lower(double x, double y, int k, int i, int delta) {
    if (delta < 0 || i < delta || k < i)
        throw std::invalid_argument("binom_ratio_lower: need 0 <= delta <= i <= k");
    if (!(x > 0.0) || !(y > 0.0))
        throw std::invalid_argument("binom_ratio_lower: x and y must be positive");
    long double cyk = binom_real(static_cast<long double>(y), k);
    long double cxk = binom_real(static_cast<long double>(x), k - delta);
    if (!(cyk > 0.0L) || !(cxk > 0.0L))
        throw std::invalid_argument("binom_ratio_lower: denominators must be positive");
    if (cyk > cxk)
        throw std::invalid_argument("binom_ratio_lower: requires C(y,k) <= C(x,k-delta)");
    long double lhs = binom_real(static_cast<long double>(y), i) / cyk;
    long double factor =
        (delta == 0) ? 1.0L
                     : std::pow(static_cast<long double>(i), -static_cast<long double>(delta));
    long double rhs = factor * binom_real(static_cast<long double>(x), i - delta) / cxk;
    InequalityCheck out;
    out.lhs = static_cast<double>(lhs);
    out.rhs = static_cast<double>(rhs);
    out.holds = lhs >= rhs;
    return out;
}

/// e^{-2x} <= 1-x <= e^{-x}; the lower half only applies on [0, 1/2].
struct ExpSandwich {
    double exp_neg2x = 0.0;
    double one_minus_x = 0.0;
    double exp_negx = 0.0;
    bool lower_checked = false;  // false means the lower half is vacuous here
    bool lower_ok = true;
    bool upper_ok = false;
};

inline ExpSandwich exp_sandwich(double x) {
    ExpSandwich out;
    out.exp_neg2x = static_cast<double>(std::exp(-2.0L * x));
    out.one_minus_x = 1.0 - x;
    out.exp_negx = static_cast<double>(std::exp(-static_cast<long double>(x)));
    out.upper_ok = out.one_minus_x <= out.exp_negx;
    if (x >= 0.0 && x <= 0.5) {
        out.lower_checked = true;
        out.lower_ok = out.exp_neg2x <= out.one_minus_x;
    }
    return out;
}

namespace detail {

/// log(v!) with a lazily built table for the small values every pmf needs.
inline long double log_factorial(long long v) {
    static std::vector<long double> table;
    static std::once_flag built;
    std::call_once(built, [] {
        table.resize(8193);
        table[0] = 0.0L;
        for (std::size_t i = 1; i < table.size(); ++i)
            table[i] = table[i - 1] + std::log(static_cast<long double>(i));
    });
    if (v < 0) throw std::invalid_argument("log_factorial: negative argument");
    if (static_cast<std::size_t>(v) < table.size()) return table[static_cast<std::size_t>(v)];
    return std::lgamma(static_cast<long double>(v) + 1.0L);
}

inline long double log_choose(long long n, long long k) {
    if (k < 0 || k > n) return -std::numeric_limits<long double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

} // namespace detail

/// P[H = h] for H hypergeometric: h hits when drawing x of n items, y of
/// which are marked.
inline double hypergeom_pmf(long long n, long long x, long long y, long long h) {
    if (n < 0 || x < 0 || x > n || y < 0 || y > n)
        throw std::invalid_argument("hypergeom_pmf: need 0 <= x, y <= n");
    if (h < 0 || h > x) throw std::invalid_argument("hypergeom_pmf: need 0 <= h <= x");
    if (h > y || x - h > n - y) return 0.0;
    long double lp = detail::log_choose(y, h) + detail::log_choose(n - y, x - h) -
                     detail::log_choose(n, x);
    long double p = std::exp(lp);
    if (p < 0.0L) p = 0.0L;
    if (p > 1.0L) p = 1.0L;
    return static_cast<double>(p);
}

/// P[B = h] for B ~ Binomial(x, p).
inline double binom_pmf(long long x, double p, long long h) {
    if (x < 0 || h < 0 || h > x) throw std::invalid_argument("binom_pmf: need 0 <= h <= x");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binom_pmf: p outside [0,1]");
    if (p == 0.0) return h == 0 ? 1.0 : 0.0;
    if (p == 1.0) return h == x ? 1.0 : 0.0;
    long double lp = detail::log_choose(x, h) +
                     h * std::log(static_cast<long double>(p)) +
                     (x - h) * std::log(1.0L - static_cast<long double>(p));
    long double v = std::exp(lp);
    if (v < 0.0L) v = 0.0L;
    if (v > 1.0L) v = 1.0L;
    return static_cast<double>(v);
}

} // namespace tracelab
