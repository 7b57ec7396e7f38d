#pragma once

// JSON views of reports.  Every floating value is rounded through %.9g
// before insertion, so serialized output is byte-stable across platforms
// and thread counts.

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "tracelab/construct.hpp"
#include "tracelab/decompose.hpp"
#include "tracelab/edge_list.hpp"
#include "tracelab/suites.hpp"

namespace tracelab {

using json = nlohmann::json;

/// A double as a JSON number with 9 significant digits (re-parsed so the
/// serializer emits the short form).  Non-finite values become strings,
/// keeping reports loadable.
inline json num9(double v) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return json(std::strtod(buf, nullptr));
}

inline json to_json(const SampleStats& s) {
    return json{{"trials", s.trials},
                {"max", s.max},
                {"mean", num9(s.mean)},
                {"stddev", num9(s.stddev)},
                {"ci99_halfwidth", num9(s.ci99_halfwidth)}};
}

inline json to_json(const VerificationReport& r) {
    json j{{"property", r.property},
           {"params", r.instance},
           {"expected", r.expected},
           {"observed", r.observed},
           {"pass", r.pass}};
    if (r.witness) j["witness"] = *r.witness;
    return j;
}

inline json to_json(const std::vector<VerificationReport>& reports) {
    std::size_t failed = 0;
    json items = json::array();
    for (const auto& r : reports) {
        if (!r.pass) ++failed;
        items.push_back(to_json(r));
    }
    return json{{"checks", items},
                {"total", reports.size()},
                {"failed", failed},
                {"pass", failed == 0}};
}

inline json to_json(const ConstructionReport& r, const ConstructionSpec& spec) {
    json j{{"mode", r.mode == ConstructionMode::sparse_kk_extremal ? "sparse-kk" : "trace-ub"},
           {"n", spec.n},
           {"r", num9(spec.r)},
           {"alpha", num9(spec.alpha)},
           {"seed", spec.seed},
           {"e1_holds", r.e1_holds},
           {"retries_used", r.retries_used},
           {"relaxed", r.relaxed},
           {"edges_before_trim", r.edges_before_trim},
           {"family_size", r.family.size()},
           {"seed_set_count", r.seed_sets.size()}};
    if (r.mode == ConstructionMode::sparse_kk_extremal) {
        j["k"] = spec.k;
        j["x"] = spec.x;
        j["ell"] = spec.ell;
    } else if (!r.seed_sets.empty()) {
        j["x"] = r.seed_sets.front().size();
        j["ell"] = r.seed_sets.size();
    }
    if (r.max_pairwise_intersection >= 0)
        j["max_pairwise_intersection"] = r.max_pairwise_intersection;
    if (r.wp_estimate) j["wp_estimate"] = to_json(*r.wp_estimate);
    if (r.trace_estimate) j["trace_estimate"] = to_json(*r.trace_estimate);
    if (r.x_estimate) j["x_estimate"] = to_json(*r.x_estimate);
    return j;
}

/// Bound values carry the vacuous flag instead of pretending sub-1 lower
/// bounds say anything.
inline json to_json(const BoundValue& b) {
    json j{{"value", num9(b.value)}, {"vacuous", b.vacuous}};
    if (b.clamped) j["clamped"] = true;
    return j;
}

inline json to_json(const SparseKKParams& p) {
    return json{{"n", p.n},
                {"k", p.k},
                {"r", num9(p.r)},
                {"alpha", num9(p.alpha)},
                {"x", num9(p.x)},
                {"s", p.s},
                {"t", p.t},
                {"c", num9(p.c)},
                {"C_err", num9(p.C_err)},
                {"f_size", num9(p.f_size)},
                {"wp_value", num9(p.wp_value)},
                {"relations_hold", p.relations_hold()}};
}

} // namespace tracelab
