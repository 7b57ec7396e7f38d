#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "tracelab/oracle.hpp"

namespace oracle = tracelab::oracle;
using oracle::Edge;
using oracle::SetFamily;

TEST_CASE("oracle micro values on the triangle", "[oracle]") {
    SetFamily tri = {{0, 1}, {0, 2}, {1, 2}};

    CHECK(oracle::trace_exact(3, tri, Edge{0, 1}) == 3);
    CHECK(oracle::trace_exact(3, tri, Edge{}) == 1);
    CHECK(oracle::trace_value_exact(3, tri, 2) == 3);
    CHECK(oracle::trace_value_exact(3, tri, 1) == 2);

    CHECK(oracle::shadow_exact(3, tri, 0) == 1);
    CHECK(oracle::shadow_exact(3, tri, 1) == 3);
    CHECK(oracle::shadow_exact(3, tri, 2) == 3);
    CHECK(oracle::shadow_exact(3, tri, 3) == 0);

    CHECK(oracle::wp_exact(3, tri, 2) == 1);
    CHECK(oracle::wp_exact(3, tri, 3) == 3);

    CHECK(oracle::shattered_exact(3, tri, Edge{0}));
    CHECK(oracle::shattered_exact(3, tri, Edge{}));
    CHECK_FALSE(oracle::shattered_exact(3, tri, Edge{0, 1}));
    CHECK(oracle::vc_exact(3, tri) == 1);
    CHECK(oracle::vc_exact(3, {}) == -1);
    CHECK(oracle::vc_exact(0, {Edge{}}) == 0);

    CHECK(oracle::link_size_exact(3, tri, Edge{}) == 3);
    CHECK(oracle::link_size_exact(3, tri, Edge{0}) == 2);
    CHECK(oracle::link_size_exact(3, tri, Edge{0, 1}) == 1);
    CHECK(oracle::link_size_exact(3, tri, Edge{0, 1, 2}) == 0);
}

TEST_CASE("oracle input validation", "[oracle]") {
    CHECK_THROWS_AS(oracle::trace_exact(-1, {}, Edge{}), std::invalid_argument);
    CHECK_THROWS_AS(oracle::trace_exact(21, {}, Edge{}), tracelab::CapacityError);
    CHECK_THROWS_AS(oracle::trace_exact(5, {Edge{2, 1}}, Edge{}), std::invalid_argument);
    CHECK_THROWS_AS(oracle::trace_exact(5, {Edge{1, 1}}, Edge{}), std::invalid_argument);
    CHECK_THROWS_AS(oracle::shadow_exact(5, {Edge{7}}, 1), std::invalid_argument);
}

TEST_CASE("exact tau values", "[oracle]") {
    CHECK(oracle::tau_exact(4, 4, 3) == 4);
    CHECK(oracle::tau_exact(4, 10, 3) == 7);
    CHECK(oracle::tau_exact(4, 4, 2) == 3);
    CHECK(oracle::tau_exact(3, 8, 2) == 4);   // the full cube shatters everything
    CHECK(oracle::tau_exact(4, 16, 2) == 4);
    CHECK(oracle::tau_exact(2, 4, 2) == 4);
    CHECK(oracle::tau_exact(3, 8, 3) == 8);
    CHECK(oracle::tau_exact(5, 1, 3) == 1);
    CHECK(oracle::tau_exact(4, 4, 0) == 1);
    CHECK(oracle::tau_exact(4, 0, 2) == 0);

    CHECK_THROWS_AS(oracle::tau_exact(6, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(oracle::tau_exact(-1, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(oracle::tau_exact(4, 4, 5), std::invalid_argument);
    CHECK_THROWS_AS(oracle::tau_exact(4, 4, -1), std::invalid_argument);
    CHECK_THROWS_AS(oracle::tau_exact(4, 17, 2), std::invalid_argument);
    CHECK_THROWS_AS(oracle::tau_exact(4, -1, 2), std::invalid_argument);
}

TEST_CASE("tau budgets abort with a usable partial answer", "[oracle]") {
    oracle::OracleBudget small_n;
    small_n.max_n = 2;
    try {
        oracle::tau_exact(3, 4, 2, small_n);
        FAIL("expected BudgetExceeded");
    } catch (const tracelab::BudgetExceeded& err) {
        CHECK(err.best_upper_bound == 4);  // min(m, 2^k) before any search
        CHECK(err.families_examined == 0);
    }

    oracle::OracleBudget small_m;
    small_m.max_m = 3;
    CHECK_THROWS_AS(oracle::tau_exact(3, 4, 2, small_m), tracelab::BudgetExceeded);

    oracle::OracleBudget drained;
    drained.max_families = 0;  // empty budget: reject upfront
    CHECK(drained.empty());
    CHECK_THROWS_AS(oracle::tau_exact(3, 4, 2, drained), tracelab::BudgetExceeded);

    oracle::OracleBudget one_family;
    one_family.max_families = 1;
    try {
        oracle::tau_exact(3, 2, 1, one_family);
        FAIL("expected BudgetExceeded");
    } catch (const tracelab::BudgetExceeded& err) {
        CHECK(err.families_examined == 1);
        CHECK(err.best_upper_bound == 2);  // the one family it did evaluate
    }

    oracle::OracleBudget rushed;
    rushed.time_limit = 1e-9;
    CHECK_THROWS_AS(oracle::tau_exact(5, 6, 2, rushed), tracelab::BudgetExceeded);
}
