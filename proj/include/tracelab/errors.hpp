#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracelab {

/// A documented precondition of an operation does not hold for the given
/// arguments.  `observed` optionally carries the offending quantity (e.g. the
/// induced-edge count that broke a density precondition).
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& what, double observed_value = 0.0)
        : std::runtime_error(what), observed(observed_value) {}
    double observed;
};

/// The request is structurally fine but exceeds a hard representation or
/// enumeration limit (edge wider than 62 vertices, exact mode past its
/// vertex cap, ...).  Callers are expected to shrink the instance.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative numeric routine failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A randomized construction exhausted its retries.  The histogram counts
/// pairwise seed-set intersection sizes from the final attempt, which is the
/// diagnostic one actually wants when the disjointness event keeps failing.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(const std::string& what, std::vector<std::uint64_t> histogram,
                      int attempts_made)
        : std::runtime_error(what), intersection_histogram(std::move(histogram)),
          attempts(attempts_made) {}
    std::vector<std::uint64_t> intersection_histogram;
    int attempts;
};

/// An exhaustive search ran past its budget.  `best_upper_bound` is the best
/// value seen so far (a valid upper bound for minimization problems).
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, long long best, std::uint64_t examined)
        : std::runtime_error(what), best_upper_bound(best), families_examined(examined) {}
    long long best_upper_bound;
    std::uint64_t families_examined;
};

/// Malformed edge-list input.  `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line_number)
        : std::runtime_error(what + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
    int line;
};

} // namespace tracelab
