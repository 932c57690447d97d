#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace branchwork {

using BigInt = boost::multiprecision::cpp_int;

// Resource limits. Exceeding one raises BudgetError; nothing is ever
// truncated silently. All defaults match the documented interface defaults.
struct Budgets {
    std::size_t support = 4096;          // max stored indices per GF(2) vector
    std::size_t vertex_expansion = 4096; // max explicit active-vertex fanout
    std::size_t recursion_depth = 64;    // word-problem / order recursion levels
    std::size_t ball_size = 5'000'000;   // max distinct elements per ball
    std::size_t tower_bits = 1u << 20;   // max bit size of an exact big integer
    unsigned fingerprint_depth = 4;      // default portrait depth for dedup
    unsigned order_partial_depth = 10;   // truncation depth reported when an
                                         // order computation runs out of budget
};

class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed inputs: rank mismatches, unsorted supports, bad JSON shapes.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Three-valued answer for the word problem. Unknown only ever means "budget
// exhausted", never "don't know in principle".
enum class TriState { False = 0, True = 1, Unknown = 2 };

inline const char* to_string(TriState t) {
    switch (t) {
    case TriState::False: return "false";
    case TriState::True: return "true";
    default: return "unknown";
    }
}

} // namespace branchwork
