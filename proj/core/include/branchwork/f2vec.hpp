#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "branchwork/common.hpp"

namespace branchwork {

// Element of an elementary abelian 2-group of possibly astronomical rank.
// Stored as the set of set bits (Sparse) or the set of clear bits (Cosparse);
// the cosparse form is what keeps the translation map a -> 1+a computable when
// the rank does not fit in memory. Support is strictly increasing and capped
// by the support budget.
class F2Vector {
public:
    enum class Polarity { Sparse, Cosparse };

    F2Vector() : polarity_(Polarity::Sparse) {}

    static F2Vector sparse(std::vector<BigInt> support,
                           std::size_t budget = Budgets{}.support);
    static F2Vector cosparse(std::vector<BigInt> support,
                             std::size_t budget = Budgets{}.support);
    static F2Vector zero() { return F2Vector(); }
    static F2Vector all_ones();              // all-ones vector, the product of every basis vector
    static F2Vector basis(const BigInt& i);  // e_i
    static F2Vector basis_bar(const BigInt& i); // bar(e_i) = all_ones + e_i

    Polarity polarity() const { return polarity_; }
    bool is_sparse() const { return polarity_ == Polarity::Sparse; }
    const std::vector<BigInt>& support() const { return support_; }

    // True only for the canonical zero (sparse, empty support). Callers that
    // may hold a dense cosparse zero canonicalize against the rank first.
    bool is_zero() const { return is_sparse() && support_.empty(); }

    // Bit test; indices outside the rank are the caller's responsibility.
    bool contains(const BigInt& i) const;

    F2Vector bar() const; // flip polarity, same support: adds the all-ones vector

    // Normal form at a known exact rank: the polarity with smaller support
    // wins, ties go to sparse. With no exact rank the value is returned
    // unchanged (both polarities are then far below rank/2 by budget, so
    // distinct representations are distinct values).
    F2Vector canonical(const std::optional<BigInt>& exact_rank) const;

    // Largest index mentioned, if any (for rank validation).
    std::optional<BigInt> max_index() const;

    // Dense bit mask for small ranks; used by tests and the packed evaluator.
    std::uint64_t mask64(unsigned rank) const;

    std::string repr() const; // "S{1,5}" / "C{}" style, decimal indices

    friend bool operator==(const F2Vector& a, const F2Vector& b) {
        return a.polarity_ == b.polarity_ && a.support_ == b.support_;
    }
    friend bool operator!=(const F2Vector& a, const F2Vector& b) { return !(a == b); }
    // Total order on representations (polarity, size, lexicographic support);
    // a canonical order on values once both sides are canonicalized.
    friend bool operator<(const F2Vector& a, const F2Vector& b);

private:
    Polarity polarity_;
    std::vector<BigInt> support_;
};

// Group operation: symmetric difference of supports, polarity XOR.
F2Vector add(const F2Vector& a, const F2Vector& b,
             std::size_t budget = Budgets{}.support);

} // namespace branchwork
