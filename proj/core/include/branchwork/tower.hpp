#pragma once

#include <memory>
#include <optional>
#include <string>

#include "branchwork/common.hpp"

namespace branchwork {

// Non-negative integer that is either exactly represented (bit size within
// budget) or kept as a power tower base^base^...^top. Construction always
// canonicalizes: a tower collapses level by level into the exact form while
// the result stays inside the bit budget, so "exact" and "small tower" never
// coexist for the same value.
class TowerInt {
public:
    TowerInt() : exact_(BigInt(0)) {}
    TowerInt(const BigInt& v, std::size_t bit_budget = Budgets{}.tower_bits);
    TowerInt(long v) : TowerInt(BigInt(v)) {}
    TowerInt(int v) : TowerInt(BigInt(v)) {}
    TowerInt(unsigned v) : TowerInt(BigInt(v)) {}

    static TowerInt tower(unsigned base, unsigned height, TowerInt top,
                          std::size_t bit_budget = Budgets{}.tower_bits);

    bool is_exact() const { return exact_.has_value(); }
    const BigInt& exact_value() const;
    unsigned base() const { return base_; }
    unsigned height() const { return height_; }
    const TowerInt& top() const;

    // Total order. Agrees with integer comparison whenever both sides are
    // exactly representable. Canonical towers always exceed every exact value
    // (a collapse was refused precisely because the next level would leave
    // the budget). Same-base towers compare by height then top; towers with
    // different bases fall back to a documented coarse lexicographic rule
    // (height, base, top) that keeps the order total.
    static int compare(const TowerInt& a, const TowerInt& b);

    friend bool operator==(const TowerInt& a, const TowerInt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const TowerInt& a, const TowerInt& b) { return compare(a, b) != 0; }
    friend bool operator<(const TowerInt& a, const TowerInt& b) { return compare(a, b) < 0; }
    friend bool operator<=(const TowerInt& a, const TowerInt& b) { return compare(a, b) <= 0; }
    friend bool operator>(const TowerInt& a, const TowerInt& b) { return compare(a, b) > 0; }
    friend bool operator>=(const TowerInt& a, const TowerInt& b) { return compare(a, b) >= 0; }

    std::string repr() const;

private:
    std::optional<BigInt> exact_;
    unsigned base_ = 0;
    unsigned height_ = 0;
    std::shared_ptr<const TowerInt> top_;
};

} // namespace branchwork
