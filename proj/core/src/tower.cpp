#include "branchwork/tower.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace branchwork {

namespace {

// Compute base^exp if and only if it fits in bit_budget bits. The test is
// exact: since base >= 2, any exp > bit_budget is hopeless without computing,
// and otherwise the power is at most ~2*bit_budget bits and cheap to build.
// Exactness matters for ordering: a refused collapse certifies the value
// needs more bits than any exact TowerInt is allowed.
std::optional<BigInt> pow_in_budget(unsigned base, const BigInt& exp,
                                    std::size_t bit_budget) {
    if (exp < 0)
        throw DomainError("tower exponent must be non-negative");
    if (exp > BigInt(bit_budget))
        return std::nullopt;
    BigInt v = pow(BigInt(base), static_cast<unsigned long>(exp));
    if (v > 0 && msb(v) + 1 > bit_budget)
        return std::nullopt;
    return v;
}

} // namespace

TowerInt::TowerInt(const BigInt& v, std::size_t bit_budget) : exact_(v) {
    if (v < 0)
        throw DomainError("TowerInt is non-negative");
    if (v > 0 && msb(v) + 1 > bit_budget)
        throw BudgetError("exact value exceeds tower bit budget");
}

const BigInt& TowerInt::exact_value() const {
    if (!exact_)
        throw DomainError("TowerInt: tower form has no exact value");
    return *exact_;
}

const TowerInt& TowerInt::top() const {
    if (!top_)
        throw DomainError("TowerInt: exact form has no tower top");
    return *top_;
}

TowerInt TowerInt::tower(unsigned base, unsigned height, TowerInt top,
                         std::size_t bit_budget) {
    if (base < 2)
        throw DomainError("tower base must be >= 2");
    // Collapse from the top down while the result stays representable.
    while (height > 0 && top.is_exact()) {
        auto v = pow_in_budget(base, top.exact_value(), bit_budget);
        if (!v)
            break;
        top = TowerInt(*v, bit_budget);
        --height;
    }
    if (height == 0)
        return top;
    // Merge nested towers over the same base.
    if (!top.is_exact() && top.base_ == base) {
        height += top.height_;
        top = *top.top_;
    }
    TowerInt out;
    out.exact_.reset();
    out.base_ = base;
    out.height_ = height;
    out.top_ = std::make_shared<const TowerInt>(std::move(top));
    return out;
}

int TowerInt::compare(const TowerInt& a, const TowerInt& b) {
    if (a.is_exact() && b.is_exact()) {
        const BigInt& x = *a.exact_;
        const BigInt& y = *b.exact_;
        return x < y ? -1 : (x == y ? 0 : 1);
    }
    // A canonical tower refused its last collapse, so its value needs more
    // bits than the budget, while every exact value fits the budget.
    if (a.is_exact())
        return -1;
    if (b.is_exact())
        return 1;
    if (a.base_ == b.base_) {
        if (a.height_ != b.height_)
            return a.height_ < b.height_ ? -1 : 1;
        return compare(*a.top_, *b.top_);
    }
    // coarse but total; never reached for the single-base towers used here
    if (a.height_ != b.height_)
        return a.height_ < b.height_ ? -1 : 1;
    return a.base_ < b.base_ ? -1 : 1;
}

std::string TowerInt::repr() const {
    if (is_exact())
        return exact_->str();
    return "tower(" + std::to_string(base_) + "," + std::to_string(height_) +
           "," + top_->repr() + ")";
}

} // namespace branchwork
