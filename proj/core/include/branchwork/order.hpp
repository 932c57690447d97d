#pragma once

#include <mutex>
#include <string>
#include <unordered_map>

#include "branchwork/engine.hpp"

namespace branchwork {

// Element orders are always powers of two here, so results carry the
// exponent. Finite{e} certifies the order is exactly 2^e. ExceededBudget
// means the recursion ran out of depth (or an inner budget tripped); its
// exponent is the order of the action on the truncation at
// budgets.order_partial_depth, a lower bound on the true order and nothing
// more.
struct OrderResult {
    enum class Kind { Finite, ExceededBudget };
    Kind kind = Kind::Finite;
    unsigned exponent = 0;

    bool finite() const { return kind == Kind::Finite; }
    friend bool operator==(const OrderResult& a, const OrderResult& b) {
        return a.kind == b.kind && a.exponent == b.exponent;
    }
    friend bool operator!=(const OrderResult& a, const OrderResult& b) {
        return !(a == b);
    }
};

std::string to_string(const OrderResult& r);

// Optional memo shared across order() calls on the same group. Stores only
// completed exponents, so concurrent fills from several threads cannot
// change any result.
class OrderCache {
public:
    bool lookup(const std::string& key, unsigned& out) const;
    void store(const std::string& key, unsigned exponent);

private:
    mutable std::mutex mu_;
    std::unordered_map<std::string, unsigned> map_;
};

// Order of w as an automorphism of the full tree. Recursion: a word that
// moves the first layer has order exactly twice the order of its square; a
// stabilizing word has the maximum order of its first-layer sections (all
// two-powers, so lcm is max).
OrderResult order(const Engine& eng, const Word& w, OrderCache* cache = nullptr);

// Exponent of the order of the action on the depth-limited tree. Always
// finite and always terminates: each descent loses a layer.
unsigned order_truncated_exp(const Engine& eng, const Word& w, unsigned depth);

} // namespace branchwork
