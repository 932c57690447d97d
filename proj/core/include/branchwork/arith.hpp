#pragma once

#include "branchwork/common.hpp"
#include "branchwork/tower.hpp"

namespace branchwork {

// ceil(num/den) for num >= 0, den > 0
BigInt ceil_div(const BigInt& num, const BigInt& den);

// Two-sided bracket for f(k) where f(0) = f0 and f(k+1) = 2^f(k) - 1.
// While the value fits the bit budget, lower == upper == f(k) and exact is
// true. Past that point the bracket is
//   tower(2, k-j, f(j)-1)  <=  f(k)  <  tower(2, k-j, f(j))
// with j the last exactly computed level; the lower end follows from
// f(i+1)-1 = 2^f(i)-2 >= 2^(f(i)-1) and the upper end from f(i+1) < 2^f(i).
struct FBounds {
    TowerInt lower;
    TowerInt upper;
    bool exact = false;
};

FBounds f_bounds(unsigned f0, unsigned k, const Budgets& budgets = {});

// f(k) itself when exact, otherwise the certified lower bound from f_bounds.
// Callers that need both ends use f_bounds directly.
TowerInt f_value(unsigned f0, unsigned k, const Budgets& budgets = {});

// tetr(base, 0) = 1, tetr(base, n+1) = base^tetr(base, n). The returned
// tower form is exact (pure towers lose nothing to canonicalization).
TowerInt tetr(unsigned base, unsigned n, const Budgets& budgets = {});

// max { l | tetr(base, l) <= n }, for n >= 1
unsigned slog(unsigned base, const BigInt& n);

// Number of shrink steps for the ball-radius recursion
//   m_{l+1} = ceil(4*m_l / f(l)) + 1   starting at m_0 = n >= 2,
// returning the first index l whose application lands on 2.
unsigned thm1_bound_u(const BigInt& n, unsigned f0);

} // namespace branchwork
