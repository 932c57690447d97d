#include "branchwork/arith.hpp"

namespace branchwork {

BigInt ceil_div(const BigInt& num, const BigInt& den) {
    if (den <= 0)
        throw DomainError("ceil_div: denominator must be positive");
    if (num < 0)
        throw DomainError("ceil_div: numerator must be non-negative");
    return (num + den - 1) / den;
}

FBounds f_bounds(unsigned f0, unsigned k, const Budgets& budgets) {
    if (f0 < 3)
        throw DomainError("f recurrence needs f0 >= 3");
    BigInt cur = f0;
    unsigned j = 0;
    // f(j+1) = 2^f(j) - 1 is a run of f(j) one bits, so it stays exactly
    // representable while the value of f(j) is at most the bit budget.
    while (j < k && cur <= budgets.tower_bits) {
        cur = (BigInt(1) << static_cast<unsigned long>(cur)) - 1;
        ++j;
    }
    if (j == k) {
        TowerInt v(cur, budgets.tower_bits);
        return FBounds{v, v, true};
    }
    TowerInt lower = TowerInt::tower(2, k - j, TowerInt(cur - 1, budgets.tower_bits),
                                     budgets.tower_bits);
    TowerInt upper = TowerInt::tower(2, k - j, TowerInt(cur, budgets.tower_bits),
                                     budgets.tower_bits);
    return FBounds{std::move(lower), std::move(upper), false};
}

TowerInt f_value(unsigned f0, unsigned k, const Budgets& budgets) {
    FBounds b = f_bounds(f0, k, budgets);
    return b.exact ? b.upper : b.lower;
}

TowerInt tetr(unsigned base, unsigned n, const Budgets& budgets) {
    if (base < 2)
        throw DomainError("tetr base must be >= 2");
    return TowerInt::tower(base, n, TowerInt(1), budgets.tower_bits);
}

unsigned slog(unsigned base, const BigInt& n) {
    if (base < 2)
        throw DomainError("slog base must be >= 2");
    if (n < 1)
        throw DomainError("slog needs n >= 1");
    unsigned l = 0;
    BigInt cur = 1; // tetr(base, l)
    while (true) {
        // next = base^cur; certainly exceeds n once cur outgrows n's bit length
        if (cur > msb(n) + 1)
            return l;
        BigInt next = pow(BigInt(base), static_cast<unsigned long>(cur));
        if (next > n)
            return l;
        cur = next;
        ++l;
    }
}

unsigned thm1_bound_u(const BigInt& n, unsigned f0) {
    if (n < 2)
        throw DomainError("shrink recursion starts at n >= 2");
    if (f0 < 3)
        throw DomainError("f recurrence needs f0 >= 3");
    BigInt m = n;
    BigInt f = f0; // f(l), grown exactly only while small enough to matter
    unsigned l = 0;
    while (true) {
        m = ceil_div(4 * m, f) + 1;
        if (m == 2)
            return l;
        // Once 2^f - 1 >= 4m the next application divides 4m down to 1 and
        // lands on 2, so never materialize the huge f(l+1).
        if (f >= msb(4 * m) + 1)
            return l + 1;
        f = (BigInt(1) << static_cast<unsigned long>(f)) - 1;
        ++l;
    }
}

} // namespace branchwork
