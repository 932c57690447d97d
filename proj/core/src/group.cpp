#include "branchwork/group.hpp"

namespace branchwork {

GroupSpec GroupSpec::kr(unsigned r) {
    if (r < 1)
        throw DomainError("Kr needs r >= 1");
    GroupSpec s;
    s.family = Family::Kr;
    s.r = r;
    return s;
}

GroupSpec GroupSpec::growing(unsigned f0, unsigned base_index) {
    if (f0 < 3)
        throw DomainError("Growing needs f0 >= 3");
    GroupSpec s;
    s.family = Family::Growing;
    s.f0 = f0;
    s.base_index = base_index;
    return s;
}

TowerInt GroupSpec::rank(unsigned level, const Budgets& budgets) const {
    if (family == Family::Kr)
        return TowerInt(BigInt(r), budgets.tower_bits);
    return f_value(f0, (base_index + level) / 3, budgets);
}

std::optional<BigInt> GroupSpec::rank_exact(unsigned level, const Budgets& budgets) const {
    if (family == Family::Kr)
        return BigInt(r);
    FBounds b = f_bounds(f0, (base_index + level) / 3, budgets);
    if (!b.exact)
        return std::nullopt;
    return b.upper.exact_value();
}

unsigned long GroupSpec::rank_small(unsigned level, const Budgets& budgets) const {
    auto exact = rank_exact(level, budgets);
    if (!exact || *exact > budgets.vertex_expansion)
        throw BudgetError("rank too large to enumerate");
    return static_cast<unsigned long>(*exact);
}

bool GroupSpec::uses_enumeration_rule(unsigned level) const {
    return family == Family::Growing && (base_index + level) % 3 == 2;
}

std::optional<Letter> directed_section_rule(const GroupSpec& spec, unsigned level,
                                            const F2Vector& x, const Budgets& budgets) {
    const auto exact_rank = spec.rank_exact(level, budgets);
    const F2Vector v = x.canonical(exact_rank);
    if (v.is_zero())
        return Letter::make_directed();

    if (spec.family == Family::Kr && spec.r == 1) {
        // the lone nonzero vertex; see header
        return Letter::make_rooted(F2Vector::all_ones().canonical(BigInt(1)));
    }

    if (spec.uses_enumeration_rule(level)) {
        BigInt idx = enumeration_index(v, exact_rank, budgets);
        return Letter::make_rooted(F2Vector::basis(idx - 1));
    }

    F2Vector barred = v.bar().canonical(exact_rank);
    if (barred.is_sparse() && barred.support().size() == 1)
        return Letter::make_rooted(F2Vector::basis(barred.support().front()));
    return std::nullopt;
}

BigInt enumeration_index(const F2Vector& x, const std::optional<BigInt>& exact_rank,
                         const Budgets& budgets) {
    const BigInt bit_cap = budgets.tower_bits;
    if (x.is_sparse()) {
        BigInt idx = 0;
        for (const BigInt& s : x.support()) {
            if (s >= bit_cap)
                throw BudgetError("enumeration index not representable");
            bit_set(idx, static_cast<unsigned long>(s));
        }
        return idx;
    }
    if (!exact_rank)
        throw BudgetError("cosparse enumeration index needs an exact rank");
    if (*exact_rank > bit_cap)
        throw BudgetError("enumeration index not representable");
    BigInt idx = (BigInt(1) << static_cast<unsigned long>(*exact_rank)) - 1;
    for (const BigInt& s : x.support())
        bit_unset(idx, static_cast<unsigned long>(s));
    return idx;
}

F2Vector enumeration_vector(const BigInt& i, const std::optional<BigInt>& exact_rank,
                            const Budgets& budgets) {
    if (i < 0)
        throw DomainError("enumeration index must be non-negative");
    // i < 2^rank holds exactly when the top set bit sits below rank
    if (exact_rank && i > 0 && BigInt(msb(i)) >= *exact_rank)
        throw DomainError("enumeration index out of range for rank");
    std::vector<BigInt> support;
    if (i > 0) {
        const unsigned long top = msb(i);
        for (unsigned long b = 0; b <= top; ++b)
            if (bit_test(i, b))
                support.push_back(BigInt(b));
    }
    return F2Vector::sparse(std::move(support), budgets.support).canonical(exact_rank);
}

GeneratingSet make_generators(const GroupSpec& spec, unsigned level, GenKind kind,
                              const Budgets& budgets) {
    GeneratingSet out;
    out.spec = spec;
    out.level = level;
    out.kind = kind;
    const unsigned long r = spec.rank_small(level, budgets);
    const auto exact_rank = spec.rank_exact(level, budgets);

    if (kind == GenKind::EStyle) {
        for (unsigned long i = 0; i < r; ++i)
            out.members.push_back(
                Word::rooted(level, F2Vector::basis(BigInt(i)).canonical(exact_rank)));
        out.members.push_back(Word::directed(level));
        return out;
    }

    if (r >= 63 || (2ul << r) > budgets.ball_size)
        throw BudgetError("S-style set too large to materialize");
    const unsigned long count = 1ul << r;
    for (unsigned long i = 0; i < count; ++i)
        out.members.push_back(Word::rooted(level, enumeration_vector(BigInt(i), exact_rank, budgets)));
    for (unsigned long i = 0; i < count; ++i) {
        F2Vector a = enumeration_vector(BigInt(i), exact_rank, budgets);
        std::vector<Letter> letters;
        if (!a.is_zero())
            letters.push_back(Letter::make_rooted(a));
        letters.push_back(Letter::make_directed());
        if (!a.is_zero())
            letters.push_back(Letter::make_rooted(a));
        out.members.push_back(normalize(level, letters, exact_rank, budgets));
    }
    return out;
}

} // namespace branchwork
