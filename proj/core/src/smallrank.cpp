#include "branchwork/smallrank.hpp"

#include <bit>

namespace branchwork {
namespace smallrank {

MRule rule(std::uint32_t v, unsigned rank) {
    if (rank < 2 || rank > 30)
        throw DomainError("mask calculus supports ranks 2..30");
    const std::uint32_t full = (1u << rank) - 1;
    if ((v & ~full) != 0)
        throw DomainError("vertex mask out of rank");
    if (v == 0)
        return MRule{2, 0};
    const std::uint32_t flipped = v ^ full;
    if (std::popcount(flipped) == 1)
        return MRule{1, flipped};
    return MRule{0, 0};
}

MWord section(const MWord& w, std::uint32_t x, unsigned rank) {
    MBuilder out;
    std::uint32_t pref = 0;
    for (std::size_t i = 0; i + 1 < w.parts.size(); ++i) {
        pref ^= w.parts[i];
        MRule r = rule(x ^ pref, rank);
        if (r.kind == 1)
            out.push_rooted(r.mask);
        else if (r.kind == 2)
            out.push_b();
    }
    return out.take();
}

std::size_t syl_upper(const MWord& w) {
    return w.syllables() + (w.translation() != 0 ? 1 : 0);
}

bool shape_in_ball1(const MWord& w) {
    if (w.syllables() == 0)
        return true; // rooted or identity
    return w.syllables() == 1 && w.parts[0] == w.parts[1];
}

Word to_word(const MWord& w, unsigned level, unsigned rank) {
    std::vector<Letter> letters;
    auto mask_vec = [&](std::uint32_t m) {
        std::vector<BigInt> sup;
        for (unsigned j = 0; j < rank; ++j)
            if (m & (1u << j))
                sup.push_back(BigInt(j));
        return F2Vector::sparse(std::move(sup));
    };
    for (std::size_t i = 0; i < w.parts.size(); ++i) {
        if (w.parts[i] != 0)
            letters.push_back(Letter::make_rooted(mask_vec(w.parts[i])));
        if (i + 1 < w.parts.size())
            letters.push_back(Letter::make_directed());
    }
    return normalize(level, letters, BigInt(rank));
}

MWord from_word(const Word& w, unsigned rank) {
    MBuilder out;
    for (const Letter& l : w.letters) {
        if (l.directed) {
            out.push_b();
            continue;
        }
        std::uint32_t m = static_cast<std::uint32_t>(l.rooted.mask64(rank));
        out.push_rooted(m);
    }
    return out.take();
}

} // namespace smallrank
} // namespace branchwork
