#include "branchwork/word.hpp"

#include <algorithm>

namespace branchwork {

Word Word::rooted(unsigned level, F2Vector v) {
    Word w{level, {}};
    if (!v.is_zero())
        w.letters.push_back(Letter::make_rooted(std::move(v)));
    return w;
}

Word normalize(unsigned level, const std::vector<Letter>& letters,
               const std::optional<BigInt>& exact_rank, const Budgets& budgets) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (const Letter& l : letters) {
        if (l.directed) {
            if (!out.empty() && out.back().directed)
                out.pop_back();
            else
                out.push_back(l);
            continue;
        }
        F2Vector v = l.rooted.canonical(exact_rank);
        if (!out.empty() && !out.back().directed) {
            v = add(out.back().rooted, v, budgets.support).canonical(exact_rank);
            out.pop_back();
        }
        if (!v.is_zero())
            out.push_back(Letter::make_rooted(std::move(v)));
    }
    return Word{level, std::move(out)};
}

Word mul(const Word& a, const Word& b, const std::optional<BigInt>& exact_rank,
         const Budgets& budgets) {
    if (a.level != b.level)
        throw DomainError("mul: words live at different levels");
    std::vector<Letter> cat = a.letters;
    cat.insert(cat.end(), b.letters.begin(), b.letters.end());
    return normalize(a.level, cat, exact_rank, budgets);
}

Word inverse(const Word& w) {
    // every letter is an involution, so the inverse is the reversal
    Word out = w;
    std::reverse(out.letters.begin(), out.letters.end());
    return out;
}

Word conjugate(const Word& w, const Word& by,
               const std::optional<BigInt>& exact_rank, const Budgets& budgets) {
    return mul(mul(inverse(by), w, exact_rank, budgets), by, exact_rank, budgets);
}

Word commutator(const Word& x, const Word& y,
                const std::optional<BigInt>& exact_rank, const Budgets& budgets) {
    Word xy = mul(x, y, exact_rank, budgets);
    Word yx = mul(y, x, exact_rank, budgets);
    return mul(inverse(yx), xy, exact_rank, budgets);
}

Word power(const Word& w, unsigned long e, const std::optional<BigInt>& exact_rank,
           const Budgets& budgets) {
    Word acc = Word::identity(w.level);
    Word sq = w;
    while (e > 0) {
        if (e & 1)
            acc = mul(acc, sq, exact_rank, budgets);
        e >>= 1;
        if (e > 0)
            sq = mul(sq, sq, exact_rank, budgets);
    }
    return acc;
}

std::size_t syllable_count(const Word& w) {
    std::size_t n = 0;
    for (const Letter& l : w.letters)
        if (l.directed)
            ++n;
    return n;
}

std::string word_key(const Word& w) {
    std::string s = "L" + std::to_string(w.level) + ":";
    for (const Letter& l : w.letters) {
        if (l.directed)
            s += "b;";
        else {
            s += l.rooted.repr();
            s += ';';
        }
    }
    return s;
}

} // namespace branchwork
