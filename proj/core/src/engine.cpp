#include "branchwork/engine.hpp"

#include <algorithm>
#include <map>

namespace branchwork {

namespace {

std::string letters_key(const std::vector<Letter>& letters) {
    std::string s;
    for (const Letter& l : letters) {
        if (l.directed)
            s += "b;";
        else {
            s += l.rooted.repr();
            s += ';';
        }
    }
    return s;
}

constexpr std::size_t kNoFrame = static_cast<std::size_t>(-1);

} // namespace

std::string portrait_key(const Portrait& p) {
    std::string s = "t" + p.translation.repr() + "[";
    for (const auto& [v, child] : p.children) {
        s += v.repr();
        s += ':';
        s += portrait_key(child);
        s += ';';
    }
    s += ']';
    return s;
}

Engine::Engine(GroupSpec spec, Budgets budgets)
    : spec_(spec), budgets_(budgets) {}

std::optional<BigInt> Engine::rank_exact(unsigned level) const {
    return spec_.rank_exact(level, budgets_);
}

Word Engine::make(unsigned level, const std::vector<Letter>& letters) const {
    return normalize(level, letters, rank_exact(level), budgets_);
}

Word Engine::mul(const Word& a, const Word& b) const {
    return branchwork::mul(a, b, rank_exact(a.level), budgets_);
}

Word Engine::conj(const Word& w, const Word& by) const {
    return branchwork::conjugate(w, by, rank_exact(w.level), budgets_);
}

Word Engine::comm(const Word& x, const Word& y) const {
    return branchwork::commutator(x, y, rank_exact(x.level), budgets_);
}

Word Engine::pow(const Word& w, unsigned long e) const {
    return branchwork::power(w, e, rank_exact(w.level), budgets_);
}

F2Vector Engine::first_layer_translation(const Word& w) const {
    F2Vector s = F2Vector::zero();
    for (const Letter& l : w.letters)
        if (!l.directed)
            s = add(s, l.rooted, budgets_.support);
    return s.canonical(rank_exact(w.level));
}

std::vector<F2Vector> Engine::act_parts(const Letter& l, unsigned level,
                                        std::vector<F2Vector> parts,
                                        std::size_t at) const {
    if (at >= parts.size())
        return parts;
    if (!l.directed) {
        parts[at] = add(parts[at], l.rooted, budgets_.support)
                        .canonical(rank_exact(level));
        return parts;
    }
    auto next = directed_section_rule(spec_, level, parts[at], budgets_);
    if (!next)
        return parts;
    return act_parts(*next, level + 1, std::move(parts), at + 1);
}

VertexPath Engine::act(const Word& w, const VertexPath& v) const {
    if (v.start_level != w.level)
        throw DomainError("act: vertex path starts at a different level");
    std::vector<F2Vector> parts = v.parts;
    for (const Letter& l : w.letters)
        parts = act_parts(l, w.level, std::move(parts), 0);
    return VertexPath{v.start_level, std::move(parts)};
}

Word Engine::section_letters(const Word& w,
                             const std::vector<F2Vector>& parts) const {
    // per-letter section along the running image of the vertex path
    std::vector<F2Vector> run = parts;
    std::vector<Letter> out;
    for (const Letter& l : w.letters) {
        // descend l through the path; a rooted letter dies at depth >= 1
        Letter cur = l;
        bool alive = true;
        unsigned lvl = w.level;
        for (std::size_t i = 0; i < run.size() && alive; ++i) {
            if (!cur.directed) {
                alive = false;
                break;
            }
            auto next = directed_section_rule(spec_, lvl, run[i], budgets_);
            if (!next) {
                alive = false;
                break;
            }
            cur = *next;
            ++lvl;
        }
        if (alive)
            out.push_back(cur);
        run = act_parts(l, w.level, std::move(run), 0);
    }
    const unsigned target = w.level + static_cast<unsigned>(parts.size());
    return normalize(target, out, rank_exact(target), budgets_);
}

Word Engine::section(const Word& w, const VertexPath& v) const {
    if (v.start_level != w.level)
        throw DomainError("section: vertex path starts at a different level");
    if (v.parts.empty())
        return w;
    return section_letters(w, v.parts);
}

Word Engine::section1(const Word& w, const F2Vector& x) const {
    return section(w, VertexPath::single(w.level, x));
}

std::vector<std::pair<F2Vector, std::size_t>> Engine::prefix_classes(const Word& w) const {
    std::vector<std::pair<F2Vector, std::size_t>> classes;
    F2Vector acc = F2Vector::zero();
    const auto exact = rank_exact(w.level);
    for (const Letter& l : w.letters) {
        if (!l.directed) {
            acc = add(acc, l.rooted, budgets_.support).canonical(exact);
            continue;
        }
        bool found = false;
        for (auto& [p, n] : classes) {
            if (p == acc) {
                ++n;
                found = true;
                break;
            }
        }
        if (!found)
            classes.emplace_back(acc, 1);
    }
    return classes;
}

ActiveSet Engine::active_vertices(const Word& w) const {
    ActiveSet out;
    auto classes = prefix_classes(w);
    if (spec_.uses_enumeration_rule(w.level)) {
        out.whole_layer = true;
        for (auto& [p, n] : classes)
            out.points.push_back(p);
        return out;
    }
    const bool rank_one = spec_.family == Family::Kr && spec_.r == 1;
    for (auto& [p, n] : classes) {
        out.points.push_back(p);
        if (rank_one)
            out.points.push_back(
                add(p, F2Vector::all_ones(), budgets_.support).canonical(BigInt(1)));
        else
            out.bar_families.push_back(p);
    }
    return out;
}

std::vector<F2Vector> Engine::active_explicit(const Word& w) const {
    ActiveSet a = active_vertices(w);
    const auto exact = rank_exact(w.level);
    std::vector<F2Vector> vals = a.points;
    if (a.whole_layer) {
        const unsigned long r = spec_.rank_small(w.level, budgets_);
        if (r >= 63 || (1ul << r) > budgets_.vertex_expansion)
            throw BudgetError("layer too large to expand");
        for (unsigned long i = 0; i < (1ul << r); ++i)
            vals.push_back(enumeration_vector(BigInt(i), exact, budgets_));
    }
    if (!a.bar_families.empty()) {
        const unsigned long r = spec_.rank_small(w.level, budgets_);
        if (a.bar_families.size() * (r + 1) > budgets_.vertex_expansion)
            throw BudgetError("active family expansion exceeds vertex budget");
        for (auto& base : a.bar_families)
            for (unsigned long j = 0; j < r; ++j)
                vals.push_back(add(base, F2Vector::basis_bar(BigInt(j)),
                                   budgets_.support)
                                   .canonical(exact));
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

std::string Engine::memo_key(const Word& w) const {
    if (spec_.family == Family::Kr)
        return "K:" + letters_key(w.letters);
    return "L" + std::to_string(w.level) + ":" + letters_key(w.letters);
}

// Decide where a stabilizing word can have nontrivial sections and whether
// prefix-class parity alone already certifies nontriviality. classes holds
// distinct rooted prefixes before directed letters with multiplicities; at a
// generic vertex the section collects one basis letter per directed letter
// of a single class, so an odd class is a witness whenever a vertex exists
// that no other class interferes with. points always covers every vertex
// whose section could be anything other than such a single-letter product,
// so callers computing orders can take parity vertices as order 2 and
// recurse only on points.
static SectionProbe plan_recursion(const GroupSpec& spec, const Budgets& budgets,
                                   const Word& w,
                                   const std::vector<std::pair<F2Vector, std::size_t>>& classes) {
    SectionProbe plan;
    const unsigned level = w.level;
    const auto exact = spec.rank_exact(level, budgets);

    if (spec.uses_enumeration_rule(level)) {
        bool any_odd = false;
        for (auto& [p, n] : classes)
            any_odd = any_odd || (n % 2 == 1);
        if (any_odd) {
            // a vertex outside every class exists unless the classes fill
            // the whole layer, which only happens at tiny ranks
            bool generic_exists = true;
            if (exact && *exact < 63)
                generic_exists =
                    classes.size() < (1ul << static_cast<unsigned long>(*exact));
            if (!generic_exists) {
                const unsigned long r = spec.rank_small(level, budgets);
                if ((1ul << r) > budgets.vertex_expansion)
                    throw BudgetError("active set exceeds vertex budget");
                for (unsigned long i = 0; i < (1ul << r); ++i)
                    plan.points.push_back(enumeration_vector(BigInt(i), exact, budgets));
                return plan;
            }
            plan.parity_witness = true;
        }
        for (auto& [p, n] : classes)
            plan.points.push_back(p);
        return plan;
    }

    if (spec.family == Family::Kr && spec.r == 1) {
        for (auto& [p, n] : classes) {
            plan.points.push_back(p);
            plan.points.push_back(
                add(p, F2Vector::all_ones(), budgets.support).canonical(BigInt(1)));
        }
        return plan;
    }

    if (exact && *exact <= 64) {
        // small-rank bar rule: recurse over the full structured active set
        const unsigned long r = static_cast<unsigned long>(*exact);
        if (classes.size() * (r + 1) > budgets.vertex_expansion)
            throw BudgetError("active set exceeds vertex budget");
        for (auto& [p, n] : classes) {
            plan.points.push_back(p);
            for (unsigned long j = 0; j < r; ++j)
                plan.points.push_back(add(p, F2Vector::basis_bar(BigInt(j)),
                                          budgets.support)
                                          .canonical(exact));
        }
        return plan;
    }

    // large-rank bar rule, where canonical polarity identifies vector shape
    // unambiguously: bar(e_j) is the cosparse singleton {j} and e_j + e_l the
    // sparse pair {j, l}. For class i, the only basis indices j where another
    // class can disturb the section at p_i + bar(e_j) come from the
    // differences q = p_i + p_t: q = bar(e_j) (the vertex collides with p_t)
    // or q = e_j + e_l (it collides with p_t + bar(e_l)).
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::vector<BigInt> special;
        for (std::size_t t = 0; t < classes.size(); ++t) {
            if (t == i)
                continue;
            F2Vector q = add(classes[i].first, classes[t].first, budgets.support)
                             .canonical(exact);
            if (!q.is_sparse() && q.support().size() == 1)
                special.push_back(q.support().front());
            else if (q.is_sparse() && q.support().size() == 2) {
                special.push_back(q.support()[0]);
                special.push_back(q.support()[1]);
            }
        }
        std::sort(special.begin(), special.end());
        special.erase(std::unique(special.begin(), special.end()), special.end());

        const bool odd = classes[i].second % 2 == 1;
        bool generic_exists = true;
        if (exact && BigInt(special.size()) >= *exact)
            generic_exists = false;
        if (odd && generic_exists)
            plan.parity_witness = true;
        plan.points.push_back(classes[i].first);
        if (!generic_exists) {
            // degenerate: every basis index is special; enumerate them all
            const unsigned long r = spec.rank_small(level, budgets);
            for (unsigned long j = 0; j < r; ++j)
                plan.points.push_back(add(classes[i].first,
                                          F2Vector::basis_bar(BigInt(j)),
                                          budgets.support)
                                          .canonical(exact));
            continue;
        }
        for (const BigInt& j : special)
            plan.points.push_back(add(classes[i].first, F2Vector::basis_bar(j),
                                      budgets.support)
                                      .canonical(exact));
    }
    return plan;
}

SectionProbe Engine::section_probe(const Word& w) const {
    return plan_recursion(spec_, budgets_, w, prefix_classes(w));
}

TriState Engine::is_trivial_rec(const Word& w, unsigned depth_left,
                                std::vector<std::pair<std::string, std::size_t>>& path,
                                std::size_t& low) const {
    low = kNoFrame;
    if (w.letters.empty())
        return TriState::True;
    if (!first_layer_translation(w).is_zero())
        return TriState::False;
    if (w.letters.size() == 1)
        return TriState::False; // lone directed letter; deeper sections move

    const std::string key = memo_key(w);
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        auto it = triv_memo_.find(key);
        if (it != triv_memo_.end())
            return it->second ? TriState::True : TriState::False;
    }
    // A section chain returning to an in-progress word is a self-similar
    // plateau: the word is trivial iff this very question answers yes at
    // every depth, and no finite depth can then witness movement, so the
    // assumption "trivial" is the correct greatest fixed point. Results that
    // leaned on an ancestor assumption are not memoized (only the frame that
    // closes the cycle may store its answer).
    for (const auto& [k, idx] : path) {
        if (k == key) {
            low = idx;
            return TriState::True;
        }
    }
    if (depth_left == 0)
        return TriState::Unknown;

    SectionProbe plan;
    try {
        plan = plan_recursion(spec_, budgets_, w, prefix_classes(w));
    } catch (const BudgetError&) {
        return TriState::Unknown;
    }
    if (plan.parity_witness) {
        std::lock_guard<std::mutex> lk(memo_mu_);
        triv_memo_.emplace(key, false);
        return TriState::False;
    }

    const std::size_t my_index = path.size();
    path.emplace_back(key, my_index);
    TriState result = TriState::True;
    std::size_t my_low = kNoFrame;
    for (const F2Vector& x : plan.points) {
        Word sec;
        try {
            sec = section1(w, x);
        } catch (const BudgetError&) {
            result = TriState::Unknown;
            continue;
        }
        std::size_t child_low = kNoFrame;
        TriState ts = is_trivial_rec(sec, depth_left - 1, path, child_low);
        my_low = std::min(my_low, child_low);
        if (ts == TriState::False) {
            result = TriState::False;
            break;
        }
        if (ts == TriState::Unknown)
            result = TriState::Unknown;
    }
    path.pop_back();

    if (result == TriState::False) {
        std::lock_guard<std::mutex> lk(memo_mu_);
        triv_memo_.emplace(key, false);
        return TriState::False;
    }
    if (result == TriState::Unknown)
        return TriState::Unknown;
    if (my_low != kNoFrame && my_low < my_index) {
        low = my_low; // provisional: depends on an ancestor's assumption
        return TriState::True;
    }
    std::lock_guard<std::mutex> lk(memo_mu_);
    triv_memo_.emplace(key, true);
    return TriState::True;
}

TriState Engine::is_trivial(const Word& w) const {
    std::vector<std::pair<std::string, std::size_t>> path;
    std::size_t low = kNoFrame;
    return is_trivial_rec(w, budgets_.recursion_depth, path, low);
}

TriState Engine::is_trivial_trunc_rec(const Word& w, unsigned depth) const {
    if (depth == 0 || w.letters.empty())
        return TriState::True;
    if (!first_layer_translation(w).is_zero())
        return TriState::False;
    if (depth == 1)
        return TriState::True; // stabilizes the only visible layer
    const std::string key = memo_key(w) + "#" + std::to_string(depth);
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        auto it = trunc_memo_.find(key);
        if (it != trunc_memo_.end())
            return it->second ? TriState::True : TriState::False;
    }
    SectionProbe plan;
    try {
        plan = plan_recursion(spec_, budgets_, w, prefix_classes(w));
    } catch (const BudgetError&) {
        return TriState::Unknown;
    }
    TriState result = TriState::True;
    if (plan.parity_witness) {
        // the parity witness moves a vertex two layers down, always visible
        // at depth >= 2
        result = TriState::False;
    } else {
        for (const F2Vector& x : plan.points) {
            Word sec;
            try {
                sec = section1(w, x);
            } catch (const BudgetError&) {
                result = TriState::Unknown;
                continue;
            }
            TriState ts = is_trivial_trunc_rec(sec, depth - 1);
            if (ts == TriState::False) {
                result = TriState::False;
                break;
            }
            if (ts == TriState::Unknown)
                result = TriState::Unknown;
        }
    }
    if (result != TriState::Unknown) {
        std::lock_guard<std::mutex> lk(memo_mu_);
        trunc_memo_.emplace(key, result == TriState::True);
    }
    return result;
}

TriState Engine::is_trivial_truncated(const Word& w, unsigned depth) const {
    return is_trivial_trunc_rec(w, depth);
}

TriState Engine::equal(const Word& a, const Word& b) const {
    if (a.level != b.level)
        throw DomainError("equal: words live at different levels");
    return is_trivial(mul(a, inverse(b)));
}

Portrait Engine::portrait(const Word& w, unsigned depth) const {
    Portrait p;
    p.translation = first_layer_translation(w);
    if (depth == 0)
        return p;
    for (const F2Vector& x : active_explicit(w)) {
        Word sec = section1(w, x);
        if (sec.letters.empty())
            continue;
        p.children.emplace_back(x, portrait(sec, depth - 1));
    }
    std::sort(p.children.begin(), p.children.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return p;
}

std::string Engine::fingerprint(const Word& w, unsigned depth) const {
    return portrait_key(portrait(w, depth));
}

std::size_t Engine::syllable_length_upper(const Word& w) const {
    return syllable_count(w) +
           (first_layer_translation(w).is_zero() ? 0 : 1);
}

} // namespace branchwork
