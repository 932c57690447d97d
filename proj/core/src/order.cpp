#include "branchwork/order.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

namespace branchwork {

std::string to_string(const OrderResult& r) {
    if (r.finite())
        return "2^" + std::to_string(r.exponent);
    return "budget(>=2^" + std::to_string(r.exponent) + " on truncation)";
}

bool OrderCache::lookup(const std::string& key, unsigned& out) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = map_.find(key);
    if (it == map_.end())
        return false;
    out = it->second;
    return true;
}

void OrderCache::store(const std::string& key, unsigned exponent) {
    std::lock_guard<std::mutex> lk(mu_);
    map_.emplace(key, exponent);
}

namespace {

constexpr std::size_t kNoFrame = std::numeric_limits<std::size_t>::max();

// Outcome of one recursion frame. Infinite is proved, not guessed: a section
// chain that returns to an in-progress word after passing a squaring step
// forces ord(w) = 2^g * ord(w) with g >= 1.
struct Exp {
    enum class Tag { Finite, Infinite, Budget };
    Tag tag = Tag::Finite;
    unsigned e = 0;

    static Exp fin(unsigned v) { return {Tag::Finite, v}; }
    static Exp infinite() { return {Tag::Infinite, 0}; }
    static Exp budget() { return {Tag::Budget, 0}; }
    bool ok() const { return tag == Tag::Finite; }
};

struct Frame {
    std::string key;
    std::size_t index;
    unsigned squarings_at_entry;
};

// Exponent recursion. Single letters are involutions by construction and
// return immediately; without that exit the growing family would chase the
// directed generator's self-similar section chain down one level per step
// until the depth budget died. In the constant-rank family the section rule
// is the same at every level, so a word is identified with its letter
// sequence alone; a section chain revisiting an in-progress sequence with no
// squaring in between is a self-similar plateau and contributes nothing to
// the max (its 2-power already bounds itself). As in the word problem, a
// result that leaned on such an assumption may only be memoized by the frame
// that closed the cycle. In the growing family sections strictly descend
// levels and level-tagged keys never repeat, so neither case fires there.
struct OrderWalk {
    const Engine& eng;
    OrderCache* cache;
    std::vector<Frame> path;
    unsigned squarings = 0;

    std::string key_of(const Word& w) const {
        std::string k = word_key(w);
        if (eng.group().family == Family::Kr)
            return "K" + k.substr(k.find(':'));
        return k;
    }

    Exp rec(const Word& w, std::size_t depth_left, std::size_t& low) {
        low = kNoFrame;
        if (w.letters.empty())
            return Exp::fin(0);
        if (w.letters.size() == 1)
            return Exp::fin(1);

        const std::string key = key_of(w);
        if (cache != nullptr) {
            unsigned hit = 0;
            if (cache->lookup(key, hit))
                return Exp::fin(hit);
        }
        for (const Frame& f : path) {
            if (f.key == key) {
                if (squarings != f.squarings_at_entry)
                    return Exp::infinite();
                low = f.index;
                return Exp::fin(0);
            }
        }
        if (depth_left == 0)
            return Exp::budget();

        const std::size_t my_index = path.size();
        path.push_back({key, my_index, squarings});
        Exp result;
        std::size_t my_low = kNoFrame;

        if (!eng.first_layer_translation(w).is_zero()) {
            // moving the first layer makes the order even and exactly twice
            // the order of the square, which stabilizes
            ++squarings;
            std::size_t child_low = kNoFrame;
            result = rec(eng.mul(w, w), depth_left - 1, child_low);
            --squarings;
            my_low = std::min(my_low, child_low);
            if (result.ok())
                result.e += 1;
        } else {
            SectionProbe probe = eng.section_probe(w);
            unsigned best = probe.parity_witness ? 1u : 0u;
            result = Exp::fin(best);
            for (const F2Vector& x : probe.points) {
                std::size_t child_low = kNoFrame;
                Exp sub = rec(eng.section1(w, x), depth_left - 1, child_low);
                my_low = std::min(my_low, child_low);
                if (!sub.ok()) {
                    result = sub;
                    break;
                }
                result.e = std::max(result.e, sub.e);
            }
        }
        path.pop_back();

        if (result.ok() && cache != nullptr &&
            (my_low == kNoFrame || my_low >= my_index))
            cache->store(key, result.e);
        if (my_low != kNoFrame && my_low < my_index)
            low = my_low;
        return result;
    }
};

} // namespace

OrderResult order(const Engine& eng, const Word& w, OrderCache* cache) {
    Exp out = Exp::budget();
    try {
        OrderWalk walk{eng, cache, {}, 0};
        std::size_t low = kNoFrame;
        out = walk.rec(w, eng.budgets().recursion_depth, low);
    } catch (const BudgetError&) {
        out = Exp::budget();
    }
    if (out.ok())
        return {OrderResult::Kind::Finite, out.e};
    // proved-infinite and ran-out-of-depth both surface the same way; the
    // caller gets the order of the action on a fixed shallow truncation
    return {OrderResult::Kind::ExceededBudget,
            order_truncated_exp(eng, w, eng.budgets().order_partial_depth)};
}

namespace {

struct TruncWalk {
    const Engine& eng;
    std::unordered_map<std::string, unsigned> memo;

    unsigned rec(const Word& w, unsigned depth) {
        if (depth == 0 || w.letters.empty())
            return 0;
        const std::string key = word_key(w) + "#" + std::to_string(depth);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;

        unsigned result;
        if (!eng.first_layer_translation(w).is_zero()) {
            result = 1 + rec(eng.mul(w, w), depth);
        } else {
            SectionProbe probe = eng.section_probe(w);
            // the parity witness is a section equal to one nonzero rooted
            // letter, visible only once its own first layer is in view
            result = (probe.parity_witness && depth >= 2) ? 1u : 0u;
            for (const F2Vector& x : probe.points)
                result = std::max(result, rec(eng.section1(w, x), depth - 1));
        }
        memo.emplace(key, result);
        return result;
    }
};

} // namespace

unsigned order_truncated_exp(const Engine& eng, const Word& w, unsigned depth) {
    TruncWalk walk{eng, {}};
    return walk.rec(w, depth);
}

} // namespace branchwork
