#include "branchwork/f2vec.hpp"

#include <algorithm>
#include <sstream>

namespace branchwork {

namespace {

void check_support(const std::vector<BigInt>& s, std::size_t budget) {
    if (s.size() > budget)
        throw BudgetError("support budget exceeded: " + std::to_string(s.size()) +
                          " > " + std::to_string(budget));
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0)
            throw DomainError("negative index in support");
        if (i > 0 && !(s[i - 1] < s[i]))
            throw DomainError("support not strictly increasing");
    }
}

} // namespace

F2Vector F2Vector::sparse(std::vector<BigInt> support, std::size_t budget) {
    check_support(support, budget);
    F2Vector v;
    v.polarity_ = Polarity::Sparse;
    v.support_ = std::move(support);
    return v;
}

F2Vector F2Vector::cosparse(std::vector<BigInt> support, std::size_t budget) {
    check_support(support, budget);
    F2Vector v;
    v.polarity_ = Polarity::Cosparse;
    v.support_ = std::move(support);
    return v;
}

F2Vector F2Vector::all_ones() {
    F2Vector v;
    v.polarity_ = Polarity::Cosparse;
    return v;
}

F2Vector F2Vector::basis(const BigInt& i) { return sparse({i}); }

F2Vector F2Vector::basis_bar(const BigInt& i) { return cosparse({i}); }

bool F2Vector::contains(const BigInt& i) const {
    bool in_support = std::binary_search(support_.begin(), support_.end(), i);
    return is_sparse() ? in_support : !in_support;
}

F2Vector F2Vector::bar() const {
    F2Vector v = *this;
    v.polarity_ = is_sparse() ? Polarity::Cosparse : Polarity::Sparse;
    return v;
}

F2Vector add(const F2Vector& a, const F2Vector& b, std::size_t budget) {
    std::vector<BigInt> out;
    out.reserve(a.support().size() + b.support().size());
    std::set_symmetric_difference(a.support().begin(), a.support().end(),
                                  b.support().begin(), b.support().end(),
                                  std::back_inserter(out));
    bool sparse = a.is_sparse() == b.is_sparse();
    return sparse ? F2Vector::sparse(std::move(out), budget)
                  : F2Vector::cosparse(std::move(out), budget);
}

F2Vector F2Vector::canonical(const std::optional<BigInt>& exact_rank) const {
    if (!exact_rank)
        return *this;
    const BigInt& r = *exact_rank;
    if (!support_.empty() && !(support_.back() < r))
        throw DomainError("support index " + support_.back().str() +
                          " out of range for rank " + r.str());
    BigInt complement_size = r - BigInt(support_.size());
    BigInt size(support_.size());
    bool flip = complement_size < size ||
                (complement_size == size && !is_sparse());
    if (!flip)
        return *this;
    // The complement is the smaller side, so r < 2*|support| and iterating
    // 0..r-1 touches at most twice the budget.
    std::vector<BigInt> comp;
    comp.reserve(static_cast<std::size_t>(complement_size));
    std::size_t pos = 0;
    for (BigInt i = 0; i < r; ++i) {
        if (pos < support_.size() && support_[pos] == i) {
            ++pos;
            continue;
        }
        comp.push_back(i);
    }
    F2Vector v;
    v.polarity_ = is_sparse() ? Polarity::Cosparse : Polarity::Sparse;
    v.support_ = std::move(comp);
    return v;
}

std::optional<BigInt> F2Vector::max_index() const {
    if (support_.empty())
        return std::nullopt;
    return support_.back();
}

std::uint64_t F2Vector::mask64(unsigned rank) const {
    if (rank > 64)
        throw DomainError("mask64 needs rank <= 64");
    std::uint64_t full = rank == 64 ? ~0ull : ((1ull << rank) - 1);
    std::uint64_t m = 0;
    for (const BigInt& i : support_) {
        if (!(i < rank))
            throw DomainError("index out of range for mask64");
        m |= 1ull << static_cast<unsigned>(i);
    }
    return is_sparse() ? m : (full ^ m);
}

std::string F2Vector::repr() const {
    std::ostringstream os;
    os << (is_sparse() ? 'S' : 'C') << '{';
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (i)
            os << ',';
        os << support_[i];
    }
    os << '}';
    return os.str();
}

bool operator<(const F2Vector& a, const F2Vector& b) {
    if (a.polarity_ != b.polarity_)
        return a.is_sparse() && !b.is_sparse();
    if (a.support_.size() != b.support_.size())
        return a.support_.size() < b.support_.size();
    for (std::size_t i = 0; i < a.support_.size(); ++i) {
        if (a.support_[i] != b.support_[i])
            return a.support_[i] < b.support_[i];
    }
    return false;
}

} // namespace branchwork
