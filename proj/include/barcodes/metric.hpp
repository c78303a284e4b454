#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "barcodes/barcode.hpp"
#include "barcodes/errors.hpp"
#include "barcodes/rational.hpp"

namespace barcodes {

/// max(|c - a|, |d - b|) for (a,b] and (c,d]. Bars sharing an infinite
/// endpoint on the same side are compared on their finite ends only.
inline Extended interval_distance(const Interval& i1, const Interval& i2)
{
    return std::max(endpoint_deviation(i1.birth(), i2.birth()), endpoint_deviation(i1.death(), i2.death()));
}

/// Cost of leaving a bar unmatched: half its length (+inf for infinite bars).
inline Extended unmatched_cost(const Interval& i)
{
    Extended len = i.length();
    return len.is_finite() ? Extended(len.value() / 2) : len;
}

/// I <= J iff birth(I) <= birth(J) and death(I) <= death(J). A nonzero
/// morphism Q(J) -> Q(I) exists exactly when I <= J.
inline bool interval_leq(const Interval& i1, const Interval& i2)
{
    if (i1.trivial() || i2.trivial()) throw TrivialInterval("interval_leq needs nontrivial intervals");
    return i1.birth() <= i2.birth() && i1.death() <= i2.death();
}

/// Partial bijection between the multiplicity-expanded bar lists of two
/// barcodes (indices refer to Barcode::expanded()).
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> unmatched1;
    std::vector<std::size_t> unmatched2;

    friend bool operator==(const Matching&, const Matching&) = default;
};

struct DistanceCertificate {
    Extended value;
    Matching witness;
};

/// True iff every matched pair is within `value` and every unmatched bar has
/// length at most 2 * value, and the matching covers both lists exactly once.
inline bool certificate_is_feasible(const Barcode& b1, const Barcode& b2, const DistanceCertificate& cert)
{
    const auto x1 = b1.expanded();
    const auto x2 = b2.expanded();
    std::vector<int> used1(x1.size(), 0), used2(x2.size(), 0);
    for (const auto& [i, j] : cert.witness.pairs) {
        if (i >= x1.size() || j >= x2.size()) return false;
        ++used1[i];
        ++used2[j];
        if (interval_distance(x1[i], x2[j]) > cert.value) return false;
    }
    for (auto i : cert.witness.unmatched1) {
        if (i >= x1.size()) return false;
        ++used1[i];
        if (unmatched_cost(x1[i]) > cert.value) return false;
    }
    for (auto j : cert.witness.unmatched2) {
        if (j >= x2.size()) return false;
        ++used2[j];
        if (unmatched_cost(x2[j]) > cert.value) return false;
    }
    auto once = [](const std::vector<int>& v) { return std::all_of(v.begin(), v.end(), [](int c) { return c == 1; }); };
    return once(used1) && once(used2);
}

namespace detail {

/// Bipartite graph for the threshold test at a fixed delta. Left vertices are
/// the bars of B1 followed by one "diagonal" slot per bar of B2; right
/// vertices are the bars of B2 followed by one diagonal slot per bar of B1.
/// A perfect matching exists iff d_bot(B1, B2) <= delta.
class ThresholdGraph {
public:
    ThresholdGraph(const std::vector<Interval>& x1, const std::vector<Interval>& x2, const Extended& delta)
        : n1_(x1.size()), n2_(x2.size()), adj_(n1_ + n2_)
    {
        for (std::size_t i = 0; i < n1_; ++i) {
            for (std::size_t j = 0; j < n2_; ++j)
                if (interval_distance(x1[i], x2[j]) <= delta) adj_[i].push_back(j);
            if (unmatched_cost(x1[i]) <= delta) adj_[i].push_back(n2_ + i);
        }
        for (std::size_t j = 0; j < n2_; ++j) {
            if (unmatched_cost(x2[j]) <= delta) adj_[n1_ + j].push_back(j);
            for (std::size_t i = 0; i < n1_; ++i) adj_[n1_ + j].push_back(n2_ + i);
        }
    }

    std::size_t size() const { return n1_ + n2_; }
    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }

    /// Options of left vertex `left` in increasing right-index order:
    /// partners in B2 first, then its own diagonal slot.
    const std::vector<std::size_t>& options(std::size_t left) const { return adj_[left]; }

    /// Kuhn's augmenting-path algorithm with some left vertices pinned to a
    /// given right vertex. Returns match_right or nullopt if no perfect
    /// matching exists.
    std::optional<std::vector<std::size_t>> perfect_matching(
        const std::vector<std::optional<std::size_t>>& pinned) const
    {
        const std::size_t n = size();
        constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> match_right(n, none);
        std::vector<bool> right_pinned(n, false);
        for (std::size_t l = 0; l < pinned.size(); ++l) {
            if (!pinned[l]) continue;
            std::size_t r = *pinned[l];
            if (right_pinned[r]) return std::nullopt;
            right_pinned[r] = true;
            match_right[r] = l;
        }
        std::vector<char> seen(n);
        auto allowed = [&](std::size_t l, std::size_t r) {
            if (l < pinned.size() && pinned[l]) return *pinned[l] == r;
            return !right_pinned[r];
        };
        std::function<bool(std::size_t)> augment = [&](std::size_t l) -> bool {
            for (std::size_t r : adj_[l]) {
                if (!allowed(l, r) || seen[r]) continue;
                seen[r] = 1;
                if (match_right[r] == none || augment(match_right[r])) {
                    match_right[r] = l;
                    return true;
                }
            }
            return false;
        };
        for (std::size_t l = 0; l < n; ++l) {
            if (l < pinned.size() && pinned[l]) {
                const auto& opts = adj_[l];
                if (std::find(opts.begin(), opts.end(), *pinned[l]) == opts.end()) return std::nullopt;
                continue;
            }
            std::fill(seen.begin(), seen.end(), 0);
            if (!augment(l)) return std::nullopt;
        }
        return match_right;
    }

private:
    std::size_t n1_, n2_;
    std::vector<std::vector<std::size_t>> adj_;
};

/// Candidate values at which the bottleneck distance can be attained.
inline std::vector<Rational> bottleneck_candidates(const std::vector<Interval>& x1, const std::vector<Interval>& x2)
{
    std::set<Rational> c{Rational(0)};
    for (const auto& a : x1)
        for (const auto& b : x2)
            if (auto d = interval_distance(a, b); d.is_finite()) c.insert(d.value());
    for (const auto* xs : {&x1, &x2})
        for (const auto& a : *xs)
            if (auto d = unmatched_cost(a); d.is_finite()) c.insert(d.value());
    return {c.begin(), c.end()};
}

/// Lexicographically smallest feasible assignment of the B1 bars (partner
/// index ascending, "unmatched" last), then the implied B2 leftovers.
inline Matching lexicographic_witness(const ThresholdGraph& g)
{
    std::vector<std::optional<std::size_t>> pinned(g.n1());
    Matching m;
    for (std::size_t i = 0; i < g.n1(); ++i) {
        for (std::size_t r : g.options(i)) {
            pinned[i] = r;
            if (g.perfect_matching(pinned)) break;
            pinned[i].reset();
        }
        if (!pinned[i]) throw std::logic_error("threshold graph lost its perfect matching");
    }
    std::vector<bool> taken(g.n2(), false);
    for (std::size_t i = 0; i < g.n1(); ++i) {
        if (*pinned[i] < g.n2()) {
            m.pairs.emplace_back(i, *pinned[i]);
            taken[*pinned[i]] = true;
        } else {
            m.unmatched1.push_back(i);
        }
    }
    for (std::size_t j = 0; j < g.n2(); ++j)
        if (!taken[j]) m.unmatched2.push_back(j);
    return m;
}

} // namespace detail

/// Exact bottleneck distance with a witness matching. The value is the least
/// candidate (pairwise interval distance or half bar length) whose threshold
/// graph has a perfect matching; +inf when none does, which happens exactly
/// when the infinite bars cannot be paired off side by side.
inline DistanceCertificate bottleneck_distance(const Barcode& b1, const Barcode& b2)
{
    const auto x1 = b1.expanded();
    const auto x2 = b2.expanded();
    const auto candidates = detail::bottleneck_candidates(x1, x2);

    auto feasible = [&](const Extended& delta) {
        detail::ThresholdGraph g(x1, x2, delta);
        return g.perfect_matching({}).has_value();
    };

    // Feasibility is monotone in delta, so binary search the sorted candidates.
    std::size_t lo = 0, hi = candidates.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    Extended value = lo < candidates.size() ? Extended(candidates[lo]) : Extended::pos_inf();
    detail::ThresholdGraph g(x1, x2, value);
    return {value, detail::lexicographic_witness(g)};
}

struct ShiftDistance {
    DistanceCertificate certificate;
    Rational shift;
};

/// inf over c of d_bot(B1 + c, B2). The function c -> d_bot(B1 + c, B2) is a
/// minimum of convex piecewise-linear functions whose terms are |e1 + c - e2|
/// and constants, so its minimum is attained at a zero of one term or at the
/// crossing of two terms of opposite slope. Those are the candidate shifts.
/// Ties are broken towards the smallest shift.
inline ShiftDistance shift_quotient_distance(const ShiftClass& c1, const ShiftClass& c2)
{
    const Barcode& b1 = c1.representative();
    const Barcode& b2 = c2.representative();
    const auto e1 = endpoint_multiset(b1);
    const auto e2 = endpoint_multiset(b2);
    std::set<Rational> shifts;
    if (e1.empty() || e2.empty()) {
        shifts.insert(Rational(0));
    } else {
        std::set<Rational> u1(e1.begin(), e1.end()), u2(e2.begin(), e2.end());
        std::set<Rational> diffs;
        for (const auto& a : u1)
            for (const auto& b : u2) diffs.insert(b - a);
        for (auto it = diffs.begin(); it != diffs.end(); ++it)
            for (auto jt = it; jt != diffs.end(); ++jt) shifts.insert((*it + *jt) / 2);
    }
    std::optional<ShiftDistance> best;
    for (const auto& c : shifts) {
        auto cert = bottleneck_distance(shift(b1, c), b2);
        if (!best || cert.value < best->certificate.value) best = ShiftDistance{std::move(cert), c};
    }
    return *best;
}

} // namespace barcodes
