#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "barcodes/errors.hpp"
#include "barcodes/rational.hpp"

namespace barcodes {

/// A half-open bar (birth, death]. Only the birth may be -inf and only the
/// death may be +inf. A finite bar with birth == death is trivial.
class Interval {
public:
    Interval(Extended birth, Extended death) : birth_(std::move(birth)), death_(std::move(death))
    {
        if (birth_.is_pos_inf())
            throw MalformedInterval("birth may not be +inf");
        if (death_.is_neg_inf())
            throw MalformedInterval("death may not be -inf");
        if (birth_ > death_)
            throw MalformedInterval("birth " + birth_.str() + " exceeds death " + death_.str());
    }

    const Extended& birth() const noexcept { return birth_; }
    const Extended& death() const noexcept { return death_; }

    bool trivial() const { return birth_ == death_; }
    bool finite() const { return birth_.is_finite() && death_.is_finite(); }

    /// death - birth; +inf for any bar with an infinite endpoint.
    Extended length() const
    {
        if (!finite()) return Extended::pos_inf();
        return Extended(death_.value() - birth_.value());
    }

    Interval shifted(const Rational& c) const { return Interval(birth_ + c, death_ + c); }

    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval& a, const Interval& b)
    {
        if (auto c = a.birth_ <=> b.birth_; c != 0) return c;
        return a.death_ <=> b.death_;
    }

private:
    Extended birth_;
    Extended death_;
};

inline Interval bar(const Rational& birth, const Rational& death) { return Interval(birth, death); }

/// Finite multiset of bars in canonical form: no trivial bars, no zero
/// multiplicities, ordered by (birth, death).
class Barcode {
public:
    using Entries = std::map<Interval, std::size_t>;

    Barcode() = default;

    /// Canonicalizes a raw family: drops trivial bars and merges repeats.
    explicit Barcode(const std::vector<Interval>& raw)
    {
        for (const auto& i : raw) add(i, 1);
    }

    explicit Barcode(const std::vector<std::pair<Interval, std::size_t>>& raw)
    {
        for (const auto& [i, m] : raw) add(i, m);
    }

    void add(const Interval& i, std::size_t multiplicity = 1)
    {
        if (i.trivial() || multiplicity == 0) return;
        bars_[i] += multiplicity;
    }

    const Entries& entries() const noexcept { return bars_; }
    bool empty() const noexcept { return bars_.empty(); }

    /// Number of distinct bars.
    std::size_t distinct_size() const noexcept { return bars_.size(); }

    /// Number of bars counted with multiplicity.
    std::size_t size() const
    {
        std::size_t n = 0;
        for (const auto& [i, m] : bars_) n += m;
        return n;
    }

    std::size_t multiplicity(const Interval& i) const
    {
        auto it = bars_.find(i);
        return it == bars_.end() ? 0 : it->second;
    }

    /// Bars with multiplicity expanded into repeated copies, in canonical order.
    std::vector<Interval> expanded() const
    {
        std::vector<Interval> out;
        for (const auto& [i, m] : bars_) out.insert(out.end(), m, i);
        return out;
    }

    friend bool operator==(const Barcode&, const Barcode&) = default;

private:
    Entries bars_;
};

inline Barcode canonicalize(const std::vector<Interval>& raw) { return Barcode(raw); }

/// B + c: every finite endpoint moves by c. The paper-style operator tau_a
/// is shift(b, -a).
inline Barcode shift(const Barcode& b, const Rational& c)
{
    Barcode out;
    for (const auto& [i, m] : b.entries()) out.add(i.shifted(c), m);
    return out;
}

inline Barcode operator+(const Barcode& b, const Rational& c) { return shift(b, c); }

/// Finite endpoints counted once per bar copy, sorted ascending.
inline std::vector<Rational> endpoint_multiset(const Barcode& b)
{
    std::vector<Rational> out;
    for (const auto& [i, m] : b.entries()) {
        for (std::size_t k = 0; k < m; ++k) {
            if (i.birth().is_finite()) out.push_back(i.birth().value());
            if (i.death().is_finite()) out.push_back(i.death().value());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Barcodes indexed by homological degree. Empty degrees are never stored.
class GradedBarcode {
public:
    GradedBarcode() = default;
    explicit GradedBarcode(std::map<int, Barcode> by_degree)
    {
        for (auto& [d, b] : by_degree) set(d, std::move(b));
    }

    void set(int degree, Barcode b)
    {
        if (b.empty())
            by_degree_.erase(degree);
        else
            by_degree_[degree] = std::move(b);
    }

    void add(int degree, const Interval& i, std::size_t multiplicity = 1)
    {
        if (i.trivial() || multiplicity == 0) return;
        by_degree_[degree].add(i, multiplicity);
    }

    /// The barcode in `degree`; empty if absent.
    Barcode at(int degree) const
    {
        auto it = by_degree_.find(degree);
        return it == by_degree_.end() ? Barcode{} : it->second;
    }

    bool contains(int degree) const { return by_degree_.count(degree) > 0; }
    const std::map<int, Barcode>& by_degree() const noexcept { return by_degree_; }
    bool empty() const noexcept { return by_degree_.empty(); }

    /// Union over all degrees.
    Barcode total() const
    {
        Barcode out;
        for (const auto& [d, b] : by_degree_)
            for (const auto& [i, m] : b.entries()) out.add(i, m);
        return out;
    }

    friend bool operator==(const GradedBarcode&, const GradedBarcode&) = default;

private:
    std::map<int, Barcode> by_degree_;
};

inline GradedBarcode shift(const GradedBarcode& g, const Rational& c)
{
    GradedBarcode out;
    for (const auto& [d, b] : g.by_degree()) out.set(d, shift(b, c));
    return out;
}

/// A tau-periodic infinite barcode, stored as one fundamental domain. Each
/// bar is translated by a multiple of tau so that its birth (or, for bars
/// born at -inf, its death) lies in [0, tau).
class PeriodicBarcode {
public:
    PeriodicBarcode(Rational period, const Barcode& bars) : period_(std::move(period))
    {
        if (period_ <= 0) throw DomainError("period must be positive, got " + to_string(period_));
        for (const auto& [i, m] : bars.entries()) fundamental_.add(normalize(i), m);
    }

    const Rational& period() const noexcept { return period_; }
    const Barcode& fundamental() const noexcept { return fundamental_; }

    /// All copies fundamental + n*tau for n in [n_lo, n_hi].
    Barcode unfold(long n_lo, long n_hi) const
    {
        Barcode out;
        for (long n = n_lo; n <= n_hi; ++n) {
            for (const auto& [i, m] : fundamental_.entries()) out.add(i.shifted(period_ * n), m);
        }
        return out;
    }

    /// The represented barcode shifted by c, re-normalized.
    PeriodicBarcode shifted(const Rational& c) const { return PeriodicBarcode(period_, shift(fundamental_, c)); }

    friend bool operator==(const PeriodicBarcode&, const PeriodicBarcode&) = default;

private:
    Interval normalize(const Interval& i) const
    {
        const Extended& anchor = i.birth().is_finite() ? i.birth() : i.death();
        if (!anchor.is_finite()) return i;
        Rational q = anchor.value() / period_;
        mpz_class n;
        mpz_fdiv_q(n.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        return i.shifted(-period_ * Rational(n));
    }

    Rational period_;
    Barcode fundamental_;
};

/// Endpoints, with multiplicity, of the represented infinite barcode that lie
/// in the window [lo, lo + tau).
inline std::size_t count_endpoints_in_window(const PeriodicBarcode& pb, const Rational& lo)
{
    const Rational& tau = pb.period();
    const Rational hi = lo + tau;
    std::size_t count = 0;
    for (const auto& e : endpoint_multiset(pb.fundamental())) {
        // smallest n with e + n*tau >= lo
        Rational q = (lo - e) / tau;
        mpz_class n;
        mpz_cdiv_q(n.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        for (Rational x = e + tau * Rational(n); x < hi; x += tau) ++count;
    }
    return count;
}

/// Inclusive range of degrees over which a GradedBarcode is known; degrees
/// inside the window that are absent from the map are empty.
struct DegreeWindow {
    int lo;
    int hi;
};

/// True iff B_j == B_{j-2N} - tau for every j in the window whose partner
/// degree j - 2N also lies in the window.
inline bool check_degree_periodicity(const GradedBarcode& gb, DegreeWindow window, int n, const Rational& tau)
{
    if (n <= 0) throw DomainError("N must be positive");
    if (window.hi - window.lo < 2 * n)
        throw MissingDegree("window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                            "] contains no degree pair (j, j - " + std::to_string(2 * n) + ")");
    for (const auto& [d, b] : gb.by_degree()) {
        if (d < window.lo || d > window.hi)
            throw MissingDegree("degree " + std::to_string(d) + " lies outside the declared window");
    }
    for (int j = window.lo + 2 * n; j <= window.hi; ++j) {
        if (gb.at(j) != shift(gb.at(j - 2 * n), -tau)) return false;
    }
    return true;
}

/// A barcode considered up to a global translation.
class ShiftClass {
public:
    explicit ShiftClass(Barcode representative) : rep_(std::move(representative)) {}

    const Barcode& representative() const noexcept { return rep_; }

    friend bool operator==(const ShiftClass& a, const ShiftClass& b)
    {
        auto ea = endpoint_multiset(a.rep_);
        auto eb = endpoint_multiset(b.rep_);
        if (ea.empty() || eb.empty()) return ea.empty() && eb.empty() && a.rep_ == b.rep_;
        return shift(a.rep_, eb.front() - ea.front()) == b.rep_;
    }

private:
    Barcode rep_;
};

} // namespace barcodes
