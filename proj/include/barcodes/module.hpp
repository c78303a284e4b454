#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "barcodes/barcode.hpp"
#include "barcodes/errors.hpp"
#include "barcodes/field.hpp"
#include "barcodes/rational.hpp"

namespace barcodes {

/// Finite-type persistence module in slot form.
///
/// With critical values c_1 < ... < c_m the real line splits into slots
/// S_0 = (-inf, c_1], S_i = (c_i, c_{i+1}], S_m = (c_m, +inf). The module is
/// constant on each slot (so V_{c_i} lives in S_{i-1}, which is the
/// left-continuity condition) and the structure map from S_{i-1} to S_i is
/// transitions()[i-1], a dims[i] x dims[i-1] matrix.
///
/// Slot indices in this API are 0-based: slot k is S_k, and critical value
/// critical()[k] separates slot k from slot k + 1.
class PersistenceModule {
public:
    PersistenceModule() : PersistenceModule(PrimeField(2)) {}

    /// The zero module over `field`.
    explicit PersistenceModule(PrimeField field) : field_(field), dims_{0} {}

    PersistenceModule(PrimeField field, std::vector<Rational> critical, std::vector<std::size_t> dims,
                      std::vector<Matrix> transitions)
        : field_(field), critical_(std::move(critical)), dims_(std::move(dims)), transitions_(std::move(transitions))
    {
        validate();
    }

    const PrimeField& field() const noexcept { return field_; }
    const std::vector<Rational>& critical() const noexcept { return critical_; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    const std::vector<Matrix>& transitions() const noexcept { return transitions_; }
    std::size_t slot_count() const noexcept { return dims_.size(); }

    /// Sum of slot dimensions.
    std::size_t total_dimension() const
    {
        std::size_t n = 0;
        for (auto d : dims_) n += d;
        return n;
    }

    /// Index of the slot containing s: the number of critical values < s.
    std::size_t slot_of(const Rational& s) const
    {
        return static_cast<std::size_t>(std::lower_bound(critical_.begin(), critical_.end(), s) - critical_.begin());
    }

    /// Composite structure map from slot `from` to slot `to` (from <= to).
    Matrix slot_map(std::size_t from, std::size_t to) const
    {
        if (from > to || to >= slot_count()) throw std::invalid_argument("slot_map needs from <= to < slot_count");
        Matrix m = Matrix::identity(dims_[from]);
        for (std::size_t k = from + 1; k <= to; ++k) m = multiply(field_, transitions_[k - 1], m);
        return m;
    }

    /// rank of slot_map(from, to), with out-of-range slots contributing 0.
    std::size_t composite_rank(long from, long to) const
    {
        if (from < 0 || to >= static_cast<long>(slot_count()) || from > to) return 0;
        return rank(field_, slot_map(static_cast<std::size_t>(from), static_cast<std::size_t>(to)));
    }

    /// dim V_s.
    std::size_t evaluate(const Rational& s) const { return dims_[slot_of(s)]; }

    /// i_{s,t} for s <= t.
    Matrix map(const Rational& s, const Rational& t) const
    {
        if (s > t) throw std::invalid_argument("map(s, t) needs s <= t");
        return slot_map(slot_of(s), slot_of(t));
    }

private:
    void validate() const
    {
        if (dims_.size() != critical_.size() + 1)
            throw InvalidModule("need one dimension per slot: " + std::to_string(critical_.size() + 1) + " expected, " +
                                std::to_string(dims_.size()) + " given");
        if (transitions_.size() != critical_.size())
            throw InvalidModule("need one transition matrix per critical value");
        for (std::size_t i = 1; i < critical_.size(); ++i)
            if (critical_[i - 1] >= critical_[i]) throw InvalidModule("critical values must be strictly increasing");
        for (std::size_t i = 0; i < transitions_.size(); ++i) {
            const auto& m = transitions_[i];
            if (m.rows() != dims_[i + 1] || m.cols() != dims_[i])
                throw InvalidModule("transition " + std::to_string(i + 1) + " has the wrong shape");
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (m(r, c) >= field_.characteristic())
                        throw InvalidModule("transition entry out of range for the field");
        }
    }

    PrimeField field_;
    std::vector<Rational> critical_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> transitions_;
};

/// j(c) = dim ker + codim im of the structure map across each critical value.
inline std::vector<std::pair<Rational, std::size_t>> genericity_defect(const PersistenceModule& v)
{
    std::vector<std::pair<Rational, std::size_t>> out;
    for (std::size_t i = 0; i < v.critical().size(); ++i) {
        const auto& m = v.transitions()[i];
        std::size_t r = rank(v.field(), m);
        out.emplace_back(v.critical()[i], (m.cols() - r) + (m.rows() - r));
    }
    return out;
}

inline bool is_generic(const PersistenceModule& v)
{
    for (const auto& [c, j] : genericity_defect(v))
        if (j > 1) return false;
    return true;
}

/// The barcode functor. The multiplicity of the bar supported exactly on
/// slots i..j is the inclusion-exclusion of composite ranks
///   r(i,j) - r(i-1,j) - r(i,j+1) + r(i-1,j+1).
inline Barcode beta(const PersistenceModule& v)
{
    const long m = static_cast<long>(v.slot_count()) - 1;
    std::map<std::pair<long, long>, std::size_t> r;
    auto rk = [&](long i, long j) -> long {
        if (i < 0 || j > m || i > j) return 0;
        auto key = std::make_pair(i, j);
        auto it = r.find(key);
        if (it == r.end()) it = r.emplace(key, v.composite_rank(i, j)).first;
        return static_cast<long>(it->second);
    };
    Barcode out;
    for (long i = 0; i <= m; ++i) {
        for (long j = i; j <= m; ++j) {
            long mu = rk(i, j) - rk(i - 1, j) - rk(i, j + 1) + rk(i - 1, j + 1);
            if (mu < 0) throw std::logic_error("negative bar multiplicity");
            if (mu == 0) continue;
            Extended birth = i == 0 ? Extended::neg_inf() : Extended(v.critical()[static_cast<std::size_t>(i - 1)]);
            Extended death = j == m ? Extended::pos_inf() : Extended(v.critical()[static_cast<std::size_t>(j)]);
            out.add(Interval(birth, death), static_cast<std::size_t>(mu));
        }
    }
    return out;
}

/// The pairing description of the barcode, valid for generic modules only:
/// each critical value b whose structure map has a one-dimensional kernel
/// spanned by x is paired with the unique a such that x is in the image from
/// just after a but not from just before a. Critical values with a
/// one-dimensional cokernel left unpaired start infinite bars.
inline Barcode beta_generic(const PersistenceModule& v)
{
    if (!is_generic(v)) throw DomainError("beta_generic needs a generic module");
    const auto& f = v.field();
    const std::size_t m = v.critical().size();
    auto in_image = [&](const Matrix& a, const std::vector<PrimeField::Element>& x) {
        return solve(f, a, x).has_value();
    };
    auto crit = [&](std::size_t k) -> Extended { return k == 0 ? Extended::neg_inf() : Extended(v.critical()[k - 1]); };

    Barcode out;
    std::set<std::size_t> births_used;
    for (std::size_t i = 1; i <= m; ++i) {
        const auto& t = v.transitions()[i - 1];
        auto ker = nullspace(f, t);
        if (ker.size() != 1) continue;
        const auto& x = ker.front();
        // images from earlier slots shrink as the source moves left
        std::size_t k = i - 1;
        while (k > 0 && in_image(v.slot_map(k - 1, i - 1), x)) --k;
        out.add(Interval(crit(k), Extended(v.critical()[i - 1])));
        births_used.insert(k);
    }
    for (std::size_t i = 1; i <= m; ++i) {
        const auto& t = v.transitions()[i - 1];
        if (t.rows() - rank(f, t) == 1 && !births_used.count(i)) out.add(Interval(crit(i), Extended::pos_inf()));
    }
    // classes alive on the whole line
    out.add(Interval(Extended::neg_inf(), Extended::pos_inf()), v.composite_rank(0, static_cast<long>(m)));
    return out;
}

/// The functor Q: the direct sum of interval modules. The basis of each slot
/// lists the live bar copies in canonical bar order.
inline PersistenceModule from_barcode(const Barcode& b, PrimeField field = PrimeField(2))
{
    std::set<Rational> values;
    for (const auto& e : endpoint_multiset(b)) values.insert(e);
    std::vector<Rational> critical(values.begin(), values.end());
    const std::size_t slots = critical.size() + 1;
    const auto bars = b.expanded();

    // slot k is alive for bar (a, d] iff a <= left end of slot k and right end <= d
    auto alive = [&](const Interval& bar, std::size_t k) {
        Extended left = k == 0 ? Extended::neg_inf() : Extended(critical[k - 1]);
        Extended right = k == critical.size() ? Extended::pos_inf() : Extended(critical[k]);
        return bar.birth() <= left && right <= bar.death();
    };
    std::vector<std::vector<std::size_t>> basis(slots);
    for (std::size_t k = 0; k < slots; ++k)
        for (std::size_t n = 0; n < bars.size(); ++n)
            if (alive(bars[n], k)) basis[k].push_back(n);

    std::vector<std::size_t> dims(slots);
    for (std::size_t k = 0; k < slots; ++k) dims[k] = basis[k].size();
    std::vector<Matrix> transitions;
    for (std::size_t k = 1; k < slots; ++k) {
        Matrix t(dims[k], dims[k - 1]);
        for (std::size_t c = 0; c < basis[k - 1].size(); ++c) {
            auto it = std::find(basis[k].begin(), basis[k].end(), basis[k - 1][c]);
            if (it != basis[k].end()) t(static_cast<std::size_t>(it - basis[k].begin()), c) = 1;
        }
        transitions.push_back(std::move(t));
    }
    return PersistenceModule(field, std::move(critical), std::move(dims), std::move(transitions));
}

/// tau_a V, defined by (tau_a V)_s = V_{a+s}: critical values move by -a.
inline PersistenceModule shift_module(const PersistenceModule& v, const Rational& a)
{
    std::vector<Rational> critical;
    for (const auto& c : v.critical()) critical.push_back(c - a);
    return PersistenceModule(v.field(), std::move(critical), v.dims(), v.transitions());
}

/// A generic module with d_bot(beta(v), beta(result)) <= epsilon. Generic
/// input is returned unchanged. Otherwise every group of k coinciding finite
/// endpoints at value x is spread to x + r*g/K (r = 0..k-1), where K is the
/// largest group size and g = min(epsilon, smallest gap between distinct
/// endpoint values). Group members are ordered by canonical bar order,
/// birth before death.
inline PersistenceModule perturb_to_generic(const PersistenceModule& v, const Rational& epsilon)
{
    if (epsilon <= 0) throw DomainError("perturb_to_generic needs epsilon > 0");
    if (is_generic(v)) return v;

    const auto bars = beta(v).expanded();
    // (value, bar index, 0 = birth / 1 = death)
    std::map<Rational, std::vector<std::pair<std::size_t, int>>> groups;
    for (std::size_t n = 0; n < bars.size(); ++n) {
        if (bars[n].birth().is_finite()) groups[bars[n].birth().value()].emplace_back(n, 0);
        if (bars[n].death().is_finite()) groups[bars[n].death().value()].emplace_back(n, 1);
    }
    Rational gap = epsilon;
    std::size_t largest = 1;
    for (auto it = groups.begin(); it != groups.end(); ++it) {
        largest = std::max(largest, it->second.size());
        if (auto nx = std::next(it); nx != groups.end()) gap = std::min(gap, Rational(nx->first - it->first));
    }
    std::vector<Extended> births, deaths;
    for (const auto& i : bars) {
        births.push_back(i.birth());
        deaths.push_back(i.death());
    }
    for (auto& [x, members] : groups) {
        std::sort(members.begin(), members.end(),
                  [](const auto& a, const auto& b) { return a.first != b.first ? a.first < b.first : a.second < b.second; });
        for (std::size_t r = 0; r < members.size(); ++r) {
            Rational moved = x + gap * Rational(static_cast<long>(r)) / Rational(static_cast<long>(largest));
            auto [n, side] = members[r];
            (side == 0 ? births[n] : deaths[n]) = Extended(moved);
        }
    }
    Barcode spread;
    for (std::size_t n = 0; n < bars.size(); ++n) spread.add(Interval(births[n], deaths[n]));
    return from_barcode(spread, v.field());
}

} // namespace barcodes
