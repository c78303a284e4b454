#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "barcodes/errors.hpp"
#include "barcodes/field.hpp"
#include "barcodes/module.hpp"
#include "barcodes/rational.hpp"

namespace barcodes {

/// A family of linear maps u_s : V_s -> W_{s+shift}, piecewise constant on
/// the cells (-inf, b_0], (b_0, b_1], ..., (b_last, +inf) of `breaks`.
struct ShiftedMorphism {
    Rational shift;
    std::vector<Rational> breaks;
    std::vector<Matrix> cells;  // breaks.size() + 1 entries

    const Matrix& at(const Rational& s) const
    {
        auto k = static_cast<std::size_t>(std::lower_bound(breaks.begin(), breaks.end(), s) - breaks.begin());
        return cells[k];
    }
};

/// phi : V -> tau_eps W and psi : W -> tau_eps V with
/// psi_{s+eps} phi_s = i_{s,s+2eps} and phi_{s+eps} psi_s = j_{s,s+2eps}.
struct InterleavingWitness {
    Rational epsilon;
    ShiftedMorphism phi;
    ShiftedMorphism psi;
};

namespace detail {

/// One point per cell of the partition of the line by `breaks` (sorted,
/// unique). Every left-continuous function that is constant on those cells
/// is determined by its values at these points.
inline std::vector<Rational> cell_representatives(const std::vector<Rational>& breaks)
{
    if (breaks.empty()) return {Rational(0)};
    std::vector<Rational> reps(breaks.begin(), breaks.end());
    reps.push_back(breaks.back() + 1);
    return reps;
}

inline std::vector<Rational> merged_breaks(std::initializer_list<std::pair<const std::vector<Rational>*, Rational>> parts)
{
    std::set<Rational> all;
    for (const auto& [values, offset] : parts)
        for (const auto& c : *values) all.insert(c + offset);
    return {all.begin(), all.end()};
}

/// Basis of the space of natural families u_s : V_s -> W_{s+shift}.
/// Unknowns are the entries of one matrix per cell of the refinement by
/// crit(V) and crit(W) - shift; constraints are the naturality squares
/// between consecutive cells.
class MorphismSpace {
public:
    MorphismSpace(const PersistenceModule& v, const PersistenceModule& w, const Rational& shift)
        : shift_(shift)
    {
        breaks_ = merged_breaks({{&v.critical(), Rational(0)}, {&w.critical(), Rational(-shift)}});
        reps_ = cell_representatives(breaks_);
        std::size_t offset = 0;
        for (const auto& s : reps_) {
            std::size_t rows = w.evaluate(s + shift), cols = v.evaluate(s);
            layout_.push_back({offset, rows, cols});
            offset += rows * cols;
        }
        unknowns_ = offset;

        const auto& f = v.field();
        std::vector<std::vector<PrimeField::Element>> equations;
        for (std::size_t k = 0; k + 1 < reps_.size(); ++k) {
            // u_{k+1} * i(rep_k, rep_{k+1}) - j(rep_k + shift, rep_{k+1} + shift) * u_k = 0
            Matrix iv = v.map(reps_[k], reps_[k + 1]);
            Matrix jw = w.map(reps_[k] + shift, reps_[k + 1] + shift);
            const auto& lk = layout_[k];
            const auto& ln = layout_[k + 1];
            for (std::size_t r = 0; r < ln.rows; ++r) {
                for (std::size_t c = 0; c < lk.cols; ++c) {
                    std::vector<PrimeField::Element> eq(unknowns_, 0);
                    for (std::size_t t = 0; t < ln.cols; ++t)
                        eq[ln.offset + r * ln.cols + t] = f.add(eq[ln.offset + r * ln.cols + t], iv(t, c));
                    for (std::size_t t = 0; t < lk.rows; ++t)
                        eq[lk.offset + t * lk.cols + c] = f.sub(eq[lk.offset + t * lk.cols + c], jw(r, t));
                    equations.push_back(std::move(eq));
                }
            }
        }
        Matrix system(equations.size(), unknowns_);
        for (std::size_t e = 0; e < equations.size(); ++e)
            for (std::size_t u = 0; u < unknowns_; ++u) system(e, u) = equations[e][u];
        basis_ = nullspace(f, system);
    }

    std::size_t dimension() const { return basis_.size(); }
    std::size_t unknowns() const { return unknowns_; }
    const std::vector<std::vector<PrimeField::Element>>& basis() const { return basis_; }

    /// Materializes the morphism with the given coordinate vector (length
    /// unknowns()).
    ShiftedMorphism assemble(const std::vector<PrimeField::Element>& x) const
    {
        ShiftedMorphism m{shift_, breaks_, {}};
        for (const auto& l : layout_) {
            Matrix cell(l.rows, l.cols);
            for (std::size_t r = 0; r < l.rows; ++r)
                for (std::size_t c = 0; c < l.cols; ++c) cell(r, c) = x[l.offset + r * l.cols + c];
            m.cells.push_back(std::move(cell));
        }
        return m;
    }

    /// Position of entry (r, c) of the cell containing s.
    std::size_t coordinate(const Rational& s, std::size_t r, std::size_t c) const
    {
        auto k = static_cast<std::size_t>(std::lower_bound(breaks_.begin(), breaks_.end(), s) - breaks_.begin());
        return layout_[k].offset + r * layout_[k].cols + c;
    }

private:
    struct Cell {
        std::size_t offset, rows, cols;
    };

    Rational shift_;
    std::vector<Rational> breaks_;
    std::vector<Rational> reps_;
    std::vector<Cell> layout_;
    std::size_t unknowns_ = 0;
    std::vector<std::vector<PrimeField::Element>> basis_;
};

} // namespace detail

/// Checks a witness directly against the definition at one point per cell of
/// the common refinement of every piece involved.
inline bool verify_interleaving(const PersistenceModule& v, const PersistenceModule& w, const InterleavingWitness& wit)
{
    const auto& f = v.field();
    const Rational& e = wit.epsilon;
    auto natural = [&](const PersistenceModule& a, const PersistenceModule& b, const ShiftedMorphism& u) {
        auto breaks = detail::merged_breaks({{&a.critical(), Rational(0)}, {&b.critical(), Rational(-e)}, {&u.breaks, Rational(0)}});
        auto reps = detail::cell_representatives(breaks);
        for (const auto& s : reps)
            if (u.at(s).rows() != b.evaluate(s + e) || u.at(s).cols() != a.evaluate(s)) return false;
        for (std::size_t k = 0; k + 1 < reps.size(); ++k) {
            if (multiply(f, u.at(reps[k + 1]), a.map(reps[k], reps[k + 1])) !=
                multiply(f, b.map(reps[k] + e, reps[k + 1] + e), u.at(reps[k])))
                return false;
        }
        return true;
    };
    auto composes = [&](const PersistenceModule& a, const PersistenceModule& b, const ShiftedMorphism& u,
                        const ShiftedMorphism& back) {
        auto breaks = detail::merged_breaks({{&a.critical(), Rational(0)},
                                             {&a.critical(), Rational(-2 * e)},
                                             {&b.critical(), Rational(-e)},
                                             {&u.breaks, Rational(0)},
                                             {&back.breaks, Rational(-e)}});
        for (const auto& s : detail::cell_representatives(breaks))
            if (multiply(f, back.at(s + e), u.at(s)) != a.map(s, s + 2 * e)) return false;
        return true;
    };
    return natural(v, w, wit.phi) && natural(w, v, wit.psi) && composes(v, w, wit.phi, wit.psi) &&
           composes(w, v, wit.psi, wit.phi);
}

/// Exhaustive search for an epsilon-interleaving. Enumerates every natural
/// phi : V -> tau_eps W (the space is computed exactly as a null space) and,
/// for each, solves the composition identities as a linear system in the
/// coordinates of psi. Returns nullopt when no interleaving exists at this
/// epsilon.
///
/// Throws CapExceeded if either module's total dimension exceeds `cap`.
inline std::optional<InterleavingWitness> interleaving_oracle(const PersistenceModule& v, const PersistenceModule& w,
                                                              const Rational& epsilon, std::size_t cap = 3)
{
    if (v.field() != w.field()) throw DomainError("modules over different fields");
    if (epsilon < 0) throw DomainError("epsilon must be nonnegative");
    if (v.total_dimension() > cap || w.total_dimension() > cap)
        throw CapExceeded("total dimension above the cap of " + std::to_string(cap));

    const auto& f = v.field();
    const std::uint32_t p = f.characteristic();
    detail::MorphismSpace phis(v, w, epsilon);
    detail::MorphismSpace psis(w, v, epsilon);

    // Points where the composition identities must hold.
    const auto v_side = detail::cell_representatives(detail::merged_breaks(
        {{&v.critical(), Rational(0)}, {&w.critical(), Rational(-epsilon)}, {&v.critical(), Rational(-2 * epsilon)}}));
    const auto w_side = detail::cell_representatives(detail::merged_breaks(
        {{&w.critical(), Rational(0)}, {&v.critical(), Rational(-epsilon)}, {&w.critical(), Rational(-2 * epsilon)}}));

    // psi in coordinates y over psis.basis(): psi = sum_k y_k basis_k.
    auto psi_entry = [&](std::size_t k, const Rational& s, std::size_t r, std::size_t c) {
        return psis.basis()[k][psis.coordinate(s, r, c)];
    };
    const std::size_t nb = psis.dimension();

    std::vector<PrimeField::Element> coeffs(phis.dimension(), 0);
    while (true) {
        std::vector<PrimeField::Element> x(phis.unknowns(), 0);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            for (std::size_t u = 0; u < x.size(); ++u) x[u] = f.add(x[u], f.mul(coeffs[k], phis.basis()[k][u]));
        ShiftedMorphism phi = phis.assemble(x);

        std::vector<std::vector<PrimeField::Element>> rows;
        std::vector<PrimeField::Element> rhs;
        // psi_{s+eps} phi_s = i_{s, s+2eps}
        for (const auto& s : v_side) {
            const Matrix& ph = phi.at(s);
            Matrix target = v.map(s, s + 2 * epsilon);
            for (std::size_t r = 0; r < target.rows(); ++r)
                for (std::size_t c = 0; c < target.cols(); ++c) {
                    std::vector<PrimeField::Element> row(nb, 0);
                    for (std::size_t k = 0; k < nb; ++k)
                        for (std::size_t t = 0; t < ph.rows(); ++t)
                            row[k] = f.add(row[k], f.mul(psi_entry(k, s + epsilon, r, t), ph(t, c)));
                    rows.push_back(std::move(row));
                    rhs.push_back(target(r, c));
                }
        }
        // phi_{s+eps} psi_s = j_{s, s+2eps}
        for (const auto& s : w_side) {
            const Matrix& ph = phi.at(s + epsilon);
            Matrix target = w.map(s, s + 2 * epsilon);
            for (std::size_t r = 0; r < target.rows(); ++r)
                for (std::size_t c = 0; c < target.cols(); ++c) {
                    std::vector<PrimeField::Element> row(nb, 0);
                    for (std::size_t k = 0; k < nb; ++k)
                        for (std::size_t t = 0; t < ph.cols(); ++t)
                            row[k] = f.add(row[k], f.mul(ph(r, t), psi_entry(k, s, t, c)));
                    rows.push_back(std::move(row));
                    rhs.push_back(target(r, c));
                }
        }
        Matrix system(rows.size(), nb);
        for (std::size_t e = 0; e < rows.size(); ++e)
            for (std::size_t k = 0; k < nb; ++k) system(e, k) = rows[e][k];
        if (auto y = solve(f, system, rhs)) {
            std::vector<PrimeField::Element> z(psis.unknowns(), 0);
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t u = 0; u < z.size(); ++u) z[u] = f.add(z[u], f.mul((*y)[k], psis.basis()[k][u]));
            return InterleavingWitness{epsilon, std::move(phi), psis.assemble(z)};
        }

        // next coefficient vector in base p
        std::size_t k = 0;
        while (k < coeffs.size() && ++coeffs[k] == p) coeffs[k++] = 0;
        if (k == coeffs.size()) break;
    }
    return std::nullopt;
}

} // namespace barcodes
