#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "barcodes/barannikov.hpp"
#include "barcodes/barcode.hpp"
#include "barcodes/errors.hpp"
#include "barcodes/field.hpp"
#include "barcodes/module.hpp"
#include "barcodes/rational.hpp"

namespace barcodes {

struct Cell {
    std::int64_t id;
    int degree;
    Rational value;
};

/// (coefficient, index of the face in the cell list)
using Chain = std::vector<std::pair<PrimeField::Element, std::size_t>>;

/// A filtered chain complex over F_p with one generator per cell.
class FilteredComplex {
public:
    explicit FilteredComplex(PrimeField field = PrimeField(2)) : field_(field) {}

    /// Appends a cell and returns its index. Faces are given by index and must
    /// already be present.
    std::size_t add_cell(std::int64_t id, int degree, Rational value, const std::vector<std::pair<long long, std::size_t>>& boundary = {})
    {
        if (degree < 0) throw InvalidComplex("negative degree for cell " + std::to_string(id));
        if (!index_.emplace(id, cells_.size()).second) throw InvalidComplex("duplicate cell id " + std::to_string(id));
        std::map<std::size_t, PrimeField::Element> merged;
        for (const auto& [coeff, face] : boundary) {
            if (face >= cells_.size()) throw InvalidComplex("cell " + std::to_string(id) + " has an unknown face");
            merged[face] = field_.add(merged[face], field_.reduce(coeff));
        }
        Chain chain;
        for (const auto& [face, coeff] : merged) {
            if (coeff == 0) continue;
            const Cell& f = cells_[face];
            if (f.degree != degree - 1)
                throw InvalidComplex("face " + std::to_string(f.id) + " of cell " + std::to_string(id) +
                                     " is not one degree lower");
            if (f.value > value)
                throw FiltrationViolation("face " + std::to_string(f.id) + " enters after cell " + std::to_string(id));
            chain.emplace_back(coeff, face);
        }
        cells_.push_back({id, degree, std::move(value)});
        boundary_.push_back(std::move(chain));
        return cells_.size() - 1;
    }

    std::size_t index_of(std::int64_t id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) throw InvalidComplex("unknown cell id " + std::to_string(id));
        return it->second;
    }

    const PrimeField& field() const noexcept { return field_; }
    const std::vector<Cell>& cells() const noexcept { return cells_; }
    const std::vector<Chain>& boundaries() const noexcept { return boundary_; }
    std::size_t size() const noexcept { return cells_.size(); }

    int max_degree() const
    {
        int d = -1;
        for (const auto& c : cells_) d = std::max(d, c.degree);
        return d;
    }

    /// Throws BoundarySquareNonzero unless d o d = 0.
    void check_boundary_square() const
    {
        for (std::size_t k = 0; k < cells_.size(); ++k) {
            std::map<std::size_t, PrimeField::Element> acc;
            for (const auto& [c1, f1] : boundary_[k])
                for (const auto& [c2, f2] : boundary_[f1]) acc[f2] = field_.add(acc[f2], field_.mul(c1, c2));
            for (const auto& [face, coeff] : acc)
                if (coeff != 0)
                    throw BoundarySquareNonzero("boundary of the boundary of cell " + std::to_string(cells_[k].id) +
                                                " is nonzero");
        }
    }

    /// Cell indices sorted by (value, degree, input index).
    std::vector<std::size_t> filtration_order() const
    {
        std::vector<std::size_t> order(cells_.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto& ca = cells_[a];
            const auto& cb = cells_[b];
            if (ca.value != cb.value) return ca.value < cb.value;
            return ca.degree < cb.degree;
        });
        return order;
    }

private:
    PrimeField field_;
    std::vector<Cell> cells_;
    std::vector<Chain> boundary_;
    std::map<std::int64_t, std::size_t> index_;
};

struct ReductionResult {
    /// (birth cell index, death cell index), in order of the death column
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    /// cell indices that are never paired
    std::vector<std::size_t> essential;
    GradedBarcode graded_barcode;
};

/// Standard column reduction in filtration order. The pivot of a column is
/// its latest nonzero entry; a reduced column with pivot sigma pairs sigma
/// (birth) with the column's cell (death).
inline ReductionResult reduce(const FilteredComplex& fc)
{
    fc.check_boundary_square();
    const auto& f = fc.field();
    const auto order = fc.filtration_order();
    std::vector<std::size_t> position(fc.size());
    for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;

    // columns keyed by filtration position: row position -> coefficient
    std::vector<std::map<std::size_t, PrimeField::Element>> columns(fc.size());
    std::vector<std::optional<std::size_t>> pivot_owner(fc.size());  // row position -> column position
    std::vector<bool> paired(fc.size(), false);
    ReductionResult out;

    for (std::size_t j = 0; j < order.size(); ++j) {
        auto& col = columns[j];
        for (const auto& [coeff, face] : fc.boundaries()[order[j]]) col[position[face]] = coeff;
        while (!col.empty()) {
            auto [piv, coeff] = *col.rbegin();
            if (!pivot_owner[piv]) break;
            const auto& other = columns[*pivot_owner[piv]];
            auto factor = f.mul(coeff, f.inv(other.at(piv)));
            for (const auto& [row, val] : other) {
                auto nv = f.sub(col[row], f.mul(factor, val));
                if (nv == 0)
                    col.erase(row);
                else
                    col[row] = nv;
            }
        }
        if (!col.empty()) {
            std::size_t piv = col.rbegin()->first;
            pivot_owner[piv] = j;
            paired[piv] = paired[j] = true;
            out.pairs.emplace_back(order[piv], order[j]);
        }
    }
    for (std::size_t k = 0; k < order.size(); ++k)
        if (!paired[k]) out.essential.push_back(order[k]);

    const auto& cells = fc.cells();
    for (const auto& [b, d] : out.pairs)
        out.graded_barcode.add(cells[b].degree, Interval(cells[b].value, cells[d].value));
    for (auto e : out.essential)
        out.graded_barcode.add(cells[e].degree, Interval(cells[e].value, Extended::pos_inf()));
    return out;
}

/// Barannikov normal form read off a reduction: deaths are Plus, their births
/// Minus, essential cells Zero. Pairs with equal values are dropped, as their
/// bars are trivial. Generator ids are the cell ids.
inline SimpleModule to_simple_module(const FilteredComplex& fc, const ReductionResult& r)
{
    std::vector<Generator> gens;
    std::map<std::int64_t, std::int64_t> pairing;
    const auto& cells = fc.cells();
    for (const auto& [b, d] : r.pairs) {
        if (cells[b].value == cells[d].value) continue;
        gens.push_back({cells[b].id, cells[b].value, cells[b].degree, GeneratorClass::Minus});
        gens.push_back({cells[d].id, cells[d].value, cells[d].degree, GeneratorClass::Plus});
        pairing.emplace(cells[d].id, cells[b].id);
    }
    for (auto e : r.essential) gens.push_back({cells[e].id, cells[e].value, cells[e].degree, GeneratorClass::Zero});
    return SimpleModule(fc.field(), std::move(gens), std::move(pairing));
}

/// The degree-j persistence module t -> H_j(cells of value < t).
inline PersistenceModule persistence_of(const FilteredComplex& fc, int degree)
{
    return from_barcode(reduce(fc).graded_barcode.at(degree), fc.field());
}

} // namespace barcodes
