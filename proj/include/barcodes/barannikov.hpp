#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "barcodes/barcode.hpp"
#include "barcodes/errors.hpp"
#include "barcodes/field.hpp"
#include "barcodes/module.hpp"
#include "barcodes/rational.hpp"

namespace barcodes {

enum class GeneratorClass : std::uint8_t { Plus, Minus, Zero };

inline const char* class_name(GeneratorClass c)
{
    switch (c) {
    case GeneratorClass::Plus: return "plus";
    case GeneratorClass::Minus: return "minus";
    default: return "zero";
    }
}

struct Generator {
    std::int64_t id;
    Rational value;
    std::optional<int> degree;
    GeneratorClass cls;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Barannikov simple module: a filtered complex with a preferred basis split
/// into B+, B-, B0 where the differential sends each B+ generator to its
/// paired B- generator and kills everything else. Generator values are the
/// filtration levels; ids are identity (values may coincide).
class SimpleModule {
public:
    SimpleModule() = default;

    SimpleModule(PrimeField field, std::vector<Generator> generators, std::map<std::int64_t, std::int64_t> pairing)
        : field_(field), generators_(std::move(generators)), pairing_(std::move(pairing))
    {
        validate();
    }

    const PrimeField& field() const noexcept { return field_; }
    const std::vector<Generator>& generators() const noexcept { return generators_; }
    /// plus id -> minus id
    const std::map<std::int64_t, std::int64_t>& pairing() const noexcept { return pairing_; }

    const Generator& generator(std::int64_t id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) throw std::out_of_range("no generator with id " + std::to_string(id));
        return generators_[it->second];
    }

    /// Id of the Minus generator paired with `plus`.
    std::int64_t boundary_of(std::int64_t plus) const { return pairing_.at(plus); }

    /// Id of the Plus generator whose boundary is `minus`.
    std::int64_t partner_of_minus(std::int64_t minus) const { return inverse_.at(minus); }

    bool graded() const
    {
        return !generators_.empty() && generators_.front().degree.has_value();
    }

    /// Sorted distinct degrees (empty when ungraded).
    std::vector<int> degrees() const
    {
        std::set<int> d;
        for (const auto& g : generators_)
            if (g.degree) d.insert(*g.degree);
        return {d.begin(), d.end()};
    }

private:
    void validate()
    {
        index_.clear();
        inverse_.clear();
        std::optional<bool> has_degrees;
        for (std::size_t k = 0; k < generators_.size(); ++k) {
            const auto& g = generators_[k];
            if (!index_.emplace(g.id, k).second) throw DomainError("duplicate generator id " + std::to_string(g.id));
            if (has_degrees && *has_degrees != g.degree.has_value())
                throw DomainError("either all generators carry a degree or none does");
            has_degrees = g.degree.has_value();
        }
        std::size_t plus_count = 0, minus_count = 0;
        for (const auto& g : generators_) {
            if (g.cls == GeneratorClass::Plus) ++plus_count;
            if (g.cls == GeneratorClass::Minus) ++minus_count;
        }
        if (pairing_.size() != plus_count || plus_count != minus_count)
            throw DomainError("the differential must pair every plus generator with exactly one minus generator");
        for (const auto& [p, m] : pairing_) {
            auto pi = index_.find(p), mi = index_.find(m);
            if (pi == index_.end() || mi == index_.end()) throw DomainError("pairing refers to an unknown generator");
            const auto& gp = generators_[pi->second];
            const auto& gm = generators_[mi->second];
            if (gp.cls != GeneratorClass::Plus || gm.cls != GeneratorClass::Minus)
                throw DomainError("pairing must go from a plus to a minus generator");
            if (!inverse_.emplace(m, p).second) throw DomainError("minus generator paired twice");
            if (gp.value <= gm.value)
                throw DomainError("plus generator " + std::to_string(p) + " must have a larger value than its partner");
            if (gp.degree && *gp.degree != *gm.degree + 1)
                throw DomainError("plus generator " + std::to_string(p) + " must sit one degree above its partner");
        }
    }

    PrimeField field_;
    std::vector<Generator> generators_;
    std::map<std::int64_t, std::int64_t> pairing_;
    std::map<std::int64_t, std::size_t> index_;
    std::map<std::int64_t, std::int64_t> inverse_;
};

namespace detail {

inline void append_bar_generators(const Interval& bar, std::optional<int> degree, std::int64_t& next_id,
                                  std::vector<Generator>& gens, std::map<std::int64_t, std::int64_t>& pairing)
{
    if (bar.birth().is_neg_inf())
        throw DomainError("alpha: bars born at -inf have no representable generator");
    if (bar.death().is_pos_inf()) {
        gens.push_back({next_id++, bar.birth().value(), degree, GeneratorClass::Zero});
        return;
    }
    const std::int64_t minus = next_id++;
    const std::int64_t plus = next_id++;
    gens.push_back({minus, bar.birth().value(), degree, GeneratorClass::Minus});
    std::optional<int> up = degree ? std::optional<int>(*degree + 1) : std::nullopt;
    gens.push_back({plus, bar.death().value(), up, GeneratorClass::Plus});
    pairing.emplace(plus, minus);
}

} // namespace detail

/// The functor alpha. Bar copies are visited in canonical order and receive
/// consecutive ids starting at 0: a finite bar (a,b] gives Minus a and Plus b
/// with d(b) = a; an infinite bar (a,inf] gives Zero a.
inline SimpleModule alpha(const Barcode& b, PrimeField field = PrimeField(2))
{
    std::vector<Generator> gens;
    std::map<std::int64_t, std::int64_t> pairing;
    std::int64_t next = 0;
    for (const auto& bar : b.expanded()) detail::append_bar_generators(bar, std::nullopt, next, gens, pairing);
    return SimpleModule(field, std::move(gens), std::move(pairing));
}

/// Graded alpha: a bar in degree j gives its Minus/Zero generator in degree j
/// and its Plus generator in degree j + 1.
inline SimpleModule alpha(const GradedBarcode& gb, PrimeField field = PrimeField(2))
{
    std::vector<Generator> gens;
    std::map<std::int64_t, std::int64_t> pairing;
    std::int64_t next = 0;
    for (const auto& [d, b] : gb.by_degree())
        for (const auto& bar : b.expanded()) detail::append_bar_generators(bar, d, next, gens, pairing);
    return SimpleModule(field, std::move(gens), std::move(pairing));
}

namespace detail {

/// H(C^s) for the sub-collection of generators selected by `in_scope`
/// (Zero/Minus classes) and their Plus partners. A class born at value a and
/// killed at value b is alive for a < s <= b.
template <typename Pred>
PersistenceModule homology_of(const SimpleModule& c, Pred in_scope)
{
    struct ClassSpan {
        Rational birth;
        std::optional<Rational> death;
        std::int64_t id;
    };
    std::vector<ClassSpan> classes;
    std::set<Rational> values;
    for (const auto& g : c.generators()) {
        if (!in_scope(g) || g.cls == GeneratorClass::Plus) continue;
        ClassSpan span{g.value, std::nullopt, g.id};
        if (g.cls == GeneratorClass::Minus) span.death = c.generator(c.partner_of_minus(g.id)).value;
        values.insert(span.birth);
        if (span.death) values.insert(*span.death);
        classes.push_back(std::move(span));
    }
    std::sort(classes.begin(), classes.end(), [](const ClassSpan& a, const ClassSpan& b) {
        return a.birth != b.birth ? a.birth < b.birth : a.id < b.id;
    });
    std::vector<Rational> critical(values.begin(), values.end());
    const std::size_t slots = critical.size() + 1;

    std::vector<std::vector<std::size_t>> basis(slots);
    for (std::size_t k = 0; k < slots; ++k) {
        if (k == 0) continue;  // nothing is alive before the first value
        const Rational& left = critical[k - 1];
        for (std::size_t n = 0; n < classes.size(); ++n) {
            const auto& cl = classes[n];
            bool born = cl.birth <= left;
            bool dead = cl.death && *cl.death <= left;
            if (born && !dead) basis[k].push_back(n);
        }
    }
    std::vector<std::size_t> dims(slots);
    for (std::size_t k = 0; k < slots; ++k) dims[k] = basis[k].size();
    std::vector<Matrix> transitions;
    for (std::size_t k = 1; k < slots; ++k) {
        // crossing a Minus/Zero value injects its class, crossing a Plus value
        // projects out its partner's class
        Matrix t(dims[k], dims[k - 1]);
        for (std::size_t col = 0; col < basis[k - 1].size(); ++col) {
            auto it = std::find(basis[k].begin(), basis[k].end(), basis[k - 1][col]);
            if (it != basis[k].end()) t(static_cast<std::size_t>(it - basis[k].begin()), col) = 1;
        }
        transitions.push_back(std::move(t));
    }
    return PersistenceModule(c.field(), std::move(critical), std::move(dims), std::move(transitions));
}

} // namespace detail

/// The functor H: s -> H(C^s, d) where C^s is spanned by the generators of
/// value < s. Degrees, if present, are ignored (total homology).
inline PersistenceModule homology_functor(const SimpleModule& c)
{
    return detail::homology_of(c, [](const Generator&) { return true; });
}

/// Degree-j part of H for a graded simple module.
inline PersistenceModule homology_functor(const SimpleModule& c, int degree)
{
    if (!c.generators().empty() && !c.graded())
        throw DomainError("homology in a fixed degree needs a graded simple module");
    return detail::homology_of(c, [degree](const Generator& g) { return g.degree && *g.degree == degree; });
}

inline std::map<int, PersistenceModule> homology_by_degree(const SimpleModule& c)
{
    std::map<int, PersistenceModule> out;
    for (int d : c.degrees()) {
        auto m = homology_functor(c, d);
        if (m.total_dimension() > 0) out.emplace(d, std::move(m));
    }
    return out;
}

/// gamma = alpha o beta.
inline SimpleModule gamma(const PersistenceModule& v) { return alpha(beta(v), v.field()); }

/// dim H(C^t, d).
inline std::size_t filtered_homology_dims(const SimpleModule& c, const Rational& t)
{
    return homology_functor(c).evaluate(t);
}

/// Relabeling-invariant summary: per-class value multisets and the multiset
/// of (plus value, minus value) pairs, each with degrees.
struct SimpleModuleShape {
    std::multiset<std::pair<std::optional<int>, Rational>> zero;
    std::multiset<std::tuple<std::optional<int>, Rational, Rational>> pairs;

    friend bool operator==(const SimpleModuleShape&, const SimpleModuleShape&) = default;
};

inline SimpleModuleShape shape_of(const SimpleModule& c)
{
    SimpleModuleShape s;
    for (const auto& g : c.generators())
        if (g.cls == GeneratorClass::Zero) s.zero.emplace(g.degree, g.value);
    for (const auto& [p, m] : c.pairing()) {
        const auto& gm = c.generator(m);
        s.pairs.emplace(gm.degree, c.generator(p).value, gm.value);
    }
    return s;
}

/// Equal up to relabeling of generator ids.
inline bool equivalent(const SimpleModule& a, const SimpleModule& b)
{
    return a.field() == b.field() && shape_of(a) == shape_of(b);
}

} // namespace barcodes
