#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "barcodes/barannikov.hpp"
#include "barcodes/barcode.hpp"
#include "barcodes/complex.hpp"
#include "barcodes/errors.hpp"
#include "barcodes/field.hpp"
#include "barcodes/lower_star.hpp"
#include "barcodes/module.hpp"
#include "barcodes/rational.hpp"

namespace barcodes::io {

/// A whitespace-tokenized, comment-stripped line with its 1-based number.
struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

namespace detail {

inline std::vector<Line> tokenize(std::istream& in)
{
    std::vector<Line> out;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        Line line{number, {}};
        for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    if (in.bad()) throw FormatError("read error");
    return out;
}

/// Drops an optional leading `format <name> v1` line; a header naming a
/// different format or version is an error.
inline std::vector<Line> read_body(std::istream& in, std::string_view name)
{
    auto lines = tokenize(in);
    if (!lines.empty() && lines.front().tokens[0] == "format") {
        const auto& h = lines.front();
        if (h.tokens.size() != 3 || h.tokens[1] != name || h.tokens[2] != "v1")
            throw FormatError("expected header 'format " + std::string(name) + " v1'", h.number);
        lines.erase(lines.begin());
    }
    return lines;
}

inline std::string header(std::string_view name) { return "format " + std::string(name) + " v1\n"; }

inline long long parse_integer(const std::string& tok, std::size_t line)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || tok.empty()) throw FormatError("expected an integer, got '" + tok + "'", line);
    return v;
}

inline std::size_t parse_count(const std::string& tok, std::size_t line)
{
    long long v = parse_integer(tok, line);
    if (v < 0) throw FormatError("expected a nonnegative integer, got '" + tok + "'", line);
    return static_cast<std::size_t>(v);
}

inline void expect_arity(const Line& l, std::size_t lo, std::size_t hi)
{
    if (l.tokens.size() < lo || l.tokens.size() > hi)
        throw FormatError("'" + l.tokens[0] + "' line has " + std::to_string(l.tokens.size()) + " fields", l.number);
}

inline PrimeField parse_field_line(const Line& l)
{
    expect_arity(l, 2, 2);
    auto p = parse_integer(l.tokens[1], l.number);
    if (p < 2 || p > 46337) throw FormatError("unsupported field characteristic " + l.tokens[1], l.number);
    return PrimeField(static_cast<std::uint32_t>(p));
}

} // namespace detail

// ---------------------------------------------------------------- barcodes

struct BarcodeFile {
    GradedBarcode bars;
    bool graded = false;  // every line carried a degree

    /// The single barcode of an ungraded file, or the total barcode.
    Barcode total() const { return bars.total(); }
};

inline BarcodeFile read_barcode(std::istream& in)
{
    BarcodeFile out;
    std::optional<bool> graded;
    for (const auto& l : detail::read_body(in, "barcode")) {
        if (l.tokens.size() != 3 && l.tokens.size() != 4)
            throw FormatError("expected 'birth death multiplicity [degree]'", l.number);
        bool has_degree = l.tokens.size() == 4;
        if (graded && *graded != has_degree) throw FormatError("degree given on some lines but not others", l.number);
        graded = has_degree;
        Extended b = parse_extended(l.tokens[0], l.number);
        Extended d = parse_extended(l.tokens[1], l.number);
        std::size_t m = detail::parse_count(l.tokens[2], l.number);
        int degree = has_degree ? static_cast<int>(detail::parse_integer(l.tokens[3], l.number)) : 0;
        out.bars.add(degree, Interval(b, d), m);
    }
    out.graded = graded.value_or(false);
    return out;
}

inline std::string write_barcode(const Barcode& b)
{
    std::string out = detail::header("barcode");
    for (const auto& [i, m] : b.entries())
        out += i.birth().str() + " " + i.death().str() + " " + std::to_string(m) + "\n";
    return out;
}

inline std::string write_barcode(const GradedBarcode& gb)
{
    std::vector<std::tuple<Interval, int, std::size_t>> rows;
    for (const auto& [d, b] : gb.by_degree())
        for (const auto& [i, m] : b.entries()) rows.emplace_back(i, d, m);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    std::string out = detail::header("barcode");
    for (const auto& [i, d, m] : rows)
        out += i.birth().str() + " " + i.death().str() + " " + std::to_string(m) + " " + std::to_string(d) + "\n";
    return out;
}

// ---------------------------------------------------------------- modules

inline PersistenceModule read_module(std::istream& in)
{
    auto lines = detail::read_body(in, "module");
    std::optional<PrimeField> field;
    std::optional<std::vector<Rational>> critical;
    std::optional<std::vector<std::size_t>> dims;
    std::map<std::size_t, Matrix> matrices;

    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto& l = lines[k];
        const auto& key = l.tokens[0];
        if (key == "field") {
            if (field) throw FormatError("repeated 'field' line", l.number);
            field = detail::parse_field_line(l);
        } else if (key == "critical") {
            if (critical) throw FormatError("repeated 'critical' line", l.number);
            critical.emplace();
            for (std::size_t t = 1; t < l.tokens.size(); ++t) critical->push_back(parse_rational(l.tokens[t], l.number));
        } else if (key == "dims") {
            if (dims) throw FormatError("repeated 'dims' line", l.number);
            dims.emplace();
            for (std::size_t t = 1; t < l.tokens.size(); ++t) dims->push_back(detail::parse_count(l.tokens[t], l.number));
        } else if (key == "matrix") {
            if (!field || !critical || !dims) throw FormatError("'matrix' before field, critical and dims", l.number);
            detail::expect_arity(l, 2, 2);
            std::size_t i = detail::parse_count(l.tokens[1], l.number);
            if (i == 0 || i >= dims->size()) throw FormatError("matrix index out of range", l.number);
            if (matrices.count(i)) throw FormatError("repeated matrix " + std::to_string(i), l.number);
            std::size_t rows = (*dims)[i], cols = (*dims)[i - 1];
            Matrix m(rows, cols);
            if (cols > 0) {
                for (std::size_t r = 0; r < rows; ++r) {
                    if (++k >= lines.size()) throw FormatError("matrix " + std::to_string(i) + " is missing rows", l.number);
                    const auto& row = lines[k];
                    if (row.tokens.size() != cols)
                        throw FormatError("matrix row needs " + std::to_string(cols) + " entries", row.number);
                    for (std::size_t c = 0; c < cols; ++c)
                        m(r, c) = field->reduce(detail::parse_integer(row.tokens[c], row.number));
                }
            }
            matrices.emplace(i, std::move(m));
        } else {
            throw FormatError("unknown keyword '" + key + "'", l.number);
        }
    }
    if (!field) throw FormatError("missing 'field' line");
    if (!critical) critical.emplace();
    if (!dims) throw FormatError("missing 'dims' line");
    if (dims->size() != critical->size() + 1)
        throw FormatError("'dims' needs one entry more than 'critical'");
    std::vector<Matrix> transitions;
    for (std::size_t i = 1; i < dims->size(); ++i) {
        auto it = matrices.find(i);
        if (it != matrices.end()) {
            transitions.push_back(it->second);
        } else if ((*dims)[i] == 0 || (*dims)[i - 1] == 0) {
            transitions.emplace_back((*dims)[i], (*dims)[i - 1]);
        } else {
            throw FormatError("missing matrix " + std::to_string(i));
        }
    }
    return PersistenceModule(*field, std::move(*critical), std::move(*dims), std::move(transitions));
}

inline std::string write_module(const PersistenceModule& v)
{
    std::string out = detail::header("module");
    out += "field " + std::to_string(v.field().characteristic()) + "\n";
    out += "critical";
    for (const auto& c : v.critical()) out += " " + to_string(c);
    out += "\ndims";
    for (auto d : v.dims()) out += " " + std::to_string(d);
    out += "\n";
    for (std::size_t i = 0; i < v.transitions().size(); ++i) {
        const auto& m = v.transitions()[i];
        out += "matrix " + std::to_string(i + 1) + "\n";
        if (m.cols() == 0) continue;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? " " : "") + std::to_string(m(r, c));
            out += "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------- simple modules

inline SimpleModule read_simple(std::istream& in)
{
    std::optional<PrimeField> field;
    std::vector<Generator> gens;
    std::map<std::int64_t, std::int64_t> pairing;
    for (const auto& l : detail::read_body(in, "simple")) {
        const auto& key = l.tokens[0];
        if (key == "field") {
            if (field) throw FormatError("repeated 'field' line", l.number);
            field = detail::parse_field_line(l);
        } else if (key == "gen") {
            detail::expect_arity(l, 4, 5);
            Generator g{detail::parse_integer(l.tokens[1], l.number), parse_rational(l.tokens[2], l.number),
                        std::nullopt, GeneratorClass::Zero};
            std::string cls = l.tokens[3];
            std::transform(cls.begin(), cls.end(), cls.begin(), [](unsigned char c) { return std::tolower(c); });
            if (cls == "plus" || cls == "+")
                g.cls = GeneratorClass::Plus;
            else if (cls == "minus" || cls == "-")
                g.cls = GeneratorClass::Minus;
            else if (cls == "zero" || cls == "0")
                g.cls = GeneratorClass::Zero;
            else
                throw FormatError("unknown generator class '" + l.tokens[3] + "'", l.number);
            if (l.tokens.size() == 5) g.degree = static_cast<int>(detail::parse_integer(l.tokens[4], l.number));
            gens.push_back(std::move(g));
        } else if (key == "pair") {
            detail::expect_arity(l, 3, 3);
            auto plus = detail::parse_integer(l.tokens[1], l.number);
            if (!pairing.emplace(plus, detail::parse_integer(l.tokens[2], l.number)).second)
                throw FormatError("generator " + l.tokens[1] + " paired twice", l.number);
        } else {
            throw FormatError("unknown keyword '" + key + "'", l.number);
        }
    }
    if (!field) throw FormatError("missing 'field' line");
    return SimpleModule(*field, std::move(gens), std::move(pairing));
}

inline std::string write_simple(const SimpleModule& c)
{
    std::string out = detail::header("simple");
    out += "field " + std::to_string(c.field().characteristic()) + "\n";
    auto gens = c.generators();
    std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) { return a.id < b.id; });
    for (const auto& g : gens) {
        out += "gen " + std::to_string(g.id) + " " + to_string(g.value) + " " + class_name(g.cls);
        if (g.degree) out += " " + std::to_string(*g.degree);
        out += "\n";
    }
    for (const auto& [plus, minus] : c.pairing()) out += "pair " + std::to_string(plus) + " " + std::to_string(minus) + "\n";
    return out;
}

// ---------------------------------------------------------------- complexes

/// Cells may be listed in any order; they are inserted by ascending degree
/// (stable within a degree), so faces always precede their cofaces.
inline FilteredComplex read_complex(std::istream& in)
{
    struct RawCell {
        std::int64_t id;
        int degree;
        Rational value;
        std::size_t line;
    };
    std::optional<PrimeField> field;
    std::vector<RawCell> cells;
    std::map<std::int64_t, std::vector<std::pair<long long, std::int64_t>>> bdry;
    std::map<std::int64_t, std::size_t> bdry_line;
    for (const auto& l : detail::read_body(in, "complex")) {
        const auto& key = l.tokens[0];
        if (key == "field") {
            if (field) throw FormatError("repeated 'field' line", l.number);
            field = detail::parse_field_line(l);
        } else if (key == "cell") {
            detail::expect_arity(l, 4, 4);
            auto degree = detail::parse_integer(l.tokens[2], l.number);
            if (degree < 0) throw FormatError("negative cell degree", l.number);
            cells.push_back({detail::parse_integer(l.tokens[1], l.number), static_cast<int>(degree),
                             parse_rational(l.tokens[3], l.number), l.number});
        } else if (key == "bdry") {
            detail::expect_arity(l, 2, static_cast<std::size_t>(-1));
            auto id = detail::parse_integer(l.tokens[1], l.number);
            if (bdry.count(id)) throw FormatError("repeated boundary for cell " + l.tokens[1], l.number);
            auto& chain = bdry[id];
            bdry_line[id] = l.number;
            for (std::size_t t = 2; t < l.tokens.size(); ++t) {
                const auto& term = l.tokens[t];
                auto colon = term.find(':');
                if (colon == std::string::npos) throw FormatError("boundary term '" + term + "' is not coeff:face", l.number);
                chain.emplace_back(detail::parse_integer(term.substr(0, colon), l.number),
                                   detail::parse_integer(term.substr(colon + 1), l.number));
            }
        } else {
            throw FormatError("unknown keyword '" + key + "'", l.number);
        }
    }
    if (!field) throw FormatError("missing 'field' line");
    std::stable_sort(cells.begin(), cells.end(), [](const RawCell& a, const RawCell& b) { return a.degree < b.degree; });

    FilteredComplex fc(*field);
    std::map<std::int64_t, std::size_t> known;
    for (const auto& c : cells) {
        if (known.count(c.id)) throw FormatError("duplicate cell id " + std::to_string(c.id), c.line);
        std::vector<std::pair<long long, std::size_t>> chain;
        if (auto it = bdry.find(c.id); it != bdry.end()) {
            for (const auto& [coeff, face] : it->second) {
                auto f = known.find(face);
                if (f == known.end())
                    throw FormatError("boundary of cell " + std::to_string(c.id) + " names unknown or non-face cell " +
                                          std::to_string(face),
                                      bdry_line[c.id]);
                chain.emplace_back(coeff, f->second);
            }
        }
        known[c.id] = fc.add_cell(c.id, c.degree, c.value, chain);
    }
    for (const auto& [id, line] : bdry_line)
        if (!known.count(id)) throw FormatError("boundary given for unknown cell " + std::to_string(id), line);
    return fc;
}

inline std::string write_complex(const FilteredComplex& fc)
{
    std::string out = detail::header("complex");
    out += "field " + std::to_string(fc.field().characteristic()) + "\n";
    const auto& cells = fc.cells();
    for (const auto& c : cells)
        out += "cell " + std::to_string(c.id) + " " + std::to_string(c.degree) + " " + to_string(c.value) + "\n";
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (fc.boundaries()[k].empty()) continue;
        out += "bdry " + std::to_string(cells[k].id);
        for (const auto& [coeff, face] : fc.boundaries()[k])
            out += " " + std::to_string(coeff) + ":" + std::to_string(cells[face].id);
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------- meshes

/// OFF subset: `OFF`, `V F E`, V coordinate lines (ignored), F lines `3 i j k`.
inline TriangulatedSurface read_off(std::istream& in)
{
    auto lines = detail::tokenize(in);
    if (lines.empty() || lines[0].tokens.size() != 1 || lines[0].tokens[0] != "OFF")
        throw FormatError("expected 'OFF' on the first line", lines.empty() ? 0 : lines[0].number);
    if (lines.size() < 2 || lines[1].tokens.size() < 2 || lines[1].tokens.size() > 3)
        throw FormatError("expected a 'vertices faces [edges]' count line", lines.size() < 2 ? 0 : lines[1].number);
    std::size_t nv = detail::parse_count(lines[1].tokens[0], lines[1].number);
    std::size_t nf = detail::parse_count(lines[1].tokens[1], lines[1].number);
    if (lines.size() != 2 + nv + nf)
        throw FormatError("expected " + std::to_string(nv) + " vertex and " + std::to_string(nf) + " face lines");
    for (std::size_t k = 0; k < nv; ++k) {
        const auto& l = lines[2 + k];
        if (l.tokens.size() < 2 || l.tokens.size() > 3) throw FormatError("vertex line needs 2 or 3 coordinates", l.number);
        for (const auto& t : l.tokens)
            if (!try_parse_rational(t)) throw FormatError("bad coordinate '" + t + "'", l.number);
    }
    std::vector<TriangulatedSurface::Triangle> tris;
    for (std::size_t k = 0; k < nf; ++k) {
        const auto& l = lines[2 + nv + k];
        if (l.tokens.size() != 4 || l.tokens[0] != "3") throw FormatError("only triangles '3 i j k' are supported", l.number);
        TriangulatedSurface::Triangle t{};
        for (int c = 0; c < 3; ++c) {
            t[c] = detail::parse_count(l.tokens[c + 1], l.number);
            if (t[c] >= nv) throw FormatError("vertex index " + l.tokens[c + 1] + " out of range", l.number);
        }
        tris.push_back(t);
    }
    return TriangulatedSurface(nv, std::move(tris));
}

/// One rational per line, in vertex order.
inline ScalarField read_scalar_field(std::istream& in)
{
    ScalarField out;
    for (const auto& l : detail::read_body(in, "field")) {
        if (l.tokens.size() != 1) throw FormatError("expected one value per line", l.number);
        out.push_back(parse_rational(l.tokens[0], l.number));
    }
    return out;
}

} // namespace barcodes::io
