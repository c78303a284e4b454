#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "barcodes/barcodes.hpp"

namespace barcodes::cli {

namespace detail {

/// Opens `path`, or returns `stdin_stream` for "-".
class Input {
public:
    Input(const std::string& path, std::istream& stdin_stream) : path_(path)
    {
        if (path == "-") {
            stream_ = &stdin_stream;
            return;
        }
        file_ = std::make_unique<std::ifstream>(path);
        if (!*file_) throw FormatError("cannot open '" + path + "'");
        stream_ = file_.get();
    }
    std::istream& stream() { return *stream_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::unique_ptr<std::ifstream> file_;
    std::istream* stream_ = nullptr;
};

/// Runs a reader and prefixes format errors with the file name.
template <typename Reader>
auto read_file(const std::string& path, std::istream& in, Reader reader)
{
    Input input(path, in);
    try {
        return reader(input.stream());
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline std::string bar_text(const Interval& i) { return i.birth().str() + " " + i.death().str(); }

inline void print_certificate(std::ostream& out, const Barcode& b1, const Barcode& b2, const DistanceCertificate& cert)
{
    const auto x1 = b1.expanded();
    const auto x2 = b2.expanded();
    for (const auto& [i, j] : cert.witness.pairs)
        out << "match " << bar_text(x1[i]) << " " << bar_text(x2[j]) << " " << interval_distance(x1[i], x2[j]).str()
            << "\n";
    for (auto i : cert.witness.unmatched1) out << "unmatched 1 " << bar_text(x1[i]) << "\n";
    for (auto j : cert.witness.unmatched2) out << "unmatched 2 " << bar_text(x2[j]) << "\n";
}

inline void print_distance(std::ostream& out, const Barcode& b1, const Barcode& b2, bool mod_shift)
{
    if (mod_shift) {
        auto sd = shift_quotient_distance(ShiftClass(b1), ShiftClass(b2));
        out << sd.certificate.value.str() << "\n";
        out << "shift " << to_string(sd.shift) << "\n";
        print_certificate(out, shift(b1, sd.shift), b2, sd.certificate);
    } else {
        auto cert = bottleneck_distance(b1, b2);
        out << cert.value.str() << "\n";
        print_certificate(out, b1, b2, cert);
    }
}

inline std::string format_g(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

/// Executes one command line. Exit codes: 0 success, 1 domain error,
/// 2 format or usage error.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Barcodes, persistence modules and local fixed-point invariants"};
    app.name("barcodes-cli");
    app.require_subcommand(1);

    std::string path1, path2, mode;
    std::uint32_t prime = 2;
    bool mod_shift = false;
    std::optional<int> degree;
    double radius = 1e-2;
    std::string h_expr;
    int kmax = 0;
    double smax = 1e3;
    std::string period;

    auto* reduce_cmd = app.add_subcommand("reduce", "Graded barcode of a filtered complex");
    reduce_cmd->add_option("complex", path1, "Complex file, or - for stdin")->required();

    auto* lower_cmd = app.add_subcommand("lowerstar", "Graded barcode of a lower-star filtration");
    lower_cmd->add_option("mesh", path1, "OFF mesh")->required();
    lower_cmd->add_option("field", path2, "Scalar field, one value per vertex")->required();
    lower_cmd->add_option("--prime", prime, "Coefficient field characteristic")->capture_default_str();

    auto* dist_cmd = app.add_subcommand("dist", "Bottleneck distance with a matching certificate");
    dist_cmd->add_option("b1", path1, "First barcode")->required();
    dist_cmd->add_option("b2", path2, "Second barcode")->required();
    dist_cmd->add_flag("--mod-shift", mod_shift, "Minimize over global shifts of the first barcode");

    auto* module_cmd = app.add_subcommand("module", "Barcode (beta) or simple module (gamma) of a module");
    module_cmd->add_option("mode", mode, "beta or gamma")->required()->check(CLI::IsMember({"beta", "gamma"}));
    module_cmd->add_option("module", path1, "Module file")->required();

    auto* simple_cmd = app.add_subcommand("simple", "Persistence module H of a simple module");
    simple_cmd->add_option("mode", mode, "h")->required()->check(CLI::IsMember({"h"}));
    simple_cmd->add_option("simple", path1, "Simple module file")->required();
    simple_cmd->add_option("--degree", degree, "Restrict to one homological degree");

    auto* index_cmd = app.add_subcommand("index", "Lefschetz index and local Morse rank of a germ at the origin");
    index_cmd->add_option("germ", path1, "Expression in x and y")->required();
    index_cmd->add_option("--radius", radius, "Probe circle radius")->capture_default_str()->check(CLI::PositiveNumber);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Action values of a radial Hamiltonian h(r^2/2)");
    spectrum_cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    spectrum_cmd->add_option("--h", h_expr, "Expression in s")->required();
    spectrum_cmd->add_option("--kmax", kmax, "Largest winding k")->required()->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--smax", smax, "Upper end of the searched s range")->capture_default_str()->check(
        CLI::PositiveNumber);

    auto* endpoints_cmd = app.add_subcommand("endpoints", "Number of finite endpoints");
    endpoints_cmd->add_option("barcode", path1, "Barcode file")->required();
    endpoints_cmd->add_option("--period", period, "Treat the bars as one period of a tau-periodic barcode");

    std::vector<std::string> argv_store{"barcodes-cli"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (reduce_cmd->parsed()) {
            auto fc = detail::read_file(path1, in, [](std::istream& s) { return io::read_complex(s); });
            out << io::write_barcode(reduce(fc).graded_barcode);
        } else if (lower_cmd->parsed()) {
            auto mesh = detail::read_file(path1, in, [](std::istream& s) { return io::read_off(s); });
            auto f = detail::read_file(path2, in, [](std::istream& s) { return io::read_scalar_field(s); });
            out << io::write_barcode(reduce(lower_star(mesh, f, PrimeField(prime))).graded_barcode);
        } else if (dist_cmd->parsed()) {
            auto a = detail::read_file(path1, in, [](std::istream& s) { return io::read_barcode(s); });
            auto b = detail::read_file(path2, in, [](std::istream& s) { return io::read_barcode(s); });
            if (a.graded != b.graded) throw DomainError("one barcode is graded and the other is not");
            if (!a.graded) {
                detail::print_distance(out, a.total(), b.total(), mod_shift);
            } else {
                std::set<int> degrees;
                for (const auto& [d, bars] : a.bars.by_degree()) degrees.insert(d);
                for (const auto& [d, bars] : b.bars.by_degree()) degrees.insert(d);
                for (int d : degrees) {
                    out << "degree " << d << "\n";
                    detail::print_distance(out, a.bars.at(d), b.bars.at(d), mod_shift);
                }
            }
        } else if (module_cmd->parsed()) {
            auto v = detail::read_file(path1, in, [](std::istream& s) { return io::read_module(s); });
            out << (mode == "beta" ? io::write_barcode(beta(v)) : io::write_simple(gamma(v)));
        } else if (simple_cmd->parsed()) {
            auto c = detail::read_file(path1, in, [](std::istream& s) { return io::read_simple(s); });
            out << io::write_module(degree ? homology_functor(c, *degree) : homology_functor(c));
        } else if (index_cmd->parsed()) {
            auto germ = PlanarGerm::from_expression(path1);
            CircleSampling cs;
            cs.radius = radius;
            int l = vector_field_index(germ.hamiltonian_field(), germ.center(), cs);
            std::size_t r = local_morse_rank(germ, cs);
            out << "L=" << l << " rank=" << r << " " << (static_cast<std::size_t>(std::abs(l)) == r ? "ok" : "mismatch")
                << "\n";
        } else if (spectrum_cmd->parsed()) {
            auto rh = RadialHamiltonian::from_expression(h_expr, smax);
            out << "format spectrum v1\n";
            for (const auto& a : radial_action_spectrum(rh, kmax))
                out << a.k << "\t" << detail::format_g(a.r) << "\t" << detail::format_g(a.c) << "\n";
        } else if (endpoints_cmd->parsed()) {
            auto b = detail::read_file(path1, in, [](std::istream& s) { return io::read_barcode(s); });
            if (period.empty()) {
                out << absolute_lefschetz_from_barcode(b.total()) << "\n";
            } else {
                Rational tau = parse_rational(period);
                if (tau <= 0) throw DomainError("period must be positive");
                out << absolute_lefschetz_from_barcode(PeriodicBarcode(tau, b.total())) << "\n";
            }
        }
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace barcodes::cli
