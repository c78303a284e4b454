#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "")
{
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = barcodes::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name)
{
    const char* dir = std::getenv("BARCODES_DATA");
    return std::string(dir ? dir : "data") + "/" + name;
}

std::string g12(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

TEST(Cli, Dist)
{
    auto r = run({"dist", data("a.bars"), data("b.bars")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "1/2\nmatch 0 2 1/2 5/2 1/2\n");

    auto s = run({"dist", "--mod-shift", "-", data("b.bars")}, "0 2 1\n");
    EXPECT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(s.out, "0\nshift 1/2\nmatch 1/2 5/2 1/2 5/2 0\n");

    auto u = run({"dist", "-", data("a.bars")}, "0 1 1\n5 inf 1\n");
    EXPECT_EQ(u.code, 0) << u.err;
    EXPECT_EQ(u.out, "inf\nmatch 0 1 0 2 1\nunmatched 1 5 inf\n");
}

TEST(Cli, GradedDistPrintsOneBlockPerDegree)
{
    auto r = run({"dist", "-", data("a.bars")}, "0 1 1 0\n");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("graded"), std::string::npos);

    auto g = run({"dist", "-", data("a.bars")}, "0 1 1 0\n0 3 1 1\n");
    EXPECT_EQ(g.code, 1);

    auto h = run({"dist", data("circle.cx"), data("a.bars")});
    EXPECT_EQ(h.code, 2);
}

TEST(Cli, Reduce)
{
    auto r = run({"reduce", data("circle.cx")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "format barcode v1\n0 inf 1 0\n1 2 1 0\n3 inf 1 1\n");

    std::ifstream f(data("circle.cx"));
    std::stringstream text;
    text << f.rdbuf();
    EXPECT_EQ(run({"reduce", "-"}, text.str()).out, r.out);
}

TEST(Cli, LowerStarOnTheTorus)
{
    auto r = run({"lowerstar", data("torus.off"), data("torus.field")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "format barcode v1\n0 inf 1 0\n1 inf 1 1\n2 inf 1 1\n3 inf 1 2\n");
    EXPECT_EQ(run({"lowerstar", data("torus.off"), data("torus.field"), "--prime", "3"}).out, r.out);
    EXPECT_EQ(run({"lowerstar", data("torus.off"), "-"}, "1\n2\n").code, 1);
    EXPECT_EQ(run({"lowerstar", data("torus.off"), data("torus.field"), "--prime", "4"}).code, 1);
}

TEST(Cli, Modules)
{
    auto b = run({"module", "beta", data("module.mod")});
    EXPECT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(b.out, "format barcode v1\n0 2 1\n1 inf 1\n");

    auto g = run({"module", "gamma", data("module.mod")});
    EXPECT_EQ(g.code, 0) << g.err;
    EXPECT_EQ(g.out.rfind("format simple v1\n", 0), 0u);
    // the simple module's homology has the same barcode
    auto h = run({"simple", "h", "-"}, g.out);
    EXPECT_EQ(h.code, 0) << h.err;
    EXPECT_EQ(run({"module", "beta", "-"}, h.out).out, b.out);

    EXPECT_EQ(run({"module", "delta", data("module.mod")}).code, 2);
}

TEST(Cli, SimpleHomologyByDegree)
{
    auto h0 = run({"simple", "h", data("simple.smp"), "--degree", "0"});
    EXPECT_EQ(h0.code, 0) << h0.err;
    EXPECT_EQ(run({"module", "beta", "-"}, h0.out).out, "format barcode v1\n0 1 1\n");
    auto h1 = run({"simple", "h", data("simple.smp"), "--degree", "1"});
    EXPECT_EQ(run({"module", "beta", "-"}, h1.out).out, "format barcode v1\n1/2 inf 1\n");
    auto all = run({"simple", "h", data("simple.smp")});
    EXPECT_EQ(run({"module", "beta", "-"}, all.out).out, "format barcode v1\n0 1 1\n1/2 inf 1\n");
}

TEST(Cli, Index)
{
    EXPECT_EQ(run({"index", "x^2+y^2"}).out, "L=1 rank=1 ok\n");
    EXPECT_EQ(run({"index", "x^2-y^2"}).out, "L=-1 rank=1 ok\n");
    EXPECT_EQ(run({"index", "x^3-3*x*y^2", "--radius", "0.05"}).out, "L=-2 rank=2 ok\n");
    EXPECT_EQ(run({"index", "x^2+z"}).code, 2);
    EXPECT_EQ(run({"index", "x", "--radius", "-1"}).code, 2);
    // a regular point
    EXPECT_EQ(run({"index", "x"}).out, "L=0 rank=0 ok\n");
}

TEST(Cli, Spectrum)
{
    auto r = run({"spectrum", "--h", "1/s", "--kmax", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    const double pi = std::numbers::pi;
    std::string want = "format spectrum v1\n";
    for (int k = 1; k <= 2; ++k) {
        double s = 1 / std::sqrt(2 * pi * k);
        want += std::to_string(k) + "\t" + g12(std::sqrt(2 * s)) + "\t" + g12(2 / s) + "\n";
    }
    EXPECT_EQ(r.out, want);
    EXPECT_EQ(run({"spectrum", "--h", "s", "--kmax", "1"}).code, 1);
    EXPECT_EQ(run({"spectrum", "--h", "1/s"}).code, 2);
    EXPECT_EQ(run({"spectrum", "--h", "1/s", "--kmax", "0"}).code, 2);
}

TEST(Cli, Endpoints)
{
    EXPECT_EQ(run({"endpoints", data("a.bars")}).out, "2\n");
    EXPECT_EQ(run({"endpoints", "-", "--period", "1"}, "0 inf 2\n").out, "2\n");
    EXPECT_EQ(run({"endpoints", "-", "--period", "0"}, "0 inf 2\n").code, 1);
    EXPECT_EQ(run({"endpoints", "-", "--period", "x"}, "0 inf 2\n").code, 2);
}

TEST(Cli, ExitCodesAndUsage)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"dist", data("a.bars"), data("b.bars"), "--bogus"}).code, 2);
    auto missing = run({"reduce", data("no-such-file.cx")});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("no-such-file"), std::string::npos);
    auto bad = run({"reduce", "-"}, "field 2\ncell 1 0 zero\n");
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("line 2"), std::string::npos);
    EXPECT_EQ(run({"reduce", "-"}, "field 2\ncell 1 0 1\ncell 2 1 0\nbdry 2 1:1\n").code, 1);
}

TEST(Cli, Deterministic)
{
    for (auto args : std::vector<std::vector<std::string>>{{"reduce", data("circle.cx")},
                                                           {"lowerstar", data("torus.off"), data("torus.field")},
                                                           {"module", "gamma", data("module.mod")}}) {
        auto a = run(args), b = run(args);
        EXPECT_EQ(a.out, b.out);
        EXPECT_EQ(a.code, 0);
    }
}
