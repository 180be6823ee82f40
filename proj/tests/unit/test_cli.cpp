#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "omlbell/io.hpp"

using namespace omlbell;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ExampleReportsViolation) {
    CliRun r = run({"example1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("B2p(a1,a2,a3) variant 0: lhs 6/5, rhs 1, violated by 1/5"), std::string::npos) << r.out;
}

TEST(Cli, CheckExitCodes) {
    EXPECT_EQ(run({"check", "--map", "example1-smap", "--ineq", "B2p", "--args", "a1,a2,a3"}).code, 1);
    EXPECT_EQ(run({"check", "--map", "example1-smap", "--ineq", "B1p", "--args", "a1,a2"}).code, 0);
    EXPECT_EQ(run({"check", "--map", "example1-smap", "--ineq", "B2p", "--args", "a1,a2"}).code, 2);
    EXPECT_EQ(run({"check", "--map", "example1-smap", "--ineq", "B9", "--args", "a1"}).code, 2);
}

TEST(Cli, ScanAndAudit) {
    EXPECT_EQ(run({"scan", "--map", "example1-smap", "--ineq", "B1p"}).code, 0);
    EXPECT_EQ(run({"scan", "--map", "example1-smap", "--ineq", "B2p", "--variants"}).code, 1);
    EXPECT_EQ(run({"audit", "--map", "example1-smap"}).code, 0);
}

TEST(Cli, Validate) {
    EXPECT_EQ(run({"validate", "--lattice", "mo4"}).code, 0);
    EXPECT_EQ(run({"validate", "--map", "example1-smap"}).code, 0);
    EXPECT_EQ(run({"validate", "--lattice", "/nonexistent/lattice.json"}).code, 2);
}

TEST(Cli, UsageErrors) {
    CliRun r = run({"bogus"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"check", "--map", "example1-smap"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SamplingIsDeterministic) {
    std::vector<std::string> args{"find-smap", "--lattice", "mo2", "--count", "3", "--seed", "7"};
    CliRun a = run(args);
    CliRun b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
    CliRun c = run({"find-smap", "--lattice", "mo2", "--count", "3", "--seed", "8"});
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, MaxAndExtend) {
    CliRun m = run({"max", "--lattice", "example1", "--ineq", "B2p", "--args", "a1,a2,a3", "--commutative"});
    EXPECT_EQ(m.code, 0);
    EXPECT_NE(m.out.find("3/2"), std::string::npos) << m.out;
    CliRun d = run({"max", "--lattice", "example1", "--ineq", "B2p", "--args", "a1,a2,a3", "--commutative", "--decimal"});
    EXPECT_NE(d.out.find("1.5"), std::string::npos) << d.out;
    EXPECT_EQ(run({"extend", "--map", "example1-smap"}).code, 1);
}

TEST(Cli, OutWritesDocument) {
    auto path = std::filesystem::temp_directory_path() / "omlbell_cli_gen.json";
    std::filesystem::remove(path);
    CliRun r = run({"gen", "--lattice", "mo3", "--out", path.string()});
    EXPECT_EQ(r.code, 0);
    ASSERT_TRUE(std::filesystem::exists(path));
    EXPECT_EQ(parse_lattice(read_file(path.string())), build_mo(3));
    CliRun v = run({"validate", "--lattice", path.string()});
    EXPECT_EQ(v.code, 0);
    std::filesystem::remove(path);
}
