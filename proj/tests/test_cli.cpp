#include "burnback/cli.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace burnback;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "burnback");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    const auto parsed = cli::parse_args(static_cast<int>(argv.size()), argv.data(), out, err);
    if (!parsed.spec) {
        r.code = parsed.exit_code;
    } else {
        r.code = cli::run(*parsed.spec, out, err);
    }
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / ("burnback_cli_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

cli::RunSpec parse_ok(std::vector<std::string> args) {
    args.insert(args.begin(), "burnback");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const auto parsed = cli::parse_args(static_cast<int>(argv.size()), argv.data(), out, err);
    REQUIRE(parsed.spec);
    return *parsed.spec;
}

} // namespace

TEST_CASE("parse star neutral") {
    const auto spec = parse_ok({"star", "neutral", "--n", "5"});
    CHECK(spec.command == "star neutral");
    REQUIRE(spec.n_tips.size() == 1);
    CHECK(spec.n_tips[0] == 5);
}

TEST_CASE("parse solve fills defaults") {
    TempDir dir;
    std::ofstream(dir / "m.txt") << "x";
    const auto spec = parse_ok({"solve", "--mesh", dir / "m.txt", "--rate", "1.0", "--out", "s.csv"});
    CHECK(spec.command == "solve");
    CHECK(spec.rate == 1.0);
    CHECK(spec.out_path == "s.csv");
    CHECK(spec.cfl == 0.9);
    CHECK(spec.tol == 1e-6);
    CHECK(spec.diffusion == "local");
    CHECK(spec.free_bc == "linear");
    CHECK(cli::dump(spec).find("\"command\": \"solve\"") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    const auto bogus = call({"bogus"});
    CHECK(bogus.code == 2);
    CHECK(bogus.err.find("Usage") != std::string::npos);
    CHECK(call({}).code == 2);
    CHECK(call({"star", "neutral", "--bogus"}).code == 2);
    CHECK(call({"solve", "--out", "x.csv"}).code == 2);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("star neutral prints table angles") {
    const auto r = call({"star", "neutral", "--n", "5"});
    CHECK(r.code == 0);
    // 31.129 rounds up; the published table lists 31.12.
    CHECK(r.out.find("31.13") != std::string::npos);
    const auto all = call({"star", "neutral", "--n", "4", "5", "6", "7", "8"});
    for (const char* v : {"28.22", "31.13", "33.53", "35.56", "37.31"}) CHECK(all.out.find(v) != std::string::npos);
    CHECK(call({"star", "neutral", "--n", "3"}).code == 1);
}

TEST_CASE("bistar design and interface") {
    const auto r = call({"bistar", "design", "--n", "4", "--rc", "1.0", "--rf", "0.1", "--d", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("f     = 1.592") != std::string::npos);
    const auto bad = call({"bistar", "design", "--n", "4", "--rc", "0.5", "--rf", "0.1", "--d", "0.5"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("bistar design") != std::string::npos);

    const auto iface = call({"bistar", "interface", "--samples", "5"});
    CHECK(iface.code == 0);
    CHECK(iface.out.rfind("y,r1,theta1,r2,theta2\n", 0) == 0);
    CHECK(std::count(iface.out.begin(), iface.out.end(), '\n') == 6);
}

TEST_CASE("mesh, solve, curves and contours pipeline is reproducible") {
    TempDir dir;
    REQUIRE(call({"mesh", "gen", "--shape", "rect", "--nx", "12", "--ny", "12", "--out", dir / "m.txt"}).code == 0);
    const auto info = call({"mesh", "info", "--mesh", dir / "m.txt"});
    CHECK(info.code == 0);
    CHECK(info.out.find("nodes          169") != std::string::npos);

    for (const char* tag : {"a", "b"}) {
        const std::string t = tag;
        REQUIRE(call({"solve", "--mesh", dir / "m.txt", "--out", dir / ("s" + t + ".csv")}).code == 0);
        REQUIRE(call({"curves", "--mesh", dir / "m.txt", "--field", dir / ("s" + t + ".csv"), "--tau-steps", "5",
                      "--out", dir / ("c" + t + ".csv")})
                    .code == 0);
        REQUIRE(call({"contours", "--mesh", dir / "m.txt", "--field", dir / ("s" + t + ".csv"), "--levels", "0.25",
                      "0.5", "--out", dir / ("i" + t + ".svg")})
                    .code == 0);
    }
    CHECK(slurp(dir / "sa.csv") == slurp(dir / "sb.csv"));
    CHECK(slurp(dir / "ca.csv") == slurp(dir / "cb.csv"));
    CHECK(slurp(dir / "ia.svg") == slurp(dir / "ib.svg"));
    CHECK(slurp(dir / "ca.csv").rfind("tau,P_b,A_p,A_eq\n", 0) == 0);
}

TEST_CASE("bipropellant rates file feeds solve and curves") {
    TempDir dir;
    REQUIRE(call({"mesh", "gen", "--shape", "bistar", "--nx", "8", "--ny", "20", "--out", dir / "m.txt",
                  "--rates-out", dir / "r.csv"})
                .code == 0);
    CHECK(slurp(dir / "r.csv").rfind("node,rate,label\n", 0) == 0);
    REQUIRE(call({"solve", "--mesh", dir / "m.txt", "--rates", dir / "r.csv", "--out", dir / "s.csv"}).code == 0);
    const auto c = call({"curves", "--mesh", dir / "m.txt", "--field", dir / "s.csv", "--rates", dir / "r.csv",
                         "--f", "1.592", "--grain-length", "3", "--out", dir / "c.csv"});
    CHECK(c.code == 0);
    CHECK(slurp(dir / "c.csv").rfind("tau,P_b,A_p,A_eq,A_b\n", 0) == 0);
}

TEST_CASE("numeric failures exit 1") {
    TempDir dir;
    REQUIRE(call({"mesh", "gen", "--nx", "10", "--ny", "10", "--out", dir / "m.txt"}).code == 0);
    const auto r = call({"solve", "--mesh", dir / "m.txt", "--max-steps", "3", "--out", dir / "s.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.find("not converged") != std::string::npos);
    std::ofstream(dir / "broken.txt") << "1 3 0\n0 0 1\n";
    const auto broken = call({"mesh", "info", "--mesh", dir / "broken.txt"});
    CHECK(broken.code == 1);
    CHECK(broken.err.find("parse error") != std::string::npos);
}

TEST_CASE("verify slot error shrinks with four times the nodes") {
    auto max_error = [](const std::string& out) {
        const auto at = out.find("max |e|  = ");
        REQUIRE(at != std::string::npos);
        return std::stod(out.substr(at + 11));
    };
    const auto coarse = call({"verify", "slot", "--nodes", "2500"});
    const auto fine = call({"verify", "slot", "--nodes", "10000"});
    CHECK(coarse.out.find("threshold 1.000 %") != std::string::npos);
    CHECK((coarse.code == 0) == (max_error(coarse.out) < 1.0));
    CHECK(max_error(fine.out) < max_error(coarse.out));
    CHECK(call({"verify", "slot", "--nodes", "2500", "--threshold", "0.02"}).code == 0);
}
