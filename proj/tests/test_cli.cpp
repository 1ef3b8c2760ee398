#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "bagchain/json_io.hpp"
#include "bagchain/symbolic.hpp"

using namespace bagchain;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string command = std::string(BAGCHAIN_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        out.append(buffer.data(), n);
    }
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string fixture(const char* name) { return std::string(BAGCHAIN_SOURCE_DIR) + "/tests/fixtures/" + name; }
std::string golden(const char* name) { return std::string(BAGCHAIN_SOURCE_DIR) + "/tests/golden/" + name; }

Rational entry(const json& tensor, const json& index) {
    for (const auto& e : tensor.at("entries")) {
        if (e.at("index") == index) {
            return rational_from_json(e.at("value"));
        }
    }
    FAIL("index missing from tensor");
    return 0;
}

}  // namespace

TEST_CASE("expand matches golden files byte for byte") {
    CHECK(run("expand '[1,0,0]' -c 3").out == slurp(golden("expand_order1.txt")));
    CHECK(run("expand '[1,1,0]' -c 3").out == slurp(golden("expand_order2.txt")));
    CHECK(run("expand '[1,1,1]' -c 3").out == slurp(golden("expand_order3.txt")));
    CHECK(run("expand --labels 1,2,3 -c 3").out == slurp(golden("expand_order3.txt")));
}

TEST_CASE("partition counts") {
    auto r = run("partitions '[2,1]' -k 2 --counts-only");
    CHECK(r.status == 0);
    auto j = json::parse(r.out);
    CHECK(j["distinct"] == 2);
    CHECK(j["cardinality"] == "3");

    j = json::parse(run("partitions --labels 1,1,2 -k 2 --counts-only").out);
    CHECK(j["cardinality"] == "3");

    j = json::parse(run("partitions '[1]' -k 1").out);
    REQUIRE(j["entries"].size() == 1);
    CHECK(j["entries"][0]["multiplicity"] == "1");

    j = json::parse(run("partitions '[4]' -k 2 --counts-only").out);
    CHECK(j["cardinality"] == "7");
    CHECK(j["stirling2"] == "7");
}

TEST_CASE("k out of range gives an empty enumeration") {
    auto r = run("partitions '[2,1]' -k 5");
    CHECK(r.status == 0);
    CHECK(json::parse(r.out)["entries"].empty());
}

TEST_CASE("usage and input errors exit with 2") {
    CHECK(run("partitions '[2,' -k 1").status == 2);
    CHECK(run("partitions '[-1]' -k 1").status == 2);
    CHECK(run("partitions -k 1").status == 2);
    CHECK(run("expand '[0,0]' -c 2").status == 2);
    CHECK(run("faa1d 0").status == 2);
    CHECK(run("faa1d 13").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("--mode complex faa1d 3").status == 2);
    CHECK(run("compose --f " + fixture("order4_f.json") + " --g " + fixture("order4_g.json") + " -N 5").status == 2);
    CHECK(run("compose --f " + fixture("plane_f.json") + " --g " + fixture("cube_g.json") + " -N 2").status == 2);
    CHECK(run("compose --f /nonexistent.json --g " + fixture("cube_g.json") + " -N 1").status == 2);
    CHECK(run("--help").status == 0);
}

TEST_CASE("compose fixtures") {
    SUBCASE("u^2 after x^3 at 1") {
        auto r = run("compose --f " + fixture("square_f.json") + " --g " + fixture("cube_g.json") + " -N 2");
        REQUIRE(r.status == 0);
        const auto t = json::parse(r.out);
        // (x^6)'' at 1
        CHECK(entry(t, json::array({2})) == 30);
        CHECK(entry(t, json::array({1})) == 6);
    }
    SUBCASE("identity inner map echoes f") {
        auto r = run("compose --f " + fixture("plane_f.json") + " --g " + fixture("identity_g.json") + " -N 3");
        REQUIRE(r.status == 0);
        const auto f = json::parse(slurp(fixture("plane_f.json")))["components"][0];
        const auto t = json::parse(r.out);
        for (const auto& e : f["entries"]) {
            CHECK(entry(t, e["index"]) == rational_from_json(e["value"]));
        }
    }
    SUBCASE("order four in one dimension") {
        auto r = run("compose --f " + fixture("order4_f.json") + " --g " + fixture("order4_g.json") + " -N 4");
        REQUIRE(r.status == 0);
        const auto t = json::parse(r.out);
        const auto fj = json::parse(slurp(fixture("order4_f.json")))["components"][0];
        const auto gj = json::parse(slurp(fixture("order4_g.json")))["components"][0];
        for (std::size_t n = 1; n <= 4; ++n) {
            Rational expected = 0;
            for (const auto& row : faa_di_bruno_1d(n)) {
                Rational term = Rational(row.coefficient) * entry(fj, json::array({row.k}));
                for (std::size_t i = 0; i < row.m.size(); ++i) {
                    for (std::size_t p = 0; p < row.m[i]; ++p) {
                        term *= entry(gj, json::array({i + 1}));
                    }
                }
                expected += term;
            }
            CHECK(entry(t, json::array({n})) == expected);
        }
        CHECK(entry(t, json::array({4})) == Rational(1085, 48));
    }
    SUBCASE("float mode") {
        auto r = run("--mode float compose --f " + fixture("square_f.json") + " --g " + fixture("cube_g.json") +
                     " -N 2");
        REQUIRE(r.status == 0);
        const auto t = json::parse(r.out);
        CHECK(t["mode"] == "float");
        CHECK(t["entries"][2]["value"].get<double>() == 30.0);
    }
}

TEST_CASE("faa1d table") {
    auto r = run("faa1d 1 --format json");
    CHECK(json::parse(r.out).size() == 1);

    r = run("faa1d 4 --format json");
    const auto rows = json::parse(r.out);
    CHECK(rows.size() == 5);
    long sum = 0;
    for (const auto& row : rows) {
        sum += std::stol(row["coefficient"].get<std::string>());
    }
    CHECK(sum == 15);

    CHECK(run("faa1d 4").out == "k\tm\tcoefficient\n1\t0,0,0,1\t1\n2\t1,0,1,0\t4\n2\t0,2,0,0\t3\n"
                                "3\t2,1,0,0\t6\n4\t4,0,0,0\t1\n");
}

TEST_CASE("output flag and determinism") {
    const std::string path = std::string(BAGCHAIN_BINARY_DIR) + "/cli_output.json";
    std::remove(path.c_str());
    CHECK(run("--output " + path + " partitions '[2,2,1]' -k 3").status == 0);
    CHECK(slurp(path) == run("partitions '[2,2,1]' -k 3").out);
    CHECK(run("expand '[2,1]' -c 2 --format json").out == run("expand '[2,1]' -c 2 --format json").out);
}

TEST_CASE("small verify run") {
    const std::string args = "verify --trials 4 --max-order 3 --max-cardinality 4 --dims 2,2";
    auto a = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == run(args).out);
    auto j = run(args + " --format json");
    CHECK(json::parse(j.out)["passed"] == true);
    CHECK(run("verify --mode float --trials 4 --max-order 3 --max-cardinality 4").status == 0);
    CHECK(run("verify --dims 2").status == 2);
}
