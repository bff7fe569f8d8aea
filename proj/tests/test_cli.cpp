#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "csv.hpp"
#include "dicke/errors.hpp"
#include "dicke/thermolimit.hpp"
#include "validate.hpp"

using namespace dicke;
using namespace dicke::cli;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "dicke");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    FAIL("missing column " << name);
    return 0;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("dicke_cli_test_" + name);
}

}  // namespace

TEST_CASE("number formatting is round-trip safe and locale independent") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("grid parsing") {
    CHECK(parse_grid("0:1:0.25").size() == 5);
    CHECK(parse_grid("0.3") == std::vector<double>{0.3});
    CHECK(parse_grid("0:0.3:0.1").size() == 4);
    CHECK_THROWS_AS(parse_grid("0:1"), ValidationError);
    CHECK_THROWS_AS(parse_grid("a:b:c"), ValidationError);
    CHECK_THROWS_AS(parse_grid("0:1:0"), ValidationError);
}

TEST_CASE("sweep writes one row per grid point") {
    const auto r = invoke({"sweep", "--n", "8"});
    REQUIRE(r.code == kSuccess);
    const auto rows = parse_csv(r.out);
    CHECK(rows.size() == 102);
    const auto& header = rows[0];
    CHECK(header == observable_csv_columns());
    const auto& first = rows[1];
    CHECK(std::stod(first[column(header, "lambda")]) == 0.0);
    CHECK(std::abs(std::stod(first[column(header, "entropy")])) < 1e-12);
    CHECK(std::stod(first[column(header, "scaled_concurrence")]) == 0.0);
    const json summary = json::parse(r.err);
    CHECK(summary["failed"] == 0);
    CHECK(summary["rows"] == 101);
}

TEST_CASE("sweep JSON format, output file and summary file") {
    const auto path = temp_path("sweep.json");
    const auto r = invoke({"sweep", "--n", "4,6", "--lambda", "0.1:0.3:0.1", "--format", "json", "--out", path.string()});
    REQUIRE(r.code == kSuccess);
    std::ifstream in(path);
    const json rows = json::parse(in);
    CHECK(rows.size() == 6);
    CHECK(rows[0]["N"] == 4);
    std::ifstream sin(path.string() + ".summary.json");
    const json summary = json::parse(sin);
    CHECK(summary["convergence"].size() == 2);
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".summary.json");
}

TEST_CASE("output is byte-stable across runs and thread counts") {
    const std::vector<std::string> args{"sweep", "--n", "4,8", "--lambda", "0.2:0.8:0.2"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    setenv("DICKE_THREADS", "3", 1);
    const auto c = invoke(args);
    unsetenv("DICKE_THREADS");
    CHECK(a.code == kSuccess);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}

TEST_CASE("analytic curves") {
    SUBCASE("critical point reports a divergent entropy") {
        const auto r = invoke({"analytic", "--lambda", "0.4:0.6:0.1"});
        REQUIRE(r.code == kSuccess);
        const auto rows = parse_csv(r.out);
        REQUIRE(rows.size() == 4);
        CHECK(rows[2][column(rows[0], "entropy")] == "divergent");
        CHECK(rows[2][column(rows[0], "phase")] == "normal");
        CHECK(rows[3][column(rows[0], "phase")] == "superradiant");
    }
    SUBCASE("cat flag adds exactly one bit above lambda_c") {
        const auto plain = parse_csv(invoke({"analytic", "--lambda", "0.7"}).out);
        const auto cat = parse_csv(invoke({"analytic", "--lambda", "0.7", "--cat"}).out);
        const auto col = column(plain[0], "entropy");
        CHECK(std::stod(cat[1][col]) - std::stod(plain[1][col]) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("doubling the tracing length at lambda_c adds about one bit") {
        const auto a = parse_csv(invoke({"analytic", "--lambda", "0.5", "--cutoff-length", "1000"}).out);
        const auto b = parse_csv(invoke({"analytic", "--lambda", "0.5", "--cutoff-length", "2000"}).out);
        const auto col = column(a[0], "entropy_cutoff");
        CHECK(std::stod(b[1][col]) - std::stod(a[1][col]) == doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("default grid peaks at lambda_c") {
        const auto rows = parse_csv(invoke({"analytic"}).out);
        CHECK(rows.size() == 102);
        const auto col = column(rows[0], "concurrence");
        std::size_t best = 1;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (std::stod(rows[i][col]) > std::stod(rows[best][col])) best = i;
        }
        CHECK(std::stod(rows[best][column(rows[0], "x")]) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("JSON format") {
        const auto r = invoke({"analytic", "--lambda", "0.5", "--format", "json"});
        const json rows = json::parse(r.out);
        CHECK(rows[0]["entropy"] == "divergent");
    }
}

TEST_CASE("synthetic scaling closes the fitting loop") {
    const auto r = invoke({"scaling", "--synthetic"});
    REQUIRE(r.code == kSuccess);
    const json doc = json::parse(r.out);
    REQUIRE(doc["fits"].size() == 4);
    const double expected[] = {-0.75, 0.14, -0.68, -0.25};
    for (int i = 0; i < 4; ++i) {
        CHECK(doc["fits"][i]["exponent"].get<double>() == doctest::Approx(expected[i]).epsilon(1e-10));
        CHECK(doc["fits"][i]["samples"] == 6);
        CHECK(doc["fits"][i]["in_window"] == true);
    }
    const auto csv = parse_csv(invoke({"scaling", "--synthetic", "--format", "csv"}).out);
    CHECK(csv.size() == 5);
    CHECK(csv[0] == std::vector<std::string>{"quantity", "exponent", "stderr", "prefactor"});
}

TEST_CASE("scaling on very small systems misses the acceptance windows") {
    const auto r = invoke({"scaling", "--n", "2,3,4", "--format", "csv"});
    CHECK(r.code == kAcceptanceMiss);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[1][0] == "entropy_position");
    CHECK(std::stod(rows[1][1]) < -0.9);
}

TEST_CASE("validate passes and the negative control fails") {
    const auto r = invoke({"validate"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("FAIL") == std::string::npos);

    // Drop the J_+^2 coherence: the prescription no longer matches the partial trace.
    const TwoAtomRdmFn corrupted = [](const CollectiveExpectations& e, int n) {
        CollectiveExpectations broken = e;
        broken.jp2 = 0.0;
        return two_atom_rdm(broken, n);
    };
    const auto result = rdm_oracle_suite(corrupted);
    CHECK_FALSE(result.passed());
    CHECK(result.max_deviation > 1e-3);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).code == kConfigError);
    CHECK(invoke({"sweep", "--omega", "-1"}).code == kConfigError);
    CHECK(invoke({"sweep", "--bogus"}).code == kConfigError);
    CHECK(invoke({"sweep", "--lambda", "1:0:0.1"}).code == kConfigError);
    CHECK(invoke({"sweep", "--format", "xml"}).code == kConfigError);
    CHECK(invoke({"sweep", "--n", "0", "--lambda", "0.1"}).code == kConfigError);
    CHECK(invoke({"sweep", "--lambda", "0.1", "--out", "/nonexistent/dir/x.csv"}).code == kConfigError);
    setenv("DICKE_THREADS", "zero", 1);
    CHECK(invoke({"analytic", "--lambda", "0.1"}).code == kConfigError);
    unsetenv("DICKE_THREADS");

    const auto bad = invoke({"sweep", "--omega", "-1"});
    const json errors = json::parse(bad.err);
    CHECK(errors["errors"][0]["type"] == "validation");

    // Every row exceeds the cutoff ceiling.
    const auto numerical = invoke({"sweep", "--n", "16", "--lambda", "1.5:2:0.5", "--cutoff", "2", "--cutoff-max", "4"});
    CHECK(numerical.code == kNumericalFailure);
    CHECK(json::parse(numerical.err)["failed"] == 2);

    CHECK(invoke({"--help"}).code == kSuccess);
}

TEST_CASE("config file values are overridden by flags") {
    const auto path = temp_path("config.ini");
    {
        std::ofstream cfg(path);
        cfg << "omega = 2.0\nomega0 = 0.5\nlambda = 0.25\n";
    }
    const auto from_file = parse_csv(invoke({"analytic", "--config", path.string()}).out);
    REQUIRE(from_file.size() == 2);
    CHECK(std::stod(from_file[1][column(from_file[0], "x")]) == doctest::Approx(0.5).epsilon(1e-14));
    const auto overridden = parse_csv(invoke({"analytic", "--config", path.string(), "--omega", "0.5"}).out);
    CHECK(std::stod(overridden[1][column(overridden[0], "x")]) == doctest::Approx(1.0).epsilon(1e-14));
    std::filesystem::remove(path);
    CHECK(invoke({"analytic", "--config", "/nonexistent/config.ini"}).code == kConfigError);
}
