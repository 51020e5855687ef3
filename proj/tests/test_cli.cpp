#include "cli.hpp"
#include "support.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace casimir;
using namespace casimir::cli;
namespace mp = boost::multiprecision;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = main_entry(args, out, err);
    set_working_digits(kDefaultDigits);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

// Header line followed by rows, each split into fields.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    for (const std::string& line : split(text, '\n')) {
        if (!line.empty()) rows.push_back(split(line, ','));
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

// Unsets CASIMIR_PRECISION for the lifetime of the guard.
struct EnvGuard {
    EnvGuard() { unsetenv("CASIMIR_PRECISION"); }
    ~EnvGuard() {
        unsetenv("CASIMIR_PRECISION");
        set_working_digits(kDefaultDigits);
    }
};

}  // namespace

TEST_CASE("parse_args defaults") {
    EnvGuard env;
    const ScanConfig c = parse_args({"pressure", "--a", "1.0", "--lambda", "0.0", "--field", "em"});
    CHECK(c.command == Command::pressure);
    CHECK(c.format == OutputFormat::csv);
    CHECK(c.precision == 50);
    CHECK(c.field == FieldKind::em);
    REQUIRE(c.a.size() == 1);
    CHECK(c.a[0] == 1);
    CHECK(c.seed == 0);
    CHECK_FALSE(c.output.has_value());
    CHECK(c.output_digits() >= 30);
}

TEST_CASE("lambda outside [0,1) is a usage error") {
    EnvGuard env;
    try {
        parse_args({"energy-sum", "--a", "1", "--lambda", "1.2", "--epsilon", "0.1"});
        FAIL("expected a usage error");
    } catch (const UsageError& e) {
        const std::string message = e.what();
        CHECK(message.find("--lambda") != std::string::npos);
        CHECK(message.find("lambda out of [0,1)") != std::string::npos);
    }
    const Result r = invoke({"energy-sum", "--a", "1", "--lambda", "1.2", "--epsilon", "0.1"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--lambda") != std::string::npos);
}

TEST_CASE("other usage errors name their flag") {
    EnvGuard env;
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
        {{"pressure", "--a", "0", "--lambda", "0"}, "--a"},
        {{"energy-sum", "--a", "1", "--lambda", "0", "--epsilon", "-1"}, "--epsilon"},
        {{"stress", "--a", "1", "--lambda", "0", "--eps-vec", "0,0.1,0,0.2"}, "--eps-vec"},
        {{"stress", "--a", "1", "--lambda", "0", "--eps-vec", "1,0.1,0,0"}, "--eps-vec"},
        {{"pressure", "--a", "1", "--lambda", "0", "--field", "vector"}, "--field"},
        {{"pressure", "--a", "1", "--lambda", "0", "--format", "xml"}, "--format"},
        {{"pressure", "--a", "1:2", "--lambda", "0"}, "--a"},
        {{"pressure", "--a", "1:2:0", "--lambda", "0"}, "--a"},
        {{"pressure", "--a", "1", "--lambda", "0", "--precision", "5"}, "--precision"},
    };
    for (const auto& [args, flag] : cases) {
        const Result r = invoke(args);
        INFO(r.err);
        CHECK(r.code == kExitUsage);
        CHECK(r.err.find(flag) != std::string::npos);
    }
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"pressure", "--a", "1", "--lambda", "0", "--bogus"}).code == kExitUsage);
}

TEST_CASE("range grammar") {
    EnvGuard env;
    const ScanConfig c = parse_args({"scan", "--a", "0.5:2.0:4", "--lambda", "0:0.9:10", "--output", "out.csv"});
    CHECK(c.command == Command::scan);
    REQUIRE(c.a.size() == 4);
    REQUIRE(c.lambda.size() == 10);
    CHECK(c.a.front() == Real("0.5"));
    CHECK(c.a.back() == 2);
    CHECK_ABS(c.a[1], Real(1), "1e-45");
    CHECK(c.lambda.front() == 0);
    CHECK_ABS(c.lambda.back(), Real("0.9"), "1e-45");
    CHECK_ABS(c.lambda[3], Real("0.3"), "1e-45");
    REQUIRE(c.output.has_value());
    CHECK(*c.output == "out.csv");

    CHECK(parse_range("2.5", "--a").size() == 1);
    CHECK(parse_range("1:1:1", "--a").front() == 1);
}

TEST_CASE("pressure as JSON") {
    EnvGuard env;
    const Result r = invoke({"pressure", "--a", "1", "--lambda", "0", "--field", "em", "--format", "json"});
    REQUIRE(r.code == kExitSuccess);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_object());
    CHECK(doc["finite_part"].get<double>() == doctest::Approx(-0.041123351671).epsilon(1e-11));
    CHECK(doc["divergent_coeff"].get<double>() == 0.0);
    CHECK(doc["field"] == "em");

    const Result many = invoke({"pressure", "--a", "1:2:3", "--lambda", "0", "--format", "json"});
    const auto arr = nlohmann::json::parse(many.out);
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 3);
}

TEST_CASE("stress CSV at lambda = 0") {
    EnvGuard env;
    const Result r = invoke({"stress", "--a", "1", "--lambda", "0", "--eps-vec", "0,0.1,0,0"});
    REQUIRE(r.code == kExitSuccess);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    const auto& h = rows[0];
    const auto& v = rows[1];
    const Real p2 = pi() * pi();
    CHECK_ABS(Real(v[column(h, "A")]), p2 / 180, "1e-38");
    CHECK(mp::abs(Real(v[column(h, "B_finite")])) <= Real("1e-40"));
    CHECK(mp::abs(Real(v[column(h, "B_div_eps2")])) <= Real("1e-40"));
    CHECK_ABS(Real(v[column(h, "Tzz")]), -p2 / 240, "1e-38");
    CHECK_ABS(Real(v[column(h, "Ttt")]), -p2 / 720, "1e-38");
    CHECK(mp::abs(Real(v[column(h, "trace_residual")])) <= Real("1e-40"));
    CHECK(v[column(h, "field")] == "em");
}

TEST_CASE("covariance trials") {
    EnvGuard env;
    const Result r = invoke({"covariance", "--a", "1", "--lambda", "0.5", "--rapidity", "1.0", "--trials", "100"});
    REQUIRE(r.code == kExitSuccess);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 101);
    const std::size_t res = column(rows[0], "residual");
    const std::size_t rap = column(rows[0], "rapidity");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(Real(rows[i][res]) <= Real("1e-25"));
        CHECK(mp::abs(Real(rows[i][rap])) <= 1);
    }

    const Result scalar = invoke({"covariance", "--a", "1", "--lambda", "0.3", "--field", "scalar", "--z", "0.3",
                                  "--rapidity", "2", "--trials", "20"});
    REQUIRE(scalar.code == kExitSuccess);
    const auto scalar_rows = csv_rows(scalar.out);
    CHECK(scalar_rows.size() == 21);
    for (std::size_t i = 1; i < scalar_rows.size(); ++i) CHECK(Real(scalar_rows[i].back()) <= Real("1e-25"));
}

TEST_CASE("headers are fixed") {
    CHECK(csv_header(Command::energy_sum) == "a,lambda,epsilon,n_max,energy,remainder_bound");
    CHECK(csv_header(Command::energy_expansion) == "a,lambda,c_m4,c_m2,c_0,c_m2_ref,c_0_ref");
    CHECK(csv_header(Command::pressure) == "a,lambda,field,finite_part,divergent_coeff");
    CHECK(csv_header(Command::stress) == "a,lambda,field,z,A,B_finite,B_div_eps2,Ttt,Tzz,trace_residual");
    CHECK(csv_header(Command::covariance) == "trial,rapidity,angle,residual");

    EnvGuard env;
    const Result r = invoke({"energy-expansion", "--a", "1", "--lambda", "0.5"});
    CHECK(split(r.out, '\n').front() == csv_header(Command::energy_expansion));
}

TEST_CASE("CSV fields round-trip at the emitted digit count") {
    EnvGuard env;
    const Result r = invoke({"energy-expansion", "--a", "0.5:2:3", "--lambda", "0:0.9:4"});
    REQUIRE(r.code == kExitSuccess);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 13);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        for (const std::string& field : rows[i]) {
            const Real value(field);
            const std::string mantissa = field.substr(0, field.find('e'));
            const std::size_t digits = mantissa.size() - (mantissa[0] == '-' ? 2 : 1);
            CHECK(digits >= 30);
            CHECK(to_string(value, static_cast<int>(digits)) == field);
        }
    }
    // Engine and reference columns agree.
    const auto& h = rows[0];
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK_ABS(Real(rows[i][column(h, "c_0")]), Real(rows[i][column(h, "c_0_ref")]), "1e-30");
        CHECK_ABS(Real(rows[i][column(h, "c_m2")]), Real(rows[i][column(h, "c_m2_ref")]), "1e-30");
    }
}

TEST_CASE("exit codes") {
    EnvGuard env;
    SUBCASE("domain errors mark the row and continue") {
        const Result r = invoke({"stress", "--a", "1", "--lambda", "0.5", "--epsilon", "0.1", "--field", "scalar",
                                 "--z", "0:1:3"});
        CHECK(r.code == kExitDomain);
        const auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 4);
        CHECK(rows[1].back() == "nan");
        CHECK(rows[2].back() != "nan");
        CHECK(rows[3].back() == "nan");
        CHECK(r.err.find("WallContact") != std::string::npos);
    }
    SUBCASE("an unconverged mode sum") {
        const Result r = invoke({"energy-sum", "--a", "1", "--lambda", "0", "--epsilon", "0.1", "--n-max", "3"});
        CHECK(r.code == kExitConvergence);
    }
    SUBCASE("a converged mode sum") {
        const Result r = invoke({"energy-sum", "--a", "1", "--lambda", "0", "--epsilon", "0.1"});
        CHECK(r.code == kExitSuccess);
        const auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 2);
        const Real energy(rows[1][column(rows[0], "energy")]);
        const Real bound(rows[1][column(rows[0], "remainder_bound")]);
        CHECK(bound <= Real("1e-10") * energy);
    }
    SUBCASE("help") { CHECK(invoke({"--help"}).code == kExitSuccess); }
}

TEST_CASE("precision selection") {
    EnvGuard env;
    setenv("CASIMIR_PRECISION", "80", 1);
    CHECK(parse_args({"pressure", "--a", "1", "--lambda", "0"}).precision == 80);
    CHECK(parse_args({"pressure", "--a", "1", "--lambda", "0", "--precision", "30"}).precision == 30);
    setenv("CASIMIR_PRECISION", "lots", 1);
    CHECK_THROWS_AS(parse_args({"pressure", "--a", "1", "--lambda", "0"}), UsageError);
    unsetenv("CASIMIR_PRECISION");

    const Result wide = invoke({"pressure", "--a", "1", "--lambda", "0", "--precision", "100"});
    const auto rows = csv_rows(wide.out);
    set_working_digits(100);
    const Real p = Real(rows[1][column(rows[0], "finite_part")]);
    CHECK(mp::abs(p + pi() * pi() / 240) <= Real("1e-85"));
}

TEST_CASE("output is deterministic and honours --output") {
    EnvGuard env;
    const std::vector<std::string> args = {"covariance", "--a", "1", "--lambda", "0.5", "--trials", "5", "--seed", "7"};
    const Result first = invoke(args);
    const Result second = invoke(args);
    CHECK(first.out == second.out);
    auto other = args;
    other.back() = "8";
    CHECK(invoke(other).out != first.out);

    const auto path = std::filesystem::temp_directory_path() / "casimir_cli_test.csv";
    auto to_file = args;
    to_file.push_back("--output");
    to_file.push_back(path.string());
    const Result r = invoke(to_file);
    CHECK(r.code == kExitSuccess);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream contents;
    contents << in.rdbuf();
    CHECK(contents.str() == first.out);
    std::filesystem::remove(path);
}

TEST_CASE("scan rows") {
    EnvGuard env;
    const Result r = invoke({"scan", "--a", "0.5:2.0:4", "--lambda", "0:0.9:10"});
    REQUIRE(r.code == kExitSuccess);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 41);
    const auto& h = rows[0];
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const Real a(rows[i][column(h, "a")]);
        const Real l(rows[i][column(h, "lambda")]);
        CHECK_ABS(Real(rows[i][column(h, "c_m2")]), -l / (12 * a), "1e-30");
        CHECK_ABS(Real(rows[i][column(h, "A")]), (1 - l) * pi() * pi() / (180 * mp::pow(a, 4)), "1e-30");
    }
}
