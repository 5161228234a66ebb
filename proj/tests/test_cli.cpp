#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fracbl/errors.hpp"
#include "fracbl/output.hpp"
#include "fracbl/report.hpp"

using namespace fracbl;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "fracbl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("fracbl_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("number formatting round-trips", "[output]") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::exp(1.0)}) {
        CHECK(std::stod(output::format_double(v)) == v);
    }
    CHECK(output::format_double(0.0) == "0");
    CHECK(output::format_double(-0.0) == "0");
    CHECK(output::format_double(1.0) == "1");
}

TEST_CASE("csv writer", "[output]") {
    output::CsvWriter csv({"a", "b"});
    const double row[] = {1.5, -2.0};
    csv.add_row(row);
    csv.add_row(std::vector<std::string>{"x,y", "say \"hi\""});
    CHECK(csv.str() == "a,b\n1.5,-2\n\"x,y\",\"say \"\"hi\"\"\"\n");
    CHECK_THROWS_AS(csv.add_row(std::vector<std::string>{"one"}), ParameterError);
}

TEST_CASE("svg has the fixed viewport", "[output]") {
    std::vector<output::Panel> panels(2);
    panels[0].series.push_back({"line", {0.0, 1.0}, {0.0, 1.0}});
    const std::string svg = output::render_svg("t", panels);
    CHECK(svg.find("width=\"800\" height=\"480\"") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("ml subcommand", "[cli]") {
    auto r = run({"ml", "--a", "1", "--b", "1", "--z", "1"});
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == Catch::Approx(std::exp(1.0)).epsilon(1e-15));
    r = run({"ml", "--a", "0.5", "--b", "2", "--z", "0"});
    CHECK(r.out == "1\n");
    r = run({"ml", "--a", "0.5", "--b", "1", "--z", "-1"});
    CHECK(r.out.rfind("0.427583", 0) == 0);
    r = run({"ml", "--a", "1", "--b", "1", "--z", "0", "1"});
    CHECK(r.out.rfind("z,value\n0,1\n1,2.718281828459045", 0) == 0);
    CHECK(run({"ml", "--a", "0", "--b", "1", "--z", "1"}).code == 2);
    CHECK(run({"ml", "--a", "x", "--b", "1", "--z", "1"}).code == 2);
    CHECK(run({"ml", "--b", "1", "--z", "1"}).code == 2);
    CHECK(run({"ml", "--help"}).code == 0);
    CHECK(run({}).code == 2);
}

TEST_CASE("layer subcommand", "[cli]") {
    auto r = run({"layer", "--problem", "conv", "--eps", "0.01", "--x", "0", "0.5", "1"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0][1] == 1.0);
    CHECK(rows[2][1] == 0.0);
    r = run({"layer", "--problem", "reac0", "--alpha", "0.5", "--eps", "1e-6", "--x", "1"});
    REQUIRE(r.code == 0);
    CHECK(parse_csv(r.out)[0][1] == Catch::Approx(5.6419e-3).epsilon(0.01));
    CHECK(run({"layer", "--problem", "heat"}).code == 2);
    CHECK(run({"layer", "--problem", "conv", "--eps", "2"}).code == 2);
}

TEST_CASE("solve subcommand", "[cli]") {
    const auto dir = scratch_dir("solve");
    const auto csv = (dir / "u.csv").string();
    auto r = run({"solve", "--kind", "conv", "--alpha", "0.5", "--eps", "0.01", "-N", "1024", "-o", csv});
    REQUIRE(r.code == 0);
    const auto pos = r.out.find("oracle_error=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 13)) <= 0.05);
    const auto rows = parse_csv(slurp(csv));
    CHECK(rows.size() == 1025);
    CHECK(rows.front()[1] == 0.0);
    CHECK(rows.back()[1] == 0.0);
    CHECK(run({"solve", "--kind", "reac", "--eps", "0"}).code == 2);
    CHECK(run({"solve", "--kind", "reac", "--eps", "-1"}).code == 2);
    CHECK(run({"solve", "--kind", "conv", "--alpha", "1.5"}).code == 2);
    r = run({"solve", "--kind", "classical", "--eps", "0.01", "-N", "512"});
    CHECK(r.code == 0);
    CHECK(r.err.find("mesh=shishkin") != std::string::npos);
}

TEST_CASE("verify subcommand", "[cli][verify]") {
    const auto dir = scratch_dir("verify");
    auto r = run({"verify", "--csv", (dir / "a.csv").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("OVERALL PASS") != std::string::npos);
    CHECK(r.out.find("theta_scaling@eps=0.0001") != std::string::npos);
    auto again = run({"verify", "--csv", (dir / "b.csv").string()});
    CHECK(again.out == r.out);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

    r = run({"verify", "--eps", "0.5"});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL  V(x0) -> 1 - sqrt(x0)") != std::string::npos);

    const auto tol = dir / "tol.json";
    std::ofstream(tol) << R"({"limit_law": 0.5, "theta_scaling": 0.5, "vstar_scaling": 0.5, "theta_bound": 2})";
    CHECK(run({"verify", "--eps", "0.5", "--tolerances", tol.string()}).code == 0);
    std::ofstream(dir / "bad.json") << R"({"nonsense": 1})";
    CHECK(run({"verify", "--tolerances", (dir / "bad.json").string()}).code == 2);
}

TEST_CASE("report rows", "[verify]") {
    report::VerifyOptions opts;
    opts.eps = {1e-2};
    const auto rep = report::run_verification(opts);
    bool found = false;
    for (const auto& c : rep.checks) {
        CHECK_FALSE(c.claim.empty());
        if (c.name == "theta_scaling@eps=0.01") {
            found = true;
            CHECK(c.measured == Catch::Approx(-0.894).epsilon(1e-3));
            CHECK_FALSE(c.pass);
        }
    }
    CHECK(found);
    CHECK_FALSE(rep.overall());
    CHECK(report::make_check("x", 1.0, 1.0, 0.0, report::Comparison::absolute, "c").pass);
    CHECK_FALSE(report::make_check("x", NAN, 1.0, 1.0, report::Comparison::upper_bound, "c").pass);
}

TEST_CASE("exponential fit", "[verify]") {
    std::vector<double> x;
    std::vector<double> y;
    for (int k = 1; k <= 99; ++k) {
        x.push_back(0.01 * k);
        y.push_back(0.7 * std::exp(-x.back() / 0.13));
    }
    CHECK(report::exponential_fit_misfit(x, y) <= 1e-6);
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = 1.0 - std::sqrt(x[k]);
    CHECK(report::exponential_fit_misfit(x, y) > 0.05);
}

TEST_CASE("figures subcommand", "[cli][figures]") {
    const auto dir = scratch_dir("figures");
    auto r = run({"figures", "--out", (dir / "a").string()});
    REQUIRE(r.code == 0);
    for (const char* name : {"fig1.csv", "fig1.svg", "fig2.csv", "fig2.svg"}) {
        CHECK(std::filesystem::exists(dir / "a" / name));
    }
    const auto fig2 = parse_csv(slurp(dir / "a" / "fig2.csv"));
    CHECK(fig2.front()[0] == 0.0);
    CHECK(fig2.front()[1] == 0.0);
    CHECK(fig2.back()[1] == 0.0);
    const auto blocker = dir / "file";
    std::ofstream(blocker) << "x";
    CHECK(run({"figures", "--out", (blocker / "sub").string()}).code == 2);
}
