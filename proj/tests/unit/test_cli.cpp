// test_cli.cpp — Argument parsing, CSV layout, command outputs and exit codes

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dqw/cli.hpp"
#include "dqw/core.hpp"
#include "dqw/errors.hpp"

using namespace dqw;
using namespace dqw::cli;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dqw");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

int exit_status(const std::string& args) {
    const std::string cmd = std::string(DQW_EXE) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / ("dqw_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("argument helpers") {
    const auto r = parse_site_range("-40:40");
    CHECK(r.lo == -40);
    CHECK(r.hi == 40);
    CHECK(parse_site_range("-7:-3").hi == -3);
    CHECK_THROWS_AS(parse_site_range("5:1"), InvalidInput);
    CHECK_THROWS_AS(parse_site_range("5"), InvalidInput);

    const auto g = parse_grid("0:1:0.1");
    CHECK(g.size() == 11);
    CHECK(g.back() == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_grid("0:1:0"), InvalidInput);
    CHECK_THROWS_AS(parse_grid("0:1"), InvalidInput);

    CHECK(parse_list("0,0.1,5") == std::vector<double>{0, 0.1, 5});
    CHECK_THROWS_AS(parse_list("0,,1"), InvalidInput);
    CHECK_THROWS_AS(parse_list("abc"), InvalidInput);
}

TEST_CASE("config files") {
    std::istringstream in("# tolerances\nmass_tol = 1e-11\neps-tail=1e-13\n\nquad_nodes=128\njobs=2\n");
    const auto s = parse_config(in);
    CHECK(s.mass_tol == 1e-11);
    CHECK(s.eps_tail == 1e-13);
    CHECK(s.quad_nodes == 128);
    CHECK(s.jobs == 2);
    CHECK(s.k_nodes == wigner::kDefaultKNodes);

    std::istringstream bad("nodes=3\n");
    CHECK_THROWS_AS(parse_config(bad), InvalidInput);
    std::istringstream junk("mass_tol\n");
    CHECK_THROWS_AS(parse_config(junk), InvalidInput);
    CHECK_THROWS_AS(load_config("/nonexistent/dqw.cfg"), IoError);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("prob command") {
    const Settings settings;
    const std::vector<double> rd{0.0};
    const auto t = cmd_prob(31.8, rd, SiteRange{-40, 40}, settings);
    CHECK(t.header == std::vector<std::string>{"r_d", "s", "p"});
    double best = -1.0;
    double best_s = 0.0;
    for (const auto& row : t.rows) {
        if (row[2] > best) {
            best = row[2];
            best_s = row[1];
        }
    }
    CHECK(std::abs(best_s) == 29.0);

    const auto zero = cmd_prob(0.0, std::vector<double>{3.0}, SiteRange{-5, 5}, settings);
    for (const auto& row : zero.rows) CHECK(row[2] == (row[1] == 0.0 ? 1.0 : 0.0));

    // One broad hump. Its crest is flat to a few parts in 1e5 and the exact
    // maxima sit at s = +-3 rather than 0.
    const auto diff = cmd_prob(31.8, std::vector<double>{10.0}, SiteRange{-40, 40}, settings);
    const auto p_at = [&](int s) { return diff.rows[static_cast<std::size_t>(s + 40)][2]; };
    CHECK(p_at(3) > p_at(0));
    CHECK((p_at(3) - p_at(0)) / p_at(0) < 1e-4);
    for (int s = 3; s < 40; ++s) {
        CHECK(p_at(s) > p_at(s + 1));
        CHECK(p_at(-s) > p_at(-s - 1));
    }
}

TEST_CASE("carpet command rows stay in [0, 1] and are sorted") {
    const auto grid = parse_grid("0:4:0.5");
    const auto t = cmd_carpet(grid, 0.0, SiteRange{-10, 10}, Settings{});
    CHECK(t.rows.size() == grid.size() * 21);
    for (const auto& row : t.rows) {
        CHECK(row[2] >= 0.0);
        CHECK(row[2] <= 1.0);
    }
    CHECK(t.rows.front()[0] == 0.0);
    CHECK(t.rows.back()[0] == 4.0);
}

TEST_CASE("wigner command normalization column") {
    const auto t = cmd_wigner(10.0, 0.0, SiteRange{-12, 12}, 65, Settings{});
    double mx = 0.0;
    double mn = 0.0;
    for (const auto& row : t.rows) {
        mx = std::max(mx, std::abs(row[3]));
        mn = std::min(mn, row[2]);
    }
    CHECK(mx == 1.0);
    CHECK(mn < 0.0);
    const auto classical = cmd_wigner(30.0, 10.0, SiteRange{-60, 60}, 65, Settings{});
    for (const auto& row : classical.rows) CHECK(row[2] >= -1e-12);
}

TEST_CASE("scalar command") {
    const auto tg = parse_grid("0:3:1");
    const std::vector<double> rd{0.0, 1.0};
    const auto pur = cmd_scalar(Scalar::purity, tg, rd, 0.0, Settings{});
    for (const auto& row : pur.rows) {
        if (row[1] == 0.0) CHECK(row[2] == 1.0);
    }
    const auto var = cmd_scalar(Scalar::variance, tg, rd, 0.0, Settings{});
    for (const auto& row : var.rows) CHECK(row[2] == row[0] * row[0] / 2 + row[1] * row[0]);
    const auto ent = cmd_scalar(Scalar::entropy, tg, std::vector<double>{0.0}, 0.0, Settings{});
    for (const auto& row : ent.rows) CHECK(std::abs(row[2]) < 1e-6);
    // sorted by (r_d, t)
    CHECK(var.rows[0][1] == 0.0);
    CHECK(var.rows[1][0] == 1.0);
    CHECK_THROWS_AS(cmd_scalar(Scalar::cf, tg, rd, std::nan(""), Settings{}), InvalidInput);
    CHECK(parse_scalar(scalar_name(Scalar::cf)) == Scalar::cf);
}

TEST_CASE("critical-rd command") {
    const auto j = cmd_critical_rd(1.9, 0.1, 2.0, 1e-4);
    CHECK(std::abs(j["r_d_c"].get<double>() - 0.52) <= 0.02);
    // Halving tol costs one more bisection step.
    const auto half = cmd_critical_rd(1.9, 0.1, 2.0, 5e-5);
    CHECK(half["iterations"].get<int>() == j["iterations"].get<int>() + 1);
    CHECK_THROWS_AS(cmd_critical_rd(1.9, 1.0, 2.0, 1e-4), BracketError);
}

TEST_CASE("validate fast passes") {
    const auto report = cmd_validate(ValidationLevel::fast, Settings{});
    CHECK(report.passed);
    REQUIRE(report.json["checks"].is_array());
    for (const auto& c : report.json["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("tolerance"));
    }
}

TEST_CASE("run: determinism, physical units and flag precedence") {
    const auto a = run_cli({"prob", "--tprime", "5", "--rd-list", "0,0.5", "--s-range", "-6:6"});
    const auto b = run_cli({"prob", "--tprime", "5", "--rd-list", "0,0.5", "--s-range", "-6:6", "--jobs", "3"});
    CHECK(a.code == kSuccess);
    CHECK(a.out == b.out);
    const auto rows = lines(a.out);
    CHECK(rows.front() == "r_d,s,p");
    CHECK(rows.size() == 1 + 2 * 13);

    const auto phys = run_cli({"prob", "--omega-over-hbar", "2", "--d-coeff", "0.5", "--t", "2.5", "--s-range", "-6:6"});
    const auto dimless = run_cli({"prob", "--tprime", "5", "--rd", "0.5", "--s-range", "-6:6"});
    CHECK(phys.code == kSuccess);
    CHECK(phys.out == dimless.out);

    const auto dir = scratch_dir();
    const auto cfg = dir / "bad.cfg";
    std::ofstream(cfg) << "mass_tol=1\n";
    CHECK(run_cli({"entropy", "--tprime", "2", "--rd", "0.1", "--config", cfg.string()}).code == kInvalidInput);
    CHECK(run_cli({"entropy", "--tprime", "2", "--rd", "0.1", "--config", cfg.string(), "--mass-tol", "1e-12"}).code ==
          kSuccess);
    fs::remove_all(dir);
}

TEST_CASE("run: sweep writes csv and manifest") {
    const auto dir = scratch_dir();
    const auto out = dir / "sweep.csv";
    const auto r = run_cli({"sweep", "--t-grid", "0:2:1", "--rd-list", "0,0.5", "--out", out.string()});
    REQUIRE(r.code == kSuccess);
    CHECK(fs::exists(out));
    const auto manifest_path = fs::path(out.string() + ".manifest.json");
    REQUIRE(fs::exists(manifest_path));
    std::ifstream in(manifest_path);
    const auto m = nlohmann::json::parse(in);
    CHECK(m["command"] == "sweep");
    CHECK(m["grid"]["t"].size() == 3);
    CHECK(m["grid"]["r_d"].size() == 2);
    CHECK(m["cells"].size() == 6);
    CHECK(m["outputs"][0] == out.string());
    for (const auto& path : m["outputs"]) CHECK(fs::exists(path.get<std::string>()));

    std::ifstream csv(out);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,r_d,purity,entropy,variance\r");
    fs::remove_all(dir);
}

TEST_CASE("executable exit codes") {
    CHECK(exit_status("prob --tprime 1 --rd 0 --s-range -2:2") == 0);
    CHECK(exit_status("prob --tprime -1 --rd 0") == 1);
    CHECK(exit_status("prob --tprime 1 --rd 0 --s-range 3:1") == 1);
    CHECK(exit_status("frobnicate") == 1);
    CHECK(exit_status("critical-rd --lo 1 --hi 2") == 2);
    CHECK(exit_status("prob --tprime 1 --rd 0 --out /nonexistent-dir/p.csv") == 3);
    CHECK(exit_status("validate") == 0);
}
