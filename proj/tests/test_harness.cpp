#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rydpol/harness/cli.hpp"

namespace {

using namespace rydpol::harness;
namespace fs = std::filesystem;

const std::string paper_text = R"(# worked example
rho      = 1e20
L        = 1e-4
lambda   = 5e-7
gamma_ge = 1e7
Omega    = 1.6e7
w        = 3e-5     # m
n        = 25
q        = n-1
gamma_d  = 2e3
)";

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
    std::istringstream in(text);
    std::string out, l;
    while (std::getline(in, l)) {
        if (l.rfind(key + " ", 0) == 0) {
            if (!line.empty()) out += line + "\n";
        } else {
            out += l + "\n";
        }
    }
    return out;
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("rydpol_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& content = {}) const {
        const auto p = (path_ / name).string();
        if (!content.empty()) std::ofstream(p) << content;
        return p;
    }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "rydpol");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

TEST(Config, ParsesPaperDocument) {
    const RunConfig run = parse_config_text(paper_text);
    EXPECT_EQ(run.medium.rho, 1e20);
    EXPECT_EQ(run.medium.w, 3e-5);
    EXPECT_TRUE(run.medium.q_tied_to_n);
    EXPECT_FALSE(run.medium.T.has_value());
    const auto cfg = build_medium(run.medium);
    EXPECT_EQ(cfg.rydberg.q, 24);
    EXPECT_EQ(run.margin_factor, 10.0);
    EXPECT_EQ(run.grid_points, 512);
}

TEST(Config, MissingKeyIsNamed) {
    try {
        parse_config_text(replace_line(paper_text, "rho", ""));
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("'rho'"), std::string::npos) << e.what();
    }
}

TEST(Config, DiagnosticsCarryLineNumbers) {
    auto expect_error = [](const std::string& text, const std::string& fragment) {
        try {
            parse_config_text(text);
            FAIL() << "no error for " << fragment;
        } catch (const ConfigError& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    expect_error(replace_line(paper_text, "w", "w = thirty"), "line 7");
    expect_error(paper_text + "colour = blue\n", "unknown key 'colour'");
    expect_error(paper_text + "rho = 2e20\n", "duplicate key 'rho'");
    expect_error(paper_text + "just words\n", "line 11: expected 'key = value'");
    expect_error(replace_line(paper_text, "n", "n = 25.5"), "integer");
}

TEST(Config, OptionalKeys) {
    const RunConfig run = parse_config_text(paper_text + "T = 5e-6\nmargin_factor = 4\ngrid_points = 64\n");
    EXPECT_EQ(run.margin_factor, 4.0);
    EXPECT_EQ(run.grid_points, 64);
    EXPECT_EQ(build_medium(run.medium).T, 5e-6);
}

TEST(Config, ScanAxisSyntax) {
    const auto axis = parse_scan_axis("w:1e-5:1e-4:10:log");
    EXPECT_EQ(axis.field, "w");
    EXPECT_TRUE(axis.log);
    const auto v = axis.values();
    ASSERT_EQ(v.size(), 10u);
    EXPECT_EQ(v.front(), 1e-5);
    EXPECT_EQ(v.back(), 1e-4);
    EXPECT_NEAR(v[1] / v[0], std::pow(10.0, 1.0 / 9.0), 1e-14);
    EXPECT_FALSE(parse_scan_axis("Omega:1e6:2e6:3").log);
    EXPECT_THROW(parse_scan_axis("colour:1:2:3"), ConfigError);
    EXPECT_THROW(parse_scan_axis("w:1:2:1"), ConfigError);
    EXPECT_THROW(parse_scan_axis("w:1:2"), ConfigError);
    EXPECT_THROW(parse_scan_axis("w:-1:2:3:log"), ConfigError);
}

TEST(Validate, PaperConfigIsFeasible) {
    TempDir dir;
    const auto r = cli({"validate", "--config", dir.file("paper.conf", paper_text), "--out", dir.file("report.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("overall: PASS"), std::string::npos);
    const auto doc = Json::parse(slurp(dir.file("report.json")));
    EXPECT_TRUE(doc["overall_pass"].get<bool>());
    ASSERT_EQ(doc["checks"].size(), 5u);
    EXPECT_EQ(doc["checks"][3]["name"], "shift_within_bandwidth");
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc["checks"][0].items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"name", "lhs", "rhs", "margin_ratio", "threshold", "pass"}));
}

TEST(Validate, TightFocusIsInfeasible) {
    TempDir dir;
    const auto conf = dir.file("tight.conf", replace_line(paper_text, "w", "w = 3e-6"));
    const auto r = cli({"validate", "--config", conf, "--out", dir.file("report.csv"), "--format", "csv"});
    EXPECT_EQ(r.code, 2);
    const std::string csv = slurp(dir.file("report.csv"));
    EXPECT_EQ(csv.rfind("name,lhs,rhs,margin_ratio,threshold,pass\n", 0), 0u);
    EXPECT_NE(csv.find("shift_within_bandwidth,"), std::string::npos);
    EXPECT_NE(csv.find(",false\n"), std::string::npos);
}

TEST(Validate, ConfigErrorsExitOne) {
    TempDir dir;
    auto r = cli({"validate", "--config", dir.file("bad.conf", replace_line(paper_text, "rho", ""))});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("rho"), std::string::npos);
    r = cli({"validate", "--config", dir.file("missing.conf")});
    EXPECT_EQ(r.code, 1);
    r = cli({"validate"});
    EXPECT_EQ(r.code, 1);
    r = cli({"frobnicate"});
    EXPECT_EQ(r.code, 1);
}

TEST(Validate, FastLightIsInfeasible) {
    TempDir dir;
    const auto r = cli({"validate", "--config", dir.file("fast.conf", replace_line(paper_text, "Omega", "Omega = 1e13"))});
    EXPECT_EQ(r.code, 2);
}

TEST(Phase, ReportsBothRoutes) {
    TempDir dir;
    const auto r = cli({"phase", "--config", dir.file("paper.conf", paper_text), "--out", dir.file("phase.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto doc = Json::parse(slurp(dir.file("phase.json")));
    EXPECT_NEAR(doc["phi_closed"].get<double>(), 2.5708232867924693, 1e-10);
    EXPECT_NEAR(doc["phi_bound"].get<double>(), 2.9238630046262854, 1e-10);
    EXPECT_LT(doc["phi_quadrature"].get<double>(), doc["phi_closed"].get<double>());
}

TEST(Scan, WidthSlopeIsMinusTwo) {
    RunConfig run = parse_config_text(paper_text);
    const auto axis = parse_scan_axis("w:1e-5:1e-4:10:log");
    const auto rows = compute_scan(run, axis);
    std::vector<double> x, y;
    for (const auto& r : rows) {
        x.push_back(r.swept);
        y.push_back(r.phi_closed);
    }
    EXPECT_NEAR(slope(x, y), -2.0, 0.01);
}

TEST(Scan, VelocityScalesAsOmegaSquared) {
    RunConfig run = parse_config_text(paper_text);
    const auto rows = compute_scan(run, parse_scan_axis("Omega:5e6:5e7:8:log"));
    std::vector<double> x, y;
    for (const auto& r : rows) {
        x.push_back(r.swept);
        y.push_back(r.v);
    }
    EXPECT_NEAR(slope(x, y), 2.0, 0.01);
}

TEST(Scan, TiedParabolicNumberFollowsN) {
    RunConfig run = parse_config_text(paper_text);
    const auto rows = compute_scan(run, parse_scan_axis("n:10:40:7"));
    ASSERT_EQ(rows.size(), 7u);
    for (const auto& r : rows) {
        const double n = r.swept;
        const double expected = rows[0].phi_closed * (n * n * (n - 1) * (n - 1)) / (100.0 * 81.0);
        EXPECT_NEAR(r.phi_closed / expected, 1.0, 1e-12) << n;
    }
}

TEST(Scan, FailedStepsAreFlaggedNotFatal) {
    RunConfig run = parse_config_text(paper_text);
    const auto rows = compute_scan(run, parse_scan_axis("Omega:1e7:1e13:3:log"));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_FALSE(std::isnan(rows[0].v));
    EXPECT_TRUE(std::isnan(rows[2].v));
    EXPECT_FALSE(rows[2].feasible);
    std::ostringstream out;
    write_scan(out, parse_scan_axis("Omega:1e7:1e13:3:log"), rows, OutputFormat::csv);
    EXPECT_NE(out.str().find("1.00000000000e+13,nan,nan,nan,nan,nan,false,nan\n"), std::string::npos) << out.str();
}

TEST(Scan, CliOutputIsDeterministic) {
    TempDir dir;
    const auto conf = dir.file("paper.conf", paper_text);
    for (const char* format : {"csv", "json"}) {
        const auto a = dir.file(std::string("a.") + format), b = dir.file(std::string("b.") + format);
        EXPECT_EQ(cli({"scan", "--config", conf, "--scan", "w:1e-5:1e-4:5:log", "--format", format, "--out", a}).code, 0);
        EXPECT_EQ(cli({"scan", "--config", conf, "--scan", "w:1e-5:1e-4:5:log", "--format", format, "--out", b}).code, 0);
        EXPECT_EQ(slurp(a), slurp(b));
        EXPECT_FALSE(slurp(a).empty());
    }
    const std::string csv = slurp(dir.file("a.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "w [m],v [m/s],delta_omega [rad/s],phi_closed [rad],phi_bound [rad],fidelity [1],feasible,homogeneity [1]");
    EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Scan, HomogeneityColumnOnRequest) {
    RunConfig run = parse_config_text(paper_text);
    run.grid_points = 64;
    const auto rows = compute_scan(run, parse_scan_axis("L:1e-4:2e-4:2"), true);
    for (const auto& r : rows) {
        EXPECT_FALSE(std::isnan(r.homogeneity));
        EXPECT_LT(r.homogeneity, 0.02);
    }
}

TEST(Collide, WritesGridAndPlotData) {
    TempDir dir;
    const auto prefix = dir.file("run");
    const auto r = cli({"collide", "--config", dir.file("paper.conf", paper_text), "--out", prefix, "--grid", "48"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string grid = slurp(prefix + "_grid.csv");
    EXPECT_EQ(grid.rfind("z1,z2,re,im\n", 0), 0u);
    EXPECT_EQ(std::count(grid.begin(), grid.end(), '\n'), 48 * 48 + 1);

    const auto header = Json::parse(slurp(prefix + "_grid.header.json"));
    EXPECT_EQ(header["z1"]["points"], 48);
    EXPECT_EQ(header["parameters"]["q"], 24);

    const std::string potential = slurp(prefix + "_potential.csv");
    EXPECT_EQ(potential.rfind("zeta,g\n-4.00000000000e+00,", 0), 0u);
    const std::string phase = slurp(prefix + "_phase.csv");
    EXPECT_EQ(phase.rfind("tau,phi_reduced\n0.00000000000e+00,0.00000000000e+00\n", 0), 0u);

    const auto summary = Json::parse(slurp(prefix + "_summary.json"));
    EXPECT_LT(summary["homogeneity"].get<double>(), 0.01);
    EXPECT_FALSE(summary["zero_phase"].get<bool>());
    EXPECT_GE(summary["schmidt_number"].get<double>(), 1.0);
}

TEST(Collide, NonInteractingRunHasSingleModeAndZeroPhase) {
    TempDir dir;
    const auto prefix = dir.file("free");
    const auto conf = dir.file("free.conf", replace_line(paper_text, "q", "q = 0"));
    const auto r = cli({"collide", "--config", conf, "--out", prefix, "--grid", "64"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto summary = Json::parse(slurp(prefix + "_summary.json"));
    EXPECT_TRUE(summary["zero_phase"].get<bool>());
    EXPECT_EQ(summary["homogeneity"].get<double>(), 0.0);
    EXPECT_NEAR(summary["schmidt_number"].get<double>(), 1.0, 1e-6);
}

TEST(PaperRepro, DefaultsMeetExpectedWindows) {
    TempDir dir;
    const auto r = cli({"paper-repro", "--out", dir.file("repro.json")});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    const auto doc = Json::parse(slurp(dir.file("repro.json")));
    for (const auto& check : doc["expected"]) EXPECT_TRUE(check["pass"].get<bool>()) << check.dump();
    EXPECT_TRUE(doc["feasible"].get<bool>());
    EXPECT_LT(doc["homogeneity"].get<double>(), 0.01);
}

TEST(Format, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(4.2893211697012644), "4.28932116970e+00");
    EXPECT_EQ(format_number(-1.0 / 3.0), "-3.33333333333e-01");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(json_number(2.5708232867924693).get<double>(), 2.57082328679);
    EXPECT_TRUE(json_number(INFINITY).is_null());
}

} // namespace
