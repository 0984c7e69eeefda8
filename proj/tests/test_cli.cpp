#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nanoquad/cli.hpp"

namespace {

using nanoquad::run_cli;
using Json = nlohmann::ordered_json;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "nanoquad");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

Json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return Json::parse(r.out);
}

std::size_t column(const Json& j, const std::string& name) {
    const auto& cols = j.at("columns");
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == name) return i;
    ADD_FAILURE() << "no column " << name;
    return 0;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / ("nanoquad_test_" + name);
    std::ofstream(p) << content;
    return p;
}

double value_of(const Json& j, const std::string& quantity) {
    for (const auto& row : j.at("rows"))
        if (row[0] == quantity) return row[1].get<double>();
    ADD_FAILURE() << "no row " << quantity;
    return NAN;
}

TEST(CliMode, DefaultsAreSingleMode) {
    const auto r = run({"mode"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("V,2.33382"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("single_mode,yes"), std::string::npos);

    const auto j = run_json({"mode"});
    // V = k a sqrt(n1^2 - n2^2)
    const double v = 2.0 * M_PI / 516.5e-9 * 180e-9 * std::sqrt(1.4615 * 1.4615 - 1.0);
    EXPECT_NEAR(value_of(j, "V"), v, 1e-12);
    EXPECT_NEAR(value_of(j, "V"), 2.334, 1e-3);
    const double n_eff = value_of(j, "beta_over_k");
    EXPECT_GT(n_eff, 1.0);
    EXPECT_LT(n_eff, 1.4615);
    EXPECT_LT(std::abs(value_of(j, "dispersion_residual")), 1e-10);
}

TEST(CliMode, MultimodeRadiusExitsTwo) {
    const auto r = run({"mode", "--radius-nm", "400"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("multimode"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(run({"mode", "--radius-nm", "400", "--allow-multimode"}).code, 0);
}

TEST(CliMode, TinyFiberExitsTwo) {
    EXPECT_EQ(run({"mode", "--radius-nm", "10"}).code, 2);
}

TEST(CliMode, JsonRoundTrips) {
    const auto j = run_json({"mode"});
    const auto rep = nanoquad::report_from_json(j);
    EXPECT_EQ(nanoquad::to_json(rep), j);
    EXPECT_EQ(rep.command, "mode");
    EXPECT_EQ(rep.table.columns.size(), 3u);

    const auto e = run_json({"emission"});
    EXPECT_EQ(nanoquad::to_json(nanoquad::report_from_json(e)), e);
}

TEST(CliOutput, CsvIsDeterministicAndStamped) {
    const std::vector<std::string> args = {"rabi", "--atom-r", "1.3a"};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);

    const auto ls = lines(a.out);
    ASSERT_GE(ls.size(), 3u);
    EXPECT_EQ(ls[0].rfind("# config: ", 0), 0u);
    for (const auto& [key, def] : nanoquad::config_defaults())
        EXPECT_NE(ls[0].find(key + "="), std::string::npos) << key;
    EXPECT_NE(ls[0].find("atom-r=1.3a"), std::string::npos);
    std::size_t header = 0;
    while (ls[header].rfind("#", 0) == 0) ++header;
    EXPECT_EQ(ls[header], "q,M_up,pol,dir,C_coeff,re_S,im_S,abs_omega,note");
}

TEST(CliOutput, PrecisionControlsDigits) {
    const auto r = run({"mode", "--precision", "4"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("V,2.334,\n"), std::string::npos) << r.out;
    EXPECT_EQ(run({"mode", "--precision", "0"}).code, 4);
}

TEST(CliOutput, OutWritesFile) {
    const auto p = std::filesystem::temp_directory_path() / "nanoquad_test_out.csv";
    std::filesystem::remove(p);
    const auto r = run({"mode", "--out", p.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    auto file_lines = lines(ss.str()), plain = lines(run({"mode"}).out);
    EXPECT_NE(file_lines[0].find("out=" + p.string()), std::string::npos);
    file_lines.erase(file_lines.begin());
    plain.erase(plain.begin());
    EXPECT_EQ(file_lines, plain);
    EXPECT_NE(ss.str().find("V,2.33382"), std::string::npos);
    std::filesystem::remove(p);
}

TEST(CliConfig, BadInputsExitFour) {
    EXPECT_EQ(run({"mode", "--radius-nm", "abc"}).code, 4);
    EXPECT_EQ(run({"mode", "--radius-nm", "-3"}).code, 4);
    EXPECT_EQ(run({"mode", "--bogus", "1"}).code, 4);
    EXPECT_EQ(run({}).code, 4);
    EXPECT_EQ(run({"rabi", "--pol", "z"}).code, 4);
    EXPECT_EQ(run({"rabi", "--q", "3"}).code, 4);
    EXPECT_EQ(run({"rabi", "--M", "3"}).code, 4);
    EXPECT_EQ(run({"rabi", "--atom-r", "0.5a"}).code, 4);
    EXPECT_EQ(run({"rabi", "--atom-r", "100nm"}).code, 4);
    EXPECT_EQ(run({"rabi", "--figure", "fig9"}).code, 4);
    EXPECT_EQ(run({"mode", "--n1", "1.0", "--n2", "1.2"}).code, 4);
    EXPECT_EQ(run({"mode", "--config", "/nonexistent/nanoquad.cfg"}).code, 4);
}

TEST(CliConfig, FileUnknownOrDuplicateKeyExitsFour) {
    const auto unknown = temp_file("unknown.cfg", "radius-nm = 180\nraduis-nm = 170\n");
    auto r = run({"mode", "--config", unknown.string()});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("raduis-nm"), std::string::npos) << r.err;

    const auto dup = temp_file("dup.cfg", "radius-nm = 180\nradius-nm = 170\n");
    r = run({"mode", "--config", dup.string()});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("duplicate"), std::string::npos) << r.err;

    const auto bad = temp_file("bad.cfg", "radius-nm 180\n");
    EXPECT_EQ(run({"mode", "--config", bad.string()}).code, 4);
}

TEST(CliConfig, FlagsOverrideFile) {
    const auto cfg = temp_file("override.cfg", "# fiber\nradius-nm = 150   # thinner\npower-nw = 2\n\n");
    const auto j = run_json({"mode", "--config", cfg.string(), "--radius-nm", "160"});
    EXPECT_EQ(j["config"]["radius-nm"], "160");
    EXPECT_EQ(j["config"]["power-nw"], "2");
    const double v = 2.0 * M_PI / 516.5e-9 * 160e-9 * std::sqrt(1.4615 * 1.4615 - 1.0);
    EXPECT_NEAR(value_of(j, "V"), v, 1e-12);
}

TEST(CliConfig, LengthAndAngleUnits) {
    // 198 nm from the axis of a 180 nm fiber is 1.1a
    const auto a = run({"rabi", "--atom-r", "198nm"});
    const auto b = run({"rabi", "--atom-r", "1.1a"});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(lines(a.out).back(), lines(b.out).back());

    const auto pi = run_json({"rabi", "--atom-phi", "1pi"});
    std::ostringstream pi_rad;
    pi_rad << std::setprecision(17) << M_PI << "rad";
    const auto rad = run_json({"rabi", "--atom-phi", pi_rad.str()});
    const auto c = column(pi, "abs_omega");
    double scale = 0.0;
    for (const auto& row : pi["rows"]) scale = std::max(scale, row[c].get<double>());
    ASSERT_GT(scale, 0.0);
    for (std::size_t i = 0; i < pi["rows"].size(); ++i) {
        const double x = pi["rows"][i][c].get<double>(), y = rad["rows"][i][c].get<double>();
        EXPECT_NEAR(x, y, 1e-12 * scale);
    }
}

TEST(CliRabi, ForbiddenExitsThree) {
    // F=2 -> F'=5 is beyond the quadrupole triangle
    auto r = run({"rabi", "--F-up", "5", "--q", "0", "--M", "0"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("forbidden"), std::string::npos) << r.err;
    r = run({"rabi", "--F", "2", "--M", "2", "--F-up", "4", "--q", "-2", "--L-up", "1"});
    EXPECT_EQ(r.code, 3);
    // M'=M+q outside F'=1
    r = run({"rabi", "--F", "2", "--M", "2", "--F-up", "1", "--q", "1"});
    EXPECT_EQ(r.code, 3);
    r = run({"emission", "--F-up", "5", "--q", "0", "--M", "0"});
    EXPECT_EQ(r.code, 3);
}

TEST(CliRabi, PartiallyForbiddenIsAnnotated) {
    // F=2, M=2 -> F'=3: q=+2 would need M'=4
    const auto j = run_json({"rabi", "--F-up", "3"});
    const auto q = column(j, "q"), note = column(j, "note"), w = column(j, "abs_omega");
    bool saw_forbidden = false;
    for (const auto& row : j["rows"]) {
        if (row[q] == 2) {
            EXPECT_EQ(row[note].get<std::string>().rfind("forbidden", 0), 0u);
            EXPECT_TRUE(row[w].is_null());
            saw_forbidden = true;
        }
    }
    EXPECT_TRUE(saw_forbidden);
}

TEST(CliRabi, VanishingChannelsAreExactZero) {
    const auto j = run_json({"rabi"});
    const auto q = column(j, "q"), pol = column(j, "pol"), w = column(j, "abs_omega"), note = column(j, "note");
    EXPECT_EQ(j["rows"].size(), 20u);
    for (const auto& row : j["rows"]) {
        const int qq = row[q].get<int>();
        const bool y = row[pol] == "y";
        const bool vanishes = (y && qq % 2 == 0) || (!y && std::abs(qq) == 1);
        if (vanishes) {
            EXPECT_EQ(row[w].get<double>(), 0.0);
            EXPECT_EQ(row[note], "vanishing");
        } else {
            EXPECT_GT(row[w].get<double>(), 0.0);
        }
    }
}

TEST(CliRabi, ZeroPowerGivesZero) {
    const auto j = run_json({"rabi", "--power-nw", "0"});
    const auto w = column(j, "abs_omega");
    for (const auto& row : j["rows"]) EXPECT_EQ(row[w].get<double>(), 0.0);
    const auto s = run_json({"rabi", "--figure", "fig3", "--power-nw", "0"});
    for (const auto& row : s["rows"])
        for (std::size_t i = 1; i + 1 < row.size(); ++i) EXPECT_EQ(row[i].get<double>(), 0.0);
}

TEST(CliRabi, Fig3HasFiveChannels) {
    const auto j = run_json({"rabi", "--figure", "fig3"});
    const std::vector<std::string> expected = {
        "r_over_a",
        "abs_omega_q-2_x_f+1", "abs_omega_q-2_x_f-1",
        "abs_omega_q-1_y_f+1", "abs_omega_q-1_y_f-1",
        "abs_omega_q0_x_f+1", "abs_omega_q0_x_f-1",
        "abs_omega_q1_y_f+1", "abs_omega_q1_y_f-1",
        "abs_omega_q2_x_f+1", "abs_omega_q2_x_f-1",
        "error"};
    EXPECT_EQ(j["columns"].get<std::vector<std::string>>(), expected);
    EXPECT_EQ(j["rows"].size(), 400u);
    EXPECT_DOUBLE_EQ(j["rows"][0][0].get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(j["rows"][399][0].get<double>(), 3.0);
}

TEST(CliRabi, Fig2DirectionsCoincide) {
    const auto j = run_json({"rabi", "--figure", "fig2"});
    const auto& cols = j["columns"];
    int pairs = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const std::string name = cols[c];
        if (name.size() < 4 || name.substr(name.size() - 4) != "_f+1") continue;
        ++pairs;
        for (const auto& row : j["rows"]) {
            const double p = row[c].get<double>(), m = row[c + 1].get<double>();
            EXPECT_LE(std::abs(p - m), 1e-12 * std::max(p, m)) << name;
        }
        if (name == "abs_omega_q0_y_f+1") {
            for (const auto& row : j["rows"]) EXPECT_EQ(row[c].get<double>(), 0.0);
        }
    }
    EXPECT_EQ(pairs, 10);
}

TEST(CliRabi, QuantZFlagIgnoresDirection) {
    const auto j = run_json({"rabi", "--quant", "z", "--q", "1"});
    ASSERT_EQ(j["rows"].size(), 4u);
    const auto w = column(j, "abs_omega");
    EXPECT_DOUBLE_EQ(j["rows"][0][w].get<double>(), j["rows"][1][w].get<double>());
    EXPECT_DOUBLE_EQ(j["rows"][2][w].get<double>(), j["rows"][3][w].get<double>());
}

TEST(CliAsym, Fig4Schema) {
    const auto j = run_json({"asym", "--figure", "fig4"});
    const std::vector<std::string> expected = {"r_over_a", "eta_q-2_x", "eta_q-1_y", "eta_q0_x", "eta_q1_y",
                                               "eta_q2_x", "undefined", "error"};
    EXPECT_EQ(j["columns"].get<std::vector<std::string>>(), expected);
    for (const auto& row : j["rows"]) {
        EXPECT_EQ(row[3].get<double>(), 0.0);
        EXPECT_GT(std::abs(row[1].get<double>()), 0.99);
        EXPECT_GT(std::abs(row[5].get<double>()), 0.99);
        EXPECT_GT(std::abs(row[2].get<double>()), 0.85);
        EXPECT_EQ(row[6], "");
        EXPECT_EQ(row[7], "");
    }
    const auto r = run({"asym", "--figure", "fig4"});
    const auto ls = lines(r.out);
    EXPECT_EQ(ls[2], "r_over_a,eta_q-2_x,eta_q-1_y,eta_q0_x,eta_q1_y,eta_q2_x,undefined,error");
}

TEST(CliAsym, Fig5LimitsAgree) {
    const auto j = run_json({"asym", "--figure", "fig5", "--limits"});
    const auto& last = j["rows"].back();
    EXPECT_NEAR(last[column(j, "r_over_a")].get<double>(), 30.0, 1e-12);
    for (const std::string ch : {"eta_q1_y", "eta_q2_x"}) {
        const double eta = last[column(j, ch)].get<double>();
        const double inf = last[column(j, ch + "_inf")].get<double>();
        EXPECT_LE(std::abs(eta - inf) / std::abs(inf), 0.01) << ch;
    }
    EXPECT_NEAR(last[column(j, "eta_q1_y_large_a")].get<double>(), 0.9522, 5e-4);
    EXPECT_NEAR(last[column(j, "eta_q2_x_large_a")].get<double>(), 0.9989, 5e-4);
}

TEST(CliAsym, Fig8ChangesSignAtQuarterTurns) {
    const auto j = run_json({"asym", "--figure", "fig8"});
    const auto phi = column(j, "phi_rad"), e1 = column(j, "eta_q1_y"), e2 = column(j, "eta_q2_x");
    const auto& rows = j["rows"];
    for (double target : {M_PI / 2, 3 * M_PI / 2}) {
        for (auto c : {e1, e2}) {
            bool crossed = false;
            for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
                const double p0 = rows[i][phi].get<double>(), p1 = rows[i + 1][phi].get<double>();
                if (p0 <= target && target <= p1) {
                    crossed = rows[i][c].get<double>() * rows[i + 1][c].get<double>() <= 0.0;
                    EXPECT_LT(std::abs(rows[i][c].get<double>()), 0.05);
                }
            }
            EXPECT_TRUE(crossed) << target;
        }
    }
}

TEST(CliAsym, FindPeakEta1) {
    const auto j = run_json({"asym", "--find", "peak-eta1"});
    ASSERT_EQ(j["rows"].size(), 1u);
    const auto& row = j["rows"][0];
    EXPECT_EQ(row[0], "peak-eta1");
    EXPECT_NEAR(row[2].get<double>(), 1.6, 0.1);
    EXPECT_NEAR(std::abs(row[3].get<double>()), 0.92, 0.01);
}

TEST(CliAsym, PointTableAtOnAxisPosition) {
    const auto j = run_json({"asym", "--limits"});
    const auto q = column(j, "q"), pol = column(j, "pol"), eta = column(j, "eta"), cf = column(j, "eta_closed_form");
    ASSERT_EQ(j["rows"].size(), 10u);
    for (const auto& row : j["rows"]) {
        if (row[eta].is_null()) {
            EXPECT_EQ(row.back(), "undefined");
            continue;
        }
        if (!row[cf].is_null()) {
            EXPECT_NEAR(row[eta].get<double>(), row[cf].get<double>(), 1e-10);
        }
        if (row[q] == 0 && row[pol] == "x") {
            EXPECT_EQ(row[eta].get<double>(), 0.0);
        }
    }
}

TEST(CliEmission, ChannelsAndSigns) {
    const auto j = run_json({"emission"});
    const auto q = column(j, "q"), eg = column(j, "eta_g"), cf = column(j, "eta_closed_form");
    ASSERT_EQ(j["rows"].size(), 5u);
    for (const auto& row : j["rows"]) {
        for (const std::string c : {"gamma_plus_x", "gamma_plus_y", "gamma_minus_x", "gamma_minus_y",
                                    "gamma_plus", "gamma_minus"})
            EXPECT_GE(row[column(j, c)].get<double>(), 0.0) << c;
        if (row[q] == 0) {
            EXPECT_EQ(row[eg].get<double>(), 0.0);
        } else {
            EXPECT_NEAR(row[eg].get<double>(), row[cf].get<double>(), 1e-10);
        }
    }
    const auto z = run_json({"emission", "--q", "0"});
    ASSERT_EQ(z["rows"].size(), 1u);
    EXPECT_EQ(z["rows"][0][column(z, "eta_g")].get<double>(), 0.0);
}

TEST(CliEmission, UnidirectionalPoint) {
    const auto j = run_json({"emission", "--radius-nm", "123.5", "--atom-r", "1a", "--q", "1"});
    EXPECT_GT(std::abs(j["rows"][0][column(j, "eta_g")].get<double>()), 0.999);
}

TEST(CliSweep, AzimuthSweepWithQ) {
    const auto j = run_json({"sweep", "--sweep-axis", "phi", "--sweep-points", "5", "--q", "2"});
    EXPECT_EQ(j["rows"].size(), 5u);
    EXPECT_EQ(j["columns"][0], "phi_rad");
    EXPECT_EQ(run({"sweep", "--sweep-from", "0.5"}).code, 4);
    EXPECT_EQ(run({"sweep", "--sweep-from", "2", "--sweep-to", "1"}).code, 4);
}

TEST(CliSweep, FiberRadiusSweepRecordsMultimodeCells) {
    const auto j = run_json({"sweep", "--sweep-axis", "a", "--sweep-from", "100", "--sweep-to", "400",
                             "--sweep-points", "4", "--atom-r", "1a"});
    const auto err = column(j, "error");
    ASSERT_EQ(j["rows"].size(), 4u);
    EXPECT_EQ(j["rows"][0][err], "");
    EXPECT_NE(j["rows"][3][err].get<std::string>().find("multimode"), std::string::npos);
}

TEST(CliProfile, PhaseConvention) {
    const auto j = run_json({"profile", "--sweep-points", "10"});
    EXPECT_EQ(j["rows"].size(), 10u);
    const auto ephi = column(j, "re_e_phi");
    for (const auto& row : j["rows"]) EXPECT_GT(row[ephi].get<double>(), 0.0);
}

TEST(CliHelp, ExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("rabi"), std::string::npos);
}

}  // namespace
