#pragma once

// Command-line front end: mode | profile | rabi | asym | emission | sweep.
//
// Exit codes: 0 success, 1 other failure, 2 mode-solver failure,
// 3 forbidden transition, 4 configuration error.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nanoquad/chirality.hpp"
#include "nanoquad/errors.hpp"
#include "nanoquad/fiber_mode.hpp"
#include "nanoquad/quadrupole.hpp"
#include "nanoquad/report_io.hpp"
#include "nanoquad/run_config.hpp"
#include "nanoquad/sweep.hpp"

namespace nanoquad {

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_mode_failure = 2,
    exit_forbidden = 3,
    exit_config_error = 4,
};

namespace cli_detail {

inline std::string channel_name(int q, Polarization xi) {
    return "q" + std::to_string(q) + "_" + axis_name(xi);
}

inline std::string dir_name(Direction f) { return f == Direction::Forward ? "+1" : "-1"; }

inline Report make_report(const std::string& command, const RunConfig& cfg) {
    Report r;
    r.command = command;
    r.config = cfg.resolved;
    return r;
}

inline std::vector<int> requested_qs(const RunConfig& cfg) {
    if (auto q = cfg.requested_q()) return {*q};
    return {-2, -1, 0, 1, 2};
}

/// Checks the J/L-level rules and the F/M rules for one q; returns the reason when forbidden.
inline std::string forbidden_reason(const RunConfig& cfg, int q) {
    const auto check = check_selection_rules(cfg.transition(q), cfg.J, cfg.J_up, cfg.L, cfg.L_up);
    return check.allowed ? std::string{} : check.reason;
}

/// Forbidden when an explicitly requested q fails, or when every q fails.
inline void require_some_allowed(const RunConfig& cfg, const std::vector<int>& qs) {
    std::string last;
    for (int q : qs) {
        auto why = forbidden_reason(cfg, q);
        if (why.empty()) return;
        last = why;
    }
    throw ForbiddenTransition("forbidden transition: " + last);
}

inline std::vector<double> sweep_grid(const RunConfig& cfg) {
    double lo = 1.0, hi = 3.0;
    int n = 400;
    bool log = true;
    double unit = 1.0;
    if (cfg.sweep_axis == SweepAxis::FiberRadius) {
        lo = 50.0, hi = 1000.0, n = 600, log = false, unit = 1e-9;
    } else if (cfg.sweep_axis == SweepAxis::Azimuth) {
        lo = 0.0, hi = 2.0 * constants::pi, n = 600, log = false;
    }
    if (cfg.sweep_from) lo = *cfg.sweep_from;
    if (cfg.sweep_to) hi = *cfg.sweep_to;
    if (cfg.sweep_points) n = *cfg.sweep_points;
    if (cfg.sweep_log) log = *cfg.sweep_log;
    if (n > 1 && !(hi > lo)) throw ConfigError("sweep range is empty");
    if (cfg.sweep_axis == SweepAxis::Radial && lo < 1.0) throw ConfigError("radial sweep must start at r/a >= 1");
    if (log && !(lo > 0.0)) throw ConfigError("log sweep needs a positive lower bound");
    auto grid = log ? numerics::logspace(lo, hi, static_cast<std::size_t>(n))
                    : numerics::linspace(lo, hi, static_cast<std::size_t>(n));
    for (double& g : grid) g *= unit;
    return grid;
}

inline double axis_value(SweepAxis axis, double g) { return axis == SweepAxis::FiberRadius ? g * 1e9 : g; }

inline void add_sweep_columns(Report& rep, const SweepTable& t, bool rabi, bool eta,
                              const std::vector<std::pair<std::string, double>>& constants = {}) {
    auto& tab = rep.table;
    tab.columns.push_back(axis_column(t.axis));
    for (const auto& c : t.channels) {
        const auto name = channel_name(c.channel.q, c.channel.xi);
        if (rabi) {
            tab.columns.push_back("abs_omega_" + name + "_f+1");
            tab.columns.push_back("abs_omega_" + name + "_f-1");
        }
        if (eta) tab.columns.push_back("eta_" + name);
    }
    for (const auto& [name, v] : constants) tab.columns.push_back(name);
    if (eta) tab.columns.push_back("undefined");
    tab.columns.push_back("error");
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::vector<Cell> row{axis_value(t.axis, t.grid[i])};
        std::string undefined;
        for (const auto& c : t.channels) {
            if (rabi) {
                row.emplace_back(c.omega_plus[i]);
                row.emplace_back(c.omega_minus[i]);
            }
            if (eta) {
                row.emplace_back(c.eta[i]);
                if (std::isnan(c.eta[i]) && t.errors[i].empty())
                    undefined += (undefined.empty() ? "" : " ") + channel_name(c.channel.q, c.channel.xi);
            }
        }
        for (const auto& kv : constants) row.emplace_back(kv.second);
        if (eta) row.emplace_back(undefined);
        row.emplace_back(t.errors[i]);
        tab.add_row(std::move(row));
    }
    if (rabi) rep.notes.push_back("abs_omega in rad/s");
}

inline Report run_preset(const std::string& command, const RunConfig& cfg, bool rabi, bool eta) {
    auto preset = figure_preset(cfg.figure, cfg.sweep_setup());
    auto table = sweep(preset.axis, preset.grid, preset.setup);
    Report rep = make_report(command, cfg);
    rep.notes.push_back("figure " + cfg.figure);
    std::vector<std::pair<std::string, double>> limits;
    if (cfg.limits && eta && preset.axis == SweepAxis::Radial) {
        const auto mode = solve_he11_at_wavelength(preset.setup.fiber, preset.setup.wavelength, cfg.solve_options());
        const auto lr = asymmetry_limits_large_r(mode);
        limits = {{"eta_q1_y_inf", lr.eta1}, {"eta_q2_x_inf", lr.eta2}};
    }
    if (cfg.limits && eta) {
        const auto la = asymmetry_limits_large_a(cfg.n1, cfg.n2);
        limits.push_back({"eta_q1_y_large_a", la.eta1});
        limits.push_back({"eta_q2_x_large_a", la.eta2});
    }
    add_sweep_columns(rep, table, rabi, eta, limits);
    return rep;
}

// ---------------------------------------------------------------------------

inline Report cmd_mode(const RunConfig& cfg) {
    const auto fiber = cfg.fiber();
    const double v = v_number(fiber, cfg.wavelength());
    const auto mode = solve_he11_at_wavelength(fiber, cfg.wavelength(), cfg.solve_options());
    const double bp = beta_derivative(fiber, mode.omega, cfg.solve_options());
    Report rep = make_report("mode", cfg);
    rep.table.columns = {"quantity", "value", "unit"};
    const auto add = [&](const std::string& k, Cell v, const std::string& unit) {
        rep.table.add_row({k, std::move(v), unit});
    };
    add("V", v, "");
    add("single_mode", std::string(v < constants::single_mode_cutoff ? "yes" : "no"), "");
    add("beta", mode.beta, "1/m");
    add("beta_over_k", mode.beta / mode.k, "");
    add("kappa", mode.kappa, "1/m");
    add("h", mode.h_in, "1/m");
    add("s", mode.hybrid_s, "");
    add("beta_prime", bp, "s/m");
    add("group_index", constants::c * bp, "");
    add("dispersion_residual", mode.dispersion_residual, "");
    return rep;
}

inline Report cmd_profile(const RunConfig& cfg) {
    const auto fiber = cfg.fiber();
    const auto mode = solve_he11_at_wavelength(fiber, cfg.wavelength(), cfg.solve_options());
    const double lo = cfg.sweep_from.value_or(0.05), hi = cfg.sweep_to.value_or(3.0);
    if (!(lo > 0.0)) throw ConfigError("profile grid must start at r > 0");
    const auto grid = numerics::linspace(lo, hi, static_cast<std::size_t>(cfg.sweep_points.value_or(60)));
    Report rep = make_report("profile", cfg);
    rep.notes.push_back("normalized mode profile; e_r and de_r are imaginary, the rest real");
    rep.table.columns = {"r_over_a", "r_nm", "im_e_r", "re_e_phi", "re_e_z", "im_de_r", "re_de_phi", "re_de_z"};
    for (double x : grid) {
        const auto p = mode_profile(mode, x * fiber.radius);
        rep.table.add_row({x, x * cfg.radius_nm, p.e_r.imag(), p.e_phi.real(), p.e_z.real(), p.de_r.imag(),
                           p.de_phi.real(), p.de_z.real()});
    }
    return rep;
}

inline Report cmd_rabi(const RunConfig& cfg) {
    if (!cfg.figure.empty()) return run_preset("rabi", cfg, true, false);
    const auto qs = requested_qs(cfg);
    if (cfg.requested_q() || qs.size() == 1) {
        if (auto why = forbidden_reason(cfg, qs.front()); !why.empty())
            throw ForbiddenTransition("forbidden transition: " + why);
    }
    require_some_allowed(cfg, qs);
    const auto fiber = cfg.fiber();
    const auto mode = solve_he11_at_wavelength(fiber, cfg.wavelength(), cfg.solve_options());
    const Complex amp = amplitude_for_power(mode, cfg.power());
    const auto pos = cfg.position(fiber.radius);
    Report rep = make_report("rabi", cfg);
    rep.notes.push_back("abs_omega in rad/s; C_coeff in rad/s per V/m^2");
    rep.table.columns = {"q", "M_up", "pol", "dir", "C_coeff", "re_S", "im_S", "abs_omega", "note"};
    const std::vector<Polarization> pols = {Polarization::X, Polarization::Y};
    for (int q : qs) {
        const auto why = forbidden_reason(cfg, q);
        const auto t = cfg.transition(q);
        for (auto xi : pols)
            for (auto f : {Direction::Forward, Direction::Backward}) {
                const std::string pol = cfg.phi0 ? "phi0" : std::string(1, axis_name(xi));
                if (!why.empty()) {
                    rep.table.add_row({static_cast<long long>(q), t.M_up.to_string(), pol, dir_name(f),
                                       std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                                       "forbidden: " + why});
                    continue;
                }
                const auto res = rabi_frequency(t, mode, cfg.field(xi, f, amp), pos);
                const bool vanishing = res.S_q == 0.0 || res.C_coeff == 0.0;
                rep.table.add_row({static_cast<long long>(q), t.M_up.to_string(), pol, dir_name(f), res.C_coeff,
                                   res.S_q.real(), res.S_q.imag(), vanishing ? 0.0 : std::abs(res.Omega),
                                   std::string(vanishing ? "vanishing" : "")});
            }
        if (cfg.phi0) {
            // With an explicit polarization angle the two xi rows coincide; keep the first pair.
            auto& rows = rep.table.rows;
            rows.erase(rows.end() - 2, rows.end());
        }
    }
    return rep;
}

inline Report cmd_asym(const RunConfig& cfg) {
    if (!cfg.find.empty()) {
        const auto r = find_named(cfg.find, cfg.sweep_setup());
        Report rep = make_report("asym", cfg);
        rep.table.columns = {"search", "abscissa", "location", "value"};
        rep.table.add_row({r.name, r.abscissa, r.location, r.value});
        return rep;
    }
    if (!cfg.figure.empty()) return run_preset("asym", cfg, false, true);

    const auto fiber = cfg.fiber();
    const auto mode = solve_he11_at_wavelength(fiber, cfg.wavelength(), cfg.solve_options());
    const auto pos = cfg.position(fiber.radius);
    const bool on_x_axis = numerics::cos_sin(pos.phi).sin == 0.0 && numerics::cos_sin(pos.phi).cos > 0.0;
    const bool closed_form_ok = on_x_axis && cfg.quant == QuantizationFrame::AlongY;
    Report rep = make_report("asym", cfg);
    rep.table.columns = {"q", "pol", "eta", "eta_closed_form", "abs_S_plus", "abs_S_minus"};
    std::optional<LimitingAsymmetry> lr, la;
    if (cfg.limits) {
        lr = asymmetry_limits_large_r(mode);
        la = asymmetry_limits_large_a(cfg.n1, cfg.n2);
        for (const char* c : {"eta_inf_r", "eta_large_a"}) rep.table.columns.push_back(c);
    }
    rep.table.columns.push_back("note");
    for (int q : requested_qs(cfg))
        for (auto xi : {Polarization::X, Polarization::Y}) {
            const auto r = asymmetry_report(mode, q, xi, pos, cfg.quant);
            std::vector<Cell> row{static_cast<long long>(q), std::string(1, axis_name(xi))};
            row.emplace_back(r.eta ? Cell{*r.eta} : Cell{});
            if (closed_form_ok && x_axis_channel_nonvanishing(q, xi))
                row.emplace_back(asymmetry_closed_form(mode, pos.r, q, xi));
            else
                row.emplace_back(std::monostate{});
            row.emplace_back(std::abs(r.S_plus));
            row.emplace_back(std::abs(r.S_minus));
            if (cfg.limits) {
                const double sgn = q > 0 ? 1.0 : -1.0;
                if (std::abs(q) == 1 && xi == Polarization::Y) {
                    row.emplace_back(sgn * lr->eta1);
                    row.emplace_back(sgn * la->eta1);
                } else if (std::abs(q) == 2 && xi == Polarization::X) {
                    row.emplace_back(sgn * lr->eta2);
                    row.emplace_back(sgn * la->eta2);
                } else {
                    row.emplace_back(std::monostate{});
                    row.emplace_back(std::monostate{});
                }
            }
            row.emplace_back(std::string(r.eta ? "" : "undefined"));
            rep.table.add_row(std::move(row));
        }
    return rep;
}

inline Report cmd_emission(const RunConfig& cfg) {
    const auto qs = requested_qs(cfg);
    if (cfg.requested_q()) {
        if (auto why = forbidden_reason(cfg, qs.front()); !why.empty())
            throw ForbiddenTransition("forbidden transition: " + why);
    }
    require_some_allowed(cfg, qs);
    const auto fiber = cfg.fiber();
    const auto mode = solve_he11(fiber, cfg.omega0(), cfg.solve_options());
    const double bp = beta_derivative(fiber, cfg.omega0(), cfg.solve_options());
    const auto pos = cfg.position(fiber.radius);
    const bool closed_form_ok = numerics::cos_sin(pos.phi).sin == 0.0 && numerics::cos_sin(pos.phi).cos > 0.0 &&
                                cfg.quant == QuantizationFrame::AlongY;
    Report rep = make_report("emission", cfg);
    rep.notes.push_back("rates in 1/s");
    rep.table.columns = {"q",           "M_up",          "gamma_plus_x", "gamma_plus_y", "gamma_minus_x",
                         "gamma_minus_y", "gamma_plus", "gamma_minus",  "eta_g",        "eta_closed_form",
                         "note"};
    for (int q : qs) {
        const auto t = cfg.transition(q);
        if (auto why = forbidden_reason(cfg, q); !why.empty()) {
            std::vector<Cell> row{static_cast<long long>(q), t.M_up.to_string()};
            row.resize(10);
            row.emplace_back("forbidden: " + why);
            rep.table.add_row(std::move(row));
            continue;
        }
        const auto e = emission_asymmetry(t, mode, bp, pos);
        Cell closed{};
        if (closed_form_ok) {
            const auto xi = std::abs(q) == 1 ? Polarization::Y : Polarization::X;
            closed = asymmetry_closed_form(mode, pos.r, q, xi);
        }
        rep.table.add_row({static_cast<long long>(q), t.M_up.to_string(), e.gamma_plus_x, e.gamma_plus_y,
                           e.gamma_minus_x, e.gamma_minus_y, e.gamma_plus, e.gamma_minus,
                           e.eta_g ? Cell{*e.eta_g} : Cell{}, closed, std::string(e.eta_g ? "" : "undefined")});
    }
    return rep;
}

inline Report cmd_sweep(const RunConfig& cfg) {
    if (!cfg.figure.empty()) {
        const bool rabi = figure_preset(cfg.figure, cfg.sweep_setup()).kind == PresetKind::Rabi;
        return run_preset("sweep", cfg, rabi, !rabi);
    }
    auto setup = cfg.sweep_setup();
    setup.transition.frame = cfg.quant;
    if (auto q = cfg.requested_q()) {
        setup.channels.clear();
        for (auto xi : {Polarization::X, Polarization::Y}) setup.channels.push_back({*q, xi});
    }
    const auto table = sweep(cfg.sweep_axis, sweep_grid(cfg), setup);
    Report rep = make_report("sweep", cfg);
    add_sweep_columns(rep, table, true, true);
    return rep;
}

inline void emit(const Report& rep, const RunConfig& cfg, std::ostream& out) {
    std::ofstream file;
    std::ostream* os = &out;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) throw ConfigError("cannot write '" + cfg.out + "'");
        os = &file;
    }
    if (cfg.format == "json")
        write_json(*os, rep);
    else
        write_csv(*os, rep, cfg.precision);
}

}  // namespace cli_detail

/// Parse arguments, run one subcommand and write its report. Returns the exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Electric quadrupole coupling of an atom to the guided mode of an optical nanofiber"};
    app.fallthrough();
    app.require_subcommand(1, 1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key=value configuration file");
    std::map<std::string, std::string> cli_values;
    std::map<std::string, CLI::Option*> options;
    bool flag_limits = false, flag_multimode = false;
    for (const auto& [key, def] : config_defaults()) {
        if (key == "limits" || key == "allow-multimode") continue;
        options[key] = app.add_option("--" + key, cli_values[key], def.empty() ? "" : "default: " + def);
    }
    auto* opt_limits = app.add_flag("--limits", flag_limits, "print the large-r / large-a limiting asymmetries");
    auto* opt_multi = app.add_flag("--allow-multimode", flag_multimode, "solve the HE11 branch above V = 2.405");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"mode", "dispersion summary of the HE11 mode"},
        {"profile", "normalized mode profile versus radius"},
        {"rabi", "Rabi frequencies per (q, f, xi) or a figure sweep"},
        {"asym", "asymmetry parameters, figure sweeps or named searches"},
        {"emission", "guided spontaneous-emission rates and their asymmetry"},
        {"sweep", "sweep over r, a or phi"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }

    std::string command;
    for (auto* sub : app.get_subcommands()) command = sub->get_name();

    RunConfig cfg;
    try {
        std::map<std::string, std::string> values;
        if (!config_path.empty()) values = load_config_file(config_path);
        for (const auto& [key, opt] : options)
            if (opt->count() > 0) values[key] = cli_values[key];
        if (opt_limits->count() > 0) values["limits"] = "true";
        if (opt_multi->count() > 0) values["allow-multimode"] = "true";
        cfg = resolve_config(values);

        Report rep;
        if (command == "mode") rep = cli_detail::cmd_mode(cfg);
        else if (command == "profile") rep = cli_detail::cmd_profile(cfg);
        else if (command == "rabi") rep = cli_detail::cmd_rabi(cfg);
        else if (command == "asym") rep = cli_detail::cmd_asym(cfg);
        else if (command == "emission") rep = cli_detail::cmd_emission(cfg);
        else rep = cli_detail::cmd_sweep(cfg);
        cli_detail::emit(rep, cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const MultimodeRegime& e) {
        err << "mode solver: " << e.what() << '\n';
        return exit_mode_failure;
    } catch (const NoGuidedMode& e) {
        err << "mode solver: " << e.what() << '\n';
        return exit_mode_failure;
    } catch (const ForbiddenTransition& e) {
        err << e.what() << '\n';
        return exit_forbidden;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_ok;
}

}  // namespace nanoquad
