#pragma once

// Run configuration for the command-line front end: flat key=value files,
// command-line overrides and strict validation of every field.
//
// Units: lengths in nm, power in nW, angles suffixed "pi" or "rad",
// atom radial position suffixed "a" (units of the fiber radius) or "nm".

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nanoquad/errors.hpp"
#include "nanoquad/fiber_mode.hpp"
#include "nanoquad/quadrupole.hpp"
#include "nanoquad/sweep.hpp"

namespace nanoquad {

/// Known keys in canonical order, with their default values.
inline const std::vector<std::pair<std::string, std::string>>& config_defaults() {
    static const std::vector<std::pair<std::string, std::string>> d = {
        {"radius-nm", "180"},
        {"n1", "1.4615"},
        {"n2", "1"},
        {"wavelength-nm", "516.5"},
        {"power-nw", "1"},
        {"f-osc", "8.06e-7"},
        {"reduced-me", ""},
        {"F", "2"},
        {"M", "2"},
        {"F-up", "4"},
        {"M-up", ""},
        {"q", ""},
        {"I", "3/2"},
        {"J", "1/2"},
        {"J-up", "5/2"},
        {"L", "0"},
        {"L-up", "2"},
        {"dir", "+1"},
        {"pol", "y"},
        {"phi0", ""},
        {"atom-r", "1.1a"},
        {"atom-phi", "0"},
        {"atom-z-nm", "0"},
        {"quant", "y"},
        {"figure", ""},
        {"find", ""},
        {"limits", "false"},
        {"allow-multimode", "false"},
        {"sweep-axis", "r"},
        {"sweep-from", ""},
        {"sweep-to", ""},
        {"sweep-points", ""},
        {"sweep-scale", ""},
        {"format", "csv"},
        {"out", ""},
        {"precision", "12"},
        {"threads", "0"},
    };
    return d;
}

inline bool is_config_key(const std::string& key) {
    const auto& d = config_defaults();
    return std::any_of(d.begin(), d.end(), [&](const auto& kv) { return kv.first == key; });
}

struct AtomRadius {
    double value = 1.1;
    bool in_units_of_a = true;
};

struct RunConfig {
    double radius_nm = 180.0;
    double n1 = 1.4615;
    double n2 = 1.0;
    double wavelength_nm = 516.5;
    double power_nw = 1.0;
    double f_osc = 8.06e-7;
    std::optional<double> reduced_me;  // m^2; overrides f_osc
    HalfInt F = 2, M = 2, F_up = 4;
    std::optional<HalfInt> M_up;
    std::optional<int> q;
    HalfInt I_nuc = half(3), J = half(1), J_up = half(5), L = 0, L_up = 2;
    Direction dir = Direction::Forward;
    Polarization pol = Polarization::Y;
    std::optional<double> phi0;  // rad; overrides the polarization axis
    AtomRadius atom_r;
    double atom_phi = 0.0;  // rad
    double atom_z_nm = 0.0;
    QuantizationFrame quant = QuantizationFrame::AlongY;
    std::string figure;
    std::string find;
    bool limits = false;
    bool allow_multimode = false;
    SweepAxis sweep_axis = SweepAxis::Radial;
    std::optional<double> sweep_from, sweep_to;  // r/a, nm, or rad depending on the axis
    std::optional<int> sweep_points;
    std::optional<bool> sweep_log;
    std::string format = "csv";
    std::string out;
    int precision = 12;
    unsigned threads = 0;

    /// Resolved key=value pairs in canonical order (reproducibility stamp).
    std::vector<std::pair<std::string, std::string>> resolved;

    FiberSpec fiber() const { return {radius_nm * 1e-9, n1, n2}; }
    double wavelength() const { return wavelength_nm * 1e-9; }
    double omega0() const { return angular_frequency(wavelength()); }
    double power() const { return power_nw * 1e-9; }
    SolveOptions solve_options() const { return {allow_multimode}; }

    double atom_radius(double a) const { return atom_r.in_units_of_a ? atom_r.value * a : atom_r.value * 1e-9; }
    CylindricalPoint position(double a) const { return {atom_radius(a), atom_phi, atom_z_nm * 1e-9}; }

    /// Explicitly requested q (from q or M-up), if any.
    std::optional<int> requested_q() const {
        if (q) return q;
        if (M_up) return (*M_up - M).as_int();
        return std::nullopt;
    }

    double reduced_matrix_element() const {
        if (reduced_me) return *reduced_me;
        return reduced_me_from_oscillator_strength(f_osc, J, J_up, F, F_up, I_nuc, omega0());
    }

    TransitionSpec transition(int qq) const {
        return {F, M, F_up, M + HalfInt(qq), reduced_matrix_element(), quant};
    }

    FieldConfig field(Polarization xi, Direction f, Complex amplitude) const {
        return {f, phi0 ? *phi0 : FieldConfig::orientation(xi), amplitude, power()};
    }

    SweepSetup sweep_setup() const {
        SweepSetup s;
        s.fiber = fiber();
        s.wavelength = wavelength();
        s.power = power();
        s.transition = transition(0);
        s.allow_multimode = allow_multimode;
        s.atom_phi = atom_phi;
        s.atom_z = atom_z_nm * 1e-9;
        if (atom_r.in_units_of_a) {
            s.atom_r_over_a = atom_r.value;
            s.atom_gap = 0.0;
        } else {
            s.atom_r_over_a = 0.0;
            s.atom_gap = atom_r.value * 1e-9;
        }
        s.threads = threads;
        return s;
    }
};

namespace config_detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& text) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '+') t.erase(0, 1);
    double v = 0.0;
    const auto* end = t.data() + t.size();
    const auto r = std::from_chars(t.data(), end, v);
    if (t.empty() || r.ec != std::errc() || r.ptr != end || !std::isfinite(v))
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    return v;
}

inline int parse_int(const std::string& key, const std::string& text) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '+') t.erase(0, 1);
    int v = 0;
    const auto* end = t.data() + t.size();
    const auto r = std::from_chars(t.data(), end, v);
    if (t.empty() || r.ec != std::errc() || r.ptr != end)
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    return v;
}

/// "2", "5/2", "-3/2".
inline HalfInt parse_halfint(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string::npos) return HalfInt(parse_int(key, t));
    if (trim(t.substr(slash + 1)) != "2") throw ConfigError(key + ": only halves are allowed, got '" + text + "'");
    return HalfInt::from_twice(parse_int(key, t.substr(0, slash)));
}

/// Number with a trailing unit suffix; returns (value, suffix).
inline std::pair<double, std::string> split_suffix(const std::string& key, const std::string& text,
                                                   const std::vector<std::string>& suffixes) {
    const std::string t = trim(text);
    for (const auto& s : suffixes)
        if (t.size() > s.size() && t.compare(t.size() - s.size(), s.size(), s) == 0)
            return {parse_double(key, t.substr(0, t.size() - s.size())), s};
    const double v = parse_double(key, t);
    return {v, ""};
}

/// "0.5pi", "1.2rad"; an unsuffixed value is accepted only when it is zero.
inline double parse_angle(const std::string& key, const std::string& text) {
    const auto [v, suffix] = split_suffix(key, text, {"pi", "rad"});
    if (suffix == "pi") return v * constants::pi;
    if (suffix == "rad" || v == 0.0) return v;
    throw ConfigError(key + ": angle needs a 'pi' or 'rad' suffix, got '" + text + "'");
}

inline AtomRadius parse_atom_r(const std::string& key, const std::string& text) {
    const auto [v, suffix] = split_suffix(key, text, {"nm", "a"});
    if (suffix.empty()) throw ConfigError(key + ": radial position needs an 'a' or 'nm' suffix, got '" + text + "'");
    if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
    return {v, suffix == "a"};
}

inline bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(key + ": expected true/false, got '" + text + "'");
}

inline std::string one_of(const std::string& key, const std::string& text, const std::vector<std::string>& allowed) {
    const std::string t = trim(text);
    if (std::find(allowed.begin(), allowed.end(), t) != allowed.end()) return t;
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ConfigError(key + ": expected one of {" + list + "}, got '" + text + "'");
}

}  // namespace config_detail

/// Parse a flat key=value file. Blank lines and '#' comments are ignored;
/// unknown or repeated keys are rejected.
inline std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                            const std::string& origin = "config") {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = config_detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = config_detail::trim(line.substr(0, eq));
        const std::string value = config_detail::trim(line.substr(eq + 1));
        if (!is_config_key(key)) throw ConfigError(where + ": unknown key '" + key + "'");
        if (out.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
        out[key] = value;
    }
    return out;
}

inline std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

/// Build and validate a RunConfig from defaults overlaid with `values`.
inline RunConfig resolve_config(const std::map<std::string, std::string>& values) {
    using namespace config_detail;
    for (const auto& [k, v] : values)
        if (!is_config_key(k)) throw ConfigError("unknown key '" + k + "'");

    RunConfig c;
    for (const auto& [key, def] : config_defaults()) {
        const auto it = values.find(key);
        const std::string v = trim(it != values.end() ? it->second : def);
        c.resolved.emplace_back(key, v);
        const bool set = !v.empty();
        if (key == "radius-nm") c.radius_nm = parse_double(key, v);
        else if (key == "n1") c.n1 = parse_double(key, v);
        else if (key == "n2") c.n2 = parse_double(key, v);
        else if (key == "wavelength-nm") c.wavelength_nm = parse_double(key, v);
        else if (key == "power-nw") c.power_nw = parse_double(key, v);
        else if (key == "f-osc") c.f_osc = parse_double(key, v);
        else if (key == "reduced-me") { if (set) c.reduced_me = parse_double(key, v); }
        else if (key == "F") c.F = parse_halfint(key, v);
        else if (key == "M") c.M = parse_halfint(key, v);
        else if (key == "F-up") c.F_up = parse_halfint(key, v);
        else if (key == "M-up") { if (set) c.M_up = parse_halfint(key, v); }
        else if (key == "q") { if (set) c.q = parse_int(key, v); }
        else if (key == "I") c.I_nuc = parse_halfint(key, v);
        else if (key == "J") c.J = parse_halfint(key, v);
        else if (key == "J-up") c.J_up = parse_halfint(key, v);
        else if (key == "L") c.L = parse_halfint(key, v);
        else if (key == "L-up") c.L_up = parse_halfint(key, v);
        else if (key == "dir") {
            const auto d = one_of(key, v, {"+1", "1", "-1", "forward", "backward"});
            c.dir = (d == "-1" || d == "backward") ? Direction::Backward : Direction::Forward;
        } else if (key == "pol") c.pol = one_of(key, v, {"x", "y"}) == "x" ? Polarization::X : Polarization::Y;
        else if (key == "phi0") { if (set) c.phi0 = parse_angle(key, v); }
        else if (key == "atom-r") c.atom_r = parse_atom_r(key, v);
        else if (key == "atom-phi") c.atom_phi = parse_angle(key, v);
        else if (key == "atom-z-nm") c.atom_z_nm = parse_double(key, v);
        else if (key == "quant")
            c.quant = one_of(key, v, {"z", "y"}) == "z" ? QuantizationFrame::AlongZ : QuantizationFrame::AlongY;
        else if (key == "figure") { if (set) c.figure = one_of(key, v, figure_names()); }
        else if (key == "find") { if (set) c.find = one_of(key, v, find_names()); }
        else if (key == "limits") c.limits = parse_bool(key, v);
        else if (key == "allow-multimode") c.allow_multimode = parse_bool(key, v);
        else if (key == "sweep-axis") {
            const auto a = one_of(key, v, {"r", "a", "phi"});
            c.sweep_axis = a == "r" ? SweepAxis::Radial : a == "a" ? SweepAxis::FiberRadius : SweepAxis::Azimuth;
        } else if (key == "sweep-from") { if (set) c.sweep_from = parse_double(key, v); }
        else if (key == "sweep-to") { if (set) c.sweep_to = parse_double(key, v); }
        else if (key == "sweep-points") { if (set) c.sweep_points = parse_int(key, v); }
        else if (key == "sweep-scale") { if (set) c.sweep_log = one_of(key, v, {"lin", "log"}) == "log"; }
        else if (key == "format") c.format = one_of(key, v, {"csv", "json"});
        else if (key == "out") c.out = v;
        else if (key == "precision") c.precision = parse_int(key, v);
        else if (key == "threads") {
            const int t = parse_int(key, v);
            if (t < 0) throw ConfigError("threads: must be nonnegative");
            c.threads = static_cast<unsigned>(t);
        }
    }

    if (!(c.radius_nm > 0.0)) throw ConfigError("radius-nm: must be positive");
    if (!(c.n2 > 0.0) || !(c.n1 > c.n2)) throw ConfigError("n1, n2: require n1 > n2 > 0");
    if (!(c.wavelength_nm > 0.0)) throw ConfigError("wavelength-nm: must be positive");
    if (!(c.power_nw >= 0.0)) throw ConfigError("power-nw: must be nonnegative");
    if (!(c.f_osc >= 0.0)) throw ConfigError("f-osc: must be nonnegative");
    if (c.precision < 1 || c.precision > 17) throw ConfigError("precision: must be in 1..17");
    for (auto [name, j] : {std::pair{"F", c.F}, {"F-up", c.F_up}, {"I", c.I_nuc}, {"J", c.J}, {"J-up", c.J_up},
                           {"L", c.L}, {"L-up", c.L_up}})
        if (j.twice() < 0) throw ConfigError(std::string(name) + ": must be nonnegative");
    if (!valid_projection(c.F, c.M)) throw ConfigError("M: not a projection of F");
    if (c.M_up && !valid_projection(c.F_up, *c.M_up)) throw ConfigError("M-up: not a projection of F-up");
    if (c.q && std::abs(*c.q) > 2) throw ConfigError("q: must be in -2..2");
    if (c.q && c.M_up && (*c.M_up - c.M).twice() != 2 * *c.q) throw ConfigError("q and M-up disagree");
    if (c.M_up && !(*c.M_up - c.M).is_integer()) throw ConfigError("M-up - M must be an integer");
    if (c.sweep_points && *c.sweep_points < 0) throw ConfigError("sweep-points: must be nonnegative");
    if (c.sweep_from && c.sweep_to && !(*c.sweep_to >= *c.sweep_from))
        throw ConfigError("sweep-to must not be below sweep-from");
    if (c.sweep_log && *c.sweep_log && c.sweep_from && !(*c.sweep_from > 0.0))
        throw ConfigError("sweep-scale log needs a positive sweep-from");
    if (c.atom_r.in_units_of_a && c.atom_r.value < 1.0)
        throw ConfigError("atom-r: the atom must sit outside the fiber (r >= a)");
    if (!c.atom_r.in_units_of_a && c.atom_r.value < c.radius_nm)
        throw ConfigError("atom-r: the atom must sit outside the fiber (r >= a)");
    return c;
}

}  // namespace nanoquad
