#pragma once

// Parameter sweeps over radial distance, fiber radius or azimuth, plus the
// named figure presets and extremum/root searches built on them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "nanoquad/chirality.hpp"
#include "nanoquad/errors.hpp"
#include "nanoquad/fiber_mode.hpp"
#include "nanoquad/numerics.hpp"
#include "nanoquad/quadrupole.hpp"

namespace nanoquad {

enum class SweepAxis { Radial, FiberRadius, Azimuth };

inline const char* axis_column(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Radial: return "r_over_a";
        case SweepAxis::FiberRadius: return "a_nm";
        case SweepAxis::Azimuth: return "phi_rad";
    }
    return "x";
}

struct Channel {
    int q = 0;
    Polarization xi = Polarization::X;
};

inline std::vector<Channel> all_channels() {
    std::vector<Channel> out;
    for (int q = -2; q <= 2; ++q)
        for (auto xi : {Polarization::X, Polarization::Y}) out.push_back({q, xi});
    return out;
}

/// Channels that survive on the x axis with the y quantization axis, ordered by q.
inline std::vector<Channel> x_axis_channels() {
    std::vector<Channel> out;
    for (int q = -2; q <= 2; ++q) out.push_back({q, std::abs(q) == 1 ? Polarization::Y : Polarization::X});
    return out;
}

struct SweepSetup {
    FiberSpec fiber;
    double wavelength = 516.5e-9;
    double power = 1e-9;
    TransitionSpec transition;  // M_up is replaced by M + q for each channel
    // Atom position for the radius and azimuth axes: r = atom_r_over_a * a + atom_gap.
    double atom_r_over_a = 1.0;
    double atom_gap = 0.0;
    double atom_phi = 0.0;
    double atom_z = 0.0;
    bool allow_multimode = false;
    std::vector<Channel> channels = all_channels();
    // eta is left undefined where max(|S+|, |S-|) is below this fraction of the
    // largest field-gradient entry at the same point.
    double undefined_tolerance = 1e-14;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct ChannelData {
    Channel channel;
    std::vector<double> omega_plus;   // |Omega| for f = +1, rad/s
    std::vector<double> omega_minus;  // |Omega| for f = -1, rad/s
    std::vector<double> eta;          // NaN where undefined or failed
};

struct SweepTable {
    SweepAxis axis = SweepAxis::Radial;
    std::vector<double> grid;
    std::vector<ChannelData> channels;
    std::vector<std::string> errors;  // per grid point; empty when the point succeeded

    std::size_t size() const { return grid.size(); }
    const ChannelData& channel(int q, Polarization xi) const {
        for (const auto& c : channels)
            if (c.channel.q == q && c.channel.xi == xi) return c;
        throw DomainError("channel not present in sweep");
    }
};

namespace detail {

struct PointResult {
    std::vector<double> omega_plus, omega_minus, eta;
    std::string error;
};

inline double max_entry(const CMat3& m) {
    double out = 0.0;
    for (const auto& row : m)
        for (const auto& v : row) out = std::max(out, std::abs(v));
    return out;
}

inline PointResult evaluate_point(const SweepSetup& setup, const ModeSolution& mode, Complex amplitude,
                                  const CylindricalPoint& pos) {
    const std::size_t n = setup.channels.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    PointResult res{std::vector<double>(n, nan), std::vector<double>(n, nan), std::vector<double>(n, nan), {}};
    if (!(pos.r >= mode.fiber.radius)) throw DomainError("atom inside the fiber");
    CMat3 grad[2][2];
    for (int fi = 0; fi < 2; ++fi)
        for (int xi = 0; xi < 2; ++xi) {
            const auto f = fi == 0 ? Direction::Forward : Direction::Backward;
            const auto pol = xi == 0 ? Polarization::X : Polarization::Y;
            grad[fi][xi] =
                cartesian_gradient(mode, FieldConfig{f, FieldConfig::orientation(pol), amplitude, setup.power}, pos);
        }
    for (std::size_t c = 0; c < n; ++c) {
        const auto ch = setup.channels[c];
        const int xi = ch.xi == Polarization::X ? 0 : 1;
        TransitionSpec t = setup.transition;
        t.M_up = t.M + HalfInt(ch.q);
        double coeff = 0.0;
        try {
            coeff = coupling_coefficient(t);
        } catch (const ForbiddenTransition& e) {
            if (res.error.empty()) res.error = std::string("q=") + std::to_string(ch.q) + ": " + e.what();
            continue;
        }
        const Complex sp = coupling_factor_generic(grad[0][xi], t.frame, ch.q);
        const Complex sm = coupling_factor_generic(grad[1][xi], t.frame, ch.q);
        res.omega_plus[c] = std::abs(coeff * sp);
        res.omega_minus[c] = std::abs(coeff * sm);
        const double scale = std::max(max_entry(grad[0][xi]), max_entry(grad[1][xi]));
        if (std::max(std::abs(sp), std::abs(sm)) > setup.undefined_tolerance * scale)
            if (auto eta = asymmetry(sp, sm)) res.eta[c] = *eta;
    }
    return res;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        });
}

}  // namespace detail

/// Evaluate every channel at each grid point. Grid units: r/a (Radial),
/// metres (FiberRadius), radians (Azimuth). Points that fail are recorded in
/// `errors` with NaN cells; the sweep itself does not abort.
inline SweepTable sweep(SweepAxis axis, const std::vector<double>& grid, const SweepSetup& setup) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("sweep grid must be strictly increasing");
    SweepTable table;
    table.axis = axis;
    table.grid = grid;
    table.errors.assign(grid.size(), {});
    const SolveOptions opts{setup.allow_multimode};

    std::optional<ModeSolution> shared;
    Complex shared_amplitude = 0.0;
    std::string shared_error;
    if (axis != SweepAxis::FiberRadius && !grid.empty()) {
        try {
            shared = solve_he11_at_wavelength(setup.fiber, setup.wavelength, opts);
            shared_amplitude = amplitude_for_power(*shared, setup.power);
        } catch (const Error& e) {
            shared_error = e.what();
        }
    }

    std::vector<detail::PointResult> results(grid.size());
    detail::parallel_for(grid.size(), setup.threads, [&](std::size_t i) {
        auto& out = results[i];
        try {
            if (!shared_error.empty()) throw Error(shared_error);
            std::optional<ModeSolution> local;
            const ModeSolution* mode = shared ? &*shared : nullptr;
            Complex amplitude = shared_amplitude;
            CylindricalPoint pos{0.0, setup.atom_phi, setup.atom_z};
            switch (axis) {
                case SweepAxis::Radial: pos.r = grid[i] * setup.fiber.radius; break;
                case SweepAxis::Azimuth:
                    pos.r = setup.atom_r_over_a * setup.fiber.radius + setup.atom_gap;
                    pos.phi = grid[i];
                    break;
                case SweepAxis::FiberRadius: {
                    FiberSpec fiber = setup.fiber;
                    fiber.radius = grid[i];
                    local = solve_he11_at_wavelength(fiber, setup.wavelength, opts);
                    mode = &*local;
                    amplitude = amplitude_for_power(*local, setup.power);
                    pos.r = setup.atom_r_over_a * fiber.radius + setup.atom_gap;
                    break;
                }
            }
            out = detail::evaluate_point(setup, *mode, amplitude, pos);
        } catch (const Error& e) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            const std::size_t n = setup.channels.size();
            out = {std::vector<double>(n, nan), std::vector<double>(n, nan), std::vector<double>(n, nan), e.what()};
        }
    });

    for (std::size_t c = 0; c < setup.channels.size(); ++c) {
        ChannelData d{setup.channels[c], {}, {}, {}};
        for (const auto& r : results) {
            d.omega_plus.push_back(r.omega_plus[c]);
            d.omega_minus.push_back(r.omega_minus[c]);
            d.eta.push_back(r.eta[c]);
        }
        table.channels.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < results.size(); ++i) table.errors[i] = results[i].error;
    return table;
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

enum class PresetKind { Rabi, Asymmetry };

struct FigurePreset {
    std::string name;
    PresetKind kind = PresetKind::Rabi;
    SweepAxis axis = SweepAxis::Radial;
    std::vector<double> grid;
    SweepSetup setup;
};

inline const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names = {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
    return names;
}

/// Bind a figure's axis, grid, frame and channel set on top of `base`
/// (fiber, wavelength, power and transition come from `base`).
inline FigurePreset figure_preset(const std::string& name, const SweepSetup& base) {
    FigurePreset p;
    p.name = name;
    p.setup = base;
    auto& s = p.setup;
    s.transition.frame = QuantizationFrame::AlongY;
    s.channels = x_axis_channels();
    s.atom_phi = 0.0;
    if (name == "fig2") {
        s.transition.frame = QuantizationFrame::AlongZ;
        s.channels = all_channels();
        p.grid = numerics::logspace(1.0, 3.0, 400);
    } else if (name == "fig3") {
        p.grid = numerics::logspace(1.0, 3.0, 400);
    } else if (name == "fig4") {
        p.kind = PresetKind::Asymmetry;
        p.grid = numerics::logspace(1.0, 3.0, 400);
    } else if (name == "fig5") {
        p.kind = PresetKind::Asymmetry;
        s.channels = {{1, Polarization::Y}, {2, Polarization::X}};
        p.grid = numerics::logspace(10.0, 30.0, 400);
    } else if (name == "fig6" || name == "fig7") {
        p.kind = name == "fig6" ? PresetKind::Rabi : PresetKind::Asymmetry;
        p.axis = SweepAxis::FiberRadius;
        s.atom_r_over_a = 1.0;
        s.atom_gap = 0.0;
        s.allow_multimode = true;
        p.grid = numerics::linspace(50e-9, 1000e-9, 600);
    } else if (name == "fig8") {
        p.kind = PresetKind::Asymmetry;
        p.axis = SweepAxis::Azimuth;
        s.channels = {{1, Polarization::X}, {1, Polarization::Y}, {2, Polarization::X}, {2, Polarization::Y}};
        s.atom_r_over_a = 1.0;
        s.atom_gap = 50e-9;
        p.grid = numerics::linspace(0.0, 2.0 * constants::pi, 600);
    } else {
        throw ConfigError("unknown figure preset '" + name + "'");
    }
    return p;
}

// ---------------------------------------------------------------------------
// Extremum and root searches
// ---------------------------------------------------------------------------

struct FindResult {
    std::string name;
    std::string abscissa;  // column label of `location`
    double location = 0.0;
    double value = 0.0;
};

inline const std::vector<std::string>& find_names() {
    static const std::vector<std::string> names = {"peak-eta1", "peak-ratio", "zero-omega-m1"};
    return names;
}

/// Peak of |eta_1^(y)| over r/a in [lo, hi] for an atom on the x axis.
inline FindResult find_peak_eta1(const SweepSetup& s, double lo = 1.0, double hi = 3.0) {
    const auto mode = solve_he11_at_wavelength(s.fiber, s.wavelength, {s.allow_multimode});
    const auto e = numerics::find_maximum(
        [&](double x) { return std::abs(asymmetry_closed_form(mode, x * s.fiber.radius, 1, Polarization::Y)); }, lo,
        hi);
    return {"peak-eta1", "r_over_a", e.location, e.value};
}

/// Peak of |Omega_1^(+,y)| / |Omega_1^(-,y)| over r/a in [lo, hi] for an atom on the x axis.
inline FindResult find_peak_ratio(const SweepSetup& s, double lo = 1.0, double hi = 3.0) {
    const auto mode = solve_he11_at_wavelength(s.fiber, s.wavelength, {s.allow_multimode});
    const auto ratio = [&](double x) {
        const auto rep = asymmetry_report(mode, 1, Polarization::Y, {x * s.fiber.radius, 0.0, 0.0});
        return std::abs(rep.S_plus) / std::abs(rep.S_minus);
    };
    const auto e = numerics::find_maximum(ratio, lo, hi);
    return {"peak-ratio", "r_over_a", e.location, e.value};
}

/// Fiber radius (m) in [lo, hi] at which Omega_{-1}^{(-,y)} vanishes for an atom
/// on the fiber surface (x axis, z = 0). The coupling is real there, so its
/// sign change is bracketed directly.
inline FindResult find_zero_omega_m1(const SweepSetup& s, double lo = 100e-9, double hi = 150e-9) {
    const FieldConfig cfg = normalized_field(Direction::Backward, Polarization::Y);
    const auto channel = [&](double a) {
        FiberSpec fiber = s.fiber;
        fiber.radius = a;
        const auto mode = solve_he11_at_wavelength(fiber, s.wavelength, {true});
        return std::real(coupling_factor_on_x_axis(mode, cfg, a, 0.0, -1));
    };
    const double root = numerics::find_root(channel, lo, hi);
    return {"zero-omega-m1", "a_nm", root * 1e9, 0.0};
}

inline FindResult find_named(const std::string& name, const SweepSetup& s) {
    if (name == "peak-eta1") return find_peak_eta1(s);
    if (name == "peak-ratio") return find_peak_ratio(s);
    if (name == "zero-omega-m1") return find_zero_omega_m1(s);
    throw ConfigError("unknown search '" + name + "'");
}

}  // namespace nanoquad
