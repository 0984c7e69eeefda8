// 87Rb 5S1/2 F=2, M=2 -> 4D5/2 F'=4 near a 180 nm silica nanofiber: mode
// parameters, directional coupling on the x axis and the unidirectional radius.

#include <cstdio>

#include "nanoquad/chirality.hpp"
#include "nanoquad/sweep.hpp"

int main() {
    using namespace nanoquad;
    const FiberSpec fiber{180e-9, 1.4615, 1.0};
    const double lambda0 = 516.5e-9;
    const double omega0 = angular_frequency(lambda0);

    const auto mode = solve_he11(fiber, omega0);
    std::printf("V = %.4f  beta/k = %.5f  kappa a = %.4f\n", mode.v, mode.beta / mode.k, mode.kappa * fiber.radius);

    const double me = reduced_me_from_oscillator_strength(8.06e-7, half(1), half(5), 2, 4, half(3), omega0);
    std::printf("<F'=4||T2||F=2> = %.6e m^2\n\n", me);

    std::printf("   r/a   eta_{+1}^(y)  eta_{+2}^(x)   |Omega_{+2}^(+,x)| (1 nW, rad/s)\n");
    const TransitionSpec t{2, 2, 4, 4, me, QuantizationFrame::AlongY};
    const auto cfg = field_for_power(mode, Direction::Forward, Polarization::X, 1e-9);
    for (double x : {1.0, 1.2, 1.6, 2.0, 3.0}) {
        const double r = x * fiber.radius;
        const auto res = rabi_frequency(t, mode, cfg, {r, 0.0, 0.0});
        std::printf("  %4.1f   %+.6f     %+.6f      %.4e\n", x, asymmetry_closed_form(mode, r, 1, Polarization::Y),
                    asymmetry_closed_form(mode, r, 2, Polarization::X), std::abs(res.Omega));
    }

    SweepSetup setup;
    setup.fiber = fiber;
    setup.wavelength = lambda0;
    setup.transition = t;
    const auto peak = find_peak_eta1(setup);
    const auto ratio = find_peak_ratio(setup);
    const auto zero = find_zero_omega_m1(setup);
    std::printf("\npeak |eta_1^(y)| = %.4f at r/a = %.3f\n", peak.value, peak.location);
    std::printf("peak |Omega_1^(+,y)|/|Omega_1^(-,y)| = %.3f at r/a = %.3f\n", ratio.value, ratio.location);
    std::printf("Omega_{-1}^(-,y) vanishes on the surface at a = %.2f nm\n", zero.location);

    const auto lim = asymmetry_limits_large_r(mode);
    std::printf("r -> infinity: |eta_1| -> %.5f, |eta_2| -> %.5f\n", lim.eta1, lim.eta2);
    return 0;
}
