#ifndef LPLAB_CUTOFF_HPP
#define LPLAB_CUTOFF_HPP

#include <cmath>

namespace lplab {

// Smooth radial cutoff pair on R+:
//   phi0 = 1 on [0, 1/4], supp phi0 in [0, 1], nonincreasing,
//   psi0(t) = phi0(t/4) - phi0(t), supported in [1/4, 4],
// built from the standard exponential bump so that the dyadic family
// psi0(4^-j t) telescopes exactly.
struct CutoffProfile {
    static double rho(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

    static double phi0(double t) {
        if (t <= 0.25) return 1.0;
        if (t >= 1.0) return 0.0;
        const double a = rho(1.0 - t);
        const double b = rho(t - 0.25);
        return a / (a + b);
    }

    static double psi0(double t) { return phi0(0.25 * t) - phi0(t); }

    // band multipliers as functions of t = |xi|^2
    static double delta_mult(int j, double t) { return psi0(std::ldexp(t, -2 * j)); }
    static double s_mult(int j, double t) { return phi0(std::ldexp(t, -2 * j)); }
    // tilde Delta_j = Delta_{j-2} + ... + Delta_{j+2}; the sum telescopes.
    static double tilde_mult(int j, double t) {
        return phi0(std::ldexp(t, -2 * (j + 3))) - phi0(std::ldexp(t, -2 * (j - 2)));
    }
};

} // namespace lplab

#endif
