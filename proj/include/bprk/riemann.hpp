#pragma once
// Exact Riemann solver for the 1D ideal-gas Euler equations (Godunov-type):
// Newton iteration on the pressure function with a two-rarefaction initial
// guess, outermost signal speeds, and a full similarity sampler. Used both
// for the invariant-domain wavespeed estimates and as the shock-tube
// reference solution.

#include <array>
#include <cmath>
#include <stdexcept>

namespace bprk {

struct RiemannSolution {
    double rho_l, v_l, p_l, c_l;
    double rho_r, v_r, p_r, c_r;
    double gamma;
    double p_star, v_star;
    double speed_left;   // leftmost signal speed (shock or rarefaction head)
    double speed_right;  // rightmost signal speed
    double lambda_max;   // max(|speed_left|, |speed_right|)

    /// Self-similar solution at xi = x/t; returns primitive (rho, v, P).
    std::array<double, 3> sample(double xi) const {
        const double g = gamma;
        const double g1 = (g - 1.0) / (2.0 * g);
        const double g2 = (g + 1.0) / (2.0 * g);
        const double g3 = 2.0 / (g + 1.0);
        const double g4 = (g - 1.0) / (g + 1.0);
        if (xi <= v_star) {  // left of contact
            if (p_star > p_l) {  // left shock
                const double sl = v_l - c_l * std::sqrt(g2 * p_star / p_l + g1);
                if (xi <= sl) return {rho_l, v_l, p_l};
                const double r = rho_l * ((p_star / p_l + g4) / (g4 * p_star / p_l + 1.0));
                return {r, v_star, p_star};
            }
            // left rarefaction
            const double head = v_l - c_l;
            if (xi <= head) return {rho_l, v_l, p_l};
            const double c_star = c_l * std::pow(p_star / p_l, g1);
            const double tail = v_star - c_star;
            if (xi >= tail) {
                const double r = rho_l * std::pow(p_star / p_l, 1.0 / g);
                return {r, v_star, p_star};
            }
            const double c = g3 * (c_l + 0.5 * (g - 1.0) * (v_l - xi));
            const double v = g3 * (c_l + 0.5 * (g - 1.0) * v_l + xi);
            const double r = rho_l * std::pow(c / c_l, 2.0 / (g - 1.0));
            return {r, v, p_l * std::pow(c / c_l, 2.0 * g / (g - 1.0))};
        }
        // right of contact
        if (p_star > p_r) {  // right shock
            const double sr = v_r + c_r * std::sqrt(g2 * p_star / p_r + g1);
            if (xi >= sr) return {rho_r, v_r, p_r};
            const double r = rho_r * ((p_star / p_r + g4) / (g4 * p_star / p_r + 1.0));
            return {r, v_star, p_star};
        }
        // right rarefaction
        const double head = v_r + c_r;
        if (xi >= head) return {rho_r, v_r, p_r};
        const double c_star = c_r * std::pow(p_star / p_r, g1);
        const double tail = v_star + c_star;
        if (xi <= tail) {
            const double r = rho_r * std::pow(p_star / p_r, 1.0 / g);
            return {r, v_star, p_star};
        }
        const double c = g3 * (c_r - 0.5 * (g - 1.0) * (v_r - xi));
        const double v = g3 * (-c_r + 0.5 * (g - 1.0) * v_r + xi);
        const double r = rho_r * std::pow(c / c_r, 2.0 / (g - 1.0));
        return {r, v, p_r * std::pow(c / c_r, 2.0 * g / (g - 1.0))};
    }
};

namespace detail {

// Pressure function f_K(p) and derivative for one side.
inline void pressure_fn(double p, double rho_k, double p_k, double c_k, double g,
                        double& f, double& df) {
    if (p > p_k) {  // shock branch
        const double a = 2.0 / ((g + 1.0) * rho_k);
        const double b = (g - 1.0) / (g + 1.0) * p_k;
        const double root = std::sqrt(a / (b + p));
        f = (p - p_k) * root;
        df = root * (1.0 - 0.5 * (p - p_k) / (b + p));
    } else {  // rarefaction branch
        const double pr = p / p_k;
        f = 2.0 * c_k / (g - 1.0) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
        df = std::pow(pr, -(g + 1.0) / (2.0 * g)) / (rho_k * c_k);
    }
}

}  // namespace detail

/// Solve the Riemann problem for primitive states (rho, v, P) left/right.
/// tol is the relative pressure increment for Newton convergence.
inline RiemannSolution exact_riemann(double rho_l, double v_l, double p_l,
                                     double rho_r, double v_r, double p_r,
                                     double gamma, double tol = 1e-12,
                                     int max_iter = 100) {
    if (!(rho_l > 0.0 && rho_r > 0.0 && p_l > 0.0 && p_r > 0.0))
        throw std::domain_error("exact_riemann: nonpositive density or pressure");
    const double g = gamma;
    const double c_l = std::sqrt(g * p_l / rho_l);
    const double c_r = std::sqrt(g * p_r / rho_r);
    const double dv = v_r - v_l;
    if (2.0 * (c_l + c_r) / (g - 1.0) <= dv)
        throw std::domain_error("exact_riemann: vacuum generated");

    // Two-rarefaction initial guess.
    const double z = (g - 1.0) / (2.0 * g);
    double p = std::pow((c_l + c_r - 0.5 * (g - 1.0) * dv) /
                            (c_l / std::pow(p_l, z) + c_r / std::pow(p_r, z)),
                        1.0 / z);
    if (!(p > 0.0)) p = 0.5 * (p_l + p_r);

    double fl, dfl, fr, dfr;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        detail::pressure_fn(p, rho_l, p_l, c_l, g, fl, dfl);
        detail::pressure_fn(p, rho_r, p_r, c_r, g, fr, dfr);
        const double delta = (fl + fr + dv) / (dfl + dfr);
        double p_new = p - delta;
        if (p_new <= 0.0) p_new = tol * p;
        const double change = 2.0 * std::abs(p_new - p) / (p_new + p);
        p = p_new;
        if (change < tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("exact_riemann: Newton iteration failed to converge");

    detail::pressure_fn(p, rho_l, p_l, c_l, g, fl, dfl);
    detail::pressure_fn(p, rho_r, p_r, c_r, g, fr, dfr);

    RiemannSolution sol;
    sol.rho_l = rho_l; sol.v_l = v_l; sol.p_l = p_l; sol.c_l = c_l;
    sol.rho_r = rho_r; sol.v_r = v_r; sol.p_r = p_r; sol.c_r = c_r;
    sol.gamma = g;
    sol.p_star = p;
    sol.v_star = 0.5 * (v_l + v_r) + 0.5 * (fr - fl);

    const double g1 = (g - 1.0) / (2.0 * g);
    const double g2 = (g + 1.0) / (2.0 * g);
    sol.speed_left = (p > p_l) ? v_l - c_l * std::sqrt(g2 * p / p_l + g1)
                               : v_l - c_l;
    sol.speed_right = (p > p_r) ? v_r + c_r * std::sqrt(g2 * p / p_r + g1)
                                : v_r + c_r;
    sol.lambda_max = std::max(std::abs(sol.speed_left), std::abs(sol.speed_right));
    return sol;
}

}  // namespace bprk
