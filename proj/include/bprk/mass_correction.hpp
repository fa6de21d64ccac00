#pragma once
// Linear-invariant restoration: after a bounds-preserving step the weighted
// sums sum_i m_i u_i may drift; a per-node correction gamma_i along the unit
// defect direction restores them exactly while staying inside each node's
// admissible set (gamma_i never exceeds the node's distance to its boundary
// along that direction).

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <variant>

#include "errors.hpp"
#include "grid.hpp"
#include "sets.hpp"

namespace bprk {

enum class GammaMode { analytic, numeric, analytic_with_fallback };
enum class RootMethod { bisection, illinois };

struct MassDefect {
    std::array<double, kMaxComponents> S{};    // sum_i m_i (u^n_i - ubar_i)
    std::array<double, kMaxComponents> dir{};  // S / |S|_2
    double norm = 0.0;
};

/// Weighted invariant defect between the pre-step and post-step fields
/// (fixed-order reduction, deterministic).
inline MassDefect mass_defect(const GridState& before, const GridState& after) {
    MassDefect d;
    const std::size_t m = before.components();
    const std::size_t nn = before.num_nodes();
    const double w = before.weight();
    double nrm2 = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
        double s = 0.0;
        const auto pb = before.plane(c);
        const auto pa = after.plane(c);
        for (std::size_t i = 0; i < nn; ++i) s += pb[i] - pa[i];
        d.S[c] = w * s;
        nrm2 += d.S[c] * d.S[c];
    }
    d.norm = std::sqrt(nrm2);
    if (d.norm > 0.0)
        for (std::size_t c = 0; c < m; ++c) d.dir[c] = d.S[c] / d.norm;
    return d;
}

/// Scalar two-sided case: distance from u to the bound the defect pushes
/// toward (upper bound when the correction direction is nonnegative).
inline double gamma_star_dmp(double u, const Interval& set, double sign_S) {
    return sign_S >= 0.0 ? set.hi[0] - u : u - set.lo[0];
}

/// Distance to the density bounds along dir (gas-dynamics sets).
inline double gamma_star_density(std::span<const double> u, const EulerIdp& set,
                                 std::span<const double> dir) {
    const double n1 = dir[0];
    if (n1 > 0.0) return (set.rho_max - u[0]) / n1;
    if (n1 < 0.0) return (set.rho_min - u[0]) / n1;
    return std::numeric_limits<double>::infinity();
}

/// First strictly positive root of the internal-energy indicator
///   (rho + a n_rho)(E + a n_E) - |q + a n_q|^2 / 2 = 0
/// along the ray u + alpha dir; +inf when the ray never leaves e > 0.
/// The constant term is rho E - |q|^2/2 = rho e > 0 at an admissible state.
inline double gamma_star_quadratic(std::span<const double> u,
                                   std::span<const double> dir, int dims) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t iE = static_cast<std::size_t>(dims) + 1;
    double a = dir[0] * dir[iE];
    double b = dir[0] * u[iE] + u[0] * dir[iE];
    double c = u[0] * u[iE];
    for (int d = 1; d <= dims; ++d) {
        a -= 0.5 * dir[d] * dir[d];
        b -= dir[d] * u[d];
        c -= 0.5 * u[d] * u[d];
    }
    if (std::abs(a) < 1e-14) {  // dir is (numerically) tangent-quadratic: linear solve
        if (b >= 0.0) return inf;
        return -c / b;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return inf;  // convex case, indicator never crosses zero
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double best = inf;
    const double r1 = q / a;
    if (r1 > 0.0) best = std::min(best, r1);
    if (q != 0.0) {
        const double r2 = c / q;
        if (r2 > 0.0) best = std::min(best, r2);
    }
    return best;
}

/// Cap used wherever an unconstrained direction yields an infinite distance.
inline double gamma_cap(std::span<const double> u) {
    double umax = 0.0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    return 1e12 * (1.0 + umax);
}

/// min(density crossing, internal-energy crossing), capped to a finite value.
inline double gamma_double_star(std::span<const double> u, const EulerIdp& set,
                                std::span<const double> dir) {
    const double g = std::min(gamma_star_density(u, set, dir),
                              gamma_star_quadratic(u, dir, set.dims));
    return std::min(g, gamma_cap(u));
}

/// Analytic distance-to-boundary along dir for any set kind (relaxed for the
/// gas-dynamics set: entropy floor replaced by internal-energy positivity,
/// hence an upper bound gamma** >= gamma*). Unbounded sets return 1 — any
/// uniform positive magnitude works since the correction renormalizes.
inline double analytic_gamma(const AdmissibleSet& wide, std::span<const double> u,
                             std::span<const double> dir) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double g = std::visit(
        [&](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Unbounded>) {
                return 1.0;
            } else if constexpr (std::is_same_v<S, OneSided>) {
                double gg = inf;
                for (std::size_t c = 0; c < u.size(); ++c)
                    if (dir[c] < 0.0) gg = std::min(gg, (s.lo[c] - u[c]) / dir[c]);
                return gg;
            } else if constexpr (std::is_same_v<S, Interval>) {
                double gg = inf;
                for (std::size_t c = 0; c < u.size(); ++c) {
                    if (dir[c] > 0.0) gg = std::min(gg, (s.hi[c] - u[c]) / dir[c]);
                    else if (dir[c] < 0.0) gg = std::min(gg, (s.lo[c] - u[c]) / dir[c]);
                }
                return std::max(gg, 0.0);
            } else if constexpr (std::is_same_v<S, Ball2>) {
                const double px = u[s.i0], py = u[s.i1];
                const double dx = dir[s.i0], dy = dir[s.i1];
                const double dd = dx * dx + dy * dy;
                if (dd == 0.0) return inf;
                const double pd = px * dx + py * dy;
                const double rad = pd * pd + dd * (s.r0 * s.r0 - px * px - py * py);
                if (rad <= 0.0) return 0.0;
                return (-pd + std::sqrt(rad)) / dd;
            } else {
                return gamma_double_star(u, s, dir);
            }
        },
        wide);
    return std::min(g, gamma_cap(u));
}

/// Certified feasible magnitude along dir by root search on the membership
/// margin over [0, hi]. Always returns a value whose state is admissible and
/// never exceeds hi.
inline double gamma_star_numeric(const AdmissibleSet& wide, std::span<const double> u,
                                 std::span<const double> dir, double hi, int iters,
                                 RootMethod method) {
    const std::size_t m = u.size();
    double tmp[kMaxComponents];
    auto margin_at = [&](double alpha) {
        for (std::size_t c = 0; c < m; ++c) tmp[c] = u[c] + alpha * dir[c];
        return margin(wide, std::span<const double>(tmp, m));
    };
    if (!(hi > 0.0)) return 0.0;
    double f_hi = margin_at(hi);
    if (f_hi > 0.0) return hi;  // whole bracket feasible
    double lo = 0.0;
    if (method == RootMethod::bisection) {
        for (int k = 0; k < iters; ++k) {
            const double mid = 0.5 * (lo + hi);
            if (margin_at(mid) > 0.0) lo = mid;
            else hi = mid;
        }
        return lo;
    }
    // Illinois regula falsi on the margin; certified by returning the last
    // strictly feasible abscissa.
    double f_lo = margin_at(0.0);
    if (!(f_lo > 0.0)) {
        // Saturated states start exactly on the boundary; probe just inside
        // so an inward direction is not discarded.
        lo = hi * 1e-9;
        f_lo = margin_at(lo);
        if (!(f_lo > 0.0)) return 0.0;
    }
    int last_side = 0;
    for (int k = 0; k < iters; ++k) {
        const double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if (!(x > lo && x < hi)) break;
        const double fx = margin_at(x);
        if (fx > 0.0) {
            lo = x;
            f_lo = fx;
            if (last_side == 1) f_hi *= 0.5;
            last_side = 1;
        } else {
            hi = x;
            f_hi = fx;
            if (last_side == -1) f_lo *= 0.5;
            last_side = -1;
        }
    }
    return lo;
}

/// Scale the per-node magnitudes so the weighted defect is restored exactly,
/// then shift every node along the defect direction:
///   u_i += gamma_sel_i * |S|_2 / (sum_j m_j gamma_sel_j) * dir.
inline void apply_correction(GridState& u, std::span<const double> gamma_sel,
                             const MassDefect& defect) {
    if (defect.norm == 0.0) return;
    const std::size_t m = u.components();
    const std::size_t nn = u.num_nodes();
    double sum = 0.0;
    for (std::size_t i = 0; i < nn; ++i) sum += gamma_sel[i];
    const double denom = u.weight() * sum;
    // Each node absorbs gamma_i * |S|/denom along dir; that shift stays within
    // the certified distance gamma_i only when denom covers the whole defect.
    if (!(denom >= defect.norm)) throw CorrectionInfeasible();
    const double scale = defect.norm / denom;
    for (std::size_t c = 0; c < m; ++c) {
        const double inc = defect.dir[c] * scale;
        if (inc == 0.0) continue;
        auto p = u.plane(c);
        for (std::size_t i = 0; i < nn; ++i) p[i] += gamma_sel[i] * inc;
    }
}

}  // namespace bprk
