#pragma once
// Admissible-set descriptors attached to grid nodes, plus tolerance widening
// and signed membership margins. A state is strictly admissible when
// margin(set, u) > 0; the margin is continuous along any ray, which is what
// the numeric root search for the correction magnitude relies on.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <variant>

namespace bprk {

inline constexpr std::size_t kMaxComponents = 4;
inline constexpr double kDegenerateWidth = 1e-14;  // interval collapse threshold

struct Unbounded {};

/// Per-component lower bounds u_c > lo[c] (e.g. positivity with lo = 0).
struct OneSided {
    std::array<double, kMaxComponents> lo{};
};

/// Per-component two-sided bounds lo[c] < u_c < hi[c].
struct Interval {
    std::array<double, kMaxComponents> lo{};
    std::array<double, kMaxComponents> hi{};
};

/// Euclidean disk of radius r0 on components (i0, i1).
struct Ball2 {
    double r0 = 1.0;
    std::size_t i0 = 0, i1 = 1;
};

/// Gas-dynamics invariant set: rho_min < u1 < rho_max together with the
/// entropy floor  E - rho^gamma * psi_min - |q|^2/(2 rho) > 0  (psi_min is a
/// floor on the entropy surrogate exp((gamma-1) Psi); psi_min = 0 reduces the
/// constraint to internal-energy positivity).
struct EulerIdp {
    double rho_min = 0.0;
    double rho_max = std::numeric_limits<double>::infinity();
    double psi_min = 0.0;
    double gamma_gas = 1.4;
    int dims = 1;  // 1 -> (rho, q, E), 2 -> (rho, qx, qy, E)
};

using AdmissibleSet = std::variant<Unbounded, OneSided, Interval, Ball2, EulerIdp>;

/// Relax a set outward so states sitting exactly on a raw bound become
/// strictly interior: intervals and density bounds move by eps*max(1, width),
/// one-sided bounds by eps*max(1, |bound|), the entropy floor drops by
/// eps*max(1, psi_min).
inline AdmissibleSet widened(const AdmissibleSet& set, double eps, std::size_t m) {
    AdmissibleSet out = set;
    if (auto* os = std::get_if<OneSided>(&out)) {
        for (std::size_t c = 0; c < m; ++c)
            os->lo[c] -= eps * std::max(1.0, std::abs(os->lo[c]));
    } else if (auto* iv = std::get_if<Interval>(&out)) {
        for (std::size_t c = 0; c < m; ++c) {
            const double w = iv->hi[c] - iv->lo[c];
            if (w < kDegenerateWidth) continue;  // frozen component, keep raw
            const double d = eps * std::max(1.0, w);
            iv->lo[c] -= d;
            iv->hi[c] += d;
        }
    } else if (auto* b = std::get_if<Ball2>(&out)) {
        b->r0 += eps * std::max(1.0, b->r0);
    } else if (auto* e = std::get_if<EulerIdp>(&out)) {
        const double d = eps * std::max(1.0, e->rho_max - e->rho_min);
        e->rho_min -= d;
        e->rho_max += d;
        e->psi_min -= eps * std::max(1.0, e->psi_min);
    }
    return out;
}

/// Energy slack E - rho^gamma psi_min - |q|^2/(2 rho); positive inside.
inline double euler_slack(const EulerIdp& e, std::span<const double> u) {
    const double rho = u[0];
    const double E = (e.dims == 1) ? u[2] : u[3];
    double ke2 = u[1] * u[1];
    if (e.dims == 2) ke2 += u[2] * u[2];
    return E - std::pow(rho, e.gamma_gas) * e.psi_min - 0.5 * ke2 / rho;
}

/// Signed distance-like margin, > 0 strictly inside the set. Not a metric —
/// mixes units across constraints — but continuous and sign-correct.
inline double margin(const AdmissibleSet& set, std::span<const double> u) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Unbounded>) {
                return inf;
            } else if constexpr (std::is_same_v<T, OneSided>) {
                double m = inf;
                for (std::size_t c = 0; c < u.size(); ++c)
                    m = std::min(m, u[c] - s.lo[c]);
                return m;
            } else if constexpr (std::is_same_v<T, Interval>) {
                double m = inf;
                for (std::size_t c = 0; c < u.size(); ++c) {
                    const double w = s.hi[c] - s.lo[c];
                    if (w < kDegenerateWidth) {
                        // Frozen component: admissible within a hairline band
                        // around the midpoint.
                        const double mid = 0.5 * (s.lo[c] + s.hi[c]);
                        m = std::min(m, 1e-12 * std::max(1.0, std::abs(mid)) -
                                            std::abs(u[c] - mid));
                    } else {
                        m = std::min(m, std::min(u[c] - s.lo[c], s.hi[c] - u[c]));
                    }
                }
                return m;
            } else if constexpr (std::is_same_v<T, Ball2>) {
                return s.r0 - std::hypot(u[s.i0], u[s.i1]);
            } else {
                if (u[0] <= 0.0) return u[0] - s.rho_min;
                double m = std::min(u[0] - s.rho_min, s.rho_max - u[0]);
                return std::min(m, euler_slack(s, u));
            }
        },
        set);
}

inline bool contains(const AdmissibleSet& set, std::span<const double> u) {
    return margin(set, u) > 0.0;
}

}  // namespace bprk
