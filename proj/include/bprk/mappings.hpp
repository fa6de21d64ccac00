#pragma once
// Bijective mappings between admissible sets and all of R^m.
//
// Every kernel is templated on the scalar type; instantiating with Dual gives
// the exact action of the map's Jacobian on a direction (chain rule), which
// is what the auxiliary-variable time stepper needs. No differencing here.
//
// Conventions:
//  * forward(u) is defined on the *widened* set (see sets.hpp); arguments
//    outside the closed widened set raise std::domain_error, arguments on the
//    boundary survive through the atanh clamp at |x| = 1 - 1e-15.
//  * inverse(w) saturates into the closure of the widened set for large |w|
//    (tanh rounding); the widening doubles as the per-step headroom that lets
//    an extremum rise through its own stencil bound.
//  * exp-based rows (one-sided bounds, the energy-slack row) saturate from
//    below at the *raw* bound instead of underflowing to the widened one, so
//    a node riding its lower bound keeps a Jacobian of order 1/widening
//    rather than overflowing; upward they are genuinely unbounded and the
//    stepper guards w <= w_limit (RowGuard::pos).
//  * sinh-based momentum rows overflow in both directions and carry a
//    symmetric guard (RowGuard::sym). tanh/identity rows need none.
//  * intervals whose raw width is below kDegenerateWidth are frozen: forward
//    maps to 0, inverse returns the midpoint, the Jacobian row is 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include "dual.hpp"
#include "sets.hpp"

namespace bprk {

namespace detail {

inline double clamp_unit(double x) {
    constexpr double lim = 1.0 - 1e-15;
    return x > lim ? lim : (x < -lim ? -lim : x);
}
inline Dual clamp_unit(Dual x) {
    x.v = clamp_unit(x.v);
    return x;
}

// atanh via the log identity, argument pre-clamped away from ±1.
template <class T>
T clamped_atanh(T x) {
    x = clamp_unit(x);
    return T(0.5) * log((T(1.0) + x) / (T(1.0) - x));
}

// sqrt with tiny negative radicands (boundary roundoff) snapped to zero.
template <class T>
T safe_sqrt(T r) {
    if (value(r) < 0.0) {
        if (value(r) < -1e-12)
            throw std::domain_error("mapping: negative radicand");
        r = T(0.0);
    }
    return sqrt(r);
}

// Clamp the primal value into [lo, hi] without touching the tangent; used to
// keep saturated inverses inside the closed set despite rounding.
inline double clamp_value(double x, double lo, double hi) {
    return x < lo ? lo : (x > hi ? hi : x);
}
inline Dual clamp_value(Dual x, double lo, double hi) {
    x.v = clamp_value(x.v, lo, hi);
    return x;
}

}  // namespace detail

/// G(u) = log(u - a), bijection (a, inf) -> R.
template <class T>
T map_one_sided(T u, double a) {
    if (!(value(u) > a))
        throw std::domain_error("map_one_sided: argument at or below lower bound");
    return log(u - T(a));
}
/// Inverse of map_one_sided. floor_u > a keeps very negative w from
/// underflowing all the way to the widened bound a: the value saturates at
/// floor_u (the raw bound), which stays strictly invertible.
template <class T>
T inv_one_sided(T w, double a,
                double floor_u = -std::numeric_limits<double>::infinity()) {
    T u = exp(w) + T(a);
    if (value(u) < floor_u) u = detail::clamp_value(u, floor_u, floor_u);
    return u;
}

/// G(u) = atanh(2 (u - a)/(b - a) - 1), bijection (a, b) -> R.
template <class T>
T map_two_sided(T u, double a, double b) {
    if (!(value(u) >= a && value(u) <= b))
        throw std::domain_error("map_two_sided: argument outside interval");
    const double inv_width = 2.0 / (b - a);
    return detail::clamped_atanh((u - T(a)) * T(inv_width) - T(1.0));
}
template <class T>
T inv_two_sided(T w, double a, double b) {
    const T u = T(0.5 * (a + b)) + T(0.5 * (b - a)) * tanh(w);
    // Saturated tanh can land one ulp outside [a, b]; the forward map's
    // closed-interval domain check must keep accepting the result.
    return detail::clamp_value(u, a, b);
}

/// Elliptical disk-to-square bijection: (u0, u1) with |u|^2 <= r0^2 maps onto
/// the square [-1,1]^2 (interior to interior, boundary to boundary).
template <class T>
void ball2_to_cube(T u0, T u1, double r0, T& z0, T& z1) {
    const T x = u0 / T(r0);
    const T y = u1 / T(r0);
    if (value(x) * value(x) + value(y) * value(y) > 1.0 + 1e-12)
        throw std::domain_error("ball2_to_cube: argument outside disk");
    const double rt8 = 2.0 * std::sqrt(2.0);
    const T du = x * x - y * y;
    z0 = T(0.5) * (detail::safe_sqrt(T(2.0) + du + T(rt8) * x) -
                   detail::safe_sqrt(T(2.0) + du - T(rt8) * x));
    z1 = T(0.5) * (detail::safe_sqrt(T(2.0) - du + T(rt8) * y) -
                   detail::safe_sqrt(T(2.0) - du - T(rt8) * y));
}

/// Inverse of ball2_to_cube.
template <class T>
void cube_to_ball2(T z0, T z1, double r0, T& u0, T& u1) {
    if (std::abs(value(z0)) > 1.0 + 1e-12 || std::abs(value(z1)) > 1.0 + 1e-12)
        throw std::domain_error("cube_to_ball2: argument outside square");
    u0 = T(r0) * z0 * detail::safe_sqrt(T(1.0) - T(0.5) * z1 * z1);
    u1 = T(r0) * z1 * detail::safe_sqrt(T(1.0) - T(0.5) * z0 * z0);
}

/// Forward map for the 1D gas-dynamics set (rho, q, E) -> R^3. The momentum
/// row uses the asinh form of atanh(q / sqrt(2 rho (E - rho^gamma psi_min))),
/// identical algebraically but immune to 1 - tanh^2 underflow.
template <class T>
void euler_map_1d(const EulerIdp& s, const T* u, T* w) {
    const T rho = u[0];
    if (!(value(rho) >= s.rho_min && value(rho) <= s.rho_max))
        throw std::domain_error("euler_map: density outside bounds");
    const T slack = u[2] - pow(rho, s.gamma_gas) * T(s.psi_min) -
                    T(0.5) * u[1] * u[1] / rho;
    if (!(value(slack) > 0.0))
        throw std::domain_error("euler_map: nonpositive energy slack");
    w[0] = map_two_sided(rho, s.rho_min, s.rho_max);
    w[1] = asinh(u[1] / sqrt(T(2.0) * rho * slack));
    w[2] = log(slack);
}

/// Inverse of euler_map_1d. psi_gap > 0 floors the energy slack at
/// rho^gamma * psi_gap — the slack a state has when it sits on the raw
/// entropy bound while the set carries the widened one — so deeply negative
/// slack rows saturate there instead of underflowing toward zero.
template <class T>
void euler_inv_1d(const EulerIdp& s, const T* w, T* u, double psi_gap = 0.0) {
    const T rho = inv_two_sided(w[0], s.rho_min, s.rho_max);
    T slack = exp(w[2]);
    if (psi_gap > 0.0) {
        const double floor_s = std::pow(value(rho), s.gamma_gas) * psi_gap;
        if (value(slack) < floor_s) slack = detail::clamp_value(slack, floor_s, floor_s);
    }
    const T q = sqrt(T(2.0) * rho * slack) * sinh(w[1]);
    u[0] = rho;
    u[1] = q;
    u[2] = slack + pow(rho, s.gamma_gas) * T(s.psi_min) + T(0.5) * q * q / rho;
}

/// Forward map for the 2D gas-dynamics set (rho, qx, qy, E) -> R^4: density
/// row two-sided, momentum pair normalized into the unit disk, sent through
/// the elliptical disk-to-square map and atanh per component, energy row
/// log of the entropy slack.
template <class T>
void euler_map_2d(const EulerIdp& s, const T* u, T* w) {
    const T rho = u[0];
    if (!(value(rho) >= s.rho_min && value(rho) <= s.rho_max))
        throw std::domain_error("euler_map: density outside bounds");
    const T ke2 = u[1] * u[1] + u[2] * u[2];
    const T slack = u[3] - pow(rho, s.gamma_gas) * T(s.psi_min) - T(0.5) * ke2 / rho;
    if (!(value(slack) > 0.0))
        throw std::domain_error("euler_map: nonpositive energy slack");
    // Disk radius from the energy constraint: |q| < r0.
    const T r0 = sqrt(T(2.0) * rho * slack + ke2);
    T z0, z1;
    ball2_to_cube(u[1] / r0, u[2] / r0, 1.0, z0, z1);
    w[0] = map_two_sided(rho, s.rho_min, s.rho_max);
    w[1] = detail::clamped_atanh(z0);
    w[2] = detail::clamped_atanh(z1);
    w[3] = log(slack);
}

template <class T>
void euler_inv_2d(const EulerIdp& s, const T* w, T* u, double psi_gap = 0.0) {
    const T rho = inv_two_sided(w[0], s.rho_min, s.rho_max);
    T slack = exp(w[3]);
    if (psi_gap > 0.0) {
        const double floor_s = std::pow(value(rho), s.gamma_gas) * psi_gap;
        if (value(slack) < floor_s) slack = detail::clamp_value(slack, floor_s, floor_s);
    }
    // With z = tanh(w) and y the disk point, 1 - |y|^2 = sech^2(w1) sech^2(w2)
    // exactly, so r0 = sqrt(2 rho slack) cosh(w1) cosh(w2) and the momentum
    // components reduce to the overflow-graded sinh forms below.
    const T s1 = sinh(w[1]), s2 = sinh(w[2]);
    const T amp = sqrt(T(2.0) * rho * slack);
    const T q0 = amp * s1 * sqrt(T(1.0) + T(0.5) * s2 * s2);
    const T q1 = amp * s2 * sqrt(T(1.0) + T(0.5) * s1 * s1);
    u[0] = rho;
    u[1] = q0;
    u[2] = q1;
    u[3] = slack + pow(rho, s.gamma_gas) * T(s.psi_min) +
           T(0.5) * (q0 * q0 + q1 * q1) / rho;
}

/// How the time stepper must guard an auxiliary-variable row against values
/// the inverse cannot represent: none (saturating inverse), sym (sinh-based,
/// overflows both ways), pos (exp-based, overflows upward only — downward it
/// saturates at the raw bound).
enum class RowGuard : unsigned char { none, sym, pos };

/// A node's constraint mapping: admissible set (widened on construction) plus
/// forward / inverse / Jacobian-action evaluation on m-component states.
class BoundsMapping {
  public:
    BoundsMapping() = default;
    BoundsMapping(const AdmissibleSet& set, std::size_t m, double tolerance = 1e-6)
        : m_(m), raw_(set), wide_(widened(set, tolerance, m)) {
        if (m > kMaxComponents)
            throw std::invalid_argument("BoundsMapping: too many components");
        if (const auto* e = std::get_if<EulerIdp>(&wide_)) {
            if (m != static_cast<std::size_t>(e->dims) + 2)
                throw std::invalid_argument("BoundsMapping: component count vs set dims");
            for (int d = 0; d < e->dims; ++d) guard_[1 + d] = RowGuard::sym;
            guard_[static_cast<std::size_t>(e->dims) + 1] = RowGuard::pos;
            psi_gap_ = std::get<EulerIdp>(raw_).psi_min - e->psi_min;
        }
        if (std::holds_alternative<OneSided>(wide_))
            for (std::size_t c = 0; c < m; ++c) guard_[c] = RowGuard::pos;
        if (const auto* iv = std::get_if<Interval>(&set)) {
            for (std::size_t c = 0; c < m; ++c)
                frozen_[c] = (iv->hi[c] - iv->lo[c]) < kDegenerateWidth;
        }
    }

    std::size_t components() const { return m_; }
    const AdmissibleSet& widened_set() const { return wide_; }
    const AdmissibleSet& raw_set() const { return raw_; }

    RowGuard row_guard(std::size_t c) const { return guard_[c]; }

    void forward(std::span<const double> u, std::span<double> w) const {
        apply_forward<double>(u.data(), w.data());
    }
    void inverse(std::span<const double> w, std::span<double> u) const {
        apply_inverse<double>(w.data(), u.data());
    }

    /// out = G'(u) v, exact (forward pass on dual numbers).
    void jvp(std::span<const double> u, std::span<const double> v,
             std::span<double> out) const {
        Dual ud[kMaxComponents], wd[kMaxComponents];
        for (std::size_t c = 0; c < m_; ++c) ud[c] = Dual(u[c], v[c]);
        apply_forward<Dual>(ud, wd);
        for (std::size_t c = 0; c < m_; ++c) out[c] = wd[c].d;
    }

  private:
    template <class T>
    void apply_forward(const T* u, T* w) const {
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, Unbounded>) {
                    for (std::size_t c = 0; c < m_; ++c) w[c] = u[c];
                } else if constexpr (std::is_same_v<S, OneSided>) {
                    for (std::size_t c = 0; c < m_; ++c)
                        w[c] = map_one_sided(u[c], s.lo[c]);
                } else if constexpr (std::is_same_v<S, Interval>) {
                    for (std::size_t c = 0; c < m_; ++c)
                        w[c] = frozen_[c] ? T(0.0)
                                          : map_two_sided(u[c], s.lo[c], s.hi[c]);
                } else if constexpr (std::is_same_v<S, Ball2>) {
                    T z0, z1;
                    ball2_to_cube(u[s.i0], u[s.i1], s.r0, z0, z1);
                    for (std::size_t c = 0; c < m_; ++c) w[c] = u[c];
                    w[s.i0] = detail::clamped_atanh(z0);
                    w[s.i1] = detail::clamped_atanh(z1);
                } else {
                    if (s.dims == 1) euler_map_1d(s, u, w);
                    else euler_map_2d(s, u, w);
                }
            },
            wide_);
    }

    template <class T>
    void apply_inverse(const T* w, T* u) const {
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, Unbounded>) {
                    for (std::size_t c = 0; c < m_; ++c) u[c] = w[c];
                } else if constexpr (std::is_same_v<S, OneSided>) {
                    const auto& raw = std::get<OneSided>(raw_);
                    for (std::size_t c = 0; c < m_; ++c)
                        u[c] = inv_one_sided(w[c], s.lo[c], raw.lo[c]);
                } else if constexpr (std::is_same_v<S, Interval>) {
                    for (std::size_t c = 0; c < m_; ++c)
                        u[c] = frozen_[c] ? T(0.5 * (s.lo[c] + s.hi[c]))
                                          : inv_two_sided(w[c], s.lo[c], s.hi[c]);
                } else if constexpr (std::is_same_v<S, Ball2>) {
                    for (std::size_t c = 0; c < m_; ++c) u[c] = w[c];
                    cube_to_ball2(tanh(w[s.i0]), tanh(w[s.i1]), s.r0, u[s.i0], u[s.i1]);
                } else {
                    if (s.dims == 1) euler_inv_1d(s, w, u, psi_gap_);
                    else euler_inv_2d(s, w, u, psi_gap_);
                }
            },
            wide_);
    }

    std::size_t m_ = 0;
    AdmissibleSet raw_ = Unbounded{};
    AdmissibleSet wide_ = Unbounded{};
    double psi_gap_ = 0.0;  // raw-minus-widened entropy floor (slack saturation)
    std::array<bool, kMaxComponents> frozen_{};
    std::array<RowGuard, kMaxComponents> guard_{};
};

/// Free-function form of the Jacobian action G'(u) v.
inline void jacobian_vecprod(const BoundsMapping& map, std::span<const double> u,
                             std::span<const double> v, std::span<double> out) {
    map.jvp(u, v, out);
}

}  // namespace bprk
