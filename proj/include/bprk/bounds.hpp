#pragma once
// Per-node admissible sets rebuilt at every step from the current field:
//  * discrete-maximum-principle intervals from the nearest-neighbor stencil
//    (scalar equations), and
//  * invariant-domain sets for the Euler system pooled from the node value
//    and the first-order auxiliary states of each neighbor pair, with the
//    pair wavespeed taken from the exact Riemann solution.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "physics.hpp"
#include "riemann.hpp"
#include "sets.hpp"

namespace bprk {

/// Componentwise global min/max of the field; the natural cap for stencil
/// intervals when taken from the initial condition (scalar maximum principle).
inline Interval global_hull(const GridState& u) {
    Interval h;
    const std::size_t m = u.components();
    for (std::size_t c = 0; c < m; ++c) {
        h.lo[c] = std::numeric_limits<double>::infinity();
        h.hi[c] = -h.lo[c];
    }
    for (std::size_t i = 0; i < u.num_nodes(); ++i)
        for (std::size_t c = 0; c < m; ++c) {
            const double v = u.at(c, i);
            h.lo[c] = std::min(h.lo[c], v);
            h.hi[c] = std::max(h.hi[c], v);
        }
    return h;
}

/// Componentwise stencil min/max (self + immediate axis neighbors). With a
/// hull both interval ends are clamped into it, so values saturating at a
/// widened stencil bound cannot ratchet the next step's bounds outward: the
/// field stays within hull +/- one widening for the whole run.
inline void dmp_bounds(const GridState& u, std::vector<AdmissibleSet>& out,
                       const Interval* hull = nullptr) {
    const std::size_t m = u.components();
    const std::size_t n = u.n();
    const std::size_t nn = u.num_nodes();
    out.resize(nn);
    auto update = [&](Interval& iv, std::size_t node) {
        for (std::size_t c = 0; c < m; ++c) {
            const double v = u.at(c, node);
            iv.lo[c] = std::min(iv.lo[c], v);
            iv.hi[c] = std::max(iv.hi[c], v);
        }
    };
    for (std::size_t i = 0; i < nn; ++i) {
        Interval iv;
        for (std::size_t c = 0; c < m; ++c) {
            iv.lo[c] = u.at(c, i);
            iv.hi[c] = u.at(c, i);
        }
        if (u.dims() == 1) {
            update(iv, (i + 1) % n);
            update(iv, (i + n - 1) % n);
        } else {
            const std::size_t ix = i % n, iy = i / n;
            update(iv, iy * n + (ix + 1) % n);
            update(iv, iy * n + (ix + n - 1) % n);
            update(iv, ((iy + 1) % n) * n + ix);
            update(iv, ((iy + n - 1) % n) * n + ix);
        }
        if (hull) {
            for (std::size_t c = 0; c < m; ++c) {
                iv.lo[c] = std::clamp(iv.lo[c], hull->lo[c], hull->hi[c]);
                iv.hi[c] = std::clamp(iv.hi[c], hull->lo[c], hull->hi[c]);
            }
        }
        out[i] = iv;
    }
}

/// First-order auxiliary state of a neighbor pair:
///   0.5 (u_i + u_j) - (F_n(u_j) - F_n(u_i)) / (2 lambda),
/// with F_n the flux contracted with the unit pair direction.
inline void idp_auxiliary_state(const Euler& eq, std::span<const double> u_i,
                                std::span<const double> u_j,
                                std::span<const double> direction, double lambda,
                                std::span<double> out) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("idp_auxiliary_state: wavespeed must be positive");
    const std::size_t m = eq.components();
    double fi[kMaxComponents]{}, fj[kMaxComponents]{}, fa[kMaxComponents];
    for (int axis = 0; axis < eq.dims; ++axis) {
        const double d = direction[axis];
        if (d == 0.0) continue;
        eq.flux(u_i, axis, fa);
        for (std::size_t c = 0; c < m; ++c) fi[c] += d * fa[c];
        eq.flux(u_j, axis, fa);
        for (std::size_t c = 0; c < m; ++c) fj[c] += d * fa[c];
    }
    const double inv = 0.5 / lambda;
    for (std::size_t c = 0; c < m; ++c)
        out[c] = 0.5 * (u_i[c] + u_j[c]) - inv * (fj[c] - fi[c]);
}

struct IdpWorkspace {
    std::vector<double> rho_lo, rho_hi, psi_lo;
    std::vector<char> constant_patch;
};

/// Invariant-domain set per node: density range and entropy-surrogate floor
/// over the pool {u_i} ∪ {auxiliary states of the node's neighbor pairs}.
/// With positivity_only the entropy floor is dropped (psi_min = 0).
inline void idp_bounds(const GridState& u, const Euler& eq, bool positivity_only,
                       IdpWorkspace& ws, std::vector<AdmissibleSet>& out) {
    const std::size_t m = eq.components();
    const std::size_t n = u.n();
    const std::size_t nn = u.num_nodes();
    out.resize(nn);
    ws.rho_lo.resize(nn);
    ws.rho_hi.resize(nn);
    ws.psi_lo.resize(nn);

    double ui[kMaxComponents], uj[kMaxComponents], aux[kMaxComponents];
    ws.constant_patch.assign(nn, 1);
    auto same_state = [&](std::size_t j) {
        u.node_state(j, uj);
        for (std::size_t c = 0; c < m; ++c)
            if (std::abs(uj[c] - ui[c]) > 1e-14 * std::max(1.0, std::abs(ui[c])))
                return false;
        return true;
    };
    for (std::size_t i = 0; i < nn; ++i) {
        u.node_state(i, ui);
        if (!eq.admissible(std::span<const double>(ui, m)))
            throw std::runtime_error("idp_bounds: inadmissible state at node " +
                                     std::to_string(i));
        ws.rho_lo[i] = ws.rho_hi[i] = ui[0];
        ws.psi_lo[i] = positivity_only ? 0.0 : eq.psi_tilde(std::span<const double>(ui, m));
        // A pool whose members all coincide admits no movement at all: the
        // density range is a point and the node sits on its own entropy floor.
        // Such nodes get a degenerate interval (the frozen-component rule)
        // instead of a zero-measure gas set, and rejoin the evolution as soon
        // as any neighbor changes.
        if (u.dims() == 1) {
            ws.constant_patch[i] = same_state((i + 1) % n) && same_state((i + n - 1) % n);
        } else {
            const std::size_t ix = i % n, iy = i / n;
            ws.constant_patch[i] = same_state(iy * n + (ix + 1) % n) &&
                                   same_state(iy * n + (ix + n - 1) % n) &&
                                   same_state(((iy + 1) % n) * n + ix) &&
                                   same_state(((iy + n - 1) % n) * n + ix);
        }
    }

    // One pass over undirected nearest-neighbor edges; the auxiliary state is
    // symmetric in the pair, so each edge feeds both endpoint pools.
    const int n_axes = u.dims();
    double dir[2];
    for (int axis = 0; axis < n_axes; ++axis) {
        dir[0] = axis == 0 ? 1.0 : 0.0;
        dir[1] = axis == 1 ? 1.0 : 0.0;
        for (std::size_t i = 0; i < nn; ++i) {
            std::size_t j;
            if (u.dims() == 1) {
                j = (i + 1) % n;
            } else {
                const std::size_t ix = i % n, iy = i / n;
                j = axis == 0 ? iy * n + (ix + 1) % n : ((iy + 1) % n) * n + ix;
            }
            u.node_state(i, ui);
            u.node_state(j, uj);
            // Normal Riemann problem of the pair (tangential momentum rides
            // along passively).
            const double rho_i = ui[0], rho_j = uj[0];
            const double vn_i = ui[1 + axis] / rho_i, vn_j = uj[1 + axis] / rho_j;
            const double p_i = eq.pressure(std::span<const double>(ui, m));
            const double p_j = eq.pressure(std::span<const double>(uj, m));
            const RiemannSolution rs =
                exact_riemann(rho_i, vn_i, p_i, rho_j, vn_j, p_j, eq.gamma_gas);
            idp_auxiliary_state(eq, std::span<const double>(ui, m),
                                std::span<const double>(uj, m),
                                std::span<const double>(dir, 2), rs.lambda_max,
                                std::span<double>(aux, m));
            if (!eq.admissible(std::span<const double>(aux, m)))
                throw std::runtime_error("idp_bounds: inadmissible auxiliary state at edge " +
                                         std::to_string(i) + "-" + std::to_string(j));
            const double rho_a = aux[0];
            const double psi_a =
                positivity_only ? 0.0 : eq.psi_tilde(std::span<const double>(aux, m));
            for (std::size_t node : {i, j}) {
                ws.rho_lo[node] = std::min(ws.rho_lo[node], rho_a);
                ws.rho_hi[node] = std::max(ws.rho_hi[node], rho_a);
                if (!positivity_only) ws.psi_lo[node] = std::min(ws.psi_lo[node], psi_a);
            }
        }
    }

    for (std::size_t i = 0; i < nn; ++i) {
        if (ws.constant_patch[i]) {
            u.node_state(i, ui);
            Interval iv;
            for (std::size_t c = 0; c < m; ++c) iv.lo[c] = iv.hi[c] = ui[c];
            out[i] = iv;
            continue;
        }
        EulerIdp set;
        set.rho_min = ws.rho_lo[i];
        set.rho_max = ws.rho_hi[i];
        set.psi_min = ws.psi_lo[i];
        set.gamma_gas = eq.gamma_gas;
        set.dims = eq.dims;
        out[i] = set;
    }
}

}  // namespace bprk
