#pragma once
// Time steppers: the plain explicit RK step, and the bounds-preserving step
// that integrates in the mapped auxiliary variables w = G(u) with right-hand
// side G'(u) L(u), inverts back, and restores the linear invariants.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "mappings.hpp"
#include "mass_correction.hpp"
#include "sets.hpp"
#include "tableau.hpp"

namespace bprk {

struct BpOptions {
    double tolerance = 1e-6;     // set widening
    GammaMode gamma_mode = GammaMode::analytic_with_fallback;
    int gamma_iters = 5;         // numeric root-search iterations
    RootMethod root_method = RootMethod::bisection;
    double w_limit = 700.0;      // auxiliary cap where the inverse overflows:
                                 // |w| for sinh rows, +w for exp rows
};

struct StepDiagnostics {
    double sbar_norm = 0.0;                              // |defect|_2 before correction
    std::array<double, kMaxComponents> mass_residual{};  // |mass after - mass before|
    double min_margin = std::numeric_limits<double>::infinity();
    int fallback_triggers = 0;   // nodes that forced the numeric recompute
    bool correction_applied = false;
};

namespace detail {

inline void check_finite(const GridState& g, const char* what) {
    const auto& v = g.raw();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw std::runtime_error(std::string(what) + " produced non-finite value at node " +
                                     std::to_string(i % g.num_nodes()));
}

// True when the auxiliary value w is outside the row's invertible range
// (NaN rejects on guarded rows too).
inline bool guard_rejects(RowGuard g, double w, double limit) {
    switch (g) {
        case RowGuard::sym: return !(std::abs(w) <= limit);
        case RowGuard::pos: return !(w <= limit);
        default: return false;
    }
}

}  // namespace detail

struct RkWorkspace {
    std::vector<GridState> K;
    GridState stage;

    void ensure(const GridState& u, std::size_t s) {
        if (K.size() != s || K.empty() || K[0].raw().size() != u.raw().size()) {
            K.assign(s, u.like_empty());
            stage = u.like_empty();
        }
    }
};

/// One explicit RK step  u += dt * sum_k b_k L(u*_k, t + c_k dt).
template <class Rhs>
void rk_step(GridState& u, Rhs&& rhs, const ButcherTableau& tab, double t, double dt,
             RkWorkspace& ws) {
    const std::size_t s = tab.s;
    ws.ensure(u, s);
    const std::size_t total = u.raw().size();
    for (std::size_t k = 0; k < s; ++k) {
        ws.stage = u;
        for (std::size_t j = 0; j < k; ++j) {
            const double a = dt * tab.A[k][j];
            if (a == 0.0) continue;
            const auto& kj = ws.K[j].raw();
            auto& st = ws.stage.raw();
            for (std::size_t i = 0; i < total; ++i) st[i] += a * kj[i];
        }
        rhs(ws.stage, t + tab.c[k] * dt, ws.K[k]);
        detail::check_finite(ws.K[k], "rhs");
    }
    auto& uv = u.raw();
    for (std::size_t k = 0; k < s; ++k) {
        const double b = dt * tab.b[k];
        if (b == 0.0) continue;
        const auto& kk = ws.K[k].raw();
        for (std::size_t i = 0; i < total; ++i) uv[i] += b * kk[i];
    }
}

struct BpWorkspace {
    std::vector<double> w_n;              // mapped state at step start, m per node
    std::vector<std::vector<double>> T;   // per stage: G'(u*) L(u*), m per node
    GridState stage;                      // physical stage state
    GridState u_bar;                      // post-integration, pre-correction state
    GridState u_save;                     // for the fallback re-correction
    std::vector<double> gamma_sel;

    void ensure(const GridState& u, std::size_t s) {
        const std::size_t total = u.raw().size();
        if (w_n.size() != total || T.size() != s) {
            w_n.assign(total, 0.0);
            T.assign(s, std::vector<double>(total, 0.0));
            stage = u.like_empty();
            u_bar = u.like_empty();
            u_save = u.like_empty();
            gamma_sel.assign(u.num_nodes(), 0.0);
        }
    }
};

/// One bounds-preserving RK step. `maps` holds one constraint mapping per
/// node (already widened). Throws StepTooLarge when an auxiliary value leaves
/// the invertible range, CorrectionInfeasible when the invariant defect
/// cannot be absorbed, std::domain_error when u is not admissible on entry.
template <class Rhs>
StepDiagnostics bprk_step(GridState& u, Rhs&& rhs, const ButcherTableau& tab, double t,
                          double dt, std::span<const BoundsMapping> maps,
                          const BpOptions& opts, BpWorkspace& ws) {
    const std::size_t s = tab.s;
    const std::size_t m = u.components();
    const std::size_t nn = u.num_nodes();
    ws.ensure(u, s);
    StepDiagnostics diag;

    double un[kMaxComponents], wn[kMaxComponents], ln[kMaxComponents];

    // Map the admissible state into auxiliary space (throws if u is outside
    // its widened set — the step precondition).
    for (std::size_t i = 0; i < nn; ++i) {
        u.node_state(i, un);
        maps[i].forward(std::span<const double>(un, m), std::span<double>(wn, m));
        for (std::size_t c = 0; c < m; ++c) ws.w_n[i * m + c] = wn[c];
    }

    for (std::size_t k = 0; k < s; ++k) {
        if (k == 0) {
            ws.stage = u;  // stage-1 partial sum is exactly w^n
        } else {
            for (std::size_t i = 0; i < nn; ++i) {
                for (std::size_t c = 0; c < m; ++c) {
                    double acc = ws.w_n[i * m + c];
                    for (std::size_t j = 0; j < k; ++j) {
                        const double a = tab.A[k][j];
                        if (a != 0.0) acc += dt * a * ws.T[j][i * m + c];
                    }
                    if (detail::guard_rejects(maps[i].row_guard(c), acc, opts.w_limit))
                        throw StepTooLarge(i);
                    wn[c] = acc;
                }
                maps[i].inverse(std::span<const double>(wn, m), std::span<double>(un, m));
                for (std::size_t c = 0; c < m; ++c)
                    if (!std::isfinite(un[c])) throw StepTooLarge(i);
                ws.stage.set_node_state(i, std::span<const double>(un, m));
            }
        }
        rhs(ws.stage, t + tab.c[k] * dt, ws.u_bar);  // u_bar doubles as L buffer
        detail::check_finite(ws.u_bar, "rhs");
        auto& Tk = ws.T[k];
        for (std::size_t i = 0; i < nn; ++i) {
            ws.stage.node_state(i, un);
            ws.u_bar.node_state(i, ln);
            maps[i].jvp(std::span<const double>(un, m), std::span<const double>(ln, m),
                        std::span<double>(wn, m));
            for (std::size_t c = 0; c < m; ++c) Tk[i * m + c] = wn[c];
        }
    }

    // Combine: w^{n+1} = w^n + dt sum_k b_k T_k, invert per node. A node whose
    // accumulated increment is exactly zero keeps u^n (exact round trip).
    for (std::size_t i = 0; i < nn; ++i) {
        bool moved = false;
        for (std::size_t c = 0; c < m; ++c) {
            double dw = 0.0;
            for (std::size_t k = 0; k < s; ++k) {
                const double b = tab.b[k];
                if (b != 0.0) dw += dt * b * ws.T[k][i * m + c];
            }
            if (dw != 0.0) moved = true;
            wn[c] = ws.w_n[i * m + c] + dw;
            if (detail::guard_rejects(maps[i].row_guard(c), wn[c], opts.w_limit))
                throw StepTooLarge(i);
        }
        if (!moved) {
            u.node_state(i, un);
        } else {
            maps[i].inverse(std::span<const double>(wn, m), std::span<double>(un, m));
            for (std::size_t c = 0; c < m; ++c)
                if (!std::isfinite(un[c])) throw StepTooLarge(i);
        }
        ws.u_bar.set_node_state(i, std::span<const double>(un, m));
    }

    std::array<double, kMaxComponents> mass_before{};
    for (std::size_t c = 0; c < m; ++c) mass_before[c] = u.mass(c);

    const MassDefect defect = mass_defect(u, ws.u_bar);
    diag.sbar_norm = defect.norm;

    if (defect.norm > 0.0) {
        diag.correction_applied = true;
        const std::span<const double> dir(defect.dir.data(), m);
        auto compute_gammas = [&](bool numeric) {
            for (std::size_t i = 0; i < nn; ++i) {
                ws.u_bar.node_state(i, un);
                const std::span<const double> ui(un, m);
                const double hi = analytic_gamma(maps[i].widened_set(), ui, dir);
                ws.gamma_sel[i] =
                    numeric ? gamma_star_numeric(maps[i].widened_set(), ui, dir, hi,
                                                 opts.gamma_iters, opts.root_method)
                            : hi;
            }
        };
        const bool start_numeric = opts.gamma_mode == GammaMode::numeric;
        compute_gammas(start_numeric);
        if (opts.gamma_mode == GammaMode::analytic_with_fallback) {
            ws.u_save = ws.u_bar;
            apply_correction(ws.u_bar, ws.gamma_sel, defect);
            int violations = 0;
            for (std::size_t i = 0; i < nn; ++i) {
                ws.u_bar.node_state(i, un);
                if (margin(maps[i].widened_set(), std::span<const double>(un, m)) < 0.0)
                    ++violations;
            }
            if (violations > 0) {
                diag.fallback_triggers = violations;
                ws.u_bar = ws.u_save;
                compute_gammas(true);
                apply_correction(ws.u_bar, ws.gamma_sel, defect);
            }
        } else {
            apply_correction(ws.u_bar, ws.gamma_sel, defect);
        }
    }
    u = ws.u_bar;

    for (std::size_t c = 0; c < m; ++c)
        diag.mass_residual[c] = std::abs(u.mass(c) - mass_before[c]);
    for (std::size_t i = 0; i < nn; ++i) {
        u.node_state(i, un);
        diag.min_margin = std::min(
            diag.min_margin, margin(maps[i].widened_set(), std::span<const double>(un, m)));
    }
    return diag;
}

}  // namespace bprk
