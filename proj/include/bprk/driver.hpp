#pragma once
// Run orchestration: resolve a configuration against the problem catalog,
// advance the semidiscrete system in time (plain or bounds-preserving),
// collect per-step diagnostics, and serialize reports / snapshots as CSV
// with 17 significant digits (byte-identical across runs).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "mappings.hpp"
#include "problems.hpp"
#include "spectral.hpp"
#include "stepper.hpp"
#include "tableau.hpp"

namespace bprk {

enum class BoundsKind { none, dmp, idp, idp_positivity };
enum class Outcome { success, diverged, infeasible };

struct ResolvedRun {
    ProblemSpec spec;
    std::size_t n = 0;  // user-facing N (half-domain where periodized)
    double dt = 0.0, t_end = 0.0;
    std::string scheme;
    ButcherTableau tableau;
    bool bp = true;
    BoundsKind bounds = BoundsKind::none;
    BpOptions opts;
    std::size_t report_every = 10, snapshot_every = 0;
    std::string out_dir;
    std::vector<std::string> notes;
};

inline ResolvedRun resolve(const RunConfig& cfg) {
    ResolvedRun r;
    r.spec = make_problem(cfg.problem, cfg.gamma_gas);
    if (cfg.n < 0) throw std::invalid_argument("config: n must be positive");
    r.n = cfg.n > 0 ? static_cast<std::size_t>(cfg.n) : r.spec.default_n;
    if (cfg.dt < 0.0) throw std::invalid_argument("config: dt must be positive");
    r.dt = cfg.dt > 0.0 ? cfg.dt : r.spec.default_dt;
    r.t_end = cfg.t_end >= 0.0 ? cfg.t_end : r.spec.default_t_end;
    r.scheme = cfg.scheme.empty() ? r.spec.default_scheme : cfg.scheme;
    r.tableau = builtin_tableau(r.scheme);  // rejects unknown names

    const std::string mode = cfg.mode.empty() ? r.spec.default_mode : cfg.mode;
    if (mode == "bp") r.bp = true;
    else if (mode == "plain") r.bp = false;
    else throw std::invalid_argument("config: mode must be plain or bp: " + mode);

    const std::string bounds = cfg.bounds.empty() ? r.spec.default_bounds : cfg.bounds;
    if (bounds == "none") r.bounds = BoundsKind::none;
    else if (bounds == "dmp") r.bounds = BoundsKind::dmp;
    else if (bounds == "idp") r.bounds = BoundsKind::idp;
    else if (bounds == "idp_positivity_only") r.bounds = BoundsKind::idp_positivity;
    else throw std::invalid_argument("config: unknown bounds kind: " + bounds);

    const bool euler = std::holds_alternative<Euler>(r.spec.equation);
    if ((r.bounds == BoundsKind::idp || r.bounds == BoundsKind::idp_positivity) && !euler)
        throw std::invalid_argument("config: idp bounds require the Euler system");
    if (r.bounds == BoundsKind::dmp && euler)
        throw std::invalid_argument("config: dmp bounds require a scalar equation");
    if (!r.bp) r.bounds = BoundsKind::none;  // plain mode ignores bounds

    if (cfg.tolerance < 0.0)
        throw std::invalid_argument("config: tolerance must be positive");
    r.opts.tolerance =
        cfg.tolerance > 0.0 ? cfg.tolerance : r.spec.default_tolerance;
    if (cfg.gamma_mode == "analytic") r.opts.gamma_mode = GammaMode::analytic;
    else if (cfg.gamma_mode == "numeric") r.opts.gamma_mode = GammaMode::numeric;
    else if (cfg.gamma_mode == "analytic_with_fallback")
        r.opts.gamma_mode = GammaMode::analytic_with_fallback;
    else throw std::invalid_argument("config: unknown gamma_mode: " + cfg.gamma_mode);
    if (cfg.gamma_iters < 1)
        throw std::invalid_argument("config: gamma_iters must be >= 1");
    r.opts.gamma_iters = static_cast<int>(cfg.gamma_iters);
    if (cfg.root_method == "bisection") r.opts.root_method = RootMethod::bisection;
    else if (cfg.root_method == "illinois") r.opts.root_method = RootMethod::illinois;
    else throw std::invalid_argument("config: unknown root_method: " + cfg.root_method);
    if (cfg.report_every < 1)
        throw std::invalid_argument("config: report_every must be >= 1");
    r.report_every = static_cast<std::size_t>(cfg.report_every);
    if (cfg.snapshot_every < 0)
        throw std::invalid_argument("config: snapshot_every must be >= 0");
    r.snapshot_every = static_cast<std::size_t>(cfg.snapshot_every);
    r.out_dir = cfg.out_dir;
    r.notes = r.spec.notes;
    return r;
}

struct ReportRow {
    double t = 0.0;
    std::array<double, kMaxComponents> mass_drift{};
    double sbar_norm = 0.0;
    double min_margin = 0.0;
    double sigma_total = 0.0;
    double l1 = 0.0, l2 = 0.0;
};

struct RunResult {
    Outcome outcome = Outcome::success;
    std::string message;
    GridState state;
    double t_final = 0.0;
    long steps = 0;
    std::vector<ReportRow> rows;
    bool bp = false;
    bool has_margin = false, has_sigma = false, has_ref = false;
    long fallback_total = 0;
    std::array<double, kMaxComponents> mass0{};
    std::vector<std::pair<double, GridState>> snapshots;
};

namespace detail {

inline double sigma_total(const Euler& eq, const GridState& u) {
    double s = 0.0;
    double st[kMaxComponents];
    const std::size_t m = eq.components();
    for (std::size_t i = 0; i < u.num_nodes(); ++i) {
        u.node_state(i, st);
        s += eq.sigma(std::span<const double>(st, m));
    }
    return s * u.weight();
}

inline bool sigma_defined(const Euler& eq, const GridState& u) {
    double st[kMaxComponents];
    const std::size_t m = eq.components();
    for (std::size_t i = 0; i < u.num_nodes(); ++i) {
        u.node_state(i, st);
        if (!(eq.psi_tilde(std::span<const double>(st, m)) > 1.0)) return false;
    }
    return true;
}

inline void stepper_finite_check(const GridState& u) {
    const auto& v = u.raw();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw std::runtime_error("state non-finite at node " +
                                     std::to_string(i % u.num_nodes()));
}

template <class Eq>
RunResult run_typed(const ResolvedRun& r, const Eq& eq) {
    GridState u = initial_state(r.spec, r.n);
    const std::size_t m = u.components();
    const std::size_t nn = u.num_nodes();

    RunResult res;
    res.bp = r.bp;
    res.has_margin = r.bp && r.bounds != BoundsKind::none;
    res.has_ref = has_reference(r.spec);
    for (std::size_t c = 0; c < m; ++c) res.mass0[c] = u.mass(c);
    if constexpr (std::is_same_v<Eq, Euler>)
        res.has_sigma = r.bp && sigma_defined(eq, u);

    FluxDivergence<Eq> L(eq, u);
    auto rhs = [&](const GridState& s, double t, GridState& out) { L(s, t, out); };

    RkWorkspace rk_ws;
    BpWorkspace bp_ws;
    IdpWorkspace idp_ws;
    std::vector<AdmissibleSet> sets;
    std::vector<BoundsMapping> maps;
    if (r.bp && r.bounds == BoundsKind::none) {
        sets.assign(nn, Unbounded{});
        maps.assign(nn, BoundsMapping(Unbounded{}, m, r.opts.tolerance));
    }
    // Stencil bounds are capped by the initial hull: the exact solution of a
    // scalar conservation law never leaves it, and the cap stops widened-bound
    // saturation from ratcheting the stencil range outward step over step.
    const Interval hull = global_hull(u);

    GridState ref = u.like_empty();
    auto record_row = [&](double t, const StepDiagnostics& diag) {
        ReportRow row;
        row.t = t;
        for (std::size_t c = 0; c < m; ++c)
            row.mass_drift[c] = std::abs(u.mass(c) - res.mass0[c]);
        row.sbar_norm = diag.sbar_norm;
        row.min_margin = res.has_margin ? diag.min_margin : 0.0;
        if constexpr (std::is_same_v<Eq, Euler>) {
            if (res.has_sigma) row.sigma_total = sigma_total(eq, u);
        }
        if (res.has_ref) {
            reference_solution(r.spec, u, t, ref);
            double a1 = 0.0, a2 = 0.0;
            const auto pu = u.plane(0);
            const auto pr = ref.plane(0);
            for (std::size_t i = 0; i < nn; ++i) {
                const double d = pu[i] - pr[i];
                a1 += std::abs(d);
                a2 += d * d;
            }
            row.l1 = u.weight() * a1;
            row.l2 = std::sqrt(u.weight() * a2);
        }
        res.rows.push_back(row);
    };

    double t = 0.0;
    long step = 0;
    const double t_tol = 1e-12 * std::max(1.0, r.t_end);
    try {
        while (r.t_end - t > t_tol) {
            const double dtk = std::min(r.dt, r.t_end - t);
            StepDiagnostics diag;
            if (r.bp) {
                if (r.bounds == BoundsKind::dmp) {
                    dmp_bounds(u, sets, &hull);
                } else if (r.bounds == BoundsKind::idp ||
                           r.bounds == BoundsKind::idp_positivity) {
                    if constexpr (std::is_same_v<Eq, Euler>)
                        idp_bounds(u, eq, r.bounds == BoundsKind::idp_positivity,
                                   idp_ws, sets);
                }
                if (r.bounds != BoundsKind::none) {
                    maps.resize(nn);
                    for (std::size_t i = 0; i < nn; ++i)
                        maps[i] = BoundsMapping(sets[i], m, r.opts.tolerance);
                }
                diag = bprk_step(u, rhs, r.tableau, t, dtk, maps, r.opts, bp_ws);
                res.fallback_total += diag.fallback_triggers;
            } else {
                rk_step(u, rhs, r.tableau, t, dtk, rk_ws);
                stepper_finite_check(u);
            }
            t += dtk;
            ++step;
            const bool last = !(r.t_end - t > t_tol);
            if (step % static_cast<long>(r.report_every) == 0 || last)
                record_row(t, diag);
            if (r.snapshot_every > 0 &&
                step % static_cast<long>(r.snapshot_every) == 0 && !last)
                res.snapshots.emplace_back(t, u);
        }
        res.outcome = Outcome::success;
    } catch (const CorrectionInfeasible& e) {
        res.outcome = Outcome::infeasible;
        res.message = e.what();
    } catch (const std::exception& e) {
        res.outcome = Outcome::diverged;
        res.message = e.what();
    }
    res.state = u;
    res.t_final = t;
    res.steps = step;
    return res;
}

}  // namespace detail

inline RunResult run_problem(const ResolvedRun& r) {
    return std::visit([&](const auto& eq) { return detail::run_typed(r, eq); },
                      r.spec.equation);
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace detail

inline std::vector<std::string> component_names(const EquationVariant& eq) {
    if (const auto* e = std::get_if<Euler>(&eq)) {
        if (e->dims == 1) return {"rho", "rho_v", "E"};
        return {"rho", "rho_u", "rho_v", "E"};
    }
    return {"u"};
}

inline void write_report_csv(std::ostream& os, const RunResult& res,
                             const ResolvedRun& r) {
    const auto names = component_names(r.spec.equation);
    os << "t";
    for (const auto& nm : names) os << ",mass_res_" << nm;
    if (res.bp) os << ",sbar_norm";
    if (res.has_margin) os << ",min_bound_dist";
    if (res.has_sigma) os << ",sigma_total";
    if (res.has_ref) os << ",l1_error,l2_error";
    os << "\n";
    for (const auto& row : res.rows) {
        os << detail::fmt17(row.t);
        for (std::size_t c = 0; c < names.size(); ++c)
            os << "," << detail::fmt17(row.mass_drift[c]);
        if (res.bp) os << "," << detail::fmt17(row.sbar_norm);
        if (res.has_margin) os << "," << detail::fmt17(row.min_margin);
        if (res.has_sigma) os << "," << detail::fmt17(row.sigma_total);
        if (res.has_ref)
            os << "," << detail::fmt17(row.l1) << "," << detail::fmt17(row.l2);
        os << "\n";
    }
}

/// Nodal snapshot: coordinates, conserved components, derived velocity and
/// pressure for the Euler system. 2D rows are emitted in row-major node
/// order with x,y leading.
inline void write_snapshot_csv(std::ostream& os, const GridState& u,
                               const EquationVariant& eqv) {
    const std::size_t m = u.components();
    const auto names = component_names(eqv);
    const auto* euler = std::get_if<Euler>(&eqv);
    os << "x";
    if (u.dims() == 2) os << ",y";
    for (const auto& nm : names) os << "," << nm;
    if (euler) {
        if (euler->dims == 1) os << ",v,P";
        else os << ",u,v,P";
    }
    os << "\n";
    double st[kMaxComponents];
    for (std::size_t i = 0; i < u.num_nodes(); ++i) {
        os << detail::fmt17(u.x_of(i));
        if (u.dims() == 2) os << "," << detail::fmt17(u.y_of(i));
        u.node_state(i, st);
        for (std::size_t c = 0; c < m; ++c) os << "," << detail::fmt17(st[c]);
        if (euler) {
            const std::span<const double> s(st, m);
            for (int d = 0; d < euler->dims; ++d)
                os << "," << detail::fmt17(st[1 + d] / st[0]);
            os << "," << detail::fmt17(euler->pressure(s));
        }
        os << "\n";
    }
}

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::success: return "success";
        case Outcome::diverged: return "diverged";
        default: return "infeasible_correction";
    }
}

inline void write_run_info(std::ostream& os, const RunResult& res,
                           const ResolvedRun& r) {
    os << "problem = " << r.spec.name << "\n"
       << "summary = " << r.spec.summary << "\n"
       << "n = " << r.n << (r.spec.periodized ? " (half-domain)" : "") << "\n"
       << "grid_nodes = " << res.state.num_nodes() << "\n"
       << "dt = " << detail::fmt17(r.dt) << "\n"
       << "t_end = " << detail::fmt17(r.t_end) << "\n"
       << "scheme = " << r.scheme << "\n"
       << "mode = " << (r.bp ? "bp" : "plain") << "\n";
    const char* bk = r.bounds == BoundsKind::none ? "none"
                     : r.bounds == BoundsKind::dmp ? "dmp"
                     : r.bounds == BoundsKind::idp ? "idp"
                                                   : "idp_positivity_only";
    os << "bounds = " << bk << "\n"
       << "tolerance = " << detail::fmt17(r.opts.tolerance) << "\n"
       << "outcome = " << outcome_name(res.outcome) << "\n";
    if (!res.message.empty()) os << "message = " << res.message << "\n";
    os << "steps = " << res.steps << "\n"
       << "t_final = " << detail::fmt17(res.t_final) << "\n"
       << "fallback_triggers = " << res.fallback_total << "\n";
    for (const auto& note : r.notes) os << "note = " << note << "\n";
}

// ---------------------------------------------------------------------------
// Convergence study

struct ConvergenceResult {
    std::vector<double> dts;
    std::vector<double> errors;  // discrete L2 of the first component at t_end
    double fitted_order = 0.0;
    bool monotone = true;
};

/// Run the base configuration across a dt ladder and fit the observed order
/// as the least-squares slope of log(error) against log(dt).
inline ConvergenceResult convergence_study(const RunConfig& base,
                                           std::vector<double> dts) {
    if (dts.size() < 2)
        throw std::invalid_argument("convergence study needs at least two dt values");
    std::sort(dts.begin(), dts.end(), std::greater<double>());
    ConvergenceResult cr;
    for (const double dt : dts) {
        RunConfig cfg = base;
        cfg.dt = dt;
        const ResolvedRun r = resolve(cfg);
        if (!has_reference(r.spec))
            throw std::invalid_argument(
                "convergence study requires a problem with a reference solution");
        const RunResult res = run_problem(r);
        if (res.outcome != Outcome::success)
            throw std::runtime_error("convergence run failed at dt = " +
                                     detail::fmt17(dt) + ": " + res.message);
        cr.dts.push_back(dt);
        cr.errors.push_back(res.rows.back().l2);
    }
    for (std::size_t i = 1; i < cr.errors.size(); ++i)
        if (!(cr.errors[i] < cr.errors[i - 1])) cr.monotone = false;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(cr.dts.size());
    for (std::size_t i = 0; i < cr.dts.size(); ++i) {
        const double x = std::log(cr.dts[i]);
        const double y = std::log(std::max(cr.errors[i], 1e-300));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    cr.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return cr;
}

inline void write_convergence_csv(std::ostream& os, const ConvergenceResult& cr) {
    os << "dt,l2_error,fitted_order,monotone\n";
    for (std::size_t i = 0; i < cr.dts.size(); ++i)
        os << detail::fmt17(cr.dts[i]) << "," << detail::fmt17(cr.errors[i]) << ","
           << detail::fmt17(cr.fitted_order) << "," << (cr.monotone ? 1 : 0) << "\n";
}

}  // namespace bprk
