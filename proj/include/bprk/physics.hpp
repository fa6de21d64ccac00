#pragma once
// Conservation-law right-hand sides in pointwise form: linear advection,
// Burgers, and the compressible Euler system (1D/2D, ideal gas), plus the
// entropy bookkeeping the invariant-domain bounds and diagnostics need.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <variant>

namespace bprk {

struct Advection {
    double speed = 1.0;
    static constexpr int dims = 1;
    std::size_t components() const { return 1; }
    void flux(std::span<const double> u, int /*axis*/, std::span<double> f) const {
        f[0] = speed * u[0];
    }
};

struct Burgers {
    static constexpr int dims = 1;
    std::size_t components() const { return 1; }
    void flux(std::span<const double> u, int /*axis*/, std::span<double> f) const {
        f[0] = 0.5 * u[0] * u[0];
    }
};

/// Ideal-gas Euler equations; state (rho, q, E) in 1D, (rho, qx, qy, E) in 2D
/// with q the momentum density and E the total energy density.
struct Euler {
    double gamma_gas = 1.4;
    int dims = 1;

    std::size_t components() const { return static_cast<std::size_t>(dims) + 2; }

    double pressure(std::span<const double> u) const {
        double ke2 = u[1] * u[1];
        if (dims == 2) ke2 += u[2] * u[2];
        const double E = u[dims + 1];
        return (gamma_gas - 1.0) * (E - 0.5 * ke2 / u[0]);
    }

    /// Internal energy density e = E - |q|^2 / (2 rho).
    double internal_energy(std::span<const double> u) const {
        double ke2 = u[1] * u[1];
        if (dims == 2) ke2 += u[2] * u[2];
        return u[dims + 1] - 0.5 * ke2 / u[0];
    }

    /// Entropy surrogate  psi_tilde = e rho^(-gamma) = exp((gamma-1) Psi).
    double psi_tilde(std::span<const double> u) const {
        return internal_energy(u) * std::pow(u[0], -gamma_gas);
    }

    /// Specific-entropy functional  Psi = log(e rho^(-gamma)) / (gamma - 1).
    double psi(std::span<const double> u) const {
        return std::log(psi_tilde(u)) / (gamma_gas - 1.0);
    }

    /// Numerical entropy density  sigma = -rho log(Psi); requires Psi > 0.
    double sigma(std::span<const double> u) const {
        const double p = psi(u);
        if (!(p > 0.0))
            throw std::domain_error("sigma: entropy functional not positive");
        return -u[0] * std::log(p);
    }

    void flux(std::span<const double> u, int axis, std::span<double> f) const {
        const double rho = u[0];
        const double P = pressure(u);
        const double E = u[dims + 1];
        if (dims == 1) {
            const double v = u[1] / rho;
            f[0] = u[1];
            f[1] = u[1] * v + P;
            f[2] = (E + P) * v;
        } else {
            const double vn = u[1 + axis] / rho;
            f[0] = u[1 + axis];
            f[1] = u[1] * vn + (axis == 0 ? P : 0.0);
            f[2] = u[2] * vn + (axis == 1 ? P : 0.0);
            f[3] = (E + P) * vn;
        }
    }

    /// (rho, v.., P) -> (rho, q.., E)
    void primitive_to_conservative(std::span<const double> prim,
                                   std::span<double> u) const {
        const double rho = prim[0];
        double ke = 0.0;
        u[0] = rho;
        for (int d = 0; d < dims; ++d) {
            u[1 + d] = rho * prim[1 + d];
            ke += prim[1 + d] * prim[1 + d];
        }
        u[dims + 1] = prim[dims + 1] / (gamma_gas - 1.0) + 0.5 * rho * ke;
    }

    void conservative_to_primitive(std::span<const double> u,
                                   std::span<double> prim) const {
        prim[0] = u[0];
        for (int d = 0; d < dims; ++d) prim[1 + d] = u[1 + d] / u[0];
        prim[dims + 1] = pressure(u);
    }

    bool admissible(std::span<const double> u) const {
        return u[0] > 0.0 && internal_energy(u) > 0.0;
    }

    double sound_speed(double rho, double P) const {
        return std::sqrt(gamma_gas * P / rho);
    }
};

using EquationVariant = std::variant<Advection, Burgers, Euler>;

inline std::size_t equation_components(const EquationVariant& eq) {
    return std::visit([](const auto& e) { return e.components(); }, eq);
}

}  // namespace bprk
