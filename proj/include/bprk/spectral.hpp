#pragma once
// Fourier pseudospectral differentiation on uniform periodic grids.
//
// Complex transforms via FFTW; derivative = multiply mode k by i*k with the
// Nyquist mode's derivative coefficient zeroed (even N), inverse transform,
// take the real part. The imaginary residue after inversion is asserted to
// stay below 1e-12 relative to the field magnitude. Grid sizes must be powers
// of two. No dealiasing of nonlinear terms is applied anywhere.

#include <fftw3.h>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "physics.hpp"
#include "sets.hpp"

namespace bprk {

class SpectralWorkspace {
  public:
    SpectralWorkspace(int dims, std::size_t n, double extent)
        : dims_(dims), n_(n) {
        if (dims < 1 || dims > 2)
            throw std::invalid_argument("spectral: dims must be 1 or 2");
        if (n < 2 || (n & (n - 1)) != 0)
            throw std::invalid_argument("spectral: grid size must be a power of two");
        nodes_ = n;
        for (int d = 1; d < dims; ++d) nodes_ *= n;
        buf_a_ = fftw_alloc_complex(nodes_);
        buf_b_ = fftw_alloc_complex(nodes_);
        if (dims == 1) {
            fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_a_, buf_a_,
                                    FFTW_FORWARD, FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_a_, buf_a_,
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
        } else {
            fwd_ = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n),
                                    buf_a_, buf_a_, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n),
                                    buf_a_, buf_a_, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        // Wavenumbers 2*pi*j/L for j = 0..n/2-1, then negative frequencies;
        // the Nyquist slot j = n/2 carries 0 so the derivative stays real.
        wavenumbers_.resize(n);
        const double k0 = 2.0 * std::acos(-1.0) / extent;
        for (std::size_t j = 0; j < n; ++j) {
            if (j < n / 2) wavenumbers_[j] = k0 * static_cast<double>(j);
            else if (j == n / 2) wavenumbers_[j] = 0.0;
            else wavenumbers_[j] = -k0 * static_cast<double>(n - j);
        }
    }

    ~SpectralWorkspace() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_a_);
        fftw_free(buf_b_);
    }
    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    std::size_t num_nodes() const { return nodes_; }

    /// df = d/dx_axis f (spectral derivative of one scalar field).
    void derivative(std::span<const double> f, int axis, std::span<double> df) {
        const double scale = load(f);
        fftw_execute(fwd_);
        apply_ik(axis, 1.0);
        fftw_execute(bwd_);
        store(df, scale);
    }

    /// out = d/dx fx              (1D, fy ignored)
    /// out = d/dx fx + d/dy fy    (2D); single inverse transform.
    void divergence(std::span<const double> fx, std::span<const double> fy,
                    std::span<double> out) {
        if (dims_ == 1) {
            derivative(fx, 0, out);
            return;
        }
        const double scale_x = load(fx);
        fftw_execute(fwd_);
        apply_ik(0, 1.0);
        std::copy(&buf_a_[0][0], &buf_a_[0][0] + 2 * nodes_, &buf_b_[0][0]);
        const double scale_y = load(fy);
        fftw_execute(fwd_);
        apply_ik(1, 1.0);
        for (std::size_t i = 0; i < nodes_; ++i) {
            buf_a_[i][0] += buf_b_[i][0];
            buf_a_[i][1] += buf_b_[i][1];
        }
        fftw_execute(bwd_);
        store(out, std::max(scale_x, scale_y));
    }

    double last_imag_residue() const { return last_imag_; }

  private:
    double load(std::span<const double> f) {
        double amax = 0.0;
        for (std::size_t i = 0; i < nodes_; ++i) {
            buf_a_[i][0] = f[i];
            buf_a_[i][1] = 0.0;
            amax = std::max(amax, std::abs(f[i]));
        }
        return amax;
    }

    // Multiply spectrum by i * k_axis (times an optional factor).
    void apply_ik(int axis, double factor) {
        if (dims_ == 1) {
            for (std::size_t j = 0; j < n_; ++j) {
                const double k = wavenumbers_[j] * factor;
                const double re = buf_a_[j][0], im = buf_a_[j][1];
                buf_a_[j][0] = -k * im;
                buf_a_[j][1] = k * re;
            }
        } else {
            for (std::size_t jy = 0; jy < n_; ++jy) {
                for (std::size_t jx = 0; jx < n_; ++jx) {
                    const std::size_t idx = jy * n_ + jx;
                    const double k =
                        (axis == 0 ? wavenumbers_[jx] : wavenumbers_[jy]) * factor;
                    const double re = buf_a_[idx][0], im = buf_a_[idx][1];
                    buf_a_[idx][0] = -k * im;
                    buf_a_[idx][1] = k * re;
                }
            }
        }
    }

    void store(std::span<double> out, double field_scale) {
        const double norm = 1.0 / static_cast<double>(nodes_);
        double imax = 0.0;
        for (std::size_t i = 0; i < nodes_; ++i) {
            out[i] = buf_a_[i][0] * norm;
            imax = std::max(imax, std::abs(buf_a_[i][1]) * norm);
        }
        last_imag_ = imax;
        // Derivative of a k-scaled field: allow the residue to grow with both
        // the field magnitude and the derivative magnitude.
        double omax = 0.0;
        for (std::size_t i = 0; i < nodes_; ++i) omax = std::max(omax, std::abs(out[i]));
        if (imax > 1e-12 * (1.0 + std::max(field_scale, omax)))
            throw std::runtime_error("spectral: imaginary residue exceeds tolerance");
    }

    int dims_;
    std::size_t n_, nodes_;
    fftw_complex* buf_a_;
    fftw_complex* buf_b_;
    fftw_plan fwd_, bwd_;
    std::vector<double> wavenumbers_;
    double last_imag_ = 0.0;
};

/// Semidiscrete operator L(u) = -div F(u) evaluated pseudospectrally:
/// pointwise fluxes at the nodes, spectral divergence per component.
template <class Equation>
class FluxDivergence {
  public:
    FluxDivergence(const Equation& eq, const GridState& prototype)
        : eq_(eq),
          ws_(prototype.dims(), prototype.n(), prototype.extent()),
          flux_x_(prototype.like_empty()),
          flux_y_(prototype.like_empty()) {}

    void operator()(const GridState& u, double /*t*/, GridState& out) {
        const std::size_t m = u.components();
        const std::size_t nn = u.num_nodes();
        double state[kMaxComponents], f[kMaxComponents];
        for (std::size_t i = 0; i < nn; ++i) {
            u.node_state(i, state);
            eq_.flux(state, 0, f);
            for (std::size_t c = 0; c < m; ++c) {
                if (!std::isfinite(f[c]))
                    throw std::runtime_error("flux divergence: non-finite flux at node " +
                                             std::to_string(i));
                flux_x_.at(c, i) = f[c];
            }
            if (u.dims() == 2) {
                eq_.flux(state, 1, f);
                for (std::size_t c = 0; c < m; ++c) {
                    if (!std::isfinite(f[c]))
                        throw std::runtime_error(
                            "flux divergence: non-finite flux at node " +
                            std::to_string(i));
                    flux_y_.at(c, i) = f[c];
                }
            }
        }
        for (std::size_t c = 0; c < m; ++c) {
            ws_.divergence(flux_x_.plane(c), flux_y_.plane(c), out.plane(c));
            for (double& v : out.plane(c)) v = -v;
        }
    }

    SpectralWorkspace& workspace() { return ws_; }

  private:
    Equation eq_;
    SpectralWorkspace ws_;
    GridState flux_x_, flux_y_;
};

}  // namespace bprk
