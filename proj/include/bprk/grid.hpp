#pragma once
// Uniform periodic tensor grid with nodal field storage.
//
// Fields are stored component-major: component c occupies one contiguous
// plane of num_nodes() doubles (friendly to per-component transforms); the
// per-node accessors gather across planes. 2D uses row-major node indexing,
// node = iy * n + ix. Quadrature weight per node is h^dims (periodic
// trapezoidal rule, exact for the trigonometric basis).

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace bprk {

class GridState {
  public:
    GridState() = default;

    /// dims: 1 or 2; n: nodes per dimension; m: field components;
    /// extent: domain length per dimension; origin: coordinate of the domain
    /// start; half_offset: place nodes at (i + 1/2) h instead of i h.
    GridState(int dims, std::size_t n, std::size_t m, double extent = 1.0,
              double origin = 0.0, bool half_offset = false)
        : dims_(dims), n_(n), m_(m), extent_(extent), origin_(origin),
          half_offset_(half_offset) {
        if (dims < 1 || dims > 2) throw std::invalid_argument("grid: dims must be 1 or 2");
        if (n == 0 || m == 0) throw std::invalid_argument("grid: empty grid");
        nodes_ = n;
        for (int d = 1; d < dims; ++d) nodes_ *= n;
        h_ = extent / static_cast<double>(n);
        vals_.assign(m * nodes_, 0.0);
    }

    int dims() const { return dims_; }
    std::size_t n() const { return n_; }
    std::size_t components() const { return m_; }
    std::size_t num_nodes() const { return nodes_; }
    double h() const { return h_; }
    double extent() const { return extent_; }
    double origin() const { return origin_; }
    bool half_offset() const { return half_offset_; }

    /// Quadrature weight m_i (identical for every node).
    double weight() const {
        double w = h_;
        for (int d = 1; d < dims_; ++d) w *= h_;
        return w;
    }

    /// Coordinate along one axis for grid index i (0-based).
    double coord(std::size_t i) const {
        return origin_ + (static_cast<double>(i) + (half_offset_ ? 0.5 : 0.0)) * h_;
    }
    double x_of(std::size_t node) const { return coord(node % n_); }
    double y_of(std::size_t node) const { return coord(node / n_); }

    double& at(std::size_t c, std::size_t node) { return vals_[c * nodes_ + node]; }
    double at(std::size_t c, std::size_t node) const { return vals_[c * nodes_ + node]; }

    std::span<double> plane(std::size_t c) { return {vals_.data() + c * nodes_, nodes_}; }
    std::span<const double> plane(std::size_t c) const {
        return {vals_.data() + c * nodes_, nodes_};
    }

    std::vector<double>& raw() { return vals_; }
    const std::vector<double>& raw() const { return vals_; }

    /// Gather / scatter the m-vector at one node.
    void node_state(std::size_t node, std::span<double> out) const {
        for (std::size_t c = 0; c < m_; ++c) out[c] = vals_[c * nodes_ + node];
    }
    void set_node_state(std::size_t node, std::span<const double> in) {
        for (std::size_t c = 0; c < m_; ++c) vals_[c * nodes_ + node] = in[c];
    }

    /// Fixed-order sum of m_i * u_c over all nodes (deterministic reduction).
    double mass(std::size_t c) const {
        double s = 0.0;
        const double* p = vals_.data() + c * nodes_;
        for (std::size_t i = 0; i < nodes_; ++i) s += p[i];
        return s * weight();
    }

    GridState like_empty() const {
        GridState g = *this;
        g.vals_.assign(vals_.size(), 0.0);
        return g;
    }

  private:
    int dims_ = 1;
    std::size_t n_ = 0, m_ = 0, nodes_ = 0;
    double extent_ = 1.0, origin_ = 0.0, h_ = 0.0;
    bool half_offset_ = false;
    std::vector<double> vals_;
};

}  // namespace bprk
