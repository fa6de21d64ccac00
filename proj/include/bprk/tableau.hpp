#pragma once
// Explicit Runge-Kutta Butcher tableaux: storage, validation, built-in schemes.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bprk {

struct ButcherTableau {
    std::size_t s = 0;                     // number of stages
    std::vector<std::vector<double>> A;    // s x s, strictly lower triangular
    std::vector<double> b;                 // s quadrature weights
    std::vector<double> c;                 // s abscissae

    ButcherTableau() = default;
    ButcherTableau(std::vector<std::vector<double>> A_,
                   std::vector<double> b_, std::vector<double> c_)
        : s(b_.size()), A(std::move(A_)), b(std::move(b_)), c(std::move(c_)) {
        validate();
    }

    void validate() const {
        if (b.size() != s || c.size() != s || A.size() != s)
            throw std::invalid_argument("tableau: inconsistent dimensions");
        for (const auto& row : A)
            if (row.size() != s)
                throw std::invalid_argument("tableau: A must be s x s");
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t k = j; k < s; ++k)
                if (A[j][k] != 0.0)
                    throw std::invalid_argument(
                        "tableau: A must be strictly lower triangular (explicit scheme)");
    }
};

/// Built-in explicit schemes. rk1 = forward Euler, rk2 = midpoint,
/// rk3 = Heun's third-order scheme, rk4 = the classic fourth-order scheme.
inline ButcherTableau builtin_tableau(const std::string& name) {
    if (name == "rk1")
        return ButcherTableau({{0.0}}, {1.0}, {0.0});
    if (name == "rk2")
        return ButcherTableau({{0.0, 0.0},
                               {0.5, 0.0}},
                              {0.0, 1.0}, {0.0, 0.5});
    if (name == "rk3")
        return ButcherTableau({{0.0, 0.0, 0.0},
                               {1.0 / 3.0, 0.0, 0.0},
                               {0.0, 2.0 / 3.0, 0.0}},
                              {0.25, 0.0, 0.75},
                              {0.0, 1.0 / 3.0, 2.0 / 3.0});
    if (name == "rk4")
        return ButcherTableau({{0.0, 0.0, 0.0, 0.0},
                               {0.5, 0.0, 0.0, 0.0},
                               {0.0, 0.5, 0.0, 0.0},
                               {0.0, 0.0, 1.0, 0.0}},
                              {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0},
                              {0.0, 0.5, 0.5, 1.0});
    throw std::invalid_argument("unknown tableau name: " + name);
}

}  // namespace bprk
