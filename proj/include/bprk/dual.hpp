#pragma once
// Forward-mode scalar carrying one directional derivative alongside the value.
// Constraint mappings are templated on the scalar type, so evaluating them on
// Dual yields exact Jacobian-vector products (chain rule, no differencing).

#include <cmath>

namespace bprk {

struct Dual {
    double v = 0.0;  // value
    double d = 0.0;  // directional derivative

    Dual() = default;
    Dual(double value) : v(value) {}
    Dual(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) {
    const double inv = 1.0 / b.v;
    const double q = a.v * inv;
    return {q, (a.d - q * b.d) * inv};
}
inline Dual& operator+=(Dual& a, Dual b) { a = a + b; return a; }
inline Dual& operator-=(Dual& a, Dual b) { a = a - b; return a; }
inline Dual& operator*=(Dual& a, Dual b) { a = a * b; return a; }
inline Dual& operator/=(Dual& a, Dual b) { a = a / b; return a; }

inline bool operator<(Dual a, Dual b) { return a.v < b.v; }
inline bool operator>(Dual a, Dual b) { return a.v > b.v; }
inline bool operator<=(Dual a, Dual b) { return a.v <= b.v; }
inline bool operator>=(Dual a, Dual b) { return a.v >= b.v; }

using std::exp; using std::log; using std::sqrt; using std::tanh;
using std::sinh; using std::cosh; using std::asinh; using std::pow;

inline Dual exp(Dual a)  { const double e = std::exp(a.v); return {e, e * a.d}; }
inline Dual log(Dual a)  { return {std::log(a.v), a.d / a.v}; }
inline Dual sqrt(Dual a) { const double s = std::sqrt(a.v); return {s, 0.5 * a.d / s}; }
inline Dual tanh(Dual a) { const double t = std::tanh(a.v); return {t, (1.0 - t * t) * a.d}; }
inline Dual sinh(Dual a) { return {std::sinh(a.v), std::cosh(a.v) * a.d}; }
inline Dual cosh(Dual a) { return {std::cosh(a.v), std::sinh(a.v) * a.d}; }
inline Dual asinh(Dual a) { return {std::asinh(a.v), a.d / std::sqrt(1.0 + a.v * a.v)}; }
inline Dual pow(Dual a, double p) {
    const double f = std::pow(a.v, p);
    return {f, p * f / a.v * a.d};
}

inline double value(double x) { return x; }
inline double value(Dual x) { return x.v; }

}  // namespace bprk
