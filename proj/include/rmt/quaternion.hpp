#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

namespace rmt {

/// Real quaternion a + b i + c j + d k.
struct Quaternion {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a_) : a(a_) {}  // NOLINT: real scalars embed implicitly
    constexpr Quaternion(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    /// Inclusion C -> H: x + y i.
    static constexpr Quaternion from_complex(std::complex<double> z) { return {z.real(), z.imag(), 0.0, 0.0}; }

    constexpr Quaternion conj() const { return {a, -b, -c, -d}; }
    constexpr double norm2() const { return a * a + b * b + c * c + d * d; }
    double abs() const { return std::sqrt(norm2()); }

    /// Multiplicative inverse; undefined for zero.
    constexpr Quaternion inverse() const {
        const double n = norm2();
        return {a / n, -b / n, -c / n, -d / n};
    }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        a += o.a; b += o.b; c += o.c; d += o.d;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        a -= o.a; b -= o.b; c -= o.c; d -= o.d;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        a *= s; b *= s; c *= s; d *= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion x, const Quaternion& y) { return x += y; }
constexpr Quaternion operator-(Quaternion x, const Quaternion& y) { return x -= y; }
constexpr Quaternion operator-(const Quaternion& x) { return {-x.a, -x.b, -x.c, -x.d}; }
constexpr Quaternion operator*(Quaternion x, double s) { return x *= s; }
constexpr Quaternion operator*(double s, Quaternion x) { return x *= s; }
constexpr Quaternion operator/(Quaternion x, double s) { return x *= (1.0 / s); }

/// Hamilton product (non-commutative).
constexpr Quaternion operator*(const Quaternion& x, const Quaternion& y) {
    return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
            x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
            x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
}

/// Same as operator*; spelled out for call sites that read better as a function.
constexpr Quaternion quat_mul(const Quaternion& x, const Quaternion& y) { return x * y; }

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace rmt
