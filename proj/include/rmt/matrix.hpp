#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "rmt/errors.hpp"
#include "rmt/flag_spec.hpp"
#include "rmt/quaternion.hpp"

namespace rmt {

// ---------------------------------------------------------------------------
// Field tags. beta = 1, 2, 4 for R, C, H.

struct Real {
    using scalar = double;
    static constexpr int beta = 1;
    static constexpr char symbol = 'R';
};
struct Complex {
    using scalar = std::complex<double>;
    static constexpr int beta = 2;
    static constexpr char symbol = 'C';
};
struct Quat {
    using scalar = Quaternion;
    static constexpr int beta = 4;
    static constexpr char symbol = 'H';
};

template <class F>
concept FieldTag = std::same_as<F, Real> || std::same_as<F, Complex> || std::same_as<F, Quat>;

template <FieldTag F>
using scalar_t = typename F::scalar;

// ---------------------------------------------------------------------------
// Scalar helpers, overloaded per field.

inline double scalar_conj(double x) { return x; }
inline std::complex<double> scalar_conj(std::complex<double> x) { return std::conj(x); }
inline Quaternion scalar_conj(const Quaternion& x) { return x.conj(); }

inline double scalar_abs2(double x) { return x * x; }
inline double scalar_abs2(std::complex<double> x) { return std::norm(x); }
inline double scalar_abs2(const Quaternion& x) { return x.norm2(); }

inline double scalar_real(double x) { return x; }
inline double scalar_real(std::complex<double> x) { return x.real(); }
inline double scalar_real(const Quaternion& x) { return x.a; }

/// Number of real components of a scalar of field F.
template <FieldTag F>
constexpr std::size_t real_components = static_cast<std::size_t>(F::beta);

/// Real components of a scalar, in the order (re) / (re, im) / (a, b, c, d).
inline void scalar_components(double x, double* out) { out[0] = x; }
inline void scalar_components(std::complex<double> x, double* out) {
    out[0] = x.real();
    out[1] = x.imag();
}
inline void scalar_components(const Quaternion& x, double* out) {
    out[0] = x.a; out[1] = x.b; out[2] = x.c; out[3] = x.d;
}

// ---------------------------------------------------------------------------

/// Dense row-major matrix over R, C or H. Arithmetic is only defined between
/// matrices of the same field; use `upcast` to move R -> C -> H explicitly.
template <FieldTag F>
class Mat {
public:
    using field = F;
    using Scalar = scalar_t<F>;

    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar{}) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw DimensionError("data length does not match rows*cols");
    }

    static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1.0);
        return m;
    }
    /// Rectangular identity I_{rows x cols}.
    static Mat eye(std::size_t rows, std::size_t cols) {
        Mat m(rows, cols);
        for (std::size_t i = 0; i < std::min(rows, cols); ++i) m(i, i) = Scalar(1.0);
        return m;
    }
    static Mat diagonal(std::span<const double> d) {
        Mat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = Scalar(d[i]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    Scalar& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const Scalar& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    std::span<Scalar> data() { return data_; }
    std::span<const Scalar> data() const { return data_; }

    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
        Mat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    Mat col(std::size_t j) const { return block(0, j, rows_, 1); }
    Mat leading_cols(std::size_t k) const { return block(0, 0, rows_, k); }

    /// Conjugate transpose X^H.
    Mat adjoint() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = scalar_conj((*this)(i, j));
        return t;
    }
    /// Plain transpose X^T.
    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    /// Entrywise conjugate.
    Mat conjugate() const {
        Mat t(*this);
        for (auto& x : t.data_) x = scalar_conj(x);
        return t;
    }

    Scalar trace() const {
        Scalar s{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& x : data_) s += scalar_abs2(x);
        return std::sqrt(s);
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& x : data_) m = std::max(m, std::sqrt(scalar_abs2(x)));
        return m;
    }

    /// Column j <- column j * s (right multiplication; order matters over H).
    void scale_col_right(std::size_t j, const Scalar& s) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = (*this)(i, j) * s;
    }

    Mat& operator+=(const Mat& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Mat& operator*=(double s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator-(Mat a) { return a *= -1.0; }
    friend Mat operator*(Mat a, double s) { return a *= s; }
    friend Mat operator*(double s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
        Mat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    void check_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

using RMat = Mat<Real>;
using CMat = Mat<Complex>;
using HMat = Mat<Quat>;

/// A matrix whose field is only known at run time (file input, CLI).
using AnyMat = std::variant<RMat, CMat, HMat>;

// ---------------------------------------------------------------------------
// Field conversions.

namespace detail {
inline std::complex<double> lift(double x, Complex) { return {x, 0.0}; }
inline Quaternion lift(double x, Quat) { return Quaternion(x); }
inline Quaternion lift(std::complex<double> x, Quat) { return Quaternion::from_complex(x); }
}  // namespace detail

/// Lossless inclusion R -> C, R -> H or C -> H. Identity when To == From.
template <FieldTag To, FieldTag From>
Mat<To> upcast(const Mat<From>& x) {
    static_assert(To::beta >= From::beta, "upcast only moves up the chain R -> C -> H");
    if constexpr (std::is_same_v<To, From>) {
        return x;
    } else {
        Mat<To> y(x.rows(), x.cols());
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) y(i, j) = detail::lift(x(i, j), To{});
        return y;
    }
}

/// Real part of a complex matrix; StructureError if any imaginary part exceeds tol.
RMat real_part(const CMat& x, double tol);

/// Complex adjoint representation chi: H^{m x n} -> C^{2m x 2n}.
/// Writing each entry as x = z + j w (z, w complex), chi(X) = [[Z, -conj(W)], [W, conj(Z)]].
/// chi is a *-algebra homomorphism: chi(XY) = chi(X) chi(Y), chi(X^H) = chi(X)^H.
CMat embed_complex(const HMat& x);

/// Left inverse of embed_complex. Throws StructureError if the input deviates
/// from the chi block pattern by more than tol (Frobenius).
HMat extract_quaternion(const CMat& x, double tol);

/// Quaternion z + j w from the complex pair (z, w).
inline Quaternion quaternion_from_pair(std::complex<double> z, std::complex<double> w) {
    // j w = j (w0 + w1 i) = w0 j - w1 k
    return {z.real(), z.imag(), w.real(), -w.imag()};
}
/// Inverse of quaternion_from_pair.
inline std::pair<std::complex<double>, std::complex<double>> quaternion_to_pair(const Quaternion& q) {
    return {{q.a, q.b}, {q.c, -q.d}};
}

// ---------------------------------------------------------------------------
// Special matrices.

/// J_{2n} = [[0, -I_n], [I_n, 0]].
RMat symplectic_j(std::size_t n);
/// I_{m,n} = diag(I_m, -I_n).
RMat signature_matrix(std::size_t m, std::size_t n);
/// Delta_a for a validated flag spec (throws SpecError otherwise).
RMat make_delta(const FlagSpec& spec);

// ---------------------------------------------------------------------------
// Adjoints.

enum class AdjointKind { T, H, S, L };

/// X^T, X^H, X^S = -J X^T J, X^L = I_{n,n} X^H I_{n,n}. The S and L kinds need
/// a square matrix of even dimension (DimensionError otherwise) and are not
/// available over H.
template <FieldTag F>
Mat<F> adjoint(const Mat<F>& x, AdjointKind kind);

// ---------------------------------------------------------------------------
// Tolerances and membership predicates.

/// Default membership tolerance 1e-10 * max(1, ||X||_F).
template <FieldTag F>
double tau_mem(const Mat<F>& x) {
    return 1e-10 * std::max(1.0, x.frobenius_norm());
}

/// ||X^H X - I||_F.
template <FieldTag F>
double unitarity_residual(const Mat<F>& x) {
    return (x.adjoint() * x - Mat<F>::identity(x.cols())).frobenius_norm();
}

/// ||X - adjoint(X, kind)||_F.
template <FieldTag F>
double adjoint_residual(const Mat<F>& x, AdjointKind kind) {
    return (x - adjoint(x, kind)).frobenius_norm();
}

/// ||X^T J X - J||_F for a 2n x 2n complex (or real) matrix.
template <FieldTag F>
double symplectic_form_residual(const Mat<F>& x);

template <FieldTag F>
bool is_self_adjoint(const Mat<F>& x, double tol) {
    return x.is_square() && adjoint_residual(x, AdjointKind::H) <= tol;
}
template <FieldTag F>
bool is_self_adjoint(const Mat<F>& x) { return is_self_adjoint(x, tau_mem(x)); }

/// X = X^T (complex symmetric; coincides with self-adjoint over R).
template <FieldTag F>
bool is_symmetric(const Mat<F>& x, double tol) {
    return x.is_square() && adjoint_residual(x, AdjointKind::T) <= tol;
}
template <FieldTag F>
bool is_symmetric(const Mat<F>& x) { return is_symmetric(x, tau_mem(x)); }

template <FieldTag F>
bool is_skew_symmetric(const Mat<F>& x, double tol) {
    return x.is_square() && (x + x.transpose()).frobenius_norm() <= tol;
}

/// X = X^L, membership in V^2(C^{2n}).
bool is_lagrangian_symmetric(const CMat& x, double tol);
inline bool is_lagrangian_symmetric(const CMat& x) { return is_lagrangian_symmetric(x, tau_mem(x)); }

/// X = X^S, membership in Y^2(C^{2n}).
bool is_symplectic_symmetric(const CMat& x, double tol);
inline bool is_symplectic_symmetric(const CMat& x) { return is_symplectic_symmetric(x, tau_mem(x)); }

/// Orthonormal columns: X^H X = I (square case: O(n) / U(n) / Sp(n)).
template <FieldTag F>
bool has_orthonormal_columns(const Mat<F>& x, double tol) {
    return x.rows() >= x.cols() && unitarity_residual(x) <= tol;
}
template <FieldTag F>
bool has_orthonormal_columns(const Mat<F>& x) { return has_orthonormal_columns(x, tau_mem(x)); }

template <FieldTag F>
bool is_unitary(const Mat<F>& x, double tol) {
    return x.is_square() && unitarity_residual(x) <= tol;
}
template <FieldTag F>
bool is_unitary(const Mat<F>& x) { return is_unitary(x, tau_mem(x)); }

/// Compact symplectic group embedded in C^{2n x 2n}: unitary and X^T J X = J.
bool is_compact_symplectic(const CMat& x, double tol);
inline bool is_compact_symplectic(const CMat& x) { return is_compact_symplectic(x, tau_mem(x)); }

/// Complex vector v -> J conj(v) on C^{2n}; the antilinear map commuting with
/// every chi(X).
CMat omega(const CMat& v);

// ---------------------------------------------------------------------------
// Small generic helpers.

/// Diagonal matrix of field F from real values.
template <FieldTag F>
Mat<F> real_diagonal(std::span<const double> d) {
    return Mat<F>::diagonal(d);
}

/// Block-diagonal diag(A, B).
template <FieldTag F>
Mat<F> block_diagonal(const Mat<F>& a, const Mat<F>& b) {
    Mat<F> m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

/// Columns placed side by side.
template <FieldTag F>
Mat<F> hstack(const Mat<F>& a, const Mat<F>& b) {
    if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
    Mat<F> m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

/// Re tr(A B) without forming the product.
template <FieldTag F>
double re_trace_product(const Mat<F>& a, const Mat<F>& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionError("re_trace_product: shapes");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s += scalar_real(a(i, k) * b(k, i));
    return s;
}

/// Flattened real components of all entries (row-major), used as a Euclidean
/// feature vector whose norm is the Frobenius norm.
template <FieldTag F>
std::vector<double> real_features(const Mat<F>& x) {
    constexpr std::size_t w = real_components<F>;
    std::vector<double> out(x.rows() * x.cols() * w);
    std::size_t p = 0;
    for (const auto& s : x.data()) {
        scalar_components(s, out.data() + p);
        p += w;
    }
    return out;
}

}  // namespace rmt
