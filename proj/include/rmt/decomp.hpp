#pragma once

#include <cstddef>
#include <vector>

#include "rmt/matrix.hpp"

namespace rmt {

/// Gap tolerance for constructions that need distinct values (CS).
inline constexpr double tau_gap = 1e-8;

template <FieldTag F>
struct EvdResult {
    Mat<F> Q;
    std::vector<double> lambda;  // descending

    Mat<F> reconstruct() const;
};

template <FieldTag F>
struct SvdResult {
    Mat<F> U;  // m x n
    Mat<F> V;  // n x n
    std::vector<double> sigma;  // descending

    Mat<F> reconstruct() const;
};

template <FieldTag F>
struct CsResult {
    Mat<F> U1, V1;  // k x k
    Mat<F> U2, V2;  // (n-k) x (n-k)
    std::vector<double> c;  // descending
    std::vector<double> s;  // ascending

    std::size_t k() const { return c.size(); }
    std::size_t n() const { return U1.rows() + U2.rows(); }
    /// [[C, S, 0], [-S, C, 0], [0, 0, I]].
    Mat<F> middle() const;
    Mat<F> reconstruct() const;
};

/// Q Sigma Q^{T|L|S} with Sigma real diagonal.
struct TakagiResult {
    CMat Q;
    std::vector<double> sigma;

    CMat reconstruct(AdjointKind kind) const;
};

/// Z = U diag(sigma_1 J_2, ..., sigma_r J_2, 0, ..., 0) U^T.
struct YoulaResult {
    CMat U;
    std::vector<double> sigma;  // length r, descending

    std::size_t r() const { return sigma.size(); }
    CMat middle() const;
    CMat reconstruct() const;
};

/// Self-adjoint eigendecomposition X = Q diag(lambda) Q^H, lambda descending.
/// Over H the computation runs on the complex embedding; one quaternionic
/// eigenvector is extracted from each Kramers pair.
template <FieldTag F>
EvdResult<F> evd_sym(const Mat<F>& x);

/// Thin SVD Y = U diag(sigma) V^H for m >= n.
template <FieldTag F>
SvdResult<F> svd_thin(const Mat<F>& y);

/// CS decomposition of a unitary Q with leading block size k, 1 <= k <= n/2.
template <FieldTag F>
CsResult<F> cs_decompose(const Mat<F>& q, std::size_t k);

/// Autonne-Takagi Z = Q Sigma Q^T for complex symmetric Z, sigma descending.
TakagiResult takagi_sym(const CMat& z);

/// Youla normal form of a complex skew-symmetric matrix.
YoulaResult youla_skew(const CMat& z);

/// X = Q Sigma Q^L for X = X^L; Sigma signed, in construction order.
TakagiResult takagi_lagrangian(const CMat& x);

/// X = Q Sigma Q^S for X = X^S; Sigma = (sigma_1..sigma_n, sigma_1..sigma_n).
TakagiResult takagi_symplectic(const CMat& x);

/// M = H^{-1/2} for self-adjoint positive definite H.
template <FieldTag F>
Mat<F> inv_sqrt_psd(const Mat<F>& h);

/// Perfect shuffle P with diag(J_2, ..., J_2) = P J_{2n} P^T.
RMat perfect_shuffle(std::size_t n);

/// Scale each column on the right by a unit scalar so its largest-magnitude
/// entry becomes real positive. If `paired` is given, the same unit scalars
/// are applied to its columns.
template <FieldTag F>
void canonicalize_gauge(Mat<F>& q, Mat<F>* paired = nullptr);

/// Append columns from the standard basis (largest residual first) until `a`
/// has `target` orthonormal columns. Existing columns must be orthonormal.
template <FieldTag F>
Mat<F> complete_orthonormal(const Mat<F>& a, std::size_t target);

/// Modified Gram-Schmidt on the columns, in place order.
template <FieldTag F>
Mat<F> orthonormalize_columns(const Mat<F>& a);

}  // namespace rmt
