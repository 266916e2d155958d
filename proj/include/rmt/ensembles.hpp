#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "rmt/matrix.hpp"

namespace rmt {

/// Reproducible random stream identified by (seed, index). Different indices
/// under one seed give statistically independent streams.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t index);

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    std::mt19937_64& engine() { return engine_; }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t index() const { return index_; }

private:
    std::uint64_t seed_;
    std::uint64_t index_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

enum class Family { Gaussian, Laguerre, Jacobi, Ginibre, CircularGroup, CircularQuotient };

/// One of the twelve ensembles. Parameters: Gaussian, CircularGroup and
/// CircularQuotient use n; Laguerre and Ginibre use (m, n); Jacobi (l, m, n).
/// For CircularQuotient, beta = 1, 2, 4 selects COE, CLE, CSE.
struct EnsembleId {
    Family family = Family::Gaussian;
    int beta = 1;
    std::size_t l = 0, m = 0, n = 0;

    static EnsembleId gaussian(int beta, std::size_t n) { return {Family::Gaussian, beta, 0, 0, n}; }
    static EnsembleId laguerre(int beta, std::size_t m, std::size_t n) { return {Family::Laguerre, beta, 0, m, n}; }
    static EnsembleId jacobi(int beta, std::size_t l, std::size_t m, std::size_t n) {
        return {Family::Jacobi, beta, l, m, n};
    }
    static EnsembleId ginibre(int beta, std::size_t m, std::size_t n) { return {Family::Ginibre, beta, 0, m, n}; }
    static EnsembleId circular_group(int beta, std::size_t n) { return {Family::CircularGroup, beta, 0, 0, n}; }
    static EnsembleId circular_quotient(int beta, std::size_t n) { return {Family::CircularQuotient, beta, 0, 0, n}; }

    /// ParamError on invalid beta or parameters.
    void validate() const;
    /// e.g. "GOE(4)", "JUE(5,6,3)", "CLE(2)".
    std::string name() const;
};

/// Scalar with i.i.d. components of variance sigma2 / beta.
template <FieldTag F>
scalar_t<F> sample_normal_scalar(double sigma2, RngStream& rng);

template <FieldTag F>
Mat<F> sample_gaussian(std::size_t n, RngStream& rng);

template <FieldTag F>
Mat<F> sample_ginibre(std::size_t m, std::size_t n, RngStream& rng);

/// H = Y^H Y with Y ~ Ginibre(m, n). ParamError if m < n.
template <FieldTag F>
Mat<F> sample_laguerre(std::size_t m, std::size_t n, RngStream& rng);

/// H = (A + B)^{-1/2} B (A + B)^{-1/2} with A = Y^H Y, Y ~ Ginibre(m, n),
/// B = Z^H Z, Z ~ Ginibre(l, n). ParamError unless l >= n and m >= n.
template <FieldTag F>
Mat<F> sample_jacobi(std::size_t l, std::size_t m, std::size_t n, RngStream& rng);

/// Householder QR of a square matrix, A = Q R. With `positive_diagonal` the
/// unit phases of R's diagonal are moved into Q so that R has a positive
/// diagonal; without it Q is the raw product of reflections.
template <FieldTag F>
Mat<F> householder_q(const Mat<F>& a, bool positive_diagonal);

/// Haar-distributed element of O(n), U(n) or Sp(n).
template <FieldTag F>
Mat<F> sample_haar(std::size_t n, RngStream& rng);

/// Deliberately biased group sampler: Q factor of a Ginibre draw without the
/// phase correction. Used only as a negative control.
template <FieldTag F>
Mat<F> sample_haar_uncorrected(std::size_t n, RngStream& rng);

/// COE: Q Q^T, Q ~ CUE(n) (n x n). CLE: X X^L with X = chi(Q), Q ~ CQE(n)
/// (2n x 2n). CSE: Q Q^S, Q ~ CUE(2n) (2n x 2n). beta = 1, 2, 4 respectively.
CMat sample_circular_quotient(int beta, std::size_t n, RngStream& rng);

/// Draw from any ensemble; the field of the result follows beta, except that
/// circular quotient ensembles always return complex matrices.
AnyMat sample(const EnsembleId& id, RngStream& rng);

/// Log density. Families with a Lebesgue density use the real coordinates of
/// the ambient space (diagonal plus upper off-diagonal components for
/// self-adjoint matrices); circular ensembles return -log(volume).
/// SupportError if x is not in the support.
double logpdf(const EnsembleId& id, const AnyMat& x);

}  // namespace rmt
