#include <gtest/gtest.h>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rmt/decomp.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/stats.hpp"
#include "rmt/volumes.hpp"

using namespace rmt;

namespace {

const double kLogPi = std::log(std::numbers::pi);

double normal_logpdf(double x, double var) { return -0.5 * std::log(2.0 * std::numbers::pi * var) - x * x / (2 * var); }

/// Gaussian ensemble log density as a product of independent real coordinates:
/// diagonal N(0,1), off-diagonal components N(0, 1/2).
template <FieldTag F>
double gaussian_coordinate_logpdf(const Mat<F>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        s += normal_logpdf(scalar_real(x(i, i)), 1.0);
        for (std::size_t j = i + 1; j < x.cols(); ++j) {
            double c[4] = {0, 0, 0, 0};
            scalar_components(x(i, j), c);
            for (std::size_t p = 0; p < real_components<F>; ++p) s += normal_logpdf(c[p], 0.5);
        }
    }
    return s;
}

template <FieldTag F>
double mean_abs2(std::size_t n, double sigma2, std::uint64_t seed) {
    RngStream rng(seed, 0);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += scalar_abs2(sample_normal_scalar<F>(sigma2, rng));
    return s / static_cast<double>(n);
}

}  // namespace

TEST(RngStreamTest, Reproducible) {
    RngStream a(5, 3), b(5, 3), c(5, 4), d(6, 3);
    const auto x = sample_ginibre<Real>(3, 3, a);
    EXPECT_EQ(x, sample_ginibre<Real>(3, 3, b));
    EXPECT_NE(x, sample_ginibre<Real>(3, 3, c));
    EXPECT_NE(x, sample_ginibre<Real>(3, 3, d));
}

TEST(NormalScalar, ComponentVariances) {
    EXPECT_NEAR(mean_abs2<Real>(100000, 1.0, 1), 1.0, 0.02);
    EXPECT_NEAR(mean_abs2<Complex>(100000, 1.0, 2), 1.0, 0.02);
    EXPECT_NEAR(mean_abs2<Quat>(100000, 2.0, 3), 2.0, 0.04);

    RngStream rng(4, 0);
    double s = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) s += std::pow(sample_normal_scalar<Quat>(2.0, rng).c, 2);
    EXPECT_NEAR(s / n, 0.5, 0.01);
}

TEST(Gaussian, OneByOneIsStandardNormal) {
    std::vector<double> v;
    for (std::size_t i = 0; i < 10000; ++i) {
        RngStream rng(201, i);
        v.push_back(sample_gaussian<Real>(1, rng)(0, 0));
    }
    EXPECT_TRUE(ks_one_sample(v, oracle::normal_cdf).pass);
}

TEST(Gaussian, OffDiagonalVariance) {
    double s = 0.0;
    const int n = 100000;
    RngStream rng(202, 0);
    for (int i = 0; i < n; ++i) {
        const RMat x = sample_gaussian<Real>(2, rng);
        s += x(0, 1) * x(0, 1);
    }
    EXPECT_NEAR(s / n, 0.5, 0.02);
}

TEST(Gaussian, QuaternionSelfDualStructure) {
    RngStream rng(203, 0);
    const HMat x = sample_gaussian<Quat>(2, rng);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(x(i, i).b, 0.0);
        EXPECT_EQ(x(i, i).c, 0.0);
        EXPECT_EQ(x(i, i).d, 0.0);
    }
    EXPECT_EQ(x(0, 1), x(1, 0).conj());
}

TEST(Ginibre, EntryMoments) {
    RngStream rng(204, 0);
    const int n = 20000;
    double r = 0.0, c = 0.0, tr = 0.0;
    for (int i = 0; i < n; ++i) {
        r += std::pow(sample_ginibre<Real>(1, 1, rng)(0, 0), 2);
        c += std::norm(sample_ginibre<Complex>(1, 1, rng)(0, 0));
        const HMat y = sample_ginibre<Quat>(3, 2, rng);
        tr += std::pow(y.frobenius_norm(), 2);
    }
    EXPECT_NEAR(r / n, 1.0, 0.05);
    EXPECT_NEAR(c / n, 1.0, 0.05);
    EXPECT_NEAR(tr / n, 6.0, 0.1);
}

TEST(Laguerre, ChiSquaredAndPositivity) {
    const boost::math::chi_squared chi(5.0);
    std::vector<double> v;
    double tr = 0.0;
    for (std::size_t i = 0; i < 10000; ++i) {
        RngStream rng(205, i);
        v.push_back(sample_laguerre<Real>(5, 1, rng)(0, 0));
        const CMat h = sample_laguerre<Complex>(6, 3, rng);
        tr += scalar_real(h.trace());
        if (i < 100) {
            EXPECT_GE(oracle::eigenvalues(h).back(), -1e-12);
        }
    }
    EXPECT_TRUE(ks_one_sample(v, [&](double x) { return x <= 0 ? 0.0 : boost::math::cdf(chi, x); }).pass);
    EXPECT_NEAR(tr / 10000.0, 18.0, 0.3);
    RngStream rng(205, 0);
    EXPECT_THROW(sample(EnsembleId::laguerre(1, 2, 3), rng), ParamError);
}

TEST(Jacobi, BetaMarginalAndSpectrum) {
    const boost::math::beta_distribution<> be(1.5, 2.0);
    std::vector<double> v;
    for (std::size_t i = 0; i < 10000; ++i) {
        RngStream rng(206, i);
        v.push_back(sample_jacobi<Real>(3, 4, 1, rng)(0, 0));
        if (i < 100) {
            const auto ev = oracle::eigenvalues(sample_jacobi<Quat>(4, 5, 3, rng));
            EXPECT_GE(ev.back(), -1e-12);
            EXPECT_LE(ev.front(), 1.0 + 1e-12);
        }
    }
    EXPECT_TRUE(ks_one_sample(v, [&](double x) { return boost::math::cdf(be, std::clamp(x, 0.0, 1.0)); }).pass);
    RngStream rng(206, 0);
    EXPECT_THROW(sample(EnsembleId::jacobi(1, 2, 4, 3), rng), ParamError);
}

TEST(Jacobi, SwappingRolesReflects) {
    std::vector<double> a, b;
    for (std::size_t i = 0; i < 5000; ++i) {
        RngStream r1(207, i), r2(207, 5000 + i);
        a.push_back(scalar_real(sample_jacobi<Complex>(4, 6, 3, r1).trace()));
        b.push_back(3.0 - scalar_real(sample_jacobi<Complex>(6, 4, 3, r2).trace()));
    }
    EXPECT_TRUE(ks_two_sample(a, b).pass);
}

TEST(Haar, OrthogonalOneIsSign) {
    int plus = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        RngStream rng(208, i);
        const double q = sample_haar<Real>(1, rng)(0, 0);
        EXPECT_NEAR(std::abs(q), 1.0, 1e-15);
        plus += q > 0;
    }
    EXPECT_NEAR(plus / static_cast<double>(n), 0.5, 0.03);
}

TEST(Haar, UnitaryOnePhase) {
    std::vector<double> v;
    for (std::size_t i = 0; i < 10000; ++i) {
        RngStream rng(209, i);
        v.push_back(std::arg(sample_haar<Complex>(1, rng)(0, 0)));
    }
    EXPECT_TRUE(ks_one_sample(v, [](double t) { return (t + std::numbers::pi) / (2 * std::numbers::pi); }).pass);
}

TEST(Haar, SquaredEntryMoment) {
    const int n = 20000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        RngStream rng(210, i);
        s += std::pow(sample_haar<Real>(3, rng)(0, 0), 2);
    }
    // sd of q11^2 for a uniform unit vector in R^3 is sqrt(4/45).
    EXPECT_NEAR(s / n, 1.0 / 3.0, 3.0 * std::sqrt(4.0 / 45.0 / n));
}

TEST(Haar, GroupMembership) {
    for (std::size_t i = 0; i < 20; ++i) {
        RngStream rng(211, i);
        EXPECT_LT(unitarity_residual(sample_haar<Real>(6, rng)), 1e-12);
        EXPECT_LT(unitarity_residual(sample_haar<Complex>(6, rng)), 1e-12);
        const HMat q = sample_haar<Quat>(4, rng);
        EXPECT_LT(unitarity_residual(q), 1e-12);
        EXPECT_TRUE(is_compact_symplectic(embed_complex(q)));
        EXPECT_LT(unitarity_residual(sample_haar_uncorrected<Quat>(4, rng)), 1e-12);
    }
}

TEST(CircularQuotient, Membership) {
    std::vector<double> phases;
    for (std::size_t i = 0; i < 10000; ++i) {
        RngStream rng(212, i);
        const CMat coe = sample_circular_quotient(1, 1, rng);
        phases.push_back(std::arg(coe(0, 0)));
        if (i < 50) {
            const CMat cle = sample_circular_quotient(2, 1, rng);
            EXPECT_LT(unitarity_residual(cle), 1e-12);
            EXPECT_LT(adjoint_residual(cle, AdjointKind::L), 1e-12);
            EXPECT_LT(symplectic_form_residual(cle), 1e-12);
            const CMat cse = sample_circular_quotient(4, 1, rng);
            EXPECT_LT(unitarity_residual(cse), 1e-12);
            EXPECT_LT(adjoint_residual(cse, AdjointKind::S), 1e-12);
            for (int beta : {1, 2, 4}) {
                const CMat x = sample_circular_quotient(beta, 3, rng);
                EXPECT_TRUE(is_unitary(x, 1e-10));
            }
        }
    }
    EXPECT_TRUE(ks_one_sample(phases, [](double t) { return (t + std::numbers::pi) / (2 * std::numbers::pi); }).pass);
}

TEST(EnsembleIdTest, NamesAndValidation) {
    EXPECT_EQ(EnsembleId::gaussian(4, 3).name(), "GSE(3)");
    EXPECT_EQ(EnsembleId::circular_quotient(2, 3).name(), "CLE(3)");
    EXPECT_EQ(EnsembleId::circular_group(4, 3).name(), "CQE(3)");
    EXPECT_THROW(EnsembleId::gaussian(3, 2).validate(), ParamError);
    EXPECT_THROW(EnsembleId::gaussian(1, 0).validate(), ParamError);
    EXPECT_THROW(EnsembleId::jacobi(2, 3, 2, 3).validate(), ParamError);
}

TEST(Sample, FieldFollowsBeta) {
    RngStream rng(213, 0);
    EXPECT_TRUE(std::holds_alternative<HMat>(sample(EnsembleId::ginibre(4, 3, 2), rng)));
    EXPECT_TRUE(std::holds_alternative<CMat>(sample(EnsembleId::circular_quotient(4, 2), rng)));
    EXPECT_TRUE(std::holds_alternative<RMat>(sample(EnsembleId::laguerre(1, 3, 2), rng)));
}

// ---------------------------------------------------------------------------
// Densities

TEST(LogPdf, GoeAtZero) {
    for (std::size_t n : {1, 2, 5}) {
        const double d = static_cast<double>(n);
        EXPECT_NEAR(logpdf(EnsembleId::gaussian(1, n), RMat(n, n)), -d / 2 * std::log(2.0) - d * (d + 1) / 4 * kLogPi,
                    1e-12);
    }
}

TEST(LogPdf, GaussianExponentPerField) {
    // The uniform exponent beta n (n - 1 + 2/beta) / 4 against the per-field forms.
    for (std::size_t n = 1; n <= 10; ++n) {
        const double d = static_cast<double>(n);
        const double per_field[3] = {d * (d + 1) / 4, d * d / 2, d * (d - 0.5)};
        const int betas[3] = {1, 2, 4};
        for (int i = 0; i < 3; ++i) {
            const double b = betas[i];
            EXPECT_NEAR(b * d * (d - 1 + 2 / b) / 4, per_field[i], 1e-12);
            const AnyMat zero = betas[i] == 1 ? AnyMat(RMat(n, n)) : betas[i] == 2 ? AnyMat(CMat(n, n)) : AnyMat(HMat(n, n));
            EXPECT_NEAR(logpdf(EnsembleId::gaussian(betas[i], n), zero), -d / 2 * std::log(2.0) - per_field[i] * kLogPi,
                        1e-12);
        }
    }
}

TEST(LogPdf, GaussianMatchesCoordinateProduct) {
    RngStream rng(214, 0);
    for (std::size_t n : {1, 3, 4}) {
        const RMat r = sample_gaussian<Real>(n, rng);
        const CMat c = sample_gaussian<Complex>(n, rng);
        const HMat h = sample_gaussian<Quat>(n, rng);
        EXPECT_NEAR(logpdf(EnsembleId::gaussian(1, n), r), gaussian_coordinate_logpdf(r), 1e-10);
        EXPECT_NEAR(logpdf(EnsembleId::gaussian(2, n), c), gaussian_coordinate_logpdf(c), 1e-10);
        EXPECT_NEAR(logpdf(EnsembleId::gaussian(4, n), h), gaussian_coordinate_logpdf(h), 1e-10);
    }
}

TEST(LogPdf, GinibreMatchesCoordinateProduct) {
    RngStream rng(215, 0);
    const HMat y = sample_ginibre<Quat>(3, 2, rng);
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (double c : {y(i, j).a, y(i, j).b, y(i, j).c, y(i, j).d}) s += normal_logpdf(c, 0.25);
    EXPECT_NEAR(logpdf(EnsembleId::ginibre(4, 3, 2), y), s, 1e-10);
}

TEST(LogPdf, LaguerreAndJacobiOneByOne) {
    const RMat one = RMat::identity(1);
    for (std::size_t m : {1, 3, 6}) {
        EXPECT_NEAR(logpdf(EnsembleId::laguerre(2, m, 1), CMat::identity(1)), -1.0 - std::lgamma(double(m)), 1e-12);
        const RMat x(1, 1, {2.5});
        EXPECT_NEAR(logpdf(EnsembleId::laguerre(1, m, 1), x),
                    std::log(boost::math::pdf(boost::math::chi_squared(double(m)), 2.5)), 1e-12);
    }
    const RMat x(1, 1, {0.3});
    EXPECT_NEAR(logpdf(EnsembleId::jacobi(1, 6, 4, 1), x),
                std::log(boost::math::pdf(boost::math::beta_distribution<>(3.0, 2.0), 0.3)), 1e-12);
    EXPECT_THROW(logpdf(EnsembleId::laguerre(1, 3, 1), RMat(1, 1, {-1.0})), SupportError);
    EXPECT_THROW(logpdf(EnsembleId::jacobi(1, 3, 3, 1), one), SupportError);
}

TEST(LogPdf, CircularIsConstant) {
    RngStream rng(216, 0);
    for (std::size_t n : {1, 2, 4}) {
        const double c = -log_volume(VolumeQuery::group(2, n));
        EXPECT_NEAR(logpdf(EnsembleId::circular_group(2, n), sample_haar<Complex>(n, rng)), c, 1e-12);
        EXPECT_NEAR(logpdf(EnsembleId::circular_group(2, n), CMat::identity(n)), c, 1e-12);
        for (int beta : {1, 2, 4})
            EXPECT_NEAR(logpdf(EnsembleId::circular_quotient(beta, n), sample_circular_quotient(beta, n, rng)),
                        -log_volume(VolumeQuery::lagrangian(beta, n)), 1e-12);
    }
    EXPECT_THROW(logpdf(EnsembleId::circular_group(2, 2), CMat(CMat::identity(2) * 2.0)), SupportError);
    EXPECT_THROW(logpdf(EnsembleId::circular_quotient(4, 2), CMat::identity(3)), SupportError);
}

TEST(LogPdf, SupportChecks) {
    RngStream rng(217, 0);
    EXPECT_THROW(logpdf(EnsembleId::gaussian(1, 3), sample_ginibre<Real>(3, 3, rng)), SupportError);
    EXPECT_THROW(logpdf(EnsembleId::gaussian(2, 3), sample_gaussian<Real>(3, rng)), SupportError);
    EXPECT_THROW(logpdf(EnsembleId::ginibre(1, 3, 2), RMat(2, 3)), SupportError);
}

TEST(LogPdf, InvariantUnderGroupAction) {
    RngStream rng(218, 0);
    for (int t = 0; t < 5; ++t) {
        const HMat a = sample_haar<Quat>(3, rng), b = sample_haar<Quat>(2, rng);
        const HMat x = sample_gaussian<Quat>(3, rng);
        EXPECT_NEAR(logpdf(EnsembleId::gaussian(4, 3), x), logpdf(EnsembleId::gaussian(4, 3), HMat(a * x * a.adjoint())),
                    1e-10);
        const CMat ac = sample_haar<Complex>(3, rng);
        const CMat l = sample_laguerre<Complex>(5, 3, rng);
        EXPECT_NEAR(logpdf(EnsembleId::laguerre(2, 5, 3), l),
                    logpdf(EnsembleId::laguerre(2, 5, 3), CMat(ac * l * ac.adjoint())), 1e-9);
        const RMat ar = sample_haar<Real>(3, rng);
        const RMat j = sample_jacobi<Real>(4, 5, 3, rng);
        const RMat jr = ar * j * ar.transpose();
        EXPECT_NEAR(logpdf(EnsembleId::jacobi(1, 4, 5, 3), j),
                    logpdf(EnsembleId::jacobi(1, 4, 5, 3), RMat((jr + jr.transpose()) * 0.5)), 1e-9);
        const HMat y = sample_ginibre<Quat>(3, 2, rng);
        EXPECT_NEAR(logpdf(EnsembleId::ginibre(4, 3, 2), y),
                    logpdf(EnsembleId::ginibre(4, 3, 2), HMat(a * y * b.adjoint())), 1e-10);
    }
}
