#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rmt/decomp.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/manifolds.hpp"
#include "rmt/stats.hpp"

using namespace rmt;

namespace {

RMat diag(std::vector<double> d) { return RMat::diagonal(d); }

}  // namespace

// ---------------------------------------------------------------------------
// flag_map, grassmann_map, is_flag_point

TEST(FlagMap, DiagonalInput) {
    EXPECT_LT((flag_map(diag({3, 1}), FlagSpec{2, {1}, {1, -1}}) - diag({1, -1})).frobenius_norm(), 1e-15);
    EXPECT_LT((grassmann_map(diag({1, -1}), 1) - diag({1, -1})).frobenius_norm(), 1e-15);
}

TEST(FlagMap, PositiveScalingInvariant) {
    RngStream rng(301, 0);
    const CMat x = sample_gaussian<Complex>(4, rng);
    const auto spec = FlagSpec::complete(4);
    EXPECT_LT((flag_map(x, spec) - flag_map(CMat(x * 5.0), spec)).frobenius_norm(), 1e-12);
}

TEST(FlagMap, SpectrumOfOutput) {
    const auto spec = FlagSpec::complete(5);
    for (std::size_t i = 0; i < 20; ++i) {
        RngStream rng(302, i);
        const RMat p = flag_map(sample_gaussian<Real>(5, rng), spec);
        const auto ev = oracle::eigenvalues(p);
        for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(ev[j], spec.values[j], 1e-10);
    }
}

TEST(FlagMap, DegenerateSpectrumRejected) {
    EXPECT_THROW(flag_map(RMat::identity(3), FlagSpec::complete(3)), DegenerateSpectrum);
    EXPECT_THROW(grassmann_map(diag({2, 1, 1}), 1), DegenerateSpectrum);
}

TEST(FlagMap, Equivariance) {
    for (std::size_t i = 0; i < 10; ++i) {
        RngStream rng(303, i);
        const HMat x = sample_gaussian<Quat>(4, rng), a = sample_haar<Quat>(4, rng);
        const auto spec = FlagSpec::with_default_values(4, {1, 3});
        const HMat lhs = flag_map(HMat(a * x * a.adjoint()), spec);
        const HMat rhs = a * flag_map(x, spec) * a.adjoint();
        EXPECT_LT((lhs - rhs).frobenius_norm(), 1e-10);
    }
}

TEST(FlagMap, GaugeInvariant) {
    for (std::size_t i = 0; i < 10; ++i) {
        RngStream rng(304, i);
        const CMat x = sample_gaussian<Complex>(4, rng);
        const auto spec = FlagSpec::complete(4);
        const auto q = evd_sym(x).Q;
        const CMat qd = q * oracle::unit_diagonal<Complex>(4, rng);
        EXPECT_LT((flag_point_from_vectors(qd, spec) - flag_map(x, spec)).frobenius_norm(), 1e-12);
    }
}

TEST(IsFlagPoint, Examples) {
    const auto spec = FlagSpec::complete(3);
    const RMat d = make_delta(spec);
    EXPECT_TRUE(is_flag_point(d, spec, 1e-10));
    RMat p = d;
    p(0, 1) = p(1, 0) = 1e-3;
    EXPECT_FALSE(is_flag_point(p, spec, 1e-10));
    EXPECT_FALSE(is_flag_point(RMat(2, 3), spec, 1e-10));
}

TEST(IsFlagPoint, GrassmannAlgebraicCharacterization) {
    auto algebraic = [](const CMat& p, long k) {
        const double n = static_cast<double>(p.rows());
        return is_self_adjoint(p, 1e-10) && (p * p - CMat::identity(p.rows())).frobenius_norm() < 1e-10 &&
               std::abs(scalar_real(p.trace()) - (2.0 * k - n)) < 1e-10;
    };
    for (std::size_t i = 0; i < 20; ++i) {
        RngStream rng(305, i);
        const CMat p = grassmann_map(sample_gaussian<Complex>(5, rng), 2);
        const auto spec = FlagSpec::grassmann(5, 2);
        EXPECT_TRUE(is_flag_point(p, spec, 1e-10));
        EXPECT_EQ(is_flag_point(p, spec, 1e-10), algebraic(p, 2));
        // A reflection with the wrong trace fails both.
        const CMat q = grassmann_map(sample_gaussian<Complex>(5, rng), 3);
        EXPECT_FALSE(is_flag_point(q, spec, 1e-10));
        EXPECT_EQ(is_flag_point(q, spec, 1e-10), algebraic(q, 2));
    }
}

TEST(GrassmannMap, HalfDimensionalCase) {
    RngStream rng(306, 0);
    const RMat p = grassmann_map(sample_gaussian<Real>(2, rng), 1);
    EXPECT_LT((p * p - RMat::identity(2)).frobenius_norm(), 1e-12);
    EXPECT_NEAR(p.trace(), 0.0, 1e-12);
}

TEST(GrassmannMap, MeanOfGueDrawsVanishes) {
    const auto r = moment_check([](RngStream& s) -> AnyMat { return grassmann_map(sample_gaussian<Complex>(4, s), 2); },
                                AnyMat(CMat(4, 4)), 20000, 307);
    EXPECT_TRUE(r.pass) << r.statistic;
}

// ---------------------------------------------------------------------------
// singular_map, polar_stiefel

TEST(SingularMap, ColumnVector) {
    const RMat y(2, 1, {1.0, 0.0});
    const auto r = singular_map(y, FlagSpec::complete(1));
    EXPECT_LT((r.stiefel - y).frobenius_norm(), 1e-15);
    EXPECT_NEAR(r.flag(0, 0), FlagSpec::complete(1).values[0], 1e-15);
}

TEST(SingularMap, RightEquivariance) {
    for (std::size_t i = 0; i < 10; ++i) {
        RngStream rng(308, i);
        const CMat y = sample_ginibre<Complex>(5, 3, rng), b = sample_haar<Complex>(3, rng);
        const auto spec = FlagSpec::complete(3);
        const auto r = singular_map(y, spec);
        const auto rb = singular_map(CMat(y * b.adjoint()), spec);
        EXPECT_LT((rb.stiefel - r.stiefel * b.adjoint()).frobenius_norm(), 1e-10);
        EXPECT_LT((rb.flag - b * r.flag * b.adjoint()).frobenius_norm(), 1e-10);
    }
}

TEST(SingularMap, StiefelMembershipAndGauge) {
    for (std::size_t i = 0; i < 20; ++i) {
        RngStream rng(309, i);
        const HMat y = sample_ginibre<Quat>(5, 3, rng);
        const auto spec = FlagSpec::complete(3);
        const auto r = singular_map(y, spec);
        EXPECT_TRUE(has_orthonormal_columns(r.stiefel, 1e-10));
        EXPECT_TRUE(is_flag_point(r.flag, spec, 1e-10));
        const auto s = svd_thin(y);
        const HMat d = oracle::unit_diagonal<Quat>(3, rng);
        const HMat u = s.U * d, v = s.V * d;
        EXPECT_LT((u * v.adjoint() - r.stiefel).frobenius_norm(), 1e-12);
        EXPECT_LT((v * upcast<Quat>(make_delta(spec)) * v.adjoint() - r.flag).frobenius_norm(), 1e-12);
    }
}

TEST(PolarStiefel, Examples) {
    RngStream rng(310, 0);
    const CMat v = sample_haar<Complex>(4, rng).leading_cols(2);
    EXPECT_LT((polar_stiefel(v) - v).frobenius_norm(), 1e-12);
    const RMat y = RMat::eye(4, 2) * 3.0;
    EXPECT_LT((polar_stiefel(y) - RMat::eye(4, 2)).frobenius_norm(), 1e-14);
    for (std::size_t i = 0; i < 10; ++i) {
        const CMat g = sample_ginibre<Complex>(5, 3, rng);
        EXPECT_LT((polar_stiefel(g) - g * inv_sqrt_psd(CMat(g.adjoint() * g))).frobenius_norm(), 1e-10);
    }
    EXPECT_THROW(polar_stiefel(RMat(3, 2)), RankDeficient);
}

// ---------------------------------------------------------------------------
// cs_map

TEST(CsMap, PlaneRotation) {
    const double t = 0.4;
    const RMat q(2, 2, {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)});
    const auto spec = cs_flag_spec(2, 1);
    const auto z = cs_map(q, 1, spec);
    EXPECT_NEAR(z.fourth(0, 0), spec.values[0], 1e-14);
    EXPECT_NEAR(std::abs(z.third(0, 0)), 1.0, 1e-14);
}

TEST(CsMap, CueMemberships) {
    for (std::size_t i = 0; i < 20; ++i) {
        RngStream rng(311, i);
        const auto spec = cs_flag_spec(6, 2);
        const auto z = cs_map(sample_haar<Complex>(6, rng), 2, spec);
        EXPECT_TRUE(is_unitary(z.third, 1e-10));
        EXPECT_TRUE(is_flag_point(z.fourth, spec, 1e-10));
        EXPECT_EQ(z.first.rows(), 2u);
        EXPECT_EQ(z.second.rows(), 2u);
    }
}

TEST(CsMap, FlagSpecShape) {
    const auto s = cs_flag_spec(6, 2);
    EXPECT_EQ(s.n, 4u);
    EXPECT_EQ(s.ks, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(cs_flag_spec(4, 2).ks, (std::vector<std::size_t>{1}));
}

TEST(CsMap, GaugeInvariant) {
    for (std::size_t i = 0; i < 10; ++i) {
        RngStream rng(312, i);
        const std::size_t n = 7, k = 2, m = n - k;
        const HMat q = sample_haar<Quat>(n, rng);
        const auto spec = cs_flag_spec(n, k);
        const auto z = cs_map(q, k, spec);
        const auto c = cs_decompose(q, k);
        const HMat d = oracle::unit_diagonal<Quat>(k, rng);
        const HMat dw = block_diagonal(d, sample_haar<Quat>(m - k, rng));
        const HMat u1 = c.U1 * d, v1 = c.V1 * d, u2 = c.U2 * dw, v2 = c.V2 * dw;
        const HMat v2kk = v2.block(0, 0, k, k);
        const HMat dl = upcast<Quat>(make_delta(spec));
        EXPECT_LT((u1 * v2kk.adjoint() - z.first).frobenius_norm(), 1e-10);
        EXPECT_LT((v1 * v2kk.adjoint() - z.second).frobenius_norm(), 1e-10);
        EXPECT_LT((u2 * v2.adjoint() - z.third).frobenius_norm(), 1e-10);
        EXPECT_LT((v2 * dl * v2.adjoint() - z.fourth).frobenius_norm(), 1e-10);
    }
}

// ---------------------------------------------------------------------------
// Lagrangian Grassmannians

TEST(Lagrangian, PredicateExamples) {
    EXPECT_TRUE(is_lagrangian_point(CMat::identity(3), 1));
    EXPECT_FALSE(is_lagrangian_point(upcast<Complex>(symplectic_j(2)), 4));
    EXPECT_TRUE(is_lagrangian_point(CMat::identity(4), 2));
    EXPECT_TRUE(is_lagrangian_point(CMat::identity(4), 4));
    EXPECT_FALSE(is_lagrangian_point(CMat::identity(3), 4));
}

TEST(Lagrangian, QuotientDrawsArePoints) {
    for (std::size_t i = 0; i < 20; ++i) {
        RngStream rng(313, i);
        for (int beta : {1, 2, 4})
            for (std::size_t n : {1, 2, 3}) EXPECT_TRUE(is_lagrangian_point(sample_circular_quotient(beta, n, rng), beta, 1e-10));
    }
}

TEST(Lagrangian, TakagiVectorsReconstruct) {
    const CMat q = takagi_vectors(CMat::identity(3), 1);
    EXPECT_LT((q * q.transpose() - CMat::identity(3)).frobenius_norm(), 1e-12);
    for (std::size_t i = 0; i < 10; ++i) {
        RngStream rng(314, i);
        for (int beta : {1, 2, 4}) {
            const CMat x = sample_circular_quotient(beta, 2, rng);
            const CMat v = takagi_vectors(x, beta);
            EXPECT_LT((lagrangian_from_vectors(v, beta) - x).frobenius_norm(), 1e-10);
            EXPECT_LT(unitarity_residual(v), 1e-10);
            if (beta == 2) {
                EXPECT_TRUE(is_compact_symplectic(v, 1e-10));
            }
        }
    }
}

TEST(Lagrangian, TakagiVectorsRejectsOffManifold) {
    RngStream rng(315, 0);
    EXPECT_THROW(takagi_vectors(sample_haar<Complex>(3, rng), 1), NotOnManifold);
    EXPECT_THROW(takagi_vectors(CMat(CMat::identity(4) * 2.0), 4), NotOnManifold);
}

TEST(Lagrangian, RepresentativeGaugeInvariant) {
    for (std::size_t i = 0; i < 10; ++i) {
        RngStream rng(316, i);
        const CMat q = sample_haar<Complex>(3, rng);
        const CMat o = upcast<Complex>(sample_haar<Real>(3, rng));
        EXPECT_LT((lagrangian_from_vectors(CMat(q * o), 1) - lagrangian_from_vectors(q, 1)).frobenius_norm(), 1e-12);
        const CMat sp = embed_complex(sample_haar<Quat>(2, rng));
        const CMat u = sample_haar<Complex>(4, rng);
        EXPECT_LT((lagrangian_from_vectors(CMat(u * sp), 4) - lagrangian_from_vectors(u, 4)).frobenius_norm(), 1e-12);
    }
}

// ---------------------------------------------------------------------------
// sample_uniform

TEST(SampleUniform, FullFlagViaGaussian) {
    const auto t = Target::flag(1, FlagSpec::complete(5));
    for (std::size_t i = 0; i < 1000; ++i) {
        RngStream rng(317, i);
        EXPECT_TRUE(on_manifold(t, sample_uniform(t, Route::Gaussian, rng), 1e-10));
    }
}

TEST(SampleUniform, EveryRouteLandsOnManifold) {
    const std::vector<std::pair<Target, std::vector<Route>>> cases = {
        {Target::flag(4, FlagSpec::with_default_values(4, {1, 2})), {Route::Gaussian, Route::Ginibre, Route::Haar, Route::BiasedHaar}},
        {Target::grassmann(2, 2, 5), {Route::Gaussian, Route::Ginibre, Route::Haar, Route::BiasedHaar}},
        {Target::stiefel(1, 2, 4), {Route::Ginibre, Route::Haar, Route::BiasedHaar}},
        {Target::stiefel(4, 3, 3), {Route::Ginibre, Route::Haar}},
        {Target::lagrangian(1, 3), {Route::Circular, Route::Takagi, Route::BiasedHaar}},
        {Target::lagrangian(2, 3), {Route::Circular, Route::BiasedHaar}},
        {Target::lagrangian(4, 2), {Route::Circular, Route::BiasedHaar}},
    };
    for (const auto& [t, routes] : cases)
        for (auto r : routes)
            for (std::size_t i = 0; i < 50; ++i) {
                RngStream rng(318, i);
                EXPECT_TRUE(on_manifold(t, sample_uniform(t, r, rng), 1e-10)) << t.to_string() << " " << route_name(r);
            }
}

TEST(SampleUniform, InvalidRoutes) {
    RngStream rng(319, 0);
    EXPECT_THROW(sample_uniform(Target::stiefel(1, 2, 4), Route::Gaussian, rng), RouteError);
    EXPECT_THROW(sample_uniform(Target::lagrangian(2, 2), Route::Takagi, rng), RouteError);
    EXPECT_THROW(sample_uniform(Target::grassmann(1, 1, 3), Route::Circular, rng), RouteError);
    EXPECT_THROW(parse_route("nope"), RouteError);
    EXPECT_EQ(parse_route("biased-haar"), Route::BiasedHaar);
    EXPECT_EQ(route_name(Route::Takagi), "takagi");
}

TEST(SampleUniform, GaussianAndHaarRoutesAgree) {
    const auto t = Target::flag(1, FlagSpec::complete(4));
    RngStream w(320, 99);
    const RMat g = sample_gaussian<Real>(4, w);
    const auto f = ScalarFunctional::re_trace_against(g);
    std::vector<double> a, b;
    for (std::size_t i = 0; i < 10000; ++i) {
        RngStream r1(320, i), r2(320, 10000 + i);
        a.push_back(f(sample_uniform(t, Route::Gaussian, r1)));
        b.push_back(f(sample_uniform(t, Route::Haar, r2)));
    }
    EXPECT_TRUE(ks_two_sample(a, b).pass);
}
