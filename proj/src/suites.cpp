#include "rmt/suites.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>

#include "rmt/decomp.hpp"
#include "rmt/manifolds.hpp"

namespace rmt {

std::uint64_t derive_seed(std::uint64_t seed, const std::string& name) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return seed ^ h;
}

bool suite_passed(const std::vector<TestReport>& reports) {
    for (const auto& r : reports)
        if (!r.as_expected()) return false;
    return true;
}

namespace {

const char* field_name(int beta) { return beta == 1 ? "R" : beta == 2 ? "C" : "H"; }

/// Witness matrices (fixed group elements, test functionals) come from their
/// own streams so they never overlap with sample streams.
RngStream witness_stream(std::uint64_t seed, std::uint64_t k) { return RngStream(seed ^ 0x7769746e65737321ull, k); }

TestReport negative(TestReport r) {
    r.expect_pass = false;
    return r;
}

/// Diagonal shift that breaks unitary invariance of a Gaussian draw.
template <FieldTag F>
Mat<F> anisotropic_shift(std::size_t n) {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = 2.0 * (static_cast<double>(n) / 2.0 - static_cast<double>(i));
    return Mat<F>::diagonal(d);
}

/// diag(2, 1, 1/2, ...) used to tilt Ginibre draws.
template <FieldTag F>
Mat<F> tilt(std::size_t n) {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = std::pow(2.0, 1.0 - static_cast<double>(i));
    return Mat<F>::diagonal(d);
}

// ---------------------------------------------------------------------------
// invariance

template <FieldTag F>
void flag_invariance(std::vector<TestReport>& out, const std::string& name, const Sampler& good, const Sampler& bad,
                     std::size_t n, std::uint64_t seed, std::size_t count) {
    const std::uint64_t s = derive_seed(seed, name);
    RngStream w = witness_stream(s, 0);
    const Mat<F> a = sample_haar<F>(n, w);
    const auto f = ScalarFunctional::re_trace_against(sample_gaussian<F>(n, w));
    const GroupAction act = [a](const AnyMat& p) -> AnyMat { return Mat<F>(a * std::get<Mat<F>>(p) * a.adjoint()); };
    out.push_back(invariance_check(good, act, f, count, s, name));
    out.push_back(negative(invariance_check(bad, act, f, count, s, name + " [negative control: anisotropic input]")));
}

template <FieldTag F>
void gaussian_flag_tests(std::vector<TestReport>& out, std::uint64_t seed, std::size_t count) {
    const std::string fs = field_name(F::beta);
    {
        const std::size_t n = 4;
        const auto spec = FlagSpec::complete(n);
        const Sampler good = [=](RngStream& r) -> AnyMat { return flag_map(sample_gaussian<F>(n, r), spec); };
        const Sampler bad = [=](RngStream& r) -> AnyMat {
            return flag_map(Mat<F>(sample_gaussian<F>(n, r) + anisotropic_shift<F>(n)), spec);
        };
        flag_invariance<F>(out, "full flag over " + fs + "^4 via Gaussian", good, bad, n, seed, count);
    }
    {
        const std::size_t n = 4, k = 2;
        const Sampler good = [=](RngStream& r) -> AnyMat { return grassmann_map(sample_gaussian<F>(n, r), k); };
        const Sampler bad = [=](RngStream& r) -> AnyMat {
            return grassmann_map(Mat<F>(sample_gaussian<F>(n, r) + anisotropic_shift<F>(n)), k);
        };
        flag_invariance<F>(out, "Gr(2, " + fs + "^4) via Gaussian", good, bad, n, seed, count);
    }
    {
        const std::size_t n = 3, m = 5, l = 4;
        const auto spec = FlagSpec::complete(n);
        const Sampler good = [=](RngStream& r) -> AnyMat { return flag_map(sample_laguerre<F>(m, n, r), spec); };
        const Sampler bad = [=](RngStream& r) -> AnyMat {
            const Mat<F> y = sample_ginibre<F>(m, n, r) * tilt<F>(n);
            return flag_map(Mat<F>(y.adjoint() * y), spec);
        };
        flag_invariance<F>(out, "full flag over " + fs + "^3 via Laguerre(5,3)", good, bad, n, seed, count);

        const Sampler jgood = [=](RngStream& r) -> AnyMat { return flag_map(sample_jacobi<F>(l, m, n, r), spec); };
        const Sampler jbad = [=](RngStream& r) -> AnyMat {
            const Mat<F> y = sample_ginibre<F>(m, n, r);
            const Mat<F> z = sample_ginibre<F>(l, n, r) * tilt<F>(n);
            const Mat<F> a = y.adjoint() * y, b = z.adjoint() * z;
            const Mat<F> wm = inv_sqrt_psd(Mat<F>((a + b + (a + b).adjoint()) * 0.5));
            return flag_map(Mat<F>(wm * b * wm), spec);
        };
        flag_invariance<F>(out, "full flag over " + fs + "^3 via Jacobi(4,5,3)", jgood, jbad, n, seed, count);
    }
}

template <FieldTag F>
void singular_tests(std::vector<TestReport>& out, std::uint64_t seed, std::size_t count) {
    const std::size_t m = 5, n = 3;
    const std::string name = std::string("Stiefel x flag over ") + field_name(F::beta) + " via Ginibre(5,3) xi";
    const std::uint64_t s = derive_seed(seed, name);
    const auto spec = FlagSpec::complete(n);
    auto pack = [](const SingularMapResult<F>& x) -> AnyMat { return block_diagonal(x.stiefel, x.flag); };
    const Sampler good = [=](RngStream& r) { return pack(singular_map(sample_ginibre<F>(m, n, r), spec)); };
    const Sampler bad = [=](RngStream& r) {
        return pack(singular_map(Mat<F>(sample_ginibre<F>(m, n, r) * tilt<F>(n)), spec));
    };
    RngStream w = witness_stream(s, 0);
    const Mat<F> a = sample_haar<F>(m, w);
    const Mat<F> b = sample_haar<F>(n, w);
    const Mat<F> left = block_diagonal(a, b), right = block_diagonal(b, b);
    const auto f = ScalarFunctional::re_trace_against(sample_ginibre<F>(2 * n, m + n, w));
    const GroupAction act = [=](const AnyMat& p) -> AnyMat {
        return Mat<F>(left * std::get<Mat<F>>(p) * right.adjoint());
    };
    out.push_back(invariance_check(good, act, f, count, s, name));
    out.push_back(negative(invariance_check(bad, act, f, count, s, name + " [negative control: anisotropic input]")));
}

template <FieldTag F>
void stiefel_tests(std::vector<TestReport>& out, std::uint64_t seed, std::size_t count) {
    const std::size_t n = 4, k = 2;
    const std::string name = std::string("V(2, ") + field_name(F::beta) + "^4) via Ginibre polar";
    const std::uint64_t s = derive_seed(seed, name);
    const auto target = Target::stiefel(F::beta, k, n);
    const Sampler good = [=](RngStream& r) { return sample_uniform(target, Route::Ginibre, r); };
    const Sampler bad = [=](RngStream& r) { return sample_uniform(target, Route::BiasedHaar, r); };
    RngStream w = witness_stream(s, 0);
    const Mat<F> a = sample_haar<F>(n, w);
    const Mat<F> b = sample_haar<F>(k, w);
    const auto f = ScalarFunctional::re_trace_against(sample_ginibre<F>(k, n, w));
    const GroupAction act = [=](const AnyMat& p) -> AnyMat { return Mat<F>(a * std::get<Mat<F>>(p) * b.adjoint()); };
    out.push_back(invariance_check(good, act, f, count, s, name));
    out.push_back(negative(invariance_check(bad, act, f, count, s, name + " [negative control: uncorrected QR]")));
}

template <FieldTag F>
void cs_tests(std::vector<TestReport>& out, std::uint64_t seed, std::size_t count) {
    const std::size_t n = 6, k = 2, m = n - k;
    const std::string name = std::string("zeta components 3-4 over ") + field_name(F::beta) + " (n=6, k=2)";
    const std::uint64_t s = derive_seed(seed, name);
    const auto spec = cs_flag_spec(n, k);
    auto pack = [spec](const Mat<F>& q) -> AnyMat {
        const auto z = cs_map(q, 2, spec);
        return block_diagonal(z.third, z.fourth);
    };
    const Sampler good = [=](RngStream& r) { return pack(sample_haar<F>(n, r)); };
    const Sampler bad = [=](RngStream& r) { return pack(sample_haar_uncorrected<F>(n, r)); };
    RngStream w = witness_stream(s, 0);
    const Mat<F> a = sample_haar<F>(m, w);
    const Mat<F> b = sample_haar<F>(m, w);
    const Mat<F> c = sample_haar<F>(m, w);
    const Mat<F> left = block_diagonal(a, c), right = block_diagonal(b, c);
    const auto f = ScalarFunctional::re_trace_against(sample_ginibre<F>(2 * m, 2 * m, w));
    const GroupAction act = [=](const AnyMat& p) -> AnyMat {
        return Mat<F>(left * std::get<Mat<F>>(p) * right.adjoint());
    };
    out.push_back(invariance_check(good, act, f, count, s, name));
    out.push_back(negative(invariance_check(bad, act, f, count, s, name + " [negative control: uncorrected QR]")));
}

void lagrangian_tests(std::vector<TestReport>& out, int beta, std::size_t n, std::uint64_t seed, std::size_t count) {
    static const char* names[] = {"", "COE", "CLE", "", "CSE"};
    const std::string name = std::string("LGr points via ") + names[beta] + "(" + std::to_string(n) + ")";
    const std::uint64_t s = derive_seed(seed, name);
    const auto target = Target::lagrangian(beta, n);
    const Sampler good = [=](RngStream& r) { return sample_uniform(target, Route::Circular, r); };
    const Sampler bad = [=](RngStream& r) { return sample_uniform(target, Route::BiasedHaar, r); };
    RngStream w = witness_stream(s, 0);
    const std::size_t dim = beta == 1 ? n : 2 * n;
    const CMat a = beta == 2 ? embed_complex(sample_haar<Quat>(n, w)) : sample_haar<Complex>(dim, w);
    const CMat a_adj = beta == 1 ? a.transpose() : adjoint(a, beta == 2 ? AdjointKind::L : AdjointKind::S);
    const auto f = ScalarFunctional::re_trace_against(sample_ginibre<Complex>(dim, dim, w));
    const GroupAction act = [=](const AnyMat& p) -> AnyMat { return CMat(a * std::get<CMat>(p) * a_adj); };
    out.push_back(invariance_check(good, act, f, count, s, name));
    out.push_back(negative(invariance_check(bad, act, f, count, s, name + " [negative control: uncorrected QR]")));
}

// ---------------------------------------------------------------------------
// moments

template <FieldTag F>
void grassmann_moment(std::vector<TestReport>& out, std::size_t n, std::size_t k, std::uint64_t seed,
                      std::size_t count) {
    const std::string name = "mean of Gr(" + std::to_string(k) + ", " + field_name(F::beta) + "^" +
                             std::to_string(n) + ") points";
    const std::uint64_t s = derive_seed(seed, name);
    const AnyMat target = Mat<F>(Mat<F>::identity(n) * ((2.0 * k - static_cast<double>(n)) / n));
    const Sampler good = [=](RngStream& r) -> AnyMat { return grassmann_map(sample_gaussian<F>(n, r), k); };
    const Sampler bad = [=](RngStream& r) -> AnyMat {
        return grassmann_map(Mat<F>(sample_gaussian<F>(n, r) + anisotropic_shift<F>(n)), k);
    };
    out.push_back(moment_check(good, target, count, s, 5.0, name));
    out.push_back(negative(moment_check(bad, target, count, s, 5.0, name + " [negative control: anisotropic input]")));
}

void haar_moments(std::vector<TestReport>& out, std::size_t n, std::uint64_t seed, std::size_t count) {
    const std::string name = "E[q11^2] = 1/" + std::to_string(n) + " for Haar O(" + std::to_string(n) + ")";
    const std::uint64_t s = derive_seed(seed, name);
    const auto sq = [](const RMat& q) { return std::vector<double>{q(0, 0) * q(0, 0)}; };
    const std::vector<double> target{1.0 / static_cast<double>(n)};
    out.push_back(moment_check([=](RngStream& r) { return sq(sample_haar<Real>(n, r)); }, target, count, s, 5.0, name));
    out.push_back(negative(moment_check(
        [=](RngStream& r) { return sq(householder_q(RMat(tilt<Real>(n) * sample_ginibre<Real>(n, n, r)), true)); },
        target, count, s, 5.0, name + " [negative control: row-tilted Ginibre]")));

    const std::string name1 = "E[q11] = 0 for Haar O(" + std::to_string(n) + ")";
    const std::uint64_t s1 = derive_seed(seed, name1);
    const auto first = [](const RMat& q) { return std::vector<double>{q(0, 0)}; };
    out.push_back(moment_check([=](RngStream& r) { return first(sample_haar<Real>(n, r)); }, {0.0}, count, s1, 5.0,
                               name1));
    out.push_back(negative(moment_check([=](RngStream& r) { return first(sample_haar_uncorrected<Real>(n, r)); },
                                        {0.0}, count, s1, 5.0, name1 + " [negative control: uncorrected QR]")));
}

// ---------------------------------------------------------------------------
// marginals

std::vector<double> draw_scalars(std::size_t count, std::uint64_t seed, const std::function<double(RngStream&)>& f) {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        RngStream r(seed, i);
        v[i] = f(r);
    }
    return v;
}

// ---------------------------------------------------------------------------
// cross-route

std::vector<std::vector<double>> draw_features(std::size_t count, std::uint64_t seed, std::uint64_t offset,
                                               const Sampler& s) {
    std::vector<std::vector<double>> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        RngStream r(seed, offset + i);
        v[i] = features(s(r));
    }
    return v;
}

void energy_pair(std::vector<TestReport>& out, const std::string& name, const Sampler& a, const Sampler& b,
                 const Sampler& bad, std::uint64_t seed, std::size_t count) {
    const std::uint64_t s = derive_seed(seed, name);
    const auto fa = draw_features(count, s, 0, a);
    out.push_back(energy_two_sample(fa, draw_features(count, s, count, b), s, name));
    out.push_back(negative(
        energy_two_sample(fa, draw_features(count, s, 2 * count, bad), s, name + " [negative control: biased route]")));
}

}  // namespace

std::vector<TestReport> run_invariance_suite(std::uint64_t seed, const SuiteSizes& sizes) {
    std::vector<TestReport> out;
    const std::size_t n = sizes.invariance;
    gaussian_flag_tests<Real>(out, seed, n);
    gaussian_flag_tests<Complex>(out, seed, n);
    gaussian_flag_tests<Quat>(out, seed, n);
    singular_tests<Real>(out, seed, n);
    singular_tests<Complex>(out, seed, n);
    singular_tests<Quat>(out, seed, n);
    stiefel_tests<Complex>(out, seed, n);
    cs_tests<Real>(out, seed, n);
    cs_tests<Complex>(out, seed, n);
    cs_tests<Quat>(out, seed, n);
    for (int beta : {1, 2, 4})
        for (std::size_t m : {2, 3}) lagrangian_tests(out, beta, m, seed, n);
    return out;
}

std::vector<TestReport> run_moments_suite(std::uint64_t seed, const SuiteSizes& sizes) {
    std::vector<TestReport> out;
    const std::size_t n = sizes.moments;
    grassmann_moment<Real>(out, 4, 2, seed, n);
    grassmann_moment<Complex>(out, 4, 1, seed, n);
    grassmann_moment<Quat>(out, 3, 1, seed, n);
    haar_moments(out, 3, seed, n);
    haar_moments(out, 5, seed, n);

    const std::string name = "mean of full Flag(R^3) points, a = (3,2,1)";
    const auto spec = FlagSpec::complete(3);
    const AnyMat target = RMat(RMat::identity(3) * 2.0);
    out.push_back(moment_check([=](RngStream& r) -> AnyMat { return flag_map(sample_gaussian<Real>(3, r), spec); },
                               target, n, derive_seed(seed, name), 5.0, name));
    out.push_back(negative(moment_check(
        [=](RngStream& r) -> AnyMat {
            return flag_map(RMat(sample_gaussian<Real>(3, r) + anisotropic_shift<Real>(3)), spec);
        },
        target, n, derive_seed(seed, name), 5.0, name + " [negative control: anisotropic input]")));
    return out;
}

std::vector<TestReport> run_marginals_suite(std::uint64_t seed, const SuiteSizes& sizes) {
    namespace bm = boost::math;
    std::vector<TestReport> out;
    const std::size_t n = sizes.marginals;
    auto one = [&](const std::string& name, const std::function<double(RngStream&)>& draw,
                   const std::function<double(double)>& cdf, bool expect) {
        const std::uint64_t s = derive_seed(seed, name);
        auto r = ks_one_sample(draw_scalars(n, s, draw), cdf, name, s);
        r.expect_pass = expect;
        out.push_back(std::move(r));
    };
    const bm::normal std_normal;
    one("GOE(1) vs N(0,1)", [](RngStream& r) { return sample_gaussian<Real>(1, r)(0, 0); },
        [&](double x) { return bm::cdf(std_normal, x); }, true);
    one("GinOE(1,1) * sqrt(2) vs N(0,1) [negative control: wrong variance]",
        [](RngStream& r) { return std::sqrt(2.0) * sample_ginibre<Real>(1, 1, r)(0, 0); },
        [&](double x) { return bm::cdf(std_normal, x); }, false);
    for (std::size_t m : {2, 5, 10}) {
        const bm::chi_squared chi(static_cast<double>(m));
        one("LOE(" + std::to_string(m) + ",1) vs chi^2_" + std::to_string(m),
            [m](RngStream& r) { return sample_laguerre<Real>(m, 1, r)(0, 0); },
            [chi](double x) { return x <= 0 ? 0.0 : bm::cdf(chi, x); }, true);
        one("LOE(" + std::to_string(m + 2) + ",1) vs chi^2_" + std::to_string(m) + " [negative control: wrong m]",
            [m](RngStream& r) { return sample_laguerre<Real>(m + 2, 1, r)(0, 0); },
            [chi](double x) { return x <= 0 ? 0.0 : bm::cdf(chi, x); }, false);
    }
    for (auto [l, m] : {std::pair<std::size_t, std::size_t>{3, 3}, {6, 4}}) {
        const bm::beta_distribution<> be(l / 2.0, m / 2.0);
        auto cdf = [be](double x) { return x <= 0 ? 0.0 : x >= 1 ? 1.0 : bm::cdf(be, x); };
        const std::string tag = "(" + std::to_string(l) + "," + std::to_string(m) + ",1)";
        one("JOE" + tag + " vs Beta(" + std::to_string(l) + "/2," + std::to_string(m) + "/2)",
            [l, m](RngStream& r) { return sample_jacobi<Real>(l, m, 1, r)(0, 0); }, cdf, true);
        one("JOE(" + std::to_string(l) + "," + std::to_string(m + 2) + ",1) vs Beta(" + std::to_string(l) + "/2," +
                std::to_string(m) + "/2) [negative control: wrong m]",
            [l, m](RngStream& r) { return sample_jacobi<Real>(l, m + 2, 1, r)(0, 0); }, cdf, false);
    }
    auto uniform_phase = [](double t) { return std::clamp((t + std::numbers::pi) / (2.0 * std::numbers::pi), 0.0, 1.0); };
    one("CUE(1) phase vs uniform", [](RngStream& r) { return std::arg(sample_haar<Complex>(1, r)(0, 0)); },
        uniform_phase, true);
    one("CUE(1) phase vs uniform [negative control: uncorrected QR]",
        [](RngStream& r) { return std::arg(sample_haar_uncorrected<Complex>(1, r)(0, 0)); }, uniform_phase, false);
    return out;
}

std::vector<TestReport> run_cross_route_suite(std::uint64_t seed, const SuiteSizes& sizes) {
    std::vector<TestReport> out;
    const std::size_t n = sizes.energy;
    {
        const auto t = Target::flag(1, FlagSpec::complete(4));
        energy_pair(
            out, "full Flag(R^4): Gaussian vs Haar", [t](RngStream& r) { return sample_uniform(t, Route::Gaussian, r); },
            [t](RngStream& r) { return sample_uniform(t, Route::Haar, r); },
            [t](RngStream& r) -> AnyMat {
                return flag_map(RMat(sample_gaussian<Real>(4, r) + anisotropic_shift<Real>(4)), t.spec);
            },
            seed, n);
    }
    {
        const auto t = Target::stiefel(1, 2, 4);
        energy_pair(
            out, "V(2, R^4): Ginibre polar vs Haar columns",
            [t](RngStream& r) { return sample_uniform(t, Route::Ginibre, r); },
            [t](RngStream& r) { return sample_uniform(t, Route::Haar, r); },
            [t](RngStream& r) { return sample_uniform(t, Route::BiasedHaar, r); }, seed, n);
    }
    {
        const auto t = Target::lagrangian(1, 3);
        energy_pair(
            out, "LGr(R^6): COE QQ^T vs Takagi of a Haar draw",
            [t](RngStream& r) { return sample_uniform(t, Route::Circular, r); },
            [t](RngStream& r) { return sample_uniform(t, Route::Takagi, r); },
            [t](RngStream& r) { return sample_uniform(t, Route::BiasedHaar, r); }, seed, n);
    }
    return out;
}

std::vector<TestReport> run_suite(const std::string& name, std::uint64_t seed, const SuiteSizes& sizes) {
    if (name == "invariance") return run_invariance_suite(seed, sizes);
    if (name == "moments") return run_moments_suite(seed, sizes);
    if (name == "marginals") return run_marginals_suite(seed, sizes);
    if (name == "cross-route") return run_cross_route_suite(seed, sizes);
    throw SpecError("unknown suite '" + name + "'");
}

}  // namespace rmt
