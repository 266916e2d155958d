// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rmt/decomp.hpp"
#include "rmt/manifolds.hpp"
#include "rmt/suites.hpp"
#include "rmt/volumes.hpp"

using namespace rmt;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
};

/// Tracks the worst value seen for a named quantity against a bound.
struct Worst {
    std::string name;
    double bound;
    double value = 0.0;

    void see(double v) { value = std::max(value, std::isnan(v) ? INFINITY : v); }
    void report(Outcome& o) const {
        std::ostringstream os;
        os << name << " max " << value << " (bound " << bound << ")";
        o.notes.push_back(os.str());
        if (!(value <= bound)) o.pass = false;
    }
};

bool descending(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1]) return false;
    return true;
}

bool ascending(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1]) return false;
    return true;
}

bool nonnegative(const std::vector<double>& v) {
    for (double x : v)
        if (x < 0.0) return false;
    return true;
}

int run(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs > budget_s) {
        o.pass = false;
        o.notes.push_back("over time budget of " + std::to_string(budget_s) + " s");
    }
    std::printf("%s [%d] %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs);
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    return o.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

Outcome volumes() {
    Outcome o;
    Worst rel{"relative error", 1e-10};
    auto check = [&](const VolumeQuery& q, double expected) { rel.see(std::abs(std::exp(log_volume(q)) / expected - 1.0)); };
    const double pi = std::numbers::pi;
    check(VolumeQuery::group(1, 1), 2.0);
    check(VolumeQuery::group(2, 1), 2.0 * pi);
    check(VolumeQuery::group(4, 1), 2.0 * pi * pi);
    for (int n = 2; n <= 10; ++n) check(VolumeQuery::stiefel(1, 1, n), oracle::sphere_area(n));
    for (int beta : {1, 2, 4})
        for (std::size_t n = 2; n <= 8; ++n) {
            std::vector<std::size_t> ks;
            for (std::size_t i = 1; i < n; ++i) ks.push_back(i);
            rel.see(std::abs(std::exp(log_volume(VolumeQuery::flag(beta, n, ks)) -
                                      log_volume(VolumeQuery::full_flag(beta, n))) -
                             1.0));
        }
    rel.report(o);
    return o;
}

template <FieldTag F>
void decompositions_over(Outcome& o, Worst& resid, Worst& cs_resid, Worst& member, std::uint64_t seed) {
    bool ordered = true;
    for (std::size_t i = 0; i < 100; ++i) {
        RngStream rng(seed, i);
        const std::size_t n = 1 + i % 16;

        const Mat<F> x = sample_gaussian<F>(n, rng);
        const auto e = evd_sym(x);
        resid.see(oracle::rel_residual(e.reconstruct(), x));
        member.see(unitarity_residual(e.Q));
        ordered = ordered && descending(e.lambda);

        const Mat<F> y = sample_ginibre<F>(n + i % 3, n, rng);
        const auto s = svd_thin(y);
        resid.see(oracle::rel_residual(s.reconstruct(), y));
        member.see(unitarity_residual(s.U));
        member.see(unitarity_residual(s.V));
        ordered = ordered && descending(s.sigma) && nonnegative(s.sigma);

        const std::size_t nc = 2 + i % 15;
        const std::size_t k = 1 + (i / 15) % (nc / 2);
        const Mat<F> q = sample_haar<F>(nc, rng);
        const auto c = cs_decompose(q, k);
        cs_resid.see(oracle::rel_residual(c.reconstruct(), q));
        for (const auto* u : {&c.U1, &c.U2, &c.V1, &c.V2}) member.see(unitarity_residual(*u));
        ordered = ordered && descending(c.c) && ascending(c.s) && nonnegative(c.s);
        for (std::size_t j = 0; j < c.c.size(); ++j) member.see(std::abs(c.c[j] * c.c[j] + c.s[j] * c.s[j] - 1.0));
    }
    o.require(ordered, std::string("orderings over field with beta ") + std::to_string(F::beta));
}

Outcome decompositions() {
    Outcome o;
    Worst resid{"reconstruction residual", 1e-10};
    Worst cs_resid{"CS reconstruction residual", 1e-8};
    Worst member{"membership residual", 1e-10};
    Worst unit_sigma{"|Sigma - I| on CLE/CSE", 1e-10};

    decompositions_over<Real>(o, resid, cs_resid, member, kSeed);
    decompositions_over<Complex>(o, resid, cs_resid, member, kSeed + 1);
    decompositions_over<Quat>(o, resid, cs_resid, member, kSeed + 2);

    bool ordered = true;
    for (std::size_t i = 0; i < 100; ++i) {
        RngStream rng(kSeed + 3, i);
        const std::size_t n = 1 + i % 16;
        const CMat g = sample_ginibre<Complex>(n, n, rng);

        const CMat zs = g + g.transpose();
        const auto t = takagi_sym(zs);
        resid.see(oracle::rel_residual(t.reconstruct(AdjointKind::T), zs));
        member.see(unitarity_residual(t.Q));
        ordered = ordered && descending(t.sigma) && nonnegative(t.sigma);

        const CMat za = g - g.transpose();
        const auto yl = youla_skew(za);
        resid.see(oracle::rel_residual(yl.reconstruct(), za));
        member.see(unitarity_residual(yl.U));
        ordered = ordered && descending(yl.sigma) && nonnegative(yl.sigma);

        const std::size_t h = 1 + i % 8;
        const CMat cle = sample_circular_quotient(2, h, rng);
        const auto tl = takagi_lagrangian(cle);
        resid.see(oracle::rel_residual(tl.reconstruct(AdjointKind::L), cle));
        member.see(unitarity_residual(tl.Q));
        for (double v : tl.sigma) unit_sigma.see(std::abs(v - 1.0));

        const CMat cse = sample_circular_quotient(4, h, rng);
        const auto ts = takagi_symplectic(cse);
        resid.see(oracle::rel_residual(ts.reconstruct(AdjointKind::S), cse));
        member.see(unitarity_residual(ts.Q));
        for (double v : ts.sigma) unit_sigma.see(std::abs(v - 1.0));
    }
    o.require(ordered, "Takagi and Youla orderings");
    resid.report(o);
    cs_resid.report(o);
    member.report(o);
    unit_sigma.report(o);
    return o;
}

Outcome suite(const std::string& name) {
    Outcome o;
    const auto reports = run_suite(name, kSeed);
    for (const auto& r : reports) {
        std::ostringstream os;
        os << (r.as_expected() ? "ok   " : "BAD  ") << r.name << ": stat " << r.statistic;
        if (r.p_value) os << ", p " << *r.p_value;
        os << ", N " << r.n_samples << (r.expect_pass ? "" : ", must reject");
        o.notes.push_back(os.str());
    }
    o.require(!reports.empty() && suite_passed(reports), name + " suite");
    return o;
}

template <FieldTag F>
void gauge_over(Worst& gauge, Worst& equiv, std::uint64_t seed) {
    for (std::size_t i = 0; i < 100; ++i) {
        RngStream rng(seed, i);

        // phi with a partial flag: blocks 1, n - 2, 1.
        const std::size_t n = 3 + i % 4;
        const auto spec = FlagSpec::with_default_values(n, {1, n - 1});
        const Mat<F> x = sample_gaussian<F>(n, rng);
        const Mat<F> p = flag_map(x, spec);
        const Mat<F> w = block_diagonal(block_diagonal(oracle::unit_diagonal<F>(1, rng), sample_haar<F>(n - 2, rng)),
                                        oracle::unit_diagonal<F>(1, rng));
        gauge.see((flag_point_from_vectors(Mat<F>(evd_sym(x).Q * w), spec) - p).frobenius_norm());
        const Mat<F> a = sample_haar<F>(n, rng);
        equiv.see((flag_map(Mat<F>(a * x * a.adjoint()), spec) - Mat<F>(a * p * a.adjoint())).frobenius_norm());

        // xi
        const std::size_t m = n + 2;
        const auto full = FlagSpec::complete(n);
        const Mat<F> y = sample_ginibre<F>(m, n, rng);
        const auto xi = singular_map(y, full);
        const auto s = svd_thin(y);
        const Mat<F> d = oracle::unit_diagonal<F>(n, rng);
        const Mat<F> u = s.U * d, v = s.V * d;
        gauge.see((Mat<F>(u * v.adjoint()) - xi.stiefel).frobenius_norm());
        gauge.see((Mat<F>(v * upcast<F>(make_delta(full)) * v.adjoint()) - xi.flag).frobenius_norm());

        // zeta
        const std::size_t nz = 4 + i % 5;
        const std::size_t k = 1 + (i / 5) % (nz / 2);
        const std::size_t mz = nz - k;
        const Mat<F> q = sample_haar<F>(nz, rng);
        const auto zspec = cs_flag_spec(nz, k);
        const auto z = cs_map(q, k, zspec);
        const auto c = cs_decompose(q, k);
        const Mat<F> dk = oracle::unit_diagonal<F>(k, rng);
        const Mat<F> dw = mz > k ? block_diagonal(dk, sample_haar<F>(mz - k, rng)) : dk;
        const Mat<F> u1 = c.U1 * dk, v1 = c.V1 * dk, u2 = c.U2 * dw, v2 = c.V2 * dw;
        const Mat<F> v2kk = v2.block(0, 0, k, k);
        gauge.see((Mat<F>(u1 * v2kk.adjoint()) - z.first).frobenius_norm());
        gauge.see((Mat<F>(v1 * v2kk.adjoint()) - z.second).frobenius_norm());
        gauge.see((Mat<F>(u2 * v2.adjoint()) - z.third).frobenius_norm());
        gauge.see((Mat<F>(v2 * upcast<F>(make_delta(zspec)) * v2.adjoint()) - z.fourth).frobenius_norm());
    }
}

Outcome gauge_and_equivariance() {
    Outcome o;
    Worst gauge{"gauge recomputation difference", 1e-12};
    Worst equiv{"equivariance difference", 1e-10};
    gauge_over<Real>(gauge, equiv, kSeed + 10);
    gauge_over<Complex>(gauge, equiv, kSeed + 11);
    gauge_over<Quat>(gauge, equiv, kSeed + 12);
    gauge.report(o);
    equiv.report(o);
    return o;
}

}  // namespace

int main() {
    std::printf("acceptance run, seed %llu\n", static_cast<unsigned long long>(kSeed));
    int failures = 0;
    failures += run(1, "volume constants", 1.0, volumes);
    failures += run(2, "decomposition suite", 60.0, decompositions);
    failures += run(3, "marginal laws", 30.0, [] { return suite("marginals"); });
    failures += run(4, "invariance suite", 600.0, [] { return suite("invariance"); });
    failures += run(5, "moment identities", 0.0, [] { return suite("moments"); });
    failures += run(6, "cross-route equality in distribution", 0.0, [] { return suite("cross-route"); });
    failures += run(7, "gauge and equivariance algebra", 0.0, gauge_and_equivariance);
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
