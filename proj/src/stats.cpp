#include "rmt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace rmt {

double kolmogorov_sf(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 1.18) {
        // Jacobi theta form, converges fast for small x.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double s = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const double t = 2.0 * k - 1.0;
            s += std::exp(-t * t * pi2 / (8.0 * x * x));
        }
        return 1.0 - std::sqrt(2.0 * std::numbers::pi) / x * s;
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        s += (k % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-18) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

namespace {

double ks_p_value(double d, double ne) {
    const double sn = std::sqrt(ne);
    return kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d);
}

}  // namespace

TestReport ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf, std::string name,
                         std::uint64_t seed, double alpha) {
    if (samples.size() < 100) throw InsufficientSamples("KS test needs at least 100 samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    TestReport r;
    r.name = std::move(name);
    r.statistic = d;
    r.p_value = ks_p_value(d, n);
    r.n_samples = samples.size();
    r.seed = seed;
    r.threshold = alpha;
    r.pass = *r.p_value >= alpha;
    return r;
}

TestReport ks_two_sample(std::vector<double> x, std::vector<double> y, std::string name, std::uint64_t seed,
                         double alpha) {
    if (x.size() < 100 || y.size() < 100) throw InsufficientSamples("KS test needs at least 100 samples per side");
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    TestReport r;
    r.name = std::move(name);
    r.statistic = d;
    r.p_value = ks_p_value(d, nx * ny / (nx + ny));
    r.n_samples = x.size() + y.size();
    r.seed = seed;
    r.threshold = alpha;
    r.pass = *r.p_value >= alpha;
    return r;
}

TestReport energy_two_sample(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y,
                             std::uint64_t seed, std::string name, std::size_t permutations, double alpha) {
    if (x.size() < 200 || y.size() < 200) throw InsufficientSamples("energy test needs at least 200 points per side");
    const std::size_t dim = x.front().size();
    for (const auto* s : {&x, &y})
        for (const auto& p : *s)
            if (p.size() != dim) throw DimensionError("energy test: points have different dimensions");

    const std::size_t nx = x.size(), ny = y.size(), n = nx + ny;
    std::vector<const std::vector<double>*> pts;
    for (const auto& p : x) pts.push_back(&p);
    for (const auto& p : y) pts.push_back(&p);
    std::vector<float> dist(n * n, 0.0f);
    double total = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            double s = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double t = (*pts[a])[c] - (*pts[b])[c];
                s += t * t;
            }
            const double dd = std::sqrt(s);
            dist[a * n + b] = dist[b * n + a] = static_cast<float>(dd);
            total += 2.0 * dd;
        }

    // Energy statistic nx ny / n * (2 E|X-Y| - E|X-X'| - E|Y-Y'|) from the
    // within-group sums; the cross sum is (total - sxx - syy) / 2.
    auto statistic = [&](const std::vector<unsigned char>& label) {
        double sxx = 0.0, syy = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            const float* row = &dist[a * n];
            double rx = 0.0, ry = 0.0;
            for (std::size_t b = a + 1; b < n; ++b) {
                if (label[a] != label[b]) continue;
                (label[b] ? ry : rx) += row[b];
            }
            sxx += 2.0 * rx;
            syy += 2.0 * ry;
        }
        const double sxy = (total - sxx - syy) / 2.0;
        const double fx = static_cast<double>(nx), fy = static_cast<double>(ny);
        const double e = 2.0 * sxy / (fx * fy) - sxx / (fx * fx) - syy / (fy * fy);
        return fx * fy / (fx + fy) * e;
    };

    std::vector<unsigned char> label(n, 0);
    std::fill(label.begin() + static_cast<std::ptrdiff_t>(nx), label.end(), 1);
    const double observed = statistic(label);
    RngStream rng(seed, 0x656e6572ull);
    std::size_t exceed = 0;
    for (std::size_t p = 0; p < permutations; ++p) {
        std::shuffle(label.begin(), label.end(), rng.engine());
        if (statistic(label) >= observed) ++exceed;
    }
    TestReport r;
    r.name = std::move(name);
    r.statistic = observed;
    r.p_value = (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(permutations));
    r.n_samples = n;
    r.seed = seed;
    r.threshold = alpha;
    r.pass = *r.p_value >= alpha;
    return r;
}

// ---------------------------------------------------------------------------

ScalarFunctional ScalarFunctional::re_trace_against(AnyMat a) {
    ScalarFunctional f;
    f.kind = Kind::ReTraceAgainst;
    f.witness = std::move(a);
    return f;
}

ScalarFunctional ScalarFunctional::entry(std::size_t i, std::size_t j, std::size_t part) {
    ScalarFunctional f;
    f.kind = Kind::Entry;
    f.i = i;
    f.j = j;
    f.part = part;
    return f;
}

ScalarFunctional ScalarFunctional::squared_entry(std::size_t i, std::size_t j) {
    ScalarFunctional f;
    f.kind = Kind::SquaredEntry;
    f.i = i;
    f.j = j;
    return f;
}

double ScalarFunctional::operator()(const AnyMat& p) const {
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            switch (kind) {
                case Kind::ReTraceAgainst: {
                    const auto* a = std::get_if<M>(&witness);
                    if (!a) throw FieldError("functional witness and sample have different fields");
                    return re_trace_product(*a, m);
                }
                case Kind::Entry: {
                    double comps[4] = {0, 0, 0, 0};
                    scalar_components(m(i, j), comps);
                    if (part >= real_components<typename M::field>) throw DimensionError("entry part out of range");
                    return comps[part];
                }
                case Kind::SquaredEntry: return scalar_abs2(m(i, j));
            }
            return 0.0;
        },
        p);
}

std::vector<double> features(const AnyMat& x) {
    return std::visit([](const auto& m) { return real_features(m); }, x);
}

TestReport invariance_check(const Sampler& sampler, const GroupAction& action, const ScalarFunctional& f,
                            std::size_t n, std::uint64_t seed, std::string name) {
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        RngStream r1(seed, i);
        a[i] = f(sampler(r1));
        RngStream r2(seed, n + i);
        b[i] = f(action(sampler(r2)));
    }
    return ks_two_sample(std::move(a), std::move(b), std::move(name), seed);
}

TestReport moment_check(const std::function<std::vector<double>(RngStream&)>& feats,
                        const std::vector<double>& target, std::size_t n, std::uint64_t seed, double c,
                        std::string name) {
    if (n < 1000) throw InsufficientSamples("moment check needs at least 1000 draws");
    std::vector<double> sum(target.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        RngStream r(seed, i);
        const auto v = feats(r);
        if (v.size() != target.size()) throw DimensionError("moment check: feature length differs from target");
        for (std::size_t k = 0; k < v.size(); ++k) sum[k] += v[k];
    }
    double dev = 0.0;
    for (std::size_t k = 0; k < sum.size(); ++k) dev = std::max(dev, std::abs(sum[k] / n - target[k]));
    TestReport r;
    r.name = std::move(name);
    r.statistic = dev;
    r.n_samples = n;
    r.seed = seed;
    r.threshold = c / std::sqrt(static_cast<double>(n));
    r.pass = dev <= r.threshold;
    return r;
}

TestReport moment_check(const Sampler& sampler, const AnyMat& target_mean, std::size_t n, std::uint64_t seed,
                        double c, std::string name) {
    return moment_check([&](RngStream& r) { return features(sampler(r)); }, features(target_mean), n, seed, c,
                        std::move(name));
}

}  // namespace rmt
