#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/matrix.hpp"

namespace rmt {

inline constexpr double kAlpha = 0.01;

/// Outcome of one statistical check. `pass` is the raw verdict; a negative
/// control is a check with `expect_pass = false`, i.e. one that must reject.
struct TestReport {
    std::string name;
    double statistic = 0.0;
    std::optional<double> p_value;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    bool expect_pass = true;
    /// alpha for hypothesis tests, the absolute tolerance for moment checks.
    double threshold = kAlpha;

    bool as_expected() const { return pass == expect_pass; }
};

/// P(K > x) for the Kolmogorov distribution.
double kolmogorov_sf(double x);

/// One-sample KS against a continuous CDF with the asymptotic p-value.
/// InsufficientSamples below 100 samples.
TestReport ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf,
                         std::string name = "ks_one_sample", std::uint64_t seed = 0, double alpha = kAlpha);

/// Two-sample KS with the asymptotic p-value.
TestReport ks_two_sample(std::vector<double> x, std::vector<double> y, std::string name = "ks_two_sample",
                         std::uint64_t seed = 0, double alpha = kAlpha);

/// Energy-distance two-sample test on points given as real feature vectors
/// (Euclidean distance = Frobenius distance of the matrices). Permutation
/// p-value with `permutations` label shuffles drawn from `seed`.
/// InsufficientSamples below 200 points per side; DimensionError if the
/// feature lengths differ.
TestReport energy_two_sample(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y,
                             std::uint64_t seed, std::string name = "energy_two_sample",
                             std::size_t permutations = 199, double alpha = kAlpha);

/// Projection of a matrix-valued sample to a real number.
struct ScalarFunctional {
    enum class Kind { ReTraceAgainst, Entry, SquaredEntry };

    Kind kind = Kind::ReTraceAgainst;
    AnyMat witness;             // ReTraceAgainst
    std::size_t i = 0, j = 0;   // Entry, SquaredEntry
    std::size_t part = 0;       // Entry: 0 = real part, 1..3 = i, j, k components

    static ScalarFunctional re_trace_against(AnyMat a);
    static ScalarFunctional entry(std::size_t i, std::size_t j, std::size_t part = 0);
    static ScalarFunctional squared_entry(std::size_t i, std::size_t j);

    double operator()(const AnyMat& p) const;
};

using Sampler = std::function<AnyMat(RngStream&)>;
using GroupAction = std::function<AnyMat(const AnyMat&)>;

/// KS between f(P_i) and f(g . P'_i), where P_i uses streams (seed, i) and
/// P'_i uses streams (seed, n + i).
TestReport invariance_check(const Sampler& sampler, const GroupAction& action, const ScalarFunctional& f,
                            std::size_t n, std::uint64_t seed, std::string name = "invariance_check");

/// Sample mean of the real features of each draw against `target`; passes iff
/// every component deviates by at most c / sqrt(n). Draw i uses stream (seed, i).
TestReport moment_check(const std::function<std::vector<double>(RngStream&)>& features,
                        const std::vector<double>& target, std::size_t n, std::uint64_t seed, double c = 5.0,
                        std::string name = "moment_check");

/// moment_check on the matrix itself with a target mean matrix.
TestReport moment_check(const Sampler& sampler, const AnyMat& target_mean, std::size_t n, std::uint64_t seed,
                        double c = 5.0, std::string name = "moment_check");

/// Real feature vector of a matrix of any field.
std::vector<double> features(const AnyMat& x);

}  // namespace rmt
