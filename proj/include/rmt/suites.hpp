#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmt/stats.hpp"

namespace rmt {

/// Sample sizes used by the statistical suites. The defaults are the
/// acceptance sizes; tests may shrink them.
struct SuiteSizes {
    std::size_t invariance = 10000;
    std::size_t moments = 20000;
    std::size_t marginals = 10000;
    std::size_t energy = 2000;
};

std::vector<TestReport> run_invariance_suite(std::uint64_t seed, const SuiteSizes& sizes = {});
std::vector<TestReport> run_moments_suite(std::uint64_t seed, const SuiteSizes& sizes = {});
std::vector<TestReport> run_marginals_suite(std::uint64_t seed, const SuiteSizes& sizes = {});
std::vector<TestReport> run_cross_route_suite(std::uint64_t seed, const SuiteSizes& sizes = {});

/// Dispatch by name: invariance, moments, marginals, cross-route.
/// SpecError on an unknown name.
std::vector<TestReport> run_suite(const std::string& name, std::uint64_t seed, const SuiteSizes& sizes = {});

/// True iff every report matches its expectation (negative controls reject).
bool suite_passed(const std::vector<TestReport>& reports);

/// Seed for one named check inside a suite (stable across runs).
std::uint64_t derive_seed(std::uint64_t seed, const std::string& name);

}  // namespace rmt
