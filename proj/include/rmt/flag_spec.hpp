#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rmt {

/// Data (n; k_1 < ... < k_p; a_1, ..., a_{p+1}) of a flag manifold and its
/// diagonal representative Delta_a = diag(a_1 I_{n_1}, ..., a_{p+1} I_{n_{p+1}})
/// with n_j = k_j - k_{j-1}, k_0 = 0, k_{p+1} = n.
///
/// p = 0 is allowed and describes the one-point flag {a_1 I_n}.
struct FlagSpec {
    std::size_t n = 0;
    std::vector<std::size_t> ks;
    std::vector<double> values;

    /// Throws SpecError unless 0 < k_1 < ... < k_p < n, values.size() == p + 1
    /// and the values are pairwise distinct.
    void validate() const;

    std::size_t p() const { return ks.size(); }

    /// n_1, ..., n_{p+1}.
    std::vector<std::size_t> block_sizes() const;

    /// The diagonal of Delta_a, in block order.
    std::vector<double> diagonal() const;

    /// Flag with the canonical values a_j = p + 2 - j (descending integers).
    static FlagSpec with_default_values(std::size_t n, std::vector<std::size_t> ks);

    /// Complete flag (1, 2, ..., n-1) with canonical values (n, n-1, ..., 1).
    static FlagSpec complete(std::size_t n);

    /// Grassmannian Gr(k, F^n) with Delta = I_{k,n-k}.
    static FlagSpec grassmann(std::size_t n, std::size_t k);

    std::string to_string() const;
};

}  // namespace rmt
