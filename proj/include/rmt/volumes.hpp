#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rmt {

/// log theta(r, s) = (r/2) log 2 + (s/4) log pi.
double log_theta(long r, long s);

/// log gamma(l, m, beta) = sum_{i=l}^{m} log Gamma(beta i / 2); 0 for l = m + 1.
double log_gamma_prod(long l, long m, int beta);

/// log Gamma_n^beta(s) = beta n (n-1)/4 log pi + sum_j log Gamma(s - (j-1) beta/2).
/// DomainError unless s > (n-1) beta / 2.
double log_multivariate_gamma(std::size_t n, int beta, double s);

struct VolumeQuery {
    enum class Kind { Group, Stiefel, Grassmann, Flag, FullFlag, LagrangianGr };

    Kind kind = Kind::Group;
    int beta = 1;
    std::size_t n = 0;
    std::size_t k = 0;                // Stiefel, Grassmann
    std::vector<std::size_t> ks;      // Flag

    static VolumeQuery group(int beta, std::size_t n) { return {Kind::Group, beta, n, 0, {}}; }
    static VolumeQuery stiefel(int beta, std::size_t k, std::size_t n) { return {Kind::Stiefel, beta, n, k, {}}; }
    static VolumeQuery grassmann(int beta, std::size_t k, std::size_t n) { return {Kind::Grassmann, beta, n, k, {}}; }
    static VolumeQuery flag(int beta, std::size_t n, std::vector<std::size_t> ks) {
        return {Kind::Flag, beta, n, 0, std::move(ks)};
    }
    static VolumeQuery full_flag(int beta, std::size_t n) { return {Kind::FullFlag, beta, n, 0, {}}; }
    static VolumeQuery lagrangian(int beta, std::size_t n) { return {Kind::LagrangianGr, beta, n, 0, {}}; }

    std::string to_string() const;
};

/// Log of the closed-form Riemannian volume. DomainError on invalid parameters.
double log_volume(const VolumeQuery& q);

}  // namespace rmt
