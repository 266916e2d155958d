#include "rmt/volumes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

void check_beta(int beta) {
    if (beta != 1 && beta != 2 && beta != 4) throw DomainError("beta must be 1, 2 or 4");
}

const double kLogPi = std::log(std::numbers::pi);
const double kLog2 = std::log(2.0);

}  // namespace

double log_theta(long r, long s) {
    return 0.5 * static_cast<double>(r) * kLog2 + 0.25 * static_cast<double>(s) * kLogPi;
}

double log_gamma_prod(long l, long m, int beta) {
    check_beta(beta);
    if (l < 1 || l > m + 1) throw DomainError("gamma product needs 1 <= l <= m + 1");
    double s = 0.0;
    for (long i = l; i <= m; ++i) s += std::lgamma(0.5 * beta * static_cast<double>(i));
    return s;
}

double log_multivariate_gamma(std::size_t n, int beta, double s) {
    check_beta(beta);
    if (n == 0) throw DomainError("multivariate gamma needs n >= 1");
    const double nn = static_cast<double>(n);
    if (!(s > (nn - 1.0) * beta / 2.0)) throw DomainError("multivariate gamma needs s > (n-1) beta / 2");
    double r = beta * nn * (nn - 1.0) / 4.0 * kLogPi;
    for (std::size_t j = 1; j <= n; ++j) r += std::lgamma(s - static_cast<double>(j - 1) * beta / 2.0);
    return r;
}

std::string VolumeQuery::to_string() const {
    static const char* names[] = {"group", "stiefel", "grassmann", "flag", "full-flag", "lagrangian"};
    std::ostringstream os;
    os << names[static_cast<int>(kind)] << "(beta=" << beta << ", n=" << n;
    if (kind == Kind::Stiefel || kind == Kind::Grassmann) os << ", k=" << k;
    if (kind == Kind::Flag) {
        os << ", k=";
        for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? "," : "") << ks[i];
    }
    os << ")";
    return os.str();
}

double log_volume(const VolumeQuery& q) {
    check_beta(q.beta);
    const int b = q.beta;
    const long n = static_cast<long>(q.n);
    const long k = static_cast<long>(q.k);
    if (n < 1) throw DomainError("volume needs n >= 1: " + q.to_string());
    const double half_log_n = 0.5 * std::log(static_cast<double>(n));

    switch (q.kind) {
        case VolumeQuery::Kind::Group:
            switch (b) {
                case 1: return log_theta(2 * n, n * (n + 1)) - log_gamma_prod(1, n, 1);
                case 2: return half_log_n + log_theta(n + 1, 2 * n * (n + 1)) - log_gamma_prod(1, n, 2);
                default: return log_theta(2 * n, 4 * n * (n + 1)) - log_gamma_prod(1, n, 4);
            }

        case VolumeQuery::Kind::Stiefel: {
            if (k < 1 || k > n) throw DomainError("Stiefel volume needs 1 <= k <= n: " + q.to_string());
            const long t = k * (2 * n - k + 1);
            switch (b) {
                case 1: return log_theta(2 * k, t) - log_gamma_prod(n - k + 1, n, 1);
                case 2:
                    if (k == n) throw DomainError("complex Stiefel cell is undefined at k = n: " + q.to_string());
                    return 0.5 * std::log(static_cast<double>(n) / static_cast<double>(n - k)) +
                           log_theta(k, 2 * t) - log_gamma_prod(n - k + 1, n, 2);
                default: return log_theta(2 * k, 4 * t) - log_gamma_prod(n - k + 1, n, 4);
            }
        }

        case VolumeQuery::Kind::Grassmann: {
            if (k < 1 || k >= n) throw DomainError("Grassmann volume needs 1 <= k < n: " + q.to_string());
            const long t = k * (n - k);
            switch (b) {
                case 1: return log_theta(0, 2 * t) + log_gamma_prod(1, k, 1) - log_gamma_prod(n - k + 1, n, 1);
                case 2:
                    return 0.5 * std::log(static_cast<double>(n) / static_cast<double>(t)) + log_theta(-1, 4 * t) +
                           log_gamma_prod(1, k, 2) - log_gamma_prod(n - k + 1, n, 2);
                default: return log_theta(0, 8 * t) + log_gamma_prod(1, k, 4) - log_gamma_prod(n - k + 1, n, 4);
            }
        }

        case VolumeQuery::Kind::Flag: {
            long prev = 0;
            std::vector<long> nj;
            for (std::size_t kj : q.ks) {
                const long kk = static_cast<long>(kj);
                if (kk <= prev || kk >= n) throw DomainError("flag volume needs 0 < k_1 < ... < k_p < n: " + q.to_string());
                nj.push_back(kk - prev);
                prev = kk;
            }
            nj.push_back(n - prev);
            long sum_sq = 0;
            double gam = 0.0;
            double log_prod_n = 0.0;
            for (long m : nj) {
                sum_sq += m * m;
                gam += log_gamma_prod(1, m, b);
                log_prod_n += std::log(static_cast<double>(m));
            }
            switch (b) {
                case 1: return log_theta(0, n * n) + gam - log_theta(0, sum_sq) - log_gamma_prod(1, n, 1);
                case 2:
                    return 0.5 * (std::log(static_cast<double>(n)) - log_prod_n) + log_theta(1 - n, 2 * n * n) + gam -
                           log_theta(0, 2 * sum_sq) - log_gamma_prod(1, n, 2);
                default: return log_theta(0, 4 * n * n) + gam - log_theta(0, 4 * sum_sq) - log_gamma_prod(1, n, 4);
            }
        }

        case VolumeQuery::Kind::FullFlag:
            switch (b) {
                case 1: return log_theta(0, n * (n + 1)) - log_gamma_prod(1, n, 1);
                case 2: return half_log_n + log_theta(1 - n, 2 * n * (n - 1)) - log_gamma_prod(1, n, 2);
                default: return log_theta(0, 4 * n * (n - 1)) - log_gamma_prod(1, n, 4);
            }

        case VolumeQuery::Kind::LagrangianGr:
            switch (b) {
                case 1:
                    return half_log_n + log_theta(1 - n, n * (n + 1)) + log_gamma_prod(1, n, 1) -
                           log_gamma_prod(1, n, 2);
                case 2:
                    return log_theta(n - 1, 2 * n * (n + 1)) + log_gamma_prod(1, n, 2) - half_log_n -
                           log_gamma_prod(1, n, 4);
                default:
                    return 0.5 * std::log(2.0 * static_cast<double>(n)) + log_theta(1, 4 * n * n) +
                           log_gamma_prod(1, n, 4) - log_gamma_prod(1, 2 * n, 2);
            }
    }
    throw DomainError("unknown volume kind");
}

}  // namespace rmt
