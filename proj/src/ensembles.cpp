#include "rmt/ensembles.hpp"

#include <cmath>
#include <numbers>

#include "rmt/decomp.hpp"
#include "rmt/volumes.hpp"

namespace rmt {

RngStream::RngStream(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(index), hi(index), 0x726d74u};
    engine_.seed(seq);
}

// ---------------------------------------------------------------------------

void EnsembleId::validate() const {
    if (beta != 1 && beta != 2 && beta != 4) throw ParamError("beta must be 1, 2 or 4");
    if (n < 1) throw ParamError(name() + ": n must be at least 1");
    switch (family) {
        case Family::Laguerre:
            if (m < n) throw ParamError(name() + ": Laguerre needs m >= n");
            break;
        case Family::Jacobi:
            if (l < n || m < n) throw ParamError(name() + ": Jacobi needs l >= n and m >= n");
            break;
        case Family::Ginibre:
            if (m < 1) throw ParamError(name() + ": Ginibre needs m >= 1");
            break;
        default: break;
    }
}

std::string EnsembleId::name() const {
    const int bi = beta == 1 ? 0 : beta == 2 ? 1 : 2;
    static const char* names[6][3] = {{"GOE", "GUE", "GSE"},       {"LOE", "LUE", "LSE"},
                                      {"JOE", "JUE", "JSE"},       {"GinOE", "GinUE", "GinSE"},
                                      {"CRE", "CUE", "CQE"},       {"COE", "CLE", "CSE"}};
    std::string s = (beta == 1 || beta == 2 || beta == 4) ? names[static_cast<int>(family)][bi] : "?";
    switch (family) {
        case Family::Laguerre:
        case Family::Ginibre: return s + "(" + std::to_string(m) + "," + std::to_string(n) + ")";
        case Family::Jacobi:
            return s + "(" + std::to_string(l) + "," + std::to_string(m) + "," + std::to_string(n) + ")";
        default: return s + "(" + std::to_string(n) + ")";
    }
}

// ---------------------------------------------------------------------------

template <FieldTag F>
scalar_t<F> sample_normal_scalar(double sigma2, RngStream& rng) {
    const double sd = std::sqrt(sigma2 / F::beta);
    if constexpr (std::is_same_v<F, Real>) {
        return sd * rng.normal();
    } else if constexpr (std::is_same_v<F, Complex>) {
        const double re = rng.normal();
        const double im = rng.normal();
        return {sd * re, sd * im};
    } else {
        Quaternion q;
        q.a = sd * rng.normal();
        q.b = sd * rng.normal();
        q.c = sd * rng.normal();
        q.d = sd * rng.normal();
        return q;
    }
}

template <FieldTag F>
Mat<F> sample_gaussian(std::size_t n, RngStream& rng) {
    // off-diagonal N_F(0, 1/2), N_C(0, 1), N_H(0, 2)
    const double off = F::beta == 1 ? 0.5 : F::beta == 2 ? 1.0 : 2.0;
    Mat<F> x(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, i) = scalar_t<F>(rng.normal());
        for (std::size_t j = i + 1; j < n; ++j) {
            x(i, j) = sample_normal_scalar<F>(off, rng);
            x(j, i) = scalar_conj(x(i, j));
        }
    }
    return x;
}

template <FieldTag F>
Mat<F> sample_ginibre(std::size_t m, std::size_t n, RngStream& rng) {
    Mat<F> y(m, n);
    for (auto& v : y.data()) v = sample_normal_scalar<F>(1.0, rng);
    return y;
}

namespace {

template <FieldTag F>
Mat<F> hermitian_part(const Mat<F>& x) {
    return (x + x.adjoint()) * 0.5;
}

template <FieldTag F>
Mat<F> gram(const Mat<F>& y) {
    return hermitian_part(y.adjoint() * y);
}

}  // namespace

template <FieldTag F>
Mat<F> sample_laguerre(std::size_t m, std::size_t n, RngStream& rng) {
    if (m < n) throw ParamError("Laguerre ensemble needs m >= n");
    return gram(sample_ginibre<F>(m, n, rng));
}

template <FieldTag F>
Mat<F> sample_jacobi(std::size_t l, std::size_t m, std::size_t n, RngStream& rng) {
    if (l < n || m < n) throw ParamError("Jacobi ensemble needs l >= n and m >= n");
    const Mat<F> a = gram(sample_ginibre<F>(m, n, rng));
    const Mat<F> b = gram(sample_ginibre<F>(l, n, rng));
    const Mat<F> w = inv_sqrt_psd(a + b);
    return hermitian_part(w * b * w);
}

template <FieldTag F>
Mat<F> householder_q(const Mat<F>& a_in, bool positive_diagonal) {
    using S = scalar_t<F>;
    if (!a_in.is_square()) throw DimensionError("householder_q expects a square matrix");
    const std::size_t n = a_in.rows();
    Mat<F> a = a_in;
    Mat<F> q = Mat<F>::identity(n);
    std::vector<S> phase(n, S(1.0));
    for (std::size_t j = 0; j < n; ++j) {
        double xnorm2 = 0.0;
        for (std::size_t i = j; i < n; ++i) xnorm2 += scalar_abs2(a(i, j));
        const double xnorm = std::sqrt(xnorm2);
        const double x0abs = std::sqrt(scalar_abs2(a(j, j)));
        const S s = x0abs > 0.0 ? a(j, j) * (1.0 / x0abs) : S(1.0);
        // R's diagonal entry is alpha = -s |x|; its unit phase is -s.
        phase[j] = -s;
        if (xnorm == 0.0) continue;
        const S alpha = -s * xnorm;
        Mat<F> w(n - j, 1);
        for (std::size_t i = j; i < n; ++i) w(i - j, 0) = a(i, j);
        w(0, 0) -= alpha;
        const double wn2 = w.frobenius_norm() * w.frobenius_norm();
        if (wn2 == 0.0) continue;
        // a <- H a on rows j.., H = I - 2 w w^H / |w|^2
        for (std::size_t c = j; c < n; ++c) {
            S dot{};
            for (std::size_t i = j; i < n; ++i) dot += scalar_conj(w(i - j, 0)) * a(i, c);
            for (std::size_t i = j; i < n; ++i) a(i, c) -= w(i - j, 0) * dot * (2.0 / wn2);
        }
        // q <- q H on columns j..
        for (std::size_t r = 0; r < n; ++r) {
            S dot{};
            for (std::size_t i = j; i < n; ++i) dot += q(r, i) * w(i - j, 0);
            for (std::size_t i = j; i < n; ++i) q(r, i) -= dot * scalar_conj(w(i - j, 0)) * (2.0 / wn2);
        }
    }
    if (positive_diagonal)
        for (std::size_t j = 0; j < n; ++j) q.scale_col_right(j, phase[j]);
    return q;
}

template <FieldTag F>
Mat<F> sample_haar(std::size_t n, RngStream& rng) {
    return householder_q(sample_ginibre<F>(n, n, rng), true);
}

template <FieldTag F>
Mat<F> sample_haar_uncorrected(std::size_t n, RngStream& rng) {
    return householder_q(sample_ginibre<F>(n, n, rng), false);
}

CMat sample_circular_quotient(int beta, std::size_t n, RngStream& rng) {
    switch (beta) {
        case 1: {
            const CMat q = sample_haar<Complex>(n, rng);
            return q * q.transpose();
        }
        case 2: {
            const CMat q = embed_complex(sample_haar<Quat>(n, rng));
            return q * adjoint(q, AdjointKind::L);
        }
        case 4: {
            const CMat q = sample_haar<Complex>(2 * n, rng);
            return q * adjoint(q, AdjointKind::S);
        }
        default: throw ParamError("circular quotient ensemble needs beta = 1, 2 or 4");
    }
}

AnyMat sample(const EnsembleId& id, RngStream& rng) {
    id.validate();
    auto by_field = [&](auto tag) -> AnyMat {
        using F = decltype(tag);
        switch (id.family) {
            case Family::Gaussian: return sample_gaussian<F>(id.n, rng);
            case Family::Laguerre: return sample_laguerre<F>(id.m, id.n, rng);
            case Family::Jacobi: return sample_jacobi<F>(id.l, id.m, id.n, rng);
            case Family::Ginibre: return sample_ginibre<F>(id.m, id.n, rng);
            case Family::CircularGroup: return sample_haar<F>(id.n, rng);
            case Family::CircularQuotient: return sample_circular_quotient(id.beta, id.n, rng);
        }
        throw ParamError("unknown ensemble family");
    };
    switch (id.beta) {
        case 1: return by_field(Real{});
        case 2: return by_field(Complex{});
        default: return by_field(Quat{});
    }
}

// ---------------------------------------------------------------------------

namespace {

const double kLogPi = std::log(std::numbers::pi);

template <FieldTag F>
std::vector<double> eigenvalues_checked(const Mat<F>& x, const std::string& what) {
    if (!x.is_square() || !is_self_adjoint(x)) throw SupportError(what + ": matrix is not self-adjoint");
    return evd_sym(x).lambda;
}

template <FieldTag F>
double logpdf_typed(const EnsembleId& id, const Mat<F>& x) {
    const double b = id.beta;
    const double n = static_cast<double>(id.n);
    const double m = static_cast<double>(id.m);
    const double l = static_cast<double>(id.l);
    const std::string what = id.name();
    auto check_shape = [&](std::size_t r, std::size_t c) {
        if (x.rows() != r || x.cols() != c) throw SupportError(what + ": wrong shape");
    };

    switch (id.family) {
        case Family::Gaussian: {
            check_shape(id.n, id.n);
            if (!is_self_adjoint(x)) throw SupportError(what + ": matrix is not self-adjoint");
            const double f = x.frobenius_norm();
            return -0.5 * n * std::log(2.0) - b * n * (n - 1.0 + 2.0 / b) / 4.0 * kLogPi - 0.5 * f * f;
        }
        case Family::Laguerre: {
            check_shape(id.n, id.n);
            const auto lam = eigenvalues_checked(x, what);
            double logdet = 0.0, tr = 0.0;
            for (double v : lam) {
                if (v <= 0.0) throw SupportError(what + ": matrix is not positive definite");
                logdet += std::log(v);
                tr += v;
            }
            return -(b * m * n / 2.0) * std::log(2.0 / b) - log_multivariate_gamma(id.n, id.beta, b * m / 2.0) +
                   ((m - n + 1.0) * b / 2.0 - 1.0) * logdet - b / 2.0 * tr;
        }
        case Family::Jacobi: {
            check_shape(id.n, id.n);
            const auto lam = eigenvalues_checked(x, what);
            double logdet = 0.0, logdet1 = 0.0;
            for (double v : lam) {
                if (v <= 0.0 || v >= 1.0) throw SupportError(what + ": eigenvalues must lie in (0, 1)");
                logdet += std::log(v);
                logdet1 += std::log1p(-v);
            }
            return log_multivariate_gamma(id.n, id.beta, (l + m) * b / 2.0) -
                   log_multivariate_gamma(id.n, id.beta, l * b / 2.0) -
                   log_multivariate_gamma(id.n, id.beta, m * b / 2.0) + ((l - n + 1.0) * b / 2.0 - 1.0) * logdet +
                   ((m - n + 1.0) * b / 2.0 - 1.0) * logdet1;
        }
        case Family::Ginibre: {
            check_shape(id.m, id.n);
            const double f = x.frobenius_norm();
            return (m * n * b / 2.0) * std::log(b / (2.0 * std::numbers::pi)) - b / 2.0 * f * f;
        }
        case Family::CircularGroup:
            check_shape(id.n, id.n);
            if (!is_unitary(x)) throw SupportError(what + ": matrix is not in the group");
            return -log_volume(VolumeQuery::group(id.beta, id.n));
        case Family::CircularQuotient: break;
    }
    throw SupportError(what + ": matrix has the wrong field");
}

double logpdf_quotient(const EnsembleId& id, const CMat& x) {
    const std::string what = id.name();
    const std::size_t dim = id.beta == 1 ? id.n : 2 * id.n;
    if (x.rows() != dim || x.cols() != dim) throw SupportError(what + ": wrong shape");
    bool ok = is_unitary(x);
    if (id.beta == 1) ok = ok && is_symmetric(x);
    if (id.beta == 2) ok = ok && is_compact_symplectic(x) && is_lagrangian_symmetric(x);
    if (id.beta == 4) ok = ok && is_symplectic_symmetric(x);
    if (!ok) throw SupportError(what + ": matrix is not on the Lagrangian Grassmannian");
    return -log_volume(VolumeQuery::lagrangian(id.beta, id.n));
}

}  // namespace

double logpdf(const EnsembleId& id, const AnyMat& x) {
    id.validate();
    if (id.family == Family::CircularQuotient) {
        const auto* c = std::get_if<CMat>(&x);
        if (!c) throw SupportError(id.name() + ": expected a complex matrix");
        return logpdf_quotient(id, *c);
    }
    const int field_beta = static_cast<int>(x.index() == 0 ? 1 : x.index() == 1 ? 2 : 4);
    if (field_beta != id.beta) throw SupportError(id.name() + ": matrix has the wrong field");
    return std::visit([&](const auto& m) { return logpdf_typed(id, m); }, x);
}

#define RMT_INSTANTIATE(F)                                                                  \
    template scalar_t<F> sample_normal_scalar<F>(double, RngStream&);                       \
    template Mat<F> sample_gaussian<F>(std::size_t, RngStream&);                            \
    template Mat<F> sample_ginibre<F>(std::size_t, std::size_t, RngStream&);                \
    template Mat<F> sample_laguerre<F>(std::size_t, std::size_t, RngStream&);               \
    template Mat<F> sample_jacobi<F>(std::size_t, std::size_t, std::size_t, RngStream&);    \
    template Mat<F> householder_q<F>(const Mat<F>&, bool);                                  \
    template Mat<F> sample_haar<F>(std::size_t, RngStream&);                                \
    template Mat<F> sample_haar_uncorrected<F>(std::size_t, RngStream&);

RMT_INSTANTIATE(Real)
RMT_INSTANTIATE(Complex)
RMT_INSTANTIATE(Quat)

#undef RMT_INSTANTIATE

}  // namespace rmt
