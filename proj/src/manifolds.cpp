#include "rmt/manifolds.hpp"

#include <algorithm>

#include "rmt/decomp.hpp"

namespace rmt {

namespace {

template <FieldTag F>
Mat<F> hermitian_part(const Mat<F>& x) {
    return (x + x.adjoint()) * 0.5;
}

void require_distinct(const std::vector<double>& v, const char* what) {
    double scale = 1.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] - v[i] <= tau_gap * scale)
            throw DegenerateSpectrum(std::string(what) + " values are not distinct");
}

template <FieldTag F>
Mat<F> scale_columns(Mat<F> q, const std::vector<double>& d) {
    for (std::size_t j = 0; j < q.cols(); ++j) q.scale_col_right(j, scalar_t<F>(d[j]));
    return q;
}

}  // namespace

template <FieldTag F>
Mat<F> flag_point_from_vectors(const Mat<F>& q, const FlagSpec& spec) {
    spec.validate();
    if (q.rows() != spec.n || q.cols() != spec.n) throw DimensionError("flag point: Q must be n x n");
    return hermitian_part(scale_columns(q, spec.diagonal()) * q.adjoint());
}

template <FieldTag F>
Mat<F> flag_map(const Mat<F>& x, const FlagSpec& spec) {
    spec.validate();
    if (x.rows() != spec.n) throw DimensionError("flag_map: matrix size does not match the flag spec");
    const auto evd = evd_sym(x);
    require_distinct(evd.lambda, "eigen");
    return flag_point_from_vectors(evd.Q, spec);
}

template <FieldTag F>
Mat<F> grassmann_map(const Mat<F>& x, std::size_t k) {
    return flag_map(x, FlagSpec::grassmann(x.rows(), k));
}

template <FieldTag F>
bool is_flag_point(const Mat<F>& p, const FlagSpec& spec, double tol) {
    spec.validate();
    if (p.rows() != spec.n || !p.is_square() || !is_self_adjoint(p, tol)) return false;
    const auto lam = evd_sym(hermitian_part(p)).lambda;
    auto target = spec.diagonal();
    std::sort(target.begin(), target.end(), std::greater<>());
    for (std::size_t i = 0; i < lam.size(); ++i)
        if (std::abs(lam[i] - target[i]) > tol) return false;
    return true;
}

template <FieldTag F>
SingularMapResult<F> singular_map(const Mat<F>& y, const FlagSpec& spec) {
    spec.validate();
    if (y.cols() != spec.n) throw DimensionError("singular_map: column count does not match the flag spec");
    const auto svd = svd_thin(y);
    require_distinct(svd.sigma, "singular");
    return {svd.U * svd.V.adjoint(), flag_point_from_vectors(svd.V, spec)};
}

template <FieldTag F>
Mat<F> polar_stiefel(const Mat<F>& y) {
    const auto svd = svd_thin(y);
    const double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    if (svd.sigma.empty() || svd.sigma.back() <= 1e-12 * std::max(1.0, smax))
        throw RankDeficient("polar_stiefel: matrix does not have full column rank");
    return svd.U * svd.V.adjoint();
}

FlagSpec cs_flag_spec(std::size_t n, std::size_t k) {
    if (k < 1 || 2 * k > n) throw DimensionError("cs_flag_spec: need 1 <= k <= n/2");
    const std::size_t m = n - k;
    std::vector<std::size_t> ks;
    for (std::size_t j = 1; j <= std::min(k, m - 1); ++j) ks.push_back(j);
    return FlagSpec::with_default_values(m, std::move(ks));
}

template <FieldTag F>
CsMapResult<F> cs_map(const Mat<F>& q, std::size_t k, const FlagSpec& spec) {
    const auto cs = cs_decompose(q, k);
    if (spec.n != q.rows() - k) throw DimensionError("cs_map: flag spec must live on F^{n-k}");
    const Mat<F> v2kh = cs.V2.block(0, 0, k, k).adjoint();
    return {cs.U1 * v2kh, cs.V1 * v2kh, cs.U2 * cs.V2.adjoint(), flag_point_from_vectors(cs.V2, spec)};
}

// ---------------------------------------------------------------------------

bool is_lagrangian_point(const CMat& x, int beta, double tol) {
    if (!x.is_square()) return false;
    switch (beta) {
        case 1: return is_unitary(x, tol) && is_symmetric(x, tol);
        case 2: return x.rows() % 2 == 0 && is_compact_symplectic(x, tol) && is_lagrangian_symmetric(x, tol);
        case 4: return x.rows() % 2 == 0 && is_unitary(x, tol) && is_symplectic_symmetric(x, tol);
        default: throw FieldError("Lagrangian kind must be beta = 1, 2 or 4");
    }
}

CMat lagrangian_from_vectors(const CMat& q, int beta) {
    switch (beta) {
        case 1: return q * q.transpose();
        case 2: return q * adjoint(q, AdjointKind::L);
        case 4: return q * adjoint(q, AdjointKind::S);
        default: throw FieldError("Lagrangian kind must be beta = 1, 2 or 4");
    }
}

CMat takagi_vectors(const CMat& x, int beta) {
    if (!is_lagrangian_point(x, beta)) throw NotOnManifold("input is not a Lagrangian Grassmannian point");
    const double tol = 1e-8;
    auto check_sigma = [&](const std::vector<double>& s, const std::vector<double>& target) {
        for (std::size_t i = 0; i < s.size(); ++i)
            if (std::abs(s[i] - target[i]) > tol) throw SigmaNotIdentity("recovered Takagi values are not one");
    };
    switch (beta) {
        case 1: {
            const auto t = takagi_sym(x);
            check_sigma(t.sigma, std::vector<double>(t.sigma.size(), 1.0));
            return t.Q;
        }
        case 2: {
            const std::size_t n = x.rows() / 2;
            const CMat s = upcast<Complex>(signature_matrix(n, n));
            const auto evd = evd_sym<Complex>(hermitian_part<Complex>(s * x));
            std::vector<double> target(2 * n, 1.0);
            std::fill(target.begin() + n, target.end(), -1.0);
            check_sigma(evd.lambda, target);
            const CMat up = evd.Q.block(0, 0, 2 * n, n);
            const CMat u = hstack(up, omega(up));
            return s * u * s;
        }
        default: {
            const auto t = takagi_symplectic(x);
            check_sigma(t.sigma, std::vector<double>(t.sigma.size(), 1.0));
            return t.Q;
        }
    }
}

// ---------------------------------------------------------------------------

Target Target::flag(int beta, FlagSpec spec) {
    spec.validate();
    Target t;
    t.kind = Kind::Flag;
    t.beta = beta;
    t.n = spec.n;
    t.spec = std::move(spec);
    return t;
}

Target Target::grassmann(int beta, std::size_t k, std::size_t n) {
    Target t;
    t.kind = Kind::Grassmann;
    t.beta = beta;
    t.n = n;
    t.k = k;
    t.spec = FlagSpec::grassmann(n, k);
    return t;
}

Target Target::stiefel(int beta, std::size_t k, std::size_t n) {
    if (k < 1 || k > n) throw SpecError("Stiefel target needs 1 <= k <= n");
    Target t;
    t.kind = Kind::Stiefel;
    t.beta = beta;
    t.n = n;
    t.k = k;
    return t;
}

Target Target::lagrangian(int beta, std::size_t n) {
    if (n < 1) throw SpecError("Lagrangian target needs n >= 1");
    Target t;
    t.kind = Kind::Lagrangian;
    t.beta = beta;
    t.n = n;
    return t;
}

std::string Target::to_string() const {
    const char f = beta == 1 ? 'R' : beta == 2 ? 'C' : 'H';
    switch (kind) {
        case Kind::Flag: return std::string("Flag") + spec.to_string() + " over " + f;
        case Kind::Grassmann: return "Gr(" + std::to_string(k) + ", " + f + "^" + std::to_string(n) + ")";
        case Kind::Stiefel: return "V(" + std::to_string(k) + ", " + f + "^" + std::to_string(n) + ")";
        case Kind::Lagrangian: return std::string("LGr(") + f + "^" + std::to_string(2 * n) + ")";
    }
    return "?";
}

Route parse_route(const std::string& s) {
    if (s == "gaussian") return Route::Gaussian;
    if (s == "ginibre") return Route::Ginibre;
    if (s == "haar") return Route::Haar;
    if (s == "circular") return Route::Circular;
    if (s == "takagi") return Route::Takagi;
    if (s == "biased-haar") return Route::BiasedHaar;
    throw RouteError("unknown route '" + s + "'");
}

std::string route_name(Route r) {
    switch (r) {
        case Route::Gaussian: return "gaussian";
        case Route::Ginibre: return "ginibre";
        case Route::Haar: return "haar";
        case Route::Circular: return "circular";
        case Route::Takagi: return "takagi";
        case Route::BiasedHaar: return "biased-haar";
    }
    return "?";
}

namespace {

template <FieldTag F>
Mat<F> group_draw(std::size_t n, bool biased, RngStream& rng) {
    return biased ? sample_haar_uncorrected<F>(n, rng) : sample_haar<F>(n, rng);
}

template <FieldTag F>
AnyMat sample_real_manifold(const Target& t, Route route, RngStream& rng) {
    const bool biased = route == Route::BiasedHaar;
    switch (t.kind) {
        case Target::Kind::Flag:
        case Target::Kind::Grassmann:
            switch (route) {
                case Route::Gaussian: return flag_map(sample_gaussian<F>(t.n, rng), t.spec);
                case Route::Ginibre: return singular_map(sample_ginibre<F>(t.n, t.n, rng), t.spec).flag;
                case Route::Haar:
                case Route::BiasedHaar: return flag_point_from_vectors(group_draw<F>(t.n, biased, rng), t.spec);
                default: break;
            }
            break;
        case Target::Kind::Stiefel:
            switch (route) {
                case Route::Ginibre: return polar_stiefel(sample_ginibre<F>(t.n, t.k, rng));
                case Route::Haar:
                case Route::BiasedHaar: return group_draw<F>(t.n, biased, rng).leading_cols(t.k);
                default: break;
            }
            break;
        case Target::Kind::Lagrangian: break;
    }
    throw RouteError("route '" + route_name(route) + "' does not apply to " + t.to_string());
}

AnyMat sample_lagrangian(const Target& t, Route route, RngStream& rng) {
    switch (route) {
        case Route::Circular: return sample_circular_quotient(t.beta, t.n, rng);
        case Route::Takagi:
            if (t.beta == 1) {
                const CMat u = sample_haar<Complex>(t.n, rng);
                const CMat q = takagi_sym((u + u.transpose()) * 0.5).Q;
                return CMat(q * q.transpose());
            }
            break;
        case Route::BiasedHaar:
            switch (t.beta) {
                case 1: return lagrangian_from_vectors(sample_haar_uncorrected<Complex>(t.n, rng), 1);
                case 2: return lagrangian_from_vectors(embed_complex(sample_haar_uncorrected<Quat>(t.n, rng)), 2);
                default: return lagrangian_from_vectors(sample_haar_uncorrected<Complex>(2 * t.n, rng), 4);
            }
        default: break;
    }
    throw RouteError("route '" + route_name(route) + "' does not apply to " + t.to_string());
}

}  // namespace

AnyMat sample_uniform(const Target& t, Route route, RngStream& rng) {
    if (t.kind == Target::Kind::Lagrangian) return sample_lagrangian(t, route, rng);
    switch (t.beta) {
        case 1: return sample_real_manifold<Real>(t, route, rng);
        case 2: return sample_real_manifold<Complex>(t, route, rng);
        case 4: return sample_real_manifold<Quat>(t, route, rng);
        default: throw FieldError("beta must be 1, 2 or 4");
    }
}

bool on_manifold(const Target& t, const AnyMat& x, double tol) {
    if (t.kind == Target::Kind::Lagrangian) {
        const auto* c = std::get_if<CMat>(&x);
        const std::size_t dim = t.beta == 1 ? t.n : 2 * t.n;
        return c && c->rows() == dim && is_lagrangian_point(*c, t.beta, tol);
    }
    const int field_beta = x.index() == 0 ? 1 : x.index() == 1 ? 2 : 4;
    if (field_beta != t.beta) return false;
    return std::visit(
        [&](const auto& m) {
            if (t.kind == Target::Kind::Stiefel)
                return m.rows() == t.n && m.cols() == t.k && has_orthonormal_columns(m, tol);
            return is_flag_point(m, t.spec, tol);
        },
        x);
}

#define RMT_INSTANTIATE(F)                                                                    \
    template Mat<F> flag_map(const Mat<F>&, const FlagSpec&);                                 \
    template Mat<F> flag_point_from_vectors(const Mat<F>&, const FlagSpec&);                  \
    template Mat<F> grassmann_map(const Mat<F>&, std::size_t);                                \
    template bool is_flag_point(const Mat<F>&, const FlagSpec&, double);                      \
    template SingularMapResult<F> singular_map(const Mat<F>&, const FlagSpec&);               \
    template Mat<F> polar_stiefel(const Mat<F>&);                                             \
    template CsMapResult<F> cs_map(const Mat<F>&, std::size_t, const FlagSpec&);

RMT_INSTANTIATE(Real)
RMT_INSTANTIATE(Complex)
RMT_INSTANTIATE(Quat)

#undef RMT_INSTANTIATE

}  // namespace rmt
