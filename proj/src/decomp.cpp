#include "rmt/decomp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "eigen_bridge.hpp"

namespace rmt {

namespace {

template <FieldTag F>
Mat<F> scale_columns(Mat<F> q, const std::vector<double>& d) {
    for (std::size_t j = 0; j < q.cols(); ++j) q.scale_col_right(j, scalar_t<F>(d[j]));
    return q;
}

template <FieldTag F>
double column_norm(const Mat<F>& a, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += scalar_abs2(a(i, j));
    return std::sqrt(s);
}

/// v minus its projection onto the orthonormal columns of `basis`, done twice.
template <FieldTag F>
Mat<F> project_out(Mat<F> v, const Mat<F>& basis) {
    if (basis.cols() == 0) return v;
    for (int pass = 0; pass < 2; ++pass) v -= basis * (basis.adjoint() * v);
    return v;
}

/// From a basis of a subspace that is closed under `partner`, choose `count`
/// unit vectors v_t so that {v_t, partner(v_t)} is an orthonormal basis
/// (or, without a partner, just an orthonormal basis). Candidates are the
/// projections of the standard basis vectors, largest residual first, so
/// the choice is deterministic and prefers coordinate-aligned vectors.
template <FieldTag F, class Partner>
Mat<F> pick_partnered(const Mat<F>& basis, std::size_t count, Partner partner, bool paired) {
    const std::size_t d = basis.rows();
    const Mat<F> bh = basis.adjoint();
    Mat<F> chosen(d, 0);
    Mat<F> out(d, count);
    for (std::size_t t = 0; t < count; ++t) {
        Mat<F> best;
        double best_norm = -1.0;
        for (std::size_t i = 0; i < d; ++i) {
            Mat<F> cand = basis * bh.col(i);
            cand = project_out(cand, chosen);
            const double nrm = cand.frobenius_norm();
            if (nrm > best_norm + 1e-12) {
                best_norm = nrm;
                best = std::move(cand);
            }
        }
        if (best_norm <= 0.0) throw std::logic_error("pick_partnered: subspace exhausted");
        Mat<F> v = best * (1.0 / best_norm);
        out.set_block(0, t, v);
        chosen = hstack(chosen, v);
        if (paired) {
            Mat<F> w = project_out(partner(v), chosen);
            w *= 1.0 / w.frobenius_norm();
            chosen = hstack(chosen, w);
        }
    }
    return out;
}

/// Consecutive index ranges [b, e) of a descending sequence whose neighbours
/// differ by at most tol; ranges of odd size absorb the following range.
std::vector<std::pair<std::size_t, std::size_t>> even_clusters(const std::vector<double>& v, double tol) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t b = 0;
    while (b < v.size()) {
        std::size_t e = b + 1;
        while (e < v.size() && (v[e - 1] - v[e] <= tol || (e - b) % 2 == 1)) ++e;
        out.emplace_back(b, e);
        b = e;
    }
    return out;
}

std::pair<std::vector<double>, Eigen::MatrixXd> eig_desc(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    const auto n = m.rows();
    std::vector<double> vals(n);
    Eigen::MatrixXd vecs(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        vals[i] = es.eigenvalues()(n - 1 - i);
        vecs.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return {vals, vecs};
}

std::pair<std::vector<double>, Eigen::MatrixXcd> eig_desc(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    const auto n = m.rows();
    std::vector<double> vals(n);
    Eigen::MatrixXcd vecs(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        vals[i] = es.eigenvalues()(n - 1 - i);
        vecs.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return {vals, vecs};
}

HMat quaternion_column(const CMat& v) {
    const std::size_t n = v.rows() / 2;
    HMat q(n, 1);
    for (std::size_t i = 0; i < n; ++i) q(i, 0) = quaternion_from_pair(v(i, 0), v(n + i, 0));
    return q;
}

/// Reorder columns (and values) so values are descending; stable.
template <FieldTag F>
void sort_descending(std::vector<double>& vals, Mat<F>& a, Mat<F>* b) {
    std::vector<std::size_t> idx(vals.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return vals[i] > vals[j]; });
    auto permute = [&](Mat<F>& m) {
        Mat<F> p(m.rows(), m.cols());
        for (std::size_t j = 0; j < idx.size(); ++j) p.set_block(0, j, m.col(idx[j]));
        m = std::move(p);
    };
    std::vector<double> sorted(vals.size());
    for (std::size_t j = 0; j < idx.size(); ++j) sorted[j] = vals[idx[j]];
    vals = std::move(sorted);
    permute(a);
    if (b) permute(*b);
}

template <FieldTag F>
void require_self_adjoint(const Mat<F>& x) {
    if (!x.is_square()) throw NotSelfAdjoint("matrix is not square");
    if (!is_self_adjoint(x)) throw NotSelfAdjoint("X != X^H beyond tolerance");
}

}  // namespace

// ---------------------------------------------------------------------------

template <FieldTag F>
Mat<F> EvdResult<F>::reconstruct() const {
    return scale_columns(Q, lambda) * Q.adjoint();
}

template <FieldTag F>
Mat<F> SvdResult<F>::reconstruct() const {
    return scale_columns(U, sigma) * V.adjoint();
}

template <FieldTag F>
Mat<F> CsResult<F>::middle() const {
    const std::size_t k = this->k(), n = this->n();
    Mat<F> m = Mat<F>::identity(n);
    for (std::size_t i = 0; i < k; ++i) {
        m(i, i) = c[i];
        m(k + i, k + i) = c[i];
        m(i, k + i) = s[i];
        m(k + i, i) = -s[i];
    }
    return m;
}

template <FieldTag F>
Mat<F> CsResult<F>::reconstruct() const {
    return block_diagonal(U1, U2) * middle() * block_diagonal(V1, V2).adjoint();
}

CMat TakagiResult::reconstruct(AdjointKind kind) const {
    return scale_columns(Q, sigma) * adjoint(Q, kind);
}

CMat YoulaResult::middle() const {
    const std::size_t n = U.rows();
    CMat b(n, n);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        b(2 * i, 2 * i + 1) = -sigma[i];
        b(2 * i + 1, 2 * i) = sigma[i];
    }
    return b;
}

CMat YoulaResult::reconstruct() const { return U * middle() * U.transpose(); }

// ---------------------------------------------------------------------------

template <FieldTag F>
void canonicalize_gauge(Mat<F>& q, Mat<F>* paired) {
    for (std::size_t j = 0; j < q.cols(); ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < q.rows(); ++i) {
            const double a = scalar_abs2(q(i, j));
            if (a > best * (1.0 + 1e-12)) {
                best = a;
                arg = i;
            }
        }
        if (best <= 0.0) continue;
        const scalar_t<F> x = q(arg, j);
        scalar_t<F> d = scalar_conj(x) * (1.0 / std::sqrt(best));
        q.scale_col_right(j, d);
        q(arg, j) = scalar_t<F>(std::sqrt(best));
        if (paired) paired->scale_col_right(j, d);
    }
}

template <FieldTag F>
Mat<F> complete_orthonormal(const Mat<F>& a, std::size_t target) {
    Mat<F> out = a;
    const std::size_t d = a.rows();
    if (target > d) throw DimensionError("complete_orthonormal: target exceeds dimension");
    while (out.cols() < target) {
        Mat<F> best;
        double best_norm = -1.0;
        for (std::size_t i = 0; i < d; ++i) {
            Mat<F> e(d, 1);
            e(i, 0) = scalar_t<F>(1.0);
            Mat<F> r = project_out(e, out);
            const double nrm = r.frobenius_norm();
            if (nrm > best_norm + 1e-12) {
                best_norm = nrm;
                best = std::move(r);
            }
        }
        out = hstack(out, best * (1.0 / best_norm));
    }
    return out;
}

template <FieldTag F>
Mat<F> orthonormalize_columns(const Mat<F>& a) {
    Mat<F> q(a.rows(), 0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Mat<F> v = project_out(a.col(j), q);
        const double nrm = v.frobenius_norm();
        if (nrm == 0.0) throw RankDeficient("orthonormalize_columns: dependent columns");
        q = hstack(q, v * (1.0 / nrm));
    }
    return q;
}

RMat perfect_shuffle(std::size_t n) {
    RMat p(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        p(2 * i, i) = 1.0;
        p(2 * i + 1, n + i) = 1.0;
    }
    return p;
}

// ---------------------------------------------------------------------------
// EVD

template <FieldTag F>
EvdResult<F> evd_sym(const Mat<F>& x) {
    require_self_adjoint(x);
    EvdResult<F> r;
    if constexpr (std::is_same_v<F, Quat>) {
        const CMat c = embed_complex(x);
        const auto [vals, vecs] = eig_desc(detail::to_eigen(c));
        const CMat e = detail::from_eigen(vecs);
        const std::size_t n = x.rows();
        double scale = 1.0;
        for (double v : vals) scale = std::max(scale, std::abs(v));
        r.Q = HMat(n, n);
        std::size_t col = 0;
        for (const auto& [b, end] : even_clusters(vals, 1e-9 * scale)) {
            const CMat basis = e.block(0, b, 2 * n, end - b);
            const CMat picked = pick_partnered(basis, (end - b) / 2, omega, true);
            for (std::size_t t = 0; t < picked.cols(); ++t, ++col) {
                const CMat v = picked.col(t);
                r.lambda.push_back(re_trace_product(v.adjoint(), c * v));
                r.Q.set_block(0, col, quaternion_column(v));
            }
        }
        sort_descending(r.lambda, r.Q, static_cast<HMat*>(nullptr));
    } else {
        auto [vals, vecs] = eig_desc(detail::to_eigen(x));
        r.lambda = std::move(vals);
        r.Q = detail::from_eigen(vecs);
    }
    canonicalize_gauge(r.Q);
    return r;
}

// ---------------------------------------------------------------------------
// SVD

template <FieldTag F>
SvdResult<F> svd_thin(const Mat<F>& y) {
    if (y.rows() < y.cols()) throw DimensionError("svd_thin needs m >= n; pass the adjoint");
    SvdResult<F> r;
    if constexpr (std::is_same_v<F, Quat>) {
        const std::size_t m = y.rows(), n = y.cols();
        const CMat c = embed_complex(y);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(c), Eigen::ComputeThinU | Eigen::ComputeThinV);
        std::vector<double> sv(svd.singularValues().data(), svd.singularValues().data() + 2 * n);
        const CMat vfull = detail::from_eigen(Eigen::MatrixXcd(svd.matrixV()));
        const double smax = sv.empty() ? 0.0 : sv.front();
        const double tolz = 1e-12 * smax;
        r.U = HMat(m, 0);
        r.V = HMat(n, n);
        std::size_t col = 0;
        for (const auto& [b, end] : even_clusters(sv, 1e-9 * std::max(1.0, smax))) {
            const CMat basis = vfull.block(0, b, 2 * n, end - b);
            const CMat picked = pick_partnered(basis, (end - b) / 2, omega, true);
            for (std::size_t t = 0; t < picked.cols(); ++t, ++col) {
                const CMat v = picked.col(t);
                const CMat yv = c * v;
                const double s = yv.frobenius_norm();
                r.V.set_block(0, col, quaternion_column(v));
                if (s > tolz && s > 0.0) {
                    r.sigma.push_back(s);
                    r.U = hstack(r.U, quaternion_column(yv * (1.0 / s)));
                } else {
                    r.sigma.push_back(0.0);
                }
            }
        }
        r.U = complete_orthonormal(r.U, n);
        sort_descending(r.sigma, r.U, &r.V);
    } else {
        using EM = std::conditional_t<std::is_same_v<F, Real>, Eigen::MatrixXd, Eigen::MatrixXcd>;
        Eigen::JacobiSVD<EM> svd(detail::to_eigen(y), Eigen::ComputeThinU | Eigen::ComputeThinV);
        r.sigma.assign(svd.singularValues().data(), svd.singularValues().data() + y.cols());
        r.U = detail::from_eigen(EM(svd.matrixU()));
        r.V = detail::from_eigen(EM(svd.matrixV()));
    }
    canonicalize_gauge(r.V, &r.U);
    return r;
}

// ---------------------------------------------------------------------------
// CS

template <FieldTag F>
CsResult<F> cs_decompose(const Mat<F>& q, std::size_t k) {
    if (!q.is_square()) throw DimensionError("cs_decompose: matrix is not square");
    const std::size_t n = q.rows();
    if (k < 1 || 2 * k > n) throw DimensionError("cs_decompose: need 1 <= k <= n/2");
    if (!is_unitary(q)) throw NotUnitary("cs_decompose: Q^H Q != I beyond tolerance");

    const Mat<F> q11 = q.block(0, 0, k, k);
    const Mat<F> q12 = q.block(0, k, k, n - k);
    const Mat<F> q21 = q.block(k, 0, n - k, k);
    const Mat<F> q22 = q.block(k, k, n - k, n - k);

    auto svd = svd_thin(q11);
    CsResult<F> r;
    r.U1 = std::move(svd.U);
    r.V1 = std::move(svd.V);
    r.c = svd.sigma;
    for (double& c : r.c) c = std::min(c, 1.0);
    for (std::size_t i = 1; i < k; ++i)
        if (r.c[i - 1] - r.c[i] < tau_gap) throw DegenerateCS("cosine-sine values are not distinct");

    const Mat<F> w = q21 * r.V1;
    std::vector<double> inv_s(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double s = column_norm(w, i);
        if (s < tau_gap) throw DegenerateCS("a sine value is (numerically) zero");
        r.s.push_back(s);
        inv_s[i] = 1.0 / s;
    }

    const Mat<F> u2a = orthonormalize_columns(scale_columns(w, inv_s) * -1.0);
    r.U2 = complete_orthonormal(u2a, n - k);
    const Mat<F> v2a = scale_columns(q12.adjoint() * r.U1, inv_s);
    const Mat<F> v2b = q22.adjoint() * r.U2.block(0, k, n - k, n - 2 * k);
    r.V2 = orthonormalize_columns(hstack(v2a, v2b));
    return r;
}

// ---------------------------------------------------------------------------
// Takagi family

TakagiResult takagi_sym(const CMat& z) {
    if (!z.is_square()) throw NotSymmetric("matrix is not square");
    if (!is_symmetric(z)) throw NotSymmetric("Z != Z^T beyond tolerance");
    const std::size_t n = z.rows();
    RMat m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double a = z(i, j).real(), b = z(i, j).imag();
            m(i, j) = a;
            m(i, n + j) = b;
            m(n + i, j) = b;
            m(n + i, n + j) = -a;
        }
    const auto [vals, vecs] = eig_desc(detail::to_eigen(m));
    const RMat e = detail::from_eigen(vecs);
    const double tolz = 1e-12 * std::max(std::abs(vals.front()), std::abs(vals.back()));

    TakagiResult r;
    r.Q = CMat(n, n);
    auto put = [&](std::size_t col, const RMat& v) {
        for (std::size_t i = 0; i < n; ++i) r.Q(i, col) = {v(i, 0), v(n + i, 0)};
    };
    std::size_t p = 0;
    while (p < n && vals[p] > tolz) {
        put(p, e.col(p));
        r.sigma.push_back(vals[p]);
        ++p;
    }
    if (p < n) {
        std::vector<std::size_t> zero;
        for (std::size_t i = 0; i < 2 * n; ++i)
            if (std::abs(vals[i]) <= tolz) zero.push_back(i);
        RMat basis(2 * n, zero.size());
        for (std::size_t t = 0; t < zero.size(); ++t) basis.set_block(0, t, e.col(zero[t]));
        auto partner = [n](const RMat& v) {
            RMat w(2 * n, 1);
            for (std::size_t i = 0; i < n; ++i) {
                w(i, 0) = -v(n + i, 0);
                w(n + i, 0) = v(i, 0);
            }
            return w;
        };
        const RMat picked = pick_partnered(basis, n - p, partner, true);
        for (std::size_t t = 0; t < picked.cols(); ++t) {
            put(p + t, picked.col(t));
            r.sigma.push_back(0.0);
        }
    }
    return r;
}

YoulaResult youla_skew(const CMat& z) {
    if (!z.is_square()) throw NotSkewSymmetric("matrix is not square");
    if (!is_skew_symmetric(z, tau_mem(z))) throw NotSkewSymmetric("Z != -Z^T beyond tolerance");
    const std::size_t n = z.rows();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(z), Eigen::ComputeFullU);
    const std::vector<double> sv(svd.singularValues().data(), svd.singularValues().data() + n);
    const CMat u = detail::from_eigen(Eigen::MatrixXcd(svd.matrixU()));
    const double smax = n ? sv.front() : 0.0;
    const double tolz = 1e-12 * smax;

    YoulaResult r;
    r.U = CMat(n, 0);
    std::size_t nonzero = 0;
    while (nonzero < n && sv[nonzero] > tolz && sv[nonzero] > 0.0) ++nonzero;
    const std::vector<double> head(sv.begin(), sv.begin() + nonzero);
    for (const auto& [b, e] : even_clusters(head, 1e-9 * std::max(1.0, smax))) {
        const CMat basis = u.block(0, b, n, e - b);
        auto partner = [&z](const CMat& v) { return z * v.conjugate(); };
        const CMat picked = pick_partnered(basis, (e - b) / 2, partner, true);
        for (std::size_t t = 0; t < picked.cols(); ++t) {
            const CMat u1 = picked.col(t);
            const CMat zu = z * u1.conjugate();
            const double s = zu.frobenius_norm();
            r.sigma.push_back(s);
            r.U = hstack(hstack(r.U, u1), zu * (1.0 / s));
        }
    }
    if (r.U.cols() < n) {
        const CMat null = u.block(0, r.U.cols(), n, n - r.U.cols());
        r.U = hstack(r.U, pick_partnered(null, null.cols(), [](const CMat& v) { return v; }, false));
    }
    return r;
}

TakagiResult takagi_lagrangian(const CMat& x) {
    if (!x.is_square() || x.rows() % 2) throw NotLagrangianSymmetric("matrix is not square of even dimension");
    if (!is_lagrangian_symmetric(x)) throw NotLagrangianSymmetric("X != X^L beyond tolerance");
    const std::size_t n = x.rows() / 2;
    const CMat s = upcast<Complex>(signature_matrix(n, n));
    const auto evd = evd_sym<Complex>(s * x);
    TakagiResult r;
    r.Q = s * evd.Q;
    r.sigma = evd.lambda;
    for (std::size_t i = n; i < 2 * n; ++i) r.sigma[i] = -r.sigma[i];
    return r;
}

TakagiResult takagi_symplectic(const CMat& x) {
    if (!x.is_square() || x.rows() % 2) throw NotSymplecticSymmetric("matrix is not square of even dimension");
    if (!is_symplectic_symmetric(x)) throw NotSymplecticSymmetric("X != X^S beyond tolerance");
    const std::size_t n = x.rows() / 2;
    const RMat j = symplectic_j(n);
    const RMat p = perfect_shuffle(n);
    RMat blocks(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        blocks(2 * i, 2 * i + 1) = -1.0;
        blocks(2 * i + 1, 2 * i) = 1.0;
    }
    if (!(p * j * p.transpose() == blocks)) throw std::logic_error("perfect shuffle does not block-diagonalize J");

    const CMat jc = upcast<Complex>(j);
    const auto y = youla_skew(jc * x);
    TakagiResult r;
    r.Q = jc.transpose() * y.U * upcast<Complex>(p);
    r.sigma.assign(2 * n, 0.0);
    for (std::size_t i = 0; i < y.r(); ++i) {
        r.sigma[i] = y.sigma[i];
        r.sigma[n + i] = y.sigma[i];
    }
    return r;
}

// ---------------------------------------------------------------------------

template <FieldTag F>
Mat<F> inv_sqrt_psd(const Mat<F>& h) {
    const auto evd = evd_sym(h);
    const double lmax = evd.lambda.empty() ? 0.0 : evd.lambda.front();
    const double tau_pd = 1e-12 * std::max(1.0, std::abs(lmax));
    std::vector<double> d;
    for (double l : evd.lambda) {
        if (l <= tau_pd) throw NotPositiveDefinite("smallest eigenvalue is not above tolerance");
        d.push_back(1.0 / std::sqrt(l));
    }
    return scale_columns(evd.Q, d) * evd.Q.adjoint();
}

#define RMT_INSTANTIATE(F)                                                  \
    template struct EvdResult<F>;                                           \
    template struct SvdResult<F>;                                           \
    template struct CsResult<F>;                                            \
    template EvdResult<F> evd_sym(const Mat<F>&);                           \
    template SvdResult<F> svd_thin(const Mat<F>&);                          \
    template CsResult<F> cs_decompose(const Mat<F>&, std::size_t);          \
    template Mat<F> inv_sqrt_psd(const Mat<F>&);                            \
    template void canonicalize_gauge(Mat<F>&, Mat<F>*);                     \
    template Mat<F> complete_orthonormal(const Mat<F>&, std::size_t);       \
    template Mat<F> orthonormalize_columns(const Mat<F>&);

RMT_INSTANTIATE(Real)
RMT_INSTANTIATE(Complex)
RMT_INSTANTIATE(Quat)

#undef RMT_INSTANTIATE

}  // namespace rmt
