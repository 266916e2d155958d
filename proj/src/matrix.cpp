#include <algorithm>
#include <sstream>

#include "rmt/matrix.hpp"

namespace rmt {

// ---------------------------------------------------------------------------
// FlagSpec

void FlagSpec::validate() const {
    if (n == 0) throw SpecError("flag spec: n must be positive");
    std::size_t prev = 0;
    for (std::size_t k : ks) {
        if (k <= prev || k >= n)
            throw SpecError("flag spec: need 0 < k_1 < ... < k_p < n, got " + to_string());
        prev = k;
    }
    if (values.size() != ks.size() + 1)
        throw SpecError("flag spec: expected " + std::to_string(ks.size() + 1) + " values, got " +
                        std::to_string(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (values[i] == values[j]) throw SpecError("flag spec: values must be pairwise distinct");
}

std::vector<std::size_t> FlagSpec::block_sizes() const {
    std::vector<std::size_t> out;
    std::size_t prev = 0;
    for (std::size_t k : ks) {
        out.push_back(k - prev);
        prev = k;
    }
    out.push_back(n - prev);
    return out;
}

std::vector<double> FlagSpec::diagonal() const {
    std::vector<double> d;
    d.reserve(n);
    const auto sizes = block_sizes();
    for (std::size_t j = 0; j < sizes.size(); ++j) d.insert(d.end(), sizes[j], values.at(j));
    return d;
}

FlagSpec FlagSpec::with_default_values(std::size_t n, std::vector<std::size_t> ks) {
    FlagSpec s{n, std::move(ks), {}};
    const std::size_t p = s.ks.size();
    for (std::size_t j = 1; j <= p + 1; ++j) s.values.push_back(static_cast<double>(p + 2 - j));
    s.validate();
    return s;
}

FlagSpec FlagSpec::complete(std::size_t n) {
    std::vector<std::size_t> ks;
    for (std::size_t k = 1; k < n; ++k) ks.push_back(k);
    return with_default_values(n, std::move(ks));
}

FlagSpec FlagSpec::grassmann(std::size_t n, std::size_t k) {
    FlagSpec s{n, {k}, {1.0, -1.0}};
    s.validate();
    return s;
}

std::string FlagSpec::to_string() const {
    std::ostringstream os;
    os << "(n=" << n << "; k=";
    for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? "," : "") << ks[i];
    os << "; a=";
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------

RMat real_part(const CMat& x, double tol) {
    RMat r(x.rows(), x.cols());
    double imag2 = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            r(i, j) = x(i, j).real();
            imag2 += x(i, j).imag() * x(i, j).imag();
        }
    if (std::sqrt(imag2) > tol) throw StructureError("matrix has a non-negligible imaginary part");
    return r;
}

CMat embed_complex(const HMat& x) {
    const std::size_t m = x.rows(), n = x.cols();
    CMat c(2 * m, 2 * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto [z, w] = quaternion_to_pair(x(i, j));
            c(i, j) = z;
            c(i, n + j) = -std::conj(w);
            c(m + i, j) = w;
            c(m + i, n + j) = std::conj(z);
        }
    return c;
}

HMat extract_quaternion(const CMat& x, double tol) {
    if (x.rows() % 2 || x.cols() % 2) throw StructureError("extract_quaternion: odd dimension");
    const std::size_t m = x.rows() / 2, n = x.cols() / 2;
    HMat q(m, n);
    double dev2 = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto z = x(i, j), w = x(m + i, j);
            dev2 += std::norm(x(i, n + j) + std::conj(w)) + std::norm(x(m + i, n + j) - std::conj(z));
            q(i, j) = quaternion_from_pair(z, w);
        }
    if (std::sqrt(dev2) > tol) throw StructureError("extract_quaternion: input is not in the image of chi");
    return q;
}

RMat symplectic_j(std::size_t n) {
    RMat j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = -1.0;
        j(n + i, i) = 1.0;
    }
    return j;
}

RMat signature_matrix(std::size_t m, std::size_t n) {
    RMat s(m + n, m + n);
    for (std::size_t i = 0; i < m + n; ++i) s(i, i) = i < m ? 1.0 : -1.0;
    return s;
}

RMat make_delta(const FlagSpec& spec) {
    spec.validate();
    const auto d = spec.diagonal();
    return RMat::diagonal(d);
}

// ---------------------------------------------------------------------------

template <FieldTag F>
Mat<F> adjoint(const Mat<F>& x, AdjointKind kind) {
    switch (kind) {
        case AdjointKind::T: return x.transpose();
        case AdjointKind::H: return x.adjoint();
        case AdjointKind::S:
        case AdjointKind::L: break;
    }
    if constexpr (std::is_same_v<F, Quat>) {
        throw FieldError("symplectic and Lagrangian adjoints are defined for real or complex matrices");
    } else {
        if (!x.is_square() || x.rows() % 2)
            throw DimensionError("symplectic/Lagrangian adjoint needs a square matrix of even dimension");
        const std::size_t n = x.rows() / 2;
        if (kind == AdjointKind::S) {
            const auto j = upcast<F>(symplectic_j(n));
            return -(j * x.transpose() * j);
        }
        // I_{n,n} X^H I_{n,n}: flip the sign of the off-diagonal blocks.
        Mat<F> y = x.adjoint();
        for (std::size_t r = 0; r < 2 * n; ++r)
            for (std::size_t c = 0; c < 2 * n; ++c)
                if ((r < n) != (c < n)) y(r, c) = -y(r, c);
        return y;
    }
}

template RMat adjoint(const RMat&, AdjointKind);
template CMat adjoint(const CMat&, AdjointKind);
template HMat adjoint(const HMat&, AdjointKind);

template <FieldTag F>
double symplectic_form_residual(const Mat<F>& x) {
    if (!x.is_square() || x.rows() % 2) throw DimensionError("symplectic form needs even square input");
    const auto j = upcast<F>(symplectic_j(x.rows() / 2));
    return (x.transpose() * j * x - j).frobenius_norm();
}

template double symplectic_form_residual(const RMat&);
template double symplectic_form_residual(const CMat&);

bool is_lagrangian_symmetric(const CMat& x, double tol) {
    return x.is_square() && x.rows() % 2 == 0 && adjoint_residual(x, AdjointKind::L) <= tol;
}

bool is_symplectic_symmetric(const CMat& x, double tol) {
    return x.is_square() && x.rows() % 2 == 0 && adjoint_residual(x, AdjointKind::S) <= tol;
}

bool is_compact_symplectic(const CMat& x, double tol) {
    return is_unitary(x, tol) && x.rows() % 2 == 0 && symplectic_form_residual(x) <= tol;
}

CMat omega(const CMat& v) {
    if (v.rows() % 2) throw DimensionError("omega: odd row count");
    return upcast<Complex>(symplectic_j(v.rows() / 2)) * v.conjugate();
}

}  // namespace rmt
