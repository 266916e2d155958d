#pragma once

#include <string>

#include "rmt/ensembles.hpp"
#include "rmt/flag_spec.hpp"
#include "rmt/matrix.hpp"

namespace rmt {

/// phi: X -> Q Delta_a Q^H with Q from the descending eigendecomposition.
/// DegenerateSpectrum if two eigenvalues are closer than tau_gap * max(1, |X|).
template <FieldTag F>
Mat<F> flag_map(const Mat<F>& x, const FlagSpec& spec);

/// Q Delta_a Q^H for a given unitary Q (Haar route and gauge tests).
template <FieldTag F>
Mat<F> flag_point_from_vectors(const Mat<F>& q, const FlagSpec& spec);

/// phi_k with Delta = I_{k, n-k}.
template <FieldTag F>
Mat<F> grassmann_map(const Mat<F>& x, std::size_t k);

/// P = P^H and the sorted spectrum of P matches the diagonal of Delta_a, within tol.
template <FieldTag F>
bool is_flag_point(const Mat<F>& p, const FlagSpec& spec, double tol);

template <FieldTag F>
struct SingularMapResult {
    Mat<F> stiefel;  // U V^H, m x n
    Mat<F> flag;     // V Delta_a V^H, n x n
};

/// xi: Y -> (U V^H, V Delta_a V^H) for m >= n with distinct singular values.
template <FieldTag F>
SingularMapResult<F> singular_map(const Mat<F>& y, const FlagSpec& spec);

/// rho: Y -> U V^H, the orthonormal polar factor. RankDeficient if Y is
/// (numerically) rank deficient.
template <FieldTag F>
Mat<F> polar_stiefel(const Mat<F>& y);

template <FieldTag F>
struct CsMapResult {
    Mat<F> first;   // U1 (V2)_kk^H
    Mat<F> second;  // V1 (V2)_kk^H
    Mat<F> third;   // U2 V2^H
    Mat<F> fourth;  // V2 Delta_a V2^H
};

/// Flag spec used by cs_map on F^{n-k}: k_j = j for j = 1..min(k, n-k-1),
/// with descending integer values.
FlagSpec cs_flag_spec(std::size_t n, std::size_t k);

/// zeta: Q -> (U1 (V2)_kk^H, V1 (V2)_kk^H, U2 V2^H, V2 Delta_a V2^H).
template <FieldTag F>
CsMapResult<F> cs_map(const Mat<F>& q, std::size_t k, const FlagSpec& spec);

template <FieldTag F>
CsMapResult<F> cs_map(const Mat<F>& q, std::size_t k) {
    return cs_map(q, k, cs_flag_spec(q.rows(), k));
}

/// Lagrangian Grassmannian kinds: R (Q Q^T, Q in U(n)), C (Q Q^L, Q in Sp(n)),
/// H (Q Q^S, Q in U(2n)). Indexed by beta = 1, 2, 4.
bool is_lagrangian_point(const CMat& x, int beta, double tol);
inline bool is_lagrangian_point(const CMat& x, int beta) { return is_lagrangian_point(x, beta, tau_mem(x)); }

/// Q Q^T, Q Q^L or Q Q^S.
CMat lagrangian_from_vectors(const CMat& q, int beta);

/// A representative Q with lagrangian_from_vectors(Q, beta) = X.
/// NotOnManifold if X fails the predicate, SigmaNotIdentity if the recovered
/// Takagi values are not all one.
CMat takagi_vectors(const CMat& x, int beta);

// ---------------------------------------------------------------------------
// Uniform sampling on the manifolds.

struct Target {
    enum class Kind { Flag, Stiefel, Grassmann, Lagrangian };

    Kind kind = Kind::Flag;
    int beta = 1;
    std::size_t n = 0;
    std::size_t k = 0;
    FlagSpec spec;  // Flag and Grassmann

    static Target flag(int beta, FlagSpec spec);
    static Target grassmann(int beta, std::size_t k, std::size_t n);
    static Target stiefel(int beta, std::size_t k, std::size_t n);
    static Target lagrangian(int beta, std::size_t n);

    std::string to_string() const;
};

/// gaussian: phi of a Gaussian draw (flag, Grassmann).
/// ginibre:  rho of Ginibre(n, k) (Stiefel) or the flag part of xi of Ginibre(n, n).
/// haar:     Q Delta Q^H or the first k columns of a Haar Q (flag, Grassmann, Stiefel).
/// circular: COE/CLE/CSE draw (Lagrangian).
/// takagi:   Q Q^T with Q from takagi_sym(U + U^T), U ~ CUE(n) (Lagrangian, beta = 1).
/// biased-haar: the haar or circular construction with an uncorrected QR
///           factor in place of the Haar draw; a negative control, not uniform.
enum class Route { Gaussian, Ginibre, Haar, Circular, Takagi, BiasedHaar };

Route parse_route(const std::string& s);
std::string route_name(Route r);

/// RouteError if the route does not apply to the target.
AnyMat sample_uniform(const Target& target, Route route, RngStream& rng);

/// Membership predicate of the target's submanifold.
bool on_manifold(const Target& target, const AnyMat& x, double tol);

}  // namespace rmt
