#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/manifolds.hpp"
#include "rmt/matrix.hpp"
#include "rmt/stats.hpp"
#include "rmt/volumes.hpp"

namespace rmt {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Matrix files
//
// {"field": "R"|"C"|"H", "rows": r, "cols": c, "data": [...]}, row-major;
// real entries are numbers, complex entries [re, im], quaternion entries
// [a, b, c, d].

json matrix_to_json(const AnyMat& x);

/// ParseError on a malformed object, wrong arity or wrong data length.
AnyMat matrix_from_json(const json& j);

/// One JSON object per line with 17 significant digits, so the round trip is exact.
std::string dump_exact(const json& j);

void write_matrix_file(const std::string& path, const AnyMat& x);
AnyMat read_matrix_file(const std::string& path);

// ---------------------------------------------------------------------------
// Sample batches (JSON lines): a header line
// {"descriptor": ..., "kind": "ensemble"|"manifold", "seed": s, "count": n}
// followed by `count` matrix lines.

struct SampleBatch {
    std::string descriptor;
    std::string kind;
    std::uint64_t seed = 0;
    std::vector<AnyMat> matrices;
};

void write_sample_batch(std::ostream& os, const SampleBatch& batch);

/// ParseError if a line does not parse or the count disagrees with the header.
SampleBatch read_sample_batch(std::istream& is);

/// A bare matrix file or a sample batch, whichever the file holds.
std::vector<AnyMat> read_matrices(const std::string& path);

// ---------------------------------------------------------------------------
// Reports

json report_to_json(const TestReport& r);

// ---------------------------------------------------------------------------
// Descriptors
//
//   descriptor := name [ ":" item { "," item } ]
//   item       := key "=" value | value
//
// A bare value extends the list of the preceding key, so "k=1,2" gives
// k = [1, 2]. Names and keys are case-insensitive; field values are R, C, H.

struct Descriptor {
    std::string name;
    std::map<std::string, std::vector<std::string>> params;
    std::string text;

    bool has(const std::string& key) const { return params.count(key) > 0; }
    /// ParseError if absent, repeated, or not an unsigned integer.
    std::size_t get_size(const std::string& key) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    std::vector<std::size_t> get_sizes(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    /// F=R|C|H, or kind=R|C|H for Lagrangian descriptors, as beta 1, 2, 4.
    int get_beta(const std::string& key) const;
    /// ParseError if a key outside `allowed` is present.
    void require_keys(const std::vector<std::string>& allowed) const;
};

/// ParseError on malformed syntax.
Descriptor parse_descriptor(const std::string& s);

/// goe|gue|gse:n, loe|lue|lse:m,n, joe|jue|jse:l,m,n, ginoe|ginue|ginse:m,n,
/// cre|cue|cqe:n, coe|cle|cse:n. ParseError for unknown names and keys,
/// ParamError for out-of-range values.
EnsembleId ensemble_from_descriptor(const Descriptor& d);

/// flag:F,n,k[,a], fullflag:F,n, grassmann:F,n,k, stiefel:F,n,k, lgr:kind,n.
Target target_from_descriptor(const Descriptor& d);

/// group:F,n, stiefel:F,n,k, grassmann:F,n,k, flag:F,n,k, fullflag:F,n, lgr:kind,n.
VolumeQuery volume_from_descriptor(const Descriptor& d);

/// Predicates for `check`: any manifold descriptor (n and k may be left out
/// and are then read off the matrix), lagrangian:kind (alias of lgr),
/// self-adjoint, symmetric, skew-symmetric, unitary, lagrangian-symmetric,
/// symplectic-symmetric.
bool check_predicate(const Descriptor& d, const AnyMat& x);

// ---------------------------------------------------------------------------
// Decompositions

/// Factor bundle of evd|svd|cs|takagi|takagi-lagrangian|takagi-symplectic|youla
/// with the relative reconstruction residual. `k` is the CS block size.
/// Decomposition errors propagate; FieldError if the field does not apply.
json decompose_to_json(const std::string& kind, const AnyMat& x, std::size_t k);

}  // namespace rmt
