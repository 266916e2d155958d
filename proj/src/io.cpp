#include "rmt/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "rmt/decomp.hpp"

namespace rmt {

namespace {

const char* field_tag(std::size_t index) { return index == 0 ? "R" : index == 1 ? "C" : "H"; }

template <FieldTag F>
json entries_to_json(const Mat<F>& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& v = m(i, j);
            if constexpr (std::is_same_v<F, Real>)
                data.push_back(v);
            else if constexpr (std::is_same_v<F, Complex>)
                data.push_back({v.real(), v.imag()});
            else
                data.push_back({v.a, v.b, v.c, v.d});
        }
    return data;
}

double number(const json& v) {
    if (!v.is_number()) throw ParseError("matrix entry is not a number");
    return v.get<double>();
}

template <FieldTag F>
Mat<F> entries_from_json(const json& data, std::size_t rows, std::size_t cols) {
    constexpr std::size_t arity = std::is_same_v<F, Real> ? 1 : std::is_same_v<F, Complex> ? 2 : 4;
    Mat<F> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const json& e = data[i * cols + j];
            if constexpr (arity == 1) {
                m(i, j) = number(e);
            } else {
                if (!e.is_array() || e.size() != arity) throw ParseError("matrix entry arity does not match the field");
                if constexpr (arity == 2)
                    m(i, j) = {number(e[0]), number(e[1])};
                else
                    m(i, j) = Quaternion(number(e[0]), number(e[1]), number(e[2]), number(e[3]));
            }
        }
    return m;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

}  // namespace

json matrix_to_json(const AnyMat& x) {
    return std::visit(
        [&](const auto& m) {
            return json{{"field", field_tag(x.index())}, {"rows", m.rows()}, {"cols", m.cols()},
                        {"data", entries_to_json(m)}};
        },
        x);
}

AnyMat matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix file is not a JSON object");
    for (const char* key : {"field", "rows", "cols", "data"})
        if (!j.contains(key)) throw ParseError(std::string("matrix file lacks \"") + key + "\"");
    if (!j["field"].is_string()) throw ParseError("\"field\" must be a string");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw ParseError("\"rows\" and \"cols\" must be non-negative integers");
    if (!j["data"].is_array()) throw ParseError("\"data\" must be an array");
    const auto rows = j["rows"].get<std::size_t>(), cols = j["cols"].get<std::size_t>();
    if (j["data"].size() != rows * cols) throw ParseError("data length differs from rows * cols");
    const std::string f = j["field"].get<std::string>();
    if (f == "R") return entries_from_json<Real>(j["data"], rows, cols);
    if (f == "C") return entries_from_json<Complex>(j["data"], rows, cols);
    if (f == "H") return entries_from_json<Quat>(j["data"], rows, cols);
    throw ParseError("unknown field tag '" + f + "'");
}

std::string dump_exact(const json& j) {
    // nlohmann prints doubles with max_digits10 = 17 significant digits.
    return j.dump();
}

void write_matrix_file(const std::string& path, const AnyMat& x) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open '" + path + "' for writing");
    os << dump_exact(matrix_to_json(x)) << '\n';
}

AnyMat read_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open '" + path + "'");
    try {
        return matrix_from_json(json::parse(is));
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
}

void write_sample_batch(std::ostream& os, const SampleBatch& batch) {
    const json header{{"descriptor", batch.descriptor},
                      {"kind", batch.kind},
                      {"seed", batch.seed},
                      {"count", batch.matrices.size()}};
    os << dump_exact(header) << '\n';
    for (const auto& m : batch.matrices) os << dump_exact(matrix_to_json(m)) << '\n';
}

SampleBatch read_sample_batch(std::istream& is) {
    SampleBatch b;
    std::string line;
    std::size_t count = 0;
    bool have_header = false;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception&) {
            throw ParseError("sample batch line " + std::to_string(lineno) + " is not valid JSON");
        }
        if (!have_header) {
            if (!j.is_object() || !j.contains("count") || !j["count"].is_number_unsigned())
                throw ParseError("sample batch header lacks a count");
            b.descriptor = j.value("descriptor", "");
            b.kind = j.value("kind", "");
            b.seed = j.value("seed", std::uint64_t{0});
            count = j["count"].get<std::size_t>();
            have_header = true;
            continue;
        }
        b.matrices.push_back(matrix_from_json(j));
    }
    if (!have_header) throw ParseError("empty sample batch");
    if (b.matrices.size() != count)
        throw ParseError("sample batch holds " + std::to_string(b.matrices.size()) + " matrices, header says " +
                         std::to_string(count));
    return b;
}

std::vector<AnyMat> read_matrices(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open '" + path + "'");
    std::string first;
    while (std::getline(is, first) && trim(first).empty()) {
    }
    json j;
    try {
        j = json::parse(first);
    } catch (const json::exception&) {
        // A pretty-printed single matrix spans several lines.
        return {read_matrix_file(path)};
    }
    if (j.is_object() && j.contains("field")) {
        std::vector<AnyMat> out{matrix_from_json(j)};
        std::string line;
        while (std::getline(is, line))
            if (!trim(line).empty()) throw ParseError("trailing content after the matrix in '" + path + "'");
        return out;
    }
    is.clear();
    is.seekg(0);
    return read_sample_batch(is).matrices;
}

json report_to_json(const TestReport& r) {
    json j{{"name", r.name},
           {"statistic", r.statistic},
           {"n_samples", r.n_samples},
           {"seed", r.seed},
           {"threshold", r.threshold},
           {"pass", r.pass},
           {"expect_pass", r.expect_pass},
           {"as_expected", r.as_expected()}};
    j["p_value"] = r.p_value ? json(*r.p_value) : json(nullptr);
    return j;
}

// ---------------------------------------------------------------------------

Descriptor parse_descriptor(const std::string& s) {
    Descriptor d;
    d.text = s;
    const auto colon = s.find(':');
    d.name = lower(trim(s.substr(0, colon)));
    if (d.name.empty()) throw ParseError("descriptor '" + s + "' has no name");
    for (char c : d.name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_')
            throw ParseError("descriptor name '" + d.name + "' has an invalid character");
    if (colon == std::string::npos) return d;

    std::string last;
    std::stringstream items(s.substr(colon + 1));
    std::string item;
    std::size_t count = 0;
    while (std::getline(items, item, ',')) {
        ++count;
        item = trim(item);
        if (item.empty()) throw ParseError("descriptor '" + s + "' has an empty item");
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            if (last.empty()) throw ParseError("value '" + item + "' in '" + s + "' has no key");
            d.params[last].push_back(item);
            continue;
        }
        const std::string key = lower(trim(item.substr(0, eq)));
        const std::string val = trim(item.substr(eq + 1));
        if (key.empty() || val.empty()) throw ParseError("malformed item '" + item + "' in '" + s + "'");
        if (d.params.count(key)) throw ParseError("key '" + key + "' repeated in '" + s + "'");
        d.params[key].push_back(val);
        last = key;
    }
    if (count == 0 || s.back() == ',') throw ParseError("descriptor '" + s + "' has an empty item");
    return d;
}

namespace {

std::size_t to_size(const std::string& v, const std::string& key) {
    std::size_t out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ParseError("value '" + v + "' of '" + key + "' is not an integer");
    return out;
}

}  // namespace

std::size_t Descriptor::get_size(const std::string& key) const {
    const auto sizes = get_sizes(key);
    if (sizes.size() != 1) throw ParseError("'" + key + "' takes one value in '" + text + "'");
    return sizes.front();
}

std::size_t Descriptor::get_size(const std::string& key, std::size_t fallback) const {
    return has(key) ? get_size(key) : fallback;
}

std::vector<std::size_t> Descriptor::get_sizes(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw ParseError("descriptor '" + text + "' lacks '" + key + "'");
    std::vector<std::size_t> out;
    for (const auto& v : it->second) out.push_back(to_size(v, key));
    return out;
}

std::vector<double> Descriptor::get_doubles(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw ParseError("descriptor '" + text + "' lacks '" + key + "'");
    std::vector<double> out;
    for (const auto& v : it->second) {
        double x = 0.0;
        const auto* end = v.data() + v.size();
        const auto [ptr, ec] = std::from_chars(v.data(), end, x);
        if (ec != std::errc() || ptr != end) throw ParseError("value '" + v + "' of '" + key + "' is not a number");
        out.push_back(x);
    }
    return out;
}

std::string Descriptor::get_string(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw ParseError("descriptor '" + text + "' lacks '" + key + "'");
    if (it->second.size() != 1) throw ParseError("'" + key + "' takes one value in '" + text + "'");
    return it->second.front();
}

int Descriptor::get_beta(const std::string& key) const {
    const std::string v = get_string(key);
    if (v == "R" || v == "r") return 1;
    if (v == "C" || v == "c") return 2;
    if (v == "H" || v == "h") return 4;
    throw ParseError("field '" + v + "' is not one of R, C, H");
}

void Descriptor::require_keys(const std::vector<std::string>& allowed) const {
    for (const auto& [k, v] : params)
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ParseError("unknown key '" + k + "' in '" + text + "'");
}

EnsembleId ensemble_from_descriptor(const Descriptor& d) {
    static const std::map<std::string, std::pair<Family, int>> names = {
        {"goe", {Family::Gaussian, 1}},          {"gue", {Family::Gaussian, 2}},
        {"gse", {Family::Gaussian, 4}},          {"loe", {Family::Laguerre, 1}},
        {"lue", {Family::Laguerre, 2}},          {"lse", {Family::Laguerre, 4}},
        {"joe", {Family::Jacobi, 1}},            {"jue", {Family::Jacobi, 2}},
        {"jse", {Family::Jacobi, 4}},            {"ginoe", {Family::Ginibre, 1}},
        {"ginue", {Family::Ginibre, 2}},         {"ginse", {Family::Ginibre, 4}},
        {"cre", {Family::CircularGroup, 1}},     {"cue", {Family::CircularGroup, 2}},
        {"cqe", {Family::CircularGroup, 4}},     {"coe", {Family::CircularQuotient, 1}},
        {"cle", {Family::CircularQuotient, 2}},  {"cse", {Family::CircularQuotient, 4}},
    };
    const auto it = names.find(d.name);
    if (it == names.end()) throw ParseError("unknown ensemble '" + d.name + "'");
    const auto [family, beta] = it->second;
    EnsembleId id;
    switch (family) {
        case Family::Gaussian:
        case Family::CircularGroup:
        case Family::CircularQuotient:
            d.require_keys({"n"});
            id = {family, beta, 0, 0, d.get_size("n")};
            break;
        case Family::Laguerre:
        case Family::Ginibre:
            d.require_keys({"m", "n"});
            id = {family, beta, 0, d.get_size("m"), d.get_size("n")};
            break;
        case Family::Jacobi:
            d.require_keys({"l", "m", "n"});
            id = EnsembleId::jacobi(beta, d.get_size("l"), d.get_size("m"), d.get_size("n"));
            break;
    }
    id.validate();
    return id;
}

namespace {

FlagSpec flag_spec_from(const Descriptor& d, std::size_t n) {
    FlagSpec spec;
    try {
        spec = d.has("a") ? FlagSpec{n, d.get_sizes("k"), d.get_doubles("a")}
                          : FlagSpec::with_default_values(n, d.get_sizes("k"));
        spec.validate();
    } catch (const SpecError& e) {
        throw ParamError(e.what());
    }
    return spec;
}

void require_range(bool ok, const std::string& what) {
    if (!ok) throw ParamError(what);
}

}  // namespace

Target target_from_descriptor(const Descriptor& d) {
    if (d.name == "flag") {
        d.require_keys({"f", "n", "k", "a"});
        const std::size_t n = d.get_size("n");
        return Target::flag(d.get_beta("f"), flag_spec_from(d, n));
    }
    if (d.name == "fullflag") {
        d.require_keys({"f", "n"});
        const std::size_t n = d.get_size("n");
        require_range(n >= 2, "fullflag needs n >= 2");
        return Target::flag(d.get_beta("f"), FlagSpec::complete(n));
    }
    if (d.name == "grassmann" || d.name == "stiefel") {
        d.require_keys({"f", "n", "k"});
        const std::size_t n = d.get_size("n"), k = d.get_size("k");
        const int beta = d.get_beta("f");
        if (d.name == "grassmann") {
            require_range(k >= 1 && k < n, "grassmann needs 1 <= k < n");
            return Target::grassmann(beta, k, n);
        }
        require_range(k >= 1 && k <= n, "stiefel needs 1 <= k <= n");
        return Target::stiefel(beta, k, n);
    }
    if (d.name == "lgr" || d.name == "lagrangian") {
        d.require_keys({"kind", "n"});
        const std::size_t n = d.get_size("n");
        require_range(n >= 1, "lgr needs n >= 1");
        return Target::lagrangian(d.get_beta("kind"), n);
    }
    throw ParseError("unknown manifold '" + d.name + "'");
}

VolumeQuery volume_from_descriptor(const Descriptor& d) {
    if (d.name == "group") {
        d.require_keys({"f", "n"});
        return VolumeQuery::group(d.get_beta("f"), d.get_size("n"));
    }
    if (d.name == "stiefel" || d.name == "grassmann") {
        d.require_keys({"f", "n", "k"});
        const int beta = d.get_beta("f");
        const std::size_t n = d.get_size("n"), k = d.get_size("k");
        return d.name == "stiefel" ? VolumeQuery::stiefel(beta, k, n) : VolumeQuery::grassmann(beta, k, n);
    }
    if (d.name == "flag") {
        d.require_keys({"f", "n", "k"});
        return VolumeQuery::flag(d.get_beta("f"), d.get_size("n"), d.get_sizes("k"));
    }
    if (d.name == "fullflag") {
        d.require_keys({"f", "n"});
        return VolumeQuery::full_flag(d.get_beta("f"), d.get_size("n"));
    }
    if (d.name == "lgr" || d.name == "lagrangian") {
        d.require_keys({"kind", "n"});
        return VolumeQuery::lagrangian(d.get_beta("kind"), d.get_size("n"));
    }
    throw ParseError("unknown manifold '" + d.name + "'");
}

bool check_predicate(const Descriptor& d, const AnyMat& x) {
    const auto tol = std::visit([](const auto& m) { return tau_mem(m); }, x);
    const auto [rows, cols] = std::visit([](const auto& m) { return std::pair{m.rows(), m.cols()}; }, x);
    auto square = [&](const std::string& what) {
        d.require_keys({});
        if (rows != cols) throw DimensionError(what + " needs a square matrix");
    };

    if (d.name == "self-adjoint") {
        square("self-adjoint");
        return std::visit([&](const auto& m) { return is_self_adjoint(m, tol); }, x);
    }
    if (d.name == "unitary") {
        square("unitary");
        return std::visit([&](const auto& m) { return is_unitary(m, tol); }, x);
    }
    if (d.name == "symmetric" || d.name == "skew-symmetric" || d.name == "lagrangian-symmetric" ||
        d.name == "symplectic-symmetric") {
        square(d.name);
        if (std::holds_alternative<HMat>(x)) throw FieldError(d.name + " applies to R and C matrices");
        const CMat c = std::holds_alternative<RMat>(x) ? upcast<Complex>(std::get<RMat>(x)) : std::get<CMat>(x);
        if (d.name == "symmetric") return is_symmetric(c, tol);
        if (d.name == "skew-symmetric") return is_skew_symmetric(c, tol);
        if (c.rows() % 2) return false;
        if (d.name == "lagrangian-symmetric") return is_lagrangian_symmetric(c, tol);
        return is_symplectic_symmetric(c, tol);
    }

    // Manifold predicates; n and k default to the matrix shape.
    Descriptor full = d;
    const std::string& nm = d.name;
    if (nm == "lgr" || nm == "lagrangian") {
        if (!full.has("n")) {
            const int beta = d.has("kind") ? d.get_beta("kind") : 1;
            full.params["n"] = {std::to_string(beta == 1 ? rows : rows / 2)};
        }
    } else if (nm == "flag" || nm == "fullflag" || nm == "grassmann" || nm == "stiefel") {
        if (!full.has("n")) full.params["n"] = {std::to_string(rows)};
        if (nm == "stiefel" && !full.has("k")) full.params["k"] = {std::to_string(cols)};
        if (nm == "grassmann" && !full.has("k")) {
            // tr P = 2k - n on Gr(k, n).
            const double tr = rows != cols ? 0.0 : std::visit(
                [&](const auto& m) {
                    using M = std::decay_t<decltype(m)>;
                    return re_trace_product(M::identity(rows), m);
                },
                x);
            const long k = std::lround((tr + static_cast<double>(rows)) / 2.0);
            full.params["k"] = {std::to_string(std::max(k, 0L))};
        }
        if (!full.has("f")) full.params["f"] = {field_tag(x.index())};
    }
    return on_manifold(target_from_descriptor(full), x, tol);
}

// ---------------------------------------------------------------------------

namespace {

json vec(const std::vector<double>& v) { return json(v); }

template <class M>
double rel_residual(const M& recon, const M& x) {
    const double nx = x.frobenius_norm();
    const double r = (recon - x).frobenius_norm();
    return nx > 0 ? r / nx : r;
}

CMat as_complex(const AnyMat& x, const std::string& kind) {
    if (const auto* r = std::get_if<RMat>(&x)) return upcast<Complex>(*r);
    if (const auto* c = std::get_if<CMat>(&x)) return *c;
    throw FieldError(kind + " applies to R and C matrices");
}

}  // namespace

json decompose_to_json(const std::string& kind, const AnyMat& x, std::size_t k) {
    static const std::vector<std::string> kinds = {"evd",    "svd", "cs", "takagi", "takagi-lagrangian",
                                                   "takagi-symplectic", "youla"};
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
        throw ParseError("unknown decomposition kind '" + kind + "'");
    json out{{"kind", kind}, {"factors", json::object()}};
    if (kind == "evd" || kind == "svd" || kind == "cs") {
        std::visit(
            [&](const auto& m) {
                if (kind == "evd") {
                    const auto r = evd_sym(m);
                    out["factors"]["Q"] = matrix_to_json(r.Q);
                    out["lambda"] = vec(r.lambda);
                    out["residual"] = rel_residual(r.reconstruct(), m);
                } else if (kind == "svd") {
                    const auto r = svd_thin(m);
                    out["factors"]["U"] = matrix_to_json(r.U);
                    out["factors"]["V"] = matrix_to_json(r.V);
                    out["sigma"] = vec(r.sigma);
                    out["residual"] = rel_residual(r.reconstruct(), m);
                } else {
                    const auto r = cs_decompose(m, k);
                    out["factors"]["U1"] = matrix_to_json(r.U1);
                    out["factors"]["V1"] = matrix_to_json(r.V1);
                    out["factors"]["U2"] = matrix_to_json(r.U2);
                    out["factors"]["V2"] = matrix_to_json(r.V2);
                    out["c"] = vec(r.c);
                    out["s"] = vec(r.s);
                    out["residual"] = rel_residual(r.reconstruct(), m);
                }
            },
            x);
        return out;
    }
    const CMat z = as_complex(x, kind);
    if (kind == "youla") {
        const auto r = youla_skew(z);
        out["factors"]["U"] = matrix_to_json(r.U);
        out["sigma"] = vec(r.sigma);
        out["residual"] = rel_residual(r.reconstruct(), z);
        return out;
    }
    TakagiResult r;
    AdjointKind adj = AdjointKind::T;
    if (kind == "takagi") {
        r = takagi_sym(z);
    } else if (kind == "takagi-lagrangian") {
        r = takagi_lagrangian(z);
        adj = AdjointKind::L;
    } else if (kind == "takagi-symplectic") {
        r = takagi_symplectic(z);
        adj = AdjointKind::S;
    } else {
        throw ParseError("unknown decomposition kind '" + kind + "'");
    }
    out["factors"]["Q"] = matrix_to_json(r.Q);
    out["sigma"] = vec(r.sigma);
    out["residual"] = rel_residual(r.reconstruct(adj), z);
    return out;
}

}  // namespace rmt
