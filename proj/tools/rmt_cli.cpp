// rmt_cli: sample, decompose, check, volume, verify.
//
// Exit codes: 0 success, 1 a check or suite failed, 2 parse error,
// 3 parameter error, 4 decomposition precondition failed.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rmt/decomp.hpp"
#include "rmt/io.hpp"
#include "rmt/suites.hpp"

namespace {

enum Exit { kOk = 0, kFailed = 1, kParse = 2, kParam = 3, kDecomp = 4 };

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    if (const char* env = std::getenv("RMT_DEFAULT_SEED")) {
        try {
            std::size_t pos = 0;
            const auto v = std::stoull(env, &pos);
            if (pos == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw rmt::ParseError(std::string("RMT_DEFAULT_SEED='") + env + "' is not an unsigned integer");
    }
    return 0;
}

/// Runs `body` with the output stream named by `path` ("-" is stdout).
template <class Body>
void with_output(const std::string& path, Body&& body) {
    if (path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw rmt::ParseError("cannot open '" + path + "' for writing");
    body(os);
}

rmt::Route default_route(const rmt::Target& t) {
    switch (t.kind) {
        case rmt::Target::Kind::Stiefel: return rmt::Route::Ginibre;
        case rmt::Target::Kind::Lagrangian: return rmt::Route::Circular;
        default: return rmt::Route::Gaussian;
    }
}

int report(const std::exception& e, int code) {
    if (const auto* r = dynamic_cast<const rmt::Error*>(&e))
        std::cerr << "error: " << r->name() << ": " << r->what() << '\n';
    else
        std::cerr << "error: " << e.what() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random matrix ensembles, matrix decompositions and uniform sampling on homogeneous manifolds"};
    app.require_subcommand(1);

    std::string ensemble, manifold, route, out = "-", in, kind, predicate, suite;
    std::optional<std::uint64_t> seed;
    std::size_t n_samples = 1, k = 1, suite_n = 0;
    bool log_scale = false;

    auto* sample = app.add_subcommand("sample", "Draw matrices from an ensemble or points on a manifold");
    auto* ens_opt = sample->add_option("--ensemble", ensemble, "Ensemble descriptor, e.g. goe:n=4 or joe:l=3,m=4,n=2");
    auto* man_opt = sample->add_option("--manifold", manifold, "Manifold descriptor, e.g. flag:F=C,n=5,k=1,2");
    ens_opt->excludes(man_opt);
    sample->add_option("--route", route, "gaussian|ginibre|haar|circular|takagi|biased-haar (manifolds only)");
    sample->add_option("--n-samples", n_samples, "Number of draws")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Seed (default: $RMT_DEFAULT_SEED, else 0)");
    sample->add_option("--out", out, "Output JSONL file, - for stdout");

    auto* decompose = app.add_subcommand("decompose", "Decompose a matrix");
    decompose
        ->add_option("--kind", kind, "evd|svd|cs|takagi|takagi-lagrangian|takagi-symplectic|youla")
        ->required()
        ->check(CLI::IsMember({"evd", "svd", "cs", "takagi", "takagi-lagrangian", "takagi-symplectic", "youla"}));
    decompose->add_option("--in", in, "Input matrix file")->required();
    decompose->add_option("--out", out, "Output JSON file, - for stdout");
    decompose->add_option("--k", k, "CS block size");

    auto* check = app.add_subcommand("check", "Evaluate a predicate on each matrix of a file");
    check->add_option("--predicate", predicate, "Manifold descriptor or matrix predicate")->required();
    check->add_option("--in", in, "Matrix file or sample batch")->required();

    auto* volume = app.add_subcommand("volume", "Volume of a group or homogeneous manifold");
    volume->add_option("--manifold", manifold, "e.g. group:F=H,n=1 or grassmann:F=C,n=4,k=2")->required();
    volume->add_flag("--log", log_scale, "Print the natural log of the volume");

    auto* verify = app.add_subcommand("verify", "Run a statistical acceptance suite");
    verify->add_option("--suite", suite, "invariance|moments|marginals|cross-route")
        ->required()
        ->check(CLI::IsMember({"invariance", "moments", "marginals", "cross-route"}));
    verify->add_option("--seed", seed, "Seed (default: $RMT_DEFAULT_SEED, else 0)");
    verify->add_option("--n-samples", suite_n, "Override every sample size of the suite");
    verify->add_option("--out", out, "Output JSON file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*sample) {
            if (ensemble.empty() == manifold.empty()) throw rmt::ParseError("give exactly one of --ensemble, --manifold");
            rmt::SampleBatch batch;
            batch.seed = resolve_seed(seed);
            std::function<rmt::AnyMat(rmt::RngStream&)> draw;
            if (!ensemble.empty()) {
                if (!route.empty()) throw rmt::ParseError("--route applies to --manifold only");
                const auto id = rmt::ensemble_from_descriptor(rmt::parse_descriptor(ensemble));
                batch.descriptor = ensemble;
                batch.kind = "ensemble";
                draw = [id](rmt::RngStream& r) { return rmt::sample(id, r); };
            } else {
                const auto t = rmt::target_from_descriptor(rmt::parse_descriptor(manifold));
                const auto r = route.empty() ? default_route(t) : rmt::parse_route(route);
                batch.descriptor = manifold;
                batch.kind = "manifold";
                draw = [t, r](rmt::RngStream& s) { return rmt::sample_uniform(t, r, s); };
            }
            for (std::size_t i = 0; i < n_samples; ++i) {
                rmt::RngStream r(batch.seed, i);
                batch.matrices.push_back(draw(r));
            }
            with_output(out, [&](std::ostream& os) { rmt::write_sample_batch(os, batch); });
            return kOk;
        }
        if (*decompose) {
            const auto xs = rmt::read_matrices(in);
            if (xs.size() != 1) throw rmt::ParseError("decompose expects exactly one matrix in " + in);
            const auto& x = xs.front();
            rmt::json result;
            try {
                result = rmt::decompose_to_json(kind, x, k);
            } catch (const rmt::ParseError&) {
                throw;
            } catch (const rmt::Error& e) {
                return report(e, kDecomp);
            }
            with_output(out, [&](std::ostream& os) { os << rmt::dump_exact(result) << '\n'; });
            return kOk;
        }
        if (*check) {
            const auto d = rmt::parse_descriptor(predicate);
            const auto xs = rmt::read_matrices(in);
            std::size_t failed = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const bool ok = rmt::check_predicate(d, xs[i]);
                std::cout << i << ' ' << (ok ? "pass" : "fail") << '\n';
                failed += ok ? 0 : 1;
            }
            return failed ? kFailed : kOk;
        }
        if (*volume) {
            const auto q = rmt::volume_from_descriptor(rmt::parse_descriptor(manifold));
            const double lv = rmt::log_volume(q);
            std::cout << std::setprecision(15) << (log_scale ? lv : std::exp(lv)) << '\n';
            return kOk;
        }
        if (*verify) {
            const auto s = resolve_seed(seed);
            rmt::SuiteSizes sizes;
            if (suite_n) sizes = {suite_n, suite_n, suite_n, suite_n};
            const auto reports = rmt::run_suite(suite, s, sizes);
            rmt::json j{{"suite", suite}, {"seed", s}, {"passed", rmt::suite_passed(reports)}};
            j["reports"] = rmt::json::array();
            for (const auto& r : reports) j["reports"].push_back(rmt::report_to_json(r));
            with_output(out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
            return rmt::suite_passed(reports) ? kOk : kFailed;
        }
    } catch (const rmt::ParseError& e) {
        return report(e, kParse);
    } catch (const rmt::Error& e) {
        return report(e, kParam);
    }
    return kOk;
}
