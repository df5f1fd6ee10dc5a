// Batch front end for the library: reproducible verification runs over
// curves, forms and L-functions, with optional JSON output and an a_p
// disk cache.

#include "ecmf/cli.hpp"
#include "ecmf/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace {

int emit(const ecmf::RunReport& report, bool as_json) {
    if (as_json) {
        nlohmann::json doc = report.to_json();
        // run-dependent data stays out of the deterministic payload
        doc["envelope"] = {{"generated_at",
                            std::chrono::duration_cast<std::chrono::seconds>(
                                std::chrono::system_clock::now().time_since_epoch())
                                .count()}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << report.text;
        if (report.verdict != ecmf::Verdict::Informational)
            std::cout << "verdict: " << ecmf::to_string(report.verdict) << "\n";
    }
    return report.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic curves, modular forms and their L-functions: a desk-scale "
                 "verification workbench"};
    app.require_subcommand(1);
    app.fallthrough(); // subcommands inherit this: --json may follow them
    bool as_json = false;
    app.add_flag("--json", as_json, "emit a machine-readable JSON report");

    std::string curve, matrix, method = "euler_product";
    std::int64_t pmax = 50, p = 5, level = 11, N = 11, cutoff = 1000, bound = 50;
    std::int64_t frey_a = 2, frey_b = 1, frey_p = 3;
    int depth = 2, terms = 3, nmax = 7, jobs = 0;
    double s = 2.0;
    bool control = false;
    std::string cache_path;

    auto* ap = app.add_subcommand("ap", "table of a_p = p + 1 - |E(F_p)| for p <= pmax");
    ap->add_option("--curve", curve, "curve literal \"[a1,a2,a3,a4,a6]\" or \"legendre:u/v\"")
        ->required();
    ap->add_option("--pmax", pmax, "largest prime");
    ap->add_option("--cache", cache_path, "a_p cache file (CSV)");
    ap->add_option("--jobs", jobs, "worker threads (default: cores)");

    auto* zeta = app.add_subcommand(
        "zeta", "compare the exponential and rational local zeta expansions at p");
    zeta->add_option("--curve", curve)->required();
    zeta->add_option("--p", p, "good prime")->required();
    zeta->add_option("--depth", depth, "count over F_{p^n} for n = 1..depth");

    auto* mod = app.add_subcommand(
        "modularity", "compare point-count a_p with newform coefficients c_p");
    mod->add_option("--curve", curve)->required();
    mod->add_option("--level", level, "newform level (supported: 11)");
    mod->add_option("--pmax", pmax, "largest prime compared");
    mod->add_option("--jobs", jobs, "worker threads");

    auto* lv = app.add_subcommand("lvalue", "partial L(s) by Euler product or Dirichlet sum");
    lv->add_option("--curve", curve)->required();
    lv->add_option("--s", s, "evaluation point (certified for s > 3/2)");
    lv->add_option("--cutoff", cutoff, "prime/term cutoff");
    lv->add_option("--method", method, "euler_product | dirichlet_sum");

    auto* jinv = app.add_subcommand("jinv", "q-expansion of the j-invariant");
    jinv->add_option("--terms", terms, "truncation order");

    auto* genus = app.add_subcommand("genus", "genus of the modular curve X_0(N)");
    genus->add_option("--N", N, "level")->required();

    auto* cusps = app.add_subcommand("cusps", "number of cusps of X_0(N)");
    cusps->add_option("--N", N, "level")->required();

    auto* cls = app.add_subcommand("classify", "classify an SL_2(Z) element");
    cls->add_option("--matrix", matrix, "literal \"[[a,b],[c,d]]\"")->required();

    auto* frey = app.add_subcommand("frey", "Frey curve of a hypothetical a^p - b^p = c^p");
    frey->add_option("--a", frey_a)->required();
    frey->add_option("--b", frey_b)->required();
    frey->add_option("--p", frey_p, "odd prime exponent")->required();

    auto* fermat = app.add_subcommand("fermat", "exhaustive Fermat box search");
    fermat->add_option("--bound", bound, "X, Y <= bound");
    fermat->add_option("--nmax", nmax, "largest exponent");
    fermat->add_flag("--control", control, "include n = 2 (Pythagorean control)");

    auto* bsd = app.add_subcommand("bsd-explore",
                                   "uncertified partial L values stepping toward s = 1");
    bsd->add_option("--curve", curve)->required();
    bsd->add_option("--cutoff", cutoff, "prime cutoff");

    CLI11_PARSE(app, argc, argv);

    try {
        ecmf::RunReport report;
        if (app.got_subcommand(ap)) {
            ecmf::ApOptions opts;
            opts.jobs = jobs;
            if (!cache_path.empty()) opts.cache_path = cache_path;
            report = ecmf::cmd_ap(curve, pmax, opts);
        } else if (app.got_subcommand(zeta)) {
            report = ecmf::cmd_zeta(curve, p, depth);
        } else if (app.got_subcommand(mod)) {
            report = ecmf::cmd_modularity(curve, level, pmax, jobs);
        } else if (app.got_subcommand(lv)) {
            report = ecmf::cmd_lvalue(curve, s, cutoff, method);
        } else if (app.got_subcommand(jinv)) {
            report = ecmf::cmd_jinv(terms);
        } else if (app.got_subcommand(genus)) {
            report = ecmf::cmd_genus(N);
        } else if (app.got_subcommand(cusps)) {
            report = ecmf::cmd_cusps(N);
        } else if (app.got_subcommand(cls)) {
            report = ecmf::cmd_classify(matrix);
        } else if (app.got_subcommand(frey)) {
            report = ecmf::cmd_frey(frey_a, frey_b, frey_p);
        } else if (app.got_subcommand(fermat)) {
            report = ecmf::cmd_fermat(bound, nmax, control);
        } else if (app.got_subcommand(bsd)) {
            report = ecmf::cmd_bsd_explore(curve, cutoff);
        } else {
            std::cerr << "no subcommand\n";
            return 2;
        }
        return emit(report, as_json);
    } catch (const ecmf::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ecmf::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ecmf::NotImplementedError& e) {
        std::cerr << "not implemented: " << e.what() << "\n";
        return 2;
    } catch (const ecmf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
