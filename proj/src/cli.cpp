#include "ecmf/cli.hpp"

#include "ecmf/errors.hpp"
#include "ecmf/fermat_frey.hpp"
#include "ecmf/local_lfunctions.hpp"
#include "ecmf/modular_group.hpp"
#include "ecmf/q_expansions.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace ecmf {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Informational: return "informational";
    }
    return "?";
}

nlohmann::json RunReport::to_json() const {
    return nlohmann::json{{"schema", 1},
                          {"command", command},
                          {"inputs", inputs},
                          {"results", results},
                          {"verdict", to_string(verdict)}};
}

namespace {

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Local factors for all p <= pmax, fanned out over threads, results in
// prime order regardless of completion order.
std::vector<LocalFactor> collect_factors(const WeierstrassCurve& curve, std::int64_t pmax,
                                         int jobs) {
    const std::vector<std::int64_t> ps = primes_up_to(pmax);
    std::vector<LocalFactor> out(ps.size());
    int nthreads = resolve_jobs(jobs);
    if (ps.size() < static_cast<std::size_t>(nthreads))
        nthreads = std::max<int>(1, static_cast<int>(ps.size()));
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < ps.size(); i = next.fetch_add(1))
                out[i] = local_factor_for(curve, PrimeModulus(ps[i]));
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

std::string csv_escape_id(const std::string& id) { return "\"" + id + "\""; }

} // namespace

ApCache::ApCache(std::filesystem::path file) : file_(std::move(file)) {
    std::ifstream in(file_);
    if (!in) return; // no cache yet
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("curveId,", 0) == 0) continue; // header
        // "curveId",p,ap,good
        bool ok = false;
        ApCacheEntry e;
        do {
            if (line.size() < 2 || line[0] != '"') break;
            const std::size_t close = line.find('"', 1);
            if (close == std::string::npos) break;
            e.curve_id = line.substr(1, close - 1);
            std::istringstream rest(line.substr(close + 1));
            char c1, c2, c3;
            int good;
            if (!(rest >> c1 >> e.p >> c2 >> e.ap >> c3 >> good)) break;
            if (c1 != ',' || c2 != ',' || c3 != ',') break;
            if (good != 0 && good != 1) break;
            e.good = good == 1;
            ok = true;
        } while (false);
        if (ok)
            entries_.push_back(std::move(e));
        else
            corrupt_.push_back("line " + std::to_string(lineno) + ": " + line);
    }
}

std::optional<ApCacheEntry> ApCache::lookup(const std::string& curve_id,
                                            std::int64_t p) const {
    for (const auto& e : entries_)
        if (e.p == p && e.curve_id == curve_id) return e;
    return std::nullopt;
}

void ApCache::store(const ApCacheEntry& entry) {
    for (auto& e : entries_) {
        if (e.p == entry.p && e.curve_id == entry.curve_id) {
            e = entry;
            dirty_ = true;
            return;
        }
    }
    entries_.push_back(entry);
    dirty_ = true;
}

void ApCache::save() const {
    std::vector<ApCacheEntry> sorted = entries_;
    std::sort(sorted.begin(), sorted.end(), [](const ApCacheEntry& a, const ApCacheEntry& b) {
        return a.curve_id != b.curve_id ? a.curve_id < b.curve_id : a.p < b.p;
    });
    const std::filesystem::path tmp = file_.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ResourceError("ApCache: cannot write " + tmp.string());
        out << "# " << format_version() << "\n";
        out << "curveId,p,ap,good\n";
        for (const auto& e : sorted)
            out << csv_escape_id(e.curve_id) << "," << e.p << "," << e.ap << ","
                << (e.good ? 1 : 0) << "\n";
    }
    std::filesystem::rename(tmp, file_);
}

std::optional<std::filesystem::path> default_cache_path() {
    const char* dir = std::getenv("ECMF_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return std::filesystem::path(dir) / "ap_cache.csv";
}

RunReport cmd_ap(const std::string& curve_text, std::int64_t pmax, const ApOptions& opts) {
    const WeierstrassCurve curve = parse_curve(curve_text);
    RunReport report;
    report.command = "ap";
    report.inputs = {{"curve", curve.id()}, {"pmax", pmax}};

    std::optional<ApCache> cache;
    auto path = opts.cache_path ? opts.cache_path : default_cache_path();
    if (path) cache.emplace(*path);

    std::uint64_t seed;
    if (opts.audit_seed) {
        seed = *opts.audit_seed;
    } else {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    const std::vector<std::int64_t> ps = primes_up_to(pmax);
    std::vector<LocalFactor> rows(ps.size());
    std::vector<std::string> audit_failures;
    std::vector<std::size_t> miss_at;

    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::int64_t p = ps[i];
        std::optional<ApCacheEntry> hit;
        if (cache) hit = cache->lookup(curve.id(), p);
        if (!hit) {
            miss_at.push_back(i);
            continue;
        }
        if (coin(rng) < 0.05) { // audit a random 5% of hits
            LocalFactor fresh = local_factor_for(curve, PrimeModulus(p));
            if (fresh.ap != hit->ap || fresh.good != hit->good) {
                audit_failures.push_back("cached (p=" + std::to_string(p) + ", ap=" +
                                         std::to_string(hit->ap) + ") but recomputed ap=" +
                                         std::to_string(fresh.ap));
                hit = ApCacheEntry{curve.id(), p, fresh.ap, fresh.good};
                cache->store(*hit);
            }
        }
        rows[i] = {p, hit->ap, hit->good};
    }

    if (!miss_at.empty()) {
        int nthreads = resolve_jobs(opts.jobs);
        if (miss_at.size() < static_cast<std::size_t>(nthreads))
            nthreads = static_cast<int>(miss_at.size());
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&]() {
                for (std::size_t k = next.fetch_add(1); k < miss_at.size(); k = next.fetch_add(1)) {
                    const std::size_t i = miss_at[k];
                    rows[i] = local_factor_for(curve, PrimeModulus(ps[i]));
                }
            });
        }
        for (auto& th : pool) th.join();
        if (cache)
            for (std::size_t i : miss_at)
                cache->store({curve.id(), rows[i].p, rows[i].ap, rows[i].good});
    }
    if (cache && cache->dirty()) cache->save();

    nlohmann::json table = nlohmann::json::array();
    std::ostringstream text;
    text << "a_p table for " << curve.id() << "\n  p    a_p  reduction\n";
    for (const auto& r : rows) {
        table.push_back({{"p", r.p}, {"ap", r.ap}, {"good", r.good}});
        text << "  " << r.p << "    " << r.ap << "  " << (r.good ? "good" : "bad") << "\n";
    }
    report.results["table"] = table;
    if (cache) {
        report.results["cache"] = {{"corrupt_lines", cache->corrupt_lines()},
                                   {"audit_failures", audit_failures}};
        for (const auto& c : cache->corrupt_lines())
            text << "cache: corrupt entry ignored and recomputed: " << c << "\n";
        for (const auto& a : audit_failures) text << "cache AUDIT FAILURE: " << a << "\n";
    }
    report.verdict = audit_failures.empty() ? Verdict::Informational : Verdict::Fail;
    report.text = text.str();
    return report;
}

RunReport cmd_zeta(const std::string& curve_text, std::int64_t p, int depth) {
    const WeierstrassCurve curve = parse_curve(curve_text);
    RunReport report;
    report.command = "zeta";
    report.inputs = {{"curve", curve.id()}, {"p", p}, {"depth", depth}};

    ReducedCurve E(curve, PrimeModulus(p));
    if (!E.good_reduction()) {
        report.verdict = Verdict::Fail;
        report.results["error"] =
            "bad reduction at p = " + std::to_string(p) + " (discriminant vanishes mod p); "
            "the local zeta comparison needs good reduction";
        report.text = report.results["error"].get<std::string>() + "\n";
        return report;
    }

    RationalityReport r = verify_rationality(curve, PrimeModulus(p), depth);
    nlohmann::json exp_coeffs = nlohmann::json::array();
    nlohmann::json rat_coeffs = nlohmann::json::array();
    for (auto& c : r.from_counts.c) {
        std::ostringstream os;
        os << c;
        exp_coeffs.push_back(os.str());
    }
    for (auto& c : r.from_rational_form.c) {
        std::ostringstream os;
        os << c;
        rat_coeffs.push_back(os.str());
    }
    report.results = {{"counts", r.counts},
                      {"exp_definition", exp_coeffs},
                      {"rational_form", rat_coeffs},
                      {"equal", r.pass}};
    report.verdict = r.pass ? Verdict::Pass : Verdict::Fail;
    report.text = r.str();
    return report;
}

RunReport cmd_modularity(const std::string& curve_text, std::int64_t level,
                         std::int64_t pmax, int jobs) {
    if (level != 11)
        throw NotImplementedError("cmd_modularity: level " + std::to_string(level) +
                                  " has no built-in form; supported levels: 11");
    const WeierstrassCurve curve = parse_curve(curve_text);
    RunReport report;
    report.command = "modularity";
    report.inputs = {{"curve", curve.id()}, {"level", level}, {"pmax", pmax}};

    const int order = static_cast<int>(pmax) + 11;
    const QSeries form = newform_level11(order);
    EichlerShimuraReport es = eichler_shimura_check(curve, form, pmax);

    report.results["rows"] = nlohmann::json::parse(es.json());
    report.results["all_match"] = es.all_match;
    if (!es.all_match) report.results["first_mismatch"] = es.first_mismatch;
    report.verdict = es.all_match ? Verdict::Pass : Verdict::Fail;
    std::ostringstream text;
    text << "Eichler-Shimura comparison: " << curve.id() << " vs eta(z)^2 eta(11z)^2, p <= "
         << pmax << "\n"
         << es.str();
    report.text = text.str();
    (void)jobs;
    return report;
}

RunReport cmd_lvalue(const std::string& curve_text, double s, std::int64_t cutoff,
                     const std::string& method) {
    const WeierstrassCurve curve = parse_curve(curve_text);
    RunReport report;
    report.command = "lvalue";
    report.inputs = {{"curve", curve.id()}, {"s", s}, {"cutoff", cutoff}, {"method", method}};

    LMethod m;
    if (method == "euler_product") m = LMethod::EulerProduct;
    else if (method == "dirichlet_sum") m = LMethod::DirichletSum;
    else throw UsageError("cmd_lvalue: method must be euler_product or dirichlet_sum");

    const std::vector<LocalFactor> factors = collect_factors(curve, cutoff, 0);
    LValue v{};
    if (m == LMethod::EulerProduct) {
        v = l_value({s, cutoff, m}, factors);
    } else {
        const DirichletCoefficients coeffs = dirichlet_from_euler(factors, cutoff);
        v = l_value({s, cutoff, m}, coeffs);
    }
    report.results = {{"value", v.value}, {"certified", v.certified}};
    std::ostringstream text;
    text << "L(" << s << ") ~ " << v.value << "  [" << method << ", cutoff " << cutoff << "]";
    if (!v.certified) text << "  (uncertified: s <= 3/2)";
    text << "\n";
    report.text = text.str();
    report.verdict = Verdict::Informational;
    return report;
}

RunReport cmd_jinv(int terms) {
    RunReport report;
    report.command = "jinv";
    report.inputs = {{"terms", terms}};
    const QSeries j = j_invariant(terms);
    report.results["series"] = nlohmann::json::parse(series_to_json(j));
    report.text = j.str(terms + 2) + "\n";
    report.verdict = Verdict::Informational;
    return report;
}

RunReport cmd_genus(std::int64_t N) {
    RunReport report;
    report.command = "genus";
    report.inputs = {{"N", N}};
    const Level level(N);
    report.results = {{"genus", genus_X0(level)},
                      {"index", index_gamma0(level)},
                      {"cusps", cusp_count(level)},
                      {"nu2", elliptic_points_order2(level)},
                      {"nu3", elliptic_points_order3(level)}};
    std::ostringstream text;
    text << "X_0(" << N << "): genus " << report.results["genus"].get<std::int64_t>()
         << " (index " << report.results["index"].get<std::int64_t>() << ", cusps "
         << report.results["cusps"].get<std::int64_t>() << ")\n";
    report.text = text.str();
    report.verdict = Verdict::Informational;
    return report;
}

RunReport cmd_cusps(std::int64_t N) {
    RunReport report;
    report.command = "cusps";
    report.inputs = {{"N", N}};
    report.results = {{"cusps", cusp_count(Level(N))}};
    report.text = "X_0(" + std::to_string(N) + ") has " +
                  std::to_string(cusp_count(Level(N))) + " cusp(s)\n";
    report.verdict = Verdict::Informational;
    return report;
}

RunReport cmd_classify(const std::string& matrix) {
    RunReport report;
    report.command = "classify";
    report.inputs = {{"matrix", matrix}};
    const GroupElement2x2 g = parse_matrix(matrix);
    const ElementClass cls = classify_element(g);
    report.results = {{"class", to_string(cls)}};
    std::ostringstream text;
    text << to_string(cls);
    if (cls == ElementClass::Parabolic) {
        const BoundaryPoint x = parabolic_fixed_point(g);
        if (x.is_infinity) {
            report.results["fixed_point"] = "infinity";
            text << ", fixed point infinity";
        } else {
            std::ostringstream v;
            v << x.value;
            report.results["fixed_point"] = v.str();
            text << ", fixed point " << v.str();
        }
    }
    text << "\n";
    report.text = text.str();
    report.verdict = Verdict::Informational;
    return report;
}

RunReport cmd_frey(std::int64_t a, std::int64_t b, std::int64_t p) {
    RunReport report;
    report.command = "frey";
    report.inputs = {{"a", a}, {"b", b}, {"p", p}};
    const WeierstrassCurve curve = frey_curve(FreyParameters(a, b, p));
    const Integer disc = curve.discriminant();

    // bad primes divide 2ab(a^p + b^p); factor what trial division reaches
    std::vector<std::int64_t> bad{2};
    auto absorb = [&bad](std::int64_t v) {
        for (auto& [q, e] : factorize(v)) bad.push_back(q);
    };
    absorb(a);
    absorb(b);
    Integer rest = ipow(Integer(a), static_cast<unsigned>(p)) +
                   ipow(Integer(b), static_cast<unsigned>(p));
    if (rest < 0) rest = -rest;
    for (std::int64_t q : primes_up_to(1000000)) {
        if (rest <= 1) break;
        while (rest % q == 0) {
            bad.push_back(q);
            rest /= q;
        }
        if (Integer(q) * q > rest && rest > 1) {
            bad.push_back(rest.convert_to<std::int64_t>());
            rest = 1;
        }
    }
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());

    std::ostringstream disc_text;
    disc_text << disc;
    report.results = {{"curve", curve.id()}, {"discriminant", disc_text.str()}};
    nlohmann::json bad_json = nlohmann::json::array();
    for (auto q : bad) bad_json.push_back(q);
    report.results["bad_primes"] = bad_json;
    if (rest > 1) {
        std::ostringstream os;
        os << rest;
        report.results["unfactored_cofactor"] = os.str();
    }
    std::ostringstream text;
    text << "Frey curve for (a=" << a << ", b=" << b << ", p=" << p << "): " << curve.id()
         << "\ndiscriminant " << disc_text.str() << "\nbad primes:";
    for (auto q : bad) text << " " << q;
    if (rest > 1) text << " (plus primes of unfactored cofactor)";
    text << "\nillustration only: the reduction argument that rules such curves out is not "
            "reproduced here\n";
    report.text = text.str();
    report.verdict = Verdict::Informational;
    return report;
}

RunReport cmd_fermat(std::int64_t bound, int nmax, bool control_mode) {
    RunReport report;
    report.command = "fermat";
    report.inputs = {{"bound", bound}, {"nmax", nmax}, {"control", control_mode}};
    const int nmin = control_mode ? 2 : 3;
    const std::vector<FermatTriple> hits = fermat_search(bound, nmin, nmax);

    nlohmann::json list = nlohmann::json::array();
    bool counterexample = false;
    for (const auto& t : hits) {
        std::ostringstream x, y, z;
        x << t.X; y << t.Y; z << t.Z;
        list.push_back({{"X", x.str()}, {"Y", y.str()}, {"Z", z.str()}, {"n", t.n}});
        if (t.n >= 3) counterexample = true;
    }
    report.results = {{"hits", list}, {"nontrivial_n_ge_3", counterexample}};
    std::ostringstream text;
    text << "search X^n + Y^n = Z^n, 1 <= X <= Y <= " << bound << ", n in [" << nmin << ","
         << nmax << "]: " << hits.size() << " hit(s)\n";
    for (const auto& t : hits)
        text << "  (" << t.X << ", " << t.Y << ", " << t.Z << ") with n = " << t.n << "\n";
    report.text = text.str();
    report.verdict = counterexample ? Verdict::Fail : Verdict::Pass;
    return report;
}

RunReport cmd_bsd_explore(const std::string& curve_text, std::int64_t cutoff) {
    const WeierstrassCurve curve = parse_curve(curve_text);
    RunReport report;
    report.command = "bsd-explore";
    report.inputs = {{"curve", curve.id()}, {"cutoff", cutoff}};
    const std::vector<LocalFactor> factors = collect_factors(curve, cutoff, 0);

    std::ostringstream text;
    text << "UNCERTIFIED, EXPLORATORY: partial Euler products approaching s = 1\n"
         << "(no analytic continuation; nothing here is a rank statement)\n";
    nlohmann::json steps = nlohmann::json::array();
    for (double s : {2.0, 1.8, 1.6, 1.4, 1.2, 1.1, 1.05, 1.01}) {
        const LValue v = l_value({s, cutoff, LMethod::EulerProduct}, factors);
        steps.push_back({{"s", s}, {"value", v.value}, {"certified", v.certified}});
        text << "  s = " << s << ": " << v.value << (v.certified ? "" : "   [uncertified]")
             << "\n";
    }
    report.results["steps"] = steps;
    report.text = text.str();
    report.verdict = Verdict::Informational;
    return report;
}

} // namespace ecmf
