#include "ecmf/local_lfunctions.hpp"

#include "ecmf/errors.hpp"

#include <cmath>
#include <sstream>

namespace ecmf {

LocalFactor local_factor_for(const WeierstrassCurve& curve, const PrimeModulus& p) {
    ReducedCurve E(curve, p);
    if (E.good_reduction()) return {p.value(), trace_ap(curve, p), true};
    return {p.value(), bad_fiber_ap(curve, p), false};
}

PowerSeriesU local_zeta_from_counts(const std::vector<std::int64_t>& counts, int order) {
    if (order < 1) throw UsageError("local_zeta_from_counts: order must be >= 1");
    if (static_cast<int>(counts.size()) < order)
        throw UsageError("local_zeta_from_counts: need counts for n = 1.." +
                         std::to_string(order));
    for (std::int64_t c : counts)
        if (c <= 0) throw UsageError("local_zeta_from_counts: counts must be positive");

    // A(u) = sum counts_n u^n / n; exp(A) via E' = A' E:
    // E_k = (1/k) sum_{j=1..k} j a_j E_{k-j}
    std::vector<Rational> a(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int n = 1; n <= order; ++n)
        a[static_cast<std::size_t>(n)] = Rational(counts[static_cast<std::size_t>(n - 1)], n);
    PowerSeriesU e;
    e.c.assign(static_cast<std::size_t>(order) + 1, Rational(0));
    e.c[0] = 1;
    for (int k = 1; k <= order; ++k) {
        Rational s = 0;
        for (int j = 1; j <= k; ++j)
            s += Rational(j) * a[static_cast<std::size_t>(j)] * e.c[static_cast<std::size_t>(k - j)];
        e.c[static_cast<std::size_t>(k)] = s / k;
    }
    return e;
}

PowerSeriesU local_zeta_rational(const LocalFactor& factor, int order) {
    if (order < 0) throw UsageError("local_zeta_rational: negative order");
    PowerSeriesU z;
    z.c.assign(static_cast<std::size_t>(order) + 1, Rational(0));
    z.c[0] = 1;
    if (order >= 1) z.c[1] = factor.ap;
    if (factor.good) {
        for (int k = 2; k <= order; ++k)
            z.c[static_cast<std::size_t>(k)] = Rational(factor.ap) * z.c[static_cast<std::size_t>(k - 1)] -
                                               Rational(factor.p) * z.c[static_cast<std::size_t>(k - 2)];
    } else {
        for (int k = 2; k <= order; ++k)
            z.c[static_cast<std::size_t>(k)] = Rational(factor.ap) * z.c[static_cast<std::size_t>(k - 1)];
    }
    return z;
}

PowerSeriesU local_zeta_weil(const LocalFactor& factor, int order) {
    if (order < 0) throw UsageError("local_zeta_weil: negative order");
    if (!factor.good)
        throw UsageError("local_zeta_weil: defined for good factors only");
    // numerator (1 - ap u + p u^2) times 1/(1-u) = partial sums, then
    // 1/(1-pu) = geometric weights
    std::vector<Rational> num(static_cast<std::size_t>(order) + 1, Rational(0));
    num[0] = 1;
    if (order >= 1) num[1] = -factor.ap;
    if (order >= 2) num[2] = factor.p;
    std::vector<Rational> partial(static_cast<std::size_t>(order) + 1, Rational(0));
    Rational run = 0;
    for (int k = 0; k <= order; ++k) {
        run += num[static_cast<std::size_t>(k)];
        partial[static_cast<std::size_t>(k)] = run;
    }
    PowerSeriesU z;
    z.c.assign(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int k = 0; k <= order; ++k) {
        Rational s = 0;
        Integer pj = 1;
        for (int j = 0; j <= k; ++j) {
            s += Rational(pj) * partial[static_cast<std::size_t>(k - j)];
            pj *= factor.p;
        }
        z.c[static_cast<std::size_t>(k)] = s;
    }
    return z;
}

std::string RationalityReport::str() const {
    std::ostringstream os;
    os << "local zeta at p = " << p << ", depth " << depth << "\n";
    os << "  counts:";
    for (auto c : counts) os << " " << c;
    os << "\n  exp-definition coefficients:   ";
    for (auto& c : from_counts.c) os << " " << c;
    os << "\n  rational-form coefficients:    ";
    for (auto& c : from_rational_form.c) os << " " << c;
    os << "\n  verdict: " << (pass ? "pass" : "FAIL") << "\n";
    return os.str();
}

RationalityReport verify_rationality(const WeierstrassCurve& curve, const PrimeModulus& p,
                                     int depth, std::int64_t bound) {
    if (depth < 1) throw UsageError("verify_rationality: depth must be >= 1");
    ReducedCurve E(curve, p);
    if (!E.good_reduction())
        throw UsageError("verify_rationality: bad reduction at " + std::to_string(p.value()));

    RationalityReport report;
    report.p = p.value();
    report.depth = depth;
    for (int n = 1; n <= depth; ++n)
        report.counts.push_back(count_points(E, n, CountMethod::Auto, bound));
    report.from_counts = local_zeta_from_counts(report.counts, depth);
    report.from_rational_form =
        local_zeta_weil({p.value(), trace_ap(curve, p), true}, depth);
    report.pass = report.from_counts == report.from_rational_form;
    return report;
}

DirichletCoefficients dirichlet_from_euler(const std::vector<LocalFactor>& factors,
                                           std::int64_t cutoff) {
    if (cutoff < 1) throw UsageError("dirichlet_from_euler: cutoff must be >= 1");
    std::vector<std::int64_t> have(static_cast<std::size_t>(cutoff) + 1, 0);
    DirichletCoefficients out;
    out.a.assign(static_cast<std::size_t>(cutoff) + 1, 0);
    out.a[1] = 1;

    std::vector<const LocalFactor*> by_p(static_cast<std::size_t>(cutoff) + 1, nullptr);
    for (const auto& f : factors)
        if (f.p <= cutoff) by_p[static_cast<std::size_t>(f.p)] = &f;
    for (std::int64_t p : primes_up_to(cutoff))
        if (!by_p[static_cast<std::size_t>(p)])
            throw UsageError("dirichlet_from_euler: no Euler factor supplied for prime " +
                             std::to_string(p));

    // prime powers by the Hecke recurrence, then spread multiplicatively
    for (std::int64_t p : primes_up_to(cutoff)) {
        const LocalFactor& f = *by_p[static_cast<std::size_t>(p)];
        std::int64_t prev = 1, cur = f.ap;
        for (Integer pk = p; pk <= cutoff; pk *= p) {
            out.a[pk.convert_to<std::size_t>()] = cur;
            if (f.good) {
                const std::int64_t next = f.ap * cur - p * prev;
                prev = cur;
                cur = next;
            } else {
                cur *= f.ap;
            }
        }
    }
    // a_{m p^k} = a_m a_{p^k} for gcd(m, p) = 1, filled in increasing n
    std::vector<std::int32_t> spf(static_cast<std::size_t>(cutoff) + 1, 0);
    for (std::int64_t p : primes_up_to(cutoff))
        for (std::int64_t m = p; m <= cutoff; m += p)
            if (!spf[static_cast<std::size_t>(m)]) spf[static_cast<std::size_t>(m)] = static_cast<std::int32_t>(p);
    for (std::int64_t n = 2; n <= cutoff; ++n) {
        const std::int64_t p = spf[static_cast<std::size_t>(n)];
        std::int64_t m = n, pk = 1;
        while (m % p == 0) { m /= p; pk *= p; }
        if (m == 1) continue; // prime power: already set by the recurrence
        out.a[static_cast<std::size_t>(n)] =
            out.a[static_cast<std::size_t>(m)] * out.a[static_cast<std::size_t>(pk)];
    }
    return out;
}

namespace {

constexpr double kCertifiedThreshold = 1.5;

} // namespace

LValue l_value(const LQuery& query, const std::vector<LocalFactor>& factors) {
    if (query.method != LMethod::EulerProduct)
        throw UsageError("l_value: factor form expects the euler_product method");
    if (query.cutoff < 2) throw UsageError("l_value: cutoff must be >= 2");
    double product = 1.0;
    for (const auto& f : factors) {
        if (f.p > query.cutoff) continue;
        const double ps = std::pow(static_cast<double>(f.p), -query.s);
        double denom;
        if (f.good)
            denom = 1.0 - static_cast<double>(f.ap) * ps +
                    std::pow(static_cast<double>(f.p), 1.0 - 2.0 * query.s);
        else
            denom = 1.0 - static_cast<double>(f.ap) * ps;
        product /= denom;
    }
    return {product, query.s > kCertifiedThreshold};
}

LValue l_value(const LQuery& query, const DirichletCoefficients& coeffs) {
    if (query.method != LMethod::DirichletSum)
        throw UsageError("l_value: coefficient form expects the dirichlet_sum method");
    if (query.cutoff < 2) throw UsageError("l_value: cutoff must be >= 2");
    if (coeffs.size() < query.cutoff)
        throw UsageError("l_value: coefficients stored only up to n = " +
                         std::to_string(coeffs.size()));
    double sum = 0.0;
    for (std::int64_t n = query.cutoff; n >= 1; --n)
        sum += static_cast<double>(coeffs.at(n)) * std::pow(static_cast<double>(n), -query.s);
    return {sum, query.s > kCertifiedThreshold};
}

double riemann_zeta_partial(double s, std::int64_t terms) {
    if (!(s > 1.0)) throw DomainError("riemann_zeta_partial: requires s > 1");
    if (terms < 1) throw UsageError("riemann_zeta_partial: need at least one term");
    double sum = 0.0;
    for (std::int64_t n = terms; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    return sum;
}

std::string EichlerShimuraReport::str() const {
    std::ostringstream os;
    os << "  p    a_p   c_p  match\n";
    for (const auto& r : good_rows)
        os << (r.p < 10 ? "  " : r.p < 100 ? " " : "") << r.p << "     " << r.ap << "     "
           << r.cp << "  " << (r.match ? "yes" : "NO") << "\n";
    for (const auto& r : bad_rows)
        os << (r.p < 10 ? "  " : r.p < 100 ? " " : "") << r.p << "     " << r.ap << "     "
           << r.cp << "  (bad reduction, informational)\n";
    os << "verdict: " << (all_match ? "all good primes match" : "MISMATCH at p = " + std::to_string(first_mismatch))
       << "\n";
    return os.str();
}

std::string EichlerShimuraReport::json() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    auto row = [&](const EichlerShimuraRow& r) {
        if (!first) os << ", ";
        first = false;
        os << "{\"prime\": " << r.p << ", \"ap\": " << r.ap << ", \"cp\": " << r.cp
           << ", \"good\": " << (r.good ? "true" : "false")
           << ", \"match\": " << (r.match ? "true" : "false") << "}";
    };
    for (const auto& r : good_rows) row(r);
    for (const auto& r : bad_rows) row(r);
    os << "]";
    return os.str();
}

EichlerShimuraReport eichler_shimura_check(const WeierstrassCurve& curve,
                                           const QSeries& form, std::int64_t pmax) {
    if (form.top_exp() < pmax)
        throw UsageError("eichler_shimura_check: form truncated at q^" +
                         std::to_string(form.top_exp()) + ", need coefficients to " +
                         std::to_string(pmax));
    EichlerShimuraReport report;
    report.all_match = true;
    report.first_mismatch = 0;
    for (std::int64_t p : primes_up_to(pmax)) {
        PrimeModulus pm(p);
        const std::int64_t cp = form.coeff(p).convert_to<std::int64_t>();
        ReducedCurve E(curve, pm);
        if (E.good_reduction()) {
            const std::int64_t ap = trace_ap(curve, pm);
            const bool match = ap == cp;
            report.good_rows.push_back({p, ap, cp, true, match});
            if (!match && report.all_match) {
                report.all_match = false;
                report.first_mismatch = p;
            }
        } else {
            const std::int64_t ap = bad_fiber_ap(curve, pm);
            report.bad_rows.push_back({p, ap, cp, false, ap == cp});
        }
    }
    return report;
}

} // namespace ecmf
