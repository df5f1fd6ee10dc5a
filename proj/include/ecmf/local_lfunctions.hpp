#ifndef ECMF_LOCAL_LFUNCTIONS_HPP
#define ECMF_LOCAL_LFUNCTIONS_HPP

#include "ecmf/elliptic.hpp"
#include "ecmf/numeric.hpp"
#include "ecmf/q_expansions.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ecmf {

// Euler-factor data at one prime: 1/(1 - ap u + p u^2) when good,
// 1/(1 - ap u) when bad (ap then lies in {-1, 0, +1}).
struct LocalFactor {
    std::int64_t p;
    std::int64_t ap;
    bool good;
};

// Local factor of a curve at p, from point counting or the fiber type.
LocalFactor local_factor_for(const WeierstrassCurve& curve, const PrimeModulus& p);

// Truncated power series in u with exact rational coefficients 0..order.
struct PowerSeriesU {
    std::vector<Rational> c;

    int order() const { return static_cast<int>(c.size()) - 1; }
    friend bool operator==(const PowerSeriesU&, const PowerSeriesU&) = default;
};

// exp( sum_{n=1..m} counts[n-1]/n u^n ) truncated at order m.
PowerSeriesU local_zeta_from_counts(const std::vector<std::int64_t>& counts, int order);

// Expansion of 1/(1 - ap u + p u^2) (or 1/(1 - ap u) at bad p) to the
// given order via the linear recurrence z_k = ap z_{k-1} - p z_{k-2}.
PowerSeriesU local_zeta_rational(const LocalFactor& factor, int order);

// The closed rational form whose expansion reproduces the exponential
// definition exactly: (1 - ap u + p u^2) / ((1 - u)(1 - pu)). The bare
// inverse quadratic above generates the Frobenius traces p^n + 1 - N_n
// instead of the counts N_n themselves.
PowerSeriesU local_zeta_weil(const LocalFactor& factor, int order);

struct RationalityReport {
    std::int64_t p;
    int depth;
    std::vector<std::int64_t> counts;      // |E(F_{p^n})| for n = 1..depth
    PowerSeriesU from_counts;
    PowerSeriesU from_rational_form;
    bool pass; // exact coefficient equality
    std::string str() const;
};

// Counts points over F_p, ..., F_{p^depth} by brute force and compares the
// exponential-definition expansion with the closed rational form.
RationalityReport verify_rationality(const WeierstrassCurve& curve, const PrimeModulus& p,
                                     int depth,
                                     std::int64_t bound = kDefaultEnumerationBound);

// a_1 = 1; good p: a_{p^{k+1}} = a_p a_{p^k} - p a_{p^{k-1}}; bad p:
// a_{p^k} = a_p^k; multiplicative across coprime indices.
struct DirichletCoefficients {
    std::vector<std::int64_t> a; // index 0 unused; a[1] = 1

    std::int64_t at(std::int64_t n) const { return a[static_cast<std::size_t>(n)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(a.size()) - 1; }
};

DirichletCoefficients dirichlet_from_euler(const std::vector<LocalFactor>& factors,
                                           std::int64_t cutoff);

enum class LMethod { EulerProduct, DirichletSum };

struct LQuery {
    double s;
    std::int64_t cutoff;
    LMethod method;
};

struct LValue {
    double value;
    bool certified; // false for s <= 3/2 (exploratory mode)
};

LValue l_value(const LQuery& query, const std::vector<LocalFactor>& factors);
LValue l_value(const LQuery& query, const DirichletCoefficients& coeffs);

// Partial sum of zeta(s) for s > 1.
double riemann_zeta_partial(double s, std::int64_t terms);

struct EichlerShimuraRow {
    std::int64_t p;
    std::int64_t ap;
    std::int64_t cp;
    bool good;
    bool match;
};

struct EichlerShimuraReport {
    std::vector<EichlerShimuraRow> good_rows;
    std::vector<EichlerShimuraRow> bad_rows; // informational
    bool all_match;                          // over good primes only
    std::int64_t first_mismatch;             // 0 when none

    std::string str() const;
    std::string json() const;
};

// Compares trace_ap(E, p) against the Fourier coefficient c_p of `form`
// for every good prime p <= pmax; bad primes are reported separately.
EichlerShimuraReport eichler_shimura_check(const WeierstrassCurve& curve,
                                           const QSeries& form, std::int64_t pmax);

} // namespace ecmf

#endif
