// Acceptance suite: one check per numbered criterion, one pass/fail line
// each. Run everything (no arguments) or a single one with --criterion N.
// Exit status 0 iff every executed criterion passed.

#include "ecmf/cli.hpp"
#include "ecmf/fermat_frey.hpp"
#include "ecmf/local_lfunctions.hpp"
#include "ecmf/modular_group.hpp"
#include "ecmf/q_expansions.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>

using namespace ecmf;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const WeierstrassCurve& curve_x3_minus_x() {
    static WeierstrassCurve E(0, 0, 0, -1, 0);
    return E;
}

const WeierstrassCurve& curve_11a() {
    static WeierstrassCurve E(0, -1, 1, -10, -20);
    return E;
}

std::vector<WeierstrassCurve> builtin_test_curves() {
    return {curve_x3_minus_x(), curve_11a(), from_legendre(Rational(2)),
            from_legendre(Rational(3)), from_legendre(Rational(5)),
            frey_curve(FreyParameters(2, 1, 3))};
}

struct Outcome {
    bool pass;
    std::string detail;
};

// 1: j-invariant coefficients 744, 196884, 21493760 exactly; < 1 s at order 64
Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const QSeries j = j_invariant(64);
    const double dt = seconds_since(t0);
    const bool values = j.coeff(0) == 744 && j.coeff(1) == 196884 && j.coeff(2) == 21493760;
    std::ostringstream os;
    os << "coefficients (744, 196884, 21493760) "
       << (values ? "exact" : "WRONG") << ", " << dt << " s";
    return {values && dt < 1.0, os.str()};
}

// 2: genus_X0(2) = 0, genus_X0(11) = 1; formulas match coset enumeration N <= 30
Outcome criterion2() {
    bool pass = genus_X0(Level(2)) == 0 && genus_X0(Level(11)) == 1;
    int checked = 0;
    for (std::int64_t N = 1; N <= 30 && pass; ++N) {
        const auto data = oracles::coset_enumeration(N);
        pass = index_gamma0(Level(N)) == data.index && cusp_count(Level(N)) == data.cusps &&
               elliptic_points_order2(Level(N)) == data.nu2 &&
               elliptic_points_order3(Level(N)) == data.nu3 && genus_X0(Level(N)) == data.genus;
        ++checked;
    }
    std::ostringstream os;
    os << "g(X0(2)) = " << genus_X0(Level(2)) << ", g(X0(11)) = " << genus_X0(Level(11))
       << "; coset-enumeration agreement for N <= " << checked;
    return {pass, os.str()};
}

// 3: a_p = c_p for every good prime p <= 200, independent pipelines; < 30 s
Outcome criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    const QSeries form = newform_level11(211);
    const EichlerShimuraReport report = eichler_shimura_check(curve_11a(), form, 200);
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << report.good_rows.size() << " good primes compared";
    if (!report.all_match) os << ", first mismatch at p = " << report.first_mismatch;
    os << ", " << dt << " s";
    return {report.all_match && dt < 30.0, os.str()};
}

// 4: exponential vs closed-form local zeta, exact, good p <= 13, p^m <= 10^4; < 20 s
Outcome criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    int compared = 0;
    for (const WeierstrassCurve* curve : {&curve_x3_minus_x(), &curve_11a()}) {
        for (std::int64_t p : primes_up_to(13)) {
            PrimeModulus pm(p);
            if (!reduce_mod_p(*curve, pm).good_reduction()) continue;
            int depth = 0;
            std::int64_t q = 1;
            while (q <= 10000 / p) { q *= p; ++depth; }
            const RationalityReport r = verify_rationality(*curve, pm, depth);
            pass = pass && r.pass;
            ++compared;
        }
    }
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << compared << " (curve, p) pairs, exact rational equality, " << dt << " s";
    return {pass && dt < 20.0, os.str()};
}

// 5: weight-2 law for both Gamma_0(11) generators at 10 random z, |diff| < 1e-6;
// order 400 is the floor, raised until the tail bound certifies the tolerance
Outcome criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    const double tol = 1e-6;
    const Level n11(11);
    const GroupElement2x2 T(1, 1, 0, 1);
    const GroupElement2x2 V(1, 0, 11, 1);

    std::mt19937_64 rng(0x5eed11);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.5, 2.0);
    std::vector<HalfPlanePoint> zs;
    for (int i = 0; i < 10; ++i) zs.emplace_back(re(rng), im(rng));

    int order = 400;
    for (const auto& z : zs) {
        order = std::max(order, order_for_transform(T, z, tol / 4.0, 4.0, 400));
        order = std::max(order, order_for_transform(V, z, tol / 4.0, 4.0, 400));
    }
    const QSeries f = newform_level11(order);

    bool pass = true;
    double worst = 0.0;
    for (const auto& z : zs) {
        for (const auto* g : {&T, &V}) {
            const TransformReport r = check_weight2_transform(f, *g, n11, z, tol);
            pass = pass && r.pass;
            worst = std::max(worst, r.abs_diff);
        }
    }
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "20 checks (2 generators x 10 z), worst |f(gz) - (cz+d)^2 f(z)| = " << worst
       << ", order used " << order << ", " << dt << " s";
    return {pass && dt < 5.0, os.str()};
}

// 6: |j(-1/z) - j(z)| < 1e-4 at z = 2i and z = 0.5 + 1.5i, order >= 60; < 2 s
Outcome criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    const QSeries j = j_invariant(64);
    const GroupElement2x2 S(0, -1, 1, 0);
    const TransformReport a = automorphic_check(j, S, HalfPlanePoint(0.0, 2.0), 1e-4);
    const TransformReport b = automorphic_check(j, S, HalfPlanePoint(0.5, 1.5), 1e-4);
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "|j(-1/z) - j(z)| = " << a.abs_diff << " at 2i, " << b.abs_diff
       << " at 0.5+1.5i, " << dt << " s";
    return {a.pass && b.pass && dt < 2.0, os.str()};
}

// 7: Hasse bound for all good p <= 200 on the built-in curves; counting-method
// agreement for odd good p <= 61
Outcome criterion7() {
    bool pass = true;
    int hasse_checks = 0, agreement_checks = 0;
    for (const auto& curve : builtin_test_curves()) {
        for (std::int64_t p : primes_up_to(200)) {
            PrimeModulus pm(p);
            ReducedCurve E(curve, pm);
            if (!E.good_reduction()) continue;
            const std::int64_t ap = trace_ap(curve, pm);
            pass = pass && static_cast<double>(ap) * static_cast<double>(ap) <=
                               4.0 * static_cast<double>(p);
            ++hasse_checks;
            if (p != 2 && p <= 61) {
                pass = pass && count_points(E, 1, CountMethod::CharacterSum) ==
                                   count_points(E, 1, CountMethod::Enumerate);
                ++agreement_checks;
            }
        }
    }
    std::ostringstream os;
    os << hasse_checks << " Hasse checks, " << agreement_checks
       << " character-sum/enumeration agreements";
    return {pass, os.str()};
}

// 8: empty Fermat box at B = 50, n in [3,7]; the n = 2 control finds (3,4,5); < 30 s
Outcome criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto hits = fermat_search(50, 3, 7);
    const auto control = fermat_search(50, 2, 2);
    bool has345 = false;
    for (const auto& t : control)
        if (t.X == 3 && t.Y == 4 && t.Z == 5) has345 = true;
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << hits.size() << " hits for n >= 3, control found (3,4,5): " << (has345 ? "yes" : "no")
       << ", " << dt << " s";
    return {hits.empty() && has345 && dt < 30.0, os.str()};
}

// 9: Riemann partial sum at s = 2, N = 10^6 within 1e-5 of pi^2/6, and
// Euler-product vs Dirichlet-sum for the conductor-11 curve at s = 2,
// cutoff 10^4, within 1e-6
Outcome criterion9() {
    const double zeta = riemann_zeta_partial(2.0, 1000000);
    const double zeta_err = std::abs(zeta - M_PI * M_PI / 6.0);
    const bool zeta_ok = zeta_err < 1e-5;

    const std::int64_t cutoff = 10000;
    std::vector<LocalFactor> factors;
    for (std::int64_t p : primes_up_to(cutoff))
        factors.push_back(local_factor_for(curve_11a(), PrimeModulus(p)));
    const DirichletCoefficients coeffs = dirichlet_from_euler(factors, cutoff);
    const double prod = l_value({2.0, cutoff, LMethod::EulerProduct}, factors).value;
    const double sum = l_value({2.0, cutoff, LMethod::DirichletSum}, coeffs).value;
    const double gap = std::abs(prod - sum);
    const bool gap_ok = gap < 1e-6;

    std::ostringstream os;
    os << "zeta partial-sum error " << zeta_err << " (tol 1e-5): "
       << (zeta_ok ? "ok" : "FAIL") << "; euler-vs-dirichlet gap " << gap
       << " (tol 1e-6): " << (gap_ok ? "ok" : "FAIL");
    if (!gap_ok)
        os << " [the gap is the 10^4-smooth tail of the series, a constant of the "
              "mathematics near 5.7e-6; it first drops below 1e-6 at cutoff 2e4]";
    return {zeta_ok && gap_ok, os.str()};
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                               criterion6, criterion7, criterion8, criterion9};
    bool all_pass = true;
    for (int k = 1; k <= 9; ++k) {
        if (only && k != only) continue;
        Outcome o;
        try {
            o = criteria[k - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << " — "
                  << o.detail << "\n";
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
