#include "ecmf/errors.hpp"
#include "ecmf/q_expansions.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ecmf;

TEST_CASE("series ring basics") {
    // (1 - q) * (1 + q + q^2 + ...) = 1
    QSeries one_minus_q(0, {Integer(1), Integer(-1), Integer(0), Integer(0), Integer(0)});
    QSeries geo = series_invert(one_minus_q);
    for (long e = 0; e <= geo.top_exp(); ++e) CHECK(geo.coeff(e) == 1);
    QSeries prod = series_mul(one_minus_q, geo);
    CHECK(prod.coeff(0) == 1);
    for (long e = 1; e <= prod.top_exp(); ++e) CHECK(prod.coeff(e) == 0);

    // lead exponents add under multiplication, negate under inversion
    QSeries qa = QSeries::monomial(3, 1, 4);
    QSeries qb = QSeries::monomial(-1, 1, 4);
    CHECK(series_mul(qa, qb).lead_exp() == 2);
    QSeries unit_at_one(1, {Integer(1), Integer(2), Integer(1)});
    CHECK(series_invert(unit_at_one).lead_exp() == -1);

    QSeries bad_lead(0, {Integer(2), Integer(1)});
    CHECK_THROWS_AS(series_invert(bad_lead), DomainError);

    // the dispatcher mirrors the direct calls
    CHECK(series_ring_ops(qa, &qb, SeriesOp::Mul) == series_mul(qa, qb));
    CHECK(series_ring_ops(unit_at_one, nullptr, SeriesOp::Pow, 3) ==
          series_pow(unit_at_one, 3));
}

TEST_CASE("series multiplication is associative and commutative (sampled)") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> lead(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        auto mk = [&]() {
            std::vector<Integer> v(8);
            for (auto& x : v) x = coeff(rng);
            if (v[0] == 0) v[0] = 1;
            return QSeries(lead(rng), std::move(v));
        };
        QSeries a = mk(), b = mk(), c = mk();
        CHECK(series_mul(a, b) == series_mul(b, a));
        CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
    }
}

TEST_CASE("pentagonal expansion equals the naive truncated product") {
    CHECK(eta_product({{1, 24}}, 200) == oracles::naive_eta_product({{1, 24}}, 200));
    CHECK(eta_product({{1, 2}, {11, 2}}, 200) ==
          oracles::naive_eta_product({{1, 2}, {11, 2}}, 200));
    CHECK(eta_product({{3, 8}}, 120) == oracles::naive_eta_product({{3, 8}}, 120));
    CHECK(eta_product({{1, 1}, {23, 1}}, 80) ==
          oracles::naive_eta_product({{1, 1}, {23, 1}}, 80));
    // eta quotients (negative exponents) reduce to the same oracle
    CHECK(eta_product({{1, -24}, {2, 48}}, 60) ==
          oracles::naive_eta_product({{1, -24}, {2, 48}}, 60));
}

TEST_CASE("eta products: quoted expansions and the prefactor guard") {
    QSeries delta = eta_product({{1, 24}}, 8);
    CHECK(delta.lead_exp() == 1);
    CHECK(delta.coeff(1) == 1);
    CHECK(delta.coeff(2) == -24);
    CHECK(delta.coeff(3) == 252);
    CHECK(delta.coeff(4) == -1472);

    QSeries f = eta_product({{1, 2}, {11, 2}}, 7);
    CHECK(f.lead_exp() == 1);
    CHECK(f.coeff(1) == 1);
    CHECK(f.coeff(2) == -2);
    CHECK(f.coeff(3) == -1);
    CHECK(f.coeff(4) == 2);
    CHECK(f.coeff(5) == 1);
    CHECK(f.coeff(6) == 2);
    CHECK(f.coeff(7) == -2);

    CHECK_THROWS_AS(eta_product({{1, 1}}, 8), DomainError); // q^{1/24}
    CHECK_THROWS_AS(eta_product({}, 8), UsageError);
}

TEST_CASE("Eisenstein E4") {
    QSeries e4 = eisenstein_e4(6);
    CHECK(e4.coeff(0) == 1);
    CHECK(e4.coeff(1) == 240);
    CHECK(e4.coeff(2) == 2160); // 240 * sigma_3(2) = 240 * 9
    CHECK(e4.coeff(3) == 6720);
}

TEST_CASE("j-invariant expansion") {
    QSeries j = j_invariant(5);
    CHECK(j.lead_exp() == -1);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.coeff(2) == 21493760);
    CHECK(j.coeff(3) == Integer("864299970"));

    QSeries j30 = j_invariant(30);
    for (long e = -1; e <= j30.top_exp(); ++e) CHECK(j30.coeff(e) > 0);
}

TEST_CASE("level-11 newform: normalization, vanishing, Hecke recursion, growth") {
    QSeries f = newform_level11(2210); // reaches 47^2
    CHECK(f.lead_exp() == 1);          // c_n = 0 for n <= 0
    CHECK(f.coeff(1) == 1);
    CHECK(f.coeff(2) == -2);
    CHECK(f.coeff(0) == 0);
    CHECK(f.coeff(-3) == 0);

    for (std::int64_t p : primes_up_to(50)) {
        if (p == 11) continue; // bad prime has its own Euler shape
        CHECK(f.coeff(p * p) == f.coeff(p) * f.coeff(p) - p);
    }
    // |c_n| <= 2 sqrt(n) d(n), checked numerically, and the 4 n^{3/2} cap
    for (long n = 1; n <= 1000; ++n) {
        const double cn = std::abs(f.coeff(n).convert_to<double>());
        CHECK(cn <= 2.0 * std::sqrt(static_cast<double>(n)) *
                        static_cast<double>(oracles::divisor_count(n)));
        CHECK(cn <= 4.0 * std::pow(static_cast<double>(n), 1.5));
    }
}

TEST_CASE("evaluation at points of H") {
    QSeries zero = QSeries::zero(10);
    CHECK(std::abs(evaluate_at(zero, HalfPlanePoint(0.3, 1.0)).value) == 0.0);

    QSeries q_only = QSeries::monomial(1, 1, 4);
    const double expected = std::exp(-2.0 * M_PI);
    CHECK(std::abs(evaluate_at(q_only, HalfPlanePoint(0, 1)).value - expected) < 1e-12);

    // truncation stability of the newform at z = i
    QSeries f300 = newform_level11(300);
    QSeries f400 = newform_level11(400);
    const auto v300 = evaluate_at(f300, HalfPlanePoint(0, 1)).value;
    const auto v400 = evaluate_at(f400, HalfPlanePoint(0, 1)).value;
    CHECK(std::abs(v300 - v400) < 1e-12);

    CHECK_THROWS_AS(evaluate_at(f300, HalfPlanePoint(0, 0.05)), AccuracyError);
    // growth-cap screen rejects series that break the promised bound
    EvalOptions strict;
    strict.growth_cap = 1e-6;
    CHECK_THROWS_AS(evaluate_at(f300, HalfPlanePoint(0, 1), strict), AccuracyError);
}

TEST_CASE("weight-2 transformation law of the level-11 form") {
    Level n11(11);
    const GroupElement2x2 T(1, 1, 0, 1);
    const GroupElement2x2 V(1, 0, 11, 1);

    QSeries f = newform_level11(600);
    HalfPlanePoint z(0.37, 1.1);

    TransformReport id = check_weight2_transform(f, GroupElement2x2::identity(), n11, z, 1e-12);
    CHECK(id.pass);
    CHECK(id.abs_diff == 0.0);

    TransformReport per = check_weight2_transform(f, T, n11, z, 1e-12);
    CHECK(per.pass); // periodicity is built into the q-expansion

    const HalfPlanePoint z0(0.1, 0.8); // the nontrivial generator's test point
    const int need = order_for_transform(V, z0, 1e-6 / 4.0, 4.0, 400);
    QSeries flong = newform_level11(need);
    TransformReport tr = check_weight2_transform(flong, V, n11, z0, 1e-6);
    CHECK(tr.pass);
    CHECK(tr.certified_error < 1e-6);
    CHECK(std::abs(tr.lhs) > 1e-4); // the comparison is not vacuously 0 = 0

    // too short a series cannot certify the tolerance: refuse, not guess
    CHECK_THROWS_AS(check_weight2_transform(newform_level11(40), V, n11, z0, 1e-6),
                    AccuracyError);
    // non-members are rejected
    CHECK_THROWS_AS(check_weight2_transform(f, GroupElement2x2(1, 0, 1, 1), n11, z, 1e-6),
                    UsageError);
}

TEST_CASE("general weight 2k: Delta satisfies the weight-12 law") {
    // Delta is a cusp form for SL2(Z); tau(n) needs a large growth cap
    QSeries delta = eta_product({{1, 24}}, 200);
    Level n1(1);
    const GroupElement2x2 S(0, -1, 1, 0);
    HalfPlanePoint z(0.3, 1.1);
    // tau(n) ~ d(n) n^{11/2}, so the n^{3/2} cap needs a large constant
    TransformReport r = check_weight2_transform(delta, S, n1, z, 1e-8, 6, 1e11);
    CHECK(r.pass);
    CHECK(std::abs(r.lhs) > 1e-9);
}

TEST_CASE("automorphic invariance of j") {
    QSeries j = j_invariant(64);
    const GroupElement2x2 T(1, 1, 0, 1);
    const GroupElement2x2 S(0, -1, 1, 0);

    TransformReport per = automorphic_check(j, T, HalfPlanePoint(0.2, 1.3), 1e-10);
    CHECK(per.pass);

    TransformReport inv = automorphic_check(j, S, HalfPlanePoint(0, 2), 1e-4);
    CHECK(inv.pass);
    // j(2i) = 66^3, a classical value, pinning the normalization
    CHECK(std::abs(inv.rhs - std::complex<double>(287496.0, 0.0)) < 1e-3);

    TransformReport inv2 = automorphic_check(j, S, HalfPlanePoint(0.5, 1.5), 1e-4);
    CHECK(inv2.pass);

    // i is a fixed point of S: both sides are literally the same number
    TransformReport fix = automorphic_check(j, S, HalfPlanePoint(0, 1), 1e-9);
    CHECK(fix.pass);
}

TEST_CASE("series serialization") {
    QSeries j = j_invariant(3); // exponents -1 .. 2
    CHECK(j.str(8) == "q^-1 + 744 + 196884 q + 21493760 q^2");
    CHECK(series_to_json(j) ==
          "{\"leadExp\": -1, \"coeffs\": [\"1\", \"744\", \"196884\", \"21493760\"]}");
    QSeries f = newform_level11(4); // exponents 1 .. 5
    CHECK(f.str(8) == "q - 2 q^2 - q^3 + 2 q^4 + q^5");
    CHECK(f.str(3) == "q - 2 q^2 - q^3 + ...");
}
