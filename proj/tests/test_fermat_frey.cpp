#include "ecmf/errors.hpp"
#include "ecmf/fermat_frey.hpp"

#include <doctest.h>

#include <random>

using namespace ecmf;

TEST_CASE("fermat triple checks") {
    FermatCheck pyth = check_fermat_triple({3, 4, 5, 2});
    CHECK(pyth.satisfies_equation);
    CHECK_FALSE(pyth.trivial);

    FermatCheck triv = check_fermat_triple({0, 7, 7, 3});
    CHECK(triv.satisfies_equation);
    CHECK(triv.trivial);

    CHECK_FALSE(check_fermat_triple({1, 1, 1, 3}).satisfies_equation);
    CHECK_THROWS_AS(check_fermat_triple({1, 2, 3, 1}), DomainError);
}

namespace {

// independent recomputation with a different loop order (n outermost
// descending, Y before X) and a different perfect-power test
std::vector<FermatTriple> search_reversed(std::int64_t bound, int nmin, int nmax) {
    std::vector<FermatTriple> hits;
    for (int n = nmax; n >= nmin; --n) {
        for (std::int64_t y = bound; y >= 1; --y) {
            for (std::int64_t x = y; x >= 1; --x) {
                const Integer s =
                    ipow(Integer(x), static_cast<unsigned>(n)) + ipow(Integer(y), static_cast<unsigned>(n));
                // scan z upward; z^n is monotone
                Integer z = 1;
                while (ipow(z, static_cast<unsigned>(n)) < s) ++z;
                if (ipow(z, static_cast<unsigned>(n)) == s)
                    hits.push_back({Integer(x), Integer(y), z, n});
            }
        }
    }
    return hits;
}

} // namespace

TEST_CASE("fermat box search") {
    CHECK(fermat_search(20, 3, 7).empty());
    CHECK(fermat_search(1, 3, 3).empty());

    auto control = fermat_search(20, 2, 2);
    bool has345 = false;
    for (const auto& t : control)
        if (t.X == 3 && t.Y == 4 && t.Z == 5 && t.n == 2) has345 = true;
    CHECK(has345);

    // agreement with the reversed-loop oracle (result sets, order-free)
    auto a = fermat_search(20, 2, 4);
    auto b = search_reversed(20, 2, 4);
    CHECK(a.size() == b.size());
    for (const auto& t : a) {
        bool found = false;
        for (const auto& u : b)
            if (t == u) found = true;
        CHECK(found);
    }
    CHECK_THROWS_AS(fermat_search(0, 3, 4), UsageError);
    CHECK_THROWS_AS(fermat_search(10, 1, 4), DomainError);
}

TEST_CASE("frey curve construction") {
    WeierstrassCurve E = frey_curve(FreyParameters(2, 1, 3));
    CHECK(E.id() == "[0,-7,0,-8,0]");
    CHECK(E.discriminant() == 82944); // 16 (8 * 1 * 9)^2
    CHECK(std::holds_alternative<FreyTag>(E.provenance()));

    CHECK_THROWS_AS(frey_curve(FreyParameters(1, -1, 3)), DomainError); // A + B = 0
    CHECK_THROWS_AS(frey_curve(FreyParameters(0, 1, 3)), DomainError);
    CHECK_THROWS_AS(FreyParameters(2, 1, 4), InvariantError);
    CHECK_THROWS_AS(FreyParameters(2, 1, 2), InvariantError);
}

TEST_CASE("frey discriminant identity on random parameters") {
    std::mt19937 rng(2026);
    std::uniform_int_distribution<std::int64_t> ab(-12, 12);
    const std::int64_t ps[] = {3, 5, 7};
    int done = 0;
    while (done < 50) {
        const std::int64_t a = ab(rng), b = ab(rng);
        const std::int64_t p = ps[static_cast<std::size_t>(done) % 3];
        if (a == 0 || b == 0) continue;
        const Integer A = ipow(Integer(a), static_cast<unsigned>(p));
        const Integer B = ipow(Integer(b), static_cast<unsigned>(p));
        if (A + B == 0) continue;
        WeierstrassCurve E = frey_curve(FreyParameters(a, b, p));
        // the module-level discriminant and the closed form must agree
        CHECK(E.discriminant() == 16 * (A * B * (A + B)) * (A * B * (A + B)));
        ++done;
    }
}
