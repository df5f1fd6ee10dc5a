#include "ecmf/fermat_frey.hpp"

#include "ecmf/errors.hpp"

namespace ecmf {

FermatCheck check_fermat_triple(const FermatTriple& t) {
    if (t.n < 2) throw DomainError("check_fermat_triple: exponent must be >= 2");
    const unsigned n = static_cast<unsigned>(t.n);
    const bool eq = ipow(t.X, n) + ipow(t.Y, n) == ipow(t.Z, n);
    const bool trivial = t.X == 0 || t.Y == 0 || t.Z == 0;
    return {eq, trivial};
}

std::vector<FermatTriple> fermat_search(std::int64_t bound, int nmin, int nmax) {
    if (bound < 1) throw UsageError("fermat_search: bound must be >= 1");
    if (nmin < 2 || nmax < nmin)
        throw DomainError("fermat_search: exponent range must satisfy 2 <= nmin <= nmax");
    std::vector<FermatTriple> hits;
    for (int n = nmin; n <= nmax; ++n) {
        const unsigned un = static_cast<unsigned>(n);
        std::vector<Integer> powers(static_cast<std::size_t>(bound) + 1);
        for (std::int64_t v = 1; v <= bound; ++v)
            powers[static_cast<std::size_t>(v)] = ipow(Integer(v), un);
        for (std::int64_t x = 1; x <= bound; ++x) {
            for (std::int64_t y = x; y <= bound; ++y) {
                const Integer s =
                    powers[static_cast<std::size_t>(x)] + powers[static_cast<std::size_t>(y)];
                Integer root;
                if (is_perfect_nth_power(s, un, &root))
                    hits.push_back({Integer(x), Integer(y), root, n});
            }
        }
    }
    return hits; // loop order already sorts by (n, X, Y)
}

FreyParameters::FreyParameters(Integer a_, Integer b_, std::int64_t p_)
    : a(std::move(a_)), b(std::move(b_)), p(p_) {
    if (p < 3 || !is_prime_u64(static_cast<std::uint64_t>(p)) || p % 2 == 0)
        throw InvariantError("FreyParameters: p must be an odd prime >= 3");
}

WeierstrassCurve frey_curve(const FreyParameters& params) {
    if (params.a == 0 || params.b == 0)
        throw DomainError("frey_curve: a and b must be nonzero");
    const Integer A = ipow(params.a, static_cast<unsigned>(params.p));
    const Integer B = ipow(params.b, static_cast<unsigned>(params.p));
    if (A + B == 0)
        throw DomainError("frey_curve: a^p = -b^p gives a repeated root (singular model)");
    // x (x - A)(x + B) = x^3 + (B - A) x^2 - AB x
    WeierstrassCurve curve(0, B - A, 0, -A * B, 0, FreyTag{params.a, params.b, params.p});
    const Integer closed_form = 16 * (A * B * (A + B)) * (A * B * (A + B));
    if (curve.discriminant() != closed_form)
        throw InvariantError("frey_curve: discriminant identity 16(AB(A+B))^2 failed");
    return curve;
}

} // namespace ecmf
