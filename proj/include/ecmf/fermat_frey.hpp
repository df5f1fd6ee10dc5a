#ifndef ECMF_FERMAT_FREY_HPP
#define ECMF_FERMAT_FREY_HPP

#include "ecmf/elliptic.hpp"
#include "ecmf/numeric.hpp"

#include <vector>

namespace ecmf {

// Candidate solution of X^n + Y^n = Z^n; validity is decided by
// check_fermat_triple, not by construction.
struct FermatTriple {
    Integer X, Y, Z;
    int n;

    friend bool operator==(const FermatTriple&, const FermatTriple&) = default;
};

struct FermatCheck {
    bool satisfies_equation;
    bool trivial; // XYZ = 0
};

FermatCheck check_fermat_triple(const FermatTriple& t);

// Exhaustive scan of 1 <= X <= Y <= bound for exponents nmin..nmax; a hit
// records Z as the exact integer n-th root. nmin = 2 is the Pythagorean
// control mode; the theorem regime starts at 3.
std::vector<FermatTriple> fermat_search(std::int64_t bound, int nmin, int nmax);

// a, b nonzero with a^p != -b^p, p an odd prime.
struct FreyParameters {
    Integer a, b;
    std::int64_t p;

    FreyParameters(Integer a, Integer b, std::int64_t p);
};

// y^2 = x (x - a^p)(x + b^p) as an integral model; its discriminant equals
// 16 (A B (A+B))^2 with A = a^p, B = b^p, asserted exactly.
WeierstrassCurve frey_curve(const FreyParameters& params);

} // namespace ecmf

#endif
