#ifndef ECMF_ELLIPTIC_HPP
#define ECMF_ELLIPTIC_HPP

#include "ecmf/finite_fields.hpp"
#include "ecmf/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace ecmf {

struct GeneralModelTag {};
struct LegendreTag { Rational lambda; };
struct FreyTag { Integer a, b; std::int64_t p; };
using ModelProvenance = std::variant<GeneralModelTag, LegendreTag, FreyTag>;

// Integral model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
// nonzero discriminant.
class WeierstrassCurve {
public:
    WeierstrassCurve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6,
                     ModelProvenance provenance = GeneralModelTag{});

    const Integer& a1() const { return a1_; }
    const Integer& a2() const { return a2_; }
    const Integer& a3() const { return a3_; }
    const Integer& a4() const { return a4_; }
    const Integer& a6() const { return a6_; }

    Integer b2() const { return a1_ * a1_ + 4 * a2_; }
    Integer b4() const { return 2 * a4_ + a1_ * a3_; }
    Integer b6() const { return a3_ * a3_ + 4 * a6_; }
    Integer b8() const {
        return a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ -
               a4_ * a4_;
    }
    Integer discriminant() const;

    const ModelProvenance& provenance() const { return provenance_; }

    // Canonical literal "[a1,a2,a3,a4,a6]"; doubles as the cache key.
    std::string id() const;

private:
    Integer a1_, a2_, a3_, a4_, a6_;
    ModelProvenance provenance_;
};

// Clears denominators of y^2 = x(x-1)(x-lambda) to an integral model;
// lambda in {0,1} is rejected as singular.
WeierstrassCurve from_legendre(const Rational& lambda);

// Curve literals: "[a1,a2,a3,a4,a6]" or "legendre:u/v" (also "legendre:u").
WeierstrassCurve parse_curve(const std::string& text);

Integer discriminant(const WeierstrassCurve& curve);

// Discriminant of raw a-invariants; zero signals a singular model that
// WeierstrassCurve itself would refuse to hold.
Integer discriminant_from_invariants(const Integer& a1, const Integer& a2, const Integer& a3,
                                     const Integer& a4, const Integer& a6);

// Coefficients reduced to canonical residues mod p, plus the good/bad flag.
class ReducedCurve {
public:
    ReducedCurve(const WeierstrassCurve& curve, const PrimeModulus& p);

    std::int64_t p() const { return p_.value(); }
    const PrimeModulus& modulus() const { return p_; }
    bool good_reduction() const { return good_; }
    std::int64_t a1() const { return a1_; }
    std::int64_t a2() const { return a2_; }
    std::int64_t a3() const { return a3_; }
    std::int64_t a4() const { return a4_; }
    std::int64_t a6() const { return a6_; }

private:
    PrimeModulus p_;
    std::int64_t a1_, a2_, a3_, a4_, a6_;
    bool good_;
};

ReducedCurve reduce_mod_p(const WeierstrassCurve& curve, const PrimeModulus& p);

enum class CountMethod {
    Auto,         // odd p with a1 = a3 = 0: character sum; otherwise pair enumeration
    CharacterSum, // odd p; cross terms absorbed by completing the square
    Enumerate,    // walk all (x, y)
};

// Number of projective points of the reduced curve over F_{p^degree},
// point at infinity included.
std::int64_t count_points(const ReducedCurve& curve, int degree = 1,
                          CountMethod method = CountMethod::Auto,
                          std::int64_t bound = kDefaultEnumerationBound);
std::int64_t count_points(const ReducedCurve& curve, const ExtField& field,
                          CountMethod method = CountMethod::Auto,
                          std::int64_t bound = kDefaultEnumerationBound);

// a_p = p + 1 - |E(F_p)| at a prime of good reduction. Checks the Hasse
// bound before returning.
std::int64_t trace_ap(const WeierstrassCurve& curve, const PrimeModulus& p);

// Reduction-type fiber coefficient at a bad prime of a model assumed
// minimal at p: +1 split node, -1 non-split node, 0 cusp.
int bad_fiber_ap(const WeierstrassCurve& curve, const PrimeModulus& p);

// Projective triple over one field, not all coordinates zero.
class CurvePoint {
public:
    CurvePoint(ExtFieldElement X, ExtFieldElement Y, ExtFieldElement Z);
    const ExtFieldElement& X() const { return x_; }
    const ExtFieldElement& Y() const { return y_; }
    const ExtFieldElement& Z() const { return z_; }

private:
    ExtFieldElement x_, y_, z_;
};

// Equality of the underlying projective points (vanishing 2x2 minors).
bool projectively_equal(const CurvePoint& a, const CurvePoint& b);

bool is_on_curve(const CurvePoint& point, const ReducedCurve& curve);

} // namespace ecmf

#endif
