#include "ecmf/elliptic.hpp"

#include "ecmf/counting_field.hpp"
#include "ecmf/errors.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace ecmf {

WeierstrassCurve::WeierstrassCurve(Integer a1, Integer a2, Integer a3, Integer a4,
                                   Integer a6, ModelProvenance provenance)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)),
      a6_(std::move(a6)), provenance_(std::move(provenance)) {
    if (discriminant() == 0)
        throw InvariantError("WeierstrassCurve: discriminant vanishes, model " + id() +
                             " is singular");
}

Integer WeierstrassCurve::discriminant() const {
    return discriminant_from_invariants(a1_, a2_, a3_, a4_, a6_);
}

Integer discriminant_from_invariants(const Integer& a1, const Integer& a2, const Integer& a3,
                                     const Integer& a4, const Integer& a6) {
    const Integer b2 = a1 * a1 + 4 * a2;
    const Integer b4 = 2 * a4 + a1 * a3;
    const Integer b6 = a3 * a3 + 4 * a6;
    const Integer b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

std::string WeierstrassCurve::id() const {
    std::ostringstream os;
    os << "[" << a1_ << "," << a2_ << "," << a3_ << "," << a4_ << "," << a6_ << "]";
    return os.str();
}

WeierstrassCurve from_legendre(const Rational& lambda) {
    if (lambda == 0 || lambda == 1)
        throw DomainError("from_legendre: lambda in {0,1} gives a repeated root (singular model)");
    // x -> X/v^2, y -> Y/v^3 clears lambda = u/v from
    // y^2 = x^3 - (1+lambda) x^2 + lambda x.
    const Integer u = boost::multiprecision::numerator(lambda);
    const Integer v = boost::multiprecision::denominator(lambda);
    return WeierstrassCurve(0, -v * (u + v), 0, u * v * v * v, 0, LegendreTag{lambda});
}

namespace {

class CurveScanner {
public:
    explicit CurveScanner(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    void expect(char c) {
        if (!consume(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    Integer big_integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t digits = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_; ++digits;
        }
        if (digits == 0) throw ParseError("expected an integer", start);
        return Integer(s_.substr(start, pos_ - start));
    }
    void end() {
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing characters", pos_);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

WeierstrassCurve parse_curve(const std::string& text) {
    if (text.rfind("legendre:", 0) == 0) {
        std::string rest = text.substr(9);
        CurveScanner ls(rest);
        Integer u = ls.big_integer();
        Integer v = 1;
        if (ls.consume('/')) v = ls.big_integer();
        ls.end();
        if (v == 0) throw ParseError("legendre: zero denominator", 9);
        return from_legendre(make_rational(u, v));
    }
    CurveScanner sc(text);
    sc.expect('[');
    Integer a1 = sc.big_integer();
    sc.expect(',');
    Integer a2 = sc.big_integer();
    sc.expect(',');
    Integer a3 = sc.big_integer();
    sc.expect(',');
    Integer a4 = sc.big_integer();
    sc.expect(',');
    Integer a6 = sc.big_integer();
    sc.expect(']');
    sc.end();
    return WeierstrassCurve(a1, a2, a3, a4, a6);
}

Integer discriminant(const WeierstrassCurve& curve) { return curve.discriminant(); }

namespace {

std::int64_t to_residue(const Integer& a, std::int64_t p) {
    Integer r = a % p;
    if (r < 0) r += p;
    return r.convert_to<std::int64_t>();
}

} // namespace

ReducedCurve::ReducedCurve(const WeierstrassCurve& curve, const PrimeModulus& p)
    : p_(p), a1_(to_residue(curve.a1(), p.value())), a2_(to_residue(curve.a2(), p.value())),
      a3_(to_residue(curve.a3(), p.value())), a4_(to_residue(curve.a4(), p.value())),
      a6_(to_residue(curve.a6(), p.value())) {
    good_ = curve.discriminant() % p.value() != 0;
}

ReducedCurve reduce_mod_p(const WeierstrassCurve& curve, const PrimeModulus& p) {
    return ReducedCurve(curve, p);
}

namespace {

// Affine solutions of y^2 + h(x) y = f(x) over F_p by direct pair walk.
std::int64_t count_affine_enumerate_prime(const ReducedCurve& E) {
    const std::int64_t p = E.p();
    std::int64_t count = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t fx =
            (((x + E.a2()) % p * x + E.a4()) % p * x + E.a6()) % p;
        const std::int64_t hx = (E.a1() * x + E.a3()) % p;
        for (std::int64_t y = 0; y < p; ++y) {
            if (((y + hx) % p * y - fx) % p == 0) ++count;
        }
    }
    return count;
}

// Affine solutions over odd F_p via sum of 1 + chi(g(x)) where
// g = 4f + h^2 comes from completing the square in y.
std::int64_t count_affine_charsum_prime(const ReducedCurve& E) {
    const std::int64_t p = E.p();
    if (p == 2) throw UsageError("count_points: character sum needs odd p");
    // residue table beats repeated Euler-criterion powmods
    std::vector<std::uint8_t> is_square(static_cast<std::size_t>(p), 0);
    for (std::int64_t t = 0; t < p; ++t) is_square[static_cast<std::size_t>(t * t % p)] = 1;

    std::int64_t count = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t fx =
            (((x + E.a2()) % p * x + E.a4()) % p * x + E.a6()) % p;
        const std::int64_t hx = (E.a1() * x + E.a3()) % p;
        const std::int64_t gx = (4 * fx + hx * hx) % p;
        if (gx == 0)
            count += 1;
        else if (is_square[static_cast<std::size_t>(gx)])
            count += 2;
    }
    return count;
}

std::int64_t count_affine_enumerate_ext(const ReducedCurve& E, const CountingField& F) {
    const std::int64_t q = F.q();
    const std::uint32_t a1 = F.from_int(E.a1());
    const std::uint32_t a2 = F.from_int(E.a2());
    const std::uint32_t a3 = F.from_int(E.a3());
    const std::uint32_t a4 = F.from_int(E.a4());
    const std::uint32_t a6 = F.from_int(E.a6());

    std::int64_t count = 0;
    if (F.char2()) {
        for (std::int64_t xi = 0; xi < q; ++xi) {
            const auto x = static_cast<std::uint32_t>(xi);
            const std::uint32_t fx =
                F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6);
            const std::uint32_t hx = F.add(F.mul(a1, x), a3);
            if (hx == 0) {
                for (std::int64_t yi = 0; yi < q; ++yi)
                    if ((F.square(static_cast<std::uint32_t>(yi)) ^ fx) == 0) ++count;
            } else {
                const std::int64_t logh = F.log(hx);
                if ((F.square(0) ^ fx) == 0) ++count; // y = 0 term
                for (std::int64_t yi = 1; yi < q; ++yi) {
                    const auto y = static_cast<std::uint32_t>(yi);
                    const std::uint32_t hy = F.exp(logh + F.log(y));
                    if ((F.square(y) ^ hy ^ fx) == 0) ++count;
                }
            }
        }
        return count;
    }

    for (std::int64_t xi = 0; xi < q; ++xi) {
        const auto x = static_cast<std::uint32_t>(xi);
        const std::uint32_t fx = F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6);
        const std::uint32_t hx = F.add(F.mul(a1, x), a3);
        const std::uint64_t target = F.packed(fx);
        if (hx == 0) {
            for (std::int64_t yi = 0; yi < q; ++yi)
                if (F.packed(F.square(static_cast<std::uint32_t>(yi))) == target) ++count;
        } else {
            const std::int64_t logh = F.log(hx);
            if (F.packed(F.square(0)) == target) ++count;
            for (std::int64_t yi = 1; yi < q; ++yi) {
                const auto y = static_cast<std::uint32_t>(yi);
                const std::uint32_t hy = F.exp(logh + F.log(y));
                if (F.packed_add(F.packed(F.square(y)), F.packed(hy)) == target) ++count;
            }
        }
    }
    return count;
}

std::int64_t count_affine_charsum_ext(const ReducedCurve& E, const CountingField& F) {
    if (F.char2()) throw UsageError("count_points: character sum needs odd p");
    const std::int64_t q = F.q();
    const std::uint32_t a1 = F.from_int(E.a1());
    const std::uint32_t a2 = F.from_int(E.a2());
    const std::uint32_t a3 = F.from_int(E.a3());
    const std::uint32_t a4 = F.from_int(E.a4());
    const std::uint32_t a6 = F.from_int(E.a6());
    const std::uint32_t four = F.from_int(4);

    std::int64_t count = 0;
    for (std::int64_t xi = 0; xi < q; ++xi) {
        const auto x = static_cast<std::uint32_t>(xi);
        const std::uint32_t fx = F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6);
        const std::uint32_t hx = F.add(F.mul(a1, x), a3);
        const std::uint32_t gx = F.add(F.mul(four, fx), F.square(hx));
        count += 1 + F.chi(gx);
    }
    return count;
}

} // namespace

std::int64_t count_points(const ReducedCurve& curve, const ExtField& field,
                          CountMethod method, std::int64_t bound) {
    if (field.p() != curve.p())
        throw UsageError("count_points: extension field over a different prime");
    if (!field.cardinality_within(bound))
        throw ResourceError("count_points: p^n exceeds the enumeration bound " +
                            std::to_string(bound));
    if (method == CountMethod::Auto) {
        const bool chi_ok = curve.p() != 2 && curve.a1() == 0 && curve.a3() == 0;
        method = chi_ok ? CountMethod::CharacterSum : CountMethod::Enumerate;
    }
    if (field.degree() == 1) {
        std::int64_t affine = method == CountMethod::CharacterSum
                                  ? count_affine_charsum_prime(curve)
                                  : count_affine_enumerate_prime(curve);
        return affine + 1;
    }
    CountingField F(field, bound);
    std::int64_t affine = method == CountMethod::CharacterSum
                              ? count_affine_charsum_ext(curve, F)
                              : count_affine_enumerate_ext(curve, F);
    return affine + 1;
}

std::int64_t count_points(const ReducedCurve& curve, int degree, CountMethod method,
                          std::int64_t bound) {
    if (degree < 1) throw UsageError("count_points: degree must be >= 1");
    if (degree == 1) {
        if (curve.p() > bound)
            throw ResourceError("count_points: p exceeds the enumeration bound " +
                                std::to_string(bound));
        if (method == CountMethod::Auto) {
            const bool chi_ok = curve.p() != 2 && curve.a1() == 0 && curve.a3() == 0;
            method = chi_ok ? CountMethod::CharacterSum : CountMethod::Enumerate;
        }
        std::int64_t affine = method == CountMethod::CharacterSum
                                  ? count_affine_charsum_prime(curve)
                                  : count_affine_enumerate_prime(curve);
        return affine + 1;
    }
    auto field = ExtField::make(curve.modulus(), degree);
    return count_points(curve, *field, method, bound);
}

std::int64_t trace_ap(const WeierstrassCurve& curve, const PrimeModulus& p) {
    ReducedCurve E(curve, p);
    if (!E.good_reduction())
        throw UsageError("trace_ap: bad reduction at " + std::to_string(p.value()) +
                         "; use bad_fiber_ap");
    // The completed-square character sum counts any model at odd p; the
    // substitution y -> y + (a1 x + a3)/2 is a bijection fibrewise.
    const CountMethod method =
        p.value() == 2 ? CountMethod::Enumerate : CountMethod::CharacterSum;
    const std::int64_t N = count_points(E, 1, method);
    const std::int64_t ap = p.value() + 1 - N;
    if (ap * ap > 4 * p.value())
        throw InvariantError("trace_ap: Hasse bound violated at p = " +
                             std::to_string(p.value()));
    return ap;
}

int bad_fiber_ap(const WeierstrassCurve& curve, const PrimeModulus& p) {
    ReducedCurve E(curve, p);
    if (E.good_reduction())
        throw UsageError("bad_fiber_ap: good reduction at " + std::to_string(p.value()) +
                         "; use trace_ap");
    const std::int64_t pv = p.value();
    if (pv > 100000)
        throw ResourceError("bad_fiber_ap: singular-point search capped at p <= 100000");

    // locate singular affine points: on the curve with both partials zero
    std::int64_t x0 = -1, y0 = -1, found = 0;
    for (std::int64_t x = 0; x < pv; ++x) {
        const std::int64_t fx = (((x + E.a2()) % pv * x + E.a4()) % pv * x + E.a6()) % pv;
        const std::int64_t hx = (E.a1() * x + E.a3()) % pv;
        const std::int64_t dfx = ((3 * x + 2 * E.a2()) % pv * x + E.a4()) % pv;
        for (std::int64_t y = 0; y < pv; ++y) {
            if (((y + hx) % pv * y - fx) % pv != 0) continue;
            const std::int64_t Fy = (2 * y + hx) % pv;
            const std::int64_t Fx = (E.a1() * y % pv - dfx) % pv;
            if (Fy == 0 && Fx == 0) {
                x0 = x; y0 = y; ++found;
            }
        }
    }
    if (found == 0)
        throw InvariantError("bad_fiber_ap: no rational singular point found");
    if (found > 1)
        throw UsageError("bad_fiber_ap: several singular points; model not minimal at p");
    (void)y0;

    // tangent cone at (x0, y0): Y^2 + a1 XY + c X^2 with c = -(3 x0 + a2);
    // slopes solve t^2 + a1 t + c = 0, discriminant a1^2 - 4c = b2 + 12 x0
    const std::int64_t c = ((-(3 * x0 + E.a2())) % pv + pv) % pv;
    if (pv == 2) {
        if (E.a1() % 2 == 0) return 0;       // perfect square: cusp
        return c % 2 == 0 ? +1 : -1;         // w^2 + w + c splits iff c = 0
    }
    const std::int64_t disc = ((E.a1() * E.a1() - 4 * c) % pv + pv) % pv;
    if (disc == 0) return 0;
    return quadratic_character(FieldElement(disc, p));
}

CurvePoint::CurvePoint(ExtFieldElement X, ExtFieldElement Y, ExtFieldElement Z)
    : x_(std::move(X)), y_(std::move(Y)), z_(std::move(Z)) {
    if (!(*x_.field() == *y_.field()) || !(*x_.field() == *z_.field()))
        throw UsageError("CurvePoint: coordinates from different fields");
    if (x_.is_zero() && y_.is_zero() && z_.is_zero())
        throw InvariantError("CurvePoint: (0,0,0) is not a projective point");
}

bool projectively_equal(const CurvePoint& a, const CurvePoint& b) {
    auto minor = [](const ExtFieldElement& p, const ExtFieldElement& q,
                    const ExtFieldElement& r, const ExtFieldElement& s) {
        return (p * s - q * r).is_zero();
    };
    return minor(a.X(), b.X(), a.Y(), b.Y()) && minor(a.X(), b.X(), a.Z(), b.Z()) &&
           minor(a.Y(), b.Y(), a.Z(), b.Z());
}

bool is_on_curve(const CurvePoint& point, const ReducedCurve& curve) {
    const auto& field = point.X().field();
    if (field->p() != curve.p())
        throw UsageError("is_on_curve: point and curve over different primes");
    auto c = [&](std::int64_t v) { return ExtFieldElement::from_int(v, field); };
    const auto& X = point.X();
    const auto& Y = point.Y();
    const auto& Z = point.Z();
    // Y^2 Z + a1 XYZ + a3 Y Z^2 - X^3 - a2 X^2 Z - a4 X Z^2 - a6 Z^3
    ExtFieldElement lhs = Y * Y * Z + c(curve.a1()) * X * Y * Z + c(curve.a3()) * Y * Z * Z;
    ExtFieldElement rhs = X * X * X + c(curve.a2()) * X * X * Z + c(curve.a4()) * X * Z * Z +
                          c(curve.a6()) * Z * Z * Z;
    return (lhs - rhs).is_zero();
}

} // namespace ecmf
