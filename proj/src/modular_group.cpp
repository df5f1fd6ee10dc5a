#include "ecmf/modular_group.hpp"

#include "ecmf/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace ecmf {

GroupElement2x2::GroupElement2x2(std::int64_t a, std::int64_t b, std::int64_t c,
                                 std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
    if (a * d - b * c != 1)
        throw InvariantError("GroupElement2x2: determinant must be 1, got " +
                             std::to_string(a * d - b * c));
}

GroupElement2x2 operator*(const GroupElement2x2& g, const GroupElement2x2& h) {
    return {g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
            g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_};
}

std::string GroupElement2x2::str() const {
    std::ostringstream os;
    os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << d_ << "]]";
    return os.str();
}

Level::Level(std::int64_t N) : n_(N) {
    if (N < 1) throw InvariantError("Level: N must be >= 1");
}

bool gamma0_member(const GroupElement2x2& g, const Level& N) {
    return g.c() % N.value() == 0;
}

HalfPlanePoint::HalfPlanePoint(double re, double im) : re_(re), im_(im) {
    if (!(im > 0.0))
        throw DomainError("HalfPlanePoint: Im(z) must be positive, got " +
                          std::to_string(im));
}

HalfPlanePoint act(const GroupElement2x2& g, const HalfPlanePoint& z) {
    const std::complex<double> w = z.value();
    const std::complex<double> den = static_cast<double>(g.c()) * w + static_cast<double>(g.d());
    const std::complex<double> img = (static_cast<double>(g.a()) * w + static_cast<double>(g.b())) / den;
    return HalfPlanePoint(img);
}

ElementClass classify_element(const GroupElement2x2& g) {
    if (g == GroupElement2x2::identity() ||
        (g.a() == -1 && g.b() == 0 && g.c() == 0 && g.d() == -1))
        return ElementClass::IdentityLike;
    const std::int64_t t = std::llabs(g.trace());
    if (t < 2) return ElementClass::Elliptic;
    if (t == 2) return ElementClass::Parabolic;
    return ElementClass::Hyperbolic;
}

std::string to_string(ElementClass c) {
    switch (c) {
    case ElementClass::IdentityLike: return "identity_like";
    case ElementClass::Elliptic: return "elliptic";
    case ElementClass::Parabolic: return "parabolic";
    case ElementClass::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

BoundaryPoint parabolic_fixed_point(const GroupElement2x2& g) {
    if (classify_element(g) != ElementClass::Parabolic)
        throw DomainError("parabolic_fixed_point: element is not parabolic");
    if (g.c() == 0) return BoundaryPoint::infinity();
    Rational x = make_rational(Integer(g.a() - g.d()), Integer(2 * g.c()));
    // g(x) = x exactly: c x^2 + (d - a) x - b = 0
    Rational check = Rational(g.c()) * x * x + Rational(g.d() - g.a()) * x - Rational(g.b());
    if (check != 0)
        throw InvariantError("parabolic_fixed_point: exact fixed-point check failed");
    return BoundaryPoint::rational(std::move(x));
}

std::int64_t index_gamma0(const Level& N) {
    std::int64_t mu = N.value();
    for (auto& [p, e] : factorize(N.value())) mu = mu / p * (p + 1);
    return mu;
}

std::int64_t cusp_count(const Level& N) {
    std::int64_t total = 0;
    for (std::int64_t d : divisors_of(N.value()))
        total += euler_phi(std::gcd(d, N.value() / d));
    return total;
}

std::int64_t elliptic_points_order2(const Level& N) {
    if (N.value() % 4 == 0) return 0;
    std::int64_t nu = 1;
    for (auto& [p, e] : factorize(N.value())) {
        if (p == 2) continue;              // factor 1 + (-1|2) with (-1|2) = 0
        nu *= (p % 4 == 1) ? 2 : 0;
    }
    return nu;
}

std::int64_t elliptic_points_order3(const Level& N) {
    if (N.value() % 9 == 0) return 0;
    std::int64_t nu = 1;
    for (auto& [p, e] : factorize(N.value())) {
        if (p == 3) continue;              // factor 1 + (-3|3) with (-3|3) = 0
        nu *= (p % 3 == 1) ? 2 : 0;
    }
    return nu;
}

std::int64_t genus_X0(const Level& N) {
    const std::int64_t mu = index_gamma0(N);
    const std::int64_t nu2 = elliptic_points_order2(N);
    const std::int64_t nu3 = elliptic_points_order3(N);
    const std::int64_t cusps = cusp_count(N);
    const std::int64_t twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    if (twelve_g % 12 != 0 || twelve_g < 0)
        throw InvariantError("genus_X0: formula did not produce a genus at N = " +
                             std::to_string(N.value()));
    return twelve_g / 12;
}

RealMatrix2 point_to_matrix(const HalfPlanePoint& z) {
    const double s = std::sqrt(z.im());
    return {s, z.re() / s, 0.0, 1.0 / s};
}

RealMatrix2 so2_rotation(double theta) {
    return {std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta)};
}

RealMatrix2 operator*(const RealMatrix2& g, const RealMatrix2& h) {
    return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
            g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

HalfPlanePoint act(const RealMatrix2& g, const HalfPlanePoint& z) {
    const std::complex<double> w = z.value();
    return HalfPlanePoint((g.a * w + g.b) / (g.c * w + g.d));
}

namespace {

class MatrixScanner {
public:
    explicit MatrixScanner(const std::string& s) : s_(s) {}

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    std::int64_t integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t digits = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
            ++digits;
        }
        if (digits == 0) throw ParseError("expected an integer", start);
        return std::stoll(s_.substr(start, pos_ - start));
    }

    void end() {
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing characters", pos_);
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

GroupElement2x2 parse_matrix(const std::string& text) {
    MatrixScanner sc(text);
    sc.expect('[');
    sc.expect('[');
    std::int64_t a = sc.integer();
    sc.expect(',');
    std::int64_t b = sc.integer();
    sc.expect(']');
    sc.expect(',');
    sc.expect('[');
    std::int64_t c = sc.integer();
    sc.expect(',');
    std::int64_t d = sc.integer();
    sc.expect(']');
    sc.expect(']');
    sc.end();
    if (a * d - b * c != 1)
        throw ParseError("matrix is not unimodular (det = " + std::to_string(a * d - b * c) + ")", 0);
    return {a, b, c, d};
}

} // namespace ecmf
