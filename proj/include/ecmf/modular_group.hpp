#ifndef ECMF_MODULAR_GROUP_HPP
#define ECMF_MODULAR_GROUP_HPP

#include "ecmf/numeric.hpp"

#include <complex>
#include <cstdint>
#include <string>

namespace ecmf {

// Unimodular integer matrix (a b; c d), ad - bc = 1.
class GroupElement2x2 {
public:
    GroupElement2x2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
    static GroupElement2x2 identity() { return {1, 0, 0, 1}; }

    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    std::int64_t c() const { return c_; }
    std::int64_t d() const { return d_; }
    std::int64_t trace() const { return a_ + d_; }

    GroupElement2x2 inverse() const { return {d_, -b_, -c_, a_}; }

    std::string str() const;

    friend GroupElement2x2 operator*(const GroupElement2x2& g, const GroupElement2x2& h);
    friend bool operator==(const GroupElement2x2&, const GroupElement2x2&) = default;

private:
    std::int64_t a_, b_, c_, d_;
};

// Congruence level N >= 1 for Gamma_0(N).
class Level {
public:
    explicit Level(std::int64_t N);
    std::int64_t value() const { return n_; }

private:
    std::int64_t n_;
};

// c = 0 (mod N).
bool gamma0_member(const GroupElement2x2& g, const Level& N);

// Point of the upper half-plane, Im strictly positive.
class HalfPlanePoint {
public:
    HalfPlanePoint(double re, double im);
    explicit HalfPlanePoint(std::complex<double> z) : HalfPlanePoint(z.real(), z.imag()) {}
    double re() const { return re_; }
    double im() const { return im_; }
    std::complex<double> value() const { return {re_, im_}; }

private:
    double re_, im_;
};

// z -> (az + b)/(cz + d).
HalfPlanePoint act(const GroupElement2x2& g, const HalfPlanePoint& z);

enum class ElementClass { IdentityLike, Elliptic, Parabolic, Hyperbolic };

// |tr| < 2 elliptic, = 2 parabolic (when not +-identity), > 2 hyperbolic.
ElementClass classify_element(const GroupElement2x2& g);
std::string to_string(ElementClass c);

// Boundary point of H: a rational number or the cusp at infinity.
struct BoundaryPoint {
    bool is_infinity = false;
    Rational value = 0;

    static BoundaryPoint infinity() { return {true, 0}; }
    static BoundaryPoint rational(Rational v) { return {false, std::move(v)}; }
    friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

// The unique fixed point (a-d)/(2c) of a parabolic element, verified by
// exact rational evaluation; infinity when c = 0.
BoundaryPoint parabolic_fixed_point(const GroupElement2x2& g);

// [SL2(Z) : Gamma_0(N)] = N prod_{p|N} (1 + 1/p).
std::int64_t index_gamma0(const Level& N);

// Number of cusps of X_0(N): sum over d | N of phi(gcd(d, N/d)).
std::int64_t cusp_count(const Level& N);

// Elliptic-point counts entering the genus formula.
std::int64_t elliptic_points_order2(const Level& N);
std::int64_t elliptic_points_order3(const Level& N);

// g = 1 + mu/12 - nu2/4 - nu3/3 - cusps/2.
std::int64_t genus_X0(const Level& N);

// Real 2x2 matrix with determinant 1, for the H = SL2(R)/SO2(R) picture.
struct RealMatrix2 {
    double a, b, c, d;
};

// Upper-triangular matrix (sqrt y, x/sqrt y; 0, 1/sqrt y) sending i to z.
RealMatrix2 point_to_matrix(const HalfPlanePoint& z);
RealMatrix2 so2_rotation(double theta);
RealMatrix2 operator*(const RealMatrix2& g, const RealMatrix2& h);
HalfPlanePoint act(const RealMatrix2& g, const HalfPlanePoint& z);

// Matrix literal "[[a,b],[c,d]]".
GroupElement2x2 parse_matrix(const std::string& text);

} // namespace ecmf

#endif
