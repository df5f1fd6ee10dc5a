#ifndef ECMF_Q_EXPANSIONS_HPP
#define ECMF_Q_EXPANSIONS_HPP

#include "ecmf/modular_group.hpp"
#include "ecmf/numeric.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace ecmf {

// Default truncation order for the named expansions below.
inline constexpr int kDefaultSeriesOrder = 256;

// Truncated Laurent series in q with exact integer coefficients: exponents
// lead_exp .. lead_exp + order are stored, everything above is unknown.
class QSeries {
public:
    QSeries(long lead_exp, std::vector<Integer> coeffs);
    static QSeries zero(int order);
    static QSeries one(int order);
    static QSeries monomial(long exp, Integer c, int order);

    long lead_exp() const { return lead_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    long top_exp() const { return lead_ + order(); }
    bool is_zero() const;

    // Coefficient of q^e; zero below the stored window, error above it.
    const Integer& coeff(long e) const;
    const std::vector<Integer>& coeffs() const { return c_; }

    QSeries truncated(long new_top) const;

    std::string str(int max_terms = 8) const;

    friend bool operator==(const QSeries&, const QSeries&) = default;

private:
    void normalize();
    long lead_;
    std::vector<Integer> c_;
};

enum class SeriesOp { Add, Mul, Pow, Invert };

QSeries series_add(const QSeries& f, const QSeries& g);
QSeries series_sub(const QSeries& f, const QSeries& g);
QSeries series_mul(const QSeries& f, const QSeries& g);
QSeries series_pow(const QSeries& f, long k);
// Requires leading coefficient +-1 so coefficients stay integral.
QSeries series_invert(const QSeries& f);
// Single dispatcher over the four ring operations (k used by Pow).
QSeries series_ring_ops(const QSeries& f, const QSeries* g, SeriesOp op, long k = 0);

// prod_{n>=1} (1 - q^{scale n}) truncated at `order`, by the pentagonal
// number theorem.
QSeries euler_product_series(int order, long scale = 1);

// prod_d ( q^{d/24} prod_{n>=1} (1 - q^{dn}) )^{r_d}. The combined
// prefactor exponent sum(d r_d)/24 must be an integer.
QSeries eta_product(const std::map<long, long>& exponents, int order);

// 1 + 240 sum sigma_3(n) q^n.
QSeries eisenstein_e4(int order = kDefaultSeriesOrder);

// E4^3 / Delta, lead exponent -1.
QSeries j_invariant(int order = kDefaultSeriesOrder);

// eta(z)^2 eta(11z)^2: the normalized weight-2 cusp form of level 11.
QSeries newform_level11(int order = kDefaultSeriesOrder);

struct EvalOptions {
    double min_im = 0.2;     // reject evaluation points below this height
    double growth_cap = 0.0; // when > 0, require |c_n| <= cap * n^(3/2)
};

struct EvalResult {
    std::complex<double> value;
    double tail_bound; // crude |c_last| |q|^last / (1 - |q|)
};

// sum c_n q^n at q = exp(2 pi i z); principal parts evaluate termwise.
EvalResult evaluate_at(const QSeries& f, const HalfPlanePoint& z,
                       const EvalOptions& opts = {});

struct TransformReport {
    std::complex<double> lhs;   // f(gz)
    std::complex<double> rhs;   // (cz+d)^{2k} f(z)
    double abs_diff;
    double tol;
    bool pass;
    double certified_error; // rigorous truncation bound backing the verdict
};

// Checks f((az+b)/(cz+d)) = (cz+d)^{2k} f(z) numerically for g in
// Gamma_0(N). The growth cap (|c_n| <= cap n^{3/2}, verified against the
// stored coefficients) turns the truncation error into a hard bound; if
// that bound cannot reach tol at this z the series is too short and an
// AccuracyError names the order needed.
TransformReport check_weight2_transform(const QSeries& f, const GroupElement2x2& g,
                                        const Level& N, const HalfPlanePoint& z,
                                        double tol, int weight_k = 1,
                                        double growth_cap = 4.0);

// Weight-0 comparison f(gz) = f(z) for automorphic functions (j); the
// tail estimate is the crude one reported by evaluate_at.
TransformReport automorphic_check(const QSeries& f, const GroupElement2x2& g,
                                  const HalfPlanePoint& z, double tol);

// Smallest order M >= min_order whose capped tail bound at the harder of
// the two evaluation points stays below `target`.
int order_for_transform(const GroupElement2x2& g, const HalfPlanePoint& z,
                        double target, double growth_cap = 4.0, int min_order = 1);

// {"leadExp": ..., "coeffs": ["...", ...]} as a JSON text; coefficients are
// decimal strings because they outgrow every binary JSON number type.
std::string series_to_json(const QSeries& f);

} // namespace ecmf

#endif
