#include "ecmf/q_expansions.hpp"

#include "ecmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ecmf {

QSeries::QSeries(long lead_exp, std::vector<Integer> coeffs)
    : lead_(lead_exp), c_(std::move(coeffs)) {
    if (c_.empty()) throw UsageError("QSeries: empty coefficient vector");
    normalize();
}

void QSeries::normalize() {
    // strip leading zeros so the lead coefficient is nonzero; an
    // identically zero window keeps its width and sits at lead 0
    std::size_t skip = 0;
    while (skip < c_.size() && c_[skip] == 0) ++skip;
    if (skip == c_.size()) {
        lead_ = 0;
        return;
    }
    if (skip) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(skip));
        lead_ += static_cast<long>(skip);
    }
}

QSeries QSeries::zero(int order) {
    if (order < 0) throw UsageError("QSeries: negative order");
    return QSeries(0, std::vector<Integer>(static_cast<std::size_t>(order) + 1, 0));
}

QSeries QSeries::one(int order) {
    if (order < 0) throw UsageError("QSeries: negative order");
    std::vector<Integer> v(static_cast<std::size_t>(order) + 1, 0);
    v[0] = 1;
    return QSeries(0, std::move(v));
}

QSeries QSeries::monomial(long exp, Integer c, int order) {
    if (order < 0) throw UsageError("QSeries: negative order");
    std::vector<Integer> v(static_cast<std::size_t>(order) + 1, 0);
    v[0] = std::move(c);
    return QSeries(exp, std::move(v));
}

bool QSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Integer& v) { return v == 0; });
}

const Integer& QSeries::coeff(long e) const {
    static const Integer kZero = 0;
    if (e < lead_) return kZero;
    if (e > top_exp())
        throw UsageError("QSeries: coefficient of q^" + std::to_string(e) +
                         " lies beyond the truncation order");
    return c_[static_cast<std::size_t>(e - lead_)];
}

QSeries QSeries::truncated(long new_top) const {
    if (new_top < lead_) {
        // nothing of the series survives; keep a zero window
        return QSeries(new_top, {Integer(0)});
    }
    if (new_top >= top_exp()) return *this;
    std::vector<Integer> v(c_.begin(), c_.begin() + (new_top - lead_ + 1));
    return QSeries(lead_, std::move(v));
}

std::string QSeries::str(int max_terms) const {
    std::ostringstream os;
    int printed = 0;
    bool first = true;
    for (long e = lead_; e <= top_exp() && printed < max_terms; ++e) {
        const Integer& v = coeff(e);
        if (v == 0) continue;
        const bool neg = v < 0;
        Integer mag = neg ? Integer(-v) : v;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (mag != 1 || e == 0) os << mag;
        if (e != 0) {
            if (mag != 1) os << " ";
            os << "q";
            if (e != 1) os << "^" << e;
        }
        ++printed;
    }
    if (first) os << "0";
    if (printed == max_terms) os << " + ...";
    return os.str();
}

QSeries series_add(const QSeries& f, const QSeries& g) {
    const long lead = std::min(f.lead_exp(), g.lead_exp());
    const long top = std::min(f.top_exp(), g.top_exp());
    if (top < lead)
        throw UsageError("series_add: truncation windows do not overlap");
    std::vector<Integer> v(static_cast<std::size_t>(top - lead) + 1, 0);
    for (long e = lead; e <= top; ++e) {
        Integer s = 0;
        if (e >= f.lead_exp() && e <= f.top_exp()) s += f.coeff(e);
        if (e >= g.lead_exp() && e <= g.top_exp()) s += g.coeff(e);
        v[static_cast<std::size_t>(e - lead)] = std::move(s);
    }
    return QSeries(lead, std::move(v));
}

QSeries series_sub(const QSeries& f, const QSeries& g) {
    std::vector<Integer> v = g.coeffs();
    for (auto& x : v) x = -x;
    return series_add(f, QSeries(g.lead_exp(), std::move(v)));
}

QSeries series_mul(const QSeries& f, const QSeries& g) {
    const long lead = f.lead_exp() + g.lead_exp();
    const int ord = std::min(f.order(), g.order());
    std::vector<Integer> v(static_cast<std::size_t>(ord) + 1, 0);
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    const std::size_t na = std::min(a.size(), static_cast<std::size_t>(ord) + 1);
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0) continue;
        const std::size_t jmax = std::min(b.size(), static_cast<std::size_t>(ord) + 1 - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            v[i + j] += a[i] * b[j];
        }
    }
    return QSeries(lead, std::move(v));
}

QSeries series_pow(const QSeries& f, long k) {
    if (k < 0) return series_pow(series_invert(f), -k);
    QSeries r = QSeries::monomial(0, 1, f.order());
    QSeries base = f;
    long e = k;
    while (e > 0) {
        if (e & 1) r = series_mul(r, base);
        if (e >>= 1) base = series_mul(base, base);
    }
    return r;
}

QSeries series_invert(const QSeries& f) {
    const Integer& lc = f.coeffs().front();
    if (lc != 1 && lc != -1)
        throw DomainError("series_invert: leading coefficient must be +-1 to stay integral");
    const int ord = f.order();
    // b_0 = 1/a_0; b_n = -(1/a_0) sum_{k=1..n} a_k b_{n-k}
    std::vector<Integer> b(static_cast<std::size_t>(ord) + 1, 0);
    b[0] = lc; // lc is its own inverse
    const auto& a = f.coeffs();
    for (int n = 1; n <= ord; ++n) {
        Integer s = 0;
        for (int k = 1; k <= n; ++k) {
            if (a[static_cast<std::size_t>(k)] == 0) continue;
            s += a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(n - k)];
        }
        b[static_cast<std::size_t>(n)] = -lc * s;
    }
    return QSeries(-f.lead_exp(), std::move(b));
}

QSeries series_ring_ops(const QSeries& f, const QSeries* g, SeriesOp op, long k) {
    switch (op) {
    case SeriesOp::Add:
        if (!g) throw UsageError("series_ring_ops: Add needs two operands");
        return series_add(f, *g);
    case SeriesOp::Mul:
        if (!g) throw UsageError("series_ring_ops: Mul needs two operands");
        return series_mul(f, *g);
    case SeriesOp::Pow:
        return series_pow(f, k);
    case SeriesOp::Invert:
        return series_invert(f);
    }
    throw UsageError("series_ring_ops: unknown op");
}

QSeries euler_product_series(int order, long scale) {
    if (order < 0) throw UsageError("euler_product_series: negative order");
    if (scale < 1) throw DomainError("euler_product_series: scale must be >= 1");
    std::vector<Integer> c(static_cast<std::size_t>(order) + 1, 0);
    c[0] = 1;
    for (long k = 1;; ++k) {
        const long g1 = k * (3 * k - 1) / 2 * scale;
        const long g2 = k * (3 * k + 1) / 2 * scale;
        if (g1 > order && g2 > order) break;
        const int sign = (k % 2 == 0) ? +1 : -1;
        if (g1 <= order) c[static_cast<std::size_t>(g1)] += sign;
        if (g2 <= order) c[static_cast<std::size_t>(g2)] += sign;
    }
    return QSeries(0, std::move(c));
}

QSeries eta_product(const std::map<long, long>& exponents, int order) {
    if (exponents.empty()) throw UsageError("eta_product: empty product");
    long prefactor_numerator = 0;
    for (auto& [d, r] : exponents) {
        if (d < 1) throw DomainError("eta_product: eta arguments need d >= 1");
        prefactor_numerator += d * r;
    }
    if (prefactor_numerator % 24 != 0)
        throw DomainError("eta_product: fractional leading exponent " +
                          std::to_string(prefactor_numerator) + "/24");
    const long lead = prefactor_numerator / 24;

    QSeries result = QSeries::one(order);
    for (auto& [d, r] : exponents) {
        if (r == 0) continue;
        QSeries factor = euler_product_series(order, d);
        if (r < 0) factor = series_invert(factor);
        const long e = r < 0 ? -r : r;
        // the pentagonal factors are sparse, so repeated sparse-times-dense
        // multiplication beats dense squaring
        for (long i = 0; i < e; ++i) result = series_mul(factor, result);
    }
    return QSeries(lead + result.lead_exp(), result.coeffs());
}

QSeries eisenstein_e4(int order) {
    if (order < 0) throw UsageError("eisenstein_e4: negative order");
    std::vector<Integer> sigma3(static_cast<std::size_t>(order) + 1, 0);
    for (long d = 1; d <= order; ++d) {
        const Integer d3 = Integer(d) * d * d;
        for (long n = d; n <= order; n += d) sigma3[static_cast<std::size_t>(n)] += d3;
    }
    std::vector<Integer> c(static_cast<std::size_t>(order) + 1, 0);
    c[0] = 1;
    for (long n = 1; n <= order; ++n) c[static_cast<std::size_t>(n)] = 240 * sigma3[static_cast<std::size_t>(n)];
    return QSeries(0, std::move(c));
}

QSeries j_invariant(int order) {
    if (order < 0) throw UsageError("j_invariant: negative order");
    // one extra term: dividing by Delta (lead exponent 1) costs one order
    const int work = order + 1;
    QSeries e4 = eisenstein_e4(work);
    QSeries delta = eta_product({{1, 24}}, work);
    QSeries j = series_mul(series_pow(e4, 3), series_invert(delta));
    return j.truncated(-1 + order);
}

QSeries newform_level11(int order) {
    if (order < 1) throw UsageError("newform_level11: order must be >= 1");
    return eta_product({{1, 2}, {11, 2}}, order);
}

EvalResult evaluate_at(const QSeries& f, const HalfPlanePoint& z, const EvalOptions& opts) {
    if (z.im() < opts.min_im)
        throw AccuracyError("evaluate_at: Im(z) = " + std::to_string(z.im()) +
                            " below the accuracy threshold " + std::to_string(opts.min_im));
    if (opts.growth_cap > 0.0) {
        for (long e = std::max(1L, f.lead_exp()); e <= f.top_exp(); ++e) {
            const double cap = opts.growth_cap * std::pow(static_cast<double>(e), 1.5);
            if (std::abs(f.coeff(e).convert_to<double>()) > cap)
                throw AccuracyError("evaluate_at: coefficient growth cap violated at q^" +
                                    std::to_string(e));
        }
    }
    const std::complex<double> q =
        std::exp(std::complex<double>(0.0, 2.0 * M_PI) * z.value());
    const double aq = std::abs(q);

    std::complex<double> qk = std::pow(q, static_cast<double>(f.lead_exp()));
    std::complex<double> total = 0.0;
    for (long e = f.lead_exp(); e <= f.top_exp(); ++e) {
        const Integer& c = f.coeff(e);
        if (c != 0) total += c.convert_to<double>() * qk;
        qk *= q;
    }
    const double clast = std::abs(f.coeffs().back().convert_to<double>());
    const double tail = clast * std::pow(aq, static_cast<double>(f.top_exp())) / (1.0 - aq);
    return {total, tail};
}

namespace {

// Rigorous bound on sum_{n > M} cap n^{3/2} r^n for 0 < r < 1.
double capped_tail(double cap, long M, double r) {
    if (r <= 0.0) return 0.0;
    const double growth = r * std::exp(1.5 / static_cast<double>(M + 1));
    if (growth >= 1.0) return HUGE_VAL;
    return cap * std::pow(static_cast<double>(M + 1), 1.5) *
           std::pow(r, static_cast<double>(M + 1)) / (1.0 - growth);
}

double q_magnitude(const HalfPlanePoint& z) { return std::exp(-2.0 * M_PI * z.im()); }

} // namespace

int order_for_transform(const GroupElement2x2& g, const HalfPlanePoint& z, double target,
                        double growth_cap, int min_order) {
    const HalfPlanePoint gz = act(g, z);
    const double r = std::max(q_magnitude(z), q_magnitude(gz));
    int m = std::max(min_order, 1);
    while (capped_tail(growth_cap, m, r) > target) {
        if (m > (1 << 22))
            throw AccuracyError("order_for_transform: target tolerance unreachable");
        m *= 2;
    }
    // walk back down to the threshold
    while (m > min_order && capped_tail(growth_cap, m - 1, r) <= target) --m;
    return m;
}

TransformReport check_weight2_transform(const QSeries& f, const GroupElement2x2& g,
                                        const Level& N, const HalfPlanePoint& z,
                                        double tol, int weight_k, double growth_cap) {
    if (!gamma0_member(g, N))
        throw UsageError("check_weight2_transform: matrix is not in Gamma_0(" +
                         std::to_string(N.value()) + ")");
    if (f.lead_exp() < 1)
        throw UsageError("check_weight2_transform: expected a cusp form (lead exponent >= 1)");

    const HalfPlanePoint gz = act(g, z);
    EvalOptions opts;
    opts.min_im = 0.0;          // heights certified by the cap bound instead
    opts.growth_cap = growth_cap;

    const EvalResult lhs = evaluate_at(f, gz, opts);
    const EvalResult rhs = evaluate_at(f, z, opts);
    const std::complex<double> czd =
        static_cast<double>(g.c()) * z.value() + static_cast<double>(g.d());
    const std::complex<double> factor = std::pow(czd, 2.0 * weight_k);

    const double err_lhs = capped_tail(growth_cap, f.top_exp(), q_magnitude(gz));
    const double err_rhs =
        capped_tail(growth_cap, f.top_exp(), q_magnitude(z)) * std::abs(factor);
    const double certified = err_lhs + err_rhs;
    if (certified > tol)
        throw AccuracyError(
            "check_weight2_transform: order " + std::to_string(f.order()) +
            " certifies only " + std::to_string(certified) + " at this z; need order >= " +
            std::to_string(order_for_transform(g, z, tol / 4.0, growth_cap, f.order())));

    const std::complex<double> rhs_value = factor * rhs.value;
    const double diff = std::abs(lhs.value - rhs_value);
    return {lhs.value, rhs_value, diff, tol, diff < tol, certified};
}

TransformReport automorphic_check(const QSeries& f, const GroupElement2x2& g,
                                  const HalfPlanePoint& z, double tol) {
    const HalfPlanePoint gz = act(g, z);
    const EvalResult lhs = evaluate_at(f, gz);
    const EvalResult rhs = evaluate_at(f, z);
    const double diff = std::abs(lhs.value - rhs.value);
    return {lhs.value, rhs.value, diff, tol, diff < tol, lhs.tail_bound + rhs.tail_bound};
}

std::string series_to_json(const QSeries& f) {
    std::ostringstream os;
    os << "{\"leadExp\": " << f.lead_exp() << ", \"coeffs\": [";
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i) os << ", ";
        os << "\"" << f.coeffs()[i] << "\"";
    }
    os << "]}";
    return os.str();
}

} // namespace ecmf
