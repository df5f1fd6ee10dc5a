#include "ecmf/finite_fields.hpp"

#include "ecmf/errors.hpp"

#include <algorithm>
#include <sstream>

namespace ecmf {

namespace {

constexpr std::int64_t kMaxPrime = (std::int64_t{1} << 31) - 1;

void require_same_modulus(std::int64_t a, std::int64_t b, const char* what) {
    if (a != b)
        throw UsageError(std::string(what) + ": operands live in different fields (p=" +
                         std::to_string(a) + " vs p=" + std::to_string(b) + ")");
}

} // namespace

PrimeModulus::PrimeModulus(std::int64_t p) : p_(p) {
    if (p < 2 || p > kMaxPrime)
        throw InvariantError("PrimeModulus: p must satisfy 2 <= p < 2^31, got " +
                             std::to_string(p));
    if (!is_prime_u64(static_cast<std::uint64_t>(p)))
        throw InvariantError("PrimeModulus: " + std::to_string(p) + " is not prime");
}

FieldElement::FieldElement(std::int64_t value, const PrimeModulus& m) : p_(m.value()) {
    v_ = value % p_;
    if (v_ < 0) v_ += p_;
}

FieldElement fp_arithmetic(const FieldElement& x, const FieldElement& y, FpOp op) {
    require_same_modulus(x.modulus(), y.modulus(), "fp_arithmetic");
    const std::int64_t p = x.modulus();
    PrimeModulus m(p);
    switch (op) {
    case FpOp::Add: return FieldElement(x.value() + y.value(), m);
    case FpOp::Sub: return FieldElement(x.value() - y.value(), m);
    case FpOp::Mul: return FieldElement(mul_mod(x.value(), y.value(), p), m);
    case FpOp::Div:
        if (y.is_zero()) throw DomainError("fp_arithmetic: division by zero");
        return FieldElement(mul_mod(x.value(), inv_mod(y.value(), p), p), m);
    }
    throw UsageError("fp_arithmetic: unknown op");
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    return fp_arithmetic(x, y, FpOp::Add);
}
FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    return fp_arithmetic(x, y, FpOp::Sub);
}
FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    return fp_arithmetic(x, y, FpOp::Mul);
}
FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    return fp_arithmetic(x, y, FpOp::Div);
}

int quadratic_character(const FieldElement& x) {
    const std::int64_t p = x.modulus();
    if (p == 2)
        throw DomainError("quadratic_character: undefined for p = 2; enumerate y directly");
    if (x.is_zero()) return 0;
    return pow_mod(x.value(), (p - 1) / 2, p) == 1 ? +1 : -1;
}

FpPolynomial::FpPolynomial(std::vector<std::int64_t> coeffs, const PrimeModulus& m)
    : p_(m.value()) {
    c_ = std::move(coeffs);
    for (auto& v : c_) {
        v %= p_;
        if (v < 0) v += p_;
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPolynomial FpPolynomial::zero(const PrimeModulus& m) { return FpPolynomial({}, m); }

FpPolynomial FpPolynomial::x(const PrimeModulus& m) { return FpPolynomial({0, 1}, m); }

std::int64_t FpPolynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
}

std::string FpPolynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        std::int64_t v = coeff(i);
        if (v == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || v != 1) os << v;
        if (i > 0) {
            if (v != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

FpPolynomial poly_add(const FpPolynomial& a, const FpPolynomial& b) {
    require_same_modulus(a.modulus(), b.modulus(), "poly_add");
    std::vector<std::int64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return FpPolynomial(std::move(c), PrimeModulus(a.modulus()));
}

FpPolynomial poly_sub(const FpPolynomial& a, const FpPolynomial& b) {
    require_same_modulus(a.modulus(), b.modulus(), "poly_sub");
    std::vector<std::int64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return FpPolynomial(std::move(c), PrimeModulus(a.modulus()));
}

FpPolynomial poly_mul(const FpPolynomial& a, const FpPolynomial& b) {
    require_same_modulus(a.modulus(), b.modulus(), "poly_mul");
    PrimeModulus m(a.modulus());
    if (a.is_zero() || b.is_zero()) return FpPolynomial::zero(m);
    const std::int64_t p = a.modulus();
    std::vector<std::int64_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] = (c[i + j] + a.coeffs()[i] * b.coeffs()[j]) % p;
    }
    return FpPolynomial(std::move(c), m);
}

FpPolynomial poly_mod(const FpPolynomial& a, const FpPolynomial& b) {
    require_same_modulus(a.modulus(), b.modulus(), "poly_mod");
    if (b.is_zero()) throw DomainError("poly_mod: modulus polynomial is zero");
    const std::int64_t p = a.modulus();
    std::vector<std::int64_t> r = a.coeffs();
    const auto& d = b.coeffs();
    const std::int64_t lead_inv = inv_mod(d.back(), p);
    while (r.size() >= d.size()) {
        std::int64_t factor = mul_mod(r.back(), lead_inv, p);
        std::size_t shift = r.size() - d.size();
        if (factor != 0) {
            for (std::size_t i = 0; i < d.size(); ++i) {
                std::int64_t& ri = r[shift + i];
                ri = (ri - factor * d[i]) % p;
                if (ri < 0) ri += p;
            }
        }
        r.pop_back();
    }
    return FpPolynomial(std::move(r), PrimeModulus(p));
}

FpPolynomial poly_gcd(FpPolynomial a, FpPolynomial b) {
    while (!b.is_zero()) {
        FpPolynomial r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

namespace {

FpPolynomial poly_powmod(const FpPolynomial& base, std::int64_t e, const FpPolynomial& mod) {
    PrimeModulus m(mod.modulus());
    FpPolynomial r({1}, m);
    FpPolynomial b = poly_mod(base, mod);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, b), mod);
        b = poly_mod(poly_mul(b, b), mod);
        e >>= 1;
    }
    return r;
}

} // namespace

FpPolynomial frobenius_power(const FpPolynomial& f, int k) {
    PrimeModulus m(f.modulus());
    FpPolynomial r = poly_mod(FpPolynomial::x(m), f);
    for (int i = 0; i < k; ++i) r = poly_powmod(r, f.modulus(), f);
    return r;
}

bool is_irreducible(const FpPolynomial& f) {
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    PrimeModulus m(f.modulus());
    const FpPolynomial x = poly_mod(FpPolynomial::x(m), f);

    // x^(p^n) == x mod f, and x^(p^(n/r)) - x coprime to f for prime r | n.
    if (frobenius_power(f, n) != x) return false;
    for (auto& [r, e] : factorize(n)) {
        FpPolynomial diff = poly_sub(frobenius_power(f, n / static_cast<int>(r)), x);
        FpPolynomial g = poly_gcd(f, diff);
        if (g.degree() != 0) return false;
    }
    return true;
}

FpPolynomial find_irreducible(const PrimeModulus& p, int n) {
    if (n < 1) throw DomainError("find_irreducible: degree must be >= 1");
    const std::int64_t pv = p.value();
    for (std::int64_t counter = 0;; ++counter) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
        std::int64_t k = counter;
        for (int i = 0; i < n; ++i) {
            c[static_cast<std::size_t>(i)] = k % pv;
            k /= pv;
        }
        if (k != 0)
            throw InvariantError("find_irreducible: exhausted candidates (unreachable)");
        c[static_cast<std::size_t>(n)] = 1;
        FpPolynomial f(std::move(c), p);
        if (is_irreducible(f)) return f;
    }
}

ExtField::ExtField(const PrimeModulus& p, FpPolynomial modulus_poly)
    : p_(p), n_(modulus_poly.degree()), poly_(std::move(modulus_poly)) {
    if (poly_.modulus() != p_.value())
        throw UsageError("ExtField: modulus polynomial over a different prime field");
    if (n_ < 1 || !poly_.is_monic())
        throw InvariantError("ExtField: modulus polynomial must be monic of degree >= 1");
    if (!is_irreducible(poly_))
        throw InvariantError("ExtField: modulus polynomial is reducible: " + poly_.str());
}

std::shared_ptr<const ExtField> ExtField::make(const PrimeModulus& p, int degree) {
    return std::make_shared<const ExtField>(p, find_irreducible(p, degree));
}

Integer ExtField::cardinality() const { return ipow(Integer(p_.value()), static_cast<unsigned>(n_)); }

std::optional<std::int64_t> ExtField::cardinality_within(std::int64_t limit) const {
    std::int64_t q = 1;
    for (int i = 0; i < n_; ++i) {
        if (q > limit / p_.value()) return std::nullopt;
        q *= p_.value();
    }
    if (q > limit) return std::nullopt;
    return q;
}

ExtFieldElement::ExtFieldElement(FpPolynomial residue, std::shared_ptr<const ExtField> field)
    : r_(std::move(residue)), f_(std::move(field)) {
    if (!f_) throw UsageError("ExtFieldElement: null field");
    if (r_.modulus() != f_->p())
        throw UsageError("ExtFieldElement: residue over a different prime field");
    if (r_.degree() >= f_->degree()) r_ = poly_mod(r_, f_->modulus_poly());
}

ExtFieldElement ExtFieldElement::zero(std::shared_ptr<const ExtField> field) {
    PrimeModulus m(field->p());
    return ExtFieldElement(FpPolynomial::zero(m), std::move(field));
}

ExtFieldElement ExtFieldElement::one(std::shared_ptr<const ExtField> field) {
    return from_int(1, std::move(field));
}

ExtFieldElement ExtFieldElement::from_int(std::int64_t v, std::shared_ptr<const ExtField> field) {
    PrimeModulus m(field->p());
    return ExtFieldElement(FpPolynomial({v}, m), std::move(field));
}

namespace {

ExtFieldElement ext_inverse(const ExtFieldElement& y) {
    if (y.is_zero()) throw DomainError("ext_arithmetic: division by zero");
    // Extended Euclid in F_p[x]: s*r + t*mod = gcd = unit.
    PrimeModulus m(y.field()->p());
    const std::int64_t p = y.field()->p();
    FpPolynomial r0 = y.field()->modulus_poly(), r1 = y.residue();
    FpPolynomial t0 = FpPolynomial::zero(m), t1({1}, m);
    while (!r1.is_zero()) {
        // long division step: r0 = q*r1 + r
        FpPolynomial q = FpPolynomial::zero(m);
        {
            std::vector<std::int64_t> num = r0.coeffs();
            const auto& den = r1.coeffs();
            std::vector<std::int64_t> qc(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 0, 0);
            const std::int64_t lead_inv = inv_mod(den.back(), p);
            while (num.size() >= den.size() && !num.empty()) {
                std::int64_t factor = mul_mod(num.back(), lead_inv, p);
                std::size_t shift = num.size() - den.size();
                if (!qc.empty()) qc[shift] = factor;
                for (std::size_t i = 0; i < den.size(); ++i) {
                    std::int64_t& ni = num[shift + i];
                    ni = (ni - factor * den[i]) % p;
                    if (ni < 0) ni += p;
                }
                num.pop_back();
            }
            q = FpPolynomial(std::move(qc), m);
            r0 = FpPolynomial(std::move(num), m);
        }
        std::swap(r0, r1);
        FpPolynomial t2 = poly_sub(t0, poly_mul(q, t1));
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0)
        throw InvariantError("ext_inverse: gcd not a unit (modulus reducible?)");
    std::int64_t scale = inv_mod(r0.coeff(0), p);
    FpPolynomial inv = poly_mul(t0, FpPolynomial({scale}, m));
    return ExtFieldElement(poly_mod(inv, y.field()->modulus_poly()), y.field());
}

} // namespace

ExtFieldElement ext_arithmetic(const ExtFieldElement& x, const ExtFieldElement& y, FpOp op) {
    if (!(*x.field() == *y.field()))
        throw UsageError("ext_arithmetic: operands live in different fields");
    switch (op) {
    case FpOp::Add:
        return ExtFieldElement(poly_add(x.residue(), y.residue()), x.field());
    case FpOp::Sub:
        return ExtFieldElement(poly_sub(x.residue(), y.residue()), x.field());
    case FpOp::Mul:
        return ExtFieldElement(poly_mod(poly_mul(x.residue(), y.residue()),
                                        x.field()->modulus_poly()),
                               x.field());
    case FpOp::Div:
        return ext_arithmetic(x, ext_inverse(y), FpOp::Mul);
    }
    throw UsageError("ext_arithmetic: unknown op");
}

ExtFieldElement operator+(const ExtFieldElement& x, const ExtFieldElement& y) {
    return ext_arithmetic(x, y, FpOp::Add);
}
ExtFieldElement operator-(const ExtFieldElement& x, const ExtFieldElement& y) {
    return ext_arithmetic(x, y, FpOp::Sub);
}
ExtFieldElement operator*(const ExtFieldElement& x, const ExtFieldElement& y) {
    return ext_arithmetic(x, y, FpOp::Mul);
}
ExtFieldElement operator/(const ExtFieldElement& x, const ExtFieldElement& y) {
    return ext_arithmetic(x, y, FpOp::Div);
}

ExtFieldElement ext_pow(const ExtFieldElement& x, const Integer& e) {
    if (e < 0) return ext_pow(ext_arithmetic(ExtFieldElement::one(x.field()), x, FpOp::Div), -e);
    ExtFieldElement r = ExtFieldElement::one(x.field());
    ExtFieldElement b = x;
    Integer k = e;
    while (k > 0) {
        if ((k & 1) != 0) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

FieldEnumerator enumerate_field(std::shared_ptr<const ExtField> field, std::int64_t bound) {
    return FieldEnumerator(std::move(field), bound);
}

FieldEnumerator::FieldEnumerator(std::shared_ptr<const ExtField> field, std::int64_t bound)
    : f_(std::move(field)) {
    auto q = f_->cardinality_within(bound);
    if (!q)
        throw ResourceError("enumerate_field: p^n exceeds the enumeration bound " +
                            std::to_string(bound));
    q_ = *q;
}

ExtFieldElement FieldEnumerator::element_at(std::int64_t k) const {
    if (k < 0 || k >= q_) throw UsageError("FieldEnumerator: index out of range");
    const std::int64_t p = f_->p();
    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(f_->degree()));
    while (k) {
        c.push_back(k % p);
        k /= p;
    }
    return ExtFieldElement(FpPolynomial(std::move(c), f_->base()), f_);
}

std::optional<ExtFieldElement> FieldEnumerator::next() {
    if (i_ >= q_) return std::nullopt;
    return element_at(i_++);
}

} // namespace ecmf
