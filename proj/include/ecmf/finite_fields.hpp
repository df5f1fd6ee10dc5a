#ifndef ECMF_FINITE_FIELDS_HPP
#define ECMF_FINITE_FIELDS_HPP

#include "ecmf/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ecmf {

// Default ceiling on p^n for anything that walks a whole field.
inline constexpr std::int64_t kDefaultEnumerationBound = 1'000'000;

// A validated odd-or-even prime p with 2 <= p < 2^31, so that products of
// canonical representatives fit in int64.
class PrimeModulus {
public:
    explicit PrimeModulus(std::int64_t p);
    std::int64_t value() const { return p_; }
    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    std::int64_t p_;
};

enum class FpOp { Add, Sub, Mul, Div };

// Canonical residue in [0, p).
class FieldElement {
public:
    FieldElement(std::int64_t value, const PrimeModulus& m);
    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

private:
    std::int64_t v_;
    std::int64_t p_;
};

FieldElement fp_arithmetic(const FieldElement& x, const FieldElement& y, FpOp op);

FieldElement operator+(const FieldElement& x, const FieldElement& y);
FieldElement operator-(const FieldElement& x, const FieldElement& y);
FieldElement operator*(const FieldElement& x, const FieldElement& y);
FieldElement operator/(const FieldElement& x, const FieldElement& y);

// Euler's criterion: 0 for zero, +1 for nonzero squares, -1 otherwise.
// Requires odd p.
int quadratic_character(const FieldElement& x);

// Coefficients ascending by degree, highest-degree coefficient nonzero
// (the zero polynomial stores an empty coefficient vector).
class FpPolynomial {
public:
    FpPolynomial(std::vector<std::int64_t> coeffs, const PrimeModulus& m);
    static FpPolynomial zero(const PrimeModulus& m);
    static FpPolynomial x(const PrimeModulus& m);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::int64_t modulus() const { return p_; }
    std::int64_t coeff(int i) const;
    const std::vector<std::int64_t>& coeffs() const { return c_; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    std::string str(const std::string& var = "x") const;

    friend bool operator==(const FpPolynomial&, const FpPolynomial&) = default;

private:
    std::vector<std::int64_t> c_;
    std::int64_t p_;
};

FpPolynomial poly_add(const FpPolynomial& a, const FpPolynomial& b);
FpPolynomial poly_sub(const FpPolynomial& a, const FpPolynomial& b);
FpPolynomial poly_mul(const FpPolynomial& a, const FpPolynomial& b);
// Remainder of a modulo b (b nonzero).
FpPolynomial poly_mod(const FpPolynomial& a, const FpPolynomial& b);
FpPolynomial poly_gcd(FpPolynomial a, FpPolynomial b);
// x^(p^k) reduced modulo f, by k successive Frobenius powers.
FpPolynomial frobenius_power(const FpPolynomial& f, int k);

bool is_irreducible(const FpPolynomial& f);

// First monic irreducible of degree n in the deterministic scan order:
// candidate m = 0, 1, 2, ... contributes x^n + sum_i digit_i(m, base p) x^i.
FpPolynomial find_irreducible(const PrimeModulus& p, int n);

// F_{p^n} presented as F_p[x]/(modulusPoly), modulusPoly monic irreducible
// of degree n. Two ExtField values are the same field iff (p, poly) match.
class ExtField {
public:
    ExtField(const PrimeModulus& p, FpPolynomial modulus_poly);
    static std::shared_ptr<const ExtField> make(const PrimeModulus& p, int degree);

    std::int64_t p() const { return p_.value(); }
    const PrimeModulus& base() const { return p_; }
    int degree() const { return n_; }
    const FpPolynomial& modulus_poly() const { return poly_; }
    Integer cardinality() const;
    // p^n as int64 when it fits under `limit`, otherwise nullopt.
    std::optional<std::int64_t> cardinality_within(std::int64_t limit) const;

    friend bool operator==(const ExtField&, const ExtField&) = default;

private:
    PrimeModulus p_;
    int n_;
    FpPolynomial poly_;
};

class ExtFieldElement {
public:
    ExtFieldElement(FpPolynomial residue, std::shared_ptr<const ExtField> field);
    static ExtFieldElement zero(std::shared_ptr<const ExtField> field);
    static ExtFieldElement one(std::shared_ptr<const ExtField> field);
    static ExtFieldElement from_int(std::int64_t v, std::shared_ptr<const ExtField> field);

    const FpPolynomial& residue() const { return r_; }
    const std::shared_ptr<const ExtField>& field() const { return f_; }
    bool is_zero() const { return r_.is_zero(); }

    friend bool operator==(const ExtFieldElement& a, const ExtFieldElement& b) {
        return *a.f_ == *b.f_ && a.r_ == b.r_;
    }

private:
    FpPolynomial r_;
    std::shared_ptr<const ExtField> f_;
};

ExtFieldElement ext_arithmetic(const ExtFieldElement& x, const ExtFieldElement& y, FpOp op);

ExtFieldElement operator+(const ExtFieldElement& x, const ExtFieldElement& y);
ExtFieldElement operator-(const ExtFieldElement& x, const ExtFieldElement& y);
ExtFieldElement operator*(const ExtFieldElement& x, const ExtFieldElement& y);
ExtFieldElement operator/(const ExtFieldElement& x, const ExtFieldElement& y);

ExtFieldElement ext_pow(const ExtFieldElement& x, const Integer& e);

class FieldEnumerator;

// Restartable stream over all p^n elements, starting at 0, in the
// coefficient-counter order (element k has residue digits of k base p).
FieldEnumerator enumerate_field(std::shared_ptr<const ExtField> field,
                                std::int64_t bound = kDefaultEnumerationBound);

class FieldEnumerator {
public:
    explicit FieldEnumerator(std::shared_ptr<const ExtField> field,
                             std::int64_t bound = kDefaultEnumerationBound);
    std::optional<ExtFieldElement> next();
    void reset() { i_ = 0; }
    std::int64_t size() const { return q_; }

    // Element with counter index k, independent of stream position.
    ExtFieldElement element_at(std::int64_t k) const;

private:
    std::shared_ptr<const ExtField> f_;
    std::int64_t q_;
    std::int64_t i_ = 0;
};

} // namespace ecmf

#endif
