#ifndef ECMF_NUMERIC_HPP
#define ECMF_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace ecmf {

// Exact integer/rational substrate. Curve coefficients and series
// coefficients use these; the F_p kernels below stay on machine words
// (moduli are capped at 2^31 so products fit in int64).
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Deterministic Miller-Rabin, valid for the full uint64 range.
bool is_prime_u64(std::uint64_t n);

std::vector<std::int64_t> primes_up_to(std::int64_t n);

// (a*b) mod m without overflow for m < 2^62.
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);
// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

Integer ipow(Integer base, unsigned exp);

// num/den as an exact rational; accepts negative denominators, rejects zero.
Rational make_rational(Integer num, Integer den);

// Largest z with z^n <= x (x >= 0).
Integer integer_nth_root(const Integer& x, unsigned n);
bool is_perfect_nth_power(const Integer& x, unsigned n, Integer* root = nullptr);

// Prime factorization by trial division; fine for the desk-scale inputs here.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::vector<std::int64_t> divisors_of(std::int64_t n);

} // namespace ecmf

#endif
