#include "ecmf/numeric.hpp"

#include "ecmf/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ecmf {

namespace {

std::uint64_t mulmod_u128(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u128(r, base, m);
        base = mulmod_u128(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // These twelve bases decide primality for every 64-bit integer.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u128(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 2) return out;
    std::vector<bool> sieve(static_cast<std::size_t>(n) + 1, true);
    sieve[0] = sieve[1] = false;
    for (std::int64_t i = 2; i * i <= n; ++i) {
        if (!sieve[static_cast<std::size_t>(i)]) continue;
        for (std::int64_t j = i * i; j <= n; j += i)
            sieve[static_cast<std::size_t>(j)] = false;
    }
    for (std::int64_t i = 2; i <= n; ++i)
        if (sieve[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    auto v = static_cast<__int128>(a) * b % m;
    if (v < 0) v += m;
    return static_cast<std::int64_t>(v);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    if (exp < 0) throw DomainError("pow_mod: negative exponent");
    std::int64_t r = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = m, new_r = a % m;
    if (new_r < 0) new_r += m;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t -= q * new_t; std::swap(t, new_t);
        r -= q * new_r; std::swap(r, new_r);
    }
    if (r != 1) throw DomainError("inv_mod: element not invertible");
    if (t < 0) t += m;
    return t;
}

Integer ipow(Integer base, unsigned exp) {
    Integer r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw DomainError("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

Integer integer_nth_root(const Integer& x, unsigned n) {
    if (x < 0) throw DomainError("integer_nth_root: negative radicand");
    if (n == 0) throw DomainError("integer_nth_root: zeroth root");
    if (x == 0 || x == 1 || n == 1) return x;
    Integer lo = 0;
    Integer hi = 1;
    while (ipow(hi, n) <= x) hi <<= 1;
    // invariant: lo^n <= x < hi^n
    while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        if (ipow(mid, n) <= x) lo = mid; else hi = mid;
    }
    return lo;
}

bool is_perfect_nth_power(const Integer& x, unsigned n, Integer* root) {
    if (x < 0) return false;
    Integer r = integer_nth_root(x, n);
    if (ipow(r, n) == x) {
        if (root) *root = r;
        return true;
    }
    return false;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 0) n = -n;
    std::vector<std::pair<std::int64_t, int>> fs;
    for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        fs.emplace_back(d, e);
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (auto& [p, e] : factorize(n)) r -= r / p;
    return r;
}

std::vector<std::int64_t> divisors_of(std::int64_t n) {
    std::vector<std::int64_t> ds{1};
    for (auto& [p, e] : factorize(n)) {
        std::size_t m = ds.size();
        std::int64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

} // namespace ecmf
