#include "ecmf/counting_field.hpp"

#include "ecmf/errors.hpp"

#include <bit>

namespace ecmf {

CountingField::CountingField(const ExtField& field, std::int64_t bound)
    : p_(field.p()), n_(field.degree()) {
    auto q = field.cardinality_within(bound);
    if (!q)
        throw ResourceError("CountingField: p^n exceeds the enumeration bound " +
                            std::to_string(bound));
    q_ = *q;

    mod_digits_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int i = 0; i <= n_; ++i) mod_digits_[static_cast<std::size_t>(i)] = field.modulus_poly().coeff(i);

    ppow_.assign(static_cast<std::size_t>(n_), 0);
    std::int64_t pw = 1;
    for (int i = 0; i < n_; ++i) { ppow_[static_cast<std::size_t>(i)] = pw; pw *= p_; }

    if (p_ != 2) {
        // stride: digit sums reach 2(p-1); one spare bit drives the >= p test
        int b = std::bit_width(static_cast<std::uint64_t>(2 * p_ - 1));
        stride_ = b + 1;
        if (n_ * stride_ > 64)
            throw ResourceError("CountingField: packed digits exceed 64 bits");
        for (int i = 0; i < n_; ++i) {
            lowbits_ |= std::uint64_t{1} << (i * stride_);
        }
        detect_ = lowbits_ * ((std::uint64_t{1} << (stride_ - 1)) - static_cast<std::uint64_t>(p_));
        pk_.resize(static_cast<std::size_t>(q_));
        for (std::int64_t i = 0; i < q_; ++i) pk_[static_cast<std::size_t>(i)] = spread(static_cast<std::uint32_t>(i));
    }

    // generator of the multiplicative group, then exp/log tables
    std::vector<std::pair<std::int64_t, int>> fs = factorize(q_ - 1);
    std::uint32_t g = 0;
    for (std::int64_t cand = 2; cand < q_; ++cand) {
        auto c = static_cast<std::uint32_t>(cand);
        bool ok = true;
        for (auto& [r, e] : fs) {
            if (idx_pow_slow(c, (q_ - 1) / r) == 1) { ok = false; break; }
        }
        if (ok) { g = c; break; }
    }
    if (g == 0 && q_ > 2)
        throw InvariantError("CountingField: no generator found (modulus reducible?)");
    if (q_ == 2) g = 1;

    expt_.assign(static_cast<std::size_t>(2 * (q_ - 1)), 0);
    logt_.assign(static_cast<std::size_t>(q_), -1);
    std::uint32_t cur = 1;
    for (std::int64_t k = 0; k < q_ - 1; ++k) {
        expt_[static_cast<std::size_t>(k)] = cur;
        expt_[static_cast<std::size_t>(k + q_ - 1)] = cur;
        logt_[cur] = static_cast<std::int32_t>(k);
        cur = idx_mul_slow(cur, g);
    }
    if (cur != 1) throw InvariantError("CountingField: generator order mismatch");

    sqt_.assign(static_cast<std::size_t>(q_), 0);
    for (std::int64_t i = 1; i < q_; ++i) {
        std::int64_t l = 2 * logt_[static_cast<std::size_t>(i)];
        if (l >= q_ - 1) l -= q_ - 1;
        sqt_[static_cast<std::size_t>(i)] = expt_[static_cast<std::size_t>(l)];
    }
}

std::uint64_t CountingField::spread(std::uint32_t idx) const {
    std::uint64_t out = 0;
    std::int64_t k = idx;
    for (int i = 0; i < n_; ++i) {
        out |= static_cast<std::uint64_t>(k % p_) << (i * stride_);
        k /= p_;
    }
    return out;
}

std::uint32_t CountingField::unspread(std::uint64_t packed) const {
    std::int64_t idx = 0;
    const std::uint64_t mask = (std::uint64_t{1} << stride_) - 1;
    for (int i = n_ - 1; i >= 0; --i)
        idx = idx * p_ + static_cast<std::int64_t>((packed >> (i * stride_)) & mask);
    return static_cast<std::uint32_t>(idx);
}

std::uint32_t CountingField::idx_mul_slow(std::uint32_t a, std::uint32_t b) const {
    // digit-vector schoolbook product followed by reduction mod the field poly
    std::vector<std::int64_t> da(static_cast<std::size_t>(n_), 0), db(static_cast<std::size_t>(n_), 0);
    std::int64_t k = a;
    for (int i = 0; i < n_; ++i) { da[static_cast<std::size_t>(i)] = k % p_; k /= p_; }
    k = b;
    for (int i = 0; i < n_; ++i) { db[static_cast<std::size_t>(i)] = k % p_; k /= p_; }

    std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * n_ - 1), 0);
    for (int i = 0; i < n_; ++i) {
        if (da[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < n_; ++j)
            prod[static_cast<std::size_t>(i + j)] =
                (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p_;
    }
    for (int d = 2 * n_ - 2; d >= n_; --d) {
        std::int64_t f = prod[static_cast<std::size_t>(d)];
        if (f == 0) continue;
        prod[static_cast<std::size_t>(d)] = 0;
        for (int i = 0; i < n_; ++i) {
            std::int64_t& t = prod[static_cast<std::size_t>(d - n_ + i)];
            t = (t - f * mod_digits_[static_cast<std::size_t>(i)]) % p_;
            if (t < 0) t += p_;
        }
    }
    std::int64_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * p_ + prod[static_cast<std::size_t>(i)];
    return static_cast<std::uint32_t>(idx);
}

std::uint32_t CountingField::idx_pow_slow(std::uint32_t a, std::int64_t e) const {
    std::uint32_t r = 1, b = a;
    while (e) {
        if (e & 1) r = idx_mul_slow(r, b);
        b = idx_mul_slow(b, b);
        e >>= 1;
    }
    return r;
}

std::uint32_t CountingField::from_int(std::int64_t v) const {
    v %= p_;
    if (v < 0) v += p_;
    return static_cast<std::uint32_t>(v);
}

std::uint32_t CountingField::add(std::uint32_t a, std::uint32_t b) const {
    if (char2()) return a ^ b;
    return unspread(packed_add(pk_[a], pk_[b]));
}

std::uint32_t CountingField::neg(std::uint32_t a) const {
    if (char2()) return a;
    return mul(a, from_int(p_ - 1));
}

std::uint32_t CountingField::sub(std::uint32_t a, std::uint32_t b) const {
    return add(a, neg(b));
}

std::uint32_t CountingField::inverse(std::uint32_t a) const {
    if (a == 0) throw DomainError("CountingField: inverse of zero");
    return expt_[static_cast<std::size_t>(q_ - 1 - logt_[a])];
}

int CountingField::chi(std::uint32_t a) const {
    if (char2()) throw DomainError("CountingField: quadratic character needs odd p");
    if (a == 0) return 0;
    return (logt_[a] & 1) ? -1 : +1;
}

std::uint32_t CountingField::index_of(const ExtFieldElement& e) const {
    std::int64_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * p_ + e.residue().coeff(i);
    return static_cast<std::uint32_t>(idx);
}

ExtFieldElement CountingField::element(std::uint32_t idx,
                                       const std::shared_ptr<const ExtField>& field) const {
    std::vector<std::int64_t> c;
    std::int64_t k = idx;
    while (k) { c.push_back(k % p_); k /= p_; }
    return ExtFieldElement(FpPolynomial(std::move(c), field->base()), field);
}

} // namespace ecmf
