#ifndef ECMF_COUNTING_FIELD_HPP
#define ECMF_COUNTING_FIELD_HPP

#include "ecmf/finite_fields.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace ecmf {

// Table-backed arithmetic for one finite field F_{p^n}, built to make
// exhaustive point counting a handful of array lookups per pair.
//
// Elements are addressed by their counter index (digits base p, same order
// as FieldEnumerator). Multiplication runs through discrete-log tables for
// a fixed generator; addition works digitwise. For odd p a packed form
// (one digit per bit group) supports branch-free modular digit sums; for
// p = 2 the index itself is the packed form and addition is XOR.
class CountingField {
public:
    explicit CountingField(const ExtField& field,
                           std::int64_t bound = kDefaultEnumerationBound);

    std::int64_t q() const { return q_; }
    std::int64_t p() const { return p_; }
    int n() const { return n_; }
    bool char2() const { return p_ == 2; }

    std::uint32_t from_int(std::int64_t v) const;
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return expt_[static_cast<std::size_t>(logt_[a]) + static_cast<std::size_t>(logt_[b])];
    }
    std::uint32_t square(std::uint32_t a) const { return sqt_[a]; }
    std::uint32_t inverse(std::uint32_t a) const;

    // Discrete log of a nonzero element; exp of k in [0, 2(q-1)).
    std::int64_t log(std::uint32_t a) const { return logt_[a]; }
    std::uint32_t exp(std::int64_t k) const { return expt_[static_cast<std::size_t>(k)]; }

    // Quadratic character via log parity; odd p only.
    int chi(std::uint32_t a) const;

    // Packed-digit form for hot loops (for p = 2 it equals the index).
    std::uint64_t packed(std::uint32_t idx) const { return char2() ? idx : pk_[idx]; }
    std::uint64_t packed_add(std::uint64_t x, std::uint64_t y) const {
        if (char2()) return x ^ y;
        std::uint64_t s = x + y;
        std::uint64_t t = s + detect_;
        std::uint64_t m = (t >> (stride_ - 1)) & lowbits_;
        return s - m * static_cast<std::uint64_t>(p_);
    }

    // Conversions against the generic representation, for cross-checks.
    std::uint32_t index_of(const ExtFieldElement& e) const;
    ExtFieldElement element(std::uint32_t idx,
                            const std::shared_ptr<const ExtField>& field) const;

private:
    std::uint32_t idx_mul_slow(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t idx_pow_slow(std::uint32_t a, std::int64_t e) const;
    std::uint64_t spread(std::uint32_t idx) const;
    std::uint32_t unspread(std::uint64_t packed) const;

    std::int64_t p_;
    int n_;
    std::int64_t q_;
    std::vector<std::int64_t> mod_digits_; // modulus poly, degree n, monic

    std::vector<std::uint32_t> expt_; // size 2(q-1): g^k, wrap-free lookups
    std::vector<std::int32_t> logt_;  // size q, logt_[0] = -1
    std::vector<std::uint32_t> sqt_;  // size q
    std::vector<std::uint64_t> pk_;   // odd p: index -> packed digits

    int stride_ = 1;
    std::uint64_t lowbits_ = 0; // 1 at bit i*stride for each digit i
    std::uint64_t detect_ = 0;  // (2^(stride-1) - p) per digit
    std::vector<std::int64_t> ppow_; // p^i for unspread
};

} // namespace ecmf

#endif
