#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tiltmut/errors.hpp"

namespace tiltmut {

/// Field element, encoded as an index in [0, q).  For F_p the index is the
/// residue itself; for F_{p^m} it is sum(digit_i * p^i) over the coordinates
/// with respect to the stored modulus polynomial.
using Fel = uint16_t;

struct FieldSpec {
    uint32_t p = 0;
    uint32_t degree = 1;
    /// Monic modulus polynomial, ascending coefficients, size degree+1.
    /// Empty means: use the built-in Conway-style default for (p, degree).
    std::vector<Fel> poly;
};

/// Exact arithmetic in F_q, q = p^m.  Immutable after construction and safe
/// to share across threads.  Extension fields (m > 1) are table-driven and
/// capped at q <= 4096; prime fields compute modular arithmetic directly.
class Fq {
  public:
    static std::shared_ptr<const Fq> make(const FieldSpec& spec);

    uint32_t p() const { return p_; }
    uint32_t m() const { return m_; }
    uint32_t q() const { return q_; }
    const std::vector<Fel>& modulus() const { return poly_; }

    Fel zero() const { return 0; }
    Fel one() const { return 1; }

    Fel add(Fel a, Fel b) const {
        return m_ == 1 ? Fel((uint32_t(a) + b) % p_) : add_[size_t(a) * q_ + b];
    }
    Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }
    Fel neg(Fel a) const {
        return m_ == 1 ? Fel(a ? p_ - a : 0) : neg_[a];
    }
    Fel mul(Fel a, Fel b) const {
        return m_ == 1 ? Fel((uint64_t(a) * b) % p_) : mul_[size_t(a) * q_ + b];
    }
    Fel inv(Fel a) const;
    Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }
    Fel pow(Fel a, uint64_t e) const;

    /// x -> x^(p^k), the k-th power of the Frobenius automorphism.
    Fel frobenius(Fel a, uint32_t k) const;
    /// Inverse of the k-th Frobenius power (p^k-th root).
    Fel frobenius_inv(Fel a, uint32_t k) const {
        return frobenius(a, (m_ - k % m_) % m_);
    }

    /// Reduce an arbitrary signed integer into the prime subfield.
    Fel from_int(long long v) const {
        long long r = v % (long long)p_;
        if (r < 0) r += p_;
        return Fel(r);
    }
    /// Coordinates over F_p with respect to the modulus polynomial basis.
    std::vector<Fel> digits(Fel a) const;
    Fel from_digits(const std::vector<Fel>& d) const;

    bool same(const Fq& other) const {
        return p_ == other.p_ && m_ == other.m_ && poly_ == other.poly_;
    }

    std::string describe() const;

  private:
    Fq() = default;
    void build_tables();

    uint32_t p_ = 0, m_ = 1, q_ = 0;
    std::vector<Fel> poly_;
    std::vector<Fel> add_, mul_, neg_, inv_;
};

using FqPtr = std::shared_ptr<const Fq>;

/// Built-in Conway-style monic irreducible polynomial for (p, degree), or an
/// empty vector if the table has no entry.
std::vector<Fel> conway_polynomial(uint32_t p, uint32_t degree);

bool is_prime(uint32_t n);

}  // namespace tiltmut
