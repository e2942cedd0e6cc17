#include "tiltmut/field.hpp"

#include <algorithm>

namespace tiltmut {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<Fel> conway_polynomial(uint32_t p, uint32_t degree) {
    struct Entry {
        uint32_t p, m;
        std::vector<Fel> poly;  // ascending, monic
    };
    static const std::vector<Entry> table = {
        {2, 1, {1, 1}},          {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},    {2, 4, {1, 1, 0, 0, 1}},
        {2, 5, {1, 0, 1, 0, 0, 1}},
        {3, 1, {1, 1}},          {3, 2, {2, 2, 1}},
        {3, 3, {1, 2, 0, 1}},    {3, 4, {2, 0, 0, 2, 1}},
        {5, 1, {3, 1}},          {5, 2, {2, 4, 1}},
        {7, 1, {4, 1}},          {7, 2, {3, 6, 1}},
        {11, 1, {9, 1}},         {13, 1, {11, 1}},
    };
    for (const auto& e : table)
        if (e.p == p && e.m == degree) return e.poly;
    return {};
}

namespace {

// Polynomial helpers over F_p on digit vectors, used only for table building.
std::vector<Fel> poly_mul_mod(const std::vector<Fel>& a, const std::vector<Fel>& b,
                              const std::vector<Fel>& mod, uint32_t p) {
    const size_t m = mod.size() - 1;
    std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += uint64_t(a[i]) * b[j];
    // reduce modulo the monic modulus
    for (size_t d = acc.size(); d-- > m;) {
        uint64_t c = acc[d] % p;
        if (!c) continue;
        for (size_t k = 0; k < m; ++k)
            acc[d - m + k] += uint64_t(c) * (p - mod[k] % p);
        acc[d] = 0;
    }
    std::vector<Fel> out(m, 0);
    for (size_t k = 0; k < m; ++k) out[k] = Fel(acc[k] % p);
    return out;
}

}  // namespace

std::shared_ptr<const Fq> Fq::make(const FieldSpec& spec) {
    if (!is_prime(spec.p)) throw ValidationError("field characteristic must be prime");
    if (spec.degree < 1) throw ValidationError("field degree must be >= 1");
    auto f = std::shared_ptr<Fq>(new Fq());
    f->p_ = spec.p;
    f->m_ = spec.degree;
    uint64_t q = 1;
    for (uint32_t i = 0; i < spec.degree; ++i) {
        q *= spec.p;
        if (q > 65536) throw CapExceeded("field size exceeds 2^16");
    }
    f->q_ = uint32_t(q);
    if (f->m_ > 1) {
        if (q > 4096) throw CapExceeded("extension fields are capped at q <= 4096");
        if (!spec.poly.empty()) {
            if (spec.poly.size() != spec.degree + 1 || spec.poly.back() % spec.p != 1)
                throw ValidationError("modulus polynomial must be monic of the stated degree");
            f->poly_ = spec.poly;
            for (auto& c : f->poly_) c = Fel(c % spec.p);
        } else {
            f->poly_ = conway_polynomial(spec.p, spec.degree);
            if (f->poly_.empty())
                throw ValidationError("no built-in modulus polynomial for p=" +
                                      std::to_string(spec.p) + ", degree=" +
                                      std::to_string(spec.degree) +
                                      "; supply one in the field spec");
        }
        f->build_tables();
    } else {
        f->poly_ = {0, 1};  // x, cosmetic
    }
    return f;
}

void Fq::build_tables() {
    const uint32_t q = q_, p = p_, m = m_;
    add_.assign(size_t(q) * q, 0);
    mul_.assign(size_t(q) * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);
    auto digits_of = [&](uint32_t a) {
        std::vector<Fel> d(m, 0);
        for (uint32_t i = 0; i < m; ++i) {
            d[i] = Fel(a % p);
            a /= p;
        }
        return d;
    };
    auto index_of = [&](const std::vector<Fel>& d) {
        uint32_t a = 0;
        for (uint32_t i = m; i-- > 0;) a = a * p + d[i];
        return Fel(a);
    };
    for (uint32_t a = 0; a < q; ++a) {
        auto da = digits_of(a);
        std::vector<Fel> dn(m);
        for (uint32_t i = 0; i < m; ++i) dn[i] = Fel((p - da[i]) % p);
        neg_[a] = index_of(dn);
        for (uint32_t b = 0; b < q; ++b) {
            auto db = digits_of(b);
            std::vector<Fel> ds(m);
            for (uint32_t i = 0; i < m; ++i) ds[i] = Fel((da[i] + db[i]) % p);
            add_[size_t(a) * q + b] = index_of(ds);
            mul_[size_t(a) * q + b] = index_of(poly_mul_mod(da, db, poly_, p));
        }
    }
    for (uint32_t a = 1; a < q; ++a) {
        if (inv_[a]) continue;
        for (uint32_t b = 1; b < q; ++b) {
            if (mul_[size_t(a) * q + b] == 1) {
                inv_[a] = Fel(b);
                inv_[b] = Fel(a);
                break;
            }
        }
        if (!inv_[a]) throw ValidationError("modulus polynomial is not irreducible");
    }
}

Fel Fq::inv(Fel a) const {
    if (a == 0) throw ValidationError("division by zero in F_q");
    if (m_ > 1) return inv_[a];
    // Fermat in the prime field.
    return pow(a, p_ - 2);
}

Fel Fq::pow(Fel a, uint64_t e) const {
    Fel r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Fel Fq::frobenius(Fel a, uint32_t k) const {
    k %= m_;
    Fel r = a;
    for (uint32_t i = 0; i < k; ++i) r = pow(r, p_);
    return r;
}

std::vector<Fel> Fq::digits(Fel a) const {
    std::vector<Fel> d(m_, 0);
    uint32_t v = a;
    for (uint32_t i = 0; i < m_; ++i) {
        d[i] = Fel(v % p_);
        v /= p_;
    }
    return d;
}

Fel Fq::from_digits(const std::vector<Fel>& d) const {
    if (d.size() > m_) throw ValidationError("too many field element coordinates");
    uint32_t a = 0;
    for (size_t i = d.size(); i-- > 0;) a = a * p_ + d[i] % p_;
    return Fel(a);
}

std::string Fq::describe() const {
    if (m_ == 1) return "F_" + std::to_string(p_);
    return "F_" + std::to_string(q_) + " (p=" + std::to_string(p_) +
           ", degree=" + std::to_string(m_) + ")";
}

}  // namespace tiltmut
