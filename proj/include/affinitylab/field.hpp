#pragma once

// Arithmetic in F_q for q = p^m, q <= 2^16.
//
// Elements are encoded by index: the polynomial c_0 + c_1 t + ... + c_{m-1} t^{m-1}
// over F_p is stored as c_0 + c_1 p + ... + c_{m-1} p^{m-1}.  The modulus is the
// lexicographically smallest irreducible monic polynomial of degree m over F_p,
// coefficients compared low degree first, so fields are deterministic across runs.
//
// Multiplication uses a full q x q table for q <= 256 and log/antilog tables with
// respect to a generator for larger q.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "affinitylab/errors.hpp"

namespace affinitylab {

using FieldElement = std::uint32_t;

namespace detail {

inline bool is_prime(std::uint32_t x) {
    if (x < 2) return false;
    for (std::uint32_t d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

// Dense coefficient vector, index = degree, no trailing zeros enforced by callers.
using Poly = std::vector<std::uint32_t>;

inline int poly_deg(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

inline Poly poly_mul_mod_p(const Poly& a, const Poly& b, std::uint32_t p) {
    Poly r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    return r;
}

// Remainder of a modulo monic b, coefficients in F_p.
inline Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    int db = poly_deg(b);
    for (int da = poly_deg(a); da >= db; da = poly_deg(a)) {
        std::uint64_t c = a[da]; // b is monic
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = static_cast<std::uint32_t>(
                (a[da - db + i] + std::uint64_t(p) * p - c * b[i] % p) % p);
    }
    a.resize(db > 0 ? db : 1, 0);
    return a;
}

inline bool poly_is_zero(const Poly& a) { return poly_deg(a) < 0; }

// Trial division by all monic polynomials of degree 1..deg/2.
inline bool poly_irreducible(const Poly& f, std::uint32_t p) {
    int m = poly_deg(f);
    if (m < 1) return false;
    if (m == 1) return true;
    for (int d = 1; 2 * d <= m; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t c = code;
            for (int i = 0; i < d; ++i) { g[i] = static_cast<std::uint32_t>(c % p); c /= p; }
            g[d] = 1;
            if (poly_is_zero(poly_rem(f, g, p))) return false;
        }
    }
    return true;
}

} // namespace detail

class FieldSpec {
  public:
    static constexpr std::uint32_t kMaxOrder = 1u << 16;

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }
    // Monic modulus coefficients c_0..c_m (empty when m = 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FieldElement add(FieldElement a, FieldElement b) const {
        if (has_tables_) return add_table_[a * q_ + b];
        return add_generic(a, b);
    }
    FieldElement neg(FieldElement a) const { return neg_table_[a]; }
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (has_tables_) return mul_table_[a * q_ + b];
        if (a == 0 || b == 0) return 0;
        return antilog_[(log_[a] + log_[b]) % (q_ - 1)];
    }

    FieldElement inv(FieldElement a) const {
        if (a == 0) throw DivisionByZero("FieldSpec::inv of zero");
        if (has_tables_) return inv_table_[a];
        return antilog_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    FieldElement pow(FieldElement a, std::uint64_t e) const {
        FieldElement r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // The m Frobenius powers x -> x^(p^i), i = 0..m-1; entry 0 is the identity.
    // Each map is returned as a dense lookup over element indices.
    std::vector<std::vector<FieldElement>> automorphisms() const {
        std::vector<std::vector<FieldElement>> out;
        out.reserve(m_);
        std::vector<FieldElement> cur(q_);
        for (std::uint32_t x = 0; x < q_; ++x) cur[x] = x;
        for (std::uint32_t i = 0; i < m_; ++i) {
            out.push_back(cur);
            for (std::uint32_t x = 0; x < q_; ++x) cur[x] = pow(cur[x], p_);
        }
        return out;
    }

    static std::shared_ptr<const FieldSpec> make(std::uint32_t q);

  private:
    std::uint32_t p_ = 0, m_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    bool has_tables_ = false;
    std::vector<FieldElement> add_table_, mul_table_, inv_table_, neg_table_;
    std::vector<std::uint32_t> log_;
    std::vector<FieldElement> antilog_;

    FieldElement add_generic(FieldElement a, FieldElement b) const {
        if (p_ == 2) return a ^ b;
        FieldElement r = 0, mult = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            r += ((a % p_ + b % p_) % p_) * mult;
            a /= p_; b /= p_; mult *= p_;
        }
        return r;
    }

    FieldElement mul_raw(FieldElement a, FieldElement b) const {
        detail::Poly pa(m_, 0), pb(m_, 0);
        for (std::uint32_t i = 0; i < m_; ++i) { pa[i] = a % p_; a /= p_; }
        for (std::uint32_t i = 0; i < m_; ++i) { pb[i] = b % p_; b /= p_; }
        detail::Poly prod = detail::poly_mul_mod_p(pa, pb, p_);
        if (m_ > 1) prod = detail::poly_rem(prod, modulus_, p_);
        FieldElement r = 0;
        for (int i = static_cast<int>(m_) - 1; i >= 0; --i)
            r = r * p_ + (i < static_cast<int>(prod.size()) ? prod[i] : 0);
        return r;
    }

    friend class FieldSpecBuilder;
};

class FieldSpecBuilder {
  public:
    static std::shared_ptr<const FieldSpec> build(std::uint32_t q) {
        if (q < 2) throw NotPrimePower("q must be at least 2");
        if (q > FieldSpec::kMaxOrder) throw TooLarge("field order above 2^16");
        std::uint32_t p = smallest_prime_factor(q);
        std::uint32_t m = 0, t = q;
        while (t % p == 0) { t /= p; ++m; }
        if (t != 1) throw NotPrimePower("q has two distinct prime factors");

        auto spec = std::make_shared<FieldSpec>();
        spec->p_ = p;
        spec->m_ = m;
        spec->q_ = q;
        if (m > 1) spec->modulus_ = canonical_modulus(p, m);

        spec->neg_table_.resize(q);
        for (std::uint32_t x = 0; x < q; ++x) {
            FieldElement r = 0, mult = 1, a = x;
            for (std::uint32_t i = 0; i < m; ++i) {
                r += ((p - a % p) % p) * mult;
                a /= p; mult *= p;
            }
            spec->neg_table_[x] = r;
        }

        if (q <= 256) {
            spec->has_tables_ = true;
            spec->add_table_.resize(std::size_t(q) * q);
            spec->mul_table_.resize(std::size_t(q) * q);
            for (std::uint32_t a = 0; a < q; ++a)
                for (std::uint32_t b = 0; b < q; ++b) {
                    spec->add_table_[a * q + b] = spec->add_generic(a, b);
                    spec->mul_table_[a * q + b] = spec->mul_raw(a, b);
                }
            spec->inv_table_.assign(q, 0);
            for (std::uint32_t a = 1; a < q; ++a)
                for (std::uint32_t b = 1; b < q; ++b)
                    if (spec->mul_table_[a * q + b] == 1) { spec->inv_table_[a] = b; break; }
        } else {
            build_log_tables(*spec);
        }
        return spec;
    }

  private:
    static std::uint32_t smallest_prime_factor(std::uint32_t q) {
        for (std::uint32_t d = 2; d * d <= q; ++d)
            if (q % d == 0) return d;
        return q;
    }

    static std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t m) {
        // Lex order with c_0 most significant in the comparison; enumerate in
        // that order and return the first irreducible candidate.
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < m; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            detail::Poly f(m + 1, 0);
            // c_0 is the most significant digit of code, so increasing code
            // walks candidates in the required lex order.
            std::uint64_t rem = code;
            std::uint64_t place = count / p;
            for (std::uint32_t j = 0; j < m; ++j) {
                f[j] = static_cast<std::uint32_t>(rem / place);
                rem %= place;
                if (place > 1) place /= p;
            }
            f[m] = 1;
            if (detail::poly_irreducible(f, p)) return f;
        }
        throw InternalInvariantViolation("no irreducible polynomial found");
    }

    static void build_log_tables(FieldSpec& spec) {
        const std::uint32_t q = spec.q_;
        spec.log_.assign(q, 0);
        spec.antilog_.assign(q - 1, 0);
        for (std::uint32_t g = 2; g < q; ++g) {
            std::vector<bool> seen(q, false);
            FieldElement x = 1;
            std::uint32_t ord = 0;
            bool primitive = true;
            for (std::uint32_t i = 0; i < q - 1; ++i) {
                if (seen[x]) { primitive = false; break; }
                seen[x] = true;
                spec.antilog_[i] = x;
                spec.log_[x] = i;
                x = spec.mul_raw(x, g);
                ++ord;
            }
            if (primitive && ord == q - 1 && x == 1) return;
        }
        throw InternalInvariantViolation("no generator found");
    }
};

inline std::shared_ptr<const FieldSpec> FieldSpec::make(std::uint32_t q) {
    return FieldSpecBuilder::build(q);
}

/// make_field(q): the FieldSpec for q with the canonical modulus.
inline std::shared_ptr<const FieldSpec> make_field(std::uint32_t q) {
    return FieldSpec::make(q);
}

} // namespace affinitylab
