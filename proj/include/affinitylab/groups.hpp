#pragma once

// AGL / AGammaL membership tests, group orders, enumeration of AGL for small
// parameters, and the double-coset counts around the minimal nonzero
// coaffinity (transposition distance two, coset intersection sizes).

#include <cstdint>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "affinitylab/affinity.hpp"
#include "affinitylab/field.hpp"
#include "affinitylab/geometry.hpp"

namespace affinitylab {

/// Invertible semi-affine map x -> sigma(x) A + b (row-vector convention,
/// sigma applied coordinatewise; sigma index 0 is the identity).
struct AffineMap {
    std::uint32_t q = 2;
    int n = 1;
    std::vector<std::uint32_t> matrix; // n x n row-major
    std::vector<std::uint32_t> b;      // length n
    int sigma = 0;

    const std::uint32_t* row(int i) const { return matrix.data() + std::size_t(i) * n; }

    Permutation to_permutation(const FieldSpec& field) const {
        PointCodec codec(q, n);
        auto autos = field.automorphisms();
        const auto& sig = autos[sigma];
        Permutation p;
        p.q = q;
        p.n = n;
        p.images.resize(codec.size);
        std::vector<std::uint32_t> x(n), y(n);
        for (std::uint64_t idx = 0; idx < codec.size; ++idx) {
            codec.decode(static_cast<PointIndex>(idx), x.data());
            for (int j = 0; j < n; ++j) y[j] = b[j];
            for (int i = 0; i < n; ++i) {
                std::uint32_t c = sig[x[i]];
                if (c == 0) continue;
                const std::uint32_t* r = row(i);
                for (int j = 0; j < n; ++j) y[j] = field.add(y[j], field.mul(c, r[j]));
            }
            p.images[idx] = codec.encode(y.data());
        }
        return p;
    }
};

/// (|GL|, |AGL|, |AGammaL|) for F_q^n.
inline std::tuple<BigInt, BigInt, BigInt> group_orders(int n, std::uint32_t q) {
    auto field = make_field(q);
    BigInt gl = 1;
    for (int i = 0; i < n; ++i) gl *= big_pow(q, n) - big_pow(q, i);
    BigInt agl = big_pow(q, n) * gl;
    BigInt agammal = field->m() * agl;
    return {gl, agl, agammal};
}

/// Tests whether perm is affine (sigma = identity); reconstructs b = f(0) and
/// the matrix rows from f(e_i) - f(0), then verifies on every point.
inline std::optional<AffineMap> is_affine(const Permutation& perm, const FieldSpec& field) {
    const int n = perm.n;
    PointCodec codec(perm.q, n);
    AffineMap m;
    m.q = perm.q;
    m.n = n;
    m.b.resize(n);
    m.matrix.assign(std::size_t(n) * n, 0);
    std::vector<std::uint32_t> b(n), fei(n);
    codec.decode(perm.images[0], b.data());
    m.b = b;
    for (int i = 0; i < n; ++i) {
        // e_i has index q^(n-1-i)
        PointIndex ei = 1;
        for (int j = 0; j < n - 1 - i; ++j) ei *= perm.q;
        codec.decode(perm.images[ei], fei.data());
        for (int j = 0; j < n; ++j)
            m.matrix[std::size_t(i) * n + j] = field.sub(fei[j], b[j]);
    }
    // Verify agreement on all points (early exit on first mismatch).
    std::vector<std::uint32_t> x(n), y(n);
    for (std::uint64_t idx = 0; idx < codec.size; ++idx) {
        codec.decode(static_cast<PointIndex>(idx), x.data());
        for (int j = 0; j < n; ++j) y[j] = b[j];
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            const std::uint32_t* r = m.row(i);
            for (int j = 0; j < n; ++j) y[j] = field.add(y[j], field.mul(x[i], r[j]));
        }
        if (codec.encode(y.data()) != perm.images[idx]) return std::nullopt;
    }
    return m;
}

/// Tests semi-affinity: tries each field automorphism sigma and checks whether
/// x -> perm(sigma^{-1}(x)) is affine.
inline std::optional<AffineMap> is_semi_affine(const Permutation& perm,
                                               const FieldSpec& field) {
    auto autos = field.automorphisms();
    const int m = static_cast<int>(autos.size());
    PointCodec codec(perm.q, perm.n);
    std::vector<std::uint32_t> x(perm.n);
    for (int s = 0; s < m; ++s) {
        const auto& sig_inv = autos[(m - s) % m]; // inverse of Frobenius^s
        Permutation g;
        g.q = perm.q;
        g.n = perm.n;
        g.images.resize(perm.size());
        for (std::uint64_t idx = 0; idx < perm.size(); ++idx) {
            codec.decode(static_cast<PointIndex>(idx), x.data());
            for (int j = 0; j < perm.n; ++j) x[j] = sig_inv[x[j]];
            g.images[idx] = perm.images[codec.encode(x.data())];
        }
        if (auto aff = is_affine(g, field)) {
            aff->sigma = s;
            return aff;
        }
    }
    return std::nullopt;
}

namespace detail {

// Enumerate all invertible n x n matrices over F_q, row by row, pruning rows
// inside the span of the previous ones.  Calls fn(rows) with rows given as
// point indices (row i encoded like a point of F_q^n).
template <typename Fn>
inline void enumerate_gl_rows(const FieldSpec& field, int n, Fn&& fn) {
    PointCodec codec(field.q(), n);
    const std::uint32_t N = static_cast<std::uint32_t>(codec.size);
    std::vector<PointIndex> rows(n);
    std::vector<std::vector<bool>> spanned(n + 1, std::vector<bool>(N, false));
    std::vector<std::vector<PointIndex>> span_list(n + 1);
    spanned[0][0] = true;
    span_list[0] = {0};

    // Pointwise scalar multiply-and-add helper over indices.
    std::vector<std::uint32_t> da(n), db(n);
    auto addmul = [&](PointIndex a, std::uint32_t c, PointIndex v) {
        codec.decode(a, da.data());
        codec.decode(v, db.data());
        for (int j = 0; j < n; ++j) da[j] = field.add(da[j], field.mul(c, db[j]));
        return codec.encode(da.data());
    };

    std::function<void(int)> rec = [&](int depth) {
        if (depth == n) {
            fn(rows);
            return;
        }
        for (PointIndex v = 1; v < N; ++v) {
            if (spanned[depth][v]) continue;
            rows[depth] = v;
            // Extend the span with all multiples of v added to existing points.
            auto& next = spanned[depth + 1];
            auto& next_list = span_list[depth + 1];
            next_list = span_list[depth];
            for (PointIndex s : span_list[depth]) next[s] = true;
            for (std::uint32_t c = 1; c < field.q(); ++c)
                for (PointIndex s : span_list[depth]) {
                    PointIndex t = addmul(s, c, v);
                    next[t] = true;
                    next_list.push_back(t);
                }
            rec(depth + 1);
            for (PointIndex s : next_list) next[s] = false;
        }
    };
    rec(0);
}

} // namespace detail

/// Enumerates AGL(n, q) as explicit permutations, each exactly once.
/// Throws TooLarge above 10^7 elements.
template <typename Fn>
inline void enumerate_agl(int n, std::uint32_t q, Fn&& fn) {
    auto [gl, agl, agammal] = group_orders(n, q);
    (void)gl;
    (void)agammal;
    if (agl > 10000000) throw TooLarge("AGL too large to enumerate");
    auto field = make_field(q);
    PointCodec codec(q, n);
    const std::uint32_t N = static_cast<std::uint32_t>(codec.size);
    std::uint64_t seen = 0;
    detail::enumerate_gl_rows(*field, n, [&](const std::vector<PointIndex>& rows) {
        // Linear image of every point from the row images.
        std::vector<PointIndex> lin(N);
        std::vector<std::uint32_t> x(n), y(n), rj(n);
        for (std::uint32_t idx = 0; idx < N; ++idx) {
            codec.decode(idx, x.data());
            std::fill(y.begin(), y.end(), 0);
            for (int i = 0; i < n; ++i) {
                if (x[i] == 0) continue;
                codec.decode(rows[i], rj.data());
                for (int j = 0; j < n; ++j)
                    y[j] = field->add(y[j], field->mul(x[i], rj[j]));
            }
            lin[idx] = codec.encode(y.data());
        }
        Permutation p;
        p.q = q;
        p.n = n;
        p.images.resize(N);
        for (PointIndex b = 0; b < N; ++b) {
            for (std::uint32_t idx = 0; idx < N; ++idx) {
                PointIndex t = lin[idx];
                // t + b
                std::vector<std::uint32_t> dt(n), db(n);
                codec.decode(t, dt.data());
                codec.decode(b, db.data());
                for (int j = 0; j < n; ++j) dt[j] = field->add(dt[j], db[j]);
                p.images[idx] = codec.encode(dt.data());
            }
            fn(p);
            ++seen;
        }
    });
    (void)seen;
}

inline std::vector<Permutation> enumerate_agl(int n, std::uint32_t q) {
    std::vector<Permutation> out;
    enumerate_agl(n, q, [&](const Permutation& p) { out.push_back(p); });
    return out;
}

struct TranspositionDecomposition {
    AffineMap map;   // the affine (or semi-affine) g with perm = g after swapping u,v
    PointIndex u = 0;
    PointIndex v = 0;
};

/// Membership test for AGL∘tau∘AGL (or AGammaL∘tau∘AGammaL when semi_affine):
/// finds g and u != v with perm equal to g except images swapped on {u, v}.
inline std::optional<TranspositionDecomposition> transposition_distance_two(
    const Permutation& perm, const FieldSpec& field, bool semi_affine = false) {
    Permutation work = perm;
    const std::uint32_t N = static_cast<std::uint32_t>(perm.size());
    for (PointIndex u = 0; u < N; ++u)
        for (PointIndex v = u + 1; v < N; ++v) {
            std::swap(work.images[u], work.images[v]);
            auto g = semi_affine ? is_semi_affine(work, field) : is_affine(work, field);
            std::swap(work.images[u], work.images[v]);
            if (g) return TranspositionDecomposition{*g, u, v};
        }
    return std::nullopt;
}

/// |(tau AGL(n,2) tau) ∩ AGL(n,2)| for tau the transposition of 0 and a != 0,
/// counted by the fixed-point criteria (n >= 4: f({0,a}) = {0,a};
/// n = 3: f(a) + f(0) = a) applied to every element of AGL(n,2).
inline BigInt coset_intersection_count(int n, PointIndex a) {
    if (a == 0) throw std::invalid_argument("a must be nonzero");
    auto [gl, agl, agammal] = group_orders(n, 2);
    (void)gl;
    (void)agammal;
    if (agl > 10000000) throw TooLarge("AGL too large to enumerate");
    auto field = make_field(2);
    const std::uint32_t N = 1u << n;
    BigInt count = 0;
    detail::enumerate_gl_rows(*field, n, [&](const std::vector<PointIndex>& rows) {
        // xA for bitmask x is the XOR of rows at set bits; bit i of the index
        // corresponds to coordinate x_{n-i}, i.e. row n-1-i.
        auto apply = [&](PointIndex x) {
            PointIndex y = 0;
            for (int i = 0; i < n; ++i)
                if ((x >> (n - 1 - i)) & 1) y ^= rows[i];
            return y;
        };
        PointIndex aA = apply(a);
        for (PointIndex b = 0; b < N; ++b) {
            PointIndex f0 = b, fa = aA ^ b;
            bool member;
            if (n >= 4)
                member = (f0 == 0 && fa == a) || (f0 == a && fa == 0);
            else
                member = (fa ^ f0) == a;
            if (member) ++count;
        }
    });
    return count;
}

/// Brute-force cross-check of coset_intersection_count: conjugates every AGL
/// element by tau and tests affinity directly.  Feasible for n = 3.
inline BigInt coset_intersection_count_bruteforce(int n, PointIndex a) {
    auto field = make_field(2);
    BigInt count = 0;
    enumerate_agl(n, 2, [&](const Permutation& f) {
        Permutation conj = f;
        // tau ∘ f ∘ tau
        std::swap(conj.images[0], conj.images[a]);
        for (auto& y : conj.images)
            if (y == 0) y = a;
            else if (y == a) y = 0;
        if (is_affine(conj, *field)) ++count;
    });
    return count;
}

/// Closed-form count of permutations of F_2^n whose 2-coaffinity equals the
/// minimal nonzero value 2 * 2^2 * qbinom(n-1, 2, 2).
inline BigInt minimal_coaffinity_count(int n) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    if (n == 3) return BigInt(1 << 6) * 3 * 7 * 7;
    BigInt r = big_pow(2, (n * n + 3 * n - 2) / 2);
    r *= (big_pow(2, n) - 1) * (big_pow(2, n) - 1);
    for (int j = 1; j <= n - 1; ++j) r *= big_pow(2, j) - 1;
    return r;
}

} // namespace affinitylab
