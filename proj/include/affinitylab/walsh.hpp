#pragma once

// Boolean-function Fourier analysis over F_2^n: fast Walsh transform, Parseval,
// the fourth-moment/autocorrelation identity, the minimal-coaffinity bound, and
// the component-function route to 2-coaffinity.

#include <cstdint>
#include <utility>
#include <vector>

#include "affinitylab/affinity.hpp"
#include "affinitylab/bigint.hpp"
#include "affinitylab/rng.hpp"

namespace affinitylab {

/// Function F_2^n -> F_2, truth table indexed by PointIndex.
struct BoolFun {
    int n = 0;
    std::vector<std::uint8_t> truth; // length 2^n, values 0/1

    std::size_t size() const { return truth.size(); }

    std::uint64_t weight() const {
        std::uint64_t w = 0;
        for (auto b : truth) w += b;
        return w;
    }

    static BoolFun zero(int n) {
        BoolFun f;
        f.n = n;
        f.truth.assign(std::size_t(1) << n, 0);
        return f;
    }

    static BoolFun random(int n, Rng& rng) {
        BoolFun f = zero(n);
        for (auto& b : f.truth) b = static_cast<std::uint8_t>(rng.below(2));
        return f;
    }

    /// Indicator of a single point.
    static BoolFun point(int n, PointIndex x) {
        BoolFun f = zero(n);
        f.truth[x] = 1;
        return f;
    }
};

using WalshSpectrum = std::vector<std::int64_t>;

/// Fourier transform: spectrum[a] = sum_x (-1)^(g(x) + <a,x>), via butterfly.
inline WalshSpectrum walsh_transform(const BoolFun& g) {
    const std::size_t N = g.size();
    WalshSpectrum v(N);
    for (std::size_t x = 0; x < N; ++x) v[x] = g.truth[x] ? -1 : 1;
    for (std::size_t len = 1; len < N; len <<= 1)
        for (std::size_t i = 0; i < N; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                std::int64_t a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
    return v;
}

/// Parseval self-check: sum of squared spectrum entries equals 2^{2n}.
inline bool parseval_check(const BoolFun& g) {
    WalshSpectrum s = walsh_transform(g);
    BigInt sum = 0;
    for (auto v : s) sum += BigInt(v) * v;
    return sum == big_pow(2, 2 * g.n);
}

namespace detail {

// Truth table packed into 64-bit words for fast autocorrelation.
struct PackedFun {
    int n;
    std::vector<std::uint64_t> words;

    explicit PackedFun(const BoolFun& g) : n(g.n) {
        words.assign((g.size() + 63) / 64, 0);
        for (std::size_t x = 0; x < g.size(); ++x)
            if (g.truth[x]) words[x >> 6] |= 1ull << (x & 63);
    }

    // Hamming weight of x -> g(x) ^ g(x ^ a).
    std::uint64_t diff_weight(std::uint32_t a) const {
        static const std::uint64_t mask[6] = {
            0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
            0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
        std::uint64_t total = 0;
        const std::uint32_t lo = a & 63;
        const std::uint32_t hi = a >> 6;
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint64_t shifted = words[w ^ hi];
            for (int d = 0; d < 6; ++d)
                if ((lo >> d) & 1) {
                    const int s = 1 << d;
                    shifted = ((shifted & mask[d]) << s) | ((shifted >> s) & mask[d]);
                }
            total += static_cast<std::uint64_t>(__builtin_popcountll(words[w] ^ shifted));
        }
        return total;
    }
};

} // namespace detail

/// Autocorrelation: r(a) = sum_x (-1)^(g(x+a)+g(x)) = 2^n - 2*|{x: g(x) != g(x+a)}|.
inline std::int64_t autocorrelation(const detail::PackedFun& pf, std::uint32_t a) {
    return (std::int64_t(1) << pf.n) - 2 * std::int64_t(pf.diff_weight(a));
}

/// Both sides of the fourth-moment identity, computed independently:
/// (sum_a ghat(a)^4,  2^n * sum_a r(a)^2).
inline std::pair<BigInt, BigInt> fourth_moment(const BoolFun& g) {
    WalshSpectrum s = walsh_transform(g);
    BigInt lhs = 0;
    for (auto v : s) {
        BigInt sq = BigInt(v) * v;
        lhs += sq * sq;
    }
    detail::PackedFun pf(g);
    BigInt rhs = 0;
    const std::uint32_t N = static_cast<std::uint32_t>(g.size());
    for (std::uint32_t a = 0; a < N; ++a) {
        std::int64_t r = autocorrelation(pf, a);
        rhs += BigInt(r) * r;
    }
    rhs *= big_pow(2, g.n);
    return {lhs, rhs};
}

/// Algebraic normal form by the Moebius transform; coefficient of monomial
/// prod_{i in supp(a)} x_i sits at index a.
inline std::vector<std::uint8_t> anf(const BoolFun& g) {
    std::vector<std::uint8_t> c(g.truth);
    const std::size_t N = c.size();
    for (std::size_t len = 1; len < N; len <<= 1)
        for (std::size_t i = 0; i < N; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) c[j + len] ^= c[j];
    return c;
}

/// Algebraic degree (degree of the zero function is -1 by convention).
inline int algebraic_degree(const BoolFun& g) {
    auto c = anf(g);
    int deg = -1;
    for (std::size_t a = 0; a < c.size(); ++a)
        if (c[a]) deg = std::max(deg, __builtin_popcount(static_cast<unsigned>(a)));
    return deg;
}

struct LemmaBoundReport {
    BigInt lhs;  // sum_a r(a)^2
    BigInt rhs;  // 2^{2n} + (2^n - 1)(2^n - 4)^2
    bool tight = false;
};

/// Autocorrelation square-sum bound for deg g >= 2; tight iff g is an affine
/// function away from a single-point indicator.
inline LemmaBoundReport lemma_bound_check(const BoolFun& g) {
    if (algebraic_degree(g) < 2) throw DegreeTooLow("lemma bound requires deg g >= 2");
    detail::PackedFun pf(g);
    const std::uint32_t N = static_cast<std::uint32_t>(g.size());
    LemmaBoundReport rep;
    rep.lhs = 0;
    for (std::uint32_t a = 0; a < N; ++a) {
        std::int64_t r = autocorrelation(pf, a);
        rep.lhs += BigInt(r) * r;
    }
    BigInt n2 = big_pow(2, g.n);
    rep.rhs = n2 * n2 + (n2 - 1) * (n2 - 4) * (n2 - 4);
    // |g + h| = 1 for some affine h iff some |ghat(a)| = 2^n - 2.
    WalshSpectrum s = walsh_transform(g);
    const std::int64_t target = (std::int64_t(1) << g.n) - 2;
    for (auto v : s)
        if (v == target || v == -target) { rep.tight = true; break; }
    return rep;
}

/// 2-coaffinity of f = (x_1 + g1(x_2..x_n), x_2, ..., x_n) via the
/// autocorrelation form |G|/3, g1 over F_2^{n-1}.
inline BigInt coaffinity_via_component(const BoolFun& g1) {
    const int n1 = g1.n; // = n - 1
    detail::PackedFun pf(g1);
    const std::uint32_t N = static_cast<std::uint32_t>(g1.size());
    BigInt acc = 0;
    for (std::uint32_t a = 0; a < N; ++a) {
        std::int64_t r = autocorrelation(pf, a);
        acc += BigInt(r) * r;
    }
    BigInt G = (big_pow(2, 3 * n1) - acc) / 2;
    if (G % 3 != 0) throw InternalInvariantViolation("|G| not divisible by 3");
    return G / 3;
}

/// Assembles the permutation f(x_1, y) = (x_1 + g1(y), y) of F_2^n, n = g1.n + 1.
inline Permutation component_lift(const BoolFun& g1) {
    Permutation p;
    p.q = 2;
    p.n = g1.n + 1;
    const std::uint32_t half = static_cast<std::uint32_t>(g1.size());
    p.images.resize(std::size_t(2) * half);
    for (std::uint32_t idx = 0; idx < 2 * half; ++idx) {
        std::uint32_t y = idx & (half - 1);
        p.images[idx] = idx ^ (static_cast<std::uint32_t>(g1.truth[y]) << g1.n);
    }
    return p;
}

/// Minimal nonzero 2-coaffinity of a non-affine permutation of F_2^n:
/// (8/3)(2^{n-1} - 1)(2^{n-2} - 1), always an integer.
inline BigInt min_nonzero_coaffinity_bound(int n) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    BigInt v = 8 * (big_pow(2, n - 1) - 1) * (big_pow(2, n - 2) - 1);
    return v / 3;
}

} // namespace affinitylab
