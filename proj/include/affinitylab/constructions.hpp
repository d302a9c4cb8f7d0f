#pragma once

// The permutation zoo: inverse map on F_{2^n}, products, lifts, the explicit
// F_3^2 / F_3^3 fixtures, and random (semi-)affine maps.

#include <cstdint>
#include <string>
#include <vector>

#include "affinitylab/affinity.hpp"
#include "affinitylab/groups.hpp"
#include "affinitylab/rng.hpp"

namespace affinitylab {

/// f(0) = 0, f(x) = x^{-1} in F_{2^n}; an involution.  3 <= n <= 16.
inline Permutation inverse_map(int n) {
    if (n < 3 || n > 16) throw std::invalid_argument("inverse_map requires 3 <= n <= 16");
    auto field = make_field(1u << n);
    Permutation p;
    p.q = 2;
    p.n = n;
    p.images.resize(std::size_t(1) << n);
    p.images[0] = 0;
    for (std::uint32_t x = 1; x < p.images.size(); ++x)
        p.images[x] = field->inv(x);
    return p;
}

/// (f x g)(x, y) = (f(x), g(y)); the first factor occupies the most
/// significant coordinates of the combined point index.
inline Permutation product_perm(const Permutation& f, const Permutation& g) {
    if (f.q != g.q) throw FieldMismatch("product factors must share q");
    Permutation p;
    p.q = f.q;
    p.n = f.n + g.n;
    const std::uint64_t gsize = g.size();
    p.images.resize(f.size() * gsize);
    for (std::uint64_t x = 0; x < f.size(); ++x)
        for (std::uint64_t y = 0; y < gsize; ++y)
            p.images[x * gsize + y] =
                static_cast<PointIndex>(f.images[x] * gsize + g.images[y]);
    return p;
}

/// Lift of g in Per(F_2^{n-1}) to f(c, x) = (c, g(x)), c the most significant
/// coordinate.  Satisfies (n-1)-affinity(f) = 2 + 2 * ((n-2)-affinity(g)).
inline Permutation lift_perm(const Permutation& g) {
    if (g.q != 2) throw FieldMismatch("lift_perm requires q = 2");
    Permutation p;
    p.q = 2;
    p.n = g.n + 1;
    const std::uint64_t half = g.size();
    p.images.resize(2 * half);
    for (std::uint64_t x = 0; x < half; ++x) {
        p.images[x] = g.images[x];
        p.images[half + x] = static_cast<PointIndex>(half + g.images[x]);
    }
    return p;
}

/// The two explicit 1-affinity-0 permutations from the F_3^2 / F_3^3 search.
inline Permutation fixture(const std::string& name) {
    Permutation p;
    p.q = 3;
    if (name == "f32") {
        p.n = 2;
        p.images = {0, 1, 8, 2, 3, 4, 5, 6, 7};
    } else if (name == "f33") {
        p.n = 3;
        p.images = {0,  1,  24, 2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12,
                    13, 14, 25, 15, 16, 17, 26, 18, 19, 23, 20, 21, 22};
    } else {
        throw std::invalid_argument("unknown fixture: " + name);
    }
    return p;
}

/// Uniformly random invertible matrix over F_q (rejection sampling).
inline std::vector<std::uint32_t> random_invertible_matrix(const FieldSpec& field,
                                                           int n, Rng& rng) {
    const std::uint32_t q = field.q();
    std::vector<std::uint32_t> m(std::size_t(n) * n);
    for (;;) {
        for (auto& e : m) e = static_cast<std::uint32_t>(rng.below(q));
        std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows[i][j] = m[std::size_t(i) * n + j];
        if (detail::rref(rows, field, n).size() == std::size_t(n)) return m;
    }
}

/// Random semi-affine permutation x -> sigma(x) A + b with uniform invertible
/// A, vector b and automorphism sigma; preserves every k-flat.
inline Permutation random_semi_affine(int n, std::uint32_t q, std::uint64_t seed) {
    auto field = make_field(q);
    Rng rng(seed);
    AffineMap m;
    m.q = q;
    m.n = n;
    m.matrix = random_invertible_matrix(*field, n, rng);
    m.b.resize(n);
    for (auto& e : m.b) e = static_cast<std::uint32_t>(rng.below(q));
    m.sigma = static_cast<int>(rng.below(field->m()));
    return m.to_permutation(*field);
}

/// Uniformly random permutation of F_q^n (Fisher-Yates).
inline Permutation random_permutation(int n, std::uint32_t q, Rng& rng) {
    Permutation p = Permutation::identity(q, n);
    for (std::size_t i = p.size() - 1; i > 0; --i)
        std::swap(p.images[i], p.images[rng.below(i + 1)]);
    return p;
}

} // namespace affinitylab
