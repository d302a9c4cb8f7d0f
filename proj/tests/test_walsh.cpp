#include <catch2/catch_amalgamated.hpp>

#include "affinitylab/constructions.hpp"
#include "affinitylab/walsh.hpp"

using namespace affinitylab;

namespace {

// Quadratic-free oracle: spectrum by direct double loop.
WalshSpectrum slow_walsh(const BoolFun& g) {
    const std::size_t N = g.size();
    WalshSpectrum out(N, 0);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t x = 0; x < N; ++x) {
            int sign = (g.truth[x] ^ __builtin_parity(static_cast<unsigned>(a & x))) ? -1 : 1;
            out[a] += sign;
        }
    return out;
}

} // namespace

TEST_CASE("fast transform matches the direct definition") {
    Rng rng(2);
    for (int n = 1; n <= 6; ++n) {
        BoolFun g = BoolFun::random(n, rng);
        CHECK(walsh_transform(g) == slow_walsh(g));
    }
}

TEST_CASE("worked example: g = x1 x2 on F_2^2") {
    BoolFun g = BoolFun::zero(2);
    g.truth[3] = 1; // x1 = x2 = 1
    auto s = walsh_transform(g);
    CHECK(s == WalshSpectrum{2, 2, 2, -2});
    CHECK(parseval_check(g));
    auto [lhs, rhs] = fourth_moment(g);
    CHECK(lhs == 64);
    CHECK(lhs == rhs);
}

TEST_CASE("parseval and fourth moment on random functions") {
    Rng rng(77);
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            BoolFun g = BoolFun::random(n, rng);
            CHECK(parseval_check(g));
            auto [lhs, rhs] = fourth_moment(g);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("anf and algebraic degree") {
    // x1 x2 + x3 on F_2^3 (x1 most significant)
    BoolFun g = BoolFun::zero(3);
    for (std::uint32_t x = 0; x < 8; ++x)
        g.truth[x] = static_cast<std::uint8_t>((((x >> 2) & (x >> 1)) ^ x) & 1);
    auto c = anf(g);
    CHECK(c[0b110] == 1); // x1 x2
    CHECK(c[0b001] == 1); // x3
    CHECK(algebraic_degree(g) == 2);

    CHECK(algebraic_degree(BoolFun::zero(3)) == -1);
    BoolFun aff = BoolFun::zero(3);
    for (std::uint32_t x = 0; x < 8; ++x) aff.truth[x] = x & 1;
    CHECK(algebraic_degree(aff) == 1);
    BoolFun pt = BoolFun::point(3, 5);
    CHECK(algebraic_degree(pt) == 3);
}

TEST_CASE("autocorrelation bound: precondition, validity, tightness") {
    CHECK_THROWS_AS(lemma_bound_check(BoolFun::zero(3)), DegreeTooLow);

    Rng rng(5);
    for (int n = 3; n <= 8; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            BoolFun g = BoolFun::random(n, rng);
            if (algebraic_degree(g) < 2) continue;
            auto rep_b = lemma_bound_check(g);
            CHECK(rep_b.lhs <= rep_b.rhs);
        }
        // affine-plus-a-point achieves the bound exactly
        BoolFun g = BoolFun::point(n, 3);
        auto rep_b = lemma_bound_check(g);
        CHECK(rep_b.lhs == rep_b.rhs);
        CHECK(rep_b.tight);
    }
}

TEST_CASE("component route to 2-coaffinity matches direct counting") {
    Rng rng(13);
    for (int n = 4; n <= 7; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            BoolFun g1 = BoolFun::random(n - 1, rng);
            Permutation f = component_lift(g1);
            REQUIRE(f.is_bijection());
            CHECK(coaffinity_via_component(g1) == BigInt(count_affinity(f, 2).second));
        }
    }
}

TEST_CASE("minimal nonzero coaffinity bound is respected by component permutations") {
    Rng rng(99);
    for (int n = 3; n <= 7; ++n) {
        BigInt bound = min_nonzero_coaffinity_bound(n);
        CHECK(bound == 8 * (big_pow(2, n - 1) - 1) * (big_pow(2, n - 2) - 1) / 3);
        for (int rep = 0; rep < 10; ++rep) {
            BoolFun g1 = BoolFun::random(n - 1, rng);
            BigInt co = coaffinity_via_component(g1);
            CHECK((co == 0 || co >= bound));
        }
    }
    // n = 4: the bound 8*3*... is attained by a quadratic component
    CHECK(min_nonzero_coaffinity_bound(3) == 8);
}
