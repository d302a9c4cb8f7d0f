#include <catch2/catch_amalgamated.hpp>

#include "affinitylab/field.hpp"

using namespace affinitylab;

namespace {
const std::uint32_t kPrimePowers[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
}

TEST_CASE("rejects non-prime-powers and out-of-range orders") {
    CHECK_THROWS_AS(make_field(1), NotPrimePower);
    CHECK_THROWS_AS(make_field(6), NotPrimePower);
    CHECK_THROWS_AS(make_field(12), NotPrimePower);
    CHECK_THROWS_AS(make_field(100), NotPrimePower);
    CHECK_THROWS_AS(make_field(1u << 17), TooLarge);
}

TEST_CASE("prime-power decomposition") {
    auto f16 = make_field(16);
    CHECK(f16->p() == 2);
    CHECK(f16->m() == 4);
    auto f9 = make_field(9);
    CHECK(f9->p() == 3);
    CHECK(f9->m() == 2);
    auto f13 = make_field(13);
    CHECK(f13->p() == 13);
    CHECK(f13->m() == 1);
}

TEST_CASE("canonical moduli are the expected lexicographically-first irreducibles") {
    // F_4: t^2 + t + 1 is the only irreducible quadratic over F_2.
    auto f4 = make_field(4);
    CHECK(f4->modulus() == std::vector<std::uint32_t>{1, 1, 1});
    // F_8: comparing (c_0, c_1, c_2) low degree first, t^3 + t^2 + 1 = (1,0,1)
    // precedes t^3 + t + 1 = (1,1,0).
    auto f8 = make_field(8);
    CHECK(f8->modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
    // F_9: t^2 + 1 is irreducible over F_3 (-1 is a non-residue) and minimal.
    auto f9 = make_field(9);
    CHECK(f9->modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("field axioms hold exhaustively for every order up to 16") {
    for (std::uint32_t q : kPrimePowers) {
        CAPTURE(q);
        auto f = make_field(q);
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(f->add(a, 0) == a);
            CHECK(f->mul(a, 1) == a);
            CHECK(f->mul(a, 0) == 0);
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                for (std::uint32_t c = 0; c < q; ++c) {
                    CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
        }
        CHECK_THROWS_AS(f->inv(0), DivisionByZero);
    }
}

TEST_CASE("frobenius automorphisms form a cyclic group of order m") {
    for (std::uint32_t q : {4u, 8u, 9u, 16u, 27u, 25u}) {
        CAPTURE(q);
        auto f = make_field(q);
        auto autos = f->automorphisms();
        REQUIRE(autos.size() == f->m());
        for (std::uint32_t x = 0; x < q; ++x) CHECK(autos[0][x] == x);
        // each is a field homomorphism
        for (std::uint32_t i = 1; i < f->m(); ++i)
            for (std::uint32_t a = 0; a < q; ++a)
                for (std::uint32_t b = 0; b < q; ++b) {
                    CHECK(autos[i][f->add(a, b)] == f->add(autos[i][a], autos[i][b]));
                    CHECK(autos[i][f->mul(a, b)] == f->mul(autos[i][a], autos[i][b]));
                }
        // sigma^m = identity; sigma generates all listed powers
        const auto& sigma = autos[1 % f->m()];
        std::vector<std::uint32_t> acc(q);
        for (std::uint32_t x = 0; x < q; ++x) acc[x] = x;
        for (std::uint32_t i = 0; i < f->m(); ++i) {
            for (std::uint32_t x = 0; x < q; ++x) CHECK(acc[x] == autos[i][x]);
            for (auto& x : acc) x = sigma[x];
        }
        for (std::uint32_t x = 0; x < q; ++x) CHECK(acc[x] == x);
    }
}

TEST_CASE("large-order fields use the discrete-log path consistently") {
    auto f = make_field(1024); // 2^10, above the dense-table threshold
    CHECK(f->m() == 10);
    // spot-check axioms on a deterministic sample
    for (std::uint32_t a = 1; a < 1024; a += 37) {
        CHECK(f->mul(a, f->inv(a)) == 1);
        for (std::uint32_t b = 1; b < 1024; b += 101) {
            CHECK(f->mul(a, b) == f->mul(b, a));
            CHECK(f->div(f->mul(a, b), b) == a);
        }
    }
    // Frobenius squares in characteristic 2
    auto autos = f->automorphisms();
    for (std::uint32_t x = 0; x < 1024; ++x) CHECK(autos[1][x] == f->mul(x, x));
}

TEST_CASE("pow matches repeated multiplication") {
    auto f = make_field(9);
    for (std::uint32_t a = 0; a < 9; ++a) {
        std::uint32_t acc = 1;
        for (unsigned e = 0; e < 12; ++e) {
            CHECK(f->pow(a, e) == acc);
            acc = f->mul(acc, a);
        }
    }
}
