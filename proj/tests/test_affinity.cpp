#include <catch2/catch_amalgamated.hpp>

#include "affinitylab/affinity.hpp"
#include "affinitylab/constructions.hpp"
#include "affinitylab/groups.hpp"
#include "affinitylab/rng.hpp"

using namespace affinitylab;

TEST_CASE("identity preserves every flat") {
    for (auto [n, k, q] : std::vector<std::tuple<int, int, std::uint32_t>>{
             {3, 2, 2}, {4, 2, 2}, {2, 1, 3}, {3, 2, 3}}) {
        CAPTURE(n, k, q);
        auto [aff, coaff] = count_affinity(Permutation::identity(q, n), k);
        CHECK(aff == static_cast<std::uint64_t>(count_flats(n, k, q)));
        CHECK(coaff == 0);
    }
}

TEST_CASE("affinity plus coaffinity equals the flat count") {
    Rng rng(7);
    for (auto [n, k, q] : std::vector<std::tuple<int, int, std::uint32_t>>{
             {4, 2, 2}, {4, 3, 2}, {2, 1, 3}, {3, 1, 3}, {2, 1, 5}}) {
        CAPTURE(n, k, q);
        auto p = random_permutation(n, q, rng);
        auto [aff, coaff] = count_affinity(p, k);
        CHECK(BigInt(aff) + coaff == count_flats(n, k, q));
    }
}

TEST_CASE("fast paths agree with the generic table scan") {
    Rng rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        // q=2, k=2 streaming loop
        auto p4 = random_permutation(4, 2, rng);
        auto table42 = enumerate_flats(4, 2, 2);
        CHECK(count_affinity_q2k2(p4).first == count_affinity_oracle(p4, *table42).first);
        // q=2, k=n-1 hyperplane path
        auto table43 = enumerate_flats(4, 3, 2);
        CHECK(count_affinity_q2_hyperplanes(p4).first ==
              count_affinity_oracle(p4, *table43).first);
        // q=2, k=1: always total
        auto table41 = enumerate_flats(4, 1, 2);
        CHECK(count_affinity(p4, 1).first == count_affinity_oracle(p4, *table41).first);
    }
}

TEST_CASE("delta updates equal full recomputation along random walks") {
    for (auto [n, q, k] : std::vector<std::tuple<int, std::uint32_t, int>>{
             {4, 2, 2}, {3, 3, 1}, {2, 5, 1}}) {
        CAPTURE(n, q, k);
        auto table = enumerate_flats(n, k, q);
        Rng rng(1000 + n + q + k);
        AffinityState state(table, Permutation::identity(q, n));
        const std::uint64_t N = state.perm().size();
        for (int step = 0; step < 300; ++step) {
            PointIndex u = static_cast<PointIndex>(rng.below(N));
            PointIndex v = static_cast<PointIndex>(rng.below(N - 1));
            if (v >= u) ++v;
            state.apply_transposition_delta(u, v);
            if (step % 25 == 0)
                CHECK(state.affinity() == count_affinity_table(state.perm(), *table).first);
        }
        CHECK(state.affinity() == count_affinity_table(state.perm(), *table).first);
    }
}

TEST_CASE("affinity is invariant under affine conjugation") {
    Rng rng(23);
    auto field = make_field(3);
    auto p = random_permutation(2, 3, rng);
    auto base = count_affinity(p, 1).first;
    auto alpha = random_semi_affine(2, 3, 99);
    // alpha o p and p o alpha have the same 1-affinity as p
    CHECK(count_affinity(alpha.compose(p), 1).first == base);
    CHECK(count_affinity(p.compose(alpha), 1).first == base);
}

TEST_CASE("transposition closed form matches enumeration on small spaces") {
    for (auto [n, k, q] : std::vector<std::tuple<int, int, std::uint32_t>>{
             {3, 2, 2}, {4, 2, 2}, {4, 3, 2}, {2, 1, 3}, {3, 2, 3}, {2, 1, 5}}) {
        CAPTURE(n, k, q);
        auto t = Permutation::transposition(q, n, 0, 1);
        auto [aff, coaff] = count_affinity(t, k);
        auto [faff, fcoaff] = transposition_formula(n, k, q);
        CHECK(BigInt(aff) == faff);
        CHECK(BigInt(coaff) == fcoaff);
        // the equivalent rational form agrees exactly
        BigRational rat =
            (BigRational((big_pow(q, n - k) - 2) * (big_pow(q, n) - 1),
                         big_pow(q, k) - 1) +
             2) *
            BigRational(qbinom(n - 1, k - 1, q));
        CHECK(rat == BigRational(faff));
    }

    // q = 2, k = 1: every 2-point set is a 1-flat, so a transposition
    // preserves all of them and the coaffinity is 0
    for (int n : {2, 3, 4, 5}) {
        CAPTURE(n);
        auto [faff, fcoaff] = transposition_formula(n, 1, 2);
        CHECK(fcoaff == 0);
        CHECK(faff == count_flats(n, 1, 2));
        auto t = Permutation::transposition(2, n, 0, 1);
        CHECK(BigInt(count_affinity(t, 1).second) == fcoaff);
    }
}

TEST_CASE("V_f structure theorem on q=2 examples") {
    // identity: V_f is everything
    auto vf_id = compute_vf(Permutation::identity(2, 4));
    CHECK(vf_id.dim == 4);
    CHECK((std::uint64_t(1) << (vf_id.dim + 1)) - 2 ==
          count_affinity(Permutation::identity(2, 4), 3).first);

    // transposition: affinity 2^n - 2 so dim V_f = n - 1
    auto t = Permutation::transposition(2, 4, 3, 12);
    auto vf_t = compute_vf(t);
    CHECK((std::uint64_t(1) << (vf_t.dim + 1)) - 2 == count_affinity(t, 3).first);

    // lifted permutation: (n-1)-affinity follows 2 + 2*previous
    Rng rng(5);
    auto g = random_permutation(3, 2, rng);
    auto lifted = lift_perm(g);
    CHECK(count_affinity(lifted, 3).first == 2 + 2 * count_affinity(g, 2).first);
    auto vf_l = compute_vf(lifted);
    CHECK((std::uint64_t(1) << (vf_l.dim + 1)) - 2 == count_affinity(lifted, 3).first);
}

TEST_CASE("profile covers k = 1..n-1 and respects budgets") {
    auto p = inverse_map(4);
    auto prof = affinity_profile(p);
    REQUIRE(prof.size() == 3);
    CHECK(prof[0].k == 1);
    CHECK(prof[0].computed);
    CHECK(prof[0].affinity == 120); // q=2: every 1-flat maps to a 1-flat
    CHECK(prof[1].affinity == 5);
    CHECK(prof[2].affinity == 0); // inverse map on F_2^4 has trivial V_f

    // a tiny budget marks table-backed entries as uncomputed
    auto prof_tight = affinity_profile(fixture("f33"), 10);
    for (const auto& e : prof_tight) CHECK_FALSE(e.computed);
}

TEST_CASE("threshold classification") {
    auto id = Permutation::identity(3, 2);
    CHECK(threshold_check(id, 1).classification == ThresholdClass::Affine);
    auto t = Permutation::transposition(3, 2, 0, 5);
    CHECK(threshold_check(t, 1).classification == ThresholdClass::AtTransposition);
    CHECK(threshold_check(fixture("f32"), 1).classification ==
          ThresholdClass::AboveThreshold);
    // synthetic below-threshold value classifies as a counterexample
    CHECK(classify_coaffinity(BigInt(3), 2, 1, 3).classification ==
          ThresholdClass::BelowThresholdCounterexample);
}

TEST_CASE("degenerate k values are total") {
    auto p = fixture("f32");
    CHECK(count_affinity(p, 0).first == 9);
    CHECK(count_affinity(p, 2).first == 1);
}
