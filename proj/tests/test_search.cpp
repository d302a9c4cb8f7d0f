#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <set>

#include "affinitylab/search.hpp"

using namespace affinitylab;

TEST_CASE("exhaustive spectrum on the smallest spaces") {
    auto s = exhaustive_spectrum(3, 2, 2);
    CHECK(s.values() == std::vector<std::uint64_t>{0, 2, 6, 14});
    CHECK(s.budget_used == 40320);
    // witnesses re-verify (verify_witnesses already ran; check one by hand)
    auto it = s.witnesses.find(0);
    REQUIRE(it != s.witnesses.end());
    CHECK(count_affinity(it->second.first, 2).first == 0);

    // q = 2, k = 1: the single total value
    auto s1 = exhaustive_spectrum(3, 2, 1);
    CHECK(s1.values() == std::vector<std::uint64_t>{28});
}

TEST_CASE("exhaustive enumeration rejects spaces above 9 points") {
    CHECK_THROWS_AS(exhaustive_spectrum(4, 2, 2), TooLarge);
    CHECK_THROWS_AS(exhaustive_spectrum(3, 3, 1), TooLarge);
}

TEST_CASE("random spectrum is deterministic in the seed") {
    SearchConfig cfg;
    cfg.budget = 2000;
    cfg.seed = 42;
    auto a = random_spectrum(3, 2, 2, cfg);
    auto b = random_spectrum(3, 2, 2, cfg);
    CHECK(a.values() == b.values());
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (auto ia = a.witnesses.begin(), ib = b.witnesses.begin(); ia != a.witnesses.end();
         ++ia, ++ib)
        CHECK(ia->second.first == ib->second.first);
    cfg.seed = 43;
    auto c = random_spectrum(3, 2, 2, cfg);
    CHECK(a.budget_used == c.budget_used);
}

TEST_CASE("random values are a subset of the known full spectrum") {
    SearchConfig cfg;
    cfg.budget = 20000;
    cfg.seed = 7;
    cfg.walkers = 2;
    auto res = random_spectrum(3, 2, 2, cfg);
    std::set<std::uint64_t> full{0, 2, 6, 14};
    for (auto v : res.values()) CHECK(full.count(v) == 1);
    CHECK(res.witnesses.size() >= 3); // walk should see most of a 4-value spectrum

    // k = 1, n = 2, q = 4: full spectrum {0..6, 8, 12, 20}
    SearchConfig cfg4;
    cfg4.budget = 20000;
    cfg4.seed = 12;
    auto res4 = random_spectrum(2, 4, 1, cfg4);
    std::set<std::uint64_t> full4{0, 1, 2, 3, 4, 5, 6, 8, 12, 20};
    for (auto v : res4.values()) CHECK(full4.count(v) == 1);
}

TEST_CASE("three-cycle moves keep the state exact") {
    SearchConfig cfg;
    cfg.budget = 3000;
    cfg.seed = 5;
    cfg.moves = MoveSet::ThreeCycle;
    auto res = random_spectrum(3, 2, 2, cfg);
    std::set<std::uint64_t> full{0, 2, 6, 14};
    for (auto v : res.values()) CHECK(full.count(v) == 1);
}

TEST_CASE("multi-walker merge is a superset of each walker's stream") {
    SearchConfig one;
    one.budget = 4000;
    one.seed = 9;
    one.walkers = 1;
    SearchConfig four = one;
    four.walkers = 4;
    auto r4 = random_spectrum(3, 2, 2, four);
    // walker 0 of the 4-walker run has budget 1000 and the derived seed;
    // every value it can see is in the merged result by construction.
    std::set<std::uint64_t> full{0, 2, 6, 14};
    for (auto v : r4.values()) CHECK(full.count(v) == 1);
    CHECK(r4.budget_used == 4000);
}

TEST_CASE("checkpoint resume reproduces the uninterrupted trajectory bit-exactly") {
    const std::string path = "ckpt_test.json";
    std::remove(path.c_str());

    // Reference: one uninterrupted run, no checkpointing.
    SearchConfig ref;
    ref.budget = 5000;
    ref.seed = 31337;
    auto full_run = random_spectrum(3, 2, 2, ref);

    // Interrupted run: stop after 2000 evaluations (checkpoint lands exactly
    // at the cut), then resume with the full budget.
    SearchConfig cfg = ref;
    cfg.checkpoint_path = path;
    cfg.checkpoint_interval = 500;
    SearchConfig partial = cfg;
    partial.budget = 2000;
    auto head = random_spectrum(3, 2, 2, partial);
    SearchConfig rest = cfg; // budget 5000, resumes from the step-2000 checkpoint
    auto resumed = random_spectrum(3, 2, 2, rest);
    CHECK(resumed.budget_used == 5000);
    CHECK(resumed.values() == full_run.values());
    REQUIRE(resumed.witnesses.size() == full_run.witnesses.size());
    for (auto ia = resumed.witnesses.begin(), ib = full_run.witnesses.begin();
         ia != resumed.witnesses.end(); ++ia, ++ib) {
        CHECK(ia->first == ib->first);
        CHECK(ia->second.first == ib->second.first);
    }
    // the interrupted head's values are a prefix subset of the full run's
    for (auto v : head.values()) CHECK(full_run.witnesses.count(v) == 1);

    // corrupted checkpoints are rejected
    {
        std::ofstream bad(path, std::ios::trunc);
        bad << "{not json";
    }
    CHECK_THROWS_AS(random_spectrum(3, 2, 2, cfg), CheckpointCorrupt);
    // mismatched config is rejected too
    {
        SearchConfig other = cfg;
        other.seed = 1;
        std::remove(path.c_str());
        auto tmp = random_spectrum(3, 2, 2, other); // writes checkpoints for seed 1
        CHECK_THROWS_AS(random_spectrum(3, 2, 2, cfg), CheckpointCorrupt);
    }
    std::remove(path.c_str());
}

TEST_CASE("target search finds known profile witnesses") {
    // (2,3): 1-affinity 0 exists (the f32 fixture qualifies)
    SearchConfig cfg;
    cfg.budget = 200000;
    cfg.seed = 2024;
    auto w = target_search(2, 3, {{1, 0}}, cfg);
    REQUIRE(w.has_value());
    CHECK(count_affinity(*w, 1).first == 0);

    // a start witness is accepted immediately
    SearchConfig cfg2;
    cfg2.budget = 10;
    cfg2.seed = 1;
    cfg2.starts = {fixture("f32")};
    auto w2 = target_search(2, 3, {{1, 0}}, cfg2);
    REQUIRE(w2.has_value());

    // unattainable target reports absence without throwing
    SearchConfig cfg3;
    cfg3.budget = 2000;
    cfg3.seed = 3;
    cfg3.stall_limit = 200;
    auto none = target_search(2, 2, {{1, 7}}, cfg3); // only 6 1-flats exist
    CHECK_FALSE(none.has_value());
}

TEST_CASE("hyperplane-form online check rejects impossible values") {
    CHECK_THROWS_AS(detail::check_hyperplane_form(5, 4, 3, 2),
                    InternalInvariantViolation);
    CHECK_NOTHROW(detail::check_hyperplane_form(6, 4, 3, 2));
    CHECK_NOTHROW(detail::check_hyperplane_form(5, 4, 2, 2)); // k != n-1: exempt
}
