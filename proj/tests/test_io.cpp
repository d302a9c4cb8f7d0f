#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "affinitylab/constructions.hpp"
#include "affinitylab/permutation_io.hpp"

using namespace affinitylab;

TEST_CASE("json round-trip") {
    auto p = fixture("f33");
    auto j = to_json(p);
    CHECK(j.at("q") == 3);
    CHECK(j.at("n") == 3);
    auto back = permutation_from_json(j);
    CHECK(back == p);
    // round-trip through the serialized string too
    auto again = permutation_from_json(nlohmann::json::parse(j.dump()));
    CHECK(again == p);
}

TEST_CASE("text round-trip") {
    auto p = inverse_map(4);
    auto text = to_text(p);
    auto back = permutation_from_text(text);
    CHECK(back == p);
}

TEST_CASE("malformed inputs are rejected") {
    CHECK_THROWS(permutation_from_text("2 2 0 1 2"));       // too few images
    CHECK_THROWS(permutation_from_text("2 2 0 1 2 2"));     // not a bijection
    CHECK_THROWS(permutation_from_text(""));                // no header
    CHECK_THROWS(permutation_from_json(nlohmann::json{{"q", 2}})); // missing fields
    nlohmann::json bad{{"q", 2}, {"n", 2}, {"images", {0, 1, 2, 5}}};
    CHECK_THROWS_AS(permutation_from_json(bad), std::invalid_argument);
}

TEST_CASE("file loading auto-detects format") {
    const std::string jf = "perm_io_test.json", tf = "perm_io_test.txt";
    auto p = fixture("f32");
    {
        std::ofstream out(jf, std::ios::trunc);
        out << to_json(p).dump();
    }
    {
        std::ofstream out(tf, std::ios::trunc);
        out << to_text(p);
    }
    CHECK(load_permutation(jf) == p);
    CHECK(load_permutation(tf) == p);
    CHECK_THROWS(load_permutation("no_such_file.json"));
    std::remove(jf.c_str());
    std::remove(tf.c_str());
}
