#pragma once

// Permutation (de)serialization: the JSON schema {"q","n","images"} and a
// whitespace text variant "q n img0 img1 ...".

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "affinitylab/affinity.hpp"

namespace affinitylab {

inline nlohmann::json to_json(const Permutation& p) {
    return nlohmann::json{{"q", p.q}, {"n", p.n}, {"images", p.images}};
}

inline Permutation permutation_from_json(const nlohmann::json& j) {
    Permutation p;
    p.q = j.at("q").get<std::uint32_t>();
    p.n = j.at("n").get<int>();
    p.images = j.at("images").get<std::vector<PointIndex>>();
    if (!p.is_bijection())
        throw std::invalid_argument("permutation JSON: images is not a bijection of F_q^n");
    return p;
}

inline std::string to_text(const Permutation& p) {
    std::ostringstream os;
    os << p.q << ' ' << p.n;
    for (auto v : p.images) os << ' ' << v;
    os << '\n';
    return os.str();
}

inline Permutation permutation_from_text(const std::string& text) {
    std::istringstream is(text);
    Permutation p;
    if (!(is >> p.q >> p.n)) throw std::invalid_argument("permutation text: missing q n header");
    std::uint64_t size = 1;
    for (int i = 0; i < p.n; ++i) size *= p.q;
    p.images.resize(size);
    for (auto& v : p.images)
        if (!(is >> v)) throw std::invalid_argument("permutation text: too few images");
    if (!p.is_bijection())
        throw std::invalid_argument("permutation text: images is not a bijection of F_q^n");
    return p;
}

/// Reads a permutation file, auto-detecting JSON vs text form.
inline Permutation load_permutation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open permutation file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return permutation_from_json(nlohmann::json::parse(text));
    return permutation_from_text(text);
}

} // namespace affinitylab
