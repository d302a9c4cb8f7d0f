// affinitylab: command-line front end for k-affinity computations on
// permutations of F_q^n.  One binary, subcommand style; deterministic given
// (flags, seed, input files).  Exit codes: 0 success, 1 usage/IO error,
// 2 verification failure (failed inequality report / threshold counterexample).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "affinitylab/affinity.hpp"
#include "affinitylab/constructions.hpp"
#include "affinitylab/groups.hpp"
#include "affinitylab/inequalities.hpp"
#include "affinitylab/permutation_io.hpp"
#include "affinitylab/search.hpp"
#include "affinitylab/walsh.hpp"

namespace {

using nlohmann::json;
using namespace affinitylab;

struct GlobalOpts {
    bool json_out = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    std::uint64_t budget = 0; // 0: module defaults / AFFINITYLAB_BUDGET
    std::string checkpoint;
};

std::uint64_t effective_budget(const GlobalOpts& g, std::uint64_t fallback) {
    if (g.budget) return g.budget;
    if (const char* env = std::getenv("AFFINITYLAB_BUDGET")) {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw CLI::ValidationError("AFFINITYLAB_BUDGET", "must be a positive integer");
    }
    return fallback;
}

std::uint64_t auto_seed(GlobalOpts& g) {
    if (g.seed_set) return g.seed;
    g.seed = std::random_device{}();
    std::cerr << "seed: " << g.seed << " (auto-chosen; pass --seed to reproduce)\n";
    return g.seed;
}

Permutation make_named(const std::string& name, std::uint32_t q, int n) {
    if (name == "identity") return Permutation::identity(q, n);
    if (name == "inverse") {
        if (q != 2) throw CLI::ValidationError("--construct", "inverse requires --q 2");
        return inverse_map(n);
    }
    if (name == "f32" || name == "f33") return fixture(name);
    throw CLI::ValidationError("--construct",
                               "unknown construction '" + name +
                                   "' (expected inverse|identity|f32|f33)");
}

Permutation resolve_perm(const std::string& file, const std::string& construct,
                         std::uint32_t q, int n) {
    if (!file.empty() && !construct.empty())
        throw CLI::ValidationError("--perm", "give either --perm or --construct, not both");
    if (!file.empty()) return load_permutation(file);
    if (!construct.empty()) return make_named(construct, q, n);
    throw CLI::ValidationError("--perm", "one of --perm or --construct is required");
}

void emit(const GlobalOpts& g, const json& j, const std::string& text) {
    if (g.json_out) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

json report_to_json(const IneqReport& r) {
    json j{{"name", r.name}, {"q", r.q},
           {"lhs", r.lhs.str()}, {"rhs", r.rhs.str()},
           {"margin", r.margin.str()}, {"holds", r.holds}};
    if (r.n >= 0) j["n"] = r.n;
    if (r.k >= 0) j["k"] = r.k;
    if (r.m >= 0) j["m"] = r.m;
    return j;
}

const char* class_name(ThresholdClass c) {
    switch (c) {
        case ThresholdClass::Affine: return "Affine";
        case ThresholdClass::AtTransposition: return "AtTransposition";
        case ThresholdClass::AboveThreshold: return "AboveThreshold";
        default: return "BelowThresholdCounterexample";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-affinity of permutations of F_q^n"};
    // global options (--seed, --budget, ...) may appear after the subcommand
    app.fallthrough();
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_flag("--json", g.json_out, "emit JSON instead of text");
    app.add_option("--seed", g.seed, "RNG seed for randomized commands")
        ->each([&](const std::string&) { g.seed_set = true; });
    app.add_option("--threads", g.threads, "worker count (results are thread-count independent)")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget", g.budget, "global evaluation/flat budget override");
    app.add_option("--checkpoint", g.checkpoint, "checkpoint file for resumable search");

    std::uint32_t q = 2;
    int n = 3, k = 2;
    std::string perm_file, construct_name;

    auto add_perm_opts = [&](CLI::App* sub, bool need_k) {
        sub->add_option("--q", q, "field size (prime power)")->required();
        sub->add_option("--n", n, "dimension")->required();
        if (need_k) sub->add_option("--k", k, "flat dimension")->required();
        sub->add_option("--perm", perm_file, "permutation file (JSON or text)");
        sub->add_option("--construct", construct_name,
                        "built-in permutation: inverse|identity|f32|f33");
    };

    auto* cmd_affinity = app.add_subcommand("affinity", "k-affinity of one permutation");
    add_perm_opts(cmd_affinity, true);

    auto* cmd_profile = app.add_subcommand("profile", "affinity for every k = 1..n-1");
    add_perm_opts(cmd_profile, false);

    auto* cmd_threshold = app.add_subcommand("threshold", "classify k-coaffinity vs the transposition value");
    add_perm_opts(cmd_threshold, true);

    std::string mode = "exhaustive";
    std::string start_name;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "k-spectrum by exhaustive or random search");
    cmd_spectrum->add_option("--mode", mode, "exhaustive|random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    cmd_spectrum->add_option("--q", q)->required();
    cmd_spectrum->add_option("--n", n)->required();
    cmd_spectrum->add_option("--k", k)->required();
    cmd_spectrum->add_option("--start", start_name, "seed point for random mode (inverse|identity|f32|f33)");

    std::string target_str;
    auto* cmd_find = app.add_subcommand("find", "search for a permutation with a prescribed profile");
    cmd_find->add_option("--q", q)->required();
    cmd_find->add_option("--n", n)->required();
    cmd_find->add_option("--target", target_str, "k=v[,k=v...]")->required();

    std::string out_file;
    auto* cmd_construct = app.add_subcommand("construct", "emit a built-in permutation");
    cmd_construct->add_option("--q", q)->required();
    cmd_construct->add_option("--n", n)->required();
    cmd_construct->add_option("--name", construct_name, "inverse|identity|f32|f33")->required();
    cmd_construct->add_option("-o,--output", out_file, "write to file instead of stdout");

    std::string suite = "section3";
    int q_max = 16, n_max = 12;
    auto* cmd_verify = app.add_subcommand("verify", "exact inequality verification sweep");
    cmd_verify->add_option("--suite", suite)->check(CLI::IsMember({"section3"}));
    cmd_verify->add_option("--q-max", q_max);
    cmd_verify->add_option("--n-max", n_max);

    int wn = 4, wcount = 10;
    auto* cmd_walsh = app.add_subcommand("walsh", "Walsh-spectrum identities on random Boolean functions");
    cmd_walsh->add_option("--n", wn)->required()->check(CLI::Range(1, 20));
    cmd_walsh->add_option("--count", wcount, "number of random functions")->check(CLI::PositiveNumber);

    auto* cmd_groups = app.add_subcommand("groups", "affine group orders and coset counts");
    cmd_groups->add_option("--q", q)->required();
    cmd_groups->add_option("--n", n)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage errors are exit code 1 (help/version requests stay 0)
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*cmd_affinity) {
            Permutation p = resolve_perm(perm_file, construct_name, q, n);
            auto [aff, coaff] =
                count_affinity(p, k, effective_budget(g, FlatTable::kDefaultBudget));
            emit(g,
                 json{{"q", p.q}, {"n", p.n}, {"k", k}, {"affinity", aff}, {"coaffinity", coaff}},
                 std::to_string(aff) + "\n");
        } else if (*cmd_profile) {
            Permutation p = resolve_perm(perm_file, construct_name, q, n);
            auto prof = affinity_profile(p, effective_budget(g, FlatTable::kDefaultBudget));
            json ja = json::array();
            std::string text;
            for (const auto& e : prof) {
                ja.push_back({{"k", e.k}, {"computed", e.computed},
                              {"affinity", e.affinity}, {"coaffinity", e.coaffinity}});
                text += "k=" + std::to_string(e.k) + "  " +
                        (e.computed ? std::to_string(e.affinity) + " / " +
                                          std::to_string(e.coaffinity)
                                    : std::string("budget exceeded")) + "\n";
            }
            emit(g, json{{"q", p.q}, {"n", p.n}, {"profile", ja}}, text);
        } else if (*cmd_threshold) {
            Permutation p = resolve_perm(perm_file, construct_name, q, n);
            auto v = threshold_check(p, k, effective_budget(g, FlatTable::kDefaultBudget));
            emit(g,
                 json{{"q", p.q}, {"n", p.n}, {"k", k},
                      {"classification", class_name(v.classification)},
                      {"coaffinity", v.coaffinity.str()},
                      {"transposition_coaffinity", v.transposition_coaffinity.str()}},
                 std::string(class_name(v.classification)) + " (coaffinity " +
                     v.coaffinity.str() + ", transposition " +
                     v.transposition_coaffinity.str() + ")\n");
            if (v.classification == ThresholdClass::BelowThresholdCounterexample) return 2;
        } else if (*cmd_spectrum) {
            SpectrumResult res;
            if (mode == "exhaustive") {
                res = exhaustive_spectrum(n, q, k);
            } else {
                SearchConfig cfg;
                cfg.budget = effective_budget(g, 1'000'000);
                cfg.seed = auto_seed(g);
                cfg.walkers = g.threads;
                cfg.checkpoint_path = g.checkpoint;
                if (!g.checkpoint.empty()) cfg.checkpoint_interval = 100'000;
                if (!start_name.empty()) cfg.starts = {make_named(start_name, q, n)};
                res = random_spectrum(n, q, k, cfg);
            }
            json jv = json::array();
            std::string text = "{";
            bool first = true;
            for (auto v : res.values()) {
                jv.push_back(v);
                text += (first ? "" : ",") + std::to_string(v);
                first = false;
            }
            text += "}\n";
            emit(g,
                 json{{"q", q}, {"n", n}, {"k", k},
                      {"mode", mode}, {"budget_used", res.budget_used},
                      {"seed", res.seed}, {"values", jv}},
                 text);
        } else if (*cmd_find) {
            SearchConfig cfg;
            cfg.budget = effective_budget(g, 1'000'000);
            cfg.seed = auto_seed(g);
            std::vector<std::pair<int, std::uint64_t>> targets;
            std::stringstream ss(target_str);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--target", "expected k=v[,k=v...]");
                targets.emplace_back(std::stoi(item.substr(0, eq)),
                                     std::stoull(item.substr(eq + 1)));
            }
            auto witness = target_search(n, q, targets, cfg);
            if (witness) {
                emit(g, json{{"found", true}, {"witness", to_json(*witness)}},
                     "found: " + to_text(*witness));
            } else {
                emit(g,
                     json{{"found", false}, {"budget", cfg.budget}, {"seed", cfg.seed},
                          {"note", "absence after budget exhaustion is not a nonexistence proof"}},
                     "no witness within budget " + std::to_string(cfg.budget) +
                         " (not a nonexistence proof)\n");
            }
        } else if (*cmd_construct) {
            Permutation p = make_named(construct_name, q, n);
            std::string payload = g.json_out ? to_json(p).dump(2) + "\n" : to_text(p);
            if (out_file.empty()) {
                std::cout << payload;
            } else {
                std::ofstream out(out_file, std::ios::trunc);
                if (!out) throw std::runtime_error("cannot open output file: " + out_file);
                out << payload;
            }
        } else if (*cmd_verify) {
            auto reports = default_sweep();
            bool all = true;
            json ja = json::array();
            for (const auto& r : reports) {
                if (r.q > static_cast<std::uint32_t>(q_max)) continue;
                if (r.n > n_max) continue;
                all = all && r.holds;
                if (g.json_out) ja.push_back(report_to_json(r));
                else if (!r.holds)
                    std::cout << "FAIL " << r.name << " q=" << r.q << " n=" << r.n
                              << " k=" << r.k << "\n";
            }
            if (g.json_out) std::cout << ja.dump(2) << "\n";
            else std::cout << (all ? "all reports hold\n" : "some reports FAILED\n");
            if (!all) return 2;
        } else if (*cmd_walsh) {
            Rng rng(auto_seed(g));
            bool ok = true;
            for (int i = 0; i < wcount; ++i) {
                BoolFun f = BoolFun::random(wn, rng);
                auto [lhs, rhs] = fourth_moment(f);
                ok = ok && parseval_check(f) && lhs == rhs;
            }
            emit(g, json{{"n", wn}, {"count", wcount}, {"holds", ok}},
                 std::string(ok ? "parseval and fourth-moment hold\n" : "identity FAILED\n"));
            if (!ok) return 2;
        } else if (*cmd_groups) {
            auto [gl, agl, agammal] = group_orders(n, q);
            json j{{"q", q}, {"n", n}, {"GL", gl.str()}, {"AGL", agl.str()},
                   {"AGammaL", agammal.str()}};
            std::string text = "|GL| = " + gl.str() + "\n|AGL| = " + agl.str() +
                               "\n|AGammaL| = " + agammal.str() + "\n";
            if (q == 2 && n >= 3 && n <= 4) {
                auto coset = coset_intersection_count(n, 1);
                auto minimal = minimal_coaffinity_count(n);
                j["coset_intersection"] = coset.str();
                j["minimal_coaffinity_count"] = minimal.str();
                text += "|AGL ∩ τAGLτ| = " + coset.str() +
                        "\nminimal-coaffinity permutations = " + minimal.str() + "\n";
            }
            emit(g, j, text);
        }
    } catch (const CLI::Error& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
