#pragma once

// Spectrum exploration: exhaustive scans of tiny spaces (Heap transposition
// chain, one delta update per permutation), seeded random walks with bit-exact
// checkpoint/resume and multi-walker merge, and targeted hill-climbing search
// for permutations with a prescribed affinity profile.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "affinitylab/affinity.hpp"
#include "affinitylab/constructions.hpp"
#include "affinitylab/permutation_io.hpp"
#include "affinitylab/rng.hpp"

namespace affinitylab {

enum class SearchMode { Exhaustive, Randomized };
enum class MoveSet { Transposition, ThreeCycle };

struct SpectrumResult {
    int n = 0;
    int k = 0;
    std::uint32_t q = 2;
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t budget_used = 0;
    std::uint64_t seed = 0;
    // value -> (first witness, id of the walker that found it)
    std::map<std::uint64_t, std::pair<Permutation, int>> witnesses;

    std::vector<std::uint64_t> values() const {
        std::vector<std::uint64_t> v;
        v.reserve(witnesses.size());
        for (const auto& [val, _] : witnesses) v.push_back(val);
        return v;
    }

    /// Recomputes every witness with the generic-span oracle; throws on mismatch.
    void verify_witnesses(std::uint64_t budget = FlatTable::kDefaultBudget) const {
        auto table = enumerate_flats(n, k, q, budget);
        for (const auto& [val, w] : witnesses)
            if (count_affinity_oracle(w.first, *table).first != val)
                throw InternalInvariantViolation(
                    "witness re-verification failed at value " + std::to_string(val));
    }
};

struct SearchConfig {
    MoveSet moves = MoveSet::Transposition;
    std::uint64_t budget = 1'000'000;
    std::uint64_t seed = 0;
    int walkers = 1;
    std::uint64_t stall_limit = 10'000;      // target_search restart trigger
    std::uint64_t checkpoint_interval = 0;   // evaluations between writes; 0 = off
    std::string checkpoint_path;
    std::vector<Permutation> starts;         // walker w starts at starts[w mod size]
};

namespace detail {

// For q = 2, k = n-1 every achievable affinity is 2^i - 2 (checked online).
inline void check_hyperplane_form(std::uint64_t value, int n, int k, std::uint32_t q) {
    if (q != 2 || k != n - 1) return;
    std::uint64_t v = value + 2;
    if (v == 0 || (v & (v - 1)) != 0)
        throw InternalInvariantViolation(
            "(n-1)-affinity " + std::to_string(value) + " is not of the form 2^i - 2");
}

inline void record_value(SpectrumResult& res, std::uint64_t value, const Permutation& perm,
                         int walker) {
    check_hyperplane_form(value, res.n, res.k, res.q);
    auto it = res.witnesses.find(value);
    if (it == res.witnesses.end()) res.witnesses.emplace(value, std::make_pair(perm, walker));
}

inline std::uint64_t derive_walker_seed(std::uint64_t seed, int walker) {
    // splitmix64 step keeps walker streams decorrelated from consecutive seeds
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (std::uint64_t(walker) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

/// Visits every permutation of F_q^n (Heap's transposition chain: each step is
/// one delta update) and returns the complete k-spectrum with, per value, the
/// lexicographically smallest witness encountered.
inline SpectrumResult exhaustive_spectrum(int n, std::uint32_t q, int k) {
    PointCodec codec(q, n);
    if (codec.size > 9) throw TooLarge("exhaustive_spectrum requires q^n <= 9");
    const int N = static_cast<int>(codec.size);

    SpectrumResult res;
    res.n = n;
    res.k = k;
    res.q = q;
    res.mode = SearchMode::Exhaustive;

    auto table = enumerate_flats(n, k, q);
    AffinityState state(table, Permutation::identity(q, n));

    auto record = [&](void) {
        std::uint64_t value = state.affinity();
        detail::check_hyperplane_form(value, n, k, q);
        auto it = res.witnesses.find(value);
        if (it == res.witnesses.end())
            res.witnesses.emplace(value, std::make_pair(state.perm(), 0));
        else if (state.perm().images < it->second.first.images)
            it->second.first = state.perm();
        ++res.budget_used;
    };

    record();
    std::vector<int> c(N, 0);
    int i = 1;
    while (i < N) {
        if (c[i] < i) {
            const PointIndex u = static_cast<PointIndex>(i % 2 == 0 ? 0 : c[i]);
            state.apply_transposition_delta(u, static_cast<PointIndex>(i));
            record();
            ++c[i];
            i = 1;
        } else {
            c[i] = 0;
            ++i;
        }
    }
    res.verify_witnesses();
    return res;
}

namespace detail {

struct CheckpointState {
    int walker = 0;
    std::uint64_t steps_done = 0;
    std::uint64_t budget_used = 0;
    std::string rng_state;
    Permutation current;
};

inline nlohmann::json checkpoint_to_json(const SpectrumResult& res, const SearchConfig& cfg,
                                         const CheckpointState& cs) {
    nlohmann::json jw = nlohmann::json::array();
    for (const auto& [val, w] : res.witnesses)
        jw.push_back({{"value", val}, {"walker", w.second}, {"perm", to_json(w.first)}});
    return nlohmann::json{
        {"config", {{"n", res.n}, {"q", res.q}, {"k", res.k}, {"seed", cfg.seed},
                    {"budget", cfg.budget}, {"walkers", cfg.walkers},
                    {"moves", cfg.moves == MoveSet::Transposition ? "transposition" : "3cycle"}}},
        {"walker", cs.walker},
        {"steps_done", cs.steps_done},
        {"budget_used", cs.budget_used},
        {"rng_state", cs.rng_state},
        {"current", to_json(cs.current)},
        {"witnesses", jw}};
}

// Atomic write: temp file then rename, so a crash never leaves a torn file.
inline void write_checkpoint(const std::string& path, const nlohmann::json& j) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
        out << j.dump();
        out.flush();
        if (!out) throw std::runtime_error("checkpoint write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("checkpoint rename failed: " + path);
}

inline bool load_checkpoint(const std::string& path, int n, std::uint32_t q, int k,
                            const SearchConfig& cfg, SpectrumResult& res,
                            CheckpointState& cs) {
    std::ifstream in(path);
    if (!in) return false; // no checkpoint yet: fresh start
    nlohmann::json j;
    try {
        in >> j;
        const auto& jc = j.at("config");
        // budget is deliberately not compared: resuming with a larger budget
        // extends the same trajectory.
        const std::string moves =
            cfg.moves == MoveSet::Transposition ? "transposition" : "3cycle";
        if (jc.at("n") != n || jc.at("q") != q || jc.at("k") != k ||
            jc.at("seed") != cfg.seed || jc.at("walkers") != cfg.walkers ||
            jc.at("moves") != moves)
            throw CheckpointCorrupt("checkpoint config does not match this run");
        cs.walker = j.at("walker").get<int>();
        cs.steps_done = j.at("steps_done").get<std::uint64_t>();
        cs.budget_used = j.at("budget_used").get<std::uint64_t>();
        cs.rng_state = j.at("rng_state").get<std::string>();
        cs.current = permutation_from_json(j.at("current"));
        for (const auto& w : j.at("witnesses"))
            res.witnesses.emplace(w.at("value").get<std::uint64_t>(),
                                  std::make_pair(permutation_from_json(w.at("perm")),
                                                 w.at("walker").get<int>()));
    } catch (const CheckpointCorrupt&) {
        throw;
    } catch (const std::exception& e) {
        throw CheckpointCorrupt(std::string("unreadable checkpoint: ") + e.what());
    }
    return true;
}

inline void random_move(AffinityState& state, MoveSet moves, Rng& rng) {
    const std::uint64_t N = state.perm().size();
    PointIndex u = static_cast<PointIndex>(rng.below(N));
    PointIndex v = static_cast<PointIndex>(rng.below(N - 1));
    if (v >= u) ++v;
    if (moves == MoveSet::Transposition) {
        state.apply_transposition_delta(u, v);
        return;
    }
    PointIndex w = static_cast<PointIndex>(rng.below(N - 2));
    if (w >= std::min(u, v)) ++w;
    if (w >= std::max(u, v)) ++w;
    // 3-cycle (u v w) as two chained transposition deltas
    state.apply_transposition_delta(u, v);
    state.apply_transposition_delta(u, w);
}

} // namespace detail

/// Random walk over Per(F_q^n) accumulating every k-affinity value seen.
/// Deterministic given config.seed; walkers run on derived seeds and merge by
/// set union with lowest-walker-id witnesses; resumable bit-exactly from the
/// configured checkpoint.
inline SpectrumResult random_spectrum(int n, std::uint32_t q, int k,
                                      const SearchConfig& cfg) {
    SpectrumResult res;
    res.n = n;
    res.k = k;
    res.q = q;
    res.mode = SearchMode::Randomized;
    res.seed = cfg.seed;

    auto table = enumerate_flats(n, k, q);

    detail::CheckpointState cs;
    bool resumed = false;
    if (!cfg.checkpoint_path.empty())
        resumed = detail::load_checkpoint(cfg.checkpoint_path, n, q, k, cfg, res, cs);
    res.budget_used = resumed ? cs.budget_used : 0;

    const int walkers = std::max(1, cfg.walkers);
    for (int w = resumed ? cs.walker : 0; w < walkers; ++w) {
        std::uint64_t share = cfg.budget / walkers +
                              (std::uint64_t(w) < cfg.budget % walkers ? 1 : 0);
        if (share == 0) continue;

        Rng rng(detail::derive_walker_seed(cfg.seed, w));
        Permutation start = cfg.starts.empty()
                                ? Permutation::identity(q, n)
                                : cfg.starts[std::size_t(w) % cfg.starts.size()];
        std::uint64_t step = 1; // evaluation count for this walker, start included
        if (resumed && w == cs.walker && cs.steps_done >= 1) {
            rng.restore(cs.rng_state);
            start = cs.current;
            step = cs.steps_done;
        }
        AffinityState state(table, start);
        if (step == 1) {
            detail::record_value(res, state.affinity(), state.perm(), w);
            ++res.budget_used;
        }
        while (step < share) {
            detail::random_move(state, cfg.moves, rng);
            ++step;
            ++res.budget_used;
            detail::record_value(res, state.affinity(), state.perm(), w);
            if (cfg.checkpoint_interval && !cfg.checkpoint_path.empty() &&
                step % cfg.checkpoint_interval == 0) {
                detail::CheckpointState out{w, step, res.budget_used, rng.save(),
                                            state.perm()};
                detail::write_checkpoint(cfg.checkpoint_path,
                                         detail::checkpoint_to_json(res, cfg, out));
            }
        }
    }
    res.verify_witnesses();
    return res;
}

/// Hill climb toward a prescribed profile {(k, value)}: objective is the L1
/// distance, ties broken by coaffinity at the smallest requested k; restarts
/// from a fresh random permutation after cfg.stall_limit non-improving moves.
/// Absence after budget exhaustion is not a nonexistence proof.
inline std::optional<Permutation> target_search(
    int n, std::uint32_t q, std::vector<std::pair<int, std::uint64_t>> targets,
    const SearchConfig& cfg) {
    if (targets.empty()) throw std::invalid_argument("target_search: empty profile");
    std::sort(targets.begin(), targets.end());

    std::vector<std::shared_ptr<const FlatTable>> tables;
    for (const auto& [k, v] : targets) tables.push_back(enumerate_flats(n, k, q));

    Rng rng(cfg.seed);
    std::uint64_t used = 0;

    auto objective = [&](const std::vector<AffinityState>& states) {
        std::uint64_t obj = 0;
        for (std::size_t i = 0; i < states.size(); ++i) {
            std::uint64_t a = states[i].affinity(), t = targets[i].second;
            obj += a > t ? a - t : t - a;
        }
        return obj;
    };

    while (used < cfg.budget) {
        Permutation start = used == 0 && !cfg.starts.empty()
                                ? cfg.starts.front()
                                : random_permutation(n, q, rng);
        std::vector<AffinityState> states;
        for (auto& t : tables) states.emplace_back(t, start);
        std::uint64_t cur = objective(states);
        std::uint64_t cur_tie = states.front().coaffinity();
        ++used;
        if (cur == 0) return states.front().perm();

        std::uint64_t stall = 0;
        while (used < cfg.budget && stall < cfg.stall_limit) {
            const std::uint64_t N = states.front().perm().size();
            PointIndex u = static_cast<PointIndex>(rng.below(N));
            PointIndex v = static_cast<PointIndex>(rng.below(N - 1));
            if (v >= u) ++v;
            for (auto& s : states) s.apply_transposition_delta(u, v);
            ++used;
            std::uint64_t nxt = objective(states);
            std::uint64_t nxt_tie = states.front().coaffinity();
            if (nxt == 0) return states.front().perm();
            if (nxt < cur || (nxt == cur && nxt_tie < cur_tie)) {
                cur = nxt;
                cur_tie = nxt_tie;
                stall = 0;
            } else {
                for (auto& s : states) s.apply_transposition_delta(u, v); // revert
                ++stall;
            }
        }
    }
    return std::nullopt;
}

} // namespace affinitylab
