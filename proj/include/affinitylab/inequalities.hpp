#pragma once

// Exact-rational verification of the inequality chain behind the existence
// counting bound.  Everything is BigRational; no floating point anywhere.

#include <cstdint>
#include <string>
#include <vector>

#include "affinitylab/bigint.hpp"
#include "affinitylab/errors.hpp"
#include "affinitylab/geometry.hpp"

namespace affinitylab {

struct IneqReport {
    std::string name;
    std::uint32_t q = 0;
    int n = -1; // -1 when not applicable
    int k = -1;
    int m = -1;
    BigRational lhs;
    BigRational rhs;
    bool strict = true; // whether the statement requires lhs < rhs (vs <=)
    bool holds = false;
    BigRational margin; // rhs - lhs

    void finish() {
        margin = rhs - lhs;
        holds = strict ? margin > 0 : margin >= 0;
    }
};

namespace detail {

inline constexpr std::uint64_t kDefaultFactorialCap = 4096;

inline void require_budget(std::uint64_t qk, std::uint64_t cap) {
    if (qk > cap)
        throw BudgetExceeded("q^k = " + std::to_string(qk) +
                             " exceeds factorial budget " + std::to_string(cap));
}

// Central ratio qbinom(n,k,q)^2 / binom(q^n, q^k), exactly.
inline BigRational central_ratio(std::uint32_t q, int n, int k) {
    BigInt num = qbinom(n, k, q);
    num *= num;
    BigInt qn = big_pow(q, n);
    BigInt qk = big_pow(q, k);
    return BigRational(num) / BigRational(big_binom(qn, qk));
}

} // namespace detail

/// Descent step (3.1): qbinom(n,k)^2/C(q^n,q^k)
///   < q^{-(q^k-2k)} * qbinom(n-1,k)^2/C(q^{n-1},q^k).
inline IneqReport check_lemma31(std::uint32_t q, int n, int k,
                                std::uint64_t cap = detail::kDefaultFactorialCap) {
    const bool ok = (q > 2 && n > k && k >= 1) || (q == 2 && n > k && k >= 2);
    if (!ok) throw std::invalid_argument("check_lemma31: parameters outside stated range");
    BigInt qk = big_pow(q, k);
    detail::require_budget(static_cast<std::uint64_t>(qk), cap);
    IneqReport r;
    r.name = "lemma31";
    r.q = q;
    r.n = n;
    r.k = k;
    r.lhs = detail::central_ratio(q, n, k);
    int e = static_cast<int>(qk) - 2 * k;
    BigRational scale = e >= 0 ? BigRational(1, big_pow(q, e)) : BigRational(big_pow(q, -e));
    r.rhs = scale * detail::central_ratio(q, n - 1, k);
    r.finish();
    return r;
}

/// Base case (3.4): qbinom(k+1,k)^2/C(q^{k+1},q^k) < q^{-(q^k-k)}.
inline IneqReport check_lemma32(std::uint32_t q, int k,
                                std::uint64_t cap = detail::kDefaultFactorialCap) {
    const bool ok = (q >= 4 && k >= 1) || (q == 3 && k >= 2) || (q == 2 && k >= 3);
    if (!ok) throw std::invalid_argument("check_lemma32: parameters outside stated range");
    BigInt qk = big_pow(q, k);
    detail::require_budget(static_cast<std::uint64_t>(qk), cap);
    IneqReport r;
    r.name = "lemma32";
    r.q = q;
    r.k = k;
    r.lhs = detail::central_ratio(q, k + 1, k);
    r.rhs = BigRational(1, big_pow(q, static_cast<int>(qk) - k));
    r.finish();
    return r;
}

/// Telescoped bound (3.6): qbinom(n,k)^2/C(q^n,q^k) < q^{-((n-k)(q^k-2k)+k)}.
inline IneqReport check_cor33(std::uint32_t q, int n, int k,
                              std::uint64_t cap = detail::kDefaultFactorialCap) {
    const bool ok = (q >= 4 && n > k && k >= 1) || (q == 3 && n > k && k >= 2) ||
                    (q == 2 && n > k && k >= 3);
    if (!ok) throw std::invalid_argument("check_cor33: parameters outside stated range");
    BigInt qk = big_pow(q, k);
    detail::require_budget(static_cast<std::uint64_t>(qk), cap);
    IneqReport r;
    r.name = "cor33";
    r.q = q;
    r.n = n;
    r.k = k;
    r.lhs = detail::central_ratio(q, n, k);
    long long e = static_cast<long long>(n - k) * (static_cast<long long>(qk) - 2 * k) + k;
    r.rhs = e >= 0 ? BigRational(1, big_pow(q, static_cast<unsigned>(e)))
                   : BigRational(big_pow(q, static_cast<unsigned>(-e)));
    r.finish();
    return r;
}

/// Integer gap (3.7): q^k - 2k - 2 >= 0 (non-strict; equality at (4,1), (2,3)).
inline IneqReport check_lemma34(std::uint32_t q, int k) {
    const bool ok = (q >= 4 && k >= 1) || (q == 3 && k >= 2) || (q == 2 && k >= 3);
    if (!ok) throw std::invalid_argument("check_lemma34: parameters outside stated range");
    IneqReport r;
    r.name = "lemma34";
    r.q = q;
    r.k = k;
    r.lhs = 0;
    r.rhs = BigRational(big_pow(q, k) - 2 * k - 2);
    r.strict = false;
    r.finish();
    return r;
}

/// Counting bound (2.2), division-first: checks
///   sum_{k=m}^{n-1} q^{2(n-k)} qbinom(n,k)^2 / C(q^n,q^k) < 1,
/// and that every partial sum stays below 1/(q-1).
inline IneqReport check_theorem23(std::uint32_t q, int m, int n,
                                  std::uint64_t cap = detail::kDefaultFactorialCap) {
    const bool ok = (q == 2 && m == 3) || (q == 3 && m == 2) || (q >= 4 && m == 1);
    if (!ok || n <= m)
        throw std::invalid_argument("check_theorem23: parameters outside stated range");
    IneqReport r;
    r.name = "theorem23";
    r.q = q;
    r.m = m;
    r.n = n;
    BigRational sum = 0;
    const BigRational geom_bound(1, q - 1);
    for (int k = m; k < n; ++k) {
        detail::require_budget(static_cast<std::uint64_t>(big_pow(q, k)), cap);
        sum += BigRational(big_pow(q, 2 * (n - k))) * detail::central_ratio(q, n, k);
        if (sum >= geom_bound)
            throw InternalInvariantViolation(
                "theorem23 partial sum reached 1/(q-1) at k=" + std::to_string(k));
    }
    r.lhs = sum;
    r.rhs = 1;
    r.finish();
    return r;
}

/// Every report from the default sweep: all parameter tuples with q a prime
/// power <= 16, n <= 12 and q^k within the factorial budget.
inline std::vector<IneqReport> default_sweep(
    std::uint64_t cap = detail::kDefaultFactorialCap) {
    static const std::uint32_t prime_powers[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
    std::vector<IneqReport> out;
    auto in_budget = [&](std::uint32_t q, int k) {
        BigInt v = big_pow(q, k);
        return v <= cap;
    };
    for (std::uint32_t q : prime_powers) {
        for (int k = 1; k <= 12 && in_budget(q, k); ++k) {
            bool l31 = (q > 2 && k >= 1) || (q == 2 && k >= 2);
            bool tail = (q >= 4 && k >= 1) || (q == 3 && k >= 2) || (q == 2 && k >= 3);
            for (int n = k + 1; n <= 12; ++n) {
                if (big_pow(q, n) > big_pow(2, 48)) break;
                if (l31) out.push_back(check_lemma31(q, n, k, cap));
                if (tail) out.push_back(check_cor33(q, n, k, cap));
            }
            if (tail) {
                out.push_back(check_lemma32(q, k, cap));
                out.push_back(check_lemma34(q, k));
            }
        }
        int m = q == 2 ? 3 : (q == 3 ? 2 : 1);
        for (int n = m + 1; n <= 12; ++n) {
            if (big_pow(q, n) > big_pow(2, 48)) break;
            if (!in_budget(q, n - 1)) break;
            out.push_back(check_theorem23(q, m, n, cap));
        }
    }
    return out;
}

} // namespace affinitylab
