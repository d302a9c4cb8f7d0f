#pragma once

// k-affinity / k-coaffinity counters: full evaluation, O(flats-through-two-points)
// delta updates under transpositions, the V_f hyperplane structure for q = 2,
// the closed-form transposition values, and the Threshold Conjecture check.

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "affinitylab/geometry.hpp"

namespace affinitylab {

/// Bijection on PointIndex, stored as an image sequence of length q^n.
struct Permutation {
    std::uint32_t q = 2;
    int n = 1;
    std::vector<PointIndex> images;

    std::size_t size() const { return images.size(); }
    PointIndex operator()(PointIndex x) const { return images[x]; }

    bool is_bijection() const {
        std::vector<bool> seen(images.size(), false);
        for (PointIndex y : images) {
            if (y >= images.size() || seen[y]) return false;
            seen[y] = true;
        }
        return true;
    }

    static Permutation identity(std::uint32_t q, int n) {
        Permutation p;
        p.q = q;
        p.n = n;
        p.images.resize(PointCodec(q, n).size);
        for (std::size_t i = 0; i < p.images.size(); ++i)
            p.images[i] = static_cast<PointIndex>(i);
        return p;
    }

    static Permutation transposition(std::uint32_t q, int n, PointIndex u, PointIndex v) {
        Permutation p = identity(q, n);
        std::swap(p.images[u], p.images[v]);
        return p;
    }

    Permutation compose(const Permutation& inner) const { // this ∘ inner
        Permutation r;
        r.q = q;
        r.n = n;
        r.images.resize(images.size());
        for (std::size_t x = 0; x < images.size(); ++x)
            r.images[x] = images[inner.images[x]];
        return r;
    }

    Permutation inverse() const {
        Permutation r;
        r.q = q;
        r.n = n;
        r.images.resize(images.size());
        for (std::size_t x = 0; x < images.size(); ++x)
            r.images[images[x]] = static_cast<PointIndex>(x);
        return r;
    }

    bool operator==(const Permutation& o) const {
        return q == o.q && n == o.n && images == o.images;
    }
};

namespace detail {

// Status of one flat under a permutation: is its image again a k-flat?
inline bool flat_image_is_flat(const FlatTable& table, const std::vector<PointIndex>& images,
                               FlatId id, std::vector<PointIndex>& pts,
                               std::vector<PointIndex>& img) {
    table.points_of(id, pts);
    if (table.q() == 2 && table.k() == 2) {
        // A 4-point image set is a 2-flat iff the images sum to zero.
        return (images[pts[0]] ^ images[pts[1]] ^ images[pts[2]] ^ images[pts[3]]) == 0;
    }
    img.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) img[i] = images[pts[i]];
    return is_kflat_image(img, table.k(), table.field(), table.n());
}

} // namespace detail

/// Permutation plus per-flat status bitmap and running counts; supports exact
/// delta updates under transpositions of the domain.
class AffinityState {
  public:
    AffinityState(std::shared_ptr<const FlatTable> table, Permutation perm)
        : table_(std::move(table)), perm_(std::move(perm)) {
        status_.assign((table_->size() + 63) / 64, 0);
        std::vector<PointIndex> pts, img;
        for (std::uint64_t id = 0; id < table_->size(); ++id)
            if (detail::flat_image_is_flat(*table_, perm_.images,
                                           static_cast<FlatId>(id), pts, img))
                set_bit(id);
    }

    const Permutation& perm() const { return perm_; }
    const FlatTable& table() const { return *table_; }
    std::uint64_t affinity() const { return affinity_; }
    std::uint64_t coaffinity() const { return table_->size() - affinity_; }
    bool flat_preserved(FlatId id) const { return get_bit(id); }

    /// Replace perm with perm ∘ (u v): swap images at u and v, re-testing only
    /// flats through exactly one of u, v.
    void apply_transposition_delta(PointIndex u, PointIndex v) {
        std::swap(perm_.images[u], perm_.images[v]);
        std::vector<PointIndex> pts, img;
        for (std::size_t s = 0; s < table_->subspace_count(); ++s) {
            FlatId fu = table_->flat_id_of(s, u);
            FlatId fv = table_->flat_id_of(s, v);
            if (fu == fv) continue; // contains both: image set unchanged
            retest(fu, pts, img);
            retest(fv, pts, img);
        }
    }

  private:
    std::shared_ptr<const FlatTable> table_;
    Permutation perm_;
    std::vector<std::uint64_t> status_;
    std::uint64_t affinity_ = 0;

    bool get_bit(std::uint64_t id) const {
        return (status_[id >> 6] >> (id & 63)) & 1;
    }
    void set_bit(std::uint64_t id) {
        status_[id >> 6] |= 1ull << (id & 63);
        ++affinity_;
    }
    void clear_bit(std::uint64_t id) {
        status_[id >> 6] &= ~(1ull << (id & 63));
        --affinity_;
    }
    void retest(FlatId id, std::vector<PointIndex>& pts, std::vector<PointIndex>& img) {
        bool now = detail::flat_image_is_flat(*table_, perm_.images, id, pts, img);
        bool was = get_bit(id);
        if (now && !was) set_bit(id);
        else if (!now && was) clear_bit(id);
    }
};

/// Full k-affinity over an existing table (non-incremental scan).
inline std::pair<std::uint64_t, std::uint64_t> count_affinity_table(
    const Permutation& perm, const FlatTable& table) {
    std::uint64_t aff = 0;
    std::vector<PointIndex> pts, img;
    for (std::uint64_t id = 0; id < table.size(); ++id)
        if (detail::flat_image_is_flat(table, perm.images, static_cast<FlatId>(id),
                                       pts, img))
            ++aff;
    return {aff, table.size() - aff};
}

/// Independent oracle: scan the table with the generic affine-span test only
/// (no q=2 fast paths).  Used to re-verify witnesses.
inline std::pair<std::uint64_t, std::uint64_t> count_affinity_oracle(
    const Permutation& perm, const FlatTable& table) {
    std::uint64_t aff = 0;
    std::vector<PointIndex> pts, img;
    for (std::uint64_t id = 0; id < table.size(); ++id) {
        table.points_of(static_cast<FlatId>(id), pts);
        img.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) img[i] = perm.images[pts[i]];
        if (is_kflat_image(img, table.k(), table.field(), table.n())) ++aff;
    }
    return {aff, table.size() - aff};
}

/// Streaming 2-affinity for q = 2 without materializing a flat table:
/// every 2-flat is {a, b, c, a^b^c} with a < b < c < a^b^c.
inline std::pair<std::uint64_t, std::uint64_t> count_affinity_q2k2(const Permutation& perm) {
    const std::uint32_t N = static_cast<std::uint32_t>(perm.size());
    std::uint64_t aff = 0, total = 0;
    const PointIndex* f = perm.images.data();
    for (std::uint32_t a = 0; a + 3 < N; ++a)
        for (std::uint32_t b = a + 1; b + 2 < N; ++b) {
            const PointIndex fab = f[a] ^ f[b];
            const std::uint32_t ab = a ^ b;
            for (std::uint32_t c = b + 1; c + 1 < N; ++c) {
                const std::uint32_t d = ab ^ c;
                if (d <= c) continue;
                ++total;
                if ((fab ^ f[c] ^ f[d]) == 0) ++aff;
            }
        }
    return {aff, total - aff};
}

/// (n-1)-affinity for q = 2 by direct hyperplane tests: counts pairs (a, eps)
/// with a != 0 such that the image of H(a, eps) is an (n-1)-flat.
inline std::pair<std::uint64_t, std::uint64_t> count_affinity_q2_hyperplanes(
    const Permutation& perm) {
    const std::uint32_t N = static_cast<std::uint32_t>(perm.size());
    const int n = perm.n;
    std::uint64_t aff = 0;
    for (std::uint32_t a = 1; a < N; ++a) {
        for (std::uint32_t eps = 0; eps <= 1; ++eps) {
            detail::SpanF2 span;
            PointIndex first = 0;
            bool have_first = false;
            bool flat = true;
            for (std::uint32_t x = 0; x < N; ++x) {
                if ((std::uint32_t)__builtin_parity(a & x) != eps) continue;
                if (!have_first) { first = perm.images[x]; have_first = true; continue; }
                span.insert(perm.images[x] ^ first);
                if (span.rank >= n) { flat = false; break; }
            }
            if (flat) ++aff;
        }
    }
    return {aff, std::uint64_t(2) * (N - 1) - aff};
}

/// k-affinity of a permutation; picks the cheapest exact route.
/// k = 0 and k = n are total: every 0-flat and the whole space are preserved.
inline std::pair<std::uint64_t, std::uint64_t> count_affinity(
    const Permutation& perm, int k,
    std::uint64_t budget = FlatTable::kDefaultBudget) {
    const int n = perm.n;
    if (k <= 0 || k >= n) {
        BigInt total = count_flats(n, k < 0 ? 0 : (k > n ? n : k), perm.q);
        return {static_cast<std::uint64_t>(total), 0};
    }
    if (perm.q == 2 && k == 1) {
        // Every permutation takes all 1-flats (2-subsets) to 1-flats.
        BigInt total = count_flats(n, 1, 2);
        return {static_cast<std::uint64_t>(total), 0};
    }
    if (perm.q == 2 && k == n - 1) return count_affinity_q2_hyperplanes(perm);
    if (perm.q == 2 && k == 2) return count_affinity_q2k2(perm);
    auto table = enumerate_flats(n, k, perm.q, budget);
    return count_affinity_table(perm, *table);
}

/// k_affinity(perm, k): exact counts plus the resulting flat-status state.
inline AffinityState k_affinity(const Permutation& perm, int k,
                                std::uint64_t budget = FlatTable::kDefaultBudget) {
    return AffinityState(enumerate_flats(perm.n, k, perm.q, budget), perm);
}

struct ProfileEntry {
    int k = 0;
    std::uint64_t affinity = 0;
    std::uint64_t coaffinity = 0;
    bool computed = false; // false when the flat budget was exceeded
};

/// One k_affinity evaluation per k = 1..n-1; budget overruns leave entries
/// uncomputed instead of aborting the whole profile.
inline std::vector<ProfileEntry> affinity_profile(
    const Permutation& perm, std::uint64_t budget = FlatTable::kDefaultBudget) {
    std::vector<ProfileEntry> out;
    for (int k = 1; k <= perm.n - 1; ++k) {
        ProfileEntry e;
        e.k = k;
        try {
            auto [aff, coaff] = count_affinity(perm, k, budget);
            e.affinity = aff;
            e.coaffinity = coaff;
            e.computed = true;
        } catch (const BudgetExceeded&) {
            e.computed = false;
        }
        out.push_back(e);
    }
    return out;
}

/// Closed-form (affinity, coaffinity) of any transposition of F_q^n:
/// coaffinity 2 q^k qbinom(n-1,k) and affinity the complementary count, which
/// equals ((q^{n-k}-2)(q^n-1)/(q^k-1) + 2) qbinom(n-1,k-1) (the inner fraction
/// is rational, so the subtraction form is used for exact integer arithmetic).
/// When q^k = 2 every 2-point set is already a 1-flat, so a flat containing
/// exactly one swapped point still maps to a flat and the coaffinity is 0.
inline std::pair<BigInt, BigInt> transposition_formula(int n, int k, std::uint32_t q) {
    BigInt coaff = (q == 2 && k == 1)
                       ? BigInt(0)
                       : 2 * big_pow(q, k) * qbinom(n - 1, k, q);
    BigInt aff = count_flats(n, k, q) - coaff;
    return {aff, coaff};
}

/// V_f for q = 2: {0} plus every a != 0 whose hyperplane H(a,0) maps to a flat.
struct VfResult {
    Subspace subspace;
    int dim = 0;
    std::vector<PointIndex> members; // the full point set of V_f
};

inline VfResult compute_vf(const Permutation& perm) {
    if (perm.q != 2) throw FieldMismatch("compute_vf requires q = 2");
    const std::uint32_t N = static_cast<std::uint32_t>(perm.size());
    const int n = perm.n;
    std::vector<bool> in_vf(N, false);
    in_vf[0] = true;
    for (std::uint32_t a = 1; a < N; ++a) {
        detail::SpanF2 span;
        PointIndex first = 0;
        bool have_first = false;
        bool flat = true;
        for (std::uint32_t x = 0; x < N; ++x) {
            if (__builtin_parity(a & x)) continue; // want <a,x> = 0
            if (!have_first) { first = perm.images[x]; have_first = true; continue; }
            span.insert(perm.images[x] ^ first);
            if (span.rank >= n) { flat = false; break; }
        }
        if (flat) in_vf[a] = true;
    }

    VfResult r;
    for (std::uint32_t a = 0; a < N; ++a)
        if (in_vf[a]) r.members.push_back(a);
    for (PointIndex a : r.members)
        for (PointIndex b : r.members)
            if (!in_vf[a ^ b])
                throw InternalInvariantViolation("V_f is not closed under addition");

    detail::SpanF2 span;
    for (PointIndex a : r.members) span.insert(a);
    r.dim = span.rank;
    if ((std::size_t(1) << r.dim) != r.members.size())
        throw InternalInvariantViolation("V_f size is not 2^dim");

    // RREF basis for the subspace from the collected masks.
    auto field = make_field(2);
    std::vector<std::vector<std::uint32_t>> rows;
    for (int b = 31; b >= 0; --b) {
        if (span.basis[b] == 0) continue;
        std::vector<std::uint32_t> row(n);
        for (int j = 0; j < n; ++j) row[j] = (span.basis[b] >> (n - 1 - j)) & 1;
        rows.push_back(std::move(row));
    }
    std::vector<int> pivots = detail::rref(rows, *field, n);
    r.subspace.n = n;
    r.subspace.dim = static_cast<int>(rows.size());
    r.subspace.pivots = pivots;
    r.subspace.basis.resize(rows.size() * std::size_t(n));
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy(rows[i].begin(), rows[i].end(), r.subspace.basis.begin() + i * n);
    return r;
}

enum class ThresholdClass {
    Affine,                       // coaffinity 0
    AtTransposition,              // coaffinity = 2 q^k qbinom(n-1,k,q)
    AboveThreshold,               // coaffinity above the transposition value
    BelowThresholdCounterexample, // 0 < coaffinity < transposition value
};

struct ThresholdVerdict {
    ThresholdClass classification = ThresholdClass::Affine;
    BigInt coaffinity;
    BigInt transposition_coaffinity;
};

inline ThresholdVerdict classify_coaffinity(BigInt coaff, int n, int k, std::uint32_t q) {
    ThresholdVerdict v;
    v.coaffinity = std::move(coaff);
    v.transposition_coaffinity = transposition_formula(n, k, q).second;
    if (v.coaffinity == 0) v.classification = ThresholdClass::Affine;
    else if (v.coaffinity == v.transposition_coaffinity)
        v.classification = ThresholdClass::AtTransposition;
    else if (v.coaffinity > v.transposition_coaffinity)
        v.classification = ThresholdClass::AboveThreshold;
    else v.classification = ThresholdClass::BelowThresholdCounterexample;
    return v;
}

/// Threshold Conjecture check: classifies the k-coaffinity of perm against 0
/// and the transposition value.
inline ThresholdVerdict threshold_check(const Permutation& perm, int k,
                                        std::uint64_t budget = FlatTable::kDefaultBudget) {
    auto [aff, coaff] = count_affinity(perm, k, budget);
    (void)aff;
    return classify_coaffinity(BigInt(coaff), perm.n, k, perm.q);
}

} // namespace affinitylab
