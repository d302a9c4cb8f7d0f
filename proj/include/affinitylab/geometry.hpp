#pragma once

// Points, subspaces and k-flats of F_q^n: encoding, exact counting, canonical
// enumeration, affine spans and incidence.
//
// A point (x_1,...,x_n) is encoded as sum x_i * q^(n-i), first coordinate most
// significant.  A flat is canonically a pair (subspace basis in reduced
// row-echelon form, coset representative with zeros at the pivot coordinates).

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <numeric>
#include <vector>

#include "affinitylab/bigint.hpp"
#include "affinitylab/errors.hpp"
#include "affinitylab/field.hpp"

namespace affinitylab {

using PointIndex = std::uint32_t;
using FlatId = std::uint32_t;

/// Gaussian binomial coefficient: the number of k-dimensional subspaces of F_q^n.
inline BigInt qbinom(int n, int k, std::uint32_t q) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= big_pow(q, n - i) - 1;
        r /= big_pow(q, i + 1) - 1;
    }
    return r;
}

/// Number of k-flats in F_q^n: q^(n-k) * qbinom(n, k, q).
inline BigInt count_flats(int n, int k, std::uint32_t q) {
    if (k < 0 || k > n) return 0;
    return big_pow(q, n - k) * qbinom(n, k, q);
}

/// Mixed-radix point index <-> coordinate conversion for F_q^n.
struct PointCodec {
    std::uint32_t q = 2;
    int n = 1;
    std::uint64_t size = 2; // q^n

    PointCodec() = default;
    PointCodec(std::uint32_t q_, int n_) : q(q_), n(n_) {
        size = 1;
        for (int i = 0; i < n; ++i) size *= q;
        if (size > (1ull << 31)) throw TooLarge("q^n above 2^31");
    }

    void decode(PointIndex x, std::uint32_t* out) const {
        for (int i = n - 1; i >= 0; --i) {
            out[i] = x % q;
            x /= q;
        }
    }
    PointIndex encode(const std::uint32_t* digits) const {
        PointIndex x = 0;
        for (int i = 0; i < n; ++i) x = x * q + digits[i];
        return x;
    }
};

/// k-dimensional subspace, basis in reduced row-echelon form (canonical).
struct Subspace {
    int n = 0;
    int dim = 0;
    std::vector<std::uint32_t> basis;  // dim x n, row-major
    std::vector<int> pivots;           // sorted pivot columns

    const std::uint32_t* row(int i) const { return basis.data() + std::size_t(i) * n; }

    bool operator==(const Subspace& o) const {
        return n == o.n && dim == o.dim && basis == o.basis;
    }
};

/// k-flat: coset of a subspace, rep has zeros at all pivot coordinates.
struct Flat {
    Subspace subspace;
    PointIndex rep = 0;

    bool operator==(const Flat& o) const {
        return subspace == o.subspace && rep == o.rep;
    }
};

namespace detail {

// In-place reduced row echelon form over F_q; rows are n-wide digit vectors.
// Returns pivot columns; on exit `rows` holds the nonzero RREF rows.
inline std::vector<int> rref(std::vector<std::vector<std::uint32_t>>& rows,
                             const FieldSpec& f, int n) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < n && r < rows.size(); ++c) {
        std::size_t pr = r;
        while (pr < rows.size() && rows[pr][c] == 0) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[r], rows[pr]);
        std::uint32_t s = f.inv(rows[r][c]);
        for (int j = 0; j < n; ++j) rows[r][j] = f.mul(rows[r][j], s);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            std::uint32_t m = rows[i][c];
            for (int j = 0; j < n; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(m, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

// Incremental rank tracker over F_2 on bitmask-encoded points (n <= 31).
struct SpanF2 {
    std::uint32_t basis[32] = {0};
    int rank = 0;
    // Returns true if v was independent of the current span.
    bool insert(std::uint32_t v) {
        while (v) {
            int b = 31 - __builtin_clz(v);
            if (basis[b] == 0) { basis[b] = v; ++rank; return true; }
            v ^= basis[b];
        }
        return false;
    }
    bool contains(std::uint32_t v) const {
        while (v) {
            int b = 31 - __builtin_clz(v);
            if (basis[b] == 0) return false;
            v ^= basis[b];
        }
        return true;
    }
};

// Incremental rank tracker over general F_q on digit vectors.
struct SpanFq {
    const FieldSpec* f;
    int n;
    std::vector<std::vector<std::uint32_t>> rows; // echelon, leading col recorded
    std::vector<int> lead;
    int rank = 0;

    SpanFq(const FieldSpec& field, int n_) : f(&field), n(n_) {}

    bool insert(std::vector<std::uint32_t> v) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (v[lead[i]] == 0) continue;
            std::uint32_t m = v[lead[i]];
            for (int j = 0; j < n; ++j) v[j] = f->sub(v[j], f->mul(m, rows[i][j]));
        }
        int c = 0;
        while (c < n && v[c] == 0) ++c;
        if (c == n) return false;
        std::uint32_t s = f->inv(v[c]);
        for (int j = 0; j < n; ++j) v[j] = f->mul(v[j], s);
        rows.push_back(std::move(v));
        lead.push_back(c);
        ++rank;
        return true;
    }
};

} // namespace detail

/// Smallest flat containing all given points (points nonempty).
inline Flat affine_span(const std::vector<PointIndex>& points,
                        const FieldSpec& field, int n) {
    assert(!points.empty());
    PointCodec codec(field.q(), n);
    std::vector<std::uint32_t> p0(n), pi(n);
    codec.decode(points[0], p0.data());
    std::vector<std::vector<std::uint32_t>> diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        codec.decode(points[i], pi.data());
        std::vector<std::uint32_t> d(n);
        for (int j = 0; j < n; ++j) d[j] = field.sub(pi[j], p0[j]);
        diffs.push_back(std::move(d));
    }
    std::vector<int> pivots = detail::rref(diffs, field, n);

    Flat flat;
    flat.subspace.n = n;
    flat.subspace.dim = static_cast<int>(diffs.size());
    flat.subspace.pivots = pivots;
    flat.subspace.basis.resize(std::size_t(flat.subspace.dim) * n);
    for (int i = 0; i < flat.subspace.dim; ++i)
        std::copy(diffs[i].begin(), diffs[i].end(),
                  flat.subspace.basis.begin() + std::size_t(i) * n);
    // Reduce the base point by the pivot rows to get the canonical rep.
    std::vector<std::uint32_t> rep = p0;
    for (int i = 0; i < flat.subspace.dim; ++i) {
        std::uint32_t c = rep[pivots[i]];
        if (c == 0) continue;
        const std::uint32_t* row = flat.subspace.row(i);
        for (int j = 0; j < n; ++j) rep[j] = field.sub(rep[j], field.mul(c, row[j]));
    }
    flat.rep = codec.encode(rep.data());
    return flat;
}

/// True iff the point set (of size q^k) is itself a k-flat.
inline bool is_kflat_image(const std::vector<PointIndex>& points, int k,
                           const FieldSpec& field, int n) {
    if (field.q() == 2) {
        detail::SpanF2 span;
        for (std::size_t i = 1; i < points.size(); ++i) {
            span.insert(points[i] ^ points[0]);
            if (span.rank > k) return false;
        }
        return span.rank == k;
    }
    PointCodec codec(field.q(), n);
    std::vector<std::uint32_t> p0(n), pi(n);
    codec.decode(points[0], p0.data());
    detail::SpanFq span(field, n);
    for (std::size_t i = 1; i < points.size(); ++i) {
        codec.decode(points[i], pi.data());
        std::vector<std::uint32_t> d(n);
        for (int j = 0; j < n; ++j) d[j] = field.sub(pi[j], p0[j]);
        span.insert(std::move(d));
        if (span.rank > k) return false;
    }
    return span.rank == k;
}

/// All k-dimensional subspaces of F_q^n in lexicographic row-major RREF order.
inline std::vector<Subspace> enumerate_subspaces(const FieldSpec& field, int n, int k) {
    std::vector<Subspace> out;
    if (k == 0) {
        Subspace s;
        s.n = n;
        s.dim = 0;
        out.push_back(s);
        return out;
    }
    const std::uint32_t q = field.q();
    // Choose pivot columns, then enumerate all assignments of free entries.
    std::vector<int> piv(k);
    std::iota(piv.begin(), piv.end(), 0);
    auto next_combination = [&]() -> bool {
        int i = k - 1;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) return false;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
        return true;
    };
    do {
        // Free positions: (row i, col j) with j > piv[i] and j not a pivot column.
        std::vector<bool> is_piv(n, false);
        for (int c : piv) is_piv[c] = true;
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < k; ++i)
            for (int j = piv[i] + 1; j < n; ++j)
                if (!is_piv[j]) free_pos.emplace_back(i, j);

        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < free_pos.size(); ++i) combos *= q;
        for (std::uint64_t code = 0; code < combos; ++code) {
            Subspace s;
            s.n = n;
            s.dim = k;
            s.pivots.assign(piv.begin(), piv.end());
            s.basis.assign(std::size_t(k) * n, 0);
            for (int i = 0; i < k; ++i) s.basis[std::size_t(i) * n + piv[i]] = 1;
            std::uint64_t c = code;
            for (auto it = free_pos.rbegin(); it != free_pos.rend(); ++it) {
                s.basis[std::size_t(it->first) * n + it->second] =
                    static_cast<std::uint32_t>(c % q);
                c /= q;
            }
            out.push_back(std::move(s));
        }
    } while (next_combination());
    std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
        return a.basis < b.basis;
    });
    return out;
}

/// Dense table of all k-flats of F_q^n with deterministic FlatIds:
/// FlatId = subspace_index * q^(n-k) + rep_rank, subspaces in lex RREF order,
/// reps in increasing PointIndex order.
class FlatTable {
  public:
    static constexpr std::uint64_t kDefaultBudget = 1ull << 24;
    // by_point / point->flat acceleration tables are only built below this size.
    static constexpr std::uint64_t kIncidenceBudget = 1ull << 27;

    FlatTable(std::shared_ptr<const FieldSpec> field, int n, int k,
              std::uint64_t budget = kDefaultBudget)
        : field_(std::move(field)), n_(n), k_(k), codec_(field_->q(), n) {
        const std::uint32_t q = field_->q();
        BigInt nflats = count_flats(n, k, q);
        if (nflats > budget)
            throw BudgetExceeded("flat table would exceed the memory budget");
        num_points_ = static_cast<std::uint32_t>(codec_.size);
        coset_count_ = 1;
        for (int i = 0; i < n - k; ++i) coset_count_ *= q;
        subspaces_ = enumerate_subspaces(*field_, n, k);
        num_flats_ = static_cast<std::uint64_t>(subspaces_.size()) * coset_count_;
        assert(BigInt(num_flats_) == nflats);

        build_subspace_points();
        if (std::uint64_t(subspaces_.size()) * num_points_ <= kIncidenceBudget)
            build_point_to_flat();
    }

    const FieldSpec& field() const { return *field_; }
    std::shared_ptr<const FieldSpec> field_ptr() const { return field_; }
    int n() const { return n_; }
    int k() const { return k_; }
    std::uint32_t q() const { return field_->q(); }
    std::uint32_t num_points() const { return num_points_; }
    std::uint64_t size() const { return num_flats_; }
    std::uint32_t points_per_flat() const {
        return static_cast<std::uint32_t>(subspace_points_.empty()
            ? 1 : subspace_points_[0].size());
    }
    std::size_t subspace_count() const { return subspaces_.size(); }
    const Subspace& subspace(std::size_t s) const { return subspaces_[s]; }

    Flat flat(FlatId id) const {
        Flat f;
        f.subspace = subspaces_[id / coset_count_];
        f.rep = rep_of(id);
        return f;
    }

    PointIndex rep_of(FlatId id) const {
        std::size_t s = id / coset_count_;
        std::uint32_t rank = id % coset_count_;
        const auto& np = nonpivot_cols_[s];
        std::vector<std::uint32_t> digits(n_, 0);
        const std::uint32_t q = field_->q();
        for (int i = static_cast<int>(np.size()) - 1; i >= 0; --i) {
            digits[np[i]] = rank % q;
            rank /= q;
        }
        return codec_.encode(digits.data());
    }

    /// FlatId of the flat of subspace s through point x.
    FlatId flat_id_of(std::size_t s, PointIndex x) const {
        if (!point_to_flat_.empty())
            return point_to_flat_[s * num_points_ + x];
        return flat_id_of_slow(s, x);
    }

    /// All flats through x, one per subspace, in subspace order.
    std::vector<FlatId> flats_through(PointIndex x) const {
        std::vector<FlatId> out;
        out.reserve(subspaces_.size());
        for (std::size_t s = 0; s < subspaces_.size(); ++s)
            out.push_back(flat_id_of(s, x));
        return out;
    }

    /// Point set of a flat, in subspace-point order shifted by the rep.
    void points_of(FlatId id, std::vector<PointIndex>& out) const {
        std::size_t s = id / coset_count_;
        PointIndex rep = rep_of(id);
        const auto& sp = subspace_points_[s];
        out.resize(sp.size());
        if (field_->q() == 2) {
            for (std::size_t i = 0; i < sp.size(); ++i) out[i] = sp[i] ^ rep;
        } else {
            for (std::size_t i = 0; i < sp.size(); ++i) out[i] = point_add(sp[i], rep);
        }
    }

    std::vector<PointIndex> points_of(FlatId id) const {
        std::vector<PointIndex> out;
        points_of(id, out);
        return out;
    }

    PointIndex point_add(PointIndex a, PointIndex b) const {
        if (field_->q() == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[std::size_t(a) * num_points_ + b];
        std::vector<std::uint32_t> da(n_), db(n_);
        codec_.decode(a, da.data());
        codec_.decode(b, db.data());
        for (int j = 0; j < n_; ++j) da[j] = field_->add(da[j], db[j]);
        return codec_.encode(da.data());
    }

    const PointCodec& codec() const { return codec_; }

  private:
    std::shared_ptr<const FieldSpec> field_;
    int n_, k_;
    PointCodec codec_;
    std::uint32_t num_points_ = 0;
    std::uint32_t coset_count_ = 1;
    std::uint64_t num_flats_ = 0;
    std::vector<Subspace> subspaces_;
    std::vector<std::vector<PointIndex>> subspace_points_;
    std::vector<std::vector<int>> nonpivot_cols_;
    std::vector<FlatId> point_to_flat_; // (s, x) -> FlatId, built when small
    std::vector<PointIndex> add_table_; // pointwise addition, built when small

    void build_subspace_points() {
        const std::uint32_t q = field_->q();
        if (q != 2 && std::uint64_t(num_points_) * num_points_ <= (1ull << 24)) {
            add_table_.resize(std::size_t(num_points_) * num_points_);
            std::vector<std::uint32_t> da(n_), db(n_), sum(n_);
            for (std::uint32_t a = 0; a < num_points_; ++a) {
                codec_.decode(a, da.data());
                for (std::uint32_t b = 0; b < num_points_; ++b) {
                    codec_.decode(b, db.data());
                    for (int j = 0; j < n_; ++j) sum[j] = field_->add(da[j], db[j]);
                    add_table_[std::size_t(a) * num_points_ + b] = codec_.encode(sum.data());
                }
            }
        }
        subspace_points_.resize(subspaces_.size());
        nonpivot_cols_.resize(subspaces_.size());
        std::vector<std::uint32_t> acc(n_), row(n_);
        for (std::size_t s = 0; s < subspaces_.size(); ++s) {
            const Subspace& sub = subspaces_[s];
            std::vector<bool> is_piv(n_, false);
            for (int c : sub.pivots) is_piv[c] = true;
            for (int c = 0; c < n_; ++c)
                if (!is_piv[c]) nonpivot_cols_[s].push_back(c);

            std::uint64_t total = 1;
            for (int i = 0; i < k_; ++i) total *= q;
            auto& pts = subspace_points_[s];
            pts.reserve(total);
            std::vector<std::uint32_t> coef(k_, 0);
            for (std::uint64_t code = 0; code < total; ++code) {
                std::uint64_t c = code;
                for (int i = 0; i < k_; ++i) { coef[i] = c % q; c /= q; }
                std::fill(acc.begin(), acc.end(), 0);
                for (int i = 0; i < k_; ++i) {
                    if (coef[i] == 0) continue;
                    const std::uint32_t* r = sub.row(i);
                    for (int j = 0; j < n_; ++j)
                        acc[j] = field_->add(acc[j], field_->mul(coef[i], r[j]));
                }
                pts.push_back(codec_.encode(acc.data()));
            }
        }
    }

    void build_point_to_flat() {
        point_to_flat_.resize(subspaces_.size() * std::size_t(num_points_));
        for (std::size_t s = 0; s < subspaces_.size(); ++s)
            for (std::uint32_t x = 0; x < num_points_; ++x)
                point_to_flat_[s * num_points_ + x] = flat_id_of_slow(s, x);
    }

    FlatId flat_id_of_slow(std::size_t s, PointIndex x) const {
        const Subspace& sub = subspaces_[s];
        std::vector<std::uint32_t> d(n_);
        codec_.decode(x, d.data());
        for (int i = 0; i < k_; ++i) {
            std::uint32_t c = d[sub.pivots[i]];
            if (c == 0) continue;
            const std::uint32_t* row = sub.row(i);
            for (int j = 0; j < n_; ++j) d[j] = field_->sub(d[j], field_->mul(c, row[j]));
        }
        const std::uint32_t q = field_->q();
        std::uint32_t rank = 0;
        for (int c : nonpivot_cols_[s]) rank = rank * q + d[c];
        return static_cast<FlatId>(s * coset_count_ + rank);
    }
};

/// enumerate_flats(n, k, q): build the dense flat table (see FlatTable).
inline std::shared_ptr<const FlatTable> enumerate_flats(
    int n, int k, std::uint32_t q, std::uint64_t budget = FlatTable::kDefaultBudget) {
    return std::make_shared<const FlatTable>(make_field(q), n, k, budget);
}

} // namespace affinitylab
