#include "rtm/smith.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <utility>

#include "rtm/error.hpp"

namespace rtm {

namespace {

struct Overflow {};

// int64 that throws Overflow instead of wrapping.
struct CheckedInt {
    std::int64_t v = 0;

    friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
        CheckedInt r;
        if (__builtin_add_overflow(a.v, b.v, &r.v)) throw Overflow{};
        return r;
    }
    friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
        CheckedInt r;
        if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw Overflow{};
        return r;
    }
    friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
        CheckedInt r;
        if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw Overflow{};
        return r;
    }
    friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
        if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1) throw Overflow{};
        return {a.v / b.v};
    }
    friend bool operator==(CheckedInt a, CheckedInt b) { return a.v == b.v; }
};

CheckedInt abs_value(CheckedInt a) {
    if (a.v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return {a.v < 0 ? -a.v : a.v};
}
BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

bool is_zero(CheckedInt a) { return a.v == 0; }
bool is_zero(const BigInt& a) { return a.is_zero(); }
bool is_unit(CheckedInt a) { return a.v == 1 || a.v == -1; }
bool is_unit(const BigInt& a) { return a == 1 || a == -1; }
bool abs_less(CheckedInt a, CheckedInt b) { return abs_value(a).v < abs_value(b).v; }
bool abs_less(const BigInt& a, const BigInt& b) { return abs_value(a) < abs_value(b); }
BigInt to_big(CheckedInt a) { return BigInt(a.v); }
BigInt to_big(const BigInt& a) { return a; }
template <class T> T from_int(std::int64_t x) { return T{x}; }
template <> BigInt from_int<BigInt>(std::int64_t x) { return BigInt(x); }

// Working copy of the matrix: rows as sorted (col, value) lists plus the row
// support of every column.
template <class T>
class Elimination {
public:
    explicit Elimination(const IntegerMatrix& m) : rows_(m.rows()), support_(m.cols()), active_(m.cols(), 1) {
        for (const auto& e : m.entries()) {
            rows_[e.row].emplace_back(e.col, from_int<T>(e.value));
            support_[e.col].insert(e.row);
        }
    }

    SmithResult run() {
        std::vector<BigInt> diagonal;
        while (true) {
            const auto pivot = choose_pivot();
            if (!pivot) break;
            diagonal.push_back(to_big(reduce_at(pivot->first, pivot->second)));
        }
        SmithResult out;
        out.rank = static_cast<std::int64_t>(diagonal.size());
        out.invariant_factors = invariant_factors_from_diagonal(std::move(diagonal));
        return out;
    }

private:
    using Row = std::vector<std::pair<std::int64_t, T>>;

    const T* find(std::int64_t r, std::int64_t c) const {
        const Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& p, std::int64_t x) { return p.first < x; });
        return it != row.end() && it->first == c ? &it->second : nullptr;
    }

    // Prefers a unit entry in the sparsest column, breaking ties by row
    // length; otherwise the entry of smallest absolute value.
    std::optional<std::pair<std::int64_t, std::int64_t>> choose_pivot() {
        std::optional<std::pair<std::int64_t, std::int64_t>> unit;
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        std::optional<std::pair<std::int64_t, std::int64_t>> smallest;
        const T* smallest_value = nullptr;
        for (std::size_t c = 0; c < support_.size(); ++c) {
            if (!active_[c]) continue;
            if (support_[c].empty()) {
                active_[c] = 0;
                continue;
            }
            const std::size_t col_len = support_[c].size();
            for (const auto r : support_[c]) {
                const T* v = find(r, static_cast<std::int64_t>(c));
                if (is_unit(*v)) {
                    const std::size_t cost = (col_len - 1) * (rows_[r].size() - 1);
                    if (cost < best_cost) {
                        best_cost = cost;
                        unit = std::make_pair(r, static_cast<std::int64_t>(c));
                    }
                } else if (!unit && (!smallest_value || abs_less(*v, *smallest_value))) {
                    smallest_value = v;
                    smallest = std::make_pair(r, static_cast<std::int64_t>(c));
                }
            }
            if (best_cost == 0) break;
        }
        return unit ? unit : smallest;
    }

    // row[target] += q * row[source]
    void add_row(std::int64_t target, std::int64_t source, const T& q) {
        const Row& src = rows_[source];
        Row& dst = rows_[target];
        Row merged;
        merged.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                merged.push_back(std::move(dst[i++]));
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                merged.emplace_back(src[j].first, q * src[j].second);
                support_[src[j].first].insert(target);
                ++j;
            } else {
                T v = dst[i].second + q * src[j].second;
                if (is_zero(v))
                    support_[dst[i].first].erase(target);
                else
                    merged.emplace_back(dst[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        dst = std::move(merged);
    }

    void set_entry(std::int64_t r, std::int64_t c, T v) {
        Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& p, std::int64_t x) { return p.first < x; });
        const bool present = it != row.end() && it->first == c;
        if (is_zero(v)) {
            if (present) {
                row.erase(it);
                support_[c].erase(r);
            }
        } else if (present) {
            it->second = std::move(v);
        } else {
            row.insert(it, {c, std::move(v)});
            support_[c].insert(r);
        }
    }

    // col[target] += q * col[source]
    void add_col(std::int64_t target, std::int64_t source, const T& q) {
        const std::vector<std::int64_t> rows(support_[source].begin(), support_[source].end());
        for (const auto r : rows) {
            const T s = *find(r, source);
            const T* t = find(r, target);
            T v = q * s;
            if (t) v = v + *t;
            set_entry(r, target, std::move(v));
        }
    }

    // Clears the row and column of the pivot and returns the final diagonal
    // entry, which may have shrunk through Euclidean steps.
    T reduce_at(std::int64_t r, std::int64_t c) {
        while (true) {
            const T p = *find(r, c);
            bool clean = true;
            const std::vector<std::int64_t> others(support_[c].begin(), support_[c].end());
            for (const auto r2 : others) {
                if (r2 == r) continue;
                const T q = *find(r2, c) / p;
                if (!is_zero(q)) add_row(r2, r, from_int<T>(0) - q);
                if (find(r2, c)) clean = false;
            }
            if (is_unit(p) && clean) break;
            std::vector<std::int64_t> cols;
            for (const auto& [c2, v] : rows_[r])
                if (c2 != c) cols.push_back(c2);
            for (const auto c2 : cols) {
                const T q = *find(r, c2) / p;
                if (!is_zero(q)) add_col(c2, c, from_int<T>(0) - q);
                if (find(r, c2)) clean = false;
            }
            if (clean) break;
            // A remainder smaller than |p| survived: move the pivot onto it.
            std::int64_t best_r = r, best_c = c;
            const T* best = find(r, c);
            for (const auto& [c2, v] : rows_[r])
                if (abs_less(v, *best)) best = &v, best_r = r, best_c = c2;
            for (const auto r2 : support_[c]) {
                const T* v = find(r2, c);
                if (abs_less(*v, *best)) best = v, best_r = r2, best_c = c;
            }
            r = best_r;
            c = best_c;
        }
        const T p = *find(r, c);
        // With its column cleared, the rest of the pivot row can be removed
        // by column operations that touch no other row.
        for (const auto& [c2, v] : rows_[r]) support_[c2].erase(r);
        rows_[r].clear();
        active_[c] = 0;
        return abs_value(p);
    }

    std::vector<Row> rows_;
    std::vector<std::set<std::int64_t>> support_;
    std::vector<std::uint8_t> active_;
};

void check_size(const IntegerMatrix& m, std::size_t cap) {
    if (m.nonzeros() > cap)
        throw Error(ErrorCode::SizeLimitExceeded,
                    "matrix has " + std::to_string(m.nonzeros()) + " nonzeros, cap is " + std::to_string(cap));
}

} // namespace

std::vector<BigInt> invariant_factors_from_diagonal(std::vector<BigInt> d) {
    for (auto& x : d) x = abs_value(x);
    d.erase(std::remove_if(d.begin(), d.end(), [](const BigInt& x) { return x.is_zero(); }), d.end());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            const BigInt g = gcd(d[i], d[j]);
            const BigInt l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.erase(std::remove_if(d.begin(), d.end(), [](const BigInt& x) { return x == 1; }), d.end());
    return d;
}

SmithResult smith_normal_form_bigint(const IntegerMatrix& m, std::size_t nonzero_cap) {
    check_size(m, nonzero_cap);
    return Elimination<BigInt>(m).run();
}

SmithResult smith_normal_form(const IntegerMatrix& m, std::size_t nonzero_cap) {
    check_size(m, nonzero_cap);
    try {
        return Elimination<CheckedInt>(m).run();
    } catch (const Overflow&) {
        return Elimination<BigInt>(m).run();
    }
}

} // namespace rtm
