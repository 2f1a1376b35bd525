#include "rtm/integer_matrix.hpp"

#include <algorithm>
#include <unordered_map>

#include "rtm/error.hpp"

namespace rtm {

IntegerMatrix::IntegerMatrix(std::int64_t rows, std::int64_t cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw Error(ErrorCode::InvalidArgument, "negative matrix dimension");
}

void IntegerMatrix::add(std::int64_t row, std::int64_t col, std::int64_t value) {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_) throw Error(ErrorCode::InvalidArgument, "matrix index out of range");
    if (value == 0) return;
    entries_.push_back({row, col, value});
    dirty_ = true;
}

void IntegerMatrix::finalize() {
    if (!dirty_) return;
    std::sort(entries_.begin(), entries_.end(),
              [](const MatrixEntry& a, const MatrixEntry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries_.size();) {
        MatrixEntry e = entries_[i];
        std::size_t j = i + 1;
        for (; j < entries_.size() && entries_[j].row == e.row && entries_[j].col == e.col; ++j) {
            if (__builtin_add_overflow(e.value, entries_[j].value, &e.value))
                throw Error(ErrorCode::InvalidArgument, "matrix entry overflow");
        }
        if (e.value != 0) entries_[out++] = e;
        i = j;
    }
    entries_.resize(out);
    dirty_ = false;
}

std::vector<std::vector<std::int64_t>> IntegerMatrix::to_dense() const {
    std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols_, 0));
    for (const auto& e : entries_) d[e.row][e.col] += e.value;
    return d;
}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
    const std::int64_t r = static_cast<std::int64_t>(rows.size());
    const std::int64_t c = r == 0 ? 0 : static_cast<std::int64_t>(rows[0].size());
    IntegerMatrix m(r, c);
    for (std::int64_t i = 0; i < r; ++i) {
        if (static_cast<std::int64_t>(rows[i].size()) != c) throw Error(ErrorCode::InvalidArgument, "ragged dense matrix");
        for (std::int64_t j = 0; j < c; ++j) m.add(i, j, rows[i][j]);
    }
    m.finalize();
    return m;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in matrix product");
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> b_rows(b.rows());
    for (const auto& e : b.entries()) b_rows[e.row].emplace_back(e.col, e.value);
    IntegerMatrix out(a.rows(), b.cols());
    for (const auto& e : a.entries()) {
        for (const auto& [col, v] : b_rows[e.col]) {
            std::int64_t p = 0;
            if (__builtin_mul_overflow(e.value, v, &p)) throw Error(ErrorCode::InvalidArgument, "matrix product overflow");
            out.add(e.row, col, p);
        }
    }
    out.finalize();
    return out;
}

} // namespace rtm
