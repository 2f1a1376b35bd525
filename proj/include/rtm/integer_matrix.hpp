#pragma once

#include <cstdint>
#include <vector>

namespace rtm {

struct MatrixEntry {
    std::int64_t row = 0;
    std::int64_t col = 0;
    std::int64_t value = 0;
    friend constexpr bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

// Sparse integer matrix stored as nonzero triples sorted by (row, col).
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::int64_t rows, std::int64_t cols);

    std::int64_t rows() const noexcept { return rows_; }
    std::int64_t cols() const noexcept { return cols_; }

    // Accumulates into (row, col). Call finalize() before reading entries.
    void add(std::int64_t row, std::int64_t col, std::int64_t value);
    void finalize();

    const std::vector<MatrixEntry>& entries() const noexcept { return entries_; }
    std::size_t nonzeros() const noexcept { return entries_.size(); }
    bool is_zero() const noexcept { return entries_.empty(); }

    std::vector<std::vector<std::int64_t>> to_dense() const;
    static IntegerMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows);

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

private:
    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::vector<MatrixEntry> entries_;
    bool dirty_ = false;
};

// Product a * b; throws InvalidArgument on a dimension mismatch.
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);

} // namespace rtm
