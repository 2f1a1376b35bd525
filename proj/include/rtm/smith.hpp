#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rtm/integer_matrix.hpp"

namespace rtm {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultSmithNonzeroCap = 20000;

struct SmithResult {
    std::int64_t rank = 0;
    // Invariant factors d_i >= 2 with d_i | d_{i+1}; unit factors omitted.
    std::vector<BigInt> invariant_factors;
};

// Exact Smith normal form over Z by sparse elimination. Starts in checked
// 64-bit arithmetic and redoes the computation with arbitrary precision if an
// intermediate value overflows. Throws SizeLimitExceeded when the matrix has
// more than `nonzero_cap` nonzeros.
SmithResult smith_normal_form(const IntegerMatrix& m, std::size_t nonzero_cap = kDefaultSmithNonzeroCap);

// Same elimination, always in arbitrary precision.
SmithResult smith_normal_form_bigint(const IntegerMatrix& m, std::size_t nonzero_cap = kDefaultSmithNonzeroCap);

// Turns the nonzero diagonal of any diagonal form into invariant factors.
std::vector<BigInt> invariant_factors_from_diagonal(std::vector<BigInt> diagonal);

} // namespace rtm
