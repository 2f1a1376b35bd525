#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rtm/complex.hpp"
#include "rtm/integer_matrix.hpp"
#include "rtm/smith.hpp"

namespace rtm {

enum class ComplexKind { Absolute, Relative, Double };

std::string to_string(ComplexKind kind);

inline constexpr std::int64_t kDefaultHomologyMaxN = 500;

// Cellular chain complex C_3 -> C_2 -> C_1 -> C_0 over Z. boundary[i] is the
// c_{i-1} x c_i matrix of d_i; boundary[0] is unused.
struct ChainComplex {
    ComplexKind kind = ComplexKind::Absolute;
    std::array<std::int64_t, 4> cells{};
    std::array<IntegerMatrix, 4> boundary;

    std::int64_t euler_characteristic() const noexcept { return cells[0] - cells[1] + cells[2] - cells[3]; }
};

// Throws OrientationInconsistency unless d_i d_{i+1} = 0 for i = 1, 2.
void verify_chain_complex(const ChainComplex& complex);

// Truncated complex modulo its boundary: 3-cells are tetrahedra, 2-cells
// the glued hexagons (oriented by the smaller face of each pair), 1-cells
// the interior edges (oriented as in EdgeOrbits), no 0-cells.
ChainComplex build_relative_complex(const GluingInstance& instance, const EdgeOrbits& orbits);

// The truncated manifold itself. Cell order:
//   C_0: boundary vertices (corner classes)
//   C_1: E interior edge segments, then 6n boundary edges
//   C_2: 2n hexagons, then 4n boundary triangles (index 2n + 4t + i)
//   C_3: n truncated tetrahedra
ChainComplex build_absolute_complex(const GluingInstance& instance, const EdgeOrbits& orbits,
                                    const BoundarySurface& surface);

// Two copies of the absolute complex sharing their boundary cells. Cell order:
//   C_0: boundary vertices
//   C_1: interior edges of copy A, of copy B, then boundary edges
//   C_2: hexagons of copy A, of copy B, then boundary triangles
//   C_3: tetrahedra of copy A, then copy B
ChainComplex build_double_complex(const GluingInstance& instance, const EdgeOrbits& orbits,
                                  const BoundarySurface& surface);

struct HomologySummary {
    ComplexKind kind = ComplexKind::Absolute;
    std::array<std::int64_t, 4> betti{};
    // Invariant factors of the torsion of H_1.
    std::vector<BigInt> torsion;

    std::int64_t euler_characteristic() const noexcept { return betti[0] - betti[1] + betti[2] - betti[3]; }
};

HomologySummary homology_summary(const ChainComplex& complex, std::size_t nonzero_cap = kDefaultSmithNonzeroCap);

struct HeegaardBounds {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
};

// Bracket for the Heegaard genus of the double: b_1 below, n + 1 + E above.
HeegaardBounds heegaard_bounds(std::int64_t E, std::int64_t n, std::int64_t b1_double);

struct HomologyPanel {
    HomologySummary relative;
    HomologySummary absolute;
    HomologySummary doubled;
    HeegaardBounds heegaard;

    std::int64_t b1_rel() const noexcept { return relative.betti[1]; }
    std::int64_t b1_abs() const noexcept { return absolute.betti[1]; }
    std::int64_t b1_double() const noexcept { return doubled.betti[1]; }
};

HomologyPanel homology_panel(const GluingInstance& instance, const EdgeOrbits& orbits, const BoundarySurface& surface,
                             std::size_t nonzero_cap = kDefaultSmithNonzeroCap);

} // namespace rtm
