#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rtm/error.hpp"

namespace rtm {

// Face `face` of tetrahedron `tet`; face i is opposite local vertex i.
struct FaceId {
    std::int32_t tet = 0;
    std::int32_t face = 0;

    constexpr std::int64_t index() const noexcept { return 4 * static_cast<std::int64_t>(tet) + face; }
    static constexpr FaceId from_index(std::int64_t i) noexcept {
        return {static_cast<std::int32_t>(i / 4), static_cast<std::int32_t>(i % 4)};
    }
    friend constexpr auto operator<=>(const FaceId&, const FaceId&) = default;
};

// One of the three orientation-reversing vertex pairings between two faces.
class Rotation {
public:
    constexpr Rotation() = default;
    explicit Rotation(int r);

    constexpr int value() const noexcept { return r_; }
    friend constexpr auto operator<=>(const Rotation&, const Rotation&) = default;

private:
    std::uint8_t r_ = 0;
};

struct Seed {
    std::uint64_t value = 0;
    friend constexpr auto operator<=>(const Seed&, const Seed&) = default;
};

// A glued pair; `first` is always the smaller FaceId.
struct GluingPair {
    FaceId first;
    FaceId second;
    Rotation rotation;
    friend constexpr auto operator<=>(const GluingPair&, const GluingPair&) = default;
};

// Outward-oriented vertex cycles (local labels) of the four faces.
inline constexpr std::array<std::array<int, 3>, 4> kFaceCycle{{
    {1, 2, 3},
    {0, 3, 2},
    {0, 1, 3},
    {0, 2, 1},
}};

// Edge slots: unordered local vertex pairs in lexicographic order.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeSlot{{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
}};

constexpr int edge_slot(int a, int b) noexcept {
    if (a > b) std::swap(a, b);
    // 01 02 03 12 13 23
    return a == 0 ? b - 1 : (a == 1 ? b + 1 : 5);
}

// Position of local vertex v in the cycle of face f, or -1 if v == f.
constexpr int cycle_position(int face, int v) noexcept {
    for (int j = 0; j < 3; ++j)
        if (kFaceCycle[face][j] == v) return j;
    return -1;
}

// Global vertex label of local vertex `local` in tetrahedron `tet`.
constexpr std::int64_t vertex_label(std::int64_t tet, int local) noexcept { return 4 * tet + local; }

// A complete gluing datum: a perfect matching on the 4n faces together with
// one rotation per pair. Pairs are kept in canonical order (sorted by their
// first face), which makes equality structural.
class GluingInstance {
public:
    GluingInstance() = default;

    // Validates and canonicalizes. Throws InvalidArgument when the pairs do
    // not form a perfect matching on all 4n faces.
    GluingInstance(std::int64_t n, std::vector<GluingPair> pairs);

    std::int64_t n() const noexcept { return n_; }
    const std::vector<GluingPair>& pairs() const noexcept { return pairs_; }

    // Partner face, rotation of the containing pair, and pair index.
    FaceId partner(FaceId f) const;
    Rotation rotation(FaceId f) const;
    std::int64_t pair_index(FaceId f) const;
    bool is_first(FaceId f) const;

    // Unchecked accessors by face index, for hot loops.
    std::int64_t partner_index(std::int64_t face_index) const noexcept { return partner_[face_index]; }
    int rotation_index(std::int64_t face_index) const noexcept { return rotation_[face_index]; }
    std::int64_t pair_of_index(std::int64_t face_index) const noexcept { return pair_of_[face_index]; }

    // Image of local vertex `v` of face `f` in the partner tetrahedron.
    int map_local_vertex(std::int64_t face_index, int v) const noexcept {
        const int j = cycle_position(static_cast<int>(face_index % 4), v);
        const int partner_face = static_cast<int>(partner_[face_index] % 4);
        return kFaceCycle[partner_face][((rotation_[face_index] - j) % 3 + 3) % 3];
    }

    friend bool operator==(const GluingInstance& a, const GluingInstance& b) {
        return a.n_ == b.n_ && a.pairs_ == b.pairs_;
    }

private:
    void check_face(FaceId f) const;

    std::int64_t n_ = 0;
    std::vector<GluingPair> pairs_;
    std::vector<std::int64_t> partner_;
    std::vector<std::int64_t> pair_of_;
    std::vector<std::uint8_t> rotation_;
};

// Uniform element of the sample space for n tetrahedra.
GluingInstance sample_uniform(std::int64_t n, Seed seed);

inline constexpr int kDefaultMaxRetries = 1000;

struct SimpleSample {
    GluingInstance instance;
    int attempts = 0;
};

// Uniform sample conditioned on a simple dual graph, by rejection. A partial
// matching is abandoned as soon as it creates a loop or a repeated edge.
// Throws InvalidN for n < 5 unless `enforce_min_n` is false, in which case
// small n simply exhausts the retry budget.
SimpleSample sample_simple(std::int64_t n, Seed seed, int max_retries = kDefaultMaxRetries,
                           bool enforce_min_n = true);

// Number of instances for n tetrahedra: (4n-1)!! * 3^(2n). Only exact for
// small n (fits in 64 bits up to n = 5).
std::uint64_t instance_count(std::int64_t n);

// Exhaustive enumeration; n must be 1 or 2 (TooLarge otherwise).
void for_each_instance(std::int64_t n, const std::function<void(const GluingInstance&)>& visit);
std::vector<GluingInstance> enumerate_all(std::int64_t n);

// Vertex correspondence (global labels) between face f and its partner,
// listed in the order of f's outward cycle.
std::array<std::pair<std::int64_t, std::int64_t>, 3> face_map(const GluingInstance& instance, FaceId f);

// Text serialization: `n` followed by 2n lines `tetA faceA tetB faceB r`.
void write_instance(std::ostream& out, const GluingInstance& instance);
GluingInstance read_instance(std::istream& in);
std::string to_text(const GluingInstance& instance);
GluingInstance from_text(const std::string& text);

} // namespace rtm
