#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rtm/core_model.hpp"

namespace rtm {

// Source of the peeling process's random decisions: returns a value in
// [0, arity). Swapping in a PathEnumerator turns a sampler into an exhaustive
// walk over all of its random paths.
using ChoiceFn = std::function<std::uint64_t(std::uint64_t arity)>;

// Partially glued complex T^(t). Boundary edges are tracked as paths of
// glued wedge sides: node 2*(6t+slot)+side is the side of wedge (t, slot)
// lying in the lower (side 0) or higher (side 1) of its two faces. For each
// node on an unglued face, other_end() is the node at the opposite end of the
// same boundary edge.
class PeelState {
public:
    explicit PeelState(std::int64_t n);

    std::int64_t n() const noexcept { return n_; }
    std::int64_t step() const noexcept { return step_; }
    bool complete() const noexcept { return step_ == 2 * n_; }

    const std::vector<std::int64_t>& boundary_faces() const noexcept { return pool_; }
    bool is_boundary(std::int64_t face) const { return where_[face] >= 0; }

    // Faces across the three edges of boundary face `face`, in cycle order.
    std::array<std::int64_t, 3> neighbors(std::int64_t face) const;
    bool is_singular(std::int64_t face) const;
    // Maintained incrementally; count_singular_faces() recounts from scratch.
    std::int64_t singular_count() const noexcept { return singular_count_; }

    // Glues boundary faces f and g with the given rotation and returns the
    // number of edges closed off by the gluing.
    int glue(std::int64_t f, std::int64_t g, int rotation);

    std::int64_t other_end(std::int64_t node) const { return other_[node]; }
    std::int64_t partner(std::int64_t face) const { return partner_[face]; }
    int rotation(std::int64_t face) const { return rotation_[face]; }

    // Image of local vertex v of glued face `face` in its partner's tetrahedron.
    int map_local_vertex(std::int64_t face, int v) const;

    // Requires complete().
    GluingInstance to_instance() const;

private:
    bool compute_singular(std::int64_t face) const;
    void set_singular(std::int64_t face, bool value);
    void remove_from_pool(std::int64_t face);

    std::int64_t n_;
    std::int64_t step_ = 0;
    std::vector<std::int64_t> pool_;
    std::vector<std::int64_t> where_;
    std::vector<std::int64_t> partner_;
    std::vector<std::uint8_t> rotation_;
    std::vector<std::int64_t> other_;
    std::vector<std::uint8_t> singular_;
    std::int64_t singular_count_ = 0;
};

// Node helpers.
std::int64_t node_of(std::int64_t tet, int face, int a, int b);
std::int64_t face_of_node(std::int64_t node);

std::int64_t count_singular_faces(const PeelState& state);

struct PeelStep {
    std::int64_t t = 0;               // transition T^(t) -> T^(t+1)
    int closed = 0;                   // edges closed off by this gluing
    std::int64_t singular_before = 0; // singular faces on the boundary of T^(t)
    bool regular = true;              // the peeled face was regular
};

struct PeelTrace {
    std::int64_t n = 0;
    std::vector<PeelStep> steps;

    std::int64_t total_closed() const;
};

struct PeelResult {
    GluingInstance instance;
    PeelTrace trace;
};

PeelResult peel_algorithm1(std::int64_t n, Seed seed);
PeelResult peel_algorithm1(std::int64_t n, const ChoiceFn& choose);

// Oriented edge of tetrahedron 0 given by local vertex labels.
struct OrientedEdge {
    int tail = 0;
    int head = 1;
};

struct Peel2Result {
    GluingInstance instance;
    PeelTrace trace;
    // Number of corners of e and e' when their edges close (the edge length).
    std::int64_t length_e = 0;
    std::int64_t length_e_prime = 0;
    // Number of gluing steps executed when the closure was observed.
    std::int64_t step_e = 0;
    std::int64_t step_e_prime = 0;
};

Peel2Result peel_algorithm2(std::int64_t n, Seed seed, OrientedEdge e, OrientedEdge e_prime);
Peel2Result peel_algorithm2(std::int64_t n, const ChoiceFn& choose, OrientedEdge e, OrientedEdge e_prime);

// Depth-first walk over every sequence of choices a deterministic procedure
// can make. Usage:
//   PathEnumerator paths;
//   do { run(paths.chooser()); weight(paths.arities()); } while (paths.advance());
class PathEnumerator {
public:
    ChoiceFn chooser();
    const std::vector<std::uint64_t>& arities() const noexcept { return arity_; }
    // Moves to the next unexplored path; false when all have been visited.
    bool advance();

private:
    std::vector<std::uint64_t> choice_;
    std::vector<std::uint64_t> arity_;
    std::size_t pos_ = 0;
};

struct TraceReport {
    std::int64_t n = 0;
    std::size_t trials = 0;
    std::vector<double> mean_closed;      // per t
    std::vector<double> mean_singular;    // per t
    std::vector<double> regular_comparator;   // (4n-2t-F)/((4n-2t)(4n-2t-1)) at F = mean
    std::vector<double> singular_comparator;  // 9F/((4n-2t)(4n-2t-1))
    std::vector<double> singular_bound;       // 12 log(4n/(4n-2t))
    double mean_total_closed = 0.0;
};

TraceReport trace_report(const std::vector<PeelTrace>& traces);

double regular_closure_comparator(std::int64_t n, std::int64_t t, double singular);
double singular_closure_comparator(std::int64_t n, std::int64_t t, double singular);
double singular_face_bound(std::int64_t n, std::int64_t t);

// CSV columns: [trial,]t,E_t,F_sing_t,f_regular
void write_trace_csv(std::ostream& out, const std::vector<PeelTrace>& traces, bool with_trial_column);

} // namespace rtm
