#include "rtm/peeling.hpp"

#include <cmath>
#include <ostream>

#include "rtm/rng.hpp"

namespace rtm {

namespace {

std::array<int, 2> faces_containing(int a, int b) {
    std::array<int, 2> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != a && v != b) out[k++] = v;
    return out;
}

int mod3(int x) { return ((x % 3) + 3) % 3; }

// Image of local vertex v of face `face` under a gluing with partner face
// `partner_face` and the given rotation.
int image_vertex(int face, int partner_face, int rotation, int v) {
    return kFaceCycle[partner_face][mod3(rotation - cycle_position(face, v))];
}

// True when the outward cycle of `face` traverses a -> b.
bool traverses(int face, int a, int b) {
    return kFaceCycle[face][(cycle_position(face, a) + 1) % 3] == b;
}

} // namespace

std::int64_t node_of(std::int64_t tet, int face, int a, int b) {
    const int side = faces_containing(a, b)[1] == face ? 1 : 0;
    return 2 * (6 * tet + edge_slot(a, b)) + side;
}

std::int64_t face_of_node(std::int64_t node) {
    const std::int64_t wedge = node / 2;
    const auto [a, b] = kEdgeSlot[wedge % 6];
    return 4 * (wedge / 6) + faces_containing(a, b)[node % 2];
}

PeelState::PeelState(std::int64_t n) : n_(n) {
    if (n < 1) throw Error(ErrorCode::InvalidN, "n must be positive");
    pool_.resize(4 * n);
    where_.resize(4 * n);
    for (std::int64_t i = 0; i < 4 * n; ++i) pool_[i] = where_[i] = i;
    partner_.assign(4 * n, -1);
    rotation_.assign(4 * n, 0);
    other_.resize(12 * n);
    for (std::int64_t w = 0; w < 6 * n; ++w) {
        other_[2 * w] = 2 * w + 1;
        other_[2 * w + 1] = 2 * w;
    }
    singular_.assign(4 * n, 0);
}

std::array<std::int64_t, 3> PeelState::neighbors(std::int64_t face) const {
    const std::int64_t t = face / 4;
    const int g = static_cast<int>(face % 4);
    const auto& c = kFaceCycle[g];
    std::array<std::int64_t, 3> out{};
    for (int m = 0; m < 3; ++m) out[m] = face_of_node(other_[node_of(t, g, c[m], c[(m + 1) % 3])]);
    return out;
}

bool PeelState::compute_singular(std::int64_t face) const {
    const auto nb = neighbors(face);
    return nb[0] == face || nb[1] == face || nb[2] == face || nb[0] == nb[1] || nb[1] == nb[2] || nb[0] == nb[2];
}

bool PeelState::is_singular(std::int64_t face) const { return singular_[face] != 0; }

void PeelState::set_singular(std::int64_t face, bool value) {
    if (static_cast<bool>(singular_[face]) == value) return;
    singular_[face] = value ? 1 : 0;
    singular_count_ += value ? 1 : -1;
}

void PeelState::remove_from_pool(std::int64_t face) {
    const std::int64_t pos = where_[face];
    const std::int64_t last = pool_.back();
    pool_[pos] = last;
    where_[last] = pos;
    pool_.pop_back();
    where_[face] = -1;
}

int PeelState::map_local_vertex(std::int64_t face, int v) const {
    return image_vertex(static_cast<int>(face % 4), static_cast<int>(partner_[face] % 4), rotation_[face], v);
}

int PeelState::glue(std::int64_t f, std::int64_t g, int rotation) {
    if (f == g || !is_boundary(f) || !is_boundary(g))
        throw Error(ErrorCode::InvalidArgument, "can only glue two distinct boundary faces");
    if (rotation < 0 || rotation > 2) throw Error(ErrorCode::InvalidArgument, "rotation out of range");

    const std::int64_t tf = f / 4;
    const std::int64_t tg = g / 4;
    const int ff = static_cast<int>(f % 4);
    const int gf = static_cast<int>(g % 4);
    const auto& cycle = kFaceCycle[ff];

    int closed = 0;
    std::array<std::int64_t, 6> touched{};
    int touched_count = 0;
    for (int m = 0; m < 3; ++m) {
        const int a = cycle[m];
        const int b = cycle[(m + 1) % 3];
        const std::int64_t A = node_of(tf, ff, a, b);
        const std::int64_t B =
            node_of(tg, gf, image_vertex(ff, gf, rotation, a), image_vertex(ff, gf, rotation, b));
        const std::int64_t far_a = other_[A];
        const std::int64_t far_b = other_[B];
        if (far_a == B) {
            ++closed;
        } else {
            other_[far_a] = far_b;
            other_[far_b] = far_a;
            touched[touched_count++] = far_a;
            touched[touched_count++] = far_b;
        }
        other_[A] = other_[B] = -1;
    }

    partner_[f] = g;
    partner_[g] = f;
    rotation_[f] = rotation_[g] = static_cast<std::uint8_t>(rotation);
    set_singular(f, false);
    set_singular(g, false);
    remove_from_pool(f);
    remove_from_pool(g);
    for (int i = 0; i < touched_count; ++i) {
        // A touched node may have been consumed by a later join in this step.
        if (other_[touched[i]] < 0) continue;
        const std::int64_t face = face_of_node(touched[i]);
        if (is_boundary(face)) set_singular(face, compute_singular(face));
    }
    ++step_;
    return closed;
}

GluingInstance PeelState::to_instance() const {
    if (!complete()) throw Error(ErrorCode::InvalidArgument, "peeling not complete");
    std::vector<GluingPair> pairs;
    pairs.reserve(2 * n_);
    for (std::int64_t f = 0; f < 4 * n_; ++f)
        if (f < partner_[f])
            pairs.push_back({FaceId::from_index(f), FaceId::from_index(partner_[f]), Rotation(rotation_[f])});
    return GluingInstance(n_, std::move(pairs));
}

std::int64_t count_singular_faces(const PeelState& state) {
    std::int64_t count = 0;
    for (const auto face : state.boundary_faces()) {
        const auto nb = state.neighbors(face);
        if (nb[0] == face || nb[1] == face || nb[2] == face || nb[0] == nb[1] || nb[1] == nb[2] || nb[0] == nb[2])
            ++count;
    }
    return count;
}

std::int64_t PeelTrace::total_closed() const {
    std::int64_t s = 0;
    for (const auto& step : steps) s += step.closed;
    return s;
}

namespace {

// Picks a uniformly random boundary face other than `f`.
std::int64_t pick_other_face(const PeelState& state, std::int64_t f, const ChoiceFn& choose) {
    const auto& pool = state.boundary_faces();
    const std::uint64_t m = pool.size();
    std::uint64_t k = choose(m - 1);
    // Skip over f's slot so the choice indexes pool \ {f}.
    std::uint64_t pos_f = 0;
    while (pool[pos_f] != f) ++pos_f;
    if (k >= pos_f) ++k;
    return pool[k];
}

} // namespace

PeelResult peel_algorithm1(std::int64_t n, const ChoiceFn& choose) {
    PeelState state(n);
    PeelTrace trace;
    trace.n = n;
    trace.steps.reserve(2 * n);
    std::int64_t f = state.boundary_faces()[choose(4 * n)];
    for (std::int64_t t = 0; t < 2 * n; ++t) {
        PeelStep step;
        step.t = t;
        step.singular_before = state.singular_count();
        step.regular = !state.is_singular(f);
        const std::int64_t g = pick_other_face(state, f, choose);
        const int r = static_cast<int>(choose(3));
        step.closed = state.glue(f, g, r);
        trace.steps.push_back(step);
        if (t + 1 < 2 * n) {
            const auto& pool = state.boundary_faces();
            f = pool[choose(pool.size())];
        }
    }
    return {state.to_instance(), std::move(trace)};
}

PeelResult peel_algorithm1(std::int64_t n, Seed seed) {
    Rng rng(mix64(seed.value ^ mix64(static_cast<std::uint64_t>(n) + 0xA1)));
    return peel_algorithm1(n, [&rng](std::uint64_t k) { return rng.below(k); });
}

namespace {

// An oriented edge identified by one of its corners and a direction in that
// corner's tetrahedron.
struct EdgeHandle {
    std::int64_t tet = 0;
    int tail = 0;
    int head = 1;
};

struct EdgeLocation {
    bool closed = false;
    std::int64_t length = 0;
    std::int64_t right_node = -1;  // boundary node whose face lies to the right
};

// Walks the edge through glued faces in both directions from the handle's
// corner.
EdgeLocation locate(const PeelState& state, const EdgeHandle& h) {
    const int start_slot = edge_slot(h.tail, h.head);
    EdgeLocation loc;
    loc.length = 1;
    std::array<std::int64_t, 2> end_node{};
    std::array<bool, 2> end_right{};
    for (int dir = 0; dir < 2; ++dir) {
        std::int64_t t = h.tet;
        int a = h.tail;
        int b = h.head;
        int g = faces_containing(a, b)[dir];
        while (true) {
            const std::int64_t face = 4 * t + g;
            const std::int64_t partner = state.partner(face);
            if (partner < 0) {
                end_node[dir] = node_of(t, g, a, b);
                end_right[dir] = traverses(g, a, b);
                break;
            }
            const int a2 = state.map_local_vertex(face, a);
            const int b2 = state.map_local_vertex(face, b);
            const std::int64_t t2 = partner / 4;
            const int g2 = static_cast<int>(partner % 4);
            if (t2 == h.tet && edge_slot(a2, b2) == start_slot) {
                loc.closed = true;
                return loc;
            }
            ++loc.length;
            t = t2;
            a = a2;
            b = b2;
            g = 6 - a2 - b2 - g2;
        }
    }
    if (end_right[0] == end_right[1])
        throw Error(ErrorCode::OrientationInconsistency, "boundary edge has no unique right face");
    loc.right_node = end_right[0] ? end_node[0] : end_node[1];
    return loc;
}

EdgeHandle random_boundary_edge(const PeelState& state, const ChoiceFn& choose) {
    const auto& pool = state.boundary_faces();
    const std::int64_t face = pool[choose(pool.size())];
    const int m = static_cast<int>(choose(3));
    const auto& c = kFaceCycle[face % 4];
    // The chosen face traverses c[m] -> c[m+1], so it is the right face.
    return {face / 4, c[m], c[(m + 1) % 3]};
}

} // namespace

Peel2Result peel_algorithm2(std::int64_t n, const ChoiceFn& choose, OrientedEdge e, OrientedEdge e_prime) {
    auto valid = [](OrientedEdge x) {
        return x.tail >= 0 && x.tail < 4 && x.head >= 0 && x.head < 4 && x.tail != x.head;
    };
    if (!valid(e) || !valid(e_prime)) throw Error(ErrorCode::InvalidArgument, "oriented edges need two distinct local vertices");
    if (edge_slot(e.tail, e.head) == edge_slot(e_prime.tail, e_prime.head))
        throw Error(ErrorCode::InvalidArgument, "e and e' must be different edges");

    PeelState state(n);
    Peel2Result out;
    out.trace.n = n;
    const EdgeHandle first{0, e.tail, e.head};
    const EdgeHandle second{0, e_prime.tail, e_prime.head};
    enum class Focus { First, Second, Random };
    Focus focus = Focus::First;
    EdgeHandle current = first;
    bool second_closed = false;

    for (std::int64_t t = 0; t < 2 * n; ++t) {
        const EdgeLocation here = locate(state, current);
        const std::int64_t f = face_of_node(here.right_node);
        PeelStep step;
        step.t = t;
        step.singular_before = state.singular_count();
        step.regular = !state.is_singular(f);
        const std::int64_t g = pick_other_face(state, f, choose);
        const int r = static_cast<int>(choose(3));
        step.closed = state.glue(f, g, r);
        out.trace.steps.push_back(step);

        if (!second_closed && focus == Focus::First) {
            const EdgeLocation s = locate(state, second);
            if (s.closed) {
                second_closed = true;
                out.length_e_prime = s.length;
                out.step_e_prime = t + 1;
            }
        }
        if (t + 1 == 2 * n) break;

        const EdgeLocation next = locate(state, current);
        if (!next.closed) continue;
        if (focus == Focus::First) {
            out.length_e = next.length;
            out.step_e = t + 1;
            if (!second_closed) {
                focus = Focus::Second;
                current = second;
                continue;
            }
        } else if (focus == Focus::Second) {
            second_closed = true;
            out.length_e_prime = next.length;
            out.step_e_prime = t + 1;
        }
        focus = Focus::Random;
        current = random_boundary_edge(state, choose);
    }

    // Every edge is closed once all faces are glued.
    if (out.step_e == 0) {
        out.length_e = locate(state, first).length;
        out.step_e = 2 * n;
    }
    if (!second_closed) {
        out.length_e_prime = locate(state, second).length;
        out.step_e_prime = 2 * n;
    }
    out.instance = state.to_instance();
    return out;
}

Peel2Result peel_algorithm2(std::int64_t n, Seed seed, OrientedEdge e, OrientedEdge e_prime) {
    Rng rng(mix64(seed.value ^ mix64(static_cast<std::uint64_t>(n) + 0xA2)));
    return peel_algorithm2(n, [&rng](std::uint64_t k) { return rng.below(k); }, e, e_prime);
}

ChoiceFn PathEnumerator::chooser() {
    pos_ = 0;
    return [this](std::uint64_t arity) -> std::uint64_t {
        if (arity == 0) throw Error(ErrorCode::InvalidArgument, "choice with no options");
        if (pos_ < choice_.size()) {
            if (arity_[pos_] != arity) throw Error(ErrorCode::InvalidArgument, "procedure is not deterministic");
            return choice_[pos_++];
        }
        choice_.push_back(0);
        arity_.push_back(arity);
        ++pos_;
        return 0;
    };
}

bool PathEnumerator::advance() {
    choice_.resize(pos_);
    arity_.resize(pos_);
    while (!choice_.empty() && choice_.back() + 1 == arity_.back()) {
        choice_.pop_back();
        arity_.pop_back();
    }
    if (choice_.empty()) return false;
    ++choice_.back();
    return true;
}

double regular_closure_comparator(std::int64_t n, std::int64_t t, double singular) {
    const double left = static_cast<double>(4 * n - 2 * t);
    return (left - singular) / (left * (left - 1));
}

double singular_closure_comparator(std::int64_t n, std::int64_t t, double singular) {
    const double left = static_cast<double>(4 * n - 2 * t);
    return 9.0 * singular / (left * (left - 1));
}

double singular_face_bound(std::int64_t n, std::int64_t t) {
    return 12.0 * std::log(static_cast<double>(4 * n) / static_cast<double>(4 * n - 2 * t));
}

TraceReport trace_report(const std::vector<PeelTrace>& traces) {
    if (traces.empty()) throw Error(ErrorCode::InsufficientData, "no traces");
    TraceReport r;
    r.n = traces.front().n;
    r.trials = traces.size();
    const std::int64_t steps = 2 * r.n;
    std::vector<std::int64_t> closed(steps, 0);
    std::vector<std::int64_t> singular(steps, 0);
    std::int64_t total = 0;
    for (const auto& tr : traces) {
        if (tr.n != r.n || static_cast<std::int64_t>(tr.steps.size()) != steps)
            throw Error(ErrorCode::InvalidArgument, "traces of different sizes");
        for (std::int64_t t = 0; t < steps; ++t) {
            closed[t] += tr.steps[t].closed;
            singular[t] += tr.steps[t].singular_before;
        }
        total += tr.total_closed();
    }
    const double trials = static_cast<double>(traces.size());
    for (std::int64_t t = 0; t < steps; ++t) {
        const double f = static_cast<double>(singular[t]) / trials;
        r.mean_closed.push_back(static_cast<double>(closed[t]) / trials);
        r.mean_singular.push_back(f);
        r.regular_comparator.push_back(regular_closure_comparator(r.n, t, f));
        r.singular_comparator.push_back(singular_closure_comparator(r.n, t, f));
        r.singular_bound.push_back(singular_face_bound(r.n, t));
    }
    r.mean_total_closed = static_cast<double>(total) / trials;
    return r;
}

void write_trace_csv(std::ostream& out, const std::vector<PeelTrace>& traces, bool with_trial_column) {
    if (with_trial_column) out << "trial,";
    out << "t,E_t,F_sing_t,f_regular\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        for (const auto& s : traces[i].steps) {
            if (with_trial_column) out << i << ',';
            out << s.t << ',' << s.closed << ',' << s.singular_before << ',' << (s.regular ? 1 : 0) << '\n';
        }
    }
}

} // namespace rtm
