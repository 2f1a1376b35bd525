#include "rtm/core_model.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "rtm/rng.hpp"

namespace rtm {

Rotation::Rotation(int r) {
    if (r < 0 || r > 2) throw Error(ErrorCode::InvalidArgument, "rotation must be 0, 1 or 2, got " + std::to_string(r));
    r_ = static_cast<std::uint8_t>(r);
}

GluingInstance::GluingInstance(std::int64_t n, std::vector<GluingPair> pairs) : n_(n), pairs_(std::move(pairs)) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (static_cast<std::int64_t>(pairs_.size()) != 2 * n)
        throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(2 * n) + " pairs, got " +
                                                    std::to_string(pairs_.size()));
    const std::int64_t faces = 4 * n;
    for (auto& p : pairs_) {
        for (const FaceId f : {p.first, p.second}) {
            if (f.tet < 0 || f.tet >= n || f.face < 0 || f.face > 3)
                throw Error(ErrorCode::InvalidArgument, "face out of range");
        }
        if (p.first == p.second) throw Error(ErrorCode::InvalidArgument, "face paired with itself");
        // The rotation formula is symmetric in the two faces, so swapping
        // keeps the same identification.
        if (p.second < p.first) std::swap(p.first, p.second);
    }
    std::sort(pairs_.begin(), pairs_.end());

    partner_.assign(faces, -1);
    pair_of_.assign(faces, -1);
    rotation_.assign(faces, 0);
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const auto a = pairs_[i].first.index();
        const auto b = pairs_[i].second.index();
        if (partner_[a] != -1 || partner_[b] != -1)
            throw Error(ErrorCode::InvalidArgument, "face appears in more than one pair");
        partner_[a] = b;
        partner_[b] = a;
        pair_of_[a] = pair_of_[b] = static_cast<std::int64_t>(i);
        rotation_[a] = rotation_[b] = static_cast<std::uint8_t>(pairs_[i].rotation.value());
    }
}

void GluingInstance::check_face(FaceId f) const {
    if (f.tet < 0 || f.tet >= n_ || f.face < 0 || f.face > 3)
        throw Error(ErrorCode::UnknownFace,
                    "face (" + std::to_string(f.tet) + ", " + std::to_string(f.face) + ") not in instance");
}

FaceId GluingInstance::partner(FaceId f) const {
    check_face(f);
    return FaceId::from_index(partner_[f.index()]);
}

Rotation GluingInstance::rotation(FaceId f) const {
    check_face(f);
    return Rotation(rotation_[f.index()]);
}

std::int64_t GluingInstance::pair_index(FaceId f) const {
    check_face(f);
    return pair_of_[f.index()];
}

bool GluingInstance::is_first(FaceId f) const {
    check_face(f);
    return f.index() < partner_[f.index()];
}

namespace {

// Pairs every face with a uniformly random unmatched face, visiting faces in
// increasing order so the result is already canonical. Returns false as soon
// as `accept(a, b)` rejects a pair.
template <class Accept>
bool draw_matching(std::int64_t n, Rng& rng, std::vector<GluingPair>& pairs, Accept&& accept) {
    const std::int64_t faces = 4 * n;
    std::vector<std::int64_t> pool(faces);
    std::vector<std::int64_t> where(faces);
    for (std::int64_t i = 0; i < faces; ++i) pool[i] = where[i] = i;
    auto remove = [&](std::int64_t f) {
        const std::int64_t pos = where[f];
        const std::int64_t last = pool.back();
        pool[pos] = last;
        where[last] = pos;
        pool.pop_back();
        where[f] = -1;
    };

    pairs.clear();
    pairs.reserve(2 * n);
    for (std::int64_t a = 0; a < faces; ++a) {
        if (where[a] < 0) continue;
        remove(a);
        const std::int64_t b = pool[rng.below(pool.size())];
        remove(b);
        const int r = static_cast<int>(rng.below(3));
        if (!accept(a, b)) return false;
        pairs.push_back({FaceId::from_index(a), FaceId::from_index(b), Rotation(r)});
    }
    return true;
}

} // namespace

GluingInstance sample_uniform(std::int64_t n, Seed seed) {
    if (n < 1) throw Error(ErrorCode::InvalidN, "n must be positive");
    Rng rng(mix64(seed.value ^ mix64(static_cast<std::uint64_t>(n))));
    std::vector<GluingPair> pairs;
    draw_matching(n, rng, pairs, [](std::int64_t, std::int64_t) { return true; });
    return GluingInstance(n, std::move(pairs));
}

SimpleSample sample_simple(std::int64_t n, Seed seed, int max_retries, bool enforce_min_n) {
    if (n < 1) throw Error(ErrorCode::InvalidN, "n must be positive");
    if (enforce_min_n && n < 5)
        throw Error(ErrorCode::InvalidN, "no simple 4-regular graph on " + std::to_string(n) + " vertices");
    if (max_retries < 1) throw Error(ErrorCode::InvalidArgument, "max_retries must be positive");

    Rng rng(mix64(seed.value ^ mix64(static_cast<std::uint64_t>(n) + 0x5151)));
    std::vector<GluingPair> pairs;
    // Up to four neighbours per tetrahedron in the dual graph so far.
    std::vector<std::array<std::int64_t, 4>> adjacent(n);
    std::vector<std::uint8_t> degree(n);
    for (int attempt = 1; attempt <= max_retries; ++attempt) {
        std::fill(degree.begin(), degree.end(), 0);
        const bool ok = draw_matching(n, rng, pairs, [&](std::int64_t a, std::int64_t b) {
            const std::int64_t ta = a / 4;
            const std::int64_t tb = b / 4;
            if (ta == tb) return false;
            for (int k = 0; k < degree[ta]; ++k)
                if (adjacent[ta][k] == tb) return false;
            adjacent[ta][degree[ta]++] = tb;
            adjacent[tb][degree[tb]++] = ta;
            return true;
        });
        if (ok) return {GluingInstance(n, std::move(pairs)), attempt};
    }
    throw Error(ErrorCode::RetryLimitExceeded,
                "no simple dual graph after " + std::to_string(max_retries) + " attempts at n = " + std::to_string(n));
}

std::uint64_t instance_count(std::int64_t n) {
    std::uint64_t count = 1;
    for (std::int64_t k = 4 * n - 1; k > 1; k -= 2) count *= static_cast<std::uint64_t>(k);
    for (std::int64_t k = 0; k < 2 * n; ++k) count *= 3;
    return count;
}

namespace {

void enumerate_matchings(std::vector<std::int64_t>& partner, std::vector<std::pair<std::int64_t, std::int64_t>>& stack,
                         const std::function<void()>& on_complete) {
    const auto first_free = std::find(partner.begin(), partner.end(), -1);
    if (first_free == partner.end()) {
        on_complete();
        return;
    }
    const std::int64_t a = first_free - partner.begin();
    for (std::int64_t b = a + 1; b < static_cast<std::int64_t>(partner.size()); ++b) {
        if (partner[b] != -1) continue;
        partner[a] = b;
        partner[b] = a;
        stack.emplace_back(a, b);
        enumerate_matchings(partner, stack, on_complete);
        stack.pop_back();
        partner[a] = partner[b] = -1;
    }
}

} // namespace

void for_each_instance(std::int64_t n, const std::function<void(const GluingInstance&)>& visit) {
    if (n < 1) throw Error(ErrorCode::InvalidN, "n must be positive");
    if (n > 2) throw Error(ErrorCode::TooLarge, "exhaustive enumeration is limited to n <= 2");
    std::vector<std::int64_t> partner(4 * n, -1);
    std::vector<std::pair<std::int64_t, std::int64_t>> stack;
    enumerate_matchings(partner, stack, [&] {
        const std::size_t m = stack.size();
        std::vector<int> rot(m, 0);
        while (true) {
            std::vector<GluingPair> pairs;
            pairs.reserve(m);
            for (std::size_t i = 0; i < m; ++i)
                pairs.push_back({FaceId::from_index(stack[i].first), FaceId::from_index(stack[i].second), Rotation(rot[i])});
            visit(GluingInstance(n, std::move(pairs)));
            std::size_t i = m;
            while (i > 0 && rot[i - 1] == 2) rot[--i] = 0;
            if (i == 0) break;
            ++rot[i - 1];
        }
    });
}

std::vector<GluingInstance> enumerate_all(std::int64_t n) {
    std::vector<GluingInstance> out;
    for_each_instance(n, [&](const GluingInstance& g) { out.push_back(g); });
    return out;
}

std::array<std::pair<std::int64_t, std::int64_t>, 3> face_map(const GluingInstance& instance, FaceId f) {
    const FaceId g = instance.partner(f);
    std::array<std::pair<std::int64_t, std::int64_t>, 3> out{};
    for (int j = 0; j < 3; ++j) {
        const int v = kFaceCycle[f.face][j];
        out[j] = {vertex_label(f.tet, v), vertex_label(g.tet, instance.map_local_vertex(f.index(), v))};
    }
    return out;
}

void write_instance(std::ostream& out, const GluingInstance& instance) {
    out << instance.n() << '\n';
    for (const auto& p : instance.pairs())
        out << p.first.tet << ' ' << p.first.face << ' ' << p.second.tet << ' ' << p.second.face << ' '
            << p.rotation.value() << '\n';
}

GluingInstance read_instance(std::istream& in) {
    std::int64_t n = 0;
    if (!(in >> n) || n < 1) throw Error(ErrorCode::IoError, "malformed instance header");
    std::vector<GluingPair> pairs;
    pairs.reserve(2 * n);
    for (std::int64_t i = 0; i < 2 * n; ++i) {
        std::int64_t ta, fa, tb, fb, r;
        if (!(in >> ta >> fa >> tb >> fb >> r)) throw Error(ErrorCode::IoError, "truncated instance at pair " + std::to_string(i));
        if (r < 0 || r > 2) throw Error(ErrorCode::IoError, "rotation out of range at pair " + std::to_string(i));
        pairs.push_back({{static_cast<std::int32_t>(ta), static_cast<std::int32_t>(fa)},
                         {static_cast<std::int32_t>(tb), static_cast<std::int32_t>(fb)},
                         Rotation(static_cast<int>(r))});
    }
    return GluingInstance(n, std::move(pairs));
}

std::string to_text(const GluingInstance& instance) {
    std::ostringstream os;
    write_instance(os, instance);
    return os.str();
}

GluingInstance from_text(const std::string& text) {
    std::istringstream is(text);
    return read_instance(is);
}

} // namespace rtm
