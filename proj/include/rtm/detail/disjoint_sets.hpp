#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace rtm::detail {

// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t size) : parent_(size), size_(size, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    // Dense class ids in order of first appearance; returns the class count.
    std::int64_t relabel(std::vector<std::int64_t>& out) {
        out.assign(parent_.size(), -1);
        std::vector<std::int64_t> id(parent_.size(), -1);
        std::int64_t next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            const std::size_t r = find(i);
            if (id[r] < 0) id[r] = next++;
            out[i] = id[r];
        }
        return next;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace rtm::detail
