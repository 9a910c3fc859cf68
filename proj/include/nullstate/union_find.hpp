#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace nullstate {

// Disjoint-set forest with path compression and union by rank.
class DisjointSet {
  public:
    explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::int32_t find(std::int32_t x) {
        std::int32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const std::int32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

    bool connected(std::int32_t a, std::int32_t b) { return find(a) == find(b); }

    void reset() {
        std::iota(parent_.begin(), parent_.end(), 0);
        std::fill(rank_.begin(), rank_.end(), 0);
    }

    std::size_t size() const { return parent_.size(); }

  private:
    std::vector<std::int32_t> parent_;
    std::vector<std::uint8_t> rank_;
};

} // namespace nullstate
