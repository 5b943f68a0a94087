#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "fdmc/geometry.hpp"

namespace fdmc {

/// Per-row augmented binary trees over an m x n matrix; answers leftmost
/// below-threshold queries and threshold-constrained Pareto frontiers over
/// submatrices. Immutable after build.
class ThresholdMatrix {
public:
    ThresholdMatrix() = default;
    /// values[row][col]; all rows must have equal, nonzero length.
    explicit ThresholdMatrix(const std::vector<std::vector<double>>& values);

    int cols() const { return m_; }
    int rows() const { return n_; }
    double at(int col, int row) const { return values_[row][col]; }

    /// Smallest column x in [x0, x1] with value(x, row) <= threshold, or -1.
    int leftmost_leq(int row, int x0, int x1, double threshold) const;

    struct FrontierQuery {
        int x0, y0, x1, y1;  // inclusive rectangle, columns x, rows y
        double threshold;
    };
    struct FrontierResult {
        std::vector<std::pair<int, int>> points;  // (col, row), antichain
    };

    /// Minimal Pareto frontier of {(x,y) in rect : M[x,y] <= t} under
    /// upper-left dominance ((x',y') dominates (x,y) iff x' <= x and y' <= y).
    /// Rows are processed top-down with the shrinking-range refinement.
    FrontierResult pareto_frontier(const FrontierQuery& q) const;

    mutable std::atomic<std::uint64_t> leftmost_queries{0};
    mutable std::atomic<std::uint64_t> frontier_queries{0};

    // movable despite the counters (moves happen only while assembling
    // index collections, before any concurrent use)
    ThresholdMatrix(ThresholdMatrix&& o) noexcept
        : leftmost_queries(o.leftmost_queries.load()),
          frontier_queries(o.frontier_queries.load()),
          m_(o.m_),
          n_(o.n_),
          values_(std::move(o.values_)),
          tree_(std::move(o.tree_)),
          tree_base_(o.tree_base_) {}
    ThresholdMatrix& operator=(ThresholdMatrix&& o) noexcept {
        leftmost_queries.store(o.leftmost_queries.load());
        frontier_queries.store(o.frontier_queries.load());
        m_ = o.m_;
        n_ = o.n_;
        values_ = std::move(o.values_);
        tree_ = std::move(o.tree_);
        tree_base_ = o.tree_base_;
        return *this;
    }

private:
    int m_ = 0, n_ = 0;
    std::vector<std::vector<double>> values_;
    std::vector<std::vector<double>> tree_;  // per row, 1-indexed segment tree of minima
    int tree_base_ = 0;
};

}  // namespace fdmc
