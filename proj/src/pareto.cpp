#include "fdmc/pareto.hpp"

#include <algorithm>

namespace fdmc {

ThresholdMatrix::ThresholdMatrix(const std::vector<std::vector<double>>& values)
    : values_(values) {
    if (values.empty() || values[0].empty())
        throw std::invalid_argument("ThresholdMatrix: empty matrix");
    n_ = int(values.size());
    m_ = int(values[0].size());
    for (const auto& row : values)
        if (int(row.size()) != m_) throw std::invalid_argument("ThresholdMatrix: ragged rows");

    tree_base_ = 1;
    while (tree_base_ < m_) tree_base_ <<= 1;
    tree_.assign(n_, std::vector<double>(size_t(tree_base_) * 2, kInf));
    for (int r = 0; r < n_; ++r) {
        auto& t = tree_[r];
        for (int c = 0; c < m_; ++c) t[tree_base_ + c] = values_[r][c];
        for (int i = tree_base_ - 1; i >= 1; --i) t[i] = std::min(t[2 * i], t[2 * i + 1]);
    }
}

int ThresholdMatrix::leftmost_leq(int row, int x0, int x1, double threshold) const {
    if (row < 0 || row >= n_ || x0 < 0 || x1 >= m_ || x0 > x1)
        throw std::invalid_argument("leftmost_leq: range violation");
    ++leftmost_queries;
    const auto& t = tree_[row];
    // descend: find the leftmost leaf in [x0, x1] with value <= threshold
    struct Node {
        int idx, lo, hi;
    };
    std::vector<Node> stack{{1, 0, tree_base_ - 1}};
    while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        if (nd.hi < x0 || nd.lo > x1 || t[nd.idx] > threshold) continue;
        if (nd.lo == nd.hi) return nd.lo;
        int mid = (nd.lo + nd.hi) / 2;
        // right child pushed first so the left child is explored first
        stack.push_back({2 * nd.idx + 1, mid + 1, nd.hi});
        stack.push_back({2 * nd.idx, nd.lo, mid});
    }
    return -1;
}

ThresholdMatrix::FrontierResult ThresholdMatrix::pareto_frontier(const FrontierQuery& q) const {
    if (q.x0 < 0 || q.x1 >= m_ || q.y0 < 0 || q.y1 >= n_ || q.x0 > q.x1 || q.y0 > q.y1)
        throw std::invalid_argument("pareto_frontier: rect violation");
    ++frontier_queries;
    FrontierResult res;
    int hi = q.x1;
    for (int row = q.y0; row <= q.y1 && hi >= q.x0; ++row) {
        int x = leftmost_leq(row, q.x0, hi, q.threshold);
        if (x < 0) continue;
        res.points.push_back({x, row});
        hi = x - 1;  // subsequent rows may only contribute strictly further left
    }
    return res;
}

}  // namespace fdmc
