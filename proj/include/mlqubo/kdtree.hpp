#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

// Static K-D tree over low-dimensional points with nearest-neighbor queries
// that can skip deactivated points (used for greedy matching, where paired
// nodes drop out of later queries).

namespace mlqubo {

class KdTree {
 public:
  explicit KdTree(const std::vector<std::vector<double>>& points)
      : points_(points), dim_(points.empty() ? 0 : points[0].size()) {
    std::vector<int> idx(points_.size());
    std::iota(idx.begin(), idx.end(), 0);
    nodes_.reserve(points_.size());
    root_ = build(idx, 0, static_cast<int>(idx.size()), 0);
  }

  // Nearest active point distinct from `skip`; -1 when none exists.
  int nearest(const std::vector<double>& query, int skip,
              const std::vector<char>& active) const {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    search(root_, query, skip, active, best, best_d2);
    return best;
  }

 private:
  struct Node {
    int point;
    int axis;
    int left = -1, right = -1;
  };

  int build(std::vector<int>& idx, int lo, int hi, int depth) {
    if (lo >= hi) return -1;
    const int axis = dim_ == 0 ? 0 : depth % static_cast<int>(dim_);
    const int mid = (lo + hi) / 2;
    std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi,
                     [&](int a, int b) {
                       return points_[a][axis] < points_[b][axis];
                     });
    const int node = static_cast<int>(nodes_.size());
    nodes_.push_back({idx[mid], axis});
    nodes_[node].left = build(idx, lo, mid, depth + 1);
    nodes_[node].right = build(idx, mid + 1, hi, depth + 1);
    return node;
  }

  double dist2(const std::vector<double>& a, const std::vector<double>& b) const {
    double d = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double diff = a[k] - b[k];
      d += diff * diff;
    }
    return d;
  }

  void search(int node, const std::vector<double>& query, int skip,
              const std::vector<char>& active, int& best,
              double& best_d2) const {
    if (node < 0) return;
    const Node& nd = nodes_[node];
    const int p = nd.point;
    if (p != skip && active[p]) {
      const double d2 = dist2(query, points_[p]);
      if (d2 < best_d2 || (d2 == best_d2 && p < best)) {
        best_d2 = d2;
        best = p;
      }
    }
    const double diff = query[nd.axis] - points_[p][nd.axis];
    const int near = diff <= 0.0 ? nd.left : nd.right;
    const int far = diff <= 0.0 ? nd.right : nd.left;
    search(near, query, skip, active, best, best_d2);
    if (diff * diff <= best_d2) search(far, query, skip, active, best, best_d2);
  }

  std::vector<std::vector<double>> points_;
  std::size_t dim_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace mlqubo
