#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tdpm/types.hpp"

namespace tdpm {

/// For each point, the indices of its k nearest other points, nearest first.
class NeighborIndex {
public:
    NeighborIndex(Index k, Index n, std::vector<Index> flat)
        : k_(k), n_(n), flat_(std::move(flat)) {}

    Index k() const noexcept { return k_; }
    Index size() const noexcept { return n_; }

    std::span<const Index> row(Index i) const {
        return {flat_.data() + i * k_, static_cast<std::size_t>(k_)};
    }

private:
    Index k_;
    Index n_;
    std::vector<Index> flat_;
};

/// Full Euclidean distance matrix; each unordered pair is computed once.
inline DistanceMatrix pairwise_distances(const DataMatrix& data) {
    const Index n = data.size();
    Matrix d = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < j; ++i) d(i, j) = d(j, i) = detail::euclidean(data.point(i), data.point(j));
    return DistanceMatrix(std::move(d));
}

/// Exact brute-force kNN. The query point is excluded; equal distances are
/// ordered by ascending index.
inline NeighborIndex knn(const DataMatrix& data, Index k) {
    const Index n = data.size();
    if (k < 1 || k > n - 1)
        throw InvalidArgument("neighbor count k=" + std::to_string(k) + " outside [1, " +
                              std::to_string(n - 1) + "]");

    std::vector<Index> flat(static_cast<std::size_t>(n * k));
    std::vector<Index> order(static_cast<std::size_t>(n - 1));
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) dist[j] = detail::euclidean(data.point(i), data.point(j));
        Index slot = 0;
        for (Index j = 0; j < n; ++j)
            if (j != i) order[slot++] = j;
        std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Index a, Index b) {
            return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
        });
        std::copy(order.begin(), order.begin() + k, flat.begin() + i * k);
    }
    return NeighborIndex(k, n, std::move(flat));
}

}  // namespace tdpm
