#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/SVD>

#include "tdpm/neighbors.hpp"
#include "tdpm/types.hpp"

namespace tdpm {

/// Orthonormal basis of the estimated tangent space at one data point.
struct TangentBasis {
    Index anchor = 0;
    Matrix basis;            // m x d, orthonormal columns
    Vector singular_values;  // the d retained values, non-increasing

    Index ambient_dim() const noexcept { return basis.rows(); }
    Index dim() const noexcept { return basis.cols(); }
};

struct TangentDistance {
    double distance = 0.0;
    Vector coefficients;  // coordinates of the closest point in the basis
};

/// Row i holds distances from every point to the affine tangent space at
/// point i. Not symmetric in general.
struct TangentDistanceMatrix {
    Matrix values;

    Index size() const noexcept { return values.rows(); }
};

/// Local PCA: top-d left singular vectors of the neighbors of `anchor`,
/// centered on their mean. The anchor itself is not part of the
/// neighborhood.
inline TangentBasis tangent_basis(const DataMatrix& data, Index anchor, std::span<const Index> neighbors,
                                  Index d) {
    const Index m = data.ambient_dim();
    const auto k = static_cast<Index>(neighbors.size());
    if (d < 1) throw InvalidArgument("tangent rank must be at least 1");
    if (d > m)
        throw InvalidArgument("tangent rank " + std::to_string(d) + " exceeds ambient dimension " +
                              std::to_string(m));
    if (k <= d)
        throw InvalidArgument("neighborhood too small for tangent rank: k=" + std::to_string(k) +
                              ", d=" + std::to_string(d));

    Matrix local(m, k);
    for (Index j = 0; j < k; ++j) {
        const Index idx = neighbors[static_cast<std::size_t>(j)];
        if (idx < 0 || idx >= data.size()) throw InvalidArgument("neighbor index out of range");
        local.col(j) = data.point(idx);
    }
    const Vector mean = local.rowwise().mean();
    local.colwise() -= mean;

    Eigen::JacobiSVD<Matrix> svd(local, Eigen::ComputeThinU);
    const Vector& sigma = svd.singularValues();
    const double tol = static_cast<double>(std::max(m, k)) * std::numeric_limits<double>::epsilon() *
                       (sigma.size() > 0 ? sigma(0) : 0.0);
    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > tol) ++rank;
    if (rank < d) throw DegenerateNeighborhood(anchor, rank, d);

    TangentBasis out;
    out.anchor = anchor;
    out.basis = svd.matrixU().leftCols(d);
    out.singular_values = sigma.head(d);
    detail::fix_column_signs(out.basis);
    return out;
}

/// Distance from `query` to the affine space anchor_point + span(basis).
/// With orthonormal columns the minimizing coefficients are basis^T (x - x*).
template <typename A, typename Q>
TangentDistance tangent_distance(const Eigen::MatrixBase<A>& anchor_point, const TangentBasis& basis,
                                 const Eigen::MatrixBase<Q>& query) {
    const Index m = basis.ambient_dim();
    if (anchor_point.size() != m || query.size() != m)
        throw InvalidArgument("tangent distance dimension mismatch: basis is " + std::to_string(m) +
                              "-dimensional, points are " + std::to_string(anchor_point.size()) + " and " +
                              std::to_string(query.size()));
    const Vector offset = query.derived() - anchor_point.derived();
    TangentDistance out;
    out.coefficients = basis.basis.transpose() * offset;
    const Vector residual = offset - basis.basis * out.coefficients;
    // The exact value never exceeds the offset length; clip rounding overshoot.
    out.distance = std::min(residual.norm(), offset.norm());
    return out;
}

inline TangentDistanceMatrix tangent_distance_matrix(const DataMatrix& data, const NeighborIndex& neighbors,
                                                     Index d) {
    const Index n = data.size();
    if (neighbors.size() != n)
        throw InvalidArgument("neighbor index covers " + std::to_string(neighbors.size()) + " points, data has " +
                              std::to_string(n));
    if (neighbors.k() <= d)
        throw InvalidArgument("neighborhood too small for tangent rank: k=" + std::to_string(neighbors.k()) +
                              ", d=" + std::to_string(d));

    TangentDistanceMatrix td{Matrix::Zero(n, n)};
    for (Index i = 0; i < n; ++i) {
        const TangentBasis basis = tangent_basis(data, i, neighbors.row(i), d);
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            td.values(i, j) = tangent_distance(data.point(i), basis, data.point(j)).distance;
        }
    }
    return td;
}

enum class SymmetrizeMode { mean, min, max };

inline SymmetrizeMode parse_symmetrize_mode(std::string_view name) {
    if (name == "mean") return SymmetrizeMode::mean;
    if (name == "min") return SymmetrizeMode::min;
    if (name == "max") return SymmetrizeMode::max;
    throw InvalidArgument("unknown symmetrize mode '" + std::string(name) + "'");
}

inline const char* to_string(SymmetrizeMode mode) {
    switch (mode) {
    case SymmetrizeMode::mean: return "mean";
    case SymmetrizeMode::min: return "min";
    case SymmetrizeMode::max: return "max";
    }
    return "unknown";
}

inline DistanceMatrix symmetrize(const TangentDistanceMatrix& td, SymmetrizeMode mode = SymmetrizeMode::mean) {
    const Matrix& v = td.values;
    if (v.rows() != v.cols()) throw InvalidArgument("tangent distance matrix must be square");
    const Index n = v.rows();
    Matrix s = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        if (v(j, j) != 0.0) throw InvalidArgument("tangent distance matrix diagonal must be zero");
        for (Index i = 0; i < j; ++i) {
            const double a = v(i, j);
            const double b = v(j, i);
            if (!(a >= 0.0) || !(b >= 0.0))
                throw InvalidArgument("tangent distance matrix has a negative or NaN entry");
            double c = 0.0;
            switch (mode) {
            case SymmetrizeMode::mean: c = 0.5 * (a + b); break;
            case SymmetrizeMode::min: c = std::min(a, b); break;
            case SymmetrizeMode::max: c = std::max(a, b); break;
            }
            s(i, j) = s(j, i) = c;
        }
    }
    return DistanceMatrix(std::move(s));
}

}  // namespace tdpm
