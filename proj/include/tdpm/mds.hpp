#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "tdpm/types.hpp"

namespace tdpm {

/// B = -1/2 H D^2 H with H = I - ee^T/n. Symmetric bit for bit.
inline Matrix double_center(const DistanceMatrix& dist) {
    const Index n = dist.size();
    const Matrix sq = dist.values().array().square().matrix();
    const Vector row_mean = sq.rowwise().mean();
    const double grand_mean = row_mean.mean();
    Matrix b(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) b(i, j) = -0.5 * (sq(i, j) - (row_mean(i) + row_mean(j)) + grand_mean);
    return b;
}

/// Classical (Torgerson) MDS. Negative eigenvalues are clamped to zero in
/// the coordinates and reported through negative_mass.
inline Embedding classical_mds(const DistanceMatrix& dist, Index d) {
    const Index n = dist.size();
    if (d < 1 || d > n - 1)
        throw InvalidArgument("embedding dimension " + std::to_string(d) + " outside [1, " +
                              std::to_string(n - 1) + "]");

    const Matrix b = double_center(dist);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(b);
    if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");

    // Eigen returns ascending order.
    Embedding out;
    out.eigenvalues = solver.eigenvalues().reverse();
    Matrix vectors = solver.eigenvectors().rowwise().reverse().leftCols(d);
    detail::fix_column_signs(vectors);

    out.coordinates.resize(d, n);
    for (Index r = 0; r < d; ++r)
        out.coordinates.row(r) = std::sqrt(std::max(out.eigenvalues(r), 0.0)) * vectors.col(r).transpose();

    const double total = out.eigenvalues.cwiseAbs().sum();
    double negative = 0.0;
    for (Index r = 0; r < n; ++r)
        if (out.eigenvalues(r) < 0.0) negative -= out.eigenvalues(r);
    out.negative_mass = total > 0.0 ? negative / total : 0.0;
    return out;
}

/// Euclidean distances between the embedded points.
inline DistanceMatrix embedded_distances(const Embedding& embedding) {
    const Matrix& y = embedding.coordinates;
    const Index n = y.cols();
    Matrix d = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < j; ++i) d(i, j) = d(j, i) = detail::euclidean(y.col(i), y.col(j));
    return DistanceMatrix(std::move(d));
}

}  // namespace tdpm
