#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "tdpm/mds.hpp"
#include "tdpm/types.hpp"

namespace tdpm {

/// sqrt( sum_{i<j} (target - embedded)^2 / sum_{i<j} target^2 ).
/// Zero target with zero embedding gives 0; zero target with any spread in
/// the embedding gives 1.
inline double normalized_stress(const DistanceMatrix& target, const Embedding& embedding) {
    const Index n = target.size();
    if (embedding.size() != n)
        throw InvalidArgument("stress size mismatch: target has " + std::to_string(n) + " points, embedding " +
                              std::to_string(embedding.size()));
    double num = 0.0;
    double den = 0.0;
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < j; ++i) {
            const double t = target(i, j);
            const double e = detail::euclidean(embedding.coordinates.col(i), embedding.coordinates.col(j));
            num += (t - e) * (t - e);
            den += t * t;
        }
    if (den == 0.0) return num == 0.0 ? 0.0 : 1.0;
    return std::sqrt(num / den);
}

/// Pearson correlation over the strict upper triangles. Returns 0 when
/// either side has no variance.
inline double distance_correlation(const DistanceMatrix& a, const DistanceMatrix& b) {
    const Index n = a.size();
    if (b.size() != n) throw InvalidArgument("correlation size mismatch");
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < j; ++i) {
            mean_a += a(i, j);
            mean_b += b(i, j);
        }
    mean_a /= pairs;
    mean_b /= pairs;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < j; ++i) {
            const double da = a(i, j) - mean_a;
            const double db = b(i, j) - mean_b;
            sab += da * db;
            saa += da * da;
            sbb += db * db;
        }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

/// Root-mean-square point discrepancy between `a` and the best similarity
/// transform s*Q*b + t of `b` (reflections allowed). Columns are points; the
/// result is in the units of `a`.
inline double procrustes_error(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidArgument("procrustes shape mismatch");
    const Index n = a.cols();
    if (n == 0) return 0.0;
    const Matrix a0 = a.colwise() - a.rowwise().mean();
    const Matrix b0 = b.colwise() - b.rowwise().mean();
    const double b_norm2 = b0.squaredNorm();
    if (b_norm2 == 0.0) return std::sqrt(a0.squaredNorm() / static_cast<double>(n));

    Eigen::JacobiSVD<Matrix> svd(a0 * b0.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix rotation = svd.matrixU() * svd.matrixV().transpose();
    const double scale = svd.singularValues().sum() / b_norm2;
    const Matrix residual = a0 - scale * rotation * b0;
    return std::sqrt(residual.squaredNorm() / static_cast<double>(n));
}

/// Largest principal angle (radians) between the column spans of two
/// orthonormal bases of equal rank.
inline double max_principal_angle(const Matrix& p, const Matrix& q) {
    if (p.rows() != q.rows() || p.cols() != q.cols())
        throw InvalidArgument("principal angle shape mismatch");
    Eigen::JacobiSVD<Matrix> svd(p.transpose() * q);
    const double smallest = svd.singularValues().minCoeff();
    return std::acos(std::clamp(smallest, 0.0, 1.0));
}

}  // namespace tdpm
