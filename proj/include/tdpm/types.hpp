#pragma once

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "tdpm/error.hpp"

namespace tdpm {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// n points in an m-dimensional ambient space; point j is column j.
class DataMatrix {
public:
    explicit DataMatrix(Matrix values) : values_(std::move(values)) {
        if (values_.rows() < 1)
            throw InvalidArgument("data matrix needs at least one ambient dimension");
        if (values_.cols() < 2)
            throw InvalidArgument("data matrix needs at least two points, got " +
                                  std::to_string(values_.cols()));
        if (!values_.allFinite())
            throw InvalidArgument("data matrix contains non-finite entries");
    }

    Index ambient_dim() const noexcept { return values_.rows(); }
    Index size() const noexcept { return values_.cols(); }
    const Matrix& values() const noexcept { return values_; }
    auto point(Index j) const { return values_.col(j); }

    /// The first count points, in order.
    DataMatrix prefix(Index count) const {
        if (count < 2 || count > size())
            throw InvalidArgument("prefix of " + std::to_string(count) + " points out of range [2, " +
                                  std::to_string(size()) + "]");
        return DataMatrix(values_.leftCols(count));
    }

private:
    Matrix values_;
};

/// Square, symmetric, nonnegative, finite, with an exactly zero diagonal.
class DistanceMatrix {
public:
    explicit DistanceMatrix(Matrix values) : values_(std::move(values)) {
        if (values_.rows() != values_.cols())
            throw InvalidArgument("distance matrix must be square");
        const Index n = values_.rows();
        for (Index j = 0; j < n; ++j) {
            if (values_(j, j) != 0.0)
                throw InvalidArgument("distance matrix diagonal entry " + std::to_string(j) +
                                      " is not zero");
            for (Index i = 0; i < j; ++i) {
                const double v = values_(i, j);
                if (!std::isfinite(v) || v < 0.0)
                    throw InvalidArgument("distance matrix entries must be finite and nonnegative");
                if (v != values_(j, i))
                    throw InvalidArgument("distance matrix is not symmetric at (" + std::to_string(i) +
                                          ", " + std::to_string(j) + ")");
            }
        }
    }

    Index size() const noexcept { return values_.rows(); }
    const Matrix& values() const noexcept { return values_; }
    double operator()(Index i, Index j) const { return values_(i, j); }

private:
    Matrix values_;
};

/// Output of classical MDS.
struct Embedding {
    Matrix coordinates;   // d x n
    Vector eigenvalues;   // full spectrum, non-increasing
    double negative_mass = 0.0;

    Index dim() const noexcept { return coordinates.rows(); }
    Index size() const noexcept { return coordinates.cols(); }
};

namespace detail {

/// Flips the sign of each column so its largest-magnitude entry is positive.
/// The first row index wins magnitude ties.
template <typename Derived>
void fix_column_signs(Eigen::MatrixBase<Derived>& m) {
    for (Index c = 0; c < m.cols(); ++c) {
        Index best = 0;
        double best_abs = -1.0;
        for (Index r = 0; r < m.rows(); ++r) {
            const double a = std::abs(m(r, c));
            if (a > best_abs) {
                best_abs = a;
                best = r;
            }
        }
        if (m(best, c) < 0.0) m.col(c) = -m.col(c);
    }
}

/// Euclidean distance accumulated coordinate by coordinate, so the same pair
/// always yields the same bits regardless of caller.
template <typename A, typename B>
double euclidean(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    double sum = 0.0;
    for (Index r = 0; r < a.size(); ++r) {
        const double diff = a(r) - b(r);
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

}  // namespace detail

}  // namespace tdpm
