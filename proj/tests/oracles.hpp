#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the routine it is meant to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = u(rng);
    return m;
}

/// Orthonormal m x d matrix from a QR factorisation of a random matrix.
inline Matrix random_orthonormal(Index m, Index d, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Matrix> qr(random_matrix(m, m, rng));
    return Matrix(qr.householderQ()).leftCols(d);
}

/// Pairwise distances with a plain per-pair norm.
inline Matrix brute_distances(const Matrix& points) {
    const Index n = points.cols();
    Matrix d(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) d(i, j) = (points.col(i) - points.col(j)).norm();
    return d;
}

/// kNN by a full stable sort of every row.
inline std::vector<std::vector<Index>> brute_knn(const Matrix& points, Index k) {
    const Matrix d = brute_distances(points);
    const Index n = points.cols();
    std::vector<std::vector<Index>> rows(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        std::vector<std::pair<double, Index>> cand;
        for (Index j = 0; j < n; ++j)
            if (j != i) cand.push_back({d(i, j), j});
        std::sort(cand.begin(), cand.end());
        for (Index r = 0; r < k; ++r) rows[i].push_back(cand[r].second);
    }
    return rows;
}

/// All-pairs shortest paths on a dense weight matrix (infinity = no edge).
inline Matrix floyd_warshall(Matrix w) {
    const Index n = w.rows();
    for (Index i = 0; i < n; ++i) w(i, i) = 0.0;
    for (Index via = 0; via < n; ++via)
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) w(i, j) = std::min(w(i, j), w(i, via) + w(via, j));
    return w;
}

/// Golden-section search of a unimodal f on [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi, double tol = 1e-12) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// min over alpha of || anchor + basis * alpha - query || by cyclic
/// coordinate golden-section search, using only objective evaluations.
inline double tangent_distance_by_search(const Vector& anchor, const Matrix& basis, const Vector& query) {
    const Index d = basis.cols();
    Vector alpha = Vector::Zero(d);
    const double radius = 2.0 * (query - anchor).norm() + 1.0;
    auto objective = [&](const Vector& a) { return (anchor + basis * a - query).squaredNorm(); };
    for (int sweep = 0; sweep < 50; ++sweep) {
        const Vector before = alpha;
        for (Index c = 0; c < d; ++c) {
            alpha(c) = golden_min(
                [&](double v) {
                    Vector trial = alpha;
                    trial(c) = v;
                    return objective(trial);
                },
                alpha(c) - radius, alpha(c) + radius);
        }
        if ((alpha - before).norm() < 1e-13) break;
    }
    return std::sqrt(objective(alpha));
}

/// Same minimisation by a column-pivoted QR least-squares solve, which does
/// not assume orthonormal columns.
inline double tangent_distance_by_least_squares(const Vector& anchor, const Matrix& basis, const Vector& query) {
    const Vector alpha = basis.colPivHouseholderQr().solve(query - anchor);
    return (anchor + basis * alpha - query).norm();
}

/// Procrustes RMS in 2-d by scanning rotation angles (with and without a
/// reflection), refining the best angle by golden-section search. Scale and
/// translation are solved in closed form for each fixed rotation.
inline double procrustes_by_angle_search(const Matrix& a, const Matrix& b) {
    const Index n = a.cols();
    const Matrix a0 = a.colwise() - a.rowwise().mean();
    const Matrix b0 = b.colwise() - b.rowwise().mean();
    auto rms_for = [&](double theta, bool reflect) {
        Eigen::Matrix2d q;
        q << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        if (reflect) q.col(1) = -q.col(1);
        const Matrix qb = q * b0;
        const double denom = qb.squaredNorm();
        const double s = denom > 0.0 ? std::max(0.0, (a0.cwiseProduct(qb)).sum() / denom) : 0.0;
        return std::sqrt((a0 - s * qb).squaredNorm() / static_cast<double>(n));
    };
    double best = std::numeric_limits<double>::infinity();
    for (bool reflect : {false, true}) {
        const int steps = 3600;
        const double step = 2.0 * std::numbers::pi / steps;
        int best_i = 0;
        double best_grid = std::numeric_limits<double>::infinity();
        for (int i = 0; i < steps; ++i) {
            const double v = rms_for(i * step, reflect);
            if (v < best_grid) {
                best_grid = v;
                best_i = i;
            }
        }
        const double theta = best_i * step;
        const double refined =
            golden_min([&](double t) { return rms_for(t, reflect); }, theta - step, theta + step, 1e-15);
        best = std::min({best, best_grid, rms_for(refined, reflect)});
    }
    return best;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

/// Strict upper triangle, row by row.
inline std::vector<double> upper(const Matrix& m) {
    std::vector<double> out;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = i + 1; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

/// Unit tangent-plane basis of the Swiss roll at parameters (t, h).
inline Matrix swiss_roll_tangent(double t) {
    Matrix j(3, 2);
    j << std::cos(t) - t * std::sin(t), 0.0,
         0.0, 1.0,
         std::sin(t) + t * std::cos(t), 0.0;
    j.col(0).normalize();
    return j;
}

}  // namespace oracle
