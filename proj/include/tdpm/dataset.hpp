#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tdpm/types.hpp"

namespace tdpm {

struct Seed {
    std::uint64_t value = 0;
};

/// Ambient samples together with the intrinsic parameters that generated
/// them (one column per point in both).
struct ManifoldSample {
    DataMatrix data;
    Matrix params;

    ManifoldSample(DataMatrix d, Matrix p) : data(std::move(d)), params(std::move(p)) {
        if (params.cols() != data.size())
            throw InvalidArgument("manifold sample params and data have different point counts");
    }

    ManifoldSample prefix(Index count) const {
        return ManifoldSample(data.prefix(count), params.leftCols(count));
    }
};

namespace detail {

/// Uniform draws on [lo, hi] from a 64-bit Mersenne Twister. The top 53 bits
/// are mapped to [0, 1) directly, so the stream is identical on every
/// standard library.
class UniformSource {
public:
    explicit UniformSource(Seed seed) : engine_(seed.value) {}

    double operator()(double lo, double hi) {
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

private:
    std::mt19937_64 engine_;
};

inline void require_sample_count(Index n) {
    if (n < 2) throw InvalidArgument("sample count must be at least 2, got " + std::to_string(n));
}

}  // namespace detail

/// Swiss roll point for roll angle t and height h.
inline Eigen::Vector3d swiss_roll_point(double t, double h) {
    return {t * std::cos(t), h, t * std::sin(t)};
}

inline Eigen::Vector3d s_curve_point(double t, double h) {
    const double sign = t < 0.0 ? -1.0 : 1.0;
    return {std::sin(t), h, sign * (std::cos(t) - 1.0)};
}

/// Fixed rotation taking the xy-plane into general position.
inline Eigen::Matrix3d plane_rotation() {
    const Eigen::Matrix3d r = (Eigen::AngleAxisd(0.7, Eigen::Vector3d::UnitZ()) *
                               Eigen::AngleAxisd(0.9, Eigen::Vector3d::UnitX()) *
                               Eigen::AngleAxisd(-0.4, Eigen::Vector3d::UnitY()))
                                  .toRotationMatrix();
    return r;
}

inline Eigen::Vector3d plane_point(double u, double v) {
    return plane_rotation() * Eigen::Vector3d(u, v, 0.0);
}

/// t ~ U[3pi/2, 9pi/2], h ~ U[0, 21]; params rows are (t, h).
inline ManifoldSample generate_swiss_roll(Index n, Seed seed) {
    detail::require_sample_count(n);
    detail::UniformSource uniform(seed);
    Matrix points(3, n);
    Matrix params(2, n);
    for (Index j = 0; j < n; ++j) {
        const double t = uniform(1.5 * std::numbers::pi, 4.5 * std::numbers::pi);
        const double h = uniform(0.0, 21.0);
        params.col(j) << t, h;
        points.col(j) = swiss_roll_point(t, h);
    }
    return ManifoldSample(DataMatrix(std::move(points)), std::move(params));
}

/// t ~ U[-3pi/2, 3pi/2], h ~ U[0, 2]; params rows are (t, h).
inline ManifoldSample generate_s_curve(Index n, Seed seed) {
    detail::require_sample_count(n);
    detail::UniformSource uniform(seed);
    Matrix points(3, n);
    Matrix params(2, n);
    for (Index j = 0; j < n; ++j) {
        const double t = uniform(-1.5 * std::numbers::pi, 1.5 * std::numbers::pi);
        const double h = uniform(0.0, 2.0);
        params.col(j) << t, h;
        points.col(j) = s_curve_point(t, h);
    }
    return ManifoldSample(DataMatrix(std::move(points)), std::move(params));
}

/// Unit square (u, v) ~ U[0, 1]^2 rotated into 3-space.
inline ManifoldSample generate_plane(Index n, Seed seed) {
    detail::require_sample_count(n);
    detail::UniformSource uniform(seed);
    Matrix points(3, n);
    Matrix params(2, n);
    for (Index j = 0; j < n; ++j) {
        const double u = uniform(0.0, 1.0);
        const double v = uniform(0.0, 1.0);
        params.col(j) << u, v;
        points.col(j) = plane_point(u, v);
    }
    return ManifoldSample(DataMatrix(std::move(points)), std::move(params));
}

enum class Manifold { swiss_roll, s_curve, plane };

inline ManifoldSample generate(Manifold manifold, Index n, Seed seed) {
    switch (manifold) {
    case Manifold::swiss_roll: return generate_swiss_roll(n, seed);
    case Manifold::s_curve: return generate_s_curve(n, seed);
    case Manifold::plane: return generate_plane(n, seed);
    }
    throw InvalidArgument("unknown manifold");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_number(std::string_view field) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    if (field.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
    return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

/// 17 significant digits, enough to round-trip any double.
inline std::string format_real(double value) {
    char buffer[32];
    const int len = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(len));
}

}  // namespace detail

/// Reads one point per row. A first row holding any non-numeric field is
/// treated as a header and skipped; blank lines are ignored.
inline DataMatrix load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::vector<double> values;
    std::size_t width = 0;
    std::size_t rows = 0;
    bool first_row = true;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string_view line = detail::trim(std::string_view(text).substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;

        const auto fields = detail::split_fields(line);
        std::vector<double> parsed;
        parsed.reserve(fields.size());
        std::size_t bad_column = 0;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto v = detail::parse_number(fields[c]);
            if (!v) {
                bad_column = c + 1;
                break;
            }
            parsed.push_back(*v);
        }
        if (first_row) {
            first_row = false;
            if (bad_column != 0) {
                width = fields.size();
                continue;
            }
        }
        if (width == 0) width = fields.size();
        if (fields.size() != width)
            throw ParseError(line_no, std::min(fields.size(), width) + 1,
                             "expected " + std::to_string(width) + " fields, found " +
                                 std::to_string(fields.size()));
        if (bad_column != 0)
            throw ParseError(line_no, bad_column,
                             "non-numeric field '" + std::string(detail::trim(fields[bad_column - 1])) + "'");
        for (std::size_t c = 0; c < parsed.size(); ++c)
            if (!std::isfinite(parsed[c])) throw ParseError(line_no, c + 1, "non-finite value");
        values.insert(values.end(), parsed.begin(), parsed.end());
        ++rows;
    }
    if (rows < 2)
        throw InvalidArgument("'" + path + "' holds " + std::to_string(rows) +
                              " data rows, at least 2 required");

    // Row-major text becomes column-per-point storage.
    Matrix m = Eigen::Map<const Matrix>(values.data(), static_cast<Index>(width), static_cast<Index>(rows));
    return DataMatrix(std::move(m));
}

/// Writes points (columns of `columns`) as rows under the given header names.
inline void write_csv(const std::string& path, const std::vector<std::string>& header, const Matrix& columns) {
    if (static_cast<Index>(header.size()) != columns.rows())
        throw InvalidArgument("header has " + std::to_string(header.size()) + " names for " +
                              std::to_string(columns.rows()) + " fields");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (Index j = 0; j < columns.cols(); ++j) {
        for (Index r = 0; r < columns.rows(); ++r) out << (r ? "," : "") << detail::format_real(columns(r, j));
        out << '\n';
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

inline void write_points_csv(const std::string& path, const DataMatrix& data) {
    std::vector<std::string> header;
    for (Index r = 0; r < data.ambient_dim(); ++r) header.push_back("x" + std::to_string(r));
    write_csv(path, header, data.values());
}

/// Columns: index, y0..y{d-1}, then param0.. when params are given. The
/// index column holds `indices[j]` when indices are supplied, else j.
inline void write_embedding_csv(const std::string& path, const Embedding& embedding,
                                const Matrix* params = nullptr, std::span<const Index> indices = {}) {
    const Index n = embedding.size();
    if (params && params->cols() != n)
        throw InvalidArgument("params have " + std::to_string(params->cols()) + " columns, embedding has " +
                              std::to_string(n) + " points");
    if (!indices.empty() && static_cast<Index>(indices.size()) != n)
        throw InvalidArgument("index list length does not match the embedding");
    const Index p = params ? params->rows() : 0;
    std::vector<std::string> header{"index"};
    for (Index r = 0; r < embedding.dim(); ++r) header.push_back("y" + std::to_string(r));
    for (Index r = 0; r < p; ++r) header.push_back("param" + std::to_string(r));

    Matrix table(1 + embedding.dim() + p, n);
    for (Index j = 0; j < n; ++j)
        table(0, j) = static_cast<double>(indices.empty() ? j : indices[static_cast<std::size_t>(j)]);
    table.middleRows(1, embedding.dim()) = embedding.coordinates;
    if (params) table.bottomRows(p) = *params;
    write_csv(path, header, table);
}

}  // namespace tdpm
