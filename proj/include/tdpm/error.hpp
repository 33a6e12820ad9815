#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdpm {

enum class ErrorKind {
    invalid_argument,
    io,
    parse,
    numeric,
    degenerate_neighborhood,
    disconnected_graph,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::io: return "io-error";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::numeric: return "numeric-error";
    case ErrorKind::degenerate_neighborhood: return "degenerate-neighborhood";
    case ErrorKind::disconnected_graph: return "disconnected-graph";
    }
    return "unknown";
}

/// Base class of every error thrown by the library. Pipelines prefix the
/// message with the stage that failed (see set_stage) and rethrow the same
/// object, so the dynamic type and payload survive.
class Error : public std::exception {
public:
    Error(ErrorKind kind, std::string message)
        : kind_(kind), message_(std::move(message)) {
        rebuild();
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& stage() const noexcept { return stage_; }

    void set_stage(std::string stage) {
        stage_ = std::move(stage);
        rebuild();
    }

    const char* what() const noexcept override { return what_.c_str(); }

private:
    void rebuild() {
        what_ = std::string(to_string(kind_)) + ": ";
        if (!stage_.empty()) what_ += stage_ + " stage: ";
        what_ += message_;
    }

    ErrorKind kind_;
    std::string message_;
    std::string stage_;
    std::string what_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(std::string message)
        : Error(ErrorKind::invalid_argument, std::move(message)) {}
};

class IoError : public Error {
public:
    explicit IoError(std::string message) : Error(ErrorKind::io, std::move(message)) {}
};

/// Rows and columns are 1-based positions in the source file.
class ParseError : public Error {
public:
    ParseError(std::size_t row, std::size_t column, const std::string& message)
        : Error(ErrorKind::parse,
                "row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + message),
          row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class NumericError : public Error {
public:
    explicit NumericError(std::string message) : Error(ErrorKind::numeric, std::move(message)) {}
};

class DegenerateNeighborhood : public Error {
public:
    DegenerateNeighborhood(long point, long achieved_rank, long required_rank)
        : Error(ErrorKind::degenerate_neighborhood,
                "neighborhood of point " + std::to_string(point) + " has rank " +
                    std::to_string(achieved_rank) + ", tangent rank " +
                    std::to_string(required_rank) + " required"),
          point_(point), achieved_rank_(achieved_rank) {}

    long point() const noexcept { return point_; }
    long achieved_rank() const noexcept { return achieved_rank_; }

private:
    long point_;
    long achieved_rank_;
};

class DisconnectedGraph : public Error {
public:
    explicit DisconnectedGraph(std::vector<std::size_t> component_sizes)
        : Error(ErrorKind::disconnected_graph, describe(component_sizes)),
          component_sizes_(std::move(component_sizes)) {}

    /// Sizes of all connected components, largest first.
    const std::vector<std::size_t>& component_sizes() const noexcept { return component_sizes_; }

private:
    static std::string describe(const std::vector<std::size_t>& sizes) {
        std::string s = "neighbor graph has " + std::to_string(sizes.size()) + " components (sizes";
        for (std::size_t size : sizes) s += " " + std::to_string(size);
        return s + ")";
    }

    std::vector<std::size_t> component_sizes_;
};

/// Runs fn and tags any library error escaping it with the stage name.
/// Nested stages compose as "outer/inner".
template <typename Fn>
decltype(auto) run_stage(const char* stage, Fn&& fn) {
    try {
        return std::forward<Fn>(fn)();
    } catch (Error& e) {
        e.set_stage(e.stage().empty() ? std::string(stage) : std::string(stage) + "/" + e.stage());
        throw;
    }
}

}  // namespace tdpm
