#include <cmath>
#include <cstring>
#include <random>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "tdpm/dataset.hpp"

namespace {

namespace fs = std::filesystem;
using tdpm::Index;

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("tdpm_dataset_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string file(const std::string& name, const std::string& contents = {}) const {
        const fs::path p = path_ / name;
        if (!contents.empty()) std::ofstream(p, std::ios::binary) << contents;
        return p.string();
    }

private:
    fs::path path_;
};

bool bit_identical(const tdpm::Matrix& a, const tdpm::Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST(SwissRoll, PointsMatchStoredParameters) {
    const auto s = tdpm::generate_swiss_roll(1000, tdpm::Seed{7});
    ASSERT_EQ(s.data.ambient_dim(), 3);
    ASSERT_EQ(s.data.size(), 1000);
    for (Index j = 0; j < 1000; ++j) {
        const double t = s.params(0, j);
        const double x = s.data.values()(0, j);
        const double z = s.data.values()(2, j);
        EXPECT_NEAR(x * x + z * z, t * t, 1e-12 * t * t);
        EXPECT_EQ(s.data.point(j), tdpm::swiss_roll_point(t, s.params(1, j)));
    }
}

TEST(SwissRoll, Deterministic) {
    const auto a = tdpm::generate_swiss_roll(2, tdpm::Seed{0});
    const auto b = tdpm::generate_swiss_roll(2, tdpm::Seed{0});
    EXPECT_TRUE(bit_identical(a.data.values(), b.data.values()));
    EXPECT_TRUE(bit_identical(a.params, b.params));
    const auto c = tdpm::generate_swiss_roll(2, tdpm::Seed{1});
    EXPECT_FALSE(bit_identical(a.data.values(), c.data.values()));
}

TEST(SwissRoll, ParameterRanges) {
    const auto s = tdpm::generate_swiss_roll(500, tdpm::Seed{1});
    EXPECT_GE(s.params.row(0).minCoeff(), 1.5 * std::numbers::pi);
    EXPECT_LE(s.params.row(0).maxCoeff(), 4.5 * std::numbers::pi);
    EXPECT_GE(s.params.row(1).minCoeff(), 0.0);
    EXPECT_LE(s.params.row(1).maxCoeff(), 21.0);
}

TEST(SCurve, BoundedAndConsistent) {
    const auto s = tdpm::generate_s_curve(1000, tdpm::Seed{3});
    EXPECT_LE(s.data.values().row(0).cwiseAbs().maxCoeff(), 1.0);
    for (Index j = 0; j < 1000; ++j) EXPECT_EQ(s.data.point(j), tdpm::s_curve_point(s.params(0, j), s.params(1, j)));
}

TEST(SCurve, DeterministicAndInRange) {
    EXPECT_TRUE(bit_identical(tdpm::generate_s_curve(2, tdpm::Seed{9}).data.values(),
                              tdpm::generate_s_curve(2, tdpm::Seed{9}).data.values()));
    const auto s = tdpm::generate_s_curve(400, tdpm::Seed{5});
    EXPECT_GE(s.params.row(0).minCoeff(), -1.5 * std::numbers::pi);
    EXPECT_LE(s.params.row(0).maxCoeff(), 1.5 * std::numbers::pi);
    EXPECT_GE(s.params.row(1).minCoeff(), 0.0);
    EXPECT_LE(s.params.row(1).maxCoeff(), 2.0);
}

TEST(Plane, LiesOnTiltedPlane) {
    for (const auto& [n, seed] : {std::pair<Index, std::uint64_t>{100, 2}, {500, 4}}) {
        const auto s = tdpm::generate_plane(n, tdpm::Seed{seed});
        const tdpm::Matrix centered = s.data.values().colwise() - s.data.values().rowwise().mean();
        Eigen::JacobiSVD<tdpm::Matrix> svd(centered);
        EXPECT_LT(svd.singularValues()(2), 1e-12);
        EXPECT_GT(svd.singularValues()(1), 1e-10 * svd.singularValues()(0));
    }
    // Not axis aligned: every coordinate varies.
    const auto s = tdpm::generate_plane(100, tdpm::Seed{2});
    for (Index r = 0; r < 3; ++r)
        EXPECT_GT(s.data.values().row(r).maxCoeff() - s.data.values().row(r).minCoeff(), 0.1);
}

TEST(Plane, TwoDistinctPoints) {
    const auto s = tdpm::generate_plane(2, tdpm::Seed{0});
    EXPECT_GT((s.data.point(0) - s.data.point(1)).norm(), 0.0);
}

TEST(Generators, RejectTooFewPoints) {
    EXPECT_THROW(tdpm::generate_swiss_roll(1, tdpm::Seed{0}), tdpm::InvalidArgument);
    EXPECT_THROW(tdpm::generate_s_curve(0, tdpm::Seed{0}), tdpm::InvalidArgument);
    EXPECT_THROW(tdpm::generate_plane(-3, tdpm::Seed{0}), tdpm::InvalidArgument);
}

TEST(DataMatrix, Validates) {
    EXPECT_THROW(tdpm::DataMatrix(tdpm::Matrix::Zero(3, 1)), tdpm::InvalidArgument);
    EXPECT_THROW(tdpm::DataMatrix(tdpm::Matrix::Zero(0, 4)), tdpm::InvalidArgument);
    tdpm::Matrix m = tdpm::Matrix::Zero(2, 3);
    m(1, 1) = std::nan("");
    EXPECT_THROW(tdpm::DataMatrix{m}, tdpm::InvalidArgument);
}

TEST(LoadCsv, PlainRows) {
    TempDir dir;
    const auto data = tdpm::load_csv(dir.file("a.csv", "0,0\n1,0\n0,1\n"));
    ASSERT_EQ(data.ambient_dim(), 2);
    ASSERT_EQ(data.size(), 3);
    EXPECT_EQ(data.point(1), Eigen::Vector2d(1, 0));
    EXPECT_EQ(data.point(2), Eigen::Vector2d(0, 1));
}

TEST(LoadCsv, HeaderSkipped) {
    TempDir dir;
    const auto data = tdpm::load_csv(dir.file("h.csv", "x,y\n1,2\n3,4\n"));
    ASSERT_EQ(data.ambient_dim(), 2);
    ASSERT_EQ(data.size(), 2);
    EXPECT_EQ(data.point(0), Eigen::Vector2d(1, 2));
    EXPECT_EQ(data.point(1), Eigen::Vector2d(3, 4));
}

TEST(LoadCsv, RaggedRowNamesRow) {
    TempDir dir;
    try {
        tdpm::load_csv(dir.file("r.csv", "1,2\n3\n"));
        FAIL() << "expected a parse error";
    } catch (const tdpm::ParseError& e) {
        EXPECT_EQ(e.row(), 2u);
        EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
    }
}

TEST(LoadCsv, NonNumericFieldAfterHeader) {
    TempDir dir;
    try {
        tdpm::load_csv(dir.file("n.csv", "a,b\n1,2\n3,oops\n"));
        FAIL() << "expected a parse error";
    } catch (const tdpm::ParseError& e) {
        EXPECT_EQ(e.row(), 3u);
        EXPECT_EQ(e.column(), 2u);
    }
}

TEST(LoadCsv, ErrorsOnMissingFileAndTooFewRows) {
    TempDir dir;
    EXPECT_THROW(tdpm::load_csv(dir.file("missing.csv")), tdpm::IoError);
    EXPECT_THROW(tdpm::load_csv(dir.file("one.csv", "x,y\n1,2\n")), tdpm::InvalidArgument);
}

TEST(LoadCsv, ToleratesCrlfAndTrailingBlankLines) {
    TempDir dir;
    const auto data = tdpm::load_csv(dir.file("c.csv", "1.5,-2e3\r\n+3,4\r\n\n"));
    ASSERT_EQ(data.size(), 2);
    EXPECT_EQ(data.point(0), Eigen::Vector2d(1.5, -2000.0));
    EXPECT_EQ(data.point(1), Eigen::Vector2d(3.0, 4.0));
}

TEST(WriteEmbeddingCsv, RowCountAndHeader) {
    TempDir dir;
    tdpm::Embedding e;
    e.coordinates = tdpm::Matrix(2, 3);
    e.coordinates << 0.1, 0.2, 0.3, -1.0, -2.0, -3.0;
    const std::string path = dir.file("e.csv");
    tdpm::write_embedding_csv(path, e);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "index,y0,y1");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 3);
}

TEST(WriteEmbeddingCsv, RoundTripsThroughLoad) {
    TempDir dir;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1e3);
    tdpm::Embedding e;
    e.coordinates = tdpm::Matrix(3, 25);
    for (Index j = 0; j < 25; ++j)
        for (Index r = 0; r < 3; ++r) e.coordinates(r, j) = g(rng) * std::pow(10.0, static_cast<double>(r) - 4);
    tdpm::Matrix params = tdpm::Matrix::Random(2, 25);
    const std::string path = dir.file("rt.csv");
    tdpm::write_embedding_csv(path, e, &params);

    const auto back = tdpm::load_csv(path);
    ASSERT_EQ(back.ambient_dim(), 1 + 3 + 2);
    ASSERT_EQ(back.size(), 25);
    for (Index j = 0; j < 25; ++j) {
        EXPECT_EQ(back.values()(0, j), static_cast<double>(j));
        for (Index r = 0; r < 3; ++r) EXPECT_NEAR(back.values()(1 + r, j), e.coordinates(r, j), 1e-12);
        for (Index r = 0; r < 2; ++r) EXPECT_NEAR(back.values()(4 + r, j), params(r, j), 1e-12);
    }
}

TEST(WriteEmbeddingCsv, RejectsMismatchedParams) {
    TempDir dir;
    tdpm::Embedding e;
    e.coordinates = tdpm::Matrix::Zero(2, 3);
    tdpm::Matrix params = tdpm::Matrix::Zero(1, 4);
    EXPECT_THROW(tdpm::write_embedding_csv(dir.file("bad.csv"), e, &params), tdpm::InvalidArgument);
}

TEST(WriteEmbeddingCsv, UnwritablePath) {
    tdpm::Embedding e;
    e.coordinates = tdpm::Matrix::Zero(2, 3);
    EXPECT_THROW(tdpm::write_embedding_csv("/nonexistent-dir/x/out.csv", e), tdpm::IoError);
}
