// Command-line front end: generate samples, embed CSV point clouds, run the
// two-stage TDPM -> ISOMAP pipeline and k/n sensitivity sweeps.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdpm/tdpm.hpp"

namespace {

using nlohmann::ordered_json;
using tdpm::Index;

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_arguments = 2,
    exit_data_error = 3,
    exit_numeric_error = 4,
    exit_disconnected = 5,
};

int exit_code_for(tdpm::ErrorKind kind) {
    switch (kind) {
    case tdpm::ErrorKind::invalid_argument: return exit_invalid_arguments;
    case tdpm::ErrorKind::io:
    case tdpm::ErrorKind::parse: return exit_data_error;
    case tdpm::ErrorKind::numeric:
    case tdpm::ErrorKind::degenerate_neighborhood: return exit_numeric_error;
    case tdpm::ErrorKind::disconnected_graph: return exit_disconnected;
    }
    return exit_numeric_error;
}

const std::map<std::string, tdpm::Manifold> manifold_names{
    {"swissroll", tdpm::Manifold::swiss_roll},
    {"scurve", tdpm::Manifold::s_curve},
    {"plane", tdpm::Manifold::plane},
};

/// Params CSV (one row per point) transposed into one column per point.
std::optional<tdpm::Matrix> load_params(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return tdpm::load_csv(path).values();
}

tdpm::Matrix select_columns(const tdpm::Matrix& m, const std::vector<Index>& columns) {
    tdpm::Matrix out(m.rows(), static_cast<Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) out.col(static_cast<Index>(j)) = m.col(columns[j]);
    return out;
}

ordered_json report_json(const std::string& method, ordered_json config, const tdpm::EmbeddingReport& r,
                         std::optional<double> timing_ms) {
    ordered_json j;
    j["method"] = method;
    j["config"] = std::move(config);
    j["eigenvalues"] = std::vector<double>(r.embedding.eigenvalues.begin(), r.embedding.eigenvalues.end());
    j["negative_mass"] = r.negative_mass;
    j["normalized_stress"] = r.normalized_stress;
    j["distance_correlation"] = r.distance_correlation;
    j["timing_ms"] = timing_ms ? ordered_json(*timing_ms) : ordered_json(nullptr);
    return j;
}

void write_json(const std::string& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw tdpm::IoError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

void write_embedding(const std::string& path, const tdpm::EmbeddingReport& r, const std::optional<tdpm::Matrix>& params,
                     Index input_points) {
    std::optional<tdpm::Matrix> selected;
    if (params) {
        if (params->cols() != input_points)
            throw tdpm::InvalidArgument("params file has " + std::to_string(params->cols()) + " rows, input has " +
                                        std::to_string(input_points));
        selected = select_columns(*params, r.kept);
    }
    tdpm::write_embedding_csv(path, r.embedding, selected ? &*selected : nullptr, r.kept);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Index> parse_list(const std::string& text, const char* what) {
    std::vector<Index> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw tdpm::InvalidArgument(std::string("bad entry '") + item + "' in " + what);
        out.push_back(value);
    }
    if (out.empty()) throw tdpm::InvalidArgument(std::string(what) + " is empty");
    return out;
}

struct GenerateArgs {
    std::string manifold;
    Index n = 1000;
    std::uint64_t seed = 0;
    std::string out;
    std::string params_out;
};

int run_generate(const GenerateArgs& a) {
    const auto sample = tdpm::generate(manifold_names.at(a.manifold), a.n, tdpm::Seed{a.seed});
    tdpm::write_points_csv(a.out, sample.data);
    if (!a.params_out.empty()) {
        std::vector<std::string> header;
        for (Index r = 0; r < sample.params.rows(); ++r) header.push_back("param" + std::to_string(r));
        tdpm::write_csv(a.params_out, header, sample.params);
    }
    return exit_ok;
}

struct EmbedArgs {
    std::string method = "tdpm";
    std::string input;
    std::optional<Index> k;
    Index dim = 2;
    std::optional<Index> tangent_dim;
    std::string symmetrize = "mean";
    std::optional<Index> isomap_k;
    bool largest_component = false;
    std::string out;
    std::string report;
    std::string params;
    bool timing = false;
};

int run_embed(const EmbedArgs& a) {
    const tdpm::DataMatrix data = tdpm::load_csv(a.input);
    const auto params = load_params(a.params);
    const auto start = std::chrono::steady_clock::now();

    ordered_json config;
    config["dim"] = a.dim;
    std::optional<tdpm::EmbeddingReport> report;
    if (a.method == "tdpm") {
        if (!a.k) throw tdpm::InvalidArgument("--k is required for method tdpm");
        tdpm::TdpmConfig c;
        c.k = *a.k;
        c.d = a.dim;
        c.tangent_dim = a.tangent_dim;
        c.symmetrize_mode = tdpm::parse_symmetrize_mode(a.symmetrize);
        config["k"] = c.k;
        config["tangent_dim"] = c.effective_tangent_dim();
        config["symmetrize"] = tdpm::to_string(c.symmetrize_mode);
        report = tdpm::tdpm_embed(data, c);
    } else if (a.method == "isomap") {
        const auto k = a.isomap_k ? a.isomap_k : a.k;
        if (!k) throw tdpm::InvalidArgument("--k or --isomap-k is required for method isomap");
        config["k"] = *k;
        config["largest_component"] = a.largest_component;
        report = tdpm::isomap_report(data, *k, a.dim, a.largest_component);
        if (a.largest_component) config["kept"] = report->kept.size();
    } else {
        report = tdpm::mds_report(data, a.dim);
    }
    const double ms = elapsed_ms(start);

    write_embedding(a.out, *report, params, data.size());
    if (!a.report.empty())
        write_json(a.report, report_json(a.method, std::move(config), *report, a.timing ? std::optional(ms) : std::nullopt));
    return exit_ok;
}

struct PipelineArgs {
    std::string input;
    Index h = 6;
    Index k = 12;
    Index isomap_k = 12;
    Index dim = 2;
    std::optional<Index> tangent_dim;
    std::string symmetrize = "mean";
    bool largest_component = false;
    std::string out;
    std::string report;
    std::string params;
    bool timing = false;
};

int run_pipeline(const PipelineArgs& a) {
    const tdpm::DataMatrix data = tdpm::load_csv(a.input);
    const auto params = load_params(a.params);
    const auto start = std::chrono::steady_clock::now();

    tdpm::TdpmConfig c;
    c.k = a.k;
    c.d = a.h;
    // h usually exceeds the manifold's intrinsic dimension, so the tangent
    // rank follows the final (unfolded) dimension unless given.
    c.tangent_dim = a.tangent_dim.value_or(a.dim);
    c.symmetrize_mode = tdpm::parse_symmetrize_mode(a.symmetrize);
    const tdpm::TwoStageReport r = tdpm::tdpm_then_isomap(data, c, a.isomap_k, a.dim, a.largest_component);
    const double ms = elapsed_ms(start);

    write_embedding(a.out, r.isomap, params, data.size());
    if (!a.report.empty()) {
        ordered_json config;
        config["h"] = a.h;
        config["k"] = a.k;
        config["tangent_dim"] = c.effective_tangent_dim();
        config["symmetrize"] = tdpm::to_string(c.symmetrize_mode);
        config["isomap_k"] = a.isomap_k;
        config["dim"] = a.dim;
        ordered_json j = report_json("tdpm+isomap", std::move(config), r.isomap, a.timing ? std::optional(ms) : std::nullopt);
        j["stage_one"] = report_json("tdpm", ordered_json::object(), r.tdpm, std::nullopt);
        j["stage_one"].erase("config");
        j["stage_one"].erase("timing_ms");
        write_json(a.report, j);
    }
    return exit_ok;
}

struct SweepArgs {
    std::string manifold;
    std::string k_list = "8,10,12,14";
    std::string n_list = "100,400,700,1000";
    Index dim = 2;
    std::uint64_t seed = 0;
    std::string out;
};

int run_sweep(const SweepArgs& a) {
    const auto k_values = parse_list(a.k_list, "--k-list");
    const auto n_values = parse_list(a.n_list, "--n-list");
    const Index largest = *std::max_element(n_values.begin(), n_values.end());
    const auto sample = tdpm::generate(manifold_names.at(a.manifold), largest, tdpm::Seed{a.seed});
    const tdpm::SweepResult sweep = tdpm::sensitivity_sweep(sample, k_values, n_values, a.dim);

    const std::filesystem::path dir(a.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw tdpm::IoError("cannot create directory '" + a.out + "': " + ec.message());

    std::ofstream summary(dir / "summary.csv", std::ios::binary | std::ios::trunc);
    if (!summary) throw tdpm::IoError("cannot write summary.csv in '" + a.out + "'");
    summary << "n,k,status,normalized_stress,distance_correlation,negative_mass,error\n";
    for (const tdpm::SweepCell& cell : sweep.cells) {
        summary << cell.n << ',' << cell.k << ',';
        if (cell.ok()) {
            const auto& r = *cell.report;
            summary << "ok," << tdpm::detail::format_real(r.normalized_stress) << ','
                    << tdpm::detail::format_real(r.distance_correlation) << ','
                    << tdpm::detail::format_real(r.negative_mass) << ",\n";
            const std::string name = "embedding_n" + std::to_string(cell.n) + "_k" + std::to_string(cell.k) + ".csv";
            const tdpm::Matrix params = sample.params.leftCols(cell.n);
            tdpm::write_embedding_csv((dir / name).string(), r.embedding, &params);
        } else {
            std::string message = cell.error;
            for (char& ch : message)
                if (ch == ',' || ch == '\n') ch = ';';
            summary << tdpm::to_string(*cell.error_kind) << ",,,," << message << '\n';
        }
    }

    std::ofstream shifts(dir / "shifts.csv", std::ios::binary | std::ios::trunc);
    if (!shifts) throw tdpm::IoError("cannot write shifts.csv in '" + a.out + "'");
    shifts << "n,k_from,k_to,procrustes\n";
    for (const tdpm::AdjacentShift& s : sweep.shifts)
        shifts << s.n << ',' << s.k_from << ',' << s.k_to << ',' << tdpm::detail::format_real(s.procrustes) << '\n';
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tangent distance preserving mapping and ISOMAP embeddings"};
    app.require_subcommand(1);
    const auto manifolds = CLI::IsMember(std::vector<std::string>{"swissroll", "scurve", "plane"});

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Sample a synthetic manifold to CSV");
    generate->add_option("--manifold", gen.manifold, "swissroll | scurve | plane")->required()->check(manifolds);
    generate->add_option("--n", gen.n, "Number of points")->required();
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--out", gen.out, "Output CSV of ambient coordinates")->required();
    generate->add_option("--params-out", gen.params_out, "Optional CSV of intrinsic parameters");

    EmbedArgs emb;
    auto* embed = app.add_subcommand("embed", "Embed a CSV point cloud");
    embed->add_option("--method", emb.method, "tdpm | isomap | mds")
        ->check(CLI::IsMember(std::vector<std::string>{"tdpm", "isomap", "mds"}));
    embed->add_option("--input", emb.input, "Input CSV, one point per row")->required();
    embed->add_option("--k", emb.k, "Neighbor count");
    embed->add_option("--dim", emb.dim, "Embedding dimension")->required();
    embed->add_option("--tangent-dim", emb.tangent_dim, "Tangent-space rank (defaults to --dim)");
    embed->add_option("--symmetrize", emb.symmetrize, "mean | min | max")
        ->check(CLI::IsMember(std::vector<std::string>{"mean", "min", "max"}));
    embed->add_option("--isomap-k", emb.isomap_k, "Neighbor count for ISOMAP (defaults to --k)");
    embed->add_flag("--largest-component", emb.largest_component, "Embed only the largest graph component");
    embed->add_option("--out", emb.out, "Output embedding CSV")->required();
    embed->add_option("--report", emb.report, "Optional JSON report");
    embed->add_option("--params", emb.params, "Optional intrinsic-parameter CSV appended to the output");
    embed->add_flag("--timing", emb.timing, "Record wall-clock timing in the report");

    PipelineArgs pipe;
    auto* pipeline = app.add_subcommand("pipeline", "TDPM to h dimensions, then ISOMAP");
    pipeline->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    pipeline->add_option("--input", pipe.input, "Input CSV, one point per row")->required();
    pipeline->add_option("--h", pipe.h, "Stage-one TDPM dimension")->capture_default_str();
    pipeline->add_option("--k", pipe.k, "TDPM neighbor count")->capture_default_str();
    pipeline->add_option("--isomap-k", pipe.isomap_k, "ISOMAP neighbor count")->capture_default_str();
    pipeline->add_option("--dim", pipe.dim, "Final embedding dimension")->capture_default_str();
    pipeline->add_option("--tangent-dim", pipe.tangent_dim, "Tangent-space rank (defaults to --dim)");
    pipeline->add_option("--symmetrize", pipe.symmetrize, "mean | min | max")
        ->check(CLI::IsMember(std::vector<std::string>{"mean", "min", "max"}));
    pipeline->add_flag("--largest-component", pipe.largest_component, "Embed only the largest graph component");
    pipeline->add_option("--out", pipe.out, "Output embedding CSV")->required();
    pipeline->add_option("--report", pipe.report, "Optional JSON report");
    pipeline->add_option("--params", pipe.params, "Optional intrinsic-parameter CSV appended to the output");
    pipeline->add_flag("--timing", pipe.timing, "Record wall-clock timing in the report");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "TDPM over a grid of k and n");
    sweep->add_option("--manifold", sw.manifold, "swissroll | scurve")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>{"swissroll", "scurve"}));
    sweep->add_option("--k-list", sw.k_list, "Comma-separated neighbor counts")->capture_default_str();
    sweep->add_option("--n-list", sw.n_list, "Comma-separated sample sizes")->capture_default_str();
    sweep->add_option("--dim", sw.dim, "Embedding dimension")->capture_default_str();
    sweep->add_option("--seed", sw.seed, "Random seed");
    sweep->add_option("--out", sw.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid_arguments;
    }

    try {
        if (*generate) return run_generate(gen);
        if (*embed) return run_embed(emb);
        if (*pipeline) return run_pipeline(pipe);
        if (*sweep) return run_sweep(sw);
    } catch (const tdpm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return exit_invalid_arguments;
}
