#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdpm/dataset.hpp"
#include "tdpm/isomap.hpp"
#include "tdpm/mds.hpp"
#include "tdpm/metrics.hpp"
#include "tdpm/neighbors.hpp"
#include "tdpm/tangent.hpp"

namespace tdpm {

struct TdpmConfig {
    Index k = 12;
    Index d = 2;
    std::optional<Index> tangent_dim;  // defaults to d
    SymmetrizeMode symmetrize_mode = SymmetrizeMode::mean;

    Index effective_tangent_dim() const { return tangent_dim.value_or(d); }
};

/// An embedding together with the distances it was fit to and quality
/// metrics comparing the two.
struct EmbeddingReport {
    Embedding embedding;
    DistanceMatrix target;
    double normalized_stress = 0.0;
    double distance_correlation = 0.0;
    double negative_mass = 0.0;
    std::vector<Index> kept;  // original index of each embedded point
};

inline EmbeddingReport make_report(Embedding embedding, DistanceMatrix target, std::vector<Index> kept = {}) {
    const double stress = normalized_stress(target, embedding);
    const double corr = distance_correlation(target, embedded_distances(embedding));
    const double neg = embedding.negative_mass;
    if (kept.empty()) {
        kept.resize(static_cast<std::size_t>(embedding.size()));
        for (Index i = 0; i < embedding.size(); ++i) kept[i] = i;
    }
    return {std::move(embedding), std::move(target), stress, corr, neg, std::move(kept)};
}

/// kNN -> tangent distance matrix -> symmetrize -> classical MDS.
inline EmbeddingReport tdpm_embed(const DataMatrix& data, const TdpmConfig& config) {
    if (config.d < 1) throw InvalidArgument("embedding dimension must be at least 1");
    const NeighborIndex nn = run_stage("neighbors", [&] { return knn(data, config.k); });
    const TangentDistanceMatrix td =
        run_stage("tangent", [&] { return tangent_distance_matrix(data, nn, config.effective_tangent_dim()); });
    DistanceMatrix sym = run_stage("symmetrize", [&] { return symmetrize(td, config.symmetrize_mode); });
    Embedding embedding = run_stage("mds", [&] { return classical_mds(sym, config.d); });
    return make_report(std::move(embedding), std::move(sym));
}

inline EmbeddingReport isomap_report(const DataMatrix& data, Index k, Index d, bool largest_component = false) {
    IsomapResult r = isomap(data, k, d, largest_component);
    return make_report(std::move(r.embedding), std::move(r.geodesic), std::move(r.kept));
}

/// Classical MDS on the Euclidean distances of the data.
inline EmbeddingReport mds_report(const DataMatrix& data, Index d) {
    DistanceMatrix target = pairwise_distances(data);
    Embedding embedding = run_stage("mds", [&] { return classical_mds(target, d); });
    return make_report(std::move(embedding), std::move(target));
}

struct TwoStageReport {
    EmbeddingReport tdpm;    // h-dimensional structure-preserving stage
    EmbeddingReport isomap;  // final unfolding of the stage-one coordinates
};

/// TDPM to config.d (= h) dimensions, then ISOMAP of those coordinates to
/// final_d dimensions.
inline TwoStageReport tdpm_then_isomap(const DataMatrix& data, const TdpmConfig& config, Index isomap_k,
                                       Index final_d, bool largest_component = false) {
    EmbeddingReport first = run_stage("tdpm", [&] { return tdpm_embed(data, config); });
    EmbeddingReport second = run_stage("isomap", [&] {
        const DataMatrix stage_one(first.embedding.coordinates);
        return isomap_report(stage_one, isomap_k, final_d, largest_component);
    });
    return {std::move(first), std::move(second)};
}

struct SweepCell {
    Index k = 0;
    Index n = 0;
    std::optional<EmbeddingReport> report;
    std::optional<ErrorKind> error_kind;
    std::string error;

    bool ok() const noexcept { return report.has_value(); }
};

/// Procrustes discrepancy between the embeddings of two neighboring k
/// values at the same n.
struct AdjacentShift {
    Index n = 0;
    Index k_from = 0;
    Index k_to = 0;
    double procrustes = 0.0;
};

struct SweepResult {
    std::vector<SweepCell> cells;  // n-major, k-minor, in the order given
    std::vector<AdjacentShift> shifts;

    const SweepCell* find(Index k, Index n) const {
        for (const SweepCell& c : cells)
            if (c.k == k && c.n == n) return &c;
        return nullptr;
    }
};

/// Runs TDPM on prefixes of one sample for every (k, n). Failing cells are
/// recorded and do not stop the sweep.
inline SweepResult sensitivity_sweep(const ManifoldSample& sample, const std::vector<Index>& k_values,
                                     const std::vector<Index>& n_values, Index d) {
    SweepResult out;
    out.cells.reserve(k_values.size() * n_values.size());  // keeps `previous` valid
    for (Index n : n_values) {
        const SweepCell* previous = nullptr;
        for (Index k : k_values) {
            SweepCell cell;
            cell.k = k;
            cell.n = n;
            try {
                const DataMatrix subset = sample.data.prefix(n);
                TdpmConfig config;
                config.k = k;
                config.d = d;
                cell.report = tdpm_embed(subset, config);
            } catch (const Error& e) {
                cell.error_kind = e.kind();
                cell.error = e.what();
            }
            out.cells.push_back(std::move(cell));
            const SweepCell& current = out.cells.back();
            if (current.ok() && previous && previous->ok())
                out.shifts.push_back({n, previous->k, k,
                                      procrustes_error(previous->report->embedding.coordinates,
                                                       current.report->embedding.coordinates)});
            previous = &out.cells.back();
        }
    }
    return out;
}

}  // namespace tdpm
