// SPDX-License-Identifier: Apache-2.0
//
// Random categorical datasets, binned on the normalized-entropy x H-spread
// grid, with one dataset sampled per occupied cell.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "dubois/dataset.hpp"
#include "dubois/metrics.hpp"
#include "dubois/rng.hpp"

namespace dubois {

/// sigma ~ U(lo, hi) per dataset, then value_i = max(1, round(exp(sigma * Z_i))).
struct LogNormalGenerator {
    double sigma_lo = 0.1;
    double sigma_hi = 3.0;
};

/// Produces `n` non-negative values from the given stream.
using CustomGenerator = std::function<std::vector<double>(Rng& rng, std::size_t n)>;

using Generator = std::variant<LogNormalGenerator, CustomGenerator>;

struct SimConfig {
    std::size_t dataset_count = 10'000;
    std::size_t categories_per_dataset = 15;
    Generator generator = LogNormalGenerator{};
    std::uint64_t seed = 7;
    BinConfig bins;
    unsigned threads = 1;

    /// Throws Error(InvalidConfig).
    void validate() const;
};

struct Cell {
    int entropy_bin = 0;
    int hspread_bin = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct SimulationGrid {
    /// cells[entropy_bin][hspread_bin] -> indices into `datasets`, ascending.
    std::array<std::array<std::vector<std::size_t>, kBinCount>, kBinCount> cells;
    /// Normalized entropy below the first bin edge.
    std::vector<std::size_t> out_of_range;
    std::vector<Dataset> datasets;
    std::vector<DataProfile> profiles;
    BinConfig bins;

    std::size_t occupied_cells() const;
    std::size_t count(Cell c) const { return cells[c.entropy_bin][c.hspread_bin].size(); }
};

struct BinSample {
    Cell cell;
    Dataset dataset;
};

/// Deterministic in (cfg.seed, index) alone.
Dataset generate_dataset(const SimConfig& cfg, std::size_t index);

SimulationGrid simulate(const SimConfig& cfg);

/// One uniformly chosen dataset per occupied cell (entropy-major order),
/// with its categories shuffled. Deterministic in `seed`.
std::vector<BinSample> sample_bins(const SimulationGrid& grid, std::uint64_t seed);

/// "sim_<entropy label>_<hspread label>.csv"
std::string sample_file_name(const BinConfig& bins, Cell cell);

}  // namespace dubois
