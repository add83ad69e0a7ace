// SPDX-License-Identifier: Apache-2.0
#include "dubois/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "dubois/error.hpp"

namespace dubois {
namespace {

std::vector<double> draw_lognormal(const LogNormalGenerator& g, Rng& rng, std::size_t n) {
    const double sigma = rng.uniform(g.sigma_lo, g.sigma_hi);
    std::vector<double> values(n);
    for (auto& v : values) v = std::max(1.0, std::round(std::exp(sigma * rng.normal())));
    return values;
}

std::string dataset_id(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "sim_%05zu", index);
    return buf;
}

}  // namespace

void SimConfig::validate() const {
    if (dataset_count < 1) throw Error(ErrorCode::InvalidConfig, "dataset_count must be >= 1");
    if (categories_per_dataset < 2) throw Error(ErrorCode::InvalidConfig, "categories_per_dataset must be >= 2");
    if (const auto* g = std::get_if<LogNormalGenerator>(&generator)) {
        if (!(g->sigma_lo > 0.0) || !(g->sigma_lo < g->sigma_hi) || !std::isfinite(g->sigma_hi)) {
            throw Error(ErrorCode::InvalidConfig, "sigma range must satisfy 0 < lo < hi");
        }
    } else if (!std::get<CustomGenerator>(generator)) {
        throw Error(ErrorCode::InvalidConfig, "custom generator is empty");
    }
}

std::size_t SimulationGrid::occupied_cells() const {
    std::size_t n = 0;
    for (const auto& row : cells) {
        for (const auto& c : row) n += c.empty() ? 0 : 1;
    }
    return n;
}

Dataset generate_dataset(const SimConfig& cfg, std::size_t index) {
    Rng rng(cfg.seed, index);
    std::vector<double> values;
    if (const auto* g = std::get_if<LogNormalGenerator>(&cfg.generator)) {
        values = draw_lognormal(*g, rng, cfg.categories_per_dataset);
    } else {
        values = std::get<CustomGenerator>(cfg.generator)(rng, cfg.categories_per_dataset);
    }
    return make_dataset(dataset_id(index), values);
}

SimulationGrid simulate(const SimConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.dataset_count;
    std::vector<std::optional<Dataset>> generated(n);
    std::vector<DataProfile> profiles(n);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            generated[i] = generate_dataset(cfg, i);
            profiles[i] = profile(*generated[i], cfg.bins);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
    }

    SimulationGrid grid;
    grid.bins = cfg.bins;
    grid.datasets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid.datasets.push_back(std::move(*generated[i]));
        const DataProfile& p = profiles[i];
        if (p.entropy_bin) {
            grid.cells[*p.entropy_bin][p.hspread_bin].push_back(i);
        } else {
            grid.out_of_range.push_back(i);
        }
    }
    grid.profiles = std::move(profiles);
    return grid;
}

std::vector<BinSample> sample_bins(const SimulationGrid& grid, std::uint64_t seed) {
    std::vector<BinSample> out;
    for (int e = 0; e < kBinCount; ++e) {
        for (int h = 0; h < kBinCount; ++h) {
            const auto& members = grid.cells[e][h];
            if (members.empty()) continue;
            Rng rng(seed, static_cast<std::uint64_t>(e * kBinCount + h));
            const Dataset& chosen = grid.datasets[members[rng.below(members.size())]];
            std::vector<std::size_t> order(chosen.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            rng.shuffle(std::span<std::size_t>(order));
            out.push_back({Cell{e, h}, chosen.permuted(order)});
        }
    }
    return out;
}

std::string sample_file_name(const BinConfig& bins, Cell cell) {
    return "sim_" + bins.entropy_label(cell.entropy_bin) + "_" + bins.hspread_label(cell.hspread_bin) + ".csv";
}

}  // namespace dubois
