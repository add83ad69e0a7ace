// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "dubois/error.hpp"
#include "dubois/simulator.hpp"
#include "oracles.hpp"

using namespace dubois;

namespace {

SimConfig small(std::size_t count, std::uint64_t seed = 7) {
    SimConfig cfg;
    cfg.dataset_count = count;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("generate_dataset is deterministic per (seed, index)") {
    const SimConfig cfg = small(100);
    CHECK(generate_dataset(cfg, 5) == generate_dataset(cfg, 5));
    CHECK(generate_dataset(cfg, 5).values() != generate_dataset(cfg, 6).values());
    SimConfig other = cfg;
    other.seed = 8;
    CHECK(generate_dataset(cfg, 5).values() != generate_dataset(other, 5).values());
    const Dataset d = generate_dataset(cfg, 0);
    CHECK(d.size() == 15);
    for (double v : d.values()) {
        CHECK(v >= 1.0);
        CHECK(v == std::floor(v));
    }
}

TEST_CASE("tiny sigma gives near-uniform datasets") {
    SimConfig cfg = small(50);
    cfg.generator = LogNormalGenerator{0.01, 0.011};
    for (std::size_t i = 0; i < 50; ++i) {
        const auto v = generate_dataset(cfg, i).values();
        CHECK(oracle::entropy_bits(v) / std::log2(static_cast<double>(v.size())) > 0.99);
    }
}

TEST_CASE("simulate: partition and totality") {
    const auto grid = simulate(small(1));
    CHECK(grid.datasets.size() == 1);
    CHECK(grid.occupied_cells() + grid.out_of_range.size() == 1);

    const auto big = simulate(small(2000));
    std::set<std::size_t> seen;
    std::size_t total = 0;
    for (int e = 0; e < kBinCount; ++e) {
        for (int h = 0; h < kBinCount; ++h) {
            for (std::size_t i : big.cells[e][h]) {
                CHECK(seen.insert(i).second);
                CHECK(big.profiles[i].entropy_bin == e);
                CHECK(big.profiles[i].hspread_bin == h);
            }
            total += big.cells[e][h].size();
        }
    }
    for (std::size_t i : big.out_of_range) {
        CHECK(seen.insert(i).second);
        CHECK(big.profiles[i].normalized_entropy < 0.45);
    }
    CHECK(total + big.out_of_range.size() == 2000);
}

TEST_CASE("all-uniform generator lands in a single cell") {
    SimConfig cfg = small(200);
    cfg.generator = CustomGenerator([](Rng&, std::size_t n) { return std::vector<double>(n, 4.0); });
    const auto grid = simulate(cfg);
    CHECK(grid.occupied_cells() == 1);
    CHECK(grid.count({3, 0}) == 200);
}

TEST_CASE("parallel simulation equals serial") {
    SimConfig cfg = small(3000, 99);
    const auto serial = simulate(cfg);
    cfg.threads = 4;
    const auto parallel = simulate(cfg);
    CHECK(serial.datasets == parallel.datasets);
    CHECK(serial.cells == parallel.cells);
    CHECK(serial.out_of_range == parallel.out_of_range);
}

TEST_CASE("sample_bins") {
    const auto grid = simulate(small(1500));
    const auto a = sample_bins(grid, 11);
    const auto b = sample_bins(grid, 11);
    REQUIRE(a.size() == grid.occupied_cells());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].dataset == b[i].dataset);
        const auto p = profile(a[i].dataset, grid.bins);
        CHECK(p.entropy_bin == a[i].cell.entropy_bin);
        CHECK(p.hspread_bin == a[i].cell.hspread_bin);
    }
    // Shuffled copy of a member of the cell.
    const auto& first = a.front();
    const auto& members = grid.cells[first.cell.entropy_bin][first.cell.hspread_bin];
    bool found = false;
    for (std::size_t i : members) {
        if (grid.datasets[i].id() == first.dataset.id()) {
            auto x = grid.datasets[i].values();
            auto y = first.dataset.values();
            std::sort(x.begin(), x.end());
            std::sort(y.begin(), y.end());
            found = x == y;
        }
    }
    CHECK(found);
}

TEST_CASE("sample_bins with one dataset per cell picks it") {
    SimConfig cfg = small(1);
    const auto grid = simulate(cfg);
    const auto s = sample_bins(grid, 1);
    CHECK(s.size() == grid.occupied_cells());
    if (!s.empty()) CHECK(s[0].dataset.id() == grid.datasets[0].id());
}

TEST_CASE("sim config validation") {
    SimConfig cfg = small(0);
    CHECK_THROWS_AS(simulate(cfg), Error);
    cfg = small(10);
    cfg.generator = LogNormalGenerator{2.0, 1.0};
    CHECK_THROWS_AS(simulate(cfg), Error);
    cfg.generator = LogNormalGenerator{0.0, 1.0};
    CHECK_THROWS_AS(simulate(cfg), Error);
}

TEST_CASE("sample file names") {
    CHECK(sample_file_name(BinConfig{}, {0, 3}) == "sim_0.45-0.6_4.5+.csv");
    CHECK(sample_file_name(BinConfig{}, {3, 0}) == "sim_0.9-1.0_0-1.5.csv");
}
