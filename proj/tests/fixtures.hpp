// SPDX-License-Identifier: Apache-2.0
//
// Synthetic experiment responses with planted Wrapped - Standard effects.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dubois/dataset.hpp"
#include "dubois/stats.hpp"

namespace fixtures {

inline constexpr int kDatasets = 10;

/// Geometric series with distinct values.
inline std::vector<dubois::Dataset> planted_datasets() {
    std::vector<dubois::Dataset> out;
    for (int t = 0; t < kDatasets; ++t) {
        const double ratio = 1.1 + 0.4 * t;
        std::vector<dubois::Category> cats;
        for (int i = 0; i < 6; ++i) {
            cats.push_back({std::string(1, static_cast<char>('a' + i)), std::round(10000.0 / std::pow(ratio, i)) + 1});
        }
        out.emplace_back("d" + std::to_string(t), std::move(cats));
    }
    return out;
}

/// Each participant sees every dataset on both chart types and answers
/// identify_min, identify_max and ratio_max_min. identify_min is correct on
/// the first k datasets for standard and k + 2 for wrapped (a 20-point gap);
/// identify_max is wrong only for d0 on standard charts. Ratio estimates have
/// a log absolute error exactly 1 lower on wrapped charts. Baselines vary by
/// participant so effect sizes are finite.
inline std::vector<dubois::TrialResponse> planted_responses(int participants = 24) {
    using namespace dubois;
    std::vector<TrialResponse> out;
    const auto datasets = planted_datasets();
    for (int p = 0; p < participants; ++p) {
        const std::string pid = "p" + std::to_string(100 + p);
        const int k = 3 + p % 5;
        const double std_lae = 2.0 + (p % 4) * 0.5;
        for (int t = 0; t < kDatasets; ++t) {
            const auto& d = datasets[static_cast<std::size_t>(t)];
            const auto min_label = std::get<std::string>(task_truth(d, Task::IdentifyMin));
            const auto max_label = std::get<std::string>(task_truth(d, Task::IdentifyMax));
            const double ratio = std::get<double>(task_truth(d, Task::RatioMaxMin));
            for (ChartKind kind : {ChartKind::Standard, ChartKind::Wrapped}) {
                const bool is_std = kind == ChartKind::Standard;
                TrialResponse base;
                base.participant_id = pid;
                base.dataset_id = d.id();
                base.chart_type = kind;

                TrialResponse id_min = base;
                id_min.task = Task::IdentifyMin;
                id_min.response_label = t < (is_std ? k : k + 2) ? min_label : "c";
                id_min.elapsed_ms = 4000 + 100 * t + (is_std ? 0 : 500);
                out.push_back(id_min);

                TrialResponse id_max = base;
                id_max.task = Task::IdentifyMax;
                id_max.response_label = is_std && t == 0 ? "c" : max_label;
                id_max.elapsed_ms = 3000 + 37 * p;
                out.push_back(id_max);

                const double lae = is_std ? std_lae : std_lae - 1.0;
                TrialResponse est = base;
                est.task = Task::RatioMaxMin;
                est.response_value = ratio + (std::exp2(lae) - 0.125);
                est.elapsed_ms = 9000 + 11 * t;
                out.push_back(est);
            }
        }
    }
    return out;
}

}  // namespace fixtures
