// SPDX-License-Identifier: Apache-2.0
#include "dubois/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dubois/error.hpp"

namespace dubois {
namespace {

std::string format_edge(double v, bool force_decimal) {
    char buf[32];
    if (force_decimal && v == std::floor(v)) {
        std::snprintf(buf, sizeof buf, "%.1f", v);
    } else {
        std::snprintf(buf, sizeof buf, "%g", v);
    }
    return buf;
}

double median_of_sorted(std::span<const double> sorted) {
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

}  // namespace

std::optional<int> BinConfig::entropy_bin(double normalized_entropy) const {
    if (normalized_entropy < entropy_edges[0]) return std::nullopt;
    for (int b = kBinCount - 1; b >= 0; --b) {
        if (normalized_entropy >= entropy_edges[b]) return b;
    }
    return std::nullopt;
}

int BinConfig::hspread_bin(double h_spread) const {
    for (int b = kBinCount - 1; b > 0; --b) {
        if (h_spread >= hspread_edges[b]) return b;
    }
    return 0;
}

std::string BinConfig::entropy_label(int bin) const {
    return format_edge(entropy_edges[bin], false) + "-" + format_edge(entropy_edges[bin + 1], true);
}

std::string BinConfig::hspread_label(int bin) const {
    if (bin == kBinCount - 1 && std::isinf(hspread_edges[kBinCount])) {
        return format_edge(hspread_edges[bin], false) + "+";
    }
    return format_edge(hspread_edges[bin], false) + "-" + format_edge(hspread_edges[bin + 1], false);
}

std::string_view to_string(RecommendationReason reason) {
    switch (reason) {
        case RecommendationReason::LowEntropy: return "low_entropy";
        case RecommendationReason::HighHSpread: return "high_hspread";
    }
    return "unknown";
}

double entropy(const Dataset& d) {
    const double total = d.total();
    if (!(total > 0.0)) throw Error(ErrorCode::InvalidDataset, "entropy: all values are 0");
    double h = 0.0;
    for (const auto& c : d.categories()) {
        if (c.value <= 0.0) continue;  // 0 * log2(0) := 0
        const double p = c.value / total;
        h -= p * std::log2(p);
    }
    return std::max(h, 0.0);
}

double normalized_entropy(const Dataset& d) {
    if (d.size() < 2) throw Error(ErrorCode::InvalidDataset, "normalized entropy needs N >= 2");
    const double h = entropy(d) / std::log2(static_cast<double>(d.size()));
    return std::clamp(h, 0.0, 1.0);
}

Quartiles quartiles(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "quartiles of an empty list");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const std::size_t half = (n + 1) / 2;
    const std::span<const double> all(sorted);
    return Quartiles{
        .q1 = median_of_sorted(all.first(half)),
        .median = median_of_sorted(all),
        .q3 = median_of_sorted(all.last(half)),
    };
}

double h_spread(const Dataset& d) {
    const auto values = d.values();
    const Quartiles q = quartiles(values);
    const double top = d.max_value();
    const double iqr = q.q3 - q.q1;
    if (iqr <= 0.0) {
        return top > q.q3 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return (top - q.q3) / iqr;
}

DataProfile profile(const Dataset& d, const BinConfig& bins) {
    DataProfile p;
    p.entropy_bits = entropy(d);
    p.normalized_entropy = normalized_entropy(d);
    const auto values = d.values();
    p.quartiles = quartiles(values);
    p.h_spread = h_spread(d);
    p.entropy_bin = bins.entropy_bin(p.normalized_entropy);
    p.hspread_bin = bins.hspread_bin(p.h_spread);
    p.entropy_bin_label = p.entropy_bin ? bins.entropy_label(*p.entropy_bin) : std::string(kBelowRangeLabel);
    p.hspread_bin_label = bins.hspread_label(p.hspread_bin);
    return p;
}

Recommendation recommend(const DataProfile& p, double entropy_cutoff, double hspread_cutoff) {
    Recommendation r;
    r.entropy_cutoff = entropy_cutoff;
    r.hspread_cutoff = hspread_cutoff;
    if (p.normalized_entropy < entropy_cutoff) r.reasons.push_back(RecommendationReason::LowEntropy);
    if (p.h_spread > hspread_cutoff) r.reasons.push_back(RecommendationReason::HighHSpread);
    r.use_wrapped = !r.reasons.empty();
    return r;
}

Recommendation recommend(const Dataset& d, double entropy_cutoff, double hspread_cutoff) {
    return recommend(profile(d), entropy_cutoff, hspread_cutoff);
}

}  // namespace dubois
