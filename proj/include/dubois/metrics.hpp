// SPDX-License-Identifier: Apache-2.0
//
// Data-characterization metrics for categorical datasets: Shannon entropy
// of the category proportions, its normalization by log2(N), and the
// H-spread of the largest value relative to the Tukey hinges. Together
// they drive the wrapped-vs-standard recommendation.
#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dubois/dataset.hpp"

namespace dubois {

inline constexpr std::string_view kQuartileMethod = "tukey_hinges";

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

/// Fixed normalized-entropy x H-spread binning. Each edge list has five
/// entries delimiting four bins; a value on an edge belongs to the upper bin.
/// The last entropy bin is closed at its top edge; the last H-spread edge
/// may be +infinity (which then belongs to the last bin).
struct BinConfig {
    std::array<double, 5> entropy_edges{0.45, 0.6, 0.75, 0.9, 1.0};
    std::array<double, 5> hspread_edges{0.0, 1.5, 3.0, 4.5, std::numeric_limits<double>::infinity()};

    /// nullopt when the normalized entropy is below the first edge.
    std::optional<int> entropy_bin(double normalized_entropy) const;
    int hspread_bin(double h_spread) const;

    std::string entropy_label(int bin) const;
    std::string hspread_label(int bin) const;
};

inline constexpr int kBinCount = 4;
inline constexpr std::string_view kBelowRangeLabel = "below-range";

struct DataProfile {
    double entropy_bits = 0.0;
    double normalized_entropy = 0.0;
    Quartiles quartiles;
    double h_spread = 0.0;
    std::optional<int> entropy_bin;  // nullopt: below-range
    int hspread_bin = 0;
    std::string entropy_bin_label;
    std::string hspread_bin_label;
    std::string_view quartile_method = kQuartileMethod;
};

enum class RecommendationReason { LowEntropy, HighHSpread };

std::string_view to_string(RecommendationReason reason);

struct Recommendation {
    bool use_wrapped = false;
    std::vector<RecommendationReason> reasons;
    double entropy_cutoff = 0.75;
    double hspread_cutoff = 4.5;
};

double entropy(const Dataset& d);
double normalized_entropy(const Dataset& d);

/// Tukey hinges: medians of the lower and upper halves of the sorted values,
/// each half including the overall median element when the count is odd.
/// Throws Error(EmptyInput) on an empty list.
Quartiles quartiles(std::span<const double> values);

/// (max - Q3) / (Q3 - Q1). A zero denominator yields 0 when max == Q3 and
/// +infinity otherwise.
double h_spread(const Dataset& d);

DataProfile profile(const Dataset& d, const BinConfig& bins = {});

Recommendation recommend(const DataProfile& p, double entropy_cutoff = 0.75,
                         double hspread_cutoff = 4.5);
Recommendation recommend(const Dataset& d, double entropy_cutoff = 0.75,
                         double hspread_cutoff = 4.5);

}  // namespace dubois
