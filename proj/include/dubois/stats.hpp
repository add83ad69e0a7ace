// SPDX-License-Identifier: Apache-2.0
//
// Scoring and estimation for graphical-perception experiments: task ground
// truths, identification accuracy, log absolute error, participant-level
// percentile bootstrap CIs and Cohen's d. Differences are always reported
// as Wrapped minus Standard.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dubois/dataset.hpp"
#include "dubois/layout.hpp"
#include "dubois/metrics.hpp"

namespace dubois {

enum class Task { IdentifyMax, IdentifyMin, Identify2ndMax, Identify2ndMin, RatioMaxMin, Ratio2ndMinMin };

inline constexpr Task kAllTasks[] = {Task::IdentifyMax,    Task::IdentifyMin, Task::Identify2ndMax,
                                     Task::Identify2ndMin, Task::RatioMaxMin, Task::Ratio2ndMinMin};

std::string_view to_string(Task task);
/// Accepts the response-file spellings (identify_max, ..., ratio_2ndmin_min).
std::optional<Task> parse_task(std::string_view text);
std::optional<ChartKind> parse_chart_kind(std::string_view text);
bool is_identification(Task task) noexcept;

struct TrialResponse {
    std::string participant_id;
    std::string dataset_id;
    ChartKind chart_type = ChartKind::Standard;
    Task task = Task::IdentifyMax;
    std::optional<std::string> response_label;
    std::optional<double> response_value;
    std::int64_t elapsed_ms = 0;

    /// Exactly one of label/value, matching the task kind; elapsed_ms >= 0.
    void validate() const;

    friend bool operator==(const TrialResponse&, const TrialResponse&) = default;
};

/// Either the correct label (identification tasks) or the true ratio.
using Truth = std::variant<std::string, double>;

/// Throws AmbiguousTruth when the relevant order statistic is tied and
/// DivisionByZero when a ratio's denominator is 0.
Truth task_truth(const Dataset& d, Task task);

/// Fraction of responses whose label equals the paired truth label.
/// Throws EmptyInput, TaskMismatch (ratio task or non-label truth) or
/// LengthMismatch.
double identification_accuracy(std::span<const TrialResponse> responses, std::span<const Truth> truths);

/// log2(|estimate - truth| + 1/8).
double log_abs_error(double estimate, double truth) noexcept;

/// A scored trial: `score` is 100/0 for identification tasks (percentage
/// points) and the log absolute error for ratio tasks.
struct ScoredResponse {
    TrialResponse response;
    double score = 0.0;
    std::string entropy_bin;
    std::string hspread_bin;
};

struct ParticipantMean {
    std::string participant_id;
    std::string level;
    double mean = 0.0;
    std::size_t count = 0;

    friend bool operator==(const ParticipantMean&, const ParticipantMean&) = default;
};

using LevelOf = std::function<std::string(const ScoredResponse&)>;
using MetricOf = std::function<double(const ScoredResponse&)>;

/// Mean metric per (participant, level), sorted by participant then level.
std::vector<ParticipantMean> participant_means(std::span<const ScoredResponse> rows, const LevelOf& level_of,
                                               const MetricOf& metric_of = {});

struct Interval {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

/// Percentile bootstrap of the mean. Resample i draws from its own stream
/// derived from (seed, i). Throws EmptyInput.
Interval bootstrap_ci(std::span<const double> values, int resamples = 10'000, double level = 0.95,
                      std::uint64_t seed = 0);

/// Bootstrap of mean(b) - mean(a) resampling the two groups independently.
Interval bootstrap_diff_ci(std::span<const double> a, std::span<const double> b, int resamples = 10'000,
                           double level = 0.95, std::uint64_t seed = 0);

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator).
double sample_sd(std::span<const double> values);

/// (mean(b) - mean(a)) / pooled SD. Throws EmptyInput (fewer than 2 per
/// group) or ZeroVariance.
double cohens_d_between(std::span<const double> a, std::span<const double> b);

enum class PairedVariant { Dav, Dz };
std::string_view to_string(PairedVariant v);

/// Dav: (mean(b) - mean(a)) / ((sd_a + sd_b) / 2); Dz: mean(b - a) / sd(b - a).
double cohens_d_paired(std::span<const double> a, std::span<const double> b,
                       PairedVariant variant = PairedVariant::Dav);

enum class Design { Within, Between };
std::string_view to_string(Design d);

struct AnalysisConfig {
    int resamples = 10'000;
    double level = 0.95;
    std::uint64_t seed = 0;
    Design design = Design::Within;
    PairedVariant paired_variant = PairedVariant::Dav;
    /// Drop participants with more than this many wrong IdentifyMax trials.
    std::optional<int> screen_max_errors;
    /// Drop ratio trials whose matching identification trials were wrong.
    bool exclude_wrong_identification = false;
    BinConfig bins;
};

struct GroupSummary {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;  // participants
};

struct Comparison {
    double mean_difference = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;  // participants contributing (paired ones for within designs)
    std::optional<double> cohens_d;
    std::string d_note;  // why d is missing, if it is
    bool degenerate = false;  // fewer than two participants: CI collapses to the point
};

/// One (metric, task filter, factor, level) cell of the report.
struct ReportRow {
    std::string metric;  // accuracy | log_abs_error | elapsed_s
    std::string task;    // a task name or "all"
    std::string factor;  // all | entropy_bin | hspread_bin
    std::string level;
    std::optional<GroupSummary> standard;
    std::optional<GroupSummary> wrapped;
    std::optional<Comparison> difference;
};

struct ExclusionCounts {
    std::size_t ambiguous_truth = 0;
    std::size_t division_by_zero = 0;
    std::size_t wrong_identification = 0;  // ratio trials removed by exclude_wrong_identification
    std::size_t screened_responses = 0;
    std::vector<std::string> screened_participants;
};

struct AnalysisReport {
    std::vector<ReportRow> rows;
    ExclusionCounts excluded;
    std::size_t responses_total = 0;
    std::size_t responses_scored = 0;
    std::size_t participants = 0;
    AnalysisConfig config;
};

/// Full pipeline: resolve datasets, screen participants, score, aggregate
/// per participant, bootstrap, effect sizes. Throws UnknownDataset when a
/// response names a dataset that is not supplied.
AnalysisReport analyze(std::span<const TrialResponse> responses, std::span<const Dataset> datasets,
                       const AnalysisConfig& cfg = {});

inline constexpr std::string_view kLogAbsErrorFormula = "log2(|estimate - truth| + 1/8)";
inline constexpr std::string_view kBootstrapMethod = "percentile";

}  // namespace dubois
