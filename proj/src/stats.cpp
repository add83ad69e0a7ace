// SPDX-License-Identifier: Apache-2.0
#include "dubois/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "dubois/error.hpp"
#include "dubois/rng.hpp"

namespace dubois {
namespace {

struct Ranked {
    std::vector<std::size_t> ascending;
    std::span<const Category> cats;

    double value(std::size_t rank) const { return cats[ascending[rank]].value; }
    std::size_t size() const { return ascending.size(); }
};

Ranked rank(const Dataset& d) {
    Ranked r{std::vector<std::size_t>(d.size()), d.categories()};
    std::iota(r.ascending.begin(), r.ascending.end(), std::size_t{0});
    std::stable_sort(r.ascending.begin(), r.ascending.end(),
                     [&](std::size_t a, std::size_t b) { return r.cats[a].value < r.cats[b].value; });
    return r;
}

/// The element at `rank` must differ from both neighbours to be identifiable.
void require_distinct(const Ranked& r, std::size_t at, const Dataset& d, Task task) {
    const double v = r.value(at);
    const bool tied_below = at > 0 && r.value(at - 1) == v;
    const bool tied_above = at + 1 < r.size() && r.value(at + 1) == v;
    if (tied_below || tied_above) {
        throw Error(ErrorCode::AmbiguousTruth, "dataset '" + d.id() + "': " + std::string(to_string(task)) +
                                                   " is tied");
    }
}

double ratio(const Ranked& r, std::size_t num, std::size_t den, const Dataset& d) {
    if (r.value(den) == 0.0) {
        throw Error(ErrorCode::DivisionByZero, "dataset '" + d.id() + "': ratio denominator is 0");
    }
    return r.value(num) / r.value(den);
}

/// Linear interpolation between order statistics of an ascending sample.
double percentile(std::span<const double> sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

void check_bootstrap_args(int resamples, double level) {
    if (resamples < 1) throw Error(ErrorCode::InvalidConfig, "resamples must be >= 1");
    if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidConfig, "level must lie in (0, 1)");
}

double resample_mean(std::span<const double> values, Rng& rng) {
    double sum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) sum += values[rng.below(values.size())];
    return sum / static_cast<double>(values.size());
}

Interval percentile_interval(double point, std::vector<double>& stats, double level) {
    std::sort(stats.begin(), stats.end());
    const double alpha = (1.0 - level) / 2.0;
    return Interval{point, percentile(stats, alpha), percentile(stats, 1.0 - alpha)};
}

// ---- analysis pipeline -----------------------------------------------------

struct Subset {
    std::string metric;
    std::string task;
    std::string factor;
    std::string level;
    std::vector<const ScoredResponse*> rows;
    std::function<double(const ScoredResponse&)> metric_of;
};

std::string trial_key(const TrialResponse& r) {
    return r.participant_id + '\x1f' + r.dataset_id + '\x1f' + std::string(to_string(r.chart_type));
}

std::vector<std::pair<std::string, double>> means_for(std::span<const ScoredResponse* const> rows,
                                                      ChartKind kind, const MetricOf& metric_of) {
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto* r : rows) {
        if (r->response.chart_type != kind) continue;
        auto& [sum, count] = acc[r->response.participant_id];
        sum += metric_of(*r);
        ++count;
    }
    std::vector<std::pair<std::string, double>> out;
    out.reserve(acc.size());
    for (const auto& [pid, sc] : acc) out.emplace_back(pid, sc.first / static_cast<double>(sc.second));
    return out;
}

std::vector<double> values_of(const std::vector<std::pair<std::string, double>>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back(p.second);
    return out;
}

std::optional<GroupSummary> summarize(const std::vector<double>& v, const AnalysisConfig& cfg,
                                      std::uint64_t seed) {
    if (v.empty()) return std::nullopt;
    const Interval ci = bootstrap_ci(v, cfg.resamples, cfg.level, seed);
    return GroupSummary{ci.mean, ci.lo, ci.hi, v.size()};
}

Comparison compare(const std::vector<std::pair<std::string, double>>& standard,
                   const std::vector<std::pair<std::string, double>>& wrapped, const AnalysisConfig& cfg,
                   std::uint64_t seed) {
    Comparison c;
    if (cfg.design == Design::Within) {
        std::vector<double> s, w, diff;
        std::size_t j = 0;
        for (const auto& [pid, sv] : standard) {
            while (j < wrapped.size() && wrapped[j].first < pid) ++j;
            if (j < wrapped.size() && wrapped[j].first == pid) {
                s.push_back(sv);
                w.push_back(wrapped[j].second);
                diff.push_back(wrapped[j].second - sv);
            }
        }
        c.n = diff.size();
        if (diff.empty()) {
            c.d_note = "no_paired_participants";
            c.degenerate = true;
            return c;
        }
        const Interval ci = bootstrap_ci(diff, cfg.resamples, cfg.level, seed);
        c.mean_difference = ci.mean;
        c.lo = ci.lo;
        c.hi = ci.hi;
        c.degenerate = diff.size() < 2;
        if (diff.size() < 2) {
            c.d_note = "too_few_participants";
        } else {
            try {
                c.cohens_d = cohens_d_paired(s, w, cfg.paired_variant);
            } catch (const Error& e) {
                c.d_note = std::string(to_string(e.code()));
            }
        }
    } else {
        const auto s = values_of(standard);
        const auto w = values_of(wrapped);
        c.n = s.size() + w.size();
        if (s.empty() || w.empty()) {
            c.d_note = "missing_group";
            c.degenerate = true;
            return c;
        }
        const Interval ci = bootstrap_diff_ci(s, w, cfg.resamples, cfg.level, seed);
        c.mean_difference = ci.mean;
        c.lo = ci.lo;
        c.hi = ci.hi;
        c.degenerate = s.size() < 2 || w.size() < 2;
        if (c.degenerate) {
            c.d_note = "too_few_participants";
        } else {
            try {
                c.cohens_d = cohens_d_between(s, w);
            } catch (const Error& e) {
                c.d_note = std::string(to_string(e.code()));
            }
        }
    }
    return c;
}

}  // namespace

std::string_view to_string(Task task) {
    switch (task) {
        case Task::IdentifyMax: return "identify_max";
        case Task::IdentifyMin: return "identify_min";
        case Task::Identify2ndMax: return "identify_2nd_max";
        case Task::Identify2ndMin: return "identify_2nd_min";
        case Task::RatioMaxMin: return "ratio_max_min";
        case Task::Ratio2ndMinMin: return "ratio_2ndmin_min";
    }
    return "unknown";
}

std::optional<Task> parse_task(std::string_view text) {
    for (Task t : kAllTasks) {
        if (to_string(t) == text) return t;
    }
    return std::nullopt;
}

std::optional<ChartKind> parse_chart_kind(std::string_view text) {
    if (text == "standard") return ChartKind::Standard;
    if (text == "wrapped") return ChartKind::Wrapped;
    return std::nullopt;
}

bool is_identification(Task task) noexcept {
    return task != Task::RatioMaxMin && task != Task::Ratio2ndMinMin;
}

std::string_view to_string(PairedVariant v) { return v == PairedVariant::Dav ? "dav" : "dz"; }

std::string_view to_string(Design d) { return d == Design::Within ? "within" : "between"; }

void TrialResponse::validate() const {
    const bool want_label = is_identification(task);
    if (want_label && (!response_label || response_value)) {
        throw Error(ErrorCode::TaskMismatch, "identification response must carry only a label");
    }
    if (!want_label && (!response_value || response_label)) {
        throw Error(ErrorCode::TaskMismatch, "ratio response must carry only a value");
    }
    if (elapsed_ms < 0) throw Error(ErrorCode::TaskMismatch, "elapsed_ms must be >= 0");
}

Truth task_truth(const Dataset& d, Task task) {
    const Ranked r = rank(d);
    const std::size_t n = r.size();
    auto label_at = [&](std::size_t at) -> Truth {
        require_distinct(r, at, d, task);
        return r.cats[r.ascending[at]].label;
    };
    switch (task) {
        case Task::IdentifyMax: return label_at(n - 1);
        case Task::IdentifyMin: return label_at(0);
        case Task::Identify2ndMax: return label_at(n - 2);
        case Task::Identify2ndMin: return label_at(1);
        case Task::RatioMaxMin:
            require_distinct(r, n - 1, d, task);
            require_distinct(r, 0, d, task);
            return ratio(r, n - 1, 0, d);
        case Task::Ratio2ndMinMin:
            require_distinct(r, 0, d, task);
            require_distinct(r, 1, d, task);
            return ratio(r, 1, 0, d);
    }
    throw Error(ErrorCode::TaskMismatch, "unknown task");
}

double identification_accuracy(std::span<const TrialResponse> responses, std::span<const Truth> truths) {
    if (responses.empty()) throw Error(ErrorCode::EmptyInput, "no responses");
    if (responses.size() != truths.size()) throw Error(ErrorCode::LengthMismatch, "responses/truths differ in length");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < responses.size(); ++i) {
        const auto& r = responses[i];
        const auto* truth = std::get_if<std::string>(&truths[i]);
        if (!is_identification(r.task) || !truth || !r.response_label) {
            throw Error(ErrorCode::TaskMismatch, "identification accuracy needs identification responses");
        }
        correct += *r.response_label == *truth ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(responses.size());
}

double log_abs_error(double estimate, double truth) noexcept {
    return std::log2(std::fabs(estimate - truth) + 0.125);
}

std::vector<ParticipantMean> participant_means(std::span<const ScoredResponse> rows, const LevelOf& level_of,
                                               const MetricOf& metric_of) {
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> acc;
    for (const auto& r : rows) {
        auto& [sum, count] = acc[{r.response.participant_id, level_of(r)}];
        sum += metric_of ? metric_of(r) : r.score;
        ++count;
    }
    std::vector<ParticipantMean> out;
    out.reserve(acc.size());
    for (const auto& [key, sc] : acc) {
        out.push_back({key.first, key.second, sc.first / static_cast<double>(sc.second), sc.second});
    }
    return out;
}

double mean(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "mean of an empty list");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
    if (values.size() < 2) throw Error(ErrorCode::EmptyInput, "sample SD needs at least 2 values");
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

Interval bootstrap_ci(std::span<const double> values, int resamples, double level, std::uint64_t seed) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "bootstrap of an empty list");
    check_bootstrap_args(resamples, level);
    std::vector<double> stats(static_cast<std::size_t>(resamples));
    for (int i = 0; i < resamples; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        stats[static_cast<std::size_t>(i)] = resample_mean(values, rng);
    }
    return percentile_interval(mean(values), stats, level);
}

Interval bootstrap_diff_ci(std::span<const double> a, std::span<const double> b, int resamples, double level,
                           std::uint64_t seed) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyInput, "bootstrap of an empty group");
    check_bootstrap_args(resamples, level);
    std::vector<double> stats(static_cast<std::size_t>(resamples));
    for (int i = 0; i < resamples; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const double ma = resample_mean(a, rng);
        stats[static_cast<std::size_t>(i)] = resample_mean(b, rng) - ma;
    }
    return percentile_interval(mean(b) - mean(a), stats, level);
}

double cohens_d_between(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw Error(ErrorCode::EmptyInput, "Cohen's d needs >= 2 values per group");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double sa = sample_sd(a);
    const double sb = sample_sd(b);
    const double pooled = std::sqrt(((na - 1.0) * sa * sa + (nb - 1.0) * sb * sb) / (na + nb - 2.0));
    if (!(pooled > 0.0)) throw Error(ErrorCode::ZeroVariance, "pooled standard deviation is 0");
    return (mean(b) - mean(a)) / pooled;
}

double cohens_d_paired(std::span<const double> a, std::span<const double> b, PairedVariant variant) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "paired samples differ in length");
    if (a.size() < 2) throw Error(ErrorCode::EmptyInput, "paired Cohen's d needs >= 2 pairs");
    if (variant == PairedVariant::Dav) {
        const double denom = (sample_sd(a) + sample_sd(b)) / 2.0;
        if (!(denom > 0.0)) throw Error(ErrorCode::ZeroVariance, "both samples have zero variance");
        return (mean(b) - mean(a)) / denom;
    }
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = b[i] - a[i];
    const double sd = sample_sd(diff);
    if (!(sd > 0.0)) throw Error(ErrorCode::ZeroVariance, "paired differences have zero variance");
    return mean(diff) / sd;
}

AnalysisReport analyze(std::span<const TrialResponse> responses, std::span<const Dataset> datasets,
                       const AnalysisConfig& cfg) {
    check_bootstrap_args(cfg.resamples, cfg.level);
    AnalysisReport report;
    report.config = cfg;
    report.responses_total = responses.size();

    struct Resolved {
        const Dataset* dataset;
        DataProfile profile;
    };
    std::unordered_map<std::string, Resolved> by_id;
    for (const auto& d : datasets) by_id.insert_or_assign(d.id(), Resolved{&d, profile(d, cfg.bins)});

    // Canonical order.
    std::vector<TrialResponse> sorted(responses.begin(), responses.end());
    for (const auto& r : sorted) {
        r.validate();
        if (!by_id.contains(r.dataset_id)) {
            throw Error(ErrorCode::UnknownDataset, "response references unknown dataset '" + r.dataset_id + "'");
        }
    }
    auto as_tuple = [](const TrialResponse& r) {
        return std::make_tuple(std::cref(r.participant_id), std::cref(r.dataset_id), r.chart_type, r.task,
                               std::cref(r.response_label), std::cref(r.response_value), r.elapsed_ms);
    };
    std::sort(sorted.begin(), sorted.end(),
              [&](const TrialResponse& a, const TrialResponse& b) { return as_tuple(a) < as_tuple(b); });

    // Resolve truths once.
    struct Judged {
        const TrialResponse* response;
        Truth truth;
        const Resolved* resolved;
    };
    std::vector<Judged> judged;
    judged.reserve(sorted.size());
    for (const auto& r : sorted) {
        const Resolved& res = by_id.at(r.dataset_id);
        try {
            judged.push_back({&r, task_truth(*res.dataset, r.task), &res});
        } catch (const Error& e) {
            if (e.code() == ErrorCode::AmbiguousTruth) {
                ++report.excluded.ambiguous_truth;
            } else if (e.code() == ErrorCode::DivisionByZero) {
                ++report.excluded.division_by_zero;
            } else {
                throw;
            }
        }
    }

    auto correct = [](const Judged& j) { return *j.response->response_label == std::get<std::string>(j.truth); };

    std::set<std::string> screened;
    if (cfg.screen_max_errors) {
        std::map<std::string, int> wrong_max;
        for (const auto& j : judged) {
            if (j.response->task == Task::IdentifyMax && !correct(j)) ++wrong_max[j.response->participant_id];
        }
        for (const auto& [pid, count] : wrong_max) {
            if (count > *cfg.screen_max_errors) screened.insert(pid);
        }
    }
    report.excluded.screened_participants.assign(screened.begin(), screened.end());

    // Identification outcomes per (participant, dataset, chart) trial.
    std::map<std::string, std::map<Task, bool>> outcomes;
    for (const auto& j : judged) {
        if (is_identification(j.response->task)) outcomes[trial_key(*j.response)][j.response->task] = correct(j);
    }
    auto wrong_relevant_id = [&](const TrialResponse& r) {
        const auto it = outcomes.find(trial_key(r));
        if (it == outcomes.end()) return false;
        const std::array<Task, 2> relevant = r.task == Task::RatioMaxMin
                                                 ? std::array{Task::IdentifyMax, Task::IdentifyMin}
                                                 : std::array{Task::IdentifyMin, Task::Identify2ndMin};
        for (Task t : relevant) {
            const auto o = it->second.find(t);
            if (o != it->second.end() && !o->second) return true;
        }
        return false;
    };

    std::vector<ScoredResponse> scored;
    std::vector<bool> ratio_kept;
    std::set<std::string> participants;
    for (const auto& j : judged) {
        const TrialResponse& r = *j.response;
        if (screened.contains(r.participant_id)) {
            ++report.excluded.screened_responses;
            continue;
        }
        ScoredResponse s;
        s.response = r;
        s.entropy_bin = j.resolved->profile.entropy_bin_label;
        s.hspread_bin = j.resolved->profile.hspread_bin_label;
        bool keep_for_ratio = true;
        if (is_identification(r.task)) {
            s.score = correct(j) ? 100.0 : 0.0;
        } else {
            s.score = log_abs_error(*r.response_value, std::get<double>(j.truth));
            if (cfg.exclude_wrong_identification && wrong_relevant_id(r)) {
                keep_for_ratio = false;
                ++report.excluded.wrong_identification;
            }
        }
        participants.insert(r.participant_id);
        scored.push_back(std::move(s));
        ratio_kept.push_back(keep_for_ratio);
    }
    report.responses_scored = scored.size();
    report.participants = participants.size();

    // Level orderings follow bin order, not string order.
    std::vector<std::string> entropy_levels{std::string(kBelowRangeLabel)};
    std::vector<std::string> hspread_levels;
    for (int b = 0; b < kBinCount; ++b) {
        entropy_levels.push_back(cfg.bins.entropy_label(b));
        hspread_levels.push_back(cfg.bins.hspread_label(b));
    }

    const MetricOf score_of = [](const ScoredResponse& s) { return s.score; };
    const MetricOf seconds_of = [](const ScoredResponse& s) {
        return static_cast<double>(s.response.elapsed_ms) / 1000.0;
    };

    std::vector<Subset> subsets;
    auto add_subsets = [&](const std::string& metric, const MetricOf& metric_of, auto&& include,
                           bool by_bins) {
        std::vector<std::string> tasks{"all"};
        for (Task t : kAllTasks) {
            for (std::size_t i = 0; i < scored.size(); ++i) {
                if (include(i) && scored[i].response.task == t) {
                    tasks.emplace_back(to_string(t));
                    break;
                }
            }
        }
        for (const auto& task : tasks) {
            auto in_task = [&](std::size_t i) {
                return include(i) && (task == "all" || to_string(scored[i].response.task) == task);
            };
            auto emit = [&](const std::string& factor, const std::string& level, auto&& in_level) {
                Subset sub{metric, task, factor, level, {}, metric_of};
                for (std::size_t i = 0; i < scored.size(); ++i) {
                    if (in_task(i) && in_level(scored[i])) sub.rows.push_back(&scored[i]);
                }
                if (!sub.rows.empty()) subsets.push_back(std::move(sub));
            };
            emit("all", "all", [](const ScoredResponse&) { return true; });
            if (!by_bins) continue;
            for (const auto& lv : entropy_levels) {
                emit("entropy_bin", lv, [&](const ScoredResponse& s) { return s.entropy_bin == lv; });
            }
            for (const auto& lv : hspread_levels) {
                emit("hspread_bin", lv, [&](const ScoredResponse& s) { return s.hspread_bin == lv; });
            }
        }
    };
    add_subsets("accuracy", score_of,
                [&](std::size_t i) { return is_identification(scored[i].response.task); }, true);
    add_subsets("log_abs_error", score_of,
                [&](std::size_t i) { return !is_identification(scored[i].response.task) && ratio_kept[i]; },
                true);
    add_subsets("elapsed_s", seconds_of, [](std::size_t) { return true; }, false);

    for (const auto& sub : subsets) {
        const std::string key = sub.metric + "/" + sub.task + "/" + sub.factor + "/" + sub.level;
        const std::uint64_t base = derive_seed(cfg.seed, fnv1a(key));
        const auto standard = means_for(sub.rows, ChartKind::Standard, sub.metric_of);
        const auto wrapped = means_for(sub.rows, ChartKind::Wrapped, sub.metric_of);
        ReportRow row{sub.metric, sub.task, sub.factor, sub.level, {}, {}, {}};
        row.standard = summarize(values_of(standard), cfg, derive_seed(base, 1));
        row.wrapped = summarize(values_of(wrapped), cfg, derive_seed(base, 2));
        if (!standard.empty() && !wrapped.empty()) {
            row.difference = compare(standard, wrapped, cfg, derive_seed(base, 3));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace dubois
