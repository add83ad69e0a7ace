// SPDX-License-Identifier: Apache-2.0
#include "dubois/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "dubois/error.hpp"

namespace dubois {
namespace {

using nlohmann::json;

json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return nullptr;
    return v;
}

json rect_fields(const Rect& r) {
    return json{{"x_px", r.x}, {"y_px", r.y}, {"width_px", r.width}, {"height_px", r.height}};
}

json summary(const std::optional<GroupSummary>& s) {
    if (!s) return nullptr;
    return json{{"mean", s->mean}, {"ci_lo", s->lo}, {"ci_hi", s->hi}, {"n", s->n}};
}

json comparison(const std::optional<Comparison>& c) {
    if (!c) return nullptr;
    json j{{"mean_difference", c->mean_difference},
           {"ci_lo", c->lo},
           {"ci_hi", c->hi},
           {"n", c->n},
           {"cohens_d", c->cohens_d ? json(*c->cohens_d) : json(nullptr)},
           {"degenerate", c->degenerate}};
    if (!c->d_note.empty()) j["d_note"] = c->d_note;
    return j;
}

}  // namespace

json to_json(const Dataset& d) {
    json cats = json::array();
    for (const auto& c : d.categories()) cats.push_back({{"label", c.label}, {"value", c.value}});
    return json{{"id", d.id()}, {"categories", std::move(cats)}};
}

Dataset dataset_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidDataset, "dataset must be a JSON object");
    std::string id = "dataset";
    if (j.contains("id")) {
        if (!j["id"].is_string()) throw Error(ErrorCode::InvalidDataset, "dataset id must be a string");
        id = j["id"].get<std::string>();
    }
    if (!j.contains("categories") || !j["categories"].is_array()) {
        throw Error(ErrorCode::InvalidDataset, "dataset needs a 'categories' array");
    }
    std::vector<Category> cats;
    for (const auto& c : j["categories"]) {
        if (!c.is_object() || !c.contains("label") || !c["label"].is_string() || !c.contains("value") ||
            !c["value"].is_number()) {
            throw Error(ErrorCode::InvalidDataset, "each category needs a string 'label' and numeric 'value'");
        }
        cats.push_back({c["label"].get<std::string>(), c["value"].get<double>()});
    }
    return Dataset(std::move(id), std::move(cats));
}

json to_json(const DataProfile& p) {
    return json{{"entropy_bits", p.entropy_bits},
                {"normalized_entropy", p.normalized_entropy},
                {"q1", p.quartiles.q1},
                {"median", p.quartiles.median},
                {"q3", p.quartiles.q3},
                {"h_spread", number(p.h_spread)},
                {"entropy_bin", p.entropy_bin_label},
                {"hspread_bin", p.hspread_bin_label},
                {"quartile_method", p.quartile_method}};
}

json to_json(const Recommendation& r) {
    json reasons = json::array();
    for (auto reason : r.reasons) reasons.push_back(to_string(reason));
    return json{{"use_wrapped", r.use_wrapped},
                {"chart", r.use_wrapped ? "wrapped" : "standard"},
                {"reasons", std::move(reasons)},
                {"entropy_cutoff", r.entropy_cutoff},
                {"hspread_cutoff", r.hspread_cutoff}};
}

json profile_report(const Dataset& d, double entropy_cutoff, double hspread_cutoff) {
    const DataProfile p = profile(d);
    return json{{"id", d.id()},
                {"n", d.size()},
                {"profile", to_json(p)},
                {"recommendation", to_json(recommend(p, entropy_cutoff, hspread_cutoff))}};
}

json to_json(const ChartLayout& layout) {
    json segments = json::array();
    json connectors = json::array();
    json categories = json::array();
    for (std::size_t k = 0; k < layout.categories.size(); ++k) {
        const auto& c = layout.categories[k];
        for (std::size_t i = 0; i < c.segments.size(); ++i) {
            json s = rect_fields(c.segments[i].rect);
            s["category"] = k;
            s["index"] = i;
            s["value_units"] = c.segments[i].value_units;
            s["direction"] = to_string(c.segments[i].direction);
            segments.push_back(std::move(s));
        }
        for (std::size_t i = 0; i < c.connectors.size(); ++i) {
            json s = rect_fields(c.connectors[i].rect);
            s["category"] = k;
            s["index"] = i;
            s["value_units"] = 0.0;
            s["position"] = to_string(c.connectors[i].position);
            connectors.push_back(std::move(s));
        }
        categories.push_back({{"label", c.label},
                              {"value", c.value},
                              {"full_segments", c.wrap.full_segments},
                              {"tail_value", c.wrap.tail_value},
                              {"wrap_unit", c.wrap.wrap_unit},
                              {"anchor_x_px", c.anchor_x_px},
                              {"anchor_y_px", c.anchor_y_px}});
    }
    json ticks = json::array();
    for (const auto& t : layout.ticks) {
        ticks.push_back({{"value_units", t.value_units}, {"y_px", t.y_px}, {"label", t.label}});
    }
    json box = rect_fields(layout.plot_box);
    return json{{"chart_kind", to_string(layout.chart_kind)},
                {"t1", layout.t1},
                {"t2", layout.t2},
                {"axis_max", layout.axis_max},
                {"bar_width_px", layout.bar_width_px},
                {"plot_box", std::move(box)},
                {"canvas", {{"width_px", layout.canvas_width_px}, {"height_px", layout.canvas_height_px}}},
                {"categories", std::move(categories)},
                {"segments", std::move(segments)},
                {"connectors", std::move(connectors)},
                {"ticks", std::move(ticks)}};
}

json to_json(const SimulationGrid& grid, std::span<const BinSample> samples) {
    json occupancy = json::array();
    for (int e = 0; e < kBinCount; ++e) {
        for (int h = 0; h < kBinCount; ++h) {
            occupancy.push_back({{"entropy_bin", grid.bins.entropy_label(e)},
                                 {"hspread_bin", grid.bins.hspread_label(h)},
                                 {"count", grid.count(Cell{e, h})}});
        }
    }
    json out_samples = json::array();
    for (const auto& s : samples) {
        out_samples.push_back({{"entropy_bin", grid.bins.entropy_label(s.cell.entropy_bin)},
                               {"hspread_bin", grid.bins.hspread_label(s.cell.hspread_bin)},
                               {"dataset", to_json(s.dataset)}});
    }
    return json{{"dataset_count", grid.datasets.size()},
                {"occupied_cells", grid.occupied_cells()},
                {"out_of_range", grid.out_of_range.size()},
                {"occupancy", std::move(occupancy)},
                {"samples", std::move(out_samples)}};
}

json to_json(const AnalysisReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"metric", r.metric},
                        {"task", r.task},
                        {"factor", r.factor},
                        {"level", r.level},
                        {"standard", summary(r.standard)},
                        {"wrapped", summary(r.wrapped)},
                        {"wrapped_minus_standard", comparison(r.difference)}});
    }
    const auto& cfg = report.config;
    return json{
        {"metadata",
         {{"direction", "wrapped_minus_standard"},
          {"accuracy_units", "percentage_points"},
          {"log_abs_error_formula", kLogAbsErrorFormula},
          {"bootstrap_method", kBootstrapMethod},
          {"bootstrap_unit", "participant_means"},
          {"resamples", cfg.resamples},
          {"level", cfg.level},
          {"seed", cfg.seed},
          {"design", to_string(cfg.design)},
          {"cohens_d", cfg.design == Design::Within ? std::string("paired_") + std::string(to_string(cfg.paired_variant))
                                                    : std::string("between_pooled")},
          {"quartile_method", kQuartileMethod},
          {"screen_max_errors", cfg.screen_max_errors ? json(*cfg.screen_max_errors) : json(nullptr)},
          {"exclude_wrong_identification", cfg.exclude_wrong_identification}}},
        {"counts",
         {{"responses_total", report.responses_total},
          {"responses_scored", report.responses_scored},
          {"participants", report.participants},
          {"excluded_ambiguous_truth", report.excluded.ambiguous_truth},
          {"excluded_division_by_zero", report.excluded.division_by_zero},
          {"excluded_wrong_identification", report.excluded.wrong_identification},
          {"excluded_screened_responses", report.excluded.screened_responses},
          {"screened_participants", report.excluded.screened_participants}}},
        {"rows", std::move(rows)}};
}

std::string report_table(const AnalysisReport& report) {
    std::string out;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-14s %-17s %-12s %-11s %-27s %-27s %-30s %s\n", "metric", "task", "factor",
                  "level", "standard mean [95% CI]", "wrapped mean [95% CI]", "wrapped-standard [95% CI]", "d");
    out += buf;
    auto cell = [](const std::optional<GroupSummary>& s) {
        char b[96];
        if (!s) return std::string("-");
        std::snprintf(b, sizeof b, "%.2f [%.2f, %.2f] n=%zu", s->mean, s->lo, s->hi, s->n);
        return std::string(b);
    };
    for (const auto& r : report.rows) {
        std::string diff = "-";
        std::string d = "-";
        if (r.difference) {
            char b[96];
            std::snprintf(b, sizeof b, "%.2f [%.2f, %.2f]%s", r.difference->mean_difference, r.difference->lo,
                          r.difference->hi, r.difference->degenerate ? " (degenerate)" : "");
            diff = b;
            if (r.difference->cohens_d) {
                std::snprintf(b, sizeof b, "%.2f", *r.difference->cohens_d);
                d = b;
            } else if (!r.difference->d_note.empty()) {
                d = r.difference->d_note;
            }
        }
        std::snprintf(buf, sizeof buf, "%-14s %-17s %-12s %-11s %-27s %-27s %-30s %s\n", r.metric.c_str(),
                      r.task.c_str(), r.factor.c_str(), r.level.c_str(), cell(r.standard).c_str(),
                      cell(r.wrapped).c_str(), diff.c_str(), d.c_str());
        out += buf;
    }
    return out;
}

}  // namespace dubois
