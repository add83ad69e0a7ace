// SPDX-License-Identifier: Apache-2.0
#include "dubois/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "dubois/error.hpp"
#include "dubois/rng.hpp"

namespace dubois {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

constexpr double kLabelOffsetPx = 18.0;

std::string group_thousands(std::string digits) {
    std::string out;
    const std::size_t n = digits.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && (n - i) % 3 == 0) out.push_back(',');
        out.push_back(digits[i]);
    }
    return out;
}

}  // namespace

std::string_view to_string(ChartKind kind) {
    return kind == ChartKind::Wrapped ? "wrapped" : "standard";
}

std::string_view to_string(Direction direction) {
    return direction == Direction::Up ? "up" : "down";
}

std::string_view to_string(ConnectorPosition position) {
    return position == ConnectorPosition::Top ? "top" : "bottom";
}

void ChartConfig::validate() const {
    if (chart_kind == ChartKind::Wrapped) {
        if (!(t1 > 0.0) || !std::isfinite(t1)) {
            throw Error(ErrorCode::InvalidThreshold, "t1 must be a positive finite number");
        }
        if (!(t2 > 0.0 && t2 <= 1.0)) {
            throw Error(ErrorCode::InvalidThreshold, "t2 must lie in (0, 1]");
        }
    }
    if (!(plot_width_px > 0.0) || !(plot_height_px > 0.0) || !std::isfinite(plot_width_px) ||
        !std::isfinite(plot_height_px)) {
        throw Error(ErrorCode::InvalidConfig, "plot dimensions must be positive");
    }
    for (double m : {margins.top, margins.right, margins.bottom, margins.left}) {
        if (!(m >= 0.0) || !std::isfinite(m)) {
            throw Error(ErrorCode::InvalidConfig, "margins must be non-negative");
        }
    }
    if (tick_count < 2) throw Error(ErrorCode::InvalidConfig, "tick_count must be at least 2");
}

WrapDecomposition wrap_decompose(double value, double t1, double t2) {
    if (!(t1 > 0.0) || !std::isfinite(t1)) {
        throw Error(ErrorCode::InvalidThreshold, "t1 must be a positive finite number");
    }
    if (!(t2 > 0.0 && t2 <= 1.0)) throw Error(ErrorCode::InvalidThreshold, "t2 must lie in (0, 1]");
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::InvalidDataset, "wrap_decompose: value must be finite and >= 0");
    }
    WrapDecomposition out;
    out.wrap_unit = t1 * t2;
    // fmod is exact.
    out.tail_value = std::fmod(value, out.wrap_unit);
    out.full_segments = std::llround((value - out.tail_value) / out.wrap_unit);
    return out;
}

std::string format_tick_label(double value) {
    if (value == 0.0) return "0";
    const bool negative = value < 0.0;
    const double mag = std::fabs(value);
    char buf[64];
    std::string text;
    if (std::fabs(mag - std::round(mag)) <= 1e-9 * std::max(1.0, mag)) {
        std::snprintf(buf, sizeof buf, "%.0f", std::round(mag));
        text = group_thousands(buf);
    } else {
        std::snprintf(buf, sizeof buf, "%.2f", mag);
        std::string s = buf;
        const auto dot = s.find('.');
        std::string frac = s.substr(dot);
        while (!frac.empty() && (frac.back() == '0' || frac.back() == '.')) frac.pop_back();
        text = group_thousands(s.substr(0, dot)) + frac;
    }
    return negative ? "-" + text : text;
}

std::vector<Tick> axis_ticks(double axis_max, int tick_count, const Rect& plot) {
    if (!(axis_max > 0.0)) throw Error(ErrorCode::InvalidConfig, "axis maximum must be positive");
    if (tick_count < 2) throw Error(ErrorCode::InvalidConfig, "tick_count must be at least 2");
    std::vector<Tick> ticks;
    ticks.reserve(static_cast<std::size_t>(tick_count));
    for (int i = 0; i < tick_count; ++i) {
        const double v = i == tick_count - 1 ? axis_max : axis_max * i / (tick_count - 1);
        ticks.push_back({v, plot.bottom() - v / axis_max * plot.height, format_tick_label(v)});
    }
    return ticks;
}

std::vector<std::size_t> display_order(const Dataset& d, const BarOrder& order) {
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto cats = d.categories();
    std::visit(Overloaded{
                   [](const AsGiven&) {},
                   [&](const Sorted&) {
                       std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                           return cats[a].value > cats[b].value;
                       });
                   },
                   [&](const Shuffled& s) {
                       Rng rng(s.seed);
                       rng.shuffle(std::span<std::size_t>(idx));
                   },
               },
               order);
    return idx;
}

ChartLayout layout_chart(const Dataset& d, const ChartConfig& cfg) {
    cfg.validate();
    const bool wrapped = cfg.chart_kind == ChartKind::Wrapped;

    ChartLayout out;
    out.chart_kind = cfg.chart_kind;
    out.t1 = wrapped ? cfg.t1 : d.max_value();
    out.t2 = wrapped ? cfg.t2 : 1.0;
    out.axis_max = wrapped ? cfg.t1 : d.max_value();
    out.plot_box = Rect{cfg.margins.left, cfg.margins.top, cfg.plot_width_px, cfg.plot_height_px};
    out.canvas_width_px = cfg.margins.left + cfg.plot_width_px + cfg.margins.right;
    out.canvas_height_px = cfg.margins.top + cfg.plot_height_px + cfg.margins.bottom;

    const auto order = display_order(d, cfg.bar_order);
    const auto cats = d.categories();

    std::vector<WrapDecomposition> wraps;
    std::vector<std::size_t> columns;
    wraps.reserve(order.size());
    columns.reserve(order.size());
    std::size_t total_columns = 0;
    for (std::size_t i : order) {
        const double v = cats[i].value;
        WrapDecomposition w = wrapped ? wrap_decompose(v, cfg.t1, cfg.t2)
                                      : WrapDecomposition{0, v, 0.0};
        std::size_t cols = static_cast<std::size_t>(w.full_segments) + (w.tail_value > 0.0 ? 1 : 0);
        cols = std::max<std::size_t>(cols, 1);
        wraps.push_back(w);
        columns.push_back(cols);
        total_columns += cols;
    }

    // plot width = columns * B + (categories - 1) * B + intra-bar gaps * B / 2
    const double n = static_cast<double>(order.size());
    const double s = static_cast<double>(total_columns);
    const double bar = cfg.plot_width_px / (s + (n - 1.0) + (s - n) / 2.0);
    if (bar < 1.0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "bar width %.3f px is below 1 px (%zu sub-bar columns across %zu categories); "
                      "increase t1 or the plot width",
                      bar, total_columns, order.size());
        throw Error(ErrorCode::LayoutOverflow, buf);
    }
    out.bar_width_px = bar;

    const Rect& plot = out.plot_box;
    const double baseline = plot.bottom();
    const double full_px = wrapped ? cfg.t2 * plot.height : plot.height;
    const double wrap_line = baseline - full_px;
    const double connector_px = std::min(bar, full_px);

    double x = plot.x;
    out.categories.reserve(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Category& cat = cats[order[k]];
        const WrapDecomposition& w = wraps[k];
        CategoryLayout cl;
        cl.label = cat.label;
        cl.value = cat.value;
        cl.wrap = w;

        std::vector<double> pieces(static_cast<std::size_t>(w.full_segments), w.wrap_unit);
        if (w.tail_value > 0.0 || pieces.empty()) pieces.push_back(w.tail_value);

        for (std::size_t j = 0; j < pieces.size(); ++j) {
            const double col_x = x + static_cast<double>(j) * 1.5 * bar;
            const double h = pieces[j] / out.axis_max * plot.height;
            const Direction dir = j % 2 == 0 ? Direction::Up : Direction::Down;
            const double y = dir == Direction::Up ? baseline - h : wrap_line;
            cl.segments.push_back({Rect{col_x, y, bar, h}, pieces[j], dir});
            if (j + 1 < pieces.size()) {
                const bool top = dir == Direction::Up;
                cl.connectors.push_back({Rect{col_x + bar, top ? wrap_line : baseline - connector_px,
                                              bar / 2.0, connector_px},
                                         top ? ConnectorPosition::Top : ConnectorPosition::Bottom,
                                         0.0});
            }
        }
        const double right = cl.segments.back().rect.right();
        cl.anchor_x_px = (x + right) / 2.0;
        cl.anchor_y_px = baseline + kLabelOffsetPx;
        out.categories.push_back(std::move(cl));
        x = right + bar;
    }

    out.ticks = axis_ticks(out.axis_max, cfg.tick_count, plot);
    return out;
}

}  // namespace dubois
