// SPDX-License-Identifier: Apache-2.0
//
// Backend-independent geometry for standard and wrapped bar charts.
//
// A wrapped bar of value v is cut into wrap units of w = t1 * t2 value units:
// f = floor(v / w) full segments plus a tail of r = v - f * w. Segments are
// laid out left to right as a serpentine: the first rises from the baseline,
// the next hangs down from the wrap line, and so on. Consecutive segments are
// joined by connectors that carry no value; the summed vertical pixel height
// of a bar is proportional to its value. Pixel y grows downward.
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dubois/dataset.hpp"

namespace dubois {

enum class ChartKind { Standard, Wrapped };
enum class Direction { Up, Down };
enum class ConnectorPosition { Top, Bottom };

struct AsGiven {};
struct Sorted {};  // descending by value, ties keep input order
struct Shuffled {
    std::uint64_t seed = 0;
};
using BarOrder = std::variant<AsGiven, Sorted, Shuffled>;

struct Margins {
    double top = 40.0;
    double right = 20.0;
    double bottom = 60.0;
    double left = 70.0;
};

struct ChartConfig {
    ChartKind chart_kind = ChartKind::Standard;
    double t1 = 1.0;
    double t2 = 1.0;
    double plot_width_px = 710.0;
    double plot_height_px = 400.0;
    Margins margins;
    int tick_count = 5;
    BarOrder bar_order = AsGiven{};

    /// Throws InvalidThreshold / InvalidConfig.
    void validate() const;
};

/// For standard charts wrap_unit is 0 and tail_value holds the whole value.
struct WrapDecomposition {
    std::int64_t full_segments = 0;
    double tail_value = 0.0;
    double wrap_unit = 0.0;
};

struct Rect {
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;

    double right() const noexcept { return x + width; }
    double bottom() const noexcept { return y + height; }
};

struct Segment {
    Rect rect;
    double value_units = 0.0;
    Direction direction = Direction::Up;
};

struct Connector {
    Rect rect;
    ConnectorPosition position = ConnectorPosition::Top;
    double value_units = 0.0;
};

struct Tick {
    double value_units = 0.0;
    double y_px = 0.0;
    std::string label;
};

struct CategoryLayout {
    std::string label;
    double value = 0.0;
    WrapDecomposition wrap;
    std::vector<Segment> segments;
    std::vector<Connector> connectors;
    double anchor_x_px = 0.0;  // horizontal center of the bar's columns
    double anchor_y_px = 0.0;  // just below the baseline
};

struct ChartLayout {
    ChartKind chart_kind = ChartKind::Standard;
    double t1 = 0.0;
    double t2 = 1.0;
    double axis_max = 0.0;
    double bar_width_px = 0.0;
    Rect plot_box;
    double canvas_width_px = 0.0;
    double canvas_height_px = 0.0;
    std::vector<CategoryLayout> categories;  // in display order
    std::vector<Tick> ticks;
};

/// Throws Error(InvalidThreshold) if t1 <= 0 or t2 is outside (0, 1].
WrapDecomposition wrap_decompose(double value, double t1, double t2);

/// `tick_count` evenly spaced ticks over [0, axis_max]; tick_count >= 2.
/// y_px is measured in `plot` (0 at value 0 when no box is given).
std::vector<Tick> axis_ticks(double axis_max, int tick_count, const Rect& plot = {});

/// Lays out `d` according to `cfg`. Throws Error(LayoutOverflow) when the
/// bar width would fall below one pixel.
ChartLayout layout_chart(const Dataset& d, const ChartConfig& cfg);

/// Thousands-separated label: 1075 -> "1,075", 0.25 -> "0.25".
std::string format_tick_label(double value);

/// Applies the bar order policy, returning the display permutation.
std::vector<std::size_t> display_order(const Dataset& d, const BarOrder& order);

std::string_view to_string(ChartKind kind);
std::string_view to_string(Direction direction);
std::string_view to_string(ConnectorPosition position);

}  // namespace dubois
