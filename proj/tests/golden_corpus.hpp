// SPDX-License-Identifier: Apache-2.0
//
// The fixed set of charts whose SVG output is checked into tests/golden/.
#pragma once

#include <string>
#include <vector>

#include "dubois/layout.hpp"
#include "dubois/render_svg.hpp"

namespace golden {

struct Case {
    std::string name;
    dubois::ChartLayout layout;
    dubois::Style style;
};

inline dubois::Dataset ad_spending() {
    return dubois::Dataset("ad_spending", {{"Candidate A", 8500},
                                           {"Candidate B", 2300},
                                           {"Candidate C", 1200},
                                           {"Candidate D", 700},
                                           {"Candidate E", 450},
                                           {"Candidate F", 300},
                                           {"Candidate G", 150},
                                           {"Candidate H", 78}});
}

inline std::vector<Case> corpus() {
    using namespace dubois;
    std::vector<Case> out;

    ChartConfig standard;
    out.push_back({"standard_two_bars", layout_chart(Dataset("two", {{"a", 10}, {"b", 5}}), standard), Style{}});

    Style titled;
    titled.title = "Ad spending (standard)";
    out.push_back({"standard_ad_spending", layout_chart(ad_spending(), standard), titled});

    ChartConfig full;
    full.chart_kind = ChartKind::Wrapped;
    full.t1 = 1000;
    out.push_back({"wrapped_ad_spending_full", layout_chart(ad_spending(), full), Style{}});

    ChartConfig half = full;
    half.t2 = 0.5;
    out.push_back({"wrapped_ad_spending_half", layout_chart(ad_spending(), half), Style{}});

    ChartConfig sorted = full;
    sorted.t1 = 40;
    sorted.bar_order = Sorted{};
    Style escaped;
    escaped.title = "Labels & <escapes> \"quoted\"";
    out.push_back({"wrapped_sorted_escaped",
                   layout_chart(Dataset("esc", {{"R&D", 35}, {"<50>", 130}, {"\"q\"", 12}, {"it's", 81}}), sorted),
                   escaped});

    ChartConfig shuffled = full;
    shuffled.t1 = 250;
    shuffled.tick_count = 6;
    shuffled.bar_order = Shuffled{3};
    shuffled.plot_width_px = 500;
    shuffled.plot_height_px = 300;
    Style plain;
    plain.show_gridlines = false;
    plain.bar_fill = "#2B4C7E";
    plain.background_fill = "#FFFFFF";
    plain.font_family = "serif";
    plain.font_size_px = 10;
    out.push_back({"wrapped_shuffled_plain",
                   layout_chart(Dataset("occ", {{"agriculture", 1420}, {"domestic", 610}, {"manufacturing", 95},
                                                {"professions", 33}, {"trade", 120}}),
                                shuffled),
                   plain});
    return out;
}

}  // namespace golden
