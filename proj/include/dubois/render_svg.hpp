// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "dubois/layout.hpp"

namespace dubois {

/// Colors are "#RRGGBB". Defaults follow the crimson-on-cream palette of the
/// hand-drawn 1900 Exposition plates.
struct Style {
    std::string bar_fill = "#DC143C";
    std::string background_fill = "#F2E6D0";
    std::string grid_color = "#B9A98C";
    std::string text_color = "#1F1A17";
    std::string font_family = "sans-serif";
    double font_size_px = 12.0;
    bool show_gridlines = true;
    std::optional<std::string> title;

    /// Throws Error(InvalidConfig) on a malformed color.
    void validate() const;
};

/// Standalone SVG 1.1 document. Output is a pure function of the inputs:
/// stable element order, every coordinate printed with two decimals.
std::string render_svg(const ChartLayout& layout, const Style& style = {});

bool is_hex_color(std::string_view s);

}  // namespace dubois
