// SPDX-License-Identifier: Apache-2.0
#include "dubois/render_svg.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "dubois/error.hpp"

namespace dubois {
namespace {

std::string num(double v) {
    // Round first so -0.004 prints as 0.00, never -0.00.
    double r = std::round(v * 100.0) / 100.0;
    if (r == 0.0) r = 0.0;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", r);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c; break;
        }
    }
    return out;
}

void rect(std::string& out, std::string_view cls, const Rect& r, std::string_view fill) {
    out += "<rect class=\"";
    out += cls;
    out += "\" x=\"" + num(r.x) + "\" y=\"" + num(r.y) + "\" width=\"" + num(r.width) +
           "\" height=\"" + num(r.height) + "\" fill=\"";
    out += fill;
    out += "\"/>\n";
}

}  // namespace

bool is_hex_color(std::string_view s) {
    if (s.size() != 7 || s[0] != '#') return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!std::isxdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

void Style::validate() const {
    for (const auto* c : {&bar_fill, &background_fill, &grid_color, &text_color}) {
        if (!is_hex_color(*c)) throw Error(ErrorCode::InvalidConfig, "invalid color '" + *c + "'");
    }
    if (!(font_size_px > 0.0)) throw Error(ErrorCode::InvalidConfig, "font size must be positive");
}

std::string render_svg(const ChartLayout& layout, const Style& style) {
    style.validate();
    const Rect& plot = layout.plot_box;
    const std::string font = num(style.font_size_px);
    const std::string text_attrs = "font-family=\"" + escape(style.font_family) + "\" font-size=\"" +
                                   font + "\" fill=\"" + style.text_color + "\"";

    std::string out;
    out.reserve(4096 + 160 * layout.categories.size());
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           num(layout.canvas_width_px) + "\" height=\"" + num(layout.canvas_height_px) +
           "\" viewBox=\"0.00 0.00 " + num(layout.canvas_width_px) + " " +
           num(layout.canvas_height_px) + "\">\n";
    rect(out, "background", Rect{0.0, 0.0, layout.canvas_width_px, layout.canvas_height_px},
         style.background_fill);

    if (style.title && !style.title->empty()) {
        out += "<text class=\"title\" x=\"" + num(layout.canvas_width_px / 2.0) + "\" y=\"" +
               num(plot.y / 2.0 + style.font_size_px / 2.0) + "\" text-anchor=\"middle\" " +
               text_attrs + ">" + escape(*style.title) + "</text>\n";
    }

    if (style.show_gridlines) {
        out += "<g class=\"grid\" stroke=\"" + style.grid_color + "\" stroke-width=\"1.00\">\n";
        for (const auto& t : layout.ticks) {
            out += "<line x1=\"" + num(plot.x) + "\" y1=\"" + num(t.y_px) + "\" x2=\"" +
                   num(plot.right()) + "\" y2=\"" + num(t.y_px) + "\"/>\n";
        }
        out += "</g>\n";
    }

    out += "<g class=\"axis\">\n";
    out += "<line x1=\"" + num(plot.x) + "\" y1=\"" + num(plot.y) + "\" x2=\"" + num(plot.x) +
           "\" y2=\"" + num(plot.bottom()) + "\" stroke=\"" + style.text_color +
           "\" stroke-width=\"1.00\"/>\n";
    for (const auto& t : layout.ticks) {
        out += "<text class=\"tick\" x=\"" + num(plot.x - 6.0) + "\" y=\"" +
               num(t.y_px + style.font_size_px / 3.0) + "\" text-anchor=\"end\" " + text_attrs +
               ">" + escape(t.label) + "</text>\n";
    }
    out += "</g>\n";

    out += "<g class=\"bars\">\n";
    for (const auto& c : layout.categories) {
        out += "<g class=\"category\" data-label=\"" + escape(c.label) + "\">\n";
        for (const auto& s : c.segments) rect(out, "segment", s.rect, style.bar_fill);
        for (const auto& k : c.connectors) rect(out, "connector", k.rect, style.bar_fill);
        out += "</g>\n";
    }
    out += "</g>\n";

    out += "<g class=\"labels\">\n";
    for (const auto& c : layout.categories) {
        out += "<text class=\"category-label\" x=\"" + num(c.anchor_x_px) + "\" y=\"" +
               num(c.anchor_y_px) + "\" text-anchor=\"middle\" " + text_attrs + ">" +
               escape(c.label) + "</text>\n";
    }
    out += "</g>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace dubois
