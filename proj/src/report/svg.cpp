#include "divscore/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace divscore::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string hex(double r, double g, double b) {
    auto c = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
    return buf;
}

} // namespace

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke) {
    body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
             "\" fill=\"" + escape(fill) + "\" stroke=\"" + escape(stroke) + "\"/>\n";
}

void Document::circle(double cx, double cy, double r, std::string_view fill) {
    body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" + escape(fill) +
             "\" fill-opacity=\"0.7\"/>\n";
}

void Document::text(double x, double y, std::string_view content, double size, double rotate_deg,
                    std::string_view anchor) {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) +
             "\" font-family=\"sans-serif\" text-anchor=\"" + escape(anchor) + "\"";
    if (rotate_deg != 0.0) body_ += " transform=\"rotate(" + num(rotate_deg) + " " + num(x) + " " + num(y) + ")\"";
    body_ += ">" + escape(content) + "</text>\n";
}

void Document::comment(std::string_view content) {
    std::string safe(content);
    for (std::size_t p; (p = safe.find("--")) != std::string::npos;) safe.replace(p, 2, "- -");
    body_ += "<!-- " + safe + " -->\n";
}

std::string Document::str() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
           "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n" + body_ + "</svg>\n";
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string sequential_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return hex(1.0 - 0.88 * t, 1.0 - 0.77 * t, 1.0 - 0.55 * t);
}

std::string diverging_color(double v) {
    v = std::clamp(v, -1.0, 1.0);
    if (v >= 0.0) return hex(1.0 - 0.85 * v, 1.0 - 0.6 * v, 1.0 - 0.25 * v);
    const double a = -v;
    return hex(1.0 - 0.2 * a, 1.0 - 0.8 * a, 1.0 - 0.8 * a);
}

} // namespace divscore::svg
