#pragma once

#include <string>
#include <string_view>

namespace divscore::svg {

// Minimal SVG writer; coordinates are printed with two decimals so output is
// byte-stable.
class Document {
public:
    Document(double width, double height);

    void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke);
    void circle(double cx, double cy, double r, std::string_view fill);
    void text(double x, double y, std::string_view content, double size, double rotate_deg = 0.0,
              std::string_view anchor = "start");
    void comment(std::string_view content);

    std::string str() const;

private:
    double width_;
    double height_;
    std::string body_;
};

std::string escape(std::string_view text);
// White → dark blue for t in [0, 1].
std::string sequential_color(double t);
// Red (−1) → white (0) → blue (+1).
std::string diverging_color(double v);

} // namespace divscore::svg
