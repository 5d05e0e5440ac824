#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tvcast {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Orientation { Portrait, Landscape };

struct ScreenInfo {
    int width_px = 0;
    int height_px = 0;
    Orientation orientation = Orientation::Portrait;
};

// Screen-coordinate rectangle, left/top inclusive, right/bottom exclusive.
struct Bounds {
    int left = 0;
    int top = 0;
    int right = 0;
    int bottom = 0;

    int width() const { return right - left; }
    int height() const { return bottom - top; }
    std::int64_t area() const {
        return static_cast<std::int64_t>(width()) * height();
    }
    bool zero_area() const { return width() <= 0 || height() <= 0; }

    int center_x() const { return (left + right) / 2; }
    int center_y() const { return (top + bottom) / 2; }

    // Overlap length of the horizontal projections (<= 0 means disjoint).
    int x_overlap(const Bounds& o) const {
        return std::min(right, o.right) - std::max(left, o.left);
    }
    int y_overlap(const Bounds& o) const {
        return std::min(bottom, o.bottom) - std::max(top, o.top);
    }
    // Horizontal gap between disjoint projections, 0 when they overlap/touch.
    int x_gap(const Bounds& o) const {
        int g = std::max(left, o.left) - std::min(right, o.right);
        return g > 0 ? g : 0;
    }

    Bounds united(const Bounds& o) const {
        return {std::min(left, o.left), std::min(top, o.top),
                std::max(right, o.right), std::max(bottom, o.bottom)};
    }

    bool operator==(const Bounds&) const = default;
};

struct MalformedBounds : Error {
    using Error::Error;
};

// Parses the UI Automator bracket format "[x1,y1][x2,y2]".
Bounds parse_bounds(const std::string& text);
std::string format_bounds(const Bounds& b);

}  // namespace tvcast
