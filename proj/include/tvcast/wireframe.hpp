#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tvcast/layout.hpp"

namespace tvcast {

enum class WireClass : std::uint8_t { Background = 0, Image = 1, Text = 2 };

struct Wireframe {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> cells;  // row-major WireClass values

    WireClass at(int x, int y) const {
        return static_cast<WireClass>(cells[static_cast<std::size_t>(y) * width + x]);
    }
    void fill_rect(int left, int top, int w, int h, WireClass c);
};

struct ClassStats {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    double iou = 0.0;
};

struct MiouReport {
    std::map<std::string, ClassStats> per_class;
    double miou = 1.0;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct ZeroLeaves : Error {
    using Error::Error;
};
struct EmptyJudgments : Error {
    using Error::Error;
};

Wireframe render_wireframe(const LayoutSolution& solution, const TvPage& page);

// Red image blocks, green text blocks; byte-stable output.
std::string wireframe_to_svg(const LayoutSolution& solution, const TvPage& page);

// ".wf" sidecar: "WFRM", u32 width, u32 height (LE), then class bytes.
std::string wireframe_to_binary(const Wireframe& frame);
Wireframe wireframe_from_binary(const std::string& data);

MiouReport compute_miou(const Wireframe& a, const Wireframe& b);

double reduced_ratio(int original_leaf_count, int final_unit_count);

double exact_match_rate(const std::vector<bool>& judgments);

// CSV with header "page_id,group_id,match", match in {0,1}.
std::vector<bool> parse_judgments_csv(const std::string& text);

}  // namespace tvcast
