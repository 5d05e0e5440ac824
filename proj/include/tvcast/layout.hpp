#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tvcast/transform.hpp"

namespace tvcast {

struct SizeBounds {
    int width_min = 1;
    int width_max = 1;
    int height_min = 1;
    int height_max = 1;
};

// A size-table entry: hard bounds plus the preferred size the solver
// starts from.
struct SizeEntry {
    SizeBounds bounds;
    int width_pref = 1;
    int height_pref = 1;
};

using SizeTable = std::map<std::pair<TvGroupCategory, SizeClass>, SizeEntry>;

const SizeTable& default_size_table();

struct LayoutConfig {
    int margin = 48;               // overscan-safe border
    int row_gap = 32;
    int channel_rail_width = 280;
    int channel_item_height = 64;
    int channel_item_gap = 16;
    double fill_weight = 1.0;      // weight of the fill-the-row soft constraint
};

struct LayoutItem {
    std::string id;
    SizeBounds size_bounds;
    int width_pref = 0;
    int height_pref = 0;
    std::int64_t phone_area = 0;
    TvContent content = TvContent::Text;
};

struct FormulaUnit {
    std::vector<LayoutItem> items;
    bool vertical = false;  // Channel rail stacks items top-down
};

struct ConstraintSystem {
    std::vector<FormulaUnit> units;
    int row_width = 0;  // r_tv: usable width of one row
    LayoutConfig config;
    int content_origin_x = 0;  // absolute x where row content starts
    int content_origin_y = 0;
    int rail_origin_x = 0;     // absolute x of the Channel rail
};

struct SolvedItem {
    std::string id;
    int unit = 0;
    int row = 0;             // global row index (vertical units use item order)
    int left = 0, top = 0;   // frame coordinates, 0 = row-content origin
    int width = 0, height = 0;
    int abs_left = 0, abs_top = 0;  // canvas coordinates incl. margins/rail
    TvContent content = TvContent::Text;
};

struct LayoutSolution {
    std::vector<SolvedItem> items;
    std::vector<std::string> pruned;
    std::vector<int> row_residuals;  // |sum(width) - r_tv| per horizontal row
    double objective = 0.0;
    int total_height = 0;  // frame height of the horizontal content
};

struct MissingSizeEntry : Error {
    using Error::Error;
};
struct Infeasible : Error {
    using Error::Error;
};
struct CannotFit : Error {
    using Error::Error;
};

ConstraintSystem build_constraints(const TvPage& page, const ScreenInfo& tv_screen,
                                   const SizeTable& size_table = default_size_table(),
                                   const LayoutConfig& cfg = {});

LayoutSolution solve_layout(const ConstraintSystem& system);

// True iff every horizontal item satisfies (C1 xor C2) and C3, rows do
// not overlap, and the content stays inside [0, row_width].
bool verify_hard_constraints(const ConstraintSystem& system,
                             const LayoutSolution& solution,
                             std::string* why = nullptr);

// Removes items smallest-phone-area-first until the page fits max_height.
std::pair<TvPage, std::vector<std::string>> prune_overflow(
    const TvPage& page, const ScreenInfo& tv_screen, int max_height,
    const SizeTable& size_table = default_size_table(), const LayoutConfig& cfg = {});

std::string solution_to_json(const LayoutSolution& solution);

}  // namespace tvcast
