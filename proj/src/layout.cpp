#include "tvcast/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tvcast {

using ordered_json = nlohmann::ordered_json;

namespace {

SizeEntry entry(int wmin, int wpref, int wmax, int hmin, int hpref, int hmax) {
    return SizeEntry{SizeBounds{wmin, wmax, hmin, hmax}, wpref, hpref};
}

}  // namespace

// 1920x1080 reference values, fully overridable from the config file.
const SizeTable& default_size_table() {
    static const SizeTable table = [] {
        SizeTable t;
        auto put = [&](TvGroupCategory c, SizeClass s, SizeEntry e) {
            t[{c, s}] = e;
        };
        put(TvGroupCategory::PicInfo, SizeClass::Large, entry(420, 560, 720, 320, 380, 520));
        put(TvGroupCategory::PicInfo, SizeClass::Medium, entry(300, 400, 520, 240, 320, 400));
        put(TvGroupCategory::PicInfo, SizeClass::Small, entry(200, 280, 360, 180, 240, 300));
        put(TvGroupCategory::IconInfo, SizeClass::Large, entry(160, 220, 300, 160, 220, 300));
        put(TvGroupCategory::IconInfo, SizeClass::Medium, entry(130, 180, 240, 130, 180, 240));
        put(TvGroupCategory::IconInfo, SizeClass::Small, entry(100, 140, 190, 100, 140, 190));
        put(TvGroupCategory::GridLayout, SizeClass::Large, entry(380, 500, 660, 280, 380, 480));
        put(TvGroupCategory::GridLayout, SizeClass::Medium, entry(280, 360, 480, 220, 300, 380));
        put(TvGroupCategory::GridLayout, SizeClass::Small, entry(180, 260, 340, 160, 220, 280));
        for (auto s : {SizeClass::Large, SizeClass::Medium, SizeClass::Small}) {
            put(TvGroupCategory::ToolBar, s, entry(400, 1544, 1920, 64, 96, 128));
            put(TvGroupCategory::Search, s, entry(400, 1544, 1920, 64, 96, 128));
            put(TvGroupCategory::ListView, s, entry(400, 1544, 1920, 90, 120, 160));
            put(TvGroupCategory::TabLayout, s, entry(120, 200, 320, 56, 80, 104));
            put(TvGroupCategory::VideoMusicPlayer, s, entry(640, 1280, 1920, 360, 720, 810));
            put(TvGroupCategory::Channel, s, entry(280, 280, 280, 48, 64, 80));
        }
        return t;
    }();
    return table;
}

ConstraintSystem build_constraints(const TvPage& page, const ScreenInfo& tv_screen,
                                   const SizeTable& size_table, const LayoutConfig& cfg) {
    if (page.groups.empty()) throw EmptyPage("cannot build constraints for an empty page");
    ConstraintSystem sys;
    sys.config = cfg;

    bool has_channel = std::any_of(page.groups.begin(), page.groups.end(), [](const TvGroup& g) {
        return g.category == TvGroupCategory::Channel;
    });
    // The Channel rail reserves a fixed left column.
    sys.row_width = tv_screen.width_px - 2 * cfg.margin -
                    (has_channel ? cfg.channel_rail_width : 0);
    sys.rail_origin_x = cfg.margin;
    sys.content_origin_x = cfg.margin + (has_channel ? cfg.channel_rail_width : 0);
    sys.content_origin_y = cfg.margin;

    for (const auto& g : page.groups) {
        FormulaUnit unit;
        unit.vertical = g.category == TvGroupCategory::Channel;
        auto it = size_table.find({g.category, g.size_class});
        if (it == size_table.end())
            throw MissingSizeEntry(std::string("no size entry for ") +
                                   tv_category_name(g.category) + "/" +
                                   size_class_name(g.size_class));
        const SizeEntry& se = it->second;
        for (const auto& item : g.items) {
            LayoutItem li;
            li.id = item.id;
            li.size_bounds = se.bounds;
            li.width_pref = se.width_pref;
            li.height_pref = se.height_pref;
            li.phone_area = item.phone_area;
            li.content = item.content;
            if (unit.vertical) {
                li.size_bounds = SizeBounds{cfg.channel_rail_width, cfg.channel_rail_width,
                                            cfg.channel_item_height, cfg.channel_item_height};
                li.width_pref = cfg.channel_rail_width;
                li.height_pref = cfg.channel_item_height;
            }
            unit.items.push_back(std::move(li));
        }
        if (!unit.items.empty()) sys.units.push_back(std::move(unit));
    }
    return sys;
}

namespace {

// Water-filling: distribute (target - sum(min)) proportionally to the
// slack of each item, clamped at max, integer remainder left to right.
std::vector<int> fill_row_widths(const std::vector<const LayoutItem*>& row, int target) {
    int n = static_cast<int>(row.size());
    std::vector<int> widths(n);
    long long sum_min = 0, sum_max = 0;
    for (int i = 0; i < n; ++i) {
        sum_min += row[i]->size_bounds.width_min;
        sum_max += row[i]->size_bounds.width_max;
    }
    if (sum_max <= target) {
        for (int i = 0; i < n; ++i) widths[i] = row[i]->size_bounds.width_max;
        return widths;
    }
    if (sum_min >= target) {
        for (int i = 0; i < n; ++i) widths[i] = row[i]->size_bounds.width_min;
        return widths;
    }
    long long extra = target - sum_min;
    // Clamp iteratively: items that hit their max drop out of the pool.
    std::vector<bool> capped(n, false);
    for (int i = 0; i < n; ++i) widths[i] = row[i]->size_bounds.width_min;
    while (extra > 0) {
        long long slack = 0;
        for (int i = 0; i < n; ++i)
            if (!capped[i]) slack += row[i]->size_bounds.width_max - widths[i];
        if (slack <= 0) break;
        long long given_total = 0;
        for (int i = 0; i < n; ++i) {
            if (capped[i]) continue;
            long long room = row[i]->size_bounds.width_max - widths[i];
            long long give = std::min(room, extra * room / slack);
            widths[i] += static_cast<int>(give);
            given_total += give;
            if (widths[i] >= row[i]->size_bounds.width_max) capped[i] = true;
        }
        if (given_total == 0) {
            // distribute single remaining pixels left to right
            bool placed = false;
            for (int i = 0; i < n && extra > 0; ++i) {
                if (widths[i] < row[i]->size_bounds.width_max) {
                    ++widths[i];
                    --extra;
                    placed = true;
                }
            }
            if (!placed) break;
            continue;
        }
        extra -= given_total;
    }
    return widths;
}

int clamp(int v, int lo, int hi) { return std::max(lo, std::min(v, hi)); }

}  // namespace

LayoutSolution solve_layout(const ConstraintSystem& system) {
    LayoutSolution sol;
    const int r_tv = system.row_width;
    int y = 0;         // frame y of the next row
    int row_index = 0;
    bool first_row = true;

    for (std::size_t ui = 0; ui < system.units.size(); ++ui) {
        const FormulaUnit& unit = system.units[ui];
        if (unit.vertical) {
            int cy = 0;
            for (std::size_t ii = 0; ii < unit.items.size(); ++ii) {
                const LayoutItem& li = unit.items[ii];
                SolvedItem s;
                s.id = li.id;
                s.unit = static_cast<int>(ui);
                s.row = static_cast<int>(ii);
                s.left = 0;
                s.top = cy;
                s.width = li.width_pref;
                s.height = li.height_pref;
                s.abs_left = system.rail_origin_x;
                s.abs_top = system.content_origin_y + cy;
                s.content = li.content;
                cy += li.height_pref + system.config.channel_item_gap;
                sol.items.push_back(std::move(s));
            }
            continue;
        }

        // Phase 1: placement. Wrap exactly when r_a < width_min (C2),
        // stay on the row when r_a >= width_min (C1).
        std::vector<std::vector<const LayoutItem*>> rows;
        int r_a = r_tv;
        for (const auto& li : unit.items) {
            if (li.size_bounds.width_min > r_tv)
                throw Infeasible("item " + li.id + " is wider than the row even at minimum");
            if (rows.empty() || r_a < li.size_bounds.width_min) {
                rows.emplace_back();
                r_a = r_tv;
            }
            rows.back().push_back(&li);
            r_a -= li.size_bounds.width_min;
        }

        // Phase 2: sizing, then stack the realized rows.
        for (const auto& row : rows) {
            std::vector<int> widths = fill_row_widths(row, r_tv);
            int row_height = 0;
            for (std::size_t i = 0; i < row.size(); ++i)
                row_height = std::max(row_height,
                                      clamp(row[i]->height_pref, row[i]->size_bounds.height_min,
                                            row[i]->size_bounds.height_max));
            if (!first_row) y += system.config.row_gap;
            first_row = false;

            int x = 0;
            int sum_width = 0;
            for (std::size_t i = 0; i < row.size(); ++i) {
                const LayoutItem& li = *row[i];
                SolvedItem s;
                s.id = li.id;
                s.unit = static_cast<int>(ui);
                s.row = row_index;
                s.left = x;
                s.top = y;
                s.width = widths[i];
                s.height = clamp(li.height_pref, li.size_bounds.height_min,
                                 li.size_bounds.height_max);
                s.abs_left = system.content_origin_x + x;
                s.abs_top = system.content_origin_y + y;
                s.content = li.content;
                x += widths[i];
                sum_width += widths[i];
                sol.items.push_back(std::move(s));
            }
            int residual = std::abs(sum_width - r_tv);
            sol.row_residuals.push_back(residual);
            sol.objective += system.config.fill_weight * residual;
            y += row_height;
            ++row_index;
        }
    }
    sol.total_height = y;
    return sol;
}

bool verify_hard_constraints(const ConstraintSystem& system,
                             const LayoutSolution& solution, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int r_tv = system.row_width;

    // index items per unit in input order
    std::size_t cursor = 0;
    for (std::size_t ui = 0; ui < system.units.size(); ++ui) {
        const FormulaUnit& unit = system.units[ui];
        std::vector<const SolvedItem*> solved;
        for (const auto& li : unit.items) {
            if (cursor >= solution.items.size()) return fail("missing solved item " + li.id);
            const SolvedItem& s = solution.items[cursor++];
            if (s.id != li.id) return fail("solution order mismatch at " + li.id);
            solved.push_back(&s);
        }
        if (unit.vertical) continue;

        for (std::size_t i = 0; i < solved.size(); ++i) {
            const LayoutItem& li = unit.items[i];
            const SolvedItem& s = *solved[i];
            // C3
            if (s.width < li.size_bounds.width_min || s.width > li.size_bounds.width_max ||
                s.height < li.size_bounds.height_min || s.height > li.size_bounds.height_max)
                return fail("C3 violated for " + s.id);
            if (s.left < 0 || s.left + s.width > r_tv)
                return fail("row containment violated for " + s.id);

            if (i == 0) {
                if (s.left != 0) return fail("first item of a unit must anchor at left=0");
                continue;
            }
            const SolvedItem& prev = *solved[i - 1];
            int r_a_c1 = r_tv - s.left;  // available width where the item sits
            bool c1 = s.left == prev.left + prev.width && s.top == prev.top &&
                      r_a_c1 >= li.size_bounds.width_min;
            // C2: wraps to the left edge, below the tallest item of the
            // previous row, and only because the row ran out of space.
            int prev_row_bottom = 0;
            int r_a_after_prev_row = r_tv;
            for (std::size_t k = 0; k < i; ++k) {
                if (solved[k]->row == prev.row) {
                    prev_row_bottom = std::max(prev_row_bottom, solved[k]->top + solved[k]->height);
                    r_a_after_prev_row -= solved[k]->width;
                }
            }
            bool c2 = s.left == 0 && s.top >= prev_row_bottom &&
                      r_a_after_prev_row < li.size_bounds.width_min;
            if (c1 == c2) return fail("exactly one of C1/C2 must hold for " + s.id);
        }

        // no overlap within the unit
        for (std::size_t i = 0; i < solved.size(); ++i)
            for (std::size_t j = i + 1; j < solved.size(); ++j) {
                const SolvedItem& a = *solved[i];
                const SolvedItem& b = *solved[j];
                bool overlap = a.left < b.left + b.width && b.left < a.left + a.width &&
                               a.top < b.top + b.height && b.top < a.top + a.height;
                if (overlap) return fail("items " + a.id + " and " + b.id + " overlap");
            }
    }
    return true;
}

std::pair<TvPage, std::vector<std::string>> prune_overflow(const TvPage& page,
                                                           const ScreenInfo& tv_screen,
                                                           int max_height,
                                                           const SizeTable& size_table,
                                                           const LayoutConfig& cfg) {
    TvPage current = page;
    std::vector<std::string> pruned;

    for (;;) {
        bool fits = false;
        try {
            ConstraintSystem sys = build_constraints(current, tv_screen, size_table, cfg);
            LayoutSolution sol = solve_layout(sys);
            fits = sol.total_height <= max_height;
        } catch (const Infeasible&) {
            fits = false;
        }
        if (fits) return {current, pruned};

        // Remove the smallest phone-area item; never empty out a group.
        int best_g = -1, best_i = -1;
        std::int64_t best_area = 0;
        for (std::size_t gi = 0; gi < current.groups.size(); ++gi) {
            const TvGroup& g = current.groups[gi];
            if (g.items.size() <= 1) continue;
            for (std::size_t ii = 0; ii < g.items.size(); ++ii) {
                std::int64_t a = g.items[ii].phone_area;
                if (best_g < 0 || a < best_area) {
                    best_g = static_cast<int>(gi);
                    best_i = static_cast<int>(ii);
                    best_area = a;
                }
            }
        }
        if (best_g < 0)
            throw CannotFit("page still exceeds the canvas with one item per group");
        pruned.push_back(current.groups[best_g].items[best_i].id);
        current.groups[best_g].items.erase(current.groups[best_g].items.begin() + best_i);
    }
}

std::string solution_to_json(const LayoutSolution& solution) {
    ordered_json doc;
    doc["objective"] = solution.objective;
    doc["total_height"] = solution.total_height;
    doc["row_residuals"] = solution.row_residuals;
    doc["pruned"] = solution.pruned;
    doc["items"] = ordered_json::array();
    for (const auto& s : solution.items) {
        ordered_json j;
        j["id"] = s.id;
        j["unit"] = s.unit;
        j["row"] = s.row;
        j["left"] = s.left;
        j["top"] = s.top;
        j["width"] = s.width;
        j["height"] = s.height;
        j["abs_left"] = s.abs_left;
        j["abs_top"] = s.abs_top;
        doc["items"].push_back(std::move(j));
    }
    return doc.dump(2);
}

}  // namespace tvcast
