#include "tvcast/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

namespace tvcast {

using ordered_json = nlohmann::ordered_json;

const char* group_kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::TextPair: return "TextPair";
        case GroupKind::ImageWithText: return "ImageWithText";
        case GroupKind::Row: return "Row";
        case GroupKind::MultiRow: return "MultiRow";
        case GroupKind::Singleton: return "Singleton";
    }
    return "Row";
}

void ComponentGroup::recompute_bounding() {
    if (members.empty()) return;
    bounding = members.front().node->bounds;
    for (const auto& m : members) bounding = bounding.united(m.node->bounds);
}

static void count_subtree(const UiNode& node, int& index) {
    ++index;
    for (const auto& c : node.children) count_subtree(c, index);
}

static void collect_leaves_rec(const UiNode& node, int& index, std::vector<LeafRef>& out) {
    int my_index = index++;
    // Opaque WebView subtree: one leaf regardless of children.
    if (node.widget_kind == WidgetKind::WebContent) {
        if (!node.bounds.zero_area()) out.push_back({&node, my_index});
        for (const auto& c : node.children) count_subtree(c, index);
        return;
    }
    if (node.is_leaf()) {
        if (!node.bounds.zero_area()) out.push_back({&node, my_index});
        return;
    }
    for (const auto& c : node.children) collect_leaves_rec(c, index, out);
}

std::vector<LeafRef> collect_leaves(const DomTree& tree) {
    std::vector<LeafRef> out;
    int index = 0;
    collect_leaves_rec(tree.root, index, out);
    return out;
}

// ---------------------------------------------------------------------------
// Atomic grouping

namespace {

bool is_text(const LeafRef& l) { return l.node->widget_kind == WidgetKind::Text; }
bool is_image(const LeafRef& l) {
    return l.node->widget_kind == WidgetKind::Image;
}

// Vertical gap from upper to lower; negative when not strictly below.
int y_gap(const Bounds& upper, const Bounds& lower) { return lower.top - upper.bottom; }

int x_distance(const Bounds& a, const Bounds& b) {
    return std::abs(a.center_x() - b.center_x());
}

}  // namespace

std::vector<ComponentGroup> group_text_pairs(const std::vector<LeafRef>& leaves,
                                             const ScreenInfo& screen,
                                             const GroupingConfig& cfg) {
    const double x_limit = cfg.gap_coefficient * screen.width_px;
    const double y_limit = cfg.gap_coefficient * screen.height_px;

    std::vector<LeafRef> texts;
    for (const auto& l : leaves)
        if (is_text(l)) texts.push_back(l);

    struct Candidate {
        int upper, lower;  // indices into texts
        int gap_y;
        int dist_x;
    };
    std::vector<Candidate> candidates;
    for (std::size_t u = 0; u < texts.size(); ++u) {
        const Bounds& bu = texts[u].node->bounds;
        // nearest text strictly below the upper one
        int best = -1;
        int best_gap = 0;
        for (std::size_t s = 0; s < texts.size(); ++s) {
            if (s == u) continue;
            const Bounds& bs = texts[s].node->bounds;
            int g = y_gap(bu, bs);
            if (g < 0) continue;
            if (best < 0 || g < best_gap ||
                (g == best_gap && x_distance(bu, bs) < x_distance(bu, texts[best].node->bounds))) {
                best = static_cast<int>(s);
                best_gap = g;
            }
        }
        if (best < 0) continue;
        const Bounds& bs = texts[best].node->bounds;
        if (!(best_gap < y_limit)) continue;  // strict per "must be less than"
        bool x_ok = bu.x_overlap(bs) > 0 || bu.x_gap(bs) < x_limit;
        if (!x_ok) continue;
        candidates.push_back({static_cast<int>(u), best, best_gap, x_distance(bu, bs)});
    }

    std::stable_sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.gap_y != b.gap_y) return a.gap_y < b.gap_y;
        if (a.dist_x != b.dist_x) return a.dist_x < b.dist_x;
        return texts[a.upper].doc_index < texts[b.upper].doc_index;
    });

    std::vector<bool> used(texts.size(), false);
    std::vector<ComponentGroup> out;
    for (const auto& c : candidates) {
        if (used[c.upper] || used[c.lower]) continue;
        used[c.upper] = used[c.lower] = true;
        ComponentGroup g;
        g.kind = GroupKind::TextPair;
        g.members = {texts[c.upper], texts[c.lower]};
        g.recompute_bounding();
        out.push_back(std::move(g));
    }
    std::stable_sort(out.begin(), out.end(), [](const ComponentGroup& a, const ComponentGroup& b) {
        return a.members.front().doc_index < b.members.front().doc_index;
    });
    return out;
}

std::vector<ComponentGroup> group_image_text(const std::vector<LeafRef>& leaves,
                                             const ScreenInfo& screen,
                                             const GroupingConfig& cfg,
                                             std::vector<ComponentGroup> pairs) {
    const double y_limit = cfg.gap_coefficient * screen.height_px;

    std::vector<LeafRef> texts;
    for (const auto& l : leaves)
        if (is_text(l)) texts.push_back(l);

    auto pair_of = [&](const LeafRef& t) -> int {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (const auto& m : pairs[i].members)
                if (m.node == t.node) return static_cast<int>(i);
        return -1;
    };

    std::set<const UiNode*> taken;
    std::set<int> consumed_pairs;
    std::vector<ComponentGroup> out;

    for (const auto& img : leaves) {
        if (!is_image(img)) continue;
        const Bounds& bi = img.node->bounds;
        // nearest text below the image
        const LeafRef* best = nullptr;
        int best_gap = 0;
        for (const auto& t : texts) {
            if (taken.count(t.node)) continue;
            int g = y_gap(bi, t.node->bounds);
            if (g < 0) continue;
            if (!best || g < best_gap ||
                (g == best_gap && x_distance(bi, t.node->bounds) < x_distance(bi, best->node->bounds))) {
                best = &t;
                best_gap = g;
            }
        }
        if (!best) continue;
        if (!(best_gap < y_limit)) continue;
        const Bounds& bt = best->node->bounds;
        bool midpoints_equal = bi.center_x() == bt.center_x();
        int overlap = bi.x_overlap(bt);
        int min_width = std::min(bi.width(), bt.width());
        if (!midpoints_equal && !(overlap > cfg.overlap_fraction * min_width)) continue;

        ComponentGroup g;
        g.kind = GroupKind::ImageWithText;
        g.members = {img};
        int pi = pair_of(*best);
        if (pi >= 0 && !consumed_pairs.count(pi)) {
            // "pack both texts as the relevant texts"
            for (const auto& m : pairs[pi].members) {
                g.members.push_back(m);
                taken.insert(m.node);
            }
            consumed_pairs.insert(pi);
        } else {
            g.members.push_back(*best);
            taken.insert(best->node);
        }
        g.recompute_bounding();
        out.push_back(std::move(g));
    }

    // Pairs whose texts joined an image group are gone; the rest survive.
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (!consumed_pairs.count(i)) out.push_back(std::move(pairs[i]));

    std::stable_sort(out.begin(), out.end(), [](const ComponentGroup& a, const ComponentGroup& b) {
        return a.members.front().doc_index < b.members.front().doc_index;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Row grouping (ancestor backtracking)

namespace {

struct TreeIndex {
    std::map<const UiNode*, const UiNode*> parent;
    std::map<const UiNode*, int> doc_index;

    void build(const UiNode& node, const UiNode* par, int& idx) {
        parent[&node] = par;
        doc_index[&node] = idx++;
        for (const auto& c : node.children) build(c, &node, idx);
    }
};

// Lowest common ancestor via parent chains.
const UiNode* lca(const TreeIndex& ti, const UiNode* a, const UiNode* b) {
    std::set<const UiNode*> chain;
    for (const UiNode* n = a; n; n = ti.parent.at(n)) chain.insert(n);
    for (const UiNode* n = b; n; n = ti.parent.at(n)) {
        if (chain.count(n)) return n;
    }
    return nullptr;
}

void leaves_under(const UiNode* node, const std::set<const UiNode*>& leaf_set,
                  std::set<const UiNode*>& out) {
    if (leaf_set.count(node)) {
        out.insert(node);
        return;  // WebContent leaves are opaque
    }
    for (const auto& c : node->children) leaves_under(&c, leaf_set, out);
}

// One grouping unit: a fused atomic group or a bare leaf.
struct Unit {
    std::vector<LeafRef> members;
    GroupKind kind = GroupKind::Singleton;  // Singleton for bare leaves
    Bounds bounding;
    int doc_index = 0;
};

std::vector<ComponentGroup> rows_from_units(const DomTree& tree, const ScreenInfo& screen,
                                            const GroupingConfig& cfg,
                                            const std::vector<Unit>& units,
                                            std::vector<std::string>* warnings) {
    const double w_group = cfg.row_width_coefficient * screen.width_px;
    TreeIndex ti;
    int idx = 0;
    ti.build(tree.root, nullptr, idx);

    std::set<const UiNode*> leaf_set;
    std::map<const UiNode*, int> unit_of;  // leaf -> unit index
    for (std::size_t u = 0; u < units.size(); ++u)
        for (const auto& m : units[u].members) {
            leaf_set.insert(m.node);
            unit_of[m.node] = static_cast<int>(u);
        }

    std::vector<bool> consumed(units.size(), false);
    std::vector<ComponentGroup> rows;
    bool warned = false;

    for (std::size_t u = 0; u < units.size(); ++u) {
        if (consumed[u]) continue;
        // Start at the unit: a bare leaf node, or the LCA of an atomic pair.
        const UiNode* cur = units[u].members.front().node;
        for (std::size_t m = 1; m < units[u].members.size(); ++m)
            cur = lca(ti, cur, units[u].members[m].node);
        int cur_width = std::max(units[u].bounding.width(), cur->bounds.width());
        while (cur_width < w_group) {
            const UiNode* p = ti.parent.at(cur);
            if (!p) {
                if (warnings && !warned) {
                    warnings->push_back("DegenerateTree: root narrower than required row width");
                    warned = true;
                }
                break;
            }
            cur = p;
            cur_width = cur->bounds.width();
        }

        std::set<const UiNode*> subtree_leaves;
        leaves_under(cur, leaf_set, subtree_leaves);

        // Pull in whole units; an atomic partner outside the subtree still
        // belongs to the row its group fell into.
        std::set<int> row_units;
        for (const UiNode* l : subtree_leaves) {
            int ui = unit_of.at(l);
            if (!consumed[ui]) row_units.insert(ui);
        }
        if (row_units.empty()) continue;

        ComponentGroup row;
        std::vector<int> ordered(row_units.begin(), row_units.end());
        std::sort(ordered.begin(), ordered.end(), [&](int a, int b) {
            return units[a].doc_index < units[b].doc_index;
        });
        for (int ui : ordered) {
            consumed[ui] = true;
            for (const auto& m : units[ui].members) row.members.push_back(m);
        }
        if (ordered.size() == 1) {
            row.kind = units[ordered[0]].kind;  // lone atomic keeps its kind
        } else {
            row.kind = GroupKind::Row;
        }
        row.container = cur;
        row.recompute_bounding();
        rows.push_back(std::move(row));
    }

    std::stable_sort(rows.begin(), rows.end(), [](const ComponentGroup& a, const ComponentGroup& b) {
        if (a.bounding.top != b.bounding.top) return a.bounding.top < b.bounding.top;
        if (a.bounding.left != b.bounding.left) return a.bounding.left < b.bounding.left;
        return a.members.front().doc_index < b.members.front().doc_index;
    });
    return rows;
}

std::vector<Unit> make_units(const std::vector<LeafRef>& leaves,
                             const std::vector<ComponentGroup>& atomic) {
    std::map<const UiNode*, int> in_atomic;
    for (std::size_t i = 0; i < atomic.size(); ++i)
        for (const auto& m : atomic[i].members) in_atomic[m.node] = static_cast<int>(i);

    std::vector<Unit> units;
    std::set<int> emitted;
    for (const auto& l : leaves) {
        auto it = in_atomic.find(l.node);
        if (it == in_atomic.end()) {
            Unit u;
            u.members = {l};
            u.kind = GroupKind::Singleton;
            u.bounding = l.node->bounds;
            u.doc_index = l.doc_index;
            units.push_back(std::move(u));
        } else if (!emitted.count(it->second)) {
            emitted.insert(it->second);
            const auto& g = atomic[it->second];
            Unit u;
            u.members = g.members;
            u.kind = g.kind;
            u.bounding = g.bounding;
            u.doc_index = g.members.front().doc_index;
            units.push_back(std::move(u));
        }
    }
    return units;
}

}  // namespace

std::vector<ComponentGroup> group_rows(const DomTree& tree, const ScreenInfo& screen,
                                       const GroupingConfig& cfg,
                                       std::vector<std::string>* warnings) {
    auto leaves = collect_leaves(tree);
    auto units = make_units(leaves, {});
    return rows_from_units(tree, screen, cfg, units, warnings);
}

// ---------------------------------------------------------------------------
// Multi-row merging

namespace {

struct MemberSig {
    WidgetKind kind;
    int ulx, uly, llx, lly;  // corners relative to the row bounding origin
};

std::vector<MemberSig> row_signature(const ComponentGroup& row) {
    std::vector<MemberSig> sig;
    std::vector<LeafRef> sorted = row.members;
    std::stable_sort(sorted.begin(), sorted.end(), [](const LeafRef& a, const LeafRef& b) {
        if (a.node->bounds.left != b.node->bounds.left) return a.node->bounds.left < b.node->bounds.left;
        if (a.node->bounds.top != b.node->bounds.top) return a.node->bounds.top < b.node->bounds.top;
        return a.doc_index < b.doc_index;
    });
    for (const auto& m : sorted) {
        const Bounds& b = m.node->bounds;
        sig.push_back({m.node->widget_kind, b.left - row.bounding.left, b.top - row.bounding.top,
                       b.left - row.bounding.left, b.bottom - row.bounding.top});
    }
    return sig;
}

bool member_match(const MemberSig& a, const MemberSig& b, int tol) {
    if (a.kind != b.kind) return false;
    auto ok = [tol](int x, int y) { return std::abs(x - y) <= tol; };
    // The lower-left y offset is measured from each row's own top, so two
    // structurally equal rows at different heights compare equal.
    return ok(a.ulx, b.ulx) && ok(a.uly, b.uly) && ok(a.llx, b.llx) && ok(a.lly, b.lly);
}

bool rows_compatible(const ComponentGroup& a, const ComponentGroup& b,
                     const GroupingConfig& cfg) {
    auto sa = row_signature(a);
    auto sb = row_signature(b);
    const int tol = cfg.corner_tolerance_px;
    const int budget = cfg.allow_one_mismatch ? 1 : 0;

    if (sa.size() == sb.size()) {
        int mismatches = 0;
        for (std::size_t i = 0; i < sa.size(); ++i)
            if (!member_match(sa[i], sb[i], tol)) ++mismatches;
        return mismatches <= budget;
    }
    if (budget == 0) return false;
    const auto& longer = sa.size() > sb.size() ? sa : sb;
    const auto& shorter = sa.size() > sb.size() ? sb : sa;
    if (longer.size() != shorter.size() + 1) return false;
    for (std::size_t skip = 0; skip < longer.size(); ++skip) {
        bool ok = true;
        std::size_t j = 0;
        for (std::size_t i = 0; i < longer.size() && ok; ++i) {
            if (i == skip) continue;
            if (!member_match(longer[i], shorter[j], tol)) ok = false;
            ++j;
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

std::vector<ComponentGroup> merge_multirow(std::vector<ComponentGroup> rows,
                                           const GroupingConfig& cfg) {
    std::vector<ComponentGroup> out;
    std::size_t i = 0;
    while (i < rows.size()) {
        if (rows[i].kind != GroupKind::Row) {
            out.push_back(std::move(rows[i]));
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < rows.size() && rows[j + 1].kind == GroupKind::Row &&
               rows_compatible(rows[j], rows[j + 1], cfg))
            ++j;
        if (j == i) {
            out.push_back(std::move(rows[i]));
            ++i;
            continue;
        }
        ComponentGroup merged;
        merged.kind = GroupKind::MultiRow;
        merged.container = rows[i].container;
        for (std::size_t k = i; k <= j; ++k) {
            int first = static_cast<int>(merged.members.size());
            for (auto& m : rows[k].members) merged.members.push_back(m);
            merged.row_spans.emplace_back(first, static_cast<int>(merged.members.size()) - 1);
        }
        merged.recompute_bounding();
        out.push_back(std::move(merged));
        i = j + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------

GroupingResult group_page(const DomTree& tree, const ScreenInfo& screen,
                          const GroupingConfig& cfg) {
    GroupingResult result;
    auto leaves = collect_leaves(tree);
    result.original_leaf_count = static_cast<int>(leaves.size());
    if (leaves.empty()) return result;

    auto pairs = group_text_pairs(leaves, screen, cfg);
    auto atomic = group_image_text(leaves, screen, cfg, std::move(pairs));
    auto units = make_units(leaves, atomic);
    auto rows = rows_from_units(tree, screen, cfg, units, &result.warnings);
    auto merged = merge_multirow(std::move(rows), cfg);

    for (auto& g : merged) {
        if (g.kind == GroupKind::Singleton && g.members.size() == 1) {
            result.ungrouped.push_back(g.members.front());
        } else {
            result.groups.push_back(std::move(g));
        }
    }
    result.final_unit_count =
        static_cast<int>(result.groups.size() + result.ungrouped.size());
    return result;
}

// ---------------------------------------------------------------------------

static ordered_json leaf_json(const LeafRef& l) {
    ordered_json j;
    j["doc_index"] = l.doc_index;
    j["kind"] = widget_kind_name(l.node->widget_kind);
    j["class"] = l.node->class_name;
    j["resource_id"] = l.node->resource_id.value_or("");
    j["text"] = l.node->text.value_or("");
    j["bounds"] = format_bounds(l.node->bounds);
    return j;
}

std::string grouping_to_json(const GroupingResult& result) {
    ordered_json doc;
    doc["original_leaf_count"] = result.original_leaf_count;
    doc["final_unit_count"] = result.final_unit_count;
    doc["groups"] = ordered_json::array();
    for (const auto& g : result.groups) {
        ordered_json jg;
        jg["kind"] = group_kind_name(g.kind);
        jg["bounding"] = format_bounds(g.bounding);
        jg["members"] = ordered_json::array();
        for (const auto& m : g.members) jg["members"].push_back(leaf_json(m));
        if (!g.row_spans.empty()) {
            jg["row_spans"] = ordered_json::array();
            for (const auto& [a, b] : g.row_spans) jg["row_spans"].push_back({a, b});
        }
        doc["groups"].push_back(std::move(jg));
    }
    doc["ungrouped"] = ordered_json::array();
    for (const auto& l : result.ungrouped) doc["ungrouped"].push_back(leaf_json(l));
    doc["warnings"] = result.warnings;
    return doc.dump(2);
}

}  // namespace tvcast
