#pragma once

// Random hierarchy generator plus an independent brute-force oracle for
// row formation, shared by the grouping tests and the acceptance suite.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "tvcast/grouping.hpp"
#include "tvcast/hierarchy.hpp"

namespace treegen {

// Recursively split `area` into child rectangles. Leaves get Text or
// Image kinds; containers stay Other. Gaps between siblings are random
// so subtree widths vary around the grouping threshold.
inline tvcast::UiNode random_tree(std::mt19937& rng, tvcast::Bounds area, int depth) {
    tvcast::UiNode n;
    n.bounds = area;
    std::uniform_int_distribution<int> pct(0, 99);
    bool leaf = depth >= 4 || area.width() < 60 || area.height() < 60 || pct(rng) < 25 * depth;
    if (leaf) {
        n.class_name =
            pct(rng) < 50 ? "android.widget.TextView" : "android.widget.ImageView";
        n.widget_kind = n.class_name.find("Text") != std::string::npos
                            ? tvcast::WidgetKind::Text
                            : tvcast::WidgetKind::Image;
        return n;
    }
    n.class_name = "android.widget.LinearLayout";
    std::uniform_int_distribution<int> nkids(1, 3);
    int kids = nkids(rng);
    bool horizontal = pct(rng) < 60;
    int span = horizontal ? area.width() : area.height();
    int slice = span / kids;
    for (int k = 0; k < kids; ++k) {
        int a = k * slice, b = (k + 1 == kids) ? span : (k + 1) * slice;
        // random inset keeps child strictly inside its slot
        std::uniform_int_distribution<int> inset(0, std::max(0, (b - a) / 4));
        int lo = a + inset(rng), hi = b - inset(rng);
        if (hi - lo < 8) continue;
        tvcast::Bounds child = horizontal
                                   ? tvcast::Bounds{area.left + lo, area.top, area.left + hi,
                                                    area.bottom}
                                   : tvcast::Bounds{area.left, area.top + lo, area.right,
                                                    area.top + hi};
        n.children.push_back(random_tree(rng, child, depth + 1));
    }
    if (n.children.empty()) {
        n.class_name = "android.widget.TextView";
        n.widget_kind = tvcast::WidgetKind::Text;
    }
    return n;
}

inline tvcast::DomTree random_dom(std::mt19937& rng, int width = 1000, int height = 2000) {
    tvcast::DomTree t;
    t.root = random_tree(rng, {0, 0, width, height}, 0);
    t.screen = {width, height, tvcast::Orientation::Portrait};
    return t;
}

using LeafPartition = std::set<std::set<const tvcast::UiNode*>>;

// Independent reimplementation of row formation: for each not-yet-taken
// leaf in document order, climb to the first ancestor at least w_group
// wide (or the root) and sweep every remaining leaf inside it.
inline LeafPartition oracle_rows(const tvcast::DomTree& tree, double w_group) {
    std::map<const tvcast::UiNode*, const tvcast::UiNode*> parent;
    std::vector<const tvcast::UiNode*> leaves;
    auto walk = [&](auto&& self, const tvcast::UiNode& n, const tvcast::UiNode* p) -> void {
        parent[&n] = p;
        if (n.children.empty()) {
            if (!n.bounds.zero_area()) leaves.push_back(&n);
            return;
        }
        for (const auto& c : n.children) self(self, c, &n);
    };
    walk(walk, tree.root, nullptr);

    auto inside = [&](const tvcast::UiNode* leaf, const tvcast::UiNode* anc) {
        for (const tvcast::UiNode* n = leaf; n; n = parent.at(n))
            if (n == anc) return true;
        return false;
    };

    LeafPartition rows;
    std::set<const tvcast::UiNode*> taken;
    for (const tvcast::UiNode* leaf : leaves) {
        if (taken.count(leaf)) continue;
        const tvcast::UiNode* anc = leaf;
        while (anc->bounds.width() < w_group && parent.at(anc)) anc = parent.at(anc);
        std::set<const tvcast::UiNode*> row;
        for (const tvcast::UiNode* other : leaves)
            if (!taken.count(other) && inside(other, anc)) row.insert(other);
        for (const tvcast::UiNode* m : row) taken.insert(m);
        rows.insert(std::move(row));
    }
    return rows;
}

inline LeafPartition partition_of(const std::vector<tvcast::ComponentGroup>& rows) {
    LeafPartition p;
    for (const auto& r : rows) {
        std::set<const tvcast::UiNode*> s;
        for (const auto& m : r.members) s.insert(m.node);
        p.insert(std::move(s));
    }
    return p;
}

}  // namespace treegen
