#pragma once

#include <string>
#include <vector>

#include "tvcast/hierarchy.hpp"

namespace tvcast {

struct GroupingConfig {
    double gap_coefficient = 0.025;
    double row_width_coefficient = 0.85;
    double overlap_fraction = 0.5;
    bool allow_one_mismatch = true;
    int corner_tolerance_px = 4;
};

enum class GroupKind { TextPair, ImageWithText, Row, MultiRow, Singleton };

const char* group_kind_name(GroupKind k);

// A leaf reference carries the node pointer plus its document-order index
// so downstream ordering stays deterministic.
struct LeafRef {
    const UiNode* node = nullptr;
    int doc_index = 0;
};

struct ComponentGroup {
    std::vector<LeafRef> members;  // ordered
    GroupKind kind = GroupKind::Row;
    Bounds bounding;
    // MultiRow only: [first, last] member index range of each row.
    std::vector<std::pair<int, int>> row_spans;
    // Row/MultiRow: the DOM node the row was trimmed at. Carries the
    // container class (TabLayout, RecyclerView, ...) classification uses.
    const UiNode* container = nullptr;

    void recompute_bounding();
};

struct GroupingResult {
    std::vector<ComponentGroup> groups;
    std::vector<LeafRef> ungrouped;
    int original_leaf_count = 0;
    int final_unit_count = 0;
    std::vector<std::string> warnings;
};

// Visible leaves of the tree in document order. Zero-area nodes are
// skipped; WebContent subtrees count as one opaque leaf.
std::vector<LeafRef> collect_leaves(const DomTree& tree);

std::vector<ComponentGroup> group_text_pairs(const std::vector<LeafRef>& leaves,
                                             const ScreenInfo& screen,
                                             const GroupingConfig& cfg);

std::vector<ComponentGroup> group_image_text(const std::vector<LeafRef>& leaves,
                                             const ScreenInfo& screen,
                                             const GroupingConfig& cfg,
                                             std::vector<ComponentGroup> pairs);

std::vector<ComponentGroup> group_rows(const DomTree& tree,
                                       const ScreenInfo& screen,
                                       const GroupingConfig& cfg,
                                       std::vector<std::string>* warnings = nullptr);

std::vector<ComponentGroup> merge_multirow(std::vector<ComponentGroup> rows,
                                           const GroupingConfig& cfg);

GroupingResult group_page(const DomTree& tree, const ScreenInfo& screen,
                          const GroupingConfig& cfg);

// Stable JSON (fixed key order) used by the CLI and golden tests.
std::string grouping_to_json(const GroupingResult& result);

}  // namespace tvcast
