#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvcast/geometry.hpp"

namespace tvcast {

enum class WidgetKind {
    Text,
    Image,
    Button,
    TabBar,
    ActionBar,
    ListContainer,
    Player,
    SearchBox,
    SideNavContainer,
    WebContent,
    Other,
};

const char* widget_kind_name(WidgetKind k);

struct UiNode {
    WidgetKind widget_kind = WidgetKind::Other;
    Bounds bounds;
    std::optional<std::string> text;
    std::optional<std::string> resource_id;
    std::string class_name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<UiNode> children;

    bool is_leaf() const { return children.empty(); }
    std::optional<std::string> attribute(const std::string& name) const;
};

struct DomTree {
    UiNode root;
    ScreenInfo screen;
    int node_count = 0;
};

struct MalformedXml : Error {
    using Error::Error;
};
struct EmptyHierarchy : Error {
    using Error::Error;
};

// Substring rules for mapping raw class names / resource ids to widget
// kinds. Class rules run first; id rules may override weak results
// (Text, Image, Button, Other) so e.g. a Button with id "searchBtn"
// still becomes a SearchBox. Loadable from JSON so third-party views
// can be covered without rebuilding.
struct WidgetKindRules {
    std::vector<std::pair<std::string, WidgetKind>> class_rules;
    std::vector<std::pair<std::string, WidgetKind>> id_rules;

    static const WidgetKindRules& defaults();
    static WidgetKindRules load(const std::string& path);
};

WidgetKind infer_widget_kind(const UiNode& node,
                             const WidgetKindRules& rules = WidgetKindRules::defaults());

DomTree parse_hierarchy(const std::string& xml_text,
                        std::optional<ScreenInfo> screen = std::nullopt,
                        const WidgetKindRules& rules = WidgetKindRules::defaults());

}  // namespace tvcast
