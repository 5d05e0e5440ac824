#include "tvcast/classify.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

namespace tvcast {

using ordered_json = nlohmann::ordered_json;

const char* phone_category_name(PhoneGroupCategory c) {
    switch (c) {
        case PhoneGroupCategory::IconInfo: return "IconInfo";
        case PhoneGroupCategory::ToolBar: return "ToolBar";
        case PhoneGroupCategory::BottomTabLayout: return "BottomTabLayout";
        case PhoneGroupCategory::Search: return "Search";
        case PhoneGroupCategory::TopTabLayout: return "TopTabLayout";
        case PhoneGroupCategory::PicSideInfo: return "PicSideInfo";
        case PhoneGroupCategory::PicInfo: return "PicInfo";
        case PhoneGroupCategory::SideNav: return "SideNav";
        case PhoneGroupCategory::ShortVideoPlayer: return "ShortVideoPlayer";
        case PhoneGroupCategory::VideoMusicPlayer: return "VideoMusicPlayer";
        case PhoneGroupCategory::BigPic: return "BigPic";
        case PhoneGroupCategory::ListView: return "ListView";
        case PhoneGroupCategory::Others: return "Others";
    }
    return "Others";
}

static PhoneGroupCategory phone_category_from_name(const std::string& name) {
    static const PhoneGroupCategory all[] = {
        PhoneGroupCategory::IconInfo, PhoneGroupCategory::ToolBar,
        PhoneGroupCategory::BottomTabLayout, PhoneGroupCategory::Search,
        PhoneGroupCategory::TopTabLayout, PhoneGroupCategory::PicSideInfo,
        PhoneGroupCategory::PicInfo, PhoneGroupCategory::SideNav,
        PhoneGroupCategory::ShortVideoPlayer, PhoneGroupCategory::VideoMusicPlayer,
        PhoneGroupCategory::BigPic, PhoneGroupCategory::ListView,
        PhoneGroupCategory::Others};
    for (auto c : all)
        if (name == phone_category_name(c)) return c;
    throw Error("unknown phone category: " + name);
}

// Tie-break priority is the catalog order.
const std::vector<TemplateSpec>& default_templates() {
    static const std::vector<TemplateSpec> catalog = {
        {PhoneGroupCategory::ToolBar,
         {"kind:ActionBar", "band:top", "keyword:toolbar|actionbar|action_bar|title|back", "size:short"}},
        {PhoneGroupCategory::Search,
         {"kind:SearchBox", "keyword:search", "half:top"}},
        {PhoneGroupCategory::TopTabLayout,
         {"kind:TabBar", "band:top", "keyword:tab", "members:multiple"}},
        {PhoneGroupCategory::BottomTabLayout,
         {"kind:TabBar", "band:bottom", "keyword:tab", "members:multiple"}},
        {PhoneGroupCategory::SideNav,
         {"kind:SideNavContainer", "band:left", "keyword:nav|drawer", "size:tall"}},
        {PhoneGroupCategory::VideoMusicPlayer,
         {"kind:Player", "keyword:player|video|music|media", "size:wide"}},
        {PhoneGroupCategory::ListView,
         {"kind:ListContainer", "keyword:list|recycler|grid", "size:tall", "rows:3"}},
        {PhoneGroupCategory::IconInfo,
         {"kind:Image", "image:small", "kind:Text", "text:right_or_below_image"}},
        {PhoneGroupCategory::PicSideInfo,
         {"kind:Image", "kind:Text", "text:right_of_image", "image:not_small"}},
        {PhoneGroupCategory::PicInfo,
         {"kind:Image", "kind:Text", "text:below_image", "image:not_small"}},
        {PhoneGroupCategory::BigPic,
         {"kind:Image", "image:full_width", "text:none_right_of_image"}},
        {PhoneGroupCategory::ShortVideoPlayer,
         {"kind:Player", "size:tall", "keyword:short|feed|reel"}},
    };
    return catalog;
}

std::vector<TemplateSpec> load_templates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open template catalog: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<TemplateSpec> out;
    for (const auto& e : doc.at("templates")) {
        TemplateSpec t;
        t.category = phone_category_from_name(e.at("category").get<std::string>());
        for (const auto& p : e.at("predicates")) t.predicates.push_back(p.get<std::string>());
        if (t.predicates.size() < 2)
            throw Error("template " + std::string(phone_category_name(t.category)) +
                        " needs at least 2 predicates");
        out.push_back(std::move(t));
    }
    if (out.empty()) throw Error("template catalog is empty: " + path);
    return out;
}

// ---------------------------------------------------------------------------
// Predicate evaluation

namespace {

bool contains_ci(const std::string& haystack, const std::string& needle) {
    auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                          [](char a, char b) {
                              return std::tolower(static_cast<unsigned char>(a)) ==
                                     std::tolower(static_cast<unsigned char>(b));
                          });
    return it != haystack.end();
}

std::vector<std::string> split_alternatives(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto bar = s.find('|', start);
        out.push_back(s.substr(start, bar - start));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return out;
}

// Members and the row's container node both carry attribute cues; the
// container is where classes like TabLayout or RecyclerView live.
bool any_member_kind(const ComponentGroup& g, const std::string& names) {
    for (const auto& name : split_alternatives(names)) {
        for (const auto& m : g.members)
            if (name == widget_kind_name(m.node->widget_kind)) return true;
        if (g.container && name == widget_kind_name(g.container->widget_kind)) return true;
    }
    return false;
}

bool node_keyword(const UiNode& n, const std::string& kw) {
    if (contains_ci(n.class_name, kw)) return true;
    return n.resource_id && contains_ci(*n.resource_id, kw);
}

bool any_keyword(const ComponentGroup& g, const std::string& kws) {
    for (const auto& kw : split_alternatives(kws)) {
        for (const auto& m : g.members)
            if (node_keyword(*m.node, kw)) return true;
        if (g.container && node_keyword(*g.container, kw)) return true;
    }
    return false;
}

const UiNode* find_image(const ComponentGroup& g,
                         bool (*pred)(const Bounds&, const ScreenInfo&, const ClassifyConfig&),
                         const ScreenInfo& s, const ClassifyConfig& cfg) {
    for (const auto& m : g.members)
        if (m.node->widget_kind == WidgetKind::Image && pred(m.node->bounds, s, cfg))
            return m.node;
    return nullptr;
}

bool image_small(const Bounds& b, const ScreenInfo& s, const ClassifyConfig& cfg) {
    if (b.width() > cfg.small_image * s.width_px) return false;
    double aspect = b.height() == 0 ? 0.0 : static_cast<double>(b.width()) / b.height();
    return aspect >= 0.5 && aspect <= 2.0;
}
bool image_not_small(const Bounds& b, const ScreenInfo& s, const ClassifyConfig& cfg) {
    return b.width() > cfg.small_image * s.width_px;
}
bool image_full_width(const Bounds& b, const ScreenInfo& s, const ClassifyConfig& cfg) {
    return b.width() >= cfg.full_width * s.width_px;
}

bool text_below_image(const ComponentGroup& g) {
    for (const auto& img : g.members) {
        if (img.node->widget_kind != WidgetKind::Image) continue;
        for (const auto& txt : g.members) {
            if (txt.node->widget_kind != WidgetKind::Text) continue;
            if (txt.node->bounds.top >= img.node->bounds.bottom &&
                txt.node->bounds.x_overlap(img.node->bounds) > 0)
                return true;
        }
    }
    return false;
}

bool text_right_of_image(const ComponentGroup& g) {
    for (const auto& img : g.members) {
        if (img.node->widget_kind != WidgetKind::Image) continue;
        for (const auto& txt : g.members) {
            if (txt.node->widget_kind != WidgetKind::Text) continue;
            if (txt.node->bounds.left >= img.node->bounds.right &&
                txt.node->bounds.y_overlap(img.node->bounds) > 0)
                return true;
        }
    }
    return false;
}

}  // namespace

bool eval_predicate(const std::string& name, const ComponentGroup& group,
                    const ScreenInfo& screen, const ClassifyConfig& cfg) {
    auto colon = name.find(':');
    std::string head = name.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
    const Bounds& b = group.bounding;
    const double w = screen.width_px, h = screen.height_px;

    if (head == "kind") return any_member_kind(group, arg);
    if (head == "keyword") return any_keyword(group, arg);
    if (head == "band") {
        if (arg == "top") return b.top < cfg.top_band * h;
        if (arg == "bottom") return b.bottom > (1.0 - cfg.bottom_band) * h;
        if (arg == "left") return b.right <= cfg.left_band * w;
    }
    if (head == "half") {
        if (arg == "top") return b.top < 0.5 * h;
        if (arg == "bottom") return b.bottom > 0.5 * h;
    }
    if (head == "image") {
        if (arg == "small") return find_image(group, image_small, screen, cfg) != nullptr;
        if (arg == "not_small") return find_image(group, image_not_small, screen, cfg) != nullptr;
        if (arg == "full_width") return find_image(group, image_full_width, screen, cfg) != nullptr;
    }
    if (head == "text") {
        if (arg == "below_image") return text_below_image(group);
        if (arg == "right_of_image") return text_right_of_image(group);
        if (arg == "right_or_below_image")
            return text_below_image(group) || text_right_of_image(group);
        if (arg == "none_right_of_image") return !text_right_of_image(group);
    }
    if (head == "members") {
        if (arg == "multiple") return group.members.size() >= 2;
        if (arg == "many") return group.members.size() >= 3;
    }
    if (head == "size") {
        if (arg == "short") return b.height() <= 0.12 * h;
        if (arg == "tall") return b.height() >= 0.4 * h;
        if (arg == "wide") return b.width() >= cfg.full_width * w;
    }
    if (head == "rows") {
        int n = std::atoi(arg.c_str());
        return group.kind == GroupKind::MultiRow &&
               static_cast<int>(group.row_spans.size()) >= n;
    }
    throw Error("unknown template predicate: " + name);
}

ClassifiedGroup match_template(const ComponentGroup& group,
                               const std::vector<TemplateSpec>& templates,
                               const ScreenInfo& screen, const ClassifyConfig& cfg) {
    ClassifiedGroup best;
    best.group = group;
    best.category = PhoneGroupCategory::Others;
    best.matched_attribute_count = 0;

    int best_count = cfg.threshold;  // must strictly exceed the threshold
    for (const auto& tpl : templates) {
        int count = 0;
        std::vector<std::string> matched;
        for (const auto& p : tpl.predicates) {
            if (eval_predicate(p, group, screen, cfg)) {
                ++count;
                matched.push_back(p);
            }
        }
        if (count > best_count) {  // earlier templates win ties
            best_count = count;
            best.category = tpl.category;
            best.matched_attribute_count = count;
            best.matched_attribute_names = std::move(matched);
        }
    }
    return best;
}

std::vector<ClassifiedGroup> classify_page(const GroupingResult& result,
                                           const ScreenInfo& screen,
                                           const std::vector<TemplateSpec>& templates,
                                           const ClassifyConfig& cfg) {
    std::vector<ClassifiedGroup> out;
    for (const auto& g : result.groups) out.push_back(match_template(g, templates, screen, cfg));
    for (const auto& l : result.ungrouped) {
        ComponentGroup g;
        g.kind = GroupKind::Singleton;
        g.members = {l};
        g.recompute_bounding();
        out.push_back(match_template(g, templates, screen, cfg));
    }
    std::stable_sort(out.begin(), out.end(), [](const ClassifiedGroup& a, const ClassifiedGroup& b) {
        if (a.group.bounding.top != b.group.bounding.top)
            return a.group.bounding.top < b.group.bounding.top;
        if (a.group.bounding.left != b.group.bounding.left)
            return a.group.bounding.left < b.group.bounding.left;
        return a.group.members.front().doc_index < b.group.members.front().doc_index;
    });
    return out;
}

std::string classified_to_json(const std::vector<ClassifiedGroup>& classified) {
    ordered_json doc = ordered_json::array();
    for (const auto& c : classified) {
        ordered_json j;
        j["category"] = phone_category_name(c.category);
        j["matched_count"] = c.matched_attribute_count;
        j["matched"] = c.matched_attribute_names;
        j["kind"] = group_kind_name(c.group.kind);
        j["bounding"] = format_bounds(c.group.bounding);
        j["member_count"] = c.group.members.size();
        doc.push_back(std::move(j));
    }
    return doc.dump(2);
}

}  // namespace tvcast
