#include "tvcast/transform.hpp"

#include <algorithm>

#include <json.hpp>

namespace tvcast {

using ordered_json = nlohmann::ordered_json;

const char* tv_category_name(TvGroupCategory c) {
    switch (c) {
        case TvGroupCategory::IconInfo: return "IconInfo";
        case TvGroupCategory::ToolBar: return "ToolBar";
        case TvGroupCategory::Search: return "Search";
        case TvGroupCategory::TabLayout: return "TabLayout";
        case TvGroupCategory::Channel: return "Channel";
        case TvGroupCategory::GridLayout: return "GridLayout";
        case TvGroupCategory::PicInfo: return "PicInfo";
        case TvGroupCategory::VideoMusicPlayer: return "VideoMusicPlayer";
        case TvGroupCategory::ListView: return "ListView";
    }
    return "GridLayout";
}

const char* size_class_name(SizeClass s) {
    switch (s) {
        case SizeClass::Large: return "large";
        case SizeClass::Medium: return "medium";
        case SizeClass::Small: return "small";
    }
    return "large";
}

TvGroupCategory map_category(PhoneGroupCategory phone) {
    switch (phone) {
        case PhoneGroupCategory::IconInfo: return TvGroupCategory::IconInfo;
        case PhoneGroupCategory::ToolBar: return TvGroupCategory::ToolBar;
        case PhoneGroupCategory::ListView: return TvGroupCategory::ListView;
        case PhoneGroupCategory::TopTabLayout: return TvGroupCategory::TabLayout;
        case PhoneGroupCategory::Search: return TvGroupCategory::Search;
        case PhoneGroupCategory::Others: return TvGroupCategory::GridLayout;
        case PhoneGroupCategory::VideoMusicPlayer: return TvGroupCategory::VideoMusicPlayer;
        case PhoneGroupCategory::PicSideInfo: return TvGroupCategory::PicInfo;
        case PhoneGroupCategory::PicInfo: return TvGroupCategory::PicInfo;
        case PhoneGroupCategory::BigPic: return TvGroupCategory::PicInfo;
        case PhoneGroupCategory::BottomTabLayout: return TvGroupCategory::Channel;
        case PhoneGroupCategory::SideNav: return TvGroupCategory::Channel;
        case PhoneGroupCategory::ShortVideoPlayer: return TvGroupCategory::VideoMusicPlayer;
    }
    return TvGroupCategory::GridLayout;
}

namespace {

bool node_selected(const UiNode& n) {
    auto v = n.attribute("selected");
    return v && *v == "true";
}

std::string short_id(const UiNode& n, const char* prefix, int i) {
    if (n.resource_id) {
        auto& rid = *n.resource_id;
        auto slash = rid.rfind('/');
        return slash == std::string::npos ? rid : rid.substr(slash + 1);
    }
    return std::string(prefix) + "_" + std::to_string(i);
}

std::string label_of(const UiNode& n, int i) {
    if (n.text && !n.text->empty()) return *n.text;
    return short_id(n, "item", i);
}

bool image_like(WidgetKind k) {
    return k == WidgetKind::Image || k == WidgetKind::Button;
}

// Card assembly: each image starts a card, following texts attach to it
// (first text becomes the title). Leading texts stand alone.
std::vector<TvItem> card_items(const ComponentGroup& g, TvContent image_content) {
    std::vector<TvItem> items;
    TvItem* card = nullptr;
    int i = 0;
    for (const auto& m : g.members) {
        const UiNode& n = *m.node;
        if (image_like(n.widget_kind) || n.widget_kind == WidgetKind::WebContent) {
            TvItem it;
            it.content = image_content;
            it.source = short_id(n, "img", i);
            it.phone_area = n.bounds.area();
            items.push_back(std::move(it));
            card = &items.back();
        } else if (n.widget_kind == WidgetKind::Player) {
            TvItem it;
            it.content = TvContent::Player;
            it.source = short_id(n, "player", i);
            it.phone_area = n.bounds.area();
            items.push_back(std::move(it));
            card = nullptr;
        } else {
            if (card) {
                if (card->text.empty()) card->text = label_of(n, i);
                card->phone_area += n.bounds.area();
            } else {
                TvItem it;
                it.content = TvContent::Text;
                it.text = label_of(n, i);
                it.phone_area = n.bounds.area();
                items.push_back(std::move(it));
            }
        }
        ++i;
    }
    return items;
}

std::vector<TvItem> text_items(const ComponentGroup& g) {
    std::vector<TvItem> items;
    int i = 0;
    for (const auto& m : g.members) {
        const UiNode& n = *m.node;
        TvItem it;
        it.content = TvContent::Text;
        it.text = label_of(n, i);
        it.selected = node_selected(n);
        it.phone_area = n.bounds.area();
        items.push_back(std::move(it));
        ++i;
    }
    return items;
}

SizeClass pick_size_class(int items_per_row, const TransformConfig& cfg) {
    if (items_per_row <= cfg.large_max_items) return SizeClass::Large;
    if (items_per_row <= cfg.medium_max_items) return SizeClass::Medium;
    return SizeClass::Small;
}

}  // namespace

TvPage build_tv_page(const std::vector<ClassifiedGroup>& classified,
                     const ScreenInfo& phone_screen, const ScreenInfo& tv_screen,
                     const TransformConfig& cfg) {
    (void)phone_screen;
    if (classified.empty()) throw EmptyPage("no classified groups to convert");
    if (tv_screen.orientation != Orientation::Landscape)
        throw Error("TV screen must be landscape");

    TvPage page;
    page.screen = tv_screen;

    TvGroup channel;  // bottom tabs and side nav merge into one left rail
    channel.category = TvGroupCategory::Channel;
    bool have_channel = false;

    int origin = 0;
    for (const auto& cg : classified) {
        TvGroupCategory cat = map_category(cg.category);
        TvGroup g;
        g.category = cat;
        g.origin_index = origin;
        g.phone_rows = std::max<std::size_t>(1, cg.group.row_spans.size());

        switch (cat) {
            case TvGroupCategory::Channel:
                for (auto& it : text_items(cg.group)) channel.items.push_back(std::move(it));
                channel.origin_index = have_channel ? channel.origin_index : origin;
                have_channel = true;
                ++origin;
                continue;
            case TvGroupCategory::TabLayout:
            case TvGroupCategory::ToolBar:
                g.items = text_items(cg.group);
                break;
            case TvGroupCategory::Search: {
                TvItem it;
                it.content = TvContent::Text;
                it.text = "Search";
                for (const auto& m : cg.group.members)
                    if (m.node->text && !m.node->text->empty()) {
                        it.text = *m.node->text;
                        break;
                    }
                it.phone_area = cg.group.bounding.area();
                g.items = {std::move(it)};
                break;
            }
            case TvGroupCategory::VideoMusicPlayer: {
                TvItem it;
                it.content = TvContent::Player;
                it.source = "player_" + std::to_string(origin);
                for (const auto& m : cg.group.members)
                    if (m.node->widget_kind == WidgetKind::Player)
                        it.source = short_id(*m.node, "player", origin);
                it.phone_area = cg.group.bounding.area();
                g.items = {std::move(it)};
                break;
            }
            case TvGroupCategory::IconInfo:
                g.items = card_items(cg.group, TvContent::Icon);
                break;
            default:  // PicInfo, GridLayout, ListView
                g.items = card_items(cg.group, TvContent::Image);
                break;
        }

        if (g.items.empty()) {
            ++origin;
            continue;
        }
        int per_row = static_cast<int>((g.items.size() + g.phone_rows - 1) / g.phone_rows);
        g.size_class = pick_size_class(per_row, cfg);
        page.groups.push_back(std::move(g));
        ++origin;
    }

    if (have_channel) {
        if (channel.items.empty()) throw Error("Channel group has no labels");
        channel.size_class = SizeClass::Medium;
        page.groups.insert(page.groups.begin(), std::move(channel));
    }
    if (page.groups.empty()) throw EmptyPage("page is empty after conversion");

    // Stable item ids, assigned after ordering is final.
    for (std::size_t gi = 0; gi < page.groups.size(); ++gi)
        for (std::size_t ii = 0; ii < page.groups[gi].items.size(); ++ii)
            page.groups[gi].items[ii].id =
                "g" + std::to_string(gi) + ".i" + std::to_string(ii);
    return page;
}

std::string tv_page_to_json(const TvPage& page) {
    ordered_json doc;
    doc["screen"] = {{"width", page.screen.width_px},
                     {"height", page.screen.height_px},
                     {"orientation", page.screen.orientation == Orientation::Landscape
                                         ? "landscape"
                                         : "portrait"}};
    doc["groups"] = ordered_json::array();
    for (const auto& g : page.groups) {
        ordered_json jg;
        jg["category"] = tv_category_name(g.category);
        jg["size_class"] = size_class_name(g.size_class);
        jg["origin_index"] = g.origin_index;
        jg["items"] = ordered_json::array();
        for (const auto& it : g.items) {
            ordered_json ji;
            ji["id"] = it.id;
            switch (it.content) {
                case TvContent::Image: ji["content"] = "image"; break;
                case TvContent::Icon: ji["content"] = "icon"; break;
                case TvContent::Text: ji["content"] = "text"; break;
                case TvContent::Player: ji["content"] = "player"; break;
            }
            ji["source"] = it.source;
            ji["text"] = it.text;
            ji["selected"] = it.selected;
            ji["phone_area"] = it.phone_area;
            jg["items"].push_back(std::move(ji));
        }
        doc["groups"].push_back(std::move(jg));
    }
    return doc.dump(2);
}

}  // namespace tvcast
