#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvcast/classify.hpp"

namespace tvcast {

enum class TvGroupCategory {
    IconInfo,
    ToolBar,
    Search,
    TabLayout,
    Channel,
    GridLayout,
    PicInfo,
    VideoMusicPlayer,
    ListView,
};

const char* tv_category_name(TvGroupCategory c);

enum class SizeClass { Large, Medium, Small };

const char* size_class_name(SizeClass s);  // lowercase, DSL spelling

enum class TvContent { Image, Icon, Text, Player };

struct TvItem {
    std::string id;       // stable "g<i>.i<j>" identifier
    TvContent content = TvContent::Text;
    std::string source;   // image/player source reference
    std::string text;     // title or label
    bool selected = false;
    std::int64_t phone_area = 0;  // px^2 in the phone GUI, drives pruning
};

struct TvGroup {
    TvGroupCategory category = TvGroupCategory::GridLayout;
    SizeClass size_class = SizeClass::Large;
    std::vector<TvItem> items;
    int origin_index = -1;   // index into the classified input
    int phone_rows = 1;      // rows in the source group (MultiRow)
};

struct TvPage {
    ScreenInfo screen;  // landscape TV canvas
    std::vector<TvGroup> groups;
};

struct TransformConfig {
    int large_max_items = 3;   // items per row <= 3 -> Large
    int medium_max_items = 5;  // 4..5 -> Medium, else Small
};

struct EmptyPage : Error {
    using Error::Error;
};

TvGroupCategory map_category(PhoneGroupCategory phone);

TvPage build_tv_page(const std::vector<ClassifiedGroup>& classified,
                     const ScreenInfo& phone_screen, const ScreenInfo& tv_screen,
                     const TransformConfig& cfg = {});

std::string tv_page_to_json(const TvPage& page);

}  // namespace tvcast
