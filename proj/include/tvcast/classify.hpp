#pragma once

#include <string>
#include <vector>

#include "tvcast/grouping.hpp"

namespace tvcast {

enum class PhoneGroupCategory {
    IconInfo,
    ToolBar,
    BottomTabLayout,
    Search,
    TopTabLayout,
    PicSideInfo,
    PicInfo,
    SideNav,
    ShortVideoPlayer,
    VideoMusicPlayer,
    BigPic,
    ListView,
    Others,
};

const char* phone_category_name(PhoneGroupCategory c);

struct ClassifyConfig {
    int threshold = 2;            // match count must strictly exceed this
    double top_band = 0.30;       // fraction of screen height
    double bottom_band = 0.30;
    double left_band = 0.25;      // fraction of screen width
    double small_image = 0.15;    // icon-sized image cutoff
    double full_width = 0.85;     // BigPic cutoff
};

struct TemplateSpec {
    PhoneGroupCategory category = PhoneGroupCategory::Others;
    std::vector<std::string> predicates;
};

struct ClassifiedGroup {
    ComponentGroup group;
    PhoneGroupCategory category = PhoneGroupCategory::Others;
    int matched_attribute_count = 0;
    std::vector<std::string> matched_attribute_names;
};

// Built-in catalog in tie-break priority order; a JSON file with the
// same shape can replace it via the CLI --templates flag.
const std::vector<TemplateSpec>& default_templates();
std::vector<TemplateSpec> load_templates(const std::string& path);

bool eval_predicate(const std::string& name, const ComponentGroup& group,
                    const ScreenInfo& screen, const ClassifyConfig& cfg);

ClassifiedGroup match_template(const ComponentGroup& group,
                               const std::vector<TemplateSpec>& templates,
                               const ScreenInfo& screen,
                               const ClassifyConfig& cfg);

std::vector<ClassifiedGroup> classify_page(const GroupingResult& result,
                                           const ScreenInfo& screen,
                                           const std::vector<TemplateSpec>& templates = default_templates(),
                                           const ClassifyConfig& cfg = {});

std::string classified_to_json(const std::vector<ClassifiedGroup>& classified);

}  // namespace tvcast
