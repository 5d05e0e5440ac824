#include "tvcast/config.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tvcast {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// Strips a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
        if (c == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

}  // namespace

TomlTable TomlTable::parse(const std::string& text) {
    TomlTable t;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated table header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty table name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string raw = trim(line.substr(eq + 1));
        if (key.empty() || raw.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        std::string full = section.empty() ? key : section + "." + key;

        if (raw.front() == '"') {
            if (raw.size() < 2 || raw.back() != '"')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated string");
            std::string v;
            for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
                if (raw[i] == '\\' && i + 2 < raw.size()) {
                    ++i;
                    v += raw[i] == 'n' ? '\n' : raw[i] == 't' ? '\t' : raw[i];
                } else {
                    v += raw[i];
                }
            }
            t.values_[full] = v;
        } else if (raw == "true" || raw == "false") {
            t.values_[full] = (raw == "true");
        } else if (raw.find('.') != std::string::npos || raw.find('e') != std::string::npos ||
                   raw.find('E') != std::string::npos) {
            char* end = nullptr;
            double d = std::strtod(raw.c_str(), &end);
            if (end != raw.c_str() + raw.size())
                throw ConfigError("line " + std::to_string(lineno) + ": bad number: " + raw);
            t.values_[full] = d;
        } else {
            char* end = nullptr;
            long long v = std::strtoll(raw.c_str(), &end, 10);
            if (end != raw.c_str() + raw.size())
                throw ConfigError("line " + std::to_string(lineno) + ": bad value: " + raw);
            t.values_[full] = static_cast<std::int64_t>(v);
        }
    }
    return t;
}

TomlTable TomlTable::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool TomlTable::has(const std::string& key) const { return values_.count(key) > 0; }

std::int64_t TomlTable::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (auto* v = std::get_if<std::int64_t>(&it->second)) return *v;
    if (auto* d = std::get_if<double>(&it->second)) return static_cast<std::int64_t>(*d);
    throw ConfigError("config key " + key + " is not a number");
}

double TomlTable::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (auto* d = std::get_if<double>(&it->second)) return *d;
    if (auto* v = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*v);
    throw ConfigError("config key " + key + " is not a number");
}

bool TomlTable::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (auto* b = std::get_if<bool>(&it->second)) return *b;
    throw ConfigError("config key " + key + " is not a boolean");
}

std::string TomlTable::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (auto* s = std::get_if<std::string>(&it->second)) return *s;
    throw ConfigError("config key " + key + " is not a string");
}

std::vector<std::string> TomlTable::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (k.compare(0, prefix.size(), prefix) == 0) out.push_back(k);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

TvGroupCategory tv_category_from_name(const std::string& name) {
    static const TvGroupCategory all[] = {
        TvGroupCategory::IconInfo, TvGroupCategory::ToolBar, TvGroupCategory::Search,
        TvGroupCategory::TabLayout, TvGroupCategory::Channel, TvGroupCategory::GridLayout,
        TvGroupCategory::PicInfo, TvGroupCategory::VideoMusicPlayer, TvGroupCategory::ListView};
    for (auto c : all)
        if (name == tv_category_name(c)) return c;
    throw ConfigError("unknown TV category in size table: " + name);
}

SizeClass size_class_from_name(const std::string& name) {
    if (name == "large") return SizeClass::Large;
    if (name == "medium") return SizeClass::Medium;
    if (name == "small") return SizeClass::Small;
    throw ConfigError("unknown size class in size table: " + name);
}

void validate(const PipelineConfig& c) {
    auto need = [](bool ok, const char* msg) {
        if (!ok) throw ConfigError(msg);
    };
    need(c.grouping.gap_coefficient > 0 && c.grouping.gap_coefficient < 1,
         "grouping.gap_coefficient must be in (0, 1)");
    need(c.grouping.row_width_coefficient > 0 && c.grouping.row_width_coefficient <= 1,
         "grouping.row_width_coefficient must be in (0, 1]");
    need(c.grouping.overlap_fraction > 0 && c.grouping.overlap_fraction <= 1,
         "grouping.overlap_fraction must be in (0, 1]");
    need(c.classify.threshold >= 1, "classify.threshold must be >= 1");
    need(c.tv_screen.width_px > 0 && c.tv_screen.height_px > 0, "tv screen must be positive");
    need(c.layout.margin >= 0 && c.layout.row_gap >= 0, "margins must be non-negative");
    need(c.jobs >= 1, "jobs must be >= 1");
    for (const auto& [key, e] : c.size_table) {
        need(e.bounds.width_min > 0 && e.bounds.width_min <= e.bounds.width_max,
             "size table width bounds invalid");
        need(e.bounds.height_min > 0 && e.bounds.height_min <= e.bounds.height_max,
             "size table height bounds invalid");
    }
}

}  // namespace

PipelineConfig config_from_toml(const TomlTable& toml, const std::string& base_dir) {
    PipelineConfig c;
    c.grouping.gap_coefficient = toml.get_double("grouping.gap_coefficient", c.grouping.gap_coefficient);
    c.grouping.row_width_coefficient =
        toml.get_double("grouping.row_width_coefficient", c.grouping.row_width_coefficient);
    c.grouping.overlap_fraction = toml.get_double("grouping.overlap_fraction", c.grouping.overlap_fraction);
    c.grouping.allow_one_mismatch = toml.get_bool("grouping.allow_one_mismatch", c.grouping.allow_one_mismatch);
    c.grouping.corner_tolerance_px =
        static_cast<int>(toml.get_int("grouping.corner_tolerance_px", c.grouping.corner_tolerance_px));

    c.classify.threshold = static_cast<int>(toml.get_int("classify.threshold", c.classify.threshold));
    c.classify.top_band = toml.get_double("classify.top_band", c.classify.top_band);
    c.classify.bottom_band = toml.get_double("classify.bottom_band", c.classify.bottom_band);
    c.classify.left_band = toml.get_double("classify.left_band", c.classify.left_band);
    c.classify.small_image = toml.get_double("classify.small_image", c.classify.small_image);
    c.classify.full_width = toml.get_double("classify.full_width", c.classify.full_width);

    c.transform.large_max_items =
        static_cast<int>(toml.get_int("transform.large_max_items", c.transform.large_max_items));
    c.transform.medium_max_items =
        static_cast<int>(toml.get_int("transform.medium_max_items", c.transform.medium_max_items));

    c.tv_screen.width_px = static_cast<int>(toml.get_int("tv.width", c.tv_screen.width_px));
    c.tv_screen.height_px = static_cast<int>(toml.get_int("tv.height", c.tv_screen.height_px));
    c.tv_screen.orientation = Orientation::Landscape;
    c.layout.margin = static_cast<int>(toml.get_int("tv.margin", c.layout.margin));
    c.layout.row_gap = static_cast<int>(toml.get_int("tv.row_gap", c.layout.row_gap));
    c.layout.channel_rail_width =
        static_cast<int>(toml.get_int("tv.channel_rail_width", c.layout.channel_rail_width));
    c.layout.channel_item_height =
        static_cast<int>(toml.get_int("tv.channel_item_height", c.layout.channel_item_height));
    c.layout.channel_item_gap =
        static_cast<int>(toml.get_int("tv.channel_item_gap", c.layout.channel_item_gap));
    c.layout.fill_weight = toml.get_double("layout.fill_weight", c.layout.fill_weight);

    // [sizes.<Category>.<class>] entries override the defaults wholesale.
    for (const auto& key : toml.keys_with_prefix("sizes.")) {
        // sizes.PicInfo.large.width_pref
        std::string rest = key.substr(6);
        auto dot1 = rest.find('.');
        auto dot2 = rest.find('.', dot1 + 1);
        if (dot1 == std::string::npos || dot2 == std::string::npos)
            throw ConfigError("bad size table key: " + key);
        TvGroupCategory cat = tv_category_from_name(rest.substr(0, dot1));
        SizeClass sc = size_class_from_name(rest.substr(dot1 + 1, dot2 - dot1 - 1));
        std::string field = rest.substr(dot2 + 1);
        SizeEntry& e = c.size_table[{cat, sc}];
        int v = static_cast<int>(toml.get_int(key, 0));
        if (field == "width_min") e.bounds.width_min = v;
        else if (field == "width_max") e.bounds.width_max = v;
        else if (field == "width_pref") e.width_pref = v;
        else if (field == "height_min") e.bounds.height_min = v;
        else if (field == "height_max") e.bounds.height_max = v;
        else if (field == "height_pref") e.height_pref = v;
        else throw ConfigError("unknown size table field: " + key);
    }

    auto resolve = [&](std::string p) {
        if (p.empty() || p.front() == '/' || base_dir.empty()) return p;
        return base_dir + "/" + p;
    };
    c.template_path = resolve(toml.get_string("classify.templates", ""));
    c.widget_rules_path = resolve(toml.get_string("hierarchy.widget_rules", ""));
    c.jobs = static_cast<int>(toml.get_int("pipeline.jobs", c.jobs));

    if (!c.template_path.empty() && !std::filesystem::exists(c.template_path))
        throw ConfigError("template catalog does not exist: " + c.template_path);
    if (!c.widget_rules_path.empty() && !std::filesystem::exists(c.widget_rules_path))
        throw ConfigError("widget rules file does not exist: " + c.widget_rules_path);
    validate(c);
    return c;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    auto base = std::filesystem::path(path).parent_path().string();
    return config_from_toml(TomlTable::parse_file(path), base);
}

std::vector<TemplateSpec> PipelineConfig::templates() const {
    if (template_path.empty()) return default_templates();
    return load_templates(template_path);
}

WidgetKindRules PipelineConfig::widget_rules() const {
    if (widget_rules_path.empty()) return WidgetKindRules::defaults();
    return WidgetKindRules::load(widget_rules_path);
}

}  // namespace tvcast
