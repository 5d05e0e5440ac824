#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tvcast/classify.hpp"
#include "tvcast/grouping.hpp"
#include "tvcast/layout.hpp"
#include "tvcast/transform.hpp"

namespace tvcast {

struct ConfigError : Error {
    using Error::Error;
};

// Minimal TOML subset: [dotted.tables], key = int/float/bool/"string",
// # comments. Enough for the flat numeric config this tool needs.
class TomlTable {
  public:
    using Value = std::variant<std::int64_t, double, bool, std::string>;

    static TomlTable parse(const std::string& text);
    static TomlTable parse_file(const std::string& path);

    bool has(const std::string& dotted_key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

  private:
    std::map<std::string, Value> values_;
};

struct PipelineConfig {
    GroupingConfig grouping;
    ClassifyConfig classify;
    TransformConfig transform;
    LayoutConfig layout;
    ScreenInfo tv_screen{1920, 1080, Orientation::Landscape};
    SizeTable size_table = default_size_table();
    std::string template_path;   // empty -> built-in catalog
    std::string widget_rules_path;
    int jobs = 1;

    std::vector<TemplateSpec> templates() const;
    WidgetKindRules widget_rules() const;
};

PipelineConfig load_pipeline_config(const std::string& path);
PipelineConfig config_from_toml(const TomlTable& toml, const std::string& base_dir);

}  // namespace tvcast
