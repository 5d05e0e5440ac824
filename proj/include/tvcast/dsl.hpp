#pragma once

#include <string>
#include <vector>

#include "tvcast/layout.hpp"

namespace tvcast {

enum class DslLayout { Row, Col };
enum class DslCategory { ToolBar, List, Tab, Srch, Grid, Player, PicInfo, IcoInfo, Chan };

const char* dsl_category_token(DslCategory c);
DslCategory dsl_category_for(TvGroupCategory c);
TvGroupCategory tv_category_for(DslCategory c);

enum class DslPropKind { Size, Text, Selected };

struct DslSourceSpan {
    std::size_t begin = 0;  // byte offsets into the source text
    std::size_t end = 0;
};

struct DslProperty {
    DslPropKind kind = DslPropKind::Text;
    SizeClass size = SizeClass::Large;  // Size only
    std::string text;                   // Text only
    DslSourceSpan span;

    bool operator==(const DslProperty& o) const {
        if (kind != o.kind) return false;
        if (kind == DslPropKind::Size) return size == o.size;
        if (kind == DslPropKind::Text) return text == o.text;
        return true;
    }
};

struct DslGroup {
    DslCategory category = DslCategory::Grid;
    std::vector<DslProperty> properties;
    DslSourceSpan span;

    bool operator==(const DslGroup& o) const {
        return category == o.category && properties == o.properties;
    }
};

struct DslStatement {
    DslLayout layout = DslLayout::Row;
    std::vector<DslGroup> groups;
    DslSourceSpan span;

    bool operator==(const DslStatement& o) const {
        return layout == o.layout && groups == o.groups;
    }
};

struct DslDocument {
    std::vector<DslStatement> statements;

    bool operator==(const DslDocument& o) const {
        return statements == o.statements;
    }
};

struct SyntaxError : Error {
    int line = 1;
    int column = 1;
    std::string expected;
    SyntaxError(const std::string& msg, int l, int c, std::string exp)
        : Error(msg), line(l), column(c), expected(std::move(exp)) {}
};

DslDocument parse_dsl(const std::string& text);

std::string emit_dsl(const DslDocument& doc);
std::string emit_dsl(const TvPage& page, const LayoutSolution& solution);

// Reorders properties into the canonical per-category order
// (size first, then strings, selected last).
DslDocument canonicalize(DslDocument doc);

// parse + canonicalize + emit; idempotent on its own output.
std::string format_dsl(const std::string& text);

// Shape validation beyond the CFG: required properties per category.
std::vector<std::string> validate_dsl(const DslDocument& doc);

}  // namespace tvcast
