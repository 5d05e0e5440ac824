#include "tvcast/dsl.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tvcast {

const char* dsl_category_token(DslCategory c) {
    switch (c) {
        case DslCategory::ToolBar: return "ToolBar";
        case DslCategory::List: return "List";
        case DslCategory::Tab: return "Tab";
        case DslCategory::Srch: return "Srch";
        case DslCategory::Grid: return "Grid";
        case DslCategory::Player: return "Player";
        case DslCategory::PicInfo: return "PicInfo";
        case DslCategory::IcoInfo: return "IcoInfo";
        case DslCategory::Chan: return "Chan";
    }
    return "Grid";
}

DslCategory dsl_category_for(TvGroupCategory c) {
    switch (c) {
        case TvGroupCategory::IconInfo: return DslCategory::IcoInfo;
        case TvGroupCategory::ToolBar: return DslCategory::ToolBar;
        case TvGroupCategory::Search: return DslCategory::Srch;
        case TvGroupCategory::TabLayout: return DslCategory::Tab;
        case TvGroupCategory::Channel: return DslCategory::Chan;
        case TvGroupCategory::GridLayout: return DslCategory::Grid;
        case TvGroupCategory::PicInfo: return DslCategory::PicInfo;
        case TvGroupCategory::VideoMusicPlayer: return DslCategory::Player;
        case TvGroupCategory::ListView: return DslCategory::List;
    }
    return DslCategory::Grid;
}

TvGroupCategory tv_category_for(DslCategory c) {
    switch (c) {
        case DslCategory::IcoInfo: return TvGroupCategory::IconInfo;
        case DslCategory::ToolBar: return TvGroupCategory::ToolBar;
        case DslCategory::Srch: return TvGroupCategory::Search;
        case DslCategory::Tab: return TvGroupCategory::TabLayout;
        case DslCategory::Chan: return TvGroupCategory::Channel;
        case DslCategory::Grid: return TvGroupCategory::GridLayout;
        case DslCategory::PicInfo: return TvGroupCategory::PicInfo;
        case DslCategory::Player: return TvGroupCategory::VideoMusicPlayer;
        case DslCategory::List: return TvGroupCategory::ListView;
    }
    return TvGroupCategory::GridLayout;
}

// ---------------------------------------------------------------------------
// Emitter

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

void emit_property(std::ostream& os, const DslProperty& p) {
    switch (p.kind) {
        case DslPropKind::Size: os << size_class_name(p.size); break;
        case DslPropKind::Text: os << quote(p.text); break;
        case DslPropKind::Selected: os << "selected"; break;
    }
}

void emit_group(std::ostream& os, const DslGroup& g) {
    os << dsl_category_token(g.category) << '(';
    for (std::size_t i = 0; i < g.properties.size(); ++i) {
        if (i) os << ", ";
        emit_property(os, g.properties[i]);
    }
    os << ')';
}

DslProperty size_prop(SizeClass s) {
    DslProperty p;
    p.kind = DslPropKind::Size;
    p.size = s;
    return p;
}
DslProperty text_prop(std::string t) {
    DslProperty p;
    p.kind = DslPropKind::Text;
    p.text = std::move(t);
    return p;
}
DslProperty selected_prop() {
    DslProperty p;
    p.kind = DslPropKind::Selected;
    return p;
}

DslGroup group_for_item(const TvGroup& g, const TvItem& item) {
    DslGroup out;
    out.category = dsl_category_for(g.category);
    switch (out.category) {
        case DslCategory::Tab:
            out.properties.push_back(text_prop(item.text));
            if (item.selected) out.properties.push_back(selected_prop());
            break;
        case DslCategory::Srch:
        case DslCategory::ToolBar:
            out.properties.push_back(text_prop(item.text));
            break;
        case DslCategory::PicInfo:
            out.properties.push_back(size_prop(g.size_class));
            out.properties.push_back(text_prop(item.source.empty() ? item.text : item.source));
            if (!item.source.empty() && !item.text.empty())
                out.properties.push_back(text_prop(item.text));
            break;
        case DslCategory::IcoInfo:
            out.properties.push_back(text_prop(item.source));
            out.properties.push_back(text_prop(item.text));
            break;
        case DslCategory::Grid:
        case DslCategory::List:
            out.properties.push_back(size_prop(g.size_class));
            if (!item.source.empty()) out.properties.push_back(text_prop(item.source));
            if (!item.text.empty()) out.properties.push_back(text_prop(item.text));
            if (out.properties.size() == 1) out.properties.push_back(text_prop(""));
            break;
        case DslCategory::Player:
            out.properties.push_back(text_prop(item.source));
            break;
        case DslCategory::Chan:
            out.properties.push_back(text_prop(item.text));
            break;
    }
    return out;
}

}  // namespace

std::string emit_dsl(const DslDocument& doc) {
    std::ostringstream os;
    for (const auto& st : doc.statements) {
        os << (st.layout == DslLayout::Row ? "Row" : "Col") << '(';
        for (std::size_t i = 0; i < st.groups.size(); ++i) {
            if (i) os << ", ";
            emit_group(os, st.groups[i]);
        }
        os << ")\n";
    }
    return os.str();
}

std::string emit_dsl(const TvPage& page, const LayoutSolution& solution) {
    DslDocument doc;

    std::map<std::string, std::pair<const TvGroup*, const TvItem*>> by_id;
    for (const auto& g : page.groups)
        for (const auto& it : g.items) by_id[it.id] = {&g, &it};

    // Channel rail first, as one vertical statement.
    int channel_statement = -1;
    std::map<int, DslStatement> rows;  // ordered by global row index
    for (const auto& s : solution.items) {
        auto found = by_id.find(s.id);
        if (found == by_id.end()) continue;  // pruned upstream
        const TvGroup* g = found->second.first;
        const TvItem* item = found->second.second;
        if (g->category == TvGroupCategory::Channel) {
            if (channel_statement < 0) {
                DslStatement st;
                st.layout = DslLayout::Col;
                DslGroup chan;
                chan.category = DslCategory::Chan;
                st.groups.push_back(chan);
                channel_statement = static_cast<int>(doc.statements.size());
                doc.statements.push_back(std::move(st));
            }
            doc.statements[channel_statement].groups.front().properties.push_back(
                text_prop(item->text));
            continue;
        }
        auto& st = rows[s.unit * 10000 + s.row];
        st.layout = DslLayout::Row;
        st.groups.push_back(group_for_item(*g, *item));
    }
    for (auto& [row, st] : rows) doc.statements.push_back(std::move(st));
    return emit_dsl(doc);
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over the CFG
//   S -> L '(' C '(' P {',' P} ')' {',' C '(' ...)} ')'

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg, const std::string& expected) const {
        throw SyntaxError(msg + " at line " + std::to_string(line) + ", column " +
                              std::to_string(col),
                          line, col, expected);
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos < s.size(); ++i) {
            if (s[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r' ||
                                  s[pos] == '\n'))
            advance();
    }

    bool eof() {
        skip_ws();
        return pos >= s.size();
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            fail(std::string("expected '") + c + "'", std::string(1, c));
        advance();
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            advance();
        if (pos == start) fail("expected an identifier", "identifier");
        return s.substr(start, pos - start);
    }

    std::string string_literal() {
        skip_ws();
        if (pos >= s.size() || s[pos] != '"') fail("expected a string", "\"");
        advance();
        std::string out;
        while (pos < s.size() && s[pos] != '"') {
            char c = s[pos];
            if (c == '\\') {
                advance();
                if (pos >= s.size()) fail("unterminated escape", "escape character");
                char e = s[pos];
                switch (e) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: fail("unknown escape sequence", "\\\" \\\\ \\n \\t");
                }
                advance();
            } else {
                out += c;
                advance();
            }
        }
        if (pos >= s.size()) fail("unterminated string literal", "\"");
        advance();
        return out;
    }
};

const std::map<std::string, DslCategory>& category_tokens() {
    static const std::map<std::string, DslCategory> m = {
        {"ToolBar", DslCategory::ToolBar}, {"List", DslCategory::List},
        {"Tab", DslCategory::Tab},         {"Srch", DslCategory::Srch},
        {"Grid", DslCategory::Grid},       {"Player", DslCategory::Player},
        {"PicInfo", DslCategory::PicInfo}, {"IcoInfo", DslCategory::IcoInfo},
        {"Chan", DslCategory::Chan},
    };
    return m;
}

DslProperty parse_property(Lexer& lx) {
    DslProperty p;
    p.span.begin = lx.pos;
    if (lx.peek() == '"') {
        p.kind = DslPropKind::Text;
        p.text = lx.string_literal();
        p.span.end = lx.pos;
        return p;
    }
    std::string word = lx.identifier();
    if (word == "selected") {
        p.kind = DslPropKind::Selected;
    } else if (word == "large" || word == "medium" || word == "small") {
        p.kind = DslPropKind::Size;
        p.size = word == "large" ? SizeClass::Large
                                 : word == "medium" ? SizeClass::Medium : SizeClass::Small;
    } else {
        lx.fail("bad property '" + word + "'", "large|medium|small|selected|string");
    }
    p.span.end = lx.pos;
    return p;
}

DslGroup parse_group(Lexer& lx) {
    DslGroup g;
    g.span.begin = lx.pos;
    std::string token = lx.identifier();
    auto it = category_tokens().find(token);
    if (it == category_tokens().end())
        lx.fail("unknown category token '" + token + "'",
                "ToolBar|List|Tab|Srch|Grid|Player|PicInfo|IcoInfo|Chan");
    g.category = it->second;
    lx.expect('(');
    g.properties.push_back(parse_property(lx));
    while (lx.peek() == ',') {
        lx.expect(',');
        g.properties.push_back(parse_property(lx));
    }
    lx.expect(')');
    g.span.end = lx.pos;
    return g;
}

DslStatement parse_statement(Lexer& lx) {
    DslStatement st;
    st.span.begin = lx.pos;
    std::string layout = lx.identifier();
    if (layout == "Row") st.layout = DslLayout::Row;
    else if (layout == "Col") st.layout = DslLayout::Col;
    else lx.fail("unknown layout token '" + layout + "'", "Row|Col");
    lx.expect('(');
    st.groups.push_back(parse_group(lx));
    while (lx.peek() == ',') {
        lx.expect(',');
        st.groups.push_back(parse_group(lx));
    }
    lx.expect(')');
    st.span.end = lx.pos;
    return st;
}

}  // namespace

DslDocument parse_dsl(const std::string& text) {
    Lexer lx(text);
    DslDocument doc;
    while (!lx.eof()) doc.statements.push_back(parse_statement(lx));
    return doc;
}

DslDocument canonicalize(DslDocument doc) {
    for (auto& st : doc.statements) {
        for (auto& g : st.groups) {
            std::stable_sort(g.properties.begin(), g.properties.end(),
                             [](const DslProperty& a, const DslProperty& b) {
                                 auto rank = [](const DslProperty& p) {
                                     switch (p.kind) {
                                         case DslPropKind::Size: return 0;
                                         case DslPropKind::Text: return 1;
                                         case DslPropKind::Selected: return 2;
                                     }
                                     return 1;
                                 };
                                 return rank(a) < rank(b);
                             });
        }
    }
    return doc;
}

std::string format_dsl(const std::string& text) {
    return emit_dsl(canonicalize(parse_dsl(text)));
}

std::vector<std::string> validate_dsl(const DslDocument& doc) {
    std::vector<std::string> problems;
    int si = 0;
    for (const auto& st : doc.statements) {
        int gi = 0;
        for (const auto& g : st.groups) {
            auto where = [&] {
                return "statement " + std::to_string(si) + ", group " + std::to_string(gi) +
                       " (" + dsl_category_token(g.category) + ")";
            };
            int sizes = 0, texts = 0, selected = 0;
            for (const auto& p : g.properties) {
                if (p.kind == DslPropKind::Size) ++sizes;
                else if (p.kind == DslPropKind::Text) ++texts;
                else ++selected;
            }
            if (sizes > 1) problems.push_back(where() + ": more than one size property");
            switch (g.category) {
                case DslCategory::Tab:
                    if (texts != 1) problems.push_back(where() + ": Tab requires exactly one text");
                    if (selected > 1) problems.push_back(where() + ": duplicate selected flag");
                    break;
                case DslCategory::Srch:
                case DslCategory::ToolBar:
                case DslCategory::Player:
                    if (texts != 1) problems.push_back(where() + ": requires exactly one text/source");
                    break;
                case DslCategory::PicInfo:
                    if (sizes != 1) problems.push_back(where() + ": PicInfo requires a size");
                    if (texts < 1 || texts > 2)
                        problems.push_back(where() + ": PicInfo takes a source and optional title");
                    break;
                case DslCategory::IcoInfo:
                    if (texts != 2) problems.push_back(where() + ": IcoInfo takes source and text");
                    break;
                case DslCategory::Chan:
                    if (texts < 1) problems.push_back(where() + ": Chan needs at least one label");
                    break;
                case DslCategory::Grid:
                case DslCategory::List:
                    if (sizes != 1) problems.push_back(where() + ": requires a size");
                    if (texts < 1) problems.push_back(where() + ": requires content strings");
                    break;
            }
            ++gi;
        }
        ++si;
    }
    return problems;
}

}  // namespace tvcast
