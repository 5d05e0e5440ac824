#include "tvcast/hierarchy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tvcast {

Bounds parse_bounds(const std::string& text) {
    // "[x1,y1][x2,y2]"
    const char* p = text.c_str();
    int vals[4];
    for (int i = 0; i < 2; ++i) {
        if (*p != '[') throw MalformedBounds("bad bounds string: " + text);
        ++p;
        for (int j = 0; j < 2; ++j) {
            char* end = nullptr;
            long v = std::strtol(p, &end, 10);
            if (end == p) throw MalformedBounds("bad bounds string: " + text);
            vals[i * 2 + j] = static_cast<int>(v);
            p = end;
            char sep = (j == 0) ? ',' : ']';
            if (*p != sep) throw MalformedBounds("bad bounds string: " + text);
            ++p;
        }
    }
    if (*p != '\0') throw MalformedBounds("trailing data in bounds: " + text);
    return Bounds{vals[0], vals[1], vals[2], vals[3]};
}

std::string format_bounds(const Bounds& b) {
    std::ostringstream os;
    os << '[' << b.left << ',' << b.top << "][" << b.right << ',' << b.bottom << ']';
    return os.str();
}

const char* widget_kind_name(WidgetKind k) {
    switch (k) {
        case WidgetKind::Text: return "Text";
        case WidgetKind::Image: return "Image";
        case WidgetKind::Button: return "Button";
        case WidgetKind::TabBar: return "TabBar";
        case WidgetKind::ActionBar: return "ActionBar";
        case WidgetKind::ListContainer: return "ListContainer";
        case WidgetKind::Player: return "Player";
        case WidgetKind::SearchBox: return "SearchBox";
        case WidgetKind::SideNavContainer: return "SideNavContainer";
        case WidgetKind::WebContent: return "WebContent";
        case WidgetKind::Other: return "Other";
    }
    return "Other";
}

static WidgetKind widget_kind_from_name(const std::string& name) {
    static const std::pair<const char*, WidgetKind> table[] = {
        {"Text", WidgetKind::Text},
        {"Image", WidgetKind::Image},
        {"Button", WidgetKind::Button},
        {"TabBar", WidgetKind::TabBar},
        {"ActionBar", WidgetKind::ActionBar},
        {"ListContainer", WidgetKind::ListContainer},
        {"Player", WidgetKind::Player},
        {"SearchBox", WidgetKind::SearchBox},
        {"SideNavContainer", WidgetKind::SideNavContainer},
        {"WebContent", WidgetKind::WebContent},
        {"Other", WidgetKind::Other},
    };
    for (const auto& [n, k] : table)
        if (name == n) return k;
    throw Error("unknown widget kind name: " + name);
}

std::optional<std::string> UiNode::attribute(const std::string& name) const {
    for (const auto& [k, v] : attributes)
        if (k == name) return v;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Widget kind rules

const WidgetKindRules& WidgetKindRules::defaults() {
    static const WidgetKindRules rules = [] {
        WidgetKindRules r;
        r.class_rules = {
            {"ActionBar-Tab", WidgetKind::TabBar},
            {"TabLayout", WidgetKind::TabBar},
            {"TabWidget", WidgetKind::TabBar},
            {"ActionBar", WidgetKind::ActionBar},
            {"Toolbar", WidgetKind::ActionBar},
            {"SearchView", WidgetKind::SearchBox},
            {"RecyclerView", WidgetKind::ListContainer},
            {"ListView", WidgetKind::ListContainer},
            {"GridView", WidgetKind::ListContainer},
            {"VideoView", WidgetKind::Player},
            {"PlayerView", WidgetKind::Player},
            {"MediaRouteButton", WidgetKind::Player},
            {"WebView", WidgetKind::WebContent},
            {"NavigationView", WidgetKind::SideNavContainer},
            {"DrawerLayout", WidgetKind::SideNavContainer},
            {"TextView", WidgetKind::Text},
            {"EditText", WidgetKind::Text},
            {"ImageButton", WidgetKind::Image},
            {"ImageView", WidgetKind::Image},
            {"Button", WidgetKind::Button},
        };
        r.id_rules = {
            {"search", WidgetKind::SearchBox},
            {"nav", WidgetKind::SideNavContainer},
            {"drawer", WidgetKind::SideNavContainer},
        };
        return r;
    }();
    return rules;
}

WidgetKindRules WidgetKindRules::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open widget kind rules: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    WidgetKindRules r;
    for (const auto& e : doc.at("class_rules"))
        r.class_rules.emplace_back(e.at("contains").get<std::string>(),
                                   widget_kind_from_name(e.at("kind").get<std::string>()));
    for (const auto& e : doc.at("id_rules"))
        r.id_rules.emplace_back(e.at("contains").get<std::string>(),
                                widget_kind_from_name(e.at("kind").get<std::string>()));
    return r;
}

static bool contains_ci(const std::string& haystack, const std::string& needle) {
    auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                          [](char a, char b) {
                              return std::tolower(static_cast<unsigned char>(a)) ==
                                     std::tolower(static_cast<unsigned char>(b));
                          });
    return it != haystack.end();
}

WidgetKind infer_widget_kind(const UiNode& node, const WidgetKindRules& rules) {
    WidgetKind kind = WidgetKind::Other;
    for (const auto& [needle, k] : rules.class_rules) {
        if (node.class_name.find(needle) != std::string::npos) {
            kind = k;
            break;
        }
    }
    // Id keywords refine weak class results only; a RecyclerView with id
    // "nav_list" stays a ListContainer.
    bool weak = kind == WidgetKind::Text || kind == WidgetKind::Image ||
                kind == WidgetKind::Button || kind == WidgetKind::Other;
    if (weak && node.resource_id) {
        for (const auto& [needle, k] : rules.id_rules) {
            if (contains_ci(*node.resource_id, needle)) return k;
        }
    }
    return kind;
}

// ---------------------------------------------------------------------------
// Minimal XML reader for UI Automator dumps

namespace {

struct XmlElement {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlElement> children;
};

class XmlReader {
  public:
    explicit XmlReader(const std::string& text) : s_(text) {}

    XmlElement parse_document() {
        skip_misc();
        if (eof()) throw MalformedXml("no root element");
        XmlElement root = parse_element();
        skip_misc();
        if (!eof()) throw MalformedXml("trailing content after root element");
        return root;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void skip_misc() {
        // whitespace, <?...?>, <!-- ... -->, <!DOCTYPE ...>
        for (;;) {
            skip_ws();
            if (eof() || s_[pos_] != '<') return;
            if (pos_ + 1 >= s_.size()) return;
            char c = s_[pos_ + 1];
            if (c == '?') {
                auto end = s_.find("?>", pos_);
                if (end == std::string::npos) throw MalformedXml("unterminated processing instruction");
                pos_ = end + 2;
            } else if (c == '!') {
                if (s_.compare(pos_, 4, "<!--") == 0) {
                    auto end = s_.find("-->", pos_);
                    if (end == std::string::npos) throw MalformedXml("unterminated comment");
                    pos_ = end + 3;
                } else {
                    auto end = s_.find('>', pos_);
                    if (end == std::string::npos) throw MalformedXml("unterminated declaration");
                    pos_ = end + 1;
                }
            } else {
                return;
            }
        }
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
               c == '.' || c == ':';
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (!eof() && name_char(s_[pos_])) ++pos_;
        if (pos_ == start) throw MalformedXml("expected a name at offset " + std::to_string(pos_));
        return s_.substr(start, pos_ - start);
    }

    std::string decode_entities(const std::string& raw) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out += raw[i];
                continue;
            }
            auto semi = raw.find(';', i);
            if (semi == std::string::npos) throw MalformedXml("unterminated entity");
            std::string ent = raw.substr(i + 1, semi - i - 1);
            if (ent == "amp") out += '&';
            else if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else if (!ent.empty() && ent[0] == '#') {
                long code = std::strtol(ent.c_str() + (ent[1] == 'x' ? 2 : 1), nullptr,
                                        ent[1] == 'x' ? 16 : 10);
                if (code < 0x80) out += static_cast<char>(code);
                else out += '?';  // non-ASCII references are not needed for dumps
            } else {
                throw MalformedXml("unknown entity: &" + ent + ";");
            }
            i = semi;
        }
        return out;
    }

    XmlElement parse_element() {
        if (eof() || s_[pos_] != '<') throw MalformedXml("expected '<'");
        ++pos_;
        XmlElement el;
        el.name = parse_name();
        for (;;) {
            skip_ws();
            if (eof()) throw MalformedXml("unterminated tag <" + el.name + ">");
            if (peek() == '/') {
                ++pos_;
                if (eof() || peek() != '>') throw MalformedXml("malformed self-closing tag");
                ++pos_;
                return el;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string attr = parse_name();
            skip_ws();
            if (eof() || peek() != '=') throw MalformedXml("expected '=' after attribute " + attr);
            ++pos_;
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\'')) throw MalformedXml("expected quoted value");
            char q = peek();
            ++pos_;
            auto end = s_.find(q, pos_);
            if (end == std::string::npos) throw MalformedXml("unterminated attribute value");
            el.attrs.emplace_back(attr, decode_entities(s_.substr(pos_, end - pos_)));
            pos_ = end + 1;
        }
        // content
        for (;;) {
            // skip character data between tags
            while (!eof() && peek() != '<') ++pos_;
            if (eof()) throw MalformedXml("unterminated element <" + el.name + ">");
            if (s_.compare(pos_, 4, "<!--") == 0) {
                auto end = s_.find("-->", pos_);
                if (end == std::string::npos) throw MalformedXml("unterminated comment");
                pos_ = end + 3;
                continue;
            }
            if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '/') {
                pos_ += 2;
                std::string close = parse_name();
                if (close != el.name)
                    throw MalformedXml("mismatched closing tag </" + close + "> for <" + el.name + ">");
                skip_ws();
                if (eof() || peek() != '>') throw MalformedXml("malformed closing tag");
                ++pos_;
                return el;
            }
            el.children.push_back(parse_element());
        }
    }
};

UiNode to_ui_node(const XmlElement& el, const WidgetKindRules& rules, int& count) {
    UiNode node;
    node.attributes = el.attrs;
    if (auto cls = node.attribute("class")) node.class_name = *cls;
    else node.class_name = el.name;
    if (auto text = node.attribute("text"); text && !text->empty()) node.text = *text;
    if (auto rid = node.attribute("resource-id"); rid && !rid->empty()) node.resource_id = *rid;
    if (auto b = node.attribute("bounds")) node.bounds = parse_bounds(*b);
    node.widget_kind = infer_widget_kind(node, rules);
    ++count;
    node.children.reserve(el.children.size());
    for (const auto& child : el.children) node.children.push_back(to_ui_node(child, rules, count));
    return node;
}

}  // namespace

DomTree parse_hierarchy(const std::string& xml_text, std::optional<ScreenInfo> screen,
                        const WidgetKindRules& rules) {
    XmlReader reader(xml_text);
    XmlElement root = reader.parse_document();

    std::optional<Orientation> rotation;
    const XmlElement* node_root = &root;
    std::vector<const XmlElement*> tops;
    if (root.name == "hierarchy") {
        for (const auto& [k, v] : root.attrs) {
            if (k == "rotation") {
                int r = std::atoi(v.c_str());
                rotation = (r == 1 || r == 3) ? Orientation::Landscape : Orientation::Portrait;
            }
        }
        for (const auto& child : root.children) tops.push_back(&child);
        if (tops.empty()) throw EmptyHierarchy("hierarchy element has no nodes");
        node_root = tops.front();
    }

    DomTree tree;
    if (root.name == "hierarchy" && tops.size() > 1) {
        // Rare multi-root dump: wrap in a synthetic container node.
        UiNode synthetic;
        synthetic.class_name = "hierarchy";
        for (const auto* t : tops)
            synthetic.children.push_back(to_ui_node(*t, rules, tree.node_count));
        for (const auto& c : synthetic.children)
            synthetic.bounds = synthetic.bounds.zero_area() ? c.bounds : synthetic.bounds.united(c.bounds);
        ++tree.node_count;
        tree.root = std::move(synthetic);
    } else {
        tree.root = to_ui_node(*node_root, rules, tree.node_count);
    }

    if (screen) {
        tree.screen = *screen;
    } else {
        tree.screen.width_px = std::max(1, tree.root.bounds.width());
        tree.screen.height_px = std::max(1, tree.root.bounds.height());
        tree.screen.orientation = rotation.value_or(
            tree.screen.width_px < tree.screen.height_px ? Orientation::Portrait
                                                         : Orientation::Landscape);
    }
    return tree;
}

}  // namespace tvcast
