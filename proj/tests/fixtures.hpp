#pragma once

// Shared hand-built hierarchy fixtures for tests.

#include <sstream>
#include <string>

namespace fixtures {

// One XML node element with standard dump attributes.
inline std::string node(const std::string& cls, const std::string& bounds,
                        const std::string& rid = "", const std::string& text = "",
                        const std::string& body = "", const std::string& extra = "") {
    std::ostringstream os;
    os << "<node class=\"" << cls << "\" bounds=\"" << bounds << "\"";
    if (!rid.empty()) os << " resource-id=\"" << rid << "\"";
    if (!text.empty()) os << " text=\"" << text << "\"";
    if (!extra.empty()) os << ' ' << extra;
    if (body.empty()) {
        os << "/>";
    } else {
        os << ">" << body << "</node>";
    }
    return os.str();
}

inline std::string page(const std::string& body, int w = 1080, int h = 1920,
                        int rotation = 0) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<hierarchy rotation=\"" << rotation
       << "\">"
       << node("android.widget.FrameLayout",
               "[0,0][" + std::to_string(w) + "," + std::to_string(h) + "]", "", "", body)
       << "</hierarchy>";
    return os.str();
}

// A page in the style of the template-matching walkthrough: search row,
// tab row, full-width picture, a card grid, and a bottom tab bar.
inline std::string template_match_page() {
    std::string search =
        node("android.widget.LinearLayout", "[0,60][1080,180]", "com.app:id/search_container", "",
             node("android.widget.EditText", "[40,80][900,160]", "com.app:id/searchText",
                  "Find movies") +
                 node("android.widget.ImageButton", "[910,80][1040,160]", "com.app:id/searchBtn"));
    std::string tabs =
        node("com.google.android.material.tabs.TabLayout", "[0,200][1080,320]", "com.app:id/tabs",
             "",
             node("android.widget.TextView", "[0,220][360,300]", "", "RECOMMEND") +
                 node("android.widget.TextView", "[360,220][720,300]", "", "VARIETY",
                      "", "selected=\"true\"") +
                 node("android.widget.TextView", "[720,220][1080,300]", "", "MOVIE"));
    std::string big_pic =
        node("android.widget.FrameLayout", "[0,340][1080,900]", "", "",
             node("android.widget.ImageView", "[20,360][1060,880]", "com.app:id/banner"));
    auto card = [](int left, int top, const std::string& src, const std::string& title) {
        int right = left + 240, bottom = top + 280;
        return node("android.widget.LinearLayout",
                    "[" + std::to_string(left) + "," + std::to_string(top) + "][" +
                        std::to_string(right) + "," + std::to_string(bottom) + "]",
                    "", "",
                    node("android.widget.ImageView",
                         "[" + std::to_string(left) + "," + std::to_string(top) + "][" +
                             std::to_string(right) + "," + std::to_string(top + 220) + "]",
                         "com.app:id/" + src) +
                        node("android.widget.TextView",
                             "[" + std::to_string(left) + "," + std::to_string(top + 230) + "][" +
                                 std::to_string(right) + "," + std::to_string(bottom) + "]",
                             "", title));
    };
    std::string cards =
        node("android.widget.LinearLayout", "[0,940][1080,1220]", "", "",
             card(10, 950, "img_01", "Call Me By Fire") + card(280, 950, "img_02", "Wild Tour") +
                 card(550, 950, "img_03", "Night City") + card(820, 950, "img_04", "Old Town"));
    std::string bottom =
        node("android.widget.TabWidget", "[0,1780][1080,1920]", "com.app:id/bottom_tabs", "",
             node("android.widget.TextView", "[0,1800][216,1900]", "", "Home") +
                 node("android.widget.TextView", "[216,1800][432,1900]", "", "Movies") +
                 node("android.widget.TextView", "[432,1800][648,1900]", "", "Shows") +
                 node("android.widget.TextView", "[648,1800][864,1900]", "", "Sports") +
                 node("android.widget.TextView", "[864,1800][1080,1900]", "", "Mine"));
    return page(search + tabs + big_pic + cards + bottom);
}

}  // namespace fixtures
