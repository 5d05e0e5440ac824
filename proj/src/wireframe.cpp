#include "tvcast/wireframe.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace tvcast {

void Wireframe::fill_rect(int left, int top, int w, int h, WireClass c) {
    int x0 = std::max(0, left);
    int y0 = std::max(0, top);
    int x1 = std::min(width, left + w);
    int y1 = std::min(height, top + h);
    for (int y = y0; y < y1; ++y)
        std::memset(cells.data() + static_cast<std::size_t>(y) * width + x0,
                    static_cast<int>(c), static_cast<std::size_t>(std::max(0, x1 - x0)));
}

namespace {

WireClass class_of(TvContent content) {
    switch (content) {
        case TvContent::Image:
        case TvContent::Icon:
        case TvContent::Player:
            return WireClass::Image;
        case TvContent::Text:
            return WireClass::Text;
    }
    return WireClass::Text;
}

}  // namespace

Wireframe render_wireframe(const LayoutSolution& solution, const TvPage& page) {
    Wireframe f;
    f.width = page.screen.width_px;
    f.height = page.screen.height_px;
    f.cells.assign(static_cast<std::size_t>(f.width) * f.height,
                   static_cast<std::uint8_t>(WireClass::Background));
    for (const auto& s : solution.items)
        f.fill_rect(s.abs_left, s.abs_top, s.width, s.height, class_of(s.content));
    return f;
}

std::string wireframe_to_svg(const LayoutSolution& solution, const TvPage& page) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << page.screen.width_px
       << "\" height=\"" << page.screen.height_px << "\" viewBox=\"0 0 "
       << page.screen.width_px << ' ' << page.screen.height_px << "\">\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"" << page.screen.width_px << "\" height=\""
       << page.screen.height_px << "\" fill=\"#FFFFFF\"/>\n";
    for (const auto& s : solution.items) {
        const char* fill = class_of(s.content) == WireClass::Image ? "#FF0000" : "#00FF00";
        os << "  <rect x=\"" << s.abs_left << "\" y=\"" << s.abs_top << "\" width=\""
           << s.width << "\" height=\"" << s.height << "\" fill=\"" << fill << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string wireframe_to_binary(const Wireframe& frame) {
    std::string out;
    out.reserve(12 + frame.cells.size());
    out += "WFRM";
    auto put_u32 = [&](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
    };
    put_u32(static_cast<std::uint32_t>(frame.width));
    put_u32(static_cast<std::uint32_t>(frame.height));
    out.append(reinterpret_cast<const char*>(frame.cells.data()), frame.cells.size());
    return out;
}

Wireframe wireframe_from_binary(const std::string& data) {
    if (data.size() < 12 || data.compare(0, 4, "WFRM") != 0)
        throw Error("not a wireframe file (bad magic)");
    auto get_u32 = [&](std::size_t off) {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[off + i])) << (8 * i);
        return v;
    };
    Wireframe f;
    f.width = static_cast<int>(get_u32(4));
    f.height = static_cast<int>(get_u32(8));
    std::size_t expect = static_cast<std::size_t>(f.width) * f.height;
    if (data.size() != 12 + expect) throw Error("wireframe payload size mismatch");
    f.cells.assign(data.begin() + 12, data.end());
    return f;
}

MiouReport compute_miou(const Wireframe& a, const Wireframe& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionMismatch("wireframe dimensions differ");
    MiouReport report;
    const char* names[] = {nullptr, "image", "text"};
    double sum = 0.0;
    int included = 0;
    for (std::uint8_t cls = 1; cls <= 2; ++cls) {
        ClassStats st;
        for (std::size_t i = 0; i < a.cells.size(); ++i) {
            bool in_a = a.cells[i] == cls;
            bool in_b = b.cells[i] == cls;
            if (in_a && in_b) ++st.tp;
            else if (in_a) ++st.fp;
            else if (in_b) ++st.fn;
        }
        std::int64_t uni = st.tp + st.fp + st.fn;
        if (uni == 0) continue;  // absent in both frames: excluded from the mean
        st.iou = static_cast<double>(st.tp) / static_cast<double>(uni);
        sum += st.iou;
        ++included;
        report.per_class[names[cls]] = st;
    }
    report.miou = included == 0 ? 1.0 : sum / included;
    return report;
}

double reduced_ratio(int original_leaf_count, int final_unit_count) {
    if (original_leaf_count <= 0) throw ZeroLeaves("original leaf count must be positive");
    return static_cast<double>(original_leaf_count - final_unit_count) / original_leaf_count;
}

double exact_match_rate(const std::vector<bool>& judgments) {
    if (judgments.empty()) throw EmptyJudgments("no judgments given");
    std::int64_t hits = std::count(judgments.begin(), judgments.end(), true);
    return static_cast<double>(hits) / judgments.size();
}

std::vector<bool> parse_judgments_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<bool> out;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line != "page_id,group_id,match")
                throw Error("judgment CSV must start with header page_id,group_id,match");
            continue;
        }
        auto last = line.rfind(',');
        if (last == std::string::npos) throw Error("malformed judgment row: " + line);
        std::string v = line.substr(last + 1);
        if (v == "1") out.push_back(true);
        else if (v == "0") out.push_back(false);
        else throw Error("judgment match value must be 0 or 1, got: " + v);
    }
    if (out.empty()) throw EmptyJudgments("judgment CSV has no rows");
    return out;
}

}  // namespace tvcast
