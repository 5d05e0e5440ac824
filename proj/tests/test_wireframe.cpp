#include <doctest.h>

#include "tvcast/wireframe.hpp"

using namespace tvcast;

namespace {

Wireframe blank(int w, int h) {
    Wireframe f;
    f.width = w;
    f.height = h;
    f.cells.assign(static_cast<std::size_t>(w) * h,
                   static_cast<std::uint8_t>(WireClass::Background));
    return f;
}

std::int64_t count_class(const Wireframe& f, WireClass c) {
    std::int64_t n = 0;
    for (auto v : f.cells)
        if (v == static_cast<std::uint8_t>(c)) ++n;
    return n;
}

// straight pixel-count IoU, kept deliberately naive
double pixel_iou(const Wireframe& a, const Wireframe& b, WireClass c) {
    std::int64_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        bool x = a.cells[i] == static_cast<std::uint8_t>(c);
        bool y = b.cells[i] == static_cast<std::uint8_t>(c);
        if (x && y) ++inter;
        if (x || y) ++uni;
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
}

LayoutSolution two_block_solution() {
    LayoutSolution sol;
    SolvedItem img;
    img.id = "a";
    img.abs_left = 10;
    img.abs_top = 10;
    img.width = 30;
    img.height = 20;
    img.content = TvContent::Image;
    SolvedItem txt;
    txt.id = "b";
    txt.abs_left = 50;
    txt.abs_top = 40;
    txt.width = 20;
    txt.height = 10;
    txt.content = TvContent::Text;
    sol.items = {img, txt};
    return sol;
}

TvPage tiny_page() {
    TvPage p;
    p.screen = {100, 100, Orientation::Landscape};
    return p;
}

}  // namespace

TEST_CASE("filled rectangles cover exactly their area") {
    auto f = blank(100, 100);
    f.fill_rect(10, 10, 30, 20, WireClass::Image);
    CHECK(count_class(f, WireClass::Image) == 30 * 20);
    CHECK(f.at(10, 10) == WireClass::Image);
    CHECK(f.at(39, 29) == WireClass::Image);
    CHECK(f.at(40, 10) == WireClass::Background);
    CHECK(f.at(10, 30) == WireClass::Background);
}

TEST_CASE("rectangles clip at the canvas edge") {
    auto f = blank(50, 50);
    f.fill_rect(40, 45, 30, 30, WireClass::Text);
    CHECK(count_class(f, WireClass::Text) == 10 * 5);
    f.fill_rect(-20, -20, 25, 25, WireClass::Image);
    CHECK(count_class(f, WireClass::Image) == 5 * 5);
}

TEST_CASE("later fills overwrite earlier ones") {
    auto f = blank(40, 40);
    f.fill_rect(0, 0, 20, 20, WireClass::Image);
    f.fill_rect(10, 10, 20, 20, WireClass::Text);
    CHECK(f.at(15, 15) == WireClass::Text);
    CHECK(count_class(f, WireClass::Image) == 400 - 100);
    CHECK(count_class(f, WireClass::Text) == 400);
}

TEST_CASE("rendering rasterizes every solved item") {
    auto frame = render_wireframe(two_block_solution(), tiny_page());
    CHECK(frame.width == 100);
    CHECK(frame.height == 100);
    CHECK(count_class(frame, WireClass::Image) == 600);
    CHECK(count_class(frame, WireClass::Text) == 200);
}

TEST_CASE("players and icons rasterize as image blocks") {
    auto sol = two_block_solution();
    sol.items[0].content = TvContent::Player;
    sol.items[1].content = TvContent::Icon;
    auto frame = render_wireframe(sol, tiny_page());
    CHECK(count_class(frame, WireClass::Image) == 800);
    CHECK(count_class(frame, WireClass::Text) == 0);
}

TEST_CASE("identical frames score a perfect miou") {
    auto frame = render_wireframe(two_block_solution(), tiny_page());
    auto r = compute_miou(frame, frame);
    CHECK(r.miou == 1.0);
    CHECK(r.per_class.at("image").iou == 1.0);
    CHECK(r.per_class.at("text").iou == 1.0);
}

TEST_CASE("disjoint frames score zero") {
    auto a = blank(60, 60);
    auto b = blank(60, 60);
    a.fill_rect(0, 0, 10, 10, WireClass::Image);
    b.fill_rect(30, 30, 10, 10, WireClass::Image);
    CHECK(compute_miou(a, b).miou == 0.0);
}

TEST_CASE("a half-shifted rectangle scores one third") {
    auto a = blank(200, 120);
    auto b = blank(200, 120);
    a.fill_rect(0, 0, 100, 100, WireClass::Image);
    b.fill_rect(50, 0, 100, 100, WireClass::Image);
    auto r = compute_miou(a, b);
    CHECK(r.miou == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(r.miou == doctest::Approx(pixel_iou(a, b, WireClass::Image)).epsilon(1e-12));
}

TEST_CASE("classes absent from both frames do not dilute the mean") {
    auto a = blank(50, 50);
    auto b = blank(50, 50);
    a.fill_rect(0, 0, 10, 10, WireClass::Text);
    b.fill_rect(0, 0, 10, 10, WireClass::Text);
    auto r = compute_miou(a, b);  // image nowhere: mean over text only
    CHECK(r.miou == 1.0);
    CHECK(r.per_class.count("image") == 0);
    // two empty frames agree vacuously
    CHECK(compute_miou(blank(50, 50), blank(50, 50)).miou == 1.0);
}

TEST_CASE("miou averages the class scores") {
    auto a = blank(100, 100);
    auto b = blank(100, 100);
    a.fill_rect(0, 0, 10, 10, WireClass::Image);   // identical image blocks
    b.fill_rect(0, 0, 10, 10, WireClass::Image);
    a.fill_rect(50, 50, 10, 10, WireClass::Text);  // disjoint text blocks
    b.fill_rect(70, 70, 10, 10, WireClass::Text);
    CHECK(compute_miou(a, b).miou == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("mismatched dimensions are rejected") {
    CHECK_THROWS_AS(compute_miou(blank(10, 10), blank(10, 20)), DimensionMismatch);
}

TEST_CASE("the binary sidecar round-trips byte for byte") {
    auto frame = render_wireframe(two_block_solution(), tiny_page());
    std::string data = wireframe_to_binary(frame);
    CHECK(data.size() == 12 + 100 * 100);
    CHECK(data.compare(0, 4, "WFRM") == 0);
    auto back = wireframe_from_binary(data);
    CHECK(back.width == frame.width);
    CHECK(back.height == frame.height);
    CHECK(back.cells == frame.cells);
    CHECK(wireframe_to_binary(back) == data);

    CHECK_THROWS_AS(wireframe_from_binary("JUNK"), Error);
    CHECK_THROWS_AS(wireframe_from_binary(data.substr(0, data.size() - 1)), Error);
}

TEST_CASE("the svg is deterministic with red images and green texts") {
    auto sol = two_block_solution();
    auto page = tiny_page();
    std::string svg = wireframe_to_svg(sol, page);
    CHECK(svg == wireframe_to_svg(sol, page));
    CHECK(svg.find("fill=\"#FF0000\"") != std::string::npos);
    CHECK(svg.find("fill=\"#00FF00\"") != std::string::npos);
    CHECK(svg.find("width=\"30\"") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("reduced ratio compares unit counts") {
    CHECK(reduced_ratio(12, 4) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(reduced_ratio(19, 5) == doctest::Approx(14.0 / 19.0).epsilon(1e-12));
    CHECK(reduced_ratio(5, 5) == 0.0);
    CHECK_THROWS_AS(reduced_ratio(0, 0), ZeroLeaves);
}

TEST_CASE("exact match rate is the fraction of hits") {
    CHECK(exact_match_rate({true, true, true, false}) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(exact_match_rate({false}) == 0.0);
    CHECK_THROWS_AS(exact_match_rate({}), EmptyJudgments);
}

TEST_CASE("judgment csv parsing") {
    auto j = parse_judgments_csv("page_id,group_id,match\np1,g0,1\np1,g1,0\np2,g0,1\n");
    REQUIRE(j.size() == 3);
    CHECK(j[0]);
    CHECK_FALSE(j[1]);
    CHECK(j[2]);

    // CRLF and blank lines are tolerated
    auto crlf = parse_judgments_csv("page_id,group_id,match\r\n\r\np1,g0,1\r\n");
    CHECK(crlf.size() == 1);

    CHECK_THROWS_AS(parse_judgments_csv("wrong,header\np,g,1\n"), Error);
    CHECK_THROWS_AS(parse_judgments_csv("page_id,group_id,match\np,g,yes\n"), Error);
    CHECK_THROWS_AS(parse_judgments_csv("page_id,group_id,match\n"), EmptyJudgments);
}
