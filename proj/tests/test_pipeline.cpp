#include <doctest.h>

#include <filesystem>

#include "tvcast/dsl.hpp"
#include "tvcast/pipeline.hpp"
#include "fixtures.hpp"

using namespace tvcast;
namespace fs = std::filesystem;

namespace {

// fresh scratch directory per test case
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::path("scratch") / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    std::string file(const std::string& name, const std::string& content) const {
        std::string p = (dir / name).string();
        write_file(p, content);
        return p;
    }
};

}  // namespace

TEST_CASE("the config parser reads the supported value kinds") {
    auto t = TomlTable::parse(
        "# a comment\n"
        "top = 1\n"
        "[grouping]\n"
        "gap_coefficient = 0.03   # trailing comment\n"
        "allow_one_mismatch = false\n"
        "[classify]\n"
        "templates = \"catalog.json\"\n"
        "threshold = 3\n");
    CHECK(t.get_int("top", 0) == 1);
    CHECK(t.get_double("grouping.gap_coefficient", 0) == doctest::Approx(0.03));
    CHECK(t.get_bool("grouping.allow_one_mismatch", true) == false);
    CHECK(t.get_string("classify.templates", "") == "catalog.json");
    CHECK(t.get_int("classify.threshold", 0) == 3);
    CHECK(t.get_int("absent", 7) == 7);
    CHECK(t.has("grouping.gap_coefficient"));
    CHECK_FALSE(t.has("grouping.nope"));
    auto keys = t.keys_with_prefix("classify.");
    CHECK(keys.size() == 2);
}

TEST_CASE("malformed config lines are rejected with line numbers") {
    auto check_message = [](const std::string& text, const std::string& fragment) {
        try {
            TomlTable::parse(text);
            FAIL("expected ConfigError for: ", text);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    check_message("key value\n", "line 1");
    check_message("[section\n", "unterminated");
    check_message("a = 1\nb = 1.2.3\n", "line 2");
    check_message("x = \"open\n", "unterminated string");
    check_message("[]\n", "empty table name");

    auto t = TomlTable::parse("s = \"text\"\nn = 5\n");
    CHECK_THROWS_AS(t.get_int("s", 0), ConfigError);
    CHECK_THROWS_AS(t.get_bool("n", false), ConfigError);
    CHECK_THROWS_AS(t.get_string("n", ""), ConfigError);
}

TEST_CASE("an empty config keeps the built-in defaults") {
    auto c = config_from_toml(TomlTable::parse(""), "");
    CHECK(c.grouping.gap_coefficient == doctest::Approx(0.025));
    CHECK(c.grouping.row_width_coefficient == doctest::Approx(0.85));
    CHECK(c.classify.threshold == 2);
    CHECK(c.tv_screen.width_px == 1920);
    CHECK(c.tv_screen.height_px == 1080);
    CHECK(c.layout.margin == 48);
    CHECK(c.layout.channel_rail_width == 280);
    CHECK(c.jobs == 1);
    CHECK(c.template_path.empty());
    auto d = default_size_table().at({TvGroupCategory::PicInfo, SizeClass::Large});
    auto e = c.size_table.at({TvGroupCategory::PicInfo, SizeClass::Large});
    CHECK(e.width_pref == d.width_pref);
    CHECK(e.bounds.width_min == d.bounds.width_min);
}

TEST_CASE("config values override defaults including the size table") {
    auto c = config_from_toml(TomlTable::parse("[grouping]\n"
                                               "gap_coefficient = 0.05\n"
                                               "[tv]\n"
                                               "width = 3840\n"
                                               "height = 2160\n"
                                               "margin = 96\n"
                                               "[pipeline]\n"
                                               "jobs = 4\n"
                                               "[sizes.PicInfo.large]\n"
                                               "width_pref = 640\n"
                                               "width_max = 900\n"),
                              "");
    CHECK(c.grouping.gap_coefficient == doctest::Approx(0.05));
    CHECK(c.tv_screen.width_px == 3840);
    CHECK(c.layout.margin == 96);
    CHECK(c.jobs == 4);
    auto e = c.size_table.at({TvGroupCategory::PicInfo, SizeClass::Large});
    CHECK(e.width_pref == 640);
    CHECK(e.bounds.width_max == 900);
    CHECK(e.bounds.width_min == 420);  // untouched field keeps its default
}

TEST_CASE("invalid config values are refused") {
    CHECK_THROWS_AS(config_from_toml(TomlTable::parse("[grouping]\ngap_coefficient = 2.0\n"), ""),
                    ConfigError);
    CHECK_THROWS_AS(config_from_toml(TomlTable::parse("[pipeline]\njobs = 0\n"), ""),
                    ConfigError);
    CHECK_THROWS_AS(config_from_toml(TomlTable::parse("[classify]\nthreshold = 0\n"), ""),
                    ConfigError);
    CHECK_THROWS_AS(
        config_from_toml(TomlTable::parse("[sizes.PicInfo.large]\nwidth_min = -5\n"), ""),
        ConfigError);
    CHECK_THROWS_AS(
        config_from_toml(TomlTable::parse("[classify]\ntemplates = \"missing.json\"\n"), ""),
        ConfigError);
}

TEST_CASE("relative paths resolve against the config directory") {
    Scratch s("config_paths");
    s.file("catalog.json",
           "{\"templates\":[{\"category\":\"Search\","
           "\"predicates\":[\"kind:SearchBox\",\"keyword:search\",\"half:top\"]}]}");
    std::string cfg = s.file("tvcast.toml", "[classify]\ntemplates = \"catalog.json\"\n");
    auto c = load_pipeline_config(cfg);
    CHECK(c.template_path == (s.dir / "catalog.json").string());
    auto tpls = c.templates();
    REQUIRE(tpls.size() == 1);
    CHECK(tpls[0].category == PhoneGroupCategory::Search);
}

TEST_CASE("a page converts end to end in memory") {
    PipelineConfig config;
    auto a = convert_page(fixtures::template_match_page(), config);
    CHECK(a.grouping.original_leaf_count == 19);
    CHECK(a.classified.size() == 5);
    CHECK(a.page.groups.size() == 5);
    CHECK(a.pruned.empty());
    CHECK(!a.dsl_text.empty());
    CHECK(parse_dsl(a.dsl_text).statements.size() > 1);
    CHECK(a.frame.width == 1920);
    CHECK(!a.svg.empty());
}

TEST_CASE("one bad page does not sink the batch") {
    Scratch s("batch");
    std::vector<std::string> inputs = {
        s.file("good_a.xml", fixtures::template_match_page()),
        s.file("broken.xml", "<hierarchy><node bounds=\"oops\"/></hierarchy>"),
        s.file("good_b.xml",
               fixtures::page(fixtures::node("android.widget.ImageView", "[0,0][1080,900]") +
                              fixtures::node("android.widget.TextView", "[0,950][1080,1100]",
                                             "", "hello"))),
    };
    PipelineConfig config;
    config.jobs = 2;
    std::string out = (s.dir / "out").string();
    auto report = run_convert(inputs, config, out);

    CHECK(report.successes == 2);
    CHECK(report.failures == 1);
    REQUIRE(report.pages.size() == 3);
    CHECK(report.pages[0].ok);
    CHECK_FALSE(report.pages[1].ok);
    CHECK(!report.pages[1].error.empty());
    CHECK(report.pages[2].ok);
    CHECK(report.pages[0].reduced > 0.0);
    CHECK(report.mean_reduced > 0.0);

    for (const char* stem : {"good_a", "good_b"}) {
        for (const char* ext : {".page.json", ".tvdsl", ".svg", ".wf"})
            CHECK(fs::exists(fs::path(out) / (std::string(stem) + ext)));
    }
    CHECK_FALSE(fs::exists(fs::path(out) / "broken.tvdsl"));
    CHECK(fs::exists(fs::path(out) / "report.json"));
    CHECK(read_file((fs::path(out) / "report.json").string()).find("\"successes\": 2") !=
          std::string::npos);
}

TEST_CASE("conversion artifacts are byte-identical across runs") {
    Scratch s("repeat");
    std::vector<std::string> inputs = {s.file("page.xml", fixtures::template_match_page())};
    PipelineConfig config;
    std::string out1 = (s.dir / "run1").string();
    std::string out2 = (s.dir / "run2").string();
    run_convert(inputs, config, out1);
    run_convert(inputs, config, out2);
    for (const char* ext : {".page.json", ".tvdsl", ".svg", ".wf"}) {
        auto a = read_file((fs::path(out1) / (std::string("page") + ext)).string());
        auto b = read_file((fs::path(out2) / (std::string("page") + ext)).string());
        CHECK(a == b);
    }
}

TEST_CASE("evaluation pairs wireframes by name and averages miou") {
    Scratch s("eval");
    PipelineConfig config;
    auto a = convert_page(fixtures::template_match_page(), config);

    Wireframe shifted = a.frame;  // same size, different content
    shifted.fill_rect(0, 0, 400, 400, WireClass::Image);

    auto g1 = s.file("p1.wf", wireframe_to_binary(a.frame));
    auto g2 = s.file("p2.wf", wireframe_to_binary(a.frame));
    fs::create_directories(s.dir / "truth");
    auto t1 = s.file("truth/p1.wf", wireframe_to_binary(a.frame));
    auto t2 = s.file("truth/p2.wf", wireframe_to_binary(shifted));

    auto report = run_eval({g1, g2}, {t2, t1}, std::nullopt);  // order may differ
    REQUIRE(report.pairs.size() == 2);
    CHECK(report.pairs[0].name == "p1");
    CHECK(report.pairs[0].miou == 1.0);
    CHECK(report.pairs[1].miou < 1.0);
    CHECK(report.mean_miou ==
          doctest::Approx((report.pairs[0].miou + report.pairs[1].miou) / 2));
    CHECK(!report.exact_match.has_value());

    auto csv = s.file("judged.csv", "page_id,group_id,match\np1,g0,1\np1,g1,1\np2,g0,1\np2,g1,0\n");
    auto judged = run_eval({g1, g2}, {t1, t2}, csv);
    REQUIRE(judged.exact_match.has_value());
    CHECK(*judged.exact_match == doctest::Approx(0.75));

    std::string table = eval_to_table(judged);
    CHECK(table.find("p1") != std::string::npos);
    CHECK(table.find("1.0000") != std::string::npos);
    CHECK(table.find("exact_match") != std::string::npos);
    CHECK(table.find("0.7500") != std::string::npos);

    CHECK_THROWS_AS(run_eval({g1}, {t2}, std::nullopt), PairingMismatch);
    CHECK_THROWS_AS(run_eval({g1, g2}, {t1}, std::nullopt), PairingMismatch);
}

TEST_CASE("broken wireframes are reported per pair, not fatally") {
    Scratch s("eval_broken");
    PipelineConfig config;
    auto a = convert_page(fixtures::template_match_page(), config);
    auto g1 = s.file("p1.wf", wireframe_to_binary(a.frame));
    fs::create_directories(s.dir / "truth");
    auto t1 = s.file("truth/p1.wf", "not a wireframe");
    auto report = run_eval({g1}, {t1}, std::nullopt);
    REQUIRE(report.pairs.size() == 1);
    CHECK_FALSE(report.pairs[0].ok);
    CHECK(!report.pairs[0].error.empty());
    CHECK(report.mean_miou == 0.0);
}
