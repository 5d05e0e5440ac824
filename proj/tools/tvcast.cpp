// tvcast: convert phone GUI hierarchy dumps into TV layouts.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "tvcast/dsl.hpp"
#include "tvcast/pipeline.hpp"

namespace {

using namespace tvcast;

PipelineConfig resolve_config(const std::string& config_path) {
    if (!config_path.empty()) return load_pipeline_config(config_path);
    if (const char* env = std::getenv("TVCAST_CONFIG"); env && *env)
        return load_pipeline_config(env);
    return PipelineConfig{};
}

int do_convert(const std::vector<std::string>& inputs, PipelineConfig cfg,
               const std::string& out_dir) {
    ConversionReport report = run_convert(inputs, cfg, out_dir);
    for (const auto& p : report.pages) {
        if (p.ok)
            std::cout << p.name << ": ok (" << p.original_leaf_count << " leaves -> "
                      << p.final_unit_count << " units)\n";
        else
            std::cout << p.name << ": FAILED: " << p.error << "\n";
    }
    std::cout << "report: " << out_dir << "/report.json\n";
    return report.successes > 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phone-to-TV GUI conversion toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "Pipeline config (TOML)")
        ->envname("TVCAST_CONFIG");

    // convert
    auto* convert = app.add_subcommand("convert", "Run the full pipeline on hierarchy dumps");
    std::vector<std::string> inputs;
    std::string out_dir = "out";
    std::string templates_path;
    int tv_width = 0, tv_height = 0, jobs = 0;
    convert->add_option("inputs", inputs, "Hierarchy XML files")->required();
    convert->add_option("--out", out_dir, "Output directory");
    convert->add_option("--templates", templates_path, "Template catalog JSON");
    convert->add_option("--tv-width", tv_width, "TV canvas width");
    convert->add_option("--tv-height", tv_height, "TV canvas height");
    convert->add_option("--jobs", jobs, "Parallel page workers");

    // single-stage subcommands
    std::string stage_input;
    auto* group_cmd = app.add_subcommand("group", "Emit grouping JSON for one page");
    group_cmd->add_option("input", stage_input, "Hierarchy XML")->required();
    auto* classify_cmd = app.add_subcommand("classify", "Emit classified groups for one page");
    classify_cmd->add_option("input", stage_input, "Hierarchy XML")->required();
    auto* layout_cmd = app.add_subcommand("layout", "Emit the solved layout for one page");
    layout_cmd->add_option("input", stage_input, "Hierarchy XML")->required();
    auto* render_cmd = app.add_subcommand("render", "Emit wireframe SVG + .wf for one page");
    std::string render_out = ".";
    render_cmd->add_option("input", stage_input, "Hierarchy XML")->required();
    render_cmd->add_option("--out", render_out, "Output directory");

    // dsl fmt|check
    auto* dsl_cmd = app.add_subcommand("dsl", "DSL utilities");
    dsl_cmd->require_subcommand(1);
    std::string dsl_file;
    auto* fmt_cmd = dsl_cmd->add_subcommand("fmt", "Canonicalize a .tvdsl file in place");
    fmt_cmd->add_option("file", dsl_file, "DSL file")->required();
    auto* check_cmd = dsl_cmd->add_subcommand("check", "Validate a .tvdsl file");
    check_cmd->add_option("file", dsl_file, "DSL file")->required();

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Compare generated wireframes with ground truth");
    std::vector<std::string> gen_paths, truth_paths;
    std::string judgments;
    eval_cmd->add_option("--generated", gen_paths, "Generated .wf files")->required();
    eval_cmd->add_option("--truth", truth_paths, "Ground-truth .wf files")->required();
    eval_cmd->add_option("--judgments", judgments, "Exact-match judgment CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig cfg = resolve_config(config_path);
        if (!templates_path.empty()) cfg.template_path = templates_path;
        if (tv_width > 0) cfg.tv_screen.width_px = tv_width;
        if (tv_height > 0) cfg.tv_screen.height_px = tv_height;
        if (jobs > 0) cfg.jobs = jobs;

        if (*convert) return do_convert(inputs, cfg, out_dir);

        if (*group_cmd || *classify_cmd || *layout_cmd || *render_cmd) {
            std::string xml = read_file(stage_input);
            if (*group_cmd) {
                DomTree tree = parse_hierarchy(xml, std::nullopt, cfg.widget_rules());
                std::cout << grouping_to_json(group_page(tree, tree.screen, cfg.grouping))
                          << "\n";
                return 0;
            }
            if (*classify_cmd) {
                DomTree tree = parse_hierarchy(xml, std::nullopt, cfg.widget_rules());
                auto grouping = group_page(tree, tree.screen, cfg.grouping);
                std::cout << classified_to_json(
                                 classify_page(grouping, tree.screen, cfg.templates(),
                                               cfg.classify))
                          << "\n";
                return 0;
            }
            PageArtifacts a = convert_page(xml, cfg);
            if (*layout_cmd) {
                std::cout << solution_to_json(a.solution) << "\n";
                return 0;
            }
            std::string stem = stage_input;
            if (auto slash = stem.rfind('/'); slash != std::string::npos)
                stem = stem.substr(slash + 1);
            if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
            write_file(render_out + "/" + stem + ".svg", a.svg);
            write_file(render_out + "/" + stem + ".wf", wireframe_to_binary(a.frame));
            std::cout << render_out << "/" << stem << ".svg\n"
                      << render_out << "/" << stem << ".wf\n";
            return 0;
        }

        if (*fmt_cmd) {
            write_file(dsl_file, format_dsl(read_file(dsl_file)));
            return 0;
        }
        if (*check_cmd) {
            DslDocument doc = parse_dsl(read_file(dsl_file));
            auto problems = validate_dsl(doc);
            for (const auto& p : problems) std::cerr << p << "\n";
            if (problems.empty()) {
                std::cout << dsl_file << ": " << doc.statements.size() << " statements, ok\n";
                return 0;
            }
            return 1;
        }

        if (*eval_cmd) {
            std::optional<std::string> csv;
            if (!judgments.empty()) csv = judgments;
            EvalReport report = run_eval(gen_paths, truth_paths, csv);
            std::cout << eval_to_table(report);
            std::cout << eval_to_json(report) << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << " (expected " << e.expected << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
