#include "tvcast/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tvcast/dsl.hpp"

namespace tvcast {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << data;
    if (!out) throw IoError("write failed: " + path);
}

PageArtifacts convert_page(const std::string& xml_text, const PipelineConfig& config) {
    PageArtifacts a;
    DomTree tree = parse_hierarchy(xml_text, std::nullopt, config.widget_rules());
    a.grouping = group_page(tree, tree.screen, config.grouping);
    a.classified = classify_page(a.grouping, tree.screen, config.templates(), config.classify);
    a.page = build_tv_page(a.classified, tree.screen, config.tv_screen, config.transform);

    int max_height = config.tv_screen.height_px - 2 * config.layout.margin;
    auto [pruned_page, pruned_ids] =
        prune_overflow(a.page, config.tv_screen, max_height, config.size_table, config.layout);
    a.page = pruned_page;
    a.pruned = pruned_ids;

    ConstraintSystem sys =
        build_constraints(a.page, config.tv_screen, config.size_table, config.layout);
    a.solution = solve_layout(sys);
    a.solution.pruned = a.pruned;

    a.dsl_text = emit_dsl(a.page, a.solution);
    a.svg = wireframe_to_svg(a.solution, a.page);
    a.frame = render_wireframe(a.solution, a.page);
    return a;
}

ConversionReport run_convert(const std::vector<std::string>& inputs,
                             const PipelineConfig& config, const std::string& out_dir) {
    fs::create_directories(out_dir);
    ConversionReport report;
    report.pages.resize(inputs.size());

    std::mutex mu;
    std::size_t next = 0;

    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= inputs.size()) return;
                i = next++;
            }
            PageEntry entry;
            entry.name = fs::path(inputs[i]).stem().string();
            try {
                std::string xml = read_file(inputs[i]);
                PageArtifacts a = convert_page(xml, config);

                std::string base = (fs::path(out_dir) / entry.name).string();
                write_file(base + ".page.json", tv_page_to_json(a.page));
                write_file(base + ".tvdsl", a.dsl_text);
                write_file(base + ".svg", a.svg);
                write_file(base + ".wf", wireframe_to_binary(a.frame));
                entry.outputs = {base + ".page.json", base + ".tvdsl", base + ".svg",
                                 base + ".wf"};

                entry.ok = true;
                entry.original_leaf_count = a.grouping.original_leaf_count;
                entry.final_unit_count = a.grouping.final_unit_count;
                entry.reduced = a.grouping.original_leaf_count > 0
                                    ? reduced_ratio(a.grouping.original_leaf_count,
                                                    a.grouping.final_unit_count)
                                    : 0.0;
                for (const auto& c : a.classified)
                    entry.categories.push_back(phone_category_name(c.category));
                for (const auto& g : a.page.groups)
                    entry.tv_categories.push_back(tv_category_name(g.category));
                entry.objective = a.solution.objective;
                entry.pruned = a.pruned;
            } catch (const std::exception& e) {
                entry.ok = false;
                entry.error = e.what();
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                report.pages[i] = std::move(entry);
            }
        }
    };

    int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(inputs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    double reduced_sum = 0.0;
    for (const auto& p : report.pages) {
        if (p.ok) {
            ++report.successes;
            reduced_sum += p.reduced;
        } else {
            ++report.failures;
        }
    }
    report.mean_reduced = report.successes ? reduced_sum / report.successes : 0.0;

    write_file((fs::path(out_dir) / "report.json").string(), report_to_json(report));
    return report;
}

std::string report_to_json(const ConversionReport& report) {
    ordered_json doc;
    doc["successes"] = report.successes;
    doc["failures"] = report.failures;
    doc["mean_reduced"] = report.mean_reduced;
    doc["pages"] = ordered_json::array();
    for (const auto& p : report.pages) {
        ordered_json j;
        j["name"] = p.name;
        j["ok"] = p.ok;
        if (!p.ok) {
            j["error"] = p.error;
        } else {
            j["original_leaf_count"] = p.original_leaf_count;
            j["final_unit_count"] = p.final_unit_count;
            j["reduced"] = p.reduced;
            j["categories"] = p.categories;
            j["tv_categories"] = p.tv_categories;
            j["objective"] = p.objective;
            j["pruned"] = p.pruned;
            j["outputs"] = p.outputs;
        }
        doc["pages"].push_back(std::move(j));
    }
    return doc.dump(2);
}

EvalReport run_eval(const std::vector<std::string>& generated,
                    const std::vector<std::string>& truth,
                    const std::optional<std::string>& judgments_csv_path) {
    if (generated.size() != truth.size())
        throw PairingMismatch("generated and truth lists differ in length");
    // pair by filename stem
    auto stem = [](const std::string& p) { return fs::path(p).stem().string(); };
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& g : generated) {
        auto it = std::find_if(truth.begin(), truth.end(),
                               [&](const std::string& t) { return stem(t) == stem(g); });
        if (it == truth.end())
            throw PairingMismatch("no ground-truth file pairs with " + stem(g));
        pairs.emplace_back(g, *it);
    }

    EvalReport report;
    double sum = 0.0;
    int ok_count = 0;
    for (const auto& [g, t] : pairs) {
        EvalPair p;
        p.name = stem(g);
        try {
            Wireframe wg = wireframe_from_binary(read_file(g));
            Wireframe wt = wireframe_from_binary(read_file(t));
            p.miou = compute_miou(wg, wt).miou;
            p.ok = true;
            sum += p.miou;
            ++ok_count;
        } catch (const std::exception& e) {
            p.ok = false;
            p.error = e.what();
        }
        report.pairs.push_back(std::move(p));
    }
    report.mean_miou = ok_count ? sum / ok_count : 0.0;

    if (judgments_csv_path)
        report.exact_match = exact_match_rate(parse_judgments_csv(read_file(*judgments_csv_path)));
    return report;
}

std::string eval_to_json(const EvalReport& report) {
    ordered_json doc;
    doc["mean_miou"] = report.mean_miou;
    if (report.exact_match) doc["exact_match"] = *report.exact_match;
    doc["pairs"] = ordered_json::array();
    for (const auto& p : report.pairs) {
        ordered_json j;
        j["name"] = p.name;
        j["ok"] = p.ok;
        if (p.ok) j["miou"] = p.miou;
        else j["error"] = p.error;
        doc["pairs"].push_back(std::move(j));
    }
    return doc.dump(2);
}

std::string eval_to_table(const EvalReport& report) {
    std::ostringstream os;
    std::size_t name_w = 4;
    for (const auto& p : report.pairs) name_w = std::max(name_w, p.name.size());
    os << std::left << std::setw(static_cast<int>(name_w) + 2) << "page" << "miou\n";
    for (const auto& p : report.pairs) {
        os << std::left << std::setw(static_cast<int>(name_w) + 2) << p.name;
        if (p.ok)
            os << std::fixed << std::setprecision(4) << p.miou << '\n';
        else
            os << "error: " << p.error << '\n';
    }
    os << std::left << std::setw(static_cast<int>(name_w) + 2) << "mean" << std::fixed
       << std::setprecision(4) << report.mean_miou << '\n';
    if (report.exact_match)
        os << std::left << std::setw(static_cast<int>(name_w) + 2) << "exact_match"
           << std::fixed << std::setprecision(4) << *report.exact_match << '\n';
    return os.str();
}

}  // namespace tvcast
