#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvcast/config.hpp"
#include "tvcast/wireframe.hpp"

namespace tvcast {

struct PageEntry {
    std::string name;
    bool ok = false;
    std::string error;  // set when !ok
    int original_leaf_count = 0;
    int final_unit_count = 0;
    double reduced = 0.0;
    std::vector<std::string> categories;     // phone categories, page order
    std::vector<std::string> tv_categories;  // after mapping
    double objective = 0.0;
    std::vector<std::string> pruned;
    std::vector<std::string> outputs;  // emitted file paths
};

struct ConversionReport {
    std::vector<PageEntry> pages;
    int successes = 0;
    int failures = 0;
    double mean_reduced = 0.0;
};

struct IoError : Error {
    using Error::Error;
};

// Single-page conversion products, kept in memory for tests and the CLI.
struct PageArtifacts {
    GroupingResult grouping;
    std::vector<ClassifiedGroup> classified;
    TvPage page;
    LayoutSolution solution;
    std::vector<std::string> pruned;
    std::string dsl_text;
    std::string svg;
    Wireframe frame;
};

PageArtifacts convert_page(const std::string& xml_text, const PipelineConfig& config);

ConversionReport run_convert(const std::vector<std::string>& inputs,
                             const PipelineConfig& config,
                             const std::string& out_dir);

std::string report_to_json(const ConversionReport& report);

struct EvalPair {
    std::string name;
    bool ok = false;
    std::string error;
    double miou = 0.0;
};

struct EvalReport {
    std::vector<EvalPair> pairs;
    double mean_miou = 0.0;
    std::optional<double> exact_match;
};

struct PairingMismatch : Error {
    using Error::Error;
};

EvalReport run_eval(const std::vector<std::string>& generated,
                    const std::vector<std::string>& truth,
                    const std::optional<std::string>& judgments_csv_path);

std::string eval_to_json(const EvalReport& report);
std::string eval_to_table(const EvalReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace tvcast
