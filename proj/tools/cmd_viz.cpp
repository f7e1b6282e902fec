#include <algorithm>
#include <filesystem>
#include <iostream>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "detail/csv.hpp"
#include "talkshare/report_json.hpp"
#include "talkshare/summary.hpp"
#include "talkshare/viz.hpp"

namespace fs = std::filesystem;

namespace talkshare::cli {

namespace {

struct VizOptions {
  std::string report_path;
  std::string reports_dir;
  std::string mode = "strip";
  std::string out;
  std::string sort = "imbalance_desc";
};

std::vector<DynamicsReport> load_reports_dir(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no report JSON files in " + dir);
  std::vector<DynamicsReport> reports;
  reports.reserve(files.size());
  for (const auto& file : files)
    reports.push_back(report_from_json(detail::read_file(file.string())));
  return reports;
}

void run_viz(const VizOptions& options) {
  if (options.report_path.empty() == options.reports_dir.empty())
    throw UsageError("viz: give exactly one of --report or --reports-dir");
  const StripStyle style;

  if (options.mode == "grid") {
    if (options.reports_dir.empty())
      throw UsageError("viz: grid mode needs --reports-dir");
    const auto reports = load_reports_dir(options.reports_dir);
    const GridSort sort = options.sort == "id" ? GridSort::Id : GridSort::ImbalanceDesc;
    const std::string out_path =
        options.out.empty() ? options.reports_dir + "/grid.svg" : options.out;
    atomic_write(out_path, render_corpus_grid(reports, sort, style));
    std::cout << "wrote " << out_path << "\n";
    return;
  }

  std::vector<DynamicsReport> reports;
  if (!options.report_path.empty())
    reports.push_back(report_from_json(detail::read_file(options.report_path)));
  else
    reports = load_reports_dir(options.reports_dir);

  if (options.mode == "term") {
    for (const auto& report : reports)
      std::cout << report.id << " " << render_terminal(report) << "\n";
    return;
  }

  for (const auto& report : reports) {
    const std::string svg =
        options.mode == "pie" ? render_pie(report.composition, style)
                              : render_strip(report, style);
    std::string out_path = options.out;
    if (reports.size() > 1 || out_path.empty()) {
      const fs::path dir = out_path.empty()
                               ? (options.report_path.empty()
                                      ? fs::path(options.reports_dir)
                                      : fs::path(options.report_path).parent_path())
                               : fs::path(out_path);
      out_path =
          (dir / (sanitize_filename(report.id) + "." + options.mode + ".svg")).string();
    }
    atomic_write(out_path, svg);
    std::cout << "wrote " << out_path << "\n";
  }
}

}  // namespace

void register_viz(CLI::App& app) {
  auto options = std::make_shared<VizOptions>();
  CLI::App* cmd = app.add_subcommand("viz", "Render regime strips, pies, or grids");
  cmd->add_option("--report", options->report_path, "Single report JSON");
  cmd->add_option("--reports-dir", options->reports_dir, "Directory of report JSONs");
  cmd->add_option("--mode", options->mode, "strip, pie, grid, or term")
      ->check(CLI::IsMember({"strip", "pie", "grid", "term"}));
  cmd->add_option("--out", options->out,
                  "Output file (single report) or directory (batch)");
  cmd->add_option("--sort", options->sort, "Grid row order")
      ->check(CLI::IsMember({"imbalance_desc", "id"}));
  cmd->callback([options] { run_viz(*options); });
}

}  // namespace talkshare::cli
