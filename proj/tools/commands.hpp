#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "limview/phantom.hpp"
#include "limview/sinogram.hpp"
#include "run_config.hpp"

namespace limview::cli {

struct GlobalOptions {
    std::filesystem::path out = "out";
    int threads = 0;  ///< 0 = all hardware threads
    int scale = 512;
};

/// Analytic sinogram written to <out>/<name>_sinogram.{f64,json}.
Sinogram cmd_forward(const RunConfig& cfg, const GlobalOptions& opts);

/// Image triplet <out>/<name>.{f64,json,pgm} and <out>/<name>_profile.csv
/// (central horizontal line). Data come from `sinogram_base` when given,
/// otherwise from the analytic forward transform of the configured phantom.
RasterImage cmd_reconstruct(const RunConfig& cfg, const GlobalOptions& opts,
                            const std::filesystem::path& sinogram_base = {});

struct ReportTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Report columns: experiment, run, window, eps, k, jump and sigma0 at the
/// 45 and 135 degree radial probes of the first disc, artifact amplitude at
/// each predicted circle and at a control circle of radius 0.5 around the
/// arc start. Cells that cannot be measured are left empty.
std::vector<std::string> report_header(const RunConfig& cfg);
std::vector<std::string> report_row(const std::string& experiment, const RunConfig& cfg, const RasterImage& image);

/// Runs every reconstruction of the experiment into <out>/<name>/, writes
/// manifest.json and report.csv there.
ReportTable cmd_experiment(const std::string& name, const GlobalOptions& opts);

/// Recomputes report.csv from the manifest and images of an experiment
/// directory.
ReportTable cmd_analyze(const std::filesystem::path& dir);

/// Entry point. Returns 0 on success, 1 on validation errors, 2 on I/O errors.
int run(int argc, char** argv);

}  // namespace limview::cli
