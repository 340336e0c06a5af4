#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "limview/backprojection.hpp"
#include "limview/filter.hpp"
#include "limview/geometry.hpp"
#include "limview/phantom.hpp"
#include "limview/window.hpp"

namespace limview::cli {

/// Everything one reconstruction needs. Text form (one `key = value` per
/// line, '#' comments):
///
///   name    = fig3
///   curve   = circle | ellipse:a,b | polar | path/to/curve.csv
///   arc     = full | s_start, s_end        (numbers may use pi: 3pi/2)
///   phantom = (0, 0, 0.3, 1), (0.2, 0.1, 0.05, -0.5)
///   n, extent, na, nr, rmax
///   window  = sharp | rational | plateau;  eps, order
///   filter_dim, pad, taper
///
/// rmax = 0 selects the curve diameter (2 for the unit circle).
struct RunConfig {
    std::string name = "run";
    std::string curve = "circle";
    std::optional<std::pair<double, double>> arc;
    std::vector<DiscPhantom> phantom{DiscPhantom{{0.0, 0.0}, 0.3, 1.0}};
    int n = 512;
    double extent = 0.7;
    int n_a = 512;
    int n_r = 512;
    double r_max = 0.0;
    WindowKind window = WindowKind::Sharp;
    double epsilon = 0.2;
    int order_k = 1;
    int filter_dim = 2;
    int pad = 2;
    double taper = 0.1;
};

AcquisitionCurve curve_of(const RunConfig& cfg);
Arc arc_of(const RunConfig& cfg);
WindowSpec window_of(const RunConfig& cfg);
FilterPlan plan_of(const RunConfig& cfg);
ReconGrid grid_of(const RunConfig& cfg);
SamplingSpec sampling_of(const RunConfig& cfg);
Phantom phantom_of(const RunConfig& cfg);
double effective_r_max(const RunConfig& cfg);

/// Checks every component invariant; throws Error(Validation, ...) naming the
/// first one violated.
void validate(const RunConfig& cfg);

/// "1.5", "pi", "3pi/2", "0.5*pi", "pi/4".
double parse_number(std::string_view text);

/// "(cx, cy, r, A), (cx, cy, r, A)". Empty lists are rejected.
std::vector<DiscPhantom> parse_phantom_list(std::string_view text);

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
RunConfig parse_config_text(std::string_view text, RunConfig base = {});
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

/// Inverse of parse_config_text; numbers round-trip exactly.
std::string to_config_text(const RunConfig& cfg);

/// Sets n = n_a = n_r. Throws unless scale is 256, 512, 1024 or 2048.
void apply_scale(RunConfig& cfg, int scale);

std::vector<std::string> preset_names();
/// Throws Validation for unknown names.
RunConfig preset(std::string_view name);
std::string preset_description(std::string_view name);

struct Experiment {
    std::string name;
    std::vector<RunConfig> runs;
};

std::vector<std::string> experiment_names();
Experiment experiment(std::string_view name, int scale);

}  // namespace limview::cli
