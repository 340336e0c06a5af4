#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "limview/analysis.hpp"
#include "limview/backprojection.hpp"
#include "limview/io.hpp"

namespace limview::cli {

namespace {

using nlohmann::json;

constexpr double kControlRadius = 0.5;
constexpr double kProbeAngles[] = {45.0, 135.0};

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::vector<ArtifactCircle> report_circles(const RunConfig& cfg) {
    const Arc arc = arc_of(cfg);
    auto circles = predicted_artifact_circles(phantom_of(cfg), arc);
    circles.push_back(ArtifactCircle{arc.start_point(), kControlRadius, 0});
    return circles;
}

std::string circle_column(const Arc& arc, const ArtifactCircle& c, bool control) {
    if (control) return "artifact_control";
    const char* end = distance(c.center, arc.start_point()) < 1e-12 ? "start" : "end";
    return std::string("artifact_") + end + "_d" + std::to_string(c.source_disc) + "_r" + short_number(c.radius);
}

template <typename F>
std::string measured(F&& f) {
    try {
        return format_number(f());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ProbeOutsideGrid || e.kind() == ErrorKind::EmptySampleSet ||
            e.kind() == ErrorKind::Validation) {
            return "";
        }
        throw;
    }
}

void write_profile(const RasterImage& image, const std::filesystem::path& path) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : line_profile(image, 0.0)) rows.push_back({format_number(p.x), format_number(p.value)});
    write_csv(path, {"x", "value"}, rows);
}

std::string describe(const RunConfig& cfg) {
    std::string text = cfg.name + ": curve " + cfg.curve + ", window " + window_of(cfg).label();
    if (cfg.arc) text += ", arc [" + format_number(cfg.arc->first) + ", " + format_number(cfg.arc->second) + "]";
    return text;
}

RasterImage reconstruct_run(const RunConfig& cfg, const GlobalOptions& opts) {
    validate(cfg);
    return reconstruct(phantom_of(cfg), arc_of(cfg), sampling_of(cfg), window_of(cfg), plan_of(cfg), grid_of(cfg),
                       opts.threads);
}

void write_report(const ReportTable& table, const std::filesystem::path& dir) {
    write_csv(dir / "report.csv", table.header, table.rows);
}

}  // namespace

Sinogram cmd_forward(const RunConfig& cfg, const GlobalOptions& opts) {
    validate(cfg);
    auto sino = sample_sinogram(phantom_of(cfg), arc_of(cfg), cfg.n_a, cfg.n_r, effective_r_max(cfg), opts.threads);
    write_sinogram(sino, opts.out / (cfg.name + "_sinogram"));
    return sino;
}

RasterImage cmd_reconstruct(const RunConfig& cfg, const GlobalOptions& opts,
                            const std::filesystem::path& sinogram_base) {
    RasterImage image;
    if (sinogram_base.empty()) {
        image = reconstruct_run(cfg, opts);
    } else {
        const Sinogram data = read_sinogram(sinogram_base);
        const WindowSpec window = [&] {
            RunConfig c = cfg;
            c.curve = data.curve().spec();
            c.arc = std::make_pair(data.s_start(), data.s_end());
            return window_of(c);
        }();
        const FilterPlan plan = FilterPlan::for_radial_samples(data.n_r(), cfg.filter_dim, cfg.pad, cfg.taper);
        image = reconstruct(data, window, plan, grid_of(cfg), opts.threads);
    }
    write_image(image, opts.out / cfg.name, std::nullopt, describe(cfg));
    write_profile(image, opts.out / (cfg.name + "_profile.csv"));
    return image;
}

std::vector<std::string> report_header(const RunConfig& cfg) {
    std::vector<std::string> header{"experiment", "run", "window", "eps", "k"};
    for (double deg : kProbeAngles) {
        header.push_back("jump_" + short_number(deg));
        header.push_back("sigma0_" + short_number(deg));
    }
    const Arc arc = arc_of(cfg);
    const auto circles = report_circles(cfg);
    for (std::size_t i = 0; i < circles.size(); ++i) {
        header.push_back(circle_column(arc, circles[i], i + 1 == circles.size()));
    }
    return header;
}

std::vector<std::string> report_row(const std::string& experiment, const RunConfig& cfg, const RasterImage& image) {
    const Arc arc = arc_of(cfg);
    const WindowSpec window = window_of(cfg);
    const Phantom phantom = phantom_of(cfg);
    const bool sharp = cfg.window == WindowKind::Sharp;
    std::vector<std::string> row{experiment, cfg.name, to_string(cfg.window), sharp ? "" : format_number(cfg.epsilon),
                                 sharp ? "" : std::to_string(cfg.order_k)};
    for (double deg : kProbeAngles) {
        const EdgeProbe probe = radial_probe(phantom.discs.front(), deg * kPi / 180.0);
        row.push_back(measured([&] { return measure_jump(image, probe); }));
        row.push_back(measured([&] { return sigma0(arc, window, Covector{probe.location, probe.normal}); }));
    }
    for (const auto& c : report_circles(cfg)) {
        row.push_back(measured([&] { return artifact_amplitude(image, c, phantom); }));
    }
    return row;
}

ReportTable cmd_experiment(const std::string& name, const GlobalOptions& opts) {
    const Experiment exp = experiment(name, opts.scale);
    const auto dir = opts.out / name;
    json manifest{{"experiment", exp.name}, {"scale", opts.scale}, {"runs", json::array()}};
    ReportTable table;
    table.header = report_header(exp.runs.front());
    for (std::size_t i = 0; i < exp.runs.size(); ++i) {
        const RunConfig& cfg = exp.runs[i];
        std::cerr << "[" << i + 1 << "/" << exp.runs.size() << "] " << cfg.name << std::endl;
        const RasterImage image = reconstruct_run(cfg, opts);
        write_image(image, dir / cfg.name, std::nullopt, describe(cfg));
        write_profile(image, dir / (cfg.name + "_profile.csv"));
        manifest["runs"].push_back({{"name", cfg.name}, {"config", to_config_text(cfg)}});
        table.rows.push_back(report_row(exp.name, cfg, image));
    }
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
    if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / "manifest.json").string());
    write_report(table, dir);
    return table;
}

ReportTable cmd_analyze(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw Error(ErrorKind::Io, "cannot open " + (dir / "manifest.json").string());
    json manifest;
    try {
        manifest = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, std::string("manifest.json: ") + e.what());
    }
    if (!manifest.contains("runs") || !manifest["runs"].is_array() || manifest["runs"].empty()) {
        throw Error(ErrorKind::Format, "manifest.json has no runs");
    }
    const std::string experiment_name = manifest.value("experiment", std::string("custom"));
    ReportTable table;
    for (const auto& entry : manifest["runs"]) {
        const RunConfig cfg = parse_config_text(entry.at("config").get<std::string>());
        if (table.header.empty()) table.header = report_header(cfg);
        const RasterImage image = read_image(dir / cfg.name);
        table.rows.push_back(report_row(experiment_name, cfg, image));
    }
    write_report(table, dir);
    return table;
}

int run(int argc, char** argv) {
    CLI::App app{"Limited-view circular Radon reconstruction with smoothing windows"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opts;
    std::string config_path;
    std::string out_dir = opts.out.string();
    auto* scale_opt = app.add_option("--scale", opts.scale, "Sets n = na = nr (256, 512, 1024, 2048)");
    app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--threads", opts.threads, "Worker cap (0 = hardware threads)")->check(CLI::NonNegativeNumber);

    // Per-run flags map onto config keys and override the config file.
    struct Flag {
        const char* name;
        const char* key;
        const char* help;
    };
    static constexpr Flag kRunFlags[] = {
        {"--curve", "curve", "circle | ellipse:a,b | polar | CSV path"},
        {"--arc", "arc", "full | s_start,s_end"},
        {"--phantom", "phantom", "(cx,cy,r,A),..."},
        {"--n", "n", "Image pixels per side"},
        {"--extent", "extent", "Image half-width"},
        {"--na", "na", "Transducer positions"},
        {"--nr", "nr", "Radial samples"},
        {"--rmax", "rmax", "Largest radius (0 = curve diameter)"},
        {"--window", "window", "sharp | rational | plateau"},
        {"--eps", "eps", "Window epsilon"},
        {"--order", "order", "Window order k"},
        {"--filter-dim", "filter_dim", "2 or 3"},
        {"--pad", "pad", "Zero-padding factor"},
        {"--taper", "taper", "Spectral taper fraction"},
    };
    std::vector<std::pair<std::string, std::string>> settings;
    std::string preset_name;
    std::string sinogram_path;

    auto add_run_flags = [&](CLI::App* sub) {
        sub->add_option("--preset", preset_name, "Named figure configuration");
        for (const auto& f : kRunFlags) {
            const std::string key = f.key;
            sub->add_option_function<std::string>(
                f.name, [&settings, key](const std::string& v) { settings.emplace_back(key, v); }, f.help);
        }
    };

    auto* forward = app.add_subcommand("forward", "Write the analytic sinogram");
    add_run_flags(forward);
    auto* recon = app.add_subcommand("reconstruct", "Reconstruct one configuration");
    add_run_flags(recon);
    recon->add_option("--sinogram", sinogram_path, "Reconstruct from a stored sinogram (base path)");
    std::string experiment_name;
    auto* exp = app.add_subcommand("experiment", "Run a parameter sweep and its analysis");
    exp->add_option("name", experiment_name, "exp1 | exp2 | exp3 | fullcircle | polar")->required();
    std::string analyze_dir;
    auto* analyze = app.add_subcommand("analyze", "Recompute the report of an experiment directory");
    analyze->add_option("dir", analyze_dir, "Experiment output directory")->required();

    std::string preset_help = "Presets:\n";
    for (const auto& p : preset_names()) {
        preset_help += "  " + p + std::string(8 - std::min<std::size_t>(p.size(), 6), ' ') + preset_description(p) + "\n";
    }
    app.footer(preset_help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        opts.out = out_dir;
        auto build_config = [&] {
            RunConfig cfg = preset_name.empty() ? RunConfig{} : preset(preset_name);
            if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
            if (scale_opt->count() > 0) apply_scale(cfg, opts.scale);
            for (const auto& [key, value] : settings) apply_setting(cfg, key, value);
            return cfg;
        };
        if (forward->parsed()) {
            const auto sino = cmd_forward(build_config(), opts);
            std::cout << "wrote sinogram " << sino.n_a() << " x " << sino.n_r() << "\n";
        } else if (recon->parsed()) {
            const auto cfg = build_config();
            cmd_reconstruct(cfg, opts, sinogram_path);
            std::cout << "wrote " << (opts.out / cfg.name).string() << ".{f64,json,pgm}\n";
        } else if (exp->parsed()) {
            const auto table = cmd_experiment(experiment_name, opts);
            std::cout << "wrote " << table.rows.size() << " runs to " << (opts.out / experiment_name).string() << "\n";
        } else if (analyze->parsed()) {
            const auto table = cmd_analyze(analyze_dir);
            std::cout << "wrote report with " << table.rows.size() << " rows\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Format ? 2 : 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace limview::cli
