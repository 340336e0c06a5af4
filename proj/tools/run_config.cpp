#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <cmath>
#include <sstream>

#include "limview/io.hpp"

namespace limview::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::Validation, what); }

double parse_plain(std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) invalid("not a number: '" + std::string(text) + "'");
    return v;
}

int parse_int(std::string_view text) {
    text = trim(text);
    int v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) invalid("not an integer: '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return parts;
}

RunConfig on_arc(std::string name, double s_end) {
    RunConfig cfg;
    cfg.name = std::move(name);
    cfg.arc = std::make_pair(0.0, s_end);
    return cfg;
}

RunConfig with_window(RunConfig cfg, WindowKind kind, double eps, int k) {
    cfg.window = kind;
    cfg.epsilon = eps;
    cfg.order_k = k;
    return cfg;
}

struct PresetEntry {
    RunConfig config;
    std::string description;
};

const std::vector<std::pair<std::string, PresetEntry>>& preset_table() {
    static const std::vector<std::pair<std::string, PresetEntry>> table = [] {
        std::vector<std::pair<std::string, PresetEntry>> t;
        const double quarter = kPi / 2.0;
        const double three_quarter = 1.5 * kPi;
        auto add = [&t](RunConfig cfg, std::string description) {
            const std::string name = cfg.name;
            t.emplace_back(name, PresetEntry{std::move(cfg), std::move(description)});
        };

        RunConfig full;
        full.name = "fig1";
        add(full, "unit circle, full view, no smoothing");
        RunConfig polar;
        polar.name = "fig2";
        polar.curve = "polar";
        add(polar, "polar curve, full view, no smoothing");
        add(on_arc("fig3", quarter), "quarter circle [0, pi/2], no smoothing");

        const char* abc = "abc";
        const double eps_sweep[] = {0.05, 0.2, 1.0};
        for (int i = 0; i < 3; ++i) {
            add(with_window(on_arc(std::string("fig5") + abc[i], quarter), WindowKind::Rational, eps_sweep[i], 1),
                "quarter circle, rational window k=1 eps=" + format_number(eps_sweep[i]));
        }
        for (int i = 0; i < 3; ++i) {
            add(with_window(on_arc(std::string("fig6") + abc[i], quarter), WindowKind::Rational, 0.2, i + 1),
                "quarter circle, rational window eps=0.2 k=" + std::to_string(i + 1));
        }
        add(on_arc("fig7", three_quarter), "three-quarter circle [0, 3pi/2], no smoothing");
        for (int i = 0; i < 3; ++i) {
            add(with_window(on_arc(std::string("fig8") + abc[i], three_quarter), WindowKind::Rational, eps_sweep[i], 1),
                "three-quarter circle, rational window k=1 eps=" + format_number(eps_sweep[i]));
        }
        for (int i = 0; i < 3; ++i) {
            add(with_window(on_arc(std::string("fig9") + abc[i], three_quarter), WindowKind::Rational, 0.2, i + 1),
                "three-quarter circle, rational window eps=0.2 k=" + std::to_string(i + 1));
        }
        const double plateau_eps[] = {0.1, 0.25, 0.4};
        for (int i = 0; i < 3; ++i) {
            add(with_window(on_arc(std::string("fig11") + abc[i], three_quarter), WindowKind::Plateau, plateau_eps[i],
                            1),
                "three-quarter circle, plateau window k=1 eps=" + format_number(plateau_eps[i]));
        }
        add(on_arc("fig12a", three_quarter), "three-quarter circle, no smoothing");
        add(with_window(on_arc("fig12b", three_quarter), WindowKind::Plateau, 0.4, 1),
            "three-quarter circle, plateau window eps=0.4 k=1");
        add(with_window(on_arc("fig12c", three_quarter), WindowKind::Plateau, 0.4, 2),
            "three-quarter circle, plateau window eps=0.4 k=2");
        return t;
    }();
    return table;
}

const PresetEntry& find_preset(std::string_view name) {
    for (const auto& [key, entry] : preset_table()) {
        if (key == name) return entry;
    }
    invalid("unknown preset '" + std::string(name) + "'");
}

std::string run_label(const RunConfig& cfg) {
    if (cfg.window == WindowKind::Sharp) return "sharp";
    return std::string(to_string(cfg.window)) + "_e" + format_number(cfg.epsilon) + "_k" + std::to_string(cfg.order_k);
}

}  // namespace

AcquisitionCurve curve_of(const RunConfig& cfg) { return AcquisitionCurve::parse(cfg.curve); }

Arc arc_of(const RunConfig& cfg) {
    const auto curve = curve_of(cfg);
    if (!cfg.arc) return Arc::full(curve);
    return Arc(curve, cfg.arc->first, cfg.arc->second);
}

WindowSpec window_of(const RunConfig& cfg) {
    const double b = arc_of(cfg).length();
    switch (cfg.window) {
        case WindowKind::Sharp:
            return WindowSpec::sharp(b);
        case WindowKind::Rational:
            return WindowSpec::rational(cfg.epsilon, cfg.order_k, b);
        case WindowKind::Plateau:
            return WindowSpec::plateau(cfg.epsilon, cfg.order_k, b);
    }
    invalid("unknown window kind");
}

FilterPlan plan_of(const RunConfig& cfg) {
    return FilterPlan::for_radial_samples(cfg.n_r, cfg.filter_dim, cfg.pad, cfg.taper);
}

ReconGrid grid_of(const RunConfig& cfg) { return ReconGrid{cfg.n, cfg.extent}; }

SamplingSpec sampling_of(const RunConfig& cfg) { return SamplingSpec{cfg.n_a, cfg.n_r, effective_r_max(cfg)}; }

Phantom phantom_of(const RunConfig& cfg) { return Phantom{cfg.phantom}; }

double effective_r_max(const RunConfig& cfg) {
    if (cfg.r_max > 0.0) return cfg.r_max;
    // Round up so the sampled range covers the diameter.
    return std::ceil(curve_of(cfg).diameter() * 100.0) / 100.0;
}

void validate(const RunConfig& cfg) {
    if (cfg.n < 2) invalid("n must be >= 2");
    if (!(cfg.extent > 0.0)) invalid("extent must be positive");
    if (cfg.n_a < 2) invalid("na must be >= 2");
    if (cfg.n_r < 3) invalid("nr must be >= 3");
    if (cfg.phantom.empty()) invalid("phantom list is empty");
    const auto curve = curve_of(cfg);
    const Arc arc = arc_of(cfg);
    if (!(arc.length() > 0.0) || arc.length() > curve.period() * (1.0 + 1e-12)) {
        invalid("arc must satisfy s_start < s_end <= s_start + period");
    }
    const double r_max = effective_r_max(cfg);
    if (r_max < curve.diameter() * (1.0 - 1e-9)) {
        invalid("rmax " + format_number(r_max) + " is below the curve diameter " + format_number(curve.diameter()));
    }
    phantom_of(cfg).validate(curve);
    window_of(cfg).validate();
    plan_of(cfg);
    grid_of(cfg).validate(curve);
}

double parse_number(std::string_view text) {
    const std::string s = lower(trim(text));
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return parse_plain(s);
    std::string_view head = trim(std::string_view(s).substr(0, pos));
    std::string_view tail = trim(std::string_view(s).substr(pos + 2));
    double factor = 1.0;
    if (!head.empty()) {
        if (head.back() == '*') head = trim(head.substr(0, head.size() - 1));
        factor = head == "-" ? -1.0 : parse_plain(head);
    }
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') invalid("cannot parse '" + std::string(text) + "'");
        divisor = parse_plain(tail.substr(1));
        if (divisor == 0.0) invalid("division by zero in '" + std::string(text) + "'");
    }
    return factor * kPi / divisor;
}

std::vector<DiscPhantom> parse_phantom_list(std::string_view text) {
    std::vector<DiscPhantom> discs;
    std::string_view rest = trim(text);
    while (!rest.empty()) {
        if (rest.front() != '(') invalid("phantom tuple must start with '(' near '" + std::string(rest) + "'");
        const auto close = rest.find(')');
        if (close == std::string_view::npos) invalid("unterminated phantom tuple");
        const auto fields = split(rest.substr(1, close - 1), ',');
        if (fields.size() != 4) invalid("phantom tuple needs (cx, cy, radius, amplitude)");
        discs.push_back(DiscPhantom{{parse_number(fields[0]), parse_number(fields[1])}, parse_number(fields[2]),
                                    parse_number(fields[3])});
        rest = trim(rest.substr(close + 1));
        if (!rest.empty()) {
            if (rest.front() != ',') invalid("expected ',' between phantom tuples");
            rest = trim(rest.substr(1));
            if (rest.empty()) invalid("trailing ',' in phantom list");
        }
    }
    if (discs.empty()) invalid("phantom list is empty");
    return discs;
}

void apply_setting(RunConfig& cfg, std::string_view key_in, std::string_view value_in) {
    const std::string key = lower(trim(key_in));
    const std::string_view value = trim(value_in);
    if (key == "name") {
        cfg.name = std::string(value);
    } else if (key == "curve") {
        AcquisitionCurve::parse(value);
        cfg.curve = std::string(value);
    } else if (key == "arc") {
        if (lower(value) == "full") {
            cfg.arc.reset();
        } else {
            const auto parts = split(value, ',');
            if (parts.size() != 2) invalid("arc needs 'full' or 's_start, s_end'");
            cfg.arc = std::make_pair(parse_number(parts[0]), parse_number(parts[1]));
        }
    } else if (key == "phantom") {
        cfg.phantom = parse_phantom_list(value);
    } else if (key == "n") {
        cfg.n = parse_int(value);
    } else if (key == "extent") {
        cfg.extent = parse_number(value);
    } else if (key == "na") {
        cfg.n_a = parse_int(value);
    } else if (key == "nr") {
        cfg.n_r = parse_int(value);
    } else if (key == "rmax") {
        cfg.r_max = parse_number(value);
    } else if (key == "window") {
        cfg.window = parse_window_kind(lower(value));
    } else if (key == "eps") {
        cfg.epsilon = parse_number(value);
    } else if (key == "order") {
        cfg.order_k = parse_int(value);
    } else if (key == "filter_dim") {
        cfg.filter_dim = parse_int(value);
    } else if (key == "pad") {
        cfg.pad = parse_int(value);
    } else if (key == "taper") {
        cfg.taper = parse_number(value);
    } else {
        invalid("unknown config key '" + key + "'");
    }
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) invalid("line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        if (lower(key) == "preset") {
            base = preset(trim(line.substr(eq + 1)));
            continue;
        }
        try {
            apply_setting(base, key, line.substr(eq + 1));
        } catch (const Error& e) {
            throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), std::move(base));
}

std::string to_config_text(const RunConfig& cfg) {
    std::ostringstream out;
    out << "name = " << cfg.name << "\n";
    out << "curve = " << cfg.curve << "\n";
    if (cfg.arc) {
        out << "arc = " << format_number(cfg.arc->first) << ", " << format_number(cfg.arc->second) << "\n";
    } else {
        out << "arc = full\n";
    }
    out << "phantom = ";
    for (std::size_t i = 0; i < cfg.phantom.size(); ++i) {
        const auto& d = cfg.phantom[i];
        out << (i ? ", " : "") << "(" << format_number(d.center.x) << ", " << format_number(d.center.y) << ", "
            << format_number(d.radius) << ", " << format_number(d.amplitude) << ")";
    }
    out << "\n";
    out << "n = " << cfg.n << "\n";
    out << "extent = " << format_number(cfg.extent) << "\n";
    out << "na = " << cfg.n_a << "\n";
    out << "nr = " << cfg.n_r << "\n";
    out << "rmax = " << format_number(cfg.r_max) << "\n";
    out << "window = " << to_string(cfg.window) << "\n";
    out << "eps = " << format_number(cfg.epsilon) << "\n";
    out << "order = " << cfg.order_k << "\n";
    out << "filter_dim = " << cfg.filter_dim << "\n";
    out << "pad = " << cfg.pad << "\n";
    out << "taper = " << format_number(cfg.taper) << "\n";
    return out.str();
}

void apply_scale(RunConfig& cfg, int scale) {
    if (scale != 256 && scale != 512 && scale != 1024 && scale != 2048) {
        invalid("scale must be one of 256, 512, 1024, 2048");
    }
    cfg.n = cfg.n_a = cfg.n_r = scale;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [key, entry] : preset_table()) names.push_back(key);
    return names;
}

RunConfig preset(std::string_view name) { return find_preset(name).config; }

std::string preset_description(std::string_view name) { return find_preset(name).description; }

std::vector<std::string> experiment_names() { return {"exp1", "exp2", "exp3", "fullcircle", "polar"}; }

Experiment experiment(std::string_view name, int scale) {
    Experiment exp{std::string(name), {}};
    auto push = [&](RunConfig cfg) {
        apply_scale(cfg, scale);
        cfg.name = exp.name + "_" + run_label(cfg);
        exp.runs.push_back(std::move(cfg));
    };
    if (name == "exp1" || name == "exp2") {
        const double b = name == "exp1" ? kPi / 2.0 : 1.5 * kPi;
        const RunConfig base = on_arc("", b);
        push(base);
        for (int k : {1, 2, 3}) {
            for (double eps : {0.05, 0.2, 1.0}) push(with_window(base, WindowKind::Rational, eps, k));
        }
    } else if (name == "exp3") {
        const RunConfig base = on_arc("", 1.5 * kPi);
        push(base);
        for (int k : {1, 2}) {
            for (double eps : {0.1, 0.25, 0.4}) push(with_window(base, WindowKind::Plateau, eps, k));
        }
    } else if (name == "fullcircle") {
        push(preset("fig1"));
    } else if (name == "polar") {
        push(preset("fig2"));
    } else {
        invalid("unknown experiment '" + std::string(name) + "'");
    }
    return exp;
}

}  // namespace limview::cli
