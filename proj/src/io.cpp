#include "limview/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace limview {

namespace {

using nlohmann::json;

void ensure_parent(const std::filesystem::path& p) {
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create directory " + p.parent_path().string());
    }
}

void write_bytes(const std::filesystem::path& p, const void* data, std::size_t size) {
    ensure_parent(p);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + p.string() + " for writing");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw Error(ErrorKind::Io, "write failed for " + p.string());
}

void write_text(const std::filesystem::path& p, const std::string& text) { write_bytes(p, text.data(), text.size()); }

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<char> encode_f64(const std::vector<double>& values) {
    std::vector<char> bytes(values.size() * sizeof(double));
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto bits = std::bit_cast<std::uint64_t>(values[i]);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
        std::memcpy(bytes.data() + i * sizeof(double), &bits, sizeof(bits));
    }
    return bytes;
}

std::vector<double> decode_f64(const std::string& bytes, std::size_t expected, const std::string& what) {
    if (bytes.size() != expected * sizeof(double)) {
        throw Error(ErrorKind::Format, what + ": payload has " + std::to_string(bytes.size()) + " bytes, header implies " +
                                           std::to_string(expected * sizeof(double)));
    }
    std::vector<double> values(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, bytes.data() + i * sizeof(double), sizeof(bits));
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
        values[i] = std::bit_cast<double>(bits);
    }
    return values;
}

json parse_header(const std::filesystem::path& p) {
    try {
        return json::parse(read_text(p));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, p.string() + ": " + e.what());
    }
}

template <typename T>
T header_field(const json& j, const char* key, const std::filesystem::path& p) {
    if (!j.contains(key)) throw Error(ErrorKind::Format, p.string() + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, p.string() + ": bad field '" + key + "': " + e.what());
    }
}

}  // namespace

FileSet file_set(const std::filesystem::path& base) {
    auto with = [&](const char* ext) {
        auto p = base;
        p += ext;
        return p;
    };
    return {with(".f64"), with(".json"), with(".pgm")};
}

std::vector<unsigned char> render_pgm(const RasterImage& image, RenderRange range, int maxval) {
    if (maxval != 255 && maxval != 65535) throw Error(ErrorKind::Validation, "PGM maxval must be 255 or 65535");
    const std::string head = "P5\n" + std::to_string(image.n) + " " + std::to_string(image.n) + "\n" +
                             std::to_string(maxval) + "\n";
    std::vector<unsigned char> out(head.begin(), head.end());
    const double width = range.vmax - range.vmin;
    const bool wide = maxval > 255;
    for (double v : image.values) {
        long q = 0;
        if (!(width > 0.0)) {
            q = (maxval + 1) / 2;
        } else {
            const double scaled = std::floor((v - range.vmin) / width * maxval + 0.5);
            q = static_cast<long>(std::clamp(scaled, 0.0, static_cast<double>(maxval)));
        }
        if (wide) out.push_back(static_cast<unsigned char>((q >> 8) & 0xff));
        out.push_back(static_cast<unsigned char>(q & 0xff));
    }
    return out;
}

void write_image(const RasterImage& image, const std::filesystem::path& base, std::optional<RenderRange> range,
                 const std::string& description, int maxval) {
    RenderRange r{0.0, 0.0};
    if (range) {
        r = *range;
    } else if (!image.values.empty()) {
        const auto [lo, hi] = std::minmax_element(image.values.begin(), image.values.end());
        r = {*lo, *hi};
    }
    const auto files = file_set(base);
    const auto raw = encode_f64(image.values);
    write_bytes(files.raw, raw.data(), raw.size());
    const json header = {{"n", image.n},       {"extent", image.extent},          {"vmin", r.vmin},
                         {"vmax", r.vmax},     {"description", description}};
    write_text(files.header, header.dump(2) + "\n");
    const auto pgm = render_pgm(image, r, maxval);
    write_bytes(files.pgm, pgm.data(), pgm.size());
}

RasterImage read_image(const std::filesystem::path& base) {
    const auto files = file_set(base);
    const json header = parse_header(files.header);
    const int n = header_field<int>(header, "n", files.header);
    const double extent = header_field<double>(header, "extent", files.header);
    if (n < 2 || !(extent > 0.0)) throw Error(ErrorKind::Format, files.header.string() + ": invalid n or extent");
    RasterImage img(n, extent);
    img.values = decode_f64(read_text(files.raw), static_cast<std::size_t>(n) * n, files.raw.string());
    return img;
}

void write_sinogram(const Sinogram& sino, const std::filesystem::path& base) {
    const auto files = file_set(base);
    const auto raw = encode_f64(sino.values());
    write_bytes(files.raw, raw.data(), raw.size());
    const json header = {{"n_a", sino.n_a()},         {"n_r", sino.n_r()},  {"s_start", sino.s_start()},
                         {"s_end", sino.s_end()},     {"r_max", sino.r_max()}, {"curve", sino.curve().spec()}};
    write_text(files.header, header.dump(2) + "\n");
}

Sinogram read_sinogram(const std::filesystem::path& base) {
    const auto files = file_set(base);
    const json header = parse_header(files.header);
    const int n_a = header_field<int>(header, "n_a", files.header);
    const int n_r = header_field<int>(header, "n_r", files.header);
    const double s_start = header_field<double>(header, "s_start", files.header);
    const double s_end = header_field<double>(header, "s_end", files.header);
    const double r_max = header_field<double>(header, "r_max", files.header);
    const auto curve_spec = header_field<std::string>(header, "curve", files.header);
    if (n_a < 2 || n_r < 2) throw Error(ErrorKind::Format, files.header.string() + ": n_a and n_r must be >= 2");
    Sinogram sino(AcquisitionCurve::parse(curve_spec), s_start, s_end, n_a, n_r, r_max);
    sino.values() = decode_f64(read_text(files.raw), static_cast<std::size_t>(n_a) * n_r, files.raw.string());
    return sino;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::string text;
    auto append_row = [&](const std::vector<std::string>& cols) {
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (k) text += ',';
            text += cols[k];
        }
        text += '\n';
    };
    append_row(header);
    for (const auto& r : rows) append_row(r);
    write_text(path, text);
}

}  // namespace limview
