#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "limview/phantom.hpp"
#include "limview/sinogram.hpp"

namespace limview {

struct RenderRange {
    double vmin;
    double vmax;
};

/// Files written for an image or sinogram at `base`: base.f64 (raw
/// little-endian float64, row-major), base.json (header) and, for images,
/// base.pgm.
struct FileSet {
    std::filesystem::path raw;
    std::filesystem::path header;
    std::filesystem::path pgm;
};

FileSet file_set(const std::filesystem::path& base);

/// Binary P5 PGM; samples floor((v - vmin) / (vmax - vmin) * maxval + 1/2),
/// clamped to [0, maxval]. A zero-width range renders mid-gray.
std::vector<unsigned char> render_pgm(const RasterImage& image, RenderRange range, int maxval = 65535);

/// Writes raw + sidecar + PGM. The render range defaults to [min, max] of the
/// data and only affects the PGM. Throws IoFailure.
void write_image(const RasterImage& image, const std::filesystem::path& base,
                 std::optional<RenderRange> range = std::nullopt, const std::string& description = "",
                 int maxval = 65535);

/// Throws FormatError on header/payload mismatch.
RasterImage read_image(const std::filesystem::path& base);

void write_sinogram(const Sinogram& sino, const std::filesystem::path& base);
Sinogram read_sinogram(const std::filesystem::path& base);

/// Comma-separated, header row first, LF line endings.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Shortest decimal form that round-trips.
std::string format_number(double v);

}  // namespace limview
