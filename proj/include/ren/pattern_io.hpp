#pragma once

#include "ren/grid.hpp"
#include "ren/pattern.hpp"
#include "ren/rule.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ren {

// ---- Golly RLE ----------------------------------------------------------

struct RleDocument {
    Pattern pattern;
    std::optional<ExtendedRule> rule;
};

// Accepts '#' comment lines, an optional "x = W, y = H[, rule = ...]" header and
// a body of run counts with b, o, $ and a terminating '!'. Errors carry line/column.
RleDocument parse_rle(std::string_view text);

// Canonical form: maximal runs, no trailing dead cells, lines wrapped at 70
// columns, Life rules in the slashed Golly form. No trailing newline.
std::string emit_rle(const Pattern& pattern, const std::optional<ExtendedRule>& rule = std::nullopt);

// ---- PBM / PPM ------------------------------------------------------------

enum class PbmFormat { plain, raw };  // P1, P4

std::string render_pbm(const Grid2D& bitmap, PbmFormat format = PbmFormat::raw);
std::string render_pbm(const Grid1D& grid, PbmFormat format = PbmFormat::raw);

// Stacks a 1-D run into a bitmap: row t is the state at time t.
Grid2D space_time(const std::vector<Grid1D>& history);

// Reads P1 or P4 back into a bitmap.
Grid2D decode_pbm(std::string_view bytes);

using Rgb = std::array<std::uint8_t, 3>;

// Entry R-1 colors live cells with radius R; 32 entries.
const std::vector<Rgb>& default_radius_palette();

// P6 image: live cells take palette[R - 1], dead cells are black. Throws
// range_error when the palette has fewer entries than the field's max radius.
std::string render_ppm_radius(const Grid2D& grid, const RadiusField& field,
                              const std::vector<Rgb>& palette = default_radius_palette());

}  // namespace ren
