#include "ren/grid.hpp"

#include "ren/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace ren {

std::string_view boundary_name(Boundary b) noexcept {
    return b == Boundary::periodic ? "periodic" : "fixed_zero";
}

Boundary parse_boundary(std::string_view name) {
    if (name == "periodic" || name == "torus") return Boundary::periodic;
    if (name == "fixed_zero" || name == "fixed" || name == "zero") return Boundary::fixed_zero;
    throw parse_error("unknown boundary policy '" + std::string(name) + "'");
}

namespace bits {

std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept {
    std::uint64_t n = 0;
    for (auto w : words) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

}  // namespace bits

namespace {

int cell_value(char c) {
    switch (c) {
        case '1': case 'o': case 'O': case '#': case '*': return 1;
        case '0': case '.': case 'b': case '_': case '-': return 0;
        default: throw parse_error(std::string("unexpected cell character '") + c + "'");
    }
}

long long wrap(long long i, long long n) {
    const long long m = i % n;
    return m < 0 ? m + n : m;
}

}  // namespace

Grid1D::Grid1D(int width, Boundary boundary) : width_(width), boundary_(boundary) {
    if (width < 1) throw contract_violation("grid width must be >= 1");
    words_.assign(bits::words_for(width), 0);
}

Grid1D Grid1D::from_string(std::string_view cells, Boundary boundary) {
    Grid1D g(static_cast<int>(cells.size()), boundary);
    for (std::size_t i = 0; i < cells.size(); ++i) g.set(static_cast<int>(i), cell_value(cells[i]));
    return g;
}

std::string Grid1D::to_string() const {
    std::string s(static_cast<std::size_t>(width_), '0');
    for (int i = 0; i < width_; ++i)
        if (get(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

int Grid1D::at(long long i) const noexcept {
    if (i >= 0 && i < width_) return get(static_cast<int>(i));
    if (boundary_ == Boundary::fixed_zero) return 0;
    return get(static_cast<int>(wrap(i, width_)));
}

void Grid1D::set(int i, int value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i % bits::kWordBits);
    auto& w = words_[static_cast<std::size_t>(i) / bits::kWordBits];
    w = value ? (w | bit) : (w & ~bit);
}

Digest128 Grid1D::digest() const noexcept {
    Hasher128 h;
    h.add(static_cast<std::uint64_t>(width_)).add(words_);
    return h.finish();
}

RadiusField::RadiusField(int width, int height, int radius) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw contract_violation("radius field dimensions must be >= 1");
    if (radius < 1) throw range_error("perception radius must be >= 1");
    radii_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                  static_cast<std::uint16_t>(radius));
}

void RadiusField::set(int row, int col, int radius) {
    if (radius < 1 || radius > 0xffff) throw range_error("perception radius must be >= 1");
    radii_[index(row, col)] = static_cast<std::uint16_t>(radius);
}

int RadiusField::max_radius() const noexcept {
    return radii_.empty() ? 0 : *std::max_element(radii_.begin(), radii_.end());
}

bool RadiusField::constant() const noexcept {
    return std::adjacent_find(radii_.begin(), radii_.end(), std::not_equal_to<>()) == radii_.end();
}

Grid2D::Grid2D(int width, int height, Boundary boundary)
    : width_(width), height_(height), boundary_(boundary), words_per_row_(bits::words_for(width)) {
    if (width < 1 || height < 1) throw contract_violation("grid dimensions must be >= 1");
    words_.assign(words_per_row_ * static_cast<std::size_t>(height), 0);
}

Grid2D Grid2D::from_rows(std::string_view rows, Boundary boundary) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= rows.size()) {
        const std::size_t end = std::min(rows.find('\n', start), rows.size());
        if (end > start) lines.push_back(rows.substr(start, end - start));
        start = end + 1;
    }
    if (lines.empty()) throw parse_error("empty grid text");
    std::size_t width = 0;
    for (auto l : lines) width = std::max(width, l.size());
    Grid2D g(static_cast<int>(width), static_cast<int>(lines.size()), boundary);
    for (std::size_t r = 0; r < lines.size(); ++r)
        for (std::size_t c = 0; c < lines[r].size(); ++c)
            g.set(static_cast<int>(r), static_cast<int>(c), cell_value(lines[r][c]));
    return g;
}

std::string Grid2D::to_string() const {
    std::string s;
    s.reserve(static_cast<std::size_t>(width_ + 1) * static_cast<std::size_t>(height_));
    for (int r = 0; r < height_; ++r) {
        for (int c = 0; c < width_; ++c) s += get(r, c) ? 'o' : '.';
        s += '\n';
    }
    return s;
}

int Grid2D::at(long long row, long long col) const noexcept {
    if (row >= 0 && row < height_ && col >= 0 && col < width_) {
        return get(static_cast<int>(row), static_cast<int>(col));
    }
    if (boundary_ == Boundary::fixed_zero) return 0;
    return get(static_cast<int>(wrap(row, height_)), static_cast<int>(wrap(col, width_)));
}

void Grid2D::set(int row, int col, int value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (col % bits::kWordBits);
    auto& w = row_words(row)[static_cast<std::size_t>(col) / bits::kWordBits];
    w = value ? (w | bit) : (w & ~bit);
}

void Grid2D::set_radius_field(std::optional<RadiusField> field) {
    if (field && (field->width() != width_ || field->height() != height_)) {
        throw contract_violation("radius field dimensions differ from the grid's");
    }
    radius_field_ = std::move(field);
}

Digest128 Grid2D::digest() const noexcept {
    Hasher128 h;
    h.add(static_cast<std::uint64_t>(width_)).add(static_cast<std::uint64_t>(height_)).add(words_);
    return h.finish();
}

}  // namespace ren
