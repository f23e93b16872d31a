#pragma once

#include "ren/digest.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ren {

enum class Boundary { periodic, fixed_zero };

std::string_view boundary_name(Boundary b) noexcept;
Boundary parse_boundary(std::string_view name);

namespace bits {

inline constexpr int kWordBits = 64;

constexpr std::size_t words_for(int width) noexcept {
    return (static_cast<std::size_t>(width) + kWordBits - 1) / kWordBits;
}

// Mask of the valid bits in the last word of a width-bit row.
constexpr std::uint64_t tail_mask(int width) noexcept {
    const int r = width % kWordBits;
    return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

inline int get(std::span<const std::uint64_t> row, int i) noexcept {
    return static_cast<int>((row[static_cast<std::size_t>(i) / kWordBits] >> (i % kWordBits)) & 1);
}

// Bit at index i in [-1, width], resolving the two out-of-range sites by the boundary policy.
inline int get_resolved(std::span<const std::uint64_t> row, int width, Boundary b, int i) noexcept {
    if (i < 0) return b == Boundary::periodic ? get(row, width - 1) : 0;
    if (i >= width) return b == Boundary::periodic ? get(row, 0) : 0;
    return get(row, i);
}

// Word j of the row shifted so that bit c holds the cell at c-1 (the left neighbor).
inline std::uint64_t left_neighbors(std::span<const std::uint64_t> row, int width, Boundary b,
                                    std::size_t j) noexcept {
    const std::uint64_t carry = j == 0 ? static_cast<std::uint64_t>(get_resolved(row, width, b, -1))
                                       : row[j - 1] >> 63;
    std::uint64_t w = (row[j] << 1) | carry;
    if (j + 1 == row.size()) w &= tail_mask(width);
    return w;
}

// Word j of the row shifted so that bit c holds the cell at c+1 (the right neighbor).
inline std::uint64_t right_neighbors(std::span<const std::uint64_t> row, int width, Boundary b,
                                     std::size_t j) noexcept {
    if (j + 1 < row.size()) return (row[j] >> 1) | (row[j + 1] << 63);
    std::uint64_t w = row[j] >> 1;
    const int last = (width - 1) % kWordBits;
    w |= static_cast<std::uint64_t>(get_resolved(row, width, b, width)) << last;
    return w & tail_mask(width);
}

std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept;

}  // namespace bits

// Binary 1-D lattice, bit-packed (cell i is bit i%64 of word i/64; padding bits stay zero).
class Grid1D {
public:
    Grid1D() = default;
    explicit Grid1D(int width, Boundary boundary = Boundary::periodic);

    // '1'/'o'/'#' live, anything in "0.b_-" dead.
    static Grid1D from_string(std::string_view cells, Boundary boundary = Boundary::periodic);
    std::string to_string() const;

    int width() const noexcept { return width_; }
    Boundary boundary() const noexcept { return boundary_; }
    void set_boundary(Boundary b) noexcept { boundary_ = b; }

    int get(int i) const noexcept { return bits::get(words_, i); }
    // Index resolved by the boundary policy for any integer i.
    int at(long long i) const noexcept;
    void set(int i, int value) noexcept;

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }

    std::uint64_t live_count() const noexcept { return bits::popcount(words_); }
    Digest128 digest() const noexcept;

    friend bool operator==(const Grid1D& a, const Grid1D& b) noexcept {
        return a.width_ == b.width_ && a.words_ == b.words_;
    }

private:
    int width_ = 0;
    Boundary boundary_ = Boundary::periodic;
    std::vector<std::uint64_t> words_;
};

// Per-cell perception radius for heterogeneous lattices (height 1 for 1-D use).
class RadiusField {
public:
    RadiusField() = default;
    RadiusField(int width, int height, int radius = 1);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int at(int row, int col) const noexcept { return radii_[index(row, col)]; }
    void set(int row, int col, int radius);
    int max_radius() const noexcept;
    bool constant() const noexcept;

    std::span<const std::uint16_t> values() const noexcept { return radii_; }

    friend bool operator==(const RadiusField&, const RadiusField&) = default;

private:
    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
    }
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint16_t> radii_;
};

// Binary 2-D lattice, each row bit-packed into words_per_row() words.
class Grid2D {
public:
    Grid2D() = default;
    Grid2D(int width, int height, Boundary boundary = Boundary::periodic);

    // Rows separated by '\n'; same cell characters as Grid1D::from_string.
    static Grid2D from_rows(std::string_view rows, Boundary boundary = Boundary::periodic);
    std::string to_string() const;

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    Boundary boundary() const noexcept { return boundary_; }
    void set_boundary(Boundary b) noexcept { boundary_ = b; }
    std::size_t words_per_row() const noexcept { return words_per_row_; }

    int get(int row, int col) const noexcept { return bits::get(row_words(row), col); }
    // Coordinates resolved by the boundary policy.
    int at(long long row, long long col) const noexcept;
    void set(int row, int col, int value) noexcept;

    std::span<const std::uint64_t> row_words(int row) const noexcept {
        return {words_.data() + static_cast<std::size_t>(row) * words_per_row_, words_per_row_};
    }
    std::span<std::uint64_t> row_words(int row) noexcept {
        return {words_.data() + static_cast<std::size_t>(row) * words_per_row_, words_per_row_};
    }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    const std::optional<RadiusField>& radius_field() const noexcept { return radius_field_; }
    // Throws contract_violation when the field's dimensions differ from the grid's.
    void set_radius_field(std::optional<RadiusField> field);

    std::uint64_t live_count() const noexcept { return bits::popcount(words_); }
    // Digest of dimensions and cell contents (the radius field is not part of the state).
    Digest128 digest() const noexcept;

    friend bool operator==(const Grid2D& a, const Grid2D& b) noexcept {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.words_ == b.words_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    Boundary boundary_ = Boundary::periodic;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
    std::optional<RadiusField> radius_field_;
};

}  // namespace ren
