#pragma once

#include "ren/grid.hpp"

#include <vector>

namespace ren {

struct Cell {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

// A finite 2-D pattern: a bounding box plus its live cells, sorted (row, col), no duplicates.
class Pattern {
public:
    Pattern() = default;
    // Sorts and de-duplicates; throws contract_violation for cells outside the box.
    Pattern(int width, int height, std::vector<Cell> cells);

    // Tight bounding box of the grid's live cells (0 x 0 when the grid is empty).
    static Pattern from_grid(const Grid2D& grid);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    const std::vector<Cell>& cells() const noexcept { return cells_; }
    bool empty() const noexcept { return cells_.empty(); }

    // Grid of (width + 2 pad) x (height + 2 pad) with the pattern at offset (pad, pad).
    Grid2D to_grid(int pad, Boundary boundary = Boundary::fixed_zero) const;

    friend bool operator==(const Pattern&, const Pattern&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Cell> cells_;
};

}  // namespace ren
