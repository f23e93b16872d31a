#pragma once

#include "ren/grid.hpp"
#include "ren/rule.hpp"

#include <cstdint>
#include <vector>

namespace ren {

inline constexpr int kMaxRadius1D = 64;
inline constexpr int kMaxRadius2D = 32;

// Level-m estimated next states for every site, in the same bit layout as the
// grid it was computed from. Level 0 is the current state.
struct EstimationLayer {
    int level = 0;
    int width = 0;
    int height = 1;
    std::vector<std::uint64_t> words;

    int get(int i) const noexcept { return bits::get(words, i); }
    int get(int row, int col) const noexcept {
        return bits::get(std::span(words).subspan(static_cast<std::size_t>(row) * bits::words_for(width),
                                                  bits::words_for(width)),
                         col);
    }
};

struct StepOptions {
    // Worker threads per layer; 0 means machine parallelism. Output does not depend on it.
    int threads = 1;
};

EstimationLayer base_layer(const Grid1D& grid);
EstimationLayer base_layer(const Grid2D& grid);

// ---- 1-D ----------------------------------------------------------------

// Plain one-step evolution of the base ECA, cell by cell.
Grid1D step_eca_base(const Grid1D& grid, EcaRule rule);

// e_m(k) = f(e_{m-1}(k-1), x_k, e_{m-1}(k+1)), neighbors resolved by the grid's boundary.
EstimationLayer estimate_layer_1d(const EstimationLayer& prev, const Grid1D& current, EcaRule rule,
                                  const StepOptions& opts = {});

// Literal recursive evaluation of the estimate at `site` with radius R.
// Cost is 2^R; kept as an independent check on the layered path.
int cone_estimate_1d(const Grid1D& grid, EcaRule rule, long long site, int radius);

Grid1D step_eca_extended(const Grid1D& grid, EcaRule rule, int radius, const StepOptions& opts = {});
Grid1D step_eca_extended(const Grid1D& grid, const ExtendedRule& rule, const StepOptions& opts = {});
// Heterogeneous step; field must be width x 1. Site i reads e_{R(i)}(i).
Grid1D step_eca_extended(const Grid1D& grid, EcaRule rule, const RadiusField& field,
                         const StepOptions& opts = {});

// x_i' = f(f(x_{i-2}, x_{i-1}, x_i), x_i, f(x_i, x_{i+1}, x_{i+2})), evaluated cell by cell.
Grid1D step_eca_r2_closed_form(const Grid1D& grid, EcaRule rule);

// ---- 2-D ----------------------------------------------------------------

// Plain one-step evolution of the base Life-like rule, cell by cell.
Grid2D step_life_base(const Grid2D& grid, const LifeRule& rule);

// e_m(c) = rule(x_c, sum of e_{m-1} over the Moore neighborhood of c).
EstimationLayer estimate_layer_2d(const EstimationLayer& prev, const Grid2D& current, const LifeRule& rule,
                                  const StepOptions& opts = {});

// Throws unsupported_rule for B0 rules.
Grid2D step_life_extended(const Grid2D& grid, const LifeRule& rule, int radius, const StepOptions& opts = {});
Grid2D step_life_extended(const Grid2D& grid, const ExtendedRule& rule, const StepOptions& opts = {});
Grid2D step_life_extended(const Grid2D& grid, const LifeRule& rule, const RadiusField& field,
                          const StepOptions& opts = {});
// Uses grid.radius_field() when present, otherwise the base rule (R = 1).
Grid2D step_life_extended(const Grid2D& grid, const LifeRule& rule, const StepOptions& opts);

// ---- construction helpers -------------------------------------------------

// Each cell live with probability `density`, drawn in index order from
// xoshiro256** seeded by splitmix64(seed): live iff (next_u64 >> 11) * 2^-53 < density.
Grid1D random_soup(int width, double density, std::uint64_t seed, Boundary boundary = Boundary::periodic);
// Row-major draw order.
Grid2D random_soup(int width, int height, double density, std::uint64_t seed,
                   Boundary boundary = Boundary::periodic);

// One live cell at index width / 2.
Grid1D single_seed(int width, Boundary boundary = Boundary::periodic);

// Column c holds R_right with probability c / (width - 1), else R_left. Row-major draws.
RadiusField build_gradient_radius_field(int width, int height, int radius_left, int radius_right,
                                        std::uint64_t seed);

}  // namespace ren
