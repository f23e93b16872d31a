#include "ren/engine.hpp"

#include "ren/errors.hpp"
#include "ren/parallel.hpp"
#include "ren/random.hpp"

#include <string>
#include <utility>

namespace ren {

namespace {

constexpr std::size_t kMinWordsPerTask = 2048;
constexpr std::size_t kMinRowsPerTask = 64;

void check_radius(int radius, int cap) {
    if (radius < 1) throw range_error("perception radius must be >= 1, got " + std::to_string(radius));
    if (radius > cap) {
        throw capacity_error("perception radius " + std::to_string(radius) + " exceeds the engine limit of " +
                             std::to_string(cap));
    }
}

void check_life_rule(const LifeRule& rule) {
    if (rule.births_on(0)) throw unsupported_rule("B0 rules are not supported: " + rule.code());
}

// ---- 1-D layer kernel ----

void layer_1d_words(std::span<const std::uint64_t> prev, std::span<const std::uint64_t> current, int width,
                    Boundary b, EcaRule rule, std::span<std::uint64_t> out, std::size_t begin, std::size_t end) {
    const std::size_t last = prev.size() - 1;
    for (std::size_t j = begin; j < end; ++j) {
        const std::uint64_t l = bits::left_neighbors(prev, width, b, j);
        const std::uint64_t r = bits::right_neighbors(prev, width, b, j);
        std::uint64_t w = eca_apply_words(rule, l, current[j], r);
        if (j == last) w &= bits::tail_mask(width);
        out[j] = w;
    }
}

void layer_1d(std::span<const std::uint64_t> prev, const Grid1D& current, EcaRule rule, std::span<std::uint64_t> out,
              int threads) {
    parallel_for(
        prev.size(), threads,
        [&](std::size_t begin, std::size_t end) {
            layer_1d_words(prev, current.words(), current.width(), current.boundary(), rule, out, begin, end);
        },
        kMinWordsPerTask);
}

// ---- 2-D layer kernel ----

struct Counts {
    std::uint64_t s0 = 0, s1 = 0, s2 = 0, s3 = 0;

    void add(std::uint64_t x) noexcept {
        const std::uint64_t c0 = s0 & x;
        s0 ^= x;
        const std::uint64_t c1 = s1 & c0;
        s1 ^= c0;
        const std::uint64_t c2 = s2 & c1;
        s2 ^= c1;
        s3 |= c2;
    }

    std::uint64_t equals(int n) const noexcept {
        return ((n & 1) ? s0 : ~s0) & ((n & 2) ? s1 : ~s1) & ((n & 4) ? s2 : ~s2) & ((n & 8) ? s3 : ~s3);
    }

    std::uint64_t any_of(std::uint16_t mask) const noexcept {
        std::uint64_t out = 0;
        for (int n = 0; n <= 8; ++n)
            if ((mask >> n) & 1) out |= equals(n);
        return out;
    }
};

class Layer2D {
public:
    Layer2D(std::span<const std::uint64_t> words, int width, int height, Boundary b)
        : words_(words), width_(width), height_(height), wpr_(bits::words_for(width)), boundary_(b) {}

    // Row r resolved by the boundary; empty span for an out-of-range row under fixed_zero.
    std::span<const std::uint64_t> row(int r) const noexcept {
        if (r < 0 || r >= height_) {
            if (boundary_ == Boundary::fixed_zero) return {};
            r = (r + height_) % height_;
        }
        return words_.subspan(static_cast<std::size_t>(r) * wpr_, wpr_);
    }

    void add_row(Counts& counts, std::span<const std::uint64_t> row, std::size_t j, bool with_center) const noexcept {
        if (row.empty()) return;
        counts.add(bits::left_neighbors(row, width_, boundary_, j));
        counts.add(bits::right_neighbors(row, width_, boundary_, j));
        if (with_center) counts.add(row[j]);
    }

    std::size_t words_per_row() const noexcept { return wpr_; }

private:
    std::span<const std::uint64_t> words_;
    int width_;
    int height_;
    std::size_t wpr_;
    Boundary boundary_;
};

void layer_2d(std::span<const std::uint64_t> prev, const Grid2D& current, const LifeRule& rule,
              std::span<std::uint64_t> out, int threads) {
    const Layer2D layer(prev, current.width(), current.height(), current.boundary());
    const std::size_t wpr = layer.words_per_row();
    const std::uint64_t tail = bits::tail_mask(current.width());
    parallel_for(
        static_cast<std::size_t>(current.height()), threads,
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                const int row = static_cast<int>(r);
                const auto up = layer.row(row - 1), mid = layer.row(row), down = layer.row(row + 1);
                const auto x = current.row_words(row);
                for (std::size_t j = 0; j < wpr; ++j) {
                    Counts counts;
                    layer.add_row(counts, up, j, true);
                    layer.add_row(counts, mid, j, false);
                    layer.add_row(counts, down, j, true);
                    std::uint64_t w = (~x[j] & counts.any_of(rule.birth_mask())) |
                                      (x[j] & counts.any_of(rule.survival_mask()));
                    if (j + 1 == wpr) w &= tail;
                    out[r * wpr + j] = w;
                }
            }
        },
        kMinRowsPerTask);
}

// Bitmask words per radius value 1..max_radius, in the grid's packing.
std::vector<std::vector<std::uint64_t>> radius_masks(const RadiusField& field, std::size_t words_per_row) {
    std::vector<std::vector<std::uint64_t>> masks(static_cast<std::size_t>(field.max_radius()) + 1);
    const std::size_t total = words_per_row * static_cast<std::size_t>(field.height());
    for (int r = 0; r < field.height(); ++r) {
        for (int c = 0; c < field.width(); ++c) {
            auto& m = masks[static_cast<std::size_t>(field.at(r, c))];
            if (m.empty()) m.assign(total, 0);
            m[static_cast<std::size_t>(r) * words_per_row + static_cast<std::size_t>(c) / bits::kWordBits] |=
                std::uint64_t{1} << (c % bits::kWordBits);
        }
    }
    return masks;
}

// Runs layers 1..max_radius; `emit(level, layer_words)` sees each finished layer.
template <class Kernel, class Emit>
void run_layers(std::span<const std::uint64_t> state, int max_radius, Kernel&& kernel, Emit&& emit) {
    std::vector<std::uint64_t> prev(state.begin(), state.end());
    std::vector<std::uint64_t> next(prev.size());
    for (int m = 1; m <= max_radius; ++m) {
        kernel(std::span<const std::uint64_t>(prev), std::span<std::uint64_t>(next));
        std::swap(prev, next);
        emit(m, std::span<const std::uint64_t>(prev));
    }
}

void accumulate_masked(std::span<std::uint64_t> out, std::span<const std::uint64_t> layer,
                       const std::vector<std::uint64_t>& mask) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] |= layer[i] & mask[i];
}

}  // namespace

EstimationLayer base_layer(const Grid1D& grid) {
    return {0, grid.width(), 1, std::vector<std::uint64_t>(grid.words().begin(), grid.words().end())};
}

EstimationLayer base_layer(const Grid2D& grid) {
    return {0, grid.width(), grid.height(), std::vector<std::uint64_t>(grid.words().begin(), grid.words().end())};
}

// ---- 1-D ----

Grid1D step_eca_base(const Grid1D& grid, EcaRule rule) {
    Grid1D out(grid.width(), grid.boundary());
    for (int i = 0; i < grid.width(); ++i) out.set(i, rule.apply(grid.at(i - 1), grid.get(i), grid.at(i + 1)));
    return out;
}

EstimationLayer estimate_layer_1d(const EstimationLayer& prev, const Grid1D& current, EcaRule rule,
                                  const StepOptions& opts) {
    if (prev.width != current.width() || prev.height != 1 || prev.words.size() != current.words().size()) {
        throw contract_violation("estimation layer width differs from the grid's");
    }
    EstimationLayer out{prev.level + 1, prev.width, 1, std::vector<std::uint64_t>(prev.words.size())};
    layer_1d(prev.words, current, rule, out.words, opts.threads);
    return out;
}

int cone_estimate_1d(const Grid1D& grid, EcaRule rule, long long site, int radius) {
    if (radius < 0) throw range_error("perception radius must be >= 0");
    const auto estimate = [&](auto&& self, int level, long long i) -> int {
        if (grid.boundary() == Boundary::fixed_zero && (i < 0 || i >= grid.width())) return 0;
        if (level == 0) return grid.at(i);
        return rule.apply(self(self, level - 1, i - 1), grid.at(i), self(self, level - 1, i + 1));
    };
    return estimate(estimate, radius, site);
}

Grid1D step_eca_extended(const Grid1D& grid, EcaRule rule, int radius, const StepOptions& opts) {
    check_radius(radius, kMaxRadius1D);
    Grid1D out(grid.width(), grid.boundary());
    run_layers(
        grid.words(), radius,
        [&](std::span<const std::uint64_t> prev, std::span<std::uint64_t> next) {
            layer_1d(prev, grid, rule, next, opts.threads);
        },
        [&](int level, std::span<const std::uint64_t> layer) {
            if (level == radius) std::copy(layer.begin(), layer.end(), out.words().begin());
        });
    return out;
}

Grid1D step_eca_extended(const Grid1D& grid, const ExtendedRule& rule, const StepOptions& opts) {
    if (!rule.is_eca()) throw contract_violation("1-D step requires an ECA rule, got " + rule.code());
    return step_eca_extended(grid, rule.eca(), rule.radius, opts);
}

Grid1D step_eca_extended(const Grid1D& grid, EcaRule rule, const RadiusField& field, const StepOptions& opts) {
    if (field.width() != grid.width() || field.height() != 1) {
        throw contract_violation("radius field must be width x 1 for a 1-D grid");
    }
    const int max_radius = field.max_radius();
    check_radius(max_radius, kMaxRadius1D);
    const auto masks = radius_masks(field, grid.words().size());
    Grid1D out(grid.width(), grid.boundary());
    run_layers(
        grid.words(), max_radius,
        [&](std::span<const std::uint64_t> prev, std::span<std::uint64_t> next) {
            layer_1d(prev, grid, rule, next, opts.threads);
        },
        [&](int level, std::span<const std::uint64_t> layer) {
            const auto& mask = masks[static_cast<std::size_t>(level)];
            if (!mask.empty()) accumulate_masked(out.words(), layer, mask);
        });
    return out;
}

Grid1D step_eca_r2_closed_form(const Grid1D& grid, EcaRule rule) {
    Grid1D out(grid.width(), grid.boundary());
    for (int i = 0; i < grid.width(); ++i) {
        const int x = grid.get(i);
        const int left = rule.apply(grid.at(i - 2), grid.at(i - 1), x);
        const int right = rule.apply(x, grid.at(i + 1), grid.at(i + 2));
        out.set(i, rule.apply(left, x, right));
    }
    return out;
}

// ---- 2-D ----

Grid2D step_life_base(const Grid2D& grid, const LifeRule& rule) {
    Grid2D out(grid.width(), grid.height(), grid.boundary());
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) {
            int n = 0;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc)
                    if (dr != 0 || dc != 0) n += grid.at(r + dr, c + dc);
            out.set(r, c, life_apply(rule, grid.get(r, c), n));
        }
    }
    out.set_radius_field(grid.radius_field());
    return out;
}

EstimationLayer estimate_layer_2d(const EstimationLayer& prev, const Grid2D& current, const LifeRule& rule,
                                  const StepOptions& opts) {
    if (prev.width != current.width() || prev.height != current.height() ||
        prev.words.size() != current.words().size()) {
        throw contract_violation("estimation layer dimensions differ from the grid's");
    }
    EstimationLayer out{prev.level + 1, prev.width, prev.height, std::vector<std::uint64_t>(prev.words.size())};
    layer_2d(prev.words, current, rule, out.words, opts.threads);
    return out;
}

Grid2D step_life_extended(const Grid2D& grid, const LifeRule& rule, int radius, const StepOptions& opts) {
    check_life_rule(rule);
    check_radius(radius, kMaxRadius2D);
    Grid2D out(grid.width(), grid.height(), grid.boundary());
    out.set_radius_field(grid.radius_field());
    std::vector<std::uint64_t> result;
    run_layers(
        grid.words(), radius,
        [&](std::span<const std::uint64_t> prev, std::span<std::uint64_t> next) {
            layer_2d(prev, grid, rule, next, opts.threads);
        },
        [&](int level, std::span<const std::uint64_t> layer) {
            if (level == radius) result.assign(layer.begin(), layer.end());
        });
    for (int r = 0; r < grid.height(); ++r) {
        const auto src = std::span<const std::uint64_t>(result).subspan(static_cast<std::size_t>(r) * grid.words_per_row(),
                                                                          grid.words_per_row());
        std::copy(src.begin(), src.end(), out.row_words(r).begin());
    }
    return out;
}

Grid2D step_life_extended(const Grid2D& grid, const ExtendedRule& rule, const StepOptions& opts) {
    if (rule.is_eca()) throw contract_violation("2-D step requires a Life-like rule, got " + rule.code());
    return step_life_extended(grid, rule.life(), rule.radius, opts);
}

Grid2D step_life_extended(const Grid2D& grid, const LifeRule& rule, const RadiusField& field,
                          const StepOptions& opts) {
    check_life_rule(rule);
    if (field.width() != grid.width() || field.height() != grid.height()) {
        throw contract_violation("radius field dimensions differ from the grid's");
    }
    const int max_radius = field.max_radius();
    check_radius(max_radius, kMaxRadius2D);
    const auto masks = radius_masks(field, grid.words_per_row());
    std::vector<std::uint64_t> result(grid.words().size(), 0);
    run_layers(
        grid.words(), max_radius,
        [&](std::span<const std::uint64_t> prev, std::span<std::uint64_t> next) {
            layer_2d(prev, grid, rule, next, opts.threads);
        },
        [&](int level, std::span<const std::uint64_t> layer) {
            const auto& mask = masks[static_cast<std::size_t>(level)];
            if (!mask.empty()) accumulate_masked(result, layer, mask);
        });
    Grid2D out(grid.width(), grid.height(), grid.boundary());
    for (int r = 0; r < grid.height(); ++r) {
        const auto src = std::span<const std::uint64_t>(result).subspan(static_cast<std::size_t>(r) * grid.words_per_row(),
                                                                          grid.words_per_row());
        std::copy(src.begin(), src.end(), out.row_words(r).begin());
    }
    out.set_radius_field(grid.radius_field());
    return out;
}

Grid2D step_life_extended(const Grid2D& grid, const LifeRule& rule, const StepOptions& opts) {
    if (grid.radius_field()) return step_life_extended(grid, rule, *grid.radius_field(), opts);
    return step_life_extended(grid, rule, 1, opts);
}

// ---- construction helpers ----

Grid1D random_soup(int width, double density, std::uint64_t seed, Boundary boundary) {
    if (!(density >= 0.0 && density <= 1.0)) throw range_error("density must lie in [0, 1]");
    Grid1D g(width, boundary);
    Xoshiro256 rng(seed);
    for (int i = 0; i < width; ++i) g.set(i, rng.bernoulli(density));
    return g;
}

Grid2D random_soup(int width, int height, double density, std::uint64_t seed, Boundary boundary) {
    if (!(density >= 0.0 && density <= 1.0)) throw range_error("density must lie in [0, 1]");
    Grid2D g(width, height, boundary);
    Xoshiro256 rng(seed);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) g.set(r, c, rng.bernoulli(density));
    return g;
}

Grid1D single_seed(int width, Boundary boundary) {
    Grid1D g(width, boundary);
    g.set(width / 2, 1);
    return g;
}

RadiusField build_gradient_radius_field(int width, int height, int radius_left, int radius_right,
                                        std::uint64_t seed) {
    if (width < 2) throw contract_violation("gradient radius field needs width >= 2");
    if (radius_left < 1 || radius_right < 1) throw range_error("perception radius must be >= 1");
    RadiusField field(width, height, radius_left);
    Xoshiro256 rng(seed);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const double p = static_cast<double>(c) / static_cast<double>(width - 1);
            if (rng.bernoulli(p)) field.set(r, c, radius_right);
        }
    }
    return field;
}

}  // namespace ren
