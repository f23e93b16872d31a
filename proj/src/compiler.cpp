#include "ren/compiler.hpp"

#include "ren/errors.hpp"
#include "ren/parallel.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace ren {

namespace {

constexpr char kMagic[4] = {'R', 'E', 'N', 'W'};

std::size_t words_for_windows(int cells) {
    return std::max<std::size_t>(1, (std::size_t{1} << cells) / 64);
}

// Bit p of the window index, replicated across the 64 lanes of a batch starting at `base`.
std::uint64_t lane_pattern(std::uint64_t base, int p) {
    static constexpr std::array<std::uint64_t, 6> kLow = {
        0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
        0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL};
    if (p < 6) return kLow[static_cast<std::size_t>(p)];
    return ((base >> p) & 1) ? ~std::uint64_t{0} : 0;
}

template <class T>
void put_le(std::ostream& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
}

template <class T>
T get_le(std::istream& in) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw parse_error("truncated RENW table file");
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return static_cast<T>(v);
}

}  // namespace

WideRuleTable::WideRuleTable(int radius, int base_number, std::vector<std::uint64_t> bits)
    : radius_(radius), base_number_(base_number), bits_(std::move(bits)) {
    if (radius < 1 || radius > kMaxCompiledRadius) {
        throw capacity_error("table radius " + std::to_string(radius) + " outside 1.." +
                             std::to_string(kMaxCompiledRadius));
    }
    if (bits_.size() != words_for_windows(window_cells())) throw contract_violation("table size mismatch");
    if (window_count() < 64) bits_[0] &= (std::uint64_t{1} << window_count()) - 1;
}

WideRuleTable compile_extended_eca(EcaRule rule, int radius, int threads) {
    if (radius < 1) throw range_error("perception radius must be >= 1");
    if (radius > kMaxCompiledRadius) {
        throw capacity_error("R = " + std::to_string(radius) + " exceeds the compiled-table cap of " +
                             std::to_string(kMaxCompiledRadius) + "; use the layered engine");
    }
    const int cells = 2 * radius + 1;
    std::vector<std::uint64_t> table(words_for_windows(cells), 0);
    parallel_for(
        table.size(), threads,
        [&](std::size_t begin, std::size_t end) {
            std::vector<std::uint64_t> x(static_cast<std::size_t>(cells)), prev, next;
            for (std::size_t batch = begin; batch < end; ++batch) {
                const std::uint64_t base = static_cast<std::uint64_t>(batch) * 64;
                // Cell j (0 = leftmost) is window bit cells-1-j.
                for (int j = 0; j < cells; ++j) x[static_cast<std::size_t>(j)] = lane_pattern(base, cells - 1 - j);
                prev = x;
                next = x;
                // Level m is defined on cells m..cells-1-m; the center survives to level R.
                for (int m = 1; m <= radius; ++m) {
                    for (int j = m; j < cells - m; ++j) {
                        const auto k = static_cast<std::size_t>(j);
                        next[k] = eca_apply_words(rule, prev[k - 1], x[k], prev[k + 1]);
                    }
                    std::swap(prev, next);
                }
                table[batch] = prev[static_cast<std::size_t>(radius)];
            }
        },
        256);
    return WideRuleTable(radius, rule.number(), std::move(table));
}

namespace {

constexpr int kChunkTableBits = 20;

}  // namespace

TableStepper::TableStepper(const WideRuleTable& table)
    : rule_(static_cast<std::uint8_t>(table.base_number())), radius_(table.radius()), chunk_(1) {
    const int span = table.window_cells();
    while (chunk_ < 8 && span + 2 * chunk_ - 1 <= kChunkTableBits) chunk_ *= 2;

    // Single-cell table re-indexed so that index bit c is the c-th cell from the left.
    const std::uint64_t n1 = table.window_count();
    std::vector<std::uint8_t> level(n1);
    for (std::uint64_t w = 0; w < n1; ++w) {
        std::uint64_t reversed = 0;
        for (int c = 0; c < span; ++c) reversed |= ((w >> c) & 1) << (span - 1 - c);
        level[reversed] = static_cast<std::uint8_t>(table.entry(w));
    }
    // Doubling: outputs for 2k cells = outputs for the left k | outputs for the right k << k.
    for (int k = 1; k < chunk_; k *= 2) {
        const int in_bits = span + k - 1;
        const std::uint64_t in_mask = (std::uint64_t{1} << in_bits) - 1;
        std::vector<std::uint8_t> next(std::size_t{1} << (span + 2 * k - 1));
        for (std::uint64_t n = 0; n < next.size(); ++n) {
            next[n] = static_cast<std::uint8_t>(level[n & in_mask] | (level[(n >> k) & in_mask] << k));
        }
        level = std::move(next);
    }
    chunk_table_ = std::move(level);
}

Grid1D TableStepper::step(const Grid1D& grid) const {
    const int radius = radius_;
    const int width = grid.width();

    // Cells -R .. width+R-1 resolved by the boundary, packed like the grid, plus a spare word.
    const int padded_width = width + 2 * radius;
    std::vector<std::uint64_t> padded(bits::words_for(padded_width) + 2, 0);
    const auto set_padded = [&](int k) { padded[static_cast<std::size_t>(k) / 64] |= std::uint64_t{1} << (k % 64); };
    const std::size_t shift = static_cast<std::size_t>(radius) % 64;
    const auto src = grid.words();
    for (std::size_t k = 0; k < src.size(); ++k) {
        const std::size_t w = k + static_cast<std::size_t>(radius) / 64;
        padded[w] |= src[k] << shift;
        if (shift != 0) padded[w + 1] |= src[k] >> (64 - shift);
    }
    for (int k = 0; k < radius; ++k) {
        if (grid.at(static_cast<long long>(k) - radius)) set_padded(k);
        if (grid.at(static_cast<long long>(width) + k)) set_padded(width + radius + k);
    }

    // Output cell i depends on padded cells i .. i+2R; a lookup covers chunk_ outputs.
    const int index_bits = 2 * radius + chunk_;
    const std::uint64_t mask = (std::uint64_t{1} << index_bits) - 1;
    const std::uint8_t* lookup = chunk_table_.data();
    Grid1D out(width, grid.boundary());
    auto words = out.words();
    for (std::size_t j = 0; j < words.size(); ++j) {
        const std::uint64_t lo = padded[j], hi = padded[j + 1];
        std::uint64_t acc = lookup[lo & mask];
        for (int k = chunk_; k < 64; k += chunk_) {
            const std::uint64_t idx = ((lo >> k) | (hi << (64 - k))) & mask;
            acc |= static_cast<std::uint64_t>(lookup[idx]) << k;
        }
        words[j] = acc;
    }
    words.back() &= bits::tail_mask(width);

    // Under fixed_zero the layers hold out-of-range sites at 0, which a window
    // cannot express; the R cells at each edge come from short layered runs.
    if (grid.boundary() == Boundary::fixed_zero && radius > 1) {
        const int span = 3 * radius;
        if (width <= 2 * span) return step_eca_extended(grid, rule_, radius);
        Grid1D left(span, Boundary::fixed_zero), right(span, Boundary::fixed_zero);
        for (int i = 0; i < span; ++i) {
            left.set(i, grid.get(i));
            right.set(i, grid.get(width - span + i));
        }
        const Grid1D l = step_eca_extended(left, rule_, radius);
        const Grid1D r = step_eca_extended(right, rule_, radius);
        for (int i = 0; i < radius; ++i) {
            out.set(i, l.get(i));
            out.set(width - radius + i, r.get(span - radius + i));
        }
    }
    return out;
}

Grid1D apply_table(const WideRuleTable& table, const Grid1D& grid) { return TableStepper(table).step(grid); }

Digest128 table_fingerprint(const WideRuleTable& table) {
    Hasher128 h;
    h.add(static_cast<std::uint64_t>(table.radius())).add(table.bits());
    return h.finish();
}

WideRuleTable widen_table(const WideRuleTable& table, int radius) {
    if (radius < table.radius()) throw contract_violation("cannot narrow a table");
    const int shift = radius - table.radius();
    const std::uint64_t inner_mask = table.window_count() - 1;
    const int cells = 2 * radius + 1;
    std::vector<std::uint64_t> bits(words_for_windows(cells), 0);
    const std::uint64_t count = std::uint64_t{1} << cells;
    for (std::uint64_t w = 0; w < count; ++w) {
        if (table.entry((w >> shift) & inner_mask)) bits[w / 64] |= std::uint64_t{1} << (w % 64);
    }
    return WideRuleTable(radius, table.base_number(), std::move(bits));
}

bool tables_equivalent(const WideRuleTable& a, const WideRuleTable& b) {
    if (a.radius() == b.radius()) return a.bits().size() == b.bits().size() &&
                                         std::equal(a.bits().begin(), a.bits().end(), b.bits().begin());
    const WideRuleTable& small = a.radius() < b.radius() ? a : b;
    const WideRuleTable& large = a.radius() < b.radius() ? b : a;
    const WideRuleTable widened = widen_table(small, large.radius());
    return std::equal(widened.bits().begin(), widened.bits().end(), large.bits().begin());
}

void write_table(std::ostream& out, const WideRuleTable& table) {
    out.write(kMagic, 4);
    put_le<std::uint16_t>(out, kTableFileVersion);
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(table.radius()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.base_number()));
    put_le<std::uint32_t>(out, 0);
    const std::uint64_t bytes = std::max<std::uint64_t>(1, table.window_count() / 8);
    for (std::uint64_t i = 0; i < bytes; ++i) {
        out.put(static_cast<char>((table.bits()[i / 8] >> (8 * (i % 8))) & 0xff));
    }
    const Digest128 d = table_fingerprint(table);
    put_le(out, d.hi);
    put_le(out, d.lo);
}

WideRuleTable read_table(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw parse_error("not a RENW table file");
    const auto version = get_le<std::uint16_t>(in);
    if (version != kTableFileVersion) throw parse_error("unsupported RENW version " + std::to_string(version));
    const int radius = get_le<std::uint16_t>(in);
    const auto number = get_le<std::uint32_t>(in);
    get_le<std::uint32_t>(in);
    if (radius < 1 || radius > kMaxCompiledRadius) throw parse_error("RENW radius out of range");
    const int cells = 2 * radius + 1;
    std::vector<std::uint64_t> bits(words_for_windows(cells), 0);
    const std::uint64_t bytes = std::max<std::uint64_t>(1, (std::uint64_t{1} << cells) / 8);
    for (std::uint64_t i = 0; i < bytes; ++i) bits[i / 8] |= get_le<std::uint8_t>(in) * (std::uint64_t{1} << (8 * (i % 8)));
    WideRuleTable table(radius, static_cast<int>(number), std::move(bits));
    Digest128 stored;
    stored.hi = get_le<std::uint64_t>(in);
    stored.lo = get_le<std::uint64_t>(in);
    if (!(stored == table_fingerprint(table))) throw parse_error("RENW digest mismatch");
    return table;
}

void write_table_file(const std::filesystem::path& path, const WideRuleTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_table(out, table);
}

WideRuleTable read_table_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_table(in);
}

}  // namespace ren
