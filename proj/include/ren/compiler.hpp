#pragma once

#include "ren/digest.hpp"
#include "ren/engine.hpp"
#include "ren/rule.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace ren {

inline constexpr int kMaxCompiledRadius = 12;

// An extended ECA rule flattened to an explicit (2R+1)-cell lookup table.
// Window bit order: the leftmost cell is the most significant bit.
class WideRuleTable {
public:
    WideRuleTable(int radius, int base_number, std::vector<std::uint64_t> bits);

    int radius() const noexcept { return radius_; }
    int window_cells() const noexcept { return 2 * radius_ + 1; }
    std::uint64_t window_count() const noexcept { return std::uint64_t{1} << window_cells(); }
    // Wolfram number of the rule the table was compiled from.
    int base_number() const noexcept { return base_number_; }

    int entry(std::uint64_t window) const noexcept {
        return static_cast<int>((bits_[window / 64] >> (window % 64)) & 1);
    }
    std::span<const std::uint64_t> bits() const noexcept { return bits_; }

    friend bool operator==(const WideRuleTable&, const WideRuleTable&) = default;

private:
    int radius_;
    int base_number_;
    std::vector<std::uint64_t> bits_;
};

// Evaluates the layered recursion on every window, 64 windows per word.
// Throws capacity_error above R = 12.
WideRuleTable compile_extended_eca(EcaRule rule, int radius, int threads = 1);

// Table-driven stepping, prepared once per table. Each lookup yields up to 8
// adjacent output cells from a derived byte table indexed by the 2R+k cells
// they depend on (k chosen so the byte table stays within 1 MiB).
class TableStepper {
public:
    explicit TableStepper(const WideRuleTable& table);

    int radius() const noexcept { return radius_; }
    int cells_per_lookup() const noexcept { return chunk_; }

    // Bit-identical to step_eca_extended at the table's radius.
    Grid1D step(const Grid1D& grid) const;

private:
    EcaRule rule_;
    int radius_;
    int chunk_;
    // Index bit c is the c-th cell of the span, leftmost first.
    std::vector<std::uint8_t> chunk_table_;
};

// One-off table-driven step (prepares a TableStepper each call).
Grid1D apply_table(const WideRuleTable& table, const Grid1D& grid);

// Digest over (R, packed table bits).
Digest128 table_fingerprint(const WideRuleTable& table);

// Re-expresses a table at a larger radius by ignoring the extra border cells.
WideRuleTable widen_table(const WideRuleTable& table, int radius);

// Behavioral equality: widens the smaller table and compares every entry.
bool tables_equivalent(const WideRuleTable& a, const WideRuleTable& b);

// Binary table file: "RENW", u16 version, u16 R, u32 Wolfram number, u32 reserved,
// packed table bits (entry w is bit w%8 of byte w/8), then the 16-byte digest
// (hi then lo, each little-endian). All integers little-endian.
inline constexpr std::uint16_t kTableFileVersion = 1;

void write_table(std::ostream& out, const WideRuleTable& table);
WideRuleTable read_table(std::istream& in);
void write_table_file(const std::filesystem::path& path, const WideRuleTable& table);
WideRuleTable read_table_file(const std::filesystem::path& path);

}  // namespace ren
