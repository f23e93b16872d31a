#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ren {

// Elementary CA rule. Bit k of the Wolfram number is the output for the
// neighborhood k = 4*left + 2*center + right.
class EcaRule {
public:
    constexpr EcaRule() = default;
    constexpr explicit EcaRule(std::uint8_t wolfram_number) : number_(wolfram_number) {}

    constexpr int number() const noexcept { return number_; }

    constexpr int apply(int left, int center, int right) const noexcept {
        return (number_ >> ((left << 2) | (center << 1) | right)) & 1;
    }

    // Truth table indexed by 4*left + 2*center + right.
    std::array<std::uint8_t, 8> table() const noexcept;
    static EcaRule from_table(const std::array<std::uint8_t, 8>& table) noexcept;

    // f(0,0,0) == 0, so the all-dead lattice is a fixed point.
    constexpr bool quiescent() const noexcept { return (number_ & 1) == 0; }

    std::string code() const { return "#" + std::to_string(number_); }

    friend constexpr bool operator==(EcaRule, EcaRule) = default;

private:
    std::uint8_t number_ = 0;
};

// Word-parallel rule application: bit i of the result is f(left_i, center_i, right_i).
inline std::uint64_t eca_apply_words(EcaRule rule, std::uint64_t left, std::uint64_t center,
                                     std::uint64_t right) noexcept {
    const int n = rule.number();
    auto lit = [](int bit) -> std::uint64_t { return bit ? ~std::uint64_t{0} : 0; };
    auto mux = [](std::uint64_t sel, std::uint64_t one, std::uint64_t zero) {
        return (sel & one) | (~sel & zero);
    };
    // Shannon expansion over right, then left, then center.
    auto by_right = [&](int k) { return mux(right, lit((n >> (k + 1)) & 1), lit((n >> k) & 1)); };
    const std::uint64_t c0 = mux(left, by_right(4), by_right(0));
    const std::uint64_t c1 = mux(left, by_right(6), by_right(2));
    return mux(center, c1, c0);
}

inline int eca_apply(EcaRule rule, int left, int center, int right) noexcept {
    return rule.apply(left, center, right);
}

enum class EcaTransform { mirror, complement, mirror_complement };

EcaRule transform_eca(EcaRule rule, EcaTransform op) noexcept;

struct EcaClass {
    int representative;        // smallest Wolfram number in the orbit
    std::vector<int> members;  // ascending
};

// Orbits of the 256 rules under {identity, mirror, complement, mirror_complement},
// ordered by representative.
std::vector<EcaClass> eca_equivalence_classes();

// Outer-totalistic Moore-neighborhood rule. Bit n of each mask is set when n
// live neighbors cause birth (dead cell) or survival (live cell).
class LifeRule {
public:
    LifeRule() = default;
    LifeRule(std::uint16_t birth_mask, std::uint16_t survival_mask);

    std::uint16_t birth_mask() const noexcept { return birth_; }
    std::uint16_t survival_mask() const noexcept { return survival_; }
    bool births_on(int n) const noexcept { return (birth_ >> n) & 1; }
    bool survives_on(int n) const noexcept { return (survival_ >> n) & 1; }

    // "B3S23"; slashed = true gives the Golly header form "B3/S23".
    std::string code(bool slashed = false) const;

    friend bool operator==(const LifeRule&, const LifeRule&) = default;

private:
    std::uint16_t birth_ = 0;
    std::uint16_t survival_ = 0;
};

// Throws contract_violation when live_neighbors is outside 0..8.
int life_apply(const LifeRule& rule, int center, int live_neighbors);

using BaseRule = std::variant<EcaRule, LifeRule>;

std::string base_code(const BaseRule& base, bool slashed = false);

// A base rule with perception radius R; R = 1 is the base rule itself.
struct ExtendedRule {
    BaseRule base;
    int radius = 1;

    bool is_eca() const noexcept { return std::holds_alternative<EcaRule>(base); }
    const EcaRule& eca() const { return std::get<EcaRule>(base); }
    const LifeRule& life() const { return std::get<LifeRule>(base); }

    // "#110R2", "B3S23R6". R1 is printed explicitly.
    std::string code() const;

    friend bool operator==(const ExtendedRule&, const ExtendedRule&) = default;
};

inline constexpr int kDefaultMaxSequenceRadius = 20;

// "[#110]": the family {#110R1, #110R2, ...} truncated to radii first..last.
struct SequenceCode {
    BaseRule base;
    int first = 1;
    int last = kDefaultMaxSequenceRadius;

    std::vector<ExtendedRule> expand() const;
    std::string code() const { return "[" + base_code(base) + "]"; }
};

// Grammar (case-insensitive):
//   ECA = "#"? digit+            LIFE = "B" d* "/"? "S" d*   (d in 0-8)
//   EXT = (ECA | LIFE) ("R" digit+)?
//   SEQ = "[" (ECA | LIFE) "]"
EcaRule parse_eca_code(std::string_view text);
LifeRule parse_life_code(std::string_view text);
BaseRule parse_base_code(std::string_view text);
ExtendedRule parse_extended_code(std::string_view text);
SequenceCode parse_sequence_code(std::string_view text);

}  // namespace ren
