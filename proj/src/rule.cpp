#include "ren/rule.hpp"

#include "ren/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace ren {

std::array<std::uint8_t, 8> EcaRule::table() const noexcept {
    std::array<std::uint8_t, 8> t{};
    for (int k = 0; k < 8; ++k) t[k] = (number_ >> k) & 1;
    return t;
}

EcaRule EcaRule::from_table(const std::array<std::uint8_t, 8>& table) noexcept {
    int n = 0;
    for (int k = 0; k < 8; ++k) n |= (table[k] & 1) << k;
    return EcaRule(static_cast<std::uint8_t>(n));
}

EcaRule transform_eca(EcaRule rule, EcaTransform op) noexcept {
    const bool mirror = op != EcaTransform::complement;
    const bool complement = op != EcaTransform::mirror;
    std::array<std::uint8_t, 8> t{};
    for (int l = 0; l < 2; ++l) {
        for (int c = 0; c < 2; ++c) {
            for (int r = 0; r < 2; ++r) {
                int a = mirror ? r : l, b = c, d = mirror ? l : r;
                if (complement) a ^= 1, b ^= 1, d ^= 1;
                int out = rule.apply(a, b, d);
                if (complement) out ^= 1;
                t[(l << 2) | (c << 1) | r] = static_cast<std::uint8_t>(out);
            }
        }
    }
    return EcaRule::from_table(t);
}

std::vector<EcaClass> eca_equivalence_classes() {
    std::array<bool, 256> seen{};
    std::vector<EcaClass> classes;
    for (int n = 0; n < 256; ++n) {
        if (seen[n]) continue;
        const EcaRule r(static_cast<std::uint8_t>(n));
        std::vector<int> orbit = {n,
                                  transform_eca(r, EcaTransform::mirror).number(),
                                  transform_eca(r, EcaTransform::complement).number(),
                                  transform_eca(r, EcaTransform::mirror_complement).number()};
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        for (int m : orbit) seen[m] = true;
        // n is the first unseen number, hence the orbit minimum.
        classes.push_back({n, std::move(orbit)});
    }
    return classes;
}

LifeRule::LifeRule(std::uint16_t birth_mask, std::uint16_t survival_mask)
    : birth_(birth_mask), survival_(survival_mask) {
    if ((birth_mask | survival_mask) >> 9) {
        throw range_error("Life rule neighbor counts must lie in 0..8");
    }
}

std::string LifeRule::code(bool slashed) const {
    std::string s = "B";
    for (int n = 0; n <= 8; ++n)
        if (births_on(n)) s += static_cast<char>('0' + n);
    if (slashed) s += '/';
    s += 'S';
    for (int n = 0; n <= 8; ++n)
        if (survives_on(n)) s += static_cast<char>('0' + n);
    return s;
}

int life_apply(const LifeRule& rule, int center, int live_neighbors) {
    if (live_neighbors < 0 || live_neighbors > 8) {
        throw contract_violation("live neighbor count " + std::to_string(live_neighbors) +
                                 " outside 0..8");
    }
    return center ? rule.survives_on(live_neighbors) : rule.births_on(live_neighbors);
}

std::string base_code(const BaseRule& base, bool slashed) {
    if (const auto* e = std::get_if<EcaRule>(&base)) return e->code();
    return std::get<LifeRule>(base).code(slashed);
}

std::string ExtendedRule::code() const { return base_code(base) + "R" + std::to_string(radius); }

std::vector<ExtendedRule> SequenceCode::expand() const {
    std::vector<ExtendedRule> out;
    for (int r = first; r <= last; ++r) out.push_back({base, r});
    return out;
}

namespace {

char upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parses a run of decimal digits starting at pos, saturating on overflow.
long long take_number(std::string_view s, std::size_t& pos) {
    long long v = 0;
    const std::size_t start = pos;
    while (pos < s.size() && is_digit(s[pos])) {
        if (v < std::numeric_limits<int>::max()) v = v * 10 + (s[pos] - '0');
        ++pos;
    }
    if (pos == start) throw parse_error("expected digits in rule code '" + std::string(s) + "'");
    return v;
}

EcaRule eca_from_number(long long n) {
    if (n < 0 || n > 255) {
        throw range_error("ECA rule number " + std::to_string(n) + " outside 0..255");
    }
    return EcaRule(static_cast<std::uint8_t>(n));
}

std::uint16_t take_counts(std::string_view s, std::size_t& pos) {
    std::uint16_t mask = 0;
    while (pos < s.size() && is_digit(s[pos])) {
        const int d = s[pos] - '0';
        if (d > 8) {
            throw parse_error("neighbor count " + std::to_string(d) + " impossible in a Moore neighborhood");
        }
        mask |= static_cast<std::uint16_t>(1u << d);
        ++pos;
    }
    return mask;
}

// Consumes a base code at pos; leaves pos after it.
BaseRule take_base(std::string_view s, std::size_t& pos) {
    if (pos >= s.size()) throw parse_error("empty rule code");
    const char c = upper(s[pos]);
    if (c == 'B') {
        ++pos;
        const std::uint16_t birth = take_counts(s, pos);
        if (pos < s.size() && s[pos] == '/') ++pos;
        if (pos >= s.size() || upper(s[pos]) != 'S') {
            throw parse_error("Life rule code '" + std::string(s) + "' lacks an S section");
        }
        ++pos;
        const std::uint16_t survival = take_counts(s, pos);
        return LifeRule(birth, survival);
    }
    if (c == 'S') throw parse_error("Life rule code '" + std::string(s) + "' lacks a B section");
    bool negative = false;
    if (c == '#') ++pos;
    if (pos < s.size() && s[pos] == '-') negative = true, ++pos;
    const long long n = take_number(s, pos);
    return eca_from_number(negative ? -n : n);
}

void expect_end(std::string_view s, std::size_t pos) {
    if (pos != s.size()) {
        throw parse_error("unexpected '" + std::string(1, s[pos]) + "' in rule code '" + std::string(s) + "'", 1,
                          static_cast<int>(pos) + 1);
    }
}

}  // namespace

EcaRule parse_eca_code(std::string_view text) {
    std::size_t pos = 0;
    if (!text.empty() && upper(text[0]) == 'B') throw parse_error("'" + std::string(text) + "' is not an ECA code");
    const BaseRule b = take_base(text, pos);
    expect_end(text, pos);
    return std::get<EcaRule>(b);
}

LifeRule parse_life_code(std::string_view text) {
    if (text.empty() || upper(text[0]) != 'B') {
        throw parse_error("Life rule code '" + std::string(text) + "' lacks a B section");
    }
    std::size_t pos = 0;
    const BaseRule b = take_base(text, pos);
    expect_end(text, pos);
    return std::get<LifeRule>(b);
}

BaseRule parse_base_code(std::string_view text) {
    std::size_t pos = 0;
    BaseRule b = take_base(text, pos);
    expect_end(text, pos);
    return b;
}

ExtendedRule parse_extended_code(std::string_view text) {
    std::size_t pos = 0;
    ExtendedRule rule{take_base(text, pos), 1};
    if (pos < text.size() && upper(text[pos]) == 'R') {
        ++pos;
        const long long r = take_number(text, pos);
        if (r < 1) throw range_error("perception radius must be >= 1 in '" + std::string(text) + "'");
        rule.radius = static_cast<int>(r);
    }
    expect_end(text, pos);
    return rule;
}

SequenceCode parse_sequence_code(std::string_view text) {
    if (text.size() < 3 || text.front() != '[' || text.back() != ']') {
        throw parse_error("sequence code must look like [#110] or [B3S23], got '" + std::string(text) + "'");
    }
    return SequenceCode{parse_base_code(text.substr(1, text.size() - 2))};
}

}  // namespace ren
