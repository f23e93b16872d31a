#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace ren {

// 128-bit content digest. Not cryptographic; callers re-verify equality on a match.
struct Digest128 {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const Digest128&, const Digest128&) = default;
    std::string hex() const;
};

// Two independently seeded multiply-xorshift lanes over 64-bit words.
class Hasher128 {
public:
    Hasher128& add(std::uint64_t word) noexcept {
        a_ = mix(a_ ^ word) + 0x9e3779b97f4a7c15ULL;
        b_ = mix(b_ + (word ^ 0xc2b2ae3d27d4eb4fULL)) ^ (a_ >> 29);
        ++count_;
        return *this;
    }
    Hasher128& add(std::span<const std::uint64_t> words) noexcept {
        for (auto w : words) add(w);
        return *this;
    }
    Digest128 finish() const noexcept {
        return {mix(a_ ^ (count_ * 0xff51afd7ed558ccdULL)), mix(b_ + count_ + 0x165667b19e3779f9ULL)};
    }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
        return z ^ (z >> 33);
    }
    std::uint64_t a_ = 0x243f6a8885a308d3ULL;
    std::uint64_t b_ = 0x13198a2e03707344ULL;
    std::uint64_t count_ = 0;
};

struct Digest128Hash {
    std::size_t operator()(const Digest128& d) const noexcept { return static_cast<std::size_t>(d.lo ^ (d.hi * 31)); }
};

}  // namespace ren
