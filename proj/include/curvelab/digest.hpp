#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>

namespace curvelab {

/// 64-bit FNV-1a over a canonical byte stream; identifies check inputs in reports.
class Digest {
public:
    Digest& add(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) byte(static_cast<unsigned char>(v >> (8 * i)));
        return *this;
    }

    Digest& add(double v) {
        if (v == 0.0) v = 0.0;  // fold -0.0
        return add(std::bit_cast<std::uint64_t>(v));
    }

    Digest& add(std::string_view s) {
        add(static_cast<std::uint64_t>(s.size()));
        for (char c : s) byte(static_cast<unsigned char>(c));
        return *this;
    }

    template <class T>
    Digest& add_all(std::span<const T> values) {
        add(static_cast<std::uint64_t>(values.size()));
        for (const T& v : values) add(static_cast<std::conditional_t<std::is_floating_point_v<T>, double, std::uint64_t>>(v));
        return *this;
    }

    std::uint64_t value() const noexcept { return state_; }

    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
        return buf;
    }

private:
    void byte(unsigned char b) {
        state_ ^= b;
        state_ *= 0x100000001b3ULL;
    }

    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

} // namespace curvelab
