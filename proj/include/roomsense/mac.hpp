#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace roomsense {

struct MacAddress {
    std::array<std::uint8_t, 6> octets{};

    static constexpr MacAddress broadcast() {
        return MacAddress{{0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF}};
    }

    bool is_broadcast() const { return *this == broadcast(); }

    // "AA:BB:CC:DD:EE:FF"; throws ParseError on anything else.
    static MacAddress parse(std::string_view text);

    std::string str() const;

    auto operator<=>(const MacAddress&) const = default;
};

} // namespace roomsense
