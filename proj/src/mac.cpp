#include "roomsense/mac.hpp"

#include <cstdio>

#include "roomsense/errors.hpp"

namespace roomsense {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

MacAddress MacAddress::parse(std::string_view text) {
    if (text.size() != 17) {
        throw ParseError("bad MAC address \"" + std::string(text) + "\": expected 17 characters");
    }
    MacAddress mac;
    for (int i = 0; i < 6; ++i) {
        const int hi = hex_digit(text[i * 3]);
        const int lo = hex_digit(text[i * 3 + 1]);
        if (hi < 0 || lo < 0) {
            throw ParseError("bad MAC address \"" + std::string(text) + "\": invalid hex digit");
        }
        mac.octets[i] = static_cast<std::uint8_t>(hi * 16 + lo);
        if (i < 5 && text[i * 3 + 2] != ':') {
            throw ParseError("bad MAC address \"" + std::string(text) + "\": expected ':'");
        }
    }
    return mac;
}

std::string MacAddress::str() const {
    char buf[18];
    std::snprintf(buf, sizeof buf, "%02X:%02X:%02X:%02X:%02X:%02X", octets[0], octets[1],
                  octets[2], octets[3], octets[4], octets[5]);
    return buf;
}

} // namespace roomsense
