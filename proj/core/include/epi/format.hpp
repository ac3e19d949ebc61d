#ifndef EPI_FORMAT_HPP
#define EPI_FORMAT_HPP

#include <charconv>
#include <string>

namespace epi {

/// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double value) {
    char buffer[32];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

} // namespace epi

#endif
