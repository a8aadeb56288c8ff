#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace kfreewalk {

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double x)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, res.ptr);
}

}  // namespace kfreewalk
