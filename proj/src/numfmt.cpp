#include "pullin/numfmt.hpp"

#include "pullin/error.hpp"

#include <array>
#include <charconv>
#include <system_error>

namespace plab {

std::string format_double(double value)
{
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (res.ec != std::errc()) {
        throw Error("cannot format number");
    }
    return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& text)
{
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || first == last) {
        throw InvalidArgument("not a number: '" + text + "'");
    }
    return value;
}

}  // namespace plab
