#include "riemannx/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace riemannx::csv {

std::string number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string number(const Rational& q)
{
    return number(to_double(q));
}

std::string boolean(bool b)
{
    return b ? "true" : "false";
}

void row(std::ostream& out, std::initializer_list<std::string_view> fields)
{
    bool first = true;
    for (auto f : fields) {
        if (!first)
            out << ',';
        out << f;
        first = false;
    }
    out << '\n';
}

void comment(std::ostream& out, std::string_view text)
{
    out << "# " << text << '\n';
}

} // namespace riemannx::csv
