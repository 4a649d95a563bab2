#pragma once

#include "riemannx/rational.hpp"

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace riemannx::csv {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string number(double x);
std::string number(const Rational& q);
std::string boolean(bool b);

/// Writes the fields joined by ',' and terminated by '\n'.
void row(std::ostream& out, std::initializer_list<std::string_view> fields);

void comment(std::ostream& out, std::string_view text);

} // namespace riemannx::csv
