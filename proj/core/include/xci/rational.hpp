#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace xci {

// Exact rational arithmetic. cpp_rational keeps values canonical
// (normalized sign, gcd-reduced), so == is structural equality.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p" with optional leading '-'. Throws InputFormatError
// on malformed text or a zero denominator.
Rat parse_rat(std::string_view text);

// Formats as "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& value);

} // namespace xci
