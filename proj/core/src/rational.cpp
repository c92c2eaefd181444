#include "xci/rational.hpp"

#include "xci/errors.hpp"

#include <cctype>

namespace xci {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

// Accepts an optional sign followed by digits.
bool parse_int_text(std::string_view s, bool allow_sign, Int& out) {
    bool negative = false;
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) return false;
    out = Int(std::string(s));
    if (negative) out = -out;
    return true;
}

} // namespace

Rat parse_rat(std::string_view text) {
    auto fail = [&] {
        throw InputFormatError("invalid rational literal: '" + std::string(text) + "'");
    };

    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        Int num;
        if (!parse_int_text(text, true, num)) fail();
        return Rat(num);
    }

    Int num, den;
    if (!parse_int_text(text.substr(0, slash), true, num)) fail();
    if (!parse_int_text(text.substr(slash + 1), false, den)) fail();
    if (den == 0) fail();
    return Rat(num, den);
}

std::string rat_str(const Rat& value) {
    const Int num = numerator(value);
    const Int den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace xci
