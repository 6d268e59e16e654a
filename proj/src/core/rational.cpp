#include "hier/core/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "hier/core/error.hpp"

namespace hier {

namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
        throw Error(ErrorKind::Syntax, "malformed number '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw Error(ErrorKind::Syntax, "empty number");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::int64_t num = parse_int(s.substr(0, slash), text);
        std::int64_t den = parse_int(s.substr(slash + 1), text);
        if (den == 0) throw Error(ErrorKind::Syntax, "zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto dot = s.find('.');
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
        throw Error(ErrorKind::Syntax, "malformed number '" + std::string(text) + "'");
    }
    if (frac_part.size() > 12) {
        throw Error(ErrorKind::Syntax, "too many fractional digits in '" + std::string(text) + "'");
    }
    std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    std::int64_t den = 1;
    std::int64_t frac = 0;
    if (!frac_part.empty()) {
        frac = parse_int(frac_part, text);
        for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    }
    Rational value = Rational(whole) + Rational(frac, den);
    return negative ? -value : value;
}

std::string to_string(const Rational& value) {
    std::int64_t den = value.denominator();
    std::int64_t d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) {
        return std::to_string(value.numerator()) + "/" + std::to_string(den);
    }
    if (den == 1) return std::to_string(value.numerator());

    int digits = std::max(twos, fives);
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    __int128 scaled = static_cast<__int128>(value.numerator()) * (scale / den);
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    auto int_part = static_cast<std::int64_t>(scaled / scale);
    auto frac_part = static_cast<std::int64_t>(scaled % scale);
    std::string frac = std::to_string(frac_part);
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return (negative ? "-" : "") + std::to_string(int_part) + "." + frac;
}

double to_double(const Rational& value) {
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

std::int64_t floor_int(const Rational& value) {
    std::int64_t q = value.numerator() / value.denominator();
    if (value.numerator() % value.denominator() != 0 && value.numerator() < 0) --q;
    return q;
}

std::int64_t ceil_int(const Rational& value) {
    return -floor_int(-value);
}

Rational round_up_to(const Rational& value, const Rational& step) {
    return step * Rational(ceil_int(value / step));
}

Rational rounded_sqrt(const Rational& squared) {
    constexpr std::int64_t kMicro = 1'000'000;
    double root = std::sqrt(to_double(squared));
    auto micros = static_cast<std::int64_t>(std::llround(root * static_cast<double>(kMicro)));
    return Rational(micros, kMicro);
}

}  // namespace hier
