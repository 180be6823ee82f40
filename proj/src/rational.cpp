#include "omlbell/rational.hpp"

#include <algorithm>
#include <cctype>

#include "omlbell/common.hpp"

namespace omlbell {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::string_view text) {
    throw ParseError("not a rational number: \"" + std::string(text) + "\"");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        mpz_class d(std::string(den), 10);
        if (d == 0) bad(text);
        value = Rational(mpz_class(std::string(num), 10), d);
        value.canonicalize();
    } else if (auto dot = s.find_first_of(".,"); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            bad(text);
        std::string digits = std::string(whole) + std::string(frac);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        value = Rational(mpz_class(digits.empty() ? "0" : digits, 10), scale);
        value.canonicalize();
    } else {
        if (!all_digits(s)) bad(text);
        value = Rational(mpz_class(std::string(s), 10));
    }
    return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_decimal(const Rational& value, int digits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::max(digits, 0)));
    Rational scaled = abs(value) * scale;
    // round half away from zero
    mpz_class q = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
    std::string s = q.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
    }
    if (sgn(value) < 0 && q != 0) s.insert(0, "-");
    return s;
}

}  // namespace omlbell
