#pragma once

// Scalar fields used throughout the library: exact rationals (GMP) and
// float64 with a process-wide tolerance.

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

#include "metriclie/errors.hpp"

namespace metriclie {

using Rational = mpq_class;

enum class Backend { exact, numeric };

inline const char* to_string(Backend b) { return b == Backend::exact ? "exact" : "numeric"; }

namespace detail {
inline std::atomic<double>& tolerance_slot() {
    static std::atomic<double> tau{1e-9};
    return tau;
}
}  // namespace detail

/// Global tolerance used by every equality test on the numeric backend.
inline double numeric_tolerance() { return detail::tolerance_slot().load(std::memory_order_relaxed); }

/// Set once at startup (the CLI does this from --tol).
inline void set_numeric_tolerance(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("tolerance must be positive and finite");
    detail::tolerance_slot().store(tau, std::memory_order_relaxed);
}

template <typename F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr Backend backend = Backend::exact;
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
    static Rational from_rational(const Rational& q) { return q; }
    static double to_double(const Rational& x) { return x.get_d(); }
};

template <>
struct FieldTraits<double> {
    static constexpr bool exact = false;
    static constexpr Backend backend = Backend::numeric;
    static bool is_zero(double x) { return std::abs(x) <= numeric_tolerance(); }
    static double magnitude(double x) { return std::abs(x); }
    static double from_rational(const Rational& q) { return q.get_d(); }
    static double to_double(double x) { return x; }
};

template <typename F>
inline constexpr bool is_exact_v = FieldTraits<F>::exact;

template <typename F>
bool is_zero(const F& x) {
    return FieldTraits<F>::is_zero(x);
}

template <typename F>
bool approx_equal(const F& a, const F& b) {
    return is_zero<F>(F(a - b));
}

template <typename To>
To scalar_cast(const Rational& q) {
    return FieldTraits<To>::from_rational(q);
}

/// Parses "p/q", an integer, or a plain decimal ("-0.125", "1e-3") into an
/// exact rational. Decimal text is interpreted exactly.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&](const char* why) -> Rational {
        throw ParseError("invalid scalar '" + std::string(text) + "': " + why);
    };
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    std::string_view s = trim(text);
    if (s.empty()) return fail("empty");

    auto parse_integer = [&](std::string_view digits) -> mpz_class {
        std::string_view d = digits;
        bool neg = false;
        if (!d.empty() && (d.front() == '+' || d.front() == '-')) {
            neg = d.front() == '-';
            d.remove_prefix(1);
        }
        if (d.empty() || !std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; }))
            fail("malformed integer");
        mpz_class z(std::string(d), 10);
        return neg ? mpz_class(-z) : z;
    };

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(trim(s.substr(0, slash)));
        mpz_class den = parse_integer(trim(s.substr(slash + 1)));
        if (den == 0) return fail("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    // decimal with optional exponent
    std::string_view mant = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mant = s.substr(0, e);
        std::string_view ex = s.substr(e + 1);
        if (!ex.empty() && ex.front() == '+') ex.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), exponent);
        if (ec != std::errc() || ptr != ex.data() + ex.size()) return fail("malformed exponent");
        if (exponent > 4096 || exponent < -4096) return fail("exponent out of range");
    }
    bool neg = false;
    if (!mant.empty() && (mant.front() == '+' || mant.front() == '-')) {
        neg = mant.front() == '-';
        mant.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (char c : mant) {
        if (c == '.') {
            if (seen_point) return fail("two decimal points");
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_point) ++frac_digits;
        } else {
            return fail("unexpected character");
        }
    }
    if (digits.empty()) return fail("no digits");
    mpz_class num(digits, 10);
    if (neg) num = -num;
    long scale = exponent - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational q = scale < 0 ? Rational(num, pow10) : Rational(num * pow10, 1);
    q.canonicalize();
    return q;
}

/// Shortest decimal that round-trips through strtod.
inline std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw InternalAssertionFailure("to_chars failed");
    return std::string(buf, ptr);
}

inline std::string format_scalar(const Rational& q) { return q.get_str(); }
inline std::string format_scalar(double x) { return format_double(x); }

/// Exact square root when q is the square of a rational.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

}  // namespace metriclie
