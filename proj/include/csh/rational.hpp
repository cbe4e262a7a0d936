#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace csh {

struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct BigRational;

// Exact rational: 64-bit parts with 128-bit intermediates, promoted to GMP when a value does not fit.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d);

    bool is_small() const { return !big_; }
    // throw OverflowError for promoted values
    std::int64_t num() const;
    std::int64_t den() const;
    std::string num_str() const;
    std::string den_str() const;

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_integer() const;
    int sign() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::int64_t floor() const;
    std::int64_t ceil() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    std::string str() const;
    // accepts "p", "-p", "p/q"; decimals and exponents are rejected
    static Rational parse(const std::string& s);

private:
    friend struct BigRational;
    static Rational from128(__int128 n, __int128 d);
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const BigRational> big_;
};

// rational or +infinity
using ExtRational = std::optional<Rational>;

inline bool ext_less(const ExtRational& a, const ExtRational& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}
inline ExtRational ext_min(const ExtRational& a, const ExtRational& b) {
    return ext_less(b, a) ? b : a;
}
inline ExtRational ext_add(const ExtRational& a, const ExtRational& b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}
inline std::string ext_str(const ExtRational& a) { return a ? a->str() : "inf"; }

struct RationalHash {
    std::size_t operator()(const Rational& r) const {
        if (!r.is_small()) return std::hash<std::string>()(r.str());
        return std::hash<std::int64_t>()(r.num()) * 1000003u ^ std::hash<std::int64_t>()(r.den());
    }
};

}  // namespace csh
