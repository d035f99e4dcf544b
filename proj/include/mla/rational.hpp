#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mla {

using BigInt = boost::multiprecision::cpp_int;

class RationalParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Exact rational number, always kept reduced with a positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt num, BigInt den);

    // Accepts "p/q" or "p" where p may carry a leading '-' and q is positive.
    // Decimal notation is rejected.
    static Rational parse(std::string_view text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    BigInt floor() const;
    BigInt ceil() const;
    Rational abs() const;
    Rational reciprocal() const;
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_.sign(); }

    // "p" for integers, "p/q" otherwise.
    std::string str() const;

    // Round-half-up to a fixed number of decimals, computed exactly.
    std::string to_decimal(int places) const;

    double to_double() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    struct Unchecked {};
    Rational(BigInt num, BigInt den, Unchecked) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    BigInt num_;
    BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// floor(r * k) and ceil(r * k) without building the intermediate rational.
BigInt floor_scaled(const Rational& r, std::int64_t k);
BigInt ceil_scaled(const Rational& r, std::int64_t k);

// Three-way comparison of a*x against b*y.
std::strong_ordering compare_scaled(std::int64_t a, const Rational& x, std::int64_t b,
                                    const Rational& y);

// Floor/ceil of num/den for den > 0.
BigInt floor_div(const BigInt& num, const BigInt& den);
BigInt ceil_div(const BigInt& num, const BigInt& den);

}  // namespace mla
