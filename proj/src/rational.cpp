#include "mla/rational.hpp"

namespace mla {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

BigInt parse_digits(std::string_view s) {
    BigInt value = 0;
    for (char c : s) {
        value *= 10;
        value += c - '0';
    }
    return value;
}

std::strong_ordering to_ordering(const BigInt& lhs, const BigInt& rhs) {
    int c = lhs.compare(rhs);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    if (den_ == 1) return;
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num_text = body.substr(0, slash);
    std::string_view den_text = slash == std::string_view::npos ? std::string_view("1")
                                                                 : body.substr(slash + 1);
    if (!all_digits(num_text) || !all_digits(den_text)) {
        throw RationalParseError("malformed rational '" + std::string(text) +
                                 "': expected \"p/q\" or \"p\"");
    }
    BigInt num = parse_digits(num_text);
    BigInt den = parse_digits(den_text);
    if (den.is_zero()) {
        throw RationalParseError("malformed rational '" + std::string(text) +
                                 "': zero denominator");
    }
    if (negative) num = -num;
    return Rational(std::move(num), std::move(den));
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt q;
    BigInt r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r.sign() < 0) --q;
    return q;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) {
    BigInt q;
    BigInt r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r.sign() > 0) ++q;
    return q;
}

BigInt Rational::floor() const { return floor_div(num_, den_); }
BigInt Rational::ceil() const { return ceil_div(num_, den_); }

Rational Rational::abs() const { return Rational(boost::multiprecision::abs(num_), den_, Unchecked{}); }

Rational Rational::reciprocal() const {
    if (num_.is_zero()) throw std::domain_error("reciprocal of zero");
    return Rational(den_, num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_, Unchecked{}); }

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

std::string Rational::to_decimal(int places) const {
    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    BigInt magnitude = boost::multiprecision::abs(num_) * scale;
    // half-up on the magnitude: floor((2m + d) / 2d)
    BigInt rounded = floor_div(magnitude * 2 + den_, den_ * 2);
    std::string digits = rounded.str();
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places)) {
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    if (num_.sign() < 0 && !rounded.is_zero()) digits.insert(0, "-");
    return digits;
}

double Rational::to_double() const {
    return static_cast<double>(boost::multiprecision::cpp_rational(num_, den_));
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (den_ == rhs.den_) {
        num_ += rhs.num_;
    } else {
        num_ = num_ * rhs.den_ + rhs.num_ * den_;
        den_ *= rhs.den_;
    }
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_.is_zero()) throw std::domain_error("division by zero rational");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return to_ordering(a.num_, b.num_);
    return to_ordering(a.num_ * b.den_, b.num_ * a.den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt floor_scaled(const Rational& r, std::int64_t k) { return floor_div(r.num() * k, r.den()); }

BigInt ceil_scaled(const Rational& r, std::int64_t k) { return ceil_div(r.num() * k, r.den()); }

std::strong_ordering compare_scaled(std::int64_t a, const Rational& x, std::int64_t b,
                                    const Rational& y) {
    return to_ordering(x.num() * a * y.den(), y.num() * b * x.den());
}

}  // namespace mla
