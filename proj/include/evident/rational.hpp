#ifndef EVIDENT_RATIONAL_HPP
#define EVIDENT_RATIONAL_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace evident {

/// Arbitrary-precision rational, always canonical (gcd(num, den) = 1,
/// den > 0). Thin wrapper over GMP's mpq_class presenting the small surface
/// the code-length analysis needs; conversion to double happens only at
/// reporting boundaries.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(std::int64_t num, std::int64_t den = 1);
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    static Rational from_integers(const mpz_class& num, const mpz_class& den);

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    double to_double() const { return v_.get_d(); }

    /// "5/2", or just "2" for integers.
    std::string str() const;
    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    std::optional<std::int64_t> numerator_int64() const;
    std::optional<std::int64_t> denominator_int64() const;

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

}  // namespace evident

#endif  // EVIDENT_RATIONAL_HPP
