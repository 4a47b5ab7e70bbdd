#include "evident/rational.hpp"

#include <limits>
#include <stdexcept>

namespace evident {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    v_.canonicalize();
}

Rational Rational::from_integers(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.v_ == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(mpq_class(v_ / o.v_));
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_str();
}

namespace {
std::optional<std::int64_t> to_int64(const mpz_class& z) {
    if (!z.fits_slong_p()) return std::nullopt;
    const long v = z.get_si();
    if (v < std::numeric_limits<std::int64_t>::min() ||
        v > std::numeric_limits<std::int64_t>::max())
        return std::nullopt;
    return static_cast<std::int64_t>(v);
}
}  // namespace

std::optional<std::int64_t> Rational::numerator_int64() const {
    return to_int64(v_.get_num());
}

std::optional<std::int64_t> Rational::denominator_int64() const {
    return to_int64(v_.get_den());
}

}  // namespace evident
