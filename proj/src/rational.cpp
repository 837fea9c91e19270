#include "flagcalc/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace flagcalc {

Rational::Rational(long long n) : v_(0) {
    mpz_class z;
    // mpz_class has no long long constructor on LP64 this matters only for
    // pedantry, but go through set_str to stay portable.
    z.set_str(std::to_string(n), 10);
    v_ = mpq_class(z);
}

Rational::Rational(long num, long den) : v_(0) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto is_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    std::string_view num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!is_digits(num) || !is_digits(den))
        throw std::invalid_argument("rational: cannot parse \"" + std::string(text) + "\"");
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("rational: zero denominator in \"" + std::string(text) + "\"");
    if (negative) n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::invalid_argument("rational: division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::abs() const {
    return is_negative() ? -*this : *this;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace flagcalc
