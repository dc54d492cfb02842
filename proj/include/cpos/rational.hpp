#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpos {

/// Exact rational scalar. Always held in canonical form (gcd(num, den) = 1, den > 0).
class Rational {
public:
    Rational() = default;
    Rational(int v) : q_(v) {}
    Rational(long v) : q_(v) {}
    Rational(long long v) : q_(static_cast<long>(v)) {}
    Rational(long num, long den) : q_(num, den)
    {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "p/q", a signed integer, or a plain decimal such as "-0.25" (read exactly).
    static Rational parse(std::string_view text);

    const mpq_class& raw() const noexcept { return q_; }

    int sign() const noexcept { return sgn(q_); }
    bool is_zero() const noexcept { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    std::string numerator_str() const { return q_.get_num().get_str(); }
    std::string denominator_str() const { return q_.get_den().get_str(); }

    /// Canonical "p/q" text; integers print without a denominator.
    std::string str() const
    {
        if (is_integer()) return numerator_str();
        return numerator_str() + "/" + denominator_str();
    }

    double to_double() const { return q_.get_d(); }
    /// The exact value of a finite double.
    static Rational from_double(double d) { return Rational(mpq_class(d)); }

    Rational floor() const
    {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return Rational(mpq_class(f));
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.q_, b.q_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    std::size_t hash() const
    {
        return std::hash<std::string>{}(q_.get_str(16));
    }

private:
    mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline Rational Rational::parse(std::string_view text)
{
    auto fail = [&] { return std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
    auto is_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    mpq_class q;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!is_digits(num) || !is_digits(den)) throw fail();
        mpz_class d{std::string(den), 10};
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        q = mpq_class(mpz_class{std::string(num), 10}, d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !is_digits(whole))
            || (!frac.empty() && !is_digits(frac)))
            throw fail();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class digits{std::string(whole.empty() ? "0" : whole) + std::string(frac), 10};
        q = mpq_class(digits, scale);
    } else {
        if (!is_digits(body)) throw fail();
        q = mpq_class(mpz_class{std::string(body), 10});
    }
    q.canonicalize();
    if (negative) q = -q;
    return Rational(q);
}

} // namespace cpos

template <>
struct std::hash<cpos::Rational> {
    std::size_t operator()(const cpos::Rational& r) const { return r.hash(); }
};
