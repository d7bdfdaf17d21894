#ifndef MORIN_RAT_HPP
#define MORIN_RAT_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace morin
{

// Exact rational number in lowest terms with a positive denominator.
//
// Values whose numerator and denominator both fit in a signed 64-bit word
// are kept inline and combined with 128-bit intermediates; everything else
// falls back to a shared, immutable GMP rational. The representation is
// canonical: a value that fits inline is never stored as a GMP rational, so
// equality can compare representations directly.
class Rat
{
    using i128 = __int128;
    using u128 = unsigned __int128;

public:
    Rat() = default;
    Rat(int v) : m_num(v) {}
    Rat(long v) : m_num(v)
    {
        if (v == std::numeric_limits<long>::min()) {
            set_big(mpq_class(mpz_class(static_cast<signed long>(v))));
        }
    }
    Rat(long long v) : Rat(static_cast<long>(v)) {}

    Rat(std::int64_t num, std::int64_t den)
    {
        if (den == 0) {
            throw std::domain_error("Rat: zero denominator");
        }
        assign128(num, den);
    }

    explicit Rat(const mpq_class &q)
    {
        mpq_class c(q);
        c.canonicalize();
        assign_big(std::move(c));
    }

    // Accepts "p", "-p", "p/q" with arbitrary-size integers.
    static Rat parse(std::string_view s)
    {
        std::string str(s);
        if (str.empty()) {
            throw std::invalid_argument("Rat: empty literal");
        }
        mpq_class q;
        if (q.set_str(str, 10) != 0) {
            throw std::invalid_argument("Rat: malformed literal '" + str + "'");
        }
        if (q.get_den() == 0) {
            throw std::domain_error("Rat: zero denominator");
        }
        return Rat(q);
    }

    bool is_zero() const noexcept
    {
        return !m_big && m_num == 0;
    }
    bool is_integer() const
    {
        return m_big ? m_big->get_den() == 1 : m_den == 1;
    }
    int sign() const noexcept
    {
        if (m_big) {
            return sgn(*m_big);
        }
        return (m_num > 0) - (m_num < 0);
    }
    bool is_small() const noexcept
    {
        return !m_big;
    }

    mpz_class numerator() const
    {
        return m_big ? mpz_class(m_big->get_num()) : mpz_class(static_cast<signed long>(m_num));
    }
    mpz_class denominator() const
    {
        return m_big ? mpz_class(m_big->get_den()) : mpz_class(static_cast<signed long>(m_den));
    }
    mpq_class to_mpq() const
    {
        if (m_big) {
            return *m_big;
        }
        mpq_class q(mpz_class(static_cast<signed long>(m_num)), mpz_class(static_cast<signed long>(m_den)));
        return q;
    }

    std::string to_string() const
    {
        if (m_big) {
            return m_big->get_str(10);
        }
        if (m_den == 1) {
            return std::to_string(m_num);
        }
        return std::to_string(m_num) + "/" + std::to_string(m_den);
    }

    double to_double() const
    {
        return m_big ? m_big->get_d() : static_cast<double>(m_num) / static_cast<double>(m_den);
    }

    Rat operator-() const
    {
        Rat r;
        if (m_big) {
            r.assign_big(mpq_class(-*m_big));
        } else {
            r.m_num = -m_num;
            r.m_den = m_den;
        }
        return r;
    }

    friend Rat operator+(const Rat &a, const Rat &b)
    {
        if (!a.m_big && !b.m_big) {
            Rat r;
            if (a.m_den == 1 && b.m_den == 1) {
                r.assign128(static_cast<i128>(a.m_num) + b.m_num, 1);
                return r;
            }
            const auto g = gcd64(static_cast<std::uint64_t>(a.m_den), static_cast<std::uint64_t>(b.m_den));
            const i128 ad = a.m_den / static_cast<std::int64_t>(g);
            const i128 bd = b.m_den / static_cast<std::int64_t>(g);
            const i128 num = static_cast<i128>(a.m_num) * bd + static_cast<i128>(b.m_num) * ad;
            const i128 den = ad * b.m_den;
            r.assign128_reduce(num, den, g);
            return r;
        }
        Rat r;
        r.assign_big(a.to_mpq() + b.to_mpq());
        return r;
    }
    friend Rat operator-(const Rat &a, const Rat &b)
    {
        return a + (-b);
    }
    friend Rat operator*(const Rat &a, const Rat &b)
    {
        if (!a.m_big && !b.m_big) {
            Rat r;
            if (a.m_num == 0 || b.m_num == 0) {
                return r;
            }
            if (a.m_den == 1 && b.m_den == 1) {
                r.assign128(static_cast<i128>(a.m_num) * b.m_num, 1);
                return r;
            }
            const auto g1 = static_cast<std::int64_t>(gcd64(uabs(a.m_num), static_cast<std::uint64_t>(b.m_den)));
            const auto g2 = static_cast<std::int64_t>(gcd64(uabs(b.m_num), static_cast<std::uint64_t>(a.m_den)));
            const i128 num = static_cast<i128>(a.m_num / g1) * (b.m_num / g2);
            const i128 den = static_cast<i128>(a.m_den / g2) * (b.m_den / g1);
            r.assign128_reduced(num, den);
            return r;
        }
        Rat r;
        r.assign_big(a.to_mpq() * b.to_mpq());
        return r;
    }
    friend Rat operator/(const Rat &a, const Rat &b)
    {
        if (b.is_zero()) {
            throw std::domain_error("Rat: division by zero");
        }
        return a * b.inverse();
    }

    Rat inverse() const
    {
        if (is_zero()) {
            throw std::domain_error("Rat: inverse of zero");
        }
        Rat r;
        if (m_big) {
            r.assign_big(mpq_class(1) / *m_big);
        } else if (m_num < 0) {
            r.m_num = -m_den;
            r.m_den = -m_num;
        } else {
            r.m_num = m_den;
            r.m_den = m_num;
        }
        return r;
    }

    Rat &operator+=(const Rat &o)
    {
        return *this = *this + o;
    }
    Rat &operator-=(const Rat &o)
    {
        return *this = *this - o;
    }
    Rat &operator*=(const Rat &o)
    {
        return *this = *this * o;
    }
    Rat &operator/=(const Rat &o)
    {
        return *this = *this / o;
    }

    friend bool operator==(const Rat &a, const Rat &b)
    {
        if (a.m_big || b.m_big) {
            return a.m_big && b.m_big && *a.m_big == *b.m_big;
        }
        return a.m_num == b.m_num && a.m_den == b.m_den;
    }
    friend std::strong_ordering operator<=>(const Rat &a, const Rat &b)
    {
        if (!a.m_big && !b.m_big) {
            const i128 l = static_cast<i128>(a.m_num) * b.m_den;
            const i128 r = static_cast<i128>(b.m_num) * a.m_den;
            return l <=> r;
        }
        const int c = cmp(a.to_mpq(), b.to_mpq());
        return c <=> 0;
    }

    std::size_t hash() const
    {
        if (m_big) {
            return std::hash<std::string>{}(m_big->get_str());
        }
        return std::hash<std::int64_t>{}(m_num) * 1000003u ^ std::hash<std::int64_t>{}(m_den);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rat &r)
    {
        return os << r.to_string();
    }

private:
    static std::uint64_t uabs(std::int64_t v) noexcept
    {
        return v < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    }
    static u128 uabs128(i128 v) noexcept
    {
        return v < 0 ? static_cast<u128>(0) - static_cast<u128>(v) : static_cast<u128>(v);
    }
    static std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) noexcept
    {
        return std::gcd(a, b);
    }
    static u128 gcd128(u128 a, u128 b) noexcept
    {
        while (b != 0) {
            const u128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static bool fits(i128 v) noexcept
    {
        return v > static_cast<i128>(std::numeric_limits<std::int64_t>::min())
               && v <= static_cast<i128>(std::numeric_limits<std::int64_t>::max());
    }
    static mpz_class to_mpz(i128 v)
    {
        const bool neg = v < 0;
        const u128 u = uabs128(v);
        mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
        mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    }

    void set_big(mpq_class q)
    {
        m_num = 0;
        m_den = 1;
        m_big = std::make_shared<const mpq_class>(std::move(q));
    }
    // q must be canonical.
    void assign_big(mpq_class q)
    {
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()
            && q.get_num() != std::numeric_limits<long>::min()) {
            m_num = q.get_num().get_si();
            m_den = q.get_den().get_si();
            m_big.reset();
        } else {
            set_big(std::move(q));
        }
    }
    // Already reduced, den > 0.
    void assign128_reduced(i128 num, i128 den)
    {
        if (fits(num) && fits(den)) {
            m_num = static_cast<std::int64_t>(num);
            m_den = static_cast<std::int64_t>(den);
            m_big.reset();
        } else {
            set_big(mpq_class(to_mpz(num), to_mpz(den)));
        }
    }
    // Sum of fractions whose denominators shared the factor g (Knuth 4.5.1).
    void assign128_reduce(i128 num, i128 den, std::uint64_t g)
    {
        if (num == 0) {
            m_num = 0;
            m_den = 1;
            m_big.reset();
            return;
        }
        if (g != 1) {
            const u128 g2 = gcd128(uabs128(num), static_cast<u128>(g));
            if (g2 != 1) {
                num /= static_cast<i128>(g2);
                den /= static_cast<i128>(g2);
            }
        }
        assign128_reduced(num, den);
    }
    void assign128(i128 num, i128 den)
    {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (num == 0) {
            m_num = 0;
            m_den = 1;
            m_big.reset();
            return;
        }
        const u128 g = gcd128(uabs128(num), static_cast<u128>(den));
        assign128_reduced(num / static_cast<i128>(g), den / static_cast<i128>(g));
    }

    std::int64_t m_num = 0;
    std::int64_t m_den = 1;
    std::shared_ptr<const mpq_class> m_big;
};

inline Rat abs(const Rat &r)
{
    return r.sign() < 0 ? -r : r;
}

inline Rat pow(const Rat &base, unsigned e)
{
    Rat r(1), b(base);
    while (e != 0) {
        if (e & 1u) {
            r *= b;
        }
        e >>= 1;
        if (e != 0) {
            b *= b;
        }
    }
    return r;
}

} // namespace morin

template <>
struct std::hash<morin::Rat> {
    std::size_t operator()(const morin::Rat &r) const
    {
        return r.hash();
    }
};

#endif
