#ifndef MORIN_MONOMIAL_HPP
#define MORIN_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <morin/errors.hpp>

namespace morin
{

// Exponent vector packed into two 64-bit words, one byte per variable.
//
// Exponents of a product are the bytewise sum of the packed words, which is
// carry-free as long as every exponent sum stays below 256. Jets never form
// products whose total degree exceeds twice their order, so this holds for
// all truncation orders below 128.
class Monomial
{
public:
    static constexpr int max_vars = 16;
    static constexpr int max_degree = 127;

    Monomial() = default;

    explicit Monomial(std::span<const int> exps)
    {
        if (exps.size() > static_cast<std::size_t>(max_vars)) {
            throw DimensionError("Monomial: at most 16 variables are supported");
        }
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0 || exps[i] > max_degree) {
                throw DimensionError("Monomial: exponent out of range");
            }
            set(static_cast<int>(i), exps[i]);
        }
    }
    Monomial(std::initializer_list<int> exps) : Monomial(std::span<const int>(exps.begin(), exps.size())) {}

    static Monomial variable(int k)
    {
        Monomial m;
        m.set(k, 1);
        return m;
    }

    int operator[](int k) const noexcept
    {
        return static_cast<int>((m_w[k >> 3] >> ((k & 7) * 8)) & 0xffu);
    }

    void set(int k, int e) noexcept
    {
        const int s = (k & 7) * 8;
        auto &w = m_w[k >> 3];
        w = (w & ~(std::uint64_t{0xff} << s)) | (static_cast<std::uint64_t>(e) << s);
    }

    int degree() const noexcept
    {
        constexpr std::uint64_t ones = 0x0101010101010101ull;
        return static_cast<int>(((m_w[0] * ones) >> 56) + ((m_w[1] * ones) >> 56));
    }

    bool is_constant() const noexcept
    {
        return m_w[0] == 0 && m_w[1] == 0;
    }

    // Highest-indexed variable with a positive exponent, or -1.
    int last_variable() const noexcept
    {
        if (m_w[1] != 0) {
            return 8 + (63 - std::countl_zero(m_w[1])) / 8;
        }
        if (m_w[0] != 0) {
            return (63 - std::countl_zero(m_w[0])) / 8;
        }
        return -1;
    }

    std::vector<int> exponents(int nvars) const
    {
        std::vector<int> e(static_cast<std::size_t>(nvars));
        for (int i = 0; i < nvars; ++i) {
            e[static_cast<std::size_t>(i)] = (*this)[i];
        }
        return e;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b) noexcept
    {
        Monomial r;
        r.m_w[0] = a.m_w[0] + b.m_w[0];
        r.m_w[1] = a.m_w[1] + b.m_w[1];
        return r;
    }

    friend bool operator==(const Monomial &, const Monomial &) = default;

    // Graded order: lower total degree first; within a degree, larger
    // exponent of x1 first, then x2, and so on.
    friend bool graded_less(const Monomial &a, const Monomial &b) noexcept
    {
        const int da = a.degree(), db = b.degree();
        if (da != db) {
            return da < db;
        }
        const auto a0 = __builtin_bswap64(a.m_w[0]), b0 = __builtin_bswap64(b.m_w[0]);
        if (a0 != b0) {
            return a0 > b0;
        }
        return __builtin_bswap64(a.m_w[1]) > __builtin_bswap64(b.m_w[1]);
    }

    std::size_t hash() const noexcept
    {
        return static_cast<std::size_t>(m_w[0] * 0x9e3779b97f4a7c15ull ^ (m_w[1] + 0x632be59bd9b4e019ull) * 0xbf58476d1ce4e5b9ull);
    }

private:
    std::array<std::uint64_t, 2> m_w{};
};

// Position of a monomial in the graded order among all monomials of degree
// <= order in nvars variables. count(k, s) = C(s + k, k) is the number of
// monomials of degree <= s in k variables, saturated at limit.
class GradedIndex
{
public:
    GradedIndex(int nvars, int order, std::uint64_t limit) : m_n(nvars), m_ord(order)
    {
        m_count.assign(static_cast<std::size_t>((nvars + 1) * (order + 1)), 1);
        for (int k = 1; k <= nvars; ++k) {
            for (int s = 1; s <= order; ++s) {
                m_count[at(k, s)] = std::min(limit + 1, m_count[at(k - 1, s)] + m_count[at(k, s - 1)]);
            }
        }
    }

    std::uint64_t size() const noexcept
    {
        return count(m_n, m_ord);
    }

    // Requires degree == m.degree() <= order and size() within the limit.
    std::size_t rank(const Monomial &m, int degree) const noexcept
    {
        std::uint64_t r = count(m_n, degree - 1);
        int rem = degree;
        for (int i = 0; i + 1 < m_n && rem > 0; ++i) {
            const int e = m[i];
            r += count(m_n - 1 - i, rem - e - 1);
            rem -= e;
        }
        return static_cast<std::size_t>(r);
    }

private:
    std::size_t at(int k, int s) const noexcept
    {
        return static_cast<std::size_t>(k * (m_ord + 1) + s);
    }
    std::uint64_t count(int k, int s) const noexcept
    {
        return s < 0 ? 0 : m_count[at(k, s)];
    }

    int m_n;
    int m_ord;
    std::vector<std::uint64_t> m_count;
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const noexcept
    {
        return m.hash();
    }
};

struct GradedLess {
    bool operator()(const Monomial &a, const Monomial &b) const noexcept
    {
        return graded_less(a, b);
    }
};

} // namespace morin

#endif
