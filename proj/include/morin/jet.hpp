#ifndef MORIN_JET_HPP
#define MORIN_JET_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <morin/errors.hpp>
#include <morin/monomial.hpp>
#include <morin/rat.hpp>

namespace morin
{

// Truncated multivariate power series: the Taylor polynomial of total degree
// <= order() of a function-germ at the origin.
//
// Terms are kept sorted in graded order (see graded_less), with no stored
// zeros and no term above the truncation order. Binary operations return a
// jet whose order is the minimum of the operand orders, which is the largest
// order at which the result is still exact. Differentiation lowers the order
// by one (clamped at zero); an order-0 derivative carries no information and
// callers that differentiate repeatedly must check the order they need.
//
// Variable indices are 0-based.
template <typename C>
class BasicJet
{
public:
    using coeff_type = C;
    using term_type = std::pair<Monomial, C>;

    BasicJet() = default;
    BasicJet(int nvars, int order) : m_nvars(nvars), m_order(order)
    {
        if (nvars < 0 || nvars > Monomial::max_vars) {
            throw DimensionError("Jet: variable count must be in 0..16");
        }
        if (order < 0 || order > Monomial::max_degree) {
            throw DimensionError("Jet: truncation order must be in 0..127");
        }
    }

    static BasicJet constant(int nvars, int order, const C &c)
    {
        BasicJet j(nvars, order);
        if (!(c == C{})) {
            j.m_terms.emplace_back(Monomial{}, c);
        }
        return j;
    }
    static BasicJet variable(int nvars, int order, int k)
    {
        BasicJet j(nvars, order);
        j.check_var(k);
        if (order >= 1) {
            j.m_terms.emplace_back(Monomial::variable(k), C(1));
        }
        return j;
    }
    static BasicJet monomial(int nvars, int order, const Monomial &m, const C &c)
    {
        BasicJet j(nvars, order);
        j.check_monomial(m);
        if (m.degree() <= order && !(c == C{})) {
            j.m_terms.emplace_back(m, c);
        }
        return j;
    }
    // Merges duplicate monomials and drops zeros and terms above the order.
    static BasicJet from_terms(int nvars, int order, std::vector<term_type> terms)
    {
        BasicJet j(nvars, order);
        for (const auto &t : terms) {
            j.check_monomial(t.first);
        }
        std::sort(terms.begin(), terms.end(),
                  [](const term_type &a, const term_type &b) { return graded_less(a.first, b.first); });
        for (auto &t : terms) {
            if (t.first.degree() > order) {
                continue;
            }
            if (!j.m_terms.empty() && j.m_terms.back().first == t.first) {
                j.m_terms.back().second += t.second;
                if (j.m_terms.back().second == C{}) {
                    j.m_terms.pop_back();
                }
            } else if (!(t.second == C{})) {
                j.m_terms.push_back(std::move(t));
            }
        }
        return j;
    }

    int num_vars() const noexcept
    {
        return m_nvars;
    }
    int order() const noexcept
    {
        return m_order;
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    const std::vector<term_type> &terms() const noexcept
    {
        return m_terms;
    }

    C coeff(const Monomial &m) const
    {
        auto it = std::lower_bound(m_terms.begin(), m_terms.end(), m,
                                   [](const term_type &t, const Monomial &k) { return graded_less(t.first, k); });
        if (it != m_terms.end() && it->first == m) {
            return it->second;
        }
        return C{};
    }
    // Value at the origin.
    C constant_term() const
    {
        if (!m_terms.empty() && m_terms.front().first.is_constant()) {
            return m_terms.front().second;
        }
        return C{};
    }
    // Partial derivative with respect to variable k at the origin.
    C linear_coeff(int k) const
    {
        check_var(k);
        return coeff(Monomial::variable(k));
    }
    int degree() const noexcept
    {
        return m_terms.empty() ? -1 : m_terms.back().first.degree();
    }

    BasicJet truncated(int order) const
    {
        if (order > m_order) {
            throw TruncationError("Jet: cannot raise the truncation order", order);
        }
        BasicJet r(m_nvars, order);
        for (const auto &t : m_terms) {
            if (t.first.degree() > order) {
                break;
            }
            r.m_terms.push_back(t);
        }
        return r;
    }

    BasicJet derive(int k) const
    {
        check_var(k);
        BasicJet r(m_nvars, m_order > 0 ? m_order - 1 : 0);
        for (const auto &t : m_terms) {
            const int e = t.first[k];
            if (e == 0) {
                continue;
            }
            Monomial m = t.first;
            m.set(k, e - 1);
            r.m_terms.emplace_back(m, t.second * C(e));
        }
        // Lowering one exponent is translation-invariant for a graded
        // monomial order, so the terms are still sorted.
        return r;
    }

    BasicJet operator-() const
    {
        BasicJet r(*this);
        for (auto &t : r.m_terms) {
            t.second = -t.second;
        }
        return r;
    }

    friend BasicJet operator+(const BasicJet &a, const BasicJet &b)
    {
        return merge(a, b, false);
    }
    friend BasicJet operator-(const BasicJet &a, const BasicJet &b)
    {
        return merge(a, b, true);
    }

    friend BasicJet operator*(const C &c, const BasicJet &a)
    {
        BasicJet r(a.m_nvars, a.m_order);
        if (c == C{}) {
            return r;
        }
        r.m_terms.reserve(a.m_terms.size());
        for (const auto &t : a.m_terms) {
            r.m_terms.emplace_back(t.first, c * t.second);
        }
        return r;
    }
    friend BasicJet operator*(const BasicJet &a, const C &c)
    {
        return c * a;
    }

    friend BasicJet operator*(const BasicJet &a, const BasicJet &b)
    {
        check_same_vars(a, b);
        const int ord = std::min(a.m_order, b.m_order);
        BasicJet r(a.m_nvars, ord);
        if (a.m_terms.empty() || b.m_terms.empty()) {
            return r;
        }
        if (a.m_terms.size() == 1) {
            return shift(b, a.m_terms.front(), ord);
        }
        if (b.m_terms.size() == 1) {
            return shift(a, b.m_terms.front(), ord);
        }
        std::vector<int> bdeg(b.m_terms.size());
        for (std::size_t j = 0; j < b.m_terms.size(); ++j) {
            bdeg[j] = b.m_terms[j].first.degree();
        }
        const GradedIndex index(a.m_nvars, ord, dense_limit);
        if (index.size() <= dense_limit && a.m_terms.size() * b.m_terms.size() * 4 >= index.size()) {
            return dense_product(a, b, bdeg, index, r);
        }
        std::unordered_map<Monomial, C, MonomialHash> acc;
        acc.reserve(a.m_terms.size() * 4 + b.m_terms.size() * 4);
        for (const auto &ta : a.m_terms) {
            const int da = ta.first.degree();
            if (da + bdeg[0] > ord) {
                break;
            }
            for (std::size_t j = 0; j < b.m_terms.size(); ++j) {
                if (da + bdeg[j] > ord) {
                    break;
                }
                const auto &tb = b.m_terms[j];
                auto [it, inserted] = acc.try_emplace(ta.first * tb.first, ta.second * tb.second);
                if (!inserted) {
                    it->second += ta.second * tb.second;
                }
            }
        }
        r.m_terms.reserve(acc.size());
        for (auto &kv : acc) {
            if (!(kv.second == C{})) {
                r.m_terms.emplace_back(kv.first, std::move(kv.second));
            }
        }
        std::sort(r.m_terms.begin(), r.m_terms.end(),
                  [](const term_type &x, const term_type &y) { return graded_less(x.first, y.first); });
        return r;
    }

    BasicJet &operator+=(const BasicJet &o)
    {
        return *this = *this + o;
    }
    BasicJet &operator-=(const BasicJet &o)
    {
        return *this = *this - o;
    }
    BasicJet &operator*=(const BasicJet &o)
    {
        return *this = *this * o;
    }

    friend bool operator==(const BasicJet &a, const BasicJet &b)
    {
        return a.m_nvars == b.m_nvars && a.m_order == b.m_order && a.m_terms == b.m_terms;
    }

    // Equality of the common truncation.
    friend bool equal_to_order(const BasicJet &a, const BasicJet &b, int order)
    {
        check_same_vars(a, b);
        return (a - b).truncated_view_is_zero(order);
    }

    std::string to_string(const std::vector<std::string> &names = {}) const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto &[m, c] : m_terms) {
            const bool neg = c < C{};
            const C mag = neg ? -c : c;
            if (first) {
                out += neg ? "-" : "";
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            std::string mono;
            for (int k = 0; k < m_nvars; ++k) {
                const int e = m[k];
                if (e == 0) {
                    continue;
                }
                if (!mono.empty()) {
                    mono += "*";
                }
                mono += names.empty() ? "x" + std::to_string(k + 1) : names[static_cast<std::size_t>(k)];
                if (e > 1) {
                    mono += "^" + std::to_string(e);
                }
            }
            if (mono.empty()) {
                out += coeff_string(mag);
            } else if (mag == C(1)) {
                out += mono;
            } else {
                out += coeff_string(mag) + "*" + mono;
            }
        }
        return out;
    }

    friend std::ostream &operator<<(std::ostream &os, const BasicJet &j)
    {
        return os << j.to_string();
    }

private:
    static std::string coeff_string(const C &c)
    {
        if constexpr (requires { c.to_string(); }) {
            return c.to_string();
        } else {
            return std::to_string(c);
        }
    }

    bool truncated_view_is_zero(int order) const
    {
        return m_terms.empty() || m_terms.front().first.degree() > order;
    }

    void check_var(int k) const
    {
        if (k < 0 || k >= m_nvars) {
            throw DimensionError("Jet: variable index " + std::to_string(k) + " out of range for "
                                 + std::to_string(m_nvars) + " variables");
        }
    }
    void check_monomial(const Monomial &m) const
    {
        if (m.last_variable() >= m_nvars) {
            throw DimensionError("Jet: monomial uses a variable outside the jet's variable count");
        }
    }
    static void check_same_vars(const BasicJet &a, const BasicJet &b)
    {
        if (a.m_nvars != b.m_nvars) {
            throw DimensionError("Jet: operands have " + std::to_string(a.m_nvars) + " and "
                                 + std::to_string(b.m_nvars) + " variables");
        }
    }

    static BasicJet merge(const BasicJet &a, const BasicJet &b, bool subtract)
    {
        check_same_vars(a, b);
        const int ord = std::min(a.m_order, b.m_order);
        BasicJet r(a.m_nvars, ord);
        r.m_terms.reserve(a.m_terms.size() + b.m_terms.size());
        auto ia = a.m_terms.begin(), ib = b.m_terms.begin();
        const auto ea = a.m_terms.end(), eb = b.m_terms.end();
        while (ia != ea || ib != eb) {
            if (ib == eb || (ia != ea && graded_less(ia->first, ib->first))) {
                if (ia->first.degree() > ord) {
                    ia = ea;
                    continue;
                }
                r.m_terms.push_back(*ia++);
            } else if (ia == ea || graded_less(ib->first, ia->first)) {
                if (ib->first.degree() > ord) {
                    ib = eb;
                    continue;
                }
                r.m_terms.emplace_back(ib->first, subtract ? -ib->second : ib->second);
                ++ib;
            } else {
                if (ia->first.degree() > ord) {
                    ia = ea;
                    ib = eb;
                    continue;
                }
                C c = subtract ? ia->second - ib->second : ia->second + ib->second;
                if (!(c == C{})) {
                    r.m_terms.emplace_back(ia->first, std::move(c));
                }
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    // Product with a single term; multiplying by a monomial preserves the
    // graded order.
    static BasicJet shift(const BasicJet &a, const term_type &t, int ord)
    {
        BasicJet r(a.m_nvars, ord);
        const int dt = t.first.degree();
        for (const auto &ta : a.m_terms) {
            if (ta.first.degree() + dt > ord) {
                break;
            }
            r.m_terms.emplace_back(ta.first * t.first, ta.second * t.second);
        }
        return r;
    }

    // Products whose output space has at most this many monomials accumulate
    // into an array indexed by graded rank instead of a hash map.
    static constexpr std::uint64_t dense_limit = 1u << 16;

    static BasicJet dense_product(const BasicJet &a, const BasicJet &b, const std::vector<int> &bdeg,
                                 const GradedIndex &index, BasicJet &r)
    {
        const int ord = r.m_order;
        const auto n = static_cast<std::size_t>(index.size());
        std::vector<C> acc(n);
        std::vector<Monomial> mono(n);
        std::vector<unsigned char> hit(n, 0);
        for (const auto &ta : a.m_terms) {
            const int da = ta.first.degree();
            if (da + bdeg[0] > ord) {
                break;
            }
            for (std::size_t j = 0; j < b.m_terms.size(); ++j) {
                if (da + bdeg[j] > ord) {
                    break;
                }
                const auto &tb = b.m_terms[j];
                const Monomial m = ta.first * tb.first;
                const std::size_t k = index.rank(m, da + bdeg[j]);
                if (hit[k]) {
                    acc[k] += ta.second * tb.second;
                } else {
                    acc[k] = ta.second * tb.second;
                    mono[k] = m;
                    hit[k] = 1;
                }
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (hit[k] && !(acc[k] == C{})) {
                r.m_terms.emplace_back(mono[k], std::move(acc[k]));
            }
        }
        return std::move(r);
    }

    int m_nvars = 0;
    int m_order = 0;
    std::vector<term_type> m_terms;
};

using Jet = BasicJet<Rat>;

// Truncated product with the strict operand contract: both jets must share
// their variable count and truncation order.
template <typename C>
BasicJet<C> jet_mul(const BasicJet<C> &a, const BasicJet<C> &b)
{
    if (a.num_vars() != b.num_vars() || a.order() != b.order()) {
        throw DimensionError("jet_mul: operands differ in variable count or order");
    }
    return a * b;
}

// Formal partial derivative; k is 1-based.
template <typename C>
BasicJet<C> jet_derive(const BasicJet<C> &a, int k)
{
    if (k < 1 || k > a.num_vars()) {
        throw DimensionError("jet_derive: variable index out of range");
    }
    return a.derive(k - 1);
}

template <typename C>
BasicJet<C> pow(const BasicJet<C> &a, int e)
{
    auto r = BasicJet<C>::constant(a.num_vars(), a.order(), C(1));
    for (int i = 0; i < e; ++i) {
        r = r * a;
    }
    return r;
}

} // namespace morin

#endif
