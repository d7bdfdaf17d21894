#ifndef MORIN_MATRIX_HPP
#define MORIN_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <morin/errors.hpp>
#include <morin/rat.hpp>

namespace morin
{

// Dense row-major matrix over an exact field.
template <typename F>
class Matrix
{
public:
    using value_type = F;

    Matrix() = default;
    Matrix(int rows, int cols) : m_rows(rows), m_cols(cols), m_data(static_cast<std::size_t>(rows * cols))
    {
        if (rows < 0 || cols < 0) {
            throw DimensionError("Matrix: negative dimension");
        }
    }
    Matrix(std::initializer_list<std::initializer_list<F>> rows)
    {
        m_rows = static_cast<int>(rows.size());
        m_cols = m_rows == 0 ? 0 : static_cast<int>(rows.begin()->size());
        m_data.reserve(static_cast<std::size_t>(m_rows * m_cols));
        for (const auto &r : rows) {
            if (static_cast<int>(r.size()) != m_cols) {
                throw DimensionError("Matrix: ragged initializer");
            }
            m_data.insert(m_data.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = F(1);
        }
        return m;
    }

    int rows() const noexcept
    {
        return m_rows;
    }
    int cols() const noexcept
    {
        return m_cols;
    }

    F &operator()(int i, int j)
    {
        return m_data[static_cast<std::size_t>(i * m_cols + j)];
    }
    const F &operator()(int i, int j) const
    {
        return m_data[static_cast<std::size_t>(i * m_cols + j)];
    }

    std::vector<F> row(int i) const
    {
        return {m_data.begin() + i * m_cols, m_data.begin() + (i + 1) * m_cols};
    }
    std::vector<F> col(int j) const
    {
        std::vector<F> c;
        c.reserve(static_cast<std::size_t>(m_rows));
        for (int i = 0; i < m_rows; ++i) {
            c.push_back((*this)(i, j));
        }
        return c;
    }

    Matrix transpose() const
    {
        Matrix t(m_cols, m_rows);
        for (int i = 0; i < m_rows; ++i) {
            for (int j = 0; j < m_cols; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    Matrix submatrix(const std::vector<int> &rs, const std::vector<int> &cs) const
    {
        Matrix s(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
        for (std::size_t i = 0; i < rs.size(); ++i) {
            for (std::size_t j = 0; j < cs.size(); ++j) {
                s(static_cast<int>(i), static_cast<int>(j)) = (*this)(rs[i], cs[j]);
            }
        }
        return s;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b)
    {
        if (a.m_cols != b.m_rows) {
            throw DimensionError("Matrix: product of incompatible shapes");
        }
        Matrix c(a.m_rows, b.m_cols);
        for (int i = 0; i < a.m_rows; ++i) {
            for (int k = 0; k < a.m_cols; ++k) {
                const F &aik = a(i, k);
                if (aik == F{}) {
                    continue;
                }
                for (int j = 0; j < b.m_cols; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }
    friend Matrix operator*(const F &s, const Matrix &a)
    {
        Matrix r(a);
        for (auto &x : r.m_data) {
            x = s * x;
        }
        return r;
    }
    friend Matrix operator+(const Matrix &a, const Matrix &b)
    {
        a.check_same_shape(b);
        Matrix r(a);
        for (std::size_t i = 0; i < r.m_data.size(); ++i) {
            r.m_data[i] += b.m_data[i];
        }
        return r;
    }
    friend Matrix operator-(const Matrix &a, const Matrix &b)
    {
        a.check_same_shape(b);
        Matrix r(a);
        for (std::size_t i = 0; i < r.m_data.size(); ++i) {
            r.m_data[i] -= b.m_data[i];
        }
        return r;
    }

    friend bool operator==(const Matrix &, const Matrix &) = default;

    friend std::ostream &operator<<(std::ostream &os, const Matrix &m)
    {
        os << '[';
        for (int i = 0; i < m.m_rows; ++i) {
            os << (i ? ", [" : "[");
            for (int j = 0; j < m.m_cols; ++j) {
                os << (j ? ", " : "") << m(i, j);
            }
            os << ']';
        }
        return os << ']';
    }

private:
    void check_same_shape(const Matrix &b) const
    {
        if (m_rows != b.m_rows || m_cols != b.m_cols) {
            throw DimensionError("Matrix: shapes differ");
        }
    }

    int m_rows = 0;
    int m_cols = 0;
    std::vector<F> m_data;
};

using RatMatrix = Matrix<Rat>;

namespace detail
{

// Scale each row of a rational matrix by the lcm of its denominators so the
// fraction-free elimination below runs on integers. Row scaling changes the
// determinant by the product of the scale factors, returned for undoing.
template <typename F>
F clear_denominators(Matrix<F> &m)
{
    F scale(1);
    if constexpr (std::is_same_v<F, Rat>) {
        for (int i = 0; i < m.rows(); ++i) {
            mpz_class l(1);
            for (int j = 0; j < m.cols(); ++j) {
                mpz_class d = m(i, j).denominator();
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
            }
            if (l != 1) {
                const Rat s{mpq_class(l)};
                for (int j = 0; j < m.cols(); ++j) {
                    m(i, j) = m(i, j) * s;
                }
                scale = scale * s;
            }
        }
    }
    return scale;
}

// Bareiss fraction-free elimination in place. Returns the pivot columns and
// the sign of the row permutation used.
template <typename F>
std::pair<std::vector<int>, int> bareiss(Matrix<F> &m)
{
    std::vector<int> pivots;
    int sign = 1;
    F prev(1);
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = r;
        while (p < m.rows() && m(p, c) == F{}) {
            ++p;
        }
        if (p == m.rows()) {
            continue;
        }
        if (p != r) {
            for (int j = 0; j < m.cols(); ++j) {
                std::swap(m(p, j), m(r, j));
            }
            sign = -sign;
        }
        for (int i = r + 1; i < m.rows(); ++i) {
            for (int j = c + 1; j < m.cols(); ++j) {
                m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            }
            m(i, c) = F{};
        }
        prev = m(r, c);
        pivots.push_back(c);
        ++r;
    }
    return {pivots, sign};
}

} // namespace detail

template <typename F>
int rank(Matrix<F> m)
{
    detail::clear_denominators(m);
    return static_cast<int>(detail::bareiss(m).first.size());
}

template <typename F>
F det(Matrix<F> m)
{
    if (m.rows() != m.cols()) {
        throw DimensionError("det: matrix is not square");
    }
    if (m.rows() == 0) {
        return F(1);
    }
    const F scale = detail::clear_denominators(m);
    const auto [pivots, sign] = detail::bareiss(m);
    if (static_cast<int>(pivots.size()) < m.rows()) {
        return F{};
    }
    // After Bareiss the last pivot is the determinant of the scaled matrix.
    F d = m(m.rows() - 1, m.cols() - 1);
    if (sign < 0) {
        d = -d;
    }
    return d / scale;
}

// Columns of the first maximal linearly independent set, scanning left to right.
template <typename F>
std::vector<int> pivot_columns(Matrix<F> m)
{
    detail::clear_denominators(m);
    return detail::bareiss(m).first;
}

// Rows of the first maximal linearly independent set, scanning top to bottom.
template <typename F>
std::vector<int> pivot_rows(const Matrix<F> &m)
{
    return pivot_columns(m.transpose());
}

// Gauss-Jordan solve of A X = B for square invertible A.
template <typename F>
Matrix<F> solve(const Matrix<F> &a, const Matrix<F> &b)
{
    if (a.rows() != a.cols() || b.rows() != a.rows()) {
        throw DimensionError("solve: incompatible shapes");
    }
    const int n = a.rows();
    Matrix<F> m(a), x(b);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && m(p, c) == F{}) {
            ++p;
        }
        if (p == n) {
            throw SingularError("solve: matrix is singular");
        }
        if (p != c) {
            for (int j = 0; j < n; ++j) {
                std::swap(m(p, j), m(c, j));
            }
            for (int j = 0; j < x.cols(); ++j) {
                std::swap(x(p, j), x(c, j));
            }
        }
        const F inv = F(1) / m(c, c);
        for (int j = 0; j < n; ++j) {
            m(c, j) = m(c, j) * inv;
        }
        for (int j = 0; j < x.cols(); ++j) {
            x(c, j) = x(c, j) * inv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || m(i, c) == F{}) {
                continue;
            }
            const F f = m(i, c);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(c, j);
            }
            for (int j = 0; j < x.cols(); ++j) {
                x(i, j) -= f * x(c, j);
            }
        }
    }
    return x;
}

template <typename F>
Matrix<F> inverse(const Matrix<F> &a)
{
    return solve(a, Matrix<F>::identity(a.rows()));
}

// Some solution of A x = b for a consistent, possibly non-square system, or
// nullopt when the system is inconsistent.
template <typename F>
std::optional<std::vector<F>> solve_consistent(const Matrix<F> &a, const std::vector<F> &b)
{
    if (static_cast<int>(b.size()) != a.rows()) {
        throw DimensionError("solve_consistent: right-hand side has the wrong length");
    }
    const int rows = a.rows(), cols = a.cols();
    Matrix<F> m(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = a(i, j);
        }
        m(i, cols) = b[static_cast<std::size_t>(i)];
    }
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && m(p, c) == F{}) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        for (int j = 0; j <= cols; ++j) {
            std::swap(m(p, j), m(r, j));
        }
        const F inv = F(1) / m(r, c);
        for (int j = 0; j <= cols; ++j) {
            m(r, j) = m(r, j) * inv;
        }
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == F{}) {
                continue;
            }
            const F f = m(i, c);
            for (int j = 0; j <= cols; ++j) {
                m(i, j) -= f * m(r, j);
            }
        }
        piv.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i) {
        if (!(m(i, cols) == F{})) {
            return std::nullopt;
        }
    }
    std::vector<F> x(static_cast<std::size_t>(cols));
    for (std::size_t k = 0; k < piv.size(); ++k) {
        x[static_cast<std::size_t>(piv[k])] = m(static_cast<int>(k), cols);
    }
    return x;
}

// Rows of a followed by rows of b.
template <typename F>
Matrix<F> vstack(const Matrix<F> &a, const Matrix<F> &b)
{
    if (a.cols() != b.cols()) {
        throw DimensionError("vstack: column counts differ");
    }
    Matrix<F> s(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            s(i, j) = a(i, j);
        }
    }
    for (int i = 0; i < b.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            s(a.rows() + i, j) = b(i, j);
        }
    }
    return s;
}

// Exact rank and determinant, named after the operations they implement.
inline int rat_rank(const RatMatrix &m)
{
    return rank(m);
}
inline Rat rat_det(const RatMatrix &m)
{
    return det(m);
}

} // namespace morin

#endif
