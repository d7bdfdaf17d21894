#ifndef MORIN_ERRORS_HPP
#define MORIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace morin
{

// Operand shapes do not fit together (variable counts, orders, matrix sizes).
class DimensionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// The stored truncation order is too low to decide the requested quantity.
class TruncationError : public std::domain_error
{
public:
    TruncationError(const std::string &msg, int required_order)
        : std::domain_error(msg), m_required(required_order)
    {
    }
    int required_order() const noexcept
    {
        return m_required;
    }

private:
    int m_required;
};

class NotCorankOneError : public std::domain_error
{
public:
    NotCorankOneError(const std::string &msg, int corank) : std::domain_error(msg), m_corank(corank) {}
    int corank() const noexcept
    {
        return m_corank;
    }

private:
    int m_corank;
};

// A matrix (or the constant part of a jet matrix) that must be invertible is not.
class SingularError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// A map-germ component has a nonzero constant term.
class GermError : public std::invalid_argument
{
public:
    GermError(const std::string &msg, int component) : std::invalid_argument(msg), m_component(component) {}
    // 1-based.
    int component() const noexcept
    {
        return m_component;
    }

private:
    int m_component;
};

class ParityError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A director frame violates one of its defining identities.
class FrameError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class NotApplicableError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class NoWitnessError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string &msg, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          m_line(line), m_column(column)
    {
    }
    int line() const noexcept
    {
        return m_line;
    }
    int column() const noexcept
    {
        return m_column;
    }

private:
    int m_line;
    int m_column;
};

} // namespace morin

#endif
