#ifndef SYMMPDE_ERROR_HPP
#define SYMMPDE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symmpde
{

/// Base class of every exception thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. Carries the byte offset of the offending token.
class parse_error : public error
{
public:
    parse_error(const std::string &msg, std::size_t offset)
        : error(msg + " at offset " + std::to_string(offset)), m_offset(offset)
    {
    }
    std::size_t offset() const noexcept
    {
        return m_offset;
    }

private:
    std::size_t m_offset;
};

class unknown_kernel_error : public parse_error
{
public:
    unknown_kernel_error(const std::string &name, std::size_t offset)
        : parse_error("unknown kernel '" + name + "'", offset), m_name(name)
    {
    }
    const std::string &name() const noexcept
    {
        return m_name;
    }

private:
    std::string m_name;
};

/// Division by zero (or by a value within the caller's tolerance of zero)
/// during numeric evaluation, or a pole of an elliptic kernel.
class singular_point_error : public error
{
public:
    explicit singular_point_error(const std::string &subexpr, const std::string &detail = "")
        : error("singular point in '" + subexpr + "'" + (detail.empty() ? "" : ": " + detail)), m_subexpr(subexpr)
    {
    }
    const std::string &subexpression() const noexcept
    {
        return m_subexpr;
    }

private:
    std::string m_subexpr;
};

class unbound_symbol_error : public error
{
public:
    explicit unbound_symbol_error(const std::string &name) : error("unbound symbol '" + name + "'") {}
};

class jet_order_error : public error
{
public:
    jet_order_error(int order, int cap)
        : error("jet order " + std::to_string(order) + " exceeds cap " + std::to_string(cap))
    {
    }
};

/// Operation outside the implemented algebra, e.g. differentiating an
/// elliptic kernel with respect to its invariants.
class unsupported_error : public error
{
public:
    using error::error;
};

/// A caller-supplied value outside the accepted domain: unknown catalog ids,
/// empty grids, malformed bindings.
class invalid_argument_error : public error
{
public:
    using error::error;
};

} // namespace symmpde

#endif
