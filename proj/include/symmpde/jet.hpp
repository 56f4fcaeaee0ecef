#ifndef SYMMPDE_JET_HPP
#define SYMMPDE_JET_HPP

#include <atomic>
#include <map>
#include <optional>

#include "calculus.hpp"

namespace symmpde
{

enum class direction { x, t };

inline multi_index shifted(multi_index j, direction d)
{
    (d == direction::x ? j.x : j.t) += 1;
    return j;
}

namespace detail
{

inline std::atomic<int> &jet_cap_storage()
{
    static std::atomic<int> cap{5};
    return cap;
}

} // namespace detail

/// Highest jet order a total derivative may produce.
inline int jet_cap()
{
    return detail::jet_cap_storage().load();
}

inline void set_jet_cap(int cap)
{
    detail::jet_cap_storage().store(cap);
}

/// Point vector field xi d/dx + tau d/dt + eta d/du.
struct vector_field {
    expr xi;
    expr tau;
    expr eta;
};

inline bool operator==(const vector_field &a, const vector_field &b)
{
    return a.xi == b.xi && a.tau == b.tau && a.eta == b.eta;
}

inline vector_field operator+(const vector_field &a, const vector_field &b)
{
    return {a.xi + b.xi, a.tau + b.tau, a.eta + b.eta};
}

inline vector_field operator-(const vector_field &a, const vector_field &b)
{
    return {a.xi - b.xi, a.tau - b.tau, a.eta - b.eta};
}

inline vector_field operator*(const expr &c, const vector_field &v)
{
    return {c * v.xi, c * v.tau, c * v.eta};
}

inline bool is_zero_field(const vector_field &v)
{
    return v.xi.is_zero_constant() && v.tau.is_zero_constant() && v.eta.is_zero_constant();
}

/// Total derivative D_x or D_t on jet space.
class total_derivative_operator
{
public:
    explicit total_derivative_operator(direction d, int cap = jet_cap())
        : m_derivation(rule(d, cap))
    {
    }

    rational_function operator()(const rational_function &r)
    {
        return m_derivation.apply(r);
    }

    expr operator()(const expr &e)
    {
        return from_rational(m_derivation.apply(to_rational(e)));
    }

private:
    derivation m_derivation;

    static derivation::leaf_rule rule(direction d, int cap)
    {
        const expr self = raw::symbol(d == direction::x ? "x" : "t", symbol_role::independent);
        return [self, d, cap](const expr &a) -> std::optional<rational_function> {
            if (a.kind() == node_kind::jet) {
                const multi_index j = shifted(a->jet, d);
                if (j.order() > cap) {
                    throw jet_order_error(j.order(), cap);
                }
                return rational_function::atom(raw::jet(j));
            }
            if (a.kind() == node_kind::symbol) {
                return a == self ? rational_function::constant(1) : rational_function{};
            }
            return std::nullopt;
        };
    }
};

inline expr total_derivative(const expr &e, direction d, int cap = jet_cap())
{
    return total_derivative_operator(d, cap)(e);
}

/// Q = eta - xi u_x - tau u_t.
inline expr characteristic(const vector_field &v)
{
    return v.eta - v.xi * jet(1, 0) - v.tau * jet(0, 1);
}

/// Prolongation coefficients of one field, sharing D_J Q across multi-indices.
class prolongation
{
public:
    explicit prolongation(vector_field v, int cap = jet_cap())
        : m_field(std::move(v)), m_dx(direction::x, cap), m_dt(direction::t, cap)
    {
        m_xi = to_rational(m_field.xi);
        m_tau = to_rational(m_field.tau);
        m_dq.emplace(multi_index{}, to_rational(characteristic(m_field)));
    }

    const vector_field &field() const noexcept
    {
        return m_field;
    }

    /// eta^J = D_J Q + xi u_{J,x} + tau u_{J,t}.
    rational_function coefficient(multi_index j)
    {
        if (j.order() == 0) {
            return to_rational(m_field.eta);
        }
        return d_q(j) + m_xi * rational_function::atom(jet(shifted(j, direction::x))) +
               m_tau * rational_function::atom(jet(shifted(j, direction::t)));
    }

    expr coefficient_expr(multi_index j)
    {
        return from_rational(coefficient(j));
    }

    /// D_J Q.
    const rational_function &d_q(multi_index j)
    {
        if (auto it = m_dq.find(j); it != m_dq.end()) {
            return it->second;
        }
        rational_function r;
        if (j.x > 0) {
            r = m_dx(d_q({j.x - 1, j.t}));
        } else {
            r = m_dt(d_q({j.x, j.t - 1}));
        }
        return m_dq.emplace(j, std::move(r)).first->second;
    }

private:
    vector_field m_field;
    total_derivative_operator m_dx;
    total_derivative_operator m_dt;
    rational_function m_xi;
    rational_function m_tau;
    std::map<multi_index, rational_function> m_dq;
};

inline expr prolong_coefficient(const vector_field &v, multi_index j, int cap = jet_cap())
{
    return prolongation(v, cap).coefficient_expr(j);
}

/// The same coefficients by the recursion
/// eta^{J+i} = D_i eta^J - (D_i xi) u_{J+x} - (D_i tau) u_{J+t}.
inline expr prolong_coefficient_recursive(const vector_field &v, multi_index j, int cap = jet_cap())
{
    total_derivative_operator dx(direction::x, cap);
    total_derivative_operator dt(direction::t, cap);
    const rational_function xi = to_rational(v.xi);
    const rational_function tau = to_rational(v.tau);
    rational_function c = to_rational(v.eta);
    multi_index at{};
    auto step = [&](direction d) {
        auto &op = d == direction::x ? dx : dt;
        c = op(c) - op(xi) * rational_function::atom(jet(shifted(at, direction::x))) -
            op(tau) * rational_function::atom(jet(shifted(at, direction::t)));
        at = shifted(at, d);
    };
    for (int i = 0; i < j.t; ++i) {
        step(direction::t);
    }
    for (int i = 0; i < j.x; ++i) {
        step(direction::x);
    }
    return from_rational(c);
}

} // namespace symmpde

#endif
