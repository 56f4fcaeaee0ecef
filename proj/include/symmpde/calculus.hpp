#ifndef SYMMPDE_CALCULUS_HPP
#define SYMMPDE_CALCULUS_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace symmpde
{

/// A derivation on canonical forms. Leaves (symbols, jet coordinates, or any
/// atom the rule claims) get their derivative from the rule; opaque functions
/// and kernels differentiate through their arguments by the chain rule:
///   exp' = exp, arctan'(w) = 1/(1+w^2), (b^(1/q))' = b^(1/q) b'/(q b),
///   wp' = wp_prime, wp_prime' = 6 wp^2 - g2/2, wzeta' = -wp.
class derivation
{
public:
    using leaf_rule = std::function<std::optional<rational_function>(const expr &)>;

    explicit derivation(leaf_rule rule) : m_rule(std::move(rule)) {}

    rational_function apply(const rational_function &r)
    {
        if (r.is_polynomial()) {
            return apply(r.num());
        }
        const rational_function dn = apply(r.num());
        const rational_function dd = apply(r.den());
        return (dn - r * dd) * rational_function::make(polynomial::constant(1), r.den(), false);
    }

    rational_function apply(const polynomial &p)
    {
        rational_sum sum;
        std::vector<term> direct;
        for (const auto &a : p.atoms()) {
            const rational_function &d = of_atom(a);
            if (d.is_zero()) {
                continue;
            }
            const polynomial part = p.partial(a);
            if (d.is_polynomial()) {
                const polynomial prod = part * d.num();
                direct.insert(direct.end(), prod.terms().begin(), prod.terms().end());
            } else {
                sum.add(rational_function(part) * d);
            }
        }
        sum.add_polynomial(polynomial::from_terms(std::move(direct)));
        return sum.result();
    }

    const rational_function &of_atom(const expr &a)
    {
        if (auto it = m_memo.find(a); it != m_memo.end()) {
            return it->second;
        }
        rational_function d = compute(a);
        return m_memo.emplace(a, std::move(d)).first->second;
    }

private:
    leaf_rule m_rule;
    std::map<expr, rational_function, expr_less> m_memo;

    rational_function compute(const expr &a)
    {
        if (auto r = m_rule(a)) {
            return *r;
        }
        const node &n = a.get();
        switch (n.kind) {
            case node_kind::symbol:
            case node_kind::jet:
                return rational_function{};
            case node_kind::function: {
                rational_sum s;
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    const rational_function da = apply(to_rational(n.children[i]));
                    if (da.is_zero()) {
                        continue;
                    }
                    std::vector<int> counts = n.counts;
                    ++counts[i];
                    s.add(rational_function::atom(raw::function(n.name, n.children, std::move(counts))) * da);
                }
                return s.result();
            }
            case node_kind::kernel:
                return kernel_derivative(a);
            default:
                throw unsupported_error("derivation applied to a non-atom");
        }
    }

    rational_function kernel_derivative(const expr &a)
    {
        const node &n = a.get();
        const rational_function arg = to_rational(n.children[0]);
        const rational_function darg = apply(arg);
        switch (n.tag) {
            case kernel_tag::exp:
                return rational_function::atom(a) * darg;
            case kernel_tag::arctan:
                return darg / (rational_function::constant(1) + arg * arg);
            case kernel_tag::root:
                return rational_function::atom(a) * darg / (rational_function::constant(n.degree) * arg);
            default:
                break;
        }
        const rational_function g2 = to_rational(n.children[1]);
        const rational_function g3 = to_rational(n.children[2]);
        if (!apply(g2).is_zero() || !apply(g3).is_zero()) {
            throw unsupported_error("derivative of a Weierstrass kernel with respect to its invariants");
        }
        if (darg.is_zero()) {
            return rational_function{};
        }
        const auto wp_atom = rational_function::atom(raw::kernel(kernel_tag::wp, n.children));
        switch (n.tag) {
            case kernel_tag::wp:
                return rational_function::atom(raw::kernel(kernel_tag::wp_prime, n.children)) * darg;
            case kernel_tag::wp_prime:
                return (rational_function::constant(6) * wp_atom * wp_atom -
                        g2 * rational_function::constant(rational(1, 2))) *
                       darg;
            default:
                return -wp_atom * darg;
        }
    }
};

/// Partial derivative with respect to an atom; distinct jet coordinates are independent.
inline rational_function diff(const rational_function &r, const expr &v)
{
    derivation d([&v](const expr &a) -> std::optional<rational_function> {
        if (a == v) {
            return rational_function::constant(1);
        }
        return std::nullopt;
    });
    return d.apply(r);
}

inline expr diff(const expr &e, const expr &v)
{
    if (!v.is_atom()) {
        throw unsupported_error("diff: variable must be a symbol or jet coordinate");
    }
    return from_rational(diff(to_rational(e), v));
}

inline expr diff(const expr &e, const expr &v, int times)
{
    rational_function r = to_rational(e);
    for (int i = 0; i < times; ++i) {
        r = diff(r, v);
    }
    return from_rational(r);
}

/// Simultaneous substitution of atoms and of opaque functions.
///
/// A function binding replaces name(args) and all of its derivatives: the
/// body, written in its parameters, is differentiated per the atom's counts
/// and then evaluated at the (substituted) arguments.
class substitution
{
public:
    struct function_binding {
        std::vector<expr> params;
        rational_function body;
    };

    substitution &bind(const expr &atom, const rational_function &value)
    {
        if (!atom.is_atom()) {
            throw unsupported_error("substitution target must be an atom");
        }
        m_atoms.insert_or_assign(atom, value);
        m_memo.clear();
        return *this;
    }
    substitution &bind(const expr &atom, const expr &value)
    {
        return bind(atom, to_rational(value));
    }
    substitution &bind_function(const std::string &name, std::vector<expr> params, const expr &body)
    {
        m_functions.insert_or_assign(name, function_binding{std::move(params), to_rational(body)});
        m_memo.clear();
        return *this;
    }

    rational_function apply(const rational_function &r)
    {
        if (r.is_polynomial()) {
            return apply(r.num());
        }
        return apply(r.num()) / apply(r.den());
    }

    expr apply(const expr &e)
    {
        return from_rational(apply(to_rational(e)));
    }

    rational_function apply(const polynomial &p)
    {
        std::vector<term> direct;
        rational_sum sum;
        for (const auto &t : p.terms()) {
            term base{monomial{}, t.coeff};
            polynomial poly_part = polynomial::constant(1);
            rational_function rf_part = rational_function::constant(1);
            bool has_rf = false;
            for (const auto &[a, e] : t.mono.factors) {
                const auto &[value, unchanged] = of_atom(a);
                if (unchanged) {
                    base.mono.factors.emplace_back(a, e);
                } else if (value.is_polynomial()) {
                    poly_part = poly_part * value.num().pow(static_cast<unsigned>(e));
                } else {
                    rf_part = rf_part * value.pow(e);
                    has_rf = true;
                }
            }
            const polynomial prod = poly_part.times_term(base);
            if (has_rf) {
                sum.add(rf_part * rational_function(prod));
            } else {
                direct.insert(direct.end(), prod.terms().begin(), prod.terms().end());
            }
        }
        sum.add_polynomial(polynomial::from_terms(std::move(direct)));
        return sum.result();
    }

private:
    std::map<expr, rational_function, expr_less> m_atoms;
    std::map<std::string, function_binding> m_functions;
    std::map<expr, std::pair<rational_function, bool>, expr_less> m_memo;

    const std::pair<rational_function, bool> &of_atom(const expr &a)
    {
        if (auto it = m_memo.find(a); it != m_memo.end()) {
            return it->second;
        }
        auto v = compute(a);
        return m_memo.emplace(a, std::move(v)).first->second;
    }

    std::pair<rational_function, bool> compute(const expr &a)
    {
        if (auto it = m_atoms.find(a); it != m_atoms.end()) {
            return {it->second, false};
        }
        const node &n = a.get();
        if (n.kind == node_kind::symbol || n.kind == node_kind::jet) {
            return {rational_function::atom(a), true};
        }
        std::vector<rational_function> args;
        bool changed = false;
        for (const auto &c : n.children) {
            const rational_function before = to_rational(c);
            rational_function after = apply(before);
            changed = changed || !(after == before);
            args.push_back(std::move(after));
        }
        if (n.kind == node_kind::function) {
            if (auto it = m_functions.find(n.name); it != m_functions.end()) {
                return {evaluate_binding(it->second, n.counts, args), false};
            }
            if (!changed) {
                return {rational_function::atom(a), true};
            }
            return {kernels::function(n.name, args, n.counts), false};
        }
        if (!changed) {
            return {rational_function::atom(a), true};
        }
        switch (n.tag) {
            case kernel_tag::exp:
                return {kernels::exp(args[0]), false};
            case kernel_tag::arctan:
                return {kernels::arctan(args[0]), false};
            case kernel_tag::root:
                return {kernels::root(args[0], n.degree), false};
            default:
                return {kernels::weierstrass(n.tag, args[0], args[1], args[2]), false};
        }
    }

    static rational_function evaluate_binding(const function_binding &b, const std::vector<int> &counts,
                                              const std::vector<rational_function> &args)
    {
        if (b.params.size() != args.size()) {
            throw unsupported_error("function binding arity mismatch");
        }
        rational_function body = b.body;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            for (int k = 0; k < counts[i]; ++k) {
                body = diff(body, b.params[i]);
            }
        }
        substitution inner;
        for (std::size_t i = 0; i < args.size(); ++i) {
            inner.bind(b.params[i], args[i]);
        }
        return inner.apply(body);
    }
};

/// substitute(e, {target -> value, ...}), simultaneous, normalized.
inline expr substitute(const expr &e, const std::vector<std::pair<expr, expr>> &bindings)
{
    substitution s;
    for (const auto &[k, v] : bindings) {
        s.bind(k, v);
    }
    return s.apply(e);
}

namespace detail
{

inline void collect_atoms(const rational_function &r, std::set<expr, expr_less> &out);

inline void collect_atoms(const polynomial &p, std::set<expr, expr_less> &out)
{
    for (const auto &a : p.atoms()) {
        if (!out.insert(a).second) {
            continue;
        }
        for (const auto &c : a->children) {
            collect_atoms(to_rational(c), out);
        }
    }
}

inline void collect_atoms(const rational_function &r, std::set<expr, expr_less> &out)
{
    collect_atoms(r.num(), out);
    collect_atoms(r.den(), out);
}

} // namespace detail

/// Every atom occurring in e, including inside kernel and function arguments.
inline std::vector<expr> free_atoms(const expr &e)
{
    std::set<expr, expr_less> s;
    detail::collect_atoms(to_rational(e), s);
    return {s.begin(), s.end()};
}

inline bool depends_on(const expr &e, const expr &atom)
{
    for (const auto &a : free_atoms(e)) {
        if (a == atom) {
            return true;
        }
    }
    return false;
}

} // namespace symmpde

#endif
