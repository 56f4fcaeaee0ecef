#ifndef SYMMPDE_RATIONAL_FUNCTION_HPP
#define SYMMPDE_RATIONAL_FUNCTION_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "expr.hpp"
#include "polynomial.hpp"

namespace symmpde
{

/// Canonical form: num/den over Q in atoms, with gcd(num, den) = 1, the
/// denominator's leading coefficient equal to one, and every registered
/// kernel rewrite applied:
///   wp_prime(z,g2,g3)^2 -> 4 wp^3 - g2 wp - g3
///   root(b,q)^q         -> b
class rational_function
{
public:
    rational_function() : m_den(polynomial::constant(1)) {}
    explicit rational_function(polynomial num) : m_num(std::move(num)), m_den(polynomial::constant(1))
    {
        if (needs_rewrite(m_num)) {
            *this = make(std::move(m_num), polynomial::constant(1));
        }
    }

    static rational_function constant(const rational &c)
    {
        return rational_function(polynomial::constant(c));
    }
    /// The atom must already be canonical (see the kernel builders below).
    static rational_function atom(const expr &a)
    {
        rational_function r;
        r.m_num = polynomial::atom(a);
        return r;
    }

    /// Reduces num/den to canonical form.
    static rational_function make(polynomial num, polynomial den, bool need_gcd = true);

    const polynomial &num() const noexcept
    {
        return m_num;
    }
    const polynomial &den() const noexcept
    {
        return m_den;
    }
    bool is_zero() const noexcept
    {
        return m_num.is_zero();
    }
    bool is_polynomial() const
    {
        return m_den.is_one();
    }
    bool is_constant() const
    {
        return m_den.is_one() && m_num.is_constant();
    }
    rational constant_value() const
    {
        return m_num.constant_value();
    }

    friend bool operator==(const rational_function &a, const rational_function &b)
    {
        return a.m_num == b.m_num && a.m_den == b.m_den;
    }

    rational_function operator-() const
    {
        rational_function r = *this;
        r.m_num = -r.m_num;
        return r;
    }

    friend rational_function operator+(const rational_function &a, const rational_function &b)
    {
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        if (a.m_den.is_one() && b.m_den.is_one()) {
            rational_function r;
            r.m_num = a.m_num + b.m_num;
            return r;
        }
        if (a.m_den == b.m_den) {
            return make(a.m_num + b.m_num, a.m_den);
        }
        if (a.m_den.is_one()) {
            return make(a.m_num * b.m_den + b.m_num, b.m_den);
        }
        if (b.m_den.is_one()) {
            return make(a.m_num + b.m_num * a.m_den, a.m_den);
        }
        const polynomial g = gcd(a.m_den, b.m_den);
        const polynomial da = g.is_constant() ? a.m_den : *divide_exact(a.m_den, g);
        const polynomial db = g.is_constant() ? b.m_den : *divide_exact(b.m_den, g);
        return make(a.m_num * db + b.m_num * da, a.m_den * db);
    }

    friend rational_function operator-(const rational_function &a, const rational_function &b)
    {
        return a + (-b);
    }

    friend rational_function operator*(const rational_function &a, const rational_function &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return rational_function{};
        }
        if (a.m_den.is_one() && b.m_den.is_one()) {
            return make(a.m_num * b.m_num, polynomial::constant(1), false);
        }
        const polynomial g1 = gcd(a.m_num, b.m_den);
        const polynomial g2 = gcd(b.m_num, a.m_den);
        const polynomial na = g1.is_constant() ? a.m_num : *divide_exact(a.m_num, g1);
        const polynomial db = g1.is_constant() ? b.m_den : *divide_exact(b.m_den, g1);
        const polynomial nb = g2.is_constant() ? b.m_num : *divide_exact(b.m_num, g2);
        const polynomial da = g2.is_constant() ? a.m_den : *divide_exact(a.m_den, g2);
        return make(na * nb, da * db, false);
    }

    rational_function inverse() const
    {
        if (is_zero()) {
            throw singular_point_error("0", "division by zero");
        }
        return make(m_den, m_num, false);
    }

    friend rational_function operator/(const rational_function &a, const rational_function &b)
    {
        return a * b.inverse();
    }

    rational_function pow(int n) const
    {
        if (n < 0) {
            return inverse().pow(-n);
        }
        if (n == 0) {
            return constant(1);
        }
        if (m_den.is_one() && m_num.size() == 1 && !needs_rewrite_power(m_num, n)) {
            rational_function r;
            r.m_num = m_num.pow(static_cast<unsigned>(n));
            return r;
        }
        rational_function result = constant(1);
        rational_function base = *this;
        unsigned k = static_cast<unsigned>(n);
        while (k > 0) {
            if (k & 1U) {
                result = result * base;
            }
            k >>= 1U;
            if (k > 0) {
                base = base * base;
            }
        }
        return result;
    }

    rational_function &operator+=(const rational_function &b)
    {
        return *this = *this + b;
    }
    rational_function &operator*=(const rational_function &b)
    {
        return *this = *this * b;
    }

    static bool needs_rewrite(const polynomial &p);

private:
    polynomial m_num;
    polynomial m_den;

    static bool needs_rewrite_power(const polynomial &single_term, int n)
    {
        for (const auto &f : single_term.leading().mono.factors) {
            if (reducible(f.first, f.second * n)) {
                return true;
            }
        }
        return false;
    }

public:
    /// True when atom^exponent falls under a registered rewrite.
    static bool reducible(const expr &atom, int exponent)
    {
        if (atom.kind() != node_kind::kernel) {
            return false;
        }
        if (atom->tag == kernel_tag::wp_prime) {
            return exponent >= 2;
        }
        if (atom->tag == kernel_tag::root) {
            return exponent >= atom->degree;
        }
        return false;
    }
};

/// Canonical form of an expression (defined with the conversions below).
rational_function to_rational(const expr &e);
/// Normalized tree image of a canonical form; the result carries it.
expr from_rational(const rational_function &r);

inline bool rational_function::needs_rewrite(const polynomial &p)
{
    for (const auto &t : p.terms()) {
        for (const auto &f : t.mono.factors) {
            if (reducible(f.first, f.second)) {
                return true;
            }
        }
    }
    return false;
}

namespace detail
{

/// Replacement for atom^period under the registered rewrite, with the period.
inline std::pair<rational_function, int> rewrite_rule(const expr &atom)
{
    if (atom->tag == kernel_tag::wp_prime) {
        const auto &args = atom->children;
        const rational_function wp = rational_function::atom(raw::kernel(kernel_tag::wp, args));
        const rational_function g2 = to_rational(args[1]);
        const rational_function g3 = to_rational(args[2]);
        return {rational_function::constant(4) * wp.pow(3) - g2 * wp - g3, 2};
    }
    return {to_rational(atom->children[0]), atom->degree};
}

/// Applies the registered rewrites to every term of p.
inline rational_function rewrite(const polynomial &p)
{
    std::vector<term> plain;
    rational_function rest;
    for (const auto &t : p.terms()) {
        bool touched = false;
        term kept{monomial{}, t.coeff};
        rational_function factor = rational_function::constant(1);
        for (const auto &[a, e] : t.mono.factors) {
            if (rational_function::reducible(a, e)) {
                touched = true;
                auto [rep, period] = rewrite_rule(a);
                if (e % period != 0) {
                    kept.mono.factors.emplace_back(a, e % period);
                }
                factor = factor * rep.pow(e / period);
            } else {
                kept.mono.factors.emplace_back(a, e);
            }
        }
        if (touched) {
            rest = rest + factor * rational_function(polynomial::from_term(std::move(kept)));
        } else {
            plain.push_back(std::move(kept));
        }
    }
    return rest + rational_function(polynomial::from_terms(std::move(plain)));
}

} // namespace detail

inline rational_function rational_function::make(polynomial num, polynomial den, bool need_gcd)
{
    if (den.is_zero()) {
        throw singular_point_error("0", "division by zero");
    }
    const bool rn = needs_rewrite(num);
    const bool rd = needs_rewrite(den);
    if (rn || rd) {
        const rational_function n = rn ? detail::rewrite(num) : make(std::move(num), polynomial::constant(1));
        const rational_function d = rd ? detail::rewrite(den) : make(std::move(den), polynomial::constant(1));
        return n / d;
    }
    rational_function r;
    if (num.is_zero()) {
        return r;
    }
    // Algebraic atoms leave the denominator: a monomial power of a root is
    // completed to its period; a denominator linear in wp_prime is multiplied
    // by its conjugate.
    if (!den.is_constant()) {
        for (const auto &a : den.atoms()) {
            if (a.kind() != node_kind::kernel || (a->tag != kernel_tag::root && a->tag != kernel_tag::wp_prime)) {
                continue;
            }
            const int period = a->tag == kernel_tag::root ? a->degree : 2;
            const auto coeffs = den.coefficients_in(a);
            int nonzero = 0;
            for (const auto &c : coeffs) {
                nonzero += c.is_zero() ? 0 : 1;
            }
            polynomial multiplier;
            if (nonzero == 1) {
                multiplier = polynomial::atom(a, period - static_cast<int>(coeffs.size() - 1));
            } else if (period == 2 && coeffs.size() == 2) {
                multiplier = coeffs[0] - coeffs[1] * polynomial::atom(a);
            } else {
                continue;
            }
            return make(num * multiplier, den * multiplier);
        }
    }
    if (den.is_constant()) {
        r.m_num = num.scaled(rational(1) / den.constant_value());
        return r;
    }
    if (need_gcd) {
        const polynomial g = gcd(num, den);
        if (!g.is_constant()) {
            num = *divide_exact(num, g);
            den = *divide_exact(den, g);
        }
    }
    const rational lc = den.leading().coeff;
    if (lc != 1) {
        const rational s = rational(1) / lc;
        num = num.scaled(s);
        den = den.scaled(s);
    }
    r.m_num = std::move(num);
    r.m_den = std::move(den);
    if (r.m_den.is_constant()) {
        r.m_num = r.m_num.scaled(rational(1) / r.m_den.constant_value());
        r.m_den = polynomial::constant(1);
    }
    return r;
}

/// Running sum of many rational functions with a shared denominator; one gcd
/// per distinct denominator instead of one per term.
class rational_sum
{
public:
    void add(const rational_function &r)
    {
        if (r.is_zero()) {
            return;
        }
        if (r.den() == m_den) {
            m_num += r.num();
            return;
        }
        if (r.den().is_one()) {
            m_num += r.num() * m_den;
            return;
        }
        if (m_den.is_one()) {
            m_num = m_num * r.den() + r.num();
            m_den = r.den();
            return;
        }
        const polynomial g = gcd(m_den, r.den());
        const polynomial mine = g.is_constant() ? m_den : *divide_exact(m_den, g);
        const polynomial theirs = g.is_constant() ? r.den() : *divide_exact(r.den(), g);
        m_num = m_num * theirs + r.num() * mine;
        m_den = m_den * theirs;
    }
    void add_polynomial(const polynomial &p)
    {
        m_num += m_den.is_one() ? p : p * m_den;
    }
    rational_function result() const
    {
        return rational_function::make(m_num, m_den);
    }

private:
    polynomial m_num;
    polynomial m_den = polynomial::constant(1);
};

// Canonical kernel and function builders. Arguments are canonical forms.
namespace kernels
{

namespace detail
{

inline bool negative_leading(const rational_function &r)
{
    return !r.is_zero() && sgn(r.num().leading().coeff) < 0;
}

inline std::vector<expr> to_exprs(const std::vector<rational_function> &args)
{
    std::vector<expr> out;
    out.reserve(args.size());
    for (const auto &a : args) {
        out.push_back(from_rational(a));
    }
    return out;
}

inline bool perfect_root(const integer &v, int q, integer &out)
{
    if (sgn(v) < 0) {
        return false;
    }
    mpz_t r;
    mpz_init(r);
    const int exact = mpz_root(r, v.get_mpz_t(), static_cast<unsigned long>(q));
    out = integer(r);
    mpz_clear(r);
    return exact != 0;
}

} // namespace detail

/// exp(w). exp(0) = 1; exp(w) with negative leading coefficient is stored as 1/exp(-w).
inline rational_function exp(const rational_function &w)
{
    if (w.is_zero()) {
        return rational_function::constant(1);
    }
    if (detail::negative_leading(w)) {
        return rational_function::atom(raw::kernel(kernel_tag::exp, {from_rational(-w)})).inverse();
    }
    return rational_function::atom(raw::kernel(kernel_tag::exp, {from_rational(w)}));
}

/// arctan(w), odd.
inline rational_function arctan(const rational_function &w)
{
    if (w.is_zero()) {
        return rational_function{};
    }
    if (detail::negative_leading(w)) {
        return -rational_function::atom(raw::kernel(kernel_tag::arctan, {from_rational(-w)}));
    }
    return rational_function::atom(raw::kernel(kernel_tag::arctan, {from_rational(w)}));
}

/// Principal b^(1/q). Exact for rational perfect powers.
inline rational_function root(const rational_function &b, int q)
{
    if (q < 1) {
        throw unsupported_error("root degree must be positive");
    }
    if (q == 1 || b.is_zero()) {
        return b;
    }
    if (b.is_constant()) {
        const rational v = b.constant_value();
        integer n, d;
        if (detail::perfect_root(v.get_num(), q, n) && detail::perfect_root(v.get_den(), q, d)) {
            return rational_function::constant(rational(n, d));
        }
    }
    return rational_function::atom(raw::kernel(kernel_tag::root, {from_rational(b)}, q));
}

inline rational_function weierstrass(kernel_tag tag, const rational_function &z, const rational_function &g2,
                                     const rational_function &g3)
{
    if (z.is_zero()) {
        throw singular_point_error(kernel_name(tag) + std::string("(0)"), "pole at the origin");
    }
    if (g2.is_zero() && g3.is_zero()) {
        switch (tag) {
            case kernel_tag::wp:
                return z.pow(-2);
            case kernel_tag::wp_prime:
                return rational_function::constant(-2) * z.pow(-3);
            default:
                return z.inverse();
        }
    }
    const bool flip = detail::negative_leading(z);
    const rational_function arg = flip ? -z : z;
    auto r = rational_function::atom(
        raw::kernel(tag, {from_rational(arg), from_rational(g2), from_rational(g3)}));
    // wp is even; wp_prime and wzeta are odd.
    return (flip && tag != kernel_tag::wp) ? -r : r;
}

inline rational_function function(const std::string &name, const std::vector<rational_function> &args,
                                  std::vector<int> counts = {})
{
    return rational_function::atom(raw::function(name, detail::to_exprs(args), std::move(counts)));
}

} // namespace kernels

inline rational_function to_rational(const expr &e)
{
    if (const auto *c = e.canonical()) {
        return *c;
    }
    const node &n = e.get();
    switch (n.kind) {
        case node_kind::constant:
            return rational_function::constant(n.value);
        case node_kind::symbol:
        case node_kind::jet:
            return rational_function::atom(e);
        case node_kind::function: {
            std::vector<rational_function> args;
            for (const auto &a : n.children) {
                args.push_back(to_rational(a));
            }
            return kernels::function(n.name, args, n.counts);
        }
        case node_kind::kernel: {
            std::vector<rational_function> args;
            for (const auto &a : n.children) {
                args.push_back(to_rational(a));
            }
            switch (n.tag) {
                case kernel_tag::exp:
                    return kernels::exp(args.at(0));
                case kernel_tag::arctan:
                    return kernels::arctan(args.at(0));
                case kernel_tag::root:
                    return kernels::root(args.at(0), n.degree);
                default:
                    return kernels::weierstrass(n.tag, args.at(0), args.at(1), args.at(2));
            }
        }
        case node_kind::sum: {
            rational_sum s;
            for (const auto &c : n.children) {
                s.add(to_rational(c));
            }
            return s.result();
        }
        case node_kind::product: {
            rational_function r = rational_function::constant(1);
            for (const auto &c : n.children) {
                r = r * to_rational(c);
                if (r.is_zero()) {
                    break;
                }
            }
            return r;
        }
        case node_kind::power:
            return to_rational(n.children[0]).pow(n.exponent);
    }
    return rational_function{};
}

namespace detail
{

inline expr term_to_expr(const term &t)
{
    std::vector<expr> factors;
    if (t.coeff != 1 || t.mono.empty()) {
        factors.push_back(raw::constant(t.coeff));
    }
    for (const auto &[a, e] : t.mono.factors) {
        factors.push_back(e == 1 ? a : raw::power(a, e));
    }
    if (factors.size() == 1) {
        return factors[0];
    }
    return raw::product(std::move(factors));
}

inline expr polynomial_to_expr(const polynomial &p)
{
    if (p.is_zero()) {
        return raw::constant(0);
    }
    if (p.size() == 1) {
        return term_to_expr(p.leading());
    }
    std::vector<expr> terms;
    terms.reserve(p.size());
    for (const auto &t : p.terms()) {
        terms.push_back(term_to_expr(t));
    }
    return raw::sum(std::move(terms));
}

} // namespace detail

inline expr from_rational(const rational_function &r)
{
    expr tree = r.is_polynomial()
                    ? detail::polynomial_to_expr(r.num())
                    : raw::product({detail::polynomial_to_expr(r.num()), raw::power(detail::polynomial_to_expr(r.den()), -1)});
    node n = tree.get();
    n.canonical = std::make_shared<const rational_function>(r);
    return symmpde::detail::make_node(std::move(n));
}

} // namespace symmpde

#endif
