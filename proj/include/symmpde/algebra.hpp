#ifndef SYMMPDE_ALGEBRA_HPP
#define SYMMPDE_ALGEBRA_HPP

#include <string>
#include <vector>

#include "expr.hpp"
#include "rational_function.hpp"

namespace symmpde
{

/// Canonical form of e as a tree: expanded, collected, gcd-reduced, term-sorted.
inline expr normalize(const expr &e)
{
    return from_rational(to_rational(e));
}

inline expr number(const rational &v)
{
    return from_rational(rational_function::constant(v));
}

inline expr number(long v)
{
    return number(rational(v));
}

inline expr number(long num, long den)
{
    return number(rational(num, den));
}

inline expr symbol(const std::string &name)
{
    return from_rational(rational_function::atom(raw::symbol(name, default_role(name))));
}

inline expr symbol(const std::string &name, symbol_role role)
{
    return from_rational(rational_function::atom(raw::symbol(name, role)));
}

/// Jet coordinate u_J; u_J with J empty is u itself.
inline expr jet(multi_index j = {})
{
    return from_rational(rational_function::atom(raw::jet(j)));
}

inline expr jet(int nx, int nt)
{
    return jet(multi_index{nx, nt});
}

/// Opaque function application name(args) with optional per-slot derivative counts.
inline expr function(const std::string &name, const std::vector<expr> &args, std::vector<int> counts = {})
{
    std::vector<rational_function> rs;
    rs.reserve(args.size());
    for (const auto &a : args) {
        rs.push_back(to_rational(a));
    }
    return from_rational(kernels::function(name, rs, std::move(counts)));
}

inline expr operator+(const expr &a, const expr &b)
{
    return from_rational(to_rational(a) + to_rational(b));
}
inline expr operator-(const expr &a, const expr &b)
{
    return from_rational(to_rational(a) - to_rational(b));
}
inline expr operator*(const expr &a, const expr &b)
{
    return from_rational(to_rational(a) * to_rational(b));
}
inline expr operator/(const expr &a, const expr &b)
{
    return from_rational(to_rational(a) / to_rational(b));
}
inline expr operator-(const expr &a)
{
    return from_rational(-to_rational(a));
}
inline expr operator+(const expr &a, long b)
{
    return a + number(b);
}
inline expr operator+(long a, const expr &b)
{
    return number(a) + b;
}
inline expr operator-(const expr &a, long b)
{
    return a - number(b);
}
inline expr operator-(long a, const expr &b)
{
    return number(a) - b;
}
inline expr operator*(long a, const expr &b)
{
    return number(a) * b;
}
inline expr operator*(const expr &a, long b)
{
    return a * number(b);
}
inline expr operator/(const expr &a, long b)
{
    return a / number(b);
}
inline expr operator/(long a, const expr &b)
{
    return number(a) / b;
}

inline expr pow(const expr &base, int n)
{
    return from_rational(to_rational(base).pow(n));
}

inline expr exp(const expr &w)
{
    return from_rational(kernels::exp(to_rational(w)));
}

inline expr arctan(const expr &w)
{
    return from_rational(kernels::arctan(to_rational(w)));
}

inline expr root(const expr &b, int q)
{
    return from_rational(kernels::root(to_rational(b), q));
}

inline expr sqrt(const expr &b)
{
    return root(b, 2);
}

inline expr wp(const expr &z, const expr &g2, const expr &g3)
{
    return from_rational(kernels::weierstrass(kernel_tag::wp, to_rational(z), to_rational(g2), to_rational(g3)));
}

inline expr wp_prime(const expr &z, const expr &g2, const expr &g3)
{
    return from_rational(
        kernels::weierstrass(kernel_tag::wp_prime, to_rational(z), to_rational(g2), to_rational(g3)));
}

inline expr wzeta(const expr &z, const expr &g2, const expr &g3)
{
    return from_rational(kernels::weierstrass(kernel_tag::wzeta, to_rational(z), to_rational(g2), to_rational(g3)));
}

inline expr numerator(const expr &e)
{
    return from_rational(rational_function(to_rational(e).num()));
}

inline expr denominator(const expr &e)
{
    return from_rational(rational_function(to_rational(e).den()));
}

} // namespace symmpde

#endif
