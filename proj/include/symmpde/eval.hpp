#ifndef SYMMPDE_EVAL_HPP
#define SYMMPDE_EVAL_HPP

#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "algebra.hpp"
#include "print.hpp"
#include "weierstrass.hpp"

namespace symmpde
{

using complex = std::complex<double>;

/// Numeric values for atoms (symbols, jet coordinates, opaque functions).
class environment
{
public:
    environment &set(const expr &atom, complex value)
    {
        m_values.insert_or_assign(atom, value);
        return *this;
    }
    environment &set(const std::string &name, complex value)
    {
        return set(raw::symbol(name, default_role(name)), value);
    }
    const complex *find(const expr &atom) const
    {
        auto it = m_values.find(atom);
        return it == m_values.end() ? nullptr : &it->second;
    }

private:
    std::map<expr, complex, expr_less> m_values;
};

struct eval_options {
    // Denominators with modulus at or below this are singular.
    double singular_tolerance = 0.0;
    weierstrass::options elliptic{};
};

namespace detail
{

inline complex to_complex(const rational &q)
{
    return complex(q.get_d(), 0.0);
}

inline complex eval_rec(const expr &e, const environment &env, const eval_options &opt)
{
    const node &n = e.get();
    switch (n.kind) {
        case node_kind::constant:
            return to_complex(n.value);
        case node_kind::symbol:
        case node_kind::jet:
        case node_kind::function:
            if (const complex *v = env.find(e)) {
                return *v;
            }
            throw unbound_symbol_error(to_string(e));
        case node_kind::kernel: {
            const complex a = eval_rec(n.children[0], env, opt);
            switch (n.tag) {
                case kernel_tag::exp:
                    return std::exp(a);
                case kernel_tag::arctan:
                    return std::atan(a);
                case kernel_tag::root:
                    if (a.imag() == 0.0 && a.real() >= 0.0) {
                        return std::pow(a.real(), 1.0 / n.degree);
                    }
                    return std::pow(a, 1.0 / n.degree);
                default:
                    break;
            }
            const weierstrass::invariants inv{eval_rec(n.children[1], env, opt), eval_rec(n.children[2], env, opt)};
            const weierstrass::values v = weierstrass::evaluator(inv, opt.elliptic).evaluate(a);
            return n.tag == kernel_tag::wp ? v.p : (n.tag == kernel_tag::wp_prime ? v.dp : v.zeta);
        }
        case node_kind::sum: {
            complex s = 0;
            for (const auto &c : n.children) {
                s += eval_rec(c, env, opt);
            }
            return s;
        }
        case node_kind::product: {
            complex p = 1;
            for (const auto &c : n.children) {
                p *= eval_rec(c, env, opt);
            }
            return p;
        }
        case node_kind::power: {
            complex b = eval_rec(n.children[0], env, opt);
            int k = n.exponent;
            if (k < 0) {
                if (std::abs(b) <= opt.singular_tolerance || b == complex(0)) {
                    throw singular_point_error(to_string(n.children[0]), "division by zero");
                }
                b = 1.0 / b;
                k = -k;
            }
            complex r = 1;
            while (k > 0) {
                if (k & 1) {
                    r *= b;
                }
                k >>= 1;
                if (k > 0) {
                    b *= b;
                }
            }
            return r;
        }
    }
    return 0;
}

} // namespace detail

/// Double-precision complex value of e; e need not be normalized.
inline complex eval_numeric(const expr &e, const environment &env, const eval_options &opt = {})
{
    const complex v = detail::eval_rec(e, env, opt);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw singular_point_error(to_string(e), "non-finite value");
    }
    return v;
}

} // namespace symmpde

#endif
