#ifndef SYMMPDE_SYMMETRY_HPP
#define SYMMPDE_SYMMETRY_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jet.hpp"
#include "parse.hpp"
#include "print.hpp"
#include "zero_test.hpp"

namespace symmpde
{

/// Raised when a bracket has no coordinates in the requested basis.
class span_error : public error
{
public:
    explicit span_error(const std::string &what) : error("not in the span of the basis: " + what) {}
};

/// A scalar PDE lhs = 0, solved for one jet coordinate on the solution manifold.
class pde_definition
{
public:
    pde_definition(expr lhs, multi_index leading) : m_lhs(std::move(lhs)), m_leading(leading)
    {
        const rational_function l = to_rational(m_lhs);
        const expr lead = jet(m_leading);
        const rational_function c = diff(l, lead);
        if (!c.is_constant() || c.is_zero() || !diff(c, lead).is_zero()) {
            throw unsupported_error("lhs must be linear in the leading derivative with constant coefficient");
        }
        m_solved = (rational_function::atom(lead) * c - l) / c;
        for (const auto &a : l.num().atoms()) {
            if (a.kind() == node_kind::jet) {
                m_jets.push_back(a->jet);
            }
        }
    }

    const expr &lhs() const noexcept
    {
        return m_lhs;
    }
    multi_index leading() const noexcept
    {
        return m_leading;
    }
    /// The leading derivative expressed through the others.
    const rational_function &solved() const noexcept
    {
        return m_solved;
    }
    const std::vector<multi_index> &jets() const noexcept
    {
        return m_jets;
    }

    /// Restriction to the solution manifold.
    rational_function on_manifold(const rational_function &r) const
    {
        substitution s;
        s.bind(jet(m_leading), m_solved);
        return s.apply(r);
    }

private:
    expr m_lhs;
    multi_index m_leading;
    rational_function m_solved;
    std::vector<multi_index> m_jets;
};

/// u_xt + 6 u_x u_xx + u_xxxx + u_xxxt + 4 u_x u_xt + 2 u_xx u_t = 0, solved for u_xxxt.
inline const pde_definition &kdv_nkdv()
{
    static const pde_definition pde(parse("u_xt + 6*u_x*u_xx + u_xxxx + u_xxxt + 4*u_x*u_xt + 2*u_xx*u_t"), {3, 1});
    return pde;
}

/// pr V (lhs) restricted to lhs = 0, as a canonical form.
inline rational_function symmetry_residual_rational(const vector_field &v, const pde_definition &pde,
                                                    int cap = jet_cap())
{
    const rational_function lhs = to_rational(pde.lhs());
    prolongation pr(v, cap);
    rational_sum sum;
    for (multi_index j : pde.jets()) {
        const rational_function d = diff(lhs, jet(j));
        if (!d.is_zero()) {
            sum.add(pr.coefficient(j) * d);
        }
    }
    const rational_function dx = diff(lhs, symbol("x"));
    const rational_function dt = diff(lhs, symbol("t"));
    if (!dx.is_zero()) {
        sum.add(to_rational(v.xi) * dx);
    }
    if (!dt.is_zero()) {
        sum.add(to_rational(v.tau) * dt);
    }
    return pde.on_manifold(sum.result());
}

inline expr symmetry_residual(const vector_field &v, const pde_definition &pde = kdv_nkdv(), int cap = jet_cap())
{
    return from_rational(symmetry_residual_rational(v, pde, cap));
}

/// The undetermined field xi(x,t,u) d/dx + tau(x,t,u) d/dt + eta(x,t,u) d/du.
inline vector_field undetermined_field()
{
    const std::vector<expr> args{symbol("x"), symbol("t"), jet()};
    return {function("xi", args), function("tau", args), function("eta", args)};
}

/// Substitution replacing xi, tau, eta (and their partials) by concrete bodies in x, t, u.
inline substitution field_substitution(const vector_field &v)
{
    const std::vector<expr> params{symbol("x"), symbol("t"), jet()};
    substitution s;
    s.bind_function("xi", params, v.xi);
    s.bind_function("tau", params, v.tau);
    s.bind_function("eta", params, v.eta);
    return s;
}

/// Determining equations: coefficients of the jet monomials in the on-manifold residual.
class determining_system
{
public:
    struct entry {
        expr monomial;
        expr equation;
    };

    determining_system(std::vector<entry> entries, rational_function residual)
        : m_entries(std::move(entries)), m_residual(std::move(residual))
    {
    }

    const std::vector<entry> &entries() const noexcept
    {
        return m_entries;
    }
    std::size_t size() const noexcept
    {
        return m_entries.size();
    }
    const rational_function &residual() const noexcept
    {
        return m_residual;
    }

    /// sum of monomial * equation.
    rational_function reconstruct() const
    {
        rational_sum s;
        for (const auto &e : m_entries) {
            s.add(to_rational(e.monomial) * to_rational(e.equation));
        }
        return s.result();
    }

    /// Each equation with xi, tau, eta replaced by the given field.
    std::vector<expr> evaluate(const vector_field &v) const
    {
        substitution s = field_substitution(v);
        std::vector<expr> out;
        out.reserve(m_entries.size());
        for (const auto &e : m_entries) {
            out.push_back(s.apply(e.equation));
        }
        return out;
    }

    /// True when every equation vanishes on the field.
    bool satisfied_by(const vector_field &v) const
    {
        for (const auto &e : evaluate(v)) {
            if (!e.is_zero_constant()) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<entry> m_entries;
    rational_function m_residual;
};

namespace detail
{

struct monomial_less {
    bool operator()(const monomial &a, const monomial &b) const
    {
        return lex_compare(a, b) < 0;
    }
};

} // namespace detail

inline determining_system extract_determining(const pde_definition &pde = kdv_nkdv(), int cap = jet_cap())
{
    const rational_function r = symmetry_residual_rational(undetermined_field(), pde, cap);
    for (const auto &a : r.den().atoms()) {
        if (a.kind() == node_kind::jet && a->jet.order() > 0) {
            throw unsupported_error("residual denominator depends on derivatives of u");
        }
    }
    std::map<monomial, std::vector<term>, detail::monomial_less> groups;
    for (const auto &t : r.num().terms()) {
        monomial jets;
        term rest{monomial{}, t.coeff};
        for (const auto &f : t.mono.factors) {
            if (f.first.kind() == node_kind::jet && f.first->jet.order() > 0) {
                jets.factors.push_back(f);
            } else {
                rest.mono.factors.push_back(f);
            }
        }
        groups[jets].push_back(std::move(rest));
    }
    const rational_function inv_den = rational_function::make(polynomial::constant(1), r.den(), false);
    std::vector<determining_system::entry> entries;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        const rational_function eq = rational_function(polynomial::from_terms(std::move(it->second))) * inv_den;
        if (eq.is_zero()) {
            continue;
        }
        entries.push_back({from_rational(rational_function(polynomial::from_term(term{it->first, rational(1)}))),
                           from_rational(eq)});
    }
    return determining_system(std::move(entries), r);
}

struct generator_report {
    zero_status status;
    expr residual;

    bool is_symmetry() const noexcept
    {
        return status == zero_status::zero;
    }
};

inline generator_report verify_generator(const vector_field &v, const pde_definition &pde = kdv_nkdv())
{
    expr r = symmetry_residual(v, pde);
    return {is_zero(r), std::move(r)};
}

/// V(g) for V = xi d/dx + tau d/dt + eta d/du.
inline expr apply_field(const vector_field &v, const expr &g)
{
    return v.xi * diff(g, symbol("x")) + v.tau * diff(g, symbol("t")) + v.eta * diff(g, jet());
}

inline vector_field lie_bracket(const vector_field &v, const vector_field &w)
{
    return {apply_field(v, w.xi) - apply_field(w, v.xi), apply_field(v, w.tau) - apply_field(w, v.tau),
            apply_field(v, w.eta) - apply_field(w, v.eta)};
}

namespace generators
{

/// (x - t) d/dx + (t - x/2 - u) d/du.
inline vector_field v1()
{
    return {parse("x - t"), number(0), parse("t - x/2 - u")};
}

inline vector_field v2()
{
    return {number(1), number(0), number(0)};
}

inline vector_field v3()
{
    return {number(0), number(0), number(1)};
}

inline vector_field v4()
{
    return {number(1), number(1), number(1)};
}

inline std::vector<vector_field> basis()
{
    return {v1(), v2(), v3(), v4()};
}

/// The general infinitesimals with arbitrary constants a1, a2, a3 and arbitrary f(t).
inline vector_field family(const expr &f)
{
    const expr a1 = symbol("a1");
    const expr a2 = symbol("a2");
    const expr a3 = symbol("a3");
    const expr x = symbol("x");
    const expr t = symbol("t");
    return {(x - t) * a1 + a2 + f, f, (t - x / 2 - jet()) * a1 + a3 + f / 2};
}

inline vector_field family()
{
    return family(function("f", {symbol("t")}));
}

} // namespace generators

namespace detail
{

/// Solves sum_k c_k basis_k = target exactly; throws span_error if inconsistent.
inline std::vector<rational> coordinates(const vector_field &target, const std::vector<vector_field> &basis)
{
    const std::size_t n = basis.size();
    std::map<std::pair<int, monomial>, std::vector<rational>, bool (*)(const std::pair<int, monomial> &,
                                                                      const std::pair<int, monomial> &)>
        rows([](const std::pair<int, monomial> &a, const std::pair<int, monomial> &b) {
            return a.first != b.first ? a.first < b.first : lex_compare(a.second, b.second) < 0;
        });
    auto component = [](const vector_field &v, int k) -> const expr & {
        return k == 0 ? v.xi : (k == 1 ? v.tau : v.eta);
    };
    auto add = [&](const expr &e, int k, std::size_t col) {
        const rational_function r = to_rational(e);
        if (!r.is_polynomial()) {
            throw unsupported_error("commutator coordinates need polynomial components");
        }
        for (const auto &t : r.num().terms()) {
            auto &row = rows[{k, t.mono}];
            row.resize(n + 1);
            row[col] += t.coeff;
        }
    };
    for (int k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            add(component(basis[i], k), k, i);
        }
        add(component(target, k), k, n);
    }
    std::vector<std::vector<rational>> m;
    for (auto &[key, row] : rows) {
        row.resize(n + 1);
        m.push_back(row);
    }
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) {
            ++p;
        }
        if (p == m.size()) {
            continue;
        }
        std::swap(m[p], m[r]);
        const rational inv = 1 / m[r][c];
        for (auto &v : m[r]) {
            v *= inv;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i != r && m[i][c] != 0) {
                const rational f = m[i][c];
                for (std::size_t j = c; j <= n; ++j) {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < m.size(); ++i) {
        if (m[i][n] != 0) {
            throw span_error("(" + to_string(target.xi) + ", " + to_string(target.tau) + ", " + to_string(target.eta) +
                             ")");
        }
    }
    if (pivot_col.size() != n) {
        throw unsupported_error("basis fields are linearly dependent");
    }
    std::vector<rational> out(n);
    for (std::size_t i = 0; i < r; ++i) {
        out[static_cast<std::size_t>(pivot_col[i])] = m[i][n];
    }
    return out;
}

} // namespace detail

/// Structure constants: table[i][j][k] is the V_k coordinate of [fields_i, fields_j].
using structure_constants = std::vector<std::vector<std::vector<rational>>>;

inline structure_constants commutator_table(const std::vector<vector_field> &fields,
                                            const std::vector<vector_field> &basis)
{
    structure_constants table(fields.size(), std::vector<std::vector<rational>>(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i) {
        for (std::size_t j = 0; j < fields.size(); ++j) {
            table[i][j] = detail::coordinates(lie_bracket(fields[i], fields[j]), basis);
        }
    }
    return table;
}

/// Renders coordinates as "-V2 + 1/2 V3", or "0".
inline std::string format_combination(const std::vector<rational> &c, const std::string &prefix = "V")
{
    std::string s;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) {
            continue;
        }
        const rational mag = abs(c[k]);
        if (s.empty()) {
            s += sgn(c[k]) < 0 ? "-" : "";
        } else {
            s += sgn(c[k]) < 0 ? " - " : " + ";
        }
        if (mag != 1) {
            s += mag.get_str() + " ";
        }
        s += prefix + std::to_string(k + 1);
    }
    return s.empty() ? "0" : s;
}

} // namespace symmpde

#endif
