#ifndef SYMMPDE_POLYNOMIAL_HPP
#define SYMMPDE_POLYNOMIAL_HPP

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "expr.hpp"

namespace symmpde
{

/// Power product of atoms, factors sorted ascending by the structural order.
struct monomial {
    std::vector<std::pair<expr, int>> factors;

    bool empty() const noexcept
    {
        return factors.empty();
    }

    int degree_in(const expr &atom) const
    {
        for (const auto &[a, e] : factors) {
            if (a == atom) {
                return e;
            }
        }
        return 0;
    }

    int total_degree() const noexcept
    {
        int d = 0;
        for (const auto &f : factors) {
            d += f.second;
        }
        return d;
    }

    /// Largest atom; the monomial must be non-empty.
    const expr &main_atom() const
    {
        return factors.back().first;
    }

    friend bool operator==(const monomial &a, const monomial &b)
    {
        if (a.factors.size() != b.factors.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.factors.size(); ++i) {
            if (a.factors[i].second != b.factors[i].second || a.factors[i].first != b.factors[i].first) {
                return false;
            }
        }
        return true;
    }
};

/// Lexicographic monomial order with the largest atom most significant.
/// Compatible with multiplication, so it drives division and the PRS gcd.
inline int lex_compare(const monomial &a, const monomial &b)
{
    auto i = a.factors.size();
    auto j = b.factors.size();
    while (i > 0 && j > 0) {
        const auto &fa = a.factors[i - 1];
        const auto &fb = b.factors[j - 1];
        const int c = compare(fa.first, fb.first);
        if (c != 0) {
            return c > 0 ? 1 : -1;
        }
        if (fa.second != fb.second) {
            return fa.second > fb.second ? 1 : -1;
        }
        --i;
        --j;
    }
    if (i == j) {
        return 0;
    }
    return i > 0 ? 1 : -1;
}

inline monomial operator*(const monomial &a, const monomial &b)
{
    monomial r;
    r.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const int c = compare(a.factors[i].first, b.factors[j].first);
        if (c < 0) {
            r.factors.push_back(a.factors[i++]);
        } else if (c > 0) {
            r.factors.push_back(b.factors[j++]);
        } else {
            r.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
            ++i;
            ++j;
        }
    }
    for (; i < a.factors.size(); ++i) {
        r.factors.push_back(a.factors[i]);
    }
    for (; j < b.factors.size(); ++j) {
        r.factors.push_back(b.factors[j]);
    }
    return r;
}

/// Returns b / a when a divides b.
inline std::optional<monomial> divide(const monomial &b, const monomial &a)
{
    monomial r;
    std::size_t i = 0;
    for (const auto &[atom, e] : b.factors) {
        int ea = 0;
        if (i < a.factors.size() && a.factors[i].first == atom) {
            ea = a.factors[i].second;
            ++i;
        }
        if (e < ea) {
            return std::nullopt;
        }
        if (e > ea) {
            r.factors.emplace_back(atom, e - ea);
        }
    }
    if (i != a.factors.size()) {
        return std::nullopt;
    }
    return r;
}

inline monomial monomial_gcd(const monomial &a, const monomial &b)
{
    monomial r;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const int c = compare(a.factors[i].first, b.factors[j].first);
        if (c < 0) {
            ++i;
        } else if (c > 0) {
            ++j;
        } else {
            r.factors.emplace_back(a.factors[i].first, std::min(a.factors[i].second, b.factors[j].second));
            ++i;
            ++j;
        }
    }
    return r;
}

struct term {
    monomial mono;
    rational coeff;
};

/// Sparse multivariate polynomial over Q in atoms (symbols, jet coordinates,
/// opaque functions, kernel applications). Terms are kept in descending lex
/// order with no zero coefficients.
class polynomial
{
public:
    polynomial() = default;

    static polynomial constant(const rational &c)
    {
        polynomial p;
        if (sgn(c) != 0) {
            p.m_terms.push_back({monomial{}, c});
            p.m_terms.back().coeff.canonicalize();
        }
        return p;
    }

    static polynomial atom(const expr &a, int exponent = 1)
    {
        polynomial p;
        monomial m;
        if (exponent != 0) {
            m.factors.emplace_back(a, exponent);
        }
        p.m_terms.push_back({std::move(m), rational(1)});
        return p;
    }

    static polynomial from_term(term t)
    {
        polynomial p;
        if (sgn(t.coeff) != 0) {
            p.m_terms.push_back(std::move(t));
        }
        return p;
    }

    /// Builds from arbitrary terms, merging duplicates.
    static polynomial from_terms(std::vector<term> terms)
    {
        polynomial p;
        p.m_terms = std::move(terms);
        p.canonicalize();
        return p;
    }

    const std::vector<term> &terms() const noexcept
    {
        return m_terms;
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    bool is_constant() const noexcept
    {
        return m_terms.empty() || (m_terms.size() == 1 && m_terms[0].mono.empty());
    }
    bool is_one() const
    {
        return m_terms.size() == 1 && m_terms[0].mono.empty() && m_terms[0].coeff == 1;
    }
    rational constant_value() const
    {
        return m_terms.empty() ? rational(0) : m_terms[0].coeff;
    }
    const term &leading() const
    {
        return m_terms.front();
    }

    friend bool operator==(const polynomial &a, const polynomial &b)
    {
        if (a.m_terms.size() != b.m_terms.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.m_terms.size(); ++i) {
            if (a.m_terms[i].coeff != b.m_terms[i].coeff || !(a.m_terms[i].mono == b.m_terms[i].mono)) {
                return false;
            }
        }
        return true;
    }

    polynomial operator-() const
    {
        polynomial r = *this;
        for (auto &t : r.m_terms) {
            t.coeff = -t.coeff;
        }
        return r;
    }

    friend polynomial operator+(const polynomial &a, const polynomial &b)
    {
        return merge(a, b, false);
    }
    friend polynomial operator-(const polynomial &a, const polynomial &b)
    {
        return merge(a, b, true);
    }

    polynomial &operator+=(const polynomial &b)
    {
        *this = merge(*this, b, false);
        return *this;
    }
    polynomial &operator-=(const polynomial &b)
    {
        *this = merge(*this, b, true);
        return *this;
    }

    friend polynomial operator*(const polynomial &a, const polynomial &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return polynomial{};
        }
        if (b.m_terms.size() == 1) {
            return a.times_term(b.m_terms[0]);
        }
        if (a.m_terms.size() == 1) {
            return b.times_term(a.m_terms[0]);
        }
        std::vector<term> out;
        out.reserve(a.m_terms.size() * b.m_terms.size());
        for (const auto &ta : a.m_terms) {
            for (const auto &tb : b.m_terms) {
                out.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
            }
        }
        return from_terms(std::move(out));
    }

    polynomial scaled(const rational &c) const
    {
        if (sgn(c) == 0) {
            return polynomial{};
        }
        polynomial r = *this;
        for (auto &t : r.m_terms) {
            t.coeff *= c;
        }
        return r;
    }

    /// Multiplication by a single term keeps the lex order, so no re-sort.
    polynomial times_term(const term &t) const
    {
        polynomial r;
        if (sgn(t.coeff) == 0) {
            return r;
        }
        r.m_terms.reserve(m_terms.size());
        for (const auto &s : m_terms) {
            r.m_terms.push_back({s.mono * t.mono, s.coeff * t.coeff});
        }
        return r;
    }

    polynomial pow(unsigned n) const
    {
        polynomial result = constant(1);
        polynomial base = *this;
        while (n > 0) {
            if (n & 1U) {
                result = result * base;
            }
            n >>= 1U;
            if (n > 0) {
                base = base * base;
            }
        }
        return result;
    }

    /// Distinct atoms, ascending.
    std::vector<expr> atoms() const
    {
        std::set<expr, expr_less> s;
        for (const auto &t : m_terms) {
            for (const auto &f : t.mono.factors) {
                s.insert(f.first);
            }
        }
        return {s.begin(), s.end()};
    }

    int degree_in(const expr &a) const
    {
        int d = 0;
        for (const auto &t : m_terms) {
            d = std::max(d, t.mono.degree_in(a));
        }
        return d;
    }

    /// Largest atom present; the polynomial must be non-constant.
    const expr &main_atom() const
    {
        return m_terms.front().mono.main_atom();
    }

    /// Formal partial derivative with respect to an atom.
    polynomial partial(const expr &a) const
    {
        std::vector<term> out;
        for (const auto &t : m_terms) {
            for (std::size_t i = 0; i < t.mono.factors.size(); ++i) {
                if (t.mono.factors[i].first == a) {
                    term n{t.mono, t.coeff * t.mono.factors[i].second};
                    if (--n.mono.factors[i].second == 0) {
                        n.mono.factors.erase(n.mono.factors.begin() + static_cast<std::ptrdiff_t>(i));
                    }
                    out.push_back(std::move(n));
                    break;
                }
            }
        }
        return from_terms(std::move(out));
    }

    /// Coefficients in the atom `a`, indexed by degree.
    std::vector<polynomial> coefficients_in(const expr &a) const
    {
        std::vector<std::vector<term>> buckets(static_cast<std::size_t>(degree_in(a)) + 1);
        for (const auto &t : m_terms) {
            term n{monomial{}, t.coeff};
            int d = 0;
            for (const auto &f : t.mono.factors) {
                if (f.first == a) {
                    d = f.second;
                } else {
                    n.mono.factors.push_back(f);
                }
            }
            buckets[static_cast<std::size_t>(d)].push_back(std::move(n));
        }
        std::vector<polynomial> out;
        out.reserve(buckets.size());
        for (auto &b : buckets) {
            out.push_back(from_terms(std::move(b)));
        }
        return out;
    }

    /// Coefficient of the highest power of `a`.
    polynomial leading_coefficient_in(const expr &a) const
    {
        return coefficients_in(a).back();
    }

private:
    std::vector<term> m_terms;

    void canonicalize()
    {
        std::sort(m_terms.begin(), m_terms.end(),
                  [](const term &x, const term &y) { return lex_compare(x.mono, y.mono) > 0; });
        std::vector<term> merged;
        merged.reserve(m_terms.size());
        for (auto &t : m_terms) {
            if (!merged.empty() && merged.back().mono == t.mono) {
                merged.back().coeff += t.coeff;
            } else {
                if (!merged.empty() && sgn(merged.back().coeff) == 0) {
                    merged.pop_back();
                }
                merged.push_back(std::move(t));
            }
        }
        if (!merged.empty() && sgn(merged.back().coeff) == 0) {
            merged.pop_back();
        }
        m_terms = std::move(merged);
    }

    static polynomial merge(const polynomial &a, const polynomial &b, bool subtract)
    {
        polynomial r;
        r.m_terms.reserve(a.m_terms.size() + b.m_terms.size());
        std::size_t i = 0, j = 0;
        while (i < a.m_terms.size() || j < b.m_terms.size()) {
            int c;
            if (i == a.m_terms.size()) {
                c = -1;
            } else if (j == b.m_terms.size()) {
                c = 1;
            } else {
                c = lex_compare(a.m_terms[i].mono, b.m_terms[j].mono);
            }
            if (c > 0) {
                r.m_terms.push_back(a.m_terms[i++]);
            } else if (c < 0) {
                term t = b.m_terms[j++];
                if (subtract) {
                    t.coeff = -t.coeff;
                }
                r.m_terms.push_back(std::move(t));
            } else {
                rational s = subtract ? rational(a.m_terms[i].coeff - b.m_terms[j].coeff)
                                      : rational(a.m_terms[i].coeff + b.m_terms[j].coeff);
                if (sgn(s) != 0) {
                    r.m_terms.push_back({a.m_terms[i].mono, s});
                }
                ++i;
                ++j;
            }
        }
        return r;
    }
};

inline polynomial from_coefficients(const std::vector<polynomial> &coeffs, const expr &a)
{
    std::vector<term> out;
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
        const term shift{d == 0 ? monomial{} : monomial{{{a, static_cast<int>(d)}}}, rational(1)};
        for (const auto &t : coeffs[d].terms()) {
            out.push_back({t.mono * shift.mono, t.coeff});
        }
    }
    return polynomial::from_terms(std::move(out));
}

/// Multivariate division by a single divisor under lex order. Terms of the
/// running remainder whose leading monomial is not divisible move to the
/// remainder, so b | a iff the remainder is zero.
inline std::pair<polynomial, polynomial> divide(const polynomial &a, const polynomial &b)
{
    assert(!b.is_zero());
    std::vector<term> quotient;
    std::vector<term> remainder;
    polynomial r = a;
    const term &lb = b.leading();
    while (!r.is_zero()) {
        const term &lr = r.leading();
        if (auto q = divide(lr.mono, lb.mono)) {
            term t{std::move(*q), lr.coeff / lb.coeff};
            r -= b.times_term(t);
            quotient.push_back(std::move(t));
        } else {
            remainder.push_back(lr);
            r -= polynomial::from_term(lr);
        }
    }
    return {polynomial::from_terms(std::move(quotient)), polynomial::from_terms(std::move(remainder))};
}

/// a / b when b divides a exactly.
inline std::optional<polynomial> divide_exact(const polynomial &a, const polynomial &b)
{
    if (b.is_constant()) {
        return a.scaled(rational(1) / b.constant_value());
    }
    std::vector<term> quotient;
    polynomial r = a;
    const term &lb = b.leading();
    while (!r.is_zero()) {
        const term &lr = r.leading();
        auto q = divide(lr.mono, lb.mono);
        if (!q) {
            return std::nullopt;
        }
        term t{std::move(*q), lr.coeff / lb.coeff};
        r -= b.times_term(t);
        quotient.push_back(std::move(t));
    }
    return polynomial::from_terms(std::move(quotient));
}

/// Scales so that the leading coefficient is one.
inline polynomial make_monic(const polynomial &p)
{
    if (p.is_zero()) {
        return p;
    }
    return p.scaled(rational(1) / p.leading().coeff);
}

polynomial gcd(const polynomial &a, const polynomial &b);

namespace detail
{

inline polynomial content_in(const polynomial &p, const expr &v)
{
    polynomial g;
    for (const auto &c : p.coefficients_in(v)) {
        if (c.is_zero()) {
            continue;
        }
        g = g.is_zero() ? make_monic(c) : gcd(g, c);
        if (g.is_constant()) {
            return polynomial::constant(1);
        }
    }
    return g;
}

inline polynomial primitive_part_in(const polynomial &p, const expr &v)
{
    const polynomial c = content_in(p, v);
    if (c.is_constant()) {
        return make_monic(p);
    }
    return make_monic(*divide_exact(p, c));
}

/// Fraction-free pseudo-remainder of a by b in the main atom v.
inline polynomial pseudo_remainder(polynomial a, const polynomial &b, const expr &v)
{
    const int db = b.degree_in(v);
    const polynomial lcb = b.leading_coefficient_in(v);
    int da = a.degree_in(v);
    while (!a.is_zero() && da >= db) {
        const polynomial lca = a.leading_coefficient_in(v);
        const polynomial shift = da > db ? polynomial::atom(v, da - db) : polynomial::constant(1);
        a = lcb * a - lca * shift * b;
        da = a.is_zero() ? 0 : a.degree_in(v);
    }
    return a;
}

inline bool atoms_disjoint(const polynomial &a, const polynomial &b)
{
    const auto xa = a.atoms();
    const auto xb = b.atoms();
    std::size_t i = 0, j = 0;
    while (i < xa.size() && j < xb.size()) {
        const int c = compare(xa[i], xb[j]);
        if (c == 0) {
            return false;
        }
        c < 0 ? ++i : ++j;
    }
    return true;
}

} // namespace detail

namespace detail
{

inline monomial monomial_content(const polynomial &p)
{
    monomial g = p.terms().front().mono;
    for (const auto &t : p.terms()) {
        if (g.empty()) {
            break;
        }
        g = monomial_gcd(g, t.mono);
    }
    return g;
}

inline polynomial strip_monomial(const polynomial &p, const monomial &m)
{
    if (m.empty()) {
        return p;
    }
    std::vector<term> out;
    out.reserve(p.size());
    for (const auto &t : p.terms()) {
        out.push_back({*divide(t.mono, m), t.coeff});
    }
    return polynomial::from_terms(std::move(out));
}

// An atom of a that b lacks, if any.
inline std::optional<expr> private_atom(const std::vector<expr> &a, const std::vector<expr> &b)
{
    std::size_t j = 0;
    for (const auto &x : a) {
        while (j < b.size() && compare(b[j], x) < 0) {
            ++j;
        }
        if (j == b.size() || compare(b[j], x) != 0) {
            return x;
        }
    }
    return std::nullopt;
}

// gcd(a, g) when v occurs in a only: g against every coefficient of a in v.
inline polynomial gcd_with_coefficients(const polynomial &a, const expr &v, polynomial g)
{
    std::vector<polynomial> cs = a.coefficients_in(v);
    std::erase_if(cs, [](const polynomial &c) { return c.is_zero(); });
    std::sort(cs.begin(), cs.end(), [](const polynomial &x, const polynomial &y) { return x.size() < y.size(); });
    for (const auto &c : cs) {
        g = gcd(g, c);
        if (g.is_constant()) {
            return polynomial::constant(1);
        }
    }
    return make_monic(g);
}

} // namespace detail

/// Greatest common divisor over Q, normalized to leading coefficient one.
/// Cheap structural reductions first (monomial content, atoms private to one
/// side, trial division), then a recursive primitive PRS in the common atom
/// of lowest degree.
inline polynomial gcd(const polynomial &a, const polynomial &b)
{
    if (a.is_zero()) {
        return make_monic(b);
    }
    if (b.is_zero()) {
        return make_monic(a);
    }
    if (a.is_constant() || b.is_constant()) {
        return polynomial::constant(1);
    }
    if (a.size() == 1 || b.size() == 1) {
        // The divisors of a monomial are monomials.
        monomial g = (a.size() == 1 ? a : b).leading().mono;
        for (const auto &t : (a.size() == 1 ? b : a).terms()) {
            g = monomial_gcd(g, t.mono);
            if (g.empty()) {
                break;
            }
        }
        return polynomial::from_term({std::move(g), rational(1)});
    }
    if (a == b) {
        return make_monic(a);
    }
    const monomial ma = detail::monomial_content(a);
    const monomial mb = detail::monomial_content(b);
    if (!ma.empty() || !mb.empty()) {
        const polynomial m = polynomial::from_term({monomial_gcd(ma, mb), rational(1)});
        return m * gcd(detail::strip_monomial(a, ma), detail::strip_monomial(b, mb));
    }
    const auto xa = a.atoms();
    const auto xb = b.atoms();
    if (auto v = detail::private_atom(xa, xb)) {
        return detail::gcd_with_coefficients(a, *v, b);
    }
    if (auto v = detail::private_atom(xb, xa)) {
        return detail::gcd_with_coefficients(b, *v, a);
    }
    {
        const bool a_larger = a.size() >= b.size();
        if (auto q = divide_exact(a_larger ? a : b, a_larger ? b : a)) {
            return make_monic(a_larger ? b : a);
        }
    }
    // Same atom set from here on.
    expr v = xa.front();
    std::pair<int, int> best{1 << 30, 1 << 30};
    for (const auto &x : xa) {
        const int da = a.degree_in(x);
        const int db = b.degree_in(x);
        const std::pair<int, int> key{std::min(da, db), std::max(da, db)};
        if (key < best) {
            best = key;
            v = x;
        }
    }
    const polynomial ca = detail::content_in(a, v);
    const polynomial cb = detail::content_in(b, v);
    polynomial pa = ca.is_constant() ? a : *divide_exact(a, ca);
    polynomial pb = cb.is_constant() ? b : *divide_exact(b, cb);
    const polynomial c = gcd(ca, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) {
        std::swap(pa, pb);
    }
    if (pb.degree_in(v) == 1) {
        // A primitive linear pb is irreducible in v: the gcd is pb or trivial.
        return make_monic(divide_exact(pa, pb) ? c * pb : c);
    }
    while (true) {
        polynomial r = detail::pseudo_remainder(pa, pb, v);
        if (r.is_zero()) {
            break;
        }
        if (r.degree_in(v) == 0) {
            return make_monic(c);
        }
        pa = std::move(pb);
        pb = detail::primitive_part_in(r, v);
    }
    return make_monic(c * detail::primitive_part_in(pb, v));
}

} // namespace symmpde

#endif
