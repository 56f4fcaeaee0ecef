#ifndef SYMMPDE_CATALOG_HPP
#define SYMMPDE_CATALOG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eval.hpp"
#include "parse.hpp"
#include "print.hpp"
#include "zero_test.hpp"

namespace symmpde
{

/// Raised when parameters violate an entry's constraints.
class constraint_error : public error
{
public:
    explicit constraint_error(const std::string &what) : error("constraint violated: " + what) {}
};

namespace detail
{

inline const parse_context &profile_context()
{
    static const parse_context ctx{{"U"}, {}};
    return ctx;
}

/// Parses with U declared as the opaque profile function.
inline expr parse_profile(const std::string &text)
{
    return parse(text, profile_context());
}

} // namespace detail

/// Derived constants shared by several similarity forms.
struct derived_constants {
    expr alpha = parse("(a2 + 4*a3)/(4*a1)");
    expr beta = parse("1/sqrt(4*a*c - b^2)");
    expr A = parse("a2/a1");
    expr T = parse("2*a*t + b");
};

/// A reduced ODE for the profile U of one similarity variable.
struct ode_entry {
    std::string id;
    // Independent variable of the profile: X or T.
    expr variable;
    expr expression;
    // Nonempty when the ODE is a product of brackets.
    std::vector<expr> factors;
    std::vector<expr> known_solutions;
};

/// A similarity reduction: substitute the form, invert the variable map, divide by the ODE.
struct reduction_case {
    std::string id;
    std::string ode_id;
    std::string description;
    expr similarity_variable;
    // u in terms of x, t and U(similarity_variable).
    expr similarity_form;
    // Parameter relations imposed before substitution.
    std::vector<std::pair<expr, expr>> assumptions;
    // Atom replaced to express everything in the similarity variable.
    expr inverse_atom;
    expr inverse_value;
};

struct constraint {
    enum class kind { nonzero, positive, equal };
    kind type;
    expr lhs;
    expr rhs;

    std::string describe() const
    {
        switch (type) {
            case kind::nonzero:
                return to_string(lhs) + " != 0";
            case kind::positive:
                return to_string(lhs) + " > 0";
            case kind::equal:
                return to_string(lhs) + " = " + to_string(rhs);
        }
        return "";
    }
};

struct catalog_entry {
    std::string id;
    std::string case_id;
    std::string ode_id;
    std::string tag;
    std::vector<constraint> constraints;
    expr similarity_variable;
    expr similarity_form;
    // The profile U that produces the closed form.
    expr profile;
    expr closed_form;
};

/// Plotting parameters for one figure panel.
struct preset {
    std::string name;
    std::string entry;
    std::vector<std::pair<std::string, expr>> params;
};

namespace detail
{

inline constraint nonzero(const std::string &s)
{
    return {constraint::kind::nonzero, parse(s), number(0)};
}

inline constraint positive(const std::string &s)
{
    return {constraint::kind::positive, parse(s), number(0)};
}

inline constraint equal(const std::string &a, const std::string &b)
{
    return {constraint::kind::equal, parse(a), parse(b)};
}

inline expr bind_profile(const expr &form, const expr &variable, const expr &profile)
{
    substitution s;
    s.bind_function("U", {variable}, profile);
    return s.apply(form);
}

} // namespace detail

class catalog
{
public:
    static const catalog &instance()
    {
        static const catalog c;
        return c;
    }

    const std::vector<catalog_entry> &entries() const noexcept
    {
        return m_entries;
    }
    const std::vector<ode_entry> &odes() const noexcept
    {
        return m_odes;
    }
    const std::vector<reduction_case> &cases() const noexcept
    {
        return m_cases;
    }
    const std::vector<preset> &presets() const noexcept
    {
        return m_presets;
    }

    const catalog_entry &entry(const std::string &id) const
    {
        return find(m_entries, id, "solution");
    }
    const ode_entry &ode(const std::string &id) const
    {
        return find(m_odes, id, "ODE");
    }
    const reduction_case &reduction(const std::string &id) const
    {
        return find(m_cases, id, "reduction case");
    }
    const preset &find_preset(const std::string &name) const
    {
        for (const auto &p : m_presets) {
            if (p.name == name) {
                return p;
            }
        }
        throw invalid_argument_error("unknown preset '" + name + "'");
    }
    std::vector<const preset *> presets_for(const std::string &entry_id) const
    {
        std::vector<const preset *> out;
        for (const auto &p : m_presets) {
            if (p.entry == entry_id) {
                out.push_back(&p);
            }
        }
        return out;
    }

private:
    std::vector<catalog_entry> m_entries;
    std::vector<ode_entry> m_odes;
    std::vector<reduction_case> m_cases;
    std::vector<preset> m_presets;

    template <class T>
    static const T &find(const std::vector<T> &v, const std::string &id, const char *what)
    {
        for (const auto &e : v) {
            if (e.id == id) {
                return e;
            }
        }
        throw invalid_argument_error(std::string("unknown ") + what + " '" + id + "'");
    }

    catalog()
    {
        using detail::parse_profile;
        const derived_constants k;
        const expr x = symbol("x");
        const expr t = symbol("t");
        const expr X = symbol("X");
        const expr T = symbol("T");

        m_odes.push_back({"ode1",
                          X,
                          parse_profile("X*U[4](X) + 4*U[3](X) + 6*X*U[1](X)*U[2](X) + 2*U(X)*U[2](X) + 8*U[1](X)^2"),
                          {},
                          {parse("c1"), parse("c2/X")}});
        m_odes.push_back({"ode3",
                          X,
                          parse_profile("U[4](X) + 6*U[1](X)*U[2](X)"),
                          {},
                          {parse("2*mu*wzeta(mu*(X + x0), g2, g3) + c3")}});
        {
            const expr f1 = parse_profile("3*a1^2*(T^2 - 1) - 2*a1*(a2*T - 2*a3*T + 2*U(T)) - a2*(a2 + 4*a3)");
            const expr f2 = parse_profile("3*a1*T - a2 + 2*a3 - 2*U[1](T)");
            m_odes.push_back({"ode31",
                              T,
                              f1 * f2,
                              {f1, f2},
                              {parse("(3*a1^2*(T^2 - 1) - 2*(a2 - 2*a3)*a1*T - a2*(a2 + 4*a3))/(4*a1)"),
                               parse("(3*a1*T^2 - 2*a2*T + 4*a3*T + 4*c8)/4")}});
        }
        {
            const expr f1 = parse_profile("a3*(3*a3*(T^2 - 1) - 4*U(T)) + 2*a3*a1*T - 5*a1^2");
            const expr f2 = parse_profile("3*a3*T + a1 - 2*U[1](T)");
            m_odes.push_back({"ode6",
                              T,
                              f1 * f2,
                              {f1, f2},
                              {parse("(3*a3^2*(T^2 - 1) + 2*a3*a1*T - 5*a1^2)/(4*a3)"),
                               parse("(2*a1*T + 3*a3*T^2 + 4*c9)/4")}});
        }

        const expr quarter = parse("(3*t - x)/4");
        const expr e1 = exp(-2 * symbol("a1") * k.beta * arctan(k.beta * k.T));
        const expr x1 = (x - t + k.A) * e1;
        const expr e2a = parse("exp(-a1*t/c)");
        const expr x2a = (x - t) * e2a;
        const expr e4 = parse("exp(a1/(2*t^2))");
        const expr x4 = (x - t + k.A) * e4;
        const expr x2 = parse("x - (1 + a2/c)*t");
        auto U = [](const expr &arg) { return function("U", {arg}); };

        m_cases.push_back({"1", "ode1", "f = a t^2 + b t + c", x1, k.alpha + quarter + e1 * U(x1), {}, x,
                           X / e1 + t - k.A});
        m_cases.push_back({"2", "ode3", "f = c, a1 = 0, a2 = 2 a3", x2, parse("(1/2 + a3/c)*t") + U(x2),
                           {{symbol("a3"), parse("a2/2")}}, x, X + parse("(1 + a2/c)*t")});
        m_cases.push_back({"2A", "ode1", "f = c, a2 = 0", x2a, parse("a3/a1") + quarter + e2a * U(x2a), {}, x,
                           X / e2a + t});
        m_cases.push_back({"3", "ode31", "f = 0", t,
                           (parse("a1*x*(x - 4*t) - 4*a3*x") + 4 * U(t)) / parse("4*a1*(t - x) - 4*a2"), {}, t, T});
        m_cases.push_back({"3A", "ode6", "f = 0, a2 = 0", t,
                           (parse("4*x*a1 - x*(x - 4*t)*a3") - 4 * U(t)) / parse("4*(a1 + (x - t)*a3)"), {}, t, T});
        m_cases.push_back({"4", "ode1", "f = t^3", x4, k.alpha + quarter + e4 * U(x4), {}, x, X / e4 + t - k.A});

        auto add = [&](std::string id, std::string case_id, std::string tag, std::vector<constraint> cs,
                       const expr &profile) {
            const reduction_case &rc = reduction(case_id);
            const ode_entry &o = ode(rc.ode_id);
            expr form = rc.similarity_form;
            for (const auto &[a, v] : rc.assumptions) {
                form = substitute(form, {{a, v}});
            }
            const expr closed = detail::bind_profile(form, o.variable, profile);
            m_entries.push_back({std::move(id), case_id, rc.ode_id, std::move(tag), std::move(cs),
                                 rc.similarity_variable, rc.similarity_form, profile, closed});
        };
        using detail::equal;
        using detail::nonzero;
        using detail::positive;
        add("u1a", "1", "case-1/constant-profile", {nonzero("a1"), positive("4*a*c - b^2")}, parse("c1"));
        add("u1b", "1", "case-1/reciprocal-profile", {nonzero("a1")}, parse("c2/X"));
        add("solu1a", "2", "case-2/zeta-profile", {nonzero("c"), equal("a2", "2*a3"), nonzero("mu")},
            parse("2*mu*wzeta(mu*(X + x0), g2, g3) + c3"));
        add("u1bi", "2A", "case-2A/constant-profile", {nonzero("a1"), nonzero("c")}, parse("c6"));
        add("u1bii", "2A", "case-2A/reciprocal-profile", {nonzero("a1")}, parse("c7/X"));
        add("solu2b", "3", "case-3/linear-bracket", {nonzero("a1")}, parse("(3*a1*T^2 - 2*a2*T + 4*a3*T + 4*c8)/4"));
        add("solu2b2", "3A", "case-3A/linear-bracket", {nonzero("a1")}, parse("(2*a1*T + 3*a3*T^2 + 4*c9)/4"));
        add("u3a", "4", "case-4/constant-profile", {nonzero("a1")}, parse("c10"));

        auto num = [](const char *s) { return parse(s); };
        // Elliptic panels: a3 = a2/2, mu = -2^(-1/3), g2 = 2^(4/3) c4, g3 = c5, x0 = c4, c3 = 0.
        auto elliptic = [&](std::string name, const char *a2, const char *c, const char *c4, const char *c5) {
            m_presets.push_back({std::move(name),
                                 "solu1a",
                                 {{"a2", num(a2)},
                                  {"a3", num(a2) / 2},
                                  {"c", num(c)},
                                  {"mu", parse("-1/root(2, 3)")},
                                  {"x0", num(c4)},
                                  {"g2", parse("2*root(2, 3)") * num(c4)},
                                  {"g3", num(c5)},
                                  {"c3", number(0)}}});
        };
        m_presets.push_back({"fig1a",
                             "u1a",
                             {{"a1", num("1.1")},
                              {"a2", num("0.9")},
                              {"a3", num("1.2")},
                              {"a", num("0.88")},
                              {"b", num("0.9")},
                              {"c", num("0.9")},
                              {"c1", num("1")}}});
        m_presets.push_back(
            {"fig1b", "u1b", {{"a1", num("2.1")}, {"a2", num("2.1")}, {"a3", num("3.1")}, {"c2", num("0.9")}}});
        elliptic("fig2a", "1.9866", "9.8654", "1.2341", "0.8954");
        elliptic("fig2b", "5", "1", "1", "1");
        elliptic("fig2c", "1.9866", "9.8654", "5.2341", "4.8954");
        elliptic("fig2d", "1.767", "9.8654", "1.2341", "0.8954");
        m_presets.push_back({"fig3a", "u1bi", {{"a1", num("0.8")}, {"a3", num("0.8")}, {"c", num("1")}, {"c6", num("1")}}});
        m_presets.push_back({"fig3b", "u1bii", {{"a1", num("0.8")}, {"a2", num("2")}, {"a3", num("0.8")}, {"c7", num("1")}}});
        m_presets.push_back(
            {"fig3c", "solu2b", {{"a1", num("0.8")}, {"a2", num("2")}, {"a3", num("0.8")}, {"c8", num("1")}}});
        m_presets.push_back({"fig3d", "solu2b2", {{"a1", num("0.8")}, {"a3", num("0.8")}, {"c9", num("1")}}});
        m_presets.push_back(
            {"fig4", "u3a", {{"a1", num("1")}, {"a2", num("1")}, {"a3", num("1")}, {"c10", num("1")}}});
    }
};

using parameter_map = std::map<std::string, expr>;

/// Closed form of a catalog entry with the given parameters bound; the rest stay symbolic.
inline expr build_solution(const std::string &id, const parameter_map &params = {})
{
    const catalog_entry &e = catalog::instance().entry(id);
    substitution s;
    for (const auto &[name, value] : params) {
        s.bind(symbol(name), value);
    }
    for (const auto &c : e.constraints) {
        if (c.type != constraint::kind::equal) {
            continue;
        }
        // Impose lhs = rhs by solving for whichever side is still free.
        const bool lhs_bound = params.count(to_string(c.lhs)) != 0;
        const expr lhs = s.apply(c.lhs);
        const expr rhs = s.apply(c.rhs);
        if (lhs_bound && free_atoms(rhs).empty()) {
            if (lhs != rhs) {
                throw constraint_error(c.describe() + " (got " + to_string(lhs) + " and " + to_string(rhs) + ")");
            }
        } else if (lhs_bound) {
            const expr free = free_atoms(c.rhs).front();
            const expr coeff = diff(c.rhs, free);
            s.bind(free, (lhs - (c.rhs - coeff * free)) / coeff);
        } else if (free_atoms(rhs).empty()) {
            s.bind(c.lhs, rhs);
        }
    }
    for (const auto &c : e.constraints) {
        const expr v = s.apply(c.lhs - c.rhs);
        const rational_function r = to_rational(v);
        if (!r.is_constant()) {
            continue;
        }
        const rational q = r.constant_value();
        if ((c.type == constraint::kind::nonzero && q == 0) || (c.type == constraint::kind::positive && sgn(q) <= 0) ||
            (c.type == constraint::kind::equal && q != 0)) {
            throw constraint_error(c.describe());
        }
    }
    return s.apply(e.closed_form);
}

inline expr build_solution(const std::string &id, const preset &p)
{
    parameter_map m(p.params.begin(), p.params.end());
    return build_solution(id, m);
}

/// The six derivatives entering the PDE.
struct pde_derivatives {
    expr u_x, u_t, u_xx, u_xt, u_xxxx, u_xxxt;

    explicit pde_derivatives(const expr &u)
    {
        const expr x = symbol("x");
        const expr t = symbol("t");
        u_x = diff(u, x);
        u_t = diff(u, t);
        u_xx = diff(u_x, x);
        u_xt = diff(u_x, t);
        const expr u_xxx = diff(u_xx, x);
        u_xxxx = diff(u_xxx, x);
        u_xxxt = diff(u_xxx, t);
    }
};

inline rational_function pde_residual_rational(const expr &u)
{
    const pde_derivatives d(u);
    auto r = [](const expr &e) { return to_rational(e); };
    return r(d.u_xt) + rational_function::constant(6) * r(d.u_x) * r(d.u_xx) + r(d.u_xxxx) + r(d.u_xxxt) +
           rational_function::constant(4) * r(d.u_x) * r(d.u_xt) + rational_function::constant(2) * r(d.u_xx) * r(d.u_t);
}

/// u_xt + 6 u_x u_xx + u_xxxx + u_xxxt + 4 u_x u_xt + 2 u_xx u_t, normalized.
inline expr pde_residual_symbolic(const expr &u)
{
    return from_rational(pde_residual_rational(u));
}

/// Evaluates the residual in floating point from separately evaluated derivatives.
class residual_evaluator
{
public:
    explicit residual_evaluator(const expr &u, eval_options opt = {}) : m_d(u), m_opt(opt) {}

    struct sample {
        complex residual;
        // Largest derivative modulus, a measure of pole proximity.
        double scale;
    };

    sample at(complex x, complex t, environment env) const
    {
        env.set("x", x).set("t", t);
        try {
            const complex ux = eval_numeric(m_d.u_x, env, m_opt);
            const complex ut = eval_numeric(m_d.u_t, env, m_opt);
            const complex uxx = eval_numeric(m_d.u_xx, env, m_opt);
            const complex uxt = eval_numeric(m_d.u_xt, env, m_opt);
            const complex uxxxx = eval_numeric(m_d.u_xxxx, env, m_opt);
            const complex uxxxt = eval_numeric(m_d.u_xxxt, env, m_opt);
            const complex r = uxt + 6.0 * ux * uxx + uxxxx + uxxxt + 4.0 * ux * uxt + 2.0 * uxx * ut;
            double s = 0;
            for (complex v : {ux, ut, uxx, uxt, uxxxx, uxxxt}) {
                s = std::max(s, std::abs(v));
            }
            return {r, s};
        } catch (const singular_point_error &e) {
            std::ostringstream os;
            os.precision(17);
            os << "at (x, t) = (" << x << ", " << t << "): " << e.what();
            throw singular_point_error(e.subexpression(), os.str());
        }
    }

private:
    pde_derivatives m_d;
    eval_options m_opt;
};

/// Max |residual| over the points; symbols other than x and t come from env.
inline double pde_residual_numeric(const expr &u, const std::vector<std::pair<complex, complex>> &points,
                                   const environment &env = {})
{
    const residual_evaluator ev(u);
    double worst = 0;
    for (const auto &[x, t] : points) {
        worst = std::max(worst, std::abs(ev.at(x, t, env).residual));
    }
    return worst;
}

/// Uniform doubles in [0,1) from a 64-bit Mersenne twister, identical on every platform.
class uniform_source
{
public:
    explicit uniform_source(std::uint64_t seed) : m_gen(seed) {}
    double next()
    {
        return static_cast<double>(m_gen() >> 11) * 0x1.0p-53;
    }
    double in(double lo, double hi)
    {
        return lo + (hi - lo) * next();
    }

private:
    std::mt19937_64 m_gen;
};

struct sampling_options {
    double lo = -3.0;
    double hi = 3.0;
    // Points where some derivative exceeds this are treated as pole-adjacent.
    double max_scale = 1e3;
    int max_attempts = 100000;
};

/// Seeded real points at which u and its derivatives are finite and moderate.
inline std::vector<std::pair<complex, complex>> nonsingular_points(const expr &u, std::size_t n, std::uint64_t seed,
                                                                   const environment &env = {},
                                                                   const sampling_options &opt = {})
{
    const residual_evaluator ev(u);
    uniform_source rng(seed);
    std::vector<std::pair<complex, complex>> out;
    int attempts = 0;
    while (out.size() < n) {
        if (++attempts > opt.max_attempts) {
            throw unsupported_error("could not find enough nonsingular sample points");
        }
        const double x = rng.in(opt.lo, opt.hi);
        const double t = rng.in(opt.lo, opt.hi);
        try {
            if (ev.at(x, t, env).scale <= opt.max_scale) {
                out.emplace_back(x, t);
            }
        } catch (const singular_point_error &) {
        }
    }
    return out;
}

/// Substitutes the profile U into an ODE and normalizes.
inline expr ode_residual(const std::string &ode_id, const expr &profile)
{
    const ode_entry &o = catalog::instance().ode(ode_id);
    return detail::bind_profile(o.expression, o.variable, profile);
}

/// One bracket of a factored ODE evaluated on a profile.
inline expr ode_factor_residual(const std::string &ode_id, std::size_t factor, const expr &profile)
{
    const ode_entry &o = catalog::instance().ode(ode_id);
    if (factor >= o.factors.size()) {
        throw invalid_argument_error("ODE " + ode_id + " has no factor " + std::to_string(factor));
    }
    return detail::bind_profile(o.factors[factor], o.variable, profile);
}

struct reduction_report {
    bool ok = false;
    std::string case_id;
    std::string ode_id;
    // Residual in the similarity variable after inverting the variable map.
    expr residual;
    // residual = prefactor * ode expression when ok.
    expr prefactor;
    std::string message;
};

namespace detail
{

inline bool mentions_profile(const expr &e)
{
    for (const auto &a : free_atoms(e)) {
        if (a.kind() == node_kind::function && a->name == "U") {
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Substitutes the similarity form into the PDE and divides by the reduced ODE exactly.
inline reduction_report verify_reduction(const std::string &case_id)
{
    const catalog &cat = catalog::instance();
    const reduction_case &rc = cat.reduction(case_id);
    const ode_entry &o = cat.ode(rc.ode_id);
    reduction_report rep;
    rep.case_id = rc.id;
    rep.ode_id = rc.ode_id;
    expr form = rc.similarity_form;
    for (const auto &[a, v] : rc.assumptions) {
        form = substitute(form, {{a, v}});
    }
    substitution inverse;
    inverse.bind(rc.inverse_atom, rc.inverse_value);
    const rational_function r = inverse.apply(pde_residual_rational(form));
    rep.residual = from_rational(r);
    const rational_function ode = to_rational(o.expression);
    if (r.is_zero()) {
        rep.message = "residual vanishes identically; no reduced equation to recover";
        return rep;
    }
    const auto q = divide_exact(r.num(), ode.num());
    if (!q) {
        rep.message = "reduced ODE does not divide the residual";
        return rep;
    }
    const rational_function pre = rational_function::make(*q, r.den()) * rational_function(ode.den());
    rep.prefactor = from_rational(pre);
    if (detail::mentions_profile(rep.prefactor)) {
        rep.message = "prefactor depends on the profile";
        return rep;
    }
    rep.ok = true;
    rep.message = "residual = (" + to_string(rep.prefactor) + ") * " + o.id;
    return rep;
}

} // namespace symmpde

#endif
