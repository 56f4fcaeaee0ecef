#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include <symmpde/symmpde.hpp>

using namespace symmpde;

namespace
{

expr p(const char *s)
{
    parse_context ctx;
    ctx.functions = {"xi", "tau", "eta"};
    return parse(s, ctx);
}

const std::vector<multi_index> &indices_up_to_four()
{
    static const std::vector<multi_index> v = [] {
        std::vector<multi_index> out;
        for (int n = 0; n <= 4; ++n) {
            for (int k = 0; k <= n; ++k) {
                out.push_back({n - k, k});
            }
        }
        return out;
    }();
    return v;
}

std::vector<vector_field> sample_fields()
{
    std::vector<vector_field> out = generators::basis();
    out.push_back(generators::family());
    out.push_back({p("x^2*u"), p("t*exp(x)"), p("u^2 + x*t")});
    out.push_back(undetermined_field());
    return out;
}

} // namespace

TEST(TotalDerivative, Basics)
{
    EXPECT_EQ(total_derivative(jet(), direction::x), jet(1, 0));
    EXPECT_EQ(total_derivative(p("u_x^2"), direction::t), p("2*u_x*u_xt"));
    EXPECT_EQ(total_derivative(p("x*u"), direction::x), p("u + x*u_x"));
    EXPECT_EQ(total_derivative(p("t^2*u_t"), direction::t), p("2*t*u_t + t^2*u_tt"));
    EXPECT_EQ(total_derivative(p("exp(u)"), direction::x), p("u_x*exp(u)"));
    EXPECT_TRUE(total_derivative(p("a1*t"), direction::x).is_zero_constant());
}

TEST(TotalDerivative, AllOrderingsOfXxxt)
{
    std::array<direction, 4> order{direction::x, direction::x, direction::x, direction::t};
    int count = 0;
    do {
        expr e = jet();
        for (direction d : order) {
            e = total_derivative(e, d);
        }
        EXPECT_EQ(e, jet(3, 1));
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    EXPECT_EQ(count, 4);
}

TEST(TotalDerivative, Commute)
{
    for (const char *s : {"u_x^2*u_t + x*u", "exp(x*u)*u_xt", "u/(1 + u_x^2)", "xi(x, t, u)*u_x"}) {
        const expr e = p(s);
        EXPECT_EQ(total_derivative(total_derivative(e, direction::x), direction::t),
                  total_derivative(total_derivative(e, direction::t), direction::x))
            << s;
    }
}

TEST(TotalDerivative, JetCap)
{
    EXPECT_EQ(jet_cap(), 5);
    EXPECT_THROW((void)total_derivative(jet(4, 1), direction::x, 5), jet_order_error);
    EXPECT_THROW((void)total_derivative(jet(2, 0), direction::t, 2), jet_order_error);
    EXPECT_NO_THROW((void)total_derivative(jet(3, 1), direction::x, 5));
}

TEST(Characteristic, Examples)
{
    EXPECT_EQ(characteristic(generators::v3()), number(1));
    EXPECT_EQ(characteristic(generators::v2()), p("-u_x"));
    EXPECT_EQ(characteristic(generators::v4()), p("1 - u_x - u_t"));
    EXPECT_EQ(characteristic(generators::v1()), p("t - x/2 - u - (x - t)*u_x"));
}

TEST(Prolongation, EmptyIndexIsEta)
{
    for (const auto &v : sample_fields()) {
        EXPECT_EQ(prolong_coefficient(v, {0, 0}), normalize(v.eta));
    }
}

TEST(Prolongation, TranslationsVanish)
{
    for (multi_index j : indices_up_to_four()) {
        if (j.order() == 0) {
            continue;
        }
        EXPECT_TRUE(prolong_coefficient(generators::v2(), j).is_zero_constant());
        EXPECT_TRUE(prolong_coefficient(generators::v3(), j).is_zero_constant());
        EXPECT_TRUE(prolong_coefficient(generators::v4(), j).is_zero_constant());
    }
}

TEST(Prolongation, FirstOrderFormula)
{
    const vector_field v = undetermined_field();
    EXPECT_EQ(prolong_coefficient(v, {1, 0}),
              p("eta[1,0,0](x,t,u) + (eta[0,0,1](x,t,u) - xi[1,0,0](x,t,u))*u_x - tau[1,0,0](x,t,u)*u_t"
                " - xi[0,0,1](x,t,u)*u_x^2 - tau[0,0,1](x,t,u)*u_x*u_t"));
    EXPECT_EQ(prolong_coefficient(v, {0, 1}),
              p("eta[0,1,0](x,t,u) + (eta[0,0,1](x,t,u) - tau[0,1,0](x,t,u))*u_t - xi[0,1,0](x,t,u)*u_x"
                " - tau[0,0,1](x,t,u)*u_t^2 - xi[0,0,1](x,t,u)*u_x*u_t"));
}

TEST(Prolongation, SecondOrderFormulaOneVariable)
{
    parse_context ctx;
    ctx.functions = {"f", "g"};
    const vector_field v{parse("f(x, u)", ctx), number(0), parse("g(x, u)", ctx)};
    const expr expected = parse("g[2,0](x,u) + (2*g[1,1](x,u) - f[2,0](x,u))*u_x"
                                " + (g[0,2](x,u) - 2*f[1,1](x,u))*u_x^2 - f[0,2](x,u)*u_x^3"
                                " + (g[0,1](x,u) - 2*f[1,0](x,u))*u_xx - 3*f[0,1](x,u)*u_x*u_xx",
                                ctx);
    EXPECT_EQ(prolong_coefficient(v, {2, 0}), expected);
}

TEST(Prolongation, XxxtAgainstFourTotalDerivatives)
{
    const vector_field v = generators::v1();
    expr dq = characteristic(v);
    for (direction d : {direction::x, direction::x, direction::x, direction::t}) {
        dq = total_derivative(dq, d);
    }
    EXPECT_EQ(prolong_coefficient(v, {3, 1}), normalize(dq + v.xi * jet(4, 1) + v.tau * jet(3, 2)));
}

TEST(Prolongation, RecursiveAgreesWithClosedForm)
{
    for (const auto &v : sample_fields()) {
        for (multi_index j : indices_up_to_four()) {
            EXPECT_EQ(prolong_coefficient_recursive(v, j), prolong_coefficient(v, j)) << j.x << "," << j.t;
        }
    }
}

TEST(Prolongation, ZeroField)
{
    const vector_field zero{number(0), number(0), number(0)};
    EXPECT_TRUE(is_zero_field(zero));
    for (multi_index j : indices_up_to_four()) {
        EXPECT_TRUE(prolong_coefficient(zero, j).is_zero_constant());
    }
}

TEST(Prolongation, Linearity)
{
    const auto fields = sample_fields();
    for (std::size_t a = 0; a + 1 < fields.size(); ++a) {
        const vector_field &v = fields[a];
        const vector_field &w = fields[a + 1];
        for (multi_index j : indices_up_to_four()) {
            EXPECT_EQ(prolong_coefficient(v + w, j), normalize(prolong_coefficient(v, j) + prolong_coefficient(w, j)));
            EXPECT_EQ(prolong_coefficient(number(3, 2) * v, j), normalize(number(3, 2) * prolong_coefficient(v, j)));
        }
    }
}

TEST(Prolongation, PointFieldHasNoJetOrderAboveIndex)
{
    const vector_field v = undetermined_field();
    for (multi_index j : indices_up_to_four()) {
        for (const expr &a : free_atoms(prolong_coefficient(v, j))) {
            if (a.kind() == node_kind::jet) {
                EXPECT_LE(a->jet.order(), j.order());
            }
        }
    }
}
