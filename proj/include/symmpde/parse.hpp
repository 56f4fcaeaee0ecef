#ifndef SYMMPDE_PARSE_HPP
#define SYMMPDE_PARSE_HPP

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "calculus.hpp"

namespace symmpde
{

/// Names the parser should accept as opaque functions, and symbol role overrides.
struct parse_context {
    std::set<std::string> functions;
    std::map<std::string, symbol_role> roles;
};

namespace detail
{

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := ('-'|'+') unary | power
//   power  := base ('^' exponent)?        exponent := ['-'] int | '(' ['-'] int ')'
//   base   := number | ident | ident '(' args ')' | ident '[' ints ']' '(' args ')' | '(' expr ')'
// Jet coordinates are u or u_ followed by x/t letters in any order.
class parser
{
public:
    parser(std::string_view text, const parse_context &ctx) : m_text(text), m_ctx(ctx) {}

    expr run()
    {
        expr e = parse_expr();
        skip_ws();
        if (m_pos != m_text.size()) {
            throw parse_error("unexpected '" + std::string(1, m_text[m_pos]) + "'", m_pos);
        }
        return e;
    }

private:
    std::string_view m_text;
    const parse_context &m_ctx;
    std::size_t m_pos = 0;

    void skip_ws()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (m_pos < m_text.size() && m_text[m_pos] == c) {
            ++m_pos;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            throw parse_error(std::string("expected '") + c + "'", m_pos);
        }
    }

    expr parse_expr()
    {
        std::vector<expr> terms{parse_term()};
        while (true) {
            if (accept('+')) {
                terms.push_back(parse_term());
            } else if (accept('-')) {
                terms.push_back(raw::product({raw::constant(-1), parse_term()}));
            } else {
                break;
            }
        }
        return terms.size() == 1 ? terms[0] : raw::sum(std::move(terms));
    }

    expr parse_term()
    {
        std::vector<expr> factors{parse_unary()};
        while (true) {
            if (accept('*')) {
                factors.push_back(parse_unary());
            } else if (accept('/')) {
                factors.push_back(raw::power(parse_unary(), -1));
            } else {
                break;
            }
        }
        return factors.size() == 1 ? factors[0] : raw::product(std::move(factors));
    }

    expr parse_unary()
    {
        if (accept('-')) {
            return raw::product({raw::constant(-1), parse_unary()});
        }
        if (accept('+')) {
            return parse_unary();
        }
        return parse_power();
    }

    expr parse_power()
    {
        expr base = parse_base();
        if (accept('^')) {
            const bool paren = accept('(');
            const bool neg = accept('-');
            skip_ws();
            const std::size_t start = m_pos;
            const long n = parse_int();
            if (paren) {
                expect(')');
            }
            if (n > 4096) {
                throw parse_error("exponent too large", start);
            }
            return raw::power(base, static_cast<int>(neg ? -n : n));
        }
        return base;
    }

    long parse_int()
    {
        skip_ws();
        const std::size_t start = m_pos;
        long v = 0;
        while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            v = v * 10 + (m_text[m_pos] - '0');
            if (v > 1000000000L) {
                throw parse_error("integer too large", start);
            }
            ++m_pos;
        }
        if (m_pos == start) {
            throw parse_error("expected integer", start);
        }
        return v;
    }

    expr parse_number()
    {
        const std::size_t start = m_pos;
        std::string digits;
        while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            digits += m_text[m_pos++];
        }
        std::string frac;
        if (m_pos < m_text.size() && m_text[m_pos] == '.') {
            ++m_pos;
            while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
                frac += m_text[m_pos++];
            }
            if (frac.empty()) {
                throw parse_error("malformed number", start);
            }
        }
        rational v(integer(digits.empty() ? "0" + frac : digits + frac, 10));
        if (!frac.empty()) {
            integer scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            v /= scale;
        }
        v.canonicalize();
        return raw::constant(v);
    }

    std::string parse_identifier()
    {
        std::string s;
        while (m_pos < m_text.size() &&
               (std::isalnum(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '_')) {
            s += m_text[m_pos++];
        }
        return s;
    }

    std::vector<expr> parse_args()
    {
        std::vector<expr> args;
        if (accept(')')) {
            return args;
        }
        do {
            args.push_back(parse_expr());
        } while (accept(',') || accept(';'));
        expect(')');
        return args;
    }

    expr parse_base()
    {
        skip_ws();
        if (m_pos >= m_text.size()) {
            throw parse_error("unexpected end of input", m_pos);
        }
        const char c = m_text[m_pos];
        if (c == '(') {
            ++m_pos;
            expr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            throw parse_error("unexpected '" + std::string(1, c) + "'", m_pos);
        }
        const std::size_t start = m_pos;
        const std::string name = parse_identifier();
        std::vector<int> counts;
        bool has_counts = false;
        if (accept('[')) {
            has_counts = true;
            do {
                counts.push_back(static_cast<int>(parse_int()));
            } while (accept(','));
            expect(']');
            skip_ws();
            if (m_pos >= m_text.size() || m_text[m_pos] != '(') {
                throw parse_error("expected argument list after derivative counts", m_pos);
            }
        }
        if (accept('(')) {
            std::vector<expr> args = parse_args();
            return apply(name, std::move(args), std::move(counts), has_counts, start);
        }
        if (auto j = jet_index(name)) {
            return raw::jet(*j);
        }
        auto role = m_ctx.roles.find(name);
        return raw::symbol(name, role != m_ctx.roles.end() ? role->second : default_role(name));
    }

    static std::optional<multi_index> jet_index(const std::string &name)
    {
        if (name == "u") {
            return multi_index{};
        }
        if (name.size() < 3 || name.compare(0, 2, "u_") != 0) {
            return std::nullopt;
        }
        multi_index j;
        for (std::size_t i = 2; i < name.size(); ++i) {
            if (name[i] == 'x') {
                ++j.x;
            } else if (name[i] == 't') {
                ++j.t;
            } else {
                return std::nullopt;
            }
        }
        return j;
    }

    expr apply(const std::string &name, std::vector<expr> args, std::vector<int> counts, bool has_counts,
               std::size_t at)
    {
        auto arity = [&](std::size_t n) {
            if (args.size() != n) {
                throw parse_error(name + " expects " + std::to_string(n) + " argument(s)", at);
            }
        };
        if (has_counts || m_ctx.functions.count(name) != 0) {
            if (has_counts && counts.size() != args.size()) {
                throw parse_error("derivative counts do not match argument count", at);
            }
            return raw::function(name, std::move(args), std::move(counts));
        }
        if (name == "exp") {
            arity(1);
            return raw::kernel(kernel_tag::exp, std::move(args));
        }
        if (name == "arctan" || name == "atan") {
            arity(1);
            return raw::kernel(kernel_tag::arctan, std::move(args));
        }
        if (name == "sqrt") {
            arity(1);
            return raw::kernel(kernel_tag::root, std::move(args), 2);
        }
        if (name == "root") {
            arity(2);
            const rational_function q = to_rational(args[1]);
            if (!q.is_constant() || q.constant_value().get_den() != 1 || sgn(q.constant_value()) <= 0) {
                throw parse_error("root degree must be a positive integer", at);
            }
            return raw::kernel(kernel_tag::root, {args[0]}, static_cast<int>(q.constant_value().get_num().get_si()));
        }
        if (name == "wp" || name == "wp_prime" || name == "wzeta") {
            arity(3);
            const kernel_tag tag =
                name == "wp" ? kernel_tag::wp : (name == "wp_prime" ? kernel_tag::wp_prime : kernel_tag::wzeta);
            return raw::kernel(tag, std::move(args));
        }
        if (name == "diff") {
            if (args.size() < 2) {
                throw parse_error("diff expects an expression and at least one variable", at);
            }
            expr e = normalize(args[0]);
            for (std::size_t i = 1; i < args.size(); ++i) {
                if (!args[i].is_atom()) {
                    throw parse_error("diff variable must be a symbol or jet coordinate", at);
                }
                e = diff(e, args[i]);
            }
            return e;
        }
        throw unknown_kernel_error(name, at);
    }
};

} // namespace detail

/// Parses the expression grammar and returns the raw tree.
inline expr parse_raw(std::string_view text, const parse_context &ctx = {})
{
    return detail::parser(text, ctx).run();
}

/// Parses and normalizes.
inline expr parse(std::string_view text, const parse_context &ctx = {})
{
    return normalize(parse_raw(text, ctx));
}

} // namespace symmpde

#endif
