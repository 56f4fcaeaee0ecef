#ifndef SYMMPDE_PRINT_HPP
#define SYMMPDE_PRINT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "expr.hpp"

namespace symmpde
{

std::string to_string(const expr &e);

namespace detail
{

inline std::string jet_name(multi_index j)
{
    if (j.order() == 0) {
        return "u";
    }
    return "u_" + std::string(static_cast<std::size_t>(j.x), 'x') + std::string(static_cast<std::size_t>(j.t), 't');
}

inline bool is_negative_term(const expr &e)
{
    if (e.kind() == node_kind::constant) {
        return sgn(e->value) < 0;
    }
    if (e.kind() == node_kind::product && !e->children.empty()) {
        const expr &first = e->children.front();
        return first.kind() == node_kind::constant && sgn(first->value) < 0;
    }
    return false;
}

inline expr negate_term(const expr &e)
{
    if (e.kind() == node_kind::constant) {
        return raw::constant(-e->value);
    }
    std::vector<expr> f = e->children;
    const rational c = -f.front()->value;
    if (c == 1) {
        f.erase(f.begin());
    } else {
        f.front() = raw::constant(c);
    }
    return f.size() == 1 ? f.front() : raw::product(std::move(f));
}

inline std::string args_string(const std::vector<expr> &args)
{
    std::string s;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) {
            s += ", ";
        }
        s += to_string(args[i]);
    }
    return s;
}

// Binding strength: sum 1, product 2, power base 3.
inline std::string wrapped(const expr &e, int context)
{
    int strength = 4;
    switch (e.kind()) {
        case node_kind::sum:
            strength = 1;
            break;
        case node_kind::product:
            strength = 2;
            break;
        case node_kind::power:
            strength = 3;
            break;
        case node_kind::constant:
            if (sgn(e->value) < 0) {
                strength = 0;
            } else if (e->value.get_den() != 1) {
                strength = 2;
            }
            break;
        default:
            break;
    }
    const std::string s = to_string(e);
    return strength <= context ? "(" + s + ")" : s;
}

inline std::string product_string(const expr &e)
{
    std::vector<expr> num;
    std::vector<expr> den;
    for (const auto &f : e->children) {
        if (f.kind() == node_kind::power && f->exponent < 0) {
            den.push_back(f->exponent == -1 ? f->children[0] : raw::power(f->children[0], -f->exponent));
        } else if (f.kind() == node_kind::product && num.empty()) {
            num.insert(num.end(), f->children.begin(), f->children.end());
        } else {
            num.push_back(f);
        }
    }
    std::string s;
    std::size_t first = 0;
    if (!num.empty() && num[0].kind() == node_kind::constant && num.size() > 1 &&
        (num[0]->value == -1 || num[0]->value == 1)) {
        s = num[0]->value == -1 ? "-" : "";
        first = 1;
    }
    if (num.empty()) {
        s = "1";
    }
    for (std::size_t i = first; i < num.size(); ++i) {
        if (i > first) {
            s += "*";
        }
        // A leading negative constant needs no parentheses.
        s += (i == 0 && num[i].kind() == node_kind::constant) ? to_string(num[i]) : wrapped(num[i], 2);
    }
    if (!den.empty()) {
        s += "/";
        if (den.size() == 1) {
            s += wrapped(den[0], 2);
        } else {
            s += "(" + to_string(raw::product(den)) + ")";
        }
    }
    return s;
}

} // namespace detail

/// Prints in the input grammar; parse(to_string(e)) reproduces a normalized e.
inline std::string to_string(const expr &e)
{
    const node &n = e.get();
    switch (n.kind) {
        case node_kind::constant:
            return n.value.get_str();
        case node_kind::symbol:
            return n.name;
        case node_kind::jet:
            return detail::jet_name(n.jet);
        case node_kind::function: {
            std::string s = n.name;
            bool derived = false;
            for (int c : n.counts) {
                derived = derived || c != 0;
            }
            if (derived) {
                s += "[";
                for (std::size_t i = 0; i < n.counts.size(); ++i) {
                    s += (i > 0 ? "," : "") + std::to_string(n.counts[i]);
                }
                s += "]";
            }
            return s + "(" + detail::args_string(n.children) + ")";
        }
        case node_kind::kernel:
            if (n.tag == kernel_tag::root) {
                if (n.degree == 2) {
                    return "sqrt(" + to_string(n.children[0]) + ")";
                }
                return "root(" + to_string(n.children[0]) + ", " + std::to_string(n.degree) + ")";
            }
            return std::string(kernel_name(n.tag)) + "(" + detail::args_string(n.children) + ")";
        case node_kind::sum: {
            std::string s;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                const expr &c = n.children[i];
                if (i == 0) {
                    s += to_string(c);
                } else if (detail::is_negative_term(c)) {
                    s += " - " + detail::wrapped(detail::negate_term(c), 1);
                } else {
                    s += " + " + detail::wrapped(c, 1);
                }
            }
            return s;
        }
        case node_kind::product:
            return detail::product_string(e);
        case node_kind::power: {
            const std::string base = detail::wrapped(n.children[0], 3);
            if (n.exponent < 0) {
                return base + "^(" + std::to_string(n.exponent) + ")";
            }
            return base + "^" + std::to_string(n.exponent);
        }
    }
    return "?";
}

inline std::ostream &operator<<(std::ostream &os, const expr &e)
{
    return os << to_string(e);
}

} // namespace symmpde

#endif
