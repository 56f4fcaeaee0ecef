#ifndef SYMMPDE_EXPR_HPP
#define SYMMPDE_EXPR_HPP

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace symmpde
{

using rational = mpq_class;
using integer = mpz_class;

/// Node kinds, listed in the order used by the structural term order.
enum class node_kind : std::uint8_t { constant, symbol, jet, function, kernel, sum, product, power };

enum class symbol_role : std::uint8_t { independent, dependent, constant, similarity };

/// Closed set of special-function kernels. `root` is the fractional power b^(1/q).
enum class kernel_tag : std::uint8_t { exp, arctan, root, wp, wp_prime, wzeta };

inline const char *kernel_name(kernel_tag tag)
{
    switch (tag) {
        case kernel_tag::exp:
            return "exp";
        case kernel_tag::arctan:
            return "arctan";
        case kernel_tag::root:
            return "root";
        case kernel_tag::wp:
            return "wp";
        case kernel_tag::wp_prime:
            return "wp_prime";
        case kernel_tag::wzeta:
            return "wzeta";
    }
    return "?";
}

/// Derivative counts of a jet coordinate u_J over (x, t). Mixed partials commute.
struct multi_index {
    int x = 0;
    int t = 0;

    constexpr int order() const noexcept
    {
        return x + t;
    }
    friend constexpr bool operator==(const multi_index &, const multi_index &) = default;
    friend constexpr auto operator<=>(const multi_index &a, const multi_index &b)
    {
        if (auto c = a.order() <=> b.order(); c != 0) {
            return c;
        }
        if (auto c = a.x <=> b.x; c != 0) {
            return c;
        }
        return a.t <=> b.t;
    }
};

/// Default role for a symbol name: x and t are independent, X, T and z are
/// similarity variables, everything else is an arbitrary constant.
inline symbol_role default_role(const std::string &name)
{
    if (name == "x" || name == "t") {
        return symbol_role::independent;
    }
    if (name == "X" || name == "T" || name == "z") {
        return symbol_role::similarity;
    }
    return symbol_role::constant;
}

struct node;
class rational_function;

/// Immutable symbolic expression. A thin value handle around a shared node.
///
/// Expressions built by the public algebra (operators, diff, substitute, parse)
/// are normalized: they are the tree image of a canonical rational function and
/// carry it, so structural equality of normalized trees is algebraic equality
/// within the implemented class.
class expr
{
public:
    expr();
    explicit expr(std::shared_ptr<const node> n) : m_node(std::move(n)) {}

    const node &get() const noexcept
    {
        return *m_node;
    }
    const node *operator->() const noexcept
    {
        return m_node.get();
    }
    const std::shared_ptr<const node> &ptr() const noexcept
    {
        return m_node;
    }

    node_kind kind() const noexcept;
    bool is_atom() const noexcept;
    bool is_constant() const noexcept;
    bool is_zero_constant() const noexcept;
    /// Canonical rational function attached at construction, if any.
    const rational_function *canonical() const noexcept;

private:
    std::shared_ptr<const node> m_node;
};

struct node {
    node_kind kind = node_kind::constant;
    rational value;
    std::string name;
    symbol_role role = symbol_role::constant;
    multi_index jet;
    kernel_tag tag = kernel_tag::exp;
    // Root degree q for kernel_tag::root.
    int degree = 0;
    // Integer exponent for node_kind::power.
    int exponent = 0;
    std::vector<expr> children;
    // Per-argument derivative counts of an opaque function.
    std::vector<int> counts;
    std::size_t hash = 0;
    std::shared_ptr<const rational_function> canonical;
};

namespace detail
{

inline std::size_t hash_mix(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline void finish_hash(node &n)
{
    std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
    switch (n.kind) {
        case node_kind::constant:
            h = hash_mix(h, std::hash<std::string>{}(n.value.get_str()));
            break;
        case node_kind::symbol:
            h = hash_mix(h, std::hash<std::string>{}(n.name));
            h = hash_mix(h, static_cast<std::size_t>(n.role));
            break;
        case node_kind::jet:
            h = hash_mix(h, static_cast<std::size_t>(n.jet.x * 31 + n.jet.t));
            break;
        case node_kind::function:
            h = hash_mix(h, std::hash<std::string>{}(n.name));
            for (int c : n.counts) {
                h = hash_mix(h, static_cast<std::size_t>(c));
            }
            break;
        case node_kind::kernel:
            h = hash_mix(h, static_cast<std::size_t>(n.tag) * 64 + static_cast<std::size_t>(n.degree));
            break;
        case node_kind::power:
            h = hash_mix(h, static_cast<std::size_t>(n.exponent + 1024));
            break;
        default:
            break;
    }
    for (const auto &c : n.children) {
        h = hash_mix(h, c->hash);
    }
    n.hash = h;
}

inline expr make_node(node n)
{
    finish_hash(n);
    return expr(std::make_shared<const node>(std::move(n)));
}

inline const expr &zero_node()
{
    static const expr z = [] {
        node n;
        n.kind = node_kind::constant;
        n.value = 0;
        finish_hash(n);
        return expr(std::make_shared<const node>(std::move(n)));
    }();
    return z;
}

} // namespace detail

inline expr::expr() : m_node(detail::zero_node().ptr()) {}

inline node_kind expr::kind() const noexcept
{
    return m_node->kind;
}

inline bool expr::is_atom() const noexcept
{
    const auto k = m_node->kind;
    return k == node_kind::symbol || k == node_kind::jet || k == node_kind::function || k == node_kind::kernel;
}

inline bool expr::is_constant() const noexcept
{
    return m_node->kind == node_kind::constant;
}

inline bool expr::is_zero_constant() const noexcept
{
    return m_node->kind == node_kind::constant && sgn(m_node->value) == 0;
}

inline const rational_function *expr::canonical() const noexcept
{
    return m_node->canonical.get();
}

// Raw (unnormalized) node builders. The algebra layer normalizes.
namespace raw
{

inline expr constant(const rational &v)
{
    node n;
    n.kind = node_kind::constant;
    n.value = v;
    n.value.canonicalize();
    return detail::make_node(std::move(n));
}

inline expr symbol(const std::string &name, symbol_role role)
{
    node n;
    n.kind = node_kind::symbol;
    n.name = name;
    n.role = role;
    return detail::make_node(std::move(n));
}

inline expr jet(multi_index j)
{
    node n;
    n.kind = node_kind::jet;
    n.name = "u";
    n.role = symbol_role::dependent;
    n.jet = j;
    return detail::make_node(std::move(n));
}

inline expr function(const std::string &name, std::vector<expr> args, std::vector<int> counts)
{
    node n;
    n.kind = node_kind::function;
    n.name = name;
    if (counts.empty()) {
        counts.assign(args.size(), 0);
    }
    n.children = std::move(args);
    n.counts = std::move(counts);
    return detail::make_node(std::move(n));
}

inline expr kernel(kernel_tag tag, std::vector<expr> args, int degree = 0)
{
    node n;
    n.kind = node_kind::kernel;
    n.tag = tag;
    n.degree = degree;
    n.children = std::move(args);
    return detail::make_node(std::move(n));
}

inline expr sum(std::vector<expr> terms)
{
    node n;
    n.kind = node_kind::sum;
    n.children = std::move(terms);
    return detail::make_node(std::move(n));
}

inline expr product(std::vector<expr> factors)
{
    node n;
    n.kind = node_kind::product;
    n.children = std::move(factors);
    return detail::make_node(std::move(n));
}

inline expr power(expr base, int exponent)
{
    node n;
    n.kind = node_kind::power;
    n.exponent = exponent;
    n.children.push_back(std::move(base));
    return detail::make_node(std::move(n));
}

} // namespace raw

/// Total structural order: node kind, then name, then multi-index or counts,
/// then children lexicographically. Frozen; printing and term order follow it.
inline int compare(const expr &a, const expr &b)
{
    if (a.ptr() == b.ptr()) {
        return 0;
    }
    const node &x = a.get();
    const node &y = b.get();
    if (x.kind != y.kind) {
        return x.kind < y.kind ? -1 : 1;
    }
    switch (x.kind) {
        case node_kind::constant:
            return cmp(x.value, y.value) < 0 ? -1 : (cmp(x.value, y.value) > 0 ? 1 : 0);
        case node_kind::symbol:
            if (int c = x.name.compare(y.name); c != 0) {
                return c < 0 ? -1 : 1;
            }
            if (x.role != y.role) {
                return x.role < y.role ? -1 : 1;
            }
            return 0;
        case node_kind::jet:
            if (x.jet == y.jet) {
                return 0;
            }
            return x.jet < y.jet ? -1 : 1;
        case node_kind::function:
            if (int c = x.name.compare(y.name); c != 0) {
                return c < 0 ? -1 : 1;
            }
            break;
        case node_kind::kernel:
            if (x.tag != y.tag) {
                return x.tag < y.tag ? -1 : 1;
            }
            if (x.degree != y.degree) {
                return x.degree < y.degree ? -1 : 1;
            }
            break;
        case node_kind::power:
            if (x.exponent != y.exponent) {
                return x.exponent < y.exponent ? -1 : 1;
            }
            break;
        default:
            break;
    }
    if (x.kind == node_kind::function && x.counts != y.counts) {
        int total_x = 0, total_y = 0;
        for (int c : x.counts) {
            total_x += c;
        }
        for (int c : y.counts) {
            total_y += c;
        }
        if (total_x != total_y) {
            return total_x < total_y ? -1 : 1;
        }
        return x.counts < y.counts ? -1 : 1;
    }
    const auto n = std::min(x.children.size(), y.children.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(x.children[i], y.children[i]); c != 0) {
            return c;
        }
    }
    if (x.children.size() != y.children.size()) {
        return x.children.size() < y.children.size() ? -1 : 1;
    }
    return 0;
}

/// Structural equality.
inline bool operator==(const expr &a, const expr &b)
{
    if (a.ptr() == b.ptr()) {
        return true;
    }
    if (a->hash != b->hash) {
        return false;
    }
    return compare(a, b) == 0;
}

inline bool operator!=(const expr &a, const expr &b)
{
    return !(a == b);
}

struct expr_less {
    bool operator()(const expr &a, const expr &b) const
    {
        return compare(a, b) < 0;
    }
};

} // namespace symmpde

#endif
