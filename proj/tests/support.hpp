#ifndef SYMMPDE_TESTS_SUPPORT_HPP
#define SYMMPDE_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <symmpde/symmpde.hpp>

namespace support
{

/// Seeded source of small random expressions.
class generator
{
public:
    explicit generator(std::uint64_t seed) : m_rng(seed) {}

    int integer(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(m_rng);
    }

    double real(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(m_rng);
    }

    symmpde::expr atom()
    {
        static const char *names[] = {"x", "t", "a1", "a2"};
        const int k = integer(0, 5);
        if (k < 4) {
            return symmpde::symbol(names[k]);
        }
        return k == 4 ? symmpde::jet(1, 0) : symmpde::jet(0, 1);
    }

    /// Polynomial with at most `terms` terms of degree at most `degree`.
    symmpde::expr polynomial(int terms, int degree)
    {
        symmpde::expr out = symmpde::number(0);
        for (int i = 0; i < terms; ++i) {
            symmpde::expr m = symmpde::number(integer(-5, 5), integer(1, 4));
            const int d = integer(0, degree);
            for (int k = 0; k < d; ++k) {
                m = m * atom();
            }
            out = out + m;
        }
        return out;
    }

    /// Raw tree mixing sums, products, powers and quotients by positive polynomials.
    symmpde::expr tree(int depth)
    {
        if (depth == 0) {
            return integer(0, 2) == 0 ? symmpde::number(integer(-3, 3)) : atom();
        }
        symmpde::expr a = tree(depth - 1);
        symmpde::expr b = tree(depth - 1);
        switch (integer(0, 4)) {
        case 0:
            return symmpde::raw::sum({a, b});
        case 1:
            return symmpde::raw::product({a, b});
        case 2:
            return symmpde::raw::power(a, integer(2, 3));
        case 3:
            return symmpde::raw::product(
                {a, symmpde::raw::power(symmpde::raw::sum({symmpde::number(1), symmpde::raw::power(b, 2)}), -1)});
        default:
            return symmpde::raw::sum({a, symmpde::raw::product({symmpde::number(-1), b})});
        }
    }

private:
    std::mt19937_64 m_rng;
};

/// Environment binding x, t, a1, a2, u_x, u_t to the given values.
inline symmpde::environment point(const std::vector<double> &v)
{
    symmpde::environment env;
    env.set("x", v[0]).set("t", v[1]).set("a1", v[2]).set("a2", v[3]);
    env.set(symmpde::jet(1, 0), v[4]).set(symmpde::jet(0, 1), v[5]);
    return env;
}

inline double relative_error(std::complex<double> a, std::complex<double> b)
{
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

} // namespace support

#endif
