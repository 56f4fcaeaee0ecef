#ifndef SYMMPDE_WEIERSTRASS_HPP
#define SYMMPDE_WEIERSTRASS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace symmpde::weierstrass
{

using complex = std::complex<double>;

struct invariants {
    complex g2;
    complex g3;
};

/// Raised when the argument sits on (or numerically at) a lattice point.
class pole_error : public singular_point_error
{
public:
    explicit pole_error(complex z, const std::string &detail)
        : singular_point_error(describe(z), detail)
    {
    }

private:
    static std::string describe(complex z)
    {
        std::ostringstream os;
        os.precision(17);
        os << "weierstrass(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
        return os.str();
    }
};

struct options {
    // Series radius before the |g2|^(1/4), |g3|^(1/6) rescaling.
    double series_radius = 0.5;
    // Highest Laurent coefficient index.
    int order = 30;
    double pole_threshold = 1e12;
};

/// ℘, ℘' and ζ at one point.
struct values {
    complex p;
    complex dp;
    complex zeta;
};

/// Evaluates ℘, ℘' and ζ from the invariants by Laurent series near the origin
/// and duplication (or, when duplication is ill-conditioned, addition) to reach
/// the argument. The coefficient table is computed once per instance.
class evaluator
{
public:
    explicit evaluator(invariants inv, options opt = {}) : m_inv(inv), m_opt(opt)
    {
        m_degenerate = inv.g2 == complex(0) && inv.g3 == complex(0);
        const double scale = std::max({1.0, std::pow(std::abs(inv.g2), 0.25), std::pow(std::abs(inv.g3), 1.0 / 6.0)});
        m_radius = m_opt.series_radius / scale;
        // c[k] for k = 2..order; c2 = g2/20, c3 = g3/28,
        // ck = 3/((2k+1)(k-3)) sum_{m=2}^{k-2} cm c_{k-m}.
        m_c.assign(static_cast<std::size_t>(m_opt.order) + 1, complex(0));
        if (m_opt.order >= 2) {
            m_c[2] = inv.g2 / 20.0;
        }
        if (m_opt.order >= 3) {
            m_c[3] = inv.g3 / 28.0;
        }
        for (int k = 4; k <= m_opt.order; ++k) {
            complex s = 0;
            for (int m = 2; m <= k - 2; ++m) {
                s += m_c[static_cast<std::size_t>(m)] * m_c[static_cast<std::size_t>(k - m)];
            }
            m_c[static_cast<std::size_t>(k)] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * s;
        }
    }

    const invariants &get_invariants() const noexcept
    {
        return m_inv;
    }

    /// Laurent coefficient c_k (℘ = 1/z^2 + sum c_k z^(2k-2)).
    complex coefficient(int k) const
    {
        return (k >= 2 && k <= m_opt.order) ? m_c[static_cast<std::size_t>(k)] : complex(0);
    }

    values evaluate(complex z) const
    {
        if (std::abs(z) < 1e-12) {
            throw pole_error(z, "pole at the origin");
        }
        if (m_degenerate) {
            return {1.0 / (z * z), -2.0 / (z * z * z), 1.0 / z};
        }
        values v = eval(z, 0);
        if (!finite(v) || std::abs(v.p) > m_opt.pole_threshold) {
            throw pole_error(z, "argument is at a lattice pole");
        }
        return v;
    }

    complex wp(complex z) const
    {
        return evaluate(z).p;
    }
    complex wp_prime(complex z) const
    {
        return evaluate(z).dp;
    }
    complex wzeta(complex z) const
    {
        return evaluate(z).zeta;
    }

private:
    invariants m_inv;
    options m_opt;
    bool m_degenerate = false;
    double m_radius = 0.5;
    std::vector<complex> m_c;

    static bool finite(const values &v)
    {
        auto ok = [](complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
        return ok(v.p) && ok(v.dp) && ok(v.zeta);
    }

    bool tail_small(complex z) const
    {
        const double w = std::norm(z);
        const double tail = std::abs(m_c[static_cast<std::size_t>(m_opt.order)]) * std::pow(w, m_opt.order);
        return tail < 1e-18;
    }

    values series(complex z) const
    {
        const complex w = z * z;
        complex sp = 0, sdp = 0, sz = 0;
        for (int k = m_opt.order; k >= 2; --k) {
            const complex c = m_c[static_cast<std::size_t>(k)];
            sp = sp * w + c;
            sdp = sdp * w + c * (2.0 * k - 2.0);
            sz = sz * w + c / (2.0 * k - 1.0);
        }
        // sp = sum c_k w^(k-2), likewise for the others.
        return {1.0 / w + sp * w, -2.0 / (w * z) + sdp * z, 1.0 / z - sz * w * z};
    }

    values duplicate(const values &h) const
    {
        const complex pp = 6.0 * h.p * h.p - m_inv.g2 / 2.0;
        const complex s = pp / h.dp;
        const complex p2 = -2.0 * h.p + s * s / 4.0;
        const complex dp2 = -h.dp + 3.0 * h.p * s - s * s * s / 4.0;
        return {p2, dp2, 2.0 * h.zeta + s / 2.0};
    }

    static values add(const values &a, const values &b)
    {
        const complex s = (a.dp - b.dp) / (a.p - b.p);
        const complex p = s * s / 4.0 - a.p - b.p;
        const complex dp = -(s * (p - a.p) + a.dp);
        return {p, dp, a.zeta + b.zeta + s / 2.0};
    }

    bool duplication_ok(const values &h) const
    {
        const double scale = std::pow(1.0 + std::abs(h.p), 1.5);
        return std::abs(h.dp) > 1e-6 * scale;
    }

    values eval(complex z, int depth) const
    {
        if (std::abs(z) <= m_radius && tail_small(z)) {
            return series(z);
        }
        if (depth > 64) {
            throw pole_error(z, "argument reduction did not converge");
        }
        const values h = eval(z / 2.0, depth + 1);
        if (finite(h) && duplication_ok(h)) {
            return duplicate(h);
        }
        // z/2 is close to a half-period: split unevenly and use the addition law.
        for (double f : {0.6, 0.7, 0.55}) {
            const values a = eval(z * f, depth + 1);
            const values b = eval(z * (1.0 - f), depth + 1);
            if (std::abs(a.p - b.p) > 1e-6 * (1.0 + std::abs(a.p))) {
                return add(a, b);
            }
        }
        throw pole_error(z, "duplication breakdown");
    }
};

inline complex wp(complex z, invariants inv)
{
    return evaluator(inv).wp(z);
}

inline complex wp_prime(complex z, invariants inv)
{
    return evaluator(inv).wp_prime(z);
}

inline complex wzeta(complex z, invariants inv)
{
    return evaluator(inv).wzeta(z);
}

} // namespace symmpde::weierstrass

#endif
