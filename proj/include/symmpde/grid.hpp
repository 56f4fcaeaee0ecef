#ifndef SYMMPDE_GRID_HPP
#define SYMMPDE_GRID_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "eval.hpp"

namespace symmpde
{

struct grid_spec {
    double x_min = -10.0;
    double x_max = 10.0;
    double t_min = -10.0;
    double t_max = 10.0;
    int nx = 201;
    int nt = 201;
    std::string singular_sentinel = "NaN";

    void validate() const
    {
        if (nx < 2 || nt < 2) {
            throw invalid_argument_error("grid needs at least two points per axis");
        }
        if (!(x_min < x_max) || !(t_min < t_max)) {
            throw invalid_argument_error("grid bounds must be increasing");
        }
    }

    double dx() const
    {
        return (x_max - x_min) / (nx - 1);
    }
    double dt() const
    {
        return (t_max - t_min) / (nt - 1);
    }
    double x(int i) const
    {
        return i == nx - 1 ? x_max : x_min + i * dx();
    }
    double t(int j) const
    {
        return j == nt - 1 ? t_max : t_min + j * dt();
    }
    /// Denominators below this modulus mark a cell as singular.
    double cell_tolerance() const
    {
        return 1e-6 * std::min(dx(), dt());
    }
};

/// Shortest decimal that reads back as the same double.
inline std::string format_double(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

/// One grid value; nullopt marks a singular cell.
struct grid_cell {
    double x;
    double t;
    std::optional<double> u;
};

/// Evaluates u(x, t) on the grid, row-major in t then x.
inline std::vector<grid_cell> evaluate_grid(const expr &u, const grid_spec &spec, const environment &params = {})
{
    spec.validate();
    eval_options opt;
    opt.singular_tolerance = spec.cell_tolerance();
    std::vector<grid_cell> out;
    out.reserve(static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.nt));
    environment env = params;
    for (int j = 0; j < spec.nt; ++j) {
        const double t = spec.t(j);
        env.set("t", t);
        for (int i = 0; i < spec.nx; ++i) {
            const double x = spec.x(i);
            env.set("x", x);
            grid_cell cell{x, t, std::nullopt};
            try {
                const complex v = eval_numeric(u, env, opt);
                if (std::abs(v.imag()) <= 1e-12 * std::max(1.0, std::abs(v.real()))) {
                    cell.u = v.real();
                }
            } catch (const singular_point_error &) {
            }
            out.push_back(cell);
        }
    }
    return out;
}

/// CSV with header x,t,u; singular cells carry the sentinel.
inline std::string grid_csv(const expr &u, const grid_spec &spec, const environment &params = {})
{
    std::string s = "x,t,u\n";
    for (const auto &c : evaluate_grid(u, spec, params)) {
        s += format_double(c.x);
        s += ',';
        s += format_double(c.t);
        s += ',';
        s += c.u ? format_double(*c.u) : spec.singular_sentinel;
        s += '\n';
    }
    return s;
}

} // namespace symmpde

#endif
