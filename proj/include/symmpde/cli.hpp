#ifndef SYMMPDE_CLI_HPP
#define SYMMPDE_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catalog.hpp"
#include "grid.hpp"
#include "serialize.hpp"
#include "symmetry.hpp"

namespace symmpde::cli
{

enum exit_code : int { success = 0, verification_failed = 1, usage = 2 };

/// Raised for bad arguments detected after option parsing.
class usage_error : public invalid_argument_error
{
public:
    using invalid_argument_error::invalid_argument_error;
};

namespace detail
{

inline parameter_map parse_params(const std::vector<std::string> &items)
{
    parameter_map m;
    for (const auto &item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw usage_error("--param expects name=value, got '" + item + "'");
        }
        m[item.substr(0, eq)] = parse(item.substr(eq + 1));
    }
    return m;
}

inline std::string field_string(const vector_field &v)
{
    return "(" + to_string(v.xi) + ", " + to_string(v.tau) + ", " + to_string(v.eta) + ")";
}

inline void write_output(const std::string &path, const std::string &content, std::ostream &out)
{
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw usage_error("cannot open '" + path + "' for writing");
    }
    f << content;
}

inline std::string format_value(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

inline int verify_symmetries(std::ostream &out)
{
    bool ok = true;
    const auto basis = generators::basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto rep = verify_generator(basis[i]);
        ok = ok && rep.is_symmetry();
        out << "V" << i + 1 << " " << field_string(basis[i]) << ": " << (rep.is_symmetry() ? "PASS" : "FAIL");
        if (!rep.is_symmetry()) {
            out << " residual " << rep.residual;
        }
        out << "\n";
    }
    const determining_system ds = extract_determining();
    const vector_field fam = generators::family();
    std::size_t nonzero = 0;
    for (const auto &e : ds.evaluate(fam)) {
        nonzero += e.is_zero_constant() ? 0 : 1;
    }
    ok = ok && nonzero == 0;
    out << "family " << field_string(fam) << ": " << (nonzero == 0 ? "PASS" : "FAIL") << " (" << ds.size()
        << " determining equations, " << nonzero << " nonzero)\n";
    return ok ? success : verification_failed;
}

inline int commutator(std::ostream &out)
{
    const auto basis = generators::basis();
    const auto table = commutator_table(basis, basis);
    std::vector<std::vector<std::string>> cells(basis.size() + 1, std::vector<std::string>(basis.size() + 1));
    cells[0][0] = "[,]";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        cells[0][i + 1] = "V" + std::to_string(i + 1);
        cells[i + 1][0] = "V" + std::to_string(i + 1);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            cells[i + 1][j + 1] = format_combination(table[i][j]);
        }
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto &row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            width[j] = std::max(width[j], row[j].size());
        }
    }
    for (const auto &row : cells) {
        std::string line;
        for (std::size_t j = 0; j < row.size(); ++j) {
            line += row[j] + std::string(width[j] - row[j].size() + 2, ' ');
        }
        line.erase(line.find_last_not_of(' ') + 1);
        out << line << "\n";
    }
    return success;
}

struct solution_options {
    std::string g2 = "4";
    std::string g3 = "1";
    std::string mu = "1";
    std::string x0 = "0";
    std::size_t points = 100;
    std::uint64_t seed = 7;
    double tolerance = 1e-8;
    std::vector<std::string> params;
};

inline int verify_solution(const std::string &id, const solution_options &o, std::ostream &out)
{
    const catalog_entry &e = catalog::instance().entry(id);
    parameter_map params = parse_params(o.params);
    if (e.id != "solu1a") {
        const expr u = build_solution(id, params);
        const expr r = pde_residual_symbolic(u);
        const zero_status z = is_zero(r);
        if (z == zero_status::zero) {
            out << "residual: 0 (symbolic)\n";
            return success;
        }
        out << "residual: " << r << " (" << to_string(z) << ")\n";
        return verification_failed;
    }
    params.try_emplace("g2", parse(o.g2));
    params.try_emplace("g3", parse(o.g3));
    params.try_emplace("mu", parse(o.mu));
    params.try_emplace("x0", parse(o.x0));
    params.try_emplace("a2", number(1));
    params.try_emplace("c", number(2));
    params.try_emplace("c3", number(0));
    const expr u = build_solution(id, params);
    const auto pts = nonsingular_points(u, o.points, o.seed);
    const double worst = pde_residual_numeric(u, pts);
    out << "max |residual| = " << format_value(worst) << " over " << pts.size() << " points (numeric)\n";
    return worst <= o.tolerance ? success : verification_failed;
}

inline int verify_reduction_cmd(const std::string &id, std::ostream &out)
{
    const reduction_report rep = verify_reduction(id);
    out << "case " << rep.case_id << ": " << (rep.ok ? "PASS" : "FAIL") << "\n" << rep.message << "\n";
    if (!rep.ok) {
        out << "residual: " << rep.residual << "\n";
    }
    return rep.ok ? success : verification_failed;
}

inline int verify_ode(const std::string &id, std::ostream &out)
{
    const ode_entry &o = catalog::instance().ode(id);
    bool ok = true;
    out << o.id << ": " << o.expression << " = 0\n";
    for (std::size_t k = 0; k < o.known_solutions.size(); ++k) {
        const expr &s = o.known_solutions[k];
        const expr r = ode_residual(id, s);
        const bool zero = r.is_zero_constant();
        ok = ok && zero;
        out << "U = " << s << ": " << (zero ? "PASS" : "FAIL");
        if (!o.factors.empty()) {
            // Branch k annihilates bracket k.
            const bool branch = ode_factor_residual(id, k, s).is_zero_constant();
            ok = ok && branch;
            out << " (bracket " << k + 1 << (branch ? " vanishes" : " does not vanish") << ")";
        }
        if (!zero) {
            out << " residual " << r;
        }
        out << "\n";
    }
    return ok ? success : verification_failed;
}

struct grid_options {
    std::string preset;
    std::string output;
    std::uint64_t seed = 0;
    grid_spec spec;
    std::vector<std::string> params;
};

inline int emit_grid(const std::string &id, const grid_options &o, std::ostream &out)
{
    const catalog &cat = catalog::instance();
    cat.entry(id);
    parameter_map params;
    if (!o.preset.empty()) {
        const preset &p = cat.find_preset(o.preset);
        if (p.entry != id) {
            throw usage_error("preset '" + o.preset + "' belongs to " + p.entry + ", not " + id);
        }
        params.insert(p.params.begin(), p.params.end());
    }
    for (auto &[k, v] : parse_params(o.params)) {
        params[k] = v;
    }
    const expr u = build_solution(id, params);
    for (const auto &a : free_atoms(u)) {
        if (a.kind() == node_kind::symbol && a->name != "x" && a->name != "t") {
            throw usage_error("parameter '" + a->name + "' has no value; use --preset or --param");
        }
    }
    write_output(o.output, grid_csv(u, o.spec), out);
    return success;
}

inline int list_catalog(bool json, std::ostream &out)
{
    const catalog &cat = catalog::instance();
    if (json) {
        out << catalog_json(cat).dump(2) << "\n";
        return success;
    }
    for (const auto &e : cat.entries()) {
        out << e.id << "  case " << e.case_id << "  " << e.ode_id << "  [";
        for (std::size_t i = 0; i < e.constraints.size(); ++i) {
            out << (i ? ", " : "") << e.constraints[i].describe();
        }
        out << "]";
        for (const preset *p : cat.presets_for(e.id)) {
            out << "  " << p->name;
        }
        out << "\n    u = " << e.closed_form << "\n";
    }
    return success;
}

} // namespace detail

/// Runs one subcommand; args excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    if (const char *cap = std::getenv("SYMMPDE_JET_CAP")) {
        try {
            const int c = std::stoi(cap);
            if (c < 1) {
                throw std::invalid_argument(cap);
            }
            set_jet_cap(c);
        } catch (const std::exception &) {
            err << "SYMMPDE_JET_CAP must be a positive integer\n";
            return usage;
        }
    }

    CLI::App app{"Lie symmetry and invariant solution checks for u_xt + 6u_x u_xx + u_xxxx + u_xxxt + 4u_x u_xt + "
                 "2u_xx u_t = 0",
                 "symmpde"};
    app.require_subcommand(1);

    app.add_subcommand("verify-symmetries", "check the generators and the general infinitesimals");
    app.add_subcommand("commutator-table", "print the commutator table of V1..V4");

    auto *det = app.add_subcommand("determining-eqs", "write the determining equations as JSON");
    std::string det_output;
    det->add_option("-o,--output", det_output, "output file (default stdout)");

    auto *sol = app.add_subcommand("verify-solution", "substitute a catalog solution into the PDE");
    std::string sol_id;
    detail::solution_options sol_opt;
    sol->add_option("id", sol_id, "catalog id")->required();
    sol->add_option("--g2", sol_opt.g2, "elliptic invariant g2");
    sol->add_option("--g3", sol_opt.g3, "elliptic invariant g3");
    sol->add_option("--mu", sol_opt.mu, "argument scale");
    sol->add_option("--x0", sol_opt.x0, "argument shift");
    sol->add_option("--points", sol_opt.points, "numeric sample size")->check(CLI::PositiveNumber);
    sol->add_option("--seed", sol_opt.seed, "sample seed");
    sol->add_option("--tolerance", sol_opt.tolerance, "numeric acceptance bound");
    sol->add_option("--param", sol_opt.params, "parameter binding name=value (repeatable)");

    auto *red = app.add_subcommand("verify-reduction", "recover a reduced ODE from its similarity form");
    std::string red_id;
    red->add_option("case", red_id, "case id: 1, 2, 2A, 3, 3A, 4")->required();

    auto *ode = app.add_subcommand("verify-ode", "check the known solutions of a reduced ODE");
    std::string ode_id;
    ode->add_option("id", ode_id, "ode1, ode3, ode31 or ode6")->required();

    auto *grid = app.add_subcommand("emit-grid", "evaluate a solution on a grid and write CSV");
    std::string grid_id;
    detail::grid_options grid_opt;
    grid->add_option("id", grid_id, "catalog id")->required();
    grid->add_option("--preset", grid_opt.preset, "figure parameter set");
    grid->add_option("-o,--output", grid_opt.output, "output file (default stdout)");
    grid->add_option("--seed", grid_opt.seed, "accepted for interface uniformity; grids are deterministic");
    grid->add_option("--x-min", grid_opt.spec.x_min);
    grid->add_option("--x-max", grid_opt.spec.x_max);
    grid->add_option("--t-min", grid_opt.spec.t_min);
    grid->add_option("--t-max", grid_opt.spec.t_max);
    grid->add_option("--nx", grid_opt.spec.nx);
    grid->add_option("--nt", grid_opt.spec.nt);
    grid->add_option("--sentinel", grid_opt.spec.singular_sentinel, "text for singular cells");
    grid->add_option("--param", grid_opt.params, "parameter binding name=value (repeatable)");

    auto *list = app.add_subcommand("list-catalog", "list solutions, constraints and presets");
    bool list_json = false;
    list->add_flag("--json", list_json, "JSON output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : usage;
    }

    try {
        if (app.got_subcommand("verify-symmetries")) {
            return detail::verify_symmetries(out);
        }
        if (app.got_subcommand("commutator-table")) {
            return detail::commutator(out);
        }
        if (app.got_subcommand(det)) {
            detail::write_output(det_output, to_json(extract_determining()).dump(2) + "\n", out);
            return success;
        }
        if (app.got_subcommand(sol)) {
            return detail::verify_solution(sol_id, sol_opt, out);
        }
        if (app.got_subcommand(red)) {
            return detail::verify_reduction_cmd(red_id, out);
        }
        if (app.got_subcommand(ode)) {
            return detail::verify_ode(ode_id, out);
        }
        if (app.got_subcommand(grid)) {
            grid_opt.spec.validate();
            return detail::emit_grid(grid_id, grid_opt, out);
        }
        if (app.got_subcommand(list)) {
            return detail::list_catalog(list_json, out);
        }
    } catch (const parse_error &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const invalid_argument_error &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const constraint_error &e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const error &e) {
        err << "error: " << e.what() << "\n";
        return verification_failed;
    }
    return usage;
}

} // namespace symmpde::cli

#endif
