#ifndef SYMMPDE_SERIALIZE_HPP
#define SYMMPDE_SERIALIZE_HPP

#include <json.hpp>

#include "catalog.hpp"
#include "symmetry.hpp"

namespace symmpde
{

/// [{monomial, equation}, ...] in the expression grammar.
inline nlohmann::json to_json(const determining_system &ds)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto &e : ds.entries()) {
        out.push_back({{"monomial", to_string(e.monomial)}, {"equation", to_string(e.equation)}});
    }
    return out;
}

inline nlohmann::json to_json(const catalog_entry &e, const catalog &cat = catalog::instance())
{
    nlohmann::json constraints = nlohmann::json::array();
    for (const auto &c : e.constraints) {
        constraints.push_back(c.describe());
    }
    nlohmann::json figures = nlohmann::json::object();
    for (const preset *p : cat.presets_for(e.id)) {
        nlohmann::json params = nlohmann::json::object();
        for (const auto &[name, value] : p->params) {
            params[name] = to_string(value);
        }
        figures[p->name] = std::move(params);
    }
    return {{"id", e.id},
            {"constraints", std::move(constraints)},
            {"similarity_variable", to_string(e.similarity_variable)},
            {"similarity_form", to_string(e.similarity_form)},
            {"ode_id", e.ode_id},
            {"closed_form", to_string(e.closed_form)},
            {"figure_params", std::move(figures)},
            {"paper_tag", e.tag}};
}

inline nlohmann::json catalog_json(const catalog &cat = catalog::instance())
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto &e : cat.entries()) {
        out.push_back(to_json(e, cat));
    }
    return out;
}

} // namespace symmpde

#endif
