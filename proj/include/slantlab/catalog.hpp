#pragma once

#include "slantlab/ambient.hpp"
#include "slantlab/expr.hpp"
#include "slantlab/submanifold.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace slantlab {

struct CatalogEntry {
  std::string name;       // as addressed, with a parameter signature if any
  std::string description;
};

// "lorentz-sasakian-R5", "lorentz-sasakian-R2n+1(n)", "flat-product",
// "flat-product(n)". Throws ErrorCode::usage for unknown names.
AmbientStructure resolve_ambient(std::string_view name);

// "invariant-R5", "anti-invariant-R5", "slant-candidate-R5(theta)" with theta
// in radians (any constant expression, e.g. pi/6). All live in the n = 2
// chart with parameter box [-1, 1]^3.
Immersion resolve_immersion(std::string_view name);

// The component definitions of a catalog immersion, as DSL text.
std::vector<std::string> catalog_immersion_sources(std::string_view name);

// Builds an immersion from 2n+1 component expressions in u1..um.
Immersion immersion_from_expressions(std::string name, int m, const std::vector<Expr>& components,
                                     std::vector<Interval> domain, std::vector<std::string> sources = {});

const std::vector<CatalogEntry>& ambient_catalog();
const std::vector<CatalogEntry>& immersion_catalog();
const std::vector<CatalogEntry>& check_catalog();

}  // namespace slantlab
