#include "slantlab/catalog.hpp"

#include "slantlab/error.hpp"

#include <cmath>
#include <cstdio>

namespace slantlab {

namespace {

// Splits "base(arg)" into base and arg; arg is empty when there are no parens.
bool split_call(std::string_view name, std::string_view& base, std::string_view& arg) {
  const auto open = name.find('(');
  if (open == std::string_view::npos) {
    base = name;
    arg = {};
    return true;
  }
  if (name.back() != ')') return false;
  base = name.substr(0, open);
  arg = name.substr(open + 1, name.size() - open - 2);
  return true;
}

double constant_arg(std::string_view arg, std::string_view name) {
  try {
    ParseOptions opts;
    opts.param_count = 0;
    return eval_expr(parse_expr(arg, opts), {});
  } catch (const Error& e) {
    throw Error(ErrorCode::usage, "invalid argument in '" + std::string(name) + "': " + e.what());
  }
}

int dimension_arg(std::string_view arg, std::string_view name) {
  const double v = constant_arg(arg, name);
  if (!(v >= 1.0) || v != std::floor(v) || v > 50.0)
    throw Error(ErrorCode::usage, "'" + std::string(name) + "': n must be an integer in [1, 50]");
  return int(v);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

AmbientStructure resolve_ambient(std::string_view name) {
  std::string_view base, arg;
  if (split_call(name, base, arg)) {
    if (name == "lorentz-sasakian-R5") return canonical_lorentzian_sasakian(2);
    if (base == "lorentz-sasakian-R2n+1" && !arg.empty()) return canonical_lorentzian_sasakian(dimension_arg(arg, name));
    if (name == "flat-product") return flat_product(2);
    if (base == "flat-product" && !arg.empty()) return flat_product(dimension_arg(arg, name));
  }
  throw Error(ErrorCode::usage, "unknown ambient model '" + std::string(name) + "'");
}

std::vector<std::string> catalog_immersion_sources(std::string_view name) {
  std::string_view base, arg;
  if (split_call(name, base, arg)) {
    if (name == "invariant-R5") return {"u1", "0", "u2", "0", "u3"};
    if (name == "anti-invariant-R5") return {"u1", "u2", "0", "0", "u3"};
    if (base == "slant-candidate-R5" && !arg.empty()) {
      const std::string th = format_double(constant_arg(arg, name));
      return {"u1", "0", "u2*cos(" + th + ")", "u2*sin(" + th + ")", "u3"};
    }
  }
  throw Error(ErrorCode::usage, "unknown immersion '" + std::string(name) + "'");
}

Immersion immersion_from_expressions(std::string name, int m, const std::vector<Expr>& components,
                                     std::vector<Interval> domain, std::vector<std::string> sources) {
  for (const Expr& e : components)
    if (e.param_count() > m)
      throw Error(ErrorCode::usage, "immersion component refers to u" + std::to_string(e.param_count()) +
                                        " but only " + std::to_string(m) + " parameters are declared");
  auto map = [components](const Vector& u) {
    Vector p(Eigen::Index(components.size()));
    const std::span<const double> params(u.data(), std::size_t(u.size()));
    for (std::size_t i = 0; i < components.size(); ++i) p[Eigen::Index(i)] = eval_expr(components[i], params);
    return p;
  };
  return Immersion(std::move(name), m, int(components.size()), map, std::move(domain), std::move(sources));
}

Immersion resolve_immersion(std::string_view name) {
  const std::vector<std::string> sources = catalog_immersion_sources(name);
  std::vector<Expr> comps;
  ParseOptions opts;
  opts.param_count = 3;
  for (const std::string& s : sources) comps.push_back(parse_expr(s, opts));
  return immersion_from_expressions(std::string(name), 3, comps, std::vector<Interval>(3, Interval{-1.0, 1.0}),
                                    sources);
}

const std::vector<CatalogEntry>& ambient_catalog() {
  static const std::vector<CatalogEntry> entries{
      {"lorentz-sasakian-R5", "canonical Lorentzian Sasakian structure on R^5 (n = 2)"},
      {"lorentz-sasakian-R2n+1(n)", "canonical Lorentzian Sasakian structure on R^(2n+1)"},
      {"flat-product", "constant almost contact structure on R^5, not Sasakian"},
      {"flat-product(n)", "constant almost contact structure on R^(2n+1), not Sasakian"},
  };
  return entries;
}

const std::vector<CatalogEntry>& immersion_catalog() {
  static const std::vector<CatalogEntry> entries{
      {"invariant-R5", "(u1, 0, u2, 0, u3) in lorentz-sasakian-R5, theta = 0"},
      {"anti-invariant-R5", "(u1, u2, 0, 0, u3) in lorentz-sasakian-R5, theta = pi/2"},
      {"slant-candidate-R5(theta)", "(u1, 0, u2 cos(theta), u2 sin(theta), u3) in lorentz-sasakian-R5, theta in radians"},
  };
  return entries;
}

const std::vector<CatalogEntry>& check_catalog() {
  static const std::vector<CatalogEntry> entries{
      {"structure", "almost contact identities of the ambient structure"},
      {"sasakian", "Lorentzian Sasakian conditions on nabla phi and nabla xi"},
      {"slant", "Q = T^2 spectrum, slant fit and classification"},
      {"corollary31", "g(TX, TY) and g(NX, NY) against the slant angle"},
      {"lemma41", "curvature identities for R(X, Y) xi and R(xi, X) xi"},
      {"theorem41", "nabla Q formula and parallel Q iff anti-invariant"},
      {"theorem42", "sectional curvature of xi-planes against cos^2(theta)"},
  };
  return entries;
}

}  // namespace slantlab
