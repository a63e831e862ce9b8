#include "slantlab/scenario.hpp"

#include "slantlab/catalog.hpp"
#include "slantlab/error.hpp"
#include "slantlab/expr.hpp"
#include "slantlab/sampling.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>

namespace slantlab {

const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::structure: return "structure";
    case CheckKind::sasakian: return "sasakian";
    case CheckKind::slant: return "slant";
    case CheckKind::corollary31: return "corollary31";
    case CheckKind::lemma41: return "lemma41";
    case CheckKind::theorem41: return "theorem41";
    case CheckKind::theorem42: return "theorem42";
  }
  return "?";
}

std::optional<CheckKind> check_from_name(std::string_view name) {
  for (CheckKind k : {CheckKind::structure, CheckKind::sasakian, CheckKind::slant, CheckKind::corollary31,
                      CheckKind::lemma41, CheckKind::theorem41, CheckKind::theorem42})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

bool needs_immersion(CheckKind k) { return k != CheckKind::structure && k != CheckKind::sasakian; }

bool is_tolerance_key(std::string_view key) {
  return check_from_name(key).has_value() || key == "curvature" || key == "xi";
}

double Scenario::tolerance(std::string_view key, double fallback) const {
  auto it = tolerances.find(std::string(key));
  return it == tolerances.end() ? fallback : it->second;
}

namespace {

struct Entry {
  std::string value;
  int line;
  int column;      // of the value
  int key_column;
};

using Section = std::map<std::string, Entry>;

bool is_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool known_key(const std::string& section, const std::string& key) {
  if (section.empty()) return key == "name";
  if (section == "ambient") return key == "model";
  if (section == "immersion") {
    if (key == "catalog" || key == "params" || key == "domain") return true;
    if (key.size() >= 2 && key[0] == 'f' && key[1] != '0') {
      for (std::size_t i = 1; i < key.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(key[i]))) return false;
      return key.size() <= 4;
    }
    return false;
  }
  if (section == "samples") return key == "count" || key == "seed" || key == "points";
  if (section == "checks") return key == "run";
  if (section == "fd") return key == "step" || key == "second_order_step" || key == "richardson";
  if (section == "tolerances") return is_tolerance_key(key);
  return false;
}

bool known_section(std::string_view s) {
  return s == "ambient" || s == "immersion" || s == "samples" || s == "checks" || s == "fd" || s == "tolerances";
}

std::map<std::string, Section> parse_document(std::string_view src) {
  std::map<std::string, Section> doc;
  doc[""];
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= src.size()) {
    std::size_t end = src.find('\n', pos);
    if (end == std::string_view::npos) end = src.size();
    std::string_view raw = src.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view body = trim(raw);
    if (body.empty()) {
      if (end == src.size()) break;
      continue;
    }
    const int indent = int(body.data() - raw.data());
    if (body.front() == '[') {
      if (body.back() != ']')
        throw ParseError(ParseIssue::syntax, "section header must end with ']'", line_no, indent + int(body.size()),
                         std::string(body));
      const std::string_view name = trim(body.substr(1, body.size() - 2));
      if (!known_section(name))
        throw ParseError(ParseIssue::unknown_identifier, "unknown section", line_no, indent + 1, std::string(body));
      current = std::string(name);
      doc[current];
    } else {
      const auto eq = body.find('=');
      if (eq == std::string_view::npos)
        throw ParseError(ParseIssue::syntax, "expected 'key = value'", line_no, indent + 1, std::string(body));
      const std::string key(trim(body.substr(0, eq)));
      if (key.empty()) throw ParseError(ParseIssue::syntax, "missing key before '='", line_no, indent + 1, "=");
      for (char c : key)
        if (!is_key_char(c)) throw ParseError(ParseIssue::syntax, "invalid key", line_no, indent + 1, key);
      std::string_view after = body.substr(eq + 1);
      const std::string_view value = trim(after);
      const int value_col = value.empty() ? indent + int(eq) + 2 : int(value.data() - raw.data()) + 1;
      if (!known_key(current, key))
        throw ParseError(ParseIssue::unknown_identifier,
                         "unknown key" + (current.empty() ? std::string() : " in section [" + current + "]"),
                         line_no, indent + 1, key);
      if (value.empty()) throw ParseError(ParseIssue::invalid_value, "missing value", line_no, value_col, key);
      Section& sec = doc[current];
      if (sec.count(key)) throw ParseError(ParseIssue::invalid_value, "duplicate key", line_no, indent + 1, key);
      sec[key] = Entry{std::string(value), line_no, value_col, indent + 1};
    }
    if (end == src.size()) break;
  }
  return doc;
}

const Entry* find(const std::map<std::string, Section>& doc, const std::string& section, const std::string& key) {
  auto s = doc.find(section);
  if (s == doc.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

double constant(std::string_view text, int line, int column) {
  ParseOptions o;
  o.param_count = 0;
  o.line = line;
  o.column = column;
  const Expr e = parse_expr(text, o);
  try {
    return eval_expr(e, {});
  } catch (const Error& err) {
    throw ParseError(ParseIssue::invalid_value, err.what(), line, column, std::string(text));
  }
}

double constant(const Entry& e) { return constant(e.value, e.line, e.column); }

std::uint64_t unsigned_value(const Entry& e, std::uint64_t max_value) {
  for (char c : e.value)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(ParseIssue::invalid_value, "expected a non-negative integer", e.line, e.column, e.value);
  errno = 0;
  const unsigned long long v = std::strtoull(e.value.c_str(), nullptr, 10);
  if (errno == ERANGE || v > max_value)
    throw ParseError(ParseIssue::invalid_value, "integer out of range", e.line, e.column, e.value);
  return v;
}

// Splits on a separator, reporting each piece with its 1-based column.
std::vector<std::pair<std::string_view, int>> split_columns(std::string_view s, int column, char sep) {
  std::vector<std::pair<std::string_view, int>> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    std::string_view piece = s.substr(start, end - start);
    std::size_t lead = 0;
    while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
    out.emplace_back(trim(piece), column + int(start + lead));
    start = end + 1;
  }
  return out;
}

std::vector<std::pair<std::string_view, int>> split_words(std::string_view s, int column) {
  std::vector<std::pair<std::string_view, int>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i), column + int(i));
    i = j;
  }
  return out;
}

std::vector<double> number_list(std::string_view s, int line, int column) {
  std::vector<double> out;
  for (const auto& [w, c] : split_words(s, column)) out.push_back(constant(w, line, c));
  return out;
}

std::vector<Interval> parse_domain(const Entry& e, int m) {
  std::vector<Interval> box;
  for (const auto& [piece, col] : split_columns(e.value, e.column, ',')) {
    const std::vector<double> v = number_list(piece, e.line, col);
    if (v.size() != 2)
      throw ParseError(ParseIssue::invalid_value, "domain interval needs 'lo hi'", e.line, col, std::string(piece));
    if (!(v[1] > v[0])) throw ParseError(ParseIssue::invalid_value, "empty domain interval", e.line, col, std::string(piece));
    box.push_back({v[0], v[1]});
  }
  if (int(box.size()) != m)
    throw ParseError(ParseIssue::invalid_value,
                     "domain has " + std::to_string(box.size()) + " intervals but params = " + std::to_string(m),
                     e.line, e.column, e.value);
  return box;
}

std::set<CheckKind> parse_checks(const Entry& e) {
  std::set<CheckKind> out;
  for (const auto& [piece, col] : split_columns(e.value, e.column, ',')) {
    for (const auto& [w, c] : split_words(piece, col)) {
      const auto k = check_from_name(w);
      if (!k) throw ParseError(ParseIssue::unknown_identifier, "unknown check", e.line, c, std::string(w));
      out.insert(*k);
    }
  }
  if (out.empty()) throw ParseError(ParseIssue::invalid_value, "empty check list", e.line, e.column, e.value);
  return out;
}

bool parse_bool(const Entry& e) {
  if (e.value == "true" || e.value == "on" || e.value == "1") return true;
  if (e.value == "false" || e.value == "off" || e.value == "0") return false;
  throw ParseError(ParseIssue::invalid_value, "expected true or false", e.line, e.column, e.value);
}

void finish_samples(Scenario& sc, const std::map<std::string, Section>& doc, const LoadOptions& opts) {
  if (opts.seed) sc.seed = *opts.seed;
  else if (const Entry* e = find(doc, "samples", "seed")) sc.seed = unsigned_value(*e, UINT64_MAX);
  else if (opts.default_seed) sc.seed = *opts.default_seed;
  else sc.seed = kDefaultSeed;

  if (const Entry* e = find(doc, "samples", "count")) sc.sample_count = std::size_t(unsigned_value(*e, 1000000));
  if (opts.sample_count) sc.sample_count = *opts.sample_count;

  const Entry* pts = find(doc, "samples", "points");
  if (pts && !sc.immersion)
    throw ParseError(ParseIssue::invalid_value, "explicit points need an immersion", pts->line, pts->column, pts->value);
  if (pts && !opts.sample_count) {
    sc.explicit_points = true;
    for (const auto& [piece, col] : split_columns(pts->value, pts->column, ';')) {
      const std::vector<double> v = number_list(piece, pts->line, col);
      if (int(v.size()) != sc.immersion->m())
        throw ParseError(ParseIssue::invalid_value, "point must have " + std::to_string(sc.immersion->m()) + " coordinates",
                         pts->line, col, std::string(piece));
      Vector u = Eigen::Map<const Vector>(v.data(), Eigen::Index(v.size()));
      sc.immersion->require_interior(u, sc.fd.interior_margin());
      sc.parameter_points.push_back(u);
    }
    sc.sample_count = sc.parameter_points.size();
  }
  if (sc.sample_count == 0) throw Error(ErrorCode::usage, "sample count must be positive");
  if (sc.immersion && !sc.explicit_points)
    sc.parameter_points = sample_box(sc.sample_count, sc.seed, sc.immersion->domain(), sc.fd.interior_margin());
  for (const Vector& p : sample_cube(sc.sample_count, sc.seed, sc.ambient->dim())) sc.ambient_points.emplace_back(p);
}

}  // namespace

Scenario load_scenario(std::string_view src, const LoadOptions& opts) {
  const std::map<std::string, Section> doc = parse_document(src);
  Scenario sc;
  if (const Entry* e = find(doc, "", "name")) sc.name = e->value;
  else sc.name = "scenario";

  // fd first: the interior margin depends on it.
  if (const Entry* e = find(doc, "fd", "step")) sc.fd.step = constant(*e);
  if (const Entry* e = find(doc, "fd", "second_order_step")) sc.fd.second_order_step = constant(*e);
  if (const Entry* e = find(doc, "fd", "richardson")) sc.fd.richardson = parse_bool(*e);
  if (opts.fd_step) sc.fd.step = *opts.fd_step;
  sc.fd.validate();

  const Entry* model = find(doc, "ambient", "model");
  if (!model) throw Error(ErrorCode::usage, "scenario has no [ambient] model");
  try {
    sc.ambient = resolve_ambient(model->value);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(ParseIssue::unknown_identifier, err.what(), model->line, model->column, model->value);
  }
  sc.ambient_name = model->value;
  const int dim = sc.ambient->dim();

  const Entry* cat = find(doc, "immersion", "catalog");
  const Entry* params = find(doc, "immersion", "params");
  if (cat && params)
    throw ParseError(ParseIssue::invalid_value, "use either catalog or params, not both", params->line,
                     params->key_column, "params");
  if (cat) {
    for (const auto& [key, entry] : doc.at("immersion"))
      if (key != "catalog")
        throw ParseError(ParseIssue::invalid_value, "key not allowed with a catalog immersion", entry.line,
                         entry.key_column, key);
    try {
      sc.immersion = resolve_immersion(cat->value);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(ParseIssue::unknown_identifier, err.what(), cat->line, cat->column, cat->value);
    }
    sc.immersion_name = cat->value;
    if (sc.immersion->ambient_dim() != dim)
      throw Error(ErrorCode::structural, "dimension mismatch: immersion '" + cat->value + "' maps into R^" +
                                             std::to_string(sc.immersion->ambient_dim()) + " but the ambient chart is R^" +
                                             std::to_string(dim));
  } else if (params) {
    const int m = int(unsigned_value(*params, 64));
    if (m < 1) throw ParseError(ParseIssue::invalid_value, "params must be at least 1", params->line, params->column, params->value);
    int highest = 0;
    for (const auto& [key, entry] : doc.at("immersion"))
      if (key[0] == 'f') highest = std::max(highest, std::atoi(key.c_str() + 1));
    std::vector<Expr> comps;
    std::vector<std::string> sources;
    for (int k = 1; k <= highest; ++k) {
      const Entry* e = find(doc, "immersion", "f" + std::to_string(k));
      if (!e) throw Error(ErrorCode::usage, "immersion component f" + std::to_string(k) + " is missing");
      ParseOptions o;
      o.param_count = m;
      o.line = e->line;
      o.column = e->column;
      comps.push_back(parse_expr(e->value, o));
      sources.push_back(e->value);
    }
    if (int(comps.size()) != dim)
      throw Error(ErrorCode::structural, "dimension mismatch: " + std::to_string(comps.size()) +
                                             " component expressions for a " + std::to_string(dim) +
                                             "-dimensional ambient chart");
    std::vector<Interval> box(std::size_t(m), Interval{-1.0, 1.0});
    if (const Entry* e = find(doc, "immersion", "domain")) box = parse_domain(*e, m);
    sc.immersion = immersion_from_expressions(sc.name, m, comps, box, sources);
    sc.immersion_name = sc.name;
  } else if (doc.count("immersion") && !doc.at("immersion").empty()) {
    const auto& [key, entry] = *doc.at("immersion").begin();
    throw ParseError(ParseIssue::invalid_value, "immersion needs catalog or params", entry.line, entry.key_column, key);
  }

  if (opts.checks) sc.checks = *opts.checks;
  else if (const Entry* e = find(doc, "checks", "run")) sc.checks = parse_checks(*e);
  if (sc.checks.empty()) throw Error(ErrorCode::usage, "empty check list");
  for (CheckKind k : sc.checks)
    if (needs_immersion(k) && !sc.immersion)
      throw Error(ErrorCode::usage, std::string("check '") + to_string(k) + "' needs an [immersion]");

  if (doc.count("tolerances"))
    for (const auto& [key, entry] : doc.at("tolerances")) {
      const double v = constant(entry);
      if (!(v > 0.0)) throw ParseError(ParseIssue::invalid_value, "tolerance must be positive", entry.line, entry.column, entry.value);
      sc.tolerances[key] = v;
    }
  for (const auto& [key, v] : opts.tolerances) {
    if (!is_tolerance_key(key)) throw Error(ErrorCode::usage, "unknown tolerance name '" + key + "'");
    if (!(v > 0.0)) throw Error(ErrorCode::usage, "tolerance must be positive");
    sc.tolerances[key] = v;
  }

  finish_samples(sc, doc, opts);
  return sc;
}

Scenario ambient_scenario(std::string_view model, const LoadOptions& opts) {
  std::string text = "name = verify-ambient\n[ambient]\nmodel = " + std::string(model) +
                     "\n[checks]\nrun = structure, sasakian\n";
  LoadOptions o = opts;
  o.checks.reset();
  if (!o.sample_count) o.sample_count = 100;
  Scenario sc;
  try {
    sc = load_scenario(text, o);
  } catch (const ParseError& e) {
    // The model name is the only user input here.
    throw Error(ErrorCode::usage, "unknown ambient model '" + std::string(model) + "'");
  }
  sc.name = "verify-ambient " + std::string(model);
  return sc;
}

}  // namespace slantlab
