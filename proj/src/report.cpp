#include "slantlab/report.hpp"

#include "slantlab/error.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace slantlab {

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string num_array(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + num(v[i]);
  return out + "]";
}

void report_line(std::ostringstream& os, const SlantReport& r) {
  os << "{\"name\":" << quote("report/" + r.method) << ",\"residual\":" << num(r.fit_residual)
     << ",\"tolerance\":null,\"passed\":" << (r.classification != SlantClass::non_slant ? "true" : "false")
     << ",\"point\":" << (r.per_point.empty() ? "[]" : num_array(r.per_point.front().u))
     << ",\"samples\":" << r.per_point.size() << ",\"kind\":\"slant-report\""
     << ",\"classification\":" << quote(to_string(r.classification)) << ",\"lambda_fit\":" << num(r.lambda_fit)
     << ",\"lambda_raw\":" << num(r.lambda_raw) << ",\"theta\":" << num(r.theta)
     << ",\"theta_spread\":" << num(r.theta_spread) << ",\"spectrum\":[";
  for (std::size_t i = 0; i < r.spectrum.size(); ++i)
    os << (i ? "," : "") << "[" << num(r.spectrum[i].value) << "," << r.spectrum[i].multiplicity << "]";
  os << "],\"per_point\":[";
  for (std::size_t i = 0; i < r.per_point.size(); ++i)
    os << (i ? "," : "") << "{\"u\":" << num_array(r.per_point[i].u) << ",\"theta\":" << num(r.per_point[i].theta) << "}";
  os << "]}\n";
}

void report_table(std::ostringstream& os, const char* title, const SlantReport& r) {
  os << title << ": " << to_string(r.classification) << ", lambda = " << num(r.lambda_fit)
     << ", theta = " << num(r.theta) << " rad, fit residual " << short_num(r.fit_residual) << ", theta spread "
     << short_num(r.theta_spread) << "\n  Q spectrum at first point:";
  for (const EigenCluster& c : r.spectrum) os << " (" << short_num(c.value) << ", " << c.multiplicity << ")";
  os << "\n";
}

}  // namespace

std::string render_table(const RunSummary& sum) {
  std::ostringstream os;
  os << "scenario: " << sum.scenario << "\n";
  std::size_t width = 6;
  for (const CheckRecord& r : sum.records) width = std::max(width, r.name.size());
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s  %-10s  %-10s  %s\n", int(width), "record", "residual", "tolerance", "status");
  os << buf;
  for (const CheckRecord& r : sum.records) {
    const char* status = r.diagnostic ? "diag" : r.passed ? "PASS" : "FAIL";
    std::snprintf(buf, sizeof buf, "%-*s  %-10s  %-10s  %s\n", int(width), r.name.c_str(),
                  short_num(r.max_residual).c_str(), short_num(r.tolerance).c_str(), status);
    os << buf;
  }
  if (sum.slant_report) report_table(os, "slant (Q fit)", *sum.slant_report);
  if (sum.curvature_report) report_table(os, "slant (curvature)", *sum.curvature_report);
  for (const std::string& n : sum.notes) os << "note: " << n << "\n";
  std::snprintf(buf, sizeof buf, "status: %s (%.2f s)\n", to_string(sum.status), sum.wall_time);
  os << buf;
  return os.str();
}

std::string render_records(const RunSummary& sum) {
  std::ostringstream os;
  for (const CheckRecord& r : sum.records) {
    os << "{\"name\":" << quote(r.name) << ",\"residual\":" << num(r.max_residual) << ",\"tolerance\":"
       << num(r.tolerance) << ",\"passed\":" << (r.passed ? "true" : "false") << ",\"point\":" << num_array(r.worst_point)
       << ",\"samples\":" << r.samples << ",\"kind\":" << (r.diagnostic ? "\"diagnostic\"" : "\"check\"") << "}\n";
  }
  if (sum.slant_report) report_line(os, *sum.slant_report);
  if (sum.curvature_report) report_line(os, *sum.curvature_report);
  return os.str();
}

std::string render_list_table(bool checks_only) {
  std::ostringstream os;
  auto section = [&](const char* title, const std::vector<CatalogEntry>& entries) {
    os << title << ":\n";
    for (const CatalogEntry& e : entries) {
      char buf[512];
      std::snprintf(buf, sizeof buf, "  %-28s %s\n", e.name.c_str(), e.description.c_str());
      os << buf;
    }
  };
  if (!checks_only) {
    section("ambient models", ambient_catalog());
    section("immersions", immersion_catalog());
  }
  section("checks", check_catalog());
  return os.str();
}

std::string render_list_records(bool checks_only) {
  std::ostringstream os;
  auto section = [&](const char* kind, const std::vector<CatalogEntry>& entries) {
    for (const CatalogEntry& e : entries)
      os << "{\"name\":" << quote(e.name) << ",\"kind\":\"" << kind << "\",\"description\":" << quote(e.description)
         << "}\n";
  };
  if (!checks_only) {
    section("ambient", ambient_catalog());
    section("immersion", immersion_catalog());
  }
  section("check", check_catalog());
  return os.str();
}

std::vector<ParsedRecord> parse_records(std::string_view text) {
  std::vector<ParsedRecord> out;
  std::size_t pos = 0;
  int line = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view l = text.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    if (l.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(l);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::parse, "record line " + std::to_string(line) + ": " + e.what());
    }
    try {
      const std::string kind = j.value("kind", std::string());
      if (kind != "check" && kind != "diagnostic") continue;
      ParsedRecord r;
      r.name = j.at("name").get<std::string>();
      auto real = [](const nlohmann::json& v) { return v.is_null() ? std::nan("") : v.get<double>(); };
      r.residual = real(j.at("residual"));
      r.tolerance = real(j.at("tolerance"));
      r.passed = j.at("passed").get<bool>();
      for (const auto& v : j.at("point")) r.point.push_back(real(v));
      r.samples = j.at("samples").get<std::size_t>();
      r.kind = kind;
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse, "record line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace slantlab
