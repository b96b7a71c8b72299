#include "jspec/config.hpp"

#include <cmath>
#include <fstream>
#include <regex>

namespace jspec::config {

namespace {

[[noreturn]] void bad(const std::string& what) { raise(ErrorKind::ConfigError, what); }

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string norm_name(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '-') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<cplx> complex_list(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) bad(std::string("\"") + key + "\" must be an array");
  std::vector<cplx> v;
  for (const auto& x : a) v.push_back(complex_from_json(x));
  return v;
}

double number(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    bad("cannot parse " + what + " \"" + s + "\"");
  }
  if (pos != s.size() || !std::isfinite(v)) bad("cannot parse " + what + " \"" + s + "\"");
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object() && j.contains("re") && j.contains("im") && j.at("re").is_number() &&
      j.at("im").is_number())
    return {j.at("re").get<double>(), j.at("im").get<double>()};
  bad("complex values are numbers or {\"re\", \"im\"} objects");
}

json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

OperatorSpec spec_from_json(const json& j) {
  if (!j.is_object()) bad("spec must be a JSON object");
  const json& fam = field(j, "family");
  if (!fam.is_string()) bad("\"family\" must be a string");
  const std::string name = norm_name(fam.get<std::string>());
  std::vector<Override> pert;
  if (j.contains("perturbation")) {
    const json& p = j.at("perturbation");
    if (!p.is_array()) bad("\"perturbation\" must be an array");
    for (const auto& e : p) {
      if (!e.is_object() || !e.contains("n") || !e.at("n").is_number_integer())
        bad("perturbation entries need an integer \"n\"");
      Override o;
      o.n = e.at("n").get<long>();
      if (e.contains("lambda")) o.lambda = complex_from_json(e.at("lambda"));
      if (e.contains("w")) o.w = complex_from_json(e.at("w"));
      pert.push_back(o);
    }
  }
  try {
    if (name == "linearfree") return make_spec(LinearFree{complex_from_json(field(j, "w"))}, pert);
    if (name == "besselcompact")
      return make_spec(
          BesselCompact{complex_from_json(field(j, "alpha")), complex_from_json(field(j, "beta"))}, pert);
    if (name == "qgeometric")
      return make_spec(QGeometric{complex_from_json(field(j, "q")), complex_from_json(field(j, "beta"))},
                       pert);
    if (name == "table") {
      const json& first = field(j, "first");
      if (!first.is_number_integer()) bad("\"first\" must be an integer");
      const double ratio = field(j, "ratio").get<double>();
      const int p = j.value("p", 1);
      return make_spec(table_family(first.get<long>(), complex_list(j, "lambda"), complex_list(j, "w"),
                                    ratio, p, j.value("name", std::string("table"))),
                       pert);
    }
  } catch (const json::exception& e) {
    bad(std::string("malformed spec: ") + e.what());
  }
  bad("unknown family \"" + fam.get<std::string>() + "\"");
}

OperatorSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

cplx parse_complex(const std::string& raw) {
  // spaces are allowed only at the ends and around the sign between the parts
  std::string s;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != ' ') {
      s += raw[i];
      continue;
    }
    std::size_t j = i;
    while (j < raw.size() && raw[j] == ' ') ++j;
    const bool edge = s.empty() || j == raw.size();
    const bool sign = !edge && (s.back() == '+' || s.back() == '-' || raw[j] == '+' || raw[j] == '-');
    if (!edge && !sign) bad("cannot parse complex number \"" + raw + "\"");
    i = j - 1;
  }
  static const std::regex full(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)([ij]))?$)");
  std::smatch m;
  if (s.empty() || !std::regex_match(s, m, full)) bad("cannot parse complex number \"" + raw + "\"");
  double re = 0.0, im = 0.0;
  if (m[1].matched) re = number(m[1].str(), "real part");
  if (m[3].matched) {
    const std::string c = m[2].str();
    if (c.empty() && m[1].matched) {
      // "2i": the coefficient landed in the real group
      im = re;
      re = 0.0;
    } else if (c.empty() || c == "+") {
      im = 1.0;
    } else if (c == "-") {
      im = -1.0;
    } else {
      im = number(c, "imaginary part");
    }
  } else if (!m[1].matched) {
    bad("cannot parse complex number \"" + raw + "\"");
  }
  return {re, im};
}

Box parse_region(const std::string& s) {
  const auto parts = split_commas(s);
  if (parts.size() != 4) bad("region needs four comma-separated numbers");
  Box b{number(parts[0], "region"), number(parts[1], "region"), number(parts[2], "region"),
        number(parts[3], "region")};
  if (!(b.re_min < b.re_max) || !(b.im_min < b.im_max)) bad("region must satisfy a < b and c < d");
  return b;
}

std::pair<long, long> parse_range(const std::string& s) {
  const auto parts = split_commas(s);
  if (parts.size() != 2) bad("range needs two comma-separated integers");
  const double a = number(parts[0], "range"), b = number(parts[1], "range");
  if (a != std::floor(a) || b != std::floor(b) || a > b) bad("range must be integers lo <= hi");
  return {static_cast<long>(a), static_cast<long>(b)};
}

json to_json(const SpectrumReport& r) {
  json pts = json::array();
  for (const auto& p : r.eigenpoints) {
    json e = {{"z", to_json(p.z)},
              {"multiplicity", p.multiplicity},
              {"residual", p.newton_residual},
              {"method", std::string(to_string(p.method))}};
    if (p.merged) e["flags"] = json::array({"MERGED"});
    pts.push_back(e);
  }
  json zones = json::array();
  for (const auto& z : r.excluded_zones)
    zones.push_back({{"center", to_json(z.center)}, {"radius", z.radius}, {"reason", z.reason}});
  json unknown = json::array();
  for (const auto& u : r.unknown_points) unknown.push_back({{"z", to_json(u.z)}, {"status", "UNKNOWN"}, {"note", u.note}});
  return {{"region", {r.region.re_min, r.region.re_max, r.region.im_min, r.region.im_max}},
          {"eigenpoints", pts},
          {"excluded_zones", zones},
          {"unknown_points", unknown},
          {"diagnostics",
           {{"mode", r.mode == Mode::Regularized ? "regularized" : "generic"},
            {"max_window", r.max_window},
            {"refinement_depth", r.locate.max_depth_reached},
            {"boxes", r.locate.boxes},
            {"evaluations", r.locate.evaluations},
            {"dropped_boxes", r.locate.dropped_boxes},
            {"jitters", r.locate.jitters}}}};
}

json to_json(const SolutionSlice& s) {
  json vals = json::array();
  for (const cplx v : s.values) vals.push_back(to_json(v));
  return {{"first", s.first},
          {"last", s.last},
          {"regularized", s.regularized},
          {"window", s.window},
          {"tail_err", std::isfinite(s.tail_err) ? json(s.tail_err) : json(nullptr)},
          {"values", vals}};
}

json error_json(ErrorKind kind, const std::string& message) {
  return {{"error", {{"kind", std::string(to_string(kind))}, {"message", message}}}};
}

}  // namespace jspec::config
