#include "walg/report.hpp"

#include "walg/charengine.hpp"
#include "walg/grading.hpp"

#include <stdexcept>

namespace walg::report {

using qs::QSeries;
using qs::qs_monomial;
using qs::qs_zero;

json rat_json(const Rat& r) { return json(rat_str(r)); }

Rat rat_from_json(const json& j) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  throw MathError("ParseError", "expected a rational encoded as a string");
}

json series_json(const QSeries& s) {
  QSeries c = qs_canonical(s);
  json terms = json::array();
  for (const auto& [key, val] : c.coeff) {
    Rat e(key, c.scale);
    e.canonicalize();
    terms.push_back({rat_str(e), val.get_num().get_str(), val.get_den().get_str()});
  }
  return json{{"order", c.order}, {"terms", terms}};
}

QSeries series_from_json(const json& j) {
  long order = j.at("order").get<long>();
  QSeries s = qs_zero(order);
  for (const auto& t : j.at("terms")) {
    Rat e = rat_parse(t.at(0).get<std::string>());
    Rat c(Int(t.at(1).get<std::string>()), Int(t.at(2).get<std::string>()));
    c.canonicalize();
    s = qs_add(s, qs_monomial(e, c, order));
  }
  return s;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

long parse_long(const std::string& s) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw MathError("BadSpec", "expected an integer, got '" + s + "'");
  }
}

struct ParsedSpec {
  std::string kind;
  const grading::WData* w;
  long p = 0;  // 0 when the kind fixes it or none applies
  long u = 0;
};

ParsedSpec parse_spec(const std::string& spec) {
  auto parts = split(spec, ':');
  ParsedSpec out;
  if (parts.size() < 2) throw MathError("BadSpec", "spec '" + spec + "' needs kind:label[:level]");
  out.kind = parts[0];
  out.w = &grading::w_data(parts[1]);
  if (out.kind == "universal") {
    if (parts.size() != 2) throw MathError("BadSpec", "universal takes no level: '" + spec + "'");
    return out;
  }
  if (out.kind == "boundary" || out.kind == "near-boundary") {
    if (parts.size() != 3) throw MathError("BadSpec", "'" + spec + "' needs :u");
    out.u = parse_long(parts[2]);
    int hv = roots::root_system(out.w->algebra).dual_coxeter;
    out.p = out.kind == "boundary" ? hv : hv + 1;
    return out;
  }
  if (out.kind == "principal") {
    if (parts.size() != 3) throw MathError("BadSpec", "'" + spec + "' needs :p/u");
    auto pu = split(parts[2], '/');
    if (pu.size() != 2) throw MathError("BadSpec", "level must be p/u, got '" + parts[2] + "'");
    out.p = parse_long(pu[0]);
    out.u = parse_long(pu[1]);
    return out;
  }
  throw MathError("BadSpec", "unknown character kind '" + out.kind + "'");
}

}  // namespace

QSeries character_from_spec(const std::string& spec, long order) {
  ParsedSpec p = parse_spec(spec);
  if (p.kind == "universal") return chars::universal_character(*p.w, order);
  if (p.kind == "boundary") return chars::boundary_character(*p.w, p.u, order);
  if (p.kind == "near-boundary") return chars::near_boundary_character(*p.w, p.u, order);
  return chars::principal_character(p.w->algebra, p.p, p.u, order);
}

std::vector<IsoCheck> builtin_checks() {
  return {
      {"G2-E7a1", "boundary:G2:17", "boundary:E7a1:17", false},
      {"G2-E8a1", "principal:G2:9/7", "near-boundary:E8a1:27", false},
      {"B3-E7a1", "principal:B3:8/7", "near-boundary:E7a1:16", false},
      {"F4-E8a1", "principal:F4:14/13", "near-boundary:E8a1:28", true},
  };
}

json run_iso_check(const IsoCheck& chk, long order, bool& ok) {
  ok = true;
  json rep;
  rep["name"] = chk.name;
  rep["lhs"] = chk.lhs_spec;
  rep["rhs"] = chk.rhs_spec;
  rep["character_only"] = chk.character_only;

  ParsedSpec lhs = parse_spec(chk.lhs_spec);
  ParsedSpec rhs = parse_spec(chk.rhs_spec);
  if (lhs.kind != "universal" && rhs.kind != "universal") {
    Rat cl = grading::central_charge(*lhs.w, lhs.p, lhs.u);
    Rat cr = grading::central_charge(*rhs.w, rhs.p, rhs.u);
    rep["central_charge"] = {{"lhs", rat_str(cl)}, {"rhs", rat_str(cr)}, {"equal", cl == cr}};
    if (cl != cr) ok = false;
  }

  QSeries a = character_from_spec(chk.lhs_spec, order);
  QSeries b = character_from_spec(chk.rhs_spec, order);
  auto cmp = qs_compare(a, b);
  json jc;
  jc["equal"] = cmp.equal;
  jc["agreement_order"] = cmp.agreement_order;
  if (!cmp.equal) {
    jc["first_mismatch"] = {{"exponent", rat_str(cmp.first_exponent)},
                            {"lhs", rat_str(cmp.lhs)},
                            {"rhs", rat_str(cmp.rhs)}};
    ok = false;
  }
  rep["characters"] = jc;
  return rep;
}

}  // namespace walg::report
