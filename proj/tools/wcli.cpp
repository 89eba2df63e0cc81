// wcli: exact characters, central charges, module reconstructions, and
// bracket solves for the exceptional W-algebra correspondences, with stable
// text output and a JSON report mode.

#include "walg/charengine.hpp"
#include "walg/grading.hpp"
#include "walg/opecalc.hpp"
#include "walg/qseries.hpp"
#include "walg/rational.hpp"
#include "walg/report.hpp"
#include "walg/virmod.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using walg::MathError;
using walg::Rat;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

int classify(const MathError& e) {
  const std::string& c = e.code();
  if (c == "BadSpec" || c == "InvalidLevel" || c == "UnsupportedWeylGroup" || c == "BadFactor")
    return kExitUsage;
  return kExitMismatch;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double, std::milli>(dt).count();
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// char

int run_char(const std::string& kind, const std::string& label, const std::string& orbit, long p,
             long u, long order, const std::string& format, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  std::string subject = orbit.empty() ? label : orbit;
  std::string spec;
  if (kind == "universal") {
    spec = "universal:" + subject;
  } else if (kind == "boundary") {
    if (u <= 0) throw MathError("BadSpec", "boundary characters need --u");
    spec = "boundary:" + subject + ":" + std::to_string(u);
  } else if (kind == "near-boundary") {
    if (u <= 0) throw MathError("BadSpec", "near-boundary characters need --u");
    spec = "near-boundary:" + subject + ":" + std::to_string(u);
  } else {
    if (p <= 0 || u <= 0) throw MathError("BadSpec", "principal characters need --p and --u");
    spec = "principal:" + subject + ":" + std::to_string(p) + "/" + std::to_string(u);
  }
  walg::qs::QSeries s = walg::report::character_from_spec(spec, order);
  if (format == "json") {
    json j{{"command", "char"},
           {"spec", spec},
           {"order", order},
           {"series", walg::report::series_json(s)}};
    if (timing) j["elapsed_ms"] = elapsed_ms(t0);
    emit(j);
  } else {
    std::cout << qs_str(s) << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// compare

int run_compare(const std::string& lhs, const std::string& rhs, long order,
                const std::string& format, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  walg::qs::QSeries a = walg::report::character_from_spec(lhs, order);
  walg::qs::QSeries b = walg::report::character_from_spec(rhs, order);
  walg::qs::Comparison cmp = qs_compare(a, b);
  if (format == "json") {
    json j{{"command", "compare"},
           {"lhs", lhs},
           {"rhs", rhs},
           {"order", order},
           {"equal", cmp.equal},
           {"agreement_order", cmp.agreement_order}};
    if (!cmp.equal) {
      j["first_mismatch"] = {{"exponent", walg::report::rat_json(cmp.first_exponent)},
                             {"lhs", walg::report::rat_json(cmp.lhs)},
                             {"rhs", walg::report::rat_json(cmp.rhs)}};
    }
    if (timing) j["elapsed_ms"] = elapsed_ms(t0);
    emit(j);
  } else if (cmp.equal) {
    std::cout << "equal through q^" << (cmp.agreement_order - 1) << "\n";
  } else {
    std::cout << "first mismatch at q^" << walg::rat_str(cmp.first_exponent) << ": lhs "
              << walg::rat_str(cmp.lhs) << ", rhs " << walg::rat_str(cmp.rhs) << "\n";
  }
  return cmp.equal ? kExitPass : kExitMismatch;
}

// ---------------------------------------------------------------------------
// central-charge

int run_central_charge(const std::string& label, long p, long u, const std::string& format) {
  const auto& w = walg::grading::w_data(label);
  Rat c = walg::grading::central_charge(w, p, u);
  if (format == "json") {
    emit(json{{"command", "central-charge"},
              {"label", w.label},
              {"p", p},
              {"u", u},
              {"c", walg::report::rat_json(c)}});
  } else {
    std::cout << walg::rat_str(c) << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// grading

int run_grading(const std::string& label, const std::string& format) {
  const auto& w = walg::grading::w_data(label);
  std::vector<int> gens = walg::grading::generator_weights(w);
  if (format == "json") {
    emit(json{{"command", "grading"},
              {"label", w.label},
              {"degrees", w.degrees},
              {"generator_weights", gens},
              {"dim_g", w.dim_g},
              {"dim_g0", w.dim_g0}});
  } else {
    std::cout << w.label << ": degrees";
    for (int d : w.degrees) std::cout << " " << d;
    std::cout << "; generator weights";
    for (int g : gens) std::cout << " " << g;
    std::cout << "; dim g = " << w.dim_g << ", dim g_0 = " << w.dim_g0 << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// tower

json tower_json(const walg::vir::TowerReport& tr) {
  json events = json::array();
  for (const auto& ev : tr.events)
    events.push_back(
        {{"weight", ev.weight}, {"spawned", ev.spawned}, {"absorbed", ev.absorbed}});
  json j{{"generator_weights", tr.generator_weights},
         {"events", events},
         {"summand_weights", tr.summand_weights},
         {"first_break", tr.first_break},
         {"agreement_through", tr.agreement_through}};
  if (tr.first_break >= 0) j["break_defect"] = walg::report::rat_json(tr.break_defect);
  return j;
}

void tower_text(const walg::vir::TowerReport& tr) {
  std::cout << "generators:";
  for (int g : tr.generator_weights) std::cout << " " << g;
  std::cout << "\n";
  for (const auto& ev : tr.events) {
    std::cout << "weight " << ev.weight << ": spawned " << ev.spawned << ", absorbed "
              << ev.absorbed << "\n";
  }
  std::cout << "summands:";
  for (int s : tr.summand_weights) std::cout << " " << s;
  std::cout << "\n";
  if (tr.first_break >= 0) {
    std::cout << "first break at " << tr.first_break << ", defect "
              << walg::rat_str(tr.break_defect)
              << (tr.break_defect < 0 ? " (relation below the free closure)" : " (excess)")
              << "\n";
  } else {
    std::cout << "no break through q^" << (tr.agreement_through - 1) << "\n";
  }
}

int run_tower(const std::string& spec, std::vector<int> gens, const std::string& weights_from,
              long order, const std::string& format) {
  if (gens.empty() && weights_from.empty())
    throw MathError("BadSpec", "tower needs --gens or --weights-from");
  if (!weights_from.empty()) {
    auto extra = walg::grading::generator_weights(walg::grading::w_data(weights_from));
    gens.insert(gens.end(), extra.begin(), extra.end());
  }
  walg::qs::QSeries chi = walg::report::character_from_spec(spec, order);
  walg::vir::TowerReport tr = walg::vir::tower_report(chi, gens);
  if (format == "json") {
    json j = tower_json(tr);
    j["command"] = "tower";
    j["spec"] = spec;
    j["order"] = order;
    emit(j);
  } else {
    tower_text(tr);
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// ope-solve

struct OpeCase {
  std::string name;
  Rat c;
  std::vector<int> primaries;
  bool rewrite;
  int bound;
};

const OpeCase& ope_case(const std::string& name) {
  static const std::vector<OpeCase> cases{
      {"g2-c1420-17", Rat(-1420, 17), {6}, false, 11},
      {"g2-c590-9", Rat(-590, 9), {6}, false, 11},
      {"b3-c135-8", Rat(-135, 8), {4, 6}, true, 8},
  };
  for (const auto& k : cases)
    if (k.name == name) return k;
  throw MathError("BadSpec", "unknown ope-solve case '" + name + "'");
}

// entry for one coefficient: rational part under "value", and when the
// solution lives in Q(sqrt(zeta)) the radical coefficient under "radical"
json alg_entry(const std::string& name, const walg::ope::AlgVal& v) {
  json e{{"name", name}, {"value", walg::report::rat_json(v.a)}};
  if (v.b != 0) e["radical"] = walg::report::rat_json(v.b);
  return e;
}

std::string alg_str(const json& e, const std::string& zeta) {
  std::string out = walg::rat_str(walg::report::rat_from_json(e["value"]));
  if (e.count("radical")) {
    Rat b = walg::report::rat_from_json(e["radical"]);
    if (out == "0")
      out = walg::rat_str(b) + "*sqrt(" + zeta + ")";
    else
      out += " + " + walg::rat_str(b) + "*sqrt(" + zeta + ")";
  }
  return out;
}

json ope_report(const OpeCase& k, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  walg::ope::BracketProblem prob =
      walg::ope::build_problem(k.c, k.primaries, k.rewrite, k.bound);
  walg::ope::BracketSolution sol = walg::ope::solve_problem(prob);
  int checked = walg::ope::verify_solution(prob, sol);
  json coeffs = json::array();
  json sigma = json::array();
  for (size_t v = 0; v < prob.vars.size(); ++v) {
    const auto& vi = prob.vars[v];
    const walg::ope::AlgVal& val = sol.values[v];
    if (vi.pair_i == 0 && vi.pair_j == 0) {
      sigma.push_back(alg_entry(vi.name, val));
    } else if (val.a != 0 || val.b != 0) {
      coeffs.push_back(alg_entry(vi.name, val));
    }
  }
  json j{{"command", "ope-solve"},
         {"case", k.name},
         {"central_charge", walg::report::rat_json(k.c)},
         {"primary_weights", k.primaries},
         {"weight_bound", k.bound},
         {"unknowns", prob.vars.size()},
         {"equations", prob.equations.size()},
         {"pins", sol.pins_used},
         {"family_dimension", sol.family_dimension},
         {"solution_count", sol.solution_count},
         {"residuals_checked", checked},
         {"nonzero_coefficients", coeffs}};
  if (sol.zeta != 0) j["zeta"] = walg::report::rat_json(sol.zeta);
  if (!sigma.empty()) j["sigma"] = sigma;
  if (timing) j["elapsed_ms"] = elapsed_ms(t0);
  return j;
}

int run_ope_solve(const std::string& name, const std::string& format, bool timing) {
  const OpeCase& k = ope_case(name);
  json j = ope_report(k, timing);
  if (format == "json") {
    emit(j);
  } else {
    std::cout << "case " << name << ": c = " << walg::rat_str(k.c) << ", primary weights";
    for (int w : k.primaries) std::cout << " " << w;
    std::cout << ", weight bound " << k.bound << "\n";
    std::cout << "unknowns " << j["unknowns"] << ", equations " << j["equations"] << "\n";
    std::cout << "pins:";
    for (const auto& s : j["pins"]) std::cout << " [" << s.get<std::string>() << "]";
    std::cout << "\n";
    std::cout << "family dimension " << j["family_dimension"] << ", solutions "
              << j["solution_count"] << ", residuals checked " << j["residuals_checked"] << "\n";
    std::string zeta;
    if (j.count("zeta")) {
      zeta = walg::rat_str(walg::report::rat_from_json(j["zeta"]));
      std::cout << "extension field: Q(sqrt(" << zeta << "))\n";
    }
    std::cout << "nonzero coefficients:\n";
    for (const auto& e : j["nonzero_coefficients"])
      std::cout << "  " << e["name"].get<std::string>() << " = " << alg_str(e, zeta) << "\n";
    if (j.count("sigma")) {
      std::cout << "square rewrite:\n";
      for (const auto& e : j["sigma"])
        std::cout << "  " << e["name"].get<std::string>() << " = " << alg_str(e, zeta) << "\n";
    }
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify-isomorphisms

struct TowerExpect {
  std::string orbit;       // whose generator weights to walk
  int break_weight;        // expected first relation
  std::vector<int> summands;
  std::string ope;         // solve case, empty if none
};

const std::map<std::string, TowerExpect>& tower_expectations() {
  static const std::map<std::string, TowerExpect> m{
      {"G2-E7a1", {"E7(a1)", 12, {6}, "g2-c1420-17"}},
      {"G2-E8a1", {"E8(a1)", 12, {6}, "g2-c590-9"}},
      {"B3-E7a1", {"E7(a1)", 8, {4, 6}, "b3-c135-8"}},
  };
  return m;
}

int run_verify(long order, bool skip_ope, const std::string& format, bool timing) {
  bool all_ok = true;
  json out = json::array();
  for (const auto& chk : walg::report::builtin_checks()) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    json j = walg::report::run_iso_check(chk, order, ok);
    std::string detail;

    if (!chk.character_only) {
      const TowerExpect& exp = tower_expectations().at(chk.name);
      walg::qs::QSeries chi = walg::report::character_from_spec(chk.lhs_spec, order);
      auto gens = walg::grading::generator_weights(walg::grading::w_data(exp.orbit));
      try {
        walg::vir::TowerReport tr = walg::vir::tower_report(chi, gens);
        bool tower_ok =
            tr.summand_weights == exp.summands &&
            (order > exp.break_weight
                 ? tr.first_break == exp.break_weight && tr.break_defect < 0
                 : tr.first_break == -1);
        j["reconstruction"] = tower_json(tr);
        j["reconstruction"]["ok"] = tower_ok;
        if (!tower_ok) {
          ok = false;
          detail += " reconstruction mismatch;";
        }
      } catch (const MathError& e) {
        ok = false;
        j["reconstruction"] = {{"ok", false}, {"error", e.what()}};
        detail += std::string(" reconstruction failed: ") + e.what() + ";";
      }

      if (skip_ope) {
        j["ope"] = {{"skipped", true}};
      } else {
        try {
          const OpeCase& k = ope_case(exp.ope);
          json oj = ope_report(k, timing);
          bool ope_ok = !k.rewrite ? oj["family_dimension"].get<int>() == 1 : true;
          oj["ok"] = ope_ok;
          j["ope"] = oj;
          if (!ope_ok) {
            ok = false;
            detail += " ope family dimension mismatch;";
          }
        } catch (const MathError& e) {
          ok = false;
          j["ope"] = {{"ok", false}, {"error", e.what()}};
          detail += std::string(" ope failed: ") + e.what() + ";";
        }
      }
    } else {
      j["note"] = "character-level only";
    }

    if (timing) j["elapsed_ms"] = elapsed_ms(t0);
    j["ok"] = ok;
    out.push_back(j);
    all_ok = all_ok && ok;

    if (format != "json") {
      std::cout << (ok ? "[PASS] " : "[FAIL] ") << chk.name << ": ";
      if (j.count("central_charge"))
        std::cout << "c = " << j["central_charge"]["lhs"].get<std::string>()
                  << (j["central_charge"]["equal"].get<bool>() ? " on both sides; " : " vs "
                      + j["central_charge"]["rhs"].get<std::string>() + "; ");
      if (j["characters"]["equal"].get<bool>()) {
        std::cout << "characters equal through q^"
                  << (j["characters"]["agreement_order"].get<long>() - 1);
      } else {
        const auto& fm = j["characters"]["first_mismatch"];
        std::cout << "character mismatch at q^" << fm["exponent"].get<std::string>() << " ("
                  << fm["lhs"].get<std::string>() << " vs " << fm["rhs"].get<std::string>() << ")";
      }
      if (chk.character_only) {
        std::cout << "; character-level only";
      } else if (j["reconstruction"].count("first_break") &&
                 j["reconstruction"]["ok"].get<bool>()) {
        std::cout << "; reconstruction breaks at " << j["reconstruction"]["first_break"]
                  << " as expected";
        if (!skip_ope && j["ope"].count("family_dimension"))
          std::cout << "; ope solved (family dimension " << j["ope"]["family_dimension"] << ")";
      }
      if (!detail.empty()) std::cout << ";" << detail;
      std::cout << "\n";
    }
  }
  if (format == "json") {
    emit(json{{"command", "verify-isomorphisms"}, {"order", order}, {"all_pass", all_ok},
              {"checks", out}});
  } else {
    std::cout << (all_ok ? "all checks passed" : "FAILED") << "\n";
  }
  return all_ok ? kExitPass : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact character and bracket toolkit for exceptional W-algebras"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "include elapsed_ms in JSON reports");

  int rc = kExitPass;

  // char
  std::string ch_kind, ch_label, ch_orbit, ch_format = "text";
  long ch_p = 0, ch_u = 0, ch_order = 26;
  auto* sc_char = app.add_subcommand("char", "compute a normalized character");
  sc_char->add_option("kind", ch_kind, "universal | boundary | near-boundary | principal")
      ->required()
      ->check(CLI::IsMember({"universal", "boundary", "near-boundary", "principal"}));
  sc_char->add_option("algebra", ch_label, "algebra label (A1, G2, B3, F4, E7, E8)")->required();
  sc_char->add_option("orbit", ch_orbit, "orbit label for the sharp cases (E7a1, E8a1)");
  sc_char->add_option("--p", ch_p, "level numerator for principal characters");
  sc_char->add_option("--u", ch_u, "level denominator");
  sc_char->add_option("--order", ch_order, "truncation order (exponents < order)");
  sc_char->add_option("--format", ch_format)->check(CLI::IsMember({"text", "json"}));
  sc_char->callback(
      [&] { rc = run_char(ch_kind, ch_label, ch_orbit, ch_p, ch_u, ch_order, ch_format, timing); });

  // compare
  std::string cm_lhs, cm_rhs, cm_format = "text";
  long cm_order = 26;
  auto* sc_cmp = app.add_subcommand("compare", "compare two character specs");
  sc_cmp->add_option("lhs", cm_lhs, "character spec, e.g. boundary:G2:17")->required();
  sc_cmp->add_option("rhs", cm_rhs, "character spec, e.g. principal:B3:8/7")->required();
  sc_cmp->add_option("--order", cm_order, "truncation order");
  sc_cmp->add_option("--format", cm_format)->check(CLI::IsMember({"text", "json"}));
  sc_cmp->callback([&] { rc = run_compare(cm_lhs, cm_rhs, cm_order, cm_format, timing); });

  // central-charge
  std::string cc_label, cc_format = "text";
  long cc_p = 0, cc_u = 0;
  auto* sc_cc = app.add_subcommand("central-charge", "central charge at level -h_vee + p/u");
  sc_cc->add_option("label", cc_label, "orbit label (G2, B3, F4, A1, E7a1, E8a1)")->required();
  sc_cc->add_option("--p", cc_p, "level numerator")->required();
  sc_cc->add_option("--u", cc_u, "level denominator")->required();
  sc_cc->add_option("--format", cc_format)->check(CLI::IsMember({"text", "json"}));
  sc_cc->callback([&] { rc = run_central_charge(cc_label, cc_p, cc_u, cc_format); });

  // grading
  std::string gr_label, gr_format = "text";
  auto* sc_gr = app.add_subcommand("grading", "show the graded data behind an orbit label");
  sc_gr->add_option("label", gr_label)->required();
  sc_gr->add_option("--format", gr_format)->check(CLI::IsMember({"text", "json"}));
  sc_gr->callback([&] { rc = run_grading(gr_label, gr_format); });

  // tower
  std::string tw_spec, tw_from, tw_format = "text";
  std::vector<int> tw_gens;
  long tw_order = 26;
  auto* sc_tw = app.add_subcommand("tower", "reconstruct a character as a Verma module tower");
  sc_tw->add_option("spec", tw_spec, "character spec")->required();
  sc_tw->add_option("--gens", tw_gens, "strong generator weights")->delimiter(',');
  sc_tw->add_option("--weights-from", tw_from, "orbit label providing the generator weights");
  sc_tw->add_option("--order", tw_order, "truncation order");
  sc_tw->add_option("--format", tw_format)->check(CLI::IsMember({"text", "json"}));
  sc_tw->callback([&] { rc = run_tower(tw_spec, tw_gens, tw_from, tw_order, tw_format); });

  // ope-solve
  std::string op_case, op_format = "text";
  auto* sc_op = app.add_subcommand("ope-solve", "solve a bracket constraint system");
  sc_op->add_option("case", op_case, "g2-c1420-17 | g2-c590-9 | b3-c135-8")
      ->required()
      ->check(CLI::IsMember({"g2-c1420-17", "g2-c590-9", "b3-c135-8"}));
  sc_op->add_option("--format", op_format)->check(CLI::IsMember({"text", "json"}));
  sc_op->callback([&] { rc = run_ope_solve(op_case, op_format, timing); });

  // verify-isomorphisms
  long vf_order = 26;
  bool vf_skip = false;
  std::string vf_format = "text";
  auto* sc_vf = app.add_subcommand("verify-isomorphisms", "run every correspondence check");
  sc_vf->add_option("--order", vf_order, "character comparison order");
  sc_vf->add_flag("--skip-ope", vf_skip, "skip the bracket solves (the long pole)");
  sc_vf->add_option("--format", vf_format)->check(CLI::IsMember({"text", "json"}));
  sc_vf->callback([&] { rc = run_verify(vf_order, vf_skip, vf_format, timing); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return rc;
}
