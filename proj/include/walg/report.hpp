#pragma once
// JSON-facing helpers shared by the CLI and the tests: serialization of exact
// rationals and series, parsing of the compact character spec strings, and
// the canned isomorphism verification bundles.

#include "walg/qseries.hpp"
#include "walg/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace walg::report {

using nlohmann::json;

/// "3/4" <-> exact rational; integers render without the slash.
json rat_json(const Rat& r);
Rat rat_from_json(const json& j);

/// Series as {"order": N, "terms": [[exp, num, den], ...]} with exponents in
/// lowest terms as strings; round-trips exactly.
json series_json(const qs::QSeries& s);
qs::QSeries series_from_json(const json& j);

/// Compact character requests:
///   "universal:G2"            universal algebra character
///   "boundary:G2:17"          boundary level u = 17
///   "near-boundary:E8a1:27"   sharp case with theta correction
///   "principal:F4:14/13"      principal algebra at level -h_vee + p/u
/// Returns the computed, normalized character.
qs::QSeries character_from_spec(const std::string& spec, long order);

struct IsoCheck {
  std::string name;
  std::string lhs_spec;
  std::string rhs_spec;
  bool character_only = false;  // the conjectural case
};

/// The four built-in correspondences, in presentation order.
std::vector<IsoCheck> builtin_checks();

/// Compares both sides through `order` and also the central charges where
/// both sides define one; returns a JSON report and sets ok.
json run_iso_check(const IsoCheck& chk, long order, bool& ok);

}  // namespace walg::report
