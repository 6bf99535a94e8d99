#include "ndsys/reductions.hpp"

#include "ndsys/error.hpp"
#include "ndsys/serialize.hpp"

#include <future>
#include <map>
#include <set>

namespace ndsys {

MapSpec compile_period_map(const Schedule& s) {
  const auto k = detect_period(s);
  if (!k) fail(ErrorCode::NotPeriodic, "schedule is not periodic from index 1");
  return compile_window(s, 1, *k);
}

System period_system(const System& sys) {
  System g{sys.name + "/g", sys.space, Schedule({Generator{"g", compile_period_map(sys.schedule)}}, PeriodicRule{{0}}),
           sys.defaults};
  return g;
}

const char* consistency_name(Consistency c) {
  switch (c) {
    case Consistency::Consistent: return "Consistent";
    case Consistency::Violation: return "Violation";
    case Consistency::NotApplicable: return "NotApplicable";
  }
  return "?";
}

namespace {

bool exact(const PropertyReport& r) { return r.basis == "exhaustive"; }

// Checks "from Holds => to Holds" on a pair of reports.
DirectionCheck implication(std::string direction, const PropertyReport& from, const PropertyReport& to) {
  DirectionCheck d;
  d.direction = std::move(direction);
  if (from.verdict == Verdict::Holds && to.verdict == Verdict::Fails) {
    if (exact(from) && exact(to)) {
      d.status = Consistency::Violation;
      d.reason = "premise Holds and conclusion Fails, both exhaustive";
    } else {
      d.status = Consistency::NotApplicable;
      d.reason = "premise Holds and conclusion Fails at evidence level only";
    }
    return d;
  }
  d.status = Consistency::Consistent;
  if (from.verdict != Verdict::Holds) {
    d.reason = std::string("premise is ") + report_verdict_name(from.verdict);
  } else {
    d.reason = std::string("conclusion is ") + report_verdict_name(to.verdict);
  }
  return d;
}

DirectionCheck not_applicable(std::string direction, std::string reason) {
  return DirectionCheck{std::move(direction), Consistency::NotApplicable, std::move(reason)};
}

void settle(TransferCase& c) {
  c.consistency = Consistency::NotApplicable;
  for (const auto& d : c.directions) {
    if (d.status == Consistency::Violation) {
      c.consistency = Consistency::Violation;
      return;
    }
    if (d.status == Consistency::Consistent) c.consistency = Consistency::Consistent;
  }
}

std::pair<PropertyReport, PropertyReport> run_pair(const System& a, const System& b, const std::string& property,
                                                   const CheckParams& p) {
  if (p.workers > 1) {
    auto fa = std::async(std::launch::async, [&] { return run_check(a, property, p); });
    PropertyReport rb = run_check(b, property, p);
    return {fa.get(), std::move(rb)};
  }
  PropertyReport ra = run_check(a, property, p);
  return {std::move(ra), run_check(b, property, p)};
}

// Every built-in map kind is uniformly continuous on its compact space.
bool uniformly_continuous(const Schedule& s) {
  for (const auto& m : schedule_maps(s)) {
    const MapSpec n = normalize(m);
    if (!(n.as<PLMap>() || n.as<Rotation>() || n.as<ShiftMap>() || n.as<FiniteMap>() || n.is_identity())) return false;
  }
  return true;
}

}  // namespace

TransferCase transfer_compare(const System& sys, const std::string& property, const CheckParams& p) {
  static const std::map<std::string, std::string> tags = {
      {"sensitive", "periodic-sensitive"},
      {"multi_sensitive", "periodic-multi-sensitive"},
      {"cofinitely_sensitive", "periodic-cofinite"},
      {"syndetically_sensitive", "periodic-syndetic"},
      {"thickly_sensitive", "periodic-thick"},
      {"thickly_syndetically_sensitive", "periodic-thickly-syndetic"},
      {"ergodically_sensitive", "periodic-ergodic"},
      {"li_yorke_sensitive", "periodic-li-yorke-sensitive"},
      {"li_yorke", "periodic-li-yorke"},
      {"transitive", "periodic-transitive"},
      {"weakly_mixing", "periodic-weakly-mixing"},
      {"mixing", "periodic-mixing"}};
  const auto tag = tags.find(property);
  if (tag == tags.end()) fail(ErrorCode::BadParameter, "no transfer theorem covers '" + property + "'");
  const auto k = detect_period(sys.schedule);
  if (!k) fail(ErrorCode::NotPeriodic, "schedule is not periodic from index 1");
  const System g = period_system(sys);

  TransferCase c;
  c.system = sys.name;
  c.mode = "period";
  c.index = *k;
  c.property = property;
  c.theorem_tag = tag->second;
  const bool uc = uniformly_continuous(sys.schedule);
  c.hypotheses = {{"period", *k}, {"uniformly_continuous", uc}};
  std::tie(c.nds_report, c.reduced_report) = run_pair(sys, g, property, p);

  const bool transitivity = property == "transitive" || property == "weakly_mixing" || property == "mixing";
  if (transitivity) {
    // f_1^{kn} = g^n, so times for g give times for the sequence; the
    // converse is false in general.
    c.directions.push_back(implication("reduced=>nds", c.reduced_report, c.nds_report));
    c.directions.push_back(not_applicable("nds=>reduced", "converse is not a theorem (g may fail where the sequence holds)"));
  } else if (property == "li_yorke") {
    c.directions.push_back(implication("reduced=>nds", c.reduced_report, c.nds_report));
    c.directions.push_back(not_applicable("nds=>reduced", "no converse is claimed"));
  } else if (uc) {
    c.directions.push_back(implication("nds=>reduced", c.nds_report, c.reduced_report));
    c.directions.push_back(implication("reduced=>nds", c.reduced_report, c.nds_report));
  } else {
    const bool forward = property == "cofinitely_sensitive";
    if (forward) {
      c.directions.push_back(implication("nds=>reduced", c.nds_report, c.reduced_report));
      c.directions.push_back(not_applicable("reduced=>nds", "needs uniformly continuous maps"));
    } else {
      c.directions.push_back(implication("reduced=>nds", c.reduced_report, c.nds_report));
      c.directions.push_back(not_applicable("nds=>reduced", "needs uniformly continuous maps"));
    }
  }
  settle(c);
  return c;
}

TransferCase shift_compare(const System& sys, std::uint64_t n, const std::string& property, const CheckParams& p) {
  static const std::set<std::string> supported = {"sensitive", "multi_sensitive", "syndetically_sensitive",
                                                  "cofinitely_sensitive", "ergodically_sensitive"};
  if (n < 2) fail(ErrorCode::BadParameter, "shift comparisons start at index 2 or later");
  if (!supported.count(property)) fail(ErrorCode::BadParameter, "no shift theorem covers '" + property + "'");
  System shifted{sys.name + "/from" + std::to_string(n), sys.space, shifted_system(sys.schedule, n), sys.defaults};

  TransferCase c;
  c.system = sys.name;
  c.mode = "shift";
  c.index = n;
  c.property = property;
  c.theorem_tag = "shift-invariance";

  const FamilyAnalysis fam = family_analysis(sys.schedule);
  bool feeble = true;
  json not_feeble = json::array();
  const auto maps = schedule_maps(sys.schedule);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!analyze(maps[i], &sys.space).feeble_open) {
      feeble = false;
      not_feeble.push_back(i < fam.family.size() ? fam.family[i] : std::to_string(i));
    }
  }
  const bool isolated = sys.space.has_isolated_points();
  c.hypotheses = {{"all_surjective", fam.all_surjective},
                  {"non_surjective", fam.non_surjective},
                  {"no_isolated_points", !isolated},
                  {"all_feeble_open", feeble},
                  {"not_feeble_open", not_feeble},
                  {"finitely_generated", fam.finitely_generated}};
  std::tie(c.nds_report, c.reduced_report) = run_pair(sys, shifted, property, p);

  if (fam.all_surjective && !isolated) {
    c.directions.push_back(implication("nds=>reduced", c.nds_report, c.reduced_report));
  } else {
    c.directions.push_back(not_applicable(
        "nds=>reduced", !fam.all_surjective ? "some map is not surjective" : "the space has isolated points"));
  }
  if (feeble) {
    c.directions.push_back(implication("reduced=>nds", c.reduced_report, c.nds_report));
  } else {
    c.directions.push_back(not_applicable("reduced=>nds", "some map is not feeble open"));
  }
  settle(c);
  return c;
}

json transfer_case_to_json(const TransferCase& c) {
  json dirs = json::array();
  for (const auto& d : c.directions) {
    dirs.push_back({{"direction", d.direction}, {"status", consistency_name(d.status)}, {"reason", d.reason}});
  }
  return {{"system", c.system},
          {"mode", c.mode},
          {c.mode == "period" ? "k" : "n", c.index},
          {"property", c.property},
          {"theorem", c.theorem_tag},
          {"hypotheses", c.hypotheses},
          {"directions", dirs},
          {"consistency", consistency_name(c.consistency)},
          {"nds", report_to_json(c.nds_report)},
          {"reduced", report_to_json(c.reduced_report)}};
}

const std::vector<TheoremEntry>& theorem_harness() {
  static const std::vector<TheoremEntry> entries = {
      {"periodic-cofinite", "k-periodic: the sequence is cofinitely sensitive iff g is", "nonsurjective-transitive"},
      {"periodic-syndetic", "k-periodic: g syndetically sensitive => the sequence is", "nonsurjective-transitive"},
      {"periodic-ergodic", "k-periodic: g ergodically sensitive => the sequence is", "nonsurjective-transitive"},
      {"periodic-li-yorke-sensitive", "k-periodic: g Li-Yorke sensitive => the sequence is", "nonsurjective-transitive"},
      {"periodic-transitive", "k-periodic: g transitive => the sequence is; the converse fails", "k-transfer-counterexample"},
      {"shift-invariance", "surjective maps, no isolated points: f_{1,oo} sensitive => f_{n,oo} sensitive; feeble open maps give the converse",
       "nonsurjective-transitive"},
      {"commutative-nonrecurrent",
       "surjective, commutative, k-periodic with a nonrecurrent point: sensitivity transfers through the point", "needs-fixture"},
  };
  return entries;
}

}  // namespace ndsys
