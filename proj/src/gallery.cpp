#include "ndsys/gallery.hpp"

#include "ndsys/error.hpp"
#include "ndsys/reductions.hpp"
#include "ndsys/serialize.hpp"

#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace ndsys {

MapSpec halving_map() { return PLMap({0, 1}, {Affine{Rational(1, 2), 0}}); }

MapSpec fold_map() { return PLMap({0, Rational(1, 2), 1}, {Affine{2, 0}, Affine{0, 1}}); }

MapSpec doubling_map() { return PLMap({0, Rational(1, 2), 1}, {Affine{2, 0}, Affine{2, -1}}); }

MapSpec alpha_rotation(std::int64_t steps) { return Rotation{steps, 0}; }

MapSpec cycle_map(std::size_t n, std::int64_t power) {
  FiniteMap f;
  const auto m = static_cast<std::int64_t>(n);
  for (std::int64_t i = 0; i < m; ++i) f.table.push_back(static_cast<std::size_t>(((i + power) % m + m) % m));
  return f;
}

MapSpec constant_map(std::size_t n, std::size_t value) { return FiniteMap{std::vector<std::size_t>(n, value)}; }

System periodic_system(std::string name, SpaceSpec space, std::vector<Generator> word) {
  std::vector<std::size_t> idx(word.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  System sys{std::move(name), std::move(space), Schedule(std::move(word), PeriodicRule{idx}), {}};
  validate_system(sys);
  return sys;
}

namespace {

using Run = std::function<std::string(const System&, std::uint64_t)>;

CheckParams params(std::uint64_t horizon, Rational width, std::uint64_t workers) {
  CheckParams p;
  p.horizon = horizon;
  p.width = std::move(width);
  p.workers = workers;
  return p;
}

std::string verdict_text(const PropertyReport& r) { return report_verdict_name(r.verdict); }
std::string verdict_basis(const PropertyReport& r) { return std::string(report_verdict_name(r.verdict)) + " " + r.basis; }
std::string yes(bool b) { return b ? "true" : "false"; }

std::string members_text(const IndexSample& s) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < s.members.size(); ++i) out << (i ? "," : "") << s.members[i];
  out << "]";
  return out.str();
}

Fixture nonsurjective_transitive() {
  System sys = periodic_system("nonsurjective-transitive", SpaceSpec::interval(),
                             {{"g1", halving_map()}, {"g2", fold_map()}, {"g3", doubling_map()}});
  Fixture f{"nonsurjective-transitive", "proposition-transitive-not-surjective", "x/2, fold, doubling repeated; transitive although every third map is not onto", std::move(sys), {}};
  f.manifest = {
      {"analyze(g1).surjective", "false", "SOURCE", [](const System&, std::uint64_t) { return yes(analyze(halving_map()).surjective); }},
      {"transitive w=1/8 T=60", "HoldsEvidence", "SOURCE",
       [](const System& s, std::uint64_t w) { return verdict_text(check_transitive(s, TransitivityKind::Transitive, params(60, Rational(1, 8), w))); }},
      {"transitive w=1/8 T=60: every pair hit by n <= 30", "true", "DERIVED",
       [](const System& s, std::uint64_t w) {
         const auto r = check_transitive(s, TransitivityKind::Transitive, params(60, Rational(1, 8), w));
         return yes(r.verdict == Verdict::Holds && r.witnesses.at("max_first_hit").get<std::uint64_t>() <= 30);
       }},
      {"compile_period_map equals g3", "true", "DERIVED",
       [](const System& s, std::uint64_t) { return yes(normalize(compile_period_map(s.schedule)) == doubling_map()); }},
      {"fixed_points", "{0}", "DERIVED",
       [](const System& s, std::uint64_t) { return format_region(s.space, *fixed_points(s).region); }},
      {"analyze(g2).feeble_open", "false", "DERIVED", [](const System&, std::uint64_t) { return yes(analyze(fold_map()).feeble_open); }},
      {"shift_compare n=2 sensitive delta=1/4 w=1/8 T=60: converse", "NotApplicable", "DERIVED",
       [](const System& s, std::uint64_t w) {
         const auto c = shift_compare(s, 2, "sensitive", params(60, Rational(1, 8), w));
         return std::string(consistency_name(c.directions.at(1).status));
       }},
  };
  return f;
}

Fixture finite_hitting_isolated() {
  const std::size_t n = 5;
  FiniteMap h = std::get<FiniteMap>(cycle_map(4, 1).body);
  h.table.push_back(4);
  std::vector<Generator> gens = {{"to_a", constant_map(n, 4)}, {"to_x0", constant_map(n, 0)}, {"h", h}};
  System sys = System{"finite-hitting-isolated", SpaceSpec::finite(n), Schedule(gens, ExplicitRule{{0, 1}, {2}}), {}};
  validate_system(sys);
  Fixture f{"finite-hitting-isolated", "example-finite-hitting-times", "4-cycle plus an isolated point a = 4; f1 = const a, f2 = const 0, then the cycle", std::move(sys), {}};
  f.manifest = {
      {"hitting_set(U,{4}) T=20 for every cell U", "[1]", "SOURCE",
       [](const System& s, std::uint64_t) {
         std::set<std::string> seen;
         for (std::size_t i = 0; i < s.space.size; ++i) {
           seen.insert(members_text(hitting_set(s.space, s.schedule, IndexSet(s.space.size, {i}), IndexSet(s.space.size, {4}), 20)));
         }
         return seen.size() == 1 ? *seen.begin() : std::string("differs by cell");
       }},
      {"classify(N({0},{4}), syndetic) T=20", "Fails exhaustive", "DERIVED",
       [](const System& s, std::uint64_t) {
         const auto v = classify(hitting_set(s.space, s.schedule, IndexSet(5, {0}), IndexSet(5, {4}), 20), SetClass::Syndetic);
         return std::string(verdict_name(v.verdict)) + " " + v.basis;
       }},
      {"space has isolated points", "true", "SOURCE", [](const System& s, std::uint64_t) { return yes(s.space.has_isolated_points()); }},
      {"transitive T=20", "HoldsEvidence", "DERIVED",
       [](const System& s, std::uint64_t w) { return verdict_text(check_transitive(s, TransitivityKind::Transitive, params(20, 1, w))); }},
  };
  return f;
}

Fixture circle_alternating() {
  System sys = periodic_system("circle-alternating", SpaceSpec::circle(), {{"rot", alpha_rotation(1)}, {"rot_inv", alpha_rotation(-1)}});
  Fixture f{"circle-alternating", "example-periodic-not-minimal", "rotation by alpha, then by -alpha, repeated", std::move(sys), {}};
  f.manifest = {
      {"compile_window(1,2k) is the zero rotation for k <= 50", "true", "SOURCE",
       [](const System& s, std::uint64_t) {
         for (std::uint64_t k = 1; k <= 50; ++k) {
           const MapSpec m = normalize(compile_window(s.schedule, 1, 2 * k));
           const auto* r = m.as<Rotation>();
           if (!(m.is_identity() || (r && r->step == 0 && r->offset == 0))) return std::string("false");
         }
         return std::string("true");
       }},
      {"periodic k=2 T=100 at every probe of the w=1/8 cover", "HoldsEvidence", "SOURCE",
       [](const System& s, std::uint64_t w) {
         CheckParams p = params(100, Rational(1, 8), w);
         p.k = 2;
         for (const auto& x : make_cover(s.space, p.width).probes) {
           const auto r = check_periodic(s, x, p);
           if (r.verdict != Verdict::Holds) return verdict_text(r);
         }
         return std::string("HoldsEvidence");
       }},
      {"minimal_m2 w=1/8 T=50", "FailsWitness exhaustive", "SOURCE",
       [](const System& s, std::uint64_t w) { return verdict_basis(check_minimality(s, MinimalityMode::M2, params(50, Rational(1, 8), w))); }},
      {"orbit size of 0", "2", "SOURCE",
       [](const System& s, std::uint64_t) {
         const PointTrace t(s.space, s.schedule, CirclePoint(Real(0)), 50);
         std::set<std::string> pts;
         for (std::uint64_t n = 0; n <= 50; ++n) pts.insert(format_point(s.space, t.at(n)));
         return std::to_string(pts.size());
       }},
      {"almost_periodic at 0 eps=1/10 T=100", "HoldsEvidence", "SOURCE",
       [](const System& s, std::uint64_t w) {
         CheckParams p = params(100, Rational(1, 8), w);
         p.epsilon = Rational(1, 10);
         return verdict_text(check_almost_periodic(s, CirclePoint(Real(0)), p));
       }},
      {"sensitive delta=1/10 w=1/8 T=100", "FailsWitness exhaustive", "DERIVED",
       [](const System& s, std::uint64_t w) {
         CheckParams p = params(100, Rational(1, 8), w);
         p.delta = Rational(1, 10);
         return verdict_basis(check_sensitive(s, SensitivityKind::Plain, p));
       }},
  };
  return f;
}

Fixture triangular_3pt() {
  std::vector<Generator> gens = {{"f", FiniteMap{{1, 2, 0}}}, {"id", IdentityMap{}}};
  System sys = System{"triangular-3pt", SpaceSpec::finite(3, 1), Schedule(gens, TriangularRule{0, 1}), {}};
  validate_system(sys);
  Fixture f{"triangular-3pt", "example-minimal-not-almost-periodic", "f(1)=2, f(2)=3, f(3)=1 at positions j(j+1)/2, identity elsewhere", std::move(sys), {}};
  f.manifest = {
      {"minimal_m1", "HoldsEvidence exhaustive", "SOURCE",
       [](const System& s, std::uint64_t w) { return verdict_basis(check_minimality(s, MinimalityMode::M1, params(30, 1, w))); }},
      {"minimal_m2 T=30", "HoldsEvidence", "SOURCE",
       [](const System& s, std::uint64_t w) { return verdict_text(check_minimality(s, MinimalityMode::M2, params(30, 1, w))); }},
      {"almost_periodic at 1 eps=1/2 T=300 sub=60", "FailsWitness trend", "SOURCE",
       [](const System& s, std::uint64_t w) {
         CheckParams p = params(300, 1, w);
         p.epsilon = Rational(1, 2);
         p.sub_horizon = 60;
         return verdict_basis(check_almost_periodic(s, FinitePoint{0}, p));
       }},
      {"return gap at T=60 and T=300", "18 48", "DERIVED",
       [](const System& s, std::uint64_t) {
         const PointTrace t(s.space, s.schedule, FinitePoint{0}, 300);
         const IndexSample r = return_times(s.space, t, Rational(1, 2));
         return std::to_string(max_gap(r.prefix(60)).first) + " " + std::to_string(max_gap(r).first);
       }},
      {"orbit of 1, n = 1..10", "2,2,3,3,3,1,1,1,1,2", "DERIVED",
       [](const System& s, std::uint64_t) {
         const PointTrace t(s.space, s.schedule, FinitePoint{0}, 10);
         std::string out;
         for (std::uint64_t n = 1; n <= 10; ++n) out += (n > 1 ? "," : "") + format_point(s.space, t.at(n));
         return out;
       }},
      {"preimage_cover T=30", "HoldsEvidence", "DERIVED",
       [](const System& s, std::uint64_t w) { return verdict_text(check_preimage_cover(s, params(30, 1, w))); }},
  };
  return f;
}

Fixture minimal2_blocks() {
  System sys = System{"minimal2-blocks", SpaceSpec::interval(), Schedule({{"id", IdentityMap{}}}, IndexedBlocksRule{"minimal2"}), {}};
  validate_system(sys);
  Fixture f{"minimal2-blocks", "example-m1-not-m2", "blocks of five maps: id, x/2, fold, and a mutually inverse pair moving by 2^-(k+2)", std::move(sys), {}};
  f.manifest = {
      {"orbit set of 1, T=100", "{1/2, 1}", "SOURCE",
       [](const System& s, std::uint64_t) {
         const PointTrace t(s.space, s.schedule, IntervalPoint{1}, 100);
         std::set<Rational> pts;
         for (std::uint64_t n = 0; n <= 100; ++n) pts.insert(std::get<IntervalPoint>(t.at(n)).value);
         std::string out = "{";
         for (const auto& q : pts) out += (out.size() > 1 ? ", " : "") + format_rational(q);
         return out + "}";
       }},
      {"minimal_m2 w=1/8 T=50", "FailsWitness", "SOURCE",
       [](const System& s, std::uint64_t w) { return verdict_text(check_minimality(s, MinimalityMode::M2, params(50, Rational(1, 8), w))); }},
      {"minimal_m2 w=1/8 T=50 lists the point 1", "true", "SOURCE",
       [](const System& s, std::uint64_t w) {
         const auto r = check_minimality(s, MinimalityMode::M2, params(50, Rational(1, 8), w));
         if (r.verdict != Verdict::Fails) return std::string("false");
         for (const auto& e : r.witnesses.at("failing")) {
           if (e.at("point") == "1") return std::string("true");
         }
         return std::string("false");
       }},
      {"minimal_m1 w=1/8", "Inconclusive", "DERIVED",
       [](const System& s, std::uint64_t w) { return verdict_text(check_minimality(s, MinimalityMode::M1, params(50, Rational(1, 8), w))); }},
  };
  return f;
}

Fixture shift_growing_blocks() {
  std::vector<Generator> gens = {{"sigma", ShiftMap{1}}, {"sigma_inv", ShiftMap{-1}}, {"id", IdentityMap{}}};
  System sys = System{"shift-growing-blocks", SpaceSpec::shift(), Schedule(gens, GrowingBlocksRule{0, 1, 2}), {}};
  validate_system(sys);
  Fixture f{"shift-growing-blocks", "example-not-thickly-syndetically-sensitive", "block n: n copies of [sigma, id x n], then n copies of [sigma^-1, id x n]", std::move(sys), {}};
  auto hits = [](const System& s) {
    return sensitivity_hits(s.space, s.schedule, CylinderSet::single({{0, 1}}), Rational(1, 2), 300);
  };
  f.manifest = {
      {"sensitivity_hits({0:1}, 1/2, T=300) equals {n : net shift c(n) != 0}", "true", "DERIVED",
       [hits](const System& s, std::uint64_t) {
         std::vector<std::uint64_t> expect;
         std::int64_t c = 0;
         for (std::uint64_t n = 1; n <= 300; ++n) {
           const auto g = *s.schedule.generator_at(n);
           c += g == 0 ? 1 : g == 1 ? -1 : 0;
           if (c != 0) expect.push_back(n);
         }
         return yes(hits(s).members == expect);
       }},
      {"hit count T=300", "273", "DERIVED", [hits](const System& s, std::uint64_t) { return std::to_string(hits(s).members.size()); }},
      {"syndetic gap at T=75 and T=300", "5 8", "DERIVED",
       [hits](const System& s, std::uint64_t) {
         const auto v = classify(hits(s), SetClass::Syndetic);
         return std::to_string(v.max_gap_sub) + " " + std::to_string(v.max_gap);
       }},
      {"thickly_syndetically_sensitive delta=1/2 w=1 T=300", "FailsWitness trend", "SOURCE",
       [](const System& s, std::uint64_t w) {
         CheckParams p = params(300, 1, w);
         p.delta = Rational(1, 2);
         return verdict_basis(check_sensitive(s, SensitivityKind::ThicklySyndetic, p));
       }},
      {"syndetically_sensitive delta=1/2 w=1 T=300", "FailsWitness trend", "SOURCE",
       [](const System& s, std::uint64_t w) {
         CheckParams p = params(300, 1, w);
         p.delta = Rational(1, 2);
         return verdict_basis(check_sensitive(s, SensitivityKind::Syndetic, p));
       }},
  };
  return f;
}

Fixture k_transfer_counterexample() {
  System sys = periodic_system("k-transfer-counterexample", SpaceSpec::finite(4), {{"h3", cycle_map(4, 3)}, {"h_inv", cycle_map(4, -1)}});
  Fixture f{"k-transfer-counterexample", "proposition-g-not-transitive", "h^3, h^-1 repeated on the 4-cycle h(i) = i+1; g = h^2 is not transitive", std::move(sys), {}};
  f.manifest = {
      {"transitive T=20", "HoldsEvidence", "SOURCE",
       [](const System& s, std::uint64_t w) { return verdict_text(check_transitive(s, TransitivityKind::Transitive, params(20, 1, w))); }},
      {"g = h^2 transitive T=20", "FailsWitness exhaustive", "SOURCE",
       [](const System& s, std::uint64_t w) {
         return verdict_basis(check_transitive(period_system(s), TransitivityKind::Transitive, params(20, 1, w)));
       }},
      {"g = h^2 failing pair", "{0} {1}", "DERIVED",
       [](const System& s, std::uint64_t w) {
         const auto r = check_transitive(period_system(s), TransitivityKind::Transitive, params(20, 1, w));
         const auto& fl = r.witnesses.at("failing");
         return fl.at("u_region").get<std::string>() + " " + fl.at("v_region").get<std::string>();
       }},
      {"transfer_compare transitive T=20: converse", "NotApplicable", "SOURCE",
       [](const System& s, std::uint64_t w) {
         const auto c = transfer_compare(s, "transitive", params(20, 1, w));
         for (const auto& d : c.directions) {
           if (d.direction == "nds=>reduced") return std::string(consistency_name(d.status));
         }
         return std::string("missing");
       }},
  };
  return f;
}

Fixture weak_but_not() {
  System sys = periodic_system("weak-but-not", SpaceSpec::shift(), {{"sigma", ShiftMap{1}}, {"sigma_inv", ShiftMap{-1}}});
  Fixture f{"weak-but-not", "example-weak-not-strong", "sigma, sigma^-1 repeated on the full two-sided shift", std::move(sys), {}};
  auto weak = [](const System& s, std::uint64_t w) {
    CheckParams p = params(100, Rational(1, 4), w);
    p.delta = Rational(1, 2);
    p.word_length = 8;
    return weak_scan(s, WeakKind::Sensitive, p);
  };
  f.manifest = {
      {"weak_sensitive delta=1/2 L=8 w=1/4 T=100", "HoldsEvidence", "SOURCE",
       [weak](const System& s, std::uint64_t w) { return verdict_text(weak(s, w)); }},
      {"weak_sensitive words use odd indices only", "true", "DERIVED",
       [weak](const System& s, std::uint64_t w) {
         const auto r = weak(s, w);
         if (r.verdict != Verdict::Holds) return std::string("false");
         for (const auto& c : r.witnesses.at("cells")) {
           for (const auto& i : c.at("indices")) {
             if (i.get<std::uint64_t>() % 2 == 0) return std::string("false");
           }
         }
         return std::string("true");
       }},
      {"sensitive delta=1/2 w=1/4 T=100", "FailsWitness exhaustive", "SOURCE",
       [](const System& s, std::uint64_t w) {
         CheckParams p = params(100, Rational(1, 4), w);
         p.delta = Rational(1, 2);
         return verdict_basis(check_sensitive(s, SensitivityKind::Plain, p));
       }},
      {"weak_transitive L=8 w=1/2 T=100", "HoldsEvidence", "DERIVED",
       [](const System& s, std::uint64_t w) {
         CheckParams p = params(100, Rational(1, 2), w);
         p.word_length = 8;
         return verdict_text(weak_scan(s, WeakKind::Transitive, p));
       }},
  };
  return f;
}

const std::map<std::string, Fixture>& registry() {
  static const std::map<std::string, Fixture> fixtures = [] {
    std::map<std::string, Fixture> m;
    for (auto make : {nonsurjective_transitive, finite_hitting_isolated, circle_alternating, triangular_3pt, minimal2_blocks,
                      shift_growing_blocks, k_transfer_counterexample, weak_but_not}) {
      Fixture f = make();
      std::string name = f.name;
      m.emplace(std::move(name), std::move(f));
    }
    return m;
  }();
  return fixtures;
}

}  // namespace

const std::vector<std::string>& list_fixtures() {
  static const std::vector<std::string> names = {"nonsurjective-transitive", "finite-hitting-isolated", "circle-alternating",
                                                 "triangular-3pt",           "minimal2-blocks",         "shift-growing-blocks",
                                                 "k-transfer-counterexample", "weak-but-not"};
  return names;
}

const Fixture& get_fixture(const std::string& name) {
  const auto& r = registry();
  auto it = r.find(name);
  if (it == r.end()) fail(ErrorCode::UnknownFixture, "unknown fixture '" + name + "'");
  return it->second;
}

FixtureDiff run_fixture(const std::string& name, std::uint64_t workers) {
  const Fixture& f = get_fixture(name);
  FixtureDiff d;
  d.name = name;
  for (const auto& e : f.manifest) {
    ++d.checked;
    std::string actual;
    try {
      actual = e.run(f.system, workers);
    } catch (const Error& err) {
      actual = std::string("error ") + error_code_name(err.code()) + ": " + err.what();
    }
    if (actual != e.expected) d.failures.push_back({e.operation, e.expected, actual, e.tag});
  }
  return d;
}

json fixture_diff_to_json(const FixtureDiff& d) {
  json fails = json::array();
  for (const auto& e : d.failures) {
    fails.push_back({{"operation", e.operation}, {"expected", e.expected}, {"actual", e.actual}, {"tag", e.tag}});
  }
  return {{"fixture", d.name}, {"checked", d.checked}, {"pass", d.pass()}, {"diff", fails}};
}

const std::vector<Anchor>& example_anchors() {
  static const std::vector<Anchor> anchors = {
      {"proposition-transitive-not-surjective", "nonsurjective-transitive"},
      {"example-finite-hitting-times", "finite-hitting-isolated"},
      {"example-periodic-not-minimal", "circle-alternating"},
      {"example-minimal-not-almost-periodic", "triangular-3pt"},
      {"example-m1-not-m2", "minimal2-blocks"},
      {"example-not-thickly-syndetically-sensitive", "shift-growing-blocks"},
      {"proposition-g-not-transitive", "k-transfer-counterexample"},
      {"example-weak-not-strong", "weak-but-not"},
  };
  return anchors;
}

}  // namespace ndsys
