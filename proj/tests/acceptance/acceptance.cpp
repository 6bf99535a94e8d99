// Acceptance run: one PASS/FAIL line per criterion, with its parameters and
// wall time. Exit status is the number of failed criteria.

#include "ndsys/error.hpp"
#include "ndsys/gallery.hpp"
#include "ndsys/reductions.hpp"
#include "ndsys/serialize.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace ndsys;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Records the first failed expectation.
class Probe {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }
  void note(const std::string& s) {
    if (out_.pass) out_.detail = s;
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

Rational r(const char* s) { return parse_rational(s); }

CheckParams params(std::uint64_t horizon, const char* width) {
  CheckParams p;
  p.horizon = horizon;
  p.width = r(width);
  return p;
}

const System& fx(const char* name) { return get_fixture(name).system; }

System g3() { return periodic_system("g3", SpaceSpec::interval(), {{"g3", doubling_map()}}); }
System g3g3() { return periodic_system("g3g3", SpaceSpec::interval(), {{"a", doubling_map()}, {"b", doubling_map()}}); }

Outcome minimal2_orbit() {
  Probe pr;
  const System& s = fx("minimal2-blocks");
  const PointTrace t(s.space, s.schedule, IntervalPoint{1}, 100);
  std::set<Rational> pts;
  for (std::uint64_t n = 0; n <= 100; ++n) pts.insert(std::get<IntervalPoint>(t.at(n)).value);
  pr.expect(pts == std::set<Rational>{Rational(1, 2), Rational(1)}, "orbit of 1 is not {1/2, 1}");
  const PropertyReport m2 = check_minimality(s, MinimalityMode::M2, params(50, "1/8"));
  pr.expect(m2.verdict == Verdict::Fails, "minimal_m2 did not fail");
  bool listed = false;
  if (m2.verdict == Verdict::Fails) {
    for (const auto& f : m2.witnesses.at("failing")) {
      if (f.at("point") == "1" && f.contains("missed_region")) listed = true;
    }
  }
  pr.expect(listed, "point 1 is not reported with a missed cell");
  pr.expect(!replay(s, m2).has_value(), "minimal_m2 witness does not replay");
  return pr.result();
}

Outcome circle_alternating() {
  Probe pr;
  const System& s = fx("circle-alternating");
  for (std::uint64_t k = 1; k <= 50; ++k) {
    const MapSpec m = normalize(compile_window(s.schedule, 1, 2 * k));
    const auto* rot = m.as<Rotation>();
    pr.expect(m.is_identity() || (rot && rot->step == 0 && rot->offset == 0), "window 2k is not the identity");
  }
  CheckParams p = params(100, "1/8");
  p.k = 2;
  for (const auto& x : make_cover(s.space, p.width).probes) {
    pr.expect(check_periodic(s, x, p).verdict == Verdict::Holds, "periodic k=2 fails at " + format_point(s.space, x));
  }
  p.delta = r("1/10");
  const PropertyReport sens = check_sensitive(s, SensitivityKind::Plain, p);
  pr.expect(sens.verdict == Verdict::Fails, "sensitive did not fail");
  pr.expect(!replay(s, sens).has_value(), "sensitivity witness does not replay");
  return pr.result();
}

Outcome triangular() {
  Probe pr;
  const System& s = fx("triangular-3pt");
  const PropertyReport m1 = check_minimality(s, MinimalityMode::M1, params(30, "1"));
  pr.expect(m1.verdict == Verdict::Holds && m1.basis == "exhaustive" && m1.witnesses.at("subsets_checked") == 7,
            "minimal_m1 is not exhaustive over 7 subsets");
  pr.expect(check_minimality(s, MinimalityMode::M2, params(30, "1")).verdict == Verdict::Holds, "minimal_m2 T=30 did not hold");
  const PointTrace t(s.space, s.schedule, FinitePoint{0}, 300);
  const IndexSample ret = return_times(s.space, t, Rational(1, 2));
  const auto g60 = max_gap(ret.prefix(60)).first, g300 = max_gap(ret).first;
  pr.expect(g300 > g60, "return gaps do not grow");
  CheckParams p = params(300, "1");
  p.epsilon = Rational(1, 2);
  p.sub_horizon = 60;
  const PropertyReport ap = check_almost_periodic(s, FinitePoint{0}, p);
  pr.expect(ap.verdict == Verdict::Fails && ap.basis == "trend", "almost_periodic is not a trend failure");
  pr.note("return gap " + std::to_string(g60) + " at T=60, " + std::to_string(g300) + " at T=300");
  return pr.result();
}

Outcome nonsurjective() {
  Probe pr;
  const System& s = fx("nonsurjective-transitive");
  pr.expect(!analyze(halving_map()).surjective, "g1 reported surjective");
  const PropertyReport t = check_transitive(s, TransitivityKind::Transitive, params(60, "1/8"));
  pr.expect(t.verdict == Verdict::Holds, "transitive did not hold");
  if (t.verdict == Verdict::Holds) {
    const auto worst = t.witnesses.at("max_first_hit").get<std::uint64_t>();
    pr.expect(worst <= 30, "a pair first hits after 30");
    pr.note("max first hit " + std::to_string(worst));
  }
  return pr.result();
}

Outcome growing_blocks() {
  Probe pr;
  const System& s = fx("shift-growing-blocks");
  const IndexSample h = sensitivity_hits(s.space, s.schedule, CylinderSet::single({{0, 1}}), Rational(1, 2), 300);
  std::vector<std::uint64_t> expect;
  std::int64_t c = 0;
  for (std::uint64_t n = 1; n <= 300; ++n) {
    const auto g = *s.schedule.generator_at(n);
    c += g == 0 ? 1 : g == 1 ? -1 : 0;
    if (c != 0) expect.push_back(n);
  }
  pr.expect(h.members == expect, "hits differ from {n : c(n) != 0}");
  CheckParams p = params(300, "1");
  p.delta = Rational(1, 2);
  for (auto kind : {SensitivityKind::Syndetic, SensitivityKind::ThicklySyndetic}) {
    const PropertyReport rep = check_sensitive(s, kind, p);
    pr.expect(rep.verdict == Verdict::Fails && rep.basis == "trend",
              std::string(sensitivity_property_name(kind)) + " is not a trend failure");
  }
  return pr.result();
}

Outcome transfers() {
  Probe pr;
  const System d = g3g3();
  const CheckParams p = params(30, "1/8");
  const TransferCase c = transfer_compare(d, "cofinitely_sensitive", p);
  pr.expect(c.consistency == Consistency::Consistent, std::string("g3g3 transfer is ") + consistency_name(c.consistency));
  const System g = period_system(d);
  for (const auto& u : make_cover(d.space, p.width).cells) {
    const IndexSample a = sensitivity_hits(d.space, d.schedule, u, p.delta, p.horizon);
    const IndexSample b = sensitivity_hits(g.space, g.schedule, u, p.delta, p.horizon);
    for (std::uint64_t n = 6; n <= 30; ++n) pr.expect(a.contains(n) && b.contains(n), "hit sets miss part of [6,30]");
  }
  const TransferCase sc = shift_compare(fx("nonsurjective-transitive"), 2, "sensitive", params(60, "1/8"));
  pr.expect(sc.directions.size() == 2 && sc.directions[1].status == Consistency::NotApplicable,
            "shift converse is not NotApplicable");
  pr.expect(sc.consistency != Consistency::Violation, "shift compare reports a violation");
  return pr.result();
}

Outcome k_transfer() {
  Probe pr;
  const System& s = fx("k-transfer-counterexample");
  pr.expect(check_transitive(s, TransitivityKind::Transitive, params(20, "1")).verdict == Verdict::Holds, "NDS not transitive");
  const System g = period_system(s);
  const PropertyReport t = check_transitive(g, TransitivityKind::Transitive, params(20, "1"));
  pr.expect(t.verdict == Verdict::Fails, "g = h^2 is transitive");
  if (t.verdict == Verdict::Fails) {
    const auto& f = t.witnesses.at("failing");
    pr.expect(f.at("u_region") == "{0}" && f.at("v_region") == "{1}", "failing pair is not ({0},{1})");
    pr.expect(!replay(g, t).has_value(), "failing pair does not replay");
  }
  return pr.result();
}

Point random_point(const SpaceSpec& space, std::mt19937_64& rng) {
  switch (space.kind) {
    case SpaceKind::Interval: {
      const long d = 1 + static_cast<long>(rng() % 97);
      return IntervalPoint{Rational(static_cast<long>(rng() % (d + 1)), d)};
    }
    case SpaceKind::Circle: {
      const long d = 1 + static_cast<long>(rng() % 97);
      return CirclePoint(Real(Rational(static_cast<long>(rng() % d), d), static_cast<long>(rng() % 7) - 3).frac());
    }
    case SpaceKind::Finite: return FinitePoint{static_cast<std::size_t>(rng() % space.size)};
    case SpaceKind::Shift: {
      auto bits = [&](std::size_t n) {
        std::string s;
        for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('0' + rng() % 2);
        return s;
      };
      const std::string w = bits(6);
      return SeqPoint::parse("<" + bits(1 + rng() % 2) + ">" + w.substr(0, 3) + "." + w.substr(3) + "<" +
                             bits(1 + rng() % 2) + ">");
    }
  }
  return FinitePoint{0};
}

Outcome invariants() {
  Probe pr;
  std::mt19937_64 rng(20261014);
  // (a) cocycle identity.
  std::size_t cocycle = 0;
  for (const auto& name : list_fixtures()) {
    const System& s = fx(name.c_str());
    for (int trial = 0; trial < 1000; ++trial) {
      const std::uint64_t i = 1 + rng() % 12, m = rng() % 6, n = rng() % 6;
      const Point x = random_point(s.space, rng);
      const Point lhs = eval(s.schedule.window(i, m + n), x);
      const Point rhs = eval(s.schedule.window(i + m, n), eval(s.schedule.window(i, m), x));
      pr.expect(lhs == rhs, "(a) cocycle breaks on " + name);
      ++cocycle;
    }
  }
  // (b) planted cofinite tails are accepted by every classifier.
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t T = 40 + rng() % 400;
    const std::uint64_t tail = 1 + rng() % (T / 2);
    std::vector<std::uint64_t> mem;
    for (std::uint64_t n = 1; n <= T; ++n) {
      if (n >= tail || rng() % 3 == 0) mem.push_back(n);
    }
    const IndexSample smp = make_sample(T, mem);
    ClassifyOptions opts;
    opts.k = 1 + rng() % 8;
    for (auto c : {SetClass::Cofinite, SetClass::ThicklySyndetic, SetClass::Syndetic, SetClass::Thick, SetClass::UpperDensity}) {
      pr.expect(classify(smp, c, opts).verdict == Verdict::Holds, std::string("(b) planted tail rejected as ") + set_class_name(c));
    }
  }
  // (c) isometries are never sensitive.
  for (const char* name : {"circle-alternating", "k-transfer-counterexample"}) {
    for (const char* d : {"1/2", "1/10", "1/100"}) {
      CheckParams p = params(60, "1/4");
      p.delta = r(d);
      const PropertyReport rep = check_sensitive(fx(name), SensitivityKind::Plain, p);
      pr.expect(rep.verdict == Verdict::Fails && rep.basis == "exhaustive",
                std::string("(c) isometry sensitive: ") + name + " delta=" + d);
    }
  }
  // (d) N_g(U,delta) = {n : kn in N_f(U,delta)} on the k-periodic fixtures.
  struct PeriodCase {
    System sys;
    std::uint64_t k;
  };
  const std::vector<PeriodCase> periodic = {{fx("nonsurjective-transitive"), 3}, {fx("circle-alternating"), 2},
                                            {fx("weak-but-not"), 2}, {fx("k-transfer-counterexample"), 2}, {g3g3(), 2}};
  for (const auto& c : periodic) {
    const System g = periodic_system("g", c.sys.space, {{"g", compile_window(c.sys.schedule, 1, c.k)}});
    const Rational delta = c.sys.space.kind == SpaceKind::Shift ? Rational(1, 2) : Rational(1, 10);
    const std::uint64_t T = 15;
    for (const auto& u : make_cover(c.sys.space, Rational(1, 4)).cells) {
      const IndexSample f = sensitivity_hits(c.sys.space, c.sys.schedule, u, delta, T * c.k);
      const IndexSample h = sensitivity_hits(g.space, g.schedule, u, delta, T);
      for (std::uint64_t n = 1; n <= T; ++n) pr.expect(h.contains(n) == f.contains(c.k * n), "(d) k-multiple law on " + c.sys.name);
    }
  }
  // (e) multi-sensitivity with m = 1 is plain sensitivity.
  for (const auto& name : list_fixtures()) {
    const System& s = fx(name.c_str());
    CheckParams p = system_params(s);
    p.horizon = 40;
    p.m = 1;
    pr.expect(check_sensitive(s, SensitivityKind::Plain, p).verdict == check_sensitive(s, SensitivityKind::Multi, p).verdict,
              "(e) multi(1) differs on " + name);
  }
  pr.note(std::to_string(cocycle) + " cocycle probes, 500 tails, 6 isometry runs, " + std::to_string(periodic.size()) +
          " periodic systems");
  return pr.result();
}

Outcome kato_chain() {
  Probe pr;
  const System d = g3();
  CheckParams p = params(30, "1/8");
  p.delta = Rational(1, 4);
  p.epsilon = Rational(1, 16);
  pr.expect(check_kato(d, p).verdict == Verdict::Holds, "Kato did not hold on doubling");
  std::size_t checked = 0;
  auto chain = [&](const System& s, const CheckParams& cp) {
    const ChainReplay c = implication_chain(s, cp);
    checked += c.verdicts.size();
    for (const auto& v : c.violations) pr.expect(false, s.name + ": " + v);
  };
  chain(d, p);
  for (const auto& name : list_fixtures()) {
    CheckParams cp = system_params(fx(name.c_str()));
    cp.horizon = 40;
    chain(fx(name.c_str()), cp);
  }
  pr.note(std::to_string(checked) + " chain verdicts, no violations");
  return pr.result();
}

Outcome weak_not_strong() {
  Probe pr;
  const System& s = fx("weak-but-not");
  CheckParams p = params(100, "1/4");
  p.delta = Rational(1, 2);
  p.word_length = 8;
  pr.expect(weak_scan(s, WeakKind::Sensitive, p).verdict == Verdict::Holds, "weak_sensitive did not hold");
  const PropertyReport strong = check_sensitive(s, SensitivityKind::Plain, p);
  pr.expect(strong.verdict == Verdict::Fails, "sensitive did not fail");
  return pr.result();
}

struct Criterion {
  const char* title;
  const char* pinned;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"minimal2 orbit of 1 and M2 failure", "T=100; M2 w=1/8 T=50", minimal2_orbit},
      {"alternating rotation: periodic, not sensitive", "k<=50; k=2 T=100 w=1/8; delta=1/10", circle_alternating},
      {"triangular schedule: M1 and M2 hold, not almost periodic", "T=30; eps=1/2 T=300 vs 60", triangular},
      {"non-surjective member, still transitive", "w=1/8 T=60, first hits <= 30", nonsurjective},
      {"growing blocks: hits and trend failures", "delta=1/2 w=1 T=300 sub=75", growing_blocks},
      {"cofinite transfer and shift converse", "w=1/8 delta=1/4 T=30; [6,30]; shift n=2 T=60", transfers},
      {"transitive NDS with non-transitive g", "T=20 singletons", k_transfer},
      {"invariant suites (a)-(e)", "1000 points/fixture, 500 tails, delta in {1/2,1/10,1/100}", invariants},
      {"doubling: Kato and implication chains", "delta=1/4 eps=1/16 w=1/8 T=30", kato_chain},
      {"weakly sensitive but not sensitive", "delta=1/2 L=8 w=1/4 T=100", weak_not_strong},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu  %-56s [%s] %lld ms%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].title, criteria[i].pinned,
                static_cast<long long>(ms), o.detail.empty() ? "" : "  ", o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
