#include "ndsys/ndsys.h"

#include "ndsys/error.hpp"
#include "ndsys/gallery.hpp"
#include "ndsys/reductions.hpp"
#include "ndsys/serialize.hpp"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <map>
#include <optional>
#include <sstream>
#include <string>

struct ndsys_system {
  ndsys::System sys;
};

namespace {

using ndsys::json;

thread_local std::string last_error;

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

struct NullArgument {
  const char* name;
};

template <class T>
T* need(T* p, const char* name) {
  if (!p) throw NullArgument{name};
  return p;
}

// Runs `body` with every library error mapped onto a status code.
template <class F>
ndsys_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return NDSYS_OK;
  } catch (const NullArgument& e) {
    last_error = std::string("argument '") + e.name + "' is NULL";
    return NDSYS_ERR_NULL_ARGUMENT;
  } catch (const ndsys::Error& e) {
    last_error = e.what();
    return static_cast<ndsys_status>(static_cast<int>(e.code()));
  } catch (const json::exception& e) {
    last_error = e.what();
    return NDSYS_ERR_PARSE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NDSYS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return NDSYS_ERR_INTERNAL;
  }
}

json parse_json(const char* text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    ndsys::fail(ndsys::ErrorCode::Parse, std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::pair<ndsys::CheckParams, std::uint64_t> read_params(const ndsys::System& sys, const char* params) {
  ndsys::CheckParams p = ndsys::system_params(sys);
  if (!params) return {p, 1};
  json j = parse_json(params, "parameters");
  std::uint64_t workers = 1;
  if (j.is_object() && j.contains("workers")) {
    if (!j.at("workers").is_number_unsigned() || j.at("workers").get<std::uint64_t>() == 0) {
      ndsys::fail(ndsys::ErrorCode::BadParameter, "at /workers: expected a positive integer");
    }
    workers = j.at("workers").get<std::uint64_t>();
    j.erase("workers");
  }
  p = ndsys::params_from_json(j, p);
  p.workers = workers;
  return {p, workers};
}

int verdict_code(ndsys::Verdict v) {
  switch (v) {
    case ndsys::Verdict::Holds: return 0;
    case ndsys::Verdict::Fails: return 1;
    case ndsys::Verdict::Inconclusive: return 2;
  }
  return 2;
}

ndsys::SetClass parse_set_class(const std::string& s) {
  static const std::map<std::string, ndsys::SetClass> names = {{"syndetic", ndsys::SetClass::Syndetic},
                                                               {"thick", ndsys::SetClass::Thick},
                                                               {"cofinite", ndsys::SetClass::Cofinite},
                                                               {"thickly_syndetic", ndsys::SetClass::ThicklySyndetic},
                                                               {"upper_density", ndsys::SetClass::UpperDensity}};
  auto it = names.find(s);
  if (it == names.end()) ndsys::fail(ndsys::ErrorCode::BadParameter, "unknown set class '" + s + "'");
  return it->second;
}

ndsys_system* wrap(ndsys::System sys) { return new ndsys_system{std::move(sys)}; }

}  // namespace

extern "C" {

const char* ndsys_version(void) { return "0.1.0"; }

const char* ndsys_status_name(ndsys_status status) {
  switch (status) {
    case NDSYS_OK: return "Ok";
    case NDSYS_ERR_IO: return "Io";
    case NDSYS_ERR_NULL_ARGUMENT: return "NullArgument";
    case NDSYS_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status >= NDSYS_ERR_SPACE_MISMATCH && status <= NDSYS_ERR_PRECISION) {
    return ndsys::error_code_name(static_cast<ndsys::ErrorCode>(static_cast<int>(status)));
  }
  return "Unknown";
}

const char* ndsys_last_error(void) { return last_error.c_str(); }

void ndsys_string_free(char* s) { std::free(s); }

ndsys_status ndsys_system_from_json(const char* document, ndsys_system** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(ndsys::system_from_json(parse_json(need(document, "document"), "system document")));
  });
}

ndsys_status ndsys_system_from_file(const char* path, ndsys_system** out) {
  const ndsys_status st = guard([&] {
    need(out, "out");
    *out = wrap(ndsys::load_system_file(need(path, "path")));
  });
  if (st == NDSYS_ERR_PARSE && last_error.rfind("cannot open", 0) == 0) return NDSYS_ERR_IO;
  return st;
}

ndsys_status ndsys_system_from_fixture(const char* name, ndsys_system** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(ndsys::get_fixture(need(name, "name")).system);
  });
}

ndsys_status ndsys_system_open(const char* source, ndsys_system** out) {
  if (source) {
    for (const auto& n : ndsys::list_fixtures()) {
      if (n == source) return ndsys_system_from_fixture(source, out);
    }
  }
  return ndsys_system_from_file(source, out);
}

void ndsys_system_free(ndsys_system* sys) { delete sys; }

ndsys_status ndsys_system_json(const ndsys_system* sys, char** out) {
  return guard([&] { *need(out, "out") = copy_out(ndsys::system_to_json(need(sys, "sys")->sys).dump(2)); });
}

ndsys_status ndsys_system_digest(const ndsys_system* sys, char** out) {
  return guard([&] { *need(out, "out") = copy_out(ndsys::system_digest(need(sys, "sys")->sys)); });
}

ndsys_status ndsys_eval(const ndsys_system* sys, uint64_t from, uint64_t n, const char* point, char** out) {
  return guard([&] {
    const auto& s = need(sys, "sys")->sys;
    need(out, "out");
    if (from == 0) ndsys::fail(ndsys::ErrorCode::BadParameter, "windows start at index 1");
    const ndsys::Point x = ndsys::parse_point(s.space, need(point, "point"));
    ndsys::Point y = x;
    for (std::uint64_t i = from; i < from + n; ++i) y = ndsys::eval(s.schedule.map_at(i), y);
    *out = copy_out(ndsys::format_point(s.space, y));
  });
}

ndsys_status ndsys_orbit_csv(const ndsys_system* sys, const char* point, uint64_t horizon, char** out) {
  return guard([&] {
    const auto& s = need(sys, "sys")->sys;
    need(out, "out");
    const ndsys::PointTrace t(s.space, s.schedule, ndsys::parse_point(s.space, need(point, "point")), horizon);
    std::ostringstream csv;
    csv << "n,point\n";
    for (std::uint64_t n = 0; n <= horizon; ++n) csv << n << "," << ndsys::format_point(s.space, t.at(n)) << "\n";
    *out = copy_out(csv.str());
  });
}

ndsys_status ndsys_hits(const ndsys_system* sys, const char* u, const char* v, const char* delta, uint64_t horizon,
                        char** out) {
  return guard([&] {
    const auto& s = need(sys, "sys")->sys;
    need(out, "out");
    const ndsys::RegionSet ru = ndsys::parse_region(s.space, need(u, "u"));
    ndsys::IndexSample h;
    if (v) {
      h = ndsys::hitting_set(s.space, s.schedule, ru, ndsys::parse_region(s.space, v), horizon);
    } else if (delta) {
      h = ndsys::sensitivity_hits(s.space, s.schedule, ru, ndsys::parse_rational(delta), horizon);
    } else {
      ndsys::fail(ndsys::ErrorCode::BadParameter, "give a target region or a delta");
    }
    *out = copy_out(ndsys::sample_to_json(h).dump());
  });
}

ndsys_status ndsys_classify(const char* sample, const char* set_class, const char* options, char** out) {
  return guard([&] {
    need(out, "out");
    const ndsys::IndexSample smp = ndsys::sample_from_json(parse_json(need(sample, "sample"), "sample"));
    ndsys::ClassifyOptions opts;
    if (options) {
      const ndsys::CheckParams p = ndsys::params_from_json(parse_json(options, "options"));
      const json j = parse_json(options, "options");
      if (j.contains("k")) opts.k = p.k;
      if (j.contains("theta")) opts.theta = p.theta;
      opts.sub_horizon = p.sub_horizon;
    }
    const ndsys::ClassVerdict v = ndsys::classify(smp, parse_set_class(need(set_class, "set_class")), opts);
    *out = copy_out(ndsys::class_verdict_to_json(v).dump());
  });
}

ndsys_status ndsys_check(const ndsys_system* sys, const char* property, const char* params, const char* point,
                         char** out, int* verdict) {
  return guard([&] {
    const auto& s = need(sys, "sys")->sys;
    need(out, "out");
    const ndsys::CheckParams p = read_params(s, params).first;
    std::optional<ndsys::Point> x;
    if (point) x = ndsys::parse_point(s.space, point);
    const ndsys::PropertyReport r = ndsys::run_check(s, need(property, "property"), p, x);
    *out = copy_out(ndsys::report_to_json(r).dump(2));
    if (verdict) *verdict = verdict_code(r.verdict);
  });
}

ndsys_status ndsys_property_names(char** out) {
  return guard([&] { *need(out, "out") = copy_out(json(ndsys::property_names()).dump()); });
}

ndsys_status ndsys_replay(const ndsys_system* sys, const char* report, char** reason) {
  return guard([&] {
    const auto& s = need(sys, "sys")->sys;
    need(reason, "reason");
    const auto r = ndsys::replay(s, ndsys::report_from_json(parse_json(need(report, "report"), "report")));
    *reason = r ? copy_out(*r) : nullptr;
  });
}

ndsys_status ndsys_diameter_curve(const ndsys_system* sys, const char* region, uint64_t horizon, char** out) {
  return guard([&] {
    const auto& s = need(sys, "sys")->sys;
    need(out, "out");
    const auto curve = ndsys::diameter_curve(s, ndsys::parse_region(s.space, need(region, "region")), horizon);
    std::ostringstream csv;
    csv << "n,diam,diam_approx\n";
    for (const auto& [n, d] : curve) csv << n << "," << d.to_string() << "," << d.approx().str(12, std::ios::fixed) << "\n";
    *out = copy_out(csv.str());
  });
}

ndsys_status ndsys_cover(const ndsys_system* sys, const char* width, char** out) {
  return guard([&] {
    const auto& s = need(sys, "sys")->sys;
    need(out, "out");
    const auto cover = ndsys::make_cover(s.space, ndsys::parse_rational(need(width, "width")));
    json cells = json::array();
    for (const auto& c : cover.cells) cells.push_back(ndsys::format_region(s.space, c));
    *out = copy_out(cells.dump());
  });
}

ndsys_status ndsys_compare(const ndsys_system* sys, const char* mode, uint64_t index, const char* property,
                           const char* params, char** out, int* consistency) {
  return guard([&] {
    const auto& s = need(sys, "sys")->sys;
    need(out, "out");
    const std::string m = need(mode, "mode");
    const ndsys::CheckParams p = read_params(s, params).first;
    ndsys::TransferCase c;
    if (m == "period") {
      c = ndsys::transfer_compare(s, need(property, "property"), p);
    } else if (m == "shift") {
      c = ndsys::shift_compare(s, index, need(property, "property"), p);
    } else {
      ndsys::fail(ndsys::ErrorCode::BadParameter, "mode must be 'period' or 'shift'");
    }
    *out = copy_out(ndsys::transfer_case_to_json(c).dump(2));
    if (consistency) *consistency = static_cast<int>(c.consistency);
  });
}

ndsys_status ndsys_example_list(char** out) {
  return guard([&] {
    json list = json::array();
    for (const auto& name : ndsys::list_fixtures()) {
      const auto& f = ndsys::get_fixture(name);
      list.push_back({{"name", f.name}, {"anchor", f.anchor}, {"notes", f.notes}, {"checks", f.manifest.size()}});
    }
    *need(out, "out") = copy_out(list.dump(2));
  });
}

ndsys_status ndsys_example_run(const char* name, uint64_t workers, char** out, int* pass) {
  return guard([&] {
    need(out, "out");
    const ndsys::FixtureDiff d = ndsys::run_fixture(need(name, "name"), workers == 0 ? 1 : workers);
    *out = copy_out(ndsys::fixture_diff_to_json(d).dump(2));
    if (pass) *pass = d.pass() ? 1 : 0;
  });
}

ndsys_status ndsys_schema(char** out) {
  return guard([&] { *need(out, "out") = copy_out(ndsys::system_schema().dump(2)); });
}

}  // extern "C"
