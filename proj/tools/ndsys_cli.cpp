// Command-line front end over the C interface.
//
// Exit codes: 0 Holds / pass / replay confirmed, 2 Fails / replay rejected, 3 Inconclusive or NotApplicable,
// 1 usage or I/O error.

#include "ndsys/ndsys.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using json = nlohmann::json;

constexpr int kExitHolds = 0;
constexpr int kExitError = 1;
constexpr int kExitFails = 2;
constexpr int kExitOpen = 3;

struct Failure {
  std::string message;
};

void check(ndsys_status st) {
  if (st != NDSYS_OK) throw Failure{std::string(ndsys_status_name(st)) + ": " + ndsys_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ndsys_string_free(s);
  return out;
}

class SystemHandle {
 public:
  explicit SystemHandle(const std::string& source) { check(ndsys_system_open(source.c_str(), &sys_)); }
  ~SystemHandle() { ndsys_system_free(sys_); }
  SystemHandle(const SystemHandle&) = delete;
  SystemHandle& operator=(const SystemHandle&) = delete;
  const ndsys_system* get() const { return sys_; }

 private:
  ndsys_system* sys_ = nullptr;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{"cannot open '" + path + "'"};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Failure{"cannot write '" + path + "'"};
  out << text;
}

int verdict_exit(int verdict) { return verdict == 0 ? kExitHolds : verdict == 1 ? kExitFails : kExitOpen; }

// Check options shared by `check` and `compare`; unset flags fall back to
// the system defaults.
struct CheckFlags {
  std::optional<std::string> delta, cover, epsilon, eta, theta, anchor, params_file;
  std::optional<std::uint64_t> horizon, k, m, word_length, pair_budget, seed, grid_depth, sub_horizon;
  std::vector<std::string> epsilons;
  std::uint64_t workers = 1;

  void attach(CLI::App* app) {
    app->add_option("--delta", delta, "sensitivity constant p/q");
    app->add_option("--horizon,-T", horizon, "horizon T");
    app->add_option("--cover,-w", cover, "cover width p/q");
    app->add_option("--epsilon", epsilon, "epsilon p/q");
    app->add_option("--eta", eta, "Li-Yorke proximality threshold p/q");
    app->add_option("--theta", theta, "density threshold p/q");
    app->add_option("--k", k, "run length or period multiple");
    app->add_option("--m", m, "multi-sensitivity family size");
    app->add_option("--L", word_length, "word length for weak checks");
    app->add_option("--pair-budget", pair_budget, "sampled pairs for Li-Yorke");
    app->add_option("--seed", seed, "sampling seed");
    app->add_option("--grid-depth", grid_depth, "equicontinuity delta grid depth");
    app->add_option("--sub-horizon", sub_horizon, "trend comparison horizon");
    app->add_option("--anchor", anchor, "periodic anchor: first or all")->check(CLI::IsMember({"first", "all"}));
    app->add_option("--epsilons", epsilons, "equicontinuity targets p/q");
    app->add_option("--params", params_file, "JSON file of parameters, overridden by flags");
    app->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  }

  std::string to_json() const {
    json j = params_file ? json::parse(read_file(*params_file)) : json::object();
    auto put = [&](const char* key, const auto& v) {
      if (v) j[key] = *v;
    };
    put("delta", delta);
    put("T", horizon);
    put("w", cover);
    put("epsilon", epsilon);
    put("eta", eta);
    put("theta", theta);
    put("k", k);
    put("m", m);
    put("L", word_length);
    put("pair_budget", pair_budget);
    put("seed", seed);
    put("grid_depth", grid_depth);
    put("sub_horizon", sub_horizon);
    put("anchor", anchor);
    if (!epsilons.empty()) j["epsilons"] = epsilons;
    j["workers"] = workers;
    return j.dump();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ndsys: exact experiments on non-autonomous discrete systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ndsys_version());

  std::string system;
  std::string point;
  std::uint64_t n = 0, from = 1, horizon = 30;

  auto* eval = app.add_subcommand("eval", "print f_i^n(p)");
  eval->add_option("--system,-s", system, "fixture name or system file")->required();
  eval->add_option("--point,-p", point, "point")->required();
  eval->add_option("--n", n, "number of maps")->required();
  eval->add_option("--from", from, "first index i")->check(CLI::PositiveNumber);

  auto* orbit = app.add_subcommand("orbit", "print n,point rows as CSV");
  orbit->add_option("--system,-s", system, "fixture name or system file")->required();
  orbit->add_option("--point,-p", point, "point")->required();
  orbit->add_option("--horizon,-T", horizon, "horizon");

  std::string u, v, hdelta;
  auto* hits = app.add_subcommand("hits", "print N(U,V) or N(U,delta) as an index sample");
  hits->add_option("--system,-s", system, "fixture name or system file")->required();
  hits->add_option("--u", u, "source region")->required();
  auto* vopt = hits->add_option("--v", v, "target region");
  hits->add_option("--delta", hdelta, "spread threshold p/q")->excludes(vopt);
  hits->add_option("--horizon,-T", horizon, "horizon");

  std::string sample_file, set_class, classify_opts;
  std::optional<std::uint64_t> ck, csub;
  std::optional<std::string> ctheta;
  auto* classify = app.add_subcommand("classify", "classify an index sample");
  classify->add_option("--sample", sample_file, "sample JSON file ('-' for stdin)")->required();
  classify->add_option("--class", set_class, "set class")
      ->required()
      ->check(CLI::IsMember({"syndetic", "thick", "cofinite", "thickly_syndetic", "upper_density"}));
  classify->add_option("--k", ck, "run length");
  classify->add_option("--theta", ctheta, "density threshold p/q");
  classify->add_option("--sub-horizon", csub, "trend comparison horizon");

  std::string property, curve_file, curve_region, replay_file;
  std::optional<std::string> cpoint;
  CheckFlags check_flags;
  auto* chk = app.add_subcommand("check", "run a property check and print its report");
  chk->add_option("--system,-s", system, "fixture name or system file")->required();
  chk->add_option("--property,-P", property, "property name");
  chk->add_option("--point,-p", cpoint, "point for pointwise properties");
  chk->add_option("--emit-curve", curve_file, "write n,diam CSV for one region to this file");
  chk->add_option("--region", curve_region, "region for --emit-curve (default: first cover cell)");
  chk->add_option("--replay", replay_file, "re-verify a stored FailsWitness report instead of checking");
  chk->add_flag_callback("--list", [] {
    char* names = nullptr;
    check(ndsys_property_names(&names));
    std::cout << take(names) << "\n";
    std::exit(kExitHolds);
  }, "list property names");
  check_flags.attach(chk);

  std::string mode;
  std::uint64_t shift_index = 2;
  CheckFlags compare_flags;
  auto* cmp = app.add_subcommand("compare", "compare a property on the system and its reduction");
  cmp->add_option("--system,-s", system, "fixture name or system file")->required();
  cmp->add_option("--mode", mode, "period or shift")->required()->check(CLI::IsMember({"period", "shift"}));
  cmp->add_option("--property,-P", property, "property name")->required();
  cmp->add_option("--n", shift_index, "start index of the shifted sequence");
  compare_flags.attach(cmp);

  std::string fixture;
  std::uint64_t example_workers = 1;
  auto* example = app.add_subcommand("example", "built-in fixtures");
  example->require_subcommand(1);
  auto* ex_run = example->add_subcommand("run", "run a fixture manifest and print the diff");
  ex_run->add_option("name", fixture, "fixture name")->required();
  ex_run->add_option("--workers", example_workers, "worker threads")->check(CLI::PositiveNumber);
  auto* ex_list = example->add_subcommand("list", "list fixtures");

  auto* schema = app.add_subcommand("schema", "print the system document schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitHolds : kExitError;
  }

  try {
    if (eval->parsed()) {
      SystemHandle s(system);
      char* out = nullptr;
      check(ndsys_eval(s.get(), from, n, point.c_str(), &out));
      std::cout << take(out) << "\n";
      return kExitHolds;
    }
    if (orbit->parsed()) {
      SystemHandle s(system);
      char* out = nullptr;
      check(ndsys_orbit_csv(s.get(), point.c_str(), horizon, &out));
      std::cout << take(out);
      return kExitHolds;
    }
    if (hits->parsed()) {
      SystemHandle s(system);
      char* out = nullptr;
      check(ndsys_hits(s.get(), u.c_str(), v.empty() ? nullptr : v.c_str(), hdelta.empty() ? nullptr : hdelta.c_str(),
                       horizon, &out));
      std::cout << take(out) << "\n";
      return kExitHolds;
    }
    if (classify->parsed()) {
      std::string text;
      if (sample_file == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        text = s.str();
      } else {
        text = read_file(sample_file);
      }
      json opts = json::object();
      if (ck) opts["k"] = *ck;
      if (ctheta) opts["theta"] = *ctheta;
      if (csub) opts["sub_horizon"] = *csub;
      char* out = nullptr;
      check(ndsys_classify(text.c_str(), set_class.c_str(), opts.dump().c_str(), &out));
      const std::string result = take(out);
      std::cout << json::parse(result).dump(2) << "\n";
      const std::string verdict = json::parse(result).at("verdict").get<std::string>();
      return verdict == "Holds" ? kExitHolds : verdict == "Fails" ? kExitFails : kExitOpen;
    }
    if (chk->parsed()) {
      SystemHandle s(system);
      if (!replay_file.empty()) {
        char* reason = nullptr;
        check(ndsys_replay(s.get(), read_file(replay_file).c_str(), &reason));
        if (!reason) {
          std::cout << "{\"replay\": \"confirmed\"}\n";
          return kExitHolds;
        }
        std::cout << json{{"replay", "rejected"}, {"reason", take(reason)}}.dump() << "\n";
        return kExitFails;
      }
      if (property.empty()) throw Failure{"--property is required"};
      const std::string params = check_flags.to_json();
      char* out = nullptr;
      int verdict = 2;
      check(ndsys_check(s.get(), property.c_str(), params.c_str(), cpoint ? cpoint->c_str() : nullptr, &out, &verdict));
      const std::string report = take(out);
      if (!curve_file.empty()) {
        const json rep = json::parse(report);
        std::string region = curve_region;
        if (region.empty()) {
          char* cells = nullptr;
          check(ndsys_cover(s.get(), rep.at("params").at("w").get<std::string>().c_str(), &cells));
          region = json::parse(take(cells)).at(0).get<std::string>();
        }
        char* csv = nullptr;
        check(ndsys_diameter_curve(s.get(), region.c_str(), rep.at("params").at("T").get<std::uint64_t>(), &csv));
        write_file(curve_file, take(csv));
      }
      std::cout << report << "\n";
      return verdict_exit(verdict);
    }
    if (cmp->parsed()) {
      SystemHandle s(system);
      char* out = nullptr;
      int consistency = 2;
      check(ndsys_compare(s.get(), mode.c_str(), shift_index, property.c_str(), compare_flags.to_json().c_str(), &out,
                          &consistency));
      std::cout << take(out) << "\n";
      return consistency == 0 ? kExitHolds : consistency == 1 ? kExitFails : kExitOpen;
    }
    if (ex_run->parsed()) {
      char* out = nullptr;
      int pass = 0;
      check(ndsys_example_run(fixture.c_str(), example_workers, &out, &pass));
      std::cout << take(out) << "\n";
      return pass ? kExitHolds : kExitFails;
    }
    if (ex_list->parsed()) {
      char* out = nullptr;
      check(ndsys_example_list(&out));
      std::cout << take(out) << "\n";
      return kExitHolds;
    }
    if (schema->parsed()) {
      char* out = nullptr;
      check(ndsys_schema(&out));
      std::cout << take(out) << "\n";
      return kExitHolds;
    }
  } catch (const Failure& f) {
    std::cerr << "ndsys: " << f.message << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    std::cerr << "ndsys: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
