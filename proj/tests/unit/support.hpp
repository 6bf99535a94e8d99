#pragma once

#include "ndsys/error.hpp"
#include "ndsys/gallery.hpp"
#include "ndsys/reductions.hpp"
#include "ndsys/serialize.hpp"

#include <fstream>

namespace ndtest {

inline const nlohmann::json& frozen() {
  static const nlohmann::json j = [] {
    std::ifstream in(NDSYS_FROZEN);
    return nlohmann::json::parse(in);
  }();
  return j;
}

inline ndsys::Rational q(const char* s) { return ndsys::parse_rational(s); }

inline ndsys::CheckParams params(std::uint64_t horizon, const char* width) {
  ndsys::CheckParams p;
  p.horizon = horizon;
  p.width = q(width);
  return p;
}

inline const ndsys::System& fixture(const char* name) { return ndsys::get_fixture(name).system; }

}  // namespace ndtest
