#pragma once

namespace ndsys {

enum class Verdict { Holds, Fails, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Conjunction: any Fails wins, then any Inconclusive.
inline Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::Fails || b == Verdict::Fails) return Verdict::Fails;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Holds;
}

}  // namespace ndsys
