#!/usr/bin/env python3
"""Brute-force reference values for the C++ test suite.

Everything here is recomputed from the definitions of the example systems
with exact Fractions and plain enumeration; nothing is shared with the
library. Run with --write to refresh frozen.json, or with --check to compare
against it (exit 1 on any difference).
"""

import argparse
import itertools
import json
import sys
from fractions import Fraction as F
from pathlib import Path

FROZEN = Path(__file__).with_name("frozen.json")


# --- interval maps -----------------------------------------------------------

def halving(x):
    return x / 2


def fold(x):
    return 2 * x if x <= F(1, 2) else F(1)


def doubling(x):
    # 2x on [0,1/2), 2x-1 on [1/2,1].
    return 2 * x if x < F(1, 2) else 2 * x - 1


def minimal2_map(n):
    """f_n of the five-block family, n >= 1."""
    k = (n - 1) // 5
    s = F(1, 2 ** (k + 2))
    t = F(1, 2 ** (k + 1))
    slot = (n - 1) % 5
    if slot == 0:
        return lambda x: x
    if slot == 1:
        return lambda x: x / 2
    if slot == 2:
        return fold
    if slot == 3:
        return lambda x: x + s if x <= F(1, 2) else (1 - t) * x + t
    q = 2 ** (k + 1)

    def back(x):
        if x <= s:
            return F(0)
        if x <= F(1, 2) + s:
            return x - s
        return F(q, q - 1) * x - F(1, q - 1)

    return back


# --- schedules ---------------------------------------------------------------

def triangular(n):
    j = 1
    while j * (j + 1) // 2 < n:
        j += 1
    return j * (j + 1) // 2 == n


def growing_blocks_letters(limit):
    """Letters 'S' (sigma), 'I' (sigma inverse), 'e' (identity)."""
    out = []
    n = 1
    while len(out) < limit:
        for letter in "SI":
            for _ in range(n):
                out.append(letter)
                out.extend("e" * n)
        n += 1
    return out[:limit]


# --- sets of integers ---------------------------------------------------------

def max_gap(members, horizon):
    """Largest distance between consecutive elements of {0} ∪ members ∪ {T+1}."""
    pts = [0] + sorted(m for m in members if m <= horizon) + [horizon + 1]
    return max(b - a for a, b in zip(pts, pts[1:]))


def longest_run(members, horizon):
    best = run = 0
    prev = None
    for m in sorted(x for x in members if x <= horizon):
        run = run + 1 if prev is not None and m == prev + 1 else 1
        best = max(best, run)
        prev = m
    return best


# --- shift space -------------------------------------------------------------

def cylinder_diam(fixed):
    """diam of {x : x_i = b_i for i in fixed} under d = 2^-min{|i| : x_i != y_i}."""
    m = 0
    while m in fixed and -m in fixed:
        m += 1
    return F(1, 2 ** m)


def shift_cylinder(fixed, power):
    """Image of a cylinder under sigma^power, (sigma x)_i = x_{i+1}."""
    return {i - power: b for i, b in fixed.items()}


# --- the checks ----------------------------------------------------------------

def growing_blocks_values():
    letters = growing_blocks_letters(300)
    members = []
    c = 0
    for n, letter in enumerate(letters, start=1):
        c += {"S": 1, "I": -1, "e": 0}[letter]
        image = shift_cylinder({0: 1}, c)
        if cylinder_diam(image) > F(1, 2):
            members.append(n)
    return {
        "hits": members,
        "count": len(members),
        "max_gap_75": max_gap(members, 75),
        "max_gap_300": max_gap(members, 300),
        "longest_run_75": longest_run(members, 75),
        "longest_run_300": longest_run(members, 300),
    }


def triangular_values():
    f = {1: 2, 2: 3, 3: 1}
    x = 1
    orbit = []
    returns = []
    for n in range(1, 301):
        if triangular(n):
            x = f[x]
        if n <= 10:
            orbit.append(x)
        if x == 1:
            returns.append(n)
    subsets = 0
    invariant = []
    for r in range(1, 4):
        for sub in itertools.combinations([1, 2, 3], r):
            subsets += 1
            if all(f[i] in sub for i in sub):
                invariant.append(list(sub))
    return {
        "orbit_1_to_10": orbit,
        "return_gap_60": max_gap(returns, 60),
        "return_gap_300": max_gap(returns, 300),
        "m1_subsets_checked": subsets,
        "m1_invariant_subsets": invariant,
    }


def minimal2_values():
    x = F(1)
    seen = {x}
    for n in range(1, 101):
        x = minimal2_map(n)(x)
        seen.add(x)
    return {"orbit_of_1": [str(v) for v in sorted(seen)]}


def fixed_point_values():
    grid = sorted({F(p, q) for q in range(1, 65) for p in range(q + 1)})
    both = [str(x) for x in grid if all(g(x) == x for g in (halving, fold, doubling))]
    only_doubling = [str(x) for x in grid if doubling(x) == x]
    return {"common_fixed_grid64": both, "doubling_fixed_grid64": only_doubling}


def cycle4_values():
    h3 = lambda i: (i + 3) % 4
    hinv = lambda i: (i - 1) % 4
    word = [h3, hinv]

    def first_hit(maps_at, u, v, horizon):
        x = u
        for n in range(1, horizon + 1):
            x = maps_at(n)(x)
            if x == v:
                return n
        return None

    nds = {}
    for u in range(4):
        for v in range(4):
            nds[f"{u}->{v}"] = first_hit(lambda n: word[(n - 1) % 2], u, v, 20)
    g = lambda i: hinv(h3(i))
    failing = None
    for u in range(4):
        for v in range(4):
            if first_hit(lambda n: g, u, v, 20) is None and failing is None:
                failing = [u, v]
    return {"nds_first_hits": nds, "nds_transitive": all(v is not None for v in nds.values()), "g_failing_pair": failing}


def finite_hitting_values():
    a = 4
    h = {0: 1, 1: 2, 2: 3, 3: 0, 4: 4}
    maps = [lambda i: a, lambda i: 0] + [lambda i: h[i]]
    f = lambda n: maps[n - 1] if n <= 2 else maps[2]
    hits = {}
    for u in range(5):
        x = u
        members = []
        for n in range(1, 21):
            x = f(n)(x)
            if x == a:
                members.append(n)
        hits[str(u)] = members
    return {"hits_to_a": hits}


def interval_cells(w):
    """(lo, hi) of the width-w dyadic cells; interior sample points only."""
    count = int(1 / w)
    return [(F(j, count), F(j + 1, count)) for j in range(count)]


def interior_samples(lo, hi, q=1021):
    return [F(p, q) for p in range(q + 1) if lo < F(p, q) < hi]


def nonsurjective_values():
    word = [halving, fold, doubling]
    cells = interval_cells(F(1, 8))
    # Sampled first hits are true hits, so they bound the exact first hits.
    bound = {}
    for iu, (ulo, uhi) in enumerate(cells):
        pts = interior_samples(ulo, uhi)
        first = {}
        for n in range(1, 61):
            pts = [word[(n - 1) % 3](x) for x in pts]
            for iv, (vlo, vhi) in enumerate(cells):
                if iv not in first and any(vlo < x < vhi for x in pts):
                    first[iv] = n
        for iv in range(len(cells)):
            bound[f"{iu}->{iv}"] = first.get(iv)
    return {"first_hit_upper_bounds": bound, "max_first_hit_upper_bound": max(v for v in bound.values() if v)}


def doubling_spread_values():
    """Times n <= 30 at which sampled points of a width-1/8 cell are more
    than 1/4 apart, for the sequence g3, g3, ... and for g = g3 o g3."""
    cells = interval_cells(F(1, 8))
    out = {"nds": [], "reduced": []}
    for name, step in (("nds", doubling), ("reduced", lambda x: doubling(doubling(x)))):
        for lo, hi in cells:
            pts = interior_samples(lo, hi)
            spread = []
            for n in range(1, 31):
                pts = [step(x) for x in pts]
                if max(pts) - min(pts) > F(1, 4):
                    spread.append(n)
            out[name].append(spread)
    return out


def weak_but_not_values():
    cells = []
    for bits in itertools.product([0, 1], repeat=3):
        cells.append(dict(zip([-1, 0, 1], bits)))
    # f_n = sigma for odd n, sigma^-1 for even n, so f_1^n = sigma^(n mod 2).
    strong = [[n for n in range(1, 101) if cylinder_diam(shift_cylinder(c, n % 2)) > F(1, 2)] for c in cells]
    weak = []
    for c in cells:
        best = None
        for length in range(1, 9):
            for word in itertools.product([1, -1], repeat=length):
                if cylinder_diam(shift_cylinder(c, sum(word))) > F(1, 2):
                    best = (length, list(word))
                    break
            if best:
                break
        weak.append(best)
    return {"strong_hits": strong, "shortest_weak_words": weak}


def compute():
    return {
        "growing_blocks": growing_blocks_values(),
        "triangular": triangular_values(),
        "minimal2": minimal2_values(),
        "fixed_points": fixed_point_values(),
        "cycle4": cycle4_values(),
        "finite_hitting": finite_hitting_values(),
        "nonsurjective": nonsurjective_values(),
        "doubling_spread": doubling_spread_values(),
        "weak_but_not": weak_but_not_values(),
    }


def main():
    ap = argparse.ArgumentParser()
    mode = ap.add_mutually_exclusive_group(required=True)
    mode.add_argument("--write", action="store_true")
    mode.add_argument("--check", action="store_true")
    args = ap.parse_args()
    # Round-trip through JSON so tuples compare equal to the stored lists.
    values = json.loads(json.dumps(compute()))
    if args.write:
        FROZEN.write_text(json.dumps(values, indent=1, sort_keys=True) + "\n")
        return 0
    frozen = json.loads(FROZEN.read_text())
    if frozen != values:
        for key in sorted(set(frozen) | set(values)):
            if frozen.get(key) != values.get(key):
                print(f"mismatch in {key}", file=sys.stderr)
        return 1
    print("oracle matches frozen values")
    return 0


if __name__ == "__main__":
    sys.exit(main())
