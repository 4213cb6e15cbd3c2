"""Smoke test for the pychowstab extension module.

Build and install it first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

from fractions import Fraction

import pychowstab as cs


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"ok: {what}")


aligned = cs.Configuration.from_points(2, [([1, 0, 0], 2), ([0, 1, 0], 1), ([1, 1, 0], 1)])
report = aligned.absolute_verdict()
check(report["verdict"] == "unstable", "aligned points are unstable")
check(report["certificate"]["mu"] == "4", "certificate weight is 4")

cert = report["certificate"]["one_ps"]
lam = cs.OnePS(cert["weights"], cert["conjugation"])
check(aligned.mumford_weight(lam) == "4", "certificate weight recomputed")
check(aligned.oracle_search(bound=2, samples=4) is not None, "oracle finds a destabilizing subgroup")

generic = cs.Configuration.from_points(2, [(["1", "0", "0"], 1), (["0", "1", "0"], 1), (["0", "0", "1"], 1), ([1, 1, Fraction(1, 2)], 1)])
check(generic.absolute_verdict()["verdict"] == "stable", "four general points are stable")

triangle = cs.Configuration.from_points(2, [([1, 0, 0], 5), ([0, 1, 0], 1), ([0, 0, 1], 2)])
check(triangle.relative_verdict()["verdict"] == "stable", "coordinate triangle is relatively stable")
check(len(triangle.decompose()["components"]) == 3, "triangle splits into three components")

lines = cs.Configuration.from_subspaces(
    3,
    [
        ([[1, 0, 0, 0], [0, 1, 0, 0]], 3),
        ([[0, 0, 1, 0], [0, 0, 0, 1]], 1),
        ([[1, 0, 1, 0], [0, 1, 0, 1]], 1),
    ],
)
q = cs.OnePS([1, 1, -1, -1])
check(lines.chow_weight(q)["total"] == "3", "three skew lines have Chow weight 3")
fut = lines.futaki(q)
check(fut["leading_term"] == "3/r^1" and fut["unstable_for_large_r"], "Futaki correction 3/r^1 fires")
check(not lines.futaki(q, base_futaki="1/2")["unstable_for_large_r"], "nonzero base invariant blocks the verdict")
check(q.commutes_with([[[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 5, 0], [0, 0, 0, 7]]]), "diagonal torus commutes")

try:
    aligned.mumford_weight(cs.OnePS([1, 0, 0]))
    check(False, "unnormalized weights rejected")
except cs.PreconditionError:
    check(True, "unnormalized weights rejected")
check(aligned.mumford_weight(cs.OnePS([1, 0, 0]).normalized()) == "-5", "normalized weights accepted")

try:
    cs.Configuration.from_json('{"ambient_dim": 2, "points": [{"coords": ["1", "1//2", "0"]}]}')
    check(False, "malformed rational rejected")
except cs.InvalidInputError as e:
    check("byte 2" in str(e), "malformed rational rejected with position")

config, one_ps = cs.parse_document(aligned.to_json())
check(config.to_json() == aligned.to_json() and one_ps is None, "document round trip")
print("all smoke checks passed")
