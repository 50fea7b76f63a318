"""
Knots outside the two-bridge family
===================================

PD codes are read from ``tests/data``.  Run from the repository root with
``python3 demos/04_beyond_two_bridge.py``.
"""
from pathlib import Path

from krthin import homfly, parse_pd_file
from krthin.thinness import crossing_change_candidates, is_alternating

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

# %%
# A thin knot has an alternating HOMFLY polynomial: all terms c a^m q^n give
# c (-1)^m i^n of the same phase.  The (3, 4) torus knot 8_19 fails this, and
# so does the alternating knot 11a263, at its final term only.
for name in ("8_19", "11a263"):
    P = homfly(parse_pd_file(DATA / f"{name}.pd")[0])
    print(f"{name}: HOMFLY alternating = {is_alternating(P)}")
    print("   ", P)

# %%
# The crossing-change criterion: if switching a crossing of K gives a thin
# knot with the same phase and smaller determinant, and the smoothing is thin,
# then K is thin.  These eight-crossing knots have such crossings.
for name in ("8_5", "8_15", "8_16", "8_17", "8_21"):
    K = parse_pd_file(DATA / f"{name}.pd")[0]
    hits = crossing_change_candidates(K)
    i, v = hits[0]
    print(f"{name}: {len(hits)} crossings qualify; crossing {i}: "
          f"det {v['det_L1']} -> {v['det_L2']}, smoothing det {v['det_L0']}")
