"""Benchmark suite generation, prover execution and concordance reporting.

The suite is built from fixed literal pools, one block per category.  Each
problem's expected verdict comes from the verdict engine; generation fails
loudly if any problem would be Unknown.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
import shutil
import subprocess
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from .encoding import (
    ProverProblem,
    Relation,
    axiom_count,
    emit_axiom_files,
    emit_smt,
    emit_tptp,
    internal_verdict,
)
from .errors import ProverNotFoundError
from .fileio import atomic_write
from .interval import AxisConstraint
from .model import Connective, Operator
from .profile import AxisProfile
from .verdict import SubsumptionVerdict, Verdict3, box_denote

GENERATOR_VERSION = "1"
CATEGORY_COUNTS = {"A": 15, "B": 11, "C": 12, "D": 12, "E": 12, "F": 17, "G": 16, "H": 12, "I": 10}
CATEGORY_TITLES = {
    "A": "All 5 operators, density",
    "B": "2-axis Kleene conjunction",
    "C": "Associativity, 3D subsumption",
    "D": "Mixed ops, scaling",
    "E": "Heterogeneous axis mixes",
    "F": "Difficulty ladder",
    "G": "All 10 operator pairs at v",
    "H": "Coupled axes, cross-pick",
    "I": "Exclusive-or, L-shaped regions",
}

# -- a tiny constraint DSL for the literal pools --------------------------------

_DENSE = AxisProfile.standard()
_DISCRETE = AxisProfile.standard(discrete=["width", "height", "x"])

_AXES = {
    "w": _DENSE.resolve("width"),
    "h": _DENSE.resolve("height"),
    "d": _DENSE.resolve("depth"),
    "x": _DENSE.resolve("x"),
    "y": _DENSE.resolve("y"),
    "z": _DENSE.resolve("z"),
    "lon": _DENSE.resolve("lon"),
    "lat": _DENSE.resolve("lat"),
    "alt": _DENSE.resolve("alt"),
    "rw": _DENSE.resolve("relativeSizeWidth"),
    "rh": _DENSE.resolve("relativeSizeHeight"),
    "rx": _DENSE.resolve("relativeSpatialPositionX"),
    "ry": _DENSE.resolve("relativeSpatialPositionY"),
    "w#": _DISCRETE.resolve("width"),
    "h#": _DISCRETE.resolve("height"),
    "x#": _DISCRETE.resolve("x"),
}
_OPS = {"=": Operator.EQ, "<": Operator.LT, "<=": Operator.LTEQ, ">": Operator.GT, ">=": Operator.GTEQ}
_ATOM = re.compile(r"^\s*([a-z#]+)\s*(<=|>=|<|>|=)\s*(-?[0-9.]+)\s*$")


def _box(text: str) -> tuple:
    """``"w<=600, h>=1.5"`` to a tuple of axis constraints."""
    out = []
    for part in text.split(","):
        m = _ATOM.match(part)
        if not m:
            raise ValueError(f"bad atom {part!r}")
        key, op, value = m.groups()
        out.append(AxisConstraint(_AXES[key], _OPS[op], value))
    return tuple(out)


def _range(key: str, lo, hi) -> str:
    return f"{key}>={lo}, {key}<={hi}"


def _axes_of(*sides) -> tuple:
    seen = {}
    for side in sides:
        for branch in side:
            for c in branch:
                seen.setdefault(c.operand.iri, c.operand)
    return tuple(seen.values())


class _Builder:
    def __init__(self, category: str):
        self.category = category
        self.problems: List[ProverProblem] = []

    def _add(self, relation, connective, left, right, title, tags=()):
        axes = _axes_of(left, right)
        pid = f"{self.category}{len(self.problems) + 1:03d}"
        probe = ProverProblem(pid, self.category, relation, connective, left, right,
                              _placeholder(relation), axes, title, tuple(tags))
        verdict = internal_verdict(probe)
        if verdict in (Verdict3.UNKNOWN, SubsumptionVerdict.UNKNOWN):
            raise AssertionError(f"{pid} ({title}) evaluates to Unknown")
        if relation is Relation.SUBSUMPTION and box_denote(left[0], axes).is_empty():
            raise AssertionError(f"{pid}: empty left box makes subsumption vacuous")
        self.problems.append(ProverProblem(pid, self.category, relation, connective, left, right,
                                           verdict, axes, title, tuple(tags)))

    def conflict(self, left: str, right: str, title: str = "", tags=()):
        self._add(Relation.CONFLICT, Connective.AND, (_box(left),), (_box(right),), title, tags)

    def subsume(self, left: str, right: str, title: str = "", tags=()):
        self._add(Relation.SUBSUMPTION, Connective.AND, (_box(left),), (_box(right),), title, tags)

    def branches(self, connective, left: Sequence[str], right: Sequence[str], title: str = ""):
        self._add(Relation.CONFLICT, connective, tuple(_box(b) for b in left),
                  tuple(_box(b) for b in right), title)


def _placeholder(relation):
    return Verdict3.CONFLICT if relation is Relation.CONFLICT else SubsumptionVerdict.CONFIRMED


def _category_a(b: _Builder):
    b.conflict("w=600", "w=800", "eq vs eq, distinct points")
    b.conflict("w=600", "w<=600", "eq at closed bound")
    b.conflict("w=600", "w<600", "eq at open bound")
    b.conflict("x<5", "x>=5", "lt vs complementary gteq")
    b.conflict("x<5", "x>4", "lt, dense witness in (4, 5)")
    b.conflict("w#>600", "w#<601", "gt/lt with no integer between", tags=("discrete",))
    b.conflict("w<=600", "w>=800", "lteq vs gteq, gap")
    b.conflict("w<=600", "w>=100", "lteq vs gteq, overlap")
    b.conflict("w<=600", "w>=600", "lteq/gteq touching at 600")
    b.conflict("lat>45", "lat<=45", "gt vs complementary lteq")
    b.conflict("lat>45", "lat<45.5", "gt, dense witness in (45, 45.5)")
    b.conflict("w#>5", "w#<7", "gt/lt with one integer between", tags=("discrete",))
    b.conflict("alt>=100", "alt<100", "gteq vs complementary lt")
    b.conflict("alt>=100", "alt<=200", "gteq vs lteq, overlap")
    b.conflict("rw>=100", "rw>99.5", "gteq at the domain maximum")


def _category_b(b: _Builder):
    b.conflict("w<=600, h<=600", "w>=100, h>=100", "both axes overlap")
    b.conflict("w<=600, h<=600", "w>=800, h>=100", "width conflicts")
    b.conflict("w<=600, h<=600", "w>=800, h>=700", "both axes conflict")
    b.conflict("x<0, y>0", "x>-1, y<1", "open unit square corner")
    b.conflict(f"{_range('lon', -10, 10)}, {_range('lat', 40, 50)}", "lon>10, lat=45", "longitude edge")
    b.subsume("w<=600, h<=400", "w<=1200, h<=900", "supply chain refinement")
    b.subsume("w<=1200, h<=900", "w<=600, h<=400", "supply chain, reverse")
    b.subsume("x=3, y=4", f"{_range('x', 0, 5)}, {_range('y', 0, 5)}", "point in square")
    b.subsume(f"{_range('x', 0, 5)}, {_range('y', 0, 5)}", f"{_range('x', 0, 5)}, y<5", "closed vs open edge")
    b.conflict("rx>=50, ry<=50", "rx<=50, ry>=50", "relative positions meet at (50, 50)")
    b.conflict("w#>10, h<5", "w#<12, h>4.9", "discrete width with dense height", tags=("discrete",))


def _category_c(b: _Builder):
    base = "w<=600, h<=400, d<=100"
    b.conflict(base, "w>=100, h>=100, d>=10", "all three overlap")
    b.conflict(base, "w>=700, h>=100, d>=10", "first axis conflicts")
    b.conflict(base, "w>=100, h>=500, d>=10", "second axis conflicts")
    b.conflict(base, "w>=100, h>=100, d>=200", "third axis conflicts")
    b.conflict(base, "w>=700, h>=500, d>=10", "two axes conflict")
    b.conflict(base, "w>600, h>400, d>100", "all three conflict at open bounds")
    b.subsume("x=1, y=2, z=3", "x<=1, y<=2, z<=3", "point at closed corner")
    b.subsume(f"{_range('x', 1, 2)}, {_range('y', 1, 2)}, {_range('z', 1, 2)}",
              f"{_range('x', 0, 3)}, {_range('y', 0, 3)}, {_range('z', 0, 3)}", "cube in cube")
    b.subsume("x>1, y>1, z>1", "x>=1, y>=1, z>=1", "open orthant in closed")
    b.subsume(f"{_range('x', 0, 4)}, {_range('y', 1, 2)}, {_range('z', 1, 2)}",
              f"{_range('x', 0, 3)}, {_range('y', 0, 3)}, {_range('z', 0, 3)}", "escapes on x")
    b.subsume(f"{_range('x', 1, 2)}, {_range('y', 0, 4)}, {_range('z', 1, 2)}",
              f"{_range('x', 0, 3)}, {_range('y', 0, 3)}, {_range('z', 0, 3)}", "escapes on y")
    b.subsume("x>=1, y>=1, z>=1", "x>=1, y>=1, z>1", "escapes on z boundary")


def _category_d(b: _Builder):
    b.conflict("x=1, y<5, z>=0, alt<=100", "x<=1, y>4, z<1, alt>=100", "mixed, all touch")
    b.conflict("w<=600, h<400, d>10, lat>=-10", "w>=600, h>=100, d<20, lat<=10", "mixed, all overlap")
    b.conflict("x>0, y>0, z>0, alt>0", "x<1, y<1, z<1, alt<0.5", "open unit hypercube")
    b.conflict("x=1, y<5, z>=0, alt<=100", "x<1, y>4, z<1, alt>=100", "x conflicts at open bound")
    b.conflict("w<=600, h<400, d>10, lat>=-10", "w>=600, h>=400, d<20, lat<=10", "height conflicts")
    b.conflict("x>0, y>0, z>0, alt>0", "x<1, y<1, z<1, alt<=0", "altitude conflicts")
    b.subsume("x=1, y=2, z=3, alt=4", "x<=1, y>=2, z<4, alt>3", "point in mixed box")
    b.subsume("x>1, y<2, z>=3, alt<=4", "x>=1, y<=2, z>2, alt<5", "open in closed")
    b.subsume("w<=600, h<=400, d<=100, lat=0",
              f"w<=1200, h<=900, d<=200, {_range('lat', -1, 1)}", "scaled refinement")
    b.subsume("x=1, y=2, z=3, alt=4", "x<=1, y>=2, z<3, alt>3", "z escapes at boundary")
    b.subsume("x>1, y<2, z>=3, alt<=4", "x>=1, y<=2, z>2, alt<4", "altitude escapes")
    b.subsume("w<=1200, h<=400, d<=100, lat=0",
              f"w<=600, h<=900, d<=200, {_range('lat', -1, 1)}", "width escapes")


def _category_e(b: _Builder):
    b.conflict("w<=600, h<=600", "w>=1200, w<=1200, h>=400, h<=400", "BSB display vs museum request", tags=("bsb",))
    b.conflict("w<=600, lat>=40", "w>=100, lat<=50", "size with latitude")
    b.conflict("w<=600, lat>=40", "w>=100, lat<30", "latitude conflicts")
    b.conflict("x>=0, rw<=50, alt<100", "x<=10, rw>=25, alt>=50", "position, relative size, altitude")
    b.conflict("x>=0, rw<=50, alt<100", "x<=10, rw>50, alt>=50", "relative size conflicts at 50")
    b.conflict("lon>=-5, lat<=60, h<=300, ry>=10", "lon<=5, lat>=50, h>=200, ry<=20", "four families overlap")
    b.conflict("lon>=-5, lat<=60, h<=300, ry>=10", "lon<=5, lat>=50, h>=200, ry<10", "relative y conflicts")
    b.subsume("w<=600, h<=400", "w<=1200, h<=900", "supply chain 600x400 in 1200x900")
    b.subsume("lon=13.4, lat=52.5", f"{_range('lon', 5, 15)}, {_range('lat', 47, 55)}", "point in region")
    b.subsume(f"{_range('lon', 0, 20)}, {_range('lat', 47, 55)}", f"{_range('lon', 5, 15)}, {_range('lat', 47, 55)}",
              "region escapes on longitude")
    b.subsume("rx>=10, rx<=20, alt>=0, w<=50", "rx<=30, alt>=-10, w<=100", "relative position with size")
    b.subsume("rx>=10, rx<=20, alt>=0, w<=150", "rx<=30, alt>=-10, w<=100", "width escapes")


def _ladder_axis(key: str, vals: Sequence[str], kind: str) -> tuple:
    """Left/right atoms for one axis; kind in compatible/conflict/confirmed/refuted."""
    a = vals
    if len(a) == 1:
        row = {
            "compatible": (f"{key}<={a[0]}", f"{key}>={a[0]}"),
            "conflict": (f"{key}<{a[0]}", f"{key}>{a[0]}"),
            "confirmed": (f"{key}={a[0]}", f"{key}<={a[0]}"),
            "refuted": (f"{key}<={a[0]}", f"{key}<{a[0]}"),
        }
    elif len(a) == 2:
        row = {
            "compatible": (f"{key}<={a[1]}", f"{key}>={a[0]}"),
            "conflict": (f"{key}<={a[0]}", f"{key}>={a[1]}"),
            "confirmed": (f"{key}<={a[0]}", f"{key}<={a[1]}"),
            "refuted": (f"{key}<={a[1]}", f"{key}<={a[0]}"),
        }
    elif len(a) == 3:
        row = {
            "compatible": (_range(key, a[0], a[2]), f"{key}={a[1]}"),
            "conflict": (_range(key, a[0], a[1]), f"{key}>{a[2]}"),
            "confirmed": (f"{key}={a[1]}", _range(key, a[0], a[2])),
            "refuted": (_range(key, a[0], a[2]), f"{key}<={a[1]}"),
        }
    else:
        row = {
            "compatible": (_range(key, a[0], a[2]), _range(key, a[1], a[3])),
            "conflict": (_range(key, a[0], a[1]), _range(key, a[2], a[3])),
            "confirmed": (_range(key, a[1], a[2]), _range(key, a[0], a[3])),
            "refuted": (_range(key, a[0], a[2]), _range(key, a[1], a[3])),
        }
    return row[kind]


_LADDER = (
    ((3,), "compatible"), ((1, 2), "conflict"),
    ((4,), "confirmed"), ((2, 2), "refuted"),
    ((2, 3), "compatible"), ((1, 1, 3), "confirmed"),
    ((3, 3), "conflict"), ((2, 2, 2), "refuted"),
    ((3, 4), "compatible"), ((1, 2, 2, 2), "conflict"),
    ((4, 4), "confirmed"), ((2, 3, 3), "compatible"),
    ((3, 3, 3), "refuted"), ((2, 2, 2, 3), "confirmed"),
    ((4, 3, 3), "conflict"),
    ((4, 4, 3), "compatible"),
    ((3, 3, 3, 3), "conflict"),
)
_LADDER_KEYS = ("x", "y", "z", "alt")


def _category_f(b: _Builder):
    for counts, outcome in _LADDER:
        lefts, rights = [], []
        for k, n in enumerate(counts):
            vals = [str(10 * (k + 1) + i) for i in range(n)]
            last = k == len(counts) - 1
            if outcome in ("compatible", "conflict"):
                kind = outcome if last else "compatible"
            else:
                kind = outcome if last else "confirmed"
            l, r = _ladder_axis(_LADDER_KEYS[k], vals, kind)
            lefts.append(l)
            rights.append(r)
        title = f"{sum(counts)} constants on {len(counts)} axes"
        if outcome in ("compatible", "conflict"):
            b.conflict(", ".join(lefts), ", ".join(rights), title)
        else:
            b.subsume(", ".join(lefts), ", ".join(rights), title)


_G_OPS = ("=", "<", "<=", ">", ">=")


def _category_g(b: _Builder):
    for i, o1 in enumerate(_G_OPS):
        for o2 in _G_OPS[i + 1:]:
            b.conflict(f"x{o1}7", f"x{o2}7", f"{o1} vs {o2} at v = 7", tags=("pair",))
    b.conflict("x<7, y<=3", "x>=7, y>=3", "x split at 7, y touches at 3")
    b.conflict("x<=7, y>=3, z=0", "x>=7, y<=3, z>=0", "three axes touch at the corner")
    b.subsume("x<7, y<3", "x<=7, y<=3", "open inside closed at v")
    b.subsume("x<=7, y<=3", "x<=7, y<3", "closed escapes open at v")
    b.subsume("w#<8, h#<4", "w#<=7, h#<=3", "discrete open equals closed predecessor", tags=("discrete",))
    b.conflict("x#>6, y<=3", "x#<8, y>=3", "discrete x pinned to 7", tags=("discrete",))


def _category_h(b: _Builder):
    OR = Connective.OR
    sq = lambda x0, x1, y0, y1: f"{_range('x', x0, x1)}, {_range('y', y0, y1)}"
    diag = [sq(0, 1, 0, 1), sq(2, 3, 2, 3)]
    anti = [sq(0, 1, 2, 3), sq(2, 3, 0, 1)]
    b.branches(OR, diag, anti, "diagonal vs anti-diagonal: projections overlap, boxes do not")
    b.branches(OR, diag, anti + [sq(0.5, 2.5, 0.5, 0.5)], "third branch crosses the first diagonal box")
    b.branches(OR, diag, [sq(1, 2, 1, 2)], "single branch touches both corners")
    b.branches(OR, diag, [sq(1.5, 1.8, 0, 3)], "vertical strip through the gap")
    b.branches(OR, anti, [sq(2.5, 2.7, 2.5, 2.7), sq(-1, -0.5, 0, 3)], "both probes miss")
    b.branches(OR, anti, [sq(2.5, 2.7, 0.5, 0.7), sq(-1, -0.5, 0, 3)], "cross-pick: second branch hit")
    b.branches(OR, [sq(0, 1, 0, 1), sq(2, 3, 2, 3), sq(4, 5, 4, 5)],
               [sq(0, 1, 4, 5), sq(4, 5, 0, 1), sq(2, 3, 0, 1)], "3x3 all disjoint")
    b.branches(OR, [sq(0, 1, 0, 1), sq(2, 3, 2, 3), sq(4, 5, 4, 5)],
               [sq(0, 1, 4, 5), sq(4, 5, 0, 1), sq(3, 4, 3, 4)], "3x3 touching at corners")
    cube = lambda lo, hi: f"{_range('x', lo, hi)}, {_range('y', lo, hi)}, {_range('z', lo, hi)}"
    b.branches(OR, [cube(0, 1), cube(2, 3)],
               [f"{_range('x', 0, 1)}, {_range('y', 2, 3)}, {_range('z', 0, 3)}", cube(4, 5)], "3D coupled miss")
    b.branches(OR, [cube(0, 1), cube(2, 3)],
               [f"{_range('x', 0, 1)}, {_range('y', 0.5, 3)}, {_range('z', 0, 3)}", cube(4, 5)], "3D coupled hit")
    b.branches(OR, ["x<0, y<0", "x>0, y>0"], ["x<0, y>0", "x>0, y<0"], "open quadrants")
    b.branches(OR, ["x<=0, y<=0", "x>0, y>0"], ["x>=0, y>=0", "x>5, y<0"], "closed quadrants meet at origin")


def _category_i(b: _Builder):
    XONE = Connective.XONE
    sq = lambda x0, x1, y0, y1: f"{_range('x', x0, x1)}, {_range('y', y0, y1)}"
    ell = [sq(0, 4, 0, 1), "x>=0, x<=1, y>1, y<=4"]
    ell_flip = [sq(0, 4, 3, 4), "x>=3, x<=4, y>=0, y<3"]
    far = sq(10, 11, 10, 11)
    b.branches(XONE, ell, [sq(3, 5, 0.5, 0.8), far], "probe hits the horizontal arm")
    b.branches(XONE, ell, [sq(0.2, 0.5, 2, 3), far], "probe hits the vertical arm")
    b.branches(XONE, ell, [sq(2, 4, 2, 4), far], "probe in the notch")
    b.branches(XONE, ell, ["x>1, x<2, y>1, y<2", far], "open probe in the inner corner")
    b.branches(XONE, ell, ["x>1, x<=2, y>=1, y<=2", far], "probe edge touches the horizontal arm only")
    b.branches(XONE, ell_flip, [sq(3.5, 6, 1, 2), far], "flipped L, vertical arm hit")
    b.branches(XONE, ell_flip, [sq(0, 2, 0, 2), far], "flipped L, notch")
    b.branches(XONE, ell, [far, sq(-3, -1, -3, -1), sq(20, 21, 0, 1)], "three far probes")
    b.branches(XONE, [sq(0, 4, 0, 1), sq(0, 1, 1.5, 4), sq(3, 4, 1.5, 4)],
               [sq(0.5, 0.7, 2, 3), far], "U shape, left arm hit")
    b.branches(XONE, [sq(0, 4, 0, 1), sq(0, 1, 1.5, 4), sq(3, 4, 1.5, 4)],
               [sq(1.5, 2.5, 2, 3), far], "U shape, probe between arms")


_BUILDERS = {
    "A": _category_a, "B": _category_b, "C": _category_c, "D": _category_d, "E": _category_e,
    "F": _category_f, "G": _category_g, "H": _category_h, "I": _category_i,
}


@dataclass
class SuiteManifest:
    problems: List[ProverProblem]
    version: str = GENERATOR_VERSION

    @property
    def counts(self) -> Dict[str, int]:
        out = {c: 0 for c in CATEGORY_COUNTS}
        for p in self.problems:
            out[p.category] += 1
        return out

    def by_id(self) -> Dict[str, ProverProblem]:
        return {p.id: p for p in self.problems}

    def to_dict(self) -> dict:
        return {
            "generator": "oax bench",
            "version": self.version,
            "total": len(self.problems),
            "counts": self.counts,
            "axioms": axiom_count(),
            "problems": [
                {**p.to_dict(), "files": {"tptp": tptp_path(p), "smt": smt_path(p)}} for p in self.problems
            ],
        }


def generate_suite() -> SuiteManifest:
    problems = []
    for cat, build in _BUILDERS.items():
        b = _Builder(cat)
        build(b)
        if len(b.problems) != CATEGORY_COUNTS[cat]:
            raise AssertionError(f"category {cat}: {len(b.problems)} problems, expected {CATEGORY_COUNTS[cat]}")
        problems.extend(b.problems)
    return SuiteManifest(problems)


def tptp_path(p: ProverProblem) -> str:
    return f"{p.category}/{p.id}.p"


def smt_path(p: ProverProblem) -> str:
    return f"{p.category}/{p.id}.smt2"


def manifest_text(m: SuiteManifest) -> str:
    return json.dumps(m.to_dict(), indent=2, sort_keys=True) + "\n"


def write_suite(root, manifest: Optional[SuiteManifest] = None) -> SuiteManifest:
    root = Path(root)
    manifest = manifest or generate_suite()
    for name, text in emit_axiom_files().items():
        atomic_write(root / "ax" / name, text)
    for p in manifest.problems:
        atomic_write(root / tptp_path(p), emit_tptp(p))
        atomic_write(root / smt_path(p), emit_smt(p))
    atomic_write(root / "manifest.json", manifest_text(manifest))
    return manifest


def load_manifest(root) -> dict:
    with open(Path(root) / "manifest.json", encoding="utf-8") as fh:
        return json.load(fh)


# -- provers -----------------------------------------------------------------------

VAMPIRE = "vampire"
Z3 = "z3"
PROVERS = (VAMPIRE, Z3)
_ENV = {VAMPIRE: "OAX_VAMPIRE", Z3: "OAX_Z3"}
_HINTS = {
    VAMPIRE: "install Vampire (https://vprover.github.io) or set OAX_VAMPIRE / [provers] vampire in oax.toml",
    Z3: "install z3 (e.g. pip install z3-solver) or set OAX_Z3 / [provers] z3 in oax.toml",
}
STATUSES = ("Theorem", "CounterSatisfiable", "sat", "unsat", "Timeout", "ParseFail")


@dataclass(frozen=True)
class ProverResult:
    problem: str
    prover: str
    status: str
    wall: float
    excerpt: str = ""

    def to_dict(self) -> dict:
        return {"problem": self.problem, "prover": self.prover, "status": self.status,
                "wall": round(self.wall, 3), "excerpt": self.excerpt}


def resolve_prover(kind: str, explicit: Optional[str] = None, config: Optional[Mapping[str, str]] = None) -> str:
    """CLI flag, then config file, then environment, then PATH."""
    if kind not in PROVERS:
        raise ValueError(f"unknown prover {kind!r}")
    for candidate in (explicit, (config or {}).get(kind), os.environ.get(_ENV[kind])):
        if candidate:
            found = shutil.which(candidate)
            if found:
                return found
            raise ProverNotFoundError(f"{kind}: {candidate!r} is not executable; {_HINTS[kind]}")
    found = shutil.which(kind)
    if not found:
        raise ProverNotFoundError(f"{kind} not found; {_HINTS[kind]}")
    return found


_SZS = re.compile(r"SZS status\s+(\w+)")
_SMT = re.compile(r"^\s*(sat|unsat|unknown|timeout)\b", re.M)


def parse_szs(output: str) -> str:
    m = _SZS.search(output)
    if not m:
        return "ParseFail"
    status = m.group(1)
    if status in ("Theorem", "CounterSatisfiable"):
        return status
    if status in ("Timeout", "ResourceOut"):
        return "Timeout"
    return "ParseFail"


def parse_smt(output: str) -> str:
    m = _SMT.search(output)
    if not m:
        return "ParseFail"
    token = m.group(1)
    if token in ("sat", "unsat"):
        return token
    return "Timeout" if token == "timeout" or "timeout" in output else "ParseFail"


def _excerpt(text: str, limit: int = 300) -> str:
    text = text.strip()
    return text if len(text) <= limit else text[:limit] + "..."


def run_prover(kind: str, path, timeout: float, executable: Optional[str] = None, cwd=None) -> ProverResult:
    """Run one prover on one file; prover failures become Timeout/ParseFail."""
    exe = executable or resolve_prover(kind)
    path = Path(path)
    if kind == VAMPIRE:
        include = str(cwd) if cwd else str(path.parent.parent)
        cmd = [exe, "--mode", "casc", "-t", str(max(1, int(timeout))), "--include", include, str(path)]
    else:
        cmd = [exe, f"-T:{max(1, int(timeout))}", str(path)]
    start = time.monotonic()
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True, timeout=timeout + 5, cwd=cwd)
        out = proc.stdout + proc.stderr
        status = parse_szs(out) if kind == VAMPIRE else parse_smt(out)
    except subprocess.TimeoutExpired:
        out, status = "", "Timeout"
    except OSError as exc:
        out, status = str(exc), "ParseFail"
    wall = time.monotonic() - start
    return ProverResult(path.stem, kind, status, wall, _excerpt(out) if status == "ParseFail" else "")


def run_suite(
    root,
    executables: Mapping[str, str],
    timeout: float = 10.0,
    jobs: int = 4,
    ids: Optional[Iterable[str]] = None,
) -> List[ProverResult]:
    """Run every available prover over the suite under ``root``."""
    root = Path(root).resolve()
    manifest = load_manifest(root)
    wanted = set(ids) if ids is not None else None
    tasks = []
    for entry in manifest["problems"]:
        if wanted is not None and entry["id"] not in wanted:
            continue
        for kind, exe in sorted(executables.items()):
            rel = entry["files"]["tptp" if kind == VAMPIRE else "smt"]
            tasks.append((kind, root / rel, exe))
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        futures = [pool.submit(run_prover, k, p, timeout, exe, root) for k, p, exe in tasks]
        results = [f.result() for f in futures]
    return sorted(results, key=lambda r: (r.problem, r.prover))


# -- concordance -----------------------------------------------------------------------

SKIPPED = "skipped"
MISSING = "missing"


@dataclass
class ConcordanceReport:
    rows: List[dict]
    provers: List[str]

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def matched(self) -> int:
        return sum(1 for r in self.rows if r["match"])

    @property
    def mismatches(self) -> List[str]:
        return [r["id"] for r in self.rows if not r["match"]]

    @property
    def percent(self) -> float:
        return 100.0 * self.matched / self.total if self.total else 0.0

    @property
    def exit_code(self) -> int:
        if not self.provers:
            return 2
        return 0 if not self.mismatches else 1

    def by_category(self) -> Dict[str, tuple]:
        out: Dict[str, list] = {}
        for r in self.rows:
            slot = out.setdefault(r["category"], [0, 0])
            slot[0] += 1 if r["match"] else 0
            slot[1] += 1
        return {k: tuple(v) for k, v in sorted(out.items())}

    def to_dict(self) -> dict:
        return {
            "provers": self.provers,
            "total": self.total,
            "matched": self.matched,
            "concordance": round(self.percent, 2),
            "mismatches": self.mismatches,
            "by_category": {k: {"matched": m, "total": t} for k, (m, t) in self.by_category().items()},
            "problems": self.rows,
        }

    def to_text(self) -> str:
        head = f"{'id':<6} {'cat':<3} {'internal':<12} {'fof expected':<19} {'fof':<19} {'smt exp':<8} {'smt':<8} ok"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(
                f"{r['id']:<6} {r['category']:<3} {r['internal']:<12} {r['fof']['expected']:<19} "
                f"{r['fof']['status']:<19} {r['smt']['expected']:<8} {r['smt']['status']:<8} "
                f"{'yes' if r['match'] else 'NO'}"
            )
        lines.append("")
        ran = ", ".join(self.provers) if self.provers else "none (external columns skipped)"
        lines.append(f"provers: {ran}")
        lines.append(f"concordance: {self.matched}/{self.total} ({self.percent:.1f}%)")
        if self.mismatches:
            lines.append("mismatches: " + ", ".join(self.mismatches))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "category", "internal", "fof_expected", "fof_status", "smt_expected", "smt_status", "match"])
        for r in self.rows:
            w.writerow([r["id"], r["category"], r["internal"], r["fof"]["expected"], r["fof"]["status"],
                        r["smt"]["expected"], r["smt"]["status"], int(r["match"])])
        return buf.getvalue()


def concordance_report(manifest: Mapping, results: Sequence[ProverResult], provers: Sequence[str] = ()) -> ConcordanceReport:
    """Compare recorded expectations with the engine and with prover statuses.

    ``provers`` lists the provers that actually ran; the others are reported
    as skipped.  A problem matches when the internal verdict maps to the
    recorded statuses and every run prover returned its expected status.
    """
    regenerated = generate_suite().by_id() if manifest.get("version") == GENERATOR_VERSION else {}
    by_key = {(r.problem, r.prover): r for r in results}
    rows = []
    for entry in manifest["problems"]:
        pid = entry["id"]
        internal = entry["expected"]
        p = regenerated.get(pid)
        internal_ok = True
        if p is not None:
            internal = internal_verdict(p).value
            internal_ok = (p.expected_szs, p.expected_smt) == (entry["expected_szs"], entry["expected_smt"])
            internal_ok = internal_ok and internal == entry["expected"]
        row = {"id": pid, "category": entry["category"], "internal": internal, "internal_match": internal_ok}
        ok = internal_ok
        for kind, column, key in ((VAMPIRE, "fof", "expected_szs"), (Z3, "smt", "expected_smt")):
            if kind not in provers:
                row[column] = {"expected": entry[key], "status": SKIPPED, "match": None}
                continue
            res = by_key.get((pid, kind))
            status = res.status if res else MISSING
            hit = status == entry[key]
            ok = ok and hit
            row[column] = {"expected": entry[key], "status": status, "match": hit}
        row["match"] = ok
        rows.append(row)
    return ConcordanceReport(rows, [k for k in PROVERS if k in provers])


def suite_summary(m: SuiteManifest) -> str:
    lines = [f"{'cat':<4}{'count':>6}  description"]
    for cat, n in m.counts.items():
        lines.append(f"{cat:<4}{n:>6}  {CATEGORY_TITLES[cat]}")
    lines.append(f"{'all':<4}{len(m.problems):>6}")
    return "\n".join(lines) + "\n"
