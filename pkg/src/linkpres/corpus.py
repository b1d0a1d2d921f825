"""
Fixture presentations transcribed from printed rotation systems, plus a
seeded random generator of unknot diagrams for property tests.

Tables are kept as data so that a transcription slip can be located by
line. Edge ids follow the printed subscripts; ``e_{b_0}`` and
``e_{b_0}^-`` of Goeritz's unknot take the unused ids 13 and 14.

Corrections to the printed edge tables (the rotations themselves are taken
verbatim; every correction is forced by the requirement that the two edges
of one pole sit opposite each other):

* Goeritz: ``e_{b_0}`` and ``e_{b_0}^-`` are swapped in the printed edge
  table. With the printed ends both ``a5`` and ``a6`` would carry adjacent
  same-pole edges; the family formula for ``k > 0`` fixes the intended
  attachment ``e_{b_0} = (a5-, a6)``.
* Goeritz after the first replacement: ``e28`` joins ``a8`` (not ``a8-``)
  to ``a11``, and ``e27`` / ``e29`` name the same edge ``(a3, a9-)``.
* Thistlethwaite: ``e15`` joins ``a5-`` to ``a11-`` (printed ``a11``); at
  ``a11`` the edges in slots 0 and 2 are ``e29`` and ``e28``, both on the
  plus pole, so ``e15`` and ``e25`` must share the minus pole.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from .core import (
    CLASSICAL,
    Crossing,
    VIRTUAL,
    LinkPresentation,
    disjoint_union,
    trivial_crossing,
)


def _edges(table: str) -> dict:
    out = {}
    for item in table.split(";"):
        item = item.strip()
        if not item:
            continue
        eid, ends = item.split(":")
        a, b = ends.split()
        out[int(eid)] = (a, b)
    return out


def _rots(table: str) -> dict:
    out = {}
    for item in table.split(";"):
        item = item.strip()
        if not item:
            continue
        name, edges = item.split(":")
        out[name.strip()] = [int(x) for x in edges.split()]
    return out


def _build(edges: str, rots: str, aliases=None, kinds=None) -> LinkPresentation:
    e = _edges(edges)
    r = _rots(rots)
    if aliases:
        r = {k: [aliases.get(x, x) for x in v] for k, v in r.items()}
    return LinkPresentation.from_tables(e, r, kinds=kinds)


# -- trivial links ------------------------------------------------------------


def make_trivial(components: int = 1) -> LinkPresentation:
    """``components`` disjoint copies of ``O``; copy ``i`` is ``o{i}`` (or ``o`` alone)."""
    if components < 1:
        raise ValueError("components must be positive")
    parts = []
    for i in range(components):
        name = "o" if components == 1 else f"o{i + 1}"
        c = trivial_crossing(name, 2 * i + 1, 2 * i + 2)
        parts.append(LinkPresentation({name: c}))
    return disjoint_union(*parts)


# -- two links with one shadow ------------------------------------------------------------------

_L_EDGES = """
1: a1- a2; 2: a1 a2-; 3: a1 a3-; 4: a1- a6; 5: a2- a3; 6: a2 a3-; 7: a3 a4-;
8: a4 a5-; 9: a4- a5; 10: a4 a6-; 11: a5- a6; 12: a5 a6-
"""
_L1_ROTS = "a1: 3 4 2 1; a2: 1 2 6 5; a3: 5 6 7 3; a4: 8 9 10 7; a5: 9 8 12 11; a6: 11 12 4 10"
_L2_ROTS = "a1: 3 4 2 1; a2: 1 2 6 5; a3: 5 6 7 3; a4: 8 7 10 9; a5: 9 11 12 8; a6: 11 10 4 12"

L1_FACE = (3, 7, 10, 4)
L2_FACE = (3, 7, 8, 12, 4)


def make_example31() -> tuple:
    """The two six-crossing knots whose rotation systems differ at a4, a5, a6."""
    return _build(_L_EDGES, _L1_ROTS), _build(_L_EDGES, _L2_ROTS)


# -- Thistlethwaite's unknot ------------------------------------------

_KT_EDGES = """
1: a1 a2; 2: a1- a6; 3: a1- a12; 4: a1 a12-; 5: a2 a3-; 6: a2- a9; 7: a2- a15;
8: a3- a4; 9: a3 a14; 10: a3 a15-; 11: a4 a5; 12: a4- a14-; 13: a4- a15;
14: a5 a6-; 15: a5- a11-; 16: a5- a12; 17: a6- a7-; 18: a6 a13; 19: a7 a8-;
20: a7- a8; 21: a7 a13-; 22: a9 a8-; 23: a9- a8; 24: a9- a10; 25: a10 a11-;
26: a10- a13; 27: a10- a14-; 28: a11 a13-; 29: a11 a14; 30: a15- a12-
"""
_KT_ROTS = """
a1: 1 2 4 3; a2: 1 7 5 6; a3: 9 5 10 8; a4: 11 12 8 13; a5: 11 16 14 15;
a6: 18 14 2 17; a7: 19 20 21 17; a8: 20 19 23 22; a9: 22 23 6 24;
a10: 24 27 25 26; a11: 29 15 28 25; a12: 3 4 16 30; a13: 18 21 26 28;
a14: 9 12 29 27; a15: 7 30 13 10
"""

_KT_P1_EDGES = """
1: a1 a2; 2: a1- a6; 3: a1- a12; 4: a1 a12-; 5: a2 a3-; 6: a2- a9; 7: a2- a15;
10: a3 a15-; 15: a5- a11-; 17: a6- a7-; 18: a6 a13; 19: a7 a8-;
20: a7- a8; 21: a7 a13-; 22: a9 a8-; 23: a9- a8; 30: a15- a12-;
31: a16 a11; 32: a16- a13; 33: a16 a13-; 34: a16- a17-; 35: a5 a17; 36: a6- a17;
37: a17- a18-; 38: a5- a18; 39: a12 a18; 40: a15 a18-; 41: a3- a5; 42: a3 a11;
43: a9- a11-
"""
_KT_P1_ROTS = """
a1: 1 2 4 3; a2: 1 7 5 6; a3: 42 5 10 41; a5: 41 38 35 15; a6: 18 36 2 17;
a7: 19 20 21 17; a8: 20 19 23 22; a9: 22 23 6 43; a11: 42 15 31 43;
a12: 3 4 39 30; a13: 18 21 32 33; a15: 7 30 40 10; a16: 31 34 33 32;
a17: 35 37 36 34; a18: 37 38 40 39
"""


def make_thistlethwaite() -> LinkPresentation:
    return _build(_KT_EDGES, _KT_ROTS)


def make_thistlethwaite_p1() -> LinkPresentation:
    """The printed result of the first pass replacement on Thistlethwaite's unknot."""
    return _build(_KT_P1_EDGES, _KT_P1_ROTS)


# -- Goeritz's unknot and the K_G(2k,2l) family ------------------------------

_G_EDGES = """
1: a1 a2; 2: a1- a11; 3: a1 a11-; 4: a1- a8; 5: a2- a3; 6: a2 a3-; 7: a2- a9-;
8: a3- a4; 9: a3 a6-; 10: a4 a5-; 11: a4- a5; 12: a4- a7-; 13: a5- a6;
14: a5 a6-; 15: a6 a7; 16: a7 a8-; 17: a7- a8; 18: a9 a8-; 19: a9- a10;
20: a9 a10-; 21: a10 a11-; 22: a10- a11
"""
_G_ROTS = """
a1: 1 4 3 2; a2: 1 7 6 5; a3: 5 6 9 8; a4: 8 11 10 12; a5: 11 13 14 10;
a6: 13 9 15 14; a7: 15 17 16 12; a8: 17 18 4 16; a9: 18 7 20 19;
a10: 21 22 19 20; a11: 22 21 2 3
"""

_G_P1_EDGES = """
8: a3- a4; 9: a3 a6-; 10: a4 a5-; 11: a4- a5; 12: a4- a7-; 13: a5- a6;
14: a5 a6-; 15: a6 a7; 16: a7 a8-; 17: a7- a8; 19: a9- a10; 20: a9 a10-;
21: a10 a11-; 22: a10- a11; 23: y1 a3-; 24: y1- a8-; 25: y1- a9; 26: y1 a11-;
27: a3 a9-; 28: a8 a11
"""
_G_P1_ROTS = """
y1: 23 25 26 24; a3: 27 23 9 8; a4: 8 11 10 12; a5: 11 13 14 10;
a6: 13 9 15 14; a7: 15 17 16 12; a8: 17 24 28 16; a9: 25 29 20 19;
a10: 21 22 19 20; a11: 22 21 28 26
"""

_G_P2_EDGES = """
13: a5- a6; 14: a5 a6-; 19: a9- a10; 20: a9 a10-; 21: a10 a11-; 22: a10- a11;
23: y1 a3-; 24: y1- a8-; 25: y1- a9; 26: y1 a11-; 27: a3 a9-; 28: a8 a11;
30: y2 a3; 31: y2- a5; 32: y2 a6-; 33: y2- a8; 34: a3- a5-; 35: a6 a8-
"""
_G_P2_ROTS = """
y2: 30 33 32 31; y1: 23 25 26 24; a3: 29 23 30 34; a5: 31 13 14 34;
a6: 13 32 35 14; a8: 33 24 28 35; a9: 25 27 20 19; a10: 21 22 19 20;
a11: 22 21 28 26
"""

_G_P3_EDGES = """
13: a5- a6; 14: a5 a6-; 19: a9- a10; 20: a9 a10-; 21: a10 a11-; 22: a10- a11;
24: y1- a8-; 25: y1- a9; 26: y1 a11-; 28: a8 a11; 36: y3 a6-; 37: y3- a6;
38: y3- a8-; 39: y3 a9-; 40: y1 a5-; 41: a5 a8
"""
_G_P3_ROTS = """
y3: 39 37 36 38; y1: 40 25 26 24; a5: 41 13 14 40; a6: 13 36 37 14;
a8: 41 24 28 38; a9: 25 39 20 19; a10: 21 22 19 20; a11: 22 21 28 26
"""

_G_P4_EDGES = """
13: a5- a6; 14: a5 a6-; 19: a9- a10; 20: a9 a10-; 21: a10 a11-; 22: a10- a11;
42: a5 a11; 43: a5- a11-; 44: a6 a9; 45: a6- a9-
"""
_G_P4_ROTS = "a5: 42 13 14 43; a6: 13 45 44 14; a9: 44 45 20 19; a10: 21 22 19 20; a11: 22 21 42 43"


def make_goeritz00_printed() -> LinkPresentation:
    """Goeritz's unknot exactly as printed (with the corrected ``e_{b_0}`` ends)."""
    return _build(_G_EDGES, _G_ROTS)


def make_goeritz_printed_steps() -> list:
    """Printed presentations after each of the four scripted replacements."""
    return [
        _build(_G_P1_EDGES, _G_P1_ROTS, aliases={29: 27}),
        _build(_G_P2_EDGES, _G_P2_ROTS, aliases={29: 27}),
        _build(_G_P3_EDGES, _G_P3_ROTS),
        _build(_G_P4_EDGES, _G_P4_ROTS),
    ]


def _b(i):
    return 100 + 2 * i


def _bm(i):
    return 101 + 2 * i


def _c(j):
    return 300 + 2 * j


def _cm(j):
    return 301 + 2 * j


def make_goeritz(k: int = 0, l: int = 0) -> LinkPresentation:
    """The unknot ``K_{G_{2k,2l}}`` with ``11 + 2k + 2l`` crossings.

    ``k = l = 0`` is Goeritz's unknot. The ``b`` chain of ``2k`` crossings
    sits between ``a5`` and ``a6``, the ``c`` chain of ``2l`` crossings
    between ``a10`` and ``a11``.
    """
    if k < 0 or l < 0:
        raise ValueError("k and l must be non-negative")
    edges = {e: ends for e, ends in _edges(_G_EDGES).items() if e not in (13, 14, 21, 22)}
    rots = _rots(_G_ROTS)
    kb, lc = 2 * k, 2 * l
    # b chain: e_{b_0} (=13) / e_{b_0}^- (=14) when k = 0
    if k == 0:
        edges[13] = ("a5-", "a6")
        edges[14] = ("a5", "a6-")
        b_first, b_first_m, b_last, b_last_m = 13, 14, 13, 14
    else:
        edges[_b(1)] = ("a5-", "b1")
        edges[_bm(1)] = ("a5", "b1-")
        for i in range(2, kb + 1):
            edges[_b(i)] = (f"b{i - 1}-", f"b{i}")
            edges[_bm(i)] = (f"b{i - 1}", f"b{i}-")
        edges[_b(kb + 1)] = ("a6", f"b{kb}-")
        edges[_bm(kb + 1)] = ("a6-", f"b{kb}")
        for i in range(1, kb + 1):
            rots[f"b{i}"] = [_b(i), _b(i + 1), _bm(i + 1), _bm(i)]
        b_first, b_first_m, b_last, b_last_m = _b(1), _bm(1), _b(kb + 1), _bm(kb + 1)
    rots["a5"] = [11, b_first, b_first_m, 10]
    rots["a6"] = [b_last, 9, 15, b_last_m]
    # c chain: e_{c_0} (=22) / e_{c_0}^- (=21) when l = 0
    if l == 0:
        edges[21] = ("a10", "a11-")
        edges[22] = ("a10-", "a11")
        c_first, c_first_m, c_last, c_last_m = 22, 21, 22, 21
    else:
        edges[_c(1)] = ("a10-", "c1")
        edges[_cm(1)] = ("a10", "c1-")
        for j in range(2, lc + 1):
            edges[_c(j)] = (f"c{j - 1}-", f"c{j}")
            edges[_cm(j)] = (f"c{j - 1}", f"c{j}-")
        edges[_c(lc + 1)] = ("a11", f"c{lc}-")
        edges[_cm(lc + 1)] = ("a11-", f"c{lc}")
        for j in range(1, lc + 1):
            rots[f"c{j}"] = [_cm(j), _cm(j + 1), _c(j + 1), _c(j)]
        c_first, c_first_m, c_last, c_last_m = _c(1), _cm(1), _c(lc + 1), _cm(lc + 1)
    rots["a10"] = [c_first_m, c_first, 19, 20]
    rots["a11"] = [c_last, c_last_m, 2, 3]
    return LinkPresentation.from_tables(edges, rots)


def make_goeritz_k1(k: int = 0, l: int = 0) -> LinkPresentation:
    """The printed intermediate ``K_1`` reached from ``K_{G_{2k,2l}}`` after four replacements."""
    g = make_goeritz(k, l)
    edges = {e: g.edge_ends(e) for e in g.edge_ids if e not in range(1, 13) and e not in range(15, 19)}
    for e in (19, 20):
        edges[e] = g.edge_ends(e)
    edges[42] = ("a5", "a11")
    edges[43] = ("a5-", "a11-")
    edges[44] = ("a6", "a9")
    edges[45] = ("a6-", "a9-")
    rots = {name: [d[0] for d in g.crossings[name].rot] for name in g.crossings
            if name[0] in "bc" or name == "a10"}
    rot5 = [d[0] for d in g.crossings["a5"].rot]
    rot6 = [d[0] for d in g.crossings["a6"].rot]
    rot11 = [d[0] for d in g.crossings["a11"].rot]
    rots["a5"] = [42, rot5[1], rot5[2], 43]
    rots["a6"] = [rot6[0], 45, 44, rot6[3]]
    rots["a9"] = [19, 44, 45, 20]
    rots["a11"] = [43, rot11[0], rot11[1], 42]
    return LinkPresentation.from_tables(edges, rots)


# -- scripted replacements ---------------------------------------------------------


@dataclass(frozen=True)
class ScriptedReplacement:
    """A replacement read off a printed example.

    ``start`` / ``end`` are the endpoints of the replaced maximal pass, and
    ``crossed`` lists the edges the new pass crosses, in order, each given by
    its two ends. ``names`` are the labels of the new crossings.
    """

    start: str
    end: str
    crossed: tuple = ()
    names: tuple = ()


GOERITZ_SCRIPT = (
    ScriptedReplacement("a11-", "a3-", (("a9", "a8-"),), ("y1",)),
    ScriptedReplacement("a8", "a5", (("a3", "a6-"),), ("y2",)),
    ScriptedReplacement("a6-", "a9-", (("a6", "a8-"),), ("y3",)),
    ScriptedReplacement("a6", "a9"),
)

THISTLETHWAITE_SCRIPT = (
    ScriptedReplacement("a13", "a15", (("a11", "a13-"), ("a5", "a6-"), ("a5-", "a12")),
                        ("a16", "a17", "a18")),
    ScriptedReplacement("a8", "a18", (("a1-", "a6"), ("a17-", "a18-")), ("a19", "a20")),
    ScriptedReplacement("a1-", "a16-", (("a2-", "a8-"),), ("a21",)),
    ScriptedReplacement("a15", "a7", (("a3", "a15-"), ("a17-", "a20")), ("a22", "a23")),
    ScriptedReplacement("a23-", "a15-", (("a20", "a23"),), ("a24",)),
)


# -- hand-built small diagrams ----------------------------------------------------


def make_trefoil() -> LinkPresentation:
    """A standard alternating three-crossing trefoil."""
    edges = {
        1: ("a", "b-"), 2: ("a-", "b"), 3: ("b", "c-"), 4: ("b-", "c"),
        5: ("c", "a-"), 6: ("c-", "a"),
    }
    rots = {"a": [1, 5, 6, 2], "b": [3, 1, 2, 4], "c": [5, 3, 4, 6]}
    return LinkPresentation.from_tables(edges, rots)


def make_virtual_trefoil() -> LinkPresentation:
    """The trefoil diagram with one crossing made virtual."""
    t = make_trefoil()
    out = dict(t.crossings)
    c = out["c"]
    out["c"] = Crossing("c", VIRTUAL, c.rot, c.poles)
    return LinkPresentation(out)


def make_mixed_triangle() -> LinkPresentation:
    """The trefoil shadow with ``b`` and ``c`` virtual: its triangles carry one classical crossing."""
    out = dict(make_trefoil().crossings)
    for name in ("b", "c"):
        c = out[name]
        out[name] = Crossing(name, VIRTUAL, c.rot, c.poles)
    return LinkPresentation(out)


def make_virtual_kink() -> LinkPresentation:
    """``O`` drawn with a virtual crossing."""
    return LinkPresentation({"v": trivial_crossing("v", 1, 2, VIRTUAL)})


# -- exported files ----------------------------------------------------------------

CORPUS_VERSION = 1


def corpus_items() -> dict:
    """Every fixture by file stem."""
    l1, l2 = make_example31()
    items = {
        "trivial": make_trivial(1),
        "trivial_2": make_trivial(2),
        "example31_l1": l1,
        "example31_l2": l2,
        "thistlethwaite": make_thistlethwaite(),
        "thistlethwaite_p1": make_thistlethwaite_p1(),
        "goeritz_printed": make_goeritz00_printed(),
        "trefoil": make_trefoil(),
        "virtual_trefoil": make_virtual_trefoil(),
        "virtual_kink": make_virtual_kink(),
        "mixed_triangle": make_mixed_triangle(),
    }
    for i, p in enumerate(make_goeritz_printed_steps(), start=1):
        items[f"goeritz_printed_p{i}"] = p
    for k in range(6):
        for l in range(6):
            items[f"goeritz_{k}_{l}"] = make_goeritz(k, l)
    return items


def corpus_dir() -> Path:
    """The packaged directory of exported fixtures for the current version."""
    return Path(__file__).parent / "data" / f"corpus_v{CORPUS_VERSION}"


def export_corpus(directory=None) -> list:
    """Write every fixture as ``<stem>.lp``; returns the written paths."""
    from .io import serialize

    target = Path(directory) if directory is not None else corpus_dir()
    target.mkdir(parents=True, exist_ok=True)
    out = []
    for stem, p in corpus_items().items():
        path = target / f"{stem}.lp"
        path.write_text(serialize(p), encoding="utf-8")
        out.append(path)
    return out


# -- random unknot diagrams ---------------------------------------------------------


@dataclass
class RandomProvenance:
    seed: int
    ops: list = field(default_factory=list)


def random_presentation(seed: int, op_count: int, virtual: bool = False,
                        provenance: RandomProvenance | None = None) -> LinkPresentation:
    """A diagram of the unknot built from ``O`` by ``op_count`` random moves.

    Each step is a clasp insertion on two co-facial edges or a long pass
    replacement (a rerouting that adds crossings). With ``virtual=True``
    clasp insertions may create virtual crossings. ``provenance`` (if given)
    records the applied steps.
    """
    from . import moves, passes

    rng = random.Random(seed)
    p = make_trivial(1)
    for _ in range(op_count):
        step = None
        # classical reroutes are only sound while no virtual crossing exists
        if rng.random() < 0.25 and p.is_classical():
            step = passes.random_long_replacement(p, rng)
        if step is None:
            kind = VIRTUAL if virtual and rng.random() < 0.4 else CLASSICAL
            site = moves.random_omega0_site(p, rng)
            q = moves.apply_omega0(p, site, kind=kind)
            step = (f"omega0:{kind}", q)
        if provenance is not None:
            provenance.ops.append(step[0])
        p = step[1]
    return p
