"""
Embedding presentations of links and virtual links.

A presentation is a rotation system over the marked 4-regular shadow of a
diagram. Every crossing ``a`` carries two poles, ``a`` (plus, the
overcrossing occurrence) and ``a-`` (minus, the undercrossing occurrence).
Each crossing stores the anticlockwise cyclic order of its four edge-ends
(darts) together with the pole each dart attaches to. The two darts of one
pole are opposite each other, so pole attachments alternate around a
crossing and a strand passes straight through a pole.

An edge ``e`` is represented by its two darts ``(e, 0)`` and ``(e, 1)``;
where a dart sits determines the edge's ends, so parallel edges and loops
need no special treatment.

Faces are orbits of ``d -> pred(mate(d))`` where ``pred`` is the previous
dart anticlockwise around the vertex reached by ``d``. Each face therefore
keeps its region on the left of every dart.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, NamedTuple

PLUS = 1
MINUS = -1
CLASSICAL = "classical"
VIRTUAL = "virtual"

Dart = tuple  # (edge id, side) with side in {0, 1}


class PresentationError(ValueError):
    """Raised when a presentation or a move site is structurally unusable."""


class EndRef(NamedTuple):
    """A pole of a crossing: ``(name, +1)`` is ``a``, ``(name, -1)`` is ``a-``."""

    crossing: str
    pole: int

    def __str__(self):
        return self.crossing + ("+" if self.pole == PLUS else "-")

    @property
    def opposite(self) -> "EndRef":
        return EndRef(self.crossing, -self.pole)


def mate(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


_RUNS = re.compile(r"\d+|\D+")


@lru_cache(maxsize=4096)
def natural_key(name: str):
    """Sort key treating digit runs numerically, so that a2 < a10."""
    return tuple(int(t) if t.isdigit() else t for t in _RUNS.findall(name))


def endref_key(e: EndRef):
    return (natural_key(e.crossing), -e.pole)


@dataclass(frozen=True)
class Crossing:
    """One vertex of the shadow.

    ``rot`` lists the four darts anticlockwise and ``poles[i]`` is the pole
    that ``rot[i]`` attaches to.
    """

    name: str
    kind: str
    rot: tuple
    poles: tuple

    def slots_of(self, pole: int) -> tuple:
        return tuple(i for i, p in enumerate(self.poles) if p == pole)


@dataclass(frozen=True)
class Face:
    """One orbit of the face-tracing permutation, as a cyclic tuple of darts."""

    darts: tuple

    @property
    def edges(self) -> tuple:
        return tuple(d[0] for d in self.darts)

    def __len__(self):
        return len(self.darts)

    def matches(self, edges: Iterable[int]) -> bool:
        """True if the edge sequence equals ``edges`` up to cyclic rotation."""
        target = tuple(edges)
        mine = self.edges
        if len(target) != len(mine):
            return False
        return any(mine[i:] + mine[:i] == target for i in range(len(mine)))


@dataclass(frozen=True)
class Strand:
    """A closed curve: the poles it passes through and the edges between them.

    ``edges[i]`` joins ``ends[i]`` to ``ends[i + 1]`` (cyclically).
    """

    ends: tuple
    edges: tuple

    def __len__(self):
        return len(self.ends)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    error: str | None = None
    location: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class LinkPresentation:
    """Immutable rotation system of a marked 4-regular planar multigraph.

    ``infinite_face`` is a rendering hint only; it never takes part in
    equality, isomorphism or moves.
    """

    crossings: Mapping[str, Crossing]
    infinite_face: tuple | None = field(default=None, compare=False)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_tables(cls, edges, rotations, kinds=None, infinite_face=None):
        """Build a presentation from an edge table and per-crossing rotations.

        Args:
            edges: mapping ``edge id -> (end, end)``; an end is an
                :class:`EndRef` or a string such as ``"a3"`` / ``"a3-"``.
            rotations: mapping ``crossing name -> [e1, e2, e3, e4]`` listing
                incident edge ids anticlockwise. An entry may be given as
                ``(edge id, pole)`` to pin which end of a loop is meant.
            kinds: optional mapping ``name -> "classical" | "virtual"``.

        Loops listed without an explicit pole are resolved so that pole
        attachments alternate where the other slots force it; otherwise the
        first occurrence takes the edge's first end. Inconsistent input is
        kept as given so that :func:`validate` can report it.
        """
        kinds = kinds or {}
        table = {e: tuple(parse_end(x) for x in ends) for e, ends in edges.items()}
        crossings = {}
        for name, slots in rotations.items():
            entries = []
            for s in slots:
                if isinstance(s, tuple):
                    entries.append((s[0], s[1]))
                else:
                    entries.append((s, None))
            rot, poles = _place_darts(name, entries, table)
            crossings[name] = Crossing(name, kinds.get(name, CLASSICAL), tuple(rot), tuple(poles))
        return cls(crossings, infinite_face=tuple(infinite_face) if infinite_face else None)

    # -- indices ----------------------------------------------------------

    @cached_property
    def _index(self) -> dict:
        idx = {}
        for c in self.crossings.values():
            for i, d in enumerate(c.rot):
                idx[d] = (c.name, i)
        return idx

    def position(self, d: Dart) -> tuple:
        """``(crossing name, slot)`` holding dart ``d``."""
        return self._index[d]

    def end_of(self, d: Dart) -> EndRef:
        name, i = self._index[d]
        return EndRef(name, self.crossings[name].poles[i])

    def has_dart(self, d: Dart) -> bool:
        return d in self._index

    @cached_property
    def edge_ids(self) -> tuple:
        return tuple(sorted({d[0] for d in self._index}))

    def edge_ends(self, e: int) -> tuple:
        return (self.end_of((e, 0)), self.end_of((e, 1)))

    def dart_at(self, name: str, slot: int) -> Dart:
        return self.crossings[name].rot[slot % 4]

    def pred(self, d: Dart) -> Dart:
        name, i = self._index[d]
        return self.crossings[name].rot[(i - 1) % 4]

    def opposite_dart(self, d: Dart) -> Dart:
        """The other dart of the same pole: where a strand entering by ``d`` leaves."""
        name, i = self._index[d]
        return self.crossings[name].rot[(i + 2) % 4]

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def _sorted_names(self) -> tuple:
        return tuple(sorted(self.crossings, key=natural_key))

    @property
    def names(self) -> list:
        return list(self._sorted_names)

    def kind(self, name: str) -> str:
        return self.crossings[name].kind

    def is_classical(self) -> bool:
        return all(c.kind == CLASSICAL for c in self.crossings.values())

    def darts_of_pole(self, e: EndRef) -> tuple:
        c = self.crossings[e.crossing]
        return tuple(c.rot[i] for i in c.slots_of(e.pole))

    def edges_between(self, a: EndRef, b: EndRef) -> list:
        """Edge ids with one end at ``a`` and the other at ``b``."""
        out = []
        for d in self.darts_of_pole(a):
            if self.end_of(mate(d)) == b and d[0] not in out:
                out.append(d[0])
        return out

    def __repr__(self):
        return f"LinkPresentation(n={self.n}, edges={len(self.edge_ids)})"


def parse_end(x) -> EndRef:
    if isinstance(x, EndRef):
        return x
    if isinstance(x, tuple):
        return EndRef(x[0], x[1])
    s = str(x)
    if s.endswith("-"):
        return EndRef(s[:-1], MINUS)
    if s.endswith("+"):
        return EndRef(s[:-1], PLUS)
    return EndRef(s, PLUS)


def _place_darts(name, entries, table):
    rot = [None] * len(entries)
    poles = [None] * len(entries)
    loops = []
    for i, (e, pin) in enumerate(entries):
        ends = table.get(e)
        if ends is None:
            rot[i], poles[i] = (e, 0), pin if pin is not None else PLUS
            continue
        sides = [s for s in (0, 1) if ends[s].crossing == name]
        if pin is not None:
            sides = [s for s in sides if ends[s].pole == pin] or sides
        if len(sides) == 1:
            rot[i], poles[i] = (e, sides[0]), ends[sides[0]].pole
        elif len(sides) == 2:
            loops.append(i)
        else:
            # edge does not touch this crossing according to the table
            rot[i], poles[i] = (e, 0), PLUS
    by_edge = {}
    for i in loops:
        by_edge.setdefault(entries[i][0], []).append(i)
    for e, slots in by_edge.items():
        ends = table[e]
        if len(slots) == 1:
            # listed once although both ends sit here; take the unused end
            used = {rot[j] for j in range(len(rot)) if rot[j] is not None}
            s = 0 if (e, 0) not in used else 1
            rot[slots[0]], poles[slots[0]] = (e, s), ends[s].pole
            continue
        i, j = slots[0], slots[1]
        order = (0, 1)
        if ends[0].pole != ends[1].pole and len(entries) == 4:
            want_i = _forced_pole(i, poles)
            if want_i is not None and ends[0].pole != want_i:
                order = (1, 0)
        rot[i], poles[i] = (e, order[0]), ends[order[0]].pole
        rot[j], poles[j] = (e, order[1]), ends[order[1]].pole
        for extra in slots[2:]:
            rot[extra], poles[extra] = (e, 0), ends[0].pole
    return rot, poles


def _forced_pole(i, poles):
    """Pole that slot ``i`` must carry for alternation, if already determined."""
    for j, p in enumerate(poles):
        if p is not None:
            return p if (i - j) % 2 == 0 else -p
    return None


# -- validation -----------------------------------------------------------


def validate(p: LinkPresentation) -> ValidationReport:
    """Check every structural invariant; report the first violation found."""
    seen = {}
    for name in p.names:
        c = p.crossings[name]
        if len(c.rot) != 4 or len(c.poles) != 4:
            return ValidationReport(False, "degree", name, f"{len(c.rot)} edge-ends")
        for d in c.rot:
            if d in seen:
                return ValidationReport(False, "dangling", name, f"edge {d[0]} end used twice")
            seen[d] = name
    for d, name in seen.items():
        if mate(d) not in seen:
            return ValidationReport(False, "dangling", name, f"edge {d[0]} has a missing end")
    for name in p.names:
        c = p.crossings[name]
        if sorted(c.poles) != [MINUS, MINUS, PLUS, PLUS]:
            return ValidationReport(False, "pole_count", name, f"poles {c.poles}")
        if c.poles[0] != c.poles[2] or c.poles[1] != c.poles[3]:
            return ValidationReport(False, "alternation", name,
                                    "edges of one pole are adjacent in the rotation")
    for comp, (v, e, f) in enumerate(euler_counts(p)):
        if v - e + f != 2:
            return ValidationReport(False, "euler", f"component {comp}",
                                    f"V - E + F = {v} - {e} + {f}")
    return ValidationReport(True)


def is_valid(p: LinkPresentation) -> bool:
    return validate(p).ok


def check(p: LinkPresentation) -> LinkPresentation:
    """Return ``p`` unchanged, raising :class:`PresentationError` if invalid."""
    r = validate(p)
    if not r.ok:
        raise PresentationError(f"{r.error} violation at {r.location}: {r.detail}")
    return p


# -- faces, components, strands --------------------------------------------


def trace_orbits(rot: Mapping, mate_of=mate) -> list:
    """Face orbits of a general rotation system.

    ``rot`` maps a vertex to its anticlockwise list of darts (any degree;
    a vertex of degree one is a leaf). Orbits start from the smallest
    unvisited dart, so the result is deterministic.
    """
    where = {}
    for v, ds in rot.items():
        for i, d in enumerate(ds):
            where[d] = (v, i)
    seen = set()
    faces = []
    for start in sorted(where):
        if start in seen:
            continue
        orbit = []
        d = start
        while d not in seen:
            seen.add(d)
            orbit.append(d)
            v, i = where[mate_of(d)]
            ds = rot[v]
            d = ds[(i - 1) % len(ds)]
        faces.append(tuple(orbit))
    return faces


def trace_faces(p: LinkPresentation) -> list:
    rot = {name: c.rot for name, c in p.crossings.items()}
    return [Face(o) for o in trace_orbits(rot)]


def components(p: LinkPresentation) -> list:
    """Connected components of the shadow, as sorted lists of crossing names."""
    parent = {name: name for name in p.crossings}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in p.crossings.values():
        for d in c.rot:
            if p.has_dart(mate(d)):
                a, b = find(c.name), find(p.position(mate(d))[0])
                if a != b:
                    parent[a] = b
    groups = {}
    for name in p.names:
        groups.setdefault(find(name), []).append(name)
    return sorted(groups.values(), key=lambda g: natural_key(g[0]))


def euler_counts(p: LinkPresentation) -> list:
    """``(V, E, F)`` for each shadow component."""
    comp_of = {}
    comps = components(p)
    for i, g in enumerate(comps):
        for name in g:
            comp_of[name] = i
    counts = [[len(g), 0, 0] for g in comps]
    for e in p.edge_ids:
        counts[comp_of[p.position((e, 0))[0]]][1] += 1
    for f in trace_faces(p):
        counts[comp_of[p.position(f.darts[0])[0]]][2] += 1
    return [tuple(c) for c in counts]


def vef(p: LinkPresentation) -> tuple:
    return (p.n, len(p.edge_ids), len(trace_faces(p)))


def trace_strands(p: LinkPresentation) -> list:
    """All strands, each oriented from its smallest pole out along the smaller edge id."""
    done = set()
    strands = []
    all_ends = sorted({p.end_of(d) for d in p._index}, key=endref_key)
    for start in all_ends:
        if start in done:
            continue
        d0 = min(p.darts_of_pole(start))
        ends, edges = [], []
        here, d = start, d0
        while True:
            ends.append(here)
            edges.append(d[0])
            done.add(here)
            arrive = mate(d)
            here = p.end_of(arrive)
            d = p.opposite_dart(arrive)
            if here == start and d == d0:
                break
        strands.append(Strand(tuple(ends), tuple(edges)))
    return strands


def strand_of(p: LinkPresentation, e: EndRef) -> tuple:
    """``(strand, index)`` of pole ``e``."""
    for s in trace_strands(p):
        if e in s.ends:
            return s, s.ends.index(e)
    raise PresentationError(f"no pole {e}")


def successor(p: LinkPresentation, e: EndRef, l: int = 1) -> EndRef:
    """The pole ``l`` steps further along the strand through ``e``; negative ``l`` walks back."""
    s, i = strand_of(p, parse_end(e))
    return s.ends[(i + l) % len(s)]


def predecessor(p: LinkPresentation, e: EndRef, l: int = 1) -> EndRef:
    return successor(p, e, -l)


# -- isomorphism ------------------------------------------------------------


def _code_tables(p: LinkPresentation, comp: list) -> tuple:
    """Integer adjacency of one component: ``nbr[i][s] = (j, t)`` and pole labels ``label[i][s]``."""
    index = {name: i for i, name in enumerate(comp)}
    nbr, label = [], []
    for name in comp:
        c = p.crossings[name]
        row = []
        for d in c.rot:
            w, j = p.position(mate(d))
            row.append((index[w], j))
        nbr.append(row)
        if c.kind == VIRTUAL:
            label.append((2, 2, 2, 2))
        else:
            label.append(tuple(1 if pole == PLUS else 0 for pole in c.poles))
    return nbr, label


def _code_from(nbr, label, start: int, base: int, best=None) -> list | None:
    """Breadth-first code from dart ``(start, base)``.

    Returns ``None`` as soon as the code is known to exceed ``best``.
    """
    order = [start]
    bases = {start: base}
    rank = {start: 0}
    out = []
    tied = best is not None
    k = 0
    while k < len(order):
        v = order[k]
        b = bases[v]
        row = nbr[v]
        lo = len(out)
        out.append(label[v][b])
        for t in range(4):
            w, j = row[(b + t) % 4]
            if w not in bases:
                bases[w] = j
                rank[w] = len(order)
                order.append(w)
            out.append(rank[w])
            out.append((j - bases[w]) % 4)
        if tied:
            mine, theirs = out[lo:], best[lo:lo + 9]
            if mine > theirs:
                return None
            if mine < theirs:
                tied = False
        k += 1
    return out


def _component_code(p: LinkPresentation, comp: list) -> tuple:
    nbr, label = _code_tables(p, comp)
    best = None
    for v in range(len(comp)):
        for b in range(4):
            code = _code_from(nbr, label, v, b, best)
            if code is not None and (best is None or code < best):
                best = code
    return tuple(best)


def canonical_code(p: LinkPresentation) -> bytes:
    """Relabeling-invariant code; equal codes exactly when presentations are isomorphic.

    For each component, a breadth-first traversal is started from every
    dart and the lexicographically smallest code is kept. Virtual crossings
    contribute no pole bit, which realizes their pole-swap freedom.
    """
    parts = sorted(_component_code(p, comp) for comp in components(p))
    return b"|".join(",".join(map(str, part)).encode() for part in parts)


def is_isomorphic(p: LinkPresentation, q: LinkPresentation) -> bool:
    if p.n != q.n or len(p.edge_ids) != len(q.edge_ids):
        return False
    return canonical_code(p) == canonical_code(q)


def relabel(p: LinkPresentation, mapping: Mapping[str, str]) -> LinkPresentation:
    """Rename crossings; names missing from ``mapping`` are kept."""
    out = {}
    for name, c in p.crossings.items():
        new = mapping.get(name, name)
        out[new] = Crossing(new, c.kind, c.rot, c.poles)
    if len(out) != len(p.crossings):
        raise PresentationError("relabeling is not injective")
    return LinkPresentation(out, p.infinite_face)


def renumber_edges(p: LinkPresentation, mapping: Mapping[int, int]) -> LinkPresentation:
    out = {}
    for name, c in p.crossings.items():
        rot = tuple((mapping.get(d[0], d[0]), d[1]) for d in c.rot)
        out[name] = Crossing(name, c.kind, rot, c.poles)
    return LinkPresentation(out)


def swap_poles(p: LinkPresentation, name: str) -> LinkPresentation:
    """Exchange the roles of ``name`` and ``name-``."""
    c = p.crossings[name]
    out = dict(p.crossings)
    out[name] = Crossing(name, c.kind, c.rot, tuple(-x for x in c.poles))
    return LinkPresentation(out, p.infinite_face)


def disjoint_union(*ps: LinkPresentation) -> LinkPresentation:
    """Union of presentations; crossing names and edge ids must not clash."""
    out = {}
    for q in ps:
        for name, c in q.crossings.items():
            if name in out:
                raise PresentationError(f"crossing name {name} used twice")
            out[name] = c
    darts = [d for c in out.values() for d in c.rot]
    if len(set(darts)) != len(darts):
        raise PresentationError("edge ids clash")
    return LinkPresentation(out)


# -- trivial components -----------------------------------------------------


def is_trivial_component(p: LinkPresentation, comp: list) -> bool:
    """A single crossing whose two edges are both loops ``(o, o-)``."""
    if len(comp) != 1:
        return False
    c = p.crossings[comp[0]]
    return all(p.position(mate(d))[0] == c.name for d in c.rot)


def trivial_crossing(name: str, e1: int, e2: int, kind: str = CLASSICAL) -> Crossing:
    """The canonical one-crossing trivial component ``((o,o-)1,(o,o-)1,(o,o-)2,(o,o-)2)``."""
    return Crossing(name, kind, ((e1, 0), (e1, 1), (e2, 0), (e2, 1)), (PLUS, MINUS, PLUS, MINUS))


def normalize(p: LinkPresentation) -> LinkPresentation:
    """Rewrite every trivial component to the canonical classical form.

    A one-crossing component with two loops can be drawn as a positive or a
    negative curl; both are diagrams of the unknot, so they are identified.
    """
    out = dict(p.crossings)
    changed = False
    for comp in components(p):
        if is_trivial_component(p, comp):
            c = p.crossings[comp[0]]
            e1, e2 = sorted({d[0] for d in c.rot})
            t = trivial_crossing(c.name, e1, e2)
            if t != c:
                out[c.name] = t
                changed = True
    return LinkPresentation(out, p.infinite_face) if changed else p


def is_unlink(p: LinkPresentation) -> bool:
    return all(is_trivial_component(p, comp) for comp in components(p))


def is_alternating(p: LinkPresentation) -> bool:
    """Every strand alternates over and under along its classical crossings."""
    for s in trace_strands(p):
        poles = [e.pole for e in s.ends if p.kind(e.crossing) == CLASSICAL]
        if len(poles) < 2:
            return False
        if any(poles[i] == poles[(i + 1) % len(poles)] for i in range(len(poles))):
            return False
    return True


def fresh_edge_ids(p: LinkPresentation, count: int, reserved=()) -> list:
    top = max([0, *p.edge_ids, *reserved])
    return list(range(top + 1, top + 1 + count))


def fresh_name(p: LinkPresentation, prefix: str = "v", reserved=()) -> str:
    taken = set(p.crossings) | set(reserved)
    i = 1
    while f"{prefix}{i}" in taken:
        i += 1
    return f"{prefix}{i}"


class Editor:
    """Mutable scratch copy of a presentation used to implement rewrites.

    Darts are addressed by value; :meth:`put` moves a dart into a slot and
    keeps the index current. Crossings may be partially filled (``None``
    slots) while a rewrite is in progress, and :meth:`build` freezes the
    result.
    """

    def __init__(self, p: LinkPresentation):
        self.rot = {n: list(c.rot) for n, c in p.crossings.items()}
        self.poles = {n: list(c.poles) for n, c in p.crossings.items()}
        self.kinds = {n: c.kind for n, c in p.crossings.items()}
        self.where = {}
        for n, ds in self.rot.items():
            for i, d in enumerate(ds):
                self.where[d] = (n, i)
        self.top_edge = max([0, *(d[0] for d in self.where)])
        self.used_names = set(self.rot)

    def new_edge(self) -> int:
        self.top_edge += 1
        return self.top_edge

    def new_name(self, prefix: str = "v") -> str:
        i = 1
        while f"{prefix}{i}" in self.used_names:
            i += 1
        name = f"{prefix}{i}"
        self.used_names.add(name)
        return name

    def reserve(self, name: str):
        if name in self.used_names:
            raise PresentationError(f"crossing name {name} already in use")
        self.used_names.add(name)

    def add(self, name: str, kind: str, rot: list, poles: list):
        self.rot[name] = list(rot)
        self.poles[name] = list(poles)
        self.kinds[name] = kind
        self.used_names.add(name)
        for i, d in enumerate(rot):
            if d is not None:
                self.where[d] = (name, i)

    def remove(self, name: str):
        for d in self.rot.pop(name):
            if d is not None and self.where.get(d, (None,))[0] == name:
                del self.where[d]
        del self.poles[name]
        del self.kinds[name]

    def put(self, name: str, slot: int, d: Dart):
        old = self.rot[name][slot]
        if old is not None and self.where.get(old) == (name, slot):
            del self.where[old]
        self.rot[name][slot] = d
        self.where[d] = (name, slot)

    def replace(self, old: Dart, new: Dart):
        """Put ``new`` in the slot currently holding ``old``."""
        name, slot = self.where[old]
        self.put(name, slot, new)

    def pole_of(self, d: Dart) -> int:
        name, slot = self.where[d]
        return self.poles[name][slot]

    def opposite(self, d: Dart) -> Dart:
        name, slot = self.where[d]
        return self.rot[name][(slot + 2) % 4]

    def build(self, infinite_face=None) -> LinkPresentation:
        out = {n: Crossing(n, self.kinds[n], tuple(self.rot[n]), tuple(self.poles[n]))
               for n in self.rot}
        return LinkPresentation(out, infinite_face)
