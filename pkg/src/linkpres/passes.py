"""
Passes and pass replacement.

A pass ``x^r z1^e ... zk^e y^s`` is a stretch of a strand whose interior
poles all carry one sign ``e``; it is maximal when ``r = s = -e``. A pass
replacement deletes the interior crossings and lays a new arc from ``x`` to
``y`` through a sequence of faces, creating one crossing (with the same
sign ``e`` on the new arc) for every edge it crosses.

The work is done on a *stripped* copy of the presentation: the interior
crossings are spliced out and the two ends of the cut arc become stubs,
pendant darts whose far end is a leaf. Faces of the stripped shadow are
traced with the leaves included, so the stub at ``x`` lies in exactly one
face ``f_x`` and the stub at ``y`` in ``f_y``. The dual of the stripped
shadow is the adjacent graph, and a route is a walk in it.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from .core import (
    CLASSICAL,
    PLUS,
    Editor,
    EndRef,
    LinkPresentation,
    PresentationError,
    check,
    endref_key,
    mate,
    parse_end,
    trace_faces,
    trace_orbits,
    trace_strands,
)
from .moves import splice


@dataclass(frozen=True)
class Pass:
    """``start`` and ``end`` bound the pass; ``interior`` lists its poles in order.

    ``edges[i]`` joins consecutive elements of ``(start, *interior, end)``.
    """

    start: EndRef
    interior: tuple
    end: EndRef
    edges: tuple = ()

    @property
    def k(self) -> int:
        return len(self.interior)

    @property
    def sign(self) -> int:
        return self.interior[0].pole if self.interior else -self.start.pole

    @property
    def maximal(self) -> bool:
        return bool(self.interior) and self.start.pole == self.end.pole == -self.sign

    @property
    def crossings(self) -> tuple:
        return tuple(z.crossing for z in self.interior)

    def reversed(self) -> "Pass":
        return Pass(self.end, tuple(reversed(self.interior)), self.start,
                    tuple(reversed(self.edges)))

    def __str__(self):
        return " ".join(str(t) for t in (self.start, *self.interior, self.end))


def classify_replacement(k: int, m: int) -> str:
    """``short`` if ``m <= k - 1``, ``equal`` if ``m == k``, else ``long``."""
    if k < 0 or m < 0:
        raise ValueError("lengths must be non-negative")
    if m <= k - 1:
        return "short"
    if m == k:
        return "equal"
    return "long"


def _runs(p: LinkPresentation, accept):
    """Yield ``(strand, i, j)`` for maximal runs ``ends[i..j]`` of accepted poles.

    ``accept(prev, pole)`` decides whether ``pole`` may extend a run whose
    last pole is ``prev`` (``None`` at the start of a run).
    """
    for s in trace_strands(p):
        n = len(s.ends)
        ok = [accept(None, s.ends[i]) for i in range(n)]
        starts = [i for i in range(n) if ok[i] and not (ok[i - 1] and accept(s.ends[i - 1], s.ends[i]))]
        for i in starts:
            j = i
            while ok[(j + 1) % n] and accept(s.ends[j % n], s.ends[(j + 1) % n]) and (j + 1 - i) < n:
                j += 1
            yield s, i, j


def _make_pass(s, i, j) -> Pass:
    n = len(s.ends)
    start = s.ends[(i - 1) % n]
    interior = tuple(s.ends[t % n] for t in range(i, j + 1))
    end = s.ends[(j + 1) % n]
    edges = tuple(s.edges[t % n] for t in range(i - 1, j + 1))
    return Pass(start, interior, end, edges)


def _pass_ok(ps: Pass) -> bool:
    inner = set(ps.crossings)
    x, y = ps.start.crossing, ps.end.crossing
    return x != y and x not in inner and y not in inner and len(inner) == ps.k


def find_maximal_passes(p: LinkPresentation, min_length: int = 1) -> list:
    """Every maximal pass with at least ``min_length`` interior crossings.

    Each maximal run of equal poles along a strand gives one pass, bounded by
    the opposite poles before and after it. Runs whose bounding crossings
    coincide, or reappear inside the run, are skipped. Virtual crossings
    are ignored (see :mod:`linkpres.virtual` for the virtual setting).
    """
    out = []

    def same(prev, here):
        if p.kind(here.crossing) != CLASSICAL:
            return False
        return prev is None or prev.pole == here.pole

    for s, i, j in _runs(p, same):
        ps = _make_pass(s, i, j)
        if ps.k < min_length or not _pass_ok(ps):
            continue
        if p.kind(ps.start.crossing) != CLASSICAL or p.kind(ps.end.crossing) != CLASSICAL:
            continue
        out.append(ps)
    out.sort(key=lambda q: (endref_key(q.start), endref_key(q.end)))
    return out


def find_pass(p: LinkPresentation, start, end, passes=None) -> Pass:
    """The maximal pass from ``start`` to ``end`` (either strand direction)."""
    start, end = parse_end(start), parse_end(end)
    for ps in passes if passes is not None else find_maximal_passes(p):
        if (ps.start, ps.end) == (start, end):
            return ps
        if (ps.end, ps.start) == (start, end):
            return ps.reversed()
    raise PresentationError(f"no maximal pass from {start} to {end}")


# -- stripped shadow and adjacent graph ----------------------------------------------


class Stripped:
    """The presentation with a pass's interior spliced out and its arc cut into stubs.

    ``ed`` is an :class:`Editor`; ``stub_x`` and ``stub_y`` are the pendant
    darts at ``x`` and ``y``. ``tip`` is the pendant dart the new arc grows
    from; it starts at ``stub_x``. ``merged`` maps edge ids swallowed by the
    splice to the edges that replaced them, ``spawned`` lists trivial
    components created by the splice.
    """

    def __init__(self, p: LinkPresentation, ps: Pass):
        if not _pass_ok(ps):
            raise PresentationError(f"{ps} is not a usable pass")
        self.source = p
        self.pass_ = ps
        ed = Editor(p)
        dx = _dart_at(p, ps.edges[0], ps.start)
        dy = _dart_at(p, ps.edges[-1], ps.end)
        res = splice(ed, set(ps.crossings), hold=dx)
        held = [(d, t) for d, t, f in res.joins if f is None]
        if not held or {held[0][0], held[0][1]} != {dx, dy}:
            raise PresentationError(f"{ps} does not run from {ps.start} to {ps.end}")
        self._stub(ed, dx, dy)
        self.merged = res.merged
        self.spawned = res.spawned

    @classmethod
    def cut(cls, p: LinkPresentation, d) -> "Stripped":
        """Cut the edge of dart ``d`` into two stubs without removing any crossing.

        The stub replacing ``d`` becomes ``stub_x``.
        """
        st = cls.__new__(cls)
        st.source, st.pass_ = p, None
        st._stub(Editor(p), d, mate(d))
        st.merged, st.spawned = {}, []
        return st

    def _stub(self, ed: Editor, dx, dy):
        self.stub_x = (ed.new_edge(), 0)
        self.stub_y = (ed.new_edge(), 0)
        ed.replace(dx, self.stub_x)
        ed.replace(dy, self.stub_y)
        self.ed = ed
        self.tip = self.stub_x

    @property
    def stubs(self) -> set:
        """Edge ids of the two pendant darts currently present."""
        return {self.tip[0], self.stub_y[0]}

    def faces(self) -> list:
        """Face orbits of the current structure, leaves included."""
        rot = dict(self.ed.rot)
        for e in self.stubs:
            rot[("leaf", e)] = [(e, 1)]
        return trace_orbits(rot)

    def face_index(self, faces=None) -> dict:
        faces = faces if faces is not None else self.faces()
        return {d: i for i, f in enumerate(faces) for d in f}

    def end_of(self, d) -> EndRef:
        name, slot = self.ed.where[d]
        return EndRef(name, self.ed.poles[name][slot])

    def cross(self, d, eps: int, kind: str, name: str) -> None:
        """Grow the arc at ``tip`` across the edge of ``d`` through a new crossing."""
        self.tip = _cross(self.ed, self.tip, d, eps, kind, name)

    def finish(self) -> LinkPresentation:
        """Join ``tip`` to ``stub_y`` and return the validated presentation."""
        q = self.ed.new_edge()
        self.ed.replace(self.tip, (q, 0))
        self.ed.replace(self.stub_y, (q, 1))
        return check(self.ed.build())


def _dart_at(p: LinkPresentation, e: int, end: EndRef):
    for side in (0, 1):
        if p.end_of((e, side)) == end:
            return (e, side)
    raise PresentationError(f"edge {e} does not end at {end}")


@dataclass
class AdjacentGraph:
    """Dual of the stripped shadow.

    ``faces`` are the face orbits (darts); ``arcs[i]`` lists
    ``(j, dart)`` where crossing ``dart`` (which has face ``i`` on its left)
    leads into face ``j``. ``f_x`` / ``f_y`` are the faces holding the stubs.
    """

    stripped: Stripped
    faces: list
    arcs: dict
    f_x: int
    f_y: int

    def distances_to_y(self) -> dict:
        return _bfs(self.arcs, self.f_y)


def _bfs(arcs: dict, goal: int) -> dict:
    dist = {goal: 0}
    queue = deque([goal])
    while queue:
        i = queue.popleft()
        for j, _ in arcs[i]:
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


def _dual_arcs(st: Stripped, faces, index) -> dict:
    arcs = {i: [] for i in range(len(faces))}
    for i, f in enumerate(faces):
        for d in f:
            if d[0] in st.stubs:
                continue
            j = index[mate(d)]
            if j != i:
                arcs[i].append((j, d))
    return arcs


def build_adjacent_graph(p: LinkPresentation, ps: Pass) -> AdjacentGraph:
    """Strip ``ps`` from ``p`` and build the dual graph of what remains."""
    st = Stripped(p, ps)
    faces = st.faces()
    index = st.face_index(faces)
    return AdjacentGraph(st, faces, _dual_arcs(st, faces, index),
                         index[st.stub_x], index[st.stub_y])


@dataclass(frozen=True)
class Route:
    """Faces ``f_x = faces[0], ..., faces[m] = f_y`` and the darts crossed between them.

    ``crossed[j]`` has ``faces[j]`` on its left, so it fixes both the edge
    and the side from which the new arc meets it.
    """

    faces: tuple
    crossed: tuple

    @property
    def m(self) -> int:
        return len(self.crossed)

    @property
    def edges(self) -> tuple:
        return tuple(d[0] for d in self.crossed)


def _step(arcs: dict, dist: dict, here: int):
    return min((j, d[0], d) for j, d in arcs[here] if dist.get(j) == dist[here] - 1)


def shortest_route(g: AdjacentGraph) -> tuple:
    """Breadth-first shortest route from ``f_x`` to ``f_y``; returns ``(route, m)``.

    Ties are broken by taking, at each step, the neighbouring face with the
    smallest index and then the smallest crossed edge id.
    """
    dist = g.distances_to_y()
    if g.f_x not in dist:
        raise PresentationError("f_y is unreachable from f_x")
    faces, crossed = [g.f_x], []
    here = g.f_x
    while here != g.f_y:
        here, _, d = _step(g.arcs, dist, here)
        faces.append(here)
        crossed.append(d)
    route = Route(tuple(faces), tuple(crossed))
    return route, route.m


# -- insertion ---------------------------------------------------------------------------


def _cross(ed: Editor, stub, d, eps: int, kind: str, name: str):
    """Let the arc ending in ``stub`` cross the edge of dart ``d``; return the new stub.

    ``d`` must have the stub's face on its left. The new crossing holds,
    anticlockwise, the far half of the crossed edge, the incoming arc, the
    near half of the crossed edge and the outgoing arc.
    """
    nb, pin, nstub = ed.new_edge(), ed.new_edge(), ed.new_edge()
    ed.replace(mate(d), (nb, 1))
    ed.replace(stub, (pin, 0))
    ed.add(name, kind, [(nb, 0), (pin, 1), mate(d), (nstub, 0)], [-eps, eps, -eps, eps])
    return (nstub, 0)


@dataclass
class ReplacementResult:
    presentation: LinkPresentation
    k: int
    m: int
    spawned: list = field(default_factory=list)
    names: tuple = ()

    @property
    def kind(self) -> str:
        return classify_replacement(self.k, self.m)


def replace_pass(p: LinkPresentation, ps: Pass, route: Route | None = None, names=None,
                 kind: str = CLASSICAL, sign: int | None = None) -> ReplacementResult:
    """Pass replacement with full bookkeeping.

    Args:
        p: the presentation.
        ps: the pass to replace.
        route: a route in the adjacent graph of ``ps``; the shortest one if omitted.
        names: names for the new crossings, in route order.
        kind: kind of the new crossings.
        sign: pole of the new arc at its crossings; defaults to the pass sign.

    Returns:
        A :class:`ReplacementResult`; ``presentation.n == n - k + m + len(spawned)``.
    """
    g = build_adjacent_graph(p, ps)
    if route is None:
        route, _ = shortest_route(g)
    _check_route(g, route)
    st = g.stripped
    eps = ps.sign if sign is None else sign
    names = _names_for(st.ed, route.m, names)
    for d, name in zip(route.crossed, names):
        st.cross(d, eps, kind, name)
    return ReplacementResult(st.finish(), ps.k, route.m, list(st.spawned), tuple(names))


def apply_pass_replacement(p: LinkPresentation, ps: Pass, route: Route | None = None,
                           names=None) -> LinkPresentation:
    """Replace the maximal pass ``ps`` by ``route`` (the shortest one if omitted)."""
    if not ps.maximal:
        raise PresentationError(f"{ps} is not maximal")
    return replace_pass(p, ps, route, names).presentation


def _check_route(g: AdjacentGraph, route: Route):
    if not route.faces or route.faces[0] != g.f_x or route.faces[-1] != g.f_y:
        raise PresentationError("route does not join f_x to f_y")
    if len(route.faces) != route.m + 1:
        raise PresentationError("route faces and crossings disagree")
    index = {d: i for i, f in enumerate(g.faces) for d in f}
    for j, d in enumerate(route.crossed):
        if d not in index or d[0] in g.stripped.stubs:
            raise PresentationError(f"route is stale at dart {d}")
        if index[d] != route.faces[j] or index[mate(d)] != route.faces[j + 1]:
            raise PresentationError(f"route step {j} does not join its faces")
        if d[0] in {c[0] for c in route.crossed[:j]}:
            raise PresentationError("route crosses an edge twice; use a scripted route")


def _names_for(ed: Editor, m: int, names) -> list:
    if names:
        names = list(names)
        if len(names) != m:
            raise PresentationError(f"{len(names)} names for {m} new crossings")
        for n in names:
            ed.reserve(n)
        return names
    return [ed.new_name("y") for _ in range(m)]


# -- scripted replacements -------------------------------------------------------------


def _resolve(st: Stripped, pair, source: LinkPresentation):
    """The dart on the face of ``st.tip`` whose edge joins the two ends in ``pair``."""
    want = {parse_end(pair[0]), parse_end(pair[1])}
    faces = st.faces()
    face = faces[st.face_index(faces)[st.tip]]
    for d in face:
        if d[0] in st.stubs:
            continue
        if {st.end_of(d), st.end_of(mate(d))} == want:
            return d
    # the pair may name an edge of the source that the splice merged
    for e in source.edge_ids:
        if set(source.edge_ends(e)) == want and e in st.merged:
            f = st.merged[e]
            for d in face:
                if d[0] == f:
                    return d
    raise PresentationError(f"no edge {pair[0]}-{pair[1]} on the current face")


def apply_scripted(p: LinkPresentation, start, end, crossed=(), names=(), kind: str = CLASSICAL,
                   sign: int | None = None) -> ReplacementResult:
    """Replace the maximal pass ``start .. end`` by a route given as crossed edges.

    Each crossed edge is named by its two ends and looked up on the face the
    new arc is currently in, so a route may cross the same edge more than
    once.
    """
    ps = find_pass(p, start, end)
    st = Stripped(p, ps)
    eps = ps.sign if sign is None else sign
    names = _names_for(st.ed, len(crossed), names or None)
    for pair, name in zip(crossed, names):
        st.cross(_resolve(st, pair, p), eps, kind, name)
    index = st.face_index()
    if index[st.tip] != index[st.stub_y]:
        raise PresentationError("scripted route does not end on the face of the end stub")
    return ReplacementResult(st.finish(), ps.k, len(crossed), list(st.spawned), tuple(names))


# -- replacement of an edge surrounding a crossing -----------------------------------------


def replace_edge_surrounding(p: LinkPresentation, e: int, z: str, eps: int = PLUS,
                             names=None) -> LinkPresentation:
    """Reroute edge ``e`` once around crossing ``z``, crossing its four edges.

    ``e`` and ``z`` must share a face. The new arc leaves from the end of
    ``e`` that comes first on that face, circles ``z`` clockwise, and
    meets each edge end at ``z`` with pole ``eps``. Loops at ``z`` are crossed
    twice, once near each end.
    """
    if z not in p.crossings or not p.has_dart((e, 0)):
        raise PresentationError("unknown edge or crossing")
    target = None
    for f in trace_faces(p):
        for i, d in enumerate(f.darts):
            if d[0] != e:
                continue
            for t in range(1, len(f.darts)):
                nxt = f.darts[(i + t) % len(f.darts)]
                if p.position(nxt)[0] == z and nxt[0] != e:
                    target = (d, nxt)
                    break
            if target:
                break
        if target:
            break
    if target is None:
        raise PresentationError(f"edge {e} and crossing {z} share no face")
    d, dz = target
    if p.position(d)[0] == z or p.position(mate(d))[0] == z:
        raise PresentationError(f"edge {e} is incident to {z}")
    st = Stripped.cut(p, d)
    names = _names_for(st.ed, 4, names)
    # the arc first crosses the edge of dz, which lies between z and the start of
    # the arc on the face boundary, then walks clockwise around z back into the face
    first = st.ed.where[dz][1]
    for t, name in enumerate(names):
        st.cross(st.ed.rot[z][(first - t) % 4], eps, CLASSICAL, name)
    index = st.face_index()
    if index[st.tip] != index[st.stub_y]:
        raise PresentationError("rerouted arc does not close up")
    return st.finish()


# -- random long replacements ------------------------------------------------------------


def random_long_replacement(p: LinkPresentation, rng: random.Random, max_detour: int = 3):
    """Replace a random maximal pass by a random walk through faces.

    The walk takes a few random steps and then heads for ``f_y`` along a
    shortest route, so the result is usually a long replacement. Returns
    ``(label, presentation)`` or ``None`` when ``p`` has no maximal pass.
    """
    passes = find_maximal_passes(p)
    if not passes:
        return None
    ps = rng.choice(passes)
    st = Stripped(p, ps)
    m = 0
    for _ in range(rng.randint(1, max_detour)):
        faces = st.faces()
        index = st.face_index(faces)
        here = index[st.tip]
        options = [d for d in faces[here] if d[0] not in st.stubs and index[mate(d)] != here]
        if not options:
            break
        st.cross(rng.choice(options), ps.sign, CLASSICAL, st.ed.new_name("y"))
        m += 1
    while True:
        faces = st.faces()
        index = st.face_index(faces)
        here, goal = index[st.tip], index[st.stub_y]
        if here == goal:
            break
        arcs = _dual_arcs(st, faces, index)
        d = _step(arcs, _bfs(arcs, goal), here)[2]
        st.cross(d, ps.sign, CLASSICAL, st.ed.new_name("y"))
        m += 1
    return (f"pass:{classify_replacement(ps.k, m)}", st.finish())


def route_from_darts(g: AdjacentGraph, crossed) -> Route:
    """The route of ``g`` that crosses ``crossed`` in order, starting at ``f_x``."""
    index = {d: i for i, f in enumerate(g.faces) for d in f}
    faces = [g.f_x]
    for d in crossed:
        if d not in index or index[d] != faces[-1]:
            raise PresentationError(f"route is stale at dart {d}")
        faces.append(index[mate(d)])
    return Route(tuple(faces), tuple(crossed))
