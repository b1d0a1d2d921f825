"""
The classical move calculus on presentations.

Every move is a pure function returning a new, validated presentation.
Sites are small frozen records; appliers re-check their preconditions, so a
site found on one presentation may safely be offered to another.

Deleting crossings is done by one primitive, :func:`splice`, which walks
each surviving strand end through the deleted crossings and reconnects it
to the next surviving end. The clasp removal, the loop removal and the pass
stripping of a pass replacement are all instances of it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .core import (
    CLASSICAL,
    MINUS,
    PLUS,
    Editor,
    EndRef,
    Face,
    LinkPresentation,
    PresentationError,
    check,
    mate,
    natural_key,
    trace_faces,
    trivial_crossing,
)


# -- splicing ------------------------------------------------------------------


@dataclass
class SpliceResult:
    joins: list
    spawned: list
    merged: dict


def splice(ed: Editor, removed, hold=None) -> SpliceResult:
    """Delete crossings ``removed`` from ``ed`` and reconnect the strands.

    Each dart of a surviving crossing whose edge leads into a deleted
    crossing is followed straight through the deleted crossings until a
    surviving dart is reached, and the two are joined by a new edge. A
    closed curve that visits only deleted crossings becomes a trivial
    component named after its first crossing.

    Args:
        ed: the editor to modify in place.
        removed: names of the crossings to delete.
        hold: optional surviving dart whose join is returned but not made.

    Returns:
        A :class:`SpliceResult` with the joins ``(d, t, new edge id)``
        (``None`` for the held join), the names of spawned trivial
        components, and a map from each swallowed edge id to the new edge.
    """
    removed = set(removed)
    for name in removed:
        if name not in ed.rot:
            raise PresentationError(f"no crossing {name}")
    seen = set()
    pairs = []
    for name in sorted(ed.rot, key=natural_key):
        if name in removed:
            continue
        for d in ed.rot[name]:
            if d in seen or ed.where[mate(d)][0] not in removed:
                continue
            path = [d[0]]
            a = mate(d)
            while ed.where[a][0] in removed:
                seen.add(a)
                b = ed.opposite(a)
                seen.add(b)
                path.append(b[0])
                a = mate(b)
            seen.add(d)
            seen.add(a)
            pairs.append((d, a, path))
    loops = []
    for name in sorted(removed, key=natural_key):
        for d in ed.rot[name]:
            if d in seen:
                continue
            curve = [name]
            a = d
            while a not in seen:
                seen.add(a)
                b = ed.opposite(a)
                seen.add(b)
                a = mate(b)
                curve.append(ed.where[a][0])
            loops.append(curve)
    for name in removed:
        ed.remove(name)
    joins, merged = [], {}
    for d, t, path in pairs:
        if hold is not None and (d == hold or t == hold):
            joins.append((d, t, None))
            continue
        f = ed.new_edge()
        ed.replace(d, (f, 0))
        ed.replace(t, (f, 1))
        for e in path:
            merged[e] = f
        joins.append((d, t, f))
    spawned = []
    for curve in loops:
        name = min(curve, key=natural_key)
        e1, e2 = ed.new_edge(), ed.new_edge()
        c = trivial_crossing(name, e1, e2)
        ed.add(name, CLASSICAL, list(c.rot), list(c.poles))
        spawned.append(name)
    return SpliceResult(joins, spawned, merged)


# -- sites ----------------------------------------------------------------------


@dataclass(frozen=True)
class Omega0Site:
    """Two edges of one face, and the pole ``s`` the ``e_x`` strand takes."""

    e_x: int
    e_y: int
    face: Face
    s: int = PLUS

    def darts(self) -> tuple:
        dx = next(d for d in self.face.darts if d[0] == self.e_x)
        dy = next(d for d in self.face.darts if d[0] == self.e_y)
        return dx, dy


@dataclass(frozen=True)
class Omega1Site:
    """A clasp: ``x`` and ``y`` joined by ``e_plus = (x, y)`` and ``e_minus = (x-, y-)``."""

    x: str
    y: str
    e_plus: int
    e_minus: int


@dataclass(frozen=True)
class Omega2Site:
    """A crossing ``x`` with a loop edge ``e = (x, x-)``."""

    x: str
    e: int


@dataclass(frozen=True)
class TriangleSite:
    """A triangular face, given by its three darts in face order."""

    darts: tuple

    @property
    def edges(self) -> tuple:
        return tuple(d[0] for d in self.darts)


# -- Omega 0 ---------------------------------------------------------------------


def apply_omega0(p: LinkPresentation, site: Omega0Site, names=None, kind: str = CLASSICAL,
                 y_pole=None) -> LinkPresentation:
    """Insert a clasp of two new crossings on two edges of a common face.

    With ``e_x != e_y`` the ``e_x`` strand is pushed across the face and
    over (pole ``s``) or under the ``e_y`` strand twice. With ``e_x = e_y``
    the edge is subdivided as ``x^s, y^s, y^-s, x^-s`` so that it crosses
    itself twice inside the face.

    Args:
        p: the presentation.
        site: edges, face and sign.
        names: optional pair of names for the new crossings.
        kind: kind of the new crossings.
        y_pole: pole of the ``e_y`` strand; defaults to ``-s``. Virtual
            clasps may use any combination.

    Returns:
        The presentation with two more crossings.
    """
    faces = trace_faces(p)
    if site.face not in faces:
        raise PresentationError("face of the site is not a face of the presentation")
    if site.e_x not in site.face.edges or site.e_y not in site.face.edges:
        raise PresentationError("edges are not on the given face")
    s = site.s
    t = -s if y_pole is None else y_pole
    ed = Editor(p)
    if names:
        n1, n2 = names
        ed.reserve(n1)
        ed.reserve(n2)
    else:
        n1, n2 = ed.new_name("x"), ed.new_name("x")
    dx, dy = site.darts()
    if site.e_x != site.e_y:
        # the e_x strand runs u_x -> P1 -> P2 -> v_x, the e_y strand u_y -> P2 -> P1 -> v_y
        f1, f2, g1, g2 = (ed.new_edge() for _ in range(4))
        ed.replace(mate(dx), (f2, 1))
        ed.replace(mate(dy), (g2, 1))
        ed.add(n1, kind, [(g1, 0), (f1, 0), (g2, 0), mate(dx)], [t, s, t, s])
        ed.add(n2, kind, [mate(dy), (f1, 1), (g1, 1), (f2, 0)], [t, s, t, s])
    else:
        # drawn along the reverse dart so that the curl lies inside the face
        d = mate(dx)
        e2, e3, e4, e5 = (ed.new_edge() for _ in range(4))
        ed.replace(mate(d), (e5, 1))
        ed.add(n1, kind, [(e2, 0), (e5, 0), mate(d), (e4, 1)], [s, -s, s, -s])
        ed.add(n2, kind, [(e3, 0), (e3, 1), (e2, 1), (e4, 0)], [s, -s, s, -s])
    return check(ed.build())


def omega0_sites(p: LinkPresentation, s: int = PLUS) -> list:
    """Every ``(e_x, e_y)`` pair on every face, including ``e_x = e_y``."""
    out = []
    for f in trace_faces(p):
        edges = []
        for e in f.edges:
            if e not in edges:
                edges.append(e)
        for i, a in enumerate(edges):
            for b in edges[i:]:
                out.append(Omega0Site(a, b, f, s))
    return out


def random_omega0_site(p: LinkPresentation, rng: random.Random) -> Omega0Site:
    """A uniformly chosen face, then two of its edges and a sign."""
    faces = trace_faces(p)
    f = rng.choice(faces)
    e_x = rng.choice(f.edges)
    e_y = rng.choice(f.edges)
    return Omega0Site(e_x, e_y, f, rng.choice((PLUS, MINUS)))


# -- Omega 1 and Omega 2 ------------------------------------------------------------


def _has_pole_loop(p: LinkPresentation, name: str) -> bool:
    return bool(p.edges_between(EndRef(name, PLUS), EndRef(name, MINUS)))


def omega1_sites(p: LinkPresentation, any_poles: bool = False) -> list:
    """All clasps ``(x, y)`` with ``x < y``.

    With ``any_poles`` (used for virtual crossings) the clasp edges may be
    ``(x, y^s)`` and ``(x-, y^-s)`` for either ``s``.
    """
    out = []
    for x in p.names:
        if _has_pole_loop(p, x):
            continue
        for d in p.darts_of_pole(EndRef(x, PLUS)):
            far = p.end_of(mate(d))
            y = far.crossing
            if y == x or natural_key(y) <= natural_key(x) or _has_pole_loop(p, y):
                continue
            if far.pole == MINUS and not any_poles:
                continue
            minus = p.edges_between(EndRef(x, MINUS), far.opposite)
            if minus:
                site = Omega1Site(x, y, d[0], minus[0])
                if site not in out:
                    out.append(site)
    return out


def apply_omega1(p: LinkPresentation, site: Omega1Site) -> LinkPresentation:
    """Delete the clasp crossings ``x`` and ``y`` and reconnect both strands."""
    for name in (site.x, site.y):
        if name in p.crossings and p.kind(name) != CLASSICAL:
            raise PresentationError(f"{name} is virtual; use the U1 move")
    return remove_clasp(p, site, same_poles=True)


def remove_clasp(p: LinkPresentation, site: Omega1Site, same_poles: bool = True) -> LinkPresentation:
    """Check a clasp site and splice out its two crossings.

    With ``same_poles`` the clasp edges must be ``(x, y)`` and ``(x-, y-)``;
    otherwise ``(x, y^s)`` and ``(x-, y^-s)`` for either ``s``.
    """
    x, y = site.x, site.y
    if x == y or x not in p.crossings or y not in p.crossings:
        raise PresentationError("stale clasp site")
    if _has_pole_loop(p, x) or _has_pole_loop(p, y):
        raise PresentationError("a clasp crossing carries a loop")
    y_poles = set()
    for e, pole in ((site.e_plus, PLUS), (site.e_minus, MINUS)):
        if not p.has_dart((e, 0)):
            raise PresentationError("stale clasp site")
        ends = set(p.edge_ends(e))
        if EndRef(x, pole) not in ends or len(ends) != 2:
            raise PresentationError("stale clasp site")
        (far,) = ends - {EndRef(x, pole)}
        if far.crossing != y:
            raise PresentationError("stale clasp site")
        y_poles.add(far.pole * pole)
    if len(y_poles) != 1 or (same_poles and y_poles != {PLUS}):
        raise PresentationError("clasp poles do not match")
    ed = Editor(p)
    splice(ed, {x, y})
    return check(ed.build())


def omega2_sites(p: LinkPresentation) -> list:
    """All loops ``(x, x-)`` at crossings that are not a whole trivial component."""
    out = []
    for x in p.names:
        loops = p.edges_between(EndRef(x, PLUS), EndRef(x, MINUS))
        if not loops:
            continue
        others = [d for d in p.crossings[x].rot if d[0] not in loops]
        if others:
            out.append(Omega2Site(x, loops[0]))
    return out


def apply_omega2(p: LinkPresentation, site: Omega2Site) -> LinkPresentation:
    """Delete a crossing carrying a loop and join its two remaining edges."""
    x = site.x
    if x not in p.crossings or not p.has_dart((site.e, 0)):
        raise PresentationError("stale loop site")
    ends = p.edge_ends(site.e)
    if {r.crossing for r in ends} != {x} or ends[0].pole == ends[1].pole:
        raise PresentationError("stale loop site")
    if all(p.position(mate(d))[0] == x for d in p.crossings[x].rot):
        raise PresentationError(f"the loop at {x} is a whole trivial component")
    ed = Editor(p)
    splice(ed, {x})
    return check(ed.build())


# -- Omega 3 -------------------------------------------------------------------------


def triangle_sites(p: LinkPresentation, legal_only: bool = True) -> list:
    """Triangular faces on three distinct crossings.

    With ``legal_only`` only faces that are not alternating (some triangle
    edge joins equal poles) are returned; those are exactly the faces that
    match the pattern ``((x^r, y^r), (y^-r, z^-s), (z^s, x^-r))``.
    """
    out = []
    for f in trace_faces(p):
        if len(f) != 3:
            continue
        if len({p.position(d)[0] for d in f.darts}) != 3:
            continue
        site = TriangleSite(f.darts)
        if not legal_only or _triangle_legal(p, site):
            out.append(site)
    return out


def _triangle_legal(p: LinkPresentation, site: TriangleSite) -> bool:
    return any(p.end_of(d).pole == p.end_of(mate(d)).pole for d in site.darts)


def _check_triangle(p: LinkPresentation, site: TriangleSite):
    if len(site.darts) != 3 or Face(tuple(site.darts)) not in _rotations_of_faces(p):
        raise PresentationError("site is not a triangular face")
    if len({p.position(d)[0] for d in site.darts}) != 3:
        raise PresentationError("triangle crossings are not distinct")


def _rotations_of_faces(p: LinkPresentation) -> set:
    out = set()
    for f in trace_faces(p):
        ds = f.darts
        for i in range(len(ds)):
            out.add(Face(ds[i:] + ds[:i]))
    return out


def flip_triangle(p: LinkPresentation, site: TriangleSite) -> LinkPresentation:
    """Move each strand of a triangle across the opposite crossing.

    Crossing ``v`` keeps its name, its two triangle darts and their poles
    (so it still joins the same two strands with the same over/under
    roles); its two outer darts are taken from the neighbouring crossings.
    No pole condition is checked here.
    """
    _check_triangle(p, site)
    t = list(site.darts)
    names = [p.position(d)[0] for d in t]
    out_d = {names[i]: t[i] for i in range(3)}
    in_d = {names[i]: mate(t[i - 1]) for i in range(3)}

    def opp(d):
        return p.opposite_dart(d)

    ed = Editor(p)
    for i, v in enumerate(names):
        u, w = names[i - 1], names[(i + 1) % 3]
        o, n = out_d[v], in_d[v]
        po, pn = p.end_of(o).pole, p.end_of(n).pole
        ed.add(v, p.kind(v), [opp(in_d[w]), opp(out_d[u]), o, n], [po, pn, po, pn])
    return check(ed.build())


def apply_omega3(p: LinkPresentation, site: TriangleSite) -> LinkPresentation:
    """The third Reidemeister move on a non-alternating triangular face."""
    _check_triangle(p, site)
    if any(p.kind(p.position(d)[0]) != CLASSICAL for d in site.darts):
        raise PresentationError("triangle has virtual crossings")
    if not _triangle_legal(p, site):
        raise PresentationError("triangle pole pattern does not allow the move")
    return flip_triangle(p, site)


def flipped_site(p: LinkPresentation, q: LinkPresentation, site: TriangleSite) -> TriangleSite:
    """The triangle of ``q = apply_omega3(p, site)`` corresponding to ``site``.

    The triangle edges keep their ids and traversal direction, so the same
    darts describe the new triangle.
    """
    return TriangleSite(tuple(site.darts))


# -- enumeration -----------------------------------------------------------------------


def enumerate_sites(p: LinkPresentation) -> tuple:
    """``(omega1 sites, omega2 sites, legal triangle sites)``."""
    return omega1_sites(p), omega2_sites(p), triangle_sites(p)


MOVE_DELTAS = {"omega0": 2, "omega1": -2, "omega2": -1, "omega3": 0}
