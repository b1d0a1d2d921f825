"""
Moves and pass replacement for virtual links.

A virtual crossing has no over or under strand, so its two poles are
interchangeable. The moves U0 to U4 are the classical moves with kind
conditions attached:

* U0 inserts a clasp of two classical crossings (the strand keeps one pole
  at both) or of two virtual crossings (any poles).
* U1 removes such a clasp.
* U2 removes a loop at a crossing of either kind.
* U3 moves a strand across a triangle whose crossings are all classical
  (with the classical pole pattern) or all virtual.
* U4 moves the strand joining two virtual crossings across a classical one.

A classical pass may be rerouted with classical crossings only when one
side of the closed curve made of the old and the new arc holds no virtual
crossing. A pass of virtual crossings between two classical ends may be
rerouted anywhere with virtual crossings.
"""
from __future__ import annotations

from collections import deque

from .core import (
    CLASSICAL,
    VIRTUAL,
    LinkPresentation,
    PresentationError,
    endref_key,
    fresh_name,
    mate,
    swap_poles,
)
from .moves import (
    Omega0Site,
    Omega1Site,
    Omega2Site,
    TriangleSite,
    _triangle_legal,
    apply_omega0,
    apply_omega2,
    flip_triangle,
    omega0_sites,
    omega1_sites,
    omega2_sites,
    remove_clasp,
    triangle_sites,
)
from .passes import (
    Pass,
    ReplacementResult,
    Route,
    _make_pass,
    _pass_ok,
    _runs,
    build_adjacent_graph,
    find_maximal_passes,
    replace_pass,
    shortest_route,
)

U_MOVES = ("U0", "U1", "U2", "U3", "U4")
U_DELTAS = {"U0": 2, "U1": -2, "U2": -1, "U3": 0, "U4": 0}


# -- sites ------------------------------------------------------------------------------


def _kinds(p: LinkPresentation, site: TriangleSite) -> list:
    return [p.kind(p.position(d)[0]) for d in site.darts]


def u1_sites(p: LinkPresentation) -> list:
    """Clasps of two classical crossings with matching poles, or of two virtual ones."""
    out = [s for s in omega1_sites(p) if p.kind(s.x) == p.kind(s.y) == CLASSICAL]
    out += [s for s in omega1_sites(p, any_poles=True)
            if p.kind(s.x) == p.kind(s.y) == VIRTUAL]
    return out


def u2_sites(p: LinkPresentation) -> list:
    return omega2_sites(p)


def u3_sites(p: LinkPresentation) -> list:
    out = []
    for site in triangle_sites(p, legal_only=False):
        kinds = set(_kinds(p, site))
        if kinds == {VIRTUAL} or (kinds == {CLASSICAL} and _triangle_legal(p, site)):
            out.append(site)
    return out


def u4_sites(p: LinkPresentation) -> list:
    return [site for site in triangle_sites(p, legal_only=False)
            if sorted(_kinds(p, site)) == [CLASSICAL, VIRTUAL, VIRTUAL]]


def u_sites(p: LinkPresentation, move: str) -> list:
    """Sites of ``move`` in ``p``; U0 sites are the clasp insertion sites of every face."""
    if move == "U0":
        return omega0_sites(p)
    table = {"U1": u1_sites, "U2": u2_sites, "U3": u3_sites, "U4": u4_sites}
    if move not in table:
        raise PresentationError(f"unknown move {move}")
    return table[move](p)


# -- moves ------------------------------------------------------------------------------


def apply_u_move(p: LinkPresentation, move: str, site, kind: str = CLASSICAL, names=None,
                 second_pole: int | None = None) -> LinkPresentation:
    """Apply one of U0 to U4.

    Args:
        p: the presentation.
        move: ``"U0"`` ... ``"U4"``.
        site: an :class:`Omega0Site` (U0), :class:`Omega1Site` (U1),
            :class:`Omega2Site` (U2) or :class:`TriangleSite` (U3, U4).
        kind: kind of the two crossings inserted by U0.
        names: names of the two crossings inserted by U0.
        second_pole: pole of the ``e_x`` strand at the second U0 crossing.
            Classical clasps need it equal to ``site.s``; virtual ones may
            use either pole.

    Returns:
        The rewritten presentation.

    Raises:
        PresentationError: when the kind condition or the site's structural
            condition fails.
    """
    if move == "U0":
        if not isinstance(site, Omega0Site):
            raise PresentationError("U0 needs an insertion site")
        if kind not in (CLASSICAL, VIRTUAL):
            raise PresentationError(f"unknown kind {kind}")
        if kind == CLASSICAL and second_pole not in (None, site.s):
            raise PresentationError("a classical clasp keeps one pole along the strand")
        if not names:
            first = fresh_name(p, "x")
            names = (first, fresh_name(p, "x", reserved=[first]))
        q = apply_omega0(p, site, names=names, kind=kind)
        if kind == VIRTUAL and second_pole == -site.s:
            q = swap_poles(q, names[1])
        return q
    if move == "U1":
        if not isinstance(site, Omega1Site):
            raise PresentationError("U1 needs a clasp site")
        kinds = {p.kind(site.x), p.kind(site.y)} if {site.x, site.y} <= set(p.crossings) else set()
        if len(kinds) != 1:
            raise PresentationError("clasp crossings must share one kind")
        return remove_clasp(p, site, same_poles=kinds == {CLASSICAL})
    if move == "U2":
        if not isinstance(site, Omega2Site):
            raise PresentationError("U2 needs a loop site")
        return apply_omega2(p, site)
    if move in ("U3", "U4"):
        if not isinstance(site, TriangleSite):
            raise PresentationError(f"{move} needs a triangle site")
        kinds = sorted(_kinds(p, site))
        if move == "U3":
            if set(kinds) == {CLASSICAL}:
                if not _triangle_legal(p, site):
                    raise PresentationError("triangle pole pattern does not allow the move")
            elif set(kinds) != {VIRTUAL}:
                raise PresentationError("U3 needs an all-classical or all-virtual triangle")
        elif kinds != [CLASSICAL, VIRTUAL, VIRTUAL]:
            raise PresentationError("U4 needs two virtual crossings and one classical crossing")
        return flip_triangle(p, site)
    raise PresentationError(f"unknown move {move}")


# -- passes -----------------------------------------------------------------------------


def find_virtual_passes(p: LinkPresentation) -> list:
    """Runs of virtual crossings along a strand between two classical crossings."""
    out = []

    def virtual(prev, here):
        return p.kind(here.crossing) == VIRTUAL

    for s, i, j in _runs(p, virtual):
        ps = _make_pass(s, i, j)
        if not _pass_ok(ps):
            continue
        if p.kind(ps.start.crossing) != CLASSICAL or p.kind(ps.end.crossing) != CLASSICAL:
            continue
        out.append(ps)
    out.sort(key=lambda q: (endref_key(q.start), endref_key(q.end)))
    return out


def find_maximal_passes_virtual(p: LinkPresentation) -> list:
    """Maximal passes in the virtual setting.

    These are the classical maximal passes (interior classical with one
    pole, ends classical with the other) and the virtual passes. Runs that
    mix kinds are not passes.
    """
    return find_maximal_passes(p) + find_virtual_passes(p)


def pass_kind(p: LinkPresentation, ps: Pass) -> str:
    kinds = {p.kind(c) for c in ps.crossings}
    if len(kinds) != 1:
        raise PresentationError(f"{ps} mixes classical and virtual crossings")
    return kinds.pop()


def region_sides(p: LinkPresentation, ps: Pass, route: Route) -> tuple | None:
    """Crossings on the two sides of the curve made of ``ps`` and ``route``.

    The old arc is followed through the stripped shadow by crossing, for
    each removed crossing, the edge its transverse strand was merged into.
    Together with the route it is a closed walk in the dual, and two
    crossings joined by an edge lie on the same side exactly when the walk
    crosses that edge an even number of times.

    Returns:
        ``(side_a, side_b, loose)``: sets of crossing names, where ``loose``
        holds crossings of other components, whose side is not determined.
        ``None`` if the old arc cannot be followed.
    """
    g = build_adjacent_graph(p, ps)
    st = g.stripped
    index = {d: i for i, f in enumerate(g.faces) for d in f}
    count = {}
    here = g.f_x
    for z in ps.interior:
        cross = {st.merged.get(d[0]) for d in p.darts_of_pole(z.opposite)} - {None}
        if len(cross) != 1:
            # the transverse strand closed up inside the pass
            continue
        (f,) = cross
        step = [d for d in ((f, 0), (f, 1)) if index.get(d) == here]
        if not step:
            return None
        d = step[0]
        count[f] = count.get(f, 0) + 1
        here = index[mate(d)]
    if here != g.f_y:
        return None
    for d in route.crossed:
        count[d[0]] = count.get(d[0], 0) + 1
    ed = st.ed
    x, y = ps.start.crossing, ps.end.crossing
    color = {x: 0}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for d in ed.rot[v]:
            w = ed.where.get(mate(d))
            if w is None:
                continue
            c = color[v] ^ (count.get(d[0], 0) % 2)
            if w[0] not in color:
                color[w[0]] = c
                queue.append(w[0])
    sides = ({v for v, c in color.items() if c == 0} - {x, y},
             {v for v, c in color.items() if c == 1} - {x, y})
    loose = set(ed.rot) - set(color)
    return sides[0], sides[1], loose


def classical_reroute_allowed(p: LinkPresentation, ps: Pass, route: Route) -> bool:
    """True when one side of the rerouting region holds only classical crossings."""
    found = region_sides(p, ps, route)
    if found is None:
        return False
    a, b, loose = found
    if any(p.kind(v) == VIRTUAL for v in loose if v in p.crossings):
        return False
    return not any(p.kind(v) == VIRTUAL for v in a if v in p.crossings) or \
        not any(p.kind(v) == VIRTUAL for v in b if v in p.crossings)


def virtual_replace_pass(p: LinkPresentation, ps: Pass, route: Route | None = None,
                         new_kind: str | None = None, names=None) -> ReplacementResult:
    """Kind-aware pass replacement with full bookkeeping.

    Args:
        p: the presentation.
        ps: a classical maximal pass or a virtual pass.
        route: a route of the adjacent graph; the shortest one if omitted.
        new_kind: kind of the new crossings; defaults to the kind of the
            pass interior, which is also the only kind allowed.
        names: names of the new crossings.

    Returns:
        A :class:`ReplacementResult`.

    Raises:
        PresentationError: when the kind condition fails.
    """
    kind = pass_kind(p, ps)
    new_kind = kind if new_kind is None else new_kind
    if new_kind != kind:
        raise PresentationError(f"a {kind} pass must be rerouted with {kind} crossings")
    if p.kind(ps.start.crossing) != CLASSICAL or p.kind(ps.end.crossing) != CLASSICAL:
        raise PresentationError("pass ends must be classical")
    if route is None:
        route, _ = shortest_route(build_adjacent_graph(p, ps))
    if kind == CLASSICAL:
        if not ps.maximal:
            raise PresentationError(f"{ps} is not maximal")
        if not p.is_classical() and not classical_reroute_allowed(p, ps, route):
            raise PresentationError("the rerouting region holds virtual crossings on both sides")
        return replace_pass(p, ps, route, names)
    return replace_pass(p, ps, route, names, kind=VIRTUAL)


def apply_virtual_pass_replacement(p: LinkPresentation, ps: Pass, route: Route | None = None,
                                   new_kind: str | None = None, names=None) -> LinkPresentation:
    """Replace ``ps`` by ``route`` with crossings of kind ``new_kind``."""
    return virtual_replace_pass(p, ps, route, new_kind, names).presentation
