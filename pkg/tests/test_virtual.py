"""Virtual crossings: U moves, kind gates and kind-aware pass replacement."""
from collections import deque

import pytest

from linkpres import corpus
from linkpres.core import (
    CLASSICAL,
    MINUS,
    PLUS,
    VIRTUAL,
    Crossing,
    LinkPresentation,
    PresentationError,
    canonical_code,
    is_isomorphic,
    mate,
    swap_poles,
    trace_faces,
    validate,
    vef,
)
from linkpres.moves import Omega0Site
from linkpres.passes import build_adjacent_graph, find_maximal_passes, replace_pass, route_from_darts, shortest_route
from linkpres.virtual import (
    U_DELTAS,
    apply_u_move,
    classical_reroute_allowed,
    find_maximal_passes_virtual,
    find_virtual_passes,
    pass_kind,
    u1_sites,
    u3_sites,
    u4_sites,
    u_sites,
    virtual_replace_pass,
)


def _distinct_site(p):
    for f in trace_faces(p):
        edges = list(dict.fromkeys(f.edges))
        if len(edges) >= 2:
            return Omega0Site(edges[0], edges[1], f)
    raise AssertionError("no face with two edges")


def _blocked_instance():
    for seed in range(100):
        p = corpus.random_presentation(seed, 5, virtual=True)
        if p.is_classical():
            continue
        for ps in find_maximal_passes(p):
            route, _ = shortest_route(build_adjacent_graph(p, ps))
            if not classical_reroute_allowed(p, ps, route):
                return p, ps, route
    raise AssertionError("no blocked reroute found")


@pytest.mark.parametrize("second_pole", [PLUS, MINUS])
def test_virtual_clasp_roundtrip(second_pole):
    o = corpus.make_virtual_kink()
    q = apply_u_move(o, "U0", _distinct_site(o), kind=VIRTUAL, second_pole=second_pole)
    assert q.n == 3 and validate(q).ok
    assert sum(q.kind(n) == VIRTUAL for n in q.names) == 3
    (site,) = [s for s in u1_sites(q) if "v" not in (s.x, s.y)]
    assert is_isomorphic(apply_u_move(q, "U1", site), o)


def test_virtual_clasp_on_classical_unknot(trivial):
    q = apply_u_move(trivial, "U0", _distinct_site(trivial), kind=VIRTUAL)
    assert q.n == 3
    assert sorted(q.kind(n) for n in q.names) == [CLASSICAL, VIRTUAL, VIRTUAL]
    assert q.n - trivial.n == U_DELTAS["U0"]


def test_classical_clasp_keeps_one_pole(trivial):
    site = _distinct_site(trivial)
    with pytest.raises(PresentationError):
        apply_u_move(trivial, "U0", site, kind=CLASSICAL, second_pole=-site.s)


def test_u1_rejects_mixed_clasp(trivial):
    q = apply_u_move(trivial, "U0", _distinct_site(trivial), kind=VIRTUAL)
    site = u1_sites(q)[0]
    mixed = dict(q.crossings)
    c = mixed[site.x]
    mixed[site.x] = Crossing(c.name, CLASSICAL, c.rot, c.poles)
    with pytest.raises(PresentationError):
        apply_u_move(LinkPresentation(mixed), "U1", site)


def test_u4_on_mixed_triangle():
    p = corpus.make_mixed_triangle()
    sites = u4_sites(p)
    assert sites
    for site in sites:
        q = apply_u_move(p, "U4", site)
        assert validate(q).ok
        assert vef(q) == vef(p)


def test_u3_rejects_mixed_triangle():
    p = corpus.make_mixed_triangle()
    assert u3_sites(p) == []
    with pytest.raises(PresentationError):
        apply_u_move(p, "U3", u4_sites(p)[0])


def test_u3_on_virtual_triangle():
    t = corpus.make_trefoil()
    p = LinkPresentation({n: Crossing(n, VIRTUAL, c.rot, c.poles) for n, c in t.crossings.items()})
    sites = u3_sites(p)
    assert sites
    q = apply_u_move(p, "U3", sites[0])
    assert validate(q).ok and vef(q) == vef(p)


def test_unknown_move(trivial):
    with pytest.raises(PresentationError):
        u_sites(trivial, "U9")


def test_pole_swap_isomorphism(items):
    for stem in ("virtual_trefoil", "virtual_kink", "mixed_triangle"):
        p = items[stem]
        for name in p.names:
            if p.kind(name) == VIRTUAL:
                assert is_isomorphic(swap_poles(p, name), p)


def test_virtual_trefoil_passes():
    p = corpus.make_virtual_trefoil()
    assert [str(ps) for ps in find_virtual_passes(p)] == ["b+ c- a+", "b- c+ a-"]
    assert all(pass_kind(p, ps) == VIRTUAL for ps in find_maximal_passes_virtual(p))


def _walks(g, length):
    """Routes of exactly ``length`` steps from f_x to f_y through distinct faces."""
    stubs = g.stripped.stubs
    where = {d: i for i, f in enumerate(g.faces) for d in f}
    out = []
    queue = deque([(g.f_x, ())])
    while queue:
        here, crossed = queue.popleft()
        if len(crossed) == length:
            if here == g.f_y:
                out.append(crossed)
            continue
        visited = {g.f_x} | {where[mate(d)] for d in crossed}
        for d in g.faces[here]:
            if d[0] not in stubs and where[mate(d)] not in visited:
                queue.append((where[mate(d)], crossed + (d,)))
    return out


def test_virtual_pass_detour():
    checked = 0
    for seed in range(200):
        p = corpus.random_presentation(seed, 5, virtual=True)
        for ps in find_virtual_passes(p):
            g = build_adjacent_graph(p, ps)
            _, m = shortest_route(g)
            for crossed in _walks(g, m + 1)[:3]:
                res = virtual_replace_pass(p, ps, route_from_darts(g, crossed))
                q = res.presentation
                assert validate(q).ok
                assert q.n == p.n - res.k + res.m + len(res.spawned)
                assert all(q.kind(n) == VIRTUAL for n in res.names)
                checked += 1
    assert checked >= 5


def test_virtual_pass_needs_virtual_crossings():
    p = corpus.make_virtual_trefoil()
    ps = find_virtual_passes(p)[0]
    with pytest.raises(PresentationError):
        virtual_replace_pass(p, ps, new_kind=CLASSICAL)


def test_classical_pass_through_virtual_region_raises():
    p, ps, route = _blocked_instance()
    with pytest.raises(PresentationError):
        virtual_replace_pass(p, ps, route)


def test_classical_path_agrees(items):
    for stem in ("goeritz_printed", "thistlethwaite", "goeritz_1_2"):
        p = items[stem]
        for ps in find_maximal_passes(p, min_length=2):
            a = virtual_replace_pass(p, ps).presentation
            b = replace_pass(p, ps).presentation
            assert canonical_code(a) == canonical_code(b)
