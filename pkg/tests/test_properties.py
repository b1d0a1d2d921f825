"""Property tests over randomly generated unknot diagrams."""
import random

from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import normalized_bracket

from linkpres import corpus
from linkpres.core import (
    VIRTUAL,
    Crossing,
    LinkPresentation,
    canonical_code,
    is_isomorphic,
    relabel,
    renumber_edges,
    validate,
)
from linkpres.io import parse, serialize
from linkpres.moves import (
    MOVE_DELTAS,
    Omega0Site,
    apply_omega0,
    apply_omega1,
    apply_omega2,
    apply_omega3,
    omega1_sites,
    omega2_sites,
    random_omega0_site,
    triangle_sites,
)
from linkpres.passes import find_maximal_passes, replace_pass
from linkpres.virtual import U_DELTAS, apply_u_move, u1_sites, u_sites

seeds = st.integers(min_value=0, max_value=10**6)
sizes = st.integers(min_value=0, max_value=6)


def scramble(p: LinkPresentation, rng: random.Random) -> LinkPresentation:
    """Rename crossings, renumber edges and restart every rotation at another slot."""
    names = p.names
    fresh = [f"r{i}" for i in range(len(names))]
    rng.shuffle(fresh)
    q = relabel(p, dict(zip(names, fresh)))
    ids = list(q.edge_ids)
    targets = rng.sample(range(1, 10 * len(ids) + 1), len(ids))
    q = renumber_edges(q, dict(zip(ids, targets)))
    out = {}
    for name, c in q.crossings.items():
        t = rng.randrange(4)
        out[name] = Crossing(name, c.kind, c.rot[t:] + c.rot[:t], c.poles[t:] + c.poles[:t])
    return LinkPresentation(out)


def _created_clasp(q, names):
    return [s for s in omega1_sites(q, any_poles=True) if {s.x, s.y} == set(names)]


@settings(max_examples=150, deadline=None)
@given(seeds, sizes, st.booleans())
def test_generated_diagrams_are_valid(seed, size, virtual):
    p = corpus.random_presentation(seed, size, virtual=virtual)
    assert validate(p).ok
    assert p == corpus.random_presentation(seed, size, virtual=virtual)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=3))
def test_generated_classical_diagrams_are_unknots(seed, size):
    p = corpus.random_presentation(seed, size)
    if p.n <= 9:
        assert normalized_bracket(p) == {0: 1}


@settings(max_examples=150, deadline=None)
@given(seeds, sizes)
def test_classical_move_deltas(seed, size):
    p = corpus.random_presentation(seed, size)
    for site in omega1_sites(p):
        q = apply_omega1(p, site)
        assert validate(q).ok and q.n == p.n + MOVE_DELTAS["omega1"]
    for site in omega2_sites(p):
        q = apply_omega2(p, site)
        assert validate(q).ok and q.n == p.n + MOVE_DELTAS["omega2"]
    for site in triangle_sites(p):
        q = apply_omega3(p, site)
        assert validate(q).ok and q.n == p.n + MOVE_DELTAS["omega3"]


@settings(max_examples=150, deadline=None)
@given(seeds, sizes, st.integers(min_value=0, max_value=99))
def test_clasp_insertion_is_undone(seed, size, pick):
    p = corpus.random_presentation(seed, size)
    site = random_omega0_site(p, random.Random(pick))
    q = apply_omega0(p, site, names=("n1", "n2"))
    assert validate(q).ok and q.n == p.n + MOVE_DELTAS["omega0"]
    if site.e_x != site.e_y:
        clasps = _created_clasp(q, ("n1", "n2"))
        assert clasps
        assert is_isomorphic(apply_omega1(q, clasps[0]), p)


@settings(max_examples=150, deadline=None)
@given(seeds, sizes, st.integers(min_value=0, max_value=99), st.booleans())
def test_u_moves(seed, size, pick, virtual_clasp):
    p = corpus.random_presentation(seed, size, virtual=True)
    rng = random.Random(pick)
    site = random_omega0_site(p, rng)
    kind = VIRTUAL if virtual_clasp else "classical"
    q = apply_u_move(p, "U0", Omega0Site(site.e_x, site.e_y, site.face, site.s), kind=kind,
                     names=("n1", "n2"))
    assert validate(q).ok and q.n == p.n + U_DELTAS["U0"]
    if site.e_x != site.e_y:
        back = [s for s in u1_sites(q) if {s.x, s.y} == {"n1", "n2"}]
        assert back
        assert is_isomorphic(apply_u_move(q, "U1", back[0]), p)
    for move in ("U1", "U2", "U3", "U4"):
        for s in u_sites(p, move):
            r = apply_u_move(p, move, s)
            assert validate(r).ok and r.n == p.n + U_DELTAS[move]


@settings(max_examples=100, deadline=None)
@given(seeds, sizes)
def test_pass_replacement_count(seed, size):
    p = corpus.random_presentation(seed, size)
    for ps in find_maximal_passes(p):
        res = replace_pass(p, ps)
        assert validate(res.presentation).ok
        assert res.presentation.n == p.n - res.k + res.m + len(res.spawned)


@settings(max_examples=100, deadline=None)
@given(seeds, sizes, st.booleans(), st.integers(min_value=0, max_value=99))
def test_scrambling_preserves_code(seed, size, virtual, pick):
    p = corpus.random_presentation(seed, size, virtual=virtual)
    q = scramble(p, random.Random(pick))
    assert validate(q).ok
    assert canonical_code(q) == canonical_code(p)


@settings(max_examples=100, deadline=None)
@given(seeds, sizes, st.booleans())
def test_text_roundtrip(seed, size, virtual):
    p = corpus.random_presentation(seed, size, virtual=virtual)
    q = parse(serialize(p))
    assert q == p
