"""Acceptance criteria, one test per criterion.

Every criterion records a ``PASS`` or ``FAIL`` line that is printed in the
pytest terminal summary (and by running this file as a script). Criteria 4
and 5 contain claims that do not hold for the diagrams as printed; those
tests are strict expected failures, and the parts that do hold are checked
by separate passing tests below. See the decisions ledger for the evidence.
"""
import math
import random
import time
from collections import deque

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from linkpres import corpus
from linkpres.core import (
    VIRTUAL,
    canonical_code,
    is_isomorphic,
    normalize,
    swap_poles,
    trace_faces,
    validate,
    vef,
)
from linkpres.io import parse, serialize
from linkpres.moves import (
    MOVE_DELTAS,
    apply_omega0,
    apply_omega1,
    apply_omega2,
    apply_omega3,
    omega1_sites,
    omega2_sites,
    random_omega0_site,
    triangle_sites,
)
from linkpres.passes import apply_scripted, find_maximal_passes, replace_pass
from linkpres.reduction import ReduceConfig, reduce, replay
from linkpres.render import render_svg
from linkpres.virtual import U_DELTAS, apply_u_move, u1_sites, u_sites
from test_properties import scramble

TITLES = {
    1: "corpus structural check",
    2: "printed-face reproduction",
    3: "Goeritz scripted replay",
    4: "Thistlethwaite scripted replay",
    5: "automated unknotting",
    6: "move-soundness property suite",
    7: "isomorphism suite",
    8: "determinism and replay",
    9: "I/O roundtrip and rendering",
}

O = corpus.make_trivial(1)


def record(number: int, ok: bool, detail: str) -> bool:
    verdict = "PASS" if ok else "FAIL"
    ACCEPTANCE_RESULTS[number] = f"criterion {number} {verdict}: {TITLES[number]} ({detail})"
    return ok


# -- helpers ----------------------------------------------------------------------------


def closure(p, with_omega3=False, limit=20000):
    """Breadth-first search over states reachable by Ω1 and Ω2 (and Ω3 if asked).

    Returns ``(smallest crossing count, path of move names to O or None)``.
    """
    start = canonical_code(p)
    queue = deque([(p, ())])
    seen = {start}
    best = p.n
    while queue and len(seen) < limit:
        q, path = queue.popleft()
        best = min(best, q.n)
        if is_isomorphic(normalize(q), O):
            return best, path
        steps = [("O1", apply_omega1, s) for s in omega1_sites(q)]
        steps += [("O2", apply_omega2, s) for s in omega2_sites(q)]
        if with_omega3:
            steps += [("O3", apply_omega3, s) for s in triangle_sites(q)]
        for label, move, site in steps:
            r = move(q, site)
            code = canonical_code(r)
            if code not in seen:
                seen.add(code)
                queue.append((r, path + (label,)))
    return best, None


def thistlethwaite_after_script():
    p = corpus.make_thistlethwaite()
    states = []
    for step in corpus.THISTLETHWAITE_SCRIPT:
        p = apply_scripted(p, step.start, step.end, step.crossed, step.names).presentation
        states.append(p)
    return states


def family_runs(repeats=2):
    """``(k, l, n, outcome, final, best seconds)`` for every member of the family."""
    out = []
    for k in range(6):
        for l in range(6):
            p = corpus.make_goeritz(k, l)
            best, report = math.inf, None
            for _ in range(repeats):
                t = time.perf_counter()
                report = reduce(p)
                best = min(best, time.perf_counter() - t)
            out.append((k, l, p.n, report.outcome, report.final, best))
    return out


def scaling_slope(runs):
    n = np.array([r[2] for r in runs], dtype=float)
    t = np.array([r[5] for r in runs], dtype=float)
    slope, _ = np.polyfit(np.log(n), np.log(t), 1)
    return float(slope)


# -- criteria ---------------------------------------------------------------------------


def criterion_1():
    t = time.perf_counter()
    l1, l2 = corpus.make_example31()
    expected = [
        (O, (1, 2, 3)),
        (l1, (6, 12, 8)),
        (l2, (6, 12, 8)),
        (corpus.make_thistlethwaite(), (15, 30, 17)),
        (corpus.make_goeritz(0, 0), (11, 22, 13)),
    ]
    for k in range(6):
        for l in range(6):
            expected.append((corpus.make_goeritz(k, l), (11 + 2 * k + 2 * l, 22 + 4 * k + 4 * l, 13 + 2 * k + 2 * l)))
    bad = [want for p, want in expected if vef(p) != want or not validate(p).ok]
    elapsed = time.perf_counter() - t
    return record(1, not bad and elapsed < 1, f"{len(expected) - len(bad)}/{len(expected)} exact, {elapsed:.2f}s")


def criterion_2():
    l1, l2 = corpus.make_example31()
    a = any(f.matches((3, 7, 10, 4)) for f in trace_faces(l1))
    b = any(f.matches((3, 7, 8, 12, 4)) for f in trace_faces(l2))
    return record(2, a and b, f"L1 face {'found' if a else 'missing'}, L2 face {'found' if b else 'missing'}")


def criterion_3():
    t = time.perf_counter()
    p = corpus.make_goeritz00_printed()
    matches = 0
    for step, printed in zip(corpus.GOERITZ_SCRIPT, corpus.make_goeritz_printed_steps()):
        p = apply_scripted(p, step.start, step.end, step.crossed, step.names).presentation
        matches += is_isomorphic(p, printed)
    for _ in range(2):
        p = apply_omega1(p, omega1_sites(p)[0])
    trivial = is_isomorphic(normalize(p), O)
    elapsed = time.perf_counter() - t
    ok = matches == 4 and trivial and elapsed < 1
    return record(3, ok, f"{matches}/4 printed steps, O after two clasps: {trivial}, {elapsed:.2f}s")


def criterion_4():
    t = time.perf_counter()
    states = thistlethwaite_after_script()
    p1 = is_isomorphic(states[0], corpus.make_thistlethwaite_p1())
    valid = all(validate(s).ok for s in states)
    best, path = closure(states[-1])
    elapsed = time.perf_counter() - t
    ok = p1 and valid and path is not None and elapsed < 1
    detail = (f"P1 printed: {p1}, P2-P5 valid: {valid}, "
              f"Ω1/Ω2 alone stop at {best} crossings" if path is None else "reaches O")
    return record(4, ok, f"{detail}, {elapsed:.2f}s")


def criterion_5(runs=None):
    runs = runs if runs is not None else family_runs()
    unlinks = [r for r in runs if r[3] == "unlink" and is_isomorphic(r[4], O) and r[5] < 1]
    kt = reduce(corpus.make_thistlethwaite())
    g00 = reduce(corpus.make_goeritz(0, 0))
    named = all(r.outcome == "unlink" and r.stats["equal_replacements"] <= r.stats["budget"] for r in (kt, g00))
    slope = scaling_slope(runs)
    ok = len(unlinks) == len(runs) and named and slope <= 2
    return record(5, ok, f"{len(unlinks)}/{len(runs)} family members reach O, "
                         f"K_T and K_G00 unlink: {named}, slope {slope:.2f}")


def move_suite(count=10_000):
    """Counts of checks run over ``count`` random presentations; raises on the first failure."""
    rng = random.Random(2024)
    checks = 0
    for seed in range(count):
        virtual = seed % 3 == 0
        p = corpus.random_presentation(seed, seed % 5, virtual=virtual)
        assert validate(p).ok
        site = random_omega0_site(p, rng)
        if virtual:
            kind = VIRTUAL if rng.random() < 0.5 else "classical"
            q = apply_u_move(p, "U0", site, kind=kind, names=("n1", "n2"))
            assert validate(q).ok and q.n == p.n + U_DELTAS["U0"]
            if site.e_x != site.e_y:
                (back,) = [s for s in u1_sites(q) if {s.x, s.y} == {"n1", "n2"}]
                assert is_isomorphic(apply_u_move(q, "U1", back), p)
            for move in ("U1", "U2", "U3", "U4"):
                for s in u_sites(p, move):
                    r = apply_u_move(p, move, s)
                    assert validate(r).ok and r.n == p.n + U_DELTAS[move]
                    checks += 1
        else:
            q = apply_omega0(p, site, names=("n1", "n2"))
            assert validate(q).ok and q.n == p.n + MOVE_DELTAS["omega0"]
            if site.e_x != site.e_y:
                (back,) = [s for s in omega1_sites(q) if {s.x, s.y} == {"n1", "n2"}]
                assert is_isomorphic(apply_omega1(q, back), p)
            for move, finder, delta in ((apply_omega1, omega1_sites, "omega1"),
                                        (apply_omega2, omega2_sites, "omega2"),
                                        (apply_omega3, triangle_sites, "omega3")):
                for s in finder(p):
                    r = move(p, s)
                    assert validate(r).ok and r.n == p.n + MOVE_DELTAS[delta]
                    checks += 1
            for ps in find_maximal_passes(p):
                res = replace_pass(p, ps)
                assert validate(res.presentation).ok
                assert res.presentation.n == p.n - res.k + res.m + len(res.spawned)
                checks += 1
        checks += 1
    return checks


def criterion_6(count=10_000):
    t = time.perf_counter()
    try:
        checks = move_suite(count)
        failure = None
    except AssertionError as exc:
        checks, failure = 0, exc
    elapsed = time.perf_counter() - t
    ok = failure is None and elapsed < 60
    detail = f"{count} presentations, {checks} checks, {elapsed:.1f}s" if failure is None else f"failed: {failure!r}"
    return record(6, ok, detail)


def criterion_7():
    l1, l2 = corpus.make_example31()
    distinct = not is_isomorphic(l1, l2)
    rng = random.Random(7)
    items = corpus.corpus_items()
    relabelings = all(is_isomorphic(scramble(p, rng), p) for p in items.values() for _ in range(100))
    swaps = all(is_isomorphic(swap_poles(p, name), p)
                for p in items.values() for name in p.names if p.kind(name) == VIRTUAL)
    ok = distinct and relabelings and swaps
    return record(7, ok, f"L1 != L2: {distinct}, {100 * len(items)} relabelings: {relabelings}, pole swaps: {swaps}")


def criterion_8():
    items = corpus.corpus_items()
    stems = [s for s in items if s not in ("trivial_2",)]
    reproducible = replayed = True
    for stem in stems:
        p = items[stem]
        a = reduce(p, ReduceConfig(seed=11))
        b = reduce(p, ReduceConfig(seed=11))
        same = a.trace == b.trace and serialize(a.final) == serialize(b.final) and a.outcome == b.outcome
        reproducible &= same
        replayed &= canonical_code(replay(p, a.trace)) == a.final_code
    ok = reproducible and replayed
    return record(8, ok, f"{len(stems)} inputs, bit-reproducible: {reproducible}, replay matches: {replayed}")


def criterion_9():
    items = corpus.corpus_items()
    roundtrip = all(canonical_code(parse(serialize(p))) == canonical_code(p) for p in items.values())
    import xml.etree.ElementTree as ET

    svg = "{http://www.w3.org/2000/svg}"
    counts = True
    for p in (O, corpus.make_goeritz(0, 0), corpus.make_virtual_trefoil(), *items.values()):
        root = ET.fromstring(render_svg(p))
        virtual = sum(p.kind(n) == VIRTUAL for n in p.names)
        counts &= (len(root.findall(f"{svg}path")), len(root.findall(f"{svg}g")),
                   len(root.findall(f".//{svg}circle"))) == (len(p.edge_ids), p.n, virtual)
    ok = roundtrip and counts
    return record(9, ok, f"{len(items)} files roundtrip: {roundtrip}, glyph counts: {counts}")


# -- tests ------------------------------------------------------------------------------


def test_criterion_1():
    assert criterion_1()


def test_criterion_2():
    assert criterion_2()


def test_criterion_3():
    assert criterion_3()


@pytest.mark.xfail(strict=True, reason="Ω1/Ω2 alone stop at 6 crossings after the printed script; one Ω3 is needed")
def test_criterion_4():
    assert criterion_4()


def test_criterion_4_replay_holds_up_to_one_omega3():
    states = thistlethwaite_after_script()
    assert is_isomorphic(states[0], corpus.make_thistlethwaite_p1())
    assert [s.n for s in states] == [15, 14, 12, 11, 8]
    best, path = closure(states[-1])
    assert (best, path) == (6, None)
    _, path = closure(states[-1], with_omega3=True)
    assert path is not None and path.count("O3") == 1


@pytest.fixture(scope="module")
def runs():
    return family_runs()


@pytest.mark.xfail(strict=True, reason="K_G(2k,2l) is the torus knot T(2, 2(k-l)-1); only k-l in {0, 1} are unknots")
def test_criterion_5(runs):
    assert criterion_5(runs)


def test_criterion_5_holding_parts(runs):
    for k, l, n, outcome, final, seconds in runs:
        assert seconds < 1
        if k - l in (0, 1):
            assert outcome == "unlink" and is_isomorphic(final, O)
        else:
            assert outcome == "alternating"
            assert final.n == abs(2 * (k - l) - 1)
    for p in (corpus.make_thistlethwaite(), corpus.make_goeritz(0, 0)):
        report = reduce(p)
        assert report.outcome == "unlink"
        assert report.stats["equal_replacements"] <= report.stats["budget"]
    assert scaling_slope(runs) <= 2


def test_criterion_6():
    assert criterion_6()


def test_criterion_7():
    assert criterion_7()


def test_criterion_8():
    assert criterion_8()


def test_criterion_9():
    assert criterion_9()


if __name__ == "__main__":
    for check in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                  criterion_6, criterion_7, criterion_8, criterion_9):
        check()
    for number in sorted(ACCEPTANCE_RESULTS):
        print(ACCEPTANCE_RESULTS[number])
