"""
Crossing reduction.

:func:`reduce` repeats, in order of preference:

1. remove a loop (Ω2), then start again;
2. remove a clasp (Ω1), then start again;
3. replace a maximal pass by a shorter route, then start again;
4. replace a maximal pass by a route of equal length whose result has not
   been seen before, then start again;
5. stop and classify the diagram.

Every applied move is recorded as a :class:`MoveRecord` whose parameters
are enough to repeat it, so :func:`replay` reproduces the run exactly.
Presentations with virtual crossings are reduced with the virtual moves and
kind-aware pass replacement.
"""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field

from .core import (
    CLASSICAL,
    LinkPresentation,
    PresentationError,
    canonical_code,
    check,
    components,
    is_alternating,
    is_trivial_component,
    is_unlink,
    natural_key,
    normalize,
    parse_end,
)
from .moves import Omega1Site, Omega2Site, apply_omega1, apply_omega2, omega1_sites, omega2_sites
from .passes import (
    AdjacentGraph,
    Pass,
    Route,
    build_adjacent_graph,
    find_maximal_passes,
    find_pass,
    replace_pass,
    route_from_darts,
    shortest_route,
)
from .virtual import (
    apply_u_move,
    classical_reroute_allowed,
    find_maximal_passes_virtual,
    pass_kind,
    u1_sites,
    u2_sites,
    virtual_replace_pass,
)

__all__ = [
    "AdjacentGraph",
    "MoveRecord",
    "ReduceConfig",
    "ReductionReport",
    "build_adjacent_graph",
    "code8",
    "reduce",
    "replay",
    "shortest_route",
]

OUTCOMES = ("unlink", "alternating", "splitting", "budget_exhausted")
PASS_ORDERS = ("longest", "start")


@dataclass
class ReduceConfig:
    """Settings for :func:`reduce`.

    ``budget`` caps the number of equal replacements; ``None`` means
    ``10 * n**2`` for an input with ``n`` crossings. ``pass_order`` is
    ``"longest"`` (most interior crossings first, then by start) or
    ``"start"`` (by start only). ``seed`` is kept in the report; the run
    itself makes no random choices, so equal inputs give equal runs.
    """

    budget: int | None = None
    pass_order: str = "longest"
    seed: int = 0

    def __post_init__(self):
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")
        if self.pass_order not in PASS_ORDERS:
            raise ValueError(f"pass_order must be one of {PASS_ORDERS}")


@dataclass(frozen=True)
class MoveRecord:
    """One applied move: ``op``, its ``params`` as string pairs, and the state it produced.

    ``code8`` is the digest of the resulting canonical code (see :func:`code8`).
    """

    seq: int
    op: str
    params: tuple
    n_after: int
    code8: str

    def param(self, key: str) -> str:
        return dict(self.params)[key]


@dataclass
class ReductionReport:
    outcome: str
    final: LinkPresentation
    trace: list
    stats: dict = field(default_factory=dict)

    @property
    def final_code(self) -> bytes:
        return canonical_code(self.final)


def code8(code: bytes) -> str:
    """Hex of an 8-byte digest of a canonical code.

    Canonical codes start with long runs shared by most presentations, so a
    digest detects divergence where a plain prefix would not.
    """
    return hashlib.blake2b(code, digest_size=8).hexdigest()


# -- moves as records --------------------------------------------------------------------


def _darts_text(darts) -> str:
    return ",".join(f"{e}.{side}" for e, side in darts)


def _darts_of(text: str) -> tuple:
    if not text:
        return ()
    out = []
    for item in text.split(","):
        e, side = item.split(".")
        out.append((int(e), int(side)))
    return tuple(out)


def _apply(p: LinkPresentation, op: str, params: dict) -> LinkPresentation:
    """Apply a recorded move."""
    virtual = not p.is_classical()
    if op == "omega2":
        site = Omega2Site(params["x"], int(params["e"]))
        return apply_u_move(p, "U2", site) if virtual else apply_omega2(p, site)
    if op == "omega1":
        site = Omega1Site(params["x"], params["y"], int(params["e+"]), int(params["e-"]))
        return apply_u_move(p, "U1", site) if virtual else apply_omega1(p, site)
    if op == "pass":
        passes = find_maximal_passes_virtual(p) if virtual else find_maximal_passes(p)
        ps = find_pass(p, parse_end(params["start"]), parse_end(params["end"]), passes)
        g = build_adjacent_graph(p, ps)
        route = route_from_darts(g, _darts_of(params["route"]))
        names = [n for n in params["names"].split(",") if n]
        if virtual:
            return virtual_replace_pass(p, ps, route, params["kind"], names).presentation
        return replace_pass(p, ps, route, names).presentation
    if op == "normalize":
        return normalize(p)
    raise PresentationError(f"unknown move {op}")


# -- the algorithm ---------------------------------------------------------------------------


def _ordered(passes: list, order: str) -> list:
    key = {
        "longest": lambda ps: (-ps.k, natural_key(ps.start.crossing), -ps.start.pole),
        "start": lambda ps: (natural_key(ps.start.crossing), -ps.start.pole),
    }[order]
    return sorted(passes, key=key)


def _candidates(p: LinkPresentation, order: str):
    """``(pass, graph, route, m)`` for every usable maximal pass, in policy order."""
    virtual = not p.is_classical()
    passes = find_maximal_passes_virtual(p) if virtual else find_maximal_passes(p)
    for ps in _ordered(passes, order):
        try:
            g = build_adjacent_graph(p, ps)
            route, m = shortest_route(g)
        except PresentationError:
            continue
        if virtual and pass_kind(p, ps) == CLASSICAL and not classical_reroute_allowed(p, ps, route):
            continue
        yield ps, g, route, m


def _replace(p: LinkPresentation, ps: Pass, route: Route):
    if p.is_classical():
        return replace_pass(p, ps, route)
    return virtual_replace_pass(p, ps, route)


def _pass_params(p: LinkPresentation, ps: Pass, route: Route, result) -> tuple:
    kind = pass_kind(p, ps)
    return (("start", str(ps.start)), ("end", str(ps.end)), ("k", str(ps.k)),
            ("m", str(route.m)), ("route", _darts_text(route.crossed)),
            ("names", ",".join(result.names)), ("kind", kind))


def reduce(p: LinkPresentation, cfg: ReduceConfig | None = None) -> ReductionReport:
    """Reduce the crossings of ``p`` and classify the result.

    Args:
        p: a valid presentation.
        cfg: settings; defaults to :class:`ReduceConfig()`.

    Returns:
        A :class:`ReductionReport`. ``outcome`` is ``"unlink"`` when only
        trivial components remain, ``"splitting"`` when the shadow is
        disconnected, ``"alternating"`` when every strand alternates, and
        ``"budget_exhausted"`` otherwise.
    """
    cfg = cfg or ReduceConfig()
    check(p)
    started = time.perf_counter()
    budget = cfg.budget if cfg.budget is not None else 10 * p.n ** 2
    seen = {canonical_code(p)}
    trace = []
    equal_moves = 0
    stop = "no_moves"

    def record(op, params, q):
        code = canonical_code(q)
        seen.add(code)
        trace.append(MoveRecord(len(trace) + 1, op, tuple(params), q.n, code8(code)))
        return q

    while True:
        virtual = not p.is_classical()
        loops = u2_sites(p) if virtual else omega2_sites(p)
        if loops:
            s = loops[0]
            p = record("omega2", (("x", s.x), ("e", str(s.e))), _apply(p, "omega2", {"x": s.x, "e": s.e}))
            continue
        clasps = u1_sites(p) if virtual else omega1_sites(p)
        if clasps:
            s = clasps[0]
            params = (("x", s.x), ("y", s.y), ("e+", str(s.e_plus)), ("e-", str(s.e_minus)))
            p = record("omega1", params, _apply(p, "omega1", dict(params)))
            continue
        short, equal = None, []
        for ps, g, route, m in _candidates(p, cfg.pass_order):
            if m <= ps.k - 1:
                short = (ps, route)
                break
            if m == ps.k:
                equal.append((ps, route))
        if short is not None:
            ps, route = short
            res = _replace(p, ps, route)
            p = record("pass", _pass_params(p, ps, route, res), res.presentation)
            continue
        if equal_moves >= budget:
            stop = "budget"
            break
        moved = False
        for ps, route in equal:
            res = _replace(p, ps, route)
            if canonical_code(res.presentation) in seen:
                continue
            p = record("pass", _pass_params(p, ps, route, res), res.presentation)
            equal_moves += 1
            moved = True
            break
        if not moved:
            break

    q = normalize(p)
    if q is not p:
        p = record("normalize", (), q)
    if is_unlink(p):
        outcome = "unlink"
    elif len(components(p)) > 1:
        outcome = "splitting"
    elif is_alternating(p):
        outcome = "alternating"
    else:
        outcome = "budget_exhausted"
    stats = {
        "elapsed": time.perf_counter() - started,
        "moves": len(trace),
        "equal_replacements": equal_moves,
        "budget": budget,
        "stop": stop,
        "n_final": p.n,
        "seed": cfg.seed,
    }
    return ReductionReport(outcome, p, trace, stats)


def replay(p: LinkPresentation, trace, strict: bool = True) -> LinkPresentation:
    """Apply the moves of ``trace`` to ``p``.

    Args:
        p: the presentation the trace was recorded on.
        trace: :class:`MoveRecord` items.
        strict: check every state against the recorded crossing count and
            code digest.

    Returns:
        The final presentation.

    Raises:
        PresentationError: if a move does not apply or a state diverges.
    """
    for rec in trace:
        p = _apply(p, rec.op, dict(rec.params))
        if strict and (p.n != rec.n_after or code8(canonical_code(p)) != rec.code8):
            raise PresentationError(f"replay diverges at move {rec.seq} ({rec.op})")
    return p
