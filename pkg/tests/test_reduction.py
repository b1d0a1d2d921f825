"""The reduction loop, its trace and replay."""
import pytest

from linkpres import corpus
from linkpres.core import (
    PresentationError,
    canonical_code,
    disjoint_union,
    is_isomorphic,
    relabel,
    renumber_edges,
)
from linkpres.reduction import MoveRecord, ReduceConfig, _apply, code8, reduce, replay


def _states(p, trace):
    """Canonical codes of the input and of every state reached by the trace."""
    codes = [canonical_code(p)]
    for rec in trace:
        p = _apply(p, rec.op, dict(rec.params))
        codes.append(canonical_code(p))
    return codes


def test_goeritz_reduces_to_the_unknot(g00, trivial):
    report = reduce(g00)
    assert report.outcome == "unlink"
    assert is_isomorphic(report.final, trivial)
    assert report.stats["budget"] == 10 * 11 ** 2


def test_trefoil_is_left_alone(trefoil):
    report = reduce(trefoil)
    assert report.outcome == "alternating"
    assert report.trace == []
    assert report.final is trefoil


def test_split_diagram(trefoil):
    other = renumber_edges(corpus.make_trefoil(), {e: e + 10 for e in range(1, 7)})
    other = relabel(other, {"a": "d", "b": "e", "c": "f"})
    report = reduce(disjoint_union(trefoil, other))
    assert report.outcome == "splitting"


def test_thistlethwaite_reduces():
    report = reduce(corpus.make_thistlethwaite())
    assert report.outcome == "unlink"
    assert report.stats["equal_replacements"] <= report.stats["budget"]


def test_virtual_trefoil_does_not_reduce():
    report = reduce(corpus.make_virtual_trefoil())
    assert report.outcome in ("budget_exhausted", "alternating")
    assert report.final.n == 3


def test_trace_invariants():
    for p in (corpus.make_thistlethwaite(), corpus.make_goeritz(2, 1), corpus.random_presentation(4, 6)):
        report = reduce(p)
        codes = _states(p, report.trace)
        assert len(set(codes)) == len(codes) or report.trace[-1].op == "normalize"
        n = p.n
        for rec in report.trace:
            if rec.op == "pass" and rec.param("k") == rec.param("m"):
                assert rec.n_after == n
            elif rec.op != "normalize":
                assert rec.n_after < n
            n = rec.n_after


def test_budget_zero_skips_equal_replacements():
    report = reduce(corpus.make_goeritz(0, 3), ReduceConfig(budget=0))
    assert report.stats["equal_replacements"] == 0
    assert all(rec.op != "pass" or rec.param("k") != rec.param("m") for rec in report.trace)


def test_config_validation():
    with pytest.raises(ValueError):
        ReduceConfig(budget=-1)
    with pytest.raises(ValueError):
        ReduceConfig(pass_order="random")


def test_pass_orders_both_reduce(g00):
    for order in ("longest", "start"):
        assert reduce(g00, ReduceConfig(pass_order=order)).outcome == "unlink"


def test_replay_reproduces_final(g00):
    report = reduce(g00)
    assert canonical_code(replay(g00, report.trace)) == report.final_code


def test_replay_detects_divergence(g00):
    report = reduce(g00)
    first = report.trace[0]
    bad = [MoveRecord(first.seq, first.op, first.params, first.n_after, "0" * 16), *report.trace[1:]]
    with pytest.raises(PresentationError):
        replay(g00, bad)
    replay(g00, bad, strict=False)


def test_code8_is_short_hex():
    digest = code8(canonical_code(corpus.make_trivial(1)))
    assert len(digest) == 16
    int(digest, 16)
