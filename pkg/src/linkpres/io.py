"""
Text formats for presentations and reduction traces.

A presentation file is line based; ``#`` starts a comment::

    linkpres 1
    crossing o classical
    edge 1 o+ o-
    edge 2 o+ o-
    rot o 1@+ 1@- 2@+ 2@-

``edge`` lines give the two ends of an edge, ``rot`` lines the incident
edges anticlockwise. When an edge has both ends at the same crossing each
occurrence is suffixed with the pole it attaches to; otherwise the pole is
read off the edge line. An optional ``infinite`` line lists the edges of the
face drawn outermost.

A trace file has one move per line: ``seq op params n_after code8``, where
``params`` is ``key=value`` pairs joined by ``;`` (``-`` when empty).
"""
from __future__ import annotations

from .core import (
    CLASSICAL,
    MINUS,
    PLUS,
    VIRTUAL,
    Crossing,
    LinkPresentation,
    PresentationError,
    check,
    mate,
    parse_end,
)
from .reduction import MoveRecord

MAGIC = "linkpres"
VERSION = 1
_POLE_TEXT = {PLUS: "+", MINUS: "-"}


class ParseError(PresentationError):
    """Malformed input; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _end_text(end) -> str:
    return f"{end.crossing}{_POLE_TEXT[end.pole]}"


def _parse_end(token: str, lineno: int):
    if not token or token[-1] not in "+-" or len(token) < 2:
        raise ParseError(lineno, f"bad edge end {token!r}; expected NAME+ or NAME-")
    return parse_end(token)


def serialize(p: LinkPresentation) -> str:
    """The presentation as text; crossings by name and edges by id, so the output is deterministic."""
    lines = [f"{MAGIC} {VERSION}"]
    for name in p.names:
        lines.append(f"crossing {name} {p.kind(name)}")
    for e in p.edge_ids:
        a, b = p.edge_ends(e)
        lines.append(f"edge {e} {_end_text(a)} {_end_text(b)}")
    for name in p.names:
        c = p.crossings[name]
        items = []
        for d, pole in zip(c.rot, c.poles):
            if p.position(mate(d))[0] == name:
                items.append(f"{d[0]}@{_POLE_TEXT[pole]}")
            else:
                items.append(str(d[0]))
        lines.append(f"rot {name} " + " ".join(items))
    if p.infinite_face:
        lines.append("infinite " + " ".join(str(e) for e in p.infinite_face))
    return "\n".join(lines) + "\n"


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse(text: str) -> LinkPresentation:
    """Read a presentation written by :func:`serialize` (or by hand).

    Raises:
        ParseError: on a syntax error, with its line number.
        PresentationError: if the presentation read is not valid.
    """
    kinds, edges, rots, infinite = {}, {}, {}, None
    seen_magic = False
    for lineno, tok in _tokens(text):
        head = tok[0]
        if not seen_magic:
            if tok != [MAGIC, str(VERSION)]:
                raise ParseError(lineno, f"expected '{MAGIC} {VERSION}'")
            seen_magic = True
            continue
        if head == "crossing":
            if len(tok) != 3 or tok[2] not in (CLASSICAL, VIRTUAL):
                raise ParseError(lineno, "expected: crossing NAME classical|virtual")
            if tok[1] in kinds:
                raise ParseError(lineno, f"crossing {tok[1]} declared twice")
            kinds[tok[1]] = tok[2]
        elif head == "edge":
            if len(tok) != 4:
                raise ParseError(lineno, "expected: edge ID END END")
            e = _int(tok[1], lineno)
            if e in edges:
                raise ParseError(lineno, f"edge {e} declared twice")
            edges[e] = (_parse_end(tok[2], lineno), _parse_end(tok[3], lineno), lineno)
        elif head == "rot":
            if len(tok) != 6:
                raise ParseError(lineno, "expected: rot NAME E1 E2 E3 E4")
            rots[tok[1]] = ([_rot_item(t, lineno) for t in tok[2:]], lineno)
        elif head == "infinite":
            infinite = tuple(_int(t, lineno) for t in tok[1:])
        else:
            raise ParseError(lineno, f"unknown record {head!r}")
    if not seen_magic:
        raise ParseError(1, "empty document")
    for e, (a, b, lineno) in edges.items():
        for end in (a, b):
            if end.crossing not in kinds:
                raise ParseError(lineno, f"edge {e} ends at undeclared crossing {end.crossing}")
    crossings = {}
    for name, kind in kinds.items():
        if name not in rots:
            raise ParseError(1, f"crossing {name} has no rot line")
        items, lineno = rots[name]
        rot, poles = [], []
        for e, pole in items:
            if e not in edges:
                raise ParseError(lineno, f"unknown edge {e}")
            a, b, _ = edges[e]
            sides = [i for i, end in enumerate((a, b)) if end.crossing == name]
            if not sides:
                raise ParseError(lineno, f"edge {e} does not end at {name}")
            if len(sides) == 2:
                if pole is None:
                    raise ParseError(lineno, f"loop edge {e} needs a pole suffix")
                sides = [i for i in sides if (a, b)[i].pole == pole]
                if not sides:
                    raise ParseError(lineno, f"edge {e} has no end at {name}{_POLE_TEXT[pole]}")
                if a == b and (e, 0) in rot:
                    sides = [1]
            elif pole is not None and (a, b)[sides[0]].pole != pole:
                raise ParseError(lineno, f"pole suffix of edge {e} disagrees with its edge line")
            d = (e, sides[0])
            if d in rot:
                raise ParseError(lineno, f"edge {e} listed too often")
            rot.append(d)
            poles.append((a, b)[sides[0]].pole)
        crossings[name] = Crossing(name, kind, tuple(rot), tuple(poles))
    for name in rots:
        if name not in kinds:
            raise ParseError(rots[name][1], f"rot line for undeclared crossing {name}")
    return check(LinkPresentation(crossings, infinite))


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {token!r}") from None


def _rot_item(token: str, lineno: int):
    if "@" in token:
        e, pole = token.split("@", 1)
        if pole not in ("+", "-"):
            raise ParseError(lineno, f"bad pole suffix in {token!r}; expected @+ or @-")
        return _int(e, lineno), PLUS if pole == "+" else MINUS
    return _int(token, lineno), None


def read_presentation(path) -> LinkPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_presentation(p: LinkPresentation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(p))


# -- traces ------------------------------------------------------------------------------


def format_trace(trace) -> str:
    lines = []
    for rec in trace:
        params = ";".join(f"{k}={v}" for k, v in rec.params) or "-"
        lines.append(f"{rec.seq} {rec.op} {params} {rec.n_after} {rec.code8}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str) -> list:
    """Read records written by :func:`format_trace`.

    Raises:
        ParseError: on a malformed record.
    """
    out = []
    for lineno, tok in _tokens(text):
        if len(tok) != 5:
            raise ParseError(lineno, "expected: seq op params n_after code8")
        seq, op, params, n_after, digest = tok
        pairs = []
        if params != "-":
            for item in params.split(";"):
                if "=" not in item:
                    raise ParseError(lineno, f"bad parameter {item!r}")
                k, v = item.split("=", 1)
                pairs.append((k, v))
        out.append(MoveRecord(_int(seq, lineno), op, tuple(pairs), _int(n_after, lineno), digest))
    return out

