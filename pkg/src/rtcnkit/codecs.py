"""Line-oriented text forms for the core value types.

One object per line, ASCII, single spaces.  Formatters always emit the
canonical form; parsers are lenient about runs of spaces but otherwise
strict, and raise ParseError (with a column) for syntax problems or
ValidationError for well-formed text describing an invalid object.
"""

from __future__ import annotations

from .core import (
    KEEP,
    BoatSequence,
    Branching,
    DecisionVector,
    EventCode,
    ParseError,
    Permutation,
    PhyloTree,
    Reticulation,
    ValidationError,
    validate_boat,
    validate_code,
    validate_decisions,
    validate_perm,
    validate_phylo,
)


class _Cursor:
    def __init__(self, text):
        self.text = text.rstrip("\n")
        self.pos = 0

    def error(self, message):
        raise ParseError(message, self.pos)

    def skip_spaces(self):
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1

    def peek(self):
        self.skip_spaces()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def literal(self, token):
        self.skip_spaces()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected {token!r}")
        self.pos += len(token)

    def integer(self):
        self.skip_spaces()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def end(self):
        self.skip_spaces()
        if self.pos != len(self.text):
            self.error("unexpected trailing text")

    def done(self):
        self.skip_spaces()
        return self.pos == len(self.text)


def _checked(obj, validator):
    bad = validator(obj)
    if bad:
        raise ValidationError(bad)
    return obj


# -- event codes ------------------------------------------------------------


def format_rtcn(code):
    parts = []
    for ev in code.events:
        if isinstance(ev, Branching):
            parts.append(f"B {ev.c1} {ev.c2}")
        else:
            parts.append(f"R {ev.c1} {ev.c2} {ev.hybrid}")
    return f"rtcn {code.leaves}: " + "; ".join(parts)


def parse_rtcn(text):
    c = _Cursor(text)
    c.literal("rtcn")
    n = c.integer()
    c.literal(":")
    events = []
    while True:
        ch = c.peek()
        if ch == "B":
            c.literal("B")
            events.append(Branching(c.integer(), c.integer()))
        elif ch == "R":
            c.literal("R")
            events.append(Reticulation(c.integer(), c.integer(), c.integer()))
        else:
            c.error("expected an event (B or R)")
        if c.peek() == ";":
            c.literal(";")
            continue
        break
    c.end()
    return _checked(EventCode(n, tuple(events)), validate_code)


def parse_ranked_tree(text):
    code = parse_rtcn(text)
    if not code.is_ranked_tree:
        raise ValidationError("expected a ranked tree (branching events only)")
    return code


# -- boat sequences ---------------------------------------------------------


def format_boat(boat):
    sends = " ".join(f"{a},{b}" for a, b in boat.sends)
    text = f"boat {boat.people}: send {sends} ; back"
    if boat.returns:
        text += " " + " ".join(map(str, boat.returns))
    return text


def parse_boat(text):
    c = _Cursor(text)
    c.literal("boat")
    n = c.integer()
    c.literal(":")
    c.literal("send")
    sends = []
    while c.peek() != ";":
        a = c.integer()
        c.literal(",")
        sends.append((a, c.integer()))
    c.literal(";")
    c.literal("back")
    returns = []
    while not c.done():
        returns.append(c.integer())
    return _checked(BoatSequence(n, tuple(sends), tuple(returns)), validate_boat)


# -- permutations -----------------------------------------------------------


def format_perm(perm):
    return f"perm {perm.n}: " + " ".join(map(str, perm.image))


def parse_perm(text):
    c = _Cursor(text)
    c.literal("perm")
    n = c.integer()
    c.literal(":")
    image = []
    while not c.done():
        image.append(c.integer())
    return _checked(Permutation(n, tuple(image)), validate_perm)


# -- plain phylogenetic trees (Newick with integer leaves) ------------------


def format_phylo(tree):
    def fmt(node):
        if isinstance(node, int):
            return str(node)
        return "(" + ",".join(fmt(c) for c in node) + ")"

    return fmt(tree.shape) + ";"


def parse_phylo(text):
    c = _Cursor(text)
    count = 0

    def node():
        nonlocal count
        ch = c.peek()
        if ch == "(":
            c.literal("(")
            left = node()
            c.literal(",")
            right = node()
            c.literal(")")
            return (left, right)
        if ch.isdigit():
            count += 1
            return c.integer()
        c.error("expected a leaf label or '('")

    shape = node()
    c.literal(";")
    c.end()
    return _checked(PhyloTree.build(count, shape), validate_phylo)


# -- containment decision vectors -------------------------------------------


def format_decisions(dec):
    parts = []
    for entry in dec.entries:
        if entry == KEEP:
            parts.append("K")
        else:
            i, side = entry
            parts.append(f"({i},{side})")
    return f"dec {dec.leaves}: " + " ".join(parts)


def parse_decisions(text):
    c = _Cursor(text)
    c.literal("dec")
    n = c.integer()
    c.literal(":")
    entries = []
    while not c.done():
        ch = c.peek()
        if ch == "K":
            c.literal("K")
            entries.append(KEEP)
        elif ch == "(":
            c.literal("(")
            i = c.integer()
            c.literal(",")
            side = c.peek()
            if side not in ("L", "R"):
                c.error("expected side L or R")
            c.literal(side)
            c.literal(")")
            entries.append((i, side))
        else:
            c.error("expected K or '('")
    return _checked(DecisionVector(n, tuple(entries)), validate_decisions)


# -- line dispatch ----------------------------------------------------------

_PARSERS = {
    "rtcn": parse_rtcn,
    "boat": parse_boat,
    "perm": parse_perm,
    "dec": parse_decisions,
}


def parse_object(line):
    """Parse a line of any grammar, keyed on its leading word or shape."""
    head = line.split(" ", 1)[0].rstrip("\n")
    if head in _PARSERS:
        return _PARSERS[head](line)
    stripped = line.lstrip()
    if stripped[:1] == "(" or stripped[:1].isdigit():
        return parse_phylo(line)
    raise ParseError("unrecognised object grammar", 0)


def format_object(obj):
    if isinstance(obj, EventCode):
        return format_rtcn(obj)
    if isinstance(obj, BoatSequence):
        return format_boat(obj)
    if isinstance(obj, Permutation):
        return format_perm(obj)
    if isinstance(obj, PhyloTree):
        return format_phylo(obj)
    if isinstance(obj, DecisionVector):
        return format_decisions(obj)
    raise TypeError(f"no text form for {type(obj).__name__}")
