"""Ring-spec strings and the plain-text table file format.

Grammar (whitespace ignored, ``/`` binds tighter than ``x``)::

    spec  := term ("x" term)*
    term  := atom ("/" "(" [int ("," int)*] ")")*
    atom  := "Z" int | "nil2(" int ")" | "dual(" int ")" | "(" spec ")"

Quotient generators are element indices; for a bare ``Z<n>`` they are
residues and are reduced mod ``n``. In a product the element ``(r, s)`` has
index ``r * |S| + s``.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import BLRingError, OrderCapError, RingSpecError
from .ideals import ideal_generated
from .ring_core import DEFAULT_ORDER_CAP, FiniteRing, direct_product, dual, make_cyclic, nil2, quotient_ring


class _Parser:
    def __init__(self, text: str, order_cap: int):
        self.text = text
        self.pos = 0
        self.order_cap = order_cap

    def error(self, message: str, pos: int | None = None):
        raise RingSpecError(message, self.text, self.pos if pos is None else pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str) -> None:
        self.skip()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected {token!r}")
        self.pos += len(token)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse(self) -> FiniteRing:
        ring = self.spec()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return ring

    def spec(self) -> FiniteRing:
        ring, _ = self.term()
        while self.peek() == "x":
            self.pos += 1
            start = self.pos
            rhs, _ = self.term()
            try:
                ring = direct_product(ring, rhs, self.order_cap)
            except OrderCapError as exc:
                self.error(str(exc), start)
        return ring

    def term(self) -> tuple[FiniteRing, bool]:
        ring, cyclic = self.atom()
        while self.peek() == "/":
            self.pos += 1
            self.expect("(")
            start = self.pos
            gens = []
            if self.peek() != ")":
                gens.append(self.integer())
                while self.peek() == ",":
                    self.pos += 1
                    gens.append(self.integer())
            self.expect(")")
            if cyclic:
                gens = [g % ring.order for g in gens]
            bad = [g for g in gens if g >= ring.order]
            if bad:
                self.error(f"generator {bad[0]} outside ring of order {ring.order}", start)
            ring, _ = quotient_ring(ring, ideal_generated(ring, gens))
            cyclic = False
        return ring, cyclic

    def atom(self) -> tuple[FiniteRing, bool]:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            ring = self.spec()
            self.expect(")")
            return ring, False
        if c == "Z":
            self.pos += 1
            n = self.integer()
            if n < 1:
                self.error("Z<n> needs n >= 1", start)
            if n > self.order_cap:
                self.error(f"order {n} exceeds cap {self.order_cap}", start)
            return make_cyclic(n), True
        for name, build in (("nil2", nil2), ("dual", dual)):
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                self.expect("(")
                p = self.integer()
                self.expect(")")
                if p ** (3 if name == "nil2" else 2) > self.order_cap:
                    self.error(f"{name}({p}) exceeds order cap {self.order_cap}", start)
                try:
                    return build(p), False
                except (ValueError, BLRingError) as exc:
                    self.error(str(exc), start)
        self.error("expected Z<n>, nil2(p), dual(p) or '('")


def parse_ring(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Build the ring described by ``text``; the ring's label is the normalised spec."""
    return _Parser(text, order_cap).parse()


def read_corpus_file(path) -> list[str]:
    """Ring specs from a file: one per line, ``#`` starts a comment."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


# ---------------------------------------------------------------------------
# table files
# ---------------------------------------------------------------------------


def load_table_file(path, label: str | None = None) -> FiniteRing:
    """Read ``order n``, optional ``unity i``, then ``n`` add rows and ``n`` mul rows."""
    path = Path(path)
    tokens = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if len(tokens) < 2 or tokens[0] != "order":
        raise RingSpecError(f"{path}: table file must start with 'order <n>'")
    n = int(tokens[1])
    rest = tokens[2:]
    unity = None
    if rest and rest[0] == "unity":
        unity = int(rest[1])
        rest = rest[2:]
    if len(rest) != 2 * n * n:
        raise RingSpecError(f"{path}: expected {2 * n * n} table entries, found {len(rest)}")
    values = np.array([int(t) for t in rest], dtype=np.int64)
    add = values[: n * n].reshape(n, n)
    mul = values[n * n :].reshape(n, n)
    return FiniteRing(add, mul, unity=unity, label=label or path.stem)


def dump_table_file(R: FiniteRing) -> str:
    lines = [f"order {R.order}"]
    if R.has_unity:
        lines.append(f"unity {R.unity}")
    lines.extend(" ".join(map(str, row)) for row in R.add.tolist())
    lines.extend(" ".join(map(str, row)) for row in R.mul.tolist())
    return "\n".join(lines) + "\n"


def load_ring(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """A ring-spec string, or a path to a table file if one exists at that path."""
    p = Path(text)
    if p.suffix in (".txt", ".ring", ".tbl") and p.is_file():
        return load_table_file(p)
    return parse_ring(text, order_cap)
