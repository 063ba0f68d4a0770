"""Plain-text ideal files.

Format::

    # comment
    ring p=32003 vars=x,y,z
    x^2 + y*z
    x*y        # trailing comments are allowed

The header is the first non-blank, non-comment line.  Every later
non-blank line holds one homogeneous polynomial in the declared
variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .groebner import Ideal
from .polycore import ParseError, Polynomial, PolynomialRing, format_polynomial

_HEADER = re.compile(r"ring\s+p=(\d+)\s+vars=(\S+)\s*$")


@dataclass
class IdealFile:
    ring: PolynomialRing
    polys: list[Polynomial]
    lines: list[int]

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.polys)

    def dumps(self) -> str:
        out = [f"ring p={self.ring.p} vars={','.join(self.ring.names)}"]
        out += [format_polynomial(f) for f in self.polys]
        return "\n".join(out) + "\n"


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_ideal_text(text: str, modulus: int | None = None) -> IdealFile:
    """Parse ideal-file text; ``modulus`` (if given) replaces the header's p."""
    ring = None
    polys: list[Polynomial] = []
    lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if ring is None:
            m = _HEADER.fullmatch(line)
            if not m:
                raise ParseError("expected header 'ring p=<modulus> vars=<names>'", lineno)
            names = m.group(2).split(",")
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable names", lineno)
            try:
                ring = PolynomialRing(names, modulus if modulus is not None else int(m.group(1)))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        try:
            f = ring.parse(line)
        except ParseError as exc:
            raise ParseError(exc.args[0] if exc.args else str(exc), lineno) from None
        if not f.is_homogeneous():
            raise ParseError(f"polynomial {line!r} is not homogeneous", lineno)
        polys.append(f)
        lines.append(lineno)
    if ring is None:
        raise ParseError("missing ring header", None)
    return IdealFile(ring, polys, lines)


def read_ideal_file(path: str | Path, modulus: int | None = None) -> IdealFile:
    return parse_ideal_text(Path(path).read_text(), modulus)
