"""Random ideals of quadrics and the bounds they are checked against.

Two sampling modes:

* ``uniform``: every coefficient of every degree-2 monomial is uniform in
  F_p.  Four such quadrics are a complete intersection with probability
  close to one, so this mode almost never produces heights below 4.
* ``mixed``: each trial draws a shape first.  ``cover-c`` quadrics all
  lie in an ideal of c random linear forms (height at most c), and
  ``few-k`` quadrics are forms in k random linear forms.  This reaches
  heights 1 to 4 and, with ``few-3``, the extremal e = 6 case.

Independence is enforced by resampling until the quadrics are linearly
independent.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .groebner import Ideal
from .idealops import _span_rank, height
from .polycore import Polynomial, PolynomialRing
from .resolve import free_resolution, hilbert_from_betti

SHAPES = ("uniform", "cover-1", "cover-2", "cover-3", "few-3", "few-4")
TIGHT_VARS = ("x", "y", "z", "a", "b", "c", "d")


def _random_linear(ring: PolynomialRing, rng: random.Random) -> Polynomial:
    return ring.from_terms((rng.randrange(ring.p), [int(i == v) for i in range(ring.n)])
                           for v in range(ring.n))


def _random_quadric_in(ring: PolynomialRing, forms: list[Polynomial], rng: random.Random) -> Polynomial:
    f = ring.zero()
    for a, b in itertools.combinations_with_replacement(range(len(forms)), 2):
        c = rng.randrange(ring.p)
        if c:
            f = f + (forms[a] * forms[b]).scale(c)
    return f


def random_quadrics(ring: PolynomialRing, count: int, rng: random.Random,
                    shape: str = "uniform") -> list[Polynomial]:
    """``count`` linearly independent quadrics of the given shape."""
    while True:
        if shape == "uniform":
            qs = [_random_quadric_in(ring, list(ring.gens()), rng) for _ in range(count)]
        elif shape.startswith("cover-"):
            c = int(shape.split("-")[1])
            ls = [_random_linear(ring, rng) for _ in range(c)]
            qs = []
            for _ in range(count):
                f = ring.zero()
                for l in ls:
                    f = f + l * _random_linear(ring, rng)
                qs.append(f)
        elif shape.startswith("few-"):
            k = int(shape.split("-")[1])
            ls = [_random_linear(ring, rng) for _ in range(k)]
            qs = [_random_quadric_in(ring, ls, rng) for _ in range(count)]
        else:
            raise ValueError(f"unknown sample shape {shape!r}")
        if _span_rank(qs) == count:
            return qs


def trial_rng(seed: int, index: int) -> random.Random:
    """Per-trial generator, so trials can run in any order or process."""
    return random.Random(seed * 1_000_003 + index)


def sample_ideal(nvars: int, gens: int, seed: int, index: int, mode: str = "uniform",
                 modulus: int | None = None) -> tuple[Ideal, str]:
    ring = PolynomialRing([f"x{i}" for i in range(1, nvars + 1)], modulus)
    rng = trial_rng(seed, index)
    shape = "uniform" if mode == "uniform" else rng.choice(SHAPES)
    return Ideal(ring, random_quadrics(ring, gens, rng, shape)), shape


def tight_examples(modulus: int | None = None) -> dict[str, Ideal]:
    """I_2 and I_3 in seven variables; both have pd 6."""
    ring = PolynomialRing(list(TIGHT_VARS), modulus)
    return {
        "I_2": Ideal(ring, [ring.parse(s) for s in ("x^2", "y^2", "a*x+b*y", "c*x+d*y")]),
        "I_3": Ideal(ring, [ring.parse(s) for s in ("x^2", "y^2", "z^2", "a*x+b*y+c*z")]),
    }


@dataclass
class QuadricRecord:
    ht: int
    pd: int
    e: int
    betti: list[int]
    checks: dict[str, str] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "fail" if "fail" in self.checks.values() else "pass"


def invariants_of(I: Ideal) -> tuple[int, int, int, list[int]]:
    C = free_resolution(I)
    e = hilbert_from_betti(C.betti(), I.ring.n).multiplicity
    return height(I), C.length, e, C.ranks()


def check_main_bounds(I: Ideal) -> QuadricRecord:
    """Bounds for four quadrics: pd <= 6, and per height the sharper facts."""
    ht, pd, e, ranks = invariants_of(I)
    rec = QuadricRecord(ht, pd, e, ranks)
    ok = lambda b: "pass" if b else "fail"
    rec.checks["pd<=6"] = ok(pd <= 6)
    rec.checks["pd<=nvars"] = ok(pd <= I.ring.n)
    if ht == 4:
        rec.checks["pd<=4"] = ok(pd <= 4)
    elif ht == 3:
        rec.checks["e<=6"] = ok(e <= 6)
        if e == 6:
            rec.checks["e=6=>pd=3"] = ok(pd == 3)
    elif ht == 2:
        rec.checks["pd<=2*4-2"] = ok(pd <= 6)
    return rec


def question_bound(h: int, n: int) -> int:
    """h(n - h + 1) for n generators of height h."""
    return h * (n - h + 1)
