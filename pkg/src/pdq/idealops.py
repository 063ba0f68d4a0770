"""Sums, intersections, quotients, heights, linkage and determinantal ideals."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .groebner import Ideal, compute_gb
from .polycore import MonomialOrder, Polynomial, PolynomialRing

RADICAL_POWER_CAP = 12
REGULAR_SEQUENCE_ATTEMPTS = 50
DEFAULT_SEED = 7


class RegularSequenceError(ValueError):
    pass


class LinkError(ValueError):
    pass


def _check_same_ring(*ideals: Ideal) -> PolynomialRing:
    ring = ideals[0].ring
    for I in ideals[1:]:
        if I.ring != ring:
            raise ValueError("ideals live in different rings")
    return ring


def ideal_from(ring: PolynomialRing, gens: Sequence[Polynomial | str]) -> Ideal:
    return Ideal(ring, gens)


def interreduce_generators(ring: PolynomialRing, gens: Sequence[Polynomial]) -> list[Polynomial]:
    """Drop zero and redundant generators, keeping a minimal homogeneous subset.

    Generators are processed by increasing degree (ties in input order);
    one is kept iff it is not in the ideal spanned by those kept so far.
    """
    gens = sorted([g for g in gens if g], key=lambda g: g.degree())
    kept: list[Polynomial] = []
    for g in gens:
        if kept and Ideal(ring, kept).contains(g):
            continue
        kept.append(g.monic())
    return kept


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    ring = _check_same_ring(I, J)
    return Ideal(ring, interreduce_generators(ring, list(I.gens) + list(J.gens)))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    ring = _check_same_ring(I, J)
    return Ideal(ring, interreduce_generators(ring, [f * g for f in I.gens for g in J.gens]))


def power(I: Ideal, k: int) -> Ideal:
    gens = [I.ring.one()]
    for _ in range(k):
        gens = interreduce_generators(I.ring, [f * g for f in gens for g in I.gens])
    return Ideal(I.ring, gens)


# -- intersection -----------------------------------------------------------

def _elimination_intersection(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    tag = "t_"
    while tag in ring.names:
        tag += "_"
    big = ring.extend([tag], front=True)
    t = big.var(0)
    one = big.one()
    gens = [t * g.change_ring(big) for g in I.gens]
    gens += [(one - t) * g.change_ring(big) for g in J.gens]
    gb = compute_gb(big, gens, MonomialOrder.elimination(1))
    keep = []
    for g in gb.generators:
        if not any(big.exponents(m)[0] for m in g.terms):
            keep.append(Polynomial(ring, {_drop_first(big, ring, m): c
                                         for m, c in g.terms.items()}))
    return Ideal(ring, interreduce_generators(ring, keep))


def _drop_first(big: PolynomialRing, ring: PolynomialRing, m: int) -> int:
    return ring.monomial(big.exponents(m)[1:])


def _kernel_first_row(ring: PolynomialRing, rows: list[list[Polynomial]]) -> list[Polynomial]:
    from .resolve import DifferentialMatrix, GradedFreeModule, kernel_of_columns

    nrows = len(rows)
    ncols = len(rows[0])
    # Shifts so that every column is homogeneous: the first column has
    # source degree 0 entries sitting in target degrees given by row shifts.
    target = []
    for i in range(nrows):
        e = rows[i][0]
        target.append(-e.degree() if e else 0)
    src = []
    for j in range(ncols):
        deg = 0
        for i in range(nrows):
            e = rows[i][j]
            if e:
                deg = e.degree() + target[i]
                break
        src.append(deg)
    m = DifferentialMatrix(ring, GradedFreeModule(tuple(src)), GradedFreeModule(tuple(target)), rows)
    if not m.is_homogeneous():
        raise ValueError("matrix is not homogeneous")
    ker = kernel_of_columns(m)
    return [e for e in ker.entries[0] if e]


def _syzygy_intersection(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    zero = ring.zero()
    one = ring.one()
    # f in I cap J  <=>  (f, -a, -b) is a syzygy of [[1, I, 0], [1, 0, J]]
    row1 = [one] + list(I.gens) + [zero] * len(J.gens)
    row2 = [one] + [zero] * len(I.gens) + list(J.gens)
    return Ideal(ring, interreduce_generators(ring, _kernel_first_row(ring, [row1, row2])))


def ideal_intersection(I: Ideal, J: Ideal, method: str = "syzygy") -> Ideal:
    """I cap J, by a module syzygy computation or by tag-variable elimination."""
    ring = _check_same_ring(I, J)
    if not I.gens or not J.gens:
        return Ideal(ring, [])
    if method == "elimination":
        return _elimination_intersection(I, J)
    if method == "syzygy":
        return _syzygy_intersection(I, J)
    raise ValueError(f"unknown method {method!r}")


# -- quotient ---------------------------------------------------------------

def _exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when g divides f (multivariate long division, grevlex)."""
    ring = f.ring
    key = ring.order_key()
    lg = max(g.terms, key=key)
    inv = ring.field.inv(g.terms[lg])
    q: dict[int, int] = {}
    r = f
    while r:
        lr = max(r.terms, key=key)
        if not ring.divides(lg, lr):
            raise ValueError("not an exact division")
        mono = lr - lg
        c = r.terms[lr] * inv % ring.p
        q[mono] = c
        r = r - g.mul_monomial(mono, c)
    return Polynomial(ring, q)


def quotient_by_element(I: Ideal, g: Polynomial, method: str = "syzygy") -> Ideal:
    ring = I.ring
    if not g:
        return Ideal(ring, [ring.one()])
    if I.contains(g):
        return Ideal(ring, [ring.one()])
    inter = ideal_intersection(I, Ideal(ring, [g]), method=method)
    return Ideal(ring, interreduce_generators(ring, [_exact_divide(h, g) for h in inter.gens]))


def _syzygy_quotient(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    zero = ring.zero()
    m = len(J.gens)
    k = len(I.gens)
    # f in I:J  <=>  f*g_i in I for all i: kernel of [g | diag(I, ..., I)]
    rows = []
    for i, g in enumerate(J.gens):
        row = [g]
        for b in range(m):
            row += list(I.gens) if b == i else [zero] * k
        rows.append(row)
    return Ideal(ring, interreduce_generators(ring, _kernel_first_row(ring, rows)))


def ideal_quotient(I: Ideal, J: Ideal | Polynomial, method: str = "syzygy") -> Ideal:
    """I : J.

    ``method="syzygy"`` solves one module syzygy problem; ``"elimination"``
    intersects the element quotients I : g, each from an elimination
    intersection followed by exact division.
    """
    ring = I.ring
    if isinstance(J, Polynomial):
        J = Ideal(ring, [J])
    _check_same_ring(I, J)
    gens = [g for g in J.gens if not I.contains(g)]
    if not gens:
        return Ideal(ring, [ring.one()])
    if not I.gens:
        return Ideal(ring, [])
    if method == "syzygy":
        return _syzygy_quotient(I, Ideal(ring, gens))
    if method == "elimination":
        out = None
        for g in gens:
            q = quotient_by_element(I, g, method="elimination")
            out = q if out is None else ideal_intersection(out, q, method="elimination")
        return out
    raise ValueError(f"unknown method {method!r}")


# -- dimension --------------------------------------------------------------

def _min_hitting_set(supports: list[int], n: int) -> int:
    """Size of a smallest variable set meeting every support bitmask."""
    supports = sorted(set(supports), key=lambda s: bin(s).count("1"))
    if not supports:
        return 0
    if any(s == 0 for s in supports):
        return n
    best = n

    def search(remaining: list[int], chosen: int, size: int):
        nonlocal best
        if size >= best:
            return
        rest = [s for s in remaining if not s & chosen]
        if not rest:
            best = size
            return
        s = min(rest, key=lambda s: bin(s).count("1"))
        v = s
        while v:
            bit = v & -v
            search(rest, chosen | bit, size + 1)
            v ^= bit

    search(supports, 0, 0)
    return best


def height(I: Ideal) -> int:
    """Codimension of S/I read off the grevlex initial ideal (n for the unit ideal)."""
    ring = I.ring
    if not I.gens:
        return 0
    gb = I.groebner()
    if gb.is_unit():
        return ring.n
    supports = []
    for m in gb.leading_monomials():
        mask = 0
        for i in ring.support(m):
            mask |= 1 << i
        supports.append(mask)
    return _min_hitting_set(supports, ring.n)


def dimension(I: Ideal) -> int:
    if I.gens and I.is_unit():
        return -1
    return I.ring.n - height(I)


def multiplicity(I: Ideal) -> int:
    from .resolve import hilbert_from_initial_ideal
    return hilbert_from_initial_ideal(I).multiplicity


# -- regular sequences and linkage ------------------------------------------

def find_regular_sequence(I: Ideal, g: int, seed: int = DEFAULT_SEED) -> list[Polynomial]:
    """g homogeneous elements of I generating a height-g ideal.

    Generators are tried first, lowest degree first; if that greedy pass
    gets stuck, random combinations of same-degree generators are tried
    (seeded, at most 50 attempts per missing element).
    """
    ring = I.ring
    if g == 0:
        return []
    if height(I) < g:
        raise RegularSequenceError(f"ideal has height {height(I)} < {g}")
    rng = random.Random(seed)
    gens = sorted(I.gens, key=lambda f: f.degree())
    by_degree: dict[int, list[Polynomial]] = {}
    for f in gens:
        by_degree.setdefault(f.degree(), []).append(f)
    seq: list[Polynomial] = []
    for f in gens:
        if len(seq) == g:
            break
        if height(Ideal(ring, seq + [f])) == len(seq) + 1:
            seq.append(f)
    attempts = 0
    while len(seq) < g:
        if attempts >= REGULAR_SEQUENCE_ATTEMPTS:
            raise RegularSequenceError("no regular sequence found within the attempt budget")
        attempts += 1
        found = False
        for d in sorted(by_degree):
            same = by_degree[d]
            combo = ring.zero()
            for f in same:
                combo = combo + f.scale(rng.randrange(1, ring.p))
            if combo and height(Ideal(ring, seq + [combo])) == len(seq) + 1:
                seq.append(combo.monic())
                found = True
                break
        if not found:
            # restart the random part with a fresh draw of earlier elements
            seq = seq[:max(0, len(seq) - 1)]
    return seq


def is_regular_sequence(ring: PolynomialRing, alpha: Sequence[Polynomial]) -> bool:
    return height(Ideal(ring, list(alpha))) == len(alpha)


def link(I: Ideal, alpha: Sequence[Polynomial], method: str = "syzygy") -> Ideal:
    """(alpha) : I for a regular sequence alpha in I of length ht(I)."""
    ring = I.ring
    alpha = [a if isinstance(a, Polynomial) else ring.parse(a) for a in alpha]
    for a in alpha:
        if not I.contains(a):
            raise LinkError(f"{a} is not in the ideal")
    h = height(I)
    if len(alpha) != h:
        raise LinkError(f"need {h} elements, got {len(alpha)}")
    if not is_regular_sequence(ring, alpha):
        raise LinkError("alpha is not a regular sequence")
    return ideal_quotient(Ideal(ring, alpha), I, method=method)


def unmixed_part(I: Ideal, seed: int = DEFAULT_SEED, alpha: Sequence[Polynomial] | None = None,
                 method: str = "syzygy") -> Ideal:
    """Intersection of the minimal-height components, as a double link."""
    ring = I.ring
    if not I.gens:
        return I
    if I.is_unit():
        return I
    h = height(I)
    if alpha is None:
        alpha = find_regular_sequence(I, h, seed)
    A = Ideal(ring, list(alpha))
    K = ideal_quotient(A, I, method=method)
    return ideal_quotient(A, K, method=method)


def is_unmixed(I: Ideal, seed: int = DEFAULT_SEED) -> bool:
    return unmixed_part(I, seed).equals(I)


# -- determinantal ideals ---------------------------------------------------

def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion along the first row, memoized over column sets."""
    k = len(rows)
    if k == 0:
        raise ValueError("empty matrix")
    ring = rows[0][0].ring
    memo: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def det(r: int, cols: tuple[int, ...]) -> Polynomial:
        if r == k:
            return ring.one()
        hit = memo.get((r, cols))
        if hit is not None:
            return hit
        acc = ring.zero()
        for idx, c in enumerate(cols):
            e = rows[r][c]
            if not e:
                continue
            sub = det(r + 1, cols[:idx] + cols[idx + 1:])
            if sub:
                term = e * sub
                acc = acc - term if idx % 2 else acc + term
        memo[(r, cols)] = acc
        return acc

    return det(0, tuple(range(len(rows[0]))))


@dataclass
class LinearMatrix:
    entries: list[list[Polynomial]]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("empty matrix")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged matrix")
            for e in row:
                if e and (e.degree() > 1 or not e.is_homogeneous()):
                    raise ValueError(f"entry {e} is not a linear form")

    @classmethod
    def parse(cls, ring: PolynomialRing, rows: Sequence[Sequence[str]]) -> LinearMatrix:
        return cls([[ring.parse(e) if isinstance(e, str) else e for e in row] for row in rows])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def ring(self) -> PolynomialRing:
        return self.entries[0][0].ring


def minors(entries: Sequence[Sequence[Polynomial]], k: int) -> list[Polynomial]:
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    if not 1 <= k <= min(nrows, ncols):
        raise ValueError(f"minor size {k} out of range for a {nrows}x{ncols} matrix")
    out = []
    for rs in itertools.combinations(range(nrows), k):
        for cs in itertools.combinations(range(ncols), k):
            out.append(determinant([[entries[r][c] for c in cs] for r in rs]))
    return out


def minors_ideal(M, k: int) -> Ideal:
    entries = M.entries if hasattr(M, "entries") else M
    ms = minors(entries, k)
    ring = entries[0][0].ring
    return Ideal(ring, [m for m in ms if m])


def _span_rank(polys: Sequence[Polynomial]) -> int:
    """Dimension of the F_p-span of the given polynomials."""
    if not polys:
        return 0
    ring = polys[0].ring
    p = ring.p
    rows: list[dict[int, int]] = []
    pivots: list[int] = []
    for f in polys:
        v = dict(f.terms)
        for piv, row in zip(pivots, rows):
            c = v.get(piv)
            if c:
                for m, a in row.items():
                    w = (v.get(m, 0) - c * a) % p
                    if w:
                        v[m] = w
                    else:
                        v.pop(m, None)
        if v:
            piv = max(v)
            inv = ring.field.inv(v[piv])
            row = {m: a * inv % p for m, a in v.items()}
            # keep earlier rows reduced against the new pivot
            for i, r in enumerate(rows):
                c = r.get(piv)
                if c:
                    for m, a in row.items():
                        w = (r.get(m, 0) - c * a) % p
                        if w:
                            r[m] = w
                        else:
                            r.pop(m, None)
            rows.append(row)
            pivots.append(piv)
    return len(rows)


def minimal_generator_count(I: Ideal) -> int:
    """mu(I) for a homogeneous ideal, from a minimal homogeneous generating set."""
    return len(interreduce_generators(I.ring, list(I.gens)))


def classify_2x3(M: LinearMatrix) -> str:
    """Normal-form label of a 2x3 matrix of linear forms.

    ``case1``/``case2``/``case3`` when ht I_2 = 1 and mu(I_2) is 2/1/3;
    ``two-forms`` when ht I_2 = 2 and ht I_1 = 2; ``generic`` otherwise
    (``degenerate`` if every 2-minor vanishes).
    """
    if M.rows != 2 or M.cols != 3:
        raise ValueError("expected a 2x3 matrix")
    ring = M.ring
    i2 = minors_ideal(M, 2)
    if not i2.gens:
        return "degenerate"
    h2 = height(i2)
    if h2 == 1:
        mu = _span_rank(list(i2.gens))
        return {2: "case1", 1: "case2", 3: "case3"}[mu]
    i1 = Ideal(ring, [e for row in M.entries for e in row if e])
    if h2 == 2 and height(i1) == 2:
        return "two-forms"
    return "generic"


# -- radicals and primary ideals --------------------------------------------

@dataclass
class RadicalMembership:
    member: bool
    power: int | None = None
    cap_limited: bool = False

    def __bool__(self):
        return self.member


def radical_membership(I: Ideal, f: Polynomial, cap: int = RADICAL_POWER_CAP) -> RadicalMembership:
    """f in sqrt(I), by testing f^m in I for m = 1..cap."""
    if isinstance(f, str):
        f = I.ring.parse(f)
    gb = I.groebner()
    g = I.ring.one()
    for m in range(1, cap + 1):
        g = gb.normal_form(g * f)
        if not g:
            return RadicalMembership(True, m)
    return RadicalMembership(False, None, cap_limited=True)


@dataclass(frozen=True)
class LinearPrime:
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        gens = self.generators
        if len(gens) != 3:
            raise ValueError("a linear prime here has three generators")
        for g in gens:
            if not g or g.degree() != 1 or not g.is_homogeneous():
                raise ValueError(f"{g} is not a linear form")
        if _span_rank(list(gens)) != 3:
            raise ValueError("linear forms are dependent")

    @classmethod
    def parse(cls, ring: PolynomialRing, gens: Sequence[str]) -> LinearPrime:
        return cls(tuple(ring.parse(g) for g in gens))

    def ideal(self) -> Ideal:
        return Ideal(self.generators[0].ring, list(self.generators))


def is_primary_to(J: Ideal, P: Ideal | LinearPrime, seed: int = DEFAULT_SEED) -> bool:
    """Sufficient test for P-primary: J in P, P in sqrt(J), equal heights, J unmixed."""
    if isinstance(P, LinearPrime):
        P = P.ideal()
    if not J.issubset(P):
        return False
    for g in P.gens:
        if not radical_membership(J, g):
            return False
    if height(J) != height(P):
        return False
    return is_unmixed(J, seed)


def component_length(J: Ideal, P: LinearPrime, seed: int = DEFAULT_SEED) -> int:
    """Length of S_P/J_P for a P-primary J and linear P (equals e(S/J))."""
    if not is_primary_to(J, P, seed):
        raise ValueError("ideal is not primary to the given linear prime")
    return multiplicity(J)


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    ring = f.ring
    out = []
    for m, c in f.terms.items():
        e = list(ring.exponents(m))
        if e[i]:
            k = e[i]
            e[i] -= 1
            out.append((c * k, e))
    return ring.from_terms(out)


def essential_variable_count(polys: Sequence[Polynomial]) -> int:
    """Fewest linear forms in which all the given forms can be written.

    For a form of degree d this is the span of its (d-1)-fold partial
    derivatives; the union over all forms is spanned likewise.  Valid
    when p exceeds the degrees involved.
    """
    linear: list[Polynomial] = []
    for f in polys:
        layer = [f]
        for _ in range(max(f.degree() - 1, 0)):
            layer = [g for h in layer for g in (partial_derivative(h, i) for i in range(f.ring.n)) if g]
        linear.extend(layer)
    return _span_rank(linear)
