"""Minimal graded free resolutions, Betti tables, Hilbert data.

A resolution is built one homological step at a time.  Each step runs
the tracked Buchberger engine on the current generators inside their
graded free module: the generators that survive reduction are minimal
generators (they become the columns of the differential) and the zero
S-pairs give the next module of syzygy candidates.  Because every step
keeps only minimal generators the result is already minimal;
:func:`minimalize` is still applied for complexes built elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import hilbert
from .groebner import Ideal, _Context, module_key, run_buchberger
from .polycore import FIELD_MASK, Polynomial, PolynomialRing


@dataclass(frozen=True)
class GradedFreeModule:
    shifts: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def dual(self) -> GradedFreeModule:
        return GradedFreeModule(tuple(-s for s in self.shifts))


@dataclass
class DifferentialMatrix:
    """Map ``source -> target``; ``entries`` is target.rank x source.rank."""

    ring: PolynomialRing
    source: GradedFreeModule
    target: GradedFreeModule
    entries: list[list[Polynomial]]

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    @classmethod
    def from_rows(cls, ring: PolynomialRing, rows: Sequence[Sequence[Polynomial | str | int]],
                  target_shifts: Sequence[int] | None = None) -> DifferentialMatrix:
        """Build a matrix and infer homogeneous shifts from its entries.

        Target shifts default to zero for a single row; otherwise they must
        be given or derivable column by column.
        """
        entries = [[_coerce(ring, e) for e in row] for row in rows]
        nrows = len(entries)
        ncols = len(entries[0]) if entries else 0
        if target_shifts is None:
            target_shifts = [0] * nrows
        source = []
        for j in range(ncols):
            deg = None
            for i in range(nrows):
                e = entries[i][j]
                if e:
                    deg = e.degree() + target_shifts[i]
                    break
            source.append(0 if deg is None else deg)
        return cls(ring, GradedFreeModule(tuple(source)), GradedFreeModule(tuple(target_shifts)), entries)

    def column(self, j: int) -> list[Polynomial]:
        return [row[j] for row in self.entries]

    def transpose(self) -> DifferentialMatrix:
        """The dual map target^* -> source^*."""
        entries = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return DifferentialMatrix(self.ring, self.target.dual(), self.source.dual(), entries)

    def is_homogeneous(self) -> bool:
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e and (not e.is_homogeneous()
                          or e.degree() != self.source.shifts[j] - self.target.shifts[i]):
                    return False
        return True

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def has_unit_entry(self) -> bool:
        return any(e and any(m == 0 for m in e.terms) for row in self.entries for e in row)

    def __matmul__(self, other: DifferentialMatrix) -> DifferentialMatrix:
        if self.ncols != other.nrows:
            raise ValueError("incompatible shapes")
        zero = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return DifferentialMatrix(self.ring, other.source, self.target, out)

    def evaluate(self, point: Sequence[int]) -> list[list[int]]:
        return [[e.evaluate(point) if e else 0 for e in row] for row in self.entries]

    def substitute(self, images: Sequence[Polynomial]) -> DifferentialMatrix:
        target_ring = images[0].ring
        entries = [[e.substitute(images) if e else target_ring.zero() for e in row]
                   for row in self.entries]
        return DifferentialMatrix(target_ring, self.source, self.target, entries)

    def copy(self) -> DifferentialMatrix:
        return DifferentialMatrix(self.ring, self.source, self.target,
                                  [list(row) for row in self.entries])

    def __str__(self):
        return "\n".join("  ".join(str(e) for e in row) for row in self.entries)


def _coerce(ring, e):
    if isinstance(e, Polynomial):
        return e
    if isinstance(e, int):
        return ring.constant(e)
    return ring.parse(e)


@dataclass
class FreeComplex:
    """F_0 <- F_1 <- ... <- F_p with ``differentials[j-1]`` = d_j."""

    ring: PolynomialRing
    differentials: list[DifferentialMatrix]
    flags: list[str] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.differentials)

    def module(self, i: int) -> GradedFreeModule:
        if i == 0:
            return self.differentials[0].target if self.differentials else GradedFreeModule((0,))
        return self.differentials[i - 1].source

    def ranks(self) -> list[int]:
        return [self.module(i).rank for i in range(self.length + 1)]

    def d(self, j: int) -> DifferentialMatrix:
        return self.differentials[j - 1]

    def is_complex(self) -> bool:
        """Exact check that consecutive differentials compose to zero."""
        for j in range(1, self.length):
            if not (self.d(j) @ self.d(j + 1)).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        return not any(dm.has_unit_entry() for dm in self.differentials)

    def betti(self) -> BettiTable:
        beta: dict[tuple[int, int], int] = {}
        for i in range(self.length + 1):
            for s in self.module(i).shifts:
                beta[(i, s)] = beta.get((i, s), 0) + 1
        return BettiTable(beta)


@dataclass
class BettiTable:
    beta: dict[tuple[int, int], int]

    @property
    def pd(self) -> int:
        nz = [i for (i, _), v in self.beta.items() if v]
        return max(nz) if nz else 0

    def ranks(self) -> list[int]:
        top = self.pd
        out = [0] * (top + 1)
        for (i, _), v in self.beta.items():
            out[i] += v
        return out

    def numerator(self) -> dict[int, int]:
        """sum_{i,j} (-1)^i beta_{i,j} t^j as a sparse dict."""
        out: dict[int, int] = {}
        for (i, j), v in self.beta.items():
            out[j] = out.get(j, 0) + (-1) ** i * v
        return {j: c for j, c in out.items() if c}

    def format(self) -> str:
        """Macaulay2-style grid: column i, row j - i, entries beta_{i,j}."""
        if not self.beta:
            return "total:"
        cols = range(self.pd + 1)
        rows = sorted({j - i for (i, j), v in self.beta.items() if v})
        totals = self.ranks()
        width = max(len(str(v)) for v in totals + [0]) + 1
        lines = ["total:" + "".join(str(t).rjust(width) for t in totals)]
        for r in rows:
            cells = []
            for i in cols:
                v = self.beta.get((i, i + r), 0)
                cells.append(("." if v == 0 else str(v)).rjust(width))
            lines.append(f"{r:>5}:" + "".join(cells))
        return "\n".join(lines)


@dataclass
class HilbertData:
    numerator: list[int]
    nvars: int
    codim: int
    reduced_numerator: list[int]

    @property
    def multiplicity(self) -> int:
        return sum(self.reduced_numerator)

    @property
    def dimension(self) -> int:
        return self.nvars - self.codim


def _unit_term(ring: PolynomialRing):
    pos_shift = ring.pos_shift

    def unit(k):
        return k << pos_shift
    return unit


def resolve_submodule(ring: PolynomialRing, shifts: Sequence[int], gens: Sequence[dict],
                      max_length: int | None = None) -> FreeComplex:
    """Minimal resolution of F_0 / <gens> where F_0 has the given shifts."""
    unit = _unit_term(ring)
    pos_shift = ring.pos_shift
    mono_mask = ring.mono_mask
    diffs: list[DifferentialMatrix] = []
    cur_shifts = list(shifts)
    cur = [g for g in gens if g]
    limit = ring.n + 1 if max_length is None else max_length
    while cur and len(diffs) < limit:
        ctx = _Context(ring, module_key(ring, cur_shifts), cur_shifts)
        res = run_buchberger(cur, ctx, track=True, rep_ring_unit=unit)
        if not res.mingens:
            break
        cols = []
        for g in res.mingens:
            col: list[dict] = [dict() for _ in cur_shifts]
            for t, c in g.items():
                col[t >> pos_shift][t & mono_mask] = c
            cols.append(col)
        entries = [[Polynomial(ring, cols[j][i]) for j in range(len(cols))]
                   for i in range(len(cur_shifts))]
        diffs.append(DifferentialMatrix(ring, GradedFreeModule(tuple(res.mingen_degrees)),
                                        GradedFreeModule(tuple(cur_shifts)), entries))
        cur_shifts = list(res.mingen_degrees)
        cur = res.syzygies
    cx = FreeComplex(ring, diffs)
    if not diffs:
        cx.flags.append("zero-module" if not gens else "no-relations")
    return cx


def free_resolution(ideal: Ideal) -> FreeComplex:
    """Minimal graded free resolution of S/I."""
    ring = ideal.ring
    if ideal.is_unit():
        cx = FreeComplex(ring, [])
        cx.flags.append("unit-ideal")
        return cx
    gens = [dict(g.terms) for g in ideal.gens]
    return minimalize(resolve_submodule(ring, [0], gens))


def syzygies(m: DifferentialMatrix) -> DifferentialMatrix:
    """Minimal generators of the syzygy module of the columns of ``m``.

    The columns are first pruned to a minimal generating set of their
    span, so the returned matrix is the second differential of the
    minimal presentation of coker(m).
    """
    cx = resolve_submodule(m.ring, m.target.shifts, _columns_as_terms(m), max_length=2)
    if cx.length < 2:
        ring = m.ring
        src = cx.differentials[0].source if cx.differentials else m.source
        return DifferentialMatrix(ring, GradedFreeModule(()), src, [[] for _ in src.shifts])
    return cx.d(2)


def kernel_of_columns(m: DifferentialMatrix) -> DifferentialMatrix:
    """Syzygies of the given columns themselves (no pruning of columns)."""
    ring = m.ring
    unit = _unit_term(ring)
    ctx = _Context(ring, module_key(ring, m.target.shifts), m.target.shifts)
    gens = _columns_as_terms(m)
    res = run_buchberger(gens, ctx, track=True, rep_ring_unit=unit)
    # map minimal-generator indices back to the original column indices
    kept = []
    for g in res.mingens:
        kept.append(next(j for j, c in enumerate(gens) if c is g))
    dropped = [j for j in range(len(gens)) if j not in kept]
    relations = list(res.syzygies)
    pos_shift = ring.pos_shift
    mono_mask = ring.mono_mask
    # each dropped column is a combination of the kept ones; express it
    kept_ctx_basis = res.basis
    from .groebner import reduce_full  # local import keeps the public surface small
    for idx, j in enumerate(dropped):
        rep = {unit(len(kept) + idx): 1}
        r, rep = reduce_full(dict(gens[j]), kept_ctx_basis, ctx, rep)
        assert not r
        relations.append(rep)
    order = kept + dropped
    cols = []
    for rel in relations:
        col = [dict() for _ in range(len(gens))]
        for t, c in rel.items():
            col[order[t >> pos_shift]][t & mono_mask] = c
        cols.append(col)
    entries = [[Polynomial(ring, cols[k][i]) for k in range(len(cols))] for i in range(len(gens))]
    src = []
    for k in range(len(cols)):
        deg = 0
        for i in range(len(gens)):
            if entries[i][k]:
                deg = entries[i][k].degree() + m.source.shifts[i]
                break
        src.append(deg)
    return DifferentialMatrix(ring, GradedFreeModule(tuple(src)), m.source, entries)


def _columns_as_terms(m: DifferentialMatrix) -> list[dict]:
    ring = m.ring
    pos_shift = ring.pos_shift
    out = []
    for j in range(m.ncols):
        g = {}
        for i in range(m.nrows):
            e = m.entries[i][j]
            for mono, c in e.terms.items():
                g[mono | (i << pos_shift)] = c
        out.append(g)
    return out


def minimalize(cx: FreeComplex) -> FreeComplex:
    """Split off trivial summands until no differential has a unit entry.

    Units are eliminated lowest homological index first, then lowest
    (row, column), so the output is reproducible.
    """
    ring = cx.ring
    diffs = [dm.copy() for dm in cx.differentials]
    changed = True
    while changed:
        changed = False
        for j, dm in enumerate(diffs):
            hit = None
            for r, row in enumerate(dm.entries):
                for c, e in enumerate(row):
                    if e and len(e.terms) == 1 and 0 in e.terms:
                        hit = (r, c)
                        break
                if hit:
                    break
            if hit is None:
                continue
            r, c = hit
            a_inv = ring.field.inv(dm.entries[r][c].terms[0])
            pivot_row = dm.entries[r]
            pivot_col = [row[c] for row in dm.entries]
            new_entries = []
            for i, row in enumerate(dm.entries):
                if i == r:
                    continue
                f = pivot_col[i]
                new_row = []
                for k, e in enumerate(row):
                    if k == c:
                        continue
                    if f and pivot_row[k]:
                        e = e - (f * pivot_row[k]).scale(a_inv)
                    new_row.append(e)
                new_entries.append(new_row)
            src = tuple(s for k, s in enumerate(dm.source.shifts) if k != c)
            tgt = tuple(s for i, s in enumerate(dm.target.shifts) if i != r)
            diffs[j] = DifferentialMatrix(ring, GradedFreeModule(src), GradedFreeModule(tgt), new_entries)
            if j + 1 < len(diffs):
                nxt = diffs[j + 1]
                diffs[j + 1] = DifferentialMatrix(
                    ring, nxt.source, GradedFreeModule(src),
                    [row for i, row in enumerate(nxt.entries) if i != c])
            if j > 0:
                prv = diffs[j - 1]
                diffs[j - 1] = DifferentialMatrix(
                    ring, GradedFreeModule(tgt), prv.target,
                    [[e for k, e in enumerate(row) if k != r] for row in prv.entries])
            changed = True
            break
    while diffs and diffs[-1].ncols == 0:
        diffs.pop()
    return FreeComplex(ring, diffs, list(cx.flags))


def projective_dimension(ideal: Ideal) -> int:
    return free_resolution(ideal).betti().pd


def betti_table(ideal: Ideal) -> BettiTable:
    return free_resolution(ideal).betti()


def _reduce_numerator(num: dict[int, int] | list[int]) -> tuple[list[int], int, list[int]]:
    if isinstance(num, dict):
        top = max(num) if num else 0
        dense = [num.get(j, 0) for j in range(top + 1)]
    else:
        dense = list(num)
    dense = hilbert.trim(dense)
    q = dense
    c = 0
    while True:
        nq, exact = hilbert.divide_one_minus_t(q)
        if not exact:
            break
        q = nq
        c += 1
    return dense, c, q


def hilbert_from_betti(betti: BettiTable, nvars: int) -> HilbertData:
    dense, c, q = _reduce_numerator(betti.numerator())
    return HilbertData(dense, nvars, c, q)


def hilbert_from_initial_ideal(ideal: Ideal) -> HilbertData:
    ring = ideal.ring
    gb = ideal.groebner()
    exps = [ring.exponents(m) for m in gb.leading_monomials()]
    dense, c, q = _reduce_numerator(hilbert.monomial_numerator(exps))
    return HilbertData(dense, ring.n, c, q)


def hilbert_data(ideal: Ideal, method: str = "betti") -> HilbertData:
    if method == "betti":
        return hilbert_from_betti(free_resolution(ideal).betti(), ideal.ring.n)
    if method == "initial":
        return hilbert_from_initial_ideal(ideal)
    raise ValueError(f"unknown method {method!r}")


def multiplicity(ideal: Ideal, method: str = "initial") -> int:
    return hilbert_data(ideal, method).multiplicity


def resolve_cokernel(m: DifferentialMatrix) -> FreeComplex:
    """Minimal resolution of coker(m), m a homogeneous matrix."""
    return minimalize(resolve_submodule(m.ring, m.target.shifts, _columns_as_terms(m)))


def module_pd(cx: FreeComplex) -> int:
    """Projective dimension read off a minimal resolution (-1 for the zero module)."""
    if cx.length == 0:
        return 0 if cx.module(0).rank else -1
    return cx.length


class NotAlmostCompleteIntersection(ValueError):
    pass


def dual_coker_pd_bound(ideal: Ideal, seed: int = 7) -> int:
    """Upper bound max{h + 2, pd coker(d_{h+1}^T)} for an almost complete intersection.

    d is the minimal resolution of the unmixed part of the ideal and h
    its height.  Raises NotAlmostCompleteIntersection unless the ideal is
    minimally generated by h + 1 forms and contains a regular sequence
    of length h.
    """
    from .idealops import RegularSequenceError, find_regular_sequence, height, unmixed_part

    h = height(ideal)
    mingens = free_resolution(ideal)
    ngens = mingens.d(1).ncols if mingens.length else 0
    if ngens != h + 1:
        raise NotAlmostCompleteIntersection(
            f"{ngens} minimal generators at height {h}; expected {h + 1}")
    try:
        find_regular_sequence(ideal, h, seed)
    except RegularSequenceError as exc:
        raise NotAlmostCompleteIntersection(str(exc)) from None
    F = free_resolution(unmixed_part(ideal, seed))
    if F.length <= h:
        return h + 2
    dual = F.d(h + 1).transpose()
    return max(h + 2, module_pd(resolve_cokernel(dual)))


def mdeg(ring: PolynomialRing, t: int) -> int:
    return (t >> ring.deg_shift) & FIELD_MASK
