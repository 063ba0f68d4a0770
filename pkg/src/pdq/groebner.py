"""Buchberger's algorithm for ideals and for submodules of graded free modules.

Module elements are plain dicts ``{term: coeff}`` whose terms are packed
monomials with the module position stored above the degree field (see
``PolynomialRing.pos_shift``).  An ideal is the rank-one case.

The engine optionally tracks, for each basis element, its expression in
terms of the *minimal* input generators.  Every S-pair that reduces to
zero then yields a syzygy among those generators, and the collected
syzygies generate the whole syzygy module (Schreyer).  This is what the
resolution code iterates.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .polycore import GREVLEX, FIELD_MASK, MonomialOrder, Polynomial, PolynomialRing

DEGREE_CAP = 30
INHOMOGENEOUS_DEGREE_CAP = 40


class DegreeCapExceeded(RuntimeError):
    pass


def module_key(ring: PolynomialRing, shifts: Sequence[int]) -> Callable[[int], int]:
    """Degree-compatible term-over-position order on a graded free module.

    Terms compare by total degree (monomial degree plus the shift of the
    position), then grevlex on the monomial, then by position (lower
    index is larger).
    """
    low = ring.low
    deg_shift = ring.deg_shift
    pos_shift = ring.pos_shift
    mono_mask = ring.mono_mask
    shifts = list(shifts)
    maxpos = (1 << 20) - 1
    cache: dict[int, int] = {}

    def key(t):
        k = cache.get(t)
        if k is None:
            pos = t >> pos_shift
            mono = t & mono_mask
            tdeg = ((mono >> deg_shift) & FIELD_MASK) + shifts[pos] + (1 << 15)
            k = (((tdeg << pos_shift) | (mono ^ low)) << 20) | (maxpos - pos)
            cache[t] = k
        return k

    return key


class _Context:
    """Ring constants and order bound into locals for the inner loops."""

    def __init__(self, ring: PolynomialRing, key, shifts: Sequence[int] | None = None):
        self.ring = ring
        self.p = ring.p
        self.key = key
        self.shifts = list(shifts) if shifts is not None else [0]
        self.is_ideal = shifts is None
        self.pos_shift = ring.pos_shift
        self.deg_shift = ring.deg_shift

    def tdeg(self, t: int) -> int:
        return ((t >> self.deg_shift) & FIELD_MASK) + self.shifts[t >> self.pos_shift]

    def max_tdeg(self, f: dict) -> int:
        tdeg = self.tdeg
        return max(tdeg(t) for t in f)


def _lead(f: dict, key) -> int:
    return max(f, key=key)


def reduce_full(f: dict, basis: list, ctx: _Context, rep: dict | None = None,
                by_pos: dict | None = None) -> tuple[dict, dict | None]:
    """Full normal form of ``f`` modulo ``basis`` (list of ``_Elem``).

    Returns (remainder, updated representation).  ``f`` and ``rep`` are
    consumed.  First-match divisor selection in basis order.
    """
    if not f:
        return f, rep
    ring = ctx.ring
    p = ctx.p
    key = ctx.key
    guard = ring.guard
    check = ring.div_check
    pos_shift = ctx.pos_shift
    heap = [(-key(t), t) for t in f]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    rem: dict[int, int] = {}
    while heap:
        _, t = pop(heap)
        c = f.get(t)
        if c is None:
            continue
        cands = by_pos.get(t >> pos_shift, ()) if by_pos is not None else basis
        tg = t | guard
        for el in cands:
            if (tg - el.lm) & check == guard:
                break
        else:
            rem[t] = c
            del f[t]
            continue
        q = t - el.lm
        for m, cg in el.poly.items():
            mm = m + q
            v = f.get(mm)
            if v is None:
                f[mm] = (-c * cg) % p
                push(heap, (-key(mm), mm))
            else:
                v = (v - c * cg) % p
                if v:
                    f[mm] = v
                else:
                    del f[mm]
        if rep is not None and el.rep:
            for m, cg in el.rep.items():
                mm = m + q
                v = (rep.get(mm, 0) - c * cg) % p
                if v:
                    rep[mm] = v
                else:
                    rep.pop(mm, None)
    return rem, rep


class _Elem:
    __slots__ = ("lm", "poly", "rep", "deg")

    def __init__(self, lm, poly, rep, deg):
        self.lm = lm
        self.poly = poly
        self.rep = rep
        self.deg = deg


def _scale(f: dict, c: int, p: int) -> dict:
    return {m: v * c % p for m, v in f.items()}


def _shift(f: dict, q: int, c: int, p: int) -> dict:
    return {m + q: v * c % p for m, v in f.items()}


def _sub_into(acc: dict, g: dict, p: int) -> dict:
    for m, v in g.items():
        w = (acc.get(m, 0) - v) % p
        if w:
            acc[m] = w
        else:
            acc.pop(m, None)
    return acc


@dataclass
class EngineResult:
    basis: list                      # list of _Elem (a Groebner basis, not reduced)
    mingens: list = field(default_factory=list)      # minimal generators (module dicts)
    mingen_degrees: list = field(default_factory=list)
    syzygies: list = field(default_factory=list)     # dicts over the rep module


def run_buchberger(gens: Sequence[dict], ctx: _Context, *, track: bool = False,
                   rep_ring_unit: Callable[[int], int] | None = None,
                   product_criterion: bool = True,
                   homogeneous: bool = True,
                   degree_cap: int = DEGREE_CAP) -> EngineResult:
    """Buchberger with normal pair selection (smallest lcm degree first).

    With ``homogeneous`` input the queue is processed degree by degree,
    S-pairs before input generators of the same degree, so an input
    generator whose remainder is nonzero is a minimal generator.  When
    ``track`` is set, syzygies among those minimal generators are
    collected; ``rep_ring_unit(k)`` must return the packed term for the
    k-th basis vector of the representation module.
    """
    ring = ctx.ring
    p = ctx.p
    key = ctx.key
    pos_shift = ctx.pos_shift
    basis: list[_Elem] = []
    by_pos: dict[int, list[_Elem]] = {}
    result = EngineResult(basis)
    queue: list = []
    seq = 0
    for g in gens:
        if g:
            d = ctx.max_tdeg(g)
            queue.append((d, 1, seq, g, None))
            seq += 1
    heapq.heapify(queue)
    # coprime leading terms only certify a zero S-pair for ideals
    use_product = product_criterion and not track and ctx.is_ideal

    def add_element(poly: dict, rep: dict | None):
        nonlocal seq
        lm = _lead(poly, key)
        c = poly[lm]
        if c != 1:
            inv = pow(c, -1, p)
            poly = _scale(poly, inv, p)
            if rep is not None:
                rep = _scale(rep, inv, p)
        pos = lm >> pos_shift
        el = _Elem(lm, poly, rep, ctx.tdeg(lm))
        same = by_pos.setdefault(pos, [])
        j = len(basis)
        # Pair selection: for the new element keep only the pairs whose
        # quotient lcm/lm_j is minimal among all (i, j), i < j, in the same
        # position (Schreyer / Gebauer-Moeller M-criterion).
        cands = []
        for i_el in same:
            l = ring.lcm(i_el.lm, lm)
            cands.append((ring.mdeg(l), l - lm, l, i_el))
        cands.sort(key=lambda t: t[0])
        kept = []
        for dq, q, l, i_el in cands:
            qg = q | ring.guard
            if any((qg - k[1]) & ring.div_check == ring.guard for k in kept):
                continue
            kept.append((dq, q, l, i_el))
        for dq, q, l, i_el in kept:
            if use_product and ring.mdeg(l) == ring.mdeg(i_el.lm) + ring.mdeg(lm):
                continue
            d = ctx.tdeg(l)
            heapq.heappush(queue, (d, 0, seq, i_el, el))
            seq += 1
        same.append(el)
        basis.append(el)

    while queue:
        d, kind, _, a, b = heapq.heappop(queue)
        if d > degree_cap:
            raise DegreeCapExceeded(f"Groebner computation passed degree {degree_cap}")
        if kind == 0:
            ea, eb = a, b
            l = ring.lcm(ea.lm, eb.lm)
            qa = l - ea.lm
            qb = l - eb.lm
            s = _shift(ea.poly, qa, 1, p)
            _sub_into(s, _shift(eb.poly, qb, 1, p), p)
            rep = None
            if track:
                rep = _shift(ea.rep, qa, 1, p) if ea.rep else {}
                if eb.rep:
                    _sub_into(rep, _shift(eb.rep, qb, 1, p), p)
            r, rep = reduce_full(s, basis, ctx, rep, by_pos)
            if r:
                add_element(r, rep)
            elif track and rep:
                result.syzygies.append(rep)
        else:
            g = a
            rep = None
            k = len(result.mingens)
            if track:
                rep = {rep_ring_unit(k): 1}
            r, rep = reduce_full(dict(g), basis, ctx, rep, by_pos)
            if r:
                result.mingens.append(g)
                result.mingen_degrees.append(d)
                add_element(r, rep)
    return result


def interreduce(basis: Sequence[_Elem], ctx: _Context) -> list[dict]:
    """Reduced Groebner basis (monic, minimal, tail-reduced) from any GB."""
    ring = ctx.ring
    elems = sorted(basis, key=lambda e: ctx.key(e.lm))
    minimal: list[_Elem] = []
    for e in elems:
        eg = e.lm | ring.guard
        if any((eg - m.lm) & ring.div_check == ring.guard for m in minimal):
            continue
        minimal.append(e)
    out = []
    for i, e in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = dict(e.poly)
        c = tail.pop(e.lm)
        r, _ = reduce_full(tail, others, ctx)
        r[e.lm] = c
        inv = pow(c, -1, ctx.p)
        out.append(_scale(r, inv, ctx.p) if c != 1 else r)
    out.sort(key=lambda f: ctx.key(_lead(f, ctx.key)))
    return out


class GroebnerBasis:
    """Reduced Groebner basis of an ideal with respect to one order."""

    def __init__(self, ring: PolynomialRing, order: MonomialOrder, polys: Sequence[dict]):
        self.ring = ring
        self.order = order
        self._ctx = _Context(ring, ring.order_key(order))
        key = self._ctx.key
        self._elems = [_Elem(_lead(f, key), f, None, 0) for f in polys]
        self.generators = [Polynomial(ring, f) for f in polys]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def leading_monomials(self) -> list[int]:
        return [e.lm for e in self._elems]

    def is_unit(self) -> bool:
        return any(e.lm == 0 for e in self._elems)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        r, _ = reduce_full(dict(f.terms), self._elems, self._ctx)
        return Polynomial(self.ring, r)

    def reduces_to_zero(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order
                and [g.terms for g in self.generators] == [g.terms for g in other.generators])

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.generators]}, order={self.order})"


def spoly(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    ring = f.ring
    key = ring.order_key(order)
    lf = max(f.terms, key=key)
    lg = max(g.terms, key=key)
    l = ring.lcm(lf, lg)
    inv_f = ring.field.inv(f.terms[lf])
    inv_g = ring.field.inv(g.terms[lg])
    return f.mul_monomial(l - lf, inv_f) - g.mul_monomial(l - lg, inv_g)


def compute_gb(ring: PolynomialRing, polys: Sequence[Polynomial],
               order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    homogeneous = all(f.is_homogeneous() for f in polys)
    ctx = _Context(ring, ring.order_key(order))
    gens = [dict(f.terms) for f in polys if f]
    res = run_buchberger(gens, ctx, homogeneous=homogeneous,
                         degree_cap=DEGREE_CAP if homogeneous else INHOMOGENEOUS_DEGREE_CAP)
    return GroebnerBasis(ring, order, interreduce(res.basis, ctx))


def buchberger(ideal: "Ideal", order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    return ideal.groebner(order)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


class Ideal:
    """Ideal of a polynomial ring, with a lazily filled Groebner basis cache."""

    def __init__(self, ring: PolynomialRing, gens: Sequence[Polynomial | str] = (),
                 *, require_homogeneous: bool = True):
        self.ring = ring
        converted = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if require_homogeneous and not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            if g:
                converted.append(g)
        self.gens = tuple(converted)
        self._cache: dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        gb = self._cache.get(order)
        if gb is None:
            with self._lock:
                gb = self._cache.get(order)
                if gb is None:
                    gb = compute_gb(self.ring, self.gens, order)
                    self._cache[order] = gb
        return gb

    def contains(self, f: Polynomial | str) -> bool:
        if isinstance(f, str):
            f = self.ring.parse(f)
        if not f:
            return True
        return self.groebner().reduces_to_zero(f)

    def __contains__(self, f):
        return self.contains(f)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def issubset(self, other: Ideal) -> bool:
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: Ideal) -> bool:
        return self.groebner() == other.groebner()

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.equals(other)

    __hash__ = None

    def initial_ideal(self, order: MonomialOrder = GREVLEX) -> Ideal:
        return initial_ideal(self, order)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def contains(ideal: Ideal, f: Polynomial) -> bool:
    return ideal.contains(f)


def initial_ideal(ideal: Ideal, order: MonomialOrder = GREVLEX) -> Ideal:
    gb = ideal.groebner(order)
    ring = ideal.ring
    return Ideal(ring, [Polynomial(ring, {m: 1}) for m in gb.leading_monomials()])


def spolys_reduce_to_zero(gb: GroebnerBasis) -> bool:
    """Check the Buchberger criterion on every pair of the basis."""
    gens = gb.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if gb.normal_form(spoly(gens[i], gens[j], gb.order)):
                return False
    return True
