"""Buchberger's algorithm with cofactor tracking, normal forms and quotient bases."""

from __future__ import annotations

import heapq
import logging

from .exceptions import CapExceeded, InfiniteDimensional, ResourceError
from .linalg import IncrementalBasis
from .polynomials import ORDERS, Poly

__all__ = [
    "ReducedGB",
    "buchberger",
    "normal_form",
    "standard_monomials",
    "MonomialBasis",
    "mult_matrix",
    "min_poly",
    "coordinates",
    "DEFAULT_STEP_BUDGET",
]

log = logging.getLogger(__name__)

DEFAULT_STEP_BUDGET = 10**7


def _neg_key(order):
    if order == "grevlex":
        return lambda e: (-sum(e), tuple(reversed(e)))
    if order == "lex":
        return lambda e: tuple(-x for x in e)
    raise ValueError(f"unknown monomial order {order!r}")


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add_scaled(target, src, mono, coeff):
    """target += coeff * x^mono * src, in place on term dicts."""
    for e, c in src.items():
        e2 = tuple(a + b for a, b in zip(e, mono))
        v = c * coeff
        if e2 in target:
            s = target[e2] + v
            if s:
                target[e2] = s
            else:
                del target[e2]
        else:
            target[e2] = v


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.limit is not None and self.steps > self.limit:
            raise ResourceError(f"reduction step budget of {self.limit} exhausted")


def reduce_terms(terms, divisors, negkey, budget=None, full=True):
    """Divide the term dict ``terms`` by monic divisors.

    ``divisors`` is a list of (leading exponent, term dict). Always cancels
    the largest reducible term first; the first divisor (in list order)
    whose leading monomial divides it is used. Returns
    ``(remainder, quotients)`` with quotients a dict index -> term dict.
    """
    p = dict(terms)
    rem = {}
    quotients = {}
    heap = [(negkey(e), e) for e in p]
    heapq.heapify(heap)
    seen = set(p)
    while heap:
        _, e = heapq.heappop(heap)
        seen.discard(e)
        c = p.get(e)
        if c is None:
            continue
        for i, (lm, g) in enumerate(divisors):
            if _divides(lm, e):
                break
        else:
            i = None
        if i is None:
            rem[e] = p.pop(e)
            if not full:
                rem.update(p)
                break
            continue
        if budget is not None:
            budget.tick()
        u = _sub(e, lm)
        q = quotients.setdefault(i, {})
        q[u] = q.get(u, 0) + c if u in q else c
        for ge, gc in g.items():
            e2 = tuple(a + b for a, b in zip(ge, u))
            v = gc * c
            if e2 in p:
                s = p[e2] - v
                if s:
                    p[e2] = s
                else:
                    del p[e2]
            else:
                p[e2] = -v
                if e2 not in seen:
                    seen.add(e2)
                    heapq.heappush(heap, (negkey(e2), e2))
    return rem, quotients


class ReducedGB:
    """Reduced Groebner basis with cofactors in terms of the input generators.

    ``polys[i] == sum(cofactors[i][a] * gens[a])`` for every i.
    """

    def __init__(self, table, order, polys, cofactors, gens, steps=0):
        self.table = table
        self.order = order
        self.polys = polys
        self.cofactors = cofactors
        self.gens = gens
        self.steps = steps
        self._negkey = _neg_key(order)
        self._divisors = [(p.leading(order)[0], p.terms) for p in polys]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    @property
    def leading_monomials(self):
        return [lm for lm, _ in self._divisors]

    def is_unit_ideal(self):
        return any(not any(lm) for lm in self.leading_monomials)

    def reduce(self, f, budget=None):
        """Return (remainder, quotients) of full division of ``f``."""
        rem, quo = reduce_terms(f.terms, self._divisors, self._negkey, budget)
        return Poly(self.table, rem, _clean=True), quo

    def normal_form(self, f):
        return self.reduce(f)[0]

    def contains(self, f):
        return not self.normal_form(f)

    def __repr__(self):
        return f"ReducedGB({[str(p) for p in self.polys]})"


def _monic(terms, order, field):
    lm = max(terms, key=ORDERS[order])
    lc = terms[lm]
    if lc == 1:
        return terms, None
    inv = field.one / lc
    return {e: c * inv for e, c in terms.items()}, inv


def buchberger(gens, order="grevlex", step_budget=DEFAULT_STEP_BUDGET, track_cofactors=True):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are selected by smallest lcm; the Gebauer-Moeller criteria prune
    redundant pairs. Cofactors expressing every basis element in terms of
    ``gens`` are carried along unless ``track_cofactors`` is false.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    table = gens[0].table
    field = table.field
    nvars = len(table.names)
    zero_mono = (0,) * nvars
    key = ORDERS[order]
    negkey = _neg_key(order)
    budget = _Budget(step_budget)

    polys = []  # term dicts, monic
    lms = []
    cofs = []  # list of per-generator term dicts

    def new_cof():
        return [{} for _ in gens]

    def scaled_cof(cof, c):
        return [{e: v * c for e, v in d.items()} for d in cof]

    active = []
    pairs = []  # heap of (key(lcm), i, j)

    def add(terms, cof):
        terms, inv = _monic(terms, order, field)
        if inv is not None and track_cofactors:
            cof = scaled_cof(cof, inv)
        h = len(polys)
        polys.append(terms)
        lms.append(max(terms, key=key))
        cofs.append(cof)
        _update(h)

    def _update(h):
        nonlocal active, pairs
        lh = lms[h]
        cand = [(g, _lcm(lh, lms[g])) for g in active]
        keep = []
        for idx, (g1, l1) in enumerate(cand):
            coprime = all(a == 0 or b == 0 for a, b in zip(lh, lms[g1]))
            if coprime:
                keep.append((g1, l1, True))
                continue
            dominated = False
            for jdx, (g2, l2) in enumerate(cand):
                if jdx == idx:
                    continue
                if _divides(l2, l1) and (l2 != l1 or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                keep.append((g1, l1, False))
        new_pairs = []
        for _, i, j in pairs:
            l = _lcm(lms[i], lms[j])
            if _divides(lh, l) and _lcm(lms[i], lh) != l and _lcm(lms[j], lh) != l:
                continue
            new_pairs.append((key(l), i, j))
        for g, l, coprime in keep:
            if not coprime:
                new_pairs.append((key(l), g, h))
        heapq.heapify(new_pairs)
        pairs = new_pairs
        active = [g for g in active if not _divides(lh, lms[g])] + [h]

    for a, g in enumerate(gens):
        if not g.terms:
            continue
        cof = new_cof()
        if track_cofactors:
            cof[a] = {zero_mono: field.one}
        # reduce against the current basis before adding
        divs = [(lms[i], polys[i]) for i in active]
        rem, quo = reduce_terms(g.terms, divs, negkey, budget)
        if not rem:
            continue
        if track_cofactors:
            for k, q in quo.items():
                src = cofs[active[k]]
                for qe, qc in q.items():
                    for t, d in zip(cof, src):
                        _add_scaled(t, d, qe, -qc)
        add(rem, cof)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        l = _lcm(lms[i], lms[j])
        ui, uj = _sub(l, lms[i]), _sub(l, lms[j])
        s = {}
        _add_scaled(s, polys[i], ui, field.one)
        _add_scaled(s, polys[j], uj, -field.one)
        if not s:
            continue
        cof = new_cof()
        if track_cofactors:
            for t, d in zip(cof, cofs[i]):
                _add_scaled(t, d, ui, field.one)
            for t, d in zip(cof, cofs[j]):
                _add_scaled(t, d, uj, -field.one)
        divs = [(lms[k], polys[k]) for k in active]
        rem, quo = reduce_terms(s, divs, negkey, budget)
        if not rem:
            continue
        if track_cofactors:
            for k, q in quo.items():
                src = cofs[active[k]]
                for qe, qc in q.items():
                    for t, d in zip(cof, src):
                        _add_scaled(t, d, qe, -qc)
        add(rem, cof)

    # interreduce: active set is already minimal
    basis = sorted(active, key=lambda i: key(lms[i]))
    final_terms = []
    final_cofs = []
    for idx, i in enumerate(basis):
        others = [(lms[k], polys[k]) for k in basis if k != i]
        tail = {e: c for e, c in polys[i].items() if e != lms[i]}
        rem, quo = reduce_terms(tail, others, negkey, budget)
        rem[lms[i]] = field.one
        cof = [dict(d) for d in cofs[i]]
        if track_cofactors:
            other_ids = [k for k in basis if k != i]
            for k, q in quo.items():
                src = cofs[other_ids[k]]
                for qe, qc in q.items():
                    for t, d in zip(cof, src):
                        _add_scaled(t, d, qe, -qc)
        final_terms.append(rem)
        final_cofs.append(cof)
    # interreduction used the unreduced tails of the others; that is fine since
    # they share leading terms, and one more pass makes the result canonical
    changed = True
    while changed:
        changed = False
        for idx in range(len(final_terms)):
            lm = max(final_terms[idx], key=key)
            others = [(max(final_terms[k], key=key), final_terms[k])
                      for k in range(len(final_terms)) if k != idx]
            tail = {e: c for e, c in final_terms[idx].items() if e != lm}
            rem, quo = reduce_terms(tail, others, negkey, budget)
            if not quo:
                continue
            changed = True
            rem[lm] = field.one
            other_ids = [k for k in range(len(final_terms)) if k != idx]
            if track_cofactors:
                for k, q in quo.items():
                    src = final_cofs[other_ids[k]]
                    for qe, qc in q.items():
                        for t, d in zip(final_cofs[idx], src):
                            _add_scaled(t, d, qe, -qc)
            final_terms[idx] = rem

    out_polys = [Poly(table, t, _clean=True) for t in final_terms]
    out_cofs = [
        [Poly(table, d, _clean=True) for d in cof] if track_cofactors else None
        for cof in final_cofs
    ]
    log.debug("buchberger: %d basis elements, %d steps", len(out_polys), budget.steps)
    return ReducedGB(table, order, out_polys, out_cofs, gens, steps=budget.steps)


def normal_form(f, gb):
    return gb.normal_form(f)


class MonomialBasis:
    """Standard monomials of a zero-dimensional ideal, sorted ascending."""

    def __init__(self, table, monomials, order="grevlex"):
        self.table = table
        self.order = order
        self.monomials = sorted(monomials, key=ORDERS[order])
        self.index = {m: i for i, m in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __getitem__(self, i):
        return self.monomials[i]

    def polys(self):
        one = self.table.field.one
        return [Poly(self.table, {m: one}, _clean=True) for m in self.monomials]

    def render(self):
        from .polynomials import render_monomial

        return [render_monomial(self.table.names, m) or "1" for m in self.monomials]

    def __repr__(self):
        return f"MonomialBasis({self.render()})"


def standard_monomials(gb, cap=10**5):
    n = len(gb.table.names)
    lms = gb.leading_monomials
    if gb.is_unit_ideal():
        return MonomialBasis(gb.table, [], gb.order)
    for v in range(n):
        if not any(lm[v] > 0 and sum(lm) == lm[v] for lm in lms):
            raise InfiniteDimensional(f"no pure power of {gb.table.names[v]} is a leading monomial")
    zero = (0,) * n
    found = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for m in frontier:
            for v in range(n):
                e = list(m)
                e[v] += 1
                e = tuple(e)
                if e in found or any(_divides(lm, e) for lm in lms):
                    continue
                found.add(e)
                if len(found) > cap:
                    raise CapExceeded(f"more than {cap} standard monomials")
                nxt.append(e)
        frontier = nxt
    return MonomialBasis(gb.table, found, gb.order)


def coordinates(f, basis, gb=None):
    """Coordinates of ``f`` in ``basis``; ``f`` is reduced first if ``gb`` is given."""
    if gb is not None:
        f = gb.normal_form(f)
    field = basis.table.field
    vec = [field.zero] * len(basis)
    for e, c in f.terms.items():
        vec[basis.index[e]] = c
    return vec


def mult_matrix(f, basis, gb):
    """Matrix of multiplication by ``f``: column v holds NF(f * basis_v)."""
    n = len(basis)
    field = gb.table.field
    cols = [coordinates(f * b, basis, gb) for b in basis.polys()]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def min_poly(m, field):
    """Monic minimal polynomial of a square matrix, as a coefficient list
    (constant term first)."""
    n = len(m)
    from .linalg import identity, matmul

    power = identity(n, field)
    tracker = IncrementalBasis(field)
    for d in range(n + 1):
        flat = [x for row in power for x in row]
        combo = tracker.add(flat)
        if combo is not None:
            return [-c for c in combo] + [field.one]
        power = matmul(m, power, field)
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover
