"""Weyl combinatorics, double Grothendieck polynomials and torus-fixed-point localization."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .coefficients import QQ_FIELD, LaurentPoly, RationalFunctionField
from .exceptions import DomainError, QVariablePresent, SingularDiagonal, SingularSystem
from .linalg import IncrementalBasis, solve
from .polynomials import Poly, VarTable
from .whitney import FlagShape, classical_generators, whitney_table

__all__ = [
    "Permutation",
    "length",
    "reduced_word",
    "minimal_reps",
    "bruhat_leq",
    "bruhat_leq_subword",
    "groth_table",
    "isobaric_divided_difference",
    "double_grothendieck",
    "grothendieck_by_word",
    "GrothPoly",
    "CONVENTIONS",
    "GROTHENDIECK_CONVENTION",
    "groth_restriction",
    "localization_table",
    "fixed_point_restriction",
    "localization_matrix",
    "triangularity_check",
    "select_convention",
    "schubert_in_presentation",
    "divisor_classes",
    "divisor_generation_check",
]

Permutation = tuple  # one-line notation, values 1..n


def length(w):
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def identity_perm(n):
    return tuple(range(1, n + 1))


def longest(n):
    return tuple(range(n, 0, -1))


def right_mul_s(w, i):
    """w * s_i (swap positions i, i+1; 1-based i)."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def reduced_word(w):
    """Reduced word (1-based letters) of w, peeling off the smallest right descent first."""
    word = []
    w = tuple(w)
    while True:
        d = next((i for i in range(1, len(w)) if w[i - 1] > w[i]), None)
        if d is None:
            break
        word.append(d)
        w = right_mul_s(w, d)
    return word[::-1]


def inverse_perm(w):
    inv = [0] * len(w)
    for i, x in enumerate(w):
        inv[x - 1] = i + 1
    return tuple(inv)


def minimal_reps(shape):
    """Permutations increasing within each block of positions (r_j, r_{j+1}]."""
    dims = shape.dims
    out = []
    for w in permutations(range(1, shape.n + 1)):
        if all(
            w[p] < w[p + 1]
            for j in range(len(dims) - 1)
            for p in range(dims[j], dims[j + 1] - 1)
        ):
            out.append(tuple(w))
    out.sort(key=lambda w: (length(w), w))
    return out


def bruhat_leq(u, v):
    """Tableau criterion: sorted prefixes of u are dominated by those of v."""
    if len(u) != len(v):
        raise ValueError("permutations of different sizes")
    for i in range(1, len(u)):
        a = sorted(u[:i])
        b = sorted(v[:i])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def bruhat_leq_subword(u, v):
    """Subword property: u <= v iff some subword of a reduced word of v is a reduced word of u."""
    if len(u) != len(v):
        raise ValueError("permutations of different sizes")
    target = tuple(u)
    lu = length(u)
    word = reduced_word(v)
    n = len(v)
    for idx in combinations(range(len(word)), lu):
        w = identity_perm(n)
        for t in idx:
            w = right_mul_s(w, word[t])
        if w == target:
            return True
    return False


# -- Grothendieck polynomials ----------------------------------------------


@lru_cache(maxsize=None)
def groth_table(n):
    """Variables x1..xn, t1..tn over Q; t_j stands for 1 - T_j^{-1}."""
    names = [f"x{i}" for i in range(1, n + 1)] + [f"t{j}" for j in range(1, n + 1)]
    blocks = {f"x{i}": ("x", i) for i in range(1, n + 1)}
    blocks.update({f"t{j}": ("t", j) for j in range(1, n + 1)})
    return VarTable(names, QQ_FIELD, blocks)


def _swap_vars(f, a, b):
    terms = {}
    for e, c in f.terms.items():
        e = list(e)
        e[a], e[b] = e[b], e[a]
        terms[tuple(e)] = c
    return Poly(f.table, terms, _clean=True)


def _divide_by_difference(num, a, b):
    """Exact quotient num / (v_a - v_b), by synthetic division in v_a."""
    table = num.table
    by_power = {}
    for e, c in num.terms.items():
        p = e[a]
        rest = list(e)
        rest[a] = 0
        by_power.setdefault(p, {})[tuple(rest)] = c
    if not by_power:
        return table.zero()
    top = max(by_power)
    vb = table.var(table.names[b])
    coeff = {p: Poly(table, t, _clean=True) for p, t in by_power.items()}
    qcoef = {}
    carry = table.zero()
    for p in range(top, 0, -1):
        carry = coeff.get(p, table.zero()) + vb * carry
        qcoef[p - 1] = carry
    remainder = coeff.get(0, table.zero()) + vb * carry
    if remainder:
        raise ArithmeticError("numerator is not divisible by the variable difference")
    out = table.zero()
    for p, c in qcoef.items():
        if c:
            e = [0] * len(table.names)
            e[a] = p
            out = out + c.mul_term(tuple(e), table.field.one)
    return out


def isobaric_divided_difference(f, i):
    """pi_i f = ((1 - x_{i+1}) f - (1 - x_i) s_i f) / (x_i - x_{i+1})."""
    table = f.table
    a, b = table.index[f"x{i}"], table.index[f"x{i + 1}"]
    xa, xb = table.var(f"x{i}"), table.var(f"x{i + 1}")
    num = (1 - xb) * f - (1 - xa) * _swap_vars(f, a, b)
    return _divide_by_difference(num, a, b)


def _top_grothendieck(n):
    table = groth_table(n)
    g = table.one()
    for i in range(1, n + 1):
        for j in range(1, n + 1 - i):
            x, t = table.var(f"x{i}"), table.var(f"t{j}")
            g = g * (x + t - x * t)
    return g


def grothendieck_by_word(w, word=None):
    """G_w obtained from G_{w0} along ``word``, a reduced word for w^{-1} w0 read
    as the sequence of simple reflections applied on the right of w0."""
    n = len(w)
    w0 = longest(n)
    if word is None:
        u = tuple(inverse_perm(w)[w0[i] - 1] for i in range(n))  # w^{-1} w0
        word = reduced_word(inverse_perm(u))  # reduced word of u^{-1} = w0^{-1} w
    g = _top_grothendieck(n)
    cur = w0
    for i in word:
        nxt = right_mul_s(cur, i)
        if length(nxt) >= length(cur):
            raise ValueError("word does not descend from w0")
        g = isobaric_divided_difference(g, i)
        cur = nxt
    if cur != tuple(w):
        raise ValueError("word does not lead to w")
    return g


class GrothPoly:
    """Double Grothendieck polynomial of ``perm``: a Poly in x and t = 1 - T^{-1}."""

    def __init__(self, perm, poly):
        self.perm = tuple(perm)
        self.poly = poly

    @property
    def n(self):
        return len(self.perm)

    def coefficients_in_T(self):
        """The same polynomial with t_j replaced by 1 - T_j^{-1}: a dict
        x-exponent -> LaurentPoly."""
        n = self.n
        tvals = [1 - LaurentPoly.gen(n, j, -1) for j in range(n)]
        out = {}
        for e, c in self.poly.terms.items():
            xe, te = e[:n], e[n:]
            term = LaurentPoly.constant(n, int(c))
            for j, p in enumerate(te):
                if p:
                    term = term * tvals[j] ** p
            out[xe] = out.get(xe, LaurentPoly.constant(n, 0)) + term
        return {k: v for k, v in out.items() if v}

    def __eq__(self, other):
        return isinstance(other, GrothPoly) and self.perm == other.perm and self.poly == other.poly

    def __hash__(self):
        return hash((self.perm, self.poly))

    def __repr__(self):
        return f"GrothPoly({''.join(map(str, self.perm))}: {self.poly})"


@lru_cache(maxsize=None)
def _all_grothendieck(n):
    """G_w for every w in S_n, walking down from w0 by the smallest descent."""
    out = {longest(n): _top_grothendieck(n)}
    frontier = [longest(n)]
    while frontier:
        nxt = []
        for w in sorted(frontier):
            for i in range(1, n):
                if w[i - 1] > w[i]:
                    v = right_mul_s(w, i)
                    if v not in out:
                        out[v] = isobaric_divided_difference(out[w], i)
                        nxt.append(v)
        frontier = nxt
    return out


def double_grothendieck(w, n=None):
    w = tuple(w)
    n = n or len(w)
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{n}")
    return GrothPoly(w, _all_grothendieck(n)[w])


# -- localization ----------------------------------------------------------

# x_i at the fixed point v: "direct" -> 1 - T_{v(i)}, "dual" -> 1 - T_{v(i)}^{-1};
# t_j is always 1 - T_j^{-1}.
CONVENTIONS = ("direct", "dual")
GROTHENDIECK_CONVENTION = "direct"


def _laurent_eval(poly, values, n):
    """Evaluate a Q-polynomial at LaurentPoly values (one per variable)."""
    total = LaurentPoly.constant(n, 0)
    powers = {}
    for e, c in poly.terms.items():
        term = LaurentPoly.constant(n, int(c))
        for idx, p in enumerate(e):
            if p:
                key = (idx, p)
                if key not in powers:
                    powers[key] = values[idx] ** p
                term = term * powers[key]
        total = total + term
    return total


def groth_restriction(g, v, convention=GROTHENDIECK_CONVENTION):
    """Restriction of the class G_w to the fixed point v, as a LaurentPoly in T."""
    n = g.n
    if convention == "direct":
        xs = [1 - LaurentPoly.gen(n, v[i] - 1) for i in range(n)]
    elif convention == "dual":
        xs = [1 - LaurentPoly.gen(n, v[i] - 1, -1) for i in range(n)]
    else:
        raise ValueError(f"unknown convention {convention!r}")
    ts = [1 - LaurentPoly.gen(n, j, -1) for j in range(n)]
    return _laurent_eval(g.poly, xs + ts, n)


def _block_values(shape, w):
    """Characters of the blocks X^(j) and Y^(j) at the fixed point w."""
    dims = shape.dims
    xs = {j: [w[p] for p in range(dims[j])] for j in range(1, shape.k + 1)}
    ys = {j: [w[p] for p in range(dims[j], dims[j + 1])] for j in range(1, shape.k + 1)}
    return xs, ys


def _e_of(field, idx, l):
    total = field.zero
    gens = field.gens
    for comb_ in combinations(idx, l):
        term = field.one
        for i in comb_:
            term = term * gens[i - 1]
        total = total + term
    return total


def fixed_point_restriction(expr, w, shape):
    """Restrict a presentation class to the fixed point w (a minimal representative).

    e_l(X^(j)) -> e_l(T_{w(1)}, ..., T_{w(r_j)}),
    e_l(Y^(j)) -> e_l(T_{w(r_j+1)}, ..., T_{w(r_{j+1})}).
    """
    table = expr.table
    for name in table.names:
        tag = table.blocks.get(name)
        if tag and tag[0] == "q":
            if any(e[table.index[name]] for e in expr.terms):
                raise QVariablePresent(f"{name} occurs in the expression")
    field = table.field
    if field.nvars != shape.n:
        raise DomainError("fixed-point restriction needs equivariant coefficients")
    xs, ys = _block_values(shape, w)
    values = []
    for name in table.names:
        tag = table.blocks.get(name)
        if tag is None or tag[0] == "q":
            values.append(field.zero)
            continue
        kind, j, l = tag
        values.append(_e_of(field, xs[j] if kind == "X" else ys[j], l))
    total = field.zero
    for e, c in expr.terms.items():
        term = c
        for v, p in zip(values, e):
            if p:
                term = term * v**p
        total = total + term
    return total


def localization_matrix(shape, class_list, points=None, convention=GROTHENDIECK_CONVENTION):
    """M[a][b] = restriction of class b at fixed point a (rows: points)."""
    points = points or minimal_reps(shape)
    field = RationalFunctionField(shape.n)
    rows = []
    for v in points:
        row = []
        for c in class_list:
            if isinstance(c, GrothPoly):
                row.append(field.convert(groth_restriction(c, v, convention)))
            else:
                row.append(fixed_point_restriction(c, v, shape))
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def localization_table(n, convention=GROTHENDIECK_CONVENTION):
    """{(w, v): G_w restricted to v} for all w, v in S_n, over Q(T).

    Computed on the fixed-point side: with a_i = 1 - x_i at v,
    (pi_i f)(v) = (a_{i+1} f(v) - a_i f(v s_i)) / (a_{i+1} - a_i),
    starting from G_{w0}(v) = prod_{i+j<=n} (1 - a_i T_j^{-1}).
    """
    field = RationalFunctionField(n)
    tinv = [field.one / g for g in field.gens]
    if convention == "direct":
        a_of = lambda v, i: field.gen(v[i] - 1)
    elif convention == "dual":
        a_of = lambda v, i: tinv[v[i] - 1]
    else:
        raise ValueError(f"unknown convention {convention!r}")
    points = sorted(permutations(range(1, n + 1)))
    top = {}
    for v in points:
        val = field.one
        for i in range(n):
            for j in range(n - 1 - i):
                val = val * (field.one - a_of(v, i) * tinv[j])
        top[v] = val
    values = {longest(n): top}
    frontier = [longest(n)]
    while frontier:
        nxt = []
        for w in sorted(frontier):
            for i in range(1, n):
                if w[i - 1] > w[i]:
                    u = right_mul_s(w, i)
                    if u in values:
                        continue
                    f = values[w]
                    row = {}
                    for v in points:
                        ai, aj = a_of(v, i - 1), a_of(v, i)
                        row[v] = (aj * f[v] - ai * f[right_mul_s(v, i)]) / (aj - ai)
                    values[u] = row
                    nxt.append(u)
        frontier = nxt
    return {(w, v): values[w][v] for w in values for v in points}


def triangularity_check(shape, convention=GROTHENDIECK_CONVENTION, raise_on_failure=True):
    """Grothendieck classes of the minimal representatives are Bruhat-triangular
    under localization with nonvanishing diagonal."""
    reps = minimal_reps(shape)
    table = localization_table(shape.n, convention)
    off = []
    diag_zero = []
    entries = {}
    for v in reps:
        for w in reps:
            val = table[(w, v)]
            entries[(v, w)] = val
            if w == v:
                if not val:
                    diag_zero.append(v)
            elif val and not bruhat_leq(w, v):
                off.append((w, v))
    report = {
        "shape": shape.label(),
        "convention": convention,
        "size": len(reps),
        "points": ["".join(map(str, w)) for w in reps],
        "off_support": [["".join(map(str, a)), "".join(map(str, b))] for a, b in off],
        "zero_diagonal": ["".join(map(str, v)) for v in diag_zero],
        "status": "pass" if not off and not diag_zero else "fail",
    }
    if raise_on_failure and report["status"] != "pass":
        raise SingularDiagonal(f"localization matrix is not Bruhat-triangular: {report}")
    report["entries"] = entries
    return report


def select_convention(n):
    """The first convention under which S_n Grothendieck classes localize triangularly."""
    shape = FlagShape(tuple(range(1, n)), n)
    for conv in CONVENTIONS:
        if triangularity_check(shape, conv, raise_on_failure=False)["status"] == "pass":
            return conv
    raise SingularDiagonal("no Grothendieck convention localizes triangularly")


@lru_cache(maxsize=None)
def _cached_model(shape):
    from .quotient import classical_model

    return classical_model(classical_generators(shape, whitney_table(shape)))


def schubert_in_presentation(shape, w, model=None, convention=GROTHENDIECK_CONVENTION):
    """The reduced presentation polynomial whose fixed-point values are those of O^w."""
    model = model or _cached_model(shape)
    reps = minimal_reps(shape)
    if len(reps) != model.rank_:
        raise SingularSystem("rank of the quotient differs from the number of fixed points")
    field = model.field
    basis_polys = model.basis_.polys()
    a = localization_matrix(shape, basis_polys, reps)
    values = localization_table(shape.n, convention)
    rhs = [values[(tuple(w), v)] for v in reps]
    coords = solve(a, rhs, field)
    return model.from_coordinates(coords)


def divisor_classes(shape, model=None):
    """O^{s_{r_j}} for j = 1..k, in presentation coordinates."""
    out = []
    for r in shape.r:
        s = list(range(1, shape.n + 1))
        s[r - 1], s[r] = s[r], s[r - 1]
        out.append(schubert_in_presentation(shape, tuple(s), model))
    return out


def _specialize_poly(p, table):
    ones = [1] * p.table.field.nvars
    return Poly(table, {e: c.specialize(ones) for e, c in p.terms.items()})


def divisor_generation_check(shape, degree_cap, equivariant=True):
    """Dimension of the span of all monomials of degree <= cap in the Schubert divisors."""
    from .quotient import classical_model

    eq_model = _cached_model(shape)
    divisors = divisor_classes(shape, eq_model)
    if equivariant:
        model = eq_model
    else:
        table = whitney_table(shape, False)
        model = classical_model(classical_generators(shape, table))
        divisors = [_specialize_poly(d, table) for d in divisors]
    field = model.field
    tracker = IncrementalBasis(field)
    dims = []
    layer = [model.table_.one()]
    seen = set()
    for degree in range(degree_cap + 1):
        for mono in layer:
            tracker.add(model.coordinates(mono))
        dims.append(tracker.dimension)
        nxt = []
        for mono in layer:
            for d in divisors:
                prod = model.normal_form(mono * d)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        layer = nxt
    return {
        "shape": shape.label(),
        "equivariant": equivariant,
        "degree_cap": degree_cap,
        "divisors": [str(d) for d in divisors],
        "rank": model.rank_,
        "span_dimension": tracker.dimension,
        "dimension_by_degree": dims,
        "generates": tracker.dimension == model.rank_,
    }
