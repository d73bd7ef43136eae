"""Algebra presentations over Z and Z/m: validation, squares, ideal
closures, power ideals, and truncated free algebras.

Free objects exist only in truncated form: the basis is words (free
associative), exponent multisets (free commutative), or Lyndon words
with their standard bracketings (free Lie), with every product of
degree >= the bound set to zero.  Lie products are computed by
expanding brackets into the free associative algebra and rewriting back
along the triangular Lyndon decomposition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .bilinear import BilinearTensor, validate as validate_tensor
from .modules import (
    Cardinality,
    FgModule,
    Scalars,
    SubmoduleHandle,
    Vector,
    Z,
    vec_add,
    vec_sub,
    zero_vector,
)


@dataclass(frozen=True)
class AlgebraFlags:
    associative: bool = False
    commutative: bool = False
    lie: bool = False
    unital: Vector | None = None  # coordinates of the identity, when present


@dataclass(frozen=True)
class AlgebraPresentation:
    """Structure constants on a finitely presented module; flags declare
    laws that validate_algebra verifies on generators."""

    module: FgModule
    mult: tuple  # [n][n] -> Vector (product of generators i and j)
    flags: AlgebraFlags = AlgebraFlags()
    grading: tuple | None = None  # degree of each generator, when graded

    def __post_init__(self):
        n = self.module.ngens
        rows = tuple(tuple(self.module.reduce(v) for v in row) for row in self.mult)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("multiplication table must be ngens x ngens")
        object.__setattr__(self, "mult", rows)
        if self.flags.unital is not None:
            fixed = AlgebraFlags(
                associative=self.flags.associative,
                commutative=self.flags.commutative,
                lie=self.flags.lie,
                unital=self.module.reduce(self.flags.unital),
            )
            object.__setattr__(self, "flags", fixed)
        if self.grading is not None:
            object.__setattr__(self, "grading", tuple(self.grading))
            if len(self.grading) != n:
                raise ValueError("grading must assign a degree to every generator")

    def product(self, x, y) -> Vector:
        x = self.module.reduce(x)
        y = self.module.reduce(y)
        out = [0] * self.module.ngens
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.mult[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                cell = row[j]
                c = xi * yj
                for k in range(self.module.ngens):
                    if cell[k]:
                        out[k] += c * cell[k]
        return self.module.reduce(out)

    def as_tensor(self) -> BilinearTensor:
        return BilinearTensor(self.module, self.module, self.module, self.mult)


def validate_algebra(alg: AlgebraPresentation):
    """Check the multiplication is well-defined and all declared flags
    hold on generators (sufficient by multilinearity); empty list = ok."""
    problems = [f"bilinearity violation {v}" for v in validate_tensor(alg.as_tensor())]
    mod = alg.module
    n = mod.ngens
    gens = mod.generators()
    if alg.flags.associative:
        for i, j, k in itertools.product(range(n), repeat=3):
            lhs = alg.product(alg.mult[i][j], gens[k])
            rhs = alg.product(gens[i], alg.mult[j][k])
            if not mod.elem_eq(lhs, rhs):
                problems.append(f"associativity fails at ({i},{j},{k})")
    if alg.flags.commutative:
        for i in range(n):
            for j in range(i, n):
                if not mod.elem_eq(alg.mult[i][j], alg.mult[j][i]):
                    problems.append(f"commutativity fails at ({i},{j})")
    if alg.flags.lie:
        for i in range(n):
            if not mod.is_zero_elem(alg.mult[i][i]):
                problems.append(f"alternating law fails at {i}")
            for j in range(i + 1, n):
                if not mod.elem_eq(alg.mult[i][j], vec_sub(mod.zero(), alg.mult[j][i])):
                    problems.append(f"antisymmetry fails at ({i},{j})")
        for i, j, k in itertools.combinations(range(n), 3):
            acc = alg.product(gens[i], alg.mult[j][k])
            acc = vec_add(acc, alg.product(gens[j], alg.mult[k][i]))
            acc = vec_add(acc, alg.product(gens[k], alg.mult[i][j]))
            if not mod.is_zero_elem(acc):
                problems.append(f"Jacobi fails at ({i},{j},{k})")
    if alg.flags.unital is not None:
        e = alg.flags.unital
        for i in range(n):
            if not mod.elem_eq(alg.product(e, gens[i]), gens[i]):
                problems.append(f"left identity fails at {i}")
            if not mod.elem_eq(alg.product(gens[i], e), gens[i]):
                problems.append(f"right identity fails at {i}")
    if alg.grading is not None:
        for i in range(n):
            for j in range(n):
                target = alg.grading[i] + alg.grading[j]
                for l, c in enumerate(alg.mult[i][j]):
                    if c and alg.grading[l] != target:
                        problems.append(f"grading violated at ({i},{j})")
    return problems


def square_span(alg: AlgebraPresentation):
    """The span of all products, with its cardinality class."""
    gens = tuple(
        alg.mult[i][j] for i in range(alg.module.ngens) for j in range(alg.module.ngens)
    )
    handle = alg.module.submodule(gens)
    return handle, handle.cardinality


def subalgebra_span(alg: AlgebraPresentation, elems) -> SubmoduleHandle:
    """Smallest span containing elems and closed under products."""
    mod = alg.module
    current = []
    handle = mod.submodule(())
    for e in elems:
        e = mod.reduce(e)
        if not handle.membership(e):
            current.append(e)
            handle = mod.submodule(tuple(current))
    changed = True
    while changed:
        changed = False
        for a in list(current):
            for b in list(current):
                p = alg.product(a, b)
                if not handle.membership(p):
                    current.append(p)
                    handle = mod.submodule(tuple(current))
                    changed = True
    return handle


def ideal_closure(alg: AlgebraPresentation, gens) -> SubmoduleHandle:
    """Two-sided ideal generated by gens, as a module span closed under
    multiplication by the algebra generators on both sides."""
    mod = alg.module
    current = []
    handle = mod.submodule(())
    for e in gens:
        e = mod.reduce(e)
        if not handle.membership(e):
            current.append(e)
            handle = mod.submodule(tuple(current))
    mod_gens = mod.generators()
    changed = True
    while changed:
        changed = False
        for a in list(current):
            for g in mod_gens:
                for p in (alg.product(a, g), alg.product(g, a)):
                    if not handle.membership(p):
                        current.append(p)
                        handle = mod.submodule(tuple(current))
                        changed = True
    return handle


# ---------------------------------------------------------------------------
# truncated free algebras


@dataclass(frozen=True)
class FreeTruncationSpec:
    kind: str  # "assoc_noncomm" | "assoc_comm" | "lie"
    rank: int
    degree_bound: int  # products of total degree >= this vanish
    unital: bool = False
    scalars: Scalars = Z

    def __post_init__(self):
        if self.kind not in ("assoc_noncomm", "assoc_comm", "lie"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if self.degree_bound < 2:
            raise ValueError("degree bound must be >= 2")
        if self.kind == "lie" and self.unital:
            raise ValueError("Lie algebras are never unital")


def _is_lyndon(w) -> bool:
    n = len(w)
    return all(w < w[i:] + w[:i] for i in range(1, n))


def lyndon_words(rank: int, max_len: int):
    """All Lyndon words over `rank` letters of length 1..max_len, by
    (length, lex) order."""
    out = []
    for length in range(1, max_len + 1):
        for w in itertools.product(range(rank), repeat=length):
            if _is_lyndon(w):
                out.append(w)
    return out


def standard_bracketing(w):
    """Right factor = longest proper Lyndon suffix."""
    if len(w) == 1:
        return w[0]
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return (standard_bracketing(w[:i]), standard_bracketing(w[i:]))
    raise AssertionError("not a Lyndon word")


def _bracket_expansion(tree, bound):
    """Expand a bracket tree into the free associative algebra, dropping
    words of length >= bound."""
    if isinstance(tree, int):
        return {(tree,): 1}
    left = _bracket_expansion(tree[0], bound)
    right = _bracket_expansion(tree[1], bound)
    out = {}
    for u, cu in left.items():
        for v, cv in right.items():
            if len(u) + len(v) >= bound:
                continue
            w = u + v
            out[w] = out.get(w, 0) + cu * cv
            w2 = v + u
            out[w2] = out.get(w2, 0) - cu * cv
    return {w: c for w, c in out.items() if c}


def _rewrite_to_lyndon(poly, expansions, index):
    """Rewrite a Lie element, given as an associative polynomial, into
    Lyndon-basis coordinates.  Relies on the triangular property: the
    lex-least word of the expansion of a bracketed Lyndon word is the
    word itself, with coefficient 1."""
    coords = {}
    work = dict(poly)
    while work:
        w = min(work)
        c = work.pop(w)
        if c == 0:
            continue
        assert _is_lyndon(w), f"leading word {w} not Lyndon"
        coords[index[w]] = coords.get(index[w], 0) + c
        for v, cv in expansions[w].items():
            if v == w:
                continue
            nv = work.get(v, 0) - c * cv
            if nv:
                work[v] = nv
            else:
                work.pop(v, None)
    return coords


def truncated_free(spec: FreeTruncationSpec):
    """Build the truncated free algebra; returns (algebra, basis labels).

    Labels are words (noncommutative), exponent-sorted words
    (commutative), or Lyndon words (Lie); the unital cases prepend the
    empty word."""
    bound = spec.degree_bound
    if spec.kind == "lie":
        return _truncated_free_lie(spec)
    labels = []
    if spec.unital:
        labels.append(())
    for length in range(1, bound):
        if spec.kind == "assoc_noncomm":
            labels.extend(itertools.product(range(spec.rank), repeat=length))
        else:
            labels.extend(
                tuple(sorted(w))
                for w in itertools.combinations_with_replacement(range(spec.rank), length)
            )
    index = {w: i for i, w in enumerate(labels)}
    n = len(labels)
    module = FgModule(spec.scalars, n)
    zero = zero_vector(n)
    units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]

    def times(u, v):
        w = u + v if spec.kind == "assoc_noncomm" else tuple(sorted(u + v))
        if len(w) >= bound:
            return zero
        return units[index[w]]

    mult = tuple(tuple(times(u, v) for v in labels) for u in labels)
    flags = AlgebraFlags(
        associative=True,
        commutative=(spec.kind == "assoc_comm"),
        unital=tuple(1 if w == () else 0 for w in labels) if spec.unital else None,
    )
    grading = tuple(len(w) for w in labels)
    return AlgebraPresentation(module, mult, flags, grading), tuple(labels)


def _truncated_free_lie(spec: FreeTruncationSpec):
    bound = spec.degree_bound
    labels = lyndon_words(spec.rank, bound - 1)
    index = {w: i for i, w in enumerate(labels)}
    n = len(labels)
    module = FgModule(spec.scalars, n)
    expansions = {w: _bracket_expansion(standard_bracketing(w), bound) for w in labels}
    zero = zero_vector(n)

    def bracket(u, v):
        if len(u) + len(v) >= bound:
            return zero
        eu, ev = expansions[u], expansions[v]
        poly = {}
        for a, ca in eu.items():
            for b, cb in ev.items():
                if len(a) + len(b) >= bound:
                    continue
                poly[a + b] = poly.get(a + b, 0) + ca * cb
                poly[b + a] = poly.get(b + a, 0) - ca * cb
        poly = {w: c for w, c in poly.items() if c}
        coords = _rewrite_to_lyndon(poly, expansions, index)
        out = [0] * n
        for i, c in coords.items():
            out[i] = c
        return module.reduce(out)

    mult = tuple(tuple(bracket(u, v) for v in labels) for u in labels)
    grading = tuple(len(w) for w in labels)
    return (
        AlgebraPresentation(module, mult, AlgebraFlags(lie=True), grading),
        tuple(labels),
    )


def graded_dimensions(labels, max_degree=None):
    dims = {}
    for w in labels:
        dims[len(w)] = dims.get(len(w), 0) + 1
    top = max(dims) if dims else 0
    return tuple(dims.get(d, 0) for d in range(1, (max_degree or top) + 1))


# ---------------------------------------------------------------------------
# power ideals I_n


class PowerIdealError(ValueError):
    pass


def _check_power_ideal_inputs(alg: AlgebraPresentation, elems, n: int):
    if n < 1:
        raise PowerIdealError("n must be >= 1")
    mod = alg.module
    elems = tuple(mod.reduce(t) for t in elems)
    one = alg.flags.unital
    if one is not None:
        unit_span = mod.submodule((one,))
        for t in elems:
            if unit_span.membership(t):
                raise PowerIdealError("generating set must avoid scalar multiples of the identity")
    if alg.flags.associative:
        return elems, "associative"
    if alg.flags.lie:
        if alg.grading is None:
            raise PowerIdealError(
                "non-associative power ideals require a declared simple gradation"
            )
        deg1 = [i for i, d in enumerate(alg.grading) if d == 1]
        for t in elems:
            for l, c in enumerate(t):
                if c and alg.grading[l] != 1:
                    raise PowerIdealError("generating set must be homogeneous of degree 1")
        span = mod.submodule(elems)
        for i in deg1:
            if not span.membership(mod.generator(i)):
                raise PowerIdealError("generating set must span the degree-1 component")
        return elems, "lie"
    raise PowerIdealError(
        "power ideals are only computable for associative algebras or simply graded Lie algebras"
    )


def power_ideal(alg: AlgebraPresentation, elems, n: int) -> SubmoduleHandle:
    """The ideal of all n-fold products from the generating set: ideal
    closure of right-normed products for associative algebras, the span
    of right-normed brackets of degree >= n for simply graded Lie
    algebras."""
    elems, kind = _check_power_ideal_inputs(alg, elems, n)
    mod = alg.module
    if kind == "associative":
        level = list(elems)
        for _ in range(n - 1):
            level = [alg.product(t, p) for t in elems for p in level]
        return ideal_closure(alg, tuple(level))
    # lie: right-normed brackets of degree n, n+1, ... until they vanish
    gens = []
    level = list(elems)
    depth = 1
    while level and any(not mod.is_zero_elem(p) for p in level):
        if depth >= n:
            gens.extend(level)
        level = [alg.product(t, p) for t in elems for p in level]
        level = [p for p in level if not mod.is_zero_elem(p)]
        depth += 1
    return mod.submodule(tuple(gens))


def quotient_by_power_ideal(alg: AlgebraPresentation, elems, n: int):
    """The algebra on the quotient module, with the induced multiplication."""
    handle = power_ideal(alg, elems, n)
    qmod, proj = handle.quotient()
    grading = alg.grading
    if grading is not None:
        for g in handle.gens:
            degs = {grading[l] for l, c in enumerate(g) if c}
            if len(degs) > 1:
                grading = None
                break
    quotient = AlgebraPresentation(qmod, alg.mult, alg.flags, grading)
    return quotient, proj
