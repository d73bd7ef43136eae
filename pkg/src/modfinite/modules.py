"""Exact linear algebra over Z and Z/m, and finitely presented modules.

Everything downstream reduces to two primitives implemented here: Smith
normal form with unimodular transforms, and complete solving of linear
systems (particular solution + kernel basis).  Solving over Z/m is done
by lifting to Z with augmented congruence columns, so a single exact
integer engine serves both scalar rings.

All values are immutable after construction; canonical forms are cached
write-once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

Vector = tuple  # tuple[int, ...]
Matrix = tuple  # tuple[Vector, ...]

DEFAULT_ENUM_CAP = 10**6


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalars


@dataclass(frozen=True)
class Scalars:
    """The base ring of scalars: Z when modulus is None, else Z/modulus."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be >= 2")

    @property
    def is_modular(self) -> bool:
        return self.modulus is not None

    def reduce(self, x: int) -> int:
        return x % self.modulus if self.modulus is not None else x

    def reduce_vector(self, v) -> Vector:
        if self.modulus is None:
            return tuple(v)
        m = self.modulus
        return tuple(x % m for x in v)

    def reduce_matrix(self, rows) -> Matrix:
        return tuple(self.reduce_vector(r) for r in rows)

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


Z = Scalars()


def Zmod(m: int) -> Scalars:
    return Scalars(m)


# ---------------------------------------------------------------------------
# small dense matrix helpers (plain tuples of ints)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_vector(n: int) -> Vector:
    return (0,) * n


def mat_mul(a, b) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}")
    cols = range(len(b[0])) if b else range(0)
    return tuple(tuple(sum(ra[k] * b[k][j] for k in range(len(b))) for j in cols) for ra in a)


def vec_mat(x, a) -> Vector:
    if len(x) != len(a):
        raise DimensionMismatch(f"vector length {len(x)} vs {len(a)} rows")
    cols = range(len(a[0])) if a else range(0)
    return tuple(sum(x[i] * a[i][j] for i in range(len(a))) for j in cols)


def mat_vec(a, x) -> Vector:
    if a and len(a[0]) != len(x):
        raise DimensionMismatch(f"matrix with {len(a[0])} columns vs vector length {len(x)}")
    return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in a)


def vec_add(x, y) -> Vector:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vec_sub(x, y) -> Vector:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def vec_scale(c, x) -> Vector:
    return tuple(c * a for a in x)


def transpose(rows, ncols: int) -> Matrix:
    return tuple(tuple(row[j] for row in rows) for j in range(ncols))


def is_unimodular(a) -> bool:
    n = len(a)
    if any(len(r) != n for r in a):
        return False
    return abs(_det(a)) == 1


def _det(a) -> int:
    # fraction-free Gaussian elimination (Bareiss)
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


def _snf_with_inverse(mat):
    """Return (U, D, V, Vinv) with U*mat*V = D, all over Z.

    Pivot selection is deterministic: smallest nonzero absolute value in
    the remaining block, ties broken row-major, so outputs are
    reproducible bit for bit.
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    if any(len(r) != ncols for r in mat):
        raise DimensionMismatch("ragged matrix")
    a = [list(r) for r in mat]
    u = [list(r) for r in identity_matrix(nrows)]
    v = [list(r) for r in identity_matrix(ncols)]
    vinv = [list(r) for r in identity_matrix(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_sub(i, j, q):
        # row_i -= q * row_j
        ai, aj = a[i], a[j]
        for k in range(ncols):
            ai[k] -= q * aj[k]
        ui, uj = u[i], u[j]
        for k in range(nrows):
            ui[k] -= q * uj[k]

    def col_sub(i, j, q):
        # col_i -= q * col_j  (on V); row_j += q * row_i on Vinv
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]
        vj, vi = vinv[j], vinv[i]
        for k in range(ncols):
            vj[k] += q * vi[k]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    k = 0
    while k < min(nrows, ncols):
        # deterministic pivot: min |entry|, row-major ties
        piv = None
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != k:
            swap_rows(k, piv[0])
        if piv[1] != k:
            swap_cols(k, piv[1])
        while True:
            dirty = False
            for i in range(k + 1, nrows):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    row_sub(i, k, q)
                    if a[i][k] != 0:
                        swap_rows(i, k)  # remainder is strictly smaller
                        dirty = True
            for j in range(k + 1, ncols):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    col_sub(j, k, q)
                    if a[k][j] != 0:
                        swap_cols(j, k)
                        dirty = True
            if dirty:
                continue
            # divisibility: pivot must divide the whole remaining block
            d = a[k][k]
            bad = None
            for i in range(k + 1, nrows):
                for j in range(k + 1, ncols):
                    if a[i][j] % d != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_sub(k, bad, -1)  # fold offending row into the pivot row
        if a[k][k] < 0:
            negate_row(k)
        k += 1

    return (
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in a),
        tuple(tuple(r) for r in v),
        tuple(tuple(r) for r in vinv),
    )


def smith_normal_form(mat):
    """Diagonalize an integer matrix: U*mat*V = D with d_i >= 0, d_i | d_{i+1},
    and U, V unimodular."""
    u, d, v, _ = _snf_with_inverse(mat)
    return u, d, v


# ---------------------------------------------------------------------------
# linear solving


@dataclass(frozen=True)
class LinearSolution:
    particular: Vector
    kernel: tuple  # tuple[Vector, ...]


def _solve_integer(a_rows, b, nvars):
    u, d, v, _ = _snf_with_inverse(a_rows)
    nrows = len(a_rows)
    c = mat_vec(u, b)
    y = [0] * nvars
    for i in range(nrows):
        di = d[i][i] if i < nvars else 0
        if di != 0:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
        elif c[i] != 0:
            return None
    x = mat_vec(v, tuple(y))
    kernel = []
    for j in range(nvars):
        dj = d[j][j] if j < nrows else 0
        if dj == 0:
            kernel.append(tuple(v[i][j] for i in range(nvars)))
    return LinearSolution(tuple(x), tuple(kernel))


def _dedupe_vectors(vs):
    seen = set()
    out = []
    for v in vs:
        if any(v) and v not in seen:
            seen.add(v)
            out.append(v)
    return tuple(out)


def solve_linear(scalars: Scalars, a, b):
    """Solve a*x = b over the given scalars.

    Returns None when unsolvable, otherwise a LinearSolution whose full
    solution set is particular + span(kernel).
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if any(len(r) != ncols for r in a):
        raise DimensionMismatch("ragged matrix")
    if len(b) != nrows:
        raise DimensionMismatch(f"{nrows} equations vs {len(b)} right-hand sides")
    if not scalars.is_modular:
        if nrows == 0:
            return LinearSolution(zero_vector(ncols), tuple(identity_matrix(ncols)))
        return _solve_integer(a, b, ncols)
    m = scalars.modulus
    # lift to Z: unknowns (x, t) with a*x + m*t = b
    lifted = tuple(
        tuple(a[i][j] for j in range(ncols)) + tuple(m if i == k else 0 for k in range(nrows))
        for i in range(nrows)
    )
    sol = _solve_integer(lifted, b, ncols + nrows) if nrows else LinearSolution((), ())
    if nrows == 0:
        return LinearSolution(zero_vector(ncols), tuple(identity_matrix(ncols)))
    if sol is None:
        return None
    particular = scalars.reduce_vector(sol.particular[:ncols])
    kernel = _dedupe_vectors(scalars.reduce_vector(k[:ncols]) for k in sol.kernel)
    return LinearSolution(particular, kernel)


class LinearSystem:
    """Incremental builder for sparse linear systems over Z or Z/m."""

    def __init__(self, scalars: Scalars):
        self.scalars = scalars
        self.nvars = 0
        self._rows = []
        self._rhs = []

    def new_vars(self, n: int) -> range:
        r = range(self.nvars, self.nvars + n)
        self.nvars += n
        return r

    def add_equation(self, coeffs: dict, rhs: int = 0):
        self._rows.append(dict(coeffs))
        self._rhs.append(rhs)

    def _dense(self):
        return tuple(
            tuple(row.get(j, 0) for j in range(self.nvars)) for row in self._rows
        )

    def solve(self):
        if not self._rows:
            return LinearSolution(zero_vector(self.nvars), tuple(identity_matrix(self.nvars)))
        return solve_linear(self.scalars, self._dense(), tuple(self._rhs))

    def kernel(self, project=None):
        """Generators of the homogeneous solution set, optionally projected
        onto the given variable indices."""
        if not self._rows:
            sol = LinearSolution(zero_vector(self.nvars), tuple(identity_matrix(self.nvars)))
        else:
            sol = solve_linear(self.scalars, self._dense(), zero_vector(len(self._rows)))
        assert sol is not None
        vs = sol.kernel
        if project is not None:
            idx = list(project)
            vs = [tuple(v[i] for i in idx) for v in vs]
        return _dedupe_vectors(self.scalars.reduce_vector(v) for v in vs)


# ---------------------------------------------------------------------------
# cardinality


@dataclass(frozen=True)
class Cardinality:
    kind: str  # "zero" | "finite" | "infinite"
    count: int | None = None

    @staticmethod
    def of_count(n: int) -> "Cardinality":
        return Cardinality("zero", 1) if n == 1 else Cardinality("finite", n)

    @staticmethod
    def infinite() -> "Cardinality":
        return Cardinality("infinite")

    @property
    def is_finite(self) -> bool:
        return self.kind != "infinite"


def combine_cardinality(*cards) -> Cardinality:
    """Cardinality of a direct product."""
    if any(c.kind == "infinite" for c in cards):
        return Cardinality.infinite()
    n = 1
    for c in cards:
        n *= c.count
    return Cardinality.of_count(n)


# ---------------------------------------------------------------------------
# finitely presented modules


@dataclass(frozen=True)
class FgModule:
    """Module over Z or Z/m presented by generators and relator rows."""

    scalars: Scalars
    ngens: int
    relations: Matrix = ()

    def __post_init__(self):
        if self.ngens < 0:
            raise ValueError("ngens must be >= 0")
        rels = tuple(tuple(r) for r in self.relations)
        for r in rels:
            if len(r) != self.ngens:
                raise DimensionMismatch(f"relator of length {len(r)}, expected {self.ngens}")
        object.__setattr__(self, "relations", self.scalars.reduce_matrix(rels))

    # -- canonical decomposition -------------------------------------------

    @cached_property
    def canonical(self) -> "CanonicalForm":
        m = self.ngens
        rels = [list(r) for r in self.relations]
        if self.scalars.is_modular:
            mod = self.scalars.modulus
            rels.extend([mod if i == j else 0 for j in range(m)] for i in range(m))
        if not rels:
            rels = []
        _, d, v, vinv = _snf_with_inverse(tuple(tuple(r) for r in rels) if rels else ((),) * 0)
        if not rels:
            d = ()
            v = identity_matrix(m)
            vinv = identity_matrix(m)
        diag = [d[i][i] if (i < len(d) and i < m) else 0 for i in range(m)]
        free_pos = [i for i in range(m) if diag[i] == 0]
        torsion_pos = [i for i in range(m) if diag[i] >= 2]
        keep = free_pos + torsion_pos
        factors = tuple(diag[i] for i in torsion_pos)
        rank = len(free_pos)
        k = len(keep)
        canon_rels = tuple(
            tuple(factors[t] if j == rank + t else 0 for j in range(k))
            for t in range(len(torsion_pos))
        )
        canon = FgModule(self.scalars, k, canon_rels)
        to_rows = tuple(tuple(v[i][p] for p in keep) for i in range(m))
        from_rows = tuple(vinv[p] for p in keep)
        return CanonicalForm(
            rank=rank,
            invariant_factors=factors,
            module=canon,
            to_canonical=Morphism(self, canon, to_rows),
            from_canonical=Morphism(canon, self, from_rows),
        )

    @property
    def cardinality(self) -> Cardinality:
        c = self.canonical
        if c.rank > 0:
            return Cardinality.infinite()
        n = 1
        for d in c.invariant_factors:
            n *= d
        return Cardinality.of_count(n)

    # -- element operations --------------------------------------------------

    def zero(self) -> Vector:
        return zero_vector(self.ngens)

    def generator(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.ngens))

    def generators(self):
        return tuple(self.generator(i) for i in range(self.ngens))

    def reduce(self, v) -> Vector:
        if len(v) != self.ngens:
            raise DimensionMismatch(f"element of length {len(v)}, expected {self.ngens}")
        return self.scalars.reduce_vector(v)

    def canonical_key(self, v) -> Vector:
        """Canonical coordinates; two elements are equal iff keys coincide."""
        c = self.canonical
        y = c.to_canonical(v)
        out = list(y[: c.rank])
        for t, d in enumerate(c.invariant_factors):
            out.append(y[c.rank + t] % d)
        return tuple(out)

    def elem_eq(self, x, y) -> bool:
        return self.canonical_key(self.reduce(x)) == self.canonical_key(self.reduce(y))

    def is_zero_elem(self, x) -> bool:
        return self.elem_eq(x, self.zero())

    def in_relation_span(self, v) -> bool:
        """Membership of v in the row span of the relators, by linear solve."""
        cols = transpose(self.relations, self.ngens) if self.relations else tuple(() for _ in range(self.ngens))
        return solve_linear(self.scalars, cols, self.reduce(v)) is not None

    def elements(self, cap: int = DEFAULT_ENUM_CAP):
        """All elements of a finite module, one representative per class,
        in deterministic order."""
        card = self.cardinality
        if not card.is_finite:
            raise ValueError("cannot enumerate an infinite module")
        if card.count > cap:
            raise ValueError(f"enumeration of {card.count} elements exceeds cap {cap}")
        c = self.canonical
        out = []
        for combo in itertools.product(*(range(d) for d in c.invariant_factors)):
            y = (0,) * c.rank + combo
            out.append(self.reduce(c.from_canonical(y)))
        return out

    def submodule(self, gens) -> "SubmoduleHandle":
        gens = tuple(self.reduce(g) for g in gens)
        return SubmoduleHandle(self, gens)

    def direct_sum(self, other: "FgModule") -> "FgModule":
        if self.scalars != other.scalars:
            raise ValueError("direct sum requires matching scalars")
        n1, n2 = self.ngens, other.ngens
        rels = tuple(tuple(r) + zero_vector(n2) for r in self.relations) + tuple(
            zero_vector(n1) + tuple(r) for r in other.relations
        )
        return FgModule(self.scalars, n1 + n2, rels)


@dataclass(frozen=True)
class Morphism:
    """Module map given by generator images, row i = image of generator i."""

    source: FgModule
    target: FgModule
    matrix: Matrix

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.matrix)
        if len(rows) != self.source.ngens:
            raise DimensionMismatch(f"{len(rows)} rows for {self.source.ngens} generators")
        for r in rows:
            if len(r) != self.target.ngens:
                raise DimensionMismatch("morphism row length mismatch")
        object.__setattr__(self, "matrix", self.target.scalars.reduce_matrix(rows))

    def __call__(self, x) -> Vector:
        x = self.source.reduce(x)
        if not self.matrix:
            return self.target.zero()
        return self.target.reduce(vec_mat(x, self.matrix))

    def is_well_defined(self) -> bool:
        return all(self.target.is_zero_elem(self(r)) for r in self.source.relations)

    def compose(self, then: "Morphism") -> "Morphism":
        if then.source is not self.target and then.source != self.target:
            raise ValueError("morphism composition mismatch")
        return Morphism(self.source, then.target, tuple(then(r) for r in self.matrix))


@dataclass(frozen=True)
class CanonicalForm:
    rank: int
    invariant_factors: tuple
    module: FgModule
    to_canonical: Morphism
    from_canonical: Morphism


def canonicalize(module: FgModule):
    """Canonical decomposition Λ^rank ⊕ ⊕ Λ/dᵢ with both change-of-basis maps."""
    c = module.canonical
    return c.rank, c.invariant_factors, c.to_canonical, c.from_canonical


def cardinality(module: FgModule) -> Cardinality:
    return module.cardinality


def elem_eq(module: FgModule, x, y) -> bool:
    return module.elem_eq(x, y)


# ---------------------------------------------------------------------------
# submodules


@dataclass(frozen=True)
class SubmoduleHandle:
    """Submodule of `ambient` spanned by `gens` (plus the relator span)."""

    ambient: FgModule
    gens: Matrix

    def membership(self, x) -> bool:
        amb = self.ambient
        rows = tuple(self.gens) + tuple(amb.relations)
        cols = transpose(rows, amb.ngens) if rows else tuple(() for _ in range(amb.ngens))
        return solve_linear(amb.scalars, cols, amb.reduce(x)) is not None

    def quotient(self):
        amb = self.ambient
        q = FgModule(amb.scalars, amb.ngens, tuple(amb.relations) + tuple(self.gens))
        return q, Morphism(amb, q, identity_matrix(amb.ngens))

    def presentation(self) -> FgModule:
        """The submodule as an abstract module on the given generators."""
        amb = self.ambient
        p = len(self.gens)
        sys = LinearSystem(amb.scalars)
        cvars = sys.new_vars(p)
        zvars = sys.new_vars(len(amb.relations))
        for coord in range(amb.ngens):
            coeffs = {}
            for q in range(p):
                if self.gens[q][coord]:
                    coeffs[cvars[q]] = self.gens[q][coord]
            for j, rel in enumerate(amb.relations):
                if rel[coord]:
                    coeffs[zvars[j]] = -rel[coord]
            sys.add_equation(coeffs)
        rels = sys.kernel(project=cvars)
        return FgModule(amb.scalars, p, rels)

    def embedding(self) -> Morphism:
        return Morphism(self.presentation(), self.ambient, self.gens)

    def is_zero(self) -> bool:
        return all(self.ambient.is_zero_elem(g) for g in self.gens)

    @property
    def cardinality(self) -> Cardinality:
        return self.presentation().cardinality


def submodule_ops(module: FgModule, gens) -> SubmoduleHandle:
    return module.submodule(gens)


# ---------------------------------------------------------------------------
# endomorphism modules


@dataclass(frozen=True)
class EndoFamily:
    """A family of endomorphisms of `ambient` spanning a submodule of End.

    `module` presents the family abstractly: its generators correspond to
    the matrices, its relators are the coefficient vectors whose combination
    acts as zero.
    """

    ambient: FgModule
    module: FgModule
    matrices: tuple  # tuple[Matrix, ...]

    @property
    def as_matrices(self):
        return tuple(Morphism(self.ambient, self.ambient, m) for m in self.matrices)

    def element_matrix(self, coords) -> Matrix:
        n = self.ambient.ngens
        rows = [[0] * n for _ in range(n)]
        for c, mat in zip(coords, self.matrices, strict=True):
            if c:
                for i in range(n):
                    for j in range(n):
                        rows[i][j] += c * mat[i][j]
        return self.ambient.scalars.reduce_matrix(rows)

    def act(self, coords, x) -> Vector:
        return self.ambient.reduce(vec_mat(self.ambient.reduce(x), self.element_matrix(coords)))

    def coords_of(self, matrix):
        """Express an endomorphism matrix over the family generators, or None."""
        amb = self.ambient
        n = amb.ngens
        sys = LinearSystem(amb.scalars)
        cvars = sys.new_vars(len(self.matrices))
        aux = [sys.new_vars(len(amb.relations)) for _ in range(n)]
        rhs_rows = amb.scalars.reduce_matrix(matrix)
        for g in range(n):
            for coord in range(n):
                coeffs = {}
                for q, mat in enumerate(self.matrices):
                    if mat[g][coord]:
                        coeffs[cvars[q]] = mat[g][coord]
                for j, rel in enumerate(amb.relations):
                    if rel[coord]:
                        coeffs[aux[g][j]] = -rel[coord]
                sys.add_equation(coeffs, rhs_rows[g][coord])
        sol = sys.solve()
        if sol is None:
            return None
        return amb.scalars.reduce_vector(sol.particular[: len(self.matrices)])

    def same_endo(self, mat_a, mat_b) -> bool:
        return all(
            self.ambient.is_zero_elem(vec_sub(ra, rb))
            for ra, rb in zip(mat_a, mat_b, strict=True)
        )


def _endo_presentation(ambient: FgModule, matrices):
    """Relators among a family of endomorphism matrices."""
    n = ambient.ngens
    sys = LinearSystem(ambient.scalars)
    cvars = sys.new_vars(len(matrices))
    aux = [sys.new_vars(len(ambient.relations)) for _ in range(n)]
    for g in range(n):
        for coord in range(n):
            coeffs = {}
            for q, mat in enumerate(matrices):
                if mat[g][coord]:
                    coeffs[cvars[q]] = mat[g][coord]
            for j, rel in enumerate(ambient.relations):
                if rel[coord]:
                    coeffs[aux[g][j]] = -rel[coord]
            sys.add_equation(coeffs)
    rels = sys.kernel(project=cvars)
    return FgModule(ambient.scalars, len(matrices), rels)


def _matrices_from_flat(ambient, flats):
    n = ambient.ngens
    out = []
    for flat in flats:
        out.append(tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(n)))
    return tuple(out)


def end_module(module: FgModule) -> EndoFamily:
    """The endomorphism module End(N) as a spanning family of matrices."""
    n = module.ngens
    rels = module.relations
    sys = LinearSystem(module.scalars)
    avars = sys.new_vars(n * n)
    aux = [sys.new_vars(len(rels)) for _ in range(len(rels))]
    for j, rel in enumerate(rels):
        for coord in range(n):
            # relator j applied to the endomorphism must fall in the relator span
            coeffs = {}
            for i in range(n):
                if rel[i]:
                    coeffs[avars[i * n + coord]] = rel[i]
            for j2, rel2 in enumerate(rels):
                if rel2[coord]:
                    coeffs[aux[j][j2]] = -rel2[coord]
            sys.add_equation(coeffs)
    flats = sys.kernel(project=avars)
    matrices = _matrices_from_flat(module, flats)
    return EndoFamily(module, _endo_presentation(module, matrices), matrices)
