"""Bilinear maps between finitely presented modules.

A map is stored by its values on generator pairs.  The reduction step
quotients out both annihilators and restricts the codomain to the span
of the image, producing a full non-degenerate map; when domain sides
differ it also builds the paired map on the direct sum whose scalar
ring machinery applies uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modules import (
    DimensionMismatch,
    FgModule,
    LinearSystem,
    SubmoduleHandle,
    Vector,
    vec_add,
    zero_vector,
)


@dataclass(frozen=True)
class BilinearTensor:
    """f : A x B -> C given by tensor[i][j] = f(a_i, b_j) in C-coordinates."""

    A: FgModule
    B: FgModule
    C: FgModule
    tensor: tuple  # [A.ngens][B.ngens] -> Vector over C

    def __post_init__(self):
        if not (self.A.scalars == self.B.scalars == self.C.scalars):
            raise ValueError("bilinear map requires a common ring of scalars")
        rows = tuple(
            tuple(self.C.reduce(tuple(int(x) for x in v)) for v in row) for row in self.tensor
        )
        if len(rows) != self.A.ngens or any(len(r) != self.B.ngens for r in rows):
            raise DimensionMismatch("tensor shape must be A.ngens x B.ngens")
        object.__setattr__(self, "tensor", rows)

    def apply(self, x, y) -> Vector:
        x = self.A.reduce(x)
        y = self.B.reduce(y)
        out = [0] * self.C.ngens
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.tensor[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                cell = row[j]
                c = xi * yj
                for k in range(self.C.ngens):
                    if cell[k]:
                        out[k] += c * cell[k]
        return self.C.reduce(out)


def validate(f: BilinearTensor):
    """Well-definedness on the presentations; empty list means valid."""
    violations = []
    for jr, rel in enumerate(f.A.relations):
        for j in range(f.B.ngens):
            acc = zero_vector(f.C.ngens)
            for i in range(f.A.ngens):
                if rel[i]:
                    acc = vec_add(acc, tuple(rel[i] * v for v in f.tensor[i][j]))
            if not f.C.is_zero_elem(acc):
                violations.append(("left", jr, j))
    for jr, rel in enumerate(f.B.relations):
        for i in range(f.A.ngens):
            acc = zero_vector(f.C.ngens)
            for j in range(f.B.ngens):
                if rel[j]:
                    acc = vec_add(acc, tuple(rel[j] * v for v in f.tensor[i][j]))
            if not f.C.is_zero_elem(acc):
                violations.append(("right", jr, i))
    return violations


def _annihilator(f: BilinearTensor, side: str) -> SubmoduleHandle:
    if side == "left":
        dom, other = f.A, f.B
        entry = lambda i, j: f.tensor[i][j]
    else:
        dom, other = f.B, f.A
        entry = lambda i, j: f.tensor[j][i]
    sys = LinearSystem(dom.scalars)
    xs = sys.new_vars(dom.ngens)
    aux = [sys.new_vars(len(f.C.relations)) for _ in range(other.ngens)]
    for j in range(other.ngens):
        for coord in range(f.C.ngens):
            coeffs = {}
            for i in range(dom.ngens):
                v = entry(i, j)[coord]
                if v:
                    coeffs[xs[i]] = v
            for q, rel in enumerate(f.C.relations):
                if rel[coord]:
                    coeffs[aux[j][q]] = -rel[coord]
            sys.add_equation(coeffs)
    return dom.submodule(sys.kernel(project=xs))


def annihilators(f: BilinearTensor):
    """Left and right annihilator submodules, by kernel computation."""
    return _annihilator(f, "left"), _annihilator(f, "right")


def image_span(f: BilinearTensor) -> SubmoduleHandle:
    gens = tuple(f.tensor[i][j] for i in range(f.A.ngens) for j in range(f.B.ngens))
    return f.C.submodule(gens)


def is_full(f: BilinearTensor) -> bool:
    q, _ = image_span(f).quotient()
    return q.cardinality.kind == "zero"


def is_nondegenerate(f: BilinearTensor) -> bool:
    left, right = annihilators(f)
    return left.is_zero() and right.is_zero()


@dataclass(frozen=True)
class ReducedMap:
    """Full non-degenerate reduction of a bilinear map.

    full_map acts on the annihilator quotients with codomain presented on
    the image generators; symmetrized_map is the induced map on the direct
    sum of both quotient sides, used when the sides differ.
    """

    original: BilinearTensor
    left_ann: SubmoduleHandle
    right_ann: SubmoduleHandle
    left_quotient: FgModule
    right_quotient: FgModule
    image_module: FgModule
    full_map: BilinearTensor
    symmetrized_map: BilinearTensor


def reduce(f: BilinearTensor) -> ReducedMap:
    left_ann, right_ann = annihilators(f)
    a1, _ = left_ann.quotient()
    b1, _ = right_ann.quotient()
    span = image_span(f)
    c1 = span.presentation()  # one generator per tensor cell
    mb = f.B.ngens

    def cell_gen(i, j):
        return tuple(1 if q == i * mb + j else 0 for q in range(f.A.ngens * mb))

    tensor1 = tuple(tuple(cell_gen(i, j) for j in range(mb)) for i in range(f.A.ngens))
    full_map = BilinearTensor(a1, b1, c1, tensor1)

    pair = a1.direct_sum(b1)
    cc = c1.direct_sum(c1)
    na, nc = a1.ngens, c1.ngens
    zero = zero_vector(2 * nc)
    rows = []
    for i in range(pair.ngens):
        row = []
        for j in range(pair.ngens):
            if i < na and j >= na:
                # f2((a_i,0),(0,b_{j'})) = (f1(a_i,b_{j'}), 0)
                row.append(tuple(tensor1[i][j - na]) + zero_vector(nc))
            elif i >= na and j < na:
                # f2((0,b_{i'}),(a_j,0)) = (0, f1(a_j,b_{i'}))
                row.append(zero_vector(nc) + tuple(tensor1[j][i - na]))
            else:
                row.append(zero)
        rows.append(tuple(row))
    symmetrized = BilinearTensor(pair, pair, cc, tuple(rows))
    return ReducedMap(
        original=f,
        left_ann=left_ann,
        right_ann=right_ann,
        left_quotient=a1,
        right_quotient=b1,
        image_module=c1,
        full_map=full_map,
        symmetrized_map=symmetrized,
    )


def multiplication_tensor(module: FgModule, mult) -> BilinearTensor:
    """Convenience wrapper: a multiplication table as a bilinear map."""
    return BilinearTensor(module, module, module, mult)
