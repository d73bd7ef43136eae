"""Scalar rings of bilinear maps.

For a full non-degenerate f : N x N -> M three nested endomorphism
families are computed, all by exact kernel solves:

  symmetric_endomorphisms  -- alpha with f(alpha x, y) = f(x, alpha y)
  central_scalars          -- the commutative unital subring of those
                              commuting with every symmetric generator
  largest_scalar_ring      -- the members whose action extends to M
                              through f without ambiguity

The pipeline entry point scalar_ring_of reduces an arbitrary bilinear
map first and picks the appropriate side.  Centrality is decided by the
direct commutator conditions; the bilinear-form systems appear only in
emitted certificates (they have provably the same solutions and the
commutator form keeps the linear systems small).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bilinear as bl
from .modules import (
    Cardinality,
    EndoFamily,
    FgModule,
    LinearSystem,
    Matrix,
    Vector,
    _endo_presentation,
    _matrices_from_flat,
    combine_cardinality,
    identity_matrix,
    mat_mul,
    vec_sub,
)


@dataclass(frozen=True)
class ScalarRing:
    """A commutative unital ring of endomorphisms, presented by module
    generators with structure constants."""

    ambient: FgModule
    module: FgModule
    matrices: tuple  # tuple[Matrix, ...], one endomorphism per generator
    structure_constants: tuple  # [k][k] -> coordinates over the generators
    one: Vector

    @property
    def family(self) -> EndoFamily:
        return EndoFamily(self.ambient, self.module, self.matrices)

    def element_matrix(self, coords) -> Matrix:
        return self.family.element_matrix(coords)

    def coords_of(self, matrix):
        return self.family.coords_of(matrix)

    def mul(self, x, y) -> Vector:
        k = len(self.matrices)
        out = [0] * k
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                sc = self.structure_constants[i][j]
                c = xi * yj
                for q in range(k):
                    if sc[q]:
                        out[q] += c * sc[q]
        return self.module.reduce(out)

    def eq(self, x, y) -> bool:
        return self.module.elem_eq(x, y)

    @property
    def cardinality(self) -> Cardinality:
        return self.module.cardinality

    def as_algebra(self):
        from .algebra import AlgebraFlags, AlgebraPresentation

        return AlgebraPresentation(
            module=self.module,
            mult=self.structure_constants,
            flags=AlgebraFlags(associative=True, commutative=True, unital=self.one),
        )


class ScalarRingError(ValueError):
    pass


def _require_full_nondegenerate_square(f: bl.BilinearTensor):
    if f.A != f.B:
        raise ScalarRingError("map must have identical domain sides")
    if not bl.is_full(f):
        raise ScalarRingError("map must be full")
    if not bl.is_nondegenerate(f):
        raise ScalarRingError("map must be non-degenerate")


def symmetric_endomorphisms(f: bl.BilinearTensor) -> EndoFamily:
    """Endomorphisms alpha of N with f(alpha a_i, a_j) = f(a_i, alpha a_j)."""
    _require_full_nondegenerate_square(f)
    n_mod, c_mod = f.A, f.C
    n = n_mod.ngens
    sys = LinearSystem(n_mod.scalars)
    avars = sys.new_vars(n * n)
    # well-definedness of the endomorphism on the presentation
    wd_aux = [sys.new_vars(len(n_mod.relations)) for _ in n_mod.relations]
    for j, rel in enumerate(n_mod.relations):
        for coord in range(n):
            coeffs = {}
            for i in range(n):
                if rel[i]:
                    coeffs[avars[i * n + coord]] = rel[i]
            for j2, rel2 in enumerate(n_mod.relations):
                if rel2[coord]:
                    coeffs[wd_aux[j][j2]] = -rel2[coord]
            sys.add_equation(coeffs)
    # symmetry of f against all generator pairs
    for i in range(n):
        for j in range(n):
            aux = sys.new_vars(len(c_mod.relations))
            for coord in range(c_mod.ngens):
                coeffs = {}
                for k in range(n):
                    c = f.tensor[k][j][coord]
                    if c:
                        coeffs[avars[i * n + k]] = coeffs.get(avars[i * n + k], 0) + c
                for k in range(n):
                    c = f.tensor[i][k][coord]
                    if c:
                        key = avars[j * n + k]
                        coeffs[key] = coeffs.get(key, 0) - c
                for q, rel in enumerate(c_mod.relations):
                    if rel[coord]:
                        coeffs[aux[q]] = -rel[coord]
                coeffs = {k: v for k, v in coeffs.items() if v}
                sys.add_equation(coeffs)
    flats = sys.kernel(project=avars)
    matrices = _matrices_from_flat(n_mod, flats)
    return EndoFamily(n_mod, _endo_presentation(n_mod, matrices), matrices)


def _span_endo_family(ambient: FgModule, base_matrices, coeff_vectors) -> tuple:
    """Matrices obtained from coefficient vectors over a base family."""
    n = ambient.ngens
    out = []
    for cv in coeff_vectors:
        rows = [[0] * n for _ in range(n)]
        for c, mat in zip(cv, base_matrices, strict=True):
            if c:
                for i in range(n):
                    for j in range(n):
                        rows[i][j] += c * mat[i][j]
        out.append(ambient.scalars.reduce_matrix(rows))
    return tuple(out)


def _central_coefficients(ambient: FgModule, base_matrices):
    """Coefficient vectors u with sum(u_s * beta_s) commuting with every beta_t,
    as endomorphisms of the presented module."""
    n = ambient.ngens
    k = len(base_matrices)
    sys = LinearSystem(ambient.scalars)
    uvars = sys.new_vars(k)
    commutators = {}
    for s in range(k):
        for t in range(k):
            commutators[s, t] = mat_mul(base_matrices[s], base_matrices[t])
    for t in range(k):
        for g in range(n):
            aux = sys.new_vars(len(ambient.relations))
            for coord in range(n):
                coeffs = {}
                for s in range(k):
                    c = commutators[s, t][g][coord] - commutators[t, s][g][coord]
                    if c:
                        coeffs[uvars[s]] = coeffs.get(uvars[s], 0) + c
                for q, rel in enumerate(ambient.relations):
                    if rel[coord]:
                        coeffs[aux[q]] = -rel[coord]
                coeffs = {a: b for a, b in coeffs.items() if b}
                sys.add_equation(coeffs)
    return sys.kernel(project=uvars)


def _build_scalar_ring(ambient: FgModule, matrices) -> ScalarRing:
    """Presentation, structure constants, and identity for a family of
    commuting endomorphisms that is closed under composition."""
    module = _endo_presentation(ambient, matrices)
    fam = EndoFamily(ambient, module, matrices)
    one = fam.coords_of(identity_matrix(ambient.ngens))
    if one is None:
        raise AssertionError("identity endomorphism missing from scalar ring")
    k = len(matrices)
    sc = []
    for i in range(k):
        row = []
        for j in range(k):
            prod = mat_mul(matrices[j], matrices[i])  # composition gamma_i then gamma_j
            coords = fam.coords_of(prod)
            if coords is None:
                raise AssertionError("scalar ring not closed under composition")
            row.append(coords)
        sc.append(tuple(row))
    return ScalarRing(ambient, module, tuple(matrices), tuple(sc), one)


def central_scalars(f: bl.BilinearTensor) -> ScalarRing:
    """The center of the symmetric endomorphism ring of a full
    non-degenerate map, with ring structure."""
    sym = symmetric_endomorphisms(f)
    coeffs = _central_coefficients(f.A, sym.matrices)
    matrices = _span_endo_family(f.A, sym.matrices, coeffs)
    return _build_scalar_ring(f.A, matrices)


def image_syzygies(f: bl.BilinearTensor):
    """Generators of the kernel of (z_jk) -> sum z_jk f(a_j, a_k)."""
    n = f.A.ngens
    c_mod = f.C
    sys = LinearSystem(f.A.scalars)
    zvars = sys.new_vars(n * n)
    aux = sys.new_vars(len(c_mod.relations))
    for coord in range(c_mod.ngens):
        coeffs = {}
        for j in range(n):
            for k in range(n):
                c = f.tensor[j][k][coord]
                if c:
                    coeffs[zvars[j * n + k]] = c
        for q, rel in enumerate(c_mod.relations):
            if rel[coord]:
                coeffs[aux[q]] = -rel[coord]
        sys.add_equation(coeffs)
    return sys.kernel(project=zvars)


def largest_scalar_ring(f: bl.BilinearTensor) -> ScalarRing:
    """Members of the central scalars whose action transfers to the
    codomain: all syzygies of the image must stay syzygies after acting
    on the left argument."""
    zs = central_scalars(f)
    n = f.A.ngens
    c_mod = f.C
    syz = image_syzygies(f)
    k = len(zs.matrices)
    sys = LinearSystem(f.A.scalars)
    uvars = sys.new_vars(k)
    # precompute f(gamma_q a_j, a_k) as C-coordinates
    action = []
    for q in range(k):
        mat = zs.matrices[q]
        grid = [[None] * n for _ in range(n)]
        for j in range(n):
            for kk in range(n):
                acc = [0] * c_mod.ngens
                for w in range(n):
                    c = mat[j][w]
                    if c:
                        cell = f.tensor[w][kk]
                        for coord in range(c_mod.ngens):
                            if cell[coord]:
                                acc[coord] += c * cell[coord]
                grid[j][kk] = tuple(acc)
        action.append(grid)
    for s in syz:
        aux = sys.new_vars(len(c_mod.relations))
        for coord in range(c_mod.ngens):
            coeffs = {}
            for q in range(k):
                total = 0
                for j in range(n):
                    for kk in range(n):
                        z = s[j * n + kk]
                        if z:
                            total += z * action[q][j][kk][coord]
                if total:
                    coeffs[uvars[q]] = total
            for w, rel in enumerate(c_mod.relations):
                if rel[coord]:
                    coeffs[aux[w]] = -rel[coord]
            sys.add_equation(coeffs)
    coeffs_vecs = sys.kernel(project=uvars)
    matrices = _span_endo_family(f.A, zs.matrices, coeffs_vecs)
    return _build_scalar_ring(f.A, matrices)


def scalar_ring_of(f: bl.BilinearTensor) -> ScalarRing:
    """Scalar ring of an arbitrary bilinear map: reduce to a full
    non-degenerate map and take its central scalars."""
    violations = bl.validate(f)
    if violations:
        raise ScalarRingError(f"tensor not well-defined on the presentations: {violations}")
    rm = bl.reduce(f)
    if f.A == f.B and rm.left_quotient == rm.right_quotient:
        n_mod = rm.left_quotient
        fullmap = bl.BilinearTensor(n_mod, n_mod, rm.image_module, rm.full_map.tensor)
        return central_scalars(fullmap)
    return central_scalars(rm.symmetrized_map)


@dataclass(frozen=True)
class TrichotomyReport:
    scalar_ring: str
    image: str
    reduced_pair: str

    @property
    def consistent(self) -> bool:
        return self.scalar_ring == self.image == self.reduced_pair

    def as_dict(self):
        return {
            "scalar_ring": self.scalar_ring,
            "c1": self.image,
            "a1xb1": self.reduced_pair,
            "consistent": self.consistent,
        }


def classify_trichotomy(f: bl.BilinearTensor) -> TrichotomyReport:
    """Zero/finite/infinite agreement between the scalar ring, the image
    span, and the product of the reduced domain sides."""
    ring = scalar_ring_of(f)
    rm = bl.reduce(f)
    image_card = rm.image_module.cardinality
    pair_card = combine_cardinality(
        rm.left_quotient.cardinality, rm.right_quotient.cardinality
    )
    return TrichotomyReport(
        scalar_ring=ring.cardinality.kind,
        image=image_card.kind,
        reduced_pair=pair_card.kind,
    )


# ---------------------------------------------------------------------------
# verification helpers (used by tests and the acceptance suite)


def check_ring_axioms(ring: ScalarRing):
    """Commutativity, associativity, and identity on generators, plus
    closure of every generator product; empty list means all hold."""
    problems = []
    k = len(ring.matrices)
    gens = [tuple(1 if i == q else 0 for i in range(k)) for q in range(k)]
    for i in range(k):
        for j in range(k):
            if not ring.eq(ring.structure_constants[i][j], ring.structure_constants[j][i]):
                problems.append(f"commutativity fails at ({i},{j})")
    for i in range(k):
        for j in range(k):
            for l in range(k):
                lhs = ring.mul(ring.mul(gens[i], gens[j]), gens[l])
                rhs = ring.mul(gens[i], ring.mul(gens[j], gens[l]))
                if not ring.eq(lhs, rhs):
                    problems.append(f"associativity fails at ({i},{j},{l})")
    for i in range(k):
        if not ring.eq(ring.mul(ring.one, gens[i]), gens[i]):
            problems.append(f"left identity fails at {i}")
        if not ring.eq(ring.mul(gens[i], ring.one), gens[i]):
            problems.append(f"right identity fails at {i}")
    return problems


def check_submodule_containment(inner: EndoFamily, outer: EndoFamily):
    """Every matrix of `inner` expressible over `outer`; empty list = holds."""
    problems = []
    for idx, mat in enumerate(inner.matrices):
        if outer.coords_of(mat) is None:
            problems.append(f"generator {idx} not contained")
    return problems


def check_unit_action_isomorphism(alg, ring: ScalarRing):
    """For f = multiplication of a commutative unital ring, the map
    alpha -> alpha(1) must be a ring isomorphism onto the ring.
    Returns a list of violations."""
    module = alg.module
    one = alg.flags.unital
    if one is None:
        return ["algebra has no identity"]
    k = len(ring.matrices)
    images = tuple(
        module.reduce(
            tuple(
                sum(one[i] * ring.matrices[q][i][j] for i in range(module.ngens))
                for j in range(module.ngens)
            )
        )
        for q in range(k)
    )
    problems = []
    # module morphism must be well-defined: relators of the ring presentation map to 0
    for rel in ring.module.relations:
        img = module.reduce(
            tuple(sum(rel[q] * images[q][j] for q in range(k)) for j in range(module.ngens))
        )
        if not module.is_zero_elem(img):
            problems.append("not well-defined on the presentation")
            break
    # surjectivity: every algebra generator has a preimage
    from .modules import LinearSystem as _LS

    for g in range(module.ngens):
        sys = _LS(module.scalars)
        cv = sys.new_vars(k)
        aux = sys.new_vars(len(module.relations))
        for j in range(module.ngens):
            coeffs = {}
            for q in range(k):
                if images[q][j]:
                    coeffs[cv[q]] = images[q][j]
            for w, rel in enumerate(module.relations):
                if rel[j]:
                    coeffs[aux[w]] = -rel[j]
            sys.add_equation(coeffs, 1 if j == g else 0)
        if sys.solve() is None:
            problems.append(f"generator {g} has no preimage (not surjective)")
    # injectivity: kernel coefficients must already be relations of the ring
    sys = _LS(module.scalars)
    cv = sys.new_vars(k)
    aux = [sys.new_vars(len(module.relations))]
    for j in range(module.ngens):
        coeffs = {}
        for q in range(k):
            if images[q][j]:
                coeffs[cv[q]] = images[q][j]
        for w, rel in enumerate(module.relations):
            if rel[j]:
                coeffs[aux[0][w]] = -rel[j]
        sys.add_equation(coeffs)
    for vec in sys.kernel(project=cv):
        if not ring.module.is_zero_elem(vec):
            problems.append("kernel element acts as zero but is nonzero in the ring (not injective)")
            break
    # multiplicativity on generators through the structure constants
    for i in range(k):
        for j in range(k):
            prod_coords = ring.structure_constants[i][j]
            lhs = module.reduce(
                tuple(
                    sum(prod_coords[q] * images[q][w] for q in range(k))
                    for w in range(module.ngens)
                )
            )
            rhs = alg.product(images[i], images[j])
            if not module.elem_eq(lhs, rhs):
                problems.append(f"multiplicativity fails at ({i},{j})")
    # identity maps to identity
    one_img = module.reduce(
        tuple(sum(ring.one[q] * images[q][w] for q in range(k)) for w in range(module.ngens))
    )
    if not module.elem_eq(one_img, one):
        problems.append("identity does not map to the ring identity")
    return problems
