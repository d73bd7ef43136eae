"""Equation systems over multi-sorted signatures and interpretation
certificates.

Sorts carry finitely presented modules; the signature offers the module
operations, optional ring multiplication per sort, and named bilinear
maps across sorts.  An interpretation certificate rewrites each source
sort into tuples of target variables together with domain, equality,
and per-operation graph systems; translate pushes whole equation
systems through a certificate, and compose chains certificates.

Conventions for distinguished variable names inside certificate
systems: domain systems use x0..x{k-1}; equality systems use p*/q*;
op graphs use a{i}_{j} for argument i and res_{j} for the result.
Any other variable in a system is auxiliary and is freshened on every
instantiation.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field

from .algebra import AlgebraPresentation
from .modules import FgModule, Scalars, Vector, vec_add, zero_vector


DEFAULT_EVAL_CAP = 10**6


class CapExceeded(RuntimeError):
    def __init__(self, required, cap):
        super().__init__(f"search space of {required} assignments exceeds cap {cap}")
        self.required = required
        self.cap = cap


class SignatureError(ValueError):
    pass


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str
    sort: str


@dataclass(frozen=True)
class Const:
    sort: str
    value: Vector


@dataclass(frozen=True)
class App:
    op: str
    args: tuple


Term = object  # Var | Const | App


def term_vars(term):
    if isinstance(term, Var):
        yield term
    elif isinstance(term, App):
        for a in term.args:
            yield from term_vars(a)


def subst_term(term, mapping):
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if isinstance(term, App):
        return App(term.op, tuple(subst_term(a, mapping) for a in term.args))
    return term


# term builders -------------------------------------------------------------


def t_add(sort, a, b):
    return App(f"add@{sort}", (a, b))


def t_neg(sort, a):
    return App(f"neg@{sort}", (a,))


def t_zero(sort):
    return App(f"zero@{sort}", ())


def t_smul(sort, scalar, a):
    return App(f"smul[{scalar}]@{sort}", (a,))


def t_mul(sort, a, b):
    return App(f"mul@{sort}", (a, b))


def t_sum(sort, terms):
    terms = list(terms)
    if not terms:
        return t_zero(sort)
    out = terms[0]
    for t in terms[1:]:
        out = t_add(sort, out, t)
    return out


_SMUL_RE = re.compile(r"^smul\[(-?\d+)\]@(.+)$")


# ---------------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class OpSig:
    name: str
    args: tuple
    result: str
    kind: str  # add | neg | zero | smul | mul | bilinear
    param: int | None = None


@dataclass(frozen=True)
class Signature:
    sorts: tuple
    ring_sorts: tuple = ()
    bilinears: tuple = ()  # tuple[OpSig, ...]

    def resolve(self, name) -> OpSig:
        return _resolve(self, name)

    def term_sort(self, term) -> str:
        if isinstance(term, (Var, Const)):
            if term.sort not in self.sorts:
                raise SignatureError(f"unknown sort {term.sort}")
            return term.sort
        op = self.resolve(term.op)
        if len(op.args) != len(term.args):
            raise SignatureError(f"{term.op} expects {len(op.args)} arguments")
        for expected, sub in zip(op.args, term.args):
            got = self.term_sort(sub)
            if got != expected:
                raise SignatureError(f"{term.op}: argument of sort {got}, expected {expected}")
        return op.result


@functools.lru_cache(maxsize=4096)
def _resolve(sig: Signature, name: str) -> OpSig:
    m = _SMUL_RE.match(name)
    if m:
        lam, sort = int(m.group(1)), m.group(2)
        if sort not in sig.sorts:
            raise SignatureError(f"unknown sort in {name}")
        return OpSig(name, (sort,), sort, "smul", lam)
    for prefix, kind, arity in (("add@", "add", 2), ("neg@", "neg", 1), ("zero@", "zero", 0)):
        if name.startswith(prefix):
            sort = name[len(prefix):]
            if sort not in sig.sorts:
                raise SignatureError(f"unknown sort in {name}")
            return OpSig(name, (sort,) * arity, sort, kind)
    if name.startswith("mul@"):
        sort = name[4:]
        if sort not in sig.ring_sorts:
            raise SignatureError(f"sort {sort} has no ring multiplication")
        return OpSig(name, (sort, sort), sort, "mul")
    for op in sig.bilinears:
        if op.name == name:
            return op
    raise SignatureError(f"unknown operation {name}")


# ---------------------------------------------------------------------------
# equation systems


@dataclass(frozen=True)
class EqSystem:
    signature: Signature
    variables: tuple  # tuple[Var, ...]
    equations: tuple  # tuple[(Term, Term), ...]
    projected: tuple = ()  # distinguished variable names; default: all

    def __post_init__(self):
        if not self.projected:
            object.__setattr__(self, "projected", tuple(v.name for v in self.variables))

    def check(self):
        declared = {v.name: v.sort for v in self.variables}
        if len(declared) != len(self.variables):
            raise SignatureError("duplicate variable names")
        for lhs, rhs in self.equations:
            ls = self.signature.term_sort(lhs)
            rs = self.signature.term_sort(rhs)
            if ls != rs:
                raise SignatureError(f"equation mixes sorts {ls} and {rs}")
            for v in itertools.chain(term_vars(lhs), term_vars(rhs)):
                if declared.get(v.name) != v.sort:
                    raise SignatureError(f"variable {v.name} not declared with sort {v.sort}")
        return self

    def var_sorts(self):
        return {v.name: v.sort for v in self.variables}


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True)
class BilinearOp:
    name: str
    arg_sorts: tuple  # (sortA, sortB)
    result_sort: str
    tensor: tuple


@dataclass
class Structure:
    """Carriers for each sort plus the data of multiplication and named
    bilinear operations."""

    modules: dict  # sort -> FgModule
    multiplications: dict = field(default_factory=dict)  # sort -> tensor
    bilinears: dict = field(default_factory=dict)  # name -> BilinearOp
    _sig: Signature | None = field(default=None, repr=False, compare=False)

    def signature(self) -> Signature:
        if self._sig is None:
            self._sig = Signature(
                sorts=tuple(self.modules),
                ring_sorts=tuple(s for s in self.modules if s in self.multiplications),
                bilinears=tuple(
                    OpSig(b.name, b.arg_sorts, b.result_sort, "bilinear")
                    for b in self.bilinears.values()
                ),
            )
        return self._sig

    def module(self, sort) -> FgModule:
        return self.modules[sort]

    def is_finite(self) -> bool:
        return all(m.cardinality.is_finite for m in self.modules.values())

    def _apply_tensor(self, tensor, target: FgModule, x, y):
        out = [0] * target.ngens
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = tensor[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                cell = row[j]
                c = xi * yj
                for k in range(target.ngens):
                    if cell[k]:
                        out[k] += c * cell[k]
        return target.reduce(out)

    def eval_term(self, term, env) -> Vector:
        if isinstance(term, Var):
            return env[term.name]
        if isinstance(term, Const):
            return self.module(term.sort).reduce(term.value)
        op = self.signature().resolve(term.op)
        args = [self.eval_term(a, env) for a in term.args]
        mod = self.module(op.result)
        if op.kind == "add":
            return mod.reduce(vec_add(args[0], args[1]))
        if op.kind == "neg":
            return mod.reduce(tuple(-v for v in args[0]))
        if op.kind == "zero":
            return mod.zero()
        if op.kind == "smul":
            return mod.reduce(tuple(op.param * v for v in args[0]))
        if op.kind == "mul":
            return self._apply_tensor(self.multiplications[op.result], mod, args[0], args[1])
        if op.kind == "bilinear":
            b = self.bilinears[term.op]
            return self._apply_tensor(b.tensor, mod, args[0], args[1])
        raise SignatureError(f"cannot evaluate {term.op}")

    def holds(self, system: EqSystem, env) -> bool:
        for lhs, rhs in system.equations:
            sort = system.signature.term_sort(lhs)
            mod = self.module(sort)
            if not mod.elem_eq(self.eval_term(lhs, env), self.eval_term(rhs, env)):
                return False
        return True


def module_structure(**modules) -> Structure:
    return Structure(modules=dict(modules))


def algebra_structure(alg: AlgebraPresentation, sort: str = "A") -> Structure:
    return Structure(modules={sort: alg.module}, multiplications={sort: alg.mult})


def scalar_base_structure(scalars: Scalars, sort: str = "base") -> Structure:
    mod = FgModule(scalars, 1)
    return Structure(modules={sort: mod}, multiplications={sort: (((1,),),)})


def bilinear_structure(f, sorts=("N", "M"), name: str = "f") -> Structure:
    """Two-sorted structure (N, M; f) for a square map, or three-sorted
    (A, B, C; f) otherwise."""
    if f.A == f.B and len(sorts) == 2:
        sn, sm = sorts
        return Structure(
            modules={sn: f.A, sm: f.C},
            bilinears={name: BilinearOp(name, (sn, sn), sm, f.tensor)},
        )
    sa, sb, sc = sorts if len(sorts) == 3 else ("A", "B", "C")
    return Structure(
        modules={sa: f.A, sb: f.B, sc: f.C},
        bilinears={name: BilinearOp(name, (sa, sb), sc, f.tensor)},
    )


def eval_system(structure: Structure, system: EqSystem, cap: int = DEFAULT_EVAL_CAP):
    """Exhaustive solutions of a system over a finite structure, in
    deterministic enumeration order.  Returns a list of assignment
    tuples aligned with system.variables."""
    system.check()
    carriers = []
    space = 1
    element_cache = {}
    for v in system.variables:
        mod = structure.module(v.sort)
        if not mod.cardinality.is_finite:
            raise ValueError(f"sort {v.sort} is infinite; cannot enumerate")
        if v.sort not in element_cache:
            element_cache[v.sort] = mod.elements()
        els = element_cache[v.sort]
        carriers.append(els)
        space *= len(els)
    if space > cap:
        raise CapExceeded(space, cap)
    names = [v.name for v in system.variables]
    eq_mods = [
        structure.module(system.signature.term_sort(lhs))
        for lhs, _ in system.equations
    ]
    out = []
    for combo in itertools.product(*carriers):
        env = dict(zip(names, combo))
        ok = True
        for (lhs, rhs), mod in zip(system.equations, eq_mods):
            if not mod.elem_eq(
                structure.eval_term(lhs, env), structure.eval_term(rhs, env)
            ):
                ok = False
                break
        if ok:
            out.append(combo)
    return out


def solution_keys(structure, system, solutions, names=None):
    """Project solutions onto the given variable names as canonical keys."""
    names = tuple(names) if names is not None else system.projected
    order = [v.name for v in system.variables]
    sorts = system.var_sorts()
    idx = {n: order.index(n) for n in names}
    keys = set()
    for sol in solutions:
        keys.add(
            tuple(structure.module(sorts[n]).canonical_key(sol[idx[n]]) for n in names)
        )
    return keys


# ---------------------------------------------------------------------------
# interpretations


@dataclass(frozen=True)
class SortInterp:
    target_sorts: tuple
    domain: EqSystem
    equality: EqSystem


@dataclass
class Interpretation:
    """Certificate that one structure lives inside another through
    systems of equations."""

    source_signature: Signature
    target: Structure
    sort_interps: dict  # source sort -> SortInterp
    op_graphs: dict  # op name -> EqSystem (materialized ops)
    smul_graph: object = None  # callable (scalar, sort) -> EqSystem
    const_preimage: object = None  # callable (sort, coords) -> tuple of target elements
    decode: object = None  # callable (sort, tuple of target elements) -> source coords
    source_structure: Structure | None = None  # for finite verification

    def dimension(self, sort) -> int:
        return len(self.sort_interps[sort].target_sorts)

    def graph_for(self, opsig: OpSig) -> EqSystem:
        if opsig.name in self.op_graphs:
            return self.op_graphs[opsig.name]
        if opsig.kind == "smul" and self.smul_graph is not None:
            return self.smul_graph(opsig.param, opsig.result)
        raise SignatureError(f"certificate has no graph for {opsig.name}")


class _FreshNames:
    def __init__(self, prefix="h"):
        self.prefix = prefix
        self.counter = 0

    def next(self):
        name = f"_{self.prefix}{self.counter}"
        self.counter += 1
        return name


def _instantiate(template: EqSystem, binding, fresh: _FreshNames):
    """Substitute distinguished variables per `binding` (name -> Term) and
    freshen every other variable.  Returns (equations, new aux vars)."""
    mapping = dict(binding)
    aux = []
    for v in template.variables:
        if v.name not in mapping:
            nv = Var(fresh.next(), v.sort)
            mapping[v.name] = nv
            aux.append(nv)
    eqs = [
        (subst_term(l, mapping), subst_term(r, mapping)) for l, r in template.equations
    ]
    return eqs, aux


def _unnest(system: EqSystem):
    """Flatten every equation into atoms over plain variables:
    ('op', result var, op name, arg var names), ('const', var, Const),
    ('eq', var1, var2, sort).  Fresh variables are introduced depth-first
    left-to-right."""
    sig = system.signature
    fresh_count = itertools.count()
    new_vars = list(system.variables)
    atoms = []

    def fresh_var(sort):
        v = Var(f"_u{next(fresh_count)}", sort)
        new_vars.append(v)
        return v

    def walk(term):
        if isinstance(term, Var):
            return term
        if isinstance(term, Const):
            v = fresh_var(term.sort)
            atoms.append(("const", v, term))
            return v
        op = sig.resolve(term.op)
        arg_vars = [walk(a) for a in term.args]
        v = fresh_var(op.result)
        atoms.append(("op", v, op, tuple(arg_vars)))
        return v

    for lhs, rhs in system.equations:
        vl = walk(lhs)
        vr = walk(rhs)
        atoms.append(("eq", vl, vr, sig.term_sort(lhs)))
    return tuple(new_vars), atoms


def translate(system: EqSystem, interp: Interpretation):
    """Push a system through a certificate.

    Returns (translated system over the target, provenance) where
    provenance maps each source variable to its tuple of target variable
    names; solutions of the output restricted to the provenance blocks of
    the original variables are exactly the preimages of the source
    solutions."""
    system.check()
    all_vars, atoms = _unnest(system)
    fresh = _FreshNames()
    out_vars = []
    provenance = {}
    blocks = {}
    for v in all_vars:
        si = interp.sort_interps[v.sort]
        block = tuple(
            Var(f"{v.name}__{i}", ts) for i, ts in enumerate(si.target_sorts)
        )
        blocks[v.name] = block
        out_vars.extend(block)
        provenance[v.name] = tuple(b.name for b in block)
    equations = []
    aux_vars = []
    # domain constraints for every source variable
    for v in all_vars:
        si = interp.sort_interps[v.sort]
        binding = {f"x{i}": b for i, b in enumerate(blocks[v.name])}
        eqs, aux = _instantiate(si.domain, binding, fresh)
        equations.extend(eqs)
        aux_vars.extend(aux)
    for atom in atoms:
        if atom[0] == "const":
            _, v, const = atom
            si = interp.sort_interps[const.sort]
            pre = interp.const_preimage(const.sort, const.value)
            binding = {f"p{i}": b for i, b in enumerate(blocks[v.name])}
            for i, (ts, val) in enumerate(zip(si.target_sorts, pre, strict=True)):
                binding[f"q{i}"] = Const(ts, val)
            eqs, aux = _instantiate(si.equality, binding, fresh)
        elif atom[0] == "op":
            _, v, op, arg_names = atom
            graph = interp.graph_for(op)
            binding = {}
            for ai, an in enumerate(arg_names):
                for i, b in enumerate(blocks[an.name]):
                    binding[f"a{ai}_{i}"] = b
            for i, b in enumerate(blocks[v.name]):
                binding[f"res_{i}"] = b
            eqs, aux = _instantiate(graph, binding, fresh)
        else:
            _, v1, v2, sort = atom
            si = interp.sort_interps[sort]
            binding = {f"p{i}": b for i, b in enumerate(blocks[v1.name])}
            binding.update({f"q{i}": b for i, b in enumerate(blocks[v2.name])})
            eqs, aux = _instantiate(si.equality, binding, fresh)
        equations.extend(eqs)
        aux_vars.extend(aux)
    projected = tuple(
        itertools.chain.from_iterable(provenance[v.name] for v in system.variables)
    )
    out = EqSystem(
        signature=interp.target.signature(),
        variables=tuple(out_vars) + tuple(aux_vars),
        equations=tuple(equations),
        projected=projected,
    )
    out.check()
    return out, provenance


def _rename_distinguished(system: EqSystem, mapping):
    """Rename a set of distinguished variables, leaving others as aux."""
    var_map = {}
    new_vars = []
    for v in system.variables:
        if v.name in mapping:
            nv = Var(mapping[v.name], v.sort)
        else:
            nv = v
        var_map[v.name] = nv
        new_vars.append(nv)
    eqs = tuple(
        (subst_term(l, var_map), subst_term(r, var_map)) for l, r in system.equations
    )
    return EqSystem(
        signature=system.signature,
        variables=tuple(new_vars),
        equations=eqs,
        projected=tuple(var_map[n].name if n in var_map else n for n in system.projected),
    )


def _translate_template(template: EqSystem, outer: Interpretation, prefix_map):
    """Translate a certificate template system through `outer`, then
    rename the provenance blocks of its distinguished variables to the
    standard names given by prefix_map (old distinguished name -> list of
    new names)."""
    translated, provenance = translate(template, outer)
    mapping = {}
    for old, new_names in prefix_map.items():
        got = provenance[old]
        for g, n in zip(got, new_names, strict=True):
            mapping[g] = n
    return _rename_distinguished(translated, mapping)


def compose(inner: Interpretation, outer: Interpretation) -> Interpretation:
    """Certificate of inner's source inside outer's target."""
    sort_interps = {}
    for sort, si in inner.sort_interps.items():
        target_sorts = []
        block_sizes = []
        for ts in si.target_sorts:
            osi = outer.sort_interps[ts]
            target_sorts.extend(osi.target_sorts)
            block_sizes.append(len(osi.target_sorts))

        def block_names(prefix, count=len(si.target_sorts), sizes=tuple(block_sizes)):
            names = []
            pos = 0
            for i in range(count):
                names.append([f"{prefix}{pos + j}" for j in range(sizes[i])])
                pos += sizes[i]
            return names

        xs = block_names("x")
        dom = _translate_template(
            si.domain, outer, {f"x{i}": xs[i] for i in range(len(xs))}
        )
        ps = block_names("p")
        qs = block_names("q")
        eq_map = {f"p{i}": ps[i] for i in range(len(ps))}
        eq_map.update({f"q{i}": qs[i] for i in range(len(qs))})
        eq = _translate_template(si.equality, outer, eq_map)
        sort_interps[sort] = SortInterp(tuple(target_sorts), dom, eq)

    def compose_graph(template, result_sort, arg_sorts):
        prefix_map = {}
        for ai, asort in enumerate(arg_sorts):
            names = _composed_block_names(inner, outer, asort, f"a{ai}_")
            k = inner.dimension(asort)
            for i in range(k):
                prefix_map[f"a{ai}_{i}"] = names[i]
        res_names = _composed_block_names(inner, outer, result_sort, "res_")
        for i in range(inner.dimension(result_sort)):
            prefix_map[f"res_{i}"] = res_names[i]
        return _translate_template(template, outer, prefix_map)

    op_graphs = {}
    for name, graph in inner.op_graphs.items():
        op = inner.source_signature.resolve(name)
        op_graphs[name] = compose_graph(graph, op.result, op.args)

    smul = None
    if inner.smul_graph is not None:

        def smul(lam, sort):
            return compose_graph(inner.smul_graph(lam, sort), sort, (sort,))

    def const_preimage(sort, coords):
        mids = inner.const_preimage(sort, coords)
        si = inner.sort_interps[sort]
        out = []
        for ts, val in zip(si.target_sorts, mids, strict=True):
            out.extend(outer.const_preimage(ts, val))
        return tuple(out)

    decode = None
    if inner.decode is not None and outer.decode is not None:

        def decode(sort, values):
            si = inner.sort_interps[sort]
            mids = []
            pos = 0
            for ts in si.target_sorts:
                k = outer.dimension(ts)
                mids.append(outer.decode(ts, tuple(values[pos : pos + k])))
                pos += k
            return inner.decode(sort, tuple(mids))

    return Interpretation(
        source_signature=inner.source_signature,
        target=outer.target,
        sort_interps=sort_interps,
        op_graphs=op_graphs,
        smul_graph=smul,
        const_preimage=const_preimage,
        decode=decode,
        source_structure=inner.source_structure,
    )


def _composed_block_names(inner, outer, sort, prefix):
    si = inner.sort_interps[sort]
    names = []
    pos = 0
    for ts in si.target_sorts:
        k = outer.dimension(ts)
        names.append([f"{prefix}{pos + j}" for j in range(k)])
        pos += k
    return names


# ---------------------------------------------------------------------------
# constructors


def _sig_only(structure: Structure) -> Signature:
    return structure.signature()


def identity_interpretation(structure: Structure) -> Interpretation:
    sig = structure.signature()
    sort_interps = {}
    op_graphs = {}
    for sort in sig.sorts:
        dom = EqSystem(sig, (Var("x0", sort),), ())
        eq = EqSystem(
            sig,
            (Var("p0", sort), Var("q0", sort)),
            ((Var("p0", sort), Var("q0", sort)),),
        )
        sort_interps[sort] = SortInterp((sort,), dom, eq)
        for build, arity in ((t_add, 2), (t_neg, 1), (t_zero, 0)):
            name = build(sort, *[Var(f"a{i}_0", sort) for i in range(arity)]).op if arity else build(sort).op
            args = tuple(Var(f"a{i}_0", sort) for i in range(arity))
            term = App(name, args)
            res = Var("res_0", sort)
            op_graphs[name] = EqSystem(sig, args + (res,), ((res, term),))
        if sort in sig.ring_sorts:
            args = (Var("a0_0", sort), Var("a1_0", sort))
            res = Var("res_0", sort)
            op_graphs[f"mul@{sort}"] = EqSystem(
                sig, args + (res,), ((res, t_mul(sort, *args)),)
            )
    for b in sig.bilinears:
        args = tuple(Var(f"a{i}_0", s) for i, s in enumerate(b.args))
        res = Var("res_0", b.result)
        op_graphs[b.name] = EqSystem(
            sig, args + (res,), ((res, App(b.name, args)),)
        )

    def smul(lam, sort):
        a = Var("a0_0", sort)
        res = Var("res_0", sort)
        return EqSystem(sig, (a, res), ((res, t_smul(sort, lam, a)),))

    return Interpretation(
        source_signature=sig,
        target=structure,
        sort_interps=sort_interps,
        op_graphs=op_graphs,
        smul_graph=smul,
        const_preimage=lambda sort, coords: (tuple(coords),),
        decode=lambda sort, values: tuple(values[0]),
        source_structure=structure,
    )


class QuotientError(ValueError):
    pass


def interp_quotient(obj, gens) -> Interpretation:
    """Certificate of the quotient by the ideal (or submodule) generated
    by `gens` inside the object itself.

    For algebras the object must be an associative commutative unital
    presentation, so that membership in the ideal is the single equation
    x = sum z_j g_j.  For modules only cyclic presentations are
    supported: a span with scalar-variable coefficients is not
    expressible in the module language otherwise.
    """
    from .algebra import ideal_closure

    if isinstance(obj, AlgebraPresentation):
        flags = obj.flags
        if not (flags.associative and flags.commutative and flags.unital is not None):
            raise QuotientError(
                "quotient certificates require an associative commutative unital algebra"
            )
        gens = tuple(obj.module.reduce(g) for g in gens)
        closure = ideal_closure(obj, gens)
        target = algebra_structure(obj, sort="A")
        sort = "A"
        qmod, _ = closure.quotient()
        source_structure = Structure(
            modules={"Q": qmod}, multiplications={"Q": obj.mult}
        )

        def member_terms(diff_term):
            zs = [Var(f"z{j}", sort) for j in range(len(gens))]
            rhs = t_sum(sort, (t_mul(sort, z, Const(sort, g)) for z, g in zip(zs, gens)))
            return rhs, zs

        ring_sort = True
    elif isinstance(obj, FgModule):
        gens = tuple(obj.reduce(g) for g in gens)
        if gens and obj.ngens != 1:
            raise QuotientError(
                "module quotient certificates are limited to cyclic presentations"
            )
        target = module_structure(A=obj)
        sort = "A"
        qmod = FgModule(obj.scalars, obj.ngens, tuple(obj.relations) + gens)
        source_structure = module_structure(Q=qmod)

        def member_terms(diff_term):
            zs = [Var(f"z{j}", sort) for j in range(len(gens))]
            rhs = t_sum(sort, (t_smul(sort, g[0], z) for z, g in zip(zs, gens)))
            return rhs, zs

        ring_sort = False
    else:
        raise TypeError("expected an algebra presentation or a module")

    sig = target.signature()
    qsort = "Q"

    def ideal_equation(lhs_term):
        rhs, zs = member_terms(lhs_term)
        return (lhs_term, rhs), zs

    dom = EqSystem(sig, (Var("x0", sort),), ())
    p, q = Var("p0", sort), Var("q0", sort)
    eq_eqn, eq_aux = ideal_equation(t_add(sort, p, t_neg(sort, q)))
    equality = EqSystem(sig, (p, q) + tuple(eq_aux), (eq_eqn,))

    op_graphs = {}

    def graph(name, args, expr):
        res = Var("res_0", sort)
        eqn, aux = ideal_equation(t_add(sort, expr, t_neg(sort, res)))
        op_graphs[name] = EqSystem(sig, tuple(args) + (res,) + tuple(aux), (eqn,))

    a0, a1 = Var("a0_0", sort), Var("a1_0", sort)
    graph(f"add@{qsort}", (a0, a1), t_add(sort, a0, a1))
    graph(f"neg@{qsort}", (a0,), t_neg(sort, a0))
    graph(f"zero@{qsort}", (), t_zero(sort))
    if ring_sort:
        graph(f"mul@{qsort}", (a0, a1), t_mul(sort, a0, a1))

    def smul(lam, _sort):
        res = Var("res_0", sort)
        eqn, aux = ideal_equation(t_add(sort, t_smul(sort, lam, a0), t_neg(sort, res)))
        return EqSystem(sig, (a0, res) + tuple(aux), (eqn,))

    return Interpretation(
        source_signature=source_structure.signature(),
        target=target,
        sort_interps={qsort: SortInterp((sort,), dom, equality)},
        op_graphs=op_graphs,
        smul_graph=smul,
        const_preimage=lambda s, coords: (tuple(coords),),
        decode=lambda s, values: tuple(values[0]),
        source_structure=source_structure,
    )


def interp_module_finite(alg: AlgebraPresentation) -> Interpretation:
    """Certificate of a module-finite algebra inside its base ring of
    scalars, coordinates over the module generators."""
    base = scalar_base_structure(alg.module.scalars, sort="base")
    sig = base.signature()
    sort = "base"
    n = alg.module.ngens
    rels = alg.module.relations
    t = len(rels)

    def member_rhs(zs, i):
        # sum_j z_j * a_{j,i}
        return t_sum(
            sort,
            (
                t_mul(sort, zs[j], Const(sort, (rels[j][i],)))
                for j in range(t)
                if rels[j][i]
            ),
        )

    def relspan_equations(diff_terms):
        """diff_terms[i] must equal the i-th coordinate of a relator combination."""
        zs = [Var(f"z{j}", sort) for j in range(t)]
        eqs = [(diff_terms[i], member_rhs(zs, i)) for i in range(n)]
        return eqs, zs

    dom = EqSystem(sig, tuple(Var(f"x{i}", sort) for i in range(n)), ())

    ps = [Var(f"p{i}", sort) for i in range(n)]
    qs = [Var(f"q{i}", sort) for i in range(n)]
    eqs, zs = relspan_equations([t_add(sort, p, t_neg(sort, q)) for p, q in zip(ps, qs)])
    equality = EqSystem(sig, tuple(ps) + tuple(qs) + tuple(zs), tuple(eqs))

    op_graphs = {}
    asort = "A"

    def make_graph(name, arg_blocks, exprs):
        res = [Var(f"res_{i}", sort) for i in range(n)]
        diff = [t_add(sort, exprs[i], t_neg(sort, res[i])) for i in range(n)]
        eqs, zs = relspan_equations(diff)
        flat_args = tuple(itertools.chain.from_iterable(arg_blocks))
        op_graphs[name] = EqSystem(
            sig, flat_args + tuple(res) + tuple(zs), tuple(eqs)
        )

    xs = [Var(f"a0_{i}", sort) for i in range(n)]
    ys = [Var(f"a1_{i}", sort) for i in range(n)]
    make_graph(f"add@{asort}", (xs, ys), [t_add(sort, x, y) for x, y in zip(xs, ys)])
    make_graph(f"neg@{asort}", (xs,), [t_neg(sort, x) for x in xs])
    make_graph(f"zero@{asort}", (), [t_zero(sort) for _ in range(n)])
    # multiplication: coordinate i of the product is sum_{j,k} x_j y_k b_{j,k,i}
    prod_exprs = []
    for i in range(n):
        terms = []
        for j in range(n):
            for k in range(n):
                b = alg.mult[j][k][i]
                if b:
                    terms.append(
                        t_mul(sort, Const(sort, (b,)), t_mul(sort, xs[j], ys[k]))
                    )
        prod_exprs.append(t_sum(sort, terms))
    make_graph(f"mul@{asort}", (xs, ys), prod_exprs)

    def smul(lam, _sort):
        res = [Var(f"res_{i}", sort) for i in range(n)]
        diff = [
            t_add(sort, t_smul(sort, lam, xs[i]), t_neg(sort, res[i])) for i in range(n)
        ]
        eqs, zs = relspan_equations(diff)
        return EqSystem(
            sig, tuple(xs) + tuple(res) + tuple(zs), tuple(eqs)
        )

    source_structure = algebra_structure(alg, sort=asort)
    return Interpretation(
        source_signature=source_structure.signature(),
        target=base,
        sort_interps={asort: SortInterp((sort,) * n, dom, equality)},
        op_graphs=op_graphs,
        smul_graph=smul,
        const_preimage=lambda s, coords: tuple((c,) for c in coords),
        decode=lambda s, values: tuple(v[0] for v in values),
        source_structure=source_structure,
    )


def interp_central_scalars(f, ring=None) -> Interpretation:
    """Certificate of the central scalar ring of a full non-degenerate
    map inside the two-sorted structure (N, M; f).

    The domain system combines the endomorphism constraints with the
    symmetry conditions and the bilinear-form centrality conditions
    against a generating set of the symmetric endomorphisms."""
    from .scalars import central_scalars, symmetric_endomorphisms

    sym = symmetric_endomorphisms(f)
    if ring is None:
        ring = central_scalars(f)
    n_mod = f.A
    n = n_mod.ngens
    target = bilinear_structure(f, sorts=("N", "M"), name="f")
    sig = target.signature()
    sn = "N"

    xs = [Var(f"x{i}", sn) for i in range(n)]
    dom_eqs = []
    for rel in n_mod.relations:
        terms = [t_smul(sn, rel[i], xs[i]) for i in range(n) if rel[i]]
        if terms:
            dom_eqs.append((t_sum(sn, terms), t_zero(sn)))
    gens = n_mod.generators()
    for i in range(n):
        for j in range(n):
            dom_eqs.append(
                (
                    App("f", (xs[i], Const(sn, gens[j]))),
                    App("f", (Const(sn, gens[i]), xs[j])),
                )
            )
    for beta in sym.matrices:
        for i in range(n):
            for j in range(n):
                dom_eqs.append(
                    (
                        App("f", (xs[i], Const(sn, beta[j]))),
                        App("f", (Const(sn, beta[i]), xs[j])),
                    )
                )
    dom = EqSystem(sig, tuple(xs), tuple(dom_eqs))

    ps = [Var(f"p{i}", sn) for i in range(n)]
    qs = [Var(f"q{i}", sn) for i in range(n)]
    equality = EqSystem(
        sig, tuple(ps) + tuple(qs), tuple((p, q) for p, q in zip(ps, qs))
    )

    ssort = "S"
    op_graphs = {}
    a0 = [Var(f"a0_{i}", sn) for i in range(n)]
    a1 = [Var(f"a1_{i}", sn) for i in range(n)]
    res = [Var(f"res_{i}", sn) for i in range(n)]
    op_graphs[f"add@{ssort}"] = EqSystem(
        sig,
        tuple(a0) + tuple(a1) + tuple(res),
        tuple((res[i], t_add(sn, a0[i], a1[i])) for i in range(n)),
    )
    op_graphs[f"neg@{ssort}"] = EqSystem(
        sig,
        tuple(a0) + tuple(res),
        tuple((res[i], t_neg(sn, a0[i])) for i in range(n)),
    )
    op_graphs[f"zero@{ssort}"] = EqSystem(
        sig, tuple(res), tuple((res[i], t_zero(sn)) for i in range(n))
    )
    # gamma3 = gamma1 * gamma2  iff  f(gamma3 a_i, a_j) = f(gamma2 a_i, gamma1 a_j)
    mul_eqs = []
    for i in range(n):
        for j in range(n):
            mul_eqs.append(
                (
                    App("f", (res[i], Const(sn, gens[j]))),
                    App("f", (a1[i], a0[j])),
                )
            )
    op_graphs[f"mul@{ssort}"] = EqSystem(
        sig, tuple(a0) + tuple(a1) + tuple(res), tuple(mul_eqs)
    )

    def smul(lam, _sort):
        return EqSystem(
            sig,
            tuple(a0) + tuple(res),
            tuple((res[i], t_smul(sn, lam, a0[i])) for i in range(n)),
        )

    def const_preimage(_sort, coords):
        mat = ring.element_matrix(coords)
        return tuple(mat[i] for i in range(n))

    def decode(_sort, values):
        coords = ring.coords_of(tuple(tuple(v) for v in values))
        if coords is None:
            raise ValueError("tuple does not represent a central scalar")
        return coords

    source_structure = algebra_structure(ring.as_algebra(), sort=ssort)
    return Interpretation(
        source_signature=source_structure.signature(),
        target=target,
        sort_interps={ssort: SortInterp((sn,) * n, dom, equality)},
        op_graphs=op_graphs,
        smul_graph=smul,
        const_preimage=const_preimage,
        decode=decode,
        source_structure=source_structure,
    )


def power_ideal_system(alg: AlgebraPresentation, elems, n: int, unital: bool) -> EqSystem:
    """Single-equation system whose solutions, projected to x, are the
    members of the power ideal: x equals a sum of right-normed products
    with n-1 (non-unital convention) or n (unital convention) fixed
    prefix factors."""
    from .algebra import _check_power_ideal_inputs, subalgebra_span

    elems, _ = _check_power_ideal_inputs(alg, elems, n)
    # soundness of the defining equation needs the generating set to
    # generate the algebra (together with the identity when unital)
    span = subalgebra_span(alg, elems)
    extra = (alg.flags.unital,) if alg.flags.unital is not None else ()
    full = alg.module.submodule(tuple(span.gens) + extra)
    for i in range(alg.module.ngens):
        if not full.membership(alg.module.generator(i)):
            raise PowerIdealSystemError(
                "generating set does not generate the algebra"
            )
    depth = n if unital else n - 1
    structure = algebra_structure(alg, sort="A")
    sig = structure.signature()
    sort = "A"
    x = Var("x", sort)
    ys = []
    summands = []
    for combo in itertools.product(range(len(elems)), repeat=depth):
        y = Var("y_" + "_".join(map(str, combo)), sort)
        ys.append(y)
        term = y
        for idx in reversed(combo):
            term = t_mul(sort, Const(sort, elems[idx]), term)
        summands.append(term)
    system = EqSystem(
        sig,
        (x,) + tuple(ys),
        ((x, t_sum(sort, summands)),),
        projected=("x",),
    )
    return system.check()


class PowerIdealSystemError(ValueError):
    pass
