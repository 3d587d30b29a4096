"""Algebras over a base lattice: presentations, homs, spectra, observation
algebras, and diagram verification.

A D-algebra is a bounded distributive lattice equipped with a structural
hom from the base lattice D.  Presented algebras carry their presentation
plus a canonical term for every element, which is what makes generator
assignment searches and universal-property checks concrete.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .budget import DEFAULT_BUDGET, guard, BudgetExceeded
from .lattice import (DLattice, LatticeHom, congruence_quotient, identity_hom,
                      lattice_homs, lattice_validate, quotient_representatives)
from .poset import Poset, canonicalize, cube_poset

# The base lattice ("interval") is any valid DLattice; at desk scale every
# finite distributive lattice also has all joins, so sigma-frame
# constructions apply without extra structure.
BaseLattice = DLattice


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Bot(Term):
    pass


@dataclass(frozen=True)
class Top(Term):
    pass


@dataclass(frozen=True)
class ConstD(Term):
    d: int


@dataclass(frozen=True)
class Gen(Term):
    name: str


@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term


def eval_term(t: Term, lat: DLattice, eta: LatticeHom, env: dict[str, int]) -> int:
    match t:
        case Bot():
            return lat.bot
        case Top():
            return lat.top
        case ConstD(d):
            return eta.table[d]
        case Gen(name):
            try:
                return env[name]
            except KeyError:
                raise ValueError(f"unbound generator {name!r}") from None
        case Meet(l, r):
            return lat.meet[eval_term(l, lat, eta, env)][eval_term(r, lat, eta, env)]
        case Join(l, r):
            return lat.join[eval_term(l, lat, eta, env)][eval_term(r, lat, eta, env)]
    raise TypeError(f"not a term: {t!r}")


def term_gens(t: Term) -> set[str]:
    match t:
        case Gen(name):
            return {name}
        case Meet(l, r) | Join(l, r):
            return term_gens(l) | term_gens(r)
    return set()


def rename_term(t: Term, mapping: dict[str, str]) -> Term:
    match t:
        case Gen(name):
            return Gen(mapping.get(name, name))
        case Meet(l, r):
            return Meet(rename_term(l, mapping), rename_term(r, mapping))
        case Join(l, r):
            return Join(rename_term(l, mapping), rename_term(r, mapping))
    return t


def substitute_term(t: Term, mapping: dict[str, Term]) -> Term:
    match t:
        case Gen(name):
            return mapping.get(name, t)
        case Meet(l, r):
            return Meet(substitute_term(l, mapping), substitute_term(r, mapping))
        case Join(l, r):
            return Join(substitute_term(l, mapping), substitute_term(r, mapping))
    return t


def meet_all(terms) -> Term:
    terms = list(terms)
    if not terms:
        return Top()
    out = terms[0]
    for t in terms[1:]:
        out = Meet(out, t)
    return out


def join_all(terms) -> Term:
    terms = list(terms)
    if not terms:
        return Bot()
    out = terms[0]
    for t in terms[1:]:
        out = Join(out, t)
    return out


def format_term(t: Term) -> str:
    match t:
        case Bot():
            return "bot"
        case Top():
            return "top"
        case ConstD(d):
            return f"const:{d}"
        case Gen(name):
            return name
        case Meet(l, r):
            return f"(meet {format_term(l)} {format_term(r)})"
        case Join(l, r):
            return f"(join {format_term(l)} {format_term(r)})"
    raise TypeError(f"not a term: {t!r}")


def parse_term(text: str) -> Term:
    """Parse prefix notation: ``(meet a (join b top))``, ``const:<i>``."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> Term:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of term")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise ValueError("unexpected end of term")
            op = tokens[pos]
            pos += 1
            left = parse()
            right = parse()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError("expected ')'")
            pos += 1
            if op == "meet":
                return Meet(left, right)
            if op == "join":
                return Join(left, right)
            raise ValueError(f"unknown operation {op!r}")
        if tok == ")":
            raise ValueError("unexpected ')'")
        if tok == "bot":
            return Bot()
        if tok == "top":
            return Top()
        if tok.startswith("const:"):
            return ConstD(int(tok[6:]))
        return Gen(tok)

    out = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens in term")
    return out


# ---------------------------------------------------------------------------
# presentations and algebras


@dataclass(frozen=True)
class Presentation:
    base: BaseLattice
    gens: tuple[str, ...]
    rels: tuple[tuple[Term, Term], ...]

    def __post_init__(self):
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("duplicate generator names")
        names = set(self.gens)
        for lhs, rhs in self.rels:
            for t in (lhs, rhs):
                unknown = term_gens(t) - names
                if unknown:
                    raise ValueError(f"relation uses unknown generators {sorted(unknown)}")


@dataclass(frozen=True)
class Provenance:
    presentation: Presentation
    gen_elems: tuple[int, ...]
    elem_terms: tuple[Term, ...]


@dataclass(frozen=True)
class DAlgebra:
    lat: DLattice
    eta: LatticeHom
    provenance: Provenance | None = None

    def __post_init__(self):
        if self.eta.cod != self.lat:
            raise ValueError("eta must land in the carrier lattice")

    @property
    def base(self) -> BaseLattice:
        return self.eta.dom

    @property
    def size(self) -> int:
        return self.lat.size

    def gen_env(self) -> dict[str, int]:
        p = self.provenance
        if p is None:
            raise ValueError("algebra carries no presentation")
        return dict(zip(p.presentation.gens, p.gen_elems))

    def element_term(self, a: int) -> Term:
        p = self.provenance
        if p is None:
            raise ValueError("algebra carries no presentation")
        return p.elem_terms[a]

    def __repr__(self):
        return f"DAlgebra(size={self.size}, base={self.base.size})"


@dataclass(frozen=True)
class AlgebraHom:
    dom: DAlgebra
    cod: DAlgebra
    table: tuple[int, ...]

    def __post_init__(self):
        LatticeHom(self.dom.lat, self.cod.lat, self.table)  # validates
        for d in range(self.dom.base.size):
            if self.table[self.dom.eta.table[d]] != self.cod.eta.table[d]:
                raise ValueError("structural maps not preserved")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def then(self, g: "AlgebraHom") -> "AlgebraHom":
        if g.dom != self.cod:
            raise ValueError("homs are not composable")
        return AlgebraHom(self.dom, g.cod, tuple(g.table[v] for v in self.table))


def initial_algebra(D: BaseLattice) -> DAlgebra:
    """The base lattice as an algebra over itself; every element is a constant."""
    pres = Presentation(D, (), ())
    prov = Provenance(pres, (), tuple(ConstD(d) for d in range(D.size)))
    return DAlgebra(D, identity_hom(D), prov)


def free_algebra(D: BaseLattice, n: int, names: tuple[str, ...] | None = None,
                 budget: int | None = None) -> DAlgebra:
    """Free algebra on ``n`` generators over ``D``.

    Carrier: monotone maps from the Boolean n-cube to ``D`` with pointwise
    operations; generator ``i`` is the i-th coordinate projection and the
    structural map sends ``d`` to the constant-``d`` map.  Cross-validated
    on construction against the term-closure oracle whenever the carrier
    is small enough to make that affordable.
    """
    if n < 0:
        raise ValueError("generator count must be >= 0")
    if names is None:
        names = tuple(f"x{i + 1}" for i in range(n))
    if len(names) != n:
        raise ValueError("need exactly one name per generator")
    guard("free algebra carrier", D.size ** (2 ** n), budget)
    cube, masks = cube_poset(n)
    k = cube.size
    preds = [[j for j in range(i) if cube.le(j, i)] for i in range(k)]
    carrier: list[tuple[int, ...]] = []
    table = [0] * k

    def extend(i: int):
        if i == k:
            carrier.append(tuple(table))
            return
        for v in range(D.size):
            if all(D.le(table[j], v) for j in preds[i]):
                table[i] = v
                extend(i + 1)

    extend(0)
    carrier.sort()
    index = {t: i for i, t in enumerate(carrier)}
    size = len(carrier)
    meet = tuple(
        tuple(index[tuple(D.meet[a[i]][b[i]] for i in range(k))] for b in carrier)
        for a in carrier
    )
    join = tuple(
        tuple(index[tuple(D.join[a[i]][b[i]] for i in range(k))] for b in carrier)
        for a in carrier
    )
    bot = index[tuple(D.bot for _ in range(k))]
    top = index[tuple(D.top for _ in range(k))]
    lat = DLattice(meet=meet, join=join, bot=bot, top=top)
    eta = LatticeHom(D, lat, tuple(index[tuple(d for _ in range(k))] for d in range(D.size)))
    gen_elems = tuple(
        index[tuple(D.top if (m >> i) & 1 else D.bot for m in masks)]
        for i in range(n)
    )
    elem_terms = tuple(
        join_all(
            meet_all([ConstD(t[vi])] + [Gen(names[i]) for i in range(n) if (masks[vi] >> i) & 1])
            for vi in range(k) if t[vi] != D.bot
        )
        for t in carrier
    )
    pres = Presentation(D, names, ())
    alg = DAlgebra(lat, eta, Provenance(pres, gen_elems, elem_terms))
    if size <= 2000:
        closure = set()
        frontier = [index[tuple(d for _ in range(k))] for d in range(D.size)] + list(gen_elems)
        for x in frontier:
            closure.add(x)
        while frontier:
            x = frontier.pop()
            for y in list(closure):
                for z in (meet[x][y], join[x][y]):
                    if z not in closure:
                        closure.add(z)
                        frontier.append(z)
        if len(closure) != size:
            raise AssertionError("free-algebra carrier disagrees with term closure")
    return alg


def present(pres: Presentation, budget: int | None = None) -> DAlgebra:
    """Quotient of the free algebra by the congruence the relations generate."""
    F = free_algebra(pres.base, len(pres.gens), pres.gens, budget=budget)
    env = F.gen_env()
    pairs = [
        (eval_term(lhs, F.lat, F.eta, env), eval_term(rhs, F.lat, F.eta, env))
        for lhs, rhs in pres.rels
    ]
    Q, proj = congruence_quotient(F.lat, pairs)
    reps = quotient_representatives(proj)
    eta = F.eta.then(proj)
    gen_elems = tuple(proj.table[e] for e in F.provenance.gen_elems)
    elem_terms = tuple(F.provenance.elem_terms[reps[q]] for q in range(Q.size))
    return DAlgebra(Q, eta, Provenance(pres, gen_elems, elem_terms))


def auto_present(A: DAlgebra) -> DAlgebra:
    """Re-present a bare algebra with all elements as generators.

    Every finite algebra is finitely presented; this uses the full
    operation tables and structural map as relations.
    """
    if A.provenance is not None:
        return A
    n = A.size
    names = tuple(f"e{a}" for a in range(n))
    rels: list[tuple[Term, Term]] = [(Gen(names[A.lat.bot]), Bot()), (Gen(names[A.lat.top]), Top())]
    for d in range(A.base.size):
        rels.append((Gen(names[A.eta.table[d]]), ConstD(d)))
    for a in range(n):
        for b in range(a + 1, n):
            rels.append((Meet(Gen(names[a]), Gen(names[b])), Gen(names[A.lat.meet[a][b]])))
            rels.append((Join(Gen(names[a]), Gen(names[b])), Gen(names[A.lat.join[a][b]])))
    pres = Presentation(A.base, names, tuple(rels))
    prov = Provenance(pres, tuple(range(n)), tuple(Gen(nm) for nm in names))
    return DAlgebra(A.lat, A.eta, prov)


def free_extension(A: DAlgebra, new_names: tuple[str, ...], budget: int | None = None) -> DAlgebra:
    """Adjoin fresh free generators to a presented algebra."""
    A = auto_present(A)
    pres = A.provenance.presentation
    clash = set(pres.gens) & set(new_names)
    if clash:
        raise ValueError(f"generator names already used: {sorted(clash)}")
    return present(Presentation(pres.base, pres.gens + tuple(new_names), pres.rels), budget=budget)


def coproduct(A: DAlgebra, B: DAlgebra, budget: int | None = None
              ) -> tuple[DAlgebra, AlgebraHom, AlgebraHom]:
    """Coproduct by presentation merge, with both injections."""
    if A.base != B.base:
        raise ValueError("coproduct needs a common base lattice")
    A, B = auto_present(A), auto_present(B)
    pa, pb = A.provenance.presentation, B.provenance.presentation
    mapa = {g: f"a.{g}" for g in pa.gens}
    mapb = {g: f"b.{g}" for g in pb.gens}
    gens = tuple(mapa[g] for g in pa.gens) + tuple(mapb[g] for g in pb.gens)
    rels = tuple((rename_term(l, mapa), rename_term(r, mapa)) for l, r in pa.rels) + \
        tuple((rename_term(l, mapb), rename_term(r, mapb)) for l, r in pb.rels)
    Q = present(Presentation(pa.base, gens, rels), budget=budget)
    env = Q.gen_env()
    inj_a = AlgebraHom(A, Q, tuple(
        eval_term(rename_term(A.element_term(x), mapa), Q.lat, Q.eta, env) for x in range(A.size)))
    inj_b = AlgebraHom(B, Q, tuple(
        eval_term(rename_term(B.element_term(x), mapb), Q.lat, Q.eta, env) for x in range(B.size)))
    return Q, inj_a, inj_b


# ---------------------------------------------------------------------------
# hom enumeration


def hom_assignments(A: DAlgebra, B: DAlgebra, budget: int | None = None) -> list[tuple[int, ...]]:
    """Generator assignments A -> B satisfying the relations of A.

    Backtracking in generator order; a relation is checked as soon as all
    its generators are assigned.  Each valid assignment extends to exactly
    one algebra hom.  The budget counts visited search nodes.
    """
    A = auto_present(A)
    pres = A.provenance.presentation
    gens = pres.gens
    n = len(gens)
    gen_index = {g: i for i, g in enumerate(gens)}
    checkpoint: list[list[tuple[Term, Term]]] = [[] for _ in range(n + 1)]
    for lhs, rhs in pres.rels:
        used = term_gens(lhs) | term_gens(rhs)
        stage = max((gen_index[g] + 1 for g in used), default=0)
        checkpoint[stage].append((lhs, rhs))
    limit = DEFAULT_BUDGET if budget is None else budget
    nodes = 0
    out: list[tuple[int, ...]] = []
    env: dict[str, int] = {}

    def ok_at(stage: int) -> bool:
        return all(
            eval_term(l, B.lat, B.eta, env) == eval_term(r, B.lat, B.eta, env)
            for l, r in checkpoint[stage]
        )

    def extend(i: int):
        nonlocal nodes
        if i == n:
            out.append(tuple(env[g] for g in gens))
            return
        for v in range(B.size):
            nodes += 1
            if nodes > limit:
                raise BudgetExceeded("hom assignment search", nodes, limit)
            env[gens[i]] = v
            if ok_at(i + 1):
                extend(i + 1)
            del env[gens[i]]

    if ok_at(0):
        extend(0)
    return out


def hom_from_assignment(A: DAlgebra, B: DAlgebra, assignment: tuple[int, ...]) -> AlgebraHom:
    A = auto_present(A)
    env = dict(zip(A.provenance.presentation.gens, assignment))
    table = tuple(eval_term(A.element_term(a), B.lat, B.eta, env) for a in range(A.size))
    return AlgebraHom(A, B, table)


def algebra_homs(A: DAlgebra, B: DAlgebra, budget: int | None = None) -> list[AlgebraHom]:
    """All algebra homs ``A -> B`` in deterministic table order.

    Uses generator-assignment search when ``A`` carries a workable
    presentation, and otherwise the dual search through lattice homs
    filtered by compatibility with the structural maps.
    """
    limit = DEFAULT_BUDGET if budget is None else budget
    if A.provenance is not None and B.size ** len(A.provenance.presentation.gens) <= limit:
        homs = [hom_from_assignment(A, B, asg) for asg in hom_assignments(A, B, budget)]
    else:
        homs = []
        for h in lattice_homs(A.lat, B.lat, budget=budget):
            if all(h.table[A.eta.table[d]] == B.eta.table[d] for d in range(A.base.size)):
                homs.append(AlgebraHom(A, B, h.table))
    homs.sort(key=lambda h: h.table)
    return homs


# ---------------------------------------------------------------------------
# spectra and observation algebras


@dataclass(frozen=True)
class SpecPoset:
    algebra: DAlgebra
    points: tuple[AlgebraHom, ...]
    poset: Poset

    @property
    def size(self) -> int:
        return len(self.points)


def spec(A: DAlgebra, budget: int | None = None) -> SpecPoset:
    """Spectrum: homs into the base under the pointwise satisfaction order.

    When a presentation is available the order is recomputed on the
    generators alone and must agree (it does: every element is a monotone
    polynomial of the generators with constants fixed).
    """
    D = A.base
    pts = algebra_homs(A, initial_algebra(D), budget=budget)
    n = len(pts)
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if all(D.le(pts[i].table[a], pts[j].table[a]) for a in range(A.size)):
                rows[i] |= 1 << j
    if A.provenance is not None:
        env = [tuple(p.table[e] for e in A.provenance.gen_elems) for p in pts]
        for i in range(n):
            for j in range(n):
                ongen = all(D.le(env[i][k], env[j][k]) for k in range(len(env[i])))
                if ongen != bool((rows[i] >> j) & 1):
                    raise AssertionError("satisfaction order differs on generators")
    canon, perm = canonicalize(Poset(tuple(rows)))
    ordered: list[AlgebraHom] = [None] * n  # type: ignore[list-item]
    for old, p in enumerate(pts):
        ordered[perm[old]] = p
    return SpecPoset(A, tuple(ordered), canon)


def opens(D: BaseLattice, x, monotone: bool = False, budget: int | None = None) -> DAlgebra:
    """Observation algebra: the X-fold power of ``D`` with pointwise operations.

    ``x`` may be a size or a poset; by default only the underlying set
    matters.  With ``monotone=True`` the carrier is restricted to monotone
    functions, for order-sensitive experiments.
    """
    if isinstance(x, Poset):
        p, n = x, x.size
    else:
        p, n = None, int(x)
    guard("observation algebra carrier", D.size ** n if n else 1, budget)
    if monotone and p is not None:
        from .poset import monotone_maps

        carrier = sorted(m.table for m in monotone_maps(p, D.order_poset(), budget=budget))
    else:
        carrier = [tuple(t) for t in iproduct(range(D.size), repeat=n)]
    index = {t: i for i, t in enumerate(carrier)}
    size = len(carrier)
    meet = tuple(
        tuple(index[tuple(D.meet[a[i]][b[i]] for i in range(n))] for b in carrier)
        for a in carrier
    )
    join = tuple(
        tuple(index[tuple(D.join[a[i]][b[i]] for i in range(n))] for b in carrier)
        for a in carrier
    )
    lat = DLattice(meet=meet, join=join,
                   bot=index[tuple(D.bot for _ in range(n))],
                   top=index[tuple(D.top for _ in range(n))])
    eta = LatticeHom(D, lat, tuple(index[tuple(d for _ in range(n))] for d in range(D.size)))
    return DAlgebra(lat, eta)


@dataclass(frozen=True)
class CounitDiagnostics:
    map: AlgebraHom
    injective: bool
    iso: bool


def counit_diagnostics(A: DAlgebra, budget: int | None = None) -> CounitDiagnostics:
    """Evaluation of ``A`` into the observations of its own spectrum.

    Injectivity is the pre-quasi-coherence diagnostic, bijectivity the
    quasi-coherence one.  Over plain finite sets bijectivity generally
    fails; the point is to report, not to assume.
    """
    S = spec(A, budget=budget)
    OS = opens(A.base, S.size, budget=budget)
    table = []
    for a in range(A.size):
        values = tuple(p.table[a] for p in S.points)
        table.append(_power_index(OS, values))
    m = AlgebraHom(A, OS, tuple(table))
    injective = len(set(table)) == A.size
    return CounitDiagnostics(m, injective, injective and A.size == OS.size)


def _power_index(OX: DAlgebra, values: tuple[int, ...]) -> int:
    """Index of a value tuple inside an observation algebra's carrier."""
    n = len(values)
    D = OX.base
    idx = 0
    for v in values:
        idx = idx * D.size + v
    if not 0 <= idx < OX.size:
        raise ValueError("value tuple outside the power carrier")
    return idx


def stage_exponential(B: DAlgebra, C: DAlgebra, stage: DAlgebra,
                      budget: int | None = None) -> list[AlgebraHom]:
    """Points of the internal exponential of spectra at a given stage.

    ``(Spec B)^(Spec C)`` evaluated at stage ``A`` is the hom set
    ``Hom(B, A (x) C)``.
    """
    Q, _, _ = coproduct(stage, C, budget=budget)
    return algebra_homs(B, Q, budget=budget)


@dataclass(frozen=True)
class OrdersReport:
    canonical: tuple[int, ...]
    behavioural: tuple[int, ...]
    coincide: bool


def orders(A: DAlgebra, budget: int | None = None) -> OrdersReport:
    """Canonical order (meet equation) vs behavioural preorder (all points)."""
    n = A.size
    canonical = [0] * n
    for a in range(n):
        for b in range(n):
            if A.lat.le(a, b):
                canonical[a] |= 1 << b
    S = spec(A, budget=budget)
    D = A.base
    behavioural = [0] * n
    for a in range(n):
        for b in range(n):
            if all(D.le(p.table[a], p.table[b]) for p in S.points):
                behavioural[a] |= 1 << b
    return OrdersReport(tuple(canonical), tuple(behavioural), canonical == behavioural)


# ---------------------------------------------------------------------------
# diagram verification


@dataclass(frozen=True)
class AlgebraDiagram:
    objects: tuple[DAlgebra, ...]
    arrows: tuple[tuple[int, int, AlgebraHom], ...] = ()

    def __post_init__(self):
        for src, dst, h in self.arrows:
            if h.dom != self.objects[src] or h.cod != self.objects[dst]:
                raise ValueError("arrow endpoints do not match diagram objects")


def _cone_commutes(d: AlgebraDiagram, candidate: DAlgebra, cone) -> bool:
    if len(cone) != len(d.objects):
        return False
    for i, leg in enumerate(cone):
        if leg.dom != candidate or leg.cod != d.objects[i]:
            return False
    return all(cone[src].then(h).table == cone[dst].table for src, dst, h in d.arrows)


def verify_limit(d: AlgebraDiagram, candidate: DAlgebra, cone: tuple[AlgebraHom, ...],
                 budget: int | None = None) -> bool:
    """Check the candidate cone is a limit of the diagram.

    The limit is computed on underlying sets: compatible tuples under
    componentwise operations (finitary algebraic limits are created by the
    forgetful functor).  The comparison map must then be a bijection.
    """
    if not _cone_commutes(d, candidate, cone):
        return False
    k = len(d.objects)
    arrows_at = [[] for _ in range(k)]
    for src, dst, h in d.arrows:
        arrows_at[max(src, dst)].append((src, dst, h))
    total = 1
    for o in d.objects:
        total *= o.size
    guard("limit tuple enumeration", total, budget)
    tuples: list[tuple[int, ...]] = []
    partial: list[int] = []

    def extend(i: int):
        if i == k:
            tuples.append(tuple(partial))
            return
        for v in range(d.objects[i].size):
            partial.append(v)
            if all(h.table[partial[src]] == partial[dst] for src, dst, h in arrows_at[i]):
                extend(i + 1)
            partial.pop()

    extend(0)
    universe = set(tuples)
    # sanity: the compatible tuples really do form a subalgebra
    for d_elem in range(d.objects[0].base.size if k else 0):
        eta_tuple = tuple(o.eta.table[d_elem] for o in d.objects)
        if eta_tuple not in universe:
            return False
    comparison = [tuple(cone[i].table[c] for i in range(k)) for c in range(candidate.size)]
    return len(set(comparison)) == candidate.size and set(comparison) == universe


def _cocone_commutes(d: AlgebraDiagram, candidate: DAlgebra, cocone) -> bool:
    if len(cocone) != len(d.objects):
        return False
    for i, leg in enumerate(cocone):
        if leg.dom != d.objects[i] or leg.cod != candidate:
            return False
    return all(h.then(cocone[dst]).table == cocone[src].table for src, dst, h in d.arrows)


def _terminal_node(d: AlgebraDiagram) -> int | None:
    """Index of a sink every object reaches along path-independent composites."""
    k = len(d.objects)
    sinks = [i for i in range(k) if not any(src == i for src, _, _ in d.arrows)]
    if len(sinks) != 1:
        return None
    t = sinks[0]
    composites: list[set[tuple[int, ...]] | None] = [None] * k
    composites[t] = {tuple(range(d.objects[t].size))}

    def paths(i: int, seen) -> set[tuple[int, ...]] | None:
        if composites[i] is not None:
            return composites[i]
        if i in seen:
            return None
        out: set[tuple[int, ...]] = set()
        for src, dst, h in d.arrows:
            if src != i:
                continue
            rest = paths(dst, seen | {i})
            if rest is None:
                return None
            for tail in rest:
                out.add(tuple(tail[v] for v in h.table))
        composites[i] = out
        return out

    for i in range(k):
        ps = paths(i, frozenset())
        if ps is None or len(ps) != 1:
            return None
    return t


def colimit_presentation(d: AlgebraDiagram, budget: int | None = None
                         ) -> tuple[DAlgebra, tuple[AlgebraHom, ...]]:
    """Colimit by merged presentation plus identification relations."""
    objs = tuple(auto_present(o) for o in d.objects)
    base = objs[0].base if objs else None
    gens: list[str] = []
    rels: list[tuple[Term, Term]] = []
    maps = []
    for i, o in enumerate(objs):
        p = o.provenance.presentation
        m = {g: f"o{i}.{g}" for g in p.gens}
        maps.append(m)
        gens.extend(m[g] for g in p.gens)
        rels.extend((rename_term(l, m), rename_term(r, m)) for l, r in p.rels)
    for src, dst, h in d.arrows:
        ps = objs[src].provenance.presentation
        for g, e in zip(ps.gens, objs[src].provenance.gen_elems):
            image_term = rename_term(objs[dst].element_term(h.table[e]), maps[dst])
            rels.append((Gen(maps[src][g]), image_term))
    Q = present(Presentation(base, tuple(gens), tuple(rels)), budget=budget)
    env = Q.gen_env()
    injections = tuple(
        AlgebraHom(objs[i], Q, tuple(
            eval_term(rename_term(objs[i].element_term(x), maps[i]), Q.lat, Q.eta, env)
            for x in range(objs[i].size)))
        for i in range(len(objs))
    )
    return Q, injections


def verify_colimit(d: AlgebraDiagram, candidate: DAlgebra, cocone: tuple[AlgebraHom, ...],
                   budget: int | None = None) -> bool:
    """Check the candidate cocone is a colimit of the diagram.

    Diagrams whose shape has a path-independent sink (sequential prefixes,
    commuting fans) use the sink directly; otherwise the colimit is built
    from the merged presentation with identification relations.
    """
    if not _cocone_commutes(d, candidate, cocone):
        return False
    t = _terminal_node(d)
    if t is not None:
        table = cocone[t].table
        return len(set(table)) == len(table) == candidate.size
    Q, injections = colimit_presentation(d, budget=budget)
    objs = tuple(auto_present(o) for o in d.objects)
    # mediating map out of the computed colimit, defined on generators
    env: dict[str, int] = {}
    for i, o in enumerate(objs):
        p = o.provenance.presentation
        for g, e in zip(p.gens, o.provenance.gen_elems):
            env[f"o{i}.{g}"] = cocone[i].table[e]
    table = tuple(
        eval_term(Q.element_term(q), candidate.lat, candidate.eta, env)
        for q in range(Q.size)
    )
    try:
        u = AlgebraHom(Q, candidate, table)
    except ValueError:
        return False
    for i in range(len(objs)):
        if injections[i].then(u).table != cocone[i].table:
            return False
    return len(set(u.table)) == candidate.size == Q.size
