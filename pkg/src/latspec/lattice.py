"""Finite bounded distributive lattices as first-class values.

A lattice is a pair of total operation tables plus distinguished bounds.
Validation checks every axiom exhaustively; representation facts (the
join-irreducible poset, the up-set evaluation map) then come with
concrete witnesses rather than by appeal to theory.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budget import guard
from .poset import (Poset, MonotoneMap, ValidationReport, canonicalize,
                    canonical_form, monotone_maps, upsets, upset_lattice)

__all__ = [
    "DLattice", "LatticeHom", "lattice_validate", "join_irreducibles",
    "birkhoff_check", "lattice_homs", "congruence_quotient", "lattice_product",
    "two", "chain_lattice", "square_lattice", "diamond_m3", "trivial_lattice",
    "base_library", "distributive_isomorphic", "load_lattice", "dump_lattice",
]


@dataclass(frozen=True)
class DLattice:
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bot: int
    top: int

    @property
    def size(self) -> int:
        return len(self.meet)

    def le(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def order_poset(self) -> Poset:
        """The induced order as a (canonicalized) poset, with the relabelling."""
        rows = [0] * self.size
        for a in range(self.size):
            for b in range(self.size):
                if self.le(a, b):
                    rows[a] |= 1 << b
        return canonicalize(Poset(tuple(rows)))[0]

    def __repr__(self):
        return f"DLattice(size={self.size})"


@dataclass(frozen=True)
class LatticeHom:
    dom: DLattice
    cod: DLattice
    table: tuple[int, ...]

    def __post_init__(self):
        L, M, t = self.dom, self.cod, self.table
        if len(t) != L.size:
            raise ValueError("table length does not match domain")
        if t[L.bot] != M.bot or t[L.top] != M.top:
            raise ValueError("bounds not preserved")
        for a in range(L.size):
            for b in range(a, L.size):
                if t[L.meet[a][b]] != M.meet[t[a]][t[b]]:
                    raise ValueError(f"meet not preserved at ({a},{b})")
                if t[L.join[a][b]] != M.join[t[a]][t[b]]:
                    raise ValueError(f"join not preserved at ({a},{b})")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def then(self, g: "LatticeHom") -> "LatticeHom":
        if g.dom != self.cod:
            raise ValueError("homs are not composable")
        return LatticeHom(self.dom, g.cod, tuple(g.table[v] for v in self.table))


def identity_hom(L: DLattice) -> LatticeHom:
    return LatticeHom(L, L, tuple(range(L.size)))


def lattice_validate(L: DLattice) -> ValidationReport:
    """Exhaustive check of every bounded-distributive-lattice axiom."""
    n = L.size
    mt, jn = L.meet, L.join
    if len(mt) != n or len(jn) != n or any(len(r) != n for r in mt) or any(len(r) != n for r in jn):
        return ValidationReport(False, "totality", ())
    for a in range(n):
        if mt[a][a] != a:
            return ValidationReport(False, "meet-idempotence", (a,))
        if jn[a][a] != a:
            return ValidationReport(False, "join-idempotence", (a,))
        if mt[a][L.top] != a:
            return ValidationReport(False, "top-unit", (a,))
        if jn[a][L.bot] != a:
            return ValidationReport(False, "bot-unit", (a,))
    for a in range(n):
        for b in range(n):
            if mt[a][b] != mt[b][a]:
                return ValidationReport(False, "meet-commutativity", (a, b))
            if jn[a][b] != jn[b][a]:
                return ValidationReport(False, "join-commutativity", (a, b))
            if mt[a][jn[a][b]] != a:
                return ValidationReport(False, "absorption", (a, b))
            if jn[a][mt[a][b]] != a:
                return ValidationReport(False, "absorption", (a, b))
            if (mt[a][b] == a) != (jn[a][b] == b):
                return ValidationReport(False, "order-agreement", (a, b))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mt[mt[a][b]][c] != mt[a][mt[b][c]]:
                    return ValidationReport(False, "meet-associativity", (a, b, c))
                if jn[jn[a][b]][c] != jn[a][jn[b][c]]:
                    return ValidationReport(False, "join-associativity", (a, b, c))
                if mt[a][jn[b][c]] != jn[mt[a][b]][mt[a][c]]:
                    return ValidationReport(False, "distributivity", (a, b, c))
    return ValidationReport(True)


def _join_irreducible_elements(L: DLattice) -> list[int]:
    out = []
    for j in range(L.size):
        if j == L.bot:
            continue
        irreducible = True
        for a in range(L.size):
            for b in range(L.size):
                if L.join[a][b] == j and a != j and b != j:
                    irreducible = False
                    break
            if not irreducible:
                break
        if irreducible:
            out.append(j)
    return out


def join_irreducibles(L: DLattice) -> tuple[Poset, tuple[int, ...]]:
    """Poset of join-irreducible elements, oriented so up-sets rebuild ``L``.

    The carrier is every ``j != bot`` with ``j = a v b  =>  j in {a, b}``.
    The poset order is the dual of the restricted lattice order: that is
    the orientation under which ``a |-> {j : j <= a}`` lands in up-sets,
    making the evaluation map of ``birkhoff_check`` an isomorphism and the
    round trip with ``upset_lattice`` exact.  Returns the canonical poset
    and the lattice element carried by each poset index.
    """
    js = _join_irreducible_elements(L)
    rows = [0] * len(js)
    for a, ja in enumerate(js):
        for b, jb in enumerate(js):
            if L.le(jb, ja):
                rows[a] |= 1 << b
    canon, perm = canonicalize(Poset(tuple(rows)))
    carried = [0] * len(js)
    for old, j in enumerate(js):
        carried[perm[old]] = j
    return canon, tuple(carried)


@dataclass(frozen=True)
class BirkhoffResult:
    ok: bool
    poset: Poset
    iso: LatticeHom | None
    failure: str | None = None


def birkhoff_check(L: DLattice) -> BirkhoffResult:
    """Evaluation map into the up-sets of the join-irreducible poset.

    Sends ``a`` to the set of join-irreducibles below ``a`` and verifies
    this is a lattice isomorphism (it is, for every valid distributive
    lattice; failures come back as witnesses, not exceptions).
    """
    P, js = join_irreducibles(L)
    U = upset_lattice(P)
    ups = upsets(P)
    index = {m: i for i, m in enumerate(ups)}
    table = []
    for a in range(L.size):
        mask = 0
        for k, j in enumerate(js):
            if L.le(j, a):
                mask |= 1 << k
        if mask not in index:
            return BirkhoffResult(False, P, None, f"image of {a} is not an up-set")
        table.append(index[mask])
    if len(set(table)) != L.size or L.size != U.size:
        return BirkhoffResult(False, P, None, "evaluation map is not bijective")
    try:
        iso = LatticeHom(L, U, tuple(table))
    except ValueError as e:
        return BirkhoffResult(False, P, None, str(e))
    return BirkhoffResult(True, P, iso)


def lattice_homs(L: DLattice, M: DLattice, budget: int | None = None) -> list[LatticeHom]:
    """All bounded-lattice homs ``L -> M``.

    Enumerated through the dual search: monotone maps from the
    join-irreducible poset of ``M`` to that of ``L`` transport to hom
    candidates along the evaluation isomorphisms, and every candidate is
    verified.  Deterministic table order.
    """
    bl, bm = birkhoff_check(L), birkhoff_check(M)
    if not (bl.ok and bm.ok):
        raise ValueError("lattice_homs requires distributive inputs")
    P, Q = bl.poset, bm.poset
    ups_p = upsets(P)
    ups_q = upsets(Q)
    index_q = {m: i for i, m in enumerate(ups_q)}
    inv_m = [0] * M.size
    for a in range(M.size):
        inv_m[bm.iso.table[a]] = a
    masks_l = [ups_p[bl.iso.table[a]] for a in range(L.size)]
    homs = []
    for f in monotone_maps(Q, P, budget=budget):
        table = []
        for a in range(L.size):
            mask_m = 0
            for qi in range(Q.size):
                if (masks_l[a] >> f.table[qi]) & 1:
                    mask_m |= 1 << qi
            table.append(inv_m[index_q[mask_m]])
        homs.append(LatticeHom(L, M, tuple(table)))
    homs.sort(key=lambda h: h.table)
    return homs


def congruence_quotient(L: DLattice, pairs) -> tuple[DLattice, LatticeHom]:
    """Quotient by the smallest lattice congruence containing ``pairs``.

    Union-find closed under ``a~b  =>  a^c~b^c`` and ``avc~bvc`` for all
    ``c``, processed semi-naively: only pairs that actually merged two
    classes are expanded.  Class representatives are least indices.
    """
    n = L.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = list(pairs)
    while work:
        a, b = work.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[max(ra, rb)] = min(ra, rb)
        for c in range(n):
            work.append((L.meet[a][c], L.meet[b][c]))
            work.append((L.join[a][c], L.join[b][c]))

    reps = sorted({find(x) for x in range(n)})
    rep_index = {r: i for i, r in enumerate(reps)}
    k = len(reps)
    meet = tuple(tuple(rep_index[find(L.meet[reps[i]][reps[j]])] for j in range(k)) for i in range(k))
    join = tuple(tuple(rep_index[find(L.join[reps[i]][reps[j]])] for j in range(k)) for i in range(k))
    Q = DLattice(meet=meet, join=join, bot=rep_index[find(L.bot)], top=rep_index[find(L.top)])
    proj = LatticeHom(L, Q, tuple(rep_index[find(x)] for x in range(n)))
    return Q, proj


def quotient_representatives(proj: LatticeHom) -> tuple[int, ...]:
    """Least-index preimage of each quotient element under ``proj``."""
    reps = [-1] * proj.cod.size
    for a in range(proj.dom.size):
        q = proj.table[a]
        if reps[q] < 0:
            reps[q] = a
    return tuple(reps)


def lattice_product(L: DLattice, M: DLattice) -> DLattice:
    """Componentwise product; element ``(a, b)`` has index ``a*|M| + b``."""
    nm = M.size

    def ix(a, b):
        return a * nm + b

    size = L.size * nm
    meet = [[0] * size for _ in range(size)]
    join = [[0] * size for _ in range(size)]
    for a in range(L.size):
        for b in range(nm):
            for c in range(L.size):
                for d in range(nm):
                    meet[ix(a, b)][ix(c, d)] = ix(L.meet[a][c], M.meet[b][d])
                    join[ix(a, b)][ix(c, d)] = ix(L.join[a][c], M.join[b][d])
    return DLattice(meet=tuple(tuple(r) for r in meet), join=tuple(tuple(r) for r in join),
                    bot=ix(L.bot, M.bot), top=ix(L.top, M.top))


def product_projections(L: DLattice, M: DLattice) -> tuple[LatticeHom, LatticeHom]:
    P = lattice_product(L, M)
    p1 = LatticeHom(P, L, tuple(i // M.size for i in range(P.size)))
    p2 = LatticeHom(P, M, tuple(i % M.size for i in range(P.size)))
    return p1, p2


def trivial_lattice() -> DLattice:
    return DLattice(meet=((0,),), join=((0,),), bot=0, top=0)


def two() -> DLattice:
    return chain_lattice(2)


def chain_lattice(n: int) -> DLattice:
    if n < 1:
        raise ValueError("chain lattice needs at least one element")
    meet = tuple(tuple(min(a, b) for b in range(n)) for a in range(n))
    join = tuple(tuple(max(a, b) for b in range(n)) for a in range(n))
    return DLattice(meet=meet, join=join, bot=0, top=n - 1)


def square_lattice() -> DLattice:
    return lattice_product(two(), two())


def diamond_m3() -> DLattice:
    """Five-element diamond: 0 < a,b,c < 1.  The standard non-distributive witness."""
    n = 5
    bot, top = 0, 4

    def mt(x, y):
        if x == y:
            return x
        if bot in (x, y):
            return bot
        if x == top:
            return y
        if y == top:
            return x
        return bot

    def jn(x, y):
        if x == y:
            return x
        if top in (x, y):
            return top
        if x == bot:
            return y
        if y == bot:
            return x
        return top

    meet = tuple(tuple(mt(x, y) for y in range(n)) for x in range(n))
    join = tuple(tuple(jn(x, y) for y in range(n)) for x in range(n))
    return DLattice(meet=meet, join=join, bot=bot, top=top)


def base_library() -> dict[str, DLattice]:
    """The built-in base lattices used by the verification batteries."""
    return {
        "2": two(),
        "3-chain": chain_lattice(3),
        "2x2": square_lattice(),
        "4-chain": chain_lattice(4),
    }


def distributive_isomorphic(L: DLattice, M: DLattice) -> bool:
    """Isomorphism test for validated distributive lattices.

    Two finite distributive lattices are isomorphic iff their
    join-irreducible posets are, so compare canonical forms.
    """
    if L.size != M.size:
        return False
    return canonical_form(join_irreducibles(L)[0]) == canonical_form(join_irreducibles(M)[0])


def _parse_table(rows: list[str], size: int, what: str) -> tuple[tuple[int, ...], ...]:
    if len(rows) != size:
        raise ValueError(f"{what} table needs {size} rows")
    out = []
    for r in rows:
        vals = tuple(int(v) for v in r.split())
        if len(vals) != size or any(not 0 <= v < size for v in vals):
            raise ValueError(f"bad {what} row: {r!r}")
        out.append(vals)
    return tuple(out)


def load_lattice(text: str) -> DLattice:
    """Parse the lattice format: ``lattice <size>`` then meet/join blocks."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("lattice "):
        raise ValueError("lattice file must start with 'lattice <size>'")
    size = int(lines[0].split()[1])
    try:
        mi = lines.index("meet")
        ji = lines.index("join")
    except ValueError:
        raise ValueError("lattice file needs 'meet' and 'join' blocks") from None
    meet = _parse_table(lines[mi + 1:mi + 1 + size], size, "meet")
    join = _parse_table(lines[ji + 1:ji + 1 + size], size, "join")
    bots = [a for a in range(size) if all(meet[a][b] == a for b in range(size))]
    tops = [a for a in range(size) if all(join[a][b] == a for b in range(size))]
    if len(bots) != 1 or len(tops) != 1:
        raise ValueError("lattice file has no unique bounds")
    L = DLattice(meet=meet, join=join, bot=bots[0], top=tops[0])
    report = lattice_validate(L)
    if not report:
        raise ValueError(f"invalid lattice: {report.law} at {report.witness}")
    return L


def dump_lattice(L: DLattice) -> str:
    lines = [f"lattice {L.size}", "meet"]
    lines += [" ".join(str(v) for v in row) for row in L.meet]
    lines.append("join")
    lines += [" ".join(str(v) for v in row) for row in L.join]
    return "\n".join(lines) + "\n"


def generate_corpus(max_size: int = 8) -> list[DLattice]:
    """Deterministic corpus of distributive lattices of size <= max_size.

    Up-set lattices of all posets on <= 5 points, chains, chain products,
    and a spread of congruence quotients; deduplicated by isomorphism.
    """
    from .poset import all_posets

    out: list[DLattice] = []
    forms = set()

    def add(L: DLattice):
        if L.size > max_size or not lattice_validate(L):
            return
        key = canonical_form(join_irreducibles(L)[0]).leq
        if key not in forms:
            forms.add(key)
            out.append(L)

    for n in range(0, 6):
        for p in all_posets(n):
            add(upset_lattice(p))
    for n in range(1, max_size + 1):
        add(chain_lattice(n))
    for n in range(2, 5):
        for m in range(2, 5):
            add(lattice_product(chain_lattice(n), chain_lattice(m)))
    seeds = list(out)
    for L in seeds:
        for a in range(L.size):
            for b in range(a + 1, L.size):
                add(congruence_quotient(L, [(a, b)])[0])
    return out
