"""Finite posets, monotone maps, and finite (co)limits of posets.

Elements of a poset are the integers ``0..size-1``.  The order relation is
stored as one bitmask row per element: bit ``j`` of ``leq[i]`` is set iff
``i <= j``.  Posets produced by this module are *canonical*: elements are
sorted by (height, tie-breaking original index), so two equal posets have
bit-identical rows and compare equal as values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .budget import guard


@dataclass(frozen=True)
class Poset:
    leq: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.leq)

    def le(self, i: int, j: int) -> bool:
        return bool((self.leq[i] >> j) & 1)

    def up(self, i: int) -> int:
        """Bitmask of elements above ``i`` (inclusive)."""
        return self.leq[i]

    def down(self, i: int) -> int:
        """Bitmask of elements below ``i`` (inclusive)."""
        mask = 0
        for j in range(self.size):
            if self.le(j, i):
                mask |= 1 << j
        return mask

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in range(self.size) if self.le(i, j)]

    def __repr__(self):
        strict = [(i, j) for i, j in self.pairs() if i != j]
        return f"Poset(size={self.size}, le={strict})"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    law: str | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class MonotoneMap:
    dom: Poset
    cod: Poset
    table: tuple[int, ...]

    def __post_init__(self):
        n = self.dom.size
        if len(self.table) != n:
            raise ValueError("table length does not match domain size")
        for v in self.table:
            if not 0 <= v < self.cod.size:
                raise ValueError(f"table value {v} outside codomain")
        for i in range(n):
            for j in range(n):
                if self.dom.le(i, j) and not self.cod.le(self.table[i], self.table[j]):
                    raise ValueError(f"not monotone at ({i}, {j})")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def then(self, g: "MonotoneMap") -> "MonotoneMap":
        """Composite ``g . self``."""
        if g.dom != self.cod:
            raise ValueError("maps are not composable")
        return MonotoneMap(self.dom, g.cod, tuple(g.table[v] for v in self.table))


@dataclass(frozen=True)
class PosetDiagram:
    objects: tuple[Poset, ...]
    arrows: tuple[tuple[int, int, MonotoneMap], ...] = ()

    def __post_init__(self):
        for src, dst, f in self.arrows:
            if f.dom != self.objects[src] or f.cod != self.objects[dst]:
                raise ValueError("arrow endpoints do not match diagram objects")


def identity_map(p: Poset) -> MonotoneMap:
    return MonotoneMap(p, p, tuple(range(p.size)))


def poset_validate(p: Poset) -> ValidationReport:
    """Check reflexivity, antisymmetry and transitivity; never raises."""
    n = p.size
    for i in range(n):
        if not p.le(i, i):
            return ValidationReport(False, "reflexivity", (i,))
    for i in range(n):
        for j in range(n):
            if i != j and p.le(i, j) and p.le(j, i):
                return ValidationReport(False, "antisymmetry", (i, j))
    for i in range(n):
        for j in range(n):
            if p.le(i, j) and (p.leq[j] & ~p.leq[i]):
                k = (p.leq[j] & ~p.leq[i]).bit_length() - 1
                return ValidationReport(False, "transitivity", (i, k))
    return ValidationReport(True)


def _heights(p: Poset) -> list[int]:
    n = p.size
    h = [0] * n
    order = sorted(range(n), key=lambda i: bin(p.down(i)).count("1"))
    for i in order:
        below = [h[j] + 1 for j in range(n) if j != i and p.le(j, i)]
        h[i] = max(below, default=0)
    return h


def canonicalize(p: Poset) -> tuple[Poset, tuple[int, ...]]:
    """Relabel so elements are sorted by (height, old index).

    Returns the relabelled poset and the permutation ``perm`` with
    ``perm[old] = new``.  Requires a valid partial order.
    """
    n = p.size
    h = _heights(p)
    order = sorted(range(n), key=lambda i: (h[i], i))
    perm = [0] * n
    for new, old in enumerate(order):
        perm[old] = new
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if p.le(i, j):
                rows[perm[i]] |= 1 << perm[j]
    return Poset(tuple(rows)), tuple(perm)


def from_pairs(size: int, pairs, validate: bool = True) -> Poset:
    """Build a canonical poset from a generating relation.

    Takes the reflexive-transitive closure of ``pairs`` first.  Raises
    ``ValueError`` if the closure is not antisymmetric.
    """
    rows = [1 << i for i in range(size)]
    for i, j in pairs:
        if not (0 <= i < size and 0 <= j < size):
            raise ValueError(f"relation index ({i},{j}) out of range")
        rows[i] |= 1 << j
    changed = True
    while changed:
        changed = False
        for i in range(size):
            acc = rows[i]
            m = acc
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                acc |= rows[j]
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    p = Poset(tuple(rows))
    if validate:
        report = poset_validate(p)
        if not report:
            raise ValueError(f"not a partial order: {report.law} at {report.witness}")
    q, _ = canonicalize(p)
    return q


def empty_poset() -> Poset:
    return Poset(())


def point_poset() -> Poset:
    return Poset((1,))


def chain_poset(n: int) -> Poset:
    return from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def antichain_poset(n: int) -> Poset:
    return from_pairs(n, [])


def cube_poset(n: int) -> tuple[Poset, tuple[int, ...]]:
    """Boolean n-cube: subsets of ``n`` ordered by inclusion.

    Returns the poset together with the subset mask carried by each
    element index (masks sorted by popcount then value, which is already
    the canonical height order).
    """
    masks = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))
    index = {m: i for i, m in enumerate(masks)}
    rows = [0] * len(masks)
    for i, m in enumerate(masks):
        for j, m2 in enumerate(masks):
            if m & ~m2 == 0:
                rows[i] |= 1 << j
    del index
    return Poset(tuple(rows)), tuple(masks)


def monotone_maps(p: Poset, q: Poset, budget: int | None = None) -> list[MonotoneMap]:
    """All monotone maps ``p -> q`` in lexicographic table order."""
    guard("monotone map enumeration", q.size ** p.size if p.size else 1, budget)
    n = p.size
    out: list[MonotoneMap] = []
    table = [0] * n
    # canonical element order is topological, so constraints only look back
    preds = [[j for j in range(i) if p.le(j, i)] for i in range(n)]

    def extend(i: int):
        if i == n:
            out.append(MonotoneMap(p, q, tuple(table)))
            return
        for v in range(q.size):
            if all(q.le(table[j], v) for j in preds[i]):
                table[i] = v
                extend(i + 1)

    extend(0)
    return out


def upsets(p: Poset) -> tuple[int, ...]:
    """All up-closed subsets of ``p`` as bitmasks, sorted by (popcount, value)."""
    n = p.size
    found = []
    for mask in range(1 << n):
        ok = True
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            if p.leq[i] & ~mask:
                ok = False
                break
        if ok:
            found.append(mask)
    return tuple(sorted(found, key=lambda m: (bin(m).count("1"), m)))


def upset_lattice(p: Poset):
    """Lattice of up-sets of ``p`` (meet = intersection, join = union)."""
    from .lattice import DLattice

    ups = upsets(p)
    index = {m: i for i, m in enumerate(ups)}
    k = len(ups)
    meet = tuple(tuple(index[a & b] for b in ups) for a in ups)
    join = tuple(tuple(index[a | b] for b in ups) for a in ups)
    return DLattice(meet=meet, join=join, bot=index[0], top=index[(1 << p.size) - 1])


@dataclass(frozen=True)
class LimitResult:
    poset: Poset
    projections: tuple[MonotoneMap, ...]
    elements: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ColimitResult:
    poset: Poset
    injections: tuple[MonotoneMap, ...]
    classes: tuple[tuple[tuple[int, int], ...], ...]


_LIMIT_KINDS = ("product", "pullback", "equalizer", "general")
_COLIMIT_KINDS = ("coproduct", "pushout", "coequalizer", "general")


def _check_shape(d: PosetDiagram, kind: str, kinds, arrows_by_kind) -> None:
    if kind not in kinds:
        raise ValueError(f"unknown shape {kind!r}")
    expected = arrows_by_kind.get(kind)
    if expected is not None and (len(d.objects), len(d.arrows)) != expected:
        raise ValueError(f"diagram does not have the shape of a {kind}")


def poset_limit(d: PosetDiagram, shape: str = "general", budget: int | None = None) -> LimitResult:
    """Limit of a finite poset diagram: compatible tuples, componentwise order."""
    _check_shape(d, shape, _LIMIT_KINDS, {"product": (2, 0), "pullback": (3, 2), "equalizer": (2, 2)})
    sizes = [o.size for o in d.objects]
    total = 1
    for s in sizes:
        total *= s
    guard("poset limit enumeration", total, budget)
    tuples = [t for t in iproduct(*(range(s) for s in sizes))
              if all(f(t[src]) == t[dst] for src, dst, f in d.arrows)]
    k = len(tuples)
    rows = [0] * k
    for a in range(k):
        for b in range(k):
            if all(d.objects[i].le(tuples[a][i], tuples[b][i]) for i in range(len(sizes))):
                rows[a] |= 1 << b
    raw = Poset(tuple(rows))
    canon, perm = canonicalize(raw)
    elems = [None] * k
    for old, t in enumerate(tuples):
        elems[perm[old]] = t
    projections = tuple(
        MonotoneMap(canon, d.objects[i], tuple(elems[x][i] for x in range(k)))
        for i in range(len(sizes))
    )
    return LimitResult(canon, projections, tuple(elems))


def poset_colimit(d: PosetDiagram, shape: str = "general") -> ColimitResult:
    """Colimit of a finite poset diagram.

    Disjoint union, quotient by the arrow-generated equivalence, preorder
    closure, then posetal reflection (order-equivalent classes collapse).
    """
    _check_shape(d, shape, _COLIMIT_KINDS, {"coproduct": (2, 0), "pushout": (3, 2), "coequalizer": (2, 2)})
    offsets = []
    total = 0
    for o in d.objects:
        offsets.append(total)
        total += o.size

    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for src, dst, f in d.arrows:
        for x in range(d.objects[src].size):
            union(offsets[src] + x, offsets[dst] + f(x))

    reps = sorted({find(x) for x in range(total)})
    rep_index = {r: i for i, r in enumerate(reps)}
    k = len(reps)
    # preorder generated by the object orders on equivalence classes
    rel = [0] * k
    for i in range(k):
        rel[i] |= 1 << i
    for oi, o in enumerate(d.objects):
        for x in range(o.size):
            for y in range(o.size):
                if o.le(x, y):
                    rel[rep_index[find(offsets[oi] + x)]] |= 1 << rep_index[find(offsets[oi] + y)]
    changed = True
    while changed:
        changed = False
        for i in range(k):
            acc = rel[i]
            m = acc
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                acc |= rel[j]
            if acc != rel[i]:
                rel[i] = acc
                changed = True
    # posetal reflection: collapse order-equivalent classes
    scc: list[int] = [-1] * k
    groups: list[list[int]] = []
    for i in range(k):
        if scc[i] >= 0:
            continue
        g = [j for j in range(k) if (rel[i] >> j) & 1 and (rel[j] >> i) & 1]
        gi = len(groups)
        groups.append(g)
        for j in g:
            scc[j] = gi
    m = len(groups)
    rows = [0] * m
    for i in range(k):
        for j in range(k):
            if (rel[i] >> j) & 1:
                rows[scc[i]] |= 1 << scc[j]
    raw = Poset(tuple(rows))
    canon, perm = canonicalize(raw)

    def final(oi: int, x: int) -> int:
        return perm[scc[rep_index[find(offsets[oi] + x)]]]

    injections = tuple(
        MonotoneMap(d.objects[oi], canon, tuple(final(oi, x) for x in range(d.objects[oi].size)))
        for oi in range(len(d.objects))
    )
    classes: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for oi, o in enumerate(d.objects):
        for x in range(o.size):
            classes[final(oi, x)].append((oi, x))
    return ColimitResult(canon, injections, tuple(tuple(c) for c in classes))


def mediating_map(colim: ColimitResult, diagram: PosetDiagram, cocone: tuple[MonotoneMap, ...],
                  target: Poset) -> MonotoneMap | None:
    """The unique map out of a colimit induced by a competing cocone.

    Returns ``None`` when the cocone values disagree on some identified
    class or fail monotonicity (i.e. no mediating map exists).
    """
    for src, dst, f in diagram.arrows:
        if f.then(cocone[dst]).table != cocone[src].table:
            return None
    values = [None] * colim.poset.size
    for ci, members in enumerate(colim.classes):
        vals = {cocone[oi](x) for oi, x in members}
        if len(vals) != 1:
            return None
        values[ci] = vals.pop()
    try:
        return MonotoneMap(colim.poset, target, tuple(values))
    except ValueError:
        return None


def transitive_reduction(p: Poset) -> list[tuple[int, int]]:
    """Covering relation: i -> j with nothing strictly between."""
    n = p.size
    covers = []
    for i in range(n):
        for j in range(n):
            if i != j and p.le(i, j):
                if not any(k != i and k != j and p.le(i, k) and p.le(k, j) for k in range(n)):
                    covers.append((i, j))
    return covers


def hasse_dot(p: Poset) -> str:
    """DOT digraph of the covering relation with nodes n0..n{size-1}."""
    lines = ["digraph poset {"]
    for i in range(p.size):
        lines.append(f"  n{i};")
    for i, j in sorted(transitive_reduction(p)):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _refine_classes(p: Poset) -> list[int]:
    n = p.size
    h = _heights(p)
    sig = [(h[i], bin(p.up(i)).count("1"), bin(p.down(i)).count("1")) for i in range(n)]
    while True:
        order = sorted(set(sig))
        cls = [order.index(s) for s in sig]
        new = []
        for i in range(n):
            above = sorted(cls[j] for j in range(n) if j != i and p.le(i, j))
            below = sorted(cls[j] for j in range(n) if j != i and p.le(j, i))
            new.append((cls[i], tuple(above), tuple(below)))
        if len(set(new)) == len(set(sig)):
            return cls
        sig = new


def canonical_form(p: Poset) -> Poset:
    """Isomorphism-invariant canonical form.

    Searches relabellings for the lexicographically least relation,
    encoded by growing principal submatrices so prefixes prune soundly.
    Candidate order follows the invariant-refinement classes.  Two posets
    are isomorphic iff their canonical forms are equal.
    """
    n = p.size
    if n == 0:
        return p
    cls = _refine_classes(p)
    order = sorted(range(n), key=lambda i: (cls[i], i))
    best: list[bool] | None = None
    best_perm: list[int] | None = None
    perm = [-1] * n  # perm[new] = old
    used = [False] * n

    def rec(pos: int, enc: list[bool]):
        nonlocal best, best_perm
        if best is not None:
            prefix = best[:len(enc)]
            if enc > prefix:
                return
        if pos == n:
            if best is None or enc < best:
                best = list(enc)
                best_perm = list(perm)
            return
        for i in order:
            if used[i]:
                continue
            ext = [p.le(i, perm[b]) for b in range(pos)]
            ext.append(True)  # reflexive diagonal entry
            ext += [p.le(perm[a], i) for a in range(pos)]
            perm[pos] = i
            used[i] = True
            rec(pos + 1, enc + ext)
            used[i] = False
            perm[pos] = -1

    rec(0, [])
    assert best_perm is not None
    rows = [0] * n
    for a in range(n):
        for b in range(n):
            if p.le(best_perm[a], best_perm[b]):
                rows[a] |= 1 << b
    return Poset(tuple(rows))


def posets_isomorphic(p: Poset, q: Poset) -> bool:
    if p.size != q.size:
        return False
    return canonical_form(p) == canonical_form(q)


def all_posets(n: int) -> list[Poset]:
    """Every poset on ``n`` elements, one per isomorphism class.

    Enumerates strict upper-triangular edge sets (every finite poset has a
    topological labelling), closes transitively, and dedupes by canonical
    form.
    """
    if n == 0:
        return [empty_poset()]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    guard("poset generation", 1 << len(pairs), None)
    seen = {}
    for bits in range(1 << len(pairs)):
        rows = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if (bits >> k) & 1:
                rows[i] |= 1 << j
        for i in range(n - 1, -1, -1):
            acc = rows[i]
            m = acc & ~(1 << i)
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                acc |= rows[j]
            rows[i] = acc
        form = canonical_form(Poset(tuple(rows)))
        seen.setdefault(form, form)
    return sorted(seen.values(), key=lambda q: q.leq)


def load_poset(text: str) -> Poset:
    """Parse the line-oriented poset format.

    First line ``poset <size>``; following lines ``le <i> <j>`` list a
    generating set of relations.  The loader closes reflexively and
    transitively, then validates.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("poset "):
        raise ValueError("poset file must start with 'poset <size>'")
    size = int(lines[0].split()[1])
    pairs = []
    for num, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if parts[0] != "le" or len(parts) != 3:
            raise ValueError(f"line {num}: expected 'le <i> <j>'")
        pairs.append((int(parts[1]), int(parts[2])))
    return from_pairs(size, pairs)


def dump_poset(p: Poset) -> str:
    lines = [f"poset {p.size}"]
    for i, j in sorted(transitive_reduction(p)):
        lines.append(f"le {i} {j}")
    return "\n".join(lines) + "\n"
