"""Polynomial normal forms over an algebra and the path-classification
machinery built on them.

One-variable polynomials over a distributive-lattice algebra are pinned
down by their endpoint evaluations; n-variable ones by their values on the
Boolean cube.  Both reconstructions are verified inside the free extension
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (Bot, DAlgebra, Gen, Join, Meet, Term, auto_present,
                      eval_term, free_extension)
from .lattice import DLattice


@dataclass(frozen=True)
class PolyNF1:
    """Endpoint pair ``(a0, a1)`` with ``a0 <= a1``; denotes ``a0 v (x ^ a1)``."""
    a0: int
    a1: int


@dataclass(frozen=True)
class PolyNFn:
    """Monotone coefficient table over the Boolean n-cube (mask-indexed)."""
    n: int
    table: tuple[int, ...]


def poly_nf1(A: DAlgebra, t: Term, var: str = "x", budget: int | None = None) -> PolyNF1:
    """Normal form of a one-variable polynomial over ``A``.

    Evaluates the endpoints, checks ``a0 <= a1``, and verifies the
    reconstruction ``t = a0 v (x ^ a1)`` as an identity of the free
    extension ``A[x]``.  A reconstruction failure would mean the input
    algebra is broken, so it raises instead of reporting.
    """
    A = auto_present(A)
    env = A.gen_env()
    if var in env:
        raise ValueError(f"variable {var!r} collides with a generator")
    a0 = eval_term(t, A.lat, A.eta, {**env, var: A.lat.bot})
    a1 = eval_term(t, A.lat, A.eta, {**env, var: A.lat.top})
    if not A.lat.le(a0, a1):
        raise AssertionError("endpoint evaluations are not ordered")
    Ax = free_extension(A, (var,), budget=budget)
    envx = Ax.gen_env()
    lhs = eval_term(t, Ax.lat, Ax.eta, envx)
    nf = Join(A.element_term(a0), Meet(Gen(var), A.element_term(a1)))
    rhs = eval_term(nf, Ax.lat, Ax.eta, envx)
    if lhs != rhs:
        raise AssertionError("one-variable normal form failed to reconstruct")
    return PolyNF1(a0, a1)


def poly_nfn(A: DAlgebra, n: int, t: Term, var_names: tuple[str, ...] | None = None,
             budget: int | None = None) -> PolyNFn:
    """Normal form of an n-variable polynomial over ``A``.

    ``table[mask]`` is the evaluation with variable ``i`` set to top when
    bit ``i`` of ``mask`` is set.  Monotonicity of the table is asserted,
    and the round trip ``t = v_mask (table[mask] ^ ^_{i in mask} x_i)`` is
    verified in the free extension on ``n`` fresh generators.
    """
    if var_names is None:
        var_names = tuple(f"v{i + 1}" for i in range(n))
    if len(var_names) != n:
        raise ValueError("need exactly one name per variable")
    A = auto_present(A)
    env = A.gen_env()
    if set(var_names) & set(env):
        raise ValueError("variable names collide with generators")
    table = []
    for mask in range(1 << n):
        sub = {var_names[i]: (A.lat.top if (mask >> i) & 1 else A.lat.bot) for i in range(n)}
        table.append(eval_term(t, A.lat, A.eta, {**env, **sub}))
    for small in range(1 << n):
        for big in range(1 << n):
            if small & ~big == 0 and not A.lat.le(table[small], table[big]):
                raise AssertionError("cube table is not monotone")
    Ax = free_extension(A, var_names, budget=budget)
    envx = Ax.gen_env()
    lhs = eval_term(t, Ax.lat, Ax.eta, envx)
    joined: Term = Bot()
    for mask in range(1 << n):
        cube: Term = A.element_term(table[mask])
        for i in range(n):
            if (mask >> i) & 1:
                cube = Meet(cube, Gen(var_names[i]))
        joined = cube if mask == 0 else Join(joined, cube)
    rhs = eval_term(joined, Ax.lat, Ax.eta, envx)
    if lhs != rhs:
        raise AssertionError("n-variable normal form failed to reconstruct")
    return PolyNFn(n, tuple(table))


def phoa_check(A: DAlgebra, f) -> bool:
    """Does ``f : D -> A`` satisfy ``f(i) = f(0) v (eta(i) ^ f(1))``?"""
    D = A.base
    f = tuple(f)
    if len(f) != D.size:
        raise ValueError("table must be total on the base lattice")
    f0, f1 = f[D.bot], f[D.top]
    lat = A.lat
    return all(
        f[i] == lat.join[f0][lat.meet[A.eta.table[i]][f1]]
        for i in range(D.size)
    )


def phoa_pairs(A: DAlgebra) -> list[tuple[int, int]]:
    """All ordered pairs ``a0 <= a1``; the expected image of the passing set."""
    return [(a0, a1) for a0 in range(A.size) for a1 in range(A.size) if A.lat.le(a0, a1)]


def descending_tuples(L: DLattice, length: int) -> list[tuple[int, ...]]:
    """All weakly descending tuples of the given length, lexicographic order."""
    out: list[tuple[int, ...]] = []
    cur: list[int] = []

    def extend(k: int):
        if k == length:
            out.append(tuple(cur))
            return
        for v in range(L.size):
            if cur and not L.le(v, cur[-1]):
                continue
            cur.append(v)
            extend(k + 1)
            cur.pop()

    extend(0)
    return out


def ascending_tuples(L: DLattice, length: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    cur: list[int] = []

    def extend(k: int):
        if k == length:
            out.append(tuple(cur))
            return
        for v in range(L.size):
            if cur and not L.le(cur[-1], v):
                continue
            cur.append(v)
            extend(k + 1)
            cur.pop()

    extend(0)
    return out


def chain_polynomial(tup: tuple[int, ...], A: DAlgebra, var_names: tuple[str, ...],
                     direction: str = "descending") -> Term:
    """The interleaved chain polynomial, parenthesized left to right.

    Descending: ``a0 ^ x1 v a1 ^ x2 v ... v an`` read as
    ``(((a0 ^ x1) v a1) ^ x2 v a2) ...``; ascending is the order dual.
    """
    terms = [A.element_term(a) for a in tup]
    e = terms[0]
    for k, var in enumerate(var_names):
        if direction == "descending":
            e = Join(Meet(e, Gen(var)), terms[k + 1])
        else:
            e = Meet(Join(e, Gen(var)), terms[k + 1])
    return e


def chain_polynomial_rtl(tup: tuple[int, ...], A: DAlgebra, var_names: tuple[str, ...],
                         direction: str = "descending") -> Term:
    """Right-to-left parenthesization of the same expression."""
    n = len(var_names)
    terms = [A.element_term(a) for a in tup]
    e = terms[n]
    for k in range(n - 1, -1, -1):
        if direction == "descending":
            e = Meet(terms[k], Join(Gen(var_names[k]), e))
        else:
            e = Join(terms[k], Meet(Gen(var_names[k]), e))
    return e


@dataclass(frozen=True)
class ChainQuotientIso:
    ok: bool
    quotient: DAlgebra
    tuples: tuple[tuple[int, ...], ...]
    mapping: tuple[int, ...]
    failure: str | None = None


def chain_quotient_iso(A: DAlgebra, n: int, direction: str = "descending",
                       budget: int | None = None) -> ChainQuotientIso:
    """Equivalence between monotone (n+1)-tuples of ``A`` and ``A[n]/chain``.

    Descending direction: descending tuples against the quotient by the
    ascending generator chain ``x1 <= ... <= xn`` (the order dual flips
    both).  The map interleaves tuple entries with the generators and is
    verified to be a bijection respecting pointwise meet, join, and the
    structural map.
    """
    if direction not in ("descending", "ascending"):
        raise ValueError("direction must be 'descending' or 'ascending'")
    from .algebra import Presentation, present

    A = auto_present(A)
    pres = A.provenance.presentation
    var_names = tuple(f"c{i + 1}" for i in range(n))
    if set(var_names) & set(pres.gens):
        raise ValueError("chain generator names collide")
    if direction == "descending":
        rels = tuple((Meet(Gen(var_names[k]), Gen(var_names[k + 1])), Gen(var_names[k]))
                     for k in range(n - 1))
        tuples = descending_tuples(A.lat, n + 1)
    else:
        rels = tuple((Meet(Gen(var_names[k + 1]), Gen(var_names[k])), Gen(var_names[k + 1]))
                     for k in range(n - 1))
        tuples = ascending_tuples(A.lat, n + 1)
    Q = present(Presentation(pres.base, pres.gens + var_names, pres.rels + rels), budget=budget)
    envq = Q.gen_env()
    mapping = tuple(
        eval_term(chain_polynomial(tup, A, var_names, direction), Q.lat, Q.eta, envq)
        for tup in tuples
    )
    if len(set(mapping)) != len(tuples) or len(tuples) != Q.size:
        return ChainQuotientIso(False, Q, tuple(tuples), mapping, "not a bijection")
    index = {tup: i for i, tup in enumerate(tuples)}
    lat = A.lat
    for i, s in enumerate(tuples):
        for j, t in enumerate(tuples):
            mt = tuple(lat.meet[s[k]][t[k]] for k in range(n + 1))
            jn = tuple(lat.join[s[k]][t[k]] for k in range(n + 1))
            if Q.lat.meet[mapping[i]][mapping[j]] != mapping[index[mt]]:
                return ChainQuotientIso(False, Q, tuple(tuples), mapping, "meet not preserved")
            if Q.lat.join[mapping[i]][mapping[j]] != mapping[index[jn]]:
                return ChainQuotientIso(False, Q, tuple(tuples), mapping, "join not preserved")
    for d in range(A.base.size):
        const = tuple(A.eta.table[d] for _ in range(n + 1))
        if mapping[index[const]] != Q.eta.table[d]:
            return ChainQuotientIso(False, Q, tuple(tuples), mapping, "structural map not preserved")
    return ChainQuotientIso(True, Q, tuple(tuples), mapping)


def flip_tuple(tup: tuple[int, ...]) -> tuple[int, ...]:
    """Conversion between the two tuple directions; an involution."""
    return tuple(reversed(tup))
