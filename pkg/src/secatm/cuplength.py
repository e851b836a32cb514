"""Exact degree-capped cup-length with certificates and a brute-force oracle.

The main computation is a span dynamic program: with S the spanning set of
the generator subspace filtered to degree <= cap, iterate

    V_1 = span(S),   V_{t+1} = span{ v * s : v in basis(V_t), s in S }

and report the largest t with V_t != 0.  Any product of linear combinations
expands into products of spanning elements, so all spanning products vanish
exactly when all subspace products vanish; this holds over fields and over
Z lattices alike.  The search is restricted to homogeneous factors: a
nonzero product of non-homogeneous classes expands into a nonzero product of
homogeneous components of no larger degree, so the restriction never weakens
a bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Element, GradedAlgebra, Subspace
from .linalg import make_echelon, vis_zero

__all__ = [
    "CupLengthQuery",
    "CupLengthCertificate",
    "SizeGuardExceeded",
    "capped_cuplength",
    "brute_force_cuplength",
]


class SizeGuardExceeded(ValueError):
    """Brute-force search space is too large to enumerate."""


@dataclass
class CupLengthQuery:
    """Generators inside an algebra plus a degree cap (None = unbounded)."""

    algebra: GradedAlgebra
    generators: Subspace
    cap: int | None = None

    def __post_init__(self) -> None:
        if self.generators.algebra is not self.algebra:
            raise ValueError("generators must live in the queried algebra")
        if 0 in self.generators.rows:
            raise ValueError("generator spanning set must have positive degree")
        if self.cap is not None and self.cap < 1:
            raise ValueError("cap must be >= 1 or None")


@dataclass
class CupLengthCertificate:
    """An explicit ordered factor list with nonzero product."""

    factors: list[Element]
    product: Element

    def __len__(self) -> int:
        return len(self.factors)

    def verify(self, cap: int | None = None) -> bool:
        """Re-multiply the factors and check the stored nonzero product."""
        if not self.factors:
            return False
        prod = self.factors[0]
        for f in self.factors[1:]:
            prod = prod * f
        if prod != self.product or prod.is_zero():
            return False
        for f in self.factors:
            if not f.is_homogeneous() or f.is_zero() or f.degree < 1:
                return False
            if cap is not None and f.degree > cap:
                return False
        return True

    def factor_strings(self) -> list[str]:
        return [f.format() for f in self.factors]


def _filtered_spanning(query: CupLengthQuery) -> list[tuple[int, tuple]]:
    sub = query.generators.restricted(query.cap)
    out = []
    for d in sorted(sub.rows):
        for v in sub.rows[d]:
            out.append((d, v))
    return out


class _SpanLayer:
    """Per-degree echelon spans for one DP layer."""

    def __init__(self, algebra: GradedAlgebra):
        self.algebra = algebra
        self.ech: dict[int, object] = {}

    def insert(self, d: int, v: tuple) -> None:
        if d not in self.ech:
            self.ech[d] = make_echelon(self.algebra.coeff, self.algebra.dim(d))
        self.ech[d].insert(v)

    def saturated(self, d: int) -> bool:
        e = self.ech.get(d)
        return e is not None and e.is_full()

    def nonzero(self) -> bool:
        return any(e.rank > 0 for e in self.ech.values())

    def vectors(self) -> list[tuple[int, tuple]]:
        out = []
        for d in sorted(self.ech):
            for v in self.ech[d].rows():
                out.append((d, v))
        return out


def _next_layer(algebra: GradedAlgebra, vectors, spanning) -> "_SpanLayer":
    layer = _SpanLayer(algebra)
    top = algebra.top_degree
    for dv, v in vectors:
        for ds, s in spanning:
            d = dv + ds
            if d > top or layer.saturated(d):
                continue
            w = algebra.mul_vectors(dv, v, ds, s)
            if w is not None and not vis_zero(w):
                layer.insert(d, w)
    return layer


def _chain_survives(algebra, d0, v0, spanning, steps) -> bool:
    """Does some length-`steps` extension of the single vector stay nonzero?"""
    vectors = [(d0, v0)]
    for _ in range(steps):
        layer = _next_layer(algebra, vectors, spanning)
        if not layer.nonzero():
            return False
        vectors = layer.vectors()
    return True


def _extract_certificate(algebra, spanning, length) -> CupLengthCertificate:
    factors: list[Element] = []
    cur_d, cur_v = None, None
    for step in range(length):
        remaining = length - step - 1
        for ds, s in spanning:
            if cur_v is None:
                cand_d, cand_v = ds, s
            else:
                d = cur_d + ds
                if d > algebra.top_degree:
                    continue
                w = algebra.mul_vectors(cur_d, cur_v, ds, s)
                if w is None or vis_zero(w):
                    continue
                cand_d, cand_v = d, w
            if _chain_survives(algebra, cand_d, cand_v, spanning, remaining):
                factors.append(algebra.component_element(ds, s))
                cur_d, cur_v = cand_d, cand_v
                break
        else:  # pragma: no cover - impossible when the DP length is correct
            raise AssertionError("certificate extraction lost the nonzero chain")
    return CupLengthCertificate(
        factors=factors, product=algebra.component_element(cur_d, cur_v)
    )


def capped_cuplength(query: CupLengthQuery):
    """Maximum number of generator factors (degree <= cap) with nonzero product.

    Returns ``(length, certificate)``; the certificate is None exactly when
    the length is 0.  The chain V_t is absorbing: once a layer vanishes every
    later layer vanishes, and lengths never exceed the top degree since each
    factor has positive degree.
    """
    algebra = query.algebra
    spanning = _filtered_spanning(query)
    if not spanning:
        return 0, None
    length = 1  # V_1 = span(S) is nonzero
    vectors = spanning
    while True:
        layer = _next_layer(algebra, vectors, spanning)
        if not layer.nonzero():
            break
        length += 1
        vectors = layer.vectors()
    cert = _extract_certificate(algebra, spanning, length)
    return length, cert


def _f2_candidates(sub: Subspace) -> list[tuple[int, tuple]]:
    """All nonzero homogeneous elements of an F2 subspace, degree by degree."""
    dom = sub.algebra.coeff
    out = []
    for d in sorted(sub.rows):
        rows = sub.rows[d]
        k = len(rows)
        width = sub.algebra.dim(d)
        for mask in range(1, 1 << k):
            v = [0] * width
            for b in range(k):
                if mask >> b & 1:
                    for j, c in enumerate(rows[b]):
                        v[j] = dom.add(v[j], c)
            if not vis_zero(tuple(v)):
                out.append((d, tuple(v)))
    return out


def brute_force_cuplength(query: CupLengthQuery, max_len: int) -> int:
    """Independent exhaustive oracle for ``capped_cuplength``.

    Over F2 it enumerates every nonzero homogeneous element of the generator
    subspace; over Q, Z and odd prime fields it enumerates sequences drawn
    from the spanning set, which by the expansion argument decides the same
    question.  Guarded: the F2 mode requires algebra total dimension <= 14,
    the sequence mode a filtered spanning set of <= 14 vectors.
    """
    algebra = query.algebra
    dom = algebra.coeff
    sub = query.generators.restricted(query.cap)
    is_f2 = dom.kind == "prime_field" and dom.p == 2
    if is_f2:
        if algebra.total_dim > 14:
            raise SizeGuardExceeded(
                f"algebra dimension {algebra.total_dim} exceeds the F2 guard of 14"
            )
        candidates = _f2_candidates(sub)
    else:
        spanning = _filtered_spanning(
            CupLengthQuery(algebra, query.generators, query.cap)
        )
        if len(spanning) > 14:
            raise SizeGuardExceeded(
                f"spanning set size {len(spanning)} exceeds the guard of 14"
            )
        candidates = spanning

    best = 0

    def search(d, v, length):
        nonlocal best
        best = max(best, length)
        if length >= max_len:
            return
        for ds, s in candidates:
            dd = d + ds
            if dd > algebra.top_degree:
                continue
            w = algebra.mul_vectors(d, v, ds, s)
            if w is not None and not vis_zero(w):
                search(dd, w, length + 1)

    for d, v in candidates:
        search(d, v, 1)
    return best
