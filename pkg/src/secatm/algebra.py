"""Finite graded-commutative algebras, their morphisms and subspaces.

An algebra is presented by an ordered basis per degree and structure
constants for basis products.  Constructors check the unit law, the graded
sign law and associativity exhaustively; derived constructions (tensor
squares, Kunneth products) inherit those laws from their factors and can be
re-checked with :meth:`GradedAlgebra.validate`.
"""

from __future__ import annotations

from .domains import CoefficientDomain
from . import linalg
from .linalg import make_echelon, span_rows, kernel_rows, vis_zero, vzero

__all__ = [
    "AlgebraError",
    "UnitViolation",
    "CommutativityViolation",
    "AssociativityViolation",
    "InvalidAlgebraSpec",
    "AlgebraMismatch",
    "CoefficientMismatch",
    "MorphismMismatch",
    "MultiplicativityViolation",
    "SubspaceMismatch",
    "UnsupportedCoefficients",
    "GradedAlgebra",
    "Element",
    "RingMorphism",
    "Subspace",
    "make_algebra",
    "multiply",
    "tensor_square",
    "kunneth_product",
    "tensor_morphism",
    "kernel",
    "cup_kernel",
    "multiplication_morphism",
    "image_difference",
    "pushforward_span",
]


class AlgebraError(ValueError):
    """Base class for algebra construction and usage errors."""


class UnitViolation(AlgebraError):
    pass


class CommutativityViolation(AlgebraError):
    pass


class AssociativityViolation(AlgebraError):
    pass


class InvalidAlgebraSpec(AlgebraError):
    pass


class AlgebraMismatch(AlgebraError):
    pass


class CoefficientMismatch(AlgebraError):
    pass


class MorphismMismatch(AlgebraError):
    pass


class MultiplicativityViolation(AlgebraError):
    pass


class SubspaceMismatch(AlgebraError):
    pass


class UnsupportedCoefficients(AlgebraError):
    pass


def _koszul_sign_is_neg(d1: int, d2: int) -> bool:
    return (d1 % 2 == 1) and (d2 % 2 == 1)


class GradedAlgebra:
    """Finite graded-commutative algebra over Q, F_p or Z.

    ``names[d]`` is the ordered basis of the degree-d component (degree 0 has
    rank one, spanned by the unit).  ``table[(d1, i1, d2, i2)]`` holds the
    coefficient tuple of ``names[d1][i1] * names[d2][i2]`` over the basis of
    degree ``d1 + d2``; absent keys mean the product is zero.  Instances are
    immutable after construction and safe to share.
    """

    def __init__(self, coeff, names, table, validate=True):
        self.coeff: CoefficientDomain = coeff
        self.names: tuple[tuple[str, ...], ...] = tuple(tuple(ns) for ns in names)
        self.top_degree: int = len(self.names) - 1
        self.table: dict = dict(table)
        index = {}
        for d, ns in enumerate(self.names):
            for i, n in enumerate(ns):
                if n in index:
                    raise InvalidAlgebraSpec(f"duplicate basis name {n!r}")
                index[n] = (d, i)
        self._index = index
        if len(self.names[0]) != 1:
            raise InvalidAlgebraSpec("degree-0 component must have rank 1 (the unit)")
        if validate:
            self.validate()

    # -- basic queries ---------------------------------------------------
    def dim(self, d: int) -> int:
        if 0 <= d <= self.top_degree:
            return len(self.names[d])
        return 0

    def dims(self) -> tuple[int, ...]:
        return tuple(len(ns) for ns in self.names)

    @property
    def total_dim(self) -> int:
        return sum(self.dims())

    @property
    def unit_name(self) -> str:
        return self.names[0][0]

    def degree_of(self, name: str) -> int:
        return self._index[name][0]

    # -- products on basis indices ----------------------------------------
    def mul_basis(self, d1: int, i1: int, d2: int, i2: int) -> tuple | None:
        """Coefficient tuple of the product in degree d1+d2, None if zero."""
        if d1 + d2 > self.top_degree:
            return None
        if d1 == 0:
            unit = vzero(self.coeff, self.dim(d2))
            unit = list(unit)
            unit[i2] = self.coeff.one()
            return tuple(unit)
        if d2 == 0:
            unit = list(vzero(self.coeff, self.dim(d1)))
            unit[i1] = self.coeff.one()
            return tuple(unit)
        return self.table.get((d1, i1, d2, i2))

    def mul_vectors(self, d1: int, v1: tuple, d2: int, v2: tuple) -> tuple | None:
        """Bilinear product of degree-homogeneous coefficient vectors."""
        d = d1 + d2
        if d > self.top_degree:
            return None
        dom = self.coeff
        out = list(vzero(dom, self.dim(d)))
        for i1, a in enumerate(v1):
            if a == 0:
                continue
            for i2, b in enumerate(v2):
                if b == 0:
                    continue
                row = self.mul_basis(d1, i1, d2, i2)
                if row is None:
                    continue
                ab = dom.mul(a, b)
                for j, c in enumerate(row):
                    if c != 0:
                        out[j] = dom.add(out[j], dom.mul(ab, c))
        return tuple(out)

    # -- elements ----------------------------------------------------------
    def zero_element(self) -> "Element":
        return Element(self, {})

    def unit_element(self) -> "Element":
        return self.basis_element(self.unit_name)

    def basis_element(self, name: str) -> "Element":
        d, i = self._index[name]
        v = list(vzero(self.coeff, self.dim(d)))
        v[i] = self.coeff.one()
        return Element(self, {d: tuple(v)})

    def element(self, combo: dict) -> "Element":
        """Element from a {basis name: scalar} mapping."""
        comps: dict[int, list] = {}
        for name, c in combo.items():
            d, i = self._index[name]
            comps.setdefault(d, list(vzero(self.coeff, self.dim(d))))
            comps[d][i] = self.coeff.add(comps[d][i], c)
        return Element(self, {d: tuple(v) for d, v in comps.items()})

    def component_element(self, d: int, v: tuple) -> "Element":
        return Element(self, {d: tuple(v)})

    # -- validation ----------------------------------------------------------
    def validate(self) -> None:
        """Exhaustively re-check unit, graded sign law and associativity."""
        dom = self.coeff
        one = dom.one()
        for (d1, i1, d2, i2), row in self.table.items():
            if d1 + d2 > self.top_degree:
                raise InvalidAlgebraSpec(
                    f"product of {self.names[d1][i1]!r} and {self.names[d2][i2]!r} "
                    f"lands beyond top degree {self.top_degree}"
                )
            if len(row) != self.dim(d1 + d2):
                raise InvalidAlgebraSpec("structure constant row has wrong width")
        # unit law
        for d in range(self.top_degree + 1):
            for i in range(self.dim(d)):
                want = [dom.zero()] * self.dim(d)
                want[i] = one
                want = tuple(want)
                name = self.names[d][i]
                if self.mul_basis(0, 0, d, i) != want:
                    raise UnitViolation(f"1 * {name!r} != {name!r}")
                if self.mul_basis(d, i, 0, 0) != want:
                    raise UnitViolation(f"{name!r} * 1 != {name!r}")
        # graded commutativity
        basis = [
            (d, i) for d in range(self.top_degree + 1) for i in range(self.dim(d))
        ]
        for d1, i1 in basis:
            for d2, i2 in basis:
                if d1 + d2 > self.top_degree:
                    continue
                xy = self.mul_basis(d1, i1, d2, i2)
                yx = self.mul_basis(d2, i2, d1, i1)
                xy = xy if xy is not None else vzero(dom, self.dim(d1 + d2))
                yx = yx if yx is not None else vzero(dom, self.dim(d1 + d2))
                if _koszul_sign_is_neg(d1, d2):
                    yx = tuple(dom.neg(a) for a in yx)
                if xy != yx:
                    raise CommutativityViolation(
                        f"{self.names[d1][i1]!r} * {self.names[d2][i2]!r} violates "
                        f"the graded sign law"
                    )
        # associativity (triples whose total degree fits)
        for d1, i1 in basis:
            for d2, i2 in basis:
                if d1 + d2 > self.top_degree:
                    continue
                xy = self.mul_basis(d1, i1, d2, i2)
                for d3, i3 in basis:
                    if d1 + d2 + d3 > self.top_degree:
                        continue
                    yz = self.mul_basis(d2, i2, d3, i3)
                    left = (
                        self.mul_vectors(d1 + d2, xy, d3, self._unit_vec(d3, i3))
                        if xy is not None
                        else None
                    )
                    right = (
                        self.mul_vectors(d1, self._unit_vec(d1, i1), d2 + d3, yz)
                        if yz is not None
                        else None
                    )
                    vleft = left if left is not None else vzero(dom, self.dim(d1 + d2 + d3))
                    vright = right if right is not None else vzero(dom, self.dim(d1 + d2 + d3))
                    if vleft != vright:
                        x, y, z = (
                            self.names[d1][i1],
                            self.names[d2][i2],
                            self.names[d3][i3],
                        )
                        raise AssociativityViolation(
                            f"({x!r} * {y!r}) * {z!r} differs from "
                            f"{x!r} * ({y!r} * {z!r})"
                        )

    def _unit_vec(self, d: int, i: int) -> tuple:
        v = list(vzero(self.coeff, self.dim(d)))
        v[i] = self.coeff.one()
        return tuple(v)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return (
            f"GradedAlgebra({self.coeff.label}, dims={list(self.dims())})"
        )


class Element:
    """Sparse element of a graded algebra: degree -> coefficient tuple."""

    def __init__(self, algebra: GradedAlgebra, comps: dict):
        self.algebra = algebra
        clean = {}
        for d, v in comps.items():
            v = tuple(v)
            if len(v) != algebra.dim(d):
                raise InvalidAlgebraSpec(f"component width mismatch in degree {d}")
            if not vis_zero(v):
                clean[d] = v
        self.comps: dict[int, tuple] = dict(sorted(clean.items()))

    def is_zero(self) -> bool:
        return not self.comps

    def is_homogeneous(self) -> bool:
        return len(self.comps) <= 1

    @property
    def degree(self) -> int:
        """Degree of a homogeneous nonzero element."""
        if len(self.comps) != 1:
            raise ValueError("degree is defined for nonzero homogeneous elements")
        return next(iter(self.comps))

    def component(self, d: int) -> tuple:
        return self.comps.get(d, vzero(self.algebra.coeff, self.algebra.dim(d)))

    # -- arithmetic ---------------------------------------------------------
    def _check_same(self, other: "Element") -> None:
        if self.algebra is not other.algebra:
            raise AlgebraMismatch("elements live in different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check_same(other)
        dom = self.algebra.coeff
        comps = dict(self.comps)
        for d, v in other.comps.items():
            comps[d] = linalg.vadd(dom, comps.get(d, vzero(dom, len(v))), v)
        return Element(self.algebra, comps)

    def __neg__(self) -> "Element":
        dom = self.algebra.coeff
        return Element(self.algebra, {d: linalg.vneg(dom, v) for d, v in self.comps.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        dom = self.algebra.coeff
        return Element(self.algebra, {d: linalg.vscale(dom, c, v) for d, v in self.comps.items()})

    def __mul__(self, other: "Element") -> "Element":
        self._check_same(other)
        alg = self.algebra
        dom = alg.coeff
        comps: dict[int, list] = {}
        for d1, v1 in self.comps.items():
            for d2, v2 in other.comps.items():
                prod = alg.mul_vectors(d1, v1, d2, v2)
                if prod is None:
                    continue
                d = d1 + d2
                if d in comps:
                    comps[d] = list(linalg.vadd(dom, tuple(comps[d]), prod))
                else:
                    comps[d] = list(prod)
        return Element(alg, {d: tuple(v) for d, v in comps.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.comps == other.comps
        )

    def __hash__(self):  # elements are value-immutable
        return hash((id(self.algebra), tuple(self.comps.items())))

    def __repr__(self) -> str:
        return f"Element({self.format()})"

    def format(self) -> str:
        """Deterministic human-readable linear combination."""
        if self.is_zero():
            return "0"
        dom = self.algebra.coeff
        parts = []
        for d, v in self.comps.items():
            for i, c in enumerate(v):
                if c == 0:
                    continue
                name = self.algebra.names[d][i]
                if c == dom.one():
                    term = name
                elif c == dom.neg(dom.one()) and dom.kind != "prime_field":
                    term = f"-{name}"
                else:
                    term = f"{dom.format_scalar(c)}*{name}"
                parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                out += f" - {term[1:]}"
            else:
                out += f" + {term}"
        return out


def multiply(a: Element, b: Element) -> Element:
    """Cup product of two elements of the same algebra."""
    return a * b


# ---------------------------------------------------------------------------
# construction from a basis/products description
# ---------------------------------------------------------------------------

def make_algebra(coeff, basis, products) -> GradedAlgebra:
    """Build and validate a graded algebra.

    ``basis`` maps degree -> ordered sequence of names (degree 0 defaults to
    a unit called "1" if omitted).  ``products`` is an iterable of
    ``(left_name, right_name, {name: scalar})`` triples; omitted products are
    zero, products with the unit follow the unit law, and an omitted mirror
    of a listed pair is filled in with the graded sign.
    """
    basis = {int(d): list(ns) for d, ns in dict(basis).items()}
    if 0 not in basis:
        basis[0] = ["1"]
    top = max(basis)
    names = [tuple(basis.get(d, ())) for d in range(top + 1)]
    while names and not names[-1]:
        names.pop()
    top = len(names) - 1

    index = {}
    for d, ns in enumerate(names):
        for i, n in enumerate(ns):
            if n in index:
                raise InvalidAlgebraSpec(f"duplicate basis name {n!r}")
            index[n] = (d, i)
    if len(names[0]) != 1:
        raise InvalidAlgebraSpec("degree-0 component must have rank 1 (the unit)")
    unit = names[0][0]

    dims = [len(ns) for ns in names]
    table: dict = {}
    given: set = set()
    for left, right, value in products:
        if left not in index or right not in index:
            missing = left if left not in index else right
            raise InvalidAlgebraSpec(f"unknown basis name {missing!r} in product list")
        d1, i1 = index[left]
        d2, i2 = index[right]
        d = d1 + d2
        row = [coeff.zero()] * (dims[d] if d <= top else 0)
        for name, c in dict(value).items():
            if name not in index:
                raise InvalidAlgebraSpec(f"unknown basis name {name!r} in product value")
            dn, j = index[name]
            c = coeff.parse_scalar(c) if isinstance(c, (int, str)) else c
            if coeff.is_zero(c):
                continue
            if d > top or dn != d:
                raise InvalidAlgebraSpec(
                    f"product {left!r} * {right!r} must be homogeneous of degree {d}"
                )
            row[j] = coeff.add(row[j], c)
        if unit in (left, right):
            other = right if left == unit else left
            do, io = index[other]
            want = [coeff.zero()] * dims[do]
            want[io] = coeff.one()
            if d > top or list(row) != want:
                raise UnitViolation(f"declared product {left!r} * {right!r} breaks the unit law")
            continue
        key = (d1, i1, d2, i2)
        if key in given:
            raise InvalidAlgebraSpec(f"product {left!r} * {right!r} listed twice")
        given.add(key)
        if d <= top and not vis_zero(tuple(row)):
            table[key] = tuple(row)

    # fill omitted mirrors with the graded sign
    for (d1, i1, d2, i2) in list(given):
        mirror = (d2, i2, d1, i1)
        if mirror in given:
            continue
        row = table.get((d1, i1, d2, i2))
        if row is None:
            continue
        if _koszul_sign_is_neg(d1, d2):
            row = tuple(coeff.neg(a) for a in row)
        table[mirror] = row

    return GradedAlgebra(coeff, names, table, validate=True)


# ---------------------------------------------------------------------------
# tensor constructions
# ---------------------------------------------------------------------------

def kunneth_product(A: GradedAlgebra, B: GradedAlgebra):
    """Graded tensor product with Koszul signs.

    Returns ``(C, incl_A, incl_B)`` where the inclusions send ``a`` to
    ``a (x) 1`` and ``b`` to ``1 (x) b``.  Valid over a field, and over Z
    because all components are free.
    """
    if A.coeff != B.coeff:
        raise CoefficientMismatch(
            f"cannot tensor algebras over {A.coeff.label} and {B.coeff.label}"
        )
    dom = A.coeff
    top = A.top_degree + B.top_degree
    pairs: list[list[tuple[int, int, int, int]]] = [[] for _ in range(top + 1)]
    names: list[list[str]] = [[] for _ in range(top + 1)]
    pos: dict[tuple[int, int, int, int], int] = {}
    for d in range(top + 1):
        for p in range(d + 1):
            q = d - p
            if A.dim(p) == 0 or B.dim(q) == 0:
                continue
            for i in range(A.dim(p)):
                for j in range(B.dim(q)):
                    key = (p, i, q, j)
                    pos[key] = len(pairs[d])
                    pairs[d].append(key)
                    names[d].append(f"{A.names[p][i]}(x){B.names[q][j]}")

    table: dict = {}
    for d1 in range(top + 1):
        for k1, (p1, i1, q1, j1) in enumerate(pairs[d1]):
            for d2 in range(top + 1 - d1):
                if d1 == 0 or d2 == 0:
                    continue
                for k2, (p2, i2, q2, j2) in enumerate(pairs[d2]):
                    arow = A.mul_basis(p1, i1, p2, i2)
                    brow = B.mul_basis(q1, j1, q2, j2)
                    if arow is None or brow is None:
                        continue
                    d = d1 + d2
                    out = [dom.zero()] * len(pairs[d])
                    neg = _koszul_sign_is_neg(q1, p2)
                    for ia, ca in enumerate(arow):
                        if ca == 0:
                            continue
                        for jb, cb in enumerate(brow):
                            if cb == 0:
                                continue
                            c = dom.mul(ca, cb)
                            if neg:
                                c = dom.neg(c)
                            slot = pos[(p1 + p2, ia, q1 + q2, jb)]
                            out[slot] = dom.add(out[slot], c)
                    if not vis_zero(tuple(out)):
                        table[(d1, k1, d2, k2)] = tuple(out)

    C = GradedAlgebra(dom, names, table, validate=False)
    # factor decomposition of each tensor basis element, for morphism builders
    C.kunneth_pairs = {d: tuple(pairs[d]) for d in range(top + 1)}

    incl_a = {}
    for p in range(A.top_degree + 1):
        rows = []
        for i in range(A.dim(p)):
            row = [dom.zero()] * C.dim(p)
            row[pos[(p, i, 0, 0)]] = dom.one()
            rows.append(tuple(row))
        incl_a[p] = tuple(rows)
    incl_b = {}
    for q in range(B.top_degree + 1):
        rows = []
        for j in range(B.dim(q)):
            row = [dom.zero()] * C.dim(q)
            row[pos[(0, 0, q, j)]] = dom.one()
            rows.append(tuple(row))
        incl_b[q] = tuple(rows)
    inc_A = RingMorphism(A, C, incl_a, validate=False)
    inc_B = RingMorphism(B, C, incl_b, validate=False)
    return C, inc_A, inc_B


def tensor_square(A: GradedAlgebra):
    """Tensor square of ``A``, with the two factor inclusions."""
    return kunneth_product(A, A)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class RingMorphism:
    """Degree-preserving unital algebra map given by per-degree matrices.

    ``mats[d]`` has one row per source basis element of degree d; each row is
    its image over the target degree-d basis.  Missing degrees map to zero.
    """

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra, mats, validate=True):
        if source.coeff != target.coeff:
            raise CoefficientMismatch("morphism endpoints use different coefficients")
        self.source = source
        self.target = target
        full: dict[int, tuple] = {}
        for d in range(source.top_degree + 1):
            rows = mats.get(d)
            if rows is None:
                rows = tuple(
                    vzero(source.coeff, target.dim(d)) for _ in range(source.dim(d))
                )
            rows = tuple(tuple(r) for r in rows)
            if len(rows) != source.dim(d) or any(
                len(r) != target.dim(d) for r in rows
            ):
                raise MorphismMismatch(f"matrix shape mismatch in degree {d}")
            full[d] = rows
        self.mats = full
        if validate:
            self.validate()

    def validate(self) -> None:
        dom = self.source.coeff
        unit_img = self.mats[0][0]
        want = list(vzero(dom, self.target.dim(0)))
        want[0] = dom.one()
        if unit_img != tuple(want):
            raise UnitViolation("morphism does not send unit to unit")
        src = self.source
        basis = [
            (d, i) for d in range(src.top_degree + 1) for i in range(src.dim(d))
        ]
        for d1, i1 in basis:
            for d2, i2 in basis:
                if d1 + d2 > src.top_degree:
                    continue
                prod = src.mul_basis(d1, i1, d2, i2)
                lhs = (
                    self.apply_component(d1 + d2, prod)
                    if prod is not None
                    else None
                )
                rhs = self.target.mul_vectors(
                    d1, self.mats[d1][i1], d2, self.mats[d2][i2]
                )
                vl = lhs if lhs is not None else vzero(dom, self.target.dim(d1 + d2))
                vr = rhs if rhs is not None else vzero(dom, self.target.dim(d1 + d2))
                if vl != vr:
                    raise MultiplicativityViolation(
                        f"morphism is not multiplicative on "
                        f"({src.names[d1][i1]!r}, {src.names[d2][i2]!r})"
                    )

    def apply_component(self, d: int, v: tuple) -> tuple:
        dom = self.source.coeff
        out = list(vzero(dom, self.target.dim(d)))
        rows = self.mats.get(d)
        if rows is None:
            return tuple(out)
        for i, c in enumerate(v):
            if c == 0:
                continue
            for j, m in enumerate(rows[i]):
                if m != 0:
                    out[j] = dom.add(out[j], dom.mul(c, m))
        return tuple(out)

    def apply(self, el: Element) -> Element:
        if el.algebra is not self.source:
            raise AlgebraMismatch("element does not live in the morphism source")
        comps = {
            d: self.apply_component(d, v)
            for d, v in el.comps.items()
            if d <= self.target.top_degree
        }
        return Element(self.target, comps)

    def same_matrices(self, other: "RingMorphism") -> bool:
        return (
            self.source is other.source
            and self.target is other.target
            and self.mats == other.mats
        )

    def is_identity(self) -> bool:
        if self.source is not self.target:
            return False
        dom = self.source.coeff
        one, zero = dom.one(), dom.zero()
        for d, rows in self.mats.items():
            for i, row in enumerate(rows):
                for j, c in enumerate(row):
                    if c != (one if i == j else zero):
                        return False
        return True

    def is_augmentation(self) -> bool:
        """True if every positive degree maps to zero (unit to unit)."""
        return all(
            vis_zero(row)
            for d, rows in self.mats.items()
            if d > 0
            for row in rows
        )

    # -- named constructions ------------------------------------------------
    @staticmethod
    def identity(A: GradedAlgebra) -> "RingMorphism":
        dom = A.coeff
        mats = {}
        for d in range(A.top_degree + 1):
            rows = []
            for i in range(A.dim(d)):
                row = list(vzero(dom, A.dim(d)))
                row[i] = dom.one()
                rows.append(tuple(row))
            mats[d] = tuple(rows)
        return RingMorphism(A, A, mats, validate=False)

    @staticmethod
    def augmentation(source: GradedAlgebra, target: GradedAlgebra) -> "RingMorphism":
        """Unit to unit, all positive degrees to zero."""
        dom = source.coeff
        row0 = list(vzero(dom, target.dim(0)))
        row0[0] = dom.one()
        return RingMorphism(source, target, {0: (tuple(row0),)}, validate=False)

    @staticmethod
    def from_images(source: GradedAlgebra, target: GradedAlgebra, images, validate=True):
        """Morphism from {source basis name: {target name: scalar}}; omitted
        positive-degree names map to zero."""
        dom = source.coeff
        mats = {}
        for d in range(source.top_degree + 1):
            rows = []
            for i in range(source.dim(d)):
                name = source.names[d][i]
                combo = images.get(name)
                row = list(vzero(dom, target.dim(d)))
                if d == 0 and combo is None:
                    row[0] = dom.one()
                elif combo is not None:
                    for tname, c in dict(combo).items():
                        if tname not in target._index:
                            raise MorphismMismatch(
                                f"unknown target basis name {tname!r}"
                            )
                        dt, j = target._index[tname]
                        if dt != d:
                            raise MorphismMismatch(
                                f"image of {name!r} must stay in degree {d}"
                            )
                        c = dom.parse_scalar(c) if isinstance(c, (int, str)) else c
                        row[j] = dom.add(row[j], c)
                rows.append(tuple(row))
            mats[d] = tuple(rows)
        return RingMorphism(source, target, mats, validate=validate)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"RingMorphism({self.source!r} -> {self.target!r})"


def multiplication_morphism(A: GradedAlgebra, T: GradedAlgebra | None = None):
    """The cup-product map ``A (x) A -> A`` as a ring morphism.

    If the tensor square was already built, pass it in to keep basis
    orderings shared; otherwise it is constructed here.
    """
    if T is None:
        T, _, _ = tensor_square(A)
    dom = A.coeff
    mats = {}
    for d in range(T.top_degree + 1):
        rows = []
        for (dl, il, dr, ir) in T.kunneth_pairs[d]:
            prod = A.mul_basis(dl, il, dr, ir)
            rows.append(
                prod if prod is not None else vzero(dom, A.dim(d))
            )
        mats[d] = tuple(rows)
    return T, RingMorphism(T, A, mats, validate=False)


def tensor_morphism(phi: RingMorphism, psi: RingMorphism,
                    source_tensor=None, target_tensor=None):
    """Tensor product of two degree-preserving morphisms."""
    if phi.source.coeff != psi.source.coeff:
        raise CoefficientMismatch("tensor factors use different coefficients")
    if source_tensor is None:
        source_tensor, _, _ = kunneth_product(phi.source, psi.source)
    if target_tensor is None:
        target_tensor, _, _ = kunneth_product(phi.target, psi.target)
    S, T = source_tensor, target_tensor
    dom = phi.source.coeff
    tpos = {
        key: (d, i)
        for d in range(T.top_degree + 1)
        for i, key in enumerate(T.kunneth_pairs[d])
    }
    mats = {}
    for d in range(S.top_degree + 1):
        rows = []
        for (dl, il, dr, ir) in S.kunneth_pairs[d]:
            lrow = phi.mats.get(dl)
            rrow = psi.mats.get(dr)
            out = [dom.zero()] * T.dim(d)
            if lrow is not None and rrow is not None:
                for a, ca in enumerate(lrow[il]):
                    if ca == 0:
                        continue
                    for b, cb in enumerate(rrow[ir]):
                        if cb == 0:
                            continue
                        _, slot = tpos[(dl, a, dr, b)]
                        out[slot] = dom.add(out[slot], dom.mul(ca, cb))
            rows.append(tuple(out))
        mats[d] = tuple(rows)
    return RingMorphism(S, T, mats, validate=False)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """Degreewise span inside an algebra, stored in canonical echelon form.

    Over a field each degree is an RREF basis; over Z a Hermite-normal-form
    lattice basis.  Membership is exact.
    """

    def __init__(self, algebra: GradedAlgebra, rows: dict):
        self.algebra = algebra
        clean = {}
        for d in sorted(rows):
            rs = span_rows(algebra.coeff, rows[d], algebra.dim(d))
            if rs:
                clean[d] = rs
        self.rows: dict[int, tuple] = clean

    @staticmethod
    def from_elements(algebra: GradedAlgebra, elements) -> "Subspace":
        rows: dict[int, list] = {}
        for el in elements:
            if el.algebra is not algebra:
                raise AlgebraMismatch("element from a different algebra")
            for d, v in el.comps.items():
                rows.setdefault(d, []).append(v)
        return Subspace(algebra, rows)

    @staticmethod
    def positive_part(algebra: GradedAlgebra) -> "Subspace":
        """Span of all positive-degree basis classes."""
        dom = algebra.coeff
        rows = {}
        for d in range(1, algebra.top_degree + 1):
            n = algebra.dim(d)
            if n == 0:
                continue
            rs = []
            for i in range(n):
                row = list(vzero(dom, n))
                row[i] = dom.one()
                rs.append(tuple(row))
            rows[d] = rs
        return Subspace(algebra, rows)

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.rows)

    def dim(self, d: int) -> int:
        return len(self.rows.get(d, ()))

    @property
    def total_dim(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def restricted(self, cap: int | None) -> "Subspace":
        """Sub-span of the components of degree <= cap (all when cap is None)."""
        if cap is None:
            return self
        return Subspace(
            self.algebra, {d: rs for d, rs in self.rows.items() if d <= cap}
        )

    def spanning_elements(self) -> list[Element]:
        out = []
        for d in sorted(self.rows):
            for v in self.rows[d]:
                out.append(self.algebra.component_element(d, v))
        return out

    def contains(self, el: Element) -> bool:
        if el.algebra is not self.algebra:
            raise AlgebraMismatch("element from a different algebra")
        for d, v in el.comps.items():
            ech = make_echelon(self.algebra.coeff, self.algebra.dim(d))
            for r in self.rows.get(d, ()):
                ech.insert(r)
            if not ech.contains(v):
                return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.algebra is other.algebra
            and self.rows == other.rows
        )

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        dims = {d: len(r) for d, r in self.rows.items()}
        return f"Subspace(dims={dims})"


def kernel(phi: RingMorphism) -> Subspace:
    """Degreewise exact kernel of a morphism."""
    rows = {}
    alg = phi.source
    for d in range(alg.top_degree + 1):
        n = alg.dim(d)
        if n == 0:
            continue
        ker = kernel_rows(alg.coeff, list(phi.mats[d]), phi.target.dim(d))
        if ker:
            rows[d] = ker
    return Subspace(alg, rows)


def cup_kernel(A: GradedAlgebra, tensor=None) -> Subspace:
    """Kernel of the cup-product map inside the tensor square of ``A``.

    Only available over a field; over Z raise ``UnsupportedCoefficients``.
    """
    if not A.coeff.is_field:
        raise UnsupportedCoefficients(
            "zero-divisor kernels need field coefficients"
        )
    _, mu = multiplication_morphism(A, tensor)
    return kernel(mu)


def image_difference(f: RingMorphism, g: RingMorphism) -> Subspace:
    """Degreewise span of ``(f - g)(basis)`` in the common target."""
    if f.source is not g.source or f.target is not g.target:
        raise MorphismMismatch("morphisms do not share source and target")
    dom = f.source.coeff
    rows = {}
    for d in range(f.source.top_degree + 1):
        rs = []
        for i in range(f.source.dim(d)):
            diff = linalg.vsub(dom, f.mats[d][i], g.mats[d][i])
            if not vis_zero(diff):
                rs.append(diff)
        if rs:
            rows[d] = rs
    return Subspace(f.target, rows)


def pushforward_span(phi: RingMorphism, S: Subspace) -> Subspace:
    """Degreewise span of the images of a subspace's spanning set."""
    if S.algebra is not phi.source:
        raise SubspaceMismatch("subspace does not live in the morphism source")
    rows = {}
    for d, rs in S.rows.items():
        if d > phi.target.top_degree:
            continue
        imgs = [phi.apply_component(d, v) for v in rs]
        imgs = [v for v in imgs if not vis_zero(v)]
        if imgs:
            rows[d] = imgs
    return Subspace(phi.target, rows)
