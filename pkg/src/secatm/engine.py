"""Bound tables for cat, tc, secat, dm and hdm over m = 1..M plus the
classical column, produced by exact cup-length lower bounds and a narrowing
rule system iterated to a fixpoint.

Every rule only narrows intervals, so iteration terminates; a crossing pair
of bounds raises :class:`~secatm.tables.InconsistentModel` with both
provenance chains.  Lower bounds coming from cup-length computations carry
their certificates in the provenance, and are applied lazily: only to the
requested tables and to tables whose lower bounds can flow into them.
"""

from __future__ import annotations

from .algebra import (
    RingMorphism,
    Subspace,
    cup_kernel,
    image_difference,
    kernel,
    multiplication_morphism,
    pushforward_span,
    tensor_square,
)
from .cuplength import CupLengthQuery, capped_cuplength
from .linalg import vzero
from .spaces import FibrationModel, MapPairModel, SpaceModel
from .tables import INF, BoundTable

__all__ = [
    "Bundle",
    "compute_tables",
    "default_max_m",
    "cat_lower",
    "tc_lower",
    "secat_lower",
    "dm_lower",
    "hdm_lower",
]


class Bundle:
    """Named spaces, fibrations and map pairs sharing one computation."""

    def __init__(self):
        self.spaces: dict[str, SpaceModel] = {}
        self.fibrations: dict[str, FibrationModel] = {}
        self.map_pairs: dict[str, MapPairModel] = {}

    def add_space(self, name: str, model: SpaceModel) -> SpaceModel:
        self._check_fresh(name)
        self.spaces[name] = model
        return model

    def add_fibration(self, name: str, model: FibrationModel) -> FibrationModel:
        self._check_fresh(name)
        self.fibrations[name] = model
        return model

    def add_map_pair(self, name: str, model: MapPairModel) -> MapPairModel:
        self._check_fresh(name)
        self.map_pairs[name] = model
        return model

    def _check_fresh(self, name: str) -> None:
        if name in self.spaces or name in self.fibrations or name in self.map_pairs:
            raise ValueError(f"duplicate model name {name!r}")


def default_max_m(bundle: Bundle) -> int | None:
    """Largest m before every table stabilizes: hdim for cat-like tables,
    twice that for tc tables."""
    cands = []
    for s in bundle.spaces.values():
        if s.hdim is not None:
            cands.append(2 * s.hdim)
    for f in bundle.fibrations.values():
        if f.base.hdim is not None:
            cands.append(f.base.hdim)
    for p in bundle.map_pairs.values():
        if p.domain.hdim is not None:
            cands.append(p.domain.hdim)
    return max(max(cands), 1) if cands else None


def compute_tables(bundle, max_m=None, use_literature=True, targets=None):
    """Compute all bound tables of a bundle.

    ``targets`` optionally limits cup-length lower-bound evaluation to the
    named ``(invariant, name)`` tables (plus everything whose lower bounds
    can reach them); upper bounds are always complete, so unlisted tables
    stay sound but may be wider than a full run would make them.
    """
    return _Engine(bundle, max_m, use_literature, targets).run()


# ---------------------------------------------------------------------------


class _Engine:
    def __init__(self, bundle, max_m, use_literature, targets):
        self.bundle = bundle
        self.use_literature = use_literature
        self.requested = set(targets) if targets is not None else None
        self.space_name: dict[int, str] = {}
        self.fib_name: dict[int, str] = {}
        self.pair_name: dict[int, str] = {}
        self.tables: dict[tuple[str, str], BoundTable] = {}
        self.max_m = max_m
        self._tensor_cache: dict[str, tuple] = {}
        self._value_cache: dict = {}

    # -- registration -------------------------------------------------------
    def _register(self):
        b = self.bundle
        for name, s in list(b.spaces.items()):
            self.space_name[id(s)] = name
        for name, f in list(b.fibrations.items()):
            self.fib_name[id(f)] = name
        for name, p in list(b.map_pairs.items()):
            self.pair_name[id(p)] = name

        def fresh(hint):
            name = hint
            k = 2
            while name in b.spaces or name in b.fibrations or name in b.map_pairs:
                name = f"{hint}~{k}"
                k += 1
            return name

        def ensure_space(model, hint):
            if id(model) in self.space_name:
                return
            name = fresh(hint)
            b.spaces[name] = model
            self.space_name[id(model)] = name
            walk_space(name, model)

        def walk_space(name, model):
            if model.factors:
                for i, f in enumerate(model.factors):
                    ensure_space(f, f"{name}.factor{i + 1}")
            if model.square is not None:
                ensure_space(model.square, f"{name}.square")

        def ensure_fibration(model, hint):
            if id(model) in self.fib_name:
                return
            name = fresh(hint)
            b.fibrations[name] = model
            self.fib_name[id(model)] = name
            walk_fibration(name, model)

        def walk_fibration(name, model):
            ensure_space(model.base, f"{name}.base")
            if model.factors:
                for i, f in enumerate(model.factors):
                    ensure_fibration(f, f"{name}.factor{i + 1}")

        def ensure_pair(model, hint):
            if id(model) in self.pair_name:
                return
            name = fresh(hint)
            b.map_pairs[name] = model
            self.pair_name[id(model)] = name
            walk_pair(name, model)

        def walk_pair(name, model):
            ensure_space(model.domain, f"{name}.domain")
            ensure_space(model.codomain, f"{name}.codomain")
            if model.triangle is not None:
                left, right = model.triangle
                ensure_pair(left, f"{name}.left")
                ensure_pair(right, f"{name}.right")

        for name, s in list(b.spaces.items()):
            walk_space(name, s)
        for name, f in list(b.fibrations.items()):
            walk_fibration(name, f)
        for name, p in list(b.map_pairs.items()):
            walk_pair(name, p)

    # -- helpers -------------------------------------------------------------
    def t(self, inv, name) -> BoundTable:
        return self.tables[(inv, name)]

    def sname(self, model) -> str:
        return self.space_name[id(model)]

    def _tensor(self, space_name):
        """Tensor square and zero-divisor kernel of a space, cached."""
        if space_name not in self._tensor_cache:
            A = self.bundle.spaces[space_name].algebra
            T, _, _ = tensor_square(A)
            _, mu = multiplication_morphism(A, T)
            self._tensor_cache[space_name] = (T, kernel(mu))
        return self._tensor_cache[space_name]

    # -- main ----------------------------------------------------------------
    def run(self):
        self._register()
        if self.max_m is None:
            self.max_m = default_max_m(self.bundle)
            if self.max_m is None:
                raise ValueError(
                    "no model has a known hdim; pass max_m explicitly"
                )
        M = self.max_m
        b = self.bundle
        for name in b.spaces:
            self.tables[("cat", name)] = BoundTable("cat", name, M)
            self.tables[("tc", name)] = BoundTable("tc", name, M)
        for name in b.fibrations:
            self.tables[("secat", name)] = BoundTable("secat", name, M)
        for name in b.map_pairs:
            self.tables[("dm", name)] = BoundTable("dm", name, M)
            self.tables[("hdm", name)] = BoundTable("hdm", name, M)

        self._apply_static()
        self._apply_lower_bounds()

        rules = [
            self._r_monotone,
            self._r_classical,
            self._r_secat_cat,
            self._r_dim_recovery,
            self._r_skeletal,
            self._r_stabilize,
            self._r_pi_vanish,
            self._r_products,
            self._r_dm_cat_tc,
            self._r_hdm_dm,
            self._r_triangle,
            self._r_cat_tc,
            self._r_tc_2cat,
            self._r_hspace,
            self._r_const_pair,
        ]
        changed = True
        while changed:
            changed = False
            for rule in rules:
                if rule():
                    changed = True
        return self.tables

    # -- static narrowing (metadata and literature axioms) --------------------
    def _apply_static(self):
        b = self.bundle
        for name, s in b.spaces.items():
            cat = self.t("cat", name)
            for m in cat.finite_ms():
                if m <= s.conn:
                    cat.lower_hi(m, 0, "conn_vanishing",
                                 f"{s.conn}-connected forces 0 at m <= {s.conn}")
            if self.use_literature:
                if s.known_cat is not None:
                    self._pin(cat, s.known_cat)
                if s.known_tc is not None:
                    self._pin(self.t("tc", name), s.known_tc)
        for name, f in b.fibrations.items():
            if self.use_literature and f.known_secat is not None:
                self._pin(self.t("secat", name), f.known_secat)
        for name, p in b.map_pairs.items():
            dm = self.t("dm", name)
            if self.use_literature and p.known_d is not None:
                self._pin(dm, p.known_d)
            if p.homotopic:
                for m in dm.index:
                    dm.lower_hi(m, 0, "homotopic_zero",
                                "the two maps are declared homotopic")
            # dimension-connectivity cap, active where the codomain's higher
            # homotopy vanishes
            d0 = p.codomain.pi_vanish_from
            hx = p.domain.hdim
            cy = p.codomain.conn
            if d0 is not None and hx is not None:
                bound = -(-(hx + 1) // (cy + 1)) - 1  # strict rational bound
                for m in dm.finite_ms():
                    if d0 <= m + 1:
                        dm.lower_hi(m, bound, "dim_conn_cap",
                                    f"< (hdim {hx}+1)/(conn {cy}+1)")

    def _pin(self, table, value):
        table.raise_lo(INF, value, "literature", f"recorded classical value {value}")
        table.lower_hi(INF, value, "literature", f"recorded classical value {value}")

    # -- cup-length lower bounds ----------------------------------------------
    def _lower_targets(self):
        """Tables that need cup-length lower bounds: the requested ones plus
        everything whose lower bounds can flow into them."""
        if self.requested is None:
            return set(self.tables)
        b = self.bundle
        seen = set()
        todo = [k for k in self.requested if k in self.tables]
        while todo:
            key = todo.pop()
            if key in seen:
                continue
            seen.add(key)
            inv, name = key
            deps = []
            if inv == "cat":
                space = b.spaces[name]
                for fname, f in b.fibrations.items():
                    if f.base is space:
                        deps.append(("secat", fname))
                if space.h_space_with_division:
                    deps.append(("tc", name))
                for pname, p in b.map_pairs.items():
                    if self._const_identity_pattern(p) and p.domain is space:
                        deps.append(("dm", pname))
            elif inv == "tc":
                deps.append(("cat", name))
            elif inv == "secat":
                f = b.fibrations[name]
                if f.total_contractible:
                    deps.append(("cat", self.sname(f.base)))
            elif inv == "dm":
                deps.append(("hdm", name))
                p = b.map_pairs[name]
                if self._const_identity_pattern(p):
                    deps.append(("cat", self.sname(p.domain)))
            todo.extend(d for d in deps if d not in seen)
        return seen

    @staticmethod
    def _const_identity_pattern(p: MapPairModel) -> bool:
        return (p.gstar.is_augmentation() and p.fstar.is_identity()) or (
            p.fstar.is_augmentation() and p.gstar.is_identity()
        )

    def _apply_lower_bounds(self):
        for key in sorted(self._lower_targets()):
            inv, name = key
            table = self.tables[key]
            source = self._lower_source(inv, name)
            table.lower_bounds_applied = True
            if source is None:
                continue
            algebra, generators, what = source
            if generators.is_zero():
                continue
            degmax = max(generators.degrees())
            values = self._capped_values(key, algebra, generators)
            for m in table.index:
                eff = degmax if m == INF else min(m, degmax)
                length, cert = values(eff)
                if length > 0:
                    table.raise_lo(
                        m, length, "cup_length",
                        f"{length} classes of degree <= {eff} from {what} "
                        f"with nonzero product",
                        certificate=cert,
                    )

    def _lower_source(self, inv, name):
        """(algebra, generator subspace, description) feeding a table's
        cup-length lower bound, or None when it does not apply."""
        b = self.bundle
        if inv == "cat":
            alg = b.spaces[name].algebra
            return alg, Subspace.positive_part(alg), "H^+"
        if inv == "tc":
            space = b.spaces[name]
            if not space.algebra.coeff.is_field:
                return None
            T, ck = self._tensor(name)
            return T, ck, "ker(cup)"
        if inv == "secat":
            f = b.fibrations[name]
            return f.base.algebra, kernel(f.pstar), "ker(pullback)"
        if inv == "hdm":
            p = b.map_pairs[name]
            return (
                p.domain.algebra,
                image_difference(p.fstar, p.gstar),
                "im(f* - g*)",
            )
        if inv == "dm":
            p = b.map_pairs[name]
            if not p.codomain.algebra.coeff.is_field:
                return None
            cod_name = self.sname(p.codomain)
            T, ck = self._tensor(cod_name)
            fg = _pair_pullback(p, T)
            return p.domain.algebra, pushforward_span(fg, ck), "pushed ker(cup)"
        return None

    def _capped_values(self, key, algebra, generators):
        """Memoized cap -> (length, certificate), with a shortcut: when the
        smallest and largest caps agree the whole range is constant."""
        cache = self._value_cache.setdefault(key, {})
        degs = generators.degrees()
        degmax = max(degs)
        caps = sorted({min(m, degmax) for m in range(1, self.max_m + 1)} | {degmax})

        def compute(eff):
            if eff not in cache:
                cache[eff] = capped_cuplength(
                    CupLengthQuery(algebra, generators, eff)
                )
            return cache[eff]

        lo_val = compute(caps[0])
        hi_val = compute(caps[-1])
        if lo_val[0] == hi_val[0]:
            for c in caps:
                cache.setdefault(c, lo_val)

        def get(eff):
            return compute(eff)

        return get

    # -- dynamic rules ---------------------------------------------------------
    def _r_monotone(self):
        ch = False
        for tab in self.tables.values():
            for m in range(1, tab.max_m):
                ch |= tab.raise_lo(m + 1, tab.lo(m), "monotone_m",
                                   f"at least the m={m} entry")
                ch |= tab.lower_hi(m, tab.hi(m + 1), "monotone_m",
                                   f"at most the m={m + 1} entry")
        return ch

    def _r_classical(self):
        ch = False
        for tab in self.tables.values():
            for m in tab.finite_ms():
                ch |= tab.raise_lo(INF, tab.lo(m), "classical_cap",
                                   f"dominates the m={m} entry")
                ch |= tab.lower_hi(m, tab.hi(INF), "classical_cap",
                                   "at most the classical value")
        return ch

    def _r_secat_cat(self):
        ch = False
        for name, f in self.bundle.fibrations.items():
            s = self.t("secat", name)
            c = self.t("cat", self.sname(f.base))
            base = self.sname(f.base)
            for m in s.index:
                ch |= s.lower_hi(m, c.hi(m), "secat_le_cat_base",
                                 f"at most cat[{base}]")
                ch |= c.raise_lo(m, s.lo(m), "secat_le_cat_base",
                                 f"at least secat[{name}]")
                if f.total_contractible:
                    ch |= self._equalize(s, m, c, m, "secat_eq_cat_contractible",
                                         "contractible total space")
        return ch

    def _dim_param(self, inv, name):
        b = self.bundle
        if inv == "cat":
            return b.spaces[name].hdim
        if inv == "tc":
            h = b.spaces[name].hdim
            return None if h is None else 2 * h
        if inv == "secat":
            return b.fibrations[name].base.hdim
        if inv == "dm":
            return b.map_pairs[name].domain.hdim
        return None

    def _r_dim_recovery(self):
        ch = False
        for (inv, name), tab in self.tables.items():
            dim = self._dim_param(inv, name)
            if dim is None:
                continue
            for m in tab.finite_ms():
                gap = dim // (m + 1)
                hi = tab.hi(m)
                if hi is not None:
                    ch |= tab.lower_hi(INF, hi + gap, "dim_recovery",
                                       f"m={m} entry + floor({dim}/{m + 1})")
                ch |= tab.raise_lo(m, tab.lo(INF) - gap, "dim_recovery",
                                   f"classical entry - floor({dim}/{m + 1})")
        return ch

    def _r_skeletal(self):
        ch = False
        for (inv, name), tab in self.tables.items():
            if inv == "hdm":
                continue
            dim = self._dim_param(inv, name)  # already doubled for tc
            if dim is None:
                continue
            idx = dim - 1
            if idx < 1 or idx > tab.max_m:
                continue
            hi = tab.hi(idx)
            if hi is not None:
                ch |= tab.lower_hi(INF, max(hi, 2), "skeletal_cap",
                                   f"max of the m={idx} entry and 2")
        return ch

    def _r_stabilize(self):
        ch = False
        for (inv, name), tab in self.tables.items():
            dim = self._dim_param(inv, name)
            if dim is None:
                continue
            for m in tab.finite_ms():
                if m >= dim:
                    ch |= self._equalize(tab, m, tab, INF, "stabilize",
                                         f"stable from m >= {dim}")
        return ch

    def _r_pi_vanish(self):
        ch = False
        b = self.bundle
        for name, s in b.spaces.items():
            if s.pi_vanish_from is None:
                continue
            d0 = s.pi_vanish_from
            for inv in ("cat", "tc"):
                tab = self.t(inv, name)
                for m in tab.finite_ms():
                    if d0 <= m + 1:
                        ch |= self._equalize(
                            tab, m, tab, INF, "pi_vanishing_eq",
                            f"homotopy vanishes from degree {d0}")
        for name, p in b.map_pairs.items():
            d0 = p.codomain.pi_vanish_from
            if d0 is None:
                continue
            tab = self.t("dm", name)
            for m in tab.finite_ms():
                if d0 <= m + 1:
                    ch |= self._equalize(
                        tab, m, tab, INF, "pi_vanishing_eq",
                        f"codomain homotopy vanishes from degree {d0}")
        for name, f in b.fibrations.items():
            d0 = f.fiber_pi_vanish_from
            if d0 is None:
                continue
            tab = self.t("secat", name)
            for m in tab.finite_ms():
                if d0 <= m:
                    ch |= self._equalize(
                        tab, m, tab, INF, "pi_vanishing_eq",
                        f"fiber homotopy vanishes from degree {d0}")
        return ch

    def _r_products(self):
        ch = False
        b = self.bundle
        for name, s in b.spaces.items():
            if not s.factors:
                continue
            fnames = [self.sname(f) for f in s.factors]
            for inv in ("cat", "tc"):
                tab = self.t(inv, name)
                for m in tab.index:
                    parts = [self.t(inv, fn).hi(m) for fn in fnames]
                    if any(p is None for p in parts):
                        continue
                    ch |= tab.lower_hi(m, sum(parts), "product_subadd",
                                       f"sum over factors {fnames}")
        for name, f in b.fibrations.items():
            if not f.factors:
                continue
            fnames = [self.fib_name[id(x)] for x in f.factors]
            tab = self.t("secat", name)
            for m in tab.index:
                parts = [self.t("secat", fn).hi(m) for fn in fnames]
                if any(p is None for p in parts):
                    continue
                ch |= tab.lower_hi(m, sum(parts), "product_subadd",
                                   f"sum over factors {fnames}")
        return ch

    def _r_dm_cat_tc(self):
        ch = False
        for name, p in self.bundle.map_pairs.items():
            dm = self.t("dm", name)
            cdom = self.t("cat", self.sname(p.domain))
            tcod = self.t("tc", self.sname(p.codomain))
            for m in dm.index:
                ch |= dm.lower_hi(m, cdom.hi(m), "dm_le_cat_domain",
                                  f"at most cat[{cdom.target}]")
                ch |= dm.lower_hi(m, tcod.hi(m), "dm_le_tc_codomain",
                                  f"at most tc[{tcod.target}]")
        return ch

    def _r_hdm_dm(self):
        ch = False
        for name in self.bundle.map_pairs:
            dm = self.t("dm", name)
            hdm = self.t("hdm", name)
            for m in dm.index:
                ch |= dm.raise_lo(m, hdm.lo(m), "hdm_le_dm",
                                  "at least the cohomological distance")
                ch |= hdm.lower_hi(m, dm.hi(m), "hdm_le_dm",
                                   "at most the homotopic distance")
        return ch

    def _r_triangle(self):
        ch = False
        for name, p in self.bundle.map_pairs.items():
            if p.triangle is None:
                continue
            left, right = p.triangle
            dm = self.t("dm", name)
            dl = self.t("dm", self.pair_name[id(left)])
            dr = self.t("dm", self.pair_name[id(right)])
            for m in dm.index:
                hl, hr = dl.hi(m), dr.hi(m)
                if hl is None or hr is None:
                    continue
                ch |= dm.lower_hi(m, hl + hr, "triangle",
                                  f"through {dl.target} and {dr.target}")
        return ch

    def _r_cat_tc(self):
        ch = False
        for name in self.bundle.spaces:
            cat = self.t("cat", name)
            tc = self.t("tc", name)
            for m in cat.index:
                ch |= tc.raise_lo(m, cat.lo(m), "cat_le_tc", "at least cat")
                ch |= cat.lower_hi(m, tc.hi(m), "cat_le_tc", "at most tc")
        return ch

    def _r_tc_2cat(self):
        ch = False
        for name, s in self.bundle.spaces.items():
            cat = self.t("cat", name)
            tc = self.t("tc", name)
            for m in tc.index:
                hi = cat.hi(m)
                if hi is not None:
                    ch |= tc.lower_hi(m, 2 * hi, "tc_le_2cat", "at most twice cat")
            if s.square is not None:
                csq = self.t("cat", self.sname(s.square))
                for m in tc.index:
                    ch |= tc.lower_hi(m, csq.hi(m), "tc_le_cat_square",
                                      f"at most cat[{csq.target}]")
        return ch

    def _r_hspace(self):
        ch = False
        for name, s in self.bundle.spaces.items():
            if not s.h_space_with_division:
                continue
            cat = self.t("cat", name)
            tc = self.t("tc", name)
            for m in cat.index:
                ch |= self._equalize(tc, m, cat, m, "h_space_eq",
                                     "H-space with division")
        return ch

    def _r_const_pair(self):
        ch = False
        for name, p in self.bundle.map_pairs.items():
            aug_g, aug_f = p.gstar.is_augmentation(), p.fstar.is_augmentation()
            if not (aug_g or aug_f):
                continue
            other = p.fstar if aug_g else p.gstar
            dm = self.t("dm", name)
            cdom = self.t("cat", self.sname(p.domain))
            ccod = self.t("cat", self.sname(p.codomain))
            if other.is_identity():
                for m in dm.index:
                    ch |= self._equalize(dm, m, cdom, m, "const_vs_identity",
                                         "distance to a constant map equals cat")
            else:
                for m in dm.index:
                    ch |= dm.lower_hi(m, cdom.hi(m), "const_pair_cap",
                                      f"at most cat[{cdom.target}]")
                    ch |= dm.lower_hi(m, ccod.hi(m), "const_pair_cap",
                                      f"at most cat[{ccod.target}]")
        return ch

    def _equalize(self, ta, ma, tb, mb, rule, detail):
        ch = False
        ch |= ta.raise_lo(ma, tb.lo(mb), rule, detail)
        ch |= tb.raise_lo(mb, ta.lo(ma), rule, detail)
        ch |= ta.lower_hi(ma, tb.hi(mb), rule, detail)
        ch |= tb.lower_hi(mb, ta.hi(ma), rule, detail)
        return ch


def _pair_pullback(p: MapPairModel, T) -> RingMorphism:
    """The induced map of (f, g) on the codomain tensor square:
    a (x) b  ->  f*(a) * g*(b)."""
    X = p.domain.algebra
    dom = X.coeff
    mats = {}
    for d in range(T.top_degree + 1):
        rows = []
        for (dl, il, dr, ir) in T.kunneth_pairs[d]:
            fv = p.fstar.mats[dl][il]
            gv = p.gstar.mats[dr][ir]
            prod = X.mul_vectors(dl, fv, dr, gv)
            rows.append(prod if prod is not None else vzero(dom, X.dim(d)))
        mats[d] = tuple(rows)
    return RingMorphism(T, X, mats, validate=False)


# ---------------------------------------------------------------------------
# standalone lower-bound operations
# ---------------------------------------------------------------------------

def cat_lower(space: SpaceModel, cap: int | None) -> int:
    """Cup-length of the positive-degree classes, capped by degree."""
    alg = space.algebra
    length, _ = capped_cuplength(
        CupLengthQuery(alg, Subspace.positive_part(alg), cap)
    )
    return length


def tc_lower(space: SpaceModel, cap: int | None) -> int:
    """Zero-divisor cup-length, capped; field coefficients only."""
    ck = cup_kernel(space.algebra)
    length, _ = capped_cuplength(CupLengthQuery(ck.algebra, ck, cap))
    return length


def secat_lower(fib: FibrationModel, cap: int | None) -> int:
    """Cup-length of the pullback kernel, capped."""
    ker = kernel(fib.pstar)
    length, _ = capped_cuplength(CupLengthQuery(fib.base.algebra, ker, cap))
    return length


def hdm_lower(pair: MapPairModel, cap: int | None) -> int:
    """Cup-length of the image of f* - g*, capped."""
    span = image_difference(pair.fstar, pair.gstar)
    length, _ = capped_cuplength(CupLengthQuery(pair.domain.algebra, span, cap))
    return length


def dm_lower(pair: MapPairModel, cap: int | None) -> int:
    """Best of the pushed zero-divisor bound (field coefficients) and the
    pullback-difference bound."""
    best = hdm_lower(pair, cap)
    if pair.codomain.algebra.coeff.is_field:
        Y = pair.codomain.algebra
        T, _, _ = tensor_square(Y)
        _, mu = multiplication_morphism(Y, T)
        pushed = pushforward_span(_pair_pullback(pair, T), kernel(mu))
        length, _ = capped_cuplength(
            CupLengthQuery(pair.domain.algebra, pushed, cap)
        )
        best = max(best, length)
    return best
