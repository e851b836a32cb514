"""Built-in golden bundles: worked examples with published values.

Each case builds a bundle, names the tables it checks, and lists the exact
expected intervals.  ``run_suite`` recomputes everything and diffs; it backs
both the ``paper-suite`` CLI command and the acceptance tests.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .domains import Q, Z, GF
from .algebra import RingMorphism
from .engine import Bundle, compute_tables
from .spaces import (
    FibrationModel,
    MapPairModel,
    complex_projective,
    moore,
    nonorientable_surface,
    orientable_surface,
    product,
    real_projective,
    sphere,
)
from .tables import INF

__all__ = ["GoldenCase", "all_cases", "evaluate_case", "run_suite"]


@dataclass
class GoldenCase:
    name: str
    build: object  # () -> (Bundle, targets, expected)
    # expected: {(invariant, target): {m: (lo, hi)}}


def _fill(ms, value) -> dict:
    """Constant expectations over the given ms; ints mean an exact value."""
    pair = value if isinstance(value, tuple) else (value, value)
    return {m: pair for m in ms}


def _rng(a, b):
    return list(range(a, b + 1))


# ---------------------------------------------------------------------------
# case builders
# ---------------------------------------------------------------------------

def _case_projective_cat():
    bundle = Bundle()
    targets, expected = [], {}
    for n in range(2, 9):
        name = f"rp{n}"
        bundle.add_space(name, real_projective(n))
        key = ("cat", name)
        targets.append(key)
        expected[key] = _fill(_rng(1, n) + [INF], n)
    return bundle, targets, expected


def _case_sphere_product_cat():
    bundle = Bundle()
    s1, s2, s3, s4 = sphere(1), sphere(2), sphere(3), sphere(4)
    s5, s6 = sphere(5), sphere(6)
    for nm, s in [("s1", s1), ("s2", s2), ("s3", s3), ("s4", s4), ("s5", s5), ("s6", s6)]:
        bundle.add_space(nm, s)
    bundle.add_space("s24", product([s2, s4]))
    bundle.add_space("s13", product([s1, s3]))
    bundle.add_space("s356", product([s3, s5, s6]))
    expected = {
        ("cat", "s24"): {1: (0, 0), 2: (1, 1), 3: (1, 1), 4: (2, 2),
                         5: (2, 2), 6: (2, 2), INF: (2, 2)},
        ("cat", "s13"): {1: (1, 1), 2: (1, 1), 3: (2, 2), 4: (2, 2),
                         INF: (2, 2)},
        ("cat", "s356"): {1: (0, 0), 2: (0, 0), 3: (1, 1), 4: (1, 1),
                          5: (2, 2), 6: (3, 3), 7: (3, 3), INF: (3, 3)},
    }
    return bundle, list(expected), expected


def _case_complex_projective_tc():
    bundle = Bundle()
    expected = {}
    for n in (1, 2, 3):
        name = f"cp{n}"
        bundle.add_space(name, complex_projective(n))
        expected[("tc", name)] = {1: (0, 0), INF: (2 * n, 2 * n)}
        expected[("tc", name)].update(_fill(_rng(2, 2 * n + 1), 2 * n))
    return bundle, list(expected), expected


def _case_sphere_product_tc():
    bundle = Bundle()
    s1, s2, s3, s4 = sphere(1), sphere(2), sphere(3), sphere(4)
    for nm, s in [("s1", s1), ("s2", s2), ("s3", s3), ("s4", s4)]:
        bundle.add_space(nm, s)
    bundle.add_space("s24", product([s2, s4]))
    bundle.add_space("s13", product([s1, s3]))
    expected = {
        ("tc", "s24"): {1: (0, 0), 2: (2, 2), 3: (2, 2), 4: (4, 4),
                        5: (4, 4), 8: (4, 4), 12: (4, 4), INF: (4, 4)},
        ("tc", "s13"): {1: (1, 1), 2: (1, 1), 3: (2, 2), 4: (2, 2),
                        8: (2, 2), INF: (2, 2)},
    }
    return bundle, list(expected), expected


def _case_projective_tc():
    bundle = Bundle()
    values = {2: 3, 3: 3, 4: 7, 7: 7}
    expected = {}
    for n, v in values.items():
        name = f"rp{n}"
        bundle.add_space(name, real_projective(n))
        expected[("tc", name)] = _fill(_rng(1, 4) + [2 * n, INF], v)
    return bundle, list(expected), expected


def _case_moore():
    bundle = Bundle()
    bundle.add_space("m23q", moore(2, 3, Q))
    bundle.add_space("m13q", moore(1, 3, Q))
    bundle.add_space("m24q", moore(2, 4, Q))
    expected = {
        ("cat", "m23q"): {1: (0, 0), 2: (0, 0), 3: (1, 1), 4: (1, 1),
                          6: (1, 1), INF: (1, 1)},
        # odd-degree rank-one case: the published value is "1 or 2" and the
        # tables must stay honestly at [1, 2]
        ("tc", "m13q"): {1: (0, 0), 2: (0, 0), 3: (1, 2), 4: (1, 2),
                         6: (1, 2), INF: (1, 2)},
        ("tc", "m24q"): {1: (0, 0), 3: (0, 0), 4: (2, 2), 6: (2, 2),
                         8: (2, 2), INF: (2, 2)},
    }
    return bundle, list(expected), expected


def _case_surfaces():
    bundle = Bundle()
    bundle.add_space("sigma1", orientable_surface(1))
    bundle.add_space("sigma2", orientable_surface(2))
    bundle.add_space("sigma3", orientable_surface(3))
    bundle.add_space("n2", nonorientable_surface(2))
    bundle.add_space("n3", nonorientable_surface(3))
    ms = _rng(1, 4) + [INF]
    expected = {
        ("cat", "sigma1"): _fill(ms, 2),
        ("tc", "sigma1"): _fill(ms, 2),
        ("cat", "sigma2"): _fill(ms, 2),
        ("tc", "sigma2"): _fill(ms, 4),
        ("cat", "sigma3"): _fill(ms, 2),
        ("tc", "sigma3"): _fill(ms, 4),
        ("cat", "n2"): _fill(ms, 2),
        ("tc", "n2"): _fill(ms, 4),
        ("cat", "n3"): _fill(ms, 2),
        ("tc", "n3"): _fill(ms, 4),
    }
    return bundle, list(expected), expected


def covering_fibration(n: int) -> tuple:
    """The double cover of real projective n-space: every positive class
    pulls back to zero."""
    base = real_projective(n)
    total = sphere(n, GF(2)).algebra
    pstar = RingMorphism.augmentation(base.algebra, total)
    fib = FibrationModel(
        base=base, total_algebra=total, pstar=pstar, fiber_pi_vanish_from=1
    )
    return base, fib


def _case_covering_secat():
    bundle = Bundle()
    expected = {}
    for n in range(2, 7):
        base, fib = covering_fibration(n)
        bundle.add_space(f"rp{n}", base)
        bundle.add_fibration(f"cover{n}", fib)
        expected[("secat", f"cover{n}")] = _fill(_rng(1, n) + [INF], n)
    return bundle, list(expected), expected


def hopf_fibration() -> tuple:
    """The circle bundle over the complex projective plane with total space
    a 5-sphere."""
    base = complex_projective(2)
    total = sphere(5, Q).algebra
    pstar = RingMorphism.augmentation(base.algebra, total)
    fib = FibrationModel(
        base=base, total_algebra=total, pstar=pstar, fiber_pi_vanish_from=2
    )
    return base, fib


def _case_hopf_secat():
    bundle = Bundle()
    base, fib = hopf_fibration()
    bundle.add_space("cp2", base)
    bundle.add_fibration("hopf", fib)
    expected = {
        ("secat", "hopf"): {1: (0, 0), 2: (2, 2), 3: (2, 2), 4: (2, 2),
                            INF: (2, 2)},
    }
    return bundle, list(expected), expected


def unitary_group_pair() -> tuple:
    """U(2) modelled as the product of a circle and a 3-sphere over Z, with
    the identity against the inversion; inversion negates both generators."""
    s1, s3 = sphere(1, Z), sphere(3, Z)
    u2 = replace(product([s1, s3]), h_space_with_division=True)
    alg = u2.algebra
    inv = RingMorphism.from_images(
        alg, alg,
        {
            "a(x)1": {"a(x)1": -1},
            "1(x)a": {"1(x)a": -1},
            "a(x)a": {"a(x)a": 1},
        },
    )
    pair = MapPairModel(
        domain=u2, codomain=u2, fstar=RingMorphism.identity(alg), gstar=inv
    )
    return s1, s3, u2, pair


def _case_unitary_distance():
    bundle = Bundle()
    s1, s3, u2, pair = unitary_group_pair()
    bundle.add_space("s1", s1)
    bundle.add_space("s3", s3)
    bundle.add_space("u2", u2)
    bundle.add_map_pair("idinv", pair)
    expected = {
        ("hdm", "idinv"): {1: (1, 1), 2: (1, 1), 3: (2, 2), 4: (2, 2),
                           8: (2, 2), INF: (2, 2)},
        ("dm", "idinv"): {1: (1, 1), 2: (1, 1), 3: (2, 2), 4: (2, 2),
                          8: (2, 2), INF: (2, 2)},
        ("cat", "u2"): {1: (1, 1), 2: (1, 1), 3: (2, 2), 4: (2, 2),
                        INF: (2, 2)},
        ("tc", "u2"): {1: (1, 1), 2: (1, 1), 3: (2, 2), 4: (2, 2),
                       INF: (2, 2)},
    }
    return bundle, list(expected), expected


def _case_sphere_tc():
    bundle = Bundle()
    bundle.add_space("s2", sphere(2))
    bundle.add_space("s3", sphere(3))
    expected = {
        ("tc", "s2"): {1: (0, 0), 2: (2, 2), 3: (2, 2), 4: (2, 2),
                       INF: (2, 2)},
        ("tc", "s3"): {1: (0, 0), 2: (0, 0), 3: (1, 1), 4: (1, 1),
                       6: (1, 1), INF: (1, 1)},
    }
    return bundle, list(expected), expected


def all_cases() -> list[GoldenCase]:
    return [
        GoldenCase("projective_cat", _case_projective_cat),
        GoldenCase("sphere_product_cat", _case_sphere_product_cat),
        GoldenCase("complex_projective_tc", _case_complex_projective_tc),
        GoldenCase("sphere_product_tc", _case_sphere_product_tc),
        GoldenCase("projective_tc", _case_projective_tc),
        GoldenCase("moore", _case_moore),
        GoldenCase("surfaces", _case_surfaces),
        GoldenCase("covering_secat", _case_covering_secat),
        GoldenCase("hopf_secat", _case_hopf_secat),
        GoldenCase("unitary_distance", _case_unitary_distance),
        GoldenCase("sphere_tc", _case_sphere_tc),
    ]


def evaluate_case(case: GoldenCase) -> tuple[list[str], dict]:
    """Compute one golden bundle; return (mismatch lines, computed tables)."""
    bundle, targets, expected = case.build()
    tables = compute_tables(bundle, targets=targets)
    mismatches = []
    for key, rows in expected.items():
        table = tables[key]
        for m, (lo, hi) in rows.items():
            got = table.interval(m)
            if (got.lo, got.hi) != (lo, hi):
                mismatches.append(
                    f"{case.name}: {key[0]}[{key[1]}] at m={m}: expected "
                    f"[{lo}, {hi}], got [{got.lo}, {got.hi}]"
                )
    return mismatches, tables


def run_suite() -> dict:
    """Evaluate every golden case and report pass/fail per case."""
    results = []
    ok = True
    for case in all_cases():
        try:
            mismatches, _ = evaluate_case(case)
        except Exception as e:  # keep the suite running across cases
            mismatches = [f"{case.name}: error: {e}"]
        results.append(
            {
                "case": case.name,
                "ok": not mismatches,
                "mismatches": mismatches,
            }
        )
        ok = ok and not mismatches
    return {"ok": ok, "cases": results}
