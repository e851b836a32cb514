"""Integer intervals per m with provenance, plus text and JSON rendering.

A bound table maps m in {1..M, inf} to an interval [lo, hi] (hi may be
unbounded).  Intervals only ever narrow; every narrowing records which rule
fired, a human-readable detail string and, for cup-length lower bounds, the
witnessing certificate.  A narrowing that would cross over raises
``InconsistentModel`` carrying both provenance chains.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "INF",
    "Interval",
    "ProvenanceEvent",
    "BoundTable",
    "InconsistentModel",
    "render_text",
    "table_to_json",
    "table_from_json",
]

INF = "inf"  # table column for the classical (uncapped) invariant


class InconsistentModel(Exception):
    """Two sound bounds crossed; the model's axioms contradict each other."""

    def __init__(self, invariant, target, m, lo_events, hi_events):
        self.invariant = invariant
        self.target = target
        self.m = m
        self.lo_events = lo_events
        self.hi_events = hi_events
        lo = lo_events[-1].value if lo_events else 0
        hi = hi_events[-1].value if hi_events else None
        super().__init__(
            f"{invariant}[{target}] at m={m}: lower bound {lo} exceeds upper "
            f"bound {hi}; lower chain: {[e.describe() for e in lo_events]}; "
            f"upper chain: {[e.describe() for e in hi_events]}"
        )


@dataclass
class ProvenanceEvent:
    rule: str
    side: str  # "lo" or "hi"
    value: int
    detail: str
    certificate: object = None

    def describe(self) -> str:
        return f"{self.rule}: {self.side} -> {self.value} ({self.detail})"

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "side": self.side,
            "value": self.value,
            "detail": self.detail,
        }
        if self.certificate is not None:
            out["certificate"] = {
                "factors": self.certificate.factor_strings(),
                "product": self.certificate.product.format(),
            }
        return out


@dataclass
class Interval:
    """Closed integer interval [lo, hi]; hi None means unbounded above."""

    lo: int = 0
    hi: int | None = None

    def is_exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    def as_pair(self) -> tuple[int, int | None]:
        return (self.lo, self.hi)

    def format(self) -> str:
        if self.is_exact():
            return f"= {self.lo}"
        if self.hi is None:
            return f"[{self.lo}, inf)"
        return f"[{self.lo}, {self.hi}]"


class BoundTable:
    """Per-m intervals for one invariant of one model, with provenance."""

    def __init__(self, invariant: str, target: str, max_m: int):
        self.invariant = invariant
        self.target = target
        self.max_m = max_m
        self.index: list = list(range(1, max_m + 1)) + [INF]
        self.entries: dict = {m: Interval() for m in self.index}
        self.events: dict = {m: [] for m in self.index}
        self.lower_bounds_applied = False

    # -- narrowing -------------------------------------------------------
    def raise_lo(self, m, value, rule, detail, certificate=None) -> bool:
        entry = self.entries[m]
        if value <= entry.lo:
            return False
        ev = ProvenanceEvent(rule, "lo", value, detail, certificate)
        self.events[m].append(ev)
        entry.lo = value
        if entry.hi is not None and entry.lo > entry.hi:
            raise InconsistentModel(
                self.invariant, self.target, m,
                [e for e in self.events[m] if e.side == "lo"],
                [e for e in self.events[m] if e.side == "hi"],
            )
        return True

    def lower_hi(self, m, value, rule, detail) -> bool:
        entry = self.entries[m]
        if value is None or (entry.hi is not None and value >= entry.hi):
            return False
        ev = ProvenanceEvent(rule, "hi", value, detail)
        self.events[m].append(ev)
        entry.hi = value
        if entry.lo > entry.hi:
            raise InconsistentModel(
                self.invariant, self.target, m,
                [e for e in self.events[m] if e.side == "lo"],
                [e for e in self.events[m] if e.side == "hi"],
            )
        return True

    # -- queries -----------------------------------------------------------
    def lo(self, m) -> int:
        return self.entries[m].lo

    def hi(self, m) -> int | None:
        return self.entries[m].hi

    def interval(self, m) -> Interval:
        return self.entries[m]

    def finite_ms(self) -> list[int]:
        return list(range(1, self.max_m + 1))

    def key(self) -> tuple[str, str]:
        return (self.invariant, self.target)


def _m_label(m) -> str:
    return "inf" if m == INF else str(m)


def render_text(table: BoundTable, ms=None, certificates=False) -> str:
    """Deterministic fixed-width text rendering of selected rows."""
    rows = ms if ms is not None else table.index
    lines = [f"{table.invariant}[{table.target}]"]
    for m in rows:
        entry = table.entries[m]
        rules = []
        for ev in table.events[m]:
            if ev.rule not in rules:
                rules.append(ev.rule)
        tag = ", ".join(rules) if rules else "-"
        lines.append(f"  m={_m_label(m):<4} {entry.format():<12} {tag}")
        if certificates:
            for ev in table.events[m]:
                if ev.certificate is not None:
                    factors = " * ".join(
                        f"({s})" for s in ev.certificate.factor_strings()
                    )
                    lines.append(
                        f"      witness: {factors} = "
                        f"{ev.certificate.product.format()}"
                    )
    return "\n".join(lines) + "\n"


def table_to_json(table: BoundTable, ms=None) -> dict:
    rows = ms if ms is not None else table.index
    entries = []
    for m in rows:
        entry = table.entries[m]
        entries.append(
            {
                "m": _m_label(m),
                "lo": entry.lo,
                "hi": entry.hi,
                "exact": entry.is_exact(),
                "provenance": [ev.to_json() for ev in table.events[m]],
            }
        )
    return {
        "invariant": table.invariant,
        "target": table.target,
        "max_m": table.max_m,
        "entries": entries,
    }


def table_from_json(data: dict) -> BoundTable:
    """Rebuild a table from its JSON form (provenance becomes opaque events)."""
    table = BoundTable(data["invariant"], data["target"], data["max_m"])
    for row in data["entries"]:
        m = INF if row["m"] == "inf" else int(row["m"])
        table.entries[m] = Interval(row["lo"], row["hi"])
        table.events[m] = [
            ProvenanceEvent(
                ev["rule"], ev["side"], ev["value"], ev["detail"],
                _OpaqueCertificate(ev["certificate"]) if "certificate" in ev else None,
            )
            for ev in row["provenance"]
        ]
    return table


class _OpaqueCertificate:
    """Round-trip stand-in for certificates parsed back from JSON."""

    def __init__(self, data: dict):
        self._factors = list(data["factors"])
        self._product = data["product"]

    def factor_strings(self):
        return list(self._factors)

    @property
    def product(self):
        class _P:
            def __init__(self, s):
                self._s = s

            def format(self):
                return self._s

        return _P(self._product)
