"""Manufacturer-failure sweeps and average two-terminal availability (ATTA)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .topology import Flow, Topology, components


@dataclass(frozen=True, order=True)
class FailureScenario:
    failed: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "failed", tuple(sorted(set(self.failed))))
        if not self.failed:
            raise ValueError("a failure scenario needs at least one manufacturer")

    @property
    def label(self) -> str:
        return "-".join(map(str, self.failed))

    def __len__(self):
        return len(self.failed)


def failure_combinations(m: int) -> list[FailureScenario]:
    """Every non-empty proper subset of ``range(m)``, by size then lexicographically."""
    if m < 2:
        raise ValueError("need at least two manufacturers to fail a proper subset")
    return [FailureScenario(c) for r in range(1, m) for c in combinations(range(m), r)]


def atta(
    t: Topology,
    flows: Sequence[Flow],
    a: Mapping[str, int],
    s: FailureScenario,
    survivors_only: bool = False,
) -> Fraction:
    """Fraction of ``flows`` still connected once every node of a failed
    manufacturer is down.

    By default a flow with a failed endpoint counts as lost, so the
    denominator is the fixed flow set. With ``survivors_only`` such flows are
    dropped from the denominator instead (0 when no flow survives); this
    variant is not monotone along nested failure sets.
    """
    if not flows:
        raise ValueError("no flows")
    dead = set(s.failed)
    label = components(t, (v for v in t.nodes if a[v] not in dead))
    live = [f for f in flows if f.src in label and f.dst in label]
    ok = sum(1 for f in live if label[f.src] == label[f.dst])
    if survivors_only:
        return Fraction(ok, len(live)) if live else Fraction(0)
    return Fraction(ok, len(flows))


@dataclass(frozen=True)
class AttaReport:
    rows: tuple[tuple[FailureScenario, Fraction], ...]

    @property
    def groups(self) -> dict[int, list[tuple[FailureScenario, Fraction]]]:
        """Rows keyed by failure count, each group sorted by descending ATTA."""
        out: dict[int, list] = {}
        for s, x in self.rows:
            out.setdefault(len(s), []).append((s, x))
        return {k: sorted(v, key=lambda r: (-r[1], r[0])) for k, v in sorted(out.items())}

    def worst(self, failed_count: int) -> Fraction:
        return min(x for s, x in self.rows if len(s) == failed_count)

    @property
    def fully_sovereign(self) -> bool:
        return all(x == 1 for _, x in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scenario", "failed_count", "fraction"])
        for s, x in self.rows:
            w.writerow([s.label, len(s), f"{float(x):.6f}"])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "fully_sovereign": self.fully_sovereign,
            "groups": {
                str(k): [{"scenario": s.label, "fraction": float(x)} for s, x in rows]
                for k, rows in self.groups.items()
            },
        }
        return json.dumps(doc, indent=1)


def full_sweep(
    t: Topology, flows: Sequence[Flow], a: Mapping[str, int], m: int, survivors_only: bool = False
) -> AttaReport:
    return AttaReport(tuple((s, atta(t, flows, a, s, survivors_only)) for s in failure_combinations(m)))
