"""Verification reports: structured pass/fail results with witnesses."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

DEFAULT_CAP = 10

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Check:
    id: str
    status: str
    instances: int
    counterexamples: list[dict] = field(default_factory=list)
    failures: int = 0
    ms: float = 0.0
    note: str | None = None

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "id": self.id,
            "status": self.status,
            "instances": self.instances,
            "failures": self.failures,
            "counterexamples": self.counterexamples,
        }
        if self.note is not None:
            d["note"] = self.note
        if timing:
            d["ms"] = round(self.ms, 3)
        return d


@dataclass
class VerificationReport:
    subject: str
    group: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def ids(self) -> list[str]:
        return [c.id for c in self.checks]

    def extend(self, other: VerificationReport) -> VerificationReport:
        self.checks.extend(other.checks)
        self.notes.update(other.notes)
        return self

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "subject": self.subject,
            "group": self.group,
            "checks": [c.to_dict(timing) for c in self.checks],
        }
        if self.notes:
            d["notes"] = self.notes
        return d

    def summary_line(self) -> str:
        n_fail = len(self.failed_checks())
        n_skip = sum(c.status == SKIPPED for c in self.checks)
        verdict = "PASS" if n_fail == 0 else "FAIL"
        inst = sum(c.instances for c in self.checks)
        extra = f", {n_skip} skipped" if n_skip else ""
        return f"{verdict} {self.subject}: {len(self.checks)} checks, {inst} instances, {n_fail} failed{extra}"

    def render_text(self) -> str:
        lines = [self.summary_line()]
        for c in self.checks:
            lines.append(f"  [{c.status:>7}] {c.id}: {c.instances} instances" +
                         (f", {c.failures} failures" if c.failures else "") +
                         (f" ({c.note})" if c.note else ""))
            for w in c.counterexamples[:3]:
                lines.append(f"            witness {json.dumps(w, ensure_ascii=False)}")
        for k, v in self.notes.items():
            lines.append(f"  note {k}: {v}")
        return "\n".join(lines)


def dumps(reports, timing: bool = True) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    if isinstance(reports, VerificationReport):
        payload = reports.to_dict(timing)
    else:
        payload = [r.to_dict(timing) for r in reports]
    return json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def canonical_form(payload) -> object:
    """Strip timing fields from a loaded JSON report (or list of them)."""
    if isinstance(payload, list):
        return [canonical_form(p) for p in payload]
    if isinstance(payload, dict):
        return {k: canonical_form(v) for k, v in payload.items() if k != "ms"}
    return payload


@contextmanager
def stopwatch():
    t0 = time.perf_counter()
    box = {}
    yield box
    box["ms"] = (time.perf_counter() - t0) * 1000.0


Axis = tuple[str, Callable[[int], str]]


def compare(
    check_id: str,
    compute: Callable[[], tuple[np.ndarray, np.ndarray]],
    axes: Sequence[Axis],
    render: Callable[[int], str],
    cap: int = DEFAULT_CAP,
) -> Check:
    """Elementwise equality check of two equally shaped arrays.

    ``axes`` names and renders each array dimension (the quantified
    variables); ``render`` formats the compared values.
    """
    with stopwatch() as sw:
        lhs, rhs = compute()
        lhs = np.asarray(lhs)
        rhs = np.broadcast_to(np.asarray(rhs), lhs.shape)
        bad = np.argwhere(lhs != rhs)
    cex = []
    for idx in bad[:cap]:
        idx = tuple(int(i) for i in idx)
        cex.append({
            "inputs": {name: fmt(i) for (name, fmt), i in zip(axes, idx)},
            "lhs": render(int(lhs[idx])),
            "rhs": render(int(rhs[idx])),
        })
    return Check(
        id=check_id,
        status=FAIL if len(bad) else PASS,
        instances=int(lhs.size),
        counterexamples=cex,
        failures=int(len(bad)),
        ms=sw["ms"],
    )


def tally(check_id: str, instances: int, failures: list[dict], total: int | None = None,
          ms: float = 0.0, cap: int = DEFAULT_CAP, note: str | None = None) -> Check:
    """Check from an explicit list of witness records."""
    total = len(failures) if total is None else total
    return Check(
        id=check_id,
        status=FAIL if total else PASS,
        instances=instances,
        counterexamples=failures[:cap],
        failures=total,
        ms=ms,
        note=note,
    )
