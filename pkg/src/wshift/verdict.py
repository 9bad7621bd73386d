"""Horizon-bounded verdicts shared by all positivity tests."""

from __future__ import annotations

from dataclasses import dataclass, field

from .numerics.rational import fmt_q

HOLDS = "holds"
HOLDS_UP_TO = "holds_up_to"
FAILS = "fails"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a test over indices 0..N.

    ``status`` is "holds_up_to" (no violation up to the horizon N, not a
    proof for all n), "holds" (certified for every n), "fails" (``n`` is
    the least violating index) or "unknown".
    """

    status: str
    N: int | None = None
    n: int | None = None
    i: int | None = None
    witness: object = None
    witness_name: str = "witness"
    detail: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.status in (HOLDS, HOLDS_UP_TO)

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    def __bool__(self):
        return self.holds

    @classmethod
    def ok(cls, N=None, **kw) -> Verdict:
        return cls(HOLDS_UP_TO if N is not None else HOLDS, N=N, **kw)

    @classmethod
    def fail(cls, n=None, **kw) -> Verdict:
        return cls(FAILS, n=n, **kw)

    def certified(self, detail: str = "") -> Verdict:
        return Verdict(HOLDS, N=self.N, detail=detail or self.detail, extra=self.extra)

    def to_json(self) -> dict:
        out = {"verdict": self.status}
        if self.N is not None:
            out["N"] = self.N
        if self.n is not None:
            out["n"] = self.n
        if self.i is not None:
            out["i"] = self.i
        if self.witness is not None:
            w = self.witness
            out[self.witness_name] = fmt_q(w) if not isinstance(w, (str, list, dict)) else w
        if self.detail:
            out["detail"] = self.detail
        for k, v in self.extra.items():
            out[k] = v
        return out
