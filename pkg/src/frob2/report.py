"""Named check records shared by the verification pipeline and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import CERTIFIED, FAILED, INCONCLUSIVE, ZeroCert

_ORDER = (FAILED, INCONCLUSIVE, CERTIFIED)


@dataclass(frozen=True)
class Check:
    """One named identity verdict with the s-degree range it covered."""

    name: str
    status: str
    s_degree: int | None = None
    detail: str = ""

    @classmethod
    def from_cert(cls, name: str, cert: ZeroCert) -> "Check":
        return cls(name, cert.status, cert.s_degree, cert.detail)

    @classmethod
    def passed(cls, name: str, detail: str = "") -> "Check":
        return cls(name, CERTIFIED, None, detail)

    @classmethod
    def failed(cls, name: str, detail: str = "") -> "Check":
        return cls(name, FAILED, None, detail)

    @property
    def ok(self) -> bool:
        return self.status == CERTIFIED

    def as_dict(self) -> dict:
        d = {"name": self.name, "status": self.status}
        if self.s_degree is not None:
            d["s_degree"] = self.s_degree
        if self.detail:
            d["detail"] = self.detail
        return d


def overall_status(checks) -> str:
    """Worst status wins: failed > inconclusive > certified."""
    status = CERTIFIED
    for c in checks:
        if _ORDER.index(c.status) < _ORDER.index(status):
            status = c.status
    return status
