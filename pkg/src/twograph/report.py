"""JSON reports written by the command line tools."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

from . import __version__
from .periodicity import (DegeneratePeriod, NoCandidates, NotPeriodic, Periodic,
                          SampledPass, UndecidedUpToBound)

GAMMA_CAP = 4096  # larger gamma tables are summarised by their size only


@dataclass
class Report:
    command: list
    theta: Optional[dict] = None
    verdict: Optional[str] = None
    period: Optional[list] = None
    gamma: Optional[dict] = None
    witness: Optional[dict] = None
    certificate: Optional[dict] = None
    symmetries: Optional[dict] = None
    seed: Optional[int] = None
    elapsed_ms: float = 0.0
    version: str = __version__
    message: str = ""
    extra: dict = field(default_factory=dict)

    def to_json(self, indent=2) -> str:
        return json.dumps(asdict(self), indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown report keys {sorted(unknown)}")
        return cls(**d)

    def write(self, path):
        if path == "-":
            print(self.to_json())
        else:
            with open(path, "w") as fh:
                fh.write(self.to_json() + "\n")


def theta_info(theta):
    return {"digest": theta.digest(), "m": theta.m, "n": theta.n}


def describe_verdict(v) -> str:
    if isinstance(v, Periodic):
        return f"Periodic {v.period}: every tail is ({v.period[0]},-{v.period[1]}) periodic"
    if isinstance(v, SampledPass):
        return f"{v.describe()} at ({v.candidate.a},{v.candidate.b}); not a proof"
    if isinstance(v, NotPeriodic):
        if v.certificate is not None:
            c = v.certificate
            return (f"NotPeriodic: {c.side} composition {list(c.word)} maps "
                    f"B = {sorted(c.B)} onto itself")
        how = "sampled" if v.sampled else "exhaustive"
        return (f"NotPeriodic at ({v.candidate.a},{v.candidate.b}) "
                f"({how}, witness kind {v.witness.kind})")
    if isinstance(v, UndecidedUpToBound):
        s = f"Undecided: no period among {list(v.tested)}"
        if v.evidence is not None:
            s += f"; {v.evidence.describe()} at ({v.evidence.candidate.a},{v.evidence.candidate.b})"
        return s
    if isinstance(v, DegeneratePeriod):
        return f"DegeneratePeriod {v.period}"
    if isinstance(v, NoCandidates):
        return f"NoCandidates: no a, b with {v.m}^a = {v.n}^b"
    return str(v)


def fill_verdict(report: Report, v):
    """Copy the verdict fields into the report."""
    report.verdict = v.tag
    report.message = describe_verdict(v)
    if isinstance(v, Periodic):
        report.period = list(v.period)
        if len(v.gamma) <= GAMMA_CAP:
            report.gamma = v.gamma.to_dict()
        else:
            report.extra["gamma_size"] = len(v.gamma)
    elif isinstance(v, DegeneratePeriod):
        report.period = list(v.period)
    elif isinstance(v, NotPeriodic):
        if v.candidate is not None:
            report.period = [v.candidate.a, v.candidate.b]
        if v.witness is not None:
            report.witness = v.witness.to_dict()
        if v.certificate is not None:
            report.certificate = v.certificate.to_dict()
    elif isinstance(v, SampledPass):
        report.period = [v.candidate.a, v.candidate.b]
        report.seed = v.seed
        report.extra["samples"] = v.count
    elif isinstance(v, UndecidedUpToBound):
        report.extra["tested"] = [list(t) for t in v.tested]
        if v.evidence is not None:
            report.seed = v.evidence.seed
            report.extra["samples"] = v.evidence.count
    return report
