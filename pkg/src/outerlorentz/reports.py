"""Structured outcomes of inequality and identity checks."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

DEFAULT_TOL = 1e-9
IDENTITY_TOL = 1e-10


@dataclass
class VerificationReport:
    claim_id: str
    lhs: float
    rhs: float
    constant_used: float
    margin: float
    passed: bool
    witness: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    applicable: bool = True

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))

    def __bool__(self):
        return self.passed


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return _jsonable(obj.item())
    return obj


def relative_margin(lhs: float, bound: float) -> float:
    """(bound - lhs) scaled by the larger magnitude; 0 when both vanish."""
    scale = max(abs(lhs), abs(bound))
    if scale == 0:
        return 0.0
    if math.isinf(scale):
        if math.isinf(bound) and bound > 0 and not (math.isinf(lhs) and lhs > 0):
            return 1.0
        return 0.0 if lhs == bound else -1.0
    return (bound - lhs) / scale


def inequality(claim_id, lhs, rhs, constant=1.0, tol=DEFAULT_TOL, witness=None, **details):
    """Report for the claim ``lhs <= constant * rhs``."""
    lhs = float(lhs)
    rhs = float(rhs)
    constant = float(constant)
    bound = constant * rhs if rhs != 0 else 0.0
    margin = relative_margin(lhs, bound)
    return VerificationReport(
        claim_id=claim_id,
        lhs=lhs,
        rhs=rhs,
        constant_used=constant,
        margin=margin,
        passed=margin >= -tol,
        witness=witness or {},
        details=details,
    )


def identity(claim_id, lhs, rhs, tol=IDENTITY_TOL, witness=None, **details):
    """Report for ``lhs == rhs`` up to relative tolerance."""
    lhs = float(lhs)
    rhs = float(rhs)
    diff = -abs(relative_margin(lhs, rhs)) if lhs != rhs else 0.0
    return VerificationReport(
        claim_id=claim_id,
        lhs=lhs,
        rhs=rhs,
        constant_used=1.0,
        margin=diff,
        passed=diff >= -tol,
        witness=witness or {},
        details=details,
    )


def combine(claim_id, reports, **details):
    """All-of report: passes iff every applicable sub-report passes."""
    reports = [r for r in reports if r.applicable]
    if not reports:
        return not_applicable(claim_id, **details)
    worst = min(reports, key=lambda r: r.margin)
    return VerificationReport(
        claim_id=claim_id,
        lhs=worst.lhs,
        rhs=worst.rhs,
        constant_used=worst.constant_used,
        margin=worst.margin,
        passed=all(r.passed for r in reports),
        witness={"worst": worst.claim_id, **worst.witness},
        details={"parts": [r.to_dict() for r in reports], **details},
    )


def not_applicable(claim_id, reason="precondition not met", **details):
    return VerificationReport(
        claim_id=claim_id,
        lhs=0.0,
        rhs=0.0,
        constant_used=1.0,
        margin=0.0,
        passed=True,
        details={"reason": reason, **details},
        applicable=False,
    )
