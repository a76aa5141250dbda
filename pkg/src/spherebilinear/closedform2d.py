"""Closed-form stationary values for symmetric 2 x 2 problems in R^2.

Each branch of the case analysis yields candidate values ``lam_1 + lam_2``.
None of the branches is optimal on its own, so :func:`symmetric_max` takes the
largest valid candidate.  That selection rule is checked numerically against
the ascent solver and the grid oracle in the tests.
"""

from dataclasses import dataclass
import math


from ._validation import check_matrix
from .exceptions import DimensionError, NotSymmetricError

BRANCHES = ("diagonal", "zero_diagonal", "full_rank", "proportional", "quadratic")
DET_RTOL = 1e-12
AGREE_TOL = 1e-9


@dataclass(frozen=True)
class CandidateValue:
    value: float
    branch: str
    valid: bool
    note: str = ""

    def as_dict(self):
        return {"value": self.value, "branch": self.branch, "valid": self.valid, "note": self.note}


def _check_symmetric_2x2(A):
    A = check_matrix(A)
    if A.shape != (2, 2):
        raise DimensionError(f"closed forms need a 2x2 matrix, got {A.shape}")
    if A[0, 1] != A[1, 0]:
        raise NotSymmetricError(f"a12={A[0, 1]!r} differs from a21={A[1, 0]!r}")
    return A


def quadratic_max(A) -> float:
    """Max of ``sum a_ij <x_i, x_j>`` over unit ``x_1, x_2`` in R^2."""
    A = _check_symmetric_2x2(A)
    return float(A[0, 0] + A[1, 1] + 2.0 * abs(A[0, 1]))


def diagonal_bilinear_max(a11, a22) -> float:
    return float(abs(a11) + abs(a22))


def _full_rank_candidates(a11, a12, a22):
    det = a11 * a22 - a12 * a12
    fro2 = a11 * a11 + 2 * a12 * a12 + a22 * a22
    reasons = []
    if a12 == 0.0:
        reasons.append("requires a12 != 0")
    if a11 * a22 == 0.0:
        return [CandidateValue(math.nan, "full_rank", False, "requires a11*a22 != 0")]
    if abs(det) <= DET_RTOL * fro2:
        return [CandidateValue(math.nan, "full_rank", False, "det A is numerically zero")]
    p1 = a11 / a22 * det
    if p1 < 0:
        return [CandidateValue(math.nan, "full_rank", False, "(a11/a22) det A < 0")]
    # Unit blocks need |a_k1 y_1 + a_k2 y_2| = |lam_k|, which fixes the angle
    # between y_1 and y_2; its cosine must lie in [-1, 1].
    cos_phi = -a12 * (a11 + a22) / (2.0 * a11 * a22)
    if abs(cos_phi) > 1.0 + 1e-12:
        reasons.append(f"no unit blocks realize it (cos phi = {cos_phi:.6g})")
    r1 = math.sqrt(p1)
    r2 = math.sqrt(a22 / a11 * det)
    # lam_1 / lam_2 = -a11 / a22 fixes the relative sign of the pair.
    want_same = -a11 / a22 > 0
    out = []
    consistent = []
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            sign_ok = (s1 == s2) == want_same
            if sign_ok:
                consistent.append(s1 * r1 + s2 * r2)
            why = list(reasons)
            if not sign_ok:
                why.append("sign pattern violates lam1/lam2 = -a11/a22")
            out.append(
                CandidateValue(
                    s1 * r1 + s2 * r2, "full_rank", sign_ok and not reasons,
                    "; ".join(why) or f"lam=({s1 * r1!r}, {s2 * r2!r})",
                )
            )
    # Same value written as +-sqrt(det * a11/a22) * (a11 - a22) / a11.
    for s in (1.0, -1.0):
        v = s * r1 * (a11 - a22) / a11
        match = min(abs(v - c) for c in consistent)
        note = "combined expression"
        if match > AGREE_TOL * max(1.0, abs(v)):
            note += f"; disagrees with lam1+lam2 by {match:.3e}"
        if reasons:
            note += "; " + "; ".join(reasons)
        out.append(CandidateValue(v, "full_rank", not reasons, note))
    return out


def symmetric_candidates(A):
    """All branch candidates for a symmetric 2 x 2 bilinear problem in R^2."""
    A = _check_symmetric_2x2(A)
    a11, a12, a22 = float(A[0, 0]), float(A[0, 1]), float(A[1, 1])
    out = [
        CandidateValue(
            abs(a11) + abs(a22), "diagonal", a12 == 0.0,
            "" if a12 == 0.0 else "requires a12 == 0",
        ),
        CandidateValue(
            2.0 * abs(a12), "zero_diagonal", a11 == 0.0 and a22 == 0.0,
            "" if a11 == 0.0 and a22 == 0.0 else "requires a11 == a22 == 0",
        ),
    ]
    out.extend(_full_rank_candidates(a11, a12, a22))
    for k in (1.0, -1.0):
        for s in (1.0, -1.0):
            out.append(
                CandidateValue(s * (a11 + a22 + 2.0 * k * a12), "proportional", True, f"k={k:+.0f}")
            )
    return out


def symmetric_max(A):
    """``(value, branch)`` of the largest valid candidate; earlier branches win ties."""
    cands = [c for c in symmetric_candidates(A) if c.valid]
    if not cands:
        raise RuntimeError("no valid closed-form candidate")
    best = cands[0]
    for c in cands[1:]:
        if c.value > best.value:
            best = c
    return best.value, best.branch

