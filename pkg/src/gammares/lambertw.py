"""Complex Lambert W on all integer branches.

W_k(x) solves w e^w = x.  Branch cuts follow the standard convention of
Corless et al. (1996): (-inf, -1/e] for the principal branch k = 0 and
(-inf, 0] for every other branch, with values on a cut equal to the
limit from above (counterclockwise continuity).  The two real branches
W_0 >= W_{-1} meet at the square-root branch point x = -1/e, which is
where all the Borel-plane branch points of this package come from.

Accuracy is plain double precision; residuals |w e^w - x| are always
computed and reported, never assumed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from ._backend import BACKEND, w_many, w_polish, w_scalar
from .errors import ConvergenceError, DomainError

__all__ = ["BranchIndex", "WValue", "lambert_w", "lambert_w_near_branch_point",
           "lambert_w_array", "BACKEND"]

BranchIndex = int

_E = 2.718281828459045

# Puiseux coefficients of W about the branch point: w = -1 + sum mu_j p^j
# with p = sqrt(2(e x + 1)); used as a high-order seed very close to -1/e.
_BP_SERIES = (-1.0, 1.0, -1.0 / 3.0, 11.0 / 72.0, -43.0 / 540.0,
              769.0 / 17280.0, -221.0 / 8505.0)


@dataclass(frozen=True)
class WValue:
    """A branch value together with its verified residual |w e^w - x|."""

    w: complex
    branch: BranchIndex
    residual: float


def lambert_w(x: complex, k: BranchIndex = 0, tol: float = 1e-13) -> WValue:
    """W_k(x) with residual guarantee |w e^w - x| <= tol * max(1, |x|).

    Raises DomainError for x = 0 on a branch with a logarithmic
    singularity there, ConvergenceError (carrying the last iterate and
    its residual) if the iteration stalls.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    x = complex(x)
    if x == 0 and k != 0:
        raise DomainError("x = 0 is a logarithmic singularity for k != 0")
    w, res, ok = w_scalar(x, k, tol)
    if not ok:
        raise ConvergenceError(
            f"lambert_w(x={x!r}, k={k}) stalled with residual {res:.3e}",
            last=w, residual=res)
    return WValue(w, k, res)


def lambert_w_array(xs, k: BranchIndex, tol: float = 1e-13):
    """Vectorized W_k; returns the bare complex array (hot path for the
    quadrature samplers).  Raises ConvergenceError if any entry stalls."""
    out, worst, ok = w_many(xs, k, tol)
    if not ok:
        raise ConvergenceError(
            f"lambert_w_array(k={k}) stalled; worst relative residual {worst:.3e}",
            last=out, residual=worst)
    return out


def lambert_w_near_branch_point(x: complex, sign: str, tol: float = 1e-13) -> WValue:
    """W near the branch point -1/e, with the sheet chosen by `sign`.

    The seed is the truncated Puiseux series w = -1 + p - p^2/3 + ... with
    p = +-sqrt(2(e x + 1)) (principal square root): '+' selects the sheet
    carrying W_0 on the real slice, '-' the one carrying W_{-1}.  The seed
    is polished by the same Halley iteration as `lambert_w`, so the
    returned residual has the same meaning.
    """
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    x = complex(x)
    p = cmath.sqrt(2.0 * (_E * x + 1.0))
    if p == 0:
        return WValue(-1.0 + 0j, 0 if sign == "+" else -1, abs(-cmath.exp(-1.0) - x))
    if sign == "-":
        p = -p
    w0 = 0j
    for c in reversed(_BP_SERIES):
        w0 = w0 * p + c
    w, res, ok = w_polish(x, w0, tol)
    if not ok:
        raise ConvergenceError(
            f"near-branch-point iteration stalled at x={x!r}", last=w, residual=res)
    return WValue(w, 0 if sign == "+" else -1, res)
