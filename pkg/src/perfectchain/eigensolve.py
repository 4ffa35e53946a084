"""Eigenvalues and eigenvectors of real symmetric tridiagonal matrices.

Two independent eigenvalue routes are kept on purpose: Sturm-sequence
bisection inside Gershgorin bounds is the robust oracle, implicit-shift QL
is the fast default, and their agreement is part of the test surface (a
single solver cannot check itself).  Eigenvectors come from inverse
iteration with one reorthogonalization pass, which is safe here because the
target spectra have O(1) gaps.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from perfectchain import _kernels
from perfectchain.jacobi import JacobiMatrix

_EPS = float(np.finfo(np.float64).eps)
_BISECT_MAX_ITER = 128
_INVIT_MAX_ITER = 8


class SolverError(RuntimeError):
    """Eigensolver failed to converge within its iteration cap."""

    def __init__(self, message: str, order: int, worst_width: float = float("nan")):
        super().__init__(message)
        self.order = order
        self.worst_width = worst_width


class DegenerateClusterWarning(UserWarning):
    """Eigenvalue gap is at rounding scale; eigenvectors may mix."""


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues with (optionally) orthonormal eigenvectors.

    Column k of ``vectors`` belongs to ``values[k]``; each column is unit
    norm with its largest-magnitude component positive (ties: lowest index).
    """

    values: np.ndarray
    vectors: np.ndarray | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.vectors is not None:
            vecs = np.asarray(self.vectors, dtype=float)
            vecs.setflags(write=False)
            object.__setattr__(self, "vectors", vecs)


def _pivot_floor(m: JacobiMatrix) -> float:
    return max(_EPS * m.inf_norm(), 1e-300)


def sturm_count(m: JacobiMatrix, x: float) -> int:
    """Number of eigenvalues strictly below x (Sturm sign count)."""
    b2 = m.offdiag * m.offdiag
    return int(_kernels.sturm_counts(m.diag, b2, [float(x)], _pivot_floor(m))[0])


def gershgorin_bounds(m: JacobiMatrix) -> tuple[float, float]:
    """Enclosing interval for the spectrum from row sums."""
    n = m.n
    pad = np.zeros(n)
    if n > 1:
        pad[:-1] += m.offdiag
        pad[1:] += m.offdiag
    return float(np.min(m.diag - pad)), float(np.max(m.diag + pad))


def eigenvalues_bisect(m: JacobiMatrix, rel_tol: float = 1e-12) -> np.ndarray:
    """All eigenvalues by Sturm bisection, each within rel_tol * scale.

    The robust baseline: monotone counts cannot misorder or lose an
    eigenvalue, so this route serves as the oracle for the QL path.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    n = m.n
    lo_g, hi_g = gershgorin_bounds(m)
    scale = max(m.inf_norm(), 1.0)
    tol = rel_tol * scale
    width_floor = 8 * _EPS * scale
    tol = max(tol, width_floor)
    lo = np.full(n, lo_g - tol)
    hi = np.full(n, hi_g + tol)
    b2 = m.offdiag * m.offdiag
    floor = _pivot_floor(m)
    ks = np.arange(n)
    for _ in range(_BISECT_MAX_ITER):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        counts = _kernels.sturm_counts(m.diag, b2, mid, floor)
        above = counts >= ks + 1  # lambda_k < mid
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    else:
        raise SolverError(
            f"bisection failed to localize all eigenvalues of order {n}",
            order=n,
            worst_width=float(np.max(hi - lo)),
        )
    return 0.5 * (lo + hi)


def eigenvalues(m: JacobiMatrix, rel_tol: float = 1e-12, method: str = "ql") -> np.ndarray:
    """All n eigenvalues, ascending.

    ``method`` selects the implicit-shift QL default or the Sturm bisection
    oracle; the two agree to rounding scale and tests enforce it.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    if method == "ql":
        try:
            return np.asarray(_kernels.ql_eigenvalues(m.diag, m.offdiag))
        except RuntimeError as exc:
            raise SolverError(str(exc), order=m.n) from exc
    if method == "bisect":
        return eigenvalues_bisect(m, rel_tol)
    raise ValueError(f"unknown method {method!r}")


def _solve_shifted(diag, offdiag, shift, rhs, floor):
    """Solve (T - shift I) y = rhs with T realized as tridiagonal(-b, a, -b).

    Gaussian elimination with partial pivoting and a second-superdiagonal
    fill-in (the standard stable tridiagonal factor-and-solve).
    """
    n = diag.size
    d = [float(a) - shift for a in diag]
    if n == 1:
        piv = d[0] if abs(d[0]) >= floor else floor
        return np.array([rhs[0] / piv])
    low = [-float(b) for b in offdiag]   # subdiagonal
    up = [-float(b) for b in offdiag]    # superdiagonal
    up2 = [0.0] * max(n - 2, 0)          # fill-in
    y = [float(r) for r in rhs]
    for i in range(n - 1):
        if abs(d[i]) >= abs(low[i]):
            piv = d[i] if abs(d[i]) >= floor else (floor if d[i] >= 0 else -floor)
            mult = low[i] / piv
            d[i] = piv
            d[i + 1] -= mult * up[i]
            y[i + 1] -= mult * y[i]
            low[i] = mult  # store for clarity; unused afterwards
        else:
            # swap rows i, i+1
            mult = d[i] / low[i]
            d[i] = low[i]
            tmp = up[i]
            up[i] = d[i + 1]
            d[i + 1] = tmp - mult * d[i + 1]
            if i < n - 2:
                up2[i] = up[i + 1]
                up[i + 1] = -mult * up[i + 1]
            y[i], y[i + 1] = y[i + 1], y[i] - mult * y[i + 1]
    piv = d[n - 1]
    if abs(piv) < floor:
        piv = floor if piv >= 0 else -floor
    x = [0.0] * n
    x[n - 1] = y[n - 1] / piv
    if n >= 2:
        x[n - 2] = (y[n - 2] - up[n - 2] * x[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (y[i] - up[i] * x[i + 1] - up2[i] * x[i + 2]) / d[i]
    return np.array(x)


def eigensystem(m: JacobiMatrix, rel_tol: float = 1e-12) -> EigenSystem:
    """Eigenvalues plus orthonormal eigenvectors of the -b realization.

    Vectors come from inverse iteration at the converged eigenvalues with a
    single reorthogonalization pass against the already accepted columns.
    Warns when a gap is at rounding scale (inverse iteration may then mix
    members of the cluster).
    """
    vals = eigenvalues(m, rel_tol=rel_tol)
    n = m.n
    norm = max(m.inf_norm(), 1.0)
    gaps = np.diff(vals)
    if n > 1 and np.any(gaps < 1e3 * _EPS * norm):
        warnings.warn(
            f"eigenvalue gap below {1e3 * _EPS * norm:.3e}; "
            "eigenvectors of the cluster may mix",
            DegenerateClusterWarning,
        )
    floor = _pivot_floor(m)
    resid_target = max(rel_tol, 64 * _EPS) * norm
    rng = np.random.default_rng(0x5EED)
    vecs = np.empty((n, n))
    for k, lam in enumerate(vals):
        x = rng.standard_normal(n)
        x /= np.linalg.norm(x)
        resid = np.inf
        for _ in range(_INVIT_MAX_ITER):
            y = _solve_shifted(m.diag, m.offdiag, lam, x, floor)
            ny = np.linalg.norm(y)
            if not np.isfinite(ny) or ny == 0.0:
                raise SolverError(
                    f"inverse iteration broke down at eigenvalue {k}", order=n
                )
            x = y / ny
            resid = 1.0 / ny  # ||(T - lam I) x_new|| = ||x_old|| / ||y||
            if resid <= resid_target:
                break
        if k:
            x = x - vecs[:, :k] @ (vecs[:, :k].T @ x)
            nx = np.linalg.norm(x)
            if nx == 0.0:
                raise SolverError(
                    f"eigenvector {k} vanished after reorthogonalization",
                    order=n,
                )
            x /= nx
        # sign: first component within rounding of the max magnitude positive
        mags = np.abs(x)
        j = int(np.argmax(mags >= (1.0 - 1e-12) * mags.max()))
        if x[j] < 0:
            x = -x
        vecs[:, k] = x
    return EigenSystem(vals, vecs)
