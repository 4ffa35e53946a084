"""Jacobi (symmetric tridiagonal) matrices and the square-spectrum family.

The central object is the order-n matrix with entries

    a_i = n - 1 + 4 (i-1)(n-i),                 i = 1..n,
    b_i = sqrt(i (2i-1) (n-i) (2n-2i-1)),       i = 1..n-1,

whose eigenvalues are exactly {2 k^2 : k = 0..n-1}.  Off-diagonals are stored
as positive magnitudes; the conventional realization places -b_i off the
diagonal, which leaves the spectrum unchanged (a diagonal +/-1 similarity
flips any off-diagonal sign).  Both a_i and b_i^2 are integers for this
family, so the construction carries exact integer payloads alongside the
float arrays and all algebraic identities can be checked without tolerances.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


def _readonly(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class JacobiMatrix:
    """Order-n symmetric tridiagonal matrix as diagonal + off-diagonal arrays.

    ``offdiag`` holds magnitudes |b_i| >= 0.  When the entries are known
    exactly, ``diag_exact`` carries a_i and ``offdiag_sq_exact`` carries
    b_i^2 (ints or Fractions); exact payloads are optional.
    """

    diag: np.ndarray
    offdiag: np.ndarray
    diag_exact: tuple | None = None
    offdiag_sq_exact: tuple | None = None

    def __post_init__(self):
        diag = _readonly(np.atleast_1d(self.diag))
        offdiag = _readonly(np.atleast_1d(self.offdiag) if np.size(self.offdiag) else [])
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)
        if diag.ndim != 1 or diag.size < 1:
            raise ValueError("diag must be a nonempty 1-d array")
        if offdiag.size != diag.size - 1:
            raise ValueError("offdiag must have length n-1")
        if np.any(offdiag < 0):
            raise ValueError("offdiag entries are stored as magnitudes (>= 0)")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(offdiag))):
            raise ValueError("matrix entries must be finite")
        if self.diag_exact is not None and len(self.diag_exact) != diag.size:
            raise ValueError("diag_exact must have length n")
        if self.offdiag_sq_exact is not None and len(self.offdiag_sq_exact) != offdiag.size:
            raise ValueError("offdiag_sq_exact must have length n-1")

    @property
    def n(self) -> int:
        return int(self.diag.size)

    def inf_norm(self) -> float:
        """Max absolute row sum of the realized matrix."""
        n = self.n
        if n == 1:
            return float(abs(self.diag[0]))
        b = self.offdiag
        rows = np.abs(self.diag).copy()
        rows[:-1] += b
        rows[1:] += b
        return float(rows.max())

    def to_dense(self, offdiag_sign: float = -1.0) -> np.ndarray:
        """Dense realization, for test oracles only (O(n^2) storage)."""
        full = np.diag(self.diag)
        if self.n > 1:
            off = offdiag_sign * self.offdiag
            full += np.diag(off, 1) + np.diag(off, -1)
        return full

    def to_json_dict(self) -> dict:
        def exact_ints(values):
            if values is None:
                return None
            out = []
            for v in values:
                f = Fraction(v)
                if f.denominator != 1:
                    return None
                out.append(int(f))
            return out

        return {
            "n": self.n,
            "diag": [float(x) for x in self.diag],
            "offdiag": [float(x) for x in self.offdiag],
            "diag_exact": exact_ints(self.diag_exact),
            "offdiag_sq_exact": exact_ints(self.offdiag_sq_exact),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @staticmethod
    def from_json_dict(data: dict) -> "JacobiMatrix":
        if not isinstance(data, dict) or "n" not in data or "diag" not in data:
            raise ValueError("matrix JSON must carry at least 'n' and 'diag'")
        n = int(data["n"])
        diag = data["diag"]
        offdiag = data.get("offdiag") or []
        if len(diag) != n:
            raise ValueError("inconsistent matrix JSON: len(diag) != n")
        de = data.get("diag_exact")
        oe = data.get("offdiag_sq_exact")
        return JacobiMatrix(
            diag,
            offdiag,
            tuple(de) if de is not None else None,
            tuple(oe) if oe is not None else None,
        )


def target_spectrum(n: int) -> np.ndarray:
    """The eigenvalues 2 k^2, k = 0..n-1, of the square-spectrum family."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(n, dtype=float)
    return 2.0 * k * k


def square_spectrum_matrix(n: int) -> JacobiMatrix:
    """Closed-form order-n Jacobi matrix with eigenvalues {2k^2, k=0..n-1}.

    n = 1 gives the 1x1 zero matrix (eigenvalue 0).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    diag_exact = tuple(n - 1 + 4 * (i - 1) * (n - i) for i in range(1, n + 1))
    offdiag_sq = tuple(
        i * (2 * i - 1) * (n - i) * (2 * n - 2 * i - 1) for i in range(1, n)
    )
    return JacobiMatrix(
        [float(a) for a in diag_exact],
        [math.sqrt(b2) for b2 in offdiag_sq],
        diag_exact,
        offdiag_sq,
    )


def is_persymmetric(m: JacobiMatrix, tol: float = 0.0) -> bool:
    """True iff a_i == a_{n+1-i} and b_i == b_{n-i} within tol.

    With tol == 0 and exact payloads present the comparison is exact.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if tol == 0 and m.diag_exact is not None and (
        m.n == 1 or m.offdiag_sq_exact is not None
    ):
        de, oe = m.diag_exact, m.offdiag_sq_exact or ()
        return de == tuple(reversed(de)) and tuple(oe) == tuple(reversed(oe))
    d, b = m.diag, m.offdiag
    return bool(
        np.all(np.abs(d - d[::-1]) <= tol) and np.all(np.abs(b - b[::-1]) <= tol)
    )


def sign_normalize(diag: Sequence[float], offdiag: Sequence[float]) -> JacobiMatrix:
    """Flip off-diagonal signs to the positive-magnitude convention.

    Spectrum-preserving (diagonal +/-1 similarity).  Zero off-diagonals are
    rejected: the matrix would decouple and the Jacobi sign convention would
    be meaningless there.
    """
    off = np.atleast_1d(np.asarray(offdiag, dtype=float)) if np.size(offdiag) else np.array([])
    if np.any(off == 0.0):
        raise ValueError("zero off-diagonal entry: matrix decouples")
    return JacobiMatrix(np.asarray(diag, dtype=float), np.abs(off))


def shifted_complement(n: int) -> JacobiMatrix:
    """The order-(n+1) complement 2 n^2 I - A(n+1), entries as magnitudes.

    Diagonal: c_i = n(n-1) + (n+2-2i)^2.  Off-diagonal magnitudes equal the
    order-(n+1) b_i; in the complement they appear with + sign, which is one
    realization flag away (``to_dense(offdiag_sign=+1)``).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    diag_exact = tuple(n * (n - 1) + (n + 2 - 2 * i) ** 2 for i in range(1, n + 2))
    up = square_spectrum_matrix(n + 1)
    return JacobiMatrix(
        [float(c) for c in diag_exact],
        up.offdiag,
        diag_exact,
        up.offdiag_sq_exact,
    )


@dataclass(frozen=True)
class BidiagonalFactor:
    """Lower bidiagonal H of order n+1 with C = H H^T.

    h_i = sqrt((n+1-i)(2n-2i+1)) on the diagonal, r_i = sqrt(i(2i-1)) below;
    the squares are exact integers.
    """

    hdiag: np.ndarray
    subdiag: np.ndarray
    hdiag_sq_exact: tuple
    subdiag_sq_exact: tuple

    def __post_init__(self):
        object.__setattr__(self, "hdiag", _readonly(self.hdiag))
        object.__setattr__(self, "subdiag", _readonly(self.subdiag))

    @property
    def order(self) -> int:
        return int(self.hdiag.size)

    def to_dense(self) -> np.ndarray:
        full = np.diag(self.hdiag)
        full += np.diag(self.subdiag, -1)
        return full


def bidiagonal_factor(n: int) -> BidiagonalFactor:
    """Closed-form factor H (order n+1) of the shifted complement."""
    if n < 1:
        raise ValueError("n must be >= 1")
    h_sq = tuple((n + 1 - i) * (2 * n - 2 * i + 1) for i in range(1, n + 2))
    r_sq = tuple(i * (2 * i - 1) for i in range(1, n + 1))
    return BidiagonalFactor(
        [math.sqrt(h) for h in h_sq],
        [math.sqrt(r) for r in r_sq],
        h_sq,
        r_sq,
    )


@dataclass(frozen=True)
class FactorizationReport:
    """Outcome of the exact factorization identities at order n.

    Any failure falsifies the inductive construction and is kept as a
    regression tripwire; ``failures`` lists (identity, 1-based index).
    """

    n: int
    failures: tuple[tuple[str, int], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_factorization(n: int) -> FactorizationReport:
    """Check, in exact integer arithmetic, that H witnesses the spectrum step.

    With C = 2 n^2 I - A(n+1) and H the bidiagonal factor:
      * diagonal of H H^T reproduces c_i          (h_i^2 + r_{i-1}^2 = c_i),
      * off-diagonal of H H^T reproduces C's      ((h_i r_i)^2 = b_i^2 of
        the order-(n+1) matrix),
      * the reversed product 2 n^2 I - H^T H has a zero last row/column
        except for the corner 2 n^2, and its leading n x n block equals
        A(n) entrywise.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    c = shifted_complement(n).diag_exact
    b_up_sq = square_spectrum_matrix(n + 1).offdiag_sq_exact or ()
    a_low = square_spectrum_matrix(n)
    h_sq = tuple((n + 1 - i) * (2 * n - 2 * i + 1) for i in range(1, n + 2))
    r_sq = tuple(i * (2 * i - 1) for i in range(1, n + 1))

    failures: list[tuple[str, int]] = []
    # forward product H H^T == C
    for i in range(1, n + 2):
        lhs = h_sq[i - 1] + (r_sq[i - 2] if i >= 2 else 0)
        if lhs != c[i - 1]:
            failures.append(("forward_diagonal", i))
    for i in range(1, n + 1):
        if h_sq[i - 1] * r_sq[i - 1] != b_up_sq[i - 1]:
            failures.append(("forward_offdiagonal", i))
    # reversed product 2 n^2 I - H^T H: bordered block structure
    if h_sq[n] != 0:
        failures.append(("reversed_corner", n + 1))
    for i in range(1, n + 1):
        if 2 * n * n - (h_sq[i - 1] + r_sq[i - 1]) != a_low.diag_exact[i - 1]:
            failures.append(("reversed_diagonal", i))
    for i in range(1, n):
        if r_sq[i - 1] * h_sq[i] != (a_low.offdiag_sq_exact or ())[i - 1]:
            failures.append(("reversed_offdiagonal", i))
    return FactorizationReport(n, tuple(failures))


def trace_exact(m: JacobiMatrix) -> int | Fraction:
    """Exact trace; equals n(n-1)(2n-1)/3 for the square-spectrum family."""
    if m.diag_exact is None:
        raise ValueError("matrix carries no exact diagonal")
    total = sum(m.diag_exact)
    f = Fraction(total)
    return int(f) if f.denominator == 1 else f
