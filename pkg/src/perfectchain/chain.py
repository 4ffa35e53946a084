"""Mass-spring chains whose normal-mode frequencies are k * omega.

A chain of n masses M_i joined by n-1 springs K_i (free ends, K_0 = K_n = 0)
has dynamical matrix M^{-1/2} K M^{-1/2}.  Matching it to (omega^2/2) times
the square-spectrum Jacobi matrix fixes the chain uniquely once M_1 is
chosen:

    M_{i+1} = M_i * (2i-1)/i * (n-i)/(2n-2i-1),
    K_i     = (M_i omega^2 / 2) * (2i-1)(n-i),

equivalently in closed form via binomial coefficients.  The ratios are
rational, so a proper choice of M_1 and omega turns both sequences into
coprime positive integers ("magic" designs).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from perfectchain.exact import binomial, normalize_to_coprime_integers
from perfectchain.jacobi import JacobiMatrix, square_spectrum_matrix


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ChainDesign:
    """Masses, springs and frequency spacing of a free-ended chain.

    Persymmetric designs satisfy M_i = M_{n+1-i}, K_i = K_{n-i}.  Exact
    rational payloads ride along when the design was built exactly.
    """

    masses: np.ndarray
    springs: np.ndarray
    omega: float
    masses_exact: tuple | None = None
    springs_exact: tuple | None = None
    omega_sq_exact: Fraction | None = None

    def __post_init__(self):
        masses = _readonly(np.atleast_1d(self.masses))
        springs = _readonly(np.atleast_1d(self.springs) if np.size(self.springs) else [])
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "springs", springs)
        if springs.size != masses.size - 1:
            raise ValueError("need exactly n-1 springs for n masses")
        if np.any(masses <= 0) or np.any(springs <= 0):
            raise ValueError("masses and springs must be positive")
        if not self.omega > 0:
            raise ValueError("omega must be positive")

    @property
    def n(self) -> int:
        return int(self.masses.size)

    @property
    def is_exact(self) -> bool:
        return self.masses_exact is not None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "masses": [float(x) for x in self.masses],
            "springs": [float(x) for x in self.springs],
            "omega": float(self.omega),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


@dataclass(frozen=True)
class MagicDesign:
    """Coprime integer masses/springs with the matching squared spacing."""

    n: int
    masses: tuple[int, ...]
    springs: tuple[int, ...]
    omega_squared: Fraction

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "masses": [str(m) for m in self.masses],
            "springs": [str(k) for k in self.springs],
            "omega_squared": f"{self.omega_squared.numerator}/{self.omega_squared.denominator}",
        }

    def to_chain_design(self) -> ChainDesign:
        w2 = self.omega_squared
        return ChainDesign(
            [float(m) for m in self.masses],
            [float(k) for k in self.springs],
            math.sqrt(float(w2)),
            tuple(Fraction(m) for m in self.masses),
            tuple(Fraction(k) for k in self.springs),
            w2,
        )


def _mass_ratio(i: int, n: int) -> Fraction:
    # M_{i+1} / M_i
    return Fraction((2 * i - 1) * (n - i), i * (2 * n - 2 * i - 1))


def design_chain(n: int, m1: float, omega: float) -> ChainDesign:
    """Chain with mode frequencies k * omega, by the mass/spring recursion."""
    if n < 2:
        raise ValueError("need n >= 2 (a single mass has no springs)")
    if not (m1 > 0 and omega > 0):
        raise ValueError("M1 and omega must be positive")
    masses = [float(m1)]
    for i in range(1, n):
        masses.append(masses[-1] * ((2 * i - 1) * (n - i)) / (i * (2 * n - 2 * i - 1)))
    half_w2 = 0.5 * omega * omega
    springs = [masses[i - 1] * half_w2 * (2 * i - 1) * (n - i) for i in range(1, n)]
    return ChainDesign(masses, springs, float(omega))


def design_chain_exact(
    n: int, m1: Fraction | int = 1, omega_sq: Fraction | int = 2
) -> ChainDesign:
    """Exact-rational variant; parameterized by omega^2 (omega itself is
    typically irrational)."""
    if n < 2:
        raise ValueError("need n >= 2 (a single mass has no springs)")
    m1 = Fraction(m1)
    omega_sq = Fraction(omega_sq)
    if m1 <= 0 or omega_sq <= 0:
        raise ValueError("M1 and omega^2 must be positive")
    masses = [m1]
    for i in range(1, n):
        masses.append(masses[-1] * _mass_ratio(i, n))
    springs = [masses[i - 1] * omega_sq / 2 * (2 * i - 1) * (n - i) for i in range(1, n)]
    return ChainDesign(
        [float(m) for m in masses],
        [float(k) for k in springs],
        math.sqrt(float(omega_sq)),
        tuple(masses),
        tuple(springs),
        omega_sq,
    )


def closed_form_mass_ratio(n: int, i: int) -> Fraction:
    """M_i / M_1 = C(n-1, i-1)^2 / C(2n-2, 2i-2)."""
    return Fraction(binomial(n - 1, i - 1) ** 2, binomial(2 * n - 2, 2 * i - 2))


def closed_form_spring_ratio(n: int, i: int) -> Fraction:
    """K_i / (M_1 omega^2) = (n-1)^2 C(n-2, i-1)^2 / C(2n-2, 2i-1)."""
    return Fraction(
        (n - 1) ** 2 * binomial(n - 2, i - 1) ** 2, binomial(2 * n - 2, 2 * i - 1)
    )


def design_chain_closed_form(n: int, m1: float, omega: float) -> ChainDesign:
    """Same chain via the binomial closed form (agrees with the recursion)."""
    if n < 2:
        raise ValueError("need n >= 2 (a single mass has no springs)")
    if not (m1 > 0 and omega > 0):
        raise ValueError("M1 and omega must be positive")
    masses = [m1 * float(closed_form_mass_ratio(n, i)) for i in range(1, n + 1)]
    w2 = omega * omega
    springs = [m1 * w2 * float(closed_form_spring_ratio(n, i)) for i in range(1, n)]
    return ChainDesign(masses, springs, float(omega))


def design_chain_closed_form_exact(
    n: int, m1: Fraction | int = 1, omega_sq: Fraction | int = 2
) -> ChainDesign:
    if n < 2:
        raise ValueError("need n >= 2 (a single mass has no springs)")
    m1 = Fraction(m1)
    omega_sq = Fraction(omega_sq)
    if m1 <= 0 or omega_sq <= 0:
        raise ValueError("M1 and omega^2 must be positive")
    masses = [m1 * closed_form_mass_ratio(n, i) for i in range(1, n + 1)]
    springs = [m1 * omega_sq * closed_form_spring_ratio(n, i) for i in range(1, n)]
    return ChainDesign(
        [float(m) for m in masses],
        [float(k) for k in springs],
        math.sqrt(float(omega_sq)),
        tuple(masses),
        tuple(springs),
        omega_sq,
    )


def magic_design(n: int) -> MagicDesign:
    """Coprime-integer masses and springs with the unique consistent omega^2.

    Reference scale M_1 = 1, omega^2 = 2 gives K_i/M_i = (2i-1)(n-i); masses
    are cleared to coprime integers (scale alpha), which makes the scaled
    springs alpha*M_i*(2i-1)(n-i) integers as well; dividing those by their
    gcd g forces omega^2 = 2/g.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    ref = design_chain_exact(n, 1, 2)
    int_masses, alpha = normalize_to_coprime_integers(ref.masses_exact)
    scaled_springs = [alpha * k for k in ref.springs_exact]
    assert all(s.denominator == 1 for s in scaled_springs)
    int_springs, spring_scale = normalize_to_coprime_integers(scaled_springs)
    # spring_scale = 1/g with g = gcd of the integer spring sequence
    return MagicDesign(n, tuple(int_masses), tuple(int_springs), 2 * spring_scale)


def dynamical_matrix(d: ChainDesign) -> JacobiMatrix:
    """M^{-1/2} K M^{-1/2} as a Jacobi matrix: diag (K_i + K_{i-1})/M_i,
    off-diagonal magnitudes K_i / sqrt(M_i M_{i+1}) (realized negative)."""
    m, k = d.masses, d.springs
    n = d.n
    ksum = np.zeros(n)
    ksum[:-1] += k
    ksum[1:] += k
    diag = ksum / m
    off = k / np.sqrt(m[:-1] * m[1:])
    if not d.is_exact:
        return JacobiMatrix(diag, off)
    ke = d.springs_exact
    me = d.masses_exact
    diag_exact = []
    for i in range(n):
        tot = Fraction(0)
        if i > 0:
            tot += ke[i - 1]
        if i < n - 1:
            tot += ke[i]
        diag_exact.append(tot / me[i])
    off_sq_exact = tuple(ke[i] ** 2 / (me[i] * me[i + 1]) for i in range(n - 1))
    return JacobiMatrix(diag, off, tuple(diag_exact), off_sq_exact)


def monotonicity_check(d: ChainDesign, tol: float = 1e-12) -> bool:
    """Masses strictly decrease and springs strictly increase toward the
    middle (checked for i+1 < n/2), and the mirror symmetry holds."""
    if d.n < 3:
        raise ValueError("need n >= 3")
    if d.is_exact:
        me, ke = d.masses_exact, d.springs_exact
        if list(me) != list(reversed(me)) or list(ke) != list(reversed(ke)):
            return False
        for i in range(1, d.n):
            if i + 1 < d.n / 2:
                if not (me[i] < me[i - 1]):
                    return False
                if i < d.n - 1 and not (ke[i] > ke[i - 1]):
                    return False
        return True
    m, k = d.masses, d.springs
    scale_m = float(np.max(m))
    scale_k = float(np.max(k))
    if np.any(np.abs(m - m[::-1]) > tol * scale_m):
        return False
    if np.any(np.abs(k - k[::-1]) > tol * scale_k):
        return False
    for i in range(1, d.n):
        if i + 1 < d.n / 2:
            if not (m[i] < m[i - 1]):
                return False
            if i < d.n - 1 and not (k[i] > k[i - 1]):
                return False
    return True


@dataclass(frozen=True)
class AsymptoticsReport:
    """Large-n behaviour of the design against its limiting shapes.

    Mid/edge ratios vs the Stirling estimates 2/sqrt(pi n) (masses) and
    sqrt(n/pi) (springs); worst deviation of the scaled matrix entries from
    the limiting parabolas 2 pi^2 x(1-x) and pi^2 x(1-x) at x=(i-1)/(n-1),
    using the time unit with omega = pi/(n-1).
    """

    n: int
    mass_ratio: float
    mass_ratio_stirling: float
    mass_rel_dev: float
    spring_ratio: float
    spring_ratio_stirling: float
    spring_rel_dev: float
    max_dev_a: float
    max_dev_b: float
    peak_a: float
    peak_b: float


def asymptotic_report(n: int) -> AsymptoticsReport:
    if n < 4:
        raise ValueError("need n >= 4")
    mid = (n + 1) // 2  # 1-based ceil(n/2)
    mass_ratio = float(closed_form_mass_ratio(n, mid))
    spring_ratio = float(
        closed_form_spring_ratio(n, mid) / closed_form_spring_ratio(n, 1)
    )
    mass_stirling = 2.0 / math.sqrt(math.pi * n)
    spring_stirling = math.sqrt(n / math.pi)
    a = square_spectrum_matrix(n)
    omega = math.pi / (n - 1)
    half_w2 = 0.5 * omega * omega
    xs = np.arange(n) / (n - 1)
    a_scaled = half_w2 * a.diag
    par_a = 2.0 * math.pi**2 * xs * (1.0 - xs)
    xs_b = np.arange(n - 1) / (n - 1)
    b_scaled = half_w2 * a.offdiag
    par_b = math.pi**2 * xs_b * (1.0 - xs_b)
    return AsymptoticsReport(
        n=n,
        mass_ratio=mass_ratio,
        mass_ratio_stirling=mass_stirling,
        mass_rel_dev=abs(mass_ratio - mass_stirling) / mass_stirling,
        spring_ratio=spring_ratio,
        spring_ratio_stirling=spring_stirling,
        spring_rel_dev=abs(spring_ratio - spring_stirling) / spring_stirling,
        max_dev_a=float(np.max(np.abs(a_scaled - par_a))),
        max_dev_b=float(np.max(np.abs(b_scaled - par_b))),
        peak_a=math.pi**2 / 2.0,
        peak_b=math.pi**2 / 4.0,
    )


def default_omega(n: int) -> float:
    """Time unit with transit time t* = n-1, i.e. omega = pi/(n-1)."""
    if n < 2:
        raise ValueError("need n >= 2")
    return math.pi / (n - 1)


def default_m1(n: int) -> float:
    """First mass sqrt((n-1)/pi): middle mass tends to 2/pi, middle spring
    to pi/2 in the large-n collapse."""
    if n < 2:
        raise ValueError("need n >= 2")
    return math.sqrt((n - 1) / math.pi)
