"""Gauss-Legendre and Gauss-Lobatto rules and their optimal blends.

Rules live on the reference interval [-1, 1].  An m-point Gauss-Legendre
rule integrates polynomials up to degree 2m-1 exactly, an m-point
Gauss-Lobatto rule up to degree 2m-3.  A blended rule

    Q = eta * Q_gauss + (1 - eta) * Q_lobatto

with the degree-dependent weight from ``optimal_blending`` minimises the
dispersion error of the spectral approximation; eta is negative for
degrees >= 3, so blended "weights" need not be positive.

Nodes are computed by Newton iteration on the Legendre polynomial (or
its derivative) from trigonometric initial guesses; only one half is
iterated and the other half is mirrored, so rules are symmetric exactly.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigurationError, NumericError

__all__ = [
    "QuadratureRule",
    "BlendedRule",
    "ElementRule",
    "gauss_legendre",
    "gauss_lobatto",
    "optimal_blending",
    "blending_weight",
    "map_to_element",
]

_NEWTON_TOL = 1e-15
_NEWTON_MAXIT = 100
_RESIDUAL_TOL = 1e-14

#: Dispersion-optimal Gauss weight eta per degree; the Lobatto weight is 1 - eta.
_OPTIMAL_ETA = {
    1: Fraction(1, 2),
    2: Fraction(1, 3),
    3: Fraction(-3, 2),
    4: Fraction(-79, 5),
    5: Fraction(-174, 1),
    6: Fraction(-91177, 35),
    7: Fraction(-105013, 2),
}


@dataclass(frozen=True)
class QuadratureRule:
    """A quadrature rule on [-1, 1]: strictly increasing nodes, weights."""

    family: str
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def m(self) -> int:
        return len(self.nodes)

    def integrate(self, f, a: float = -1.0, b: float = 1.0) -> float:
        """Apply the rule to f on [a, b] via the affine map."""
        elem = map_to_element(self, a, b)
        return float(np.dot(elem.weights, f(elem.nodes)))


@dataclass(frozen=True)
class ElementRule:
    """A rule mapped onto a physical element [a, b]."""

    nodes: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class BlendedRule:
    """Affine combination eta * rule1 + (1 - eta) * rule2."""

    rule1: QuadratureRule
    rule2: QuadratureRule
    eta: float

    def parts(self) -> list[tuple[QuadratureRule, float]]:
        return [(self.rule1, self.eta), (self.rule2, 1.0 - self.eta)]

    def integrate(self, f, a: float = -1.0, b: float = 1.0) -> float:
        return sum(c * r.integrate(f, a, b) for r, c in self.parts())


def _legendre_pair(n: int, x: float) -> tuple[float, float]:
    """(P_n(x), P_{n-1}(x)) by the three-term recurrence."""
    p0, p1 = 1.0, x
    if n == 0:
        return p0, 0.0
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    return p1, p0


def _legendre_deriv(n: int, x: float) -> float:
    pn, pm1 = _legendre_pair(n, x)
    return n * (pm1 - x * pn) / (1.0 - x * x)


def _newton(f_and_fp, x0: float) -> float:
    x = x0
    for _ in range(_NEWTON_MAXIT):
        f, fp = f_and_fp(x)
        dx = f / fp
        x -= dx
        if abs(dx) < _NEWTON_TOL:
            break
    else:
        raise NumericError(f"root iteration did not converge from x0 = {x0}")
    f, fp = f_and_fp(x)
    # residual measured in root space; |f| itself is not scale free
    if abs(f / fp) > _RESIDUAL_TOL:
        raise NumericError(f"root residual {abs(f / fp):.3e} above tolerance")
    return x


def _mirror(pos_desc: list[float], has_zero: bool) -> np.ndarray:
    """Ascending node array from the positive half, symmetric by construction."""
    pos = np.array(sorted(pos_desc))
    mid = [0.0] if has_zero else []
    return np.concatenate([-pos[::-1], mid, pos])


def gauss_legendre(m: int) -> QuadratureRule:
    """m-point Gauss-Legendre rule on [-1, 1], exact to degree 2m - 1.

    Works at least up to m = 64; raises NumericError if the root
    iteration fails to meet its residual tolerance.
    """
    if m < 1:
        raise ConfigurationError(f"Gauss-Legendre needs m >= 1 points, got {m}")
    if m == 1:
        return QuadratureRule("gauss", np.array([0.0]), np.array([2.0]))

    def f_and_fp(x):
        pn, _ = _legendre_pair(m, x)
        return pn, _legendre_deriv(m, x)

    pos = []
    for i in range(m // 2):
        # classical asymptotic guess for the i-th largest root
        x0 = np.cos(np.pi * (4 * i + 3) / (4 * m + 2))
        pos.append(_newton(f_and_fp, x0))
    nodes = _mirror(pos, has_zero=(m % 2 == 1))

    half = []
    for x in nodes[: (m + 1) // 2]:
        dp = _legendre_deriv(m, x)
        half.append(2.0 / ((1.0 - x * x) * dp * dp))
    weights = np.concatenate([half, half[: m // 2][::-1]])
    return QuadratureRule("gauss", nodes, np.asarray(weights))


def gauss_lobatto(m: int) -> QuadratureRule:
    """m-point Gauss-Lobatto rule on [-1, 1], exact to degree 2m - 3.

    Includes both endpoints; interior nodes are the roots of P'_{m-1}.
    """
    if m < 2:
        raise ConfigurationError(f"Gauss-Lobatto needs m >= 2 points, got {m}")
    nm1 = m - 1
    w_end = 2.0 / (m * nm1)
    if m == 2:
        return QuadratureRule("lobatto", np.array([-1.0, 1.0]), np.array([w_end, w_end]))

    def f_and_fp(x):
        pn, _ = _legendre_pair(nm1, x)
        dp = _legendre_deriv(nm1, x)
        d2p = (2.0 * x * dp - nm1 * (nm1 + 1) * pn) / (1.0 - x * x)
        return dp, d2p

    n_int = m - 2
    pos = []
    for i in range(n_int // 2):
        # interior extrema of P_{m-1} sit close to the Chebyshev-Lobatto points
        x0 = np.cos(np.pi * (i + 1) / nm1)
        pos.append(_newton(f_and_fp, x0))
    interior = _mirror(pos, has_zero=(n_int % 2 == 1))

    nodes = np.concatenate([[-1.0], interior, [1.0]])
    half = [w_end]
    for x in nodes[1 : (m + 1) // 2]:
        pn, _ = _legendre_pair(nm1, x)
        half.append(2.0 / (m * nm1 * pn * pn))
    weights = np.concatenate([half, half[: m // 2][::-1]])
    return QuadratureRule("lobatto", nodes, np.asarray(weights))


def blending_weight(degree: int) -> float:
    """Dispersion-optimal Gauss weight eta for a given degree (1..7)."""
    if degree not in _OPTIMAL_ETA:
        raise ConfigurationError(
            f"no optimal blending tabulated for degree {degree} (supported: 1..7)"
        )
    return float(_OPTIMAL_ETA[degree])


def optimal_blending(degree: int) -> BlendedRule:
    """Optimally blended rule for the given degree.

    Combines the (p+1)-point Gauss-Legendre and (p+1)-point
    Gauss-Lobatto rules with the tabulated degree-dependent weight.
    """
    eta = blending_weight(degree)
    m = degree + 1
    return BlendedRule(gauss_legendre(m), gauss_lobatto(m), eta)


def map_to_element(rule, a: float, b: float):
    """Map a rule from [-1, 1] onto [a, b] (a < b).

    For a plain rule returns an ElementRule; for a BlendedRule returns a
    list of (ElementRule, coefficient) pairs.
    """
    if not b > a:
        raise ValueError(f"degenerate element [{a}, {b}]")
    if isinstance(rule, BlendedRule):
        return [(map_to_element(r, a, b), c) for r, c in rule.parts()]
    mid = 0.5 * (a + b)
    scale = 0.5 * (b - a)
    return ElementRule(mid + scale * rule.nodes, scale * rule.weights)
