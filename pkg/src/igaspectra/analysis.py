"""Error metrics, convergence rates, conditioning and outlier detection.

Reference solution: on [0, 1]^d with homogeneous Dirichlet conditions
the Laplace eigenvalues are sums of squared integer multiples of pi^2,

    lambda_(j1..jd) = (j1^2 + ... + jd^2) * pi^2,   jk >= 1,

with separable sine eigenfunctions; the 1D eigenfunction of mode j,
normalised to unit L2 norm, is sqrt(2) * sin(j pi x).  Discrete and
exact eigenvalues are paired by ascending rank.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bspline import BSplineSpace
from .eigsolve import Spectrum
from .quadrature import gauss_legendre, map_to_element

__all__ = [
    "ExactSpectrum",
    "ErrorReport",
    "FunctionErrors",
    "ConditionReport",
    "OutlierMetric",
    "eigenvalue_errors",
    "eigenfunction_errors",
    "convergence_rates",
    "condition_report",
    "outlier_metric",
]

#: Relative errors below this are treated as machine-precision noise.
ERROR_FLOOR = 1e-13


@dataclass(frozen=True)
class ExactSpectrum:
    """Exact Dirichlet Laplace spectrum on the unit box in d dimensions."""

    dim: int

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim}")

    def eigenvalues(self, count: int) -> np.ndarray:
        """The ``count`` smallest exact eigenvalues, ascending."""
        if count < 1:
            raise ValueError("count must be >= 1")
        d = self.dim
        if d == 1:
            j = np.arange(1, count + 1)
            return (np.pi ** 2) * j.astype(float) ** 2
        # enumerate index boxes until the candidate set provably
        # contains the `count` smallest sums of d squares
        J = max(2, math.isqrt(count) + 2)
        while True:
            j = np.arange(1, J + 1)
            if d == 2:
                sums = (j[:, None] ** 2 + j[None, :] ** 2).ravel()
            else:
                sums = (j[:, None, None] ** 2 + j[None, :, None] ** 2
                        + j[None, None, :] ** 2).ravel()
            sums = np.sort(sums)
            if len(sums) >= count:
                # any tuple outside the box has value > J^2 + (d-1)
                cutoff = J * J + (d - 1)
                if sums[count - 1] <= cutoff:
                    return (np.pi ** 2) * sums[:count].astype(float)
            J *= 2

    def eigenfunction_1d(self, mode: int):
        """Unit-L2 1D eigenfunction and derivative for mode j >= 1."""
        w = mode * np.pi
        amp = math.sqrt(2.0)
        return (lambda x: amp * np.sin(w * x),
                lambda x: amp * w * np.cos(w * x))


@dataclass(frozen=True)
class ErrorReport:
    """Relative eigenvalue errors paired by ascending rank."""

    ranks: np.ndarray            # 1-based rank j
    rank_fraction: np.ndarray    # j / N
    exact: np.ndarray
    approx: np.ndarray
    relative_errors: np.ndarray


@dataclass(frozen=True)
class FunctionErrors:
    """H1-seminorm and L2 eigenfunction errors for selected 1D modes."""

    modes: tuple
    h1: np.ndarray
    l2: np.ndarray


@dataclass(frozen=True)
class ConditionReport:
    """Extreme eigenvalues and condition numbers, baseline vs treated."""

    lambda_min: float
    lambda_max: float
    lambda_min_treated: float
    lambda_max_treated: float
    gamma: float
    gamma_treated: float
    rho: float
    reduction_percent: float


@dataclass(frozen=True)
class OutlierMetric:
    """Spectral tail diagnostic: top 5% of modes vs the remaining 95%."""

    top_max: float
    rest_max: float
    flagged: bool


def eigenvalue_errors(spectrum: Spectrum, exact: ExactSpectrum) -> ErrorReport:
    """Pair discrete and exact eigenvalues by rank and report errors."""
    lam = spectrum.eigenvalues
    n = len(lam)
    ex = exact.eigenvalues(n)
    ranks = np.arange(1, n + 1)
    rel = np.abs(lam - ex) / ex
    return ErrorReport(ranks, ranks / n, ex, lam, rel)


def eigenfunction_errors(spectrum: Spectrum, space: BSplineSpace,
                         modes=(1,)) -> FunctionErrors:
    """1D eigenfunction errors in the H1 seminorm and the L2 norm.

    Each requested discrete eigenfunction is rescaled to unit L2 norm
    and sign-aligned against the exact unit-L2 eigenfunction of the
    same rank before the error integrals are evaluated with an
    over-resolved (p+4)-point Gauss rule per element.
    """
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum carries no eigenvectors")
    kv = space.knot_vector
    p, n_el, h = space.degree, space.n_elements, space.h
    n_dof = space.n_dof
    if spectrum.eigenvectors.shape[0] != n_dof:
        raise ValueError("eigenvector length does not match the space")
    exact = ExactSpectrum(1)

    rule = gauss_legendre(p + 4)
    # tabulate basis values/gradients once per element
    tables = []
    for e in range(n_el):
        elem = map_to_element(rule, e * h, (e + 1) * h)
        span = kv.span_of_element(e)
        vals = np.empty((rule.m, p + 1))
        grads = np.empty((rule.m, p + 1))
        for q, x in enumerate(elem.nodes):
            ders = kv.all_basis_ders(span, x, 1)
            vals[q] = ders[0]
            grads[q] = ders[1]
        tables.append((elem, span - p, vals, grads))

    h1 = np.empty(len(modes))
    l2 = np.empty(len(modes))
    for k, mode in enumerate(modes):
        if not 1 <= mode <= spectrum.n:
            raise IndexError(f"mode {mode} out of range 1..{spectrum.n}")
        U_full = np.zeros(n_dof + 2)
        U_full[1:-1] = spectrum.eigenvectors[:, mode - 1]
        u_ex, du_ex = exact.eigenfunction_1d(mode)

        norm2 = 0.0
        inner = 0.0
        for elem, first, vals, grads in tables:
            coeff = U_full[first : first + p + 1]
            uh = vals @ coeff
            norm2 += np.dot(elem.weights, uh * uh)
            inner += np.dot(elem.weights, uh * u_ex(elem.nodes))
        scale = (1.0 if inner >= 0 else -1.0) / math.sqrt(norm2)

        e_h1 = 0.0
        e_l2 = 0.0
        for elem, first, vals, grads in tables:
            coeff = scale * U_full[first : first + p + 1]
            du = grads @ coeff - du_ex(elem.nodes)
            dv = vals @ coeff - u_ex(elem.nodes)
            e_h1 += np.dot(elem.weights, du * du)
            e_l2 += np.dot(elem.weights, dv * dv)
        h1[k] = math.sqrt(e_h1)
        l2[k] = math.sqrt(e_l2)
    return FunctionErrors(tuple(modes), h1, l2)


def convergence_rates(h_values, errors, floor: float = ERROR_FLOOR):
    """Least-squares log-log convergence rate over a mesh sequence.

    Parameters
    ----------
    h_values, errors : array-like
        Mesh sizes (>= 3 of them, coarsest first) and the matching
        error values.
    floor : float
        Errors at or below this are machine-precision noise.  The fit
        uses the leading run of meshes whose error stays above the
        floor; once the sequence touches the floor, all later meshes
        are discarded (a noise value bouncing back above the floor on
        an even finer mesh carries no rate information).

    Returns
    -------
    float or None
        Fitted slope, or None when fewer than two meshes remain
        (rate undefined / saturated).
    """
    h = np.asarray(h_values, dtype=float)
    e = np.asarray(errors, dtype=float)
    if h.shape != e.shape or h.ndim != 1:
        raise ValueError("h_values and errors must be 1D arrays of equal length")
    if len(h) < 3:
        raise ValueError("need at least 3 meshes for a convergence rate")
    above = np.nonzero(e <= floor)[0]
    stop = above[0] if len(above) else len(e)
    if stop < 2:
        return None
    slope = np.polyfit(np.log(h[:stop]), np.log(e[:stop]), 1)[0]
    return float(slope)


def condition_report(baseline: Spectrum, treated: Spectrum) -> ConditionReport:
    """Condition numbers of both spectra and the relative reduction.

    gamma = lambda_max / lambda_min per spectrum, rho their ratio, and
    the reduction percentage 100 * (1 - 1/rho).
    """
    out = []
    for s in (baseline, treated):
        lam = s.eigenvalues
        if lam[0] <= 0.0:
            raise ValueError(
                f"invalid spectrum: nonpositive eigenvalue {lam[0]:.3e}"
            )
        out.append((float(lam[0]), float(lam[-1])))
    (lmin, lmax), (tmin, tmax) = out
    gamma = lmax / lmin
    gamma_t = tmax / tmin
    rho = gamma / gamma_t
    return ConditionReport(lmin, lmax, tmin, tmax, gamma, gamma_t, rho,
                           100.0 * (1.0 - 1.0 / rho))


def outlier_metric(spectrum: Spectrum, exact: ExactSpectrum,
                   tail_fraction: float = 0.05,
                   flag_ratio: float = 10.0) -> OutlierMetric:
    """Compare the spectral tail against the bulk of the spectrum.

    The maximum relative eigenvalue error over the top ``tail_fraction``
    of modes is set against the maximum over the remaining modes; the
    tail is flagged when it exceeds ``flag_ratio`` times the bulk.
    Requires at least 20 modes so the tail is nonempty and meaningful.
    """
    n = spectrum.n
    if n < 20:
        raise ValueError(f"outlier metric needs >= 20 modes, got {n}")
    rel = eigenvalue_errors(spectrum, exact).relative_errors
    k = math.ceil(tail_fraction * n)
    top = float(rel[n - k :].max())
    rest = float(rel[: n - k].max())
    return OutlierMetric(top, rest, top > flag_ratio * rest)
