"""1D stiffness/mass assembly with blended quadrature and boundary penalty.

For the Dirichlet Laplacian on [0, 1] discretised by the interior
B-spline basis, this module builds the symmetric banded pair (K, M):

    K[i, j] = Q( phi_i' phi_j' ) + penalty,   M[i, j] = Q( phi_i phi_j ) + penalty,

where Q is the requested (possibly blended) quadrature rule applied
element by element.  The penalty adds, for each level l = 1 .. alpha
with alpha = floor((p - 1) / 2), the endpoint terms

    K += eta_a[l] * pi^2 * h^(6l-3) * [ w^(2l)(0) v^(2l)(0) + w^(2l)(1) v^(2l)(1) ]
    M += eta_b[l] *        h^(6l-1) * [ same ]

which only touch the (p-1) x (p-1) corner blocks and push the spurious
outlier modes out of the discrete spectrum.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bspline import BSplineSpace, boundary_derivatives
from .errors import ConfigurationError
from .quadrature import BlendedRule, QuadratureRule, map_to_element

__all__ = [
    "PenaltyConfig",
    "SymBandMatrix",
    "assemble_1d",
    "assemble_1d_reference_gauss",
]


def penalty_order(degree: int) -> int:
    """Number of penalty levels alpha = floor((degree - 1) / 2)."""
    return (degree - 1) // 2


@dataclass(frozen=True)
class PenaltyConfig:
    """Boundary penalty settings.

    ``eta_a`` / ``eta_b`` hold one scaling factor per level l = 1..alpha
    for the stiffness and mass penalties; the defaults are all ones.
    """

    enabled: bool
    alpha: int
    eta_a: tuple
    eta_b: tuple

    @classmethod
    def for_degree(cls, degree: int, enabled: bool = True,
                   eta_a=None, eta_b=None) -> "PenaltyConfig":
        alpha = penalty_order(degree)
        if eta_a is None:
            eta_a = (1.0,) * alpha
        if eta_b is None:
            eta_b = (1.0,) * alpha
        eta_a, eta_b = tuple(eta_a), tuple(eta_b)
        if len(eta_a) != alpha or len(eta_b) != alpha:
            raise ConfigurationError(
                f"penalty factors must have length alpha = {alpha} for degree {degree}"
            )
        return cls(enabled, alpha, eta_a, eta_b)

    @classmethod
    def off(cls) -> "PenaltyConfig":
        return cls(False, 0, (), ())


class SymBandMatrix:
    """Symmetric banded matrix, lower-band storage.

    ``data[k, i]`` holds entry (i + k, i) for diagonal offset
    k = 0..bandwidth; entries beyond the band are identically zero.
    """

    def __init__(self, n: int, bandwidth: int, data: np.ndarray | None = None):
        if n < 1 or bandwidth < 0:
            raise ConfigurationError(f"invalid band shape n={n}, bandwidth={bandwidth}")
        self.n = n
        self.bandwidth = bandwidth
        if data is None:
            data = np.zeros((bandwidth + 1, n))
        if data.shape != (bandwidth + 1, n):
            raise ConfigurationError("band data shape mismatch")
        self.data = data

    def add(self, i: int, j: int, value: float) -> None:
        """Accumulate into entry (i, j), i >= j, inside the band."""
        k = i - j
        if k < 0 or k > self.bandwidth:
            raise IndexError(f"entry ({i}, {j}) outside band of width {self.bandwidth}")
        self.data[k, j] += value

    def entry(self, i: int, j: int) -> float:
        if i < j:
            i, j = j, i
        k = i - j
        if k > self.bandwidth:
            return 0.0
        return float(self.data[k, j])

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for k in range(self.bandwidth + 1):
            vals = self.data[k, : self.n - k]
            idx = np.arange(self.n - k)
            a[idx + k, idx] = vals
            a[idx, idx + k] = vals
        return a

    def copy(self) -> "SymBandMatrix":
        return SymBandMatrix(self.n, self.bandwidth, self.data.copy())

    # --- plain text dump: header "n bandwidth", then one row per diagonal ---

    def write_text(self, path) -> None:
        """Dump to text: header line "n bandwidth", then band rows.

        Row k lists the n - k entries of diagonal offset k, whitespace
        separated, 17 significant digits.
        """
        lines = [f"{self.n} {self.bandwidth}"]
        for k in range(self.bandwidth + 1):
            row = self.data[k, : self.n - k]
            lines.append(" ".join(f"{v:.17g}" for v in row))
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def read_text(cls, path) -> "SymBandMatrix":
        with open(path) as fh:
            header = fh.readline().split()
            n, bw = int(header[0]), int(header[1])
            out = cls(n, bw)
            for k in range(bw + 1):
                row = np.array([float(v) for v in fh.readline().split()])
                if len(row) != n - k:
                    raise ValueError(f"band row {k} has {len(row)} entries, expected {n - k}")
                out.data[k, : n - k] = row
        return out


def _rule_parts(rule) -> list[tuple[QuadratureRule, float]]:
    if isinstance(rule, BlendedRule):
        return rule.parts()
    return [(rule, 1.0)]


def assemble_1d(space: BSplineSpace, rule, penalty: PenaltyConfig | None = None
                ) -> tuple[SymBandMatrix, SymBandMatrix]:
    """Assemble the 1D stiffness and mass pair (K, M).

    Parameters
    ----------
    space : BSplineSpace
        Interior spline space of degree p on n uniform elements.
    rule : QuadratureRule or BlendedRule
        Applied on every element; each constituent rule must have at
        least p + 1 points so the stiffness integrand is never
        under-integrated beyond the intended mass-matrix blending.
    penalty : PenaltyConfig, optional
        Boundary penalty; omitted or ``enabled=False`` leaves the
        corner blocks untouched.

    Returns
    -------
    (SymBandMatrix, SymBandMatrix)
        Stiffness and mass, both exactly symmetric with bandwidth p.
    """
    kv = space.knot_vector
    p, n, h = space.degree, space.n_elements, space.h
    n_dof = space.n_dof

    parts = _rule_parts(rule)
    for r, _ in parts:
        if r.m < p + 1:
            raise ConfigurationError(
                f"{r.family} rule with {r.m} points is insufficient for degree {p}; "
                f"need at least {p + 1} points per constituent rule"
            )
    if penalty is None:
        penalty = PenaltyConfig.off()
    if penalty.enabled and penalty.alpha != penalty_order(p):
        raise ConfigurationError(
            f"penalty config built for alpha = {penalty.alpha}, "
            f"but degree {p} requires alpha = {penalty_order(p)}"
        )

    K = SymBandMatrix(n_dof, p)
    M = SymBandMatrix(n_dof, p)

    k_loc = np.empty((p + 1, p + 1))
    m_loc = np.empty((p + 1, p + 1))
    for e in range(n):
        a, b = e * h, (e + 1) * h
        span = kv.span_of_element(e)
        k_loc[:] = 0.0
        m_loc[:] = 0.0
        for qrule, coeff in parts:
            elem = map_to_element(qrule, a, b)
            for x, w in zip(elem.nodes, coeff * elem.weights):
                ders = kv.all_basis_ders(span, x, 1)
                vals, grads = ders[0], ders[1]
                m_loc += w * np.outer(vals, vals)
                k_loc += w * np.outer(grads, grads)
        first = span - p  # full-basis index of the first local function
        for la in range(p + 1):
            gi = first + la - 1  # interior index
            if gi < 0 or gi >= n_dof:
                continue
            for lb in range(la + 1):
                gj = first + lb - 1
                if gj < 0 or gj >= n_dof:
                    continue
                K.add(gi, gj, k_loc[la, lb])
                M.add(gi, gj, m_loc[la, lb])

    if penalty.enabled:
        pi2 = math.pi * math.pi
        for level in range(1, penalty.alpha + 1):
            d0, d1 = boundary_derivatives(space, 2 * level)
            ca = penalty.eta_a[level - 1] * pi2 * h ** (6 * level - 3)
            cb = penalty.eta_b[level - 1] * h ** (6 * level - 1)
            for vec in (d0, d1):
                nz = np.flatnonzero(vec)
                for i in nz:
                    for j in nz[nz <= i]:
                        K.add(int(i), int(j), ca * vec[i] * vec[j])
                        M.add(int(i), int(j), cb * vec[i] * vec[j])

    return K, M


def assemble_1d_reference_gauss(space: BSplineSpace, penalty: PenaltyConfig | None = None
                                ) -> tuple[SymBandMatrix, SymBandMatrix]:
    """Assembly under the full (p+1)-point Gauss-Legendre baseline rule."""
    from .quadrature import gauss_legendre

    return assemble_1d(space, gauss_legendre(space.degree + 1), penalty)
