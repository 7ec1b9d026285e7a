"""Curvature of the model metrics: a Koszul-formula oracle from structure
constants, and the closed-form traceless Ricci and scalar curvature.

The adapted coframe e^1..e^6 is declared orthonormal throughout; moving
the metric means moving the model point.  The closed forms are written
in rotated coordinates t1..t4 on the torsion module, in which the weight
structure of the circle action is diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .binaryform import BinaryForm
from .exterior import CEOperator, DIM, d_squared_residual
from .variety import ModelPoint, bracket_constants, structure_constants, torsion_of

F = Fraction


@dataclass(frozen=True)
class TCoords:
    """Rotated torsion coordinates; lambda = (t1+t3, -3t2+t4, -3t1+t3, t2+t4)."""

    t1: float
    t2: float
    t3: float
    t4: float

    def to_lambda(self) -> BinaryForm:
        return BinaryForm(3, [
            self.t1 + self.t3,
            -3 * self.t2 + self.t4,
            -3 * self.t1 + self.t3,
            self.t2 + self.t4,
        ])

    @staticmethod
    def from_lambda(lam: BinaryForm) -> "TCoords":
        l1, l2, l3, l4 = lam.coeffs
        exact = all(isinstance(v, (int, Fraction)) for v in lam.coeffs)
        quarter = F(1, 4) if exact else 0.25
        return TCoords(
            quarter * (l1 - l3),
            quarter * (l4 - l2),
            quarter * (3 * l1 + l3),
            quarter * (l2 + 3 * l4),
        )


@dataclass
class CurvatureReport:
    ricci: np.ndarray
    scalar: float
    ricci_traceless_norm: float
    weyl_norm: float

    def to_json(self) -> dict:
        return {
            "ricci": [[float(v) for v in row] for row in self.ricci],
            "scalar": float(self.scalar),
            "ricci_traceless_norm": float(self.ricci_traceless_norm),
            "weyl_norm": float(self.weyl_norm),
        }


def connection_coefficients(d: CEOperator):
    """Levi-Civita coefficients G[i][j][k] = <nabla_{e_i} e_j, e_k> for the
    orthonormal coframe, from 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>."""
    c = bracket_constants(d)

    def cc(i, j, k):
        return c[k][i][j]

    half = F(1, 2) if _exact_operator(d) else 0.5
    gam = [[[half * (cc(i, j, k) - cc(j, k, i) + cc(k, i, j))
             for k in range(DIM)] for j in range(DIM)] for i in range(DIM)]
    return gam


def _exact_operator(d: CEOperator) -> bool:
    return all(
        isinstance(v, (int, Fraction))
        for im in d.images
        for v in im.coeffs.values()
    )


def riemann_tensor(d: CEOperator):
    """Riem[i][j][k][l] = <R(e_i, e_j) e_k, e_l> with
    R(X,Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]."""
    residual = d_squared_residual(d)
    if (_exact_operator(d) and residual != 0) or float(residual) > 1e-9:
        raise ValueError("not a Lie algebra: d^2 != 0")
    gam = connection_coefficients(d)
    c = bracket_constants(d)
    riem = [[[[0] * DIM for _ in range(DIM)] for _ in range(DIM)] for _ in range(DIM)]
    for i in range(DIM):
        for j in range(i + 1, DIM):
            for k in range(DIM):
                for l in range(DIM):
                    val = 0
                    for m in range(DIM):
                        val += gam[j][k][m] * gam[i][m][l]
                        val -= gam[i][k][m] * gam[j][m][l]
                        val -= c[m][i][j] * gam[m][k][l]
                    riem[i][j][k][l] = val
                    riem[j][i][k][l] = -val
    return riem


def levi_civita_oracle(d: CEOperator) -> CurvatureReport:
    """Full curvature of the left-invariant metric with orthonormal coframe."""
    riem = riemann_tensor(d)
    ric = np.zeros((DIM, DIM))
    for j in range(DIM):
        for k in range(DIM):
            ric[j, k] = float(sum(riem[i][j][k][i] for i in range(DIM)))
    scalar = float(np.trace(ric))
    ric0 = ric - (scalar / DIM) * np.eye(DIM)
    weyl = _weyl_tensor(riem, ric, scalar)
    return CurvatureReport(
        ricci=ric,
        scalar=scalar,
        ricci_traceless_norm=float(np.sqrt(np.sum(ric0 * ric0))),
        weyl_norm=float(np.sqrt(np.sum(weyl * weyl))),
    )


def _weyl_tensor(riem, ric, scalar):
    """Weyl part of the (4,0) curvature in an orthonormal frame."""
    n = DIM
    w = np.zeros((n, n, n, n))
    g = np.eye(n)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    val = float(riem[i][j][k][l])
                    val -= (
                        g[i, k] * ric[j, l] - g[i, l] * ric[j, k]
                        + g[j, l] * ric[i, k] - g[j, k] * ric[i, l]
                    ) / (n - 2)
                    val += scalar * (g[i, k] * g[j, l] - g[i, l] * g[j, k]) / ((n - 1) * (n - 2))
                    w[i, j, k, l] = val
    return w


def first_bianchi_residual(d: CEOperator) -> float:
    riem = riemann_tensor(d)
    worst = 0.0
    for i in range(DIM):
        for j in range(DIM):
            for k in range(DIM):
                for l in range(DIM):
                    r = float(riem[i][j][k][l] + riem[j][k][i][l] + riem[k][i][j][l])
                    worst = max(worst, abs(r))
    return worst


def ricci_closed_form(t: TCoords):
    """Closed-form traceless Ricci (6x6) and scalar curvature.

    The traceless part has an off-diagonal block pairing the two triples
    and a diagonal +/- block.  In the standard convention of the Koszul
    oracle (unit orthonormal coframe, Ricci of the round sphere positive)
    the scalar curvature is s = 6 (5 t1^2 + 5 t2^2 - t3^2 - t4^2); the
    quadratic form in parentheses is the shape-invariant part, the factor
    6 is the frame normalization.
    """
    t1, t2, t3, t4 = t.t1, t.t2, t.t3, t.t4
    off = -2.0 * (t4 * t1 + 2 * t3 * t4 + t2 * t3)
    diag = 2.0 * (t4 ** 2 - t3 ** 2 + t3 * t1 - t2 * t4)
    ric0 = np.zeros((DIM, DIM))
    for pair in ((0, 1), (2, 3), (4, 5)):
        i, j = pair
        ric0[i, j] = ric0[j, i] = off
        ric0[i, i] = diag
        ric0[j, j] = -diag
    s = 6.0 * (5 * t1 ** 2 + 5 * t2 ** 2 - t3 ** 2 - t4 ** 2)
    return ric0, s


def model_tcoords(m: ModelPoint) -> TCoords:
    return TCoords.from_lambda(torsion_of(m))


EINSTEIN_TOL = 1e-12
WEYL_TOL = 1e-11


def einstein_locus_check(m: ModelPoint, tol: float = EINSTEIN_TOL) -> bool:
    """True iff the traceless Ricci of the built structure vanishes."""
    rep = levi_civita_oracle(structure_constants(m).to_float())
    scale = max(1.0, float(np.max(np.abs(rep.ricci))))
    return rep.ricci_traceless_norm <= tol * scale


def conformally_flat_check(m: ModelPoint, tol: float = WEYL_TOL) -> bool:
    """True iff the Weyl tensor vanishes; on this family that means flat."""
    rep = levi_civita_oracle(structure_constants(m).to_float())
    scale = max(1.0, float(abs(rep.scalar)), rep.ricci_traceless_norm)
    return rep.weyl_norm <= tol * scale
