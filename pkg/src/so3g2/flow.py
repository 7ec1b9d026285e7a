"""The half-flat evolution as a line in cubic space.

The evolving 3-form corresponds to a cubic q moving along the affine
line q0 + s p, where p is the d(sigma)-reading of the torsion of the
reference frame; the physical time satisfies ds/dt = det g with the
clock identity (det g)^6 = (3/4) Delta(q).  A direct integration of the
evolution equations

    gamma' = d sigma,  (sigma^2)' = -2 d gamma_hat

on the invariant forms exists for cross-validation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import integrate as _sciint

from ._exact import mat_rank
from .binaryform import BinaryForm, GL2, discriminant, q_invert, q_map
from .exterior import CEOperator, apply_d, wedge
from .stableform import (
    SIGMA,
    cubic_to_3form,
    hitchin_dual,
    threeform_to_cubic,
    volume_gamma,
)

F = Fraction

#: cubic of the identity frame, q(0) = (1/3) u1^3 - u1 u2^2
Q0 = BinaryForm(3, [F(1, 3), 0, -1, 0])

SIGMA2 = wedge(SIGMA, SIGMA)


@dataclass(frozen=True)
class FlowState:
    q: BinaryForm
    p: BinaryForm
    s: float
    t: float
    detg: float


class EndpointKind(Enum):
    ZeroCubic = "zero cubic"
    TripleRootDividingP = "triple root dividing p"


@dataclass(frozen=True)
class EndpointInfo:
    kind: EndpointKind
    root: Optional[BinaryForm]
    lambda_coefficient: float


def clock_detg(q: BinaryForm) -> float:
    """det g from the discriminant clock (det g)^6 = (3/4) Delta(q)."""
    disc = float(discriminant(q))
    if disc <= 0:
        return 0.0
    return (0.75 * disc) ** (1.0 / 6.0)


def line_cubic(q0: BinaryForm, p: BinaryForm, s) -> BinaryForm:
    return BinaryForm(3, [a + s * b for a, b in zip(q0.coeffs, p.coeffs)])


def line_discriminant_poly(q0: BinaryForm, p: BinaryForm):
    """Coefficients [c4, c3, c2, c1, c0] of Delta(q0 + s p) as a polynomial in s.

    Exact when the inputs are exact: each coefficient of the moving cubic
    is a degree-one polynomial in s and the discriminant is expanded
    through binary-form products in (s, 1).
    """
    qs = [BinaryForm(1, [pv, qv]) for qv, pv in zip(q0.coeffs, p.coeffs)]
    q1, q2, q3, q4 = qs

    def power(f, n):
        out = BinaryForm(0, [1])
        for _ in range(n):
            out = out * f
        return out

    expr = (
        power(q2, 2) * power(q3, 2)
        - 4 * (q1 * power(q3, 3))
        - 4 * (power(q2, 3) * q4)
        + 18 * (q1 * q2 * q3 * q4)
        - 27 * (power(q1, 2) * power(q4, 2))
    )
    return list(expr.coeffs)


def _poly_eval(coeffs, s):
    total = 0
    for c in coeffs:
        total = total * s + c
    return total


def _poly_real_roots(coeffs) -> list[float]:
    arr = np.array([float(c) for c in coeffs])
    scale = np.max(np.abs(arr)) if np.max(np.abs(arr)) > 0 else 1.0
    nz = np.nonzero(np.abs(arr) > 1e-14 * scale)[0]
    if len(nz) == 0:
        return []
    arr = arr[nz[0]:]
    if len(arr) <= 1:
        return []
    roots = np.roots(arr)
    out = [_polish_root(list(arr), float(r.real))
           for r in roots if abs(r.imag) <= 1e-6 * (1 + abs(r.real))]
    return sorted(out)


def _polish_root(coeffs, r0: float) -> float:
    """Newton-polish a real root; multiple roots are refined on the
    derivative of matching order, where they are simple.

    The multiplicity estimate improves as the point does, so detection
    and polishing are iterated: a fourfold root seen from a crude seed
    first looks triple, converges part way, and is then recognized.
    """
    r = r0
    k_prev = 0
    for _ in range(4):
        k = max(1, _root_multiplicity(coeffs, r, tol=1e-4))
        if k == k_prev:
            break
        k_prev = k
        work = [float(c) for c in coeffs]
        for _ in range(k - 1):
            deg = len(work) - 1
            work = [work[i] * (deg - i) for i in range(deg)]
        der = [work[i] * (len(work) - 1 - i) for i in range(len(work) - 1)]
        for _ in range(60):
            f = _poly_eval(work, r)
            fp = _poly_eval(der, r)
            if fp == 0:
                break
            step = f / fp
            r -= step
            if abs(step) < 1e-16 * max(1.0, abs(r)):
                break
    return r


def _root_multiplicity(coeffs, s0, tol=1e-9) -> int:
    arr = [float(c) for c in coeffs]
    scale = max(abs(v) for v in arr) or 1.0
    mult = 0
    deg = len(arr) - 1
    while deg >= 0:
        if abs(_poly_eval(arr, s0)) > tol * scale * max(1.0, abs(s0)) ** deg:
            break
        mult += 1
        deg -= 1
        arr = [c * (deg + 1 - i) for i, c in enumerate(arr[:-1])]
        if not arr:
            break
    return mult


def time_integral(q0: BinaryForm, p: BinaryForm, s_from: float, s_to: float) -> float:
    """Physical time across [s_from, s_to]: integral of (3/4 Delta)^(-1/6) ds.

    Delta must be positive in the interior; integrable boundary
    singularities (Delta vanishing to finite order at an endpoint) are
    removed by a power substitution whose exponent comes from the root
    multiplicity of the discriminant polynomial.
    """
    if s_from == s_to:
        return 0.0
    poly = line_discriminant_poly(q0, p)
    sign = 1.0
    a, b = s_from, s_to
    if a > b:
        a, b = b, a
        sign = -1.0

    def integrand(s):
        val = float(_poly_eval(poly, s))
        if val <= 0:
            return 0.0
        return (0.75 * val) ** (-1.0 / 6.0)

    mid = 0.5 * (a + b)
    total = 0.0
    total += _half_integral(integrand, poly, a, mid, left_end=True)
    total += _half_integral(integrand, poly, mid, b, left_end=False)
    return sign * total


def _half_integral(integrand, poly, a, b, left_end: bool) -> float:
    """Integrate over [a, b] where only the outer endpoint may be singular."""
    end = a if left_end else b
    scale = max(abs(float(c)) for c in poly) or 1.0
    width = abs(b - a)
    singular = abs(float(_poly_eval(poly, end))) < 1e-9 * scale * max(1.0, width) ** 4
    if not singular:
        val, _ = _sciint.quad(integrand, a, b, limit=200, epsabs=1e-13, epsrel=1e-12)
        return val
    k = _root_multiplicity(poly, end)
    k = min(max(k, 1), 5)
    expo = 6.0 / (6.0 - k)

    if left_end:
        def sub(u):
            return integrand(a + u ** expo) * expo * u ** (expo - 1.0)
        upper = width ** (1.0 / expo)
    else:
        def sub(u):
            return integrand(b - u ** expo) * expo * u ** (expo - 1.0)
        upper = width ** (1.0 / expo)
    # the substitution removes the endpoint singularity; quad may still
    # warn about residual kinks far below our tolerances
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _sciint.IntegrationWarning)
        val, _ = _sciint.quad(sub, 0.0, upper, limit=300, epsabs=1e-13, epsrel=1e-12)
    return val


def advance(state: FlowState, ds: float):
    """Advance a flow state along the line by ds.

    Returns (new_state, clamped); when the discriminant hits zero inside
    the step, the state is clamped to the boundary point and clamped is
    True.
    """
    poly = line_discriminant_poly(state.q, state.p)
    s_target = ds
    roots = [r for r in _poly_real_roots(poly)
             if (0 < r <= ds if ds > 0 else ds <= r < 0)]
    clamped = False
    if roots:
        s_target = min(roots, key=abs)
        clamped = True
    dt = time_integral(state.q, state.p, 0.0, s_target)
    q_new = line_cubic(state.q, state.p, s_target)
    return (
        FlowState(q=q_new, p=state.p, s=state.s + s_target, t=state.t + dt,
                  detg=clock_detg(q_new)),
        clamped,
    )


def flow_torsion_cubic(d: CEOperator) -> BinaryForm:
    """The d(sigma)-reading of the torsion: the line direction of the flow."""
    return threeform_to_cubic(apply_d(d, SIGMA).to_float())


# ---------------------------------------------------------------------------
# frame-change torsion and the half-flat / Hermitian loci
# ---------------------------------------------------------------------------

def frame_change_torsion(lam: BinaryForm, g: GL2) -> BinaryForm:
    """Torsion of the frame changed by g^{-1}.

    Written out this is
      l1 -> -l4 z^3 + l3 z^2 w - l2 z w^2 + l1 w^3, ...,
      l4 -> l4 x^3 - l3 x^2 y + l2 x y^2 - l1 y^3,
    which coincides with the substitution action act(g, lam).
    """
    if lam.degree != 3:
        raise ValueError("expected a cubic")
    l1, l2, l3, l4 = lam.coeffs
    x, y, z, w = g.x, g.y, g.z, g.w
    return BinaryForm(3, [
        -l4 * z ** 3 + l3 * z ** 2 * w - l2 * z * w ** 2 + l1 * w ** 3,
        3 * l4 * x * z ** 2 - 2 * l3 * x * z * w + l2 * x * w ** 2
        - l3 * y * z ** 2 + 2 * l2 * y * z * w - 3 * l1 * y * w ** 2,
        -3 * l4 * x ** 2 * z + l3 * x ** 2 * w + 2 * l3 * x * y * z
        - 2 * l2 * x * y * w - l2 * y ** 2 * z + 3 * l1 * y ** 2 * w,
        l4 * x ** 3 - l3 * x ** 2 * y + l2 * x * y ** 2 - l1 * y ** 3,
    ])


def halfflat_condition(p: BinaryForm, g: GL2):
    """Zero iff the g-frame structure with reference torsion p is half-flat."""
    x, y, z, w = g.x, g.y, g.z, g.w
    return p(y, -x) - y * p.d_u1()(w, -z) + x * p.d_u2()(w, -z)


def hermitian_condition(p: BinaryForm, g: GL2):
    """The complementary locus condition: zero (together with half-flatness)
    iff the g-frame structure is Hermitian."""
    x, y, z, w = g.x, g.y, g.z, g.w
    return p(w, -z) - w * p.d_u1()(y, -x) + z * p.d_u2()(y, -x)


def is_halfflat_cubic(p: BinaryForm, tol: float = 1e-12) -> bool:
    return abs(float(p.coeffs[1]) - float(p.coeffs[3])) <= tol * max(1.0, p.norm())


# ---------------------------------------------------------------------------
# trajectories with a continuous frame branch
# ---------------------------------------------------------------------------

@dataclass
class Trajectory:
    p: BinaryForm
    q_start: BinaryForm
    states: list = field(default_factory=list)
    frames: list = field(default_factory=list)

    def qs(self):
        return [st.q for st in self.states]


def _frame_candidates(q: BinaryForm) -> list[GL2]:
    cands = []
    for g in q_invert(q):
        for flip in (1.0, -1.0):
            cands.append(GL2(g.x, g.y, flip * g.z, flip * g.w))
    return cands


def _nearest_frame(cands, prev: Optional[GL2], want_positive_det: bool) -> GL2:
    pool = [g for g in cands if (float(g.det()) > 0) == want_positive_det] or cands
    if prev is None:
        pool.sort(key=lambda g: (abs(g.x - 1) + abs(g.w - 1) + abs(g.y) + abs(g.z)))
        return pool[0]
    def dist(g):
        return (abs(g.x - prev.x) + abs(g.y - prev.y)
                + abs(g.z - prev.z) + abs(g.w - prev.w))
    return min(pool, key=dist)


def integrate_line(p: BinaryForm, q_start: BinaryForm, s_values,
                   t_start: float = 0.0) -> Trajectory:
    """Sample the closed-form flow along prescribed line parameters.

    s_values are offsets from q_start; the interior must have positive
    discriminant.  Frames are chosen on the continuous det > 0 branch.
    """
    traj = Trajectory(p=p, q_start=q_start)
    prev_g = None
    prev_s = None
    t = t_start
    for s in s_values:
        q = line_cubic(q_start, p, s)
        disc = float(discriminant(q))
        if disc <= 0:
            raise ValueError(f"discriminant not positive at s={s}")
        if prev_s is not None:
            t += time_integral(q_start, p, prev_s, s)
        g = _nearest_frame(_frame_candidates(q), prev_g, want_positive_det=True)
        traj.states.append(FlowState(q=q, p=p, s=float(s), t=t, detg=clock_detg(q)))
        traj.frames.append(g)
        prev_g, prev_s = g, s
    return traj


def integrate_time_grid(p: BinaryForm, q_start: BinaryForm, s0: float,
                        t_grid) -> Trajectory:
    """Sample the closed-form flow on a prescribed physical-time grid.

    The line parameter s(t) solves ds/dt = det g starting from s0 at the
    first grid time; the start must have positive discriminant.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if float(discriminant(line_cubic(q_start, p, s0))) <= 0:
        raise ValueError("start must have positive discriminant")

    def rhs(_t, y):
        return [clock_detg(line_cubic(q_start, p, y[0]))]

    sol = _sciint.solve_ivp(rhs, (t_grid[0], t_grid[-1]), [s0], method="DOP853",
                            rtol=1e-12, atol=1e-14, dense_output=True)
    if sol.status != 0:
        raise RuntimeError("time reparameterization failed")
    traj = Trajectory(p=p, q_start=q_start)
    prev_g = None
    for t in t_grid:
        s = float(sol.sol(t)[0])
        q = line_cubic(q_start, p, s)
        g = _nearest_frame(_frame_candidates(q), prev_g, want_positive_det=True)
        traj.states.append(FlowState(q=q, p=p, s=s, t=float(t), detg=clock_detg(q)))
        traj.frames.append(g)
        prev_g = g
    return traj


# ---------------------------------------------------------------------------
# direct integration of the evolution equations (oracle)
# ---------------------------------------------------------------------------

@dataclass
class OracleTrajectory:
    ts: np.ndarray
    gammas: list
    sigma2s: list
    qs: list
    cs: np.ndarray
    status: str


def direct_ode_oracle(d: CEOperator, g0: GL2, t_span, n_samples: int = 60,
                      rtol: float = 1e-11, atol: float = 1e-13) -> OracleTrajectory:
    """Integrate gamma' = d sigma, (sigma^2)' = -2 d gamma_hat directly.

    The state is the invariant 3-form gamma (four coefficients) together
    with the coefficient c of sigma^2 against the reference sigma_0^2;
    gamma_hat is recomputed each step through the stable-form dual.
    Terminates with a boundary report when stability or positivity is
    lost.  The initial frame must be half-flat.
    """
    d = d.to_float()
    p_read = flow_torsion_cubic(d)
    if not is_halfflat_cubic(frame_change_torsion(p_read, g0), tol=1e-9):
        raise ValueError("initial frame is not half-flat")
    q_init = q_map(g0)
    c0 = float(g0.det()) ** 2
    y0 = np.array([3.0 * float(q_init.coeffs[0]), float(q_init.coeffs[1]),
                   float(q_init.coeffs[2]), 3.0 * float(q_init.coeffs[3]), c0])
    pv = np.array([3.0 * float(p_read.coeffs[0]), float(p_read.coeffs[1]),
                   float(p_read.coeffs[2]), 3.0 * float(p_read.coeffs[3])])

    def gamma_form(y):
        return cubic_to_3form(BinaryForm(3, [y[0] / 3.0, y[1], y[2], y[3] / 3.0]))

    def rhs(_t, y):
        c = y[4]
        detg = math.sqrt(max(c, 0.0))
        gdot = detg * pv
        gham = hitchin_dual(gamma_form(y))
        dgh = apply_d(d, gham)
        mu = float(dgh.coeffs.get((1, 2, 3, 4), 0.0)) / 2.0
        return np.concatenate([gdot, [-2.0 * mu]])

    def stability(_t, y):
        if y[4] <= 0:
            return 0.0
        try:
            hitchin_dual(gamma_form(y))
        except ValueError:
            return 0.0
        return 1.0

    stability.terminal = True
    stability.direction = 0

    sol = _sciint.solve_ivp(rhs, t_span, y0, method="DOP853", rtol=rtol, atol=atol,
                            dense_output=True, events=stability, max_step=abs(t_span[1] - t_span[0]) / 8)
    ts = np.linspace(t_span[0], sol.t[-1], n_samples)
    gammas, sigma2s, qs = [], [], []
    cs = np.zeros(len(ts))
    for i, t in enumerate(ts):
        y = sol.sol(t)
        gammas.append(gamma_form(y))
        cs[i] = y[4]
        sigma2s.append(float(y[4]) * SIGMA2.to_float())
        qs.append(BinaryForm(3, [y[0] / 3.0, y[1], y[2], y[3] / 3.0]))
    status = "boundary" if sol.status == 1 else ("ok" if sol.status == 0 else "failed")
    return OracleTrajectory(ts=ts, gammas=gammas, sigma2s=sigma2s, qs=qs, cs=cs,
                            status=status)


# ---------------------------------------------------------------------------
# endpoints
# ---------------------------------------------------------------------------

def _triple_root(q: BinaryForm, tol: float):
    """(root f, lambda) if q = lambda f^3, else None."""
    q1, q2, q3, q4 = (float(v) for v in q.coeffs)
    scale = max(abs(q1), abs(q2), abs(q3), abs(q4))
    hess = (q2 * q2 - 3 * q1 * q3, q2 * q3 - 9 * q1 * q4, q3 * q3 - 3 * q2 * q4)
    if max(abs(h) for h in hess) > tol * max(1.0, scale) ** 2:
        return None
    if abs(q1) >= abs(q4):
        alpha, beta = 3 * q1, q2
    else:
        alpha, beta = q3, 3 * q4
    n = math.hypot(alpha, beta)
    if n == 0:
        return None
    alpha, beta = alpha / n, beta / n
    if alpha < 0 or (alpha == 0 and beta < 0):
        alpha, beta = -alpha, -beta
    lam = q(alpha, beta) / (alpha ** 2 + beta ** 2) ** 3
    return BinaryForm(1, [alpha, beta]), lam


class InvalidEndpoint(ValueError):
    pass


def endpoint_classify(p: BinaryForm, q_end: BinaryForm, tol: float = 1e-9) -> EndpointInfo:
    """Classify a boundary cubic of the flow line in direction p.

    Valid endpoints are the zero cubic or lambda f^3 with f a linear
    divisor of p, and in both cases the line must enter the positive
    discriminant region next to the endpoint.  Anything else (in
    particular a double-but-not-triple root) raises InvalidEndpoint.

    The returned root is unit-normalized with its first nonzero
    component positive and the coefficient scaled so q_end = lambda * root^3.
    """
    scale = max(1.0, q_end.norm()) ** 4
    if abs(float(discriminant(q_end))) > tol * scale:
        raise InvalidEndpoint("endpoint must have vanishing discriminant")
    line_poly = line_discriminant_poly(q_end, p)
    if not _line_enters_positive(line_poly, tol):
        raise InvalidEndpoint("flow line never has positive discriminant at this point")
    if q_end.norm() <= tol * max(1.0, p.norm()):
        return EndpointInfo(kind=EndpointKind.ZeroCubic, root=None, lambda_coefficient=0.0)
    tr = _triple_root(q_end, tol)
    if tr is None:
        raise InvalidEndpoint("invalid endpoint: double root that is not triple")
    root, lam = tr
    alpha, beta = (float(v) for v in root.coeffs)
    if abs(float(p(-beta, alpha))) > tol * max(1.0, p.norm()):
        raise InvalidEndpoint("triple root does not divide the torsion direction")
    return EndpointInfo(kind=EndpointKind.TripleRootDividingP, root=root,
                        lambda_coefficient=lam)


def _line_enters_positive(poly, tol: float) -> bool:
    """Whether Delta(q + s p) > 0 for small |s| != 0 on at least one side."""
    coeffs = [float(c) for c in poly]
    scale = max(abs(c) for c in coeffs) or 1.0
    ordered = coeffs[::-1]  # [c0, c1, c2, c3, c4]; lowest order decides near s = 0
    for j, c in enumerate(ordered):
        if abs(c) > tol * scale:
            if j == 0:
                return c > 0
            pos_right = c > 0
            pos_left = (c > 0) if j % 2 == 0 else (c < 0)
            return pos_right or pos_left
    return False


# ---------------------------------------------------------------------------
# non-completeness witness
# ---------------------------------------------------------------------------

def no_complete_line_witness(p: BinaryForm) -> float:
    """A concrete s with Delta(Q0 + s p) <= 0 for nonzero half-flat p.

    Prefers a strictly negative value when the discriminant polynomial
    is eventually negative; otherwise returns a real root.
    """
    if p.is_zero():
        raise ValueError("p must be nonzero")
    if not is_halfflat_cubic(p, tol=1e-10):
        raise ValueError("p must satisfy the half-flat condition l2 = l4")
    poly = [float(c) for c in line_discriminant_poly(Q0, p)]
    scale = max(abs(c) for c in poly) or 1.0
    trimmed = poly[:]
    while trimmed and abs(trimmed[0]) <= 1e-13 * scale:
        trimmed.pop(0)
    roots = _poly_real_roots(poly)
    if trimmed and trimmed[0] < 0:
        # eventually negative: step past the largest root
        edge = max(roots) + 1.0 if roots else 1.0
        while _poly_eval(poly, edge) > 0:
            edge *= 2.0
        return edge
    if roots:
        return roots[0]
    raise ArithmeticError("half-flat line with everywhere-positive discriminant")


# ---------------------------------------------------------------------------
# contractions
# ---------------------------------------------------------------------------

def contraction_field(a, b, c, lam: BinaryForm) -> BinaryForm:
    """Value at lam of the generator field of the one-parameter subgroup
    with traceless generator (a b / c -a)."""
    l1, l2, l3, l4 = lam.coeffs
    return BinaryForm(3, [
        3 * a * l1 + b * l2,
        3 * c * l1 + a * l2 + 2 * b * l3,
        2 * c * l2 - a * l3 + 3 * b * l4,
        c * l3 - 3 * a * l4,
    ])


def contraction_plane(a, b, c):
    """Basis of the candidate half-flat plane for the generator (a, b, c).

    The plane is cut out by l2 = l4 and the derivative condition
    3c l1 + 4a l2 + (2b - c) l3 = 0; exact rational basis vectors.
    """
    rows = [
        [F(3) * c, F(4) * a, F(2) * b - c, F(0)],
        [F(0), F(1), F(0), F(-1)],
    ]
    return _nullspace_basis(rows)


def _nullspace_basis(rows):
    n = 4
    rows = [[F(v) for v in r] for r in rows]
    # gaussian elimination with pivot tracking
    a = [list(r) for r in rows]
    m = len(a)
    piv_cols = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][col]
        a[r] = [v / pv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        piv_cols.append(col)
        r += 1
    free = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fc in free:
        vec = [F(0)] * n
        vec[fc] = F(1)
        for i, pc in enumerate(piv_cols):
            vec[pc] = -a[i][fc]
        basis.append(vec)
    return basis


def plane_is_invariant(a, b, c) -> bool:
    """Whether the generator field is tangent to its candidate plane and
    acts nontrivially on it (exact for rational generators)."""
    basis = contraction_plane(a, b, c)
    if len(basis) != 2:
        return False
    imgs = []
    nontrivial = False
    for v in basis:
        img = contraction_field(a, b, c, BinaryForm(3, v)).coeffs
        imgs.append(list(img))
        if any(val != 0 for val in img):
            nontrivial = True
    if not nontrivial:
        return False
    for img in imgs:
        if mat_rank(basis + [img]) != 2:
            return False
    return True


def plane_tangency_defect(a, b, c) -> float:
    """Scaled least-squares defect of the generator field against its
    candidate half-flat plane (float inputs welcome; zero iff invariant).

    Infinite when the field vanishes identically on the plane, so that a
    trivial orbit never counts as qualifying.
    """
    rows = np.array([[3.0 * c, 4.0 * a, 2.0 * b - c, 0.0],
                     [0.0, 1.0, 0.0, -1.0]], dtype=float)
    _, _, vt = np.linalg.svd(rows)
    null = vt[2:]
    defect = 0.0
    size = 0.0
    for v in null:
        img = np.array([float(x) for x in
                        contraction_field(a, b, c, BinaryForm(3, list(v))).coeffs])
        size = max(size, float(np.linalg.norm(img)))
        coef, *_ = np.linalg.lstsq(null.T, img, rcond=None)
        defect = max(defect, float(np.linalg.norm(null.T @ coef - img)))
    if size < 1e-10 * max(1.0, abs(a), abs(b), abs(c)):
        return math.inf
    return defect / max(1.0, size)


CANONICAL_GENERATORS = ((1, 0, 0), (0, 1, 3), (0, 1, -1))


def halfflat_contraction_planes():
    """The three invariant generators and their half-flat planes."""
    out = []
    for gen in CANONICAL_GENERATORS:
        out.append((gen, contraction_plane(*gen)))
    return out


def planes_equal(b1, b2) -> bool:
    rows = [list(v) for v in b1] + [list(v) for v in b2]
    return mat_rank(rows) == len(b1) == len(b2)


# ---------------------------------------------------------------------------
# Hamiltonian picture
# ---------------------------------------------------------------------------

def hamiltonian(a1, a2, lam: BinaryForm):
    """H = V(gamma) - 2 V(sigma^2 / 2) on the invariant phase plane.

    Vanishes identically along solutions: the volume of the moving
    3-form equals twice (1 + a2)^(3/2) = 2 (det g)^3 by the clock.
    """
    if a2 <= -1:
        raise ValueError("a2 must exceed -1")
    return volume_gamma(a1, lam) - 2.0 * (1.0 + a2) ** 1.5
