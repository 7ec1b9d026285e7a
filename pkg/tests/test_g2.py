import math

import numpy as np
import pytest

from so3g2.binaryform import BinaryForm, GL2
from so3g2.flow import (
    FlowState,
    Q0,
    Trajectory,
    flow_torsion_cubic,
    integrate_line,
    integrate_time_grid,
    time_integral,
)
from so3g2.g2 import (
    MetricFamily,
    assemble_g2,
    bs_metric,
    case2_family,
    case3_family,
    check_closedness,
    frame_metric6,
    ricci7,
    smoothness_check,
    smoothness_obstruction,
    triality_action,
    triality_matrix,
)
from so3g2.variety import ModelPoint, structure_constants


def bs_setup(lam=1.0, s0=0.5, t_len=0.06, h=1e-3):
    m = ModelPoint.make([1.0, 0.0], [-1.0, 0.0, 1.0])
    d = structure_constants(m)
    p = flow_torsion_cubic(d)
    q_b = BinaryForm(3, [lam, 0.0, 0.0, 0.0])
    t0 = time_integral(q_b, p, 0.0, s0)
    tg = t0 + np.arange(0.0, t_len + h / 2, h)
    traj = integrate_time_grid(p, q_b, s0, tg)
    return d, traj


def test_closedness_on_symmetric_trajectory():
    d, traj = bs_setup()
    samples = assemble_g2(traj)
    dphi, dstar = check_closedness(samples, d)
    assert dphi < 1e-6
    assert dstar < 1e-6


def test_closedness_convention_is_unique():
    d, traj = bs_setup(t_len=0.02)
    samples = assemble_g2(traj)
    _, dstar_wrong = check_closedness(samples, d, star_dt_sign=-1.0)
    assert dstar_wrong > 1e-2


def test_closedness_perturbed_control():
    d, traj = bs_setup()
    pert = Trajectory(p=traj.p, q_start=traj.q_start)
    for st, g in zip(traj.states, traj.frames):
        qp = BinaryForm(3, [st.q.coeffs[0],
                            st.q.coeffs[1] + 0.01 * math.sin(40.0 * st.t),
                            st.q.coeffs[2], st.q.coeffs[3]])
        pert.states.append(FlowState(q=qp, p=st.p, s=st.s, t=st.t, detg=st.detg))
        pert.frames.append(g)
    dphi, _ = check_closedness(assemble_g2(pert), d)
    assert dphi > 1e-3


def test_closedness_static_torsion_free():
    d = structure_constants(ModelPoint.make([0.0, 0.0], [0.0, 0.0, 0.0]))
    q0 = Q0.to_float()
    states = [FlowState(q=q0, p=BinaryForm(3, [0.0] * 4), s=0.0, t=i * 1e-3, detg=1.0)
              for i in range(6)]
    traj = Trajectory(p=BinaryForm(3, [0.0] * 4), q_start=q0, states=states,
                      frames=[GL2.identity()] * 6)
    samples = assemble_g2(traj)
    dphi, dstar = check_closedness(samples, d)
    # exactly zero in the algebra directions, only time-difference noise
    assert dphi < 1e-12 and dstar < 1e-12


def test_nearly_kahler_cone_evolution():
    # the symmetric point evolves conically: q(t) proportional to q(0)
    m = ModelPoint.make([1.0, 0.0], [-1.0, 0.0, 3.0])
    d = structure_constants(m)
    p = flow_torsion_cubic(d)
    tg = np.linspace(0.0, 0.3, 13)
    traj = integrate_time_grid(p, Q0.to_float(), 0.0, tg)
    for st in traj.states:
        ratio = [float(a) / float(b) for a, b in zip(st.q.coeffs, Q0.coeffs)
                 if float(b) != 0]
        assert abs(ratio[0] - ratio[1]) < 1e-10
    samples = assemble_g2(traj)
    dphi, dstar = check_closedness(samples, d)
    assert max(dphi, dstar) < 1e-6


def test_bs_metric_values_and_errors():
    m = bs_metric(1.0, 0.0)
    assert abs(m[0, 0] - 3.0 ** (2.0 / 3.0)) < 1e-14
    assert abs(m[3, 3] - 4.0 * 3.0 ** (-1.0 / 3.0)) < 1e-14
    assert np.allclose(bs_metric(2.0, 0.8), bs_metric(2.0, -0.8))
    with pytest.raises(ValueError):
        bs_metric(-1.0, 0.0)


def test_bs_metric_rescaling_normalizes_lambda():
    # scaling z by lam^(1/2) relates the lam family to the unit one
    lam, z = 2.0, 0.7
    left = bs_metric(lam, z)
    right = bs_metric(1.0, z / math.sqrt(lam))
    assert np.allclose(left[:3, :3], lam ** (2.0 / 3.0) * right[:3, :3])
    assert np.allclose(left[3:, 3:], lam ** (-1.0 / 3.0) * right[3:, 3:])


def test_smoothness_cases():
    for lam in (0.5, 1.0, 2.0):
        assert smoothness_check(case3_family(lam))
    assert smoothness_check(case2_family(1.0 / 3.0))
    assert not smoothness_check(case2_family(1.0))
    assert not smoothness_check(case2_family(0.1))
    obs = smoothness_obstruction(case2_family(1.0))
    assert abs(obs - (1.0 - 3.0 ** (1.0 / 3.0))) < 1e-8


def test_smoothness_rejects_odd_component():
    fam = MetricFamily(base=lambda z: 1.0 + z, fib=lambda z: 0.25 * z * z,
                       rad=lambda z: 1.0)
    assert not smoothness_check(fam)


def test_flow_metric_matches_complete_family():
    # along the trajectory from q = lam u1^3: base and fibre eigenvalues
    # follow (3(s+lam))^(2/3) and s (3(s+lam))^(-1/3), i.e. the complete
    # metric functions in z^2 = s
    lam = 1.0
    p = BinaryForm(3, [1.0, 0.0, -1.0, 0.0])
    q_b = BinaryForm(3, [lam, 0.0, 0.0, 0.0])
    svals = np.linspace(0.2, 3.0, 9)
    traj = integrate_line(p, q_b, svals)
    for s, g in zip(svals, traj.frames):
        block = frame_metric6(g)[:2, :2]
        ev = np.sort(np.linalg.eigvalsh(block))
        assert abs(ev[1] - (3 * (s + lam)) ** (2.0 / 3.0)) < 1e-9
        assert abs(ev[0] - s * (3 * (s + lam)) ** (-1.0 / 3.0)) < 1e-9
        z = math.sqrt(s)
        m7 = bs_metric(lam, z)
        assert abs(ev[1] - m7[0, 0]) < 1e-9
        # the 7-dim fibre coefficient is 4 fib / z^2 in the flat chart
        assert abs(4.0 * ev[0] / (z * z) - m7[3, 3]) < 1e-9


def test_triality_matrix_and_action():
    assert np.allclose(triality_matrix(3).to_array(), np.eye(2), atol=0)
    m = ModelPoint.make([1.0, 0.0], [1.0, 0.0, -1.0])
    xs = []
    for k in range(3):
        mk = triality_action(k, m)
        tor = mk.x * mk.y
        assert max(abs(float(a) - float(b))
                   for a, b in zip(tor.coeffs, (1.0, 0.0, -1.0, 0.0))) < 1e-12
        a, b = (float(v) for v in mk.x.coeffs)
        n = math.hypot(a, b)
        a, b = a / n, b / n
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        xs.append((round(a, 6), round(b, 6)))
    assert len(set(xs)) == 3  # three distinct linear factors


def test_triality_requires_compact_class():
    with pytest.raises(ValueError):
        triality_action(1, ModelPoint.make([1.0, 0.0], [1.0, 0.0, 1.0]))


def test_triality_frame_identification():
    lam = 1.0
    p = BinaryForm(3, [1.0, 0.0, -1.0, 0.0])
    q_b = BinaryForm(3, [lam, 0.0, 0.0, 0.0])
    svals = np.linspace(0.3, 1.5, 5)
    traj0 = integrate_line(p, q_b, svals)
    mets0 = [frame_metric6(g)[:2, :2] for g in traj0.frames]
    for k in (1, 2):
        ellk = triality_matrix(k)
        qk = q_b.substitute(ellk.x, ellk.y, ellk.z, ellk.w)
        pk = p.substitute(ellk.x, ellk.y, ellk.z, ellk.w)
        assert max(abs(float(a) - float(b)) for a, b in zip(pk.coeffs, p.coeffs)) < 1e-12
        trajk = integrate_line(p, qk, svals)
        lk = ellk.to_array()
        for i, g in enumerate(trajk.frames):
            got = frame_metric6(g)[:2, :2]
            want = lk.T @ mets0[i] @ lk
            assert np.max(np.abs(got - want)) < 1e-10


def test_ricci7_spot_checks():
    m = ModelPoint.make([1.0, 0.0], [-1.0, 0.0, 1.0])
    d = structure_constants(m)
    for z in (0.4, 0.9, 1.6):
        assert np.max(np.abs(ricci7(case3_family(1.0), d, z))) < 1e-5
    # negative control: the displayed collapsing family away from the
    # flat parameter is visibly non-Ricci-flat
    m2 = ModelPoint.make([1.0, 0.0], [0.0, 0.0, -1.0])
    d2 = structure_constants(m2)
    assert np.max(np.abs(ricci7(case2_family(1.0), d2, 0.8))) > 1e-1


def test_g2_sample_export():
    d, traj = bs_setup(t_len=0.004)
    samples = assemble_g2(traj)
    payload = samples[0].to_json()
    assert set(payload) == {"t", "phi_terms", "starphi_terms", "metric7"}
    idxs = [tuple(t["idx"]) for t in payload["phi_terms"]]
    assert any(7 in idx for idx in idxs)      # the sigma ^ dt part
    assert any(7 not in idx for idx in idxs)  # the gamma part
    assert len(payload["metric7"]) == 7


def test_assemble_truncates_at_stability_loss(recwarn):
    import warnings as _w
    # a fake trajectory running past the discriminant boundary
    p = BinaryForm(3, [1.0, 0.0, -1.0, 0.0])
    states, frames = [], []
    for i, s in enumerate([1.0, 0.5, 0.25, -0.1]):  # last point has Delta < 0
        q = BinaryForm(3, [1.0 + s, 0.0, -s, 0.0])
        states.append(FlowState(q=q, p=p, s=s, t=float(i), detg=0.0))
        frames.append(GL2.identity())
    traj = Trajectory(p=p, q_start=states[0].q, states=states, frames=frames)
    with _w.catch_warnings(record=True) as rec:
        _w.simplefilter("always")
        samples = assemble_g2(traj)
    assert len(samples) == 3
    assert any("truncated" in str(w.message) for w in rec)
