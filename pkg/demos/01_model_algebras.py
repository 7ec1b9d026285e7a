"""The five model algebras and their exact invariants.

Every formal product of a nonzero linear and quadratic form gives a
six-dimensional Lie algebra whose flat connection has invariant torsion.
The discriminant of the quadratic and the resultant of the pair decide
the isomorphism class, and the Killing determinant collapses to the
single identity det F = (4 Delta R^2)^3.
"""

import random
from fractions import Fraction as F

from so3g2.binaryform import discriminant, resultant
from so3g2.exterior import d_squared_residual
from so3g2.variety import (
    ModelPoint,
    center_dim,
    classify,
    derived_algebra_dim,
    is_nilpotent,
    killing_det,
    killing_rank,
    killing_signature,
    structure_constants,
)

REPRESENTATIVES = [
    ("u1 (u1^2 - u2^2)", [1, 0], [1, 0, -1]),
    ("u1 (u1^2 + u2^2)", [1, 0], [1, 0, 1]),
    ("u1 u2^2        ", [1, 0], [0, 0, 1]),
    ("u1 u1u2        ", [1, 0], [0, 1, 0]),
    ("u1 u1^2        ", [1, 0], [1, 0, 0]),
]

print("=== the five models ===")
for name, x, y in REPRESENTATIVES:
    m = ModelPoint.make([F(v) for v in x], [F(v) for v in y])
    d = structure_constants(m)
    delta, res = discriminant(m.y), resultant(m.x, m.y)
    print(f"{name}  Delta={str(delta):>3} R={str(res):>3} "
          f"-> {classify(m).value:26s} detF={str(killing_det(d)):>6} "
          f"rank={killing_rank(d)} sig={killing_signature(d)} "
          f"[g,g]={derived_algebra_dim(d)} z(g)={center_dim(d)} "
          f"nilpotent={is_nilpotent(d)}")

print()
print("=== the Jacobi identity is exact on the variety ===")
rng = random.Random(0)
worst = 0
for _ in range(200):
    x = [F(rng.randint(-9, 9)) for _ in range(2)]
    y = [F(rng.randint(-9, 9)) for _ in range(3)]
    if all(v == 0 for v in x) or all(v == 0 for v in y):
        continue
    m = ModelPoint.make(x, y)
    worst = max(worst, d_squared_residual(structure_constants(m)))
print(f"max |d^2| over 200 random rational points: {worst} (exact zero)")

print()
print("=== Killing identity on a random sample ===")
for _ in range(5):
    x = [F(rng.randint(-5, 5)) for _ in range(2)]
    y = [F(rng.randint(-5, 5)) for _ in range(3)]
    if all(v == 0 for v in x) or all(v == 0 for v in y):
        continue
    m = ModelPoint.make(x, y)
    lhs = killing_det(structure_constants(m))
    rhs = (4 * discriminant(m.y) * resultant(m.x, m.y) ** 2) ** 3
    xs = [str(v) for v in x]
    ys = [str(v) for v in y]
    print(f"x={xs} y={ys}: det F = {lhs} = (4 Delta R^2)^3 = {rhs}")
