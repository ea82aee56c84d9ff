"""An algebraic coefficient: x1^2 + sqrt(pi)*x1 + pi with k = Q(t)[z]/(z^2 - t).

The output lives over Q[z]/(z^2 - q) with the embedding that continues the
positive square root, and the relation y1^2 = y2 between the two
coefficients survives exactly.

Run: python3 demos/sqrt_pi_descent.py
"""

from equidescent.descent import descend
from equidescent.io import problem_from_json
from equidescent.verify import verify_output

problem = problem_from_json({
    "ground": "R", "r": 1, "d": 2, "P": "z^2 - t", "bindings": ["pi"],
    "z_selector": {"center": "177/100", "radius": "1/10"},
    "variables": ["x1"], "polynomials": ["x1^2 + z*x1 + t"],
    "epsilon": "1/1000", "relations": ["y1^2 - y2"],
})

out = descend(problem)
A = out.algebra
zbar = A.z()
print("q                 :", out.q[0])
print("algebra           : Q[z]/(" + A.modulus_str() + ")")
print("embedding of z    :", float(zbar.ball(64).center.re))
print("output            :", out.outputs[0])
print("z^2 - q exactly 0 :", (zbar * zbar - out.q[0]).is_structural_zero())
print("verification      :", verify_output(problem, out).status)
