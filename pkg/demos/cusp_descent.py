"""Descend the cusp x2^2 - pi*x1^3 to a curve over Q and check the result.

Run: python3 demos/cusp_descent.py
"""

from equidescent.descent import descend
from equidescent.io import problem_from_json
from equidescent.verify import verify_output

problem = problem_from_json({
    "ground": "R", "r": 1, "d": 1, "P": "z - t", "bindings": ["pi"],
    "variables": ["x1", "x2"], "polynomials": ["x2^2 - t*x1^3"], "epsilon": "1/100",
})

out = descend(problem)
print("rational point q      :", ", ".join(str(x) for x in out.q))
print("descended polynomial  :", out.outputs[0].to_str(problem.names))
print("cascade shape (d, l)  :", out.certificate.shape())
print("coefficient distance <", float(out.achieved_eps))

report = verify_output(problem, out)
for entry in report.entries:
    print(f"  {entry.name:<15}{entry.status}")
print("overall:", report.status)
