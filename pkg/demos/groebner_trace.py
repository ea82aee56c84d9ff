"""Buchberger traces over Q(pi) and over Q take the same steps.

Run: python3 demos/groebner_trace.py
"""

from equidescent.descent import descend
from equidescent.io import problem_from_json
from equidescent.verify import buchberger, groebner_trace_compare

problem = problem_from_json({
    "ground": "R", "r": 1, "d": 1, "P": "z - t", "bindings": ["pi"],
    "variables": ["x1", "x2"], "polynomials": ["x1^2 - t*x2", "x1*x2"], "epsilon": "1/100",
})
out = descend(problem)

for side, gens in (("input ", problem.inputs), ("output", out.outputs)):
    run = buchberger(gens, "grlex")
    print(side, [g.to_str(problem.names) for g in gens])
    for step in run.trace:
        print("   ", step)

res = groebner_trace_compare(problem, out, "grlex")
print("traces agree:", res.status, " leading-term ideal:", res.witness["lt_ideal"])
print("Hilbert function:", res.witness["hilbert"])
