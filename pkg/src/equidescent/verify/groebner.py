"""Buchberger's algorithm with a fully deterministic schedule and a recorded trace.

Every S-polynomial of every pair is computed (no criteria), pairs are taken
by the normal strategy (smallest lcm of leading monomials, ties broken by the
pair indices), divisors are tried in increasing order of their leading
monomials, and nonzero remainders are made monic before insertion.  Running
this over the tower and over the specialized algebra and comparing the two
traces checks that both computations take literally the same steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import GuardExceeded, TraceDivergence
from ..exactcore.mpoly import MPoly, grlex_key, lex_key, monomial_divides

__all__ = [
    "GroebnerRun",
    "buchberger",
    "order_key",
    "minimal_monomials",
    "hilbert_function",
    "compare_traces",
    "MAX_VARS",
]

MAX_VARS = 4
MAX_BASIS = 64
MAX_PAIRS = 4000


def order_key(order: str):
    if order == "grlex":
        return grlex_key
    if order == "lex":
        return lex_key
    raise ValueError(f"unknown monomial order {order!r}")


@dataclass
class GroebnerRun:
    basis: list
    trace: list
    leading: list
    order: str
    lt_ideal: list = field(default_factory=list)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _monic(p: MPoly, key):
    lc = p.terms[p.leading_exponent(key)]
    return p if lc == 1 else p.scale(p.domain.one / lc)


def reduce_full(p: MPoly, divisors, key):
    """Complete remainder of ``p``; ``divisors`` are monic and tried in the given order."""
    rem = MPoly.zero(p.nvars, p.domain)
    lts = [(g.leading_exponent(key), g) for g in divisors]
    while p:
        e = p.leading_exponent(key)
        c = p.terms[e]
        for lt, g in lts:
            if monomial_divides(lt, e):
                p = p - g.mul_monomial(_sub(e, lt), c)
                break
        else:
            rem = rem + MPoly.monomial(e, c, p.domain)
            p = p - MPoly.monomial(e, c, p.domain)
    return rem


def minimal_monomials(exps):
    """Minimal generators of the monomial ideal spanned by ``exps``, sorted."""
    exps = sorted(set(exps), key=lambda e: (sum(e), e))
    out = []
    for e in exps:
        if not any(monomial_divides(m, e) for m in out):
            out.append(e)
    return sorted(out, key=lambda e: (sum(e), e), reverse=True)


def hilbert_function(gens, nvars: int, max_degree: int = 6):
    """Number of standard monomials (outside the monomial ideal) of each degree <= max_degree."""
    out = []
    for d in range(max_degree + 1):
        count = 0
        for e in _monomials_of_degree(nvars, d):
            if not any(monomial_divides(g, e) for g in gens):
                count += 1
        out.append(count)
    return out


def _monomials_of_degree(n, d):
    if n == 0:
        if d == 0:
            yield ()
        return
    for k in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - k):
            yield (k,) + rest


def buchberger(gens, order: str = "grlex") -> GroebnerRun:
    """Groebner basis of the ideal generated by ``gens`` with its step trace."""
    key = order_key(order)
    gens = [g for g in gens if g]
    if not gens:
        return GroebnerRun([], [], [], order)
    n = gens[0].nvars
    if n > MAX_VARS:
        raise GuardExceeded(f"groebner trace limited to {MAX_VARS} variables")
    basis = [_monic(g, key) for g in gens]
    leading = [g.leading_exponent(key) for g in basis]
    trace = [("input", i, leading[i]) for i in range(len(basis))]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    done = 0
    while pairs:
        done += 1
        if done > MAX_PAIRS:
            raise GuardExceeded("too many S-polynomials")

        # smallest lcm first; among equal lcms the pair with the smallest (j, i)
        i, j = min(pairs, key=lambda pr: (key(_lcm(leading[pr[0]], leading[pr[1]])), pr[1], pr[0]))
        pairs.remove((i, j))
        L = _lcm(leading[i], leading[j])
        gi, gj = basis[i], basis[j]
        s = gi.mul_monomial(_sub(L, leading[i]), gi.domain.one) - gj.mul_monomial(_sub(L, leading[j]), gj.domain.one)
        order_div = sorted(range(len(basis)), key=lambda k: (key(leading[k]), k))
        r = reduce_full(s, [basis[k] for k in order_div], key) if s else s
        if not r:
            trace.append(("pair", i, j, L, "zero"))
            continue
        r = _monic(r, key)
        k = len(basis)
        if k >= MAX_BASIS:
            raise GuardExceeded("basis grew beyond the guard")
        basis.append(r)
        leading.append(r.leading_exponent(key))
        trace.append(("pair", i, j, L, ("add", k, leading[k])))
        pairs.extend((a, k) for a in range(k))
    run = GroebnerRun(basis, trace, leading, order)
    run.lt_ideal = minimal_monomials(leading)
    return run


def compare_traces(a: GroebnerRun, b: GroebnerRun):
    """Raise TraceDivergence at the first step where the two runs differ."""
    for step, (x, y) in enumerate(zip(a.trace, b.trace)):
        if x != y:
            raise TraceDivergence(f"step {step}: {x} vs {y}")
    if len(a.trace) != len(b.trace):
        raise TraceDivergence(f"step {min(len(a.trace), len(b.trace))}: one run stops earlier")
    if a.lt_ideal != b.lt_ideal:
        raise TraceDivergence("leading-term ideals differ")
