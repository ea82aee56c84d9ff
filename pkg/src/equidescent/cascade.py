"""Linear changes of coordinates, monicization and the discriminant cascade.

Starting from the product ``f_n`` of the monicized inputs, each level takes
the first generalized discriminant of ``f_j`` in ``x_j`` that is not
identically zero, makes it monic in ``x_{j-1}`` by a rational linear change,
and splits off its leading coefficient ``e_{j-1}``.  The recursion stops when
that discriminant no longer involves any ``x``.

Everything here is generic in the coefficient field: the same code builds the
certificate over the tower and replays it over a specialized algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import AllZeroInput, CascadeMismatch, DegreeZeroInput, InternalContradiction
from .exactcore.mpoly import MPoly
from .gendisc import generalized_discriminants

__all__ = [
    "LinearChange",
    "CascadeLevel",
    "CascadeCertificate",
    "apply_affine_change",
    "monicize",
    "build_cascade",
    "replay_cascade",
    "verify_certificate",
    "mu_candidates",
]


@dataclass(frozen=True)
class LinearChange:
    """``x_i -> x_i + mu_i * x_level`` for ``i < level`` (1-based level)."""

    level: int
    mu: tuple

    def is_identity(self) -> bool:
        return not any(self.mu)

    def negated(self) -> "LinearChange":
        return LinearChange(self.level, tuple(-m for m in self.mu))


@dataclass
class CascadeLevel:
    j: int
    d: int
    l: int
    change: LinearChange
    e: object
    f: MPoly


@dataclass
class CascadeCertificate:
    n: int
    s: int
    input_change: LinearChange
    constants: list
    factors: list
    levels: list
    k0: int
    final_unit: object
    homogeneous: bool = False
    stripped: list = field(default_factory=list)

    def shape(self):
        """The sequence ``((d_n, l_n), ..., (d_k0, l_k0))``."""
        return tuple((lv.d, lv.l) for lv in self.levels)

    def units(self):
        """``e_j`` for every level below the top, then the final x-free discriminant."""
        return [lv.e for lv in self.levels[1:]] + [self.final_unit]


def apply_affine_change(f: MPoly, ch: LinearChange, invert: bool = False) -> MPoly:
    """Substitute ``x_i <- x_i + mu_i x_j`` (or with ``-mu`` when ``invert``)."""
    if ch.level > f.nvars:
        raise ValueError("change level exceeds the number of variables")
    if ch.is_identity():
        return f
    sign = -1 if invert else 1
    n = f.nvars
    j = ch.level - 1
    images = []
    for i in range(n):
        g = MPoly.gen(n, i, f.domain)
        if i < j and ch.mu[i]:
            g = g + MPoly.gen(n, j, f.domain).scale(f.domain.convert(Fraction(sign * ch.mu[i])))
        images.append(g)
    return f.compose(images)


def _rank_values(h):
    """Integers of absolute value <= h in the order 0, 1, -1, 2, -2, ..."""
    out = [0]
    for k in range(1, h + 1):
        out += [k, -k]
    return out


def mu_candidates(length: int, max_height: int):
    """Integer vectors by increasing max-height, lexicographic in the rank order within a height."""
    if length == 0:
        yield ()
        return
    for h in range(max_height + 1):
        vals = _rank_values(h)
        for vec in product(vals, repeat=length):
            if max(abs(v) for v in vec) == h:
                yield tuple(Fraction(v) for v in vec)


def _leading_const_in(g: MPoly, var: int):
    """The x_var-leading coefficient of g if it is a nonzero constant (and deg >= 1), else None."""
    deg = g.degree(var)
    if deg < 1:
        return None
    lc = g.coeff_in(var, deg)
    if lc.is_constant():
        return lc.constant_value()
    return None


def monicize(gs, j: int):
    """Find a rational change making every ``g`` monic in ``x_j`` after division by a constant.

    Returns ``(change, monic_polys, constants)``.
    """
    if not gs:
        raise AllZeroInput("nothing to monicize")
    for g in gs:
        if not g:
            raise AllZeroInput("zero polynomial cannot be monicized")
        if g.is_constant():
            raise DegreeZeroInput("constant polynomial cannot be monicized")
    var = j - 1
    consts = [_leading_const_in(g, var) for g in gs]
    if all(c is not None for c in consts):
        ch = LinearChange(j, (Fraction(0),) * (j - 1))
        return ch, [g / c for g, c in zip(gs, consts)], consts
    n = gs[0].nvars
    forms = [g.homogeneous_part(g.total_degree()) for g in gs]
    bound = sum(g.total_degree() for g in gs) + 1
    for mu in mu_candidates(j - 1, bound):
        point = list(mu) + [Fraction(1)] + [Fraction(0)] * (n - j)
        values = [form.evaluate(point) for form in forms]
        if all(values):
            ch = LinearChange(j, mu)
            moved = [apply_affine_change(g, ch) for g in gs]
            consts = []
            for g, c in zip(moved, values):
                lc = _leading_const_in(g, var)
                if lc is None or lc != c:
                    raise InternalContradiction("leading form value does not match the new leading coefficient")
                consts.append(c)
            return ch, [g / c for g, c in zip(moved, consts)], consts
    raise InternalContradiction("no rational change of coordinates found within the height bound")


def _strip_inputs(gs):
    kept, stripped = [], []
    for i, g in enumerate(gs):
        if not g:
            stripped.append((i, "zero"))
        elif g.is_constant():
            stripped.append((i, "constant"))
        else:
            kept.append(g)
    return kept, stripped


def _descend_levels(f: MPoly, n: int, start_change: LinearChange, changes=None):
    """Run the cascade from ``f = f_n``; with ``changes`` given, reuse them instead of searching.

    Returns ``(levels, k0, final_unit)``.
    """
    levels = []
    j = n
    change = start_change
    e = f.domain.one
    idx = 0
    while True:
        var = j - 1
        d = f.degree(var)
        seq = generalized_discriminants(f, var, lazy=True)
        l = seq.first_nonzero
        levels.append(CascadeLevel(j, d, l, change, e, f))
        delta = seq.values[l - 1]
        if delta.is_constant():
            return levels, j, delta.constant_value()
        if changes is None:
            change, (f,), (e,) = monicize([delta], j - 1)
        else:
            idx += 1
            if idx >= len(changes):
                raise CascadeMismatch(j - 1, "cascade is longer than the recorded one")
            change = changes[idx]
            moved = apply_affine_change(delta, change)
            e = _leading_const_in(moved, j - 2)
            if e is None:
                raise CascadeMismatch(j - 1, "recorded change does not make the discriminant monic")
            f = moved / e
        j -= 1
        if j < 1:
            raise InternalContradiction("discriminant still involves x below level 1")


def build_cascade(gs, F=None, homogeneous: bool = False) -> CascadeCertificate:
    """Build the full certificate for the inputs ``gs`` (MPolys over a field)."""
    if not gs:
        raise AllZeroInput("no input polynomials")
    n = gs[0].nvars
    if homogeneous:
        for g in gs:
            if not g.is_homogeneous():
                raise ValueError("homogeneous flag set but an input is not homogeneous")
    kept, stripped = _strip_inputs(gs)
    if not kept:
        if all(reason == "zero" for _, reason in stripped):
            raise AllZeroInput("all input polynomials are zero")
        return CascadeCertificate(n, len(gs), LinearChange(n, (Fraction(0),) * (n - 1)), [], [], [],
                                  n + 1, None, homogeneous, stripped)
    change, factors, consts = monicize(kept, n)
    fn = factors[0]
    for g in factors[1:]:
        fn = fn * g
    levels, k0, final = _descend_levels(fn, n, change)
    cert = CascadeCertificate(n, len(gs), change, consts, factors, levels, k0, final, homogeneous,
                              stripped)
    return cert


def replay_cascade(gs, cert: CascadeCertificate):
    """Rebuild the cascade of ``gs`` reusing every recorded change of coordinates.

    Raises CascadeMismatch at the first level whose degree, discriminant index or
    unit differs in kind from the certificate; on success returns the replayed
    ``(constants, levels, final_unit)``.  Zero tests use the coefficients' own
    ``bool``, so over an algebra with a selected embedding this decides
    vanishing at that embedding.
    """
    kept, stripped = _strip_inputs(gs)
    if [i for i, _ in stripped] != [i for i, _ in cert.stripped]:
        raise CascadeMismatch(cert.n, "different inputs are zero or constant")
    if not cert.levels:
        return [], [], None
    var = cert.n - 1
    consts, factors = [], []
    for r, (g, G) in enumerate(zip(kept, cert.factors)):
        moved = apply_affine_change(g, cert.input_change)
        deg = G.degree(var)
        if moved.degree(var) != deg:
            raise CascadeMismatch(cert.n, f"input {r + 1} has a different degree in x{cert.n}")
        c = moved.coeff_in(var, deg)
        if not c.is_constant() or not c.constant_value():
            raise CascadeMismatch(cert.n, f"leading coefficient of input {r + 1} vanishes")
        consts.append(c.constant_value())
        factors.append(moved / c.constant_value())
    fn = factors[0]
    for g in factors[1:]:
        fn = fn * g
    changes = [lv.change for lv in cert.levels]
    levels, k0, final = _descend_levels(fn, cert.n, cert.input_change, changes)
    for ref, got in zip(cert.levels, levels):
        if (ref.j, ref.d, ref.l) != (got.j, got.d, got.l):
            raise CascadeMismatch(ref.j, f"(d, l) = ({got.d}, {got.l}), expected ({ref.d}, {ref.l})")
    if len(levels) != len(cert.levels) or k0 != cert.k0:
        raise CascadeMismatch(k0, "cascade terminates at a different level")
    if not final:
        raise CascadeMismatch(k0, "final discriminant vanishes")
    return consts, levels, final


def verify_certificate(cert: CascadeCertificate, gs) -> bool:
    """Re-derive every level from ``gs`` and compare with the record exactly.

    Checks the vanishing of the earlier discriminants, the factorization of the
    first nonvanishing one as ``e * f`` after the recorded change, monicity and
    nonvanishing of every unit.
    """
    consts, levels, final = replay_cascade(gs, cert)
    if consts != list(cert.constants):
        raise CascadeMismatch(cert.n, "input leading constants differ")
    for ref, got in zip(cert.levels, levels):
        if got.f != ref.f or got.e != ref.e:
            raise CascadeMismatch(ref.j, "recorded e_j * f_j does not match the recomputed discriminant")
        var = ref.j - 1
        lc = ref.f.coeff_in(var, ref.d)
        if not (lc.is_constant() and lc.constant_value() == 1):
            raise CascadeMismatch(ref.j, "f_j is not monic")
        if not ref.e:
            raise CascadeMismatch(ref.j, "unit e_j is zero")
        seq = generalized_discriminants(ref.f, var)
        if any(seq.values[:ref.l - 1]) or not seq.values[ref.l - 1]:
            raise CascadeMismatch(ref.j, "discriminant vanishing pattern differs")
    if final != cert.final_unit:
        raise CascadeMismatch(cert.k0, "final unit differs")
    if cert.homogeneous:
        for lv in cert.levels:
            if not lv.f.is_homogeneous():
                raise CascadeMismatch(lv.j, "homogeneity lost")
    return True
