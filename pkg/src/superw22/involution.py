"""Conjugate-linear anti-involutions and diagonal unitary forms.

Two families of maps are carried.  With ``c = c0G`` and ``A`` any family:

plus (degree reversing)::

    theta(L_k) = alpha^k L_{-k} + k alpha^{k-1} b1L I_{-k} + k alpha^{k-1} d1L H_{-k}
    theta(I_k) = alpha^k c^2 I_{-k}
    theta(G_k) = alpha^k c G_{-k} + (alpha^k d0G + 2k alpha^{k-1} b1L c) H_{-k}
    theta(H_k) = alpha^k c^3 H_{-k}

minus (degree preserving)::

    theta(L_k) = -alpha^k L_k + k alpha^{k-1} b1L I_k + k alpha^{k-1} d1L H_k
    theta(I_k) = alpha^k c^2 I_k
    theta(G_k) = alpha^k c G_k + (alpha^k d0G - 2k alpha^{k-1} b1L c) H_k
    theta(H_k) = -alpha^k c^3 H_k

extended by ``theta(s x) = conj(s) theta(x)``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .algebra import DEFAULT_TABLE, Element, GeneratorId, bracket_generators, window_basis
from .expr import format_element
from .repmod import VirasoroFamily
from .report import CheckResult, Violation
from .scalar import I, ONE, ZERO, Scalar, ScalarSyntaxError, as_scalar, format_scalar

VARIANTS = ("plus", "minus")
_KEYS = ("variant", "alpha", "c0G", "b1L", "d1L", "d0G", "delta")


class SpecSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class InvolutionSpec:
    variant: str
    alpha: Scalar = ONE
    c0G: Scalar = ONE
    b1L: Scalar = ZERO
    d1L: Scalar = ZERO
    d0G: Scalar = ZERO
    delta: int = 0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be plus or minus, got {self.variant!r}")
        if self.delta not in (0, 1):
            raise ValueError("delta must be 0 or 1")
        for name in ("alpha", "c0G", "b1L", "d1L", "d0G"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not self.alpha:
            raise ValueError("alpha must be nonzero")

    def with_(self, **changes) -> "InvolutionSpec":
        return replace(self, **changes)

    def describe(self) -> dict:
        out = {"variant": self.variant, "delta": self.delta}
        for name in ("alpha", "c0G", "b1L", "d1L", "d0G"):
            out[name] = format_scalar(getattr(self, name))
        return out

    def dumps(self) -> str:
        d = self.describe()
        return "".join(f"{k}={d[k]}\n" for k in _KEYS)


def load_spec(text: str) -> InvolutionSpec:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecSyntaxError(f"line {lineno}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise SpecSyntaxError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise SpecSyntaxError(f"line {lineno}: duplicate key {key!r}")
        if key == "variant":
            values[key] = val
        elif key == "delta":
            if val not in ("0", "1"):
                raise SpecSyntaxError(f"line {lineno}: delta must be 0 or 1")
            values[key] = int(val)
        else:
            try:
                values[key] = as_scalar(val)
            except ScalarSyntaxError as exc:
                raise SpecSyntaxError(f"line {lineno}: {exc}") from None
    if "variant" not in values:
        raise SpecSyntaxError("missing variant")
    try:
        return InvolutionSpec(**values)
    except ValueError as exc:
        raise SpecSyntaxError(str(exc)) from None


def read_spec(path: str | Path) -> InvolutionSpec:
    return load_spec(Path(path).read_text())


# ---------------------------------------------------------------------------
# the map


def _pow(a: Scalar, k: int) -> Scalar:
    return a ** k


def theta_generator(spec: InvolutionSpec, g: GeneratorId) -> Element:
    k = g.degree
    al, c = spec.alpha, spec.c0G
    ak = _pow(al, k)
    ak1 = _pow(al, k - 1)
    plus = spec.variant == "plus"
    d = -k if plus else k
    sgn = ONE if plus else -ONE
    terms: dict[GeneratorId, Scalar] = {}
    if g.family == "L":
        terms[GeneratorId("L", d)] = ak * sgn
        terms[GeneratorId("I", d)] = k * ak1 * spec.b1L
        terms[GeneratorId("H", d)] = k * ak1 * spec.d1L
    elif g.family == "I":
        terms[GeneratorId("I", d)] = ak * c * c
    elif g.family == "G":
        terms[GeneratorId("G", d)] = ak * c
        terms[GeneratorId("H", d)] = ak * spec.d0G + sgn * 2 * k * ak1 * spec.b1L * c
    else:
        terms[GeneratorId("H", d)] = sgn * ak * c * c * c
    return Element(terms)


def theta_apply(spec: InvolutionSpec, x: Element) -> Element:
    out = Element()
    for g, s in x.items():
        out = out + theta_generator(spec, g).scale(s.conj())
    return out


# ---------------------------------------------------------------------------
# constraints


def constraint_report(spec: InvolutionSpec) -> dict:
    """Scalar constraints in two forms.

    ``stated`` holds the phase conditions attached to the families in the
    source classification (squared where a half angle appears).  ``exact``
    holds the conditions that are equivalent to ``theta^2 = id`` for the
    displayed formulas, derived by expanding ``theta^2`` on each generator.
    The two differ for the ``d0G`` phase of the plus family and the ``d1L``
    phase of the minus family; the axiom checker is the arbiter.
    """
    al, c = spec.alpha, spec.c0G
    cb = c.conj()
    sgn = 1 if spec.delta == 0 else -1

    def real(z):
        return z.is_real()

    def signed(z):
        return z.is_real() and z.re * sgn >= 0

    def imag(z):
        return not z.re

    if spec.variant == "plus":
        b = spec.b1L * cb
        d1 = spec.d1L * spec.d1L * cb * cb * cb
        d0 = spec.d0G * cb * cb
        stated = {
            "alpha real nonzero": real(al),
            "|c0G|^2 = 1": c.norm2() == 1,
            "b1L*conj(c0G) in (-1)^delta*R>=0": signed(b),
            "d1L^2*conj(c0G)^3 in R>=0": real(d1) and d1.re >= 0,
            "d0G*conj(c0G)^2 in (-1)^delta*R>=0": signed(d0),
        }
        exact = {
            "alpha real nonzero": real(al),
            "|c0G|^2 = 1": c.norm2() == 1,
            "b1L*conj(c0G) real": real(b),
            "d1L^2*conj(c0G)^3 in R>=0": real(d1) and d1.re >= 0,
            "d0G*conj(c0G)^2 purely imaginary": imag(d0),
        }
    else:
        ab = al.conj()
        b = spec.b1L * ab * cb
        d1 = spec.d1L * spec.d1L * ab * ab * cb * cb * cb
        d0 = spec.d0G * cb * cb
        stated = {
            "|alpha|^2 = 1": al.norm2() == 1,
            "|c0G|^2 = 1": c.norm2() == 1,
            "b1L*conj(alpha*c0G) in (-1)^delta*R>=0": signed(b),
            "d0G*conj(c0G)^2 in (-1)^delta*R>=0": signed(d0),
            "d1L^2*conj(alpha^2*c0G^3) in R>=0": real(d1) and d1.re >= 0,
        }
        exact = {
            "|alpha|^2 = 1": al.norm2() == 1,
            "|c0G|^2 = 1": c.norm2() == 1,
            "b1L*conj(alpha*c0G) real": real(b),
            "d0G*conj(c0G)^2 real": real(d0),
            "d1L^2*conj(alpha^2*c0G^3) in R<=0": real(d1) and d1.re <= 0,
        }
    return {"stated": stated, "exact": exact}


# ---------------------------------------------------------------------------
# axiom checker


def _random_element(rng: random.Random, N: int) -> Element:
    basis = window_basis(N)
    terms = {}
    for g in rng.sample(basis, 3):
        terms[g] = Scalar(rng.randint(-5, 5), rng.randint(-5, 5)) / rng.randint(1, 4)
    return Element(terms)


def axiom_check(spec: InvolutionSpec, window_radius: int, limit: int | None = 20,
                seed: int = 0, samples: int = 25) -> CheckResult:
    """Check the anti-involution axioms on the window.

    C3 ``theta([x,y]) = [theta(y), theta(x)]`` on all basis pairs, C4
    ``theta^2 = id`` on all basis elements, C1/C2 on seeded random
    elements, preservation of span{I, G, H} and of span{L_0}, and the
    reduction of ``theta(L_m)`` to the Virasoro anti-involution modulo
    span{I, G, H}.
    """
    if window_radius < 1:
        raise ValueError("window radius must be >= 1")
    N = window_radius
    res = CheckResult("involution", N)
    basis = window_basis(N)
    th = {g: theta_generator(spec, g) for g in basis}

    def theta_of(e: Element) -> Element:
        out = Element()
        for g, s in e.items():
            img = th.get(g) or theta_generator(spec, g)
            out = out + img.scale(s.conj())
        return out

    def brk(x: Element, y: Element) -> Element:
        out = Element()
        for gx, sx in x.items():
            for gy, sy in y.items():
                out = out + bracket_generators(gx, gy, DEFAULT_TABLE).scale(sx * sy)
        return out

    # C3
    for x in basis:
        for y in basis:
            res.checked += 1
            lhs = theta_of(bracket_generators(x, y, DEFAULT_TABLE))
            rhs = brk(th[y], th[x])
            if lhs != rhs:
                res.record(Violation("C3", {"x": str(x), "y": str(y)},
                                     format_element(lhs), format_element(rhs)), limit)
    # C4
    for g in basis:
        res.checked += 1
        twice = theta_of(th[g])
        if twice != Element.basis(g.family, g.degree):
            res.record(Violation("C4", {"x": str(g)}, format_element(twice),
                                 format_element(Element.basis(g.family, g.degree))), limit)
    # ideal span{I, G, H} and span{L_0}
    for g in basis:
        if g.family == "L":
            continue
        res.checked += 1
        stray = th[g].project("L")
        if stray:
            res.record(Violation("ideal", {"x": str(g)}, format_element(th[g]),
                                 "no L component"), limit)
    res.checked += 1
    l0 = th[GeneratorId("L", 0)]
    if any(g != GeneratorId("L", 0) for g in l0):
        res.record(Violation("cartan", {"x": "L[0]"}, format_element(l0), "multiple of L[0]"), limit)
    # L-projection reduces to the Virasoro anti-involution
    for m in range(-N, N + 1):
        res.checked += 1
        got = th[GeneratorId("L", m)].project("L")
        am = spec.alpha ** m
        want = (Element.basis("L", -m, am) if spec.variant == "plus"
                else Element.basis("L", m, -am))
        if got != want:
            res.record(Violation("virasoro-reduction", {"m": m}, format_element(got),
                                 format_element(want)), limit)
    # C1 / C2 on random elements
    rng = random.Random(seed)
    for _ in range(samples):
        x, y = _random_element(rng, N), _random_element(rng, N)
        s = Scalar(rng.randint(-4, 4), rng.randint(-4, 4))
        res.checked += 2
        if theta_of(x + y) != theta_of(x) + theta_of(y):
            res.record(Violation("C1", {"x": str(x), "y": str(y)}, format_element(theta_of(x + y)),
                                 format_element(theta_of(x) + theta_of(y))), limit)
        if theta_of(x.scale(s)) != theta_of(x).scale(s.conj()):
            res.record(Violation("C2", {"x": str(x), "s": format_scalar(s)},
                                 format_element(theta_of(x.scale(s))),
                                 format_element(theta_of(x).scale(s.conj()))), limit)
    cons = constraint_report(spec)
    res.derived = {
        "spec": spec.describe(),
        "constraints": {k: dict(sorted(v.items())) for k, v in cons.items()},
    }
    return res


# ---------------------------------------------------------------------------
# unitary forms on A_{a,b,0,0,0}


@dataclass
class FormWeights:
    window: int
    weights: dict[int, Scalar]

    def to_json(self) -> dict:
        return {str(j): format_scalar(w) for j, w in sorted(self.weights.items())}


@dataclass
class Infeasible:
    relation: str
    m: int
    j: int
    lhs: str
    rhs: str
    reason: str

    def to_json(self) -> dict:
        return {"relation": self.relation, "indices": {"m": self.m, "j": self.j},
                "lhs": self.lhs, "rhs": self.rhs}


def _adjoint_equations(spec: InvolutionSpec, fam: VirasoroFamily, N: int):
    """Yield ``(m, j, k, A, B)`` meaning ``A w_k = conj(B) w_j``.

    ``A`` is the ``u_k`` coefficient of ``L_m u_j`` and ``B`` the ``u_j``
    coefficient of ``theta(L_m) u_k``.  Only L-components of ``theta``
    contribute because I, G, H act as zero.
    """
    # small |m| first, so witnesses name the simplest equation
    for m in sorted(range(-N, N + 1), key=lambda m: (abs(m), m < 0)):
        image = theta_generator(spec, GeneratorId("L", m)).project("L")
        for j in range(-N, N + 1):
            for k in range(-N, N + 1):
                A = fam.coeff(m, j) if k == m + j else ZERO
                B = ZERO
                for g, s in image.items():
                    if k + g.degree == j:
                        B = B + s * fam.coeff(g.degree, k)
                if A or B:
                    yield m, j, k, A, B


def unitary_weights(spec: InvolutionSpec, a, b, N: int) -> FormWeights | Infeasible:
    """Diagonal Hermitian form on A_{a,b,0,0,0} with ``<u_j, u_j> = w_j``.

    Seeks ``w_j > 0`` with ``w_0 = 1`` and ``<L_m u_j, u_k> = <u_j, theta(L_m) u_k>``
    for all window indices.  The form is linear in the first slot.
    Returns the weights or the first equation that cannot hold.
    """
    fam = VirasoroFamily.Aab(as_scalar(a), as_scalar(b))
    eqs = list(_adjoint_equations(spec, fam, N))
    adj: dict[int, list] = {j: [] for j in range(-N, N + 1)}
    for m, j, k, A, B in eqs:
        Bc = B.conj()
        if j == k:
            if A != Bc:
                return Infeasible("adjoint", m, j, format_scalar(A) + f"*w[{k}]",
                                  format_scalar(Bc) + f"*w[{j}]", "diagonal coefficient mismatch")
            continue
        if not A or not Bc:
            return Infeasible("adjoint", m, j, format_scalar(A) + f"*w[{k}]",
                              format_scalar(Bc) + f"*w[{j}]", "forces a zero weight")
        # w_k = (Bc / A) w_j
        adj[j].append((k, Bc / A, m, j))
        adj[k].append((j, A / Bc, m, j))
    w: dict[int, Scalar] = {0: ONE}
    queue = deque([0])
    while queue:
        j = queue.popleft()
        for k, ratio, m, jj in adj[j]:
            val = w[j] * ratio
            if not val.is_real() or val.re <= 0:
                return Infeasible("adjoint", m, jj, f"w[{k}]={format_scalar(val)}",
                                  "positive real", "non-real or non-positive ratio")
            if k in w:
                if w[k] != val:
                    return Infeasible("adjoint", m, jj, f"w[{k}]={format_scalar(w[k])}",
                                      f"w[{k}]={format_scalar(val)}", "inconsistent along two paths")
            else:
                w[k] = val
                queue.append(k)
    missing = [j for j in range(-N, N + 1) if j not in w]
    if missing:
        return Infeasible("adjoint", 0, missing[0], f"w[{missing[0]}]", "determined",
                          "weight not linked to w0")
    return FormWeights(N, dict(sorted(w.items())))
