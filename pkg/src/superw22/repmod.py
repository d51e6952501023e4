"""Weight modules over the super W(2,2) algebra.

The even part ``M0 = span{u_k}`` and the odd part ``M1 = span{v_k}`` each
carry one of the Virasoro intermediate-series actions

    A_{a,b}:  L_i u_j = (a - j + i b) u_{i+j}
    A(alpha): L_i u_j = -(i + j) u_{i+j}  (j != 0),   L_i u_0 = -i (1 + (i+1) alpha) u_i
    B(beta):  L_i u_j = -j u_{i+j}        (i+j != 0), L_i u_{-i} = i (1 + (i+1) beta) u_0

and the remaining generators act through six sampled coefficient functions

    I_i u_j = f(i,j) u_{i+j}     I_i v_j = ft(i,j) v_{i+j}
    G_i u_j = g(i,j) v_{i+j}     G_i v_j = gt(i,j) u_{i+j}
    H_i u_j = h(i,j) v_{i+j}     H_i v_j = ht(i,j) u_{i+j}

The action formulas fix ``L_0 u_j = (a - j) u_j``; no weight label is
attached to the basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, Iterator, Mapping

from .algebra import DEFAULT_TABLE, BracketTable, Element, GeneratorId, bracket_generators, sign, window_basis
from .report import CheckResult, Violation
from .scalar import ONE, ZERO, Scalar, ScalarSyntaxError, as_scalar, format_scalar

COEFF_NAMES = ("f", "ft", "g", "gt", "h", "ht")
FAMILY_KINDS = ("Aab", "Aalpha", "Bbeta")


class WindowExhausted(LookupError):
    """A coefficient was requested outside the sampled window."""

    def __init__(self, name: str, i: int, j: int, radius: int | None):
        self.name, self.i, self.j, self.radius = name, i, j, radius
        super().__init__(f"window exhausted: {name}({i},{j}) outside radius {radius}")


class OddPartMissing(ValueError):
    pass


# ---------------------------------------------------------------------------
# Virasoro families

@dataclass(frozen=True)
class VirasoroFamily:
    kind: str
    params: tuple[Scalar, ...]

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        need = 2 if self.kind == "Aab" else 1
        if len(self.params) != need:
            raise ValueError(f"{self.kind} takes {need} parameter(s)")
        object.__setattr__(self, "params", tuple(as_scalar(p) for p in self.params))

    @classmethod
    def Aab(cls, a, b) -> "VirasoroFamily":
        return cls("Aab", (a, b))

    @classmethod
    def Aalpha(cls, alpha) -> "VirasoroFamily":
        return cls("Aalpha", (alpha,))

    @classmethod
    def Bbeta(cls, beta) -> "VirasoroFamily":
        return cls("Bbeta", (beta,))

    @property
    def a(self) -> Scalar:
        return self.params[0] if self.kind == "Aab" else ZERO

    @property
    def b(self) -> Scalar:
        if self.kind == "Aab":
            return self.params[1]
        # away from u_0 the two special families are A_{0,-1} and A_{0,0}
        return Scalar(-1) if self.kind == "Aalpha" else ZERO

    def coeff(self, i: int, j: int) -> Scalar:
        """Scalar ``c`` with ``L_i u_j = c u_{i+j}``."""
        if self.kind == "Aab":
            a, b = self.params
            return a - j + b * i
        p = self.params[0]
        if self.kind == "Aalpha":
            if j != 0:
                return Scalar(-(i + j))
            return -i * (1 + (i + 1) * p)
        if i + j != 0:
            return Scalar(-j)
        return i * (1 + (i + 1) * p)

    def describe(self) -> dict:
        names = {"Aab": ("a", "b"), "Aalpha": ("alpha",), "Bbeta": ("beta",)}[self.kind]
        return {"kind": self.kind, **{n: format_scalar(v) for n, v in zip(names, self.params)}}


# ---------------------------------------------------------------------------
# coefficient tables

class CoefficientTable:
    """Samples of f, ft, g, gt, h, ht on ``[-radius, radius]^2``.

    Missing samples are zero.  ``radius=None`` means the table is defined
    (and zero unless given) on all of Z^2.  Functions may be supplied instead
    of samples; they are evaluated lazily inside the window.
    """

    def __init__(self, radius: int | None = None,
                 samples: Mapping[str, Mapping[tuple[int, int], object]] | None = None,
                 functions: Mapping[str, Callable[[int, int], object]] | None = None):
        self.radius = radius
        self._samples: dict[str, dict[tuple[int, int], Scalar]] = {n: {} for n in COEFF_NAMES}
        self._functions = dict(functions or {})
        for name in self._functions:
            if name not in COEFF_NAMES:
                raise ValueError(f"unknown coefficient function {name!r}")
        for name, table in (samples or {}).items():
            if name not in COEFF_NAMES:
                raise ValueError(f"unknown coefficient function {name!r}")
            for (i, j), v in table.items():
                self._check(name, i, j)
                s = as_scalar(v)
                if s:
                    self._samples[name][int(i), int(j)] = s

    @classmethod
    def zero(cls) -> "CoefficientTable":
        return cls(None)

    @classmethod
    def from_functions(cls, radius: int | None, **functions) -> "CoefficientTable":
        return cls(radius, functions=functions)

    def _check(self, name: str, i: int, j: int) -> None:
        r = self.radius
        if r is not None and (abs(i) > r or abs(j) > r):
            raise WindowExhausted(name, i, j, r)

    def __call__(self, name: str, i: int, j: int) -> Scalar:
        self._check(name, i, j)
        fn = self._functions.get(name)
        if fn is not None:
            return as_scalar(fn(i, j))
        return self._samples[name].get((i, j), ZERO)

    def is_zero(self) -> bool:
        return not self._functions and not any(self._samples.values())

    def nonzero_samples(self) -> Iterator[tuple[str, int, int, Scalar]]:
        for name in COEFF_NAMES:
            for (i, j), v in sorted(self._samples[name].items()):
                yield name, i, j, v

    def dumps(self) -> str:
        lines = []
        if self.radius is not None:
            lines.append(f"window {self.radius}")
        for name, i, j, v in self.nonzero_samples():
            lines.append(f"{name} {i} {j} {format_scalar(v)}")
        return "\n".join(lines) + "\n"


class TableSyntaxError(ValueError):
    pass


def load_coefficients(text: str, radius: int | None = None) -> CoefficientTable:
    """Parse the line format ``name i j scalar`` (``#`` comments allowed).

    An optional ``window N`` line sets the table radius; ``radius`` overrides.
    """
    samples: dict[str, dict] = {n: {} for n in COEFF_NAMES}
    file_radius = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "window" and len(parts) == 2:
            file_radius = int(parts[1])
            continue
        if len(parts) != 4 or parts[0] not in COEFF_NAMES:
            raise TableSyntaxError(f"line {lineno}: expected '<f|ft|g|gt|h|ht> i j scalar', got {raw!r}")
        try:
            i, j = int(parts[1]), int(parts[2])
            samples[parts[0]][i, j] = as_scalar(parts[3])
        except (ValueError, ScalarSyntaxError) as exc:
            raise TableSyntaxError(f"line {lineno}: {exc}") from None
    return CoefficientTable(radius if radius is not None else file_radius, samples)


def read_coefficients(path: str | Path, radius: int | None = None) -> CoefficientTable:
    return load_coefficients(Path(path).read_text(), radius)


# ---------------------------------------------------------------------------
# modules and vectors

@dataclass(frozen=True)
class SuperModuleSpec:
    """``even``/``odd`` Virasoro actions plus the coefficient table.

    ``odd=None`` means the odd part is the zero space.
    """

    even: VirasoroFamily
    odd: VirasoroFamily | None = None
    coeffs: CoefficientTable = field(default_factory=CoefficientTable.zero)

    @classmethod
    def trivial_extension(cls, a, b) -> "SuperModuleSpec":
        """``A_{a,b,0,0,0}``: even part A_{a,b}, odd part zero, I, G, H act as 0."""
        return cls(VirasoroFamily.Aab(a, b), None, CoefficientTable.zero())

    def describe(self) -> dict:
        return {
            "even": self.even.describe(),
            "odd": None if self.odd is None else self.odd.describe(),
            "coeffs": "zero" if self.coeffs.is_zero() else f"table(radius={self.coeffs.radius})",
        }


class ModuleVector:
    """Finite combination of ``u_k`` (even) and ``v_k`` (odd)."""

    __slots__ = ("even", "odd")

    def __init__(self, even: Mapping[int, object] | None = None, odd: Mapping[int, object] | None = None):
        self.even = {int(k): s for k, v in (even or {}).items() if (s := as_scalar(v))}
        self.odd = {int(k): s for k, v in (odd or {}).items() if (s := as_scalar(v))}

    @classmethod
    def u(cls, k: int, c=ONE) -> "ModuleVector":
        return cls({k: c})

    @classmethod
    def v(cls, k: int, c=ONE) -> "ModuleVector":
        return cls(None, {k: c})

    def is_zero(self) -> bool:
        return not self.even and not self.odd

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = ModuleVector()
        out.even = _merge(self.even, other.even, 1)
        out.odd = _merge(self.odd, other.odd, 1)
        return out

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        out = ModuleVector()
        out.even = _merge(self.even, other.even, -1)
        out.odd = _merge(self.odd, other.odd, -1)
        return out

    def scale(self, s) -> "ModuleVector":
        s = as_scalar(s)
        out = ModuleVector()
        if s:
            out.even = {k: v * s for k, v in self.even.items()}
            out.odd = {k: v * s for k, v in self.odd.items()}
        return out

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd

    def __hash__(self):
        return hash((frozenset(self.even.items()), frozenset(self.odd.items())))

    def __str__(self) -> str:
        parts = [f"{_c(c)}*u[{k}]" for k, c in sorted(self.even.items())]
        parts += [f"{_c(c)}*v[{k}]" for k, c in sorted(self.odd.items())]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def _c(c: Scalar) -> str:
    s = format_scalar(c)
    return f"({s})" if c.im else s


def _merge(a: dict, b: dict, sb: int) -> dict:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, ZERO) + (v if sb == 1 else -v)
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _acc(d: dict, k: int, v: Scalar) -> None:
    nv = d.get(k, ZERO) + v
    if nv:
        d[k] = nv
    else:
        d.pop(k, None)


def act_generator(g: GeneratorId, w: ModuleVector, spec: SuperModuleSpec) -> ModuleVector:
    """Action of one generator on a module vector."""
    i = g.degree
    even_out: dict[int, Scalar] = {}
    odd_out: dict[int, Scalar] = {}
    fam = g.family
    tab = spec.coeffs
    if w.odd and spec.odd is None:
        raise OddPartMissing("vector has v-components but the odd part of the module is zero")
    if fam == "L":
        for j, c in w.even.items():
            k = spec.even.coeff(i, j)
            if k:
                _acc(even_out, i + j, c * k)
        for j, c in w.odd.items():
            k = spec.odd.coeff(i, j)
            if k:
                _acc(odd_out, i + j, c * k)
    else:
        # (name on u, target of u) / (name on v, target of v)
        on_u, on_v = {"I": ("f", "ft"), "G": ("g", "gt"), "H": ("h", "ht")}[fam]
        swap = fam != "I"
        if not tab.is_zero():
            for j, c in w.even.items():
                k = tab(on_u, i, j)
                if k:
                    if swap and spec.odd is None:
                        raise OddPartMissing(f"{fam}_{i} u_{j} lands in the zero odd part")
                    _acc(odd_out if swap else even_out, i + j, c * k)
            for j, c in w.odd.items():
                k = tab(on_v, i, j)
                if k:
                    _acc(even_out if swap else odd_out, i + j, c * k)
    out = ModuleVector()
    out.even, out.odd = even_out, odd_out
    return out


def act(x: Element, w: ModuleVector, spec: SuperModuleSpec) -> ModuleVector:
    """Bilinear action ``x . w``."""
    out = ModuleVector()
    for g, c in x.items():
        out = out + act_generator(g, w, spec).scale(c)
    return out


def module_axiom_check(spec: SuperModuleSpec, window_radius: int,
                       table: BracketTable = DEFAULT_TABLE, limit: int | None = None,
                       families: Iterable[str] = ("L", "I", "G", "H")) -> CheckResult:
    """Check ``[x,y] w = x(y w) - (-1)^{|x||y|} y(x w)`` on window generators and basis vectors.

    Coefficient lookups reach degree ``2N`` in the first index and ``2N`` in
    the second, so the table radius must be at least ``2N``; otherwise
    :class:`WindowExhausted` propagates.
    """
    N = window_radius
    if N < 1:
        raise ValueError("window radius must be >= 1")
    res = CheckResult("module-check", N)
    gens = window_basis(N, tuple(families))
    vectors = [("u", t, ModuleVector.u(t)) for t in range(-N, N + 1)]
    if spec.odd is not None:
        vectors += [("v", t, ModuleVector.v(t)) for t in range(-N, N + 1)]
    cache: dict[tuple, ModuleVector] = {}

    def A(g: GeneratorId, key: tuple, w: ModuleVector) -> ModuleVector:
        ck = (g, key)
        if ck not in cache:
            cache[ck] = act_generator(g, w, spec)
        return cache[ck]

    for name, t, w in vectors:
        key = (name, t)
        for x, y in product(gens, repeat=2):
            yw = A(y, key, w)
            xw = A(x, key, w)
            lhs = act(bracket_generators(x, y, table), w, spec)
            rhs = act_generator(x, yw, spec)
            second = act_generator(y, xw, spec)
            rhs = rhs - second if sign(x.parity, y.parity) == 1 else rhs + second
            res.checked += 1
            if lhs != rhs:
                res.record(Violation("module", {"x": str(x), "y": str(y), "w": f"{name}[{t}]"},
                                     str(lhs), str(rhs)), limit)
    res.derived = {"module": spec.describe()}
    return res
