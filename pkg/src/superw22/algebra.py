"""The super W(2,2) Lie superalgebra.

Basis ``L_m, I_m`` (even) and ``G_m, H_m`` (odd), ``m`` in Z, with

    [L_m, L_n] = (m - n) L_{m+n}        [L_m, I_n] = (m - n) I_{m+n}
    [L_m, G_n] = (m/2 - n) G_{m+n}      [L_m, H_n] = (m/2 - n) H_{m+n}
    [G_m, G_n] = I_{m+n}                [I_m, G_n] = (m - 2n) H_{m+n}

and every other pair of families bracketing to zero, in particular
``[I, I] = [I, H] = [G, H] = [H, H] = 0``.  The algebra is centerless.

The default :class:`BracketTable` lists all sixteen ordered family pairs
explicitly (the reversed pairs worked out by hand), so that the
super-skew-symmetry sweep actually tests something.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .report import CheckResult, Violation
from .scalar import ONE, ZERO, Scalar, as_scalar

FAMILIES = ("L", "I", "G", "H")
PARITY = {"L": 0, "I": 0, "G": 1, "H": 1}

DEGREE_BOUND_NOTE = (
    "every structure constant is a polynomial of degree <= 1 in each index, so both sides "
    "of the skew and Jacobi identities are polynomials of degree <= 2 in each index of a "
    "fixed family pair/triple; a window of radius N >= 1 already has 2N+1 >= 3 points per "
    "index, hence a pass certifies the identities on all of Z"
)
UNLISTED_NOTE = "family pairs not listed among the nonvanishing brackets ([I,I], [I,H], [G,H], [H,H]) are zero"


class GeneratorId(NamedTuple):
    family: str
    degree: int

    @property
    def parity(self) -> int:
        return PARITY[self.family]

    def __str__(self) -> str:
        return f"{self.family}[{self.degree}]"


def gen(family: str, degree: int) -> GeneratorId:
    if family not in PARITY:
        raise ValueError(f"unknown generator family {family!r}")
    return GeneratorId(family, int(degree))


def _sort_key(g: GeneratorId) -> tuple[int, int]:
    return FAMILIES.index(g.family), g.degree


def window_basis(radius: int, families: Iterable[str] = FAMILIES) -> list[GeneratorId]:
    """All generators of the given families with ``|degree| <= radius``."""
    return [GeneratorId(f, m) for f in families for m in range(-radius, radius + 1)]


class Element:
    """Finite formal sum of generators with Gaussian-rational coefficients.

    Immutable; zero coefficients are never stored.  Supports ``+``, ``-`` and
    multiplication by scalars on either side.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[GeneratorId, object] | None = None):
        clean = {}
        if terms:
            for g, c in terms.items():
                s = as_scalar(c)
                if s:
                    if not isinstance(g, GeneratorId):
                        g = gen(*g)
                    clean[g] = s
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        e = object.__new__(cls)
        e._terms = terms
        return e

    @classmethod
    def basis(cls, family: str, degree: int, coef=ONE) -> "Element":
        return cls({gen(family, degree): coef})

    @property
    def terms(self) -> dict[GeneratorId, Scalar]:
        return dict(self._terms)

    def items(self) -> list[tuple[GeneratorId, Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def coeff(self, g: GeneratorId) -> Scalar:
        return self._terms.get(g, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[GeneratorId]:
        return iter(sorted(self._terms, key=_sort_key))

    @property
    def parity(self) -> str:
        ps = {g.parity for g in self._terms}
        if not ps:
            return "zero"
        if ps == {0}:
            return "even"
        if ps == {1}:
            return "odd"
        return "mixed"

    def project(self, families: Iterable[str]) -> "Element":
        fs = set(families)
        return Element._raw({g: c for g, c in self._terms.items() if g.family in fs})

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self._terms)
        for g, c in other._terms.items():
            v = out.get(g, ZERO) + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return Element._raw(out)

    def __neg__(self) -> "Element":
        return Element._raw({g: -c for g, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "Element":
        s = as_scalar(s)
        if not s:
            return ZERO_ELEMENT
        return Element._raw({g: c * s for g, c in self._terms.items()})

    def __rmul__(self, s) -> "Element":
        try:
            return self.scale(s)
        except TypeError:
            return NotImplemented

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        from .expr import format_element

        return f"Element({format_element(self)!r})"

    def __str__(self) -> str:
        from .expr import format_element

        return format_element(self)


ZERO_ELEMENT = Element._raw({})


# ---------------------------------------------------------------------------
# structure constants

Structure = tuple[Scalar, GeneratorId] | None
_HALF = Fraction(1, 2)


# (family_x, family_y) -> (result family, coefficient as a function of (m, n))
_TABLE: dict[tuple[str, str], tuple[str, Callable[[int, int], Fraction]]] = {
    ("L", "L"): ("L", lambda m, n: Fraction(m - n)),
    ("L", "I"): ("I", lambda m, n: Fraction(m - n)),
    ("I", "L"): ("I", lambda m, n: Fraction(m - n)),
    ("L", "G"): ("G", lambda m, n: m * _HALF - n),
    ("G", "L"): ("G", lambda m, n: m - n * _HALF),
    ("L", "H"): ("H", lambda m, n: m * _HALF - n),
    ("H", "L"): ("H", lambda m, n: m - n * _HALF),
    ("G", "G"): ("I", lambda m, n: Fraction(1)),
    ("I", "G"): ("H", lambda m, n: Fraction(m - 2 * n)),
    ("G", "I"): ("H", lambda m, n: Fraction(2 * m - n)),
}


class BracketTable:
    """Structure constants on generators: ``[x, y] = coef * z`` or zero."""

    description = "super W(2,2)"

    def structure(self, x: GeneratorId, y: GeneratorId) -> Structure:
        entry = _TABLE.get((x.family, y.family))
        if entry is None:
            return None
        fam, fn = entry
        c = fn(x.degree, y.degree)
        if not c:
            return None
        return Scalar(c), GeneratorId(fam, x.degree + y.degree)


class MutatedTable(BracketTable):
    """Test hook: one structure constant multiplied by ``factor``.

    With ``pair=(x, y)`` only that ordered generator pair is altered.  With
    ``families=(F1, F2)`` every ``[F1_m, F2_n]`` is scaled (note that for
    ``(G, G)`` and ``(I, G)`` this is a rescaling of the basis, so it yields an
    isomorphic algebra and the Jacobi identity keeps holding).
    """

    def __init__(self, factor=2, pair: tuple[GeneratorId, GeneratorId] | None = None,
                 families: tuple[str, str] | None = None, base: BracketTable | None = None):
        if (pair is None) == (families is None):
            raise ValueError("give exactly one of pair= or families=")
        self.base = base or DEFAULT_TABLE
        self.factor = as_scalar(factor)
        self.pair = pair
        self.families = families
        target = f"[{pair[0]},{pair[1]}]" if pair else f"[{families[0]},{families[1]}]"
        self.description = f"mutated: {target} scaled by {self.factor}"

    def structure(self, x, y):
        s = self.base.structure(x, y)
        if s is None:
            return None
        hit = (x, y) == self.pair if self.pair else (x.family, y.family) == self.families
        if hit:
            return s[0] * self.factor, s[1]
        return s


DEFAULT_TABLE = BracketTable()


def bracket_generators(x: GeneratorId, y: GeneratorId, table: BracketTable = DEFAULT_TABLE) -> Element:
    s = table.structure(x, y)
    if s is None:
        return ZERO_ELEMENT
    return Element._raw({s[1]: s[0]})


def bracket(x: Element, y: Element, table: BracketTable = DEFAULT_TABLE) -> Element:
    """Bilinear superbracket of two elements (mixed parity allowed)."""
    out: dict[GeneratorId, Scalar] = {}
    for gx, cx in x._terms.items():
        for gy, cy in y._terms.items():
            s = table.structure(gx, gy)
            if s is None:
                continue
            coef, gz = s
            v = out.get(gz, ZERO) + cx * cy * coef
            if v:
                out[gz] = v
            else:
                out.pop(gz, None)
    return Element._raw(out)


def sign(p: int, q: int) -> int:
    """``(-1)^(p q)``."""
    return -1 if p & q else 1


# ---------------------------------------------------------------------------
# window sweeps

def _gen_dict(table, x, y) -> dict:
    s = table.structure(x, y)
    return {} if s is None else {s[1]: s[0]}


def _bracket_gen_with(table, x: GeneratorId, d: dict, right: bool = True) -> dict:
    """[x, d] (right=True) or [d, x] for a sparse dict ``d``."""
    out: dict = {}
    for g, c in d.items():
        s = table.structure(x, g) if right else table.structure(g, x)
        if s is None:
            continue
        v = out.get(s[1], ZERO) + c * s[0]
        if v:
            out[s[1]] = v
        else:
            out.pop(s[1], None)
    return out


def _combine(a: dict, b: dict, sb: int = 1) -> dict:
    out = dict(a)
    for g, c in b.items():
        v = out.get(g, ZERO) + (c if sb == 1 else -c)
        if v:
            out[g] = v
        else:
            out.pop(g, None)
    return out


def _fmt(d: dict) -> str:
    from .expr import format_element

    return format_element(Element._raw(d))


def skew_check(window_radius: int, table: BracketTable = DEFAULT_TABLE,
               limit: int | None = None) -> CheckResult:
    """Check ``[x, y] + (-1)^{|x||y|} [y, x] = 0`` on all window basis pairs."""
    if window_radius < 1:
        raise ValueError("window radius must be >= 1")
    res = CheckResult("skew", window_radius, notes=[UNLISTED_NOTE, DEGREE_BOUND_NOTE])
    basis = window_basis(window_radius)
    for x, y in product(basis, repeat=2):
        lhs = _gen_dict(table, x, y)
        rhs = _gen_dict(table, y, x)
        # [x,y] = -(-1)^{|x||y|} [y,x]
        if sign(x.parity, y.parity) == 1:
            rhs = {g: -c for g, c in rhs.items()}
        res.checked += 1
        if lhs != rhs:
            res.record(Violation("super-skew-symmetry", {"x": str(x), "y": str(y)},
                                 _fmt(lhs), _fmt(rhs)), limit)
    return res


def jacobi_check(window_radius: int, table: BracketTable = DEFAULT_TABLE,
                 limit: int | None = None) -> CheckResult:
    """Check ``[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]`` on window triples."""
    if window_radius < 1:
        raise ValueError("window radius must be >= 1")
    res = CheckResult("jacobi", window_radius, notes=[UNLISTED_NOTE, DEGREE_BOUND_NOTE])
    basis = window_basis(window_radius)
    pair = {(x, y): _gen_dict(table, x, y) for x in basis for y in basis}
    for x, y, z in product(basis, repeat=3):
        lhs = _bracket_gen_with(table, x, pair[y, z])
        t1 = _bracket_gen_with(table, z, pair[x, y], right=False)
        t2 = _bracket_gen_with(table, y, pair[x, z])
        rhs = _combine(t1, t2, sign(x.parity, y.parity))
        res.checked += 1
        if lhs != rhs:
            res.record(Violation("super-Jacobi", {"x": str(x), "y": str(y), "z": str(z)},
                                 _fmt(lhs), _fmt(rhs)), limit)
    return res


STANDARD_SEED = (
    GeneratorId("L", 1), GeneratorId("L", 2), GeneratorId("I", 1), GeneratorId("G", 1),
    GeneratorId("H", 1), GeneratorId("L", -1), GeneratorId("L", -2), GeneratorId("I", -1),
    GeneratorId("G", -1), GeneratorId("H", -1),
)


def generation_closure(seed: Iterable[GeneratorId], window_radius: int,
                       table: BracketTable = DEFAULT_TABLE) -> CheckResult:
    """Subalgebra generated by ``seed`` inside the degree window.

    Brackets of basis elements are multiples of basis elements, so the span
    closure is spanned by the basis elements reachable through nonzero
    brackets whose intermediate results stay inside the window.
    """
    if window_radius < 1:
        raise ValueError("window radius must be >= 1")
    seed = [gen(*g) for g in seed]
    inside = lambda g: abs(g.degree) <= window_radius
    reached: list[GeneratorId] = []
    seen: set[GeneratorId] = set()
    queue = [g for g in seed if inside(g)]
    while queue:
        z = queue.pop(0)
        if z in seen:
            continue
        seen.add(z)
        reached.append(z)
        for w in list(reached):
            for a, b in ((z, w), (w, z)):
                s = table.structure(a, b)
                if s is not None and inside(s[1]) and s[1] not in seen:
                    queue.append(s[1])
    window = window_basis(window_radius)
    missing = [g for g in window if g not in seen]
    res = CheckResult("generators", window_radius, checked=len(window))
    for g in missing:
        res.record(Violation("generated", {"element": str(g)}, "absent", "present"), None)
    res.derived = {
        "seed": [str(g) for g in seed],
        "reached": len([g for g in window if g in seen]),
        "window_size": len(window),
        "missing": [str(g) for g in missing],
    }
    return res
