"""Window-level recomputation of the intermediate-series classification.

Stage 1 treats each coefficient function on its own.  The relation
``[L_m, X_n] = k(m, n) X_{m+n}`` acted on a basis vector ``w_t`` gives, for
every triple ``(m, n, t)`` whose samples lie in the window ``W = [-N, N]^2``,

    Ltgt(m, n+t) x(n, t) - Lsrc(m, t) x(n, m+t) - k(m, n) x(m+n, t) = 0

where ``Lsrc`` / ``Ltgt`` are the Virasoro coefficients on the source and
target parity and ``k = m - n`` for I, ``m/2 - n`` for G and H.  The exact
nullspace is projected to the core window ``C = [-ceil(N/2), ceil(N/2)]^2``
(boundary samples of ``W`` appear in too few rows to be pinned down).

Stage 2 parameterises every function by its projected basis, substitutes
into the remaining bracket relations ([I,I] = 0, [G,G] = I, [I,G] = (m-2n)H,
[I,H] = [G,H] = [H,H] = 0) on the core, and solves the resulting degree-2
system by an exact case split.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import poly as P
from .linalg import Echelon, Matrix, rref, span_rank
from .repmod import VirasoroFamily
from .scalar import ONE, ZERO, Scalar, as_scalar, format_scalar

TARGETS = ("f", "ft", "g", "gt", "h", "ht")
_HALF = Fraction(1, 2)

# target -> (source parity, target parity, generator family)
_ROUTES = {
    "f": ("even", "even", "I"),
    "ft": ("odd", "odd", "I"),
    "g": ("even", "odd", "G"),
    "gt": ("odd", "even", "G"),
    "h": ("even", "odd", "H"),
    "ht": ("odd", "even", "H"),
}
MIRROR = {"f": "ft", "ft": "f", "g": "gt", "gt": "g", "h": "ht", "ht": "h"}


@dataclass(frozen=True)
class ModuleParams:
    """Virasoro actions on the even (``u``) and odd (``v``) parts."""

    even: VirasoroFamily
    odd: VirasoroFamily

    @classmethod
    def ab(cls, a, b, a2, b2) -> "ModuleParams":
        return cls(VirasoroFamily.Aab(a, b), VirasoroFamily.Aab(a2, b2))

    def mirrored(self) -> "ModuleParams":
        return ModuleParams(self.odd, self.even)

    def family(self, parity: str) -> VirasoroFamily:
        return self.even if parity == "even" else self.odd

    def describe(self) -> dict:
        return {"even": self.even.describe(), "odd": self.odd.describe()}


def core_radius(N: int) -> int:
    return -(-N // 2)


def _kappa(family: str, m: int, n: int) -> Fraction:
    if family == "I":
        return Fraction(m - n)
    return m * _HALF - n


# ---------------------------------------------------------------------------
# stage 1

@dataclass
class Stage1System:
    target: str
    params: ModuleParams
    N: int
    core: int
    matrix: Matrix
    row_labels: list[tuple[int, int, int]]

    def col(self, i: int, j: int) -> int:
        side = 2 * self.N + 1
        return (i + self.N) * side + (j + self.N)

    def index(self, col: int) -> tuple[int, int]:
        side = 2 * self.N + 1
        return col // side - self.N, col % side - self.N

    def row(self, m: int, n: int, t: int) -> dict[tuple[int, int], Scalar]:
        """The assembled row for ``(m, n, t)`` keyed by sample index."""
        k = self.row_labels.index((m, n, t))
        return {self.index(c): v for c, v in self.matrix.data[k].items()}


def assemble_stage1(target: str, params: ModuleParams, N: int) -> Stage1System:
    if target not in _ROUTES:
        raise ValueError(f"unknown target {target!r}")
    if N < 1:
        raise ValueError("window radius must be >= 1")
    src_par, tgt_par, fam = _ROUTES[target]
    Ls, Lt = params.family(src_par), params.family(tgt_par)
    side = 2 * N + 1

    def col(i, j):
        return (i + N) * side + (j + N)

    rows, labels = [], []
    for m in range(-2 * N, 2 * N + 1):
        for n in range(-N, N + 1):
            if abs(m + n) > N:
                continue
            for t in range(-N, N + 1):
                if abs(m + t) > N:
                    continue
                row: dict[int, Scalar] = {}
                for c, v in (
                    (col(n, t), Lt.coeff(m, n + t)),
                    (col(n, m + t), -Ls.coeff(m, t)),
                    (col(m + n, t), Scalar(-_kappa(fam, m, n))),
                ):
                    if v:
                        nv = row.get(c, ZERO) + v
                        if nv:
                            row[c] = nv
                        else:
                            del row[c]
                rows.append(row)
                labels.append((m, n, t))
    return Stage1System(target, params, N, core_radius(N), Matrix(len(rows), side * side, tuple(rows)), labels)


def core_indices(R: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(-R, R + 1) for j in range(-R, R + 1)]


@dataclass
class Stage1Solution:
    target: str
    N: int
    core: int
    rank: int
    nullity: int  # on the full window
    basis: list[dict[tuple[int, int], Scalar]]  # on the core, nonzero samples only

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def value(self, k: int, i: int, j: int) -> Scalar:
        return self.basis[k].get((i, j), ZERO)


def solve_stage1(sys: Stage1System, core: int | None = None) -> Stage1Solution:
    """Exact nullspace of the window system, projected onto the core.

    A one-dimensional result is normalised to 1 at ``(0, 0)`` (or at the
    first nonzero sample in row-major order).  Higher-dimensional results
    are returned as the reduced echelon basis of the projected span.
    """
    R = sys.core if core is None else core
    if R > sys.N:
        raise ValueError("core radius exceeds window radius")
    ech = rref(sys.matrix)
    null = ech.nullspace()
    idx = core_indices(R)
    cols = [sys.col(i, j) for i, j in idx]
    proj = span_rank(([v[c] for c in cols] for v in null), len(cols))
    basis = []
    for row in proj.rows():
        basis.append({idx[k]: v for k, v in row.items()})
    if len(basis) == 1:
        b = basis[0]
        anchor = b.get((0, 0)) or b[min(b, key=lambda ij: idx.index(ij))]
        inv = anchor.inverse()
        basis = [{ij: v * inv for ij, v in b.items()}]
    return Stage1Solution(sys.target, sys.N, R, ech.rank, len(null), basis)


# ---------------------------------------------------------------------------
# closed-form patterns used for tagging


def _patterns(target: str, params: ModuleParams) -> dict[str, Callable[[int, int], Scalar | None]]:
    src_par, _, fam = _ROUTES[target]
    F = params.family(src_par)
    a, b = F.a, F.b

    def safe(fn):
        def wrapped(i, j):
            try:
                return fn(i, j)
            except ZeroDivisionError:
                return None
        return wrapped

    if fam == "I":
        return {
            "(a+b*i-j)/a": safe(lambda i, j: (a + b * i - j) / a),
            "j": lambda i, j: Scalar(j),
            "i+j": lambda i, j: Scalar(i + j),
        }
    return {
        "constant": lambda i, j: ONE,
        "1/(a-j)": safe(lambda i, j: ONE / (a - j)),
        "1/(a-i-j)": safe(lambda i, j: ONE / (a - i - j)),
    }


def match_patterns(sol: Stage1Solution, params: ModuleParams) -> list[str]:
    """Names of the closed forms the (one-dimensional) solution is proportional to."""
    if sol.dimension != 1:
        return []
    vec = sol.basis[0]
    out = []
    for name, fn in _patterns(sol.target, params).items():
        values = {}
        ok = True
        for ij in core_indices(sol.core):
            v = fn(*ij)
            if v is None:
                ok = False
                break
            values[ij] = as_scalar(v)
        if ok and _proportional(vec, values):
            out.append(name)
    return out


def _proportional(vec: dict, pattern: dict) -> bool:
    lam = None
    for ij, p in pattern.items():
        if p:
            lam = vec.get(ij, ZERO) / p
            break
    if lam is None or not lam:
        return False
    return all(vec.get(ij, ZERO) == lam * p for ij, p in pattern.items()) and all(
        ij in pattern for ij in vec
    )


def case_tags(params: ModuleParams) -> dict[str, list[str]]:
    """Which of the four admissible (b, b') relations hold, for g and for gt."""

    def tags(b, b2):
        out = []
        if b2 == b + _HALF:
            out.append("b'=b+1/2")
        if b2 == -(b + _HALF):
            out.append("b'=-(b+1/2)")
        if b2 == -b - Fraction(3, 2):
            out.append("b'=-b-3/2")
        if b2 == b - _HALF:
            out.append("b'=b-1/2")
        return out

    be, bo = params.even.b, params.odd.b
    return {"g": tags(be, bo), "gt": tags(bo, be)}


# ---------------------------------------------------------------------------
# stage 2


class OutOfCaseTable(RuntimeError):
    """The polynomial system is outside what the exact case split handles."""


@dataclass
class Branch:
    """One solution component: bound variables as polynomials in the free ones."""

    values: dict[int, P.Poly]
    free: list[int]

    def value(self, k: int) -> P.Poly:
        return self.values[k] if k in self.values else P.var(k)


def _apply(p: P.Poly, subst: dict[int, P.Poly]) -> P.Poly:
    for k, v in subst.items():
        p = P.substitute(p, k, v)
    return p


def _bind(subst: dict[int, P.Poly], k: int, value: P.Poly) -> dict[int, P.Poly]:
    out = {j: P.substitute(v, k, value) for j, v in subst.items()}
    out[k] = value
    return out


def _mono_order(m: tuple) -> tuple:
    return (-len(m), m)


def solve_polynomial_system(eqs: list[P.Poly], nvars: int, max_depth: int = 64) -> list[Branch]:
    """All solution components of a system of polynomials of degree <= 2.

    Each step row-reduces the equations over their monomials (quadratic
    monomials first) and then either fixes a variable (single-monomial or
    linear row), splits on a common factor, or factors a binary quadratic
    form over Q(i).  Anything else raises :class:`OutOfCaseTable`.
    """
    out: list[Branch] = []
    seen: set = set()

    def rec(subst: dict[int, P.Poly], depth: int):
        if depth > max_depth:
            raise OutOfCaseTable("case split too deep")
        cur = [q for e in eqs if (q := _apply(e, subst))]
        if not cur:
            key = tuple(sorted((k, tuple(sorted(v.items()))) for k, v in subst.items()))
            if key not in seen:
                seen.add(key)
                free = [k for k in range(nvars) if k not in subst]
                out.append(Branch(dict(subst), free))
            return
        monos = sorted({m for e in cur for m in e}, key=_mono_order)
        pos = {m: k for k, m in enumerate(monos)}
        ech = Echelon(len(monos))
        for e in cur:
            ech.add({pos[m]: c for m, c in e.items()})
        rows = [{monos[c]: v for c, v in r.items()} for r in ech.rows()]
        if any(list(r) == [()] for r in rows):
            return  # 1 = 0
        # 1. a single monomial
        for r in rows:
            if len(r) == 1:
                (m,) = r
                for k in dict.fromkeys(m):
                    rec(_bind(subst, k, {}), depth + 1)
                return
        # 2. a linear row: solve for its leading variable
        for r in rows:
            if P.degree(r) == 1:
                lead = min((m for m in r if m), key=_mono_order)
                k = lead[0]
                rest = {m: -c / r[lead] for m, c in r.items() if m != lead}
                rec(_bind(subst, k, rest), depth + 1)
                return
        # 3. a common variable factor
        for r in rows:
            if () in r:
                continue
            common = set(next(iter(r)))
            for m in r:
                common &= set(m)
            if common:
                k = min(common)
                rec(_bind(subst, k, {}), depth + 1)
                quotient = {}
                for m, c in r.items():
                    lst = list(m)
                    lst.remove(k)
                    quotient[tuple(lst)] = c
                # k != 0 on this branch: the cofactor must vanish
                rec_with_extra(subst, quotient, depth + 1)
                return
        # 4. a binary quadratic form
        for r in rows:
            vs = P.variables(r)
            if len(vs) == 2 and all(len(m) == 2 for m in r):
                x, y = sorted(vs)
                A = r.get((x, x), ZERO)
                B = r.get((x, y), ZERO)
                C = r.get((y, y), ZERO)
                root = P.sqrt_gaussian(B * B - 4 * A * C)
                if root is None:
                    raise OutOfCaseTable("quadratic form does not split over Q(i)")
                for s in dict.fromkeys([root, -root]):
                    rec(_bind(subst, x, {(y,): (-B + s) / (2 * A)}), depth + 1)
                return
        raise OutOfCaseTable("no resolvable equation in the reduced system")

    def rec_with_extra(subst, extra, depth):
        nonlocal eqs
        saved = eqs
        eqs = eqs + [extra]
        try:
            rec(subst, depth)
        finally:
            eqs = saved

    rec({}, 0)
    return out


def _relations(val, R: int):
    """Quadratic bracket relations on the core; yields (name, indices, poly)."""
    rng = range(-R, R + 1)
    inside = lambda *ks: all(-R <= k <= R for k in ks)
    for m in rng:
        for n in rng:
            for t in rng:
                if not inside(n + t, m + t, m + n):
                    continue
                mn = Scalar(m - 2 * n)
                for side, (x, y) in (("u", ("f", "ft")), ("v", ("ft", "f"))):
                    # [I_m, I_n] = 0
                    yield f"[I,I] on {side}", (m, n, t), P.add(
                        P.mul(val(x, n, t), val(x, m, n + t)), P.mul(val(x, m, t), val(x, n, m + t)), -1)
                for side, (g, gt, f, ft, h, ht) in (
                    ("u", ("g", "gt", "f", "ft", "h", "ht")),
                    ("v", ("gt", "g", "ft", "f", "ht", "h")),
                ):
                    # [G_m, G_n] = I_{m+n}
                    yield f"[G,G] on {side}", (m, n, t), P.add(
                        P.add(P.mul(val(g, n, t), val(gt, m, n + t)), P.mul(val(g, m, t), val(gt, n, m + t))),
                        val(f, m + n, t), -1)
                    # [I_m, G_n] = (m - 2n) H_{m+n}
                    yield f"[I,G] on {side}", (m, n, t), P.add(
                        P.add(P.mul(val(g, n, t), val(ft, m, n + t)), P.mul(val(f, m, t), val(g, n, m + t)), -1),
                        P.scale(val(h, m + n, t), mn), -1)
                    # [I_m, H_n] = 0
                    yield f"[I,H] on {side}", (m, n, t), P.add(
                        P.mul(val(h, n, t), val(ft, m, n + t)), P.mul(val(f, m, t), val(h, n, m + t)), -1)
                    # [G_m, H_n] = 0 (anticommutator)
                    yield f"[G,H] on {side}", (m, n, t), P.add(
                        P.mul(val(h, n, t), val(gt, m, n + t)), P.mul(val(g, m, t), val(ht, n, m + t)))
                    # [H_m, H_n] = 0 (anticommutator)
                    yield f"[H,H] on {side}", (m, n, t), P.add(
                        P.mul(val(h, n, t), val(ht, m, n + t)), P.mul(val(h, m, t), val(ht, n, m + t)))


@dataclass
class Verdict:
    params: ModuleParams
    N: int
    core: int
    dims: dict[str, int]
    nullity: dict[str, int]
    patterns: dict[str, list[str]]
    case_tag: dict[str, list[str]]
    final: str  # "trivial-IGH" | "witness" | "out-of-case-table"
    constraints: list[str] = field(default_factory=list)
    branches: list[dict] = field(default_factory=list)
    forced_zero: dict[str, bool] = field(default_factory=dict)
    gg_product_zero: bool = False
    gg_constraint_found: bool = False
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "basis_patterns": self.patterns,
            "branches": self.branches,
            "case_tag": self.case_tag,
            "constraints": self.constraints,
            "core_radius": self.core,
            "final": self.final,
            "forced_zero": self.forced_zero,
            "g_gt_product_zero": self.gg_product_zero,
            "g_gt_constraint_found": self.gg_constraint_found,
            "params": self.params.describe(),
            "target_dims": self.dims,
            "window_nullity": self.nullity,
            "violations": self.violations,
            "window": self.N,
        }


def stage2_filter(solutions: dict[str, Stage1Solution], params: ModuleParams, N: int,
                  max_dim: int = 2) -> Verdict:
    dims = {t: solutions[t].dimension for t in TARGETS}
    R = solutions["f"].core
    verdict = Verdict(params, N, R, dims, {t: solutions[t].nullity for t in TARGETS},
                      {t: match_patterns(solutions[t], params) for t in TARGETS},
                      case_tags(params), "trivial-IGH")
    over = [t for t in TARGETS if dims[t] > max_dim]
    if over:
        verdict.final = "out-of-case-table"
        verdict.violations.append({"relation": "stage1-dimension", "targets": over,
                                   "dims": {t: dims[t] for t in over}})
        return verdict

    names: list[str] = []
    slots: dict[str, list[int]] = {}
    for t in TARGETS:
        slots[t] = []
        for k in range(dims[t]):
            slots[t].append(len(names))
            names.append(f"c_{t}" if dims[t] == 1 else f"c_{t}{k + 1}")

    memo: dict = {}

    def val(t: str, i: int, j: int) -> P.Poly:
        key = (t, i, j)
        if key not in memo:
            memo[key] = P.linear({v: solutions[t].value(k, i, j) for k, v in enumerate(slots[t])})
        return memo[key]

    eqs: list[P.Poly] = []
    seen = set()
    for _, _, p in _relations(val, R):
        if p:
            key = tuple(sorted(p.items()))
            if key not in seen:
                seen.add(key)
                eqs.append(p)

    # reduced base constraints, for the report
    if eqs:
        monos = sorted({m for e in eqs for m in e}, key=_mono_order)
        pos = {m: k for k, m in enumerate(monos)}
        ech = Echelon(len(monos))
        for e in eqs:
            ech.add({pos[m]: c for m, c in e.items()})
        for r in ech.rows():
            prow = {monos[c]: v for c, v in r.items()}
            verdict.constraints.append(P.format_poly(prow, names) + " = 0")
            gs, gts = set(slots["g"]), set(slots["gt"])
            if any(len(m) == 2 and ({m[0], m[1]} & gs) and ({m[0], m[1]} & gts) for m in prow):
                verdict.gg_constraint_found = True

    try:
        branches = solve_polynomial_system(eqs, len(names))
    except OutOfCaseTable as exc:
        verdict.final = "out-of-case-table"
        verdict.violations.append({"relation": "stage2", "reason": str(exc)})
        return verdict

    def zero_on(br: Branch, t: str) -> bool:
        return all(not br.value(k) for k in slots[t])

    forced = {t: all(zero_on(br, t) for br in branches) for t in TARGETS}
    gg = all(zero_on(br, "g") or zero_on(br, "gt") for br in branches)
    verdict.forced_zero = forced
    verdict.gg_product_zero = gg
    for br in branches:
        verdict.branches.append({
            "zero": [t for t in TARGETS if zero_on(br, t)],
            "free": [names[k] for k in br.free],
            "bound": {names[k]: P.format_poly(v, names) for k, v in sorted(br.values.items())},
        })
    ok = all(forced[t] for t in ("f", "ft", "h", "ht")) and gg
    if not ok:
        verdict.final = "witness"
        for br in branches:
            nz = [t for t in TARGETS if not zero_on(br, t)]
            if any(t in nz for t in ("f", "ft", "h", "ht")) or {"g", "gt"} <= set(nz):
                verdict.violations.append({"relation": "stage2-witness", "nonzero": nz,
                                           "free": [names[k] for k in br.free]})
    return verdict


# ---------------------------------------------------------------------------
# pipeline


@lru_cache(maxsize=256)
def _stage1_cached(src: VirasoroFamily, tgt: VirasoroFamily, fam_kind: str, N: int, core: int):
    # g and h (and gt/ht) give identical systems, so cache on the route data
    target = {"I": "f", "G": "g"}[fam_kind]
    sys = assemble_stage1(target, ModuleParams(src, tgt), N)
    return solve_stage1(sys, core)


def stage1_all(params: ModuleParams, N: int, core: int | None = None) -> dict[str, Stage1Solution]:
    R = core_radius(N) if core is None else core
    out = {}
    for t in TARGETS:
        src_par, tgt_par, fam = _ROUTES[t]
        base = _stage1_cached(params.family(src_par), params.family(tgt_par), "I" if fam == "I" else "G", N, R)
        out[t] = Stage1Solution(t, base.N, base.core, base.rank, base.nullity, base.basis)
    return out


def classify(params: ModuleParams, N: int, core: int | None = None) -> Verdict:
    if N < 4:
        raise ValueError("classification needs a window radius >= 4")
    return stage2_filter(stage1_all(params, N, core), params, N)
