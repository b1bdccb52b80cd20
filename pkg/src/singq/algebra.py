"""Finite algebraic structures given by operation tables.

Quandles, oriented singquandles, shadow structures (a singquandle acting on
a set) and psyquandles, together with exhaustive axiom validators that
report a witness tuple for every violated axiom instance.  Elements are
indices ``0..n-1`` internally; the text file format is 1-indexed to match
how finite structures are usually tabulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .exprs import eval_table


class AlgebraError(ValueError):
    pass


class ParameterError(AlgebraError):
    """Constructor parameters violate a stated precondition."""


class InvalidStructureError(AlgebraError):
    """Construction produced a table that fails its axioms."""

    def __init__(self, report: "ValidationReport"):
        super().__init__(report.summary())
        self.report = report


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def summary(self, limit: int = 5) -> str:
        if self.valid:
            return "valid"
        lines = [f"{len(self.violations)} axiom violation(s):"]
        for axiom, witness in self.violations[:limit]:
            lines.append(f"  {axiom} at {witness}")
        if len(self.violations) > limit:
            lines.append(f"  ... and {len(self.violations) - limit} more")
        return "\n".join(lines)


def _merge(*reports: ValidationReport) -> ValidationReport:
    vs = []
    for r in reports:
        vs.extend(r.violations)
    return ValidationReport(tuple(sorted(vs)))


class OperationTable:
    """An n x n table of element indices encoding one binary operation."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence[int]]):
        n = len(rows)
        if n < 1:
            raise AlgebraError("table must have order >= 1")
        frozen = []
        for i, row in enumerate(rows):
            row = tuple(row)
            if len(row) != n:
                raise AlgebraError(f"row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not (0 <= v < n):
                    raise AlgebraError(f"entry {v} out of range [0, {n})")
            frozen.append(row)
        self.n = n
        self.rows = tuple(frozen)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], int]) -> "OperationTable":
        return cls([[fn(x, y) % n for y in range(n)] for x in range(n)])

    def __call__(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def __eq__(self, other) -> bool:
        return isinstance(other, OperationTable) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def column_is_bijective(self, y: int) -> bool:
        return len({row[y] for row in self.rows}) == self.n

    def right_inverse(self) -> "OperationTable":
        """Table ``inv`` with ``inv[t[x][y]][y] == x``; needs bijective columns."""
        n = self.n
        inv = [[-1] * n for _ in range(n)]
        for y in range(n):
            for x in range(n):
                z = self.rows[x][y]
                if inv[z][y] != -1:
                    raise AlgebraError(f"column {y} is not a bijection")
                inv[z][y] = x
        return OperationTable(inv)

    def __repr__(self) -> str:
        return f"OperationTable({[list(r) for r in self.rows]})"


def validate_quandle(table: OperationTable) -> ValidationReport:
    """Idempotency, right-invertibility, right self-distributivity."""
    n = table.n
    vs = []
    for x in range(n):
        if table(x, x) != x:
            vs.append(("quandle.idempotency", (x,)))
    for y in range(n):
        if not table.column_is_bijective(y):
            vs.append(("quandle.right_invertibility", (y,)))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if table(table(x, y), z) != table(table(x, z), table(y, z)):
                    vs.append(("quandle.self_distributivity", (x, y, z)))
    return ValidationReport(tuple(sorted(vs)))


class OrientedSingquandle:
    """A quandle with singular-crossing maps R1, R2.

    ``star_inv`` is always derived from ``star`` so the pair of tables can
    never disagree.  Instances are validated on construction unless built
    through :func:`validate_singquandle` on raw tables.
    """

    __slots__ = ("n", "star", "star_inv", "r1", "r2")

    def __init__(self, star: OperationTable, r1: OperationTable,
                 r2: OperationTable, _checked: bool = False):
        if not (star.n == r1.n == r2.n):
            raise AlgebraError("tables have mismatched orders")
        if not _checked:
            report = validate_singquandle(star, r1, r2)
            if not report.valid:
                raise InvalidStructureError(report)
        self.n = star.n
        self.star = star
        self.star_inv = star.right_inverse()
        self.r1 = r1
        self.r2 = r2

    def op(self, x: int, y: int) -> int:
        return self.star(x, y)

    def op_inv(self, x: int, y: int) -> int:
        return self.star_inv(x, y)

    def elements(self) -> range:
        return range(self.n)

    def relabel(self, perm: Sequence[int]) -> "OrientedSingquandle":
        """Transport of structure along a permutation of the elements."""
        inv = [0] * self.n
        for i, p in enumerate(perm):
            inv[p] = i
        def move(t: OperationTable) -> OperationTable:
            return OperationTable.from_function(
                self.n, lambda x, y: perm[t(inv[x], inv[y])])
        return OrientedSingquandle(move(self.star), move(self.r1), move(self.r2))

    def __eq__(self, other) -> bool:
        return (isinstance(other, OrientedSingquandle)
                and (self.star, self.r1, self.r2) == (other.star, other.r1, other.r2))

    def __hash__(self) -> int:
        return hash((self.star, self.r1, self.r2))


def validate_singquandle(star: OperationTable, r1: OperationTable,
                         r2: OperationTable) -> ValidationReport:
    """Exhaustive check of the five oriented-singquandle identities.

    The quandle axioms on ``star`` are a prerequisite; if they fail the
    report carries those violations and the five identities are skipped
    (they need the derived inverse operation).
    """
    base = validate_quandle(star)
    if not base.valid:
        return _merge(base, ValidationReport(
            (("singquandle.prerequisite_quandle", ()),)))
    n = star.n
    sinv = star.right_inverse()
    vs = []
    for x in range(n):
        for y in range(n):
            if r1(x, y) >= n or r2(x, y) >= n:
                vs.append(("singquandle.range", (x, y)))
    for x in range(n):
        for y in range(n):
            # two-variable axioms (4) and (5)
            if r2(x, y) != r1(y, star(x, y)):
                vs.append(("singquandle.axiom4", (x, y)))
            if star(r1(x, y), r2(x, y)) != r2(y, star(x, y)):
                vs.append(("singquandle.axiom5", (x, y)))
            for z in range(n):
                if star(r1(sinv(x, y), z), y) != r1(x, star(z, y)):
                    vs.append(("singquandle.axiom1", (x, y, z)))
                if r2(sinv(x, y), z) != sinv(r2(x, star(z, y)), y):
                    vs.append(("singquandle.axiom2", (x, y, z)))
                if star(sinv(y, r1(x, z)), x) != sinv(star(y, r2(x, z)), z):
                    vs.append(("singquandle.axiom3", (x, y, z)))
    return ValidationReport(tuple(sorted(vs)))


def affine_singquandle(n: int, a: int, b: int, c: int) -> OrientedSingquandle:
    """x*y = ax+(1-a)y, R1 = bx+cy, R2 = acx+[b+c(1-a)]y over Z_n.

    Requires ``a`` invertible mod n and ``(1-a)(1-b-c) == 0 (mod n)``.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    if math.gcd(a, n) != 1:
        raise ParameterError(f"a={a} is not invertible mod {n}")
    if (1 - a) * (1 - b - c) % n != 0:
        raise ParameterError(f"(1-a)(1-b-c) != 0 mod {n} for a={a}, b={b}, c={c}")
    star = OperationTable.from_function(n, lambda x, y: a * x + (1 - a) * y)
    r1 = OperationTable.from_function(n, lambda x, y: b * x + c * y)
    r2 = OperationTable.from_function(n, lambda x, y: a * c * x + (b + c * (1 - a)) * y)
    return OrientedSingquandle(star, r1, r2)


def formula_structure(n: int, star_expr: str, r1_expr: str,
                      r2_expr: str) -> OrientedSingquandle:
    """Build a singquandle from integer-polynomial formulas in x, y mod n.

    Raises :class:`InvalidStructureError` (with the witness report attached)
    when the tables fail the axioms.
    """
    star = OperationTable(eval_table(star_expr, n, ("x", "y")))
    r1 = OperationTable(eval_table(r1_expr, n, ("x", "y")))
    r2 = OperationTable(eval_table(r2_expr, n, ("x", "y")))
    report = validate_singquandle(star, r1, r2)
    if not report.valid:
        raise InvalidStructureError(report)
    return OrientedSingquandle(star, r1, r2, _checked=True)


def validate_group(mult: OperationTable) -> ValidationReport:
    n = mult.n
    vs = []
    identity = None
    for e in range(n):
        if all(mult(e, x) == x and mult(x, e) == x for x in range(n)):
            identity = e
            break
    if identity is None:
        vs.append(("group.identity", ()))
    else:
        for x in range(n):
            if not any(mult(x, y) == identity and mult(y, x) == identity
                       for y in range(n)):
                vs.append(("group.inverse", (x,)))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if mult(mult(x, y), z) != mult(x, mult(y, z)):
                    vs.append(("group.associativity", (x, y, z)))
    return ValidationReport(tuple(sorted(vs)))


def quandle_from_group(mult: OperationTable, mode: str) -> OperationTable:
    """Conjugation (``a*b = b^-1 a b``) or core (``a*b = b a^-1 b``) quandle."""
    report = validate_group(mult)
    if not report.valid:
        raise AlgebraError("input is not a group table:\n" + report.summary())
    n = mult.n
    identity = next(e for e in range(n)
                    if all(mult(e, x) == x == mult(x, e) for x in range(n)))
    inv = [next(y for y in range(n) if mult(x, y) == identity) for x in range(n)]
    if mode == "conj":
        fn = lambda a, b: mult(mult(inv[b], a), b)
    elif mode == "core":
        fn = lambda a, b: mult(mult(b, inv[a]), b)
    else:
        raise ParameterError(f"unknown mode {mode!r}, expected 'conj' or 'core'")
    return OperationTable.from_function(n, fn)


class PairMap:
    """An invertible map on X x X stored as a lookup table."""

    __slots__ = ("n", "fwd", "bwd")

    def __init__(self, n: int, fn: Callable[[int, int], tuple]):
        fwd = {}
        for x in range(n):
            for y in range(n):
                fwd[(x, y)] = fn(x, y)
        bwd = {v: k for k, v in fwd.items()}
        if len(bwd) != n * n:
            raise AlgebraError("pair map is not invertible")
        self.n = n
        self.fwd = fwd
        self.bwd = bwd

    def __call__(self, x: int, y: int) -> tuple:
        return self.fwd[(x, y)]

    def inverse(self, a: int, b: int) -> tuple:
        return self.bwd[(a, b)]


class Psyquandle:
    """Four-operation structure coloring semiarcs of singular diagrams.

    Operation order follows the usual block-matrix listing: under-crossing
    ``ut`` (x goes under y), over-crossing ``ot``, singular-under ``ub``,
    singular-over ``ob``.  Right inverses and the crossing pair maps S, S'
    are precomputed.
    """

    __slots__ = ("n", "ut", "ot", "ub", "ob",
                 "ut_inv", "ot_inv", "ub_inv", "ob_inv", "smap", "sprime",
                 "pI_adequate")

    def __init__(self, ut: OperationTable, ot: OperationTable,
                 ub: OperationTable, ob: OperationTable, _checked: bool = False):
        if not (ut.n == ot.n == ub.n == ob.n):
            raise AlgebraError("tables have mismatched orders")
        if not _checked:
            report = validate_psyquandle(ut, ot, ub, ob)
            if not report.valid:
                raise InvalidStructureError(report)
        self.n = ut.n
        self.ut, self.ot, self.ub, self.ob = ut, ot, ub, ob
        self.ut_inv = ut.right_inverse()
        self.ot_inv = ot.right_inverse()
        self.ub_inv = ub.right_inverse()
        self.ob_inv = ob.right_inverse()
        self.smap = PairMap(self.n, lambda x, y: (ot(y, x), ut(x, y)))
        self.sprime = PairMap(self.n, lambda x, y: (ob(y, x), ub(x, y)))
        self.pI_adequate = all(ub(x, x) == ob(x, x) for x in range(self.n))

    @classmethod
    def from_biquandle(cls, ut: OperationTable, ot: OperationTable) -> "Psyquandle":
        """Lift a biquandle by reusing its two operations at singular crossings."""
        return cls(ut, ot, ut, ot)

    def elements(self) -> range:
        return range(self.n)


def validate_psyquandle(ut: OperationTable, ot: OperationTable,
                        ub: OperationTable, ob: OperationTable) -> ValidationReport:
    """Exhaustive check of psyquandle axioms (I)-(VI)."""
    n = ut.n
    vs = []
    for name, t in (("ut", ut), ("ot", ot), ("ub", ub), ("ob", ob)):
        for y in range(n):
            if not t.column_is_bijective(y):
                vs.append((f"psyquandle.I.{name}", (y,)))
    if vs:
        # right inverses are needed below; bail out with what we have
        return ValidationReport(tuple(sorted(vs)))
    uti, oti, ubi, obi = (ut.right_inverse(), ot.right_inverse(),
                          ub.right_inverse(), ob.right_inverse())
    for x in range(n):
        if ut(x, x) != ot(x, x):
            vs.append(("psyquandle.II", (x,)))
    for name, a, b in (("S", ot, ut), ("Sprime", ob, ub)):
        seen = set()
        for x in range(n):
            for y in range(n):
                seen.add((a(y, x), b(x, y)))
        if len(seen) != n * n:
            vs.append((f"psyquandle.III.{name}", ()))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if ut(ut(x, y), ut(z, y)) != ut(ut(x, z), ot(y, z)):
                    vs.append(("psyquandle.IV.1", (x, y, z)))
                if ot(ut(x, y), ut(z, y)) != ut(ot(x, z), ot(y, z)):
                    vs.append(("psyquandle.IV.2", (x, y, z)))
                if ot(ot(x, y), ot(z, y)) != ot(ot(x, z), ut(y, z)):
                    vs.append(("psyquandle.IV.3", (x, y, z)))
                if ot(ot(x, y), ob(z, y)) != ot(ot(x, z), ub(y, z)):
                    vs.append(("psyquandle.VI.1", (x, y, z)))
                if ut(ut(x, y), ob(z, y)) != ut(ut(x, z), ub(y, z)):
                    vs.append(("psyquandle.VI.2", (x, y, z)))
                if ob(ot(x, y), ot(z, y)) != ot(ob(x, z), ut(y, z)):
                    vs.append(("psyquandle.VI.3", (x, y, z)))
                if ub(ut(x, y), ut(z, y)) != ut(ub(x, z), ot(y, z)):
                    vs.append(("psyquandle.VI.4", (x, y, z)))
                if ub(ot(x, y), ot(z, y)) != ot(ub(x, z), ut(y, z)):
                    vs.append(("psyquandle.VI.5", (x, y, z)))
                if ob(ut(x, y), ut(z, y)) != ut(ob(x, z), ot(y, z)):
                    vs.append(("psyquandle.VI.6", (x, y, z)))
    for x in range(n):
        for y in range(n):
            lhs = ub(x, obi(ot(y, x), x))
            rhs = ot(obi(ut(x, y), y), ubi(ot(y, x), x))
            if lhs != rhs:
                vs.append(("psyquandle.V.1", (x, y)))
            lhs = ub(y, obi(ut(x, y), y))
            rhs = ut(obi(ot(y, x), x), obi(ut(x, y), y))
            if lhs != rhs:
                vs.append(("psyquandle.V.2", (x, y)))
    return ValidationReport(tuple(sorted(vs)))


class ShadowStructure:
    """A singquandle S acting on a carrier set X (region colors)."""

    __slots__ = ("base", "carrier", "action", "action_inv")

    def __init__(self, base: OrientedSingquandle, action: OperationTable | Sequence,
                 _checked: bool = False):
        rows = action.rows if isinstance(action, OperationTable) else tuple(
            tuple(r) for r in action)
        carrier = len(rows)
        for i, row in enumerate(rows):
            if len(row) != base.n:
                raise AlgebraError(f"action row {i} has {len(row)} entries, "
                                   f"expected {base.n}")
            for v in row:
                if not (0 <= v < carrier):
                    raise AlgebraError(f"action entry {v} out of range [0, {carrier})")
        self.base = base
        self.carrier = carrier
        self.action = rows
        if not _checked:
            report = validate_shadow(base, rows)
            if not report.valid:
                raise InvalidStructureError(report)
        # per-s inverse of the bijection x -> x.s
        inv = []
        for x in range(carrier):
            inv.append([0] * base.n)
        for s in range(base.n):
            for x in range(carrier):
                inv[rows[x][s]][s] = x
        self.action_inv = tuple(tuple(r) for r in inv)

    def act(self, x: int, s: int) -> int:
        return self.action[x][s]

    def act_inv(self, x: int, s: int) -> int:
        return self.action_inv[x][s]


def validate_shadow(base: OrientedSingquandle, action: Sequence) -> ValidationReport:
    """Column bijectivity plus the classical and singular action identities."""
    carrier = len(action)
    nS = base.n
    vs = []
    for s in range(nS):
        if len({action[x][s] for x in range(carrier)}) != carrier:
            vs.append(("shadow.bijectivity", (s,)))
    for x in range(carrier):
        for s1 in range(nS):
            for s2 in range(nS):
                lhs = action[action[x][s1]][s2]
                if lhs != action[action[x][s2]][base.op(s1, s2)]:
                    vs.append(("shadow.classical", (x, s1, s2)))
                if lhs != action[action[x][base.r1(s1, s2)]][base.r2(s1, s2)]:
                    vs.append(("shadow.singular", (x, s1, s2)))
    return ValidationReport(tuple(sorted(vs)))


def formula_shadow(base: OrientedSingquandle, carrier: int,
                   action_expr: str) -> ShadowStructure:
    """Shadow with action given by a formula in x (carrier) and s (base)."""
    rows = eval_table(action_expr, carrier, ("x", "s"), cols=base.n)
    return ShadowStructure(base, rows)


def is_homomorphism(f: Sequence[int], src: OrientedSingquandle,
                    dst: OrientedSingquandle) -> bool:
    if len(f) != src.n or any(not (0 <= v < dst.n) for v in f):
        raise AlgebraError("mapping is not total on the source elements")
    for x in range(src.n):
        for y in range(src.n):
            if f[src.op(x, y)] != dst.op(f[x], f[y]):
                return False
            if f[src.r1(x, y)] != dst.r1(f[x], f[y]):
                return False
            if f[src.r2(x, y)] != dst.r2(f[x], f[y]):
                return False
    return True


def _profile_vector(s: OrientedSingquandle, x: int) -> tuple:
    # (r1,c1,r2,c2,r3,c3) trivial-action counts; isomorphism-invariant.
    n = s.n
    return (
        sum(1 for y in range(n) if s.op(x, y) == x),
        sum(1 for y in range(n) if s.op(y, x) == y),
        sum(1 for y in range(n) if s.r1(x, y) == x),
        sum(1 for y in range(n) if s.r1(y, x) == y),
        sum(1 for y in range(n) if s.r2(x, y) == x),
        sum(1 for y in range(n) if s.r2(y, x) == y),
    )


def are_isomorphic(a: OrientedSingquandle,
                   b: OrientedSingquandle) -> Optional[list]:
    """Search for an isomorphism a -> b; returns the bijection or None.

    Candidates are pruned by the trivial-action count profile, which any
    isomorphism must preserve.
    """
    if a.n != b.n:
        return None
    n = a.n
    pa = [_profile_vector(a, x) for x in range(n)]
    pb = [_profile_vector(b, x) for x in range(n)]
    if sorted(pa) != sorted(pb):
        return None
    candidates = [[y for y in range(n) if pb[y] == pa[x]] for x in range(n)]

    f = [-1] * n
    used = [False] * n

    def consistent(x: int) -> bool:
        for u in range(n):
            if f[u] < 0:
                continue
            for (p, q) in ((x, u), (u, x), (x, x)):
                if f[p] < 0 or f[q] < 0:
                    continue
                for op_a, op_b in ((a.op, b.op), (a.r1, b.r1), (a.r2, b.r2)):
                    img = f[op_a(p, q)]
                    if img >= 0 and img != op_b(f[p], f[q]):
                        return False
        return True

    def extend(x: int) -> bool:
        if x == n:
            return True
        for y in candidates[x]:
            if used[y]:
                continue
            f[x] = y
            used[y] = True
            if consistent(x) and extend(x + 1):
                return True
            f[x] = -1
            used[y] = False
        return False

    if extend(0):
        return list(f)
    return None


def substructure_closure(s: OrientedSingquandle, seed: Iterable[int]) -> frozenset:
    """Smallest superset of ``seed`` closed under *, its inverse, R1 and R2."""
    current = set(seed)
    while True:
        new = set(current)
        for x in current:
            for y in current:
                new.add(s.op(x, y))
                new.add(s.op_inv(x, y))
                new.add(s.r1(x, y))
                new.add(s.r2(x, y))
        if new == current:
            return frozenset(current)
        current = new


def shadow_closure(sh: ShadowStructure, region_seed: Iterable[int],
                   acting: Iterable[int]) -> frozenset:
    """Close a set of carrier elements under the action of ``acting``."""
    acting = set(acting)
    current = set(region_seed)
    while True:
        new = set(current)
        for x in current:
            for s in acting:
                new.add(sh.act(x, s))
        if new == current:
            return frozenset(current)
        current = new


# -- algebra file format -------------------------------------------------------
#
# Text format, '#' comments.  Header lines:
#
#     type: quandle | singquandle | biquandle | psyquandle | shadow
#     order: n
#     modulus: m          (optional, defaults to order; for formula lines)
#     carrier: k          (shadow only)
#
# Structure is given either by formula lines
#
#     formula: star <expr in x,y>      formula: r1 <expr>
#     formula: r2 <expr>               formula: action <expr in x,s>
#
# or by named blocks of whitespace-separated 1-indexed entries:
#
#     star: / r1: / r2:   n rows of n entries
#     ops:                n rows; 2 (biquandle) or 4 (psyquandle) n-blocks
#                         left-to-right: under, over[, singular-under,
#                         singular-over]
#     action:             carrier rows of n entries (1-indexed carrier values)

_ALG_TYPES = ("quandle", "singquandle", "biquandle", "psyquandle", "shadow")


@dataclass(frozen=True)
class LoadedAlgebra:
    kind: str
    structure: object  # OperationTable (quandle) or a structure class

    @property
    def n(self) -> int:
        if isinstance(self.structure, ShadowStructure):
            return self.structure.base.n
        return self.structure.n


def _block_to_table(rows: list, n: int, what: str) -> OperationTable:
    if len(rows) != n or any(len(r) != n for r in rows):
        raise AlgebraError(f"{what} block must be {n}x{n}")
    for r in rows:
        for v in r:
            if not (1 <= v <= n):
                raise AlgebraError(f"{what} entry {v} outside 1..{n}")
    return OperationTable([[v - 1 for v in r] for r in rows])


def parse_algebra(text: str) -> LoadedAlgebra:
    headers: dict = {}
    formulas: dict = {}
    blocks: dict = {}
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(":", 1)[0] if ":" in line else None
        if head in ("type", "order", "modulus", "carrier"):
            headers[head] = line.split(":", 1)[1].strip()
            current = None
        elif head == "formula":
            parts = line.split(":", 1)[1].split(None, 1)
            if len(parts) != 2:
                raise AlgebraError(f"line {line_no}: formula needs a name and "
                                   f"an expression")
            formulas[parts[0]] = parts[1]
            current = None
        elif line.endswith(":") and line[:-1] in ("star", "r1", "r2", "ops",
                                                  "action"):
            current = blocks.setdefault(line[:-1], [])
        elif current is not None:
            try:
                current.append([int(tok) for tok in line.split()])
            except ValueError:
                raise AlgebraError(f"line {line_no}: bad integer row {line!r}")
        else:
            raise AlgebraError(f"line {line_no}: unexpected line {line!r}")

    kind = headers.get("type")
    if kind not in _ALG_TYPES:
        raise AlgebraError(f"type: must be one of {_ALG_TYPES}, got {kind!r}")
    try:
        n = int(headers["order"])
    except KeyError:
        raise AlgebraError("missing order: header")
    modulus = int(headers.get("modulus", n))

    def table(name: str) -> OperationTable:
        if name in formulas:
            return OperationTable(eval_table(formulas[name], modulus,
                                             ("x", "y"))[:n])
        if name in blocks:
            return _block_to_table(blocks[name], n, name)
        raise AlgebraError(f"missing {name} (block or formula)")

    if kind == "quandle":
        star = table("star")
        report = validate_quandle(star)
        if not report.valid:
            raise InvalidStructureError(report)
        return LoadedAlgebra(kind, star)

    if kind == "singquandle":
        return LoadedAlgebra(kind, OrientedSingquandle(
            table("star"), table("r1"), table("r2")))

    if kind in ("biquandle", "psyquandle"):
        parts = 2 if kind == "biquandle" else 4
        rows = blocks.get("ops")
        if rows is None:
            raise AlgebraError(f"{kind} needs an ops: block")
        if len(rows) != n or any(len(r) != parts * n for r in rows):
            raise AlgebraError(f"ops block must be {n}x{parts * n}")
        tables = [
            _block_to_table([r[k * n:(k + 1) * n] for r in rows], n, "ops")
            for k in range(parts)]
        if kind == "biquandle":
            return LoadedAlgebra(kind, Psyquandle.from_biquandle(*tables))
        return LoadedAlgebra(kind, Psyquandle(*tables))

    # shadow
    base = OrientedSingquandle(table("star"), table("r1"), table("r2"))
    try:
        carrier = int(headers["carrier"])
    except KeyError:
        raise AlgebraError("shadow needs a carrier: header")
    if "action" in formulas:
        rows = eval_table(formulas["action"], carrier, ("x", "s"),
                          rows=carrier, cols=n)
    elif "action" in blocks:
        rows = blocks["action"]
        if len(rows) != carrier or any(len(r) != n for r in rows):
            raise AlgebraError(f"action block must be {carrier}x{n}")
        for r in rows:
            for v in r:
                if not (1 <= v <= carrier):
                    raise AlgebraError(f"action entry {v} outside 1..{carrier}")
        rows = [[v - 1 for v in r] for r in rows]
    else:
        raise AlgebraError("missing action (block or formula)")
    return LoadedAlgebra(kind, ShadowStructure(base, rows))
