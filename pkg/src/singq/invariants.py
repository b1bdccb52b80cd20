"""Invariant computations over coloring sets.

Cocycle state sums, the six-variable singquandle polynomial and its
subsingquandle refinement, shadow polynomials, and the Boltzmann-enhanced
psyquandle polynomials.  All values are exact; multisets of per-coloring
weights are packaged as :class:`~singq.polynomial.InvariantValue`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import sympy

from .algebra import (OperationTable, OrientedSingquandle, Psyquandle,
                      ShadowStructure, ValidationReport, AlgebraError,
                      substructure_closure, shadow_closure)
from .coloring import (ColoringSet, psyquandle_colorings, shadow_colorings,
                       singquandle_colorings)
from .diagram import SingularDiagram
from .polynomial import BasePolynomial, ExponentTag, InvariantValue


class InvariantError(ValueError):
    pass


def _check_tables(n: int, *tables) -> None:
    for t in tables:
        if len(t) != n or any(len(row) != n for row in t):
            raise InvariantError(f"weight table is not {n}x{n}")


@dataclass(frozen=True)
class CocyclePair:
    """Boltzmann weights for a singquandle: phi at classical crossings,
    phi_prime at singular ones, valued in Z_modulus (0 means Z)."""
    modulus: int
    phi: tuple
    phi_prime: tuple

    @classmethod
    def from_rows(cls, modulus: int, phi: Sequence, phi_prime: Sequence) -> "CocyclePair":
        red = (lambda v: v % modulus) if modulus else (lambda v: v)
        return cls(modulus,
                   tuple(tuple(red(v) for v in row) for row in phi),
                   tuple(tuple(red(v) for v in row) for row in phi_prime))

    @classmethod
    def zero(cls, n: int, modulus: int) -> "CocyclePair":
        z = tuple(tuple(0 for _ in range(n)) for _ in range(n))
        return cls(modulus, z, z)


def validate_cocycle_pair(s: OrientedSingquandle, cp: CocyclePair) -> ValidationReport:
    """Exhaustive check of the classical 2-cocycle condition and the three
    conditions imposed by the singular moves (written additively)."""
    n = s.n
    _check_tables(n, cp.phi, cp.phi_prime)
    m = cp.modulus
    red = (lambda v: v % m) if m else (lambda v: v)
    phi, php = cp.phi, cp.phi_prime
    star, sinv, r1, r2 = s.op, s.op_inv, s.r1, s.r2
    vs = []
    for x in range(n):
        if red(phi[x][x]) != 0:
            vs.append(("cocycle.diagonal", (x,)))
        for y in range(n):
            # move O5a
            lhs = php[x][y] + phi[r1(x, y)][r2(x, y)]
            rhs = phi[x][y] + php[y][star(x, y)]
            if red(lhs - rhs) != 0:
                vs.append(("cocycle.O5a", (x, y)))
            for z in range(n):
                lhs = phi[x][y] + phi[star(x, y)][z]
                rhs = phi[x][z] + phi[star(x, z)][star(y, z)]
                if red(lhs - rhs) != 0:
                    vs.append(("cocycle.RIII", (x, y, z)))
                # move O4a
                lhs = (-phi[sinv(x, y)][y] + php[sinv(x, y)][z]
                       + phi[r1(sinv(x, y), z)][y])
                rhs = (phi[z][y] + php[x][star(z, y)]
                       - phi[sinv(r2(x, star(z, y)), y)][y])
                if red(lhs - rhs) != 0:
                    vs.append(("cocycle.O4a", (x, y, z)))
                # move O4e
                lhs = (phi[sinv(y, r1(x, z))][x]
                       - phi[sinv(y, r1(x, z))][r1(x, z)])
                rhs = (-phi[sinv(star(y, r2(x, z)), z)][z]
                       + phi[y][r2(x, z)])
                if red(lhs - rhs) != 0:
                    vs.append(("cocycle.O4e", (x, y, z)))
    return ValidationReport(tuple(sorted(vs)))


def state_sum(d: SingularDiagram, s: OrientedSingquandle,
              cp: CocyclePair) -> InvariantValue:
    """Multiset of per-coloring total Boltzmann weights, rendered in u.

    Classical contributions are +phi(under_in, over_in) at a positive
    crossing and -phi(under_out, over_in) at a negative one (so that a
    direct poke cancels exactly); a singular crossing contributes
    phi_prime(in1, in2).
    """
    report = validate_cocycle_pair(s, cp)
    if not report.valid:
        raise InvariantError("invalid cocycle pair:\n" + report.summary())
    colorings = singquandle_colorings(d, s)
    tags = []
    for col in colorings:
        get = lambda c, port: col.color_of(d, c.arcs[port])
        total = 0
        for c in d.crossings:
            if c.kind == "P":
                total += cp.phi[get(c, "ui")][get(c, "oi")]
            elif c.kind == "N":
                total -= cp.phi[get(c, "uo")][get(c, "oi")]
            else:
                total += cp.phi_prime[get(c, "i1")][get(c, "i2")]
        tags.append(ExponentTag.ring(total, cp.modulus))
    return InvariantValue.from_tags(tags)


# -- singquandle polynomials --------------------------------------------------

def profile(s: OrientedSingquandle) -> list:
    """Per-element trivial-action counts (r1, c1, r2, c2, r3, c3)."""
    n = s.n
    out = []
    for x in range(n):
        out.append({
            "r1": sum(1 for y in range(n) if s.op(x, y) == x),
            "c1": sum(1 for y in range(n) if s.op(y, x) == y),
            "r2": sum(1 for y in range(n) if s.r1(x, y) == x),
            "c2": sum(1 for y in range(n) if s.r1(y, x) == y),
            "r3": sum(1 for y in range(n) if s.r2(x, y) == x),
            "c3": sum(1 for y in range(n) if s.r2(y, x) == y),
        })
    return out


def _profile_monomial(counts: dict) -> BasePolynomial:
    return BasePolynomial.monomial({
        "s1": counts["r1"], "t1": counts["c1"],
        "s2": counts["r2"], "t2": counts["c2"],
        "s3": counts["r3"], "t3": counts["c3"],
    })


def sqp(s: OrientedSingquandle) -> BasePolynomial:
    """Six-variable singquandle polynomial: sum of profile monomials."""
    acc = BasePolynomial.zero()
    for counts in profile(s):
        acc = acc + _profile_monomial(counts)
    return acc


def restrict(s: OrientedSingquandle, sub: Iterable[int]) -> OrientedSingquandle:
    """Induced structure on a subset closed under *, its inverse, R1, R2."""
    elems = sorted(set(sub))
    if substructure_closure(s, elems) != frozenset(elems):
        raise InvariantError(f"{elems} is not closed under the operations")
    pos = {e: i for i, e in enumerate(elems)}
    def table(op):
        return OperationTable([[pos[op(x, y)] for y in elems] for x in elems])
    return OrientedSingquandle(table(s.op), table(s.r1), table(s.r2),
                               _checked=True)


def ssqp(sub: Iterable[int], s: OrientedSingquandle) -> BasePolynomial:
    """Subsingquandle polynomial: the contribution of the substructure to
    sqp(s).  Counting stays in the ambient structure; only the summation
    range shrinks."""
    elems = sorted(set(sub))
    if substructure_closure(s, elems) != frozenset(elems):
        raise InvariantError(f"{elems} is not closed under the operations")
    full = profile(s)
    acc = BasePolynomial.zero()
    for x in elems:
        acc = acc + _profile_monomial(full[x])
    return acc


def phi_ssqp(d: SingularDiagram, s: OrientedSingquandle) -> InvariantValue:
    """Multiset of ssqp(image of f) over all colorings f, rendered in u."""
    tags = []
    for col in singquandle_colorings(d, s):
        image = substructure_closure(s, set(col.semiarc_colors))
        tags.append(ExponentTag.poly(ssqp(image, s)))
    return InvariantValue.from_tags(tags)


# -- shadow polynomials -------------------------------------------------------

def sp(sh: ShadowStructure) -> BasePolynomial:
    """Shadow polynomial: sum over carrier elements of t^(fixing count)."""
    return subsp(range(sh.carrier), range(sh.base.n), sh, _checked=True)


def subsp(region_subset: Iterable[int], acting: Iterable[int],
          sh: ShadowStructure, _checked: bool = False) -> BasePolynomial:
    """Subshadow polynomial, with the fixing count taken against ``acting``."""
    ys = sorted(set(region_subset))
    ss = sorted(set(acting))
    if not _checked:
        if substructure_closure(sh.base, ss) != frozenset(ss):
            raise InvariantError("acting set is not a subsingquandle")
        if shadow_closure(sh, ys, ss) != frozenset(ys):
            raise InvariantError("region subset is not closed under the action")
    acc = BasePolynomial.zero()
    for x in ys:
        r = sum(1 for s in ss if sh.act(x, s) == x)
        acc = acc + BasePolynomial.monomial({"t": r})
    return acc


def shadow_polynomial_invariant(d: SingularDiagram,
                                sh: ShadowStructure) -> InvariantValue:
    """SP(L): multiset of subsp over the shadow image of each shadow coloring."""
    tags = []
    for col in shadow_colorings(d, sh):
        image = substructure_closure(sh.base, set(col.semiarc_colors))
        shadow_image = shadow_closure(sh, set(col.region_colors), image)
        tags.append(ExponentTag.poly(subsp(shadow_image, image, sh)))
    return InvariantValue.from_tags(tags)


SP = shadow_polynomial_invariant


# -- psyquandle Boltzmann weights ---------------------------------------------

@dataclass(frozen=True)
class BoltzmannPair:
    """phi (classical) and psi (singular) weights for a psyquandle,
    valued in Z_modulus (0 means Z)."""
    modulus: int
    phi: tuple
    psi: tuple

    @classmethod
    def from_rows(cls, modulus: int, phi: Sequence, psi: Sequence) -> "BoltzmannPair":
        red = (lambda v: v % modulus) if modulus else (lambda v: v)
        return cls(modulus,
                   tuple(tuple(red(v) for v in row) for row in phi),
                   tuple(tuple(red(v) for v in row) for row in psi))

    @classmethod
    def zero(cls, n: int, modulus: int) -> "BoltzmannPair":
        z = tuple(tuple(0 for _ in range(n)) for _ in range(n))
        return cls(modulus, z, z)


def validate_boltzmann(p: Psyquandle, bp: BoltzmannPair) -> ValidationReport:
    """Boltzmann weight axioms (I)-(III); axiom (IV) only sets the
    strong-compatibility flag, via :func:`strongly_compatible`."""
    n = p.n
    _check_tables(n, bp.phi, bp.psi)
    m = bp.modulus
    red = (lambda v: v % m) if m else (lambda v: v)
    phi, psi = bp.phi, bp.psi
    ut, ot, ubi, obi = p.ut, p.ot, p.ub_inv, p.ob_inv
    vs = []
    for x in range(n):
        if red(phi[x][x]) != 0:
            vs.append(("boltzmann.I", (x,)))
        for y in range(n):
            a = obi(ot(y, x), x)   # (y ot x) ob^-1 x
            b = obi(ut(x, y), y)   # (x ut y) ob^-1 y
            lhs = phi[x][y] + psi[y][b]
            rhs = phi[a][b] + psi[x][a]
            if red(lhs - rhs) != 0:
                vs.append(("boltzmann.II", (x, y)))
            for z in range(n):
                lhs = phi[x][y] + phi[y][z] + phi[ut(x, y)][ot(z, y)]
                rhs = (phi[ut(x, z)][ut(y, z)] + phi[x][z]
                       + phi[ot(y, x)][ot(z, x)])
                if red(lhs - rhs) != 0:
                    vs.append(("boltzmann.III.1", (x, y, z)))
                lhs = psi[x][y] + phi[y][z] + phi[p.ub(x, y)][ot(z, y)]
                rhs = (psi[ut(x, z)][ut(y, z)] + phi[x][z]
                       + phi[p.ob(y, x)][ot(z, x)])
                if red(lhs - rhs) != 0:
                    vs.append(("boltzmann.III.2", (x, y, z)))
                lhs = psi[z][y] - phi[x][y] - phi[ut(x, y)][p.ub(z, y)]
                rhs = (psi[ot(z, x)][ot(y, x)] - phi[x][z]
                       - phi[ut(x, z)][p.ob(y, z)])
                if red(lhs - rhs) != 0:
                    vs.append(("boltzmann.III.3", (x, y, z)))
    return ValidationReport(tuple(sorted(vs)))


def strongly_compatible(p: Psyquandle, bp: BoltzmannPair) -> bool:
    """Axiom (IV): psi is invariant under the two translation actions."""
    n = p.n
    m = bp.modulus
    red = (lambda v: v % m) if m else (lambda v: v)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if red(bp.psi[x][y] - bp.psi[p.ut(x, z)][p.ut(y, z)]) != 0:
                    return False
                if red(bp.psi[z][y] - bp.psi[p.ot(z, x)][p.ot(y, x)]) != 0:
                    return False
    return True


def _boltzmann_totals(d: SingularDiagram, p: Psyquandle, bp: BoltzmannPair):
    for col in psyquandle_colorings(d, p):
        get = lambda c, port: col.color_of(d, c.arcs[port])
        tphi = 0
        tpsi = 0
        for c in d.crossings:
            if c.kind == "P":
                tphi += bp.phi[get(c, "ui")][get(c, "oi")]
            elif c.kind == "N":
                tphi -= bp.phi[get(c, "uo")][get(c, "oo")]
            else:
                tpsi += bp.psi[get(c, "i1")][get(c, "i2")]
        yield tphi, tpsi


def boltzmann_single(d: SingularDiagram, p: Psyquandle,
                     bp: BoltzmannPair) -> InvariantValue:
    """Single-variable enhanced polynomial: multiset of total weights in w."""
    report = validate_boltzmann(p, bp)
    if not report.valid:
        raise InvariantError("invalid Boltzmann pair:\n" + report.summary())
    tags = [ExponentTag.ring(a + b, bp.modulus)
            for a, b in _boltzmann_totals(d, p, bp)]
    return InvariantValue.from_tags(tags)


def boltzmann_two(d: SingularDiagram, p: Psyquandle,
                  bp: BoltzmannPair) -> InvariantValue:
    """Two-variable enhanced polynomial: multiset of (phi, psi) part totals."""
    report = validate_boltzmann(p, bp)
    if not report.valid:
        raise InvariantError("invalid Boltzmann pair:\n" + report.summary())
    if not strongly_compatible(p, bp):
        raise InvariantError("Boltzmann pair is not strongly compatible")
    m = bp.modulus
    red = (lambda v: v % m) if m else (lambda v: v)
    tags = [ExponentTag.pair(red(a), red(b))
            for a, b in _boltzmann_totals(d, p, bp)]
    return InvariantValue.from_tags(tags)


# -- cocycle space search -----------------------------------------------------
#
# The validity conditions are Z-linear in the entries of (phi, phi_prime),
# so the valid pairs mod n form the kernel of an integer matrix.  The kernel
# is computed per prime-power factor of n (elimination with p-adic pivots
# and annihilator rows, so nothing is lost to zero divisors) and the factors
# are recombined by the Chinese remainder theorem.

def _cocycle_rows(s: OrientedSingquandle) -> list:
    """Sparse coefficient rows; unknowns are phi (first n^2) then phi_prime."""
    n = s.n
    star, sinv, r1, r2 = s.op, s.op_inv, s.r1, s.r2
    P = lambda x, y: x * n + y
    Q = lambda x, y: n * n + x * n + y
    rows = []

    def add(*terms):
        row = {}
        for idx, coef in terms:
            row[idx] = row.get(idx, 0) + coef
        rows.append(row)

    for x in range(n):
        add((P(x, x), 1))
        for y in range(n):
            add((Q(x, y), 1), (P(r1(x, y), r2(x, y)), 1),
                (P(x, y), -1), (Q(y, star(x, y)), -1))
            for z in range(n):
                add((P(x, y), 1), (P(star(x, y), z), 1),
                    (P(x, z), -1), (P(star(x, z), star(y, z)), -1))
                add((P(sinv(x, y), y), -1), (Q(sinv(x, y), z), 1),
                    (P(r1(sinv(x, y), z), y), 1),
                    (P(z, y), -1), (Q(x, star(z, y)), -1),
                    (P(sinv(r2(x, star(z, y)), y), y), 1))
                add((P(sinv(y, r1(x, z)), x), 1),
                    (P(sinv(y, r1(x, z)), r1(x, z)), -1),
                    (P(sinv(star(y, r2(x, z)), z), z), 1),
                    (P(y, r2(x, z)), -1))
    return rows


def _kernel_prime_power(rows: list, width: int, p: int, e: int) -> list:
    """Generators of {x in Z_q^width : Ax = 0}, q = p^e.

    Eliminates on [A^T | I]; a pivot with p-valuation v also spawns the
    annihilator row q/p^(e-v) so that non-unit pivots keep their full
    solution sets.
    """
    q = p ** e
    ncols = len(rows)
    work = []
    for i in range(width):
        left = [rows[j].get(i, 0) % q for j in range(ncols)]
        right = [0] * width
        right[i] = 1
        work.append((left, right))

    def valuation(a):
        v = 0
        while a % p == 0 and v < e:
            a //= p
            v += 1
        return v

    for col in range(ncols):
        best, bestv = None, e
        for idx, (left, _) in enumerate(work):
            if left[col] % q:
                v = valuation(left[col] % q)
                if v < bestv:
                    best, bestv = idx, v
        if best is None:
            continue
        left, right = work.pop(best)
        unit = (left[col] % q) // (p ** bestv)
        inv = pow(unit, -1, q)
        left = [(a * inv) % q for a in left]
        right = [(a * inv) % q for a in right]
        for other_left, other_right in work:
            a = other_left[col] % q
            if a:
                f = a // (p ** bestv)
                for k in range(ncols):
                    other_left[k] = (other_left[k] - f * left[k]) % q
                for k in range(width):
                    other_right[k] = (other_right[k] - f * right[k]) % q
        if bestv > 0:
            ann = p ** (e - bestv)
            work.append(([(a * ann) % q for a in left],
                         [(a * ann) % q for a in right]))
    return [tuple(right) for left, right in work
            if not any(a % q for a in left) and any(right)]


def _echelon_mod(vectors: list, p: int, e: int) -> list:
    """Howell-style echelon form of the span of ``vectors`` over Z_{p^e};
    returns (pivot column, pivot valuation, row) triples."""
    q = p ** e
    stack = [list(v) for v in vectors]
    pivots = []
    while stack:
        row = stack.pop()
        for col, v, prow in pivots:
            a = row[col] % q
            if a % (p ** v) == 0:
                f = a // (p ** v)
                row = [(x - f * y) % q for x, y in zip(row, prow)]
        lead = next((i for i, a in enumerate(row) if a % q), None)
        if lead is None:
            continue
        a = row[lead] % q
        v = 0
        while a % p == 0:
            a //= p
            v += 1
        inv = pow(a, -1, q)
        row = [(x * inv) % q for x in row]
        pivots.append((lead, v, row))
        if v > 0:
            stack.append([(x * (p ** (e - v))) % q for x in row])
        pivots.sort()
    return pivots


def _reduces_to_zero(pivots: list, vector: list, p: int, e: int) -> bool:
    q = p ** e
    row = [a % q for a in vector]
    for col, v, prow in pivots:
        a = row[col]
        if a % (p ** v):
            return False
        f = a // (p ** v)
        row = [(x - f * y) % q for x, y in zip(row, prow)]
    return not any(row)


@dataclass(frozen=True)
class CocycleSpace:
    """All valid (phi, phi_prime) pairs mod ``modulus`` for one singquandle:
    the span of ``generators`` (the zero pair is always a member)."""
    structure: OrientedSingquandle
    modulus: int
    generators: tuple  # of CocyclePair
    size: int

    def _split(self, cp: CocyclePair) -> list:
        n = self.structure.n
        return ([v for row in cp.phi for v in row]
                + [v for row in cp.phi_prime for v in row])

    def contains(self, cp: CocyclePair) -> bool:
        if cp.modulus != self.modulus:
            raise InvariantError("modulus mismatch")
        vec = self._split(cp)
        gens = [self._split(g) for g in self.generators]
        for p, e in sympy.factorint(self.modulus).items():
            pivots = _echelon_mod(gens, p, e)
            if not _reduces_to_zero(pivots, vec, p, e):
                return False
        return True


def solve_cocycle_space(s: OrientedSingquandle, modulus: int) -> CocycleSpace:
    """Solve the homogeneous cocycle system over Z_modulus."""
    if modulus < 2:
        raise InvariantError("modulus must be >= 2")
    n = s.n
    width = 2 * n * n
    rows = _cocycle_rows(s)
    m = modulus
    gens = []
    size = 1
    for p, e in sympy.factorint(m).items():
        q = p ** e
        kq = _kernel_prime_power(rows, width, p, e)
        pivots = _echelon_mod(kq, p, e)
        size *= math.prod(q // p ** v for _, v, _ in pivots)
        cofactor = m // q
        lift = cofactor * pow(cofactor, -1, q)  # 1 mod q, 0 mod m/q
        for g in kq:
            gens.append(tuple((a * lift) % m for a in g))
    pairs = []
    for g in gens:
        phi = [list(g[i * n:(i + 1) * n]) for i in range(n)]
        php = [list(g[n * n + i * n:n * n + (i + 1) * n]) for i in range(n)]
        pairs.append(CocyclePair.from_rows(m, phi, php))
    return CocycleSpace(s, m, tuple(pairs), size)


# -- weight file parsing ------------------------------------------------------
#
# Format, comments starting with '#':
#
#     modulus: n
#     phi:
#     <n rows of n integers>
#     phiprime:        (or psi:)
#     <n rows of n integers>

def parse_weights(text: str):
    """Parse a weight file into a CocyclePair or BoltzmannPair.

    Rows and columns follow the 1-indexed element order of the companion
    algebra file; the entries themselves are ring values.
    """
    modulus = None
    blocks: dict = {}
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("modulus:"):
            modulus = int(line.split(":", 1)[1])
            continue
        key = line.rstrip(":")
        if line.endswith(":") and key in ("phi", "phiprime", "psi"):
            if key in blocks:
                raise InvariantError(f"line {line_no}: duplicate block {key!r}")
            current = blocks.setdefault(key, [])
            continue
        if current is None:
            raise InvariantError(f"line {line_no}: data outside a block")
        try:
            current.append([int(tok) for tok in line.split()])
        except ValueError:
            raise InvariantError(f"line {line_no}: bad integer row {line!r}")
    if modulus is None:
        raise InvariantError("missing modulus: header")
    n = len(blocks.get("phi", []))
    if not n or any(len(r) != n for r in blocks["phi"]):
        raise InvariantError("phi block must be a square table")
    if "phiprime" in blocks and "psi" not in blocks:
        return CocyclePair.from_rows(modulus, blocks["phi"], blocks["phiprime"])
    if "psi" in blocks and "phiprime" not in blocks:
        return BoltzmannPair.from_rows(modulus, blocks["phi"], blocks["psi"])
    raise InvariantError("need exactly one of phiprime:/psi: besides phi:")
