"""Strongly regular relations and idempotents, Latin square types, railway formulas."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import (
    DegenerateDenominator,
    HypothesisFails,
    InvalidSrgParams,
    TypeMismatch,
)
from .exact import RatMatrix, as_rational, rat_inverse

LATIN = "LatinSquare"
NEGATIVE_LATIN = "NegativeLatinSquare"
CONFERENCE = "Conference"


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int
    r: Fraction
    s: Fraction

    @classmethod
    def from_spectrum(cls, v, k, r, s) -> "SrgParams":
        """Parameters from valency and the two restricted eigenvalues."""
        r, s = as_rational(r), as_rational(s)
        if r < s:
            r, s = s, r
        if r == s:
            raise InvalidSrgParams("restricted eigenvalues must differ")
        mu = k + r * s
        lam = mu + r + s
        if mu.denominator != 1 or lam.denominator != 1:
            raise InvalidSrgParams(f"non-integral lambda/mu from ({v},{k},{r},{s})")
        params = cls(v=int(v), k=int(k), lam=int(lam), mu=int(mu), r=r, s=s)
        params.check()
        return params

    def check(self) -> None:
        v, k, lam, mu = self.v, self.k, self.lam, self.mu
        if not (0 < k < v - 1):
            raise InvalidSrgParams(f"valency {k} must satisfy 0 < k < v-1 = {v - 1}")
        if lam < 0 or mu < 0:
            raise InvalidSrgParams(f"lambda={lam}, mu={mu} must be nonnegative")
        if k * (k - lam - 1) != (v - k - 1) * mu:
            raise InvalidSrgParams("k(k-lambda-1) != (v-k-1)mu")
        if not (self.r >= 0 > self.s):
            raise InvalidSrgParams(f"need r >= 0 > s, got r={self.r}, s={self.s}")


@dataclass(frozen=True)
class TypeTag:
    kind: str  # LATIN | NEGATIVE_LATIN | CONFERENCE
    n: int | None = None
    t: int | None = None
    strict: bool = False

    def __str__(self):
        if self.kind == CONFERENCE:
            return "Conference"
        flag = ", strict" if self.strict else ""
        return f"{self.kind}({self.n},{self.t}{flag})"


@dataclass(frozen=True)
class SrIdempotent:
    v: int
    m: int
    a: Fraction
    b: Fraction


def _isqrt_exact(v: int) -> int | None:
    if v < 0:
        return None
    n = isqrt(v)
    return n if n * n == v else None


def is_conference(v, k, r, s) -> bool:
    r, s = as_rational(r), as_rational(s)
    return 2 * k == v - 1 and r + s == -1 and r * s == Fraction(1 - v, 4)


def _latin_tags(v, k, r, s) -> list[TypeTag]:
    root = _isqrt_exact(v)
    if root is None:
        return []
    pair = {as_rational(r), as_rational(s)}
    out = []
    for n in (root, -root):
        if n - 1 == 0:
            continue
        t = Fraction(k, n - 1)
        if t.denominator != 1:
            continue
        t = int(t)
        if n > 0 and t <= 0 or n < 0 and t >= 0:
            continue
        if {Fraction(n - t), Fraction(-t)} == pair:
            out.append((n, t))
    conf = is_conference(v, k, r, s)
    return [TypeTag(LATIN if n > 0 else NEGATIVE_LATIN, n, t, strict=not conf) for n, t in out]


def classify_srg(v, k, r, s, validate: bool = True) -> frozenset[TypeTag]:
    """All type tags of an SRG with valency k and restricted eigenvalues r, s.

    A conference graph on a square number of vertices carries both Latin
    tags (non-strict) plus the Conference tag.
    """
    if validate:
        SrgParams.from_spectrum(v, k, r, s)
    tags = set(_latin_tags(v, k, r, s))
    if is_conference(v, k, r, s):
        tags.add(TypeTag(CONFERENCE))
    return frozenset(tags)


def latin_kinds(tags) -> set[str]:
    return {t.kind for t in tags if t.kind in (LATIN, NEGATIVE_LATIN)}


def railway(v, k1, a1, b1, k2, a2, b2) -> list[tuple[Fraction, Fraction]]:
    """Restricted spectrum of A1 + A2 for commuting edge-disjoint SRGs.

    Returns [(theta_i, m_i)] for the combinations (a1+a2, a1+b2, b1+a2, b1+b2).
    """
    v, k1, a1, b1, k2, a2, b2 = map(as_rational, (v, k1, a1, b1, k2, a2, b2))
    den = (a1 - b1) * (a2 - b2)
    if den == 0:
        raise DegenerateDenominator("a_i == b_i")
    m1 = (v * b1 * b2 - (k1 - b1) * (k2 - b2)) / den
    m2 = -(v * b1 * a2 - (k1 - b1) * (k2 - a2)) / den
    m3 = -(v * a1 * b2 - (k1 - a1) * (k2 - b2)) / den
    m4 = (v * a1 * a2 - (k1 - a1) * (k2 - a2)) / den
    out = [(a1 + a2, m1), (a1 + b2, m2), (b1 + a2, m3), (b1 + b2, m4)]
    ms = [m for _, m in out]
    if sum(ms) != v - 1:
        raise ArithmeticError("railway multiplicities do not sum to v-1")
    if (k1 + k2) + sum(th * m for th, m in out) != 0:
        raise ArithmeticError("railway trace identity fails")
    if a1 > b1 and a2 > b2 and not (m2 > 0 and m3 > 0):
        raise ArithmeticError("railway positivity fails")
    return out


def complement(tag: TypeTag, v: int) -> tuple[SrgParams, TypeTag]:
    """Complement of a (negative) Latin square type SRG."""
    if tag.kind not in (LATIN, NEGATIVE_LATIN):
        raise TypeMismatch(f"complement closure needs a Latin type, got {tag}")
    n, t = tag.n, tag.t
    if n * n != v:
        raise TypeMismatch(f"v={v} is not n^2 for n={n}")
    t2 = n + 1 - t
    return _typed(v, n, t2)


def union(tag1: TypeTag, tag2: TypeTag, v: int) -> tuple[SrgParams, TypeTag]:
    """Union of two edge-disjoint commuting SRGs of the same type."""
    kinds = {tag1.kind, tag2.kind}
    if len(kinds) != 1 or not kinds <= {LATIN, NEGATIVE_LATIN} or tag1.n != tag2.n:
        raise TypeMismatch(f"cannot unite {tag1} and {tag2}")
    return _typed(v, tag1.n, tag1.t + tag2.t)


def _typed(v: int, n: int, t: int) -> tuple[SrgParams, TypeTag]:
    k = t * (n - 1)
    r, s = sorted((Fraction(n - t), Fraction(-t)), reverse=True)
    params = SrgParams.from_spectrum(v, k, r, s)
    conf = is_conference(v, k, r, s)
    return params, TypeTag(LATIN if n > 0 else NEGATIVE_LATIN, n, t, strict=not conf)


def same_type_closure(mode: str, v: int, tag: TypeTag, other: TypeTag | None = None):
    if mode == "complement":
        return complement(tag, v)
    if mode == "union":
        if other is None:
            raise TypeMismatch("union needs two tags")
        return union(tag, other, v)
    raise ValueError(f"unknown mode {mode!r}")


def from_single_eigenvalue(kind: str, v: int, size: int, a) -> TypeTag:
    """Type from one restricted (dual) eigenvalue a with size = -a(n-1).

    ``kind`` is "relation" (size = valency) or "idempotent" (size = rank);
    the arithmetic is the same.
    """
    if kind not in ("relation", "idempotent"):
        raise ValueError(f"unknown kind {kind!r}")
    a = as_rational(a)
    root = _isqrt_exact(v)
    if root is None:
        raise HypothesisFails(f"v={v} is not a perfect square")
    for n in (root, -root):
        if -a * (n - 1) == size:
            b = n + a
            if a.denominator != 1:
                raise HypothesisFails("non-integral eigenvalue")
            t = int(-a)
            conf = is_conference(v, size, max(a, b), min(a, b))
            return TypeTag(LATIN if n > 0 else NEGATIVE_LATIN, n, t, strict=not conf)
    raise HypothesisFails(f"no n = +-{root} with {size} = -({a})(n-1)")


def smith_check(ide: SrIdempotent, q111, q211) -> list[str]:
    """Inequalities and Krein identities of a strongly regular idempotent.

    ``q111`` = q^1_11 and ``q211`` = q^2_11 of the 2-class scheme with E_1 = E.
    Returns the list of failed conditions (empty on success).
    """
    m, a, b = ide.m, as_rational(ide.a), as_rational(ide.b)
    q111, q211 = as_rational(q111), as_rational(q211)
    if a < b:
        a, b = b, a
    fails = []
    if not (m >= a >= 0 > -1 >= b >= -m):
        fails.append(f"chain m >= a >= 0 > -1 >= b >= -m fails for m={m}, a={a}, b={b}")
    if a * b != q211 - m:
        fails.append(f"ab={a * b} != q^2_11 - m = {q211 - m}")
    if a + b != q111 - q211:
        fails.append(f"a+b={a + b} != q^1_11 - q^2_11 = {q111 - q211}")
    return fails


def dual_railway(v, m1, a1, b1, m2, a2, b2, Q: RatMatrix | None = None,
                 cols: tuple[int, int] | None = None) -> dict:
    """Valency sums of the four sign-pattern unions for two SR idempotents.

    With ``Q`` and the idempotent columns ``cols`` given, the relation
    indices are split by their (Q[i,c1], Q[i,c2]) pattern and the formula
    values are compared with the actual valency sums.
    """
    v, m1, a1, b1, m2, a2, b2 = map(as_rational, (v, m1, a1, b1, m2, a2, b2))
    den = (a1 - b1) * (a2 - b2)
    if den == 0:
        raise DegenerateDenominator("a_i == b_i")
    ell = [
        (v * b1 * b2 - (m1 - b1) * (m2 - b2)) / den,
        -(v * b1 * a2 - (m1 - b1) * (m2 - a2)) / den,
        -(v * a1 * b2 - (m1 - a1) * (m2 - b2)) / den,
        (v * a1 * a2 - (m1 - a1) * (m2 - a2)) / den,
    ]
    fails = []
    if sum(ell) != v - 1:
        fails.append("sum of ell != v-1")
    if a1 > b1 and a2 > b2 and not (ell[1] > 0 and ell[2] > 0):
        fails.append("ell_2 or ell_3 not positive")
    out = {"ell": ell, "sets": None, "actual": None, "fails": fails}
    if Q is not None and cols is not None:
        c1, c2 = cols
        patterns = [(a1, a2), (a1, b2), (b1, a2), (b1, b2)]
        sets = [[] for _ in range(4)]
        d = Q.nrows - 1
        for i in range(1, d + 1):
            key = (Q[i, c1], Q[i, c2])
            if key not in patterns:
                fails.append(f"relation {i} has pattern {key} outside the four combos")
                continue
            sets[patterns.index(key)].append(i)
        valency = _valencies_from_Q(Q, v)
        actual = [sum((valency[i] for i in s), Fraction(0)) for s in sets]
        if actual != ell:
            fails.append(f"ell {list(map(str, ell))} != valency sums {list(map(str, actual))}")
        out["sets"] = sets
        out["actual"] = actual
    return out


def _valencies_from_Q(Q: RatMatrix, v) -> list[Fraction]:
    # row 0 of P = vQ^{-1} is the valency vector
    return list(rat_inverse(Q).scale(v).row(0))


def sr_detect(M: RatMatrix) -> list[int]:
    """Indices whose principal column takes exactly two values."""
    d = M.ncols - 1
    if d < 2:
        return []
    return [i for i in range(1, d + 1)
            if len({M[l, i] for l in range(1, d + 1)}) == 2]


def column_values(M: RatMatrix, i: int) -> tuple[Fraction, Fraction]:
    """The two restricted values of column i, larger first."""
    vals = sorted({M[l, i] for l in range(1, M.nrows)}, reverse=True)
    if len(vals) != 2:
        raise ValueError(f"column {i} is not two-valued")
    return vals[0], vals[1]


def relation_types(P: RatMatrix) -> dict[int, frozenset[TypeTag]]:
    """Type tags of every strongly regular relation (columns of P)."""
    v = int(sum(P.row(0)))
    out = {}
    for i in sr_detect(P):
        r, s = column_values(P, i)
        out[i] = classify_srg(v, int(P[0, i]), r, s)
    return out


def idempotent_types(Q: RatMatrix) -> dict[int, frozenset[TypeTag]]:
    """Dual type tags of every strongly regular idempotent (columns of Q)."""
    v = int(sum(Q.row(0)))
    out = {}
    for j in sr_detect(Q):
        a, b = column_values(Q, j)
        # dual lambda/mu are Krein numbers and need not be integers
        out[j] = classify_srg(v, int(Q[0, j]), a, b, validate=False)
    return out
