"""Sparse multivariate polynomials over Q with SL2 weight metadata.

A :class:`Ring` fixes an ordered variable list.  Every variable carries an SL2
weight (the torus exponent) and a C*-degree; variables may be grouped in V1
pairs ``(upper, lower)`` where the lowering operator sends ``upper`` to
``lower``.  Polynomials are immutable maps from exponent tuples to nonzero
Fractions.

The monomial order used everywhere is total degree first, then lexicographic
on the ring's variable order (earlier variables are larger).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .exact import Matrix, as_rational, rref

Exponent = tuple[int, ...]


class Ring:
    def __init__(
        self,
        names: Sequence[str],
        weights: Sequence[int] | None = None,
        degrees: Sequence[int] | None = None,
        pairs: Sequence[tuple[str, str]] = (),
    ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.pairs = tuple((u, l) for u, l in pairs)
        for u, l in self.pairs:
            if u not in self.index or l not in self.index:
                raise ValueError(f"pair ({u}, {l}) uses unknown variables")
        if weights is None:
            w = [0] * len(self.names)
            for u, l in self.pairs:
                w[self.index[u]] = 1
                w[self.index[l]] = -1
            weights = w
        self.weights = tuple(int(x) for x in weights)
        self.degrees = tuple(int(x) for x in (degrees if degrees is not None else [1] * len(self.names)))
        if not (len(self.weights) == len(self.degrees) == len(self.names)):
            raise ValueError("weights/degrees length mismatch")
        self.lower_of = {u: l for u, l in self.pairs}
        self.upper_of = {l: u for u, l in self.pairs}

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[str, str]], extra: Sequence[str] = ()) -> "Ring":
        """Ring whose variables are the uppers, then the lowers, then ``extra``."""
        names = [u for u, _ in pairs] + [l for _, l in pairs] + list(extra)
        return cls(names, pairs=pairs)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.weights == other.weights
            and self.degrees == other.degrees
            and self.pairs == other.pairs
        )

    def __hash__(self) -> int:
        return hash((self.names, self.weights, self.pairs))

    def __repr__(self) -> str:
        return f"Ring({list(self.names)})"

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self, *names: str) -> tuple["Poly", ...]:
        return tuple(self.gen(n) for n in (names or self.names))

    def const(self, c) -> "Poly":
        return Poly(self, {self.zero_exp: as_rational(c)})

    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def zero_exp(self) -> Exponent:
        return (0,) * self.nvars

    def weight(self, exp: Exponent) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def degree(self, exp: Exponent) -> int:
        return sum(exp)

    def monomials(self, degree: int) -> list[Exponent]:
        out = []
        for combo in combinations_with_replacement(range(self.nvars), degree):
            e = [0] * self.nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        return out

    def monomials_by_weight(self, degree: int) -> dict[int, list[Exponent]]:
        groups: dict[int, list[Exponent]] = {}
        for e in self.monomials(degree):
            groups.setdefault(self.weight(e), []).append(e)
        return groups

    def subring(self, names: Iterable[str]) -> "Ring":
        keep = [n for n in self.names if n in set(names)]
        pairs = [(u, l) for u, l in self.pairs if u in keep and l in keep]
        return Ring(
            keep,
            weights=[self.weights[self.index[n]] for n in keep],
            degrees=[self.degrees[self.index[n]] for n in keep],
            pairs=pairs,
        )

    def parse_monomial(self, exp: Exponent) -> str:
        parts = []
        for n, e in zip(self.names, exp):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) or "1"


def monomial_key(exp: Exponent) -> tuple:
    """Sort key for the degree-then-lex order (larger key = larger monomial)."""
    return (sum(exp), exp)


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, object] | None = None):
        self.ring = ring
        clean = {}
        for e, c in (terms or {}).items():
            c = as_rational(c)
            if c != 0:
                if len(e) != ring.nvars:
                    raise ValueError("exponent length does not match ring")
                clean[tuple(e)] = c
        self.terms: dict[Exponent, Fraction] = clean

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Poly":
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, RationalFunction):
            return NotImplemented
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly(self.ring, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        return self * (1 / as_rational(scalar))

    def __pow__(self, k: int) -> "Poly":
        out = self.ring.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_weight_homogeneous(self) -> bool:
        return len({self.ring.weight(e) for e in self.terms}) <= 1

    def weight(self) -> int:
        ws = {self.ring.weight(e) for e in self.terms}
        if len(ws) > 1:
            raise ValueError("polynomial is not weight-homogeneous")
        return ws.pop() if ws else 0

    def leading_monomial(self) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=monomial_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def coefficient(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def variables(self) -> set[str]:
        return {self.ring.names[i] for e in self.terms for i, k in enumerate(e) if k}

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.zero_exp, Fraction(0))

    # calculus / substitution -----------------------------------------------

    def diff(self, name: str) -> "Poly":
        i = self.ring.index[name]
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.ring, out)

    def derivation(self, images: Mapping[str, "Poly"]) -> "Poly":
        """Apply the derivation with the given variable images (others map to 0)."""
        total = self.ring.zero()
        for name, img in images.items():
            if img:
                d = self.diff(name)
                if d:
                    total = total + d * img
        return total

    def subs(self, values: Mapping[str, object], target: Ring | None = None):
        """Substitute variables.  Values may be Polys (in ``target``), rationals,
        or :class:`RationalFunction`s; unmapped variables are kept (they must
        exist in ``target``)."""
        target = target or self.ring
        powers_cache: dict[tuple[str, int], object] = {}

        def base(name: str):
            if name in values:
                v = values[name]
                return v if not isinstance(v, (int, Fraction)) else target.const(v)
            return target.gen(name)

        def power(name: str, k: int):
            key = (name, k)
            if key not in powers_cache:
                powers_cache[key] = base(name) if k == 1 else power(name, k - 1) * base(name)
            return powers_cache[key]

        total = None
        for e, c in self.terms.items():
            term = None
            for name, k in zip(self.ring.names, e):
                if k:
                    p = power(name, k)
                    term = p if term is None else term * p
            term = target.const(c) if term is None else term * c
            total = term if total is None else total + term
        return target.zero() if total is None else total

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        total = Fraction(0)
        vals = [as_rational(point[n]) if n in point else None for n in self.ring.names]
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    if v is None:
                        raise KeyError("missing value for a variable")
                    t *= v**k
            total += t
        return total

    def to_ring(self, ring: Ring) -> "Poly":
        """Re-express in another ring containing all variables that occur."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * ring.nvars
            for name, k in zip(self.ring.names, e):
                if k:
                    f[ring.index[name]] = k
            out[tuple(f)] = c
        return Poly(ring, out)

    # formatting -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=monomial_key, reverse=True):
            c = self.terms[e]
            mono = self.ring.parse_monomial(e)
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


def coefficient_matrix(polys: Sequence[Poly], monomials: Sequence[Exponent]) -> Matrix:
    return Matrix([[p.coefficient(m) for m in monomials] for p in polys], ncols=len(monomials))


def support(polys: Iterable[Poly]) -> list[Exponent]:
    mons = set()
    for p in polys:
        mons.update(p.terms)
    return sorted(mons, key=monomial_key, reverse=True)


def in_span(p: Poly, basis: Sequence[Poly]) -> bool:
    """Exact membership of ``p`` in the Q-span of ``basis``."""
    if p.is_zero():
        return True
    mons = support([p, *basis])
    if not basis:
        return False
    m = coefficient_matrix(basis, mons)
    return Matrix.stack(m, coefficient_matrix([p], mons)).rank() == m.rank()


class SpanMembership:
    """Membership tests against a fixed span, reusing one echelon basis."""

    def __init__(self, basis: Sequence[Poly]):
        self.rows: list[tuple[Exponent, dict[Exponent, Fraction]]] = []
        for b in span_basis(basis):
            self.rows.append((max(b.terms, key=monomial_key), dict(b.terms)))

    def contains(self, p: Poly) -> bool:
        terms = dict(p.terms)
        for lead, row in self.rows:
            c = terms.get(lead)
            if c:
                for e, v in row.items():
                    w = terms.get(e, 0) - c * v
                    if w:
                        terms[e] = w
                    else:
                        terms.pop(e, None)
        return not terms


def span_basis(polys: Sequence[Poly]) -> list[Poly]:
    """A reduced echelon basis of the Q-span (leading monomials distinct)."""
    polys = [p for p in polys if p]
    if not polys:
        return []
    ring = polys[0].ring
    mons = support(polys)
    red, rank, _ = rref(coefficient_matrix(polys, mons))
    return [Poly(ring, dict(zip(mons, red.row(i)))) for i in range(rank)]


# -- elimination of linear generators ------------------------------------------


@dataclass(frozen=True)
class LinearElimination:
    """Result of solving the linear generators for some variables."""

    ring: Ring
    reduced_ring: Ring
    substitutions: dict[str, Poly]  # eliminated variable -> poly in reduced_ring
    residual: tuple[Poly, ...]  # non-linear generators rewritten in reduced_ring

    def reduce(self, p: Poly) -> Poly:
        return p.subs(self.substitutions, target=self.reduced_ring)


def eliminate_linear(ring: Ring, generators: Sequence[Poly]) -> LinearElimination:
    """Solve the degree-1 homogeneous generators for the earliest possible
    variables and rewrite the remaining generators in the surviving ones."""
    linear = [g for g in generators if g and g.is_homogeneous() and g.degree() == 1]
    others = [g for g in generators if g and not (g.is_homogeneous() and g.degree() == 1)]
    subs: dict[str, Poly] = {}
    if linear:
        m = Matrix([[g.coefficient(ring.gen(n).leading_monomial()) for n in ring.names] for g in linear])
        red, rank, pivots = rref(m)
        eliminated = [ring.names[p] for p in pivots]
        survivors = [n for n in ring.names if n not in eliminated]
        reduced = ring.subring(survivors)
        for i, p in enumerate(pivots):
            expr = reduced.zero()
            for n in survivors:
                c = red[i, ring.index[n]]
                if c:
                    expr = expr - reduced.gen(n) * c
            subs[ring.names[p]] = expr
    else:
        reduced = ring
    residual = tuple(r for r in (g.subs(subs, target=reduced) for g in others) if r)
    return LinearElimination(ring, reduced, subs, residual)


# -- rewriting -------------------------------------------------------------------


@dataclass(frozen=True)
class RewriteSystem:
    """Linear substitutions followed by at most one quadric rule.

    ``quadric`` is ``(lead, replacement)``: the monomial ``lead`` is rewritten
    to ``replacement`` whose monomials are all smaller than ``lead``.
    """

    ring: Ring
    substitutions: Mapping[str, Poly] = field(default_factory=dict)
    quadric: tuple[Exponent, Poly] | None = None

    def __post_init__(self):
        subbed = set(self.substitutions)
        for name, img in self.substitutions.items():
            if img.ring != self.ring:
                raise ValueError("substitution image lives in a different ring")
            if img.degree() > 1:
                raise ValueError(f"substitution for {name} is not linear")
            if img.variables() & subbed:
                raise ValueError(f"substitution for {name} is not fully reduced")
        if self.quadric is not None:
            lead, rep = self.quadric
            if any(monomial_key(e) >= monomial_key(lead) for e in rep.terms):
                raise ValueError("quadric replacement is not smaller than its leading monomial")
            names = {self.ring.names[i] for i, k in enumerate(lead) if k}
            if names & subbed or rep.variables() & subbed:
                raise ValueError("quadric rule mentions a substituted variable")

    @classmethod
    def from_quadric(cls, q: Poly, substitutions: Mapping[str, Poly] | None = None) -> "RewriteSystem":
        lead = q.leading_monomial()
        lc = q.terms[lead]
        rep = q.ring.gen(q.ring.names[0]) * 0
        for e, c in q.terms.items():
            if e != lead:
                rep = rep + Poly(q.ring, {e: -c / lc})
        return cls(q.ring, dict(substitutions or {}), (lead, rep))

    @classmethod
    def from_generators(cls, ring: Ring, generators: Sequence[Poly]) -> "RewriteSystem":
        """Build a system for an ideal of the form (linear forms) + (<= 1 quadric)."""
        elim = eliminate_linear(ring, generators)
        subs = {n: p.to_ring(ring) for n, p in elim.substitutions.items()}
        residual = span_basis(list(elim.residual))
        if len(residual) > 1:
            raise ValueError(f"residual ideal has {len(residual)} independent non-linear generators")
        if residual:
            q = residual[0]
            if any(g.degree() == 0 for g in residual):
                raise ValueError("ideal contains a unit")
            return cls.from_quadric(q.to_ring(ring), subs)
        return cls(ring, subs, None)

    def normal_form(self, p: Poly) -> Poly:
        return normal_form(p, self)


def normal_form(p: Poly, rs: RewriteSystem) -> Poly:
    if rs.substitutions:
        p = p.subs(dict(rs.substitutions), target=rs.ring)
    if rs.quadric is None:
        return p
    lead, rep = rs.quadric
    terms = dict(p.terms)
    while True:
        hit = [e for e in terms if divides(lead, e)]
        if not hit:
            return Poly(rs.ring, terms)
        e = max(hit, key=monomial_key)
        c = terms.pop(e)
        rest = tuple(a - b for a, b in zip(e, lead))
        for f, d in rep.terms.items():
            g = tuple(a + b for a, b in zip(f, rest))
            v = terms.get(g, 0) + c * d
            if v:
                terms[g] = v
            else:
                terms.pop(g, None)


# -- rational functions ----------------------------------------------------------


class RationalFunction:
    """Quotient of two polynomials; no cancellation is attempted.

    Enough for symbolic elimination where the only question asked of a value
    is whether it is zero (its numerator vanishes identically).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = num.ring.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @property
    def ring(self) -> Ring:
        return self.num.ring

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        return RationalFunction(self.ring.const(other))

    def __add__(self, other):
        o = self._lift(other)
        if o.den == self.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __str__(self) -> str:
        if self.den == 1 or self.num.is_zero():
            return str(self.num)
        return f"({self.num})/({self.den})"
