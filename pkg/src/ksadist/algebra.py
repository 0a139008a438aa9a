"""Scalars in Q(w), w = exp(2 pi i / 3), plus the vector primitives built on them.

Two scalar backends exist. ``Cyclo`` is exact: a pair of rationals (a, b)
standing for a + b*w. ``Approx`` wraps a Python complex and compares against a
module tolerance, read from ``KSADIST_FLOAT_EPS`` (default 1e-9). Vectors are
never normalised; every predicate below is scale invariant.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

FLOAT_EPS = float(os.environ.get("KSADIST_FLOAT_EPS", "1e-9"))


class AlgebraError(ValueError):
    pass


class DimensionMismatch(AlgebraError):
    pass


class BackendMismatch(AlgebraError):
    pass


class ZeroVector(AlgebraError):
    pass


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Cyclo:
    """Exact element a + b*w of Q(w)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _rat(a)
        self.b = _rat(b)

    @classmethod
    def _lift(cls, other) -> "Cyclo":
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other, 0)
        if isinstance(other, Approx):
            raise BackendMismatch("cannot mix exact and float scalars")
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        # w^2 = -1 - w
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return Cyclo(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conj(self) -> "Cyclo":
        # conj(w) = w^2 = -1 - w
        return Cyclo(self.a - self.b, -self.b)

    def abs_squared(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "Cyclo":
        n = self.abs_squared()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return Cyclo(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Cyclo._lift(other) * self.inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Approx):
            return False
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def to_complex(self) -> complex:
        return complex(float(self.a) - float(self.b) / 2, float(self.b) * math.sqrt(3) / 2)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}w"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}w"

    def __repr__(self):
        return f"Cyclo({self})"


W = Cyclo(0, 1)


class Approx:
    """Float complex scalar compared up to ``FLOAT_EPS``."""

    __slots__ = ("z",)

    def __init__(self, z):
        if isinstance(z, Cyclo):
            raise BackendMismatch("cannot mix exact and float scalars")
        self.z = complex(z)

    def _lift(self, other):
        if isinstance(other, Approx):
            return other.z
        if isinstance(other, (int, float, complex)):
            return complex(other)
        if isinstance(other, Cyclo):
            raise BackendMismatch("cannot mix exact and float scalars")
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Approx(self.z + o)

    __radd__ = __add__

    def __neg__(self):
        return Approx(-self.z)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Approx(self.z - o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Approx(self.z * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Approx(self.z / o)

    def inverse(self) -> "Approx":
        return Approx(1 / self.z)

    def conj(self) -> "Approx":
        return Approx(self.z.conjugate())

    def abs_squared(self) -> float:
        return self.z.real ** 2 + self.z.imag ** 2

    def is_zero(self) -> bool:
        return abs(self.z) < FLOAT_EPS

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return False
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return abs(self.z - o) < FLOAT_EPS

    def __hash__(self):
        # equality is tolerance based; hash is deliberately coarse
        return 0

    def to_complex(self) -> complex:
        return self.z

    def __str__(self):
        return f"({self.z.real!r},{self.z.imag!r})"

    def __repr__(self):
        return f"Approx{self}"


Scalar = Union[Cyclo, Approx]

_RAT = r"-?\d+(?:/\d+)?"
_CYCLO_RE = re.compile(
    rf"^(?:(?P<w>{_RAT})w|(?P<a>{_RAT})(?:(?P<sign>[+-])(?P<b>\d+(?:/\d+)?)w)?)$"
)
_FLOAT_RE = re.compile(r"^\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)$")


def parse_scalar(text: str, field: str = "cyclotomic3") -> Scalar:
    """Parse ``<rat>``, ``<rat>w``, ``<rat>+<rat>w``, ``<rat>-<rat>w`` or ``(re,im)``."""
    s = text.strip().replace(" ", "")
    if field == "cyclotomic3":
        m = _CYCLO_RE.match(s)
        if not m:
            raise AlgebraError(f"malformed exact scalar: {text!r}")
        if m.group("w") is not None:
            return Cyclo(0, Fraction(m.group("w")))
        b = Fraction(0)
        if m.group("b") is not None:
            b = Fraction(m.group("b"))
            if m.group("sign") == "-":
                b = -b
        return Cyclo(Fraction(m.group("a")), b)
    if field == "float":
        m = _FLOAT_RE.match(s)
        try:
            if m:
                return Approx(complex(float(m.group(1)), float(m.group(2))))
            return Approx(float(s))
        except ValueError:
            raise AlgebraError(f"malformed float scalar: {text!r}") from None
    raise AlgebraError(f"unknown field {field!r}")


def _backend(entries: Sequence[Scalar]) -> type:
    kinds = {type(e) for e in entries}
    if len(kinds) != 1:
        raise BackendMismatch("vector mixes scalar backends")
    return kinds.pop()


def as_scalar(x) -> Scalar:
    if isinstance(x, (Cyclo, Approx)):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo(x)
    if isinstance(x, (float, complex)):
        return Approx(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


@dataclass(frozen=True)
class StateVector:
    """Unnormalised pure state.

    Equality and hashing go through ``entries`` only; ``id`` is a label.
    """

    id: str
    entries: tuple

    def __init__(self, id: str, entries: Iterable):
        ents = tuple(as_scalar(e) for e in entries)
        if not ents:
            raise AlgebraError("empty vector")
        _backend(ents)
        if all(e.is_zero() for e in ents):
            raise ZeroVector(f"vector {id!r} is zero")
        object.__setattr__(self, "id", str(id))
        object.__setattr__(self, "entries", ents)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def exact(self) -> bool:
        return isinstance(self.entries[0], Cyclo)

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"StateVector({self.id!r}, ({', '.join(map(str, self.entries))}))"

    def relabel(self, id: str) -> "StateVector":
        return StateVector(id, self.entries)


def vec(id: str, *entries) -> StateVector:
    return StateVector(id, entries)


def _check_pair(u: StateVector, v: StateVector) -> None:
    if u.dim != v.dim:
        raise DimensionMismatch(f"{u.id!r} has dim {u.dim}, {v.id!r} has dim {v.dim}")
    if type(u.entries[0]) is not type(v.entries[0]):
        raise BackendMismatch(f"{u.id!r} and {v.id!r} use different backends")


def _dot(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> Scalar:
    total = xs[0].conj() * ys[0]
    for x, y in zip(xs[1:], ys[1:]):
        total = total + x.conj() * y
    return total


def inner_product(u: StateVector, v: StateVector) -> Scalar:
    """<u, v> = sum_i conj(u_i) v_i."""
    _check_pair(u, v)
    return _dot(u.entries, v.entries)


def abs_squared(s: Scalar):
    return s.abs_squared()


def norm_squared(u: StateVector):
    return sum((e.abs_squared() for e in u.entries[1:]), u.entries[0].abs_squared())


def overlap(u: StateVector, v: StateVector):
    """|<u,v>|^2 / (<u,u><v,v>): Fraction for exact vectors, float otherwise."""
    ip = inner_product(u, v)
    return ip.abs_squared() / (norm_squared(u) * norm_squared(v))


def _integer_form(u: StateVector) -> tuple[tuple[int, int], ...]:
    """Entries scaled by the lcm of all denominators, as (a, b) int pairs; cached on ``u``."""
    cached = u.__dict__.get("_iform")
    if cached is None:
        m = 1
        for e in u.entries:
            m = math.lcm(m, e.a.denominator, e.b.denominator)
        cached = tuple((int(e.a * m), int(e.b * m)) for e in u.entries)
        object.__setattr__(u, "_iform", cached)
    return cached


def _orth_exact(u: StateVector, v: StateVector) -> bool:
    # sum conj(p + q w)(c + d w) with conj(p + q w) = (p - q) - q w; zero iff both parts vanish
    re = im = 0
    for (p, q), (c, d) in zip(_integer_form(u), _integer_form(v)):
        x, y = p - q, -q
        yd = y * d
        re += x * c - yd
        im += x * d + y * c - yd
    return re == 0 and im == 0


def is_orthogonal(u: StateVector, v: StateVector) -> bool:
    _check_pair(u, v)
    if u.exact:
        return _orth_exact(u, v)
    return overlap(u, v) < FLOAT_EPS


def canonicalize(u: StateVector) -> StateVector:
    """Scale so the first nonzero entry is 1."""
    lead = next(e for e in u.entries if not e.is_zero())
    if lead == 1:
        return u
    inv = lead.inverse()
    return StateVector(u.id, [e * inv for e in u.entries])


def same_projector(u: StateVector, v: StateVector) -> bool:
    _check_pair(u, v)
    cu, cv = canonicalize(u), canonicalize(v)
    return all(a == b for a, b in zip(cu.entries, cv.entries))


def _zero_like(s: Scalar) -> Scalar:
    return Cyclo(0) if isinstance(s, Cyclo) else Approx(0)


def _one_like(s: Scalar) -> Scalar:
    return Cyclo(1) if isinstance(s, Cyclo) else Approx(1)


def _is_negligible(s: Scalar, scale: float) -> bool:
    if isinstance(s, Cyclo):
        return s.is_zero()
    return abs(s.z) < FLOAT_EPS * max(1.0, scale)


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[list[Scalar]]:
    """Basis of {x : rows @ x = 0} by reduced row echelon form."""
    m = [list(r) for r in rows]
    if not m:
        raise AlgebraError("nullspace needs at least one row")
    sample = m[0][0]
    zero, one = _zero_like(sample), _one_like(sample)
    scale = max((abs(e.to_complex()) for r in m for e in r), default=1.0)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        if isinstance(sample, Approx):
            p = max(range(r, len(m)), key=lambda i: abs(m[i][c].z))
            if _is_negligible(m[p][c], scale):
                continue
        else:
            p = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
            if p is None:
                continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [e * inv for e in m[r]]
        for i in range(len(m)):
            if i != r and not _is_negligible(m[i][c], scale):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [zero] * ncols
        x[fc] = one
        for row, pc in zip(m, pivots):
            x[pc] = -row[fc]
        basis.append(x)
    return basis


def rank(vectors: Sequence[StateVector]) -> int:
    if not vectors:
        return 0
    d = vectors[0].dim
    return d - len(nullspace([v.entries for v in vectors], d))


def orthogonal_completion(vs: Sequence[StateVector], dim: int, id: str = "completion") -> StateVector:
    """The vector (up to scale) orthogonal to d-1 mutually orthogonal vectors."""
    if len(vs) != dim - 1:
        raise AlgebraError(f"expected {dim - 1} vectors, got {len(vs)}")
    for v in vs:
        if v.dim != dim:
            raise DimensionMismatch(f"{v.id!r} has dim {v.dim}, expected {dim}")
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if not is_orthogonal(u, v):
                raise AlgebraError(f"{u.id!r} and {v.id!r} are not orthogonal")
    if dim == 1:
        raise AlgebraError("no completion problem in dimension 1")
    ns = nullspace([[e.conj() for e in v.entries] for v in vs], dim)
    if len(ns) != 1:
        raise AlgebraError("input vectors are linearly dependent")
    return canonicalize(StateVector(id, ns[0]))


def fine_grain(spanning: Sequence[StateVector]) -> list[StateVector]:
    """Unnormalised Gram-Schmidt basis of span(spanning), canonicalised.

    Output length equals the rank of the input. Output ids are derived from the
    input vector each basis vector was extracted from.
    """
    if not spanning:
        raise AlgebraError("fine_grain needs at least one vector")
    first = spanning[0]
    for v in spanning[1:]:
        _check_pair(first, v)
    basis: list[tuple] = []
    out: list[StateVector] = []
    for v in spanning:
        w = list(v.entries)
        for b, bb in basis:
            coeff = _dot(b, w) / bb
            w = [x - coeff * y for x, y in zip(w, b)]
        scale = math.sqrt(float(norm_squared(v)))
        if all(_is_negligible(x, scale) for x in w):
            continue
        sv = canonicalize(StateVector(v.id, w))
        basis.append((sv.entries, norm_squared(sv)))
        out.append(sv)
    return out
