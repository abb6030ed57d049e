"""
Exact sparse multivariate Laurent polynomials over Q.

A ``LaurentPoly`` is an immutable map from integer exponent vectors (negative
entries allowed) to nonzero rational coefficients, tied to a ``VarTable`` that
fixes the variable order.  Coefficients are stored as ``int`` whenever they are
integral and as ``fractions.Fraction`` otherwise, so the common integer case
stays on the fast path.

``RatFun`` is a deliberately unreduced quotient of two Laurent polynomials.
Nothing here computes a multivariate gcd; exact cancellation only happens via
``poly_exact_div`` where the caller knows the division is exact.
"""

from __future__ import annotations

import heapq
import json
import re
from fractions import Fraction
from numbers import Rational
from operator import add, sub
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "Scalar",
    "VarTable",
    "LaurentPoly",
    "RatFun",
    "NonDivisible",
    "VarTableMismatch",
    "ring",
    "poly_add",
    "poly_mul",
    "poly_exact_div",
    "poly_permute",
    "poly_eval",
    "poly_specialize",
    "poly_substitute",
]


class NonDivisible(ArithmeticError):
    """Raised when an exact division that must succeed leaves a remainder."""


class VarTableMismatch(ValueError):
    pass


_FAMILY = re.compile(r"[A-Za-z_]+")


def family(name: str) -> str:
    """Alphabetic prefix of a variable name: ``family("u12") == "u"``."""
    match = _FAMILY.match(name)
    if match is None:
        raise ValueError(f"bad variable name {name!r}")
    return match.group()


class VarTable:
    """Ordered, duplicate-free list of variable names."""

    __slots__ = ("names", "index", "_hash")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            family(name)
        self.names = names
        self.index = {name: i for i, name in enumerate(names)}
        self._hash = hash(names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self.index

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VarTable({list(self.names)})"

    def zero_exp(self) -> tuple:
        return (0,) * len(self.names)


def ring(n: int = 0, w: int | Sequence[str] = 0, *, q: bool = False, extra: Sequence[str] = ()) -> VarTable:
    """The standard table ``u1..un, w1..wk, *extra, q``.

    ``w`` is either a count or an explicit list of w-names.
    """
    names = [f"u{i}" for i in range(1, n + 1)]
    if isinstance(w, int):
        names += [f"w{k}" for k in range(1, w + 1)]
    else:
        names += list(w)
    names += list(extra)
    if q:
        names.append("q")
    return VarTable(names)


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _scalar(c) -> Scalar:
    if isinstance(c, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def _div(a: Scalar, b: Scalar) -> Scalar:
    if type(a) is int and type(b) is int:
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return _norm(Fraction(a) / b)


def _grlex(e: tuple) -> tuple:
    # graded lex, later variables heavier
    return (sum(e), e[::-1])


class LaurentPoly:
    """Immutable sparse Laurent polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VarTable, terms: Mapping[tuple, object] | None = None, *, _trusted: bool = False):
        self.vars = vars
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        k = len(vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != k:
                raise ValueError(f"exponent {e} does not match {k} variables")
            c = _scalar(c)
            if c:
                clean[e] = _norm(clean.get(e, 0) + c)
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # constructors

    @classmethod
    def zero(cls, vars: VarTable) -> "LaurentPoly":
        return cls(vars, {}, _trusted=True)

    @classmethod
    def const(cls, vars: VarTable, c) -> "LaurentPoly":
        c = _scalar(c)
        return cls(vars, {vars.zero_exp(): c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, vars: VarTable) -> "LaurentPoly":
        return cls.const(vars, 1)

    @classmethod
    def var(cls, vars: VarTable, name: str) -> "LaurentPoly":
        return cls.monomial(vars, {name: 1})

    @classmethod
    def monomial(cls, vars: VarTable, exps: Mapping[str, int], coef=1) -> "LaurentPoly":
        e = [0] * len(vars)
        for name, d in exps.items():
            if name not in vars:
                raise KeyError(f"{name!r} not in {vars}")
            e[vars.index[name]] += d
        coef = _scalar(coef)
        return cls(vars, {tuple(e): coef} if coef else {}, _trusted=True)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self):
        """The scalar value if this is a constant polynomial, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        return None

    def coefficient(self, exps: Mapping[str, int]) -> Scalar:
        e = [0] * len(self.vars)
        for name, d in exps.items():
            e[self.vars.index[name]] = d
        return self.terms.get(tuple(e), 0)

    def exponent_range(self, name: str) -> tuple[int, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no exponent range")
        i = self.vars.index[name]
        vals = [e[i] for e in self.terms]
        return min(vals), max(vals)

    def sorted_terms(self) -> list:
        """Terms in ascending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]))

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: _grlex(t[0]))

    # arithmetic

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.const(self.vars, other)

    def __add__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        return poly_add(self, self._coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        return poly_add(self, -self._coerce(other))

    def __rsub__(self, other):
        return poly_add(-self, self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        if isinstance(other, LaurentPoly):
            return poly_mul(self, other)
        c = _scalar(other)
        if not c:
            return LaurentPoly.zero(self.vars)
        return LaurentPoly(self.vars, {e: _norm(v * c) for e, v in self.terms.items()}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer exponents only")
        if k < 0:
            if not self.is_monomial():
                raise NonDivisible("only monomials are invertible in a Laurent ring")
            (e, c), = self.terms.items()
            return LaurentPoly(self.vars, {tuple(x * k for x in e): _norm(Fraction(c) ** k)}, _trusted=True)
        result = LaurentPoly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            return poly_exact_div(self, other)
        c = _scalar(other)
        return LaurentPoly(self.vars, {e: _div(v, c) for e, v in self.terms.items()}, _trusted=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.constant_value() == other and (other != 0 or not self.terms)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # serialization

    def to_json_obj(self) -> dict:
        terms = []
        for e, c in self.sorted_terms():
            c = Fraction(c)
            terms.append({"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)})
        return {"vars": list(self.vars.names), "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    def canonical_bytes(self) -> bytes:
        return self.to_json().encode("ascii")

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LaurentPoly":
        vt = VarTable(obj["vars"])
        terms = {}
        for t in obj["terms"]:
            e = tuple(t["exp"])
            if e in terms:
                raise ValueError(f"duplicate exponent {e}")
            terms[e] = Fraction(int(t["num"]), int(t["den"]))
        return cls(vt, terms)

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(text))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.sorted_terms()):
            mono = "*".join(
                name if d == 1 else f"{name}^{d}" for name, d in zip(self.vars.names, e) if d
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def _check_same(a: LaurentPoly, b: LaurentPoly) -> None:
    if a.vars is not b.vars and a.vars != b.vars:
        raise VarTableMismatch(f"{a.vars} vs {b.vars}")


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_same(a, b)
    if not b.terms:
        return a
    if not a.terms:
        return b
    if len(a.terms) < len(b.terms):
        a, b = b, a
    out = dict(a.terms)
    for e, c in b.terms.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = _norm(v + c)
            if v:
                out[e] = v
            else:
                del out[e]
    return LaurentPoly(a.vars, out, _trusted=True)


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_same(a, b)
    if not a.terms or not b.terms:
        return LaurentPoly.zero(a.vars)
    if len(a.terms) < len(b.terms):
        a, b = b, a
    if len(b.terms) == 1:
        (eb, cb), = b.terms.items()
        if cb == 1:
            return LaurentPoly(a.vars, {tuple(map(add, e, eb)): c for e, c in a.terms.items()}, _trusted=True)
        return LaurentPoly(
            a.vars, {tuple(map(add, e, eb)): _norm(c * cb) for e, c in a.terms.items()}, _trusted=True
        )
    out: dict = {}
    get = out.get
    a_items = list(a.terms.items())
    for eb, cb in b.terms.items():
        for ea, ca in a_items:
            e = tuple(map(add, ea, eb))
            out[e] = get(e, 0) + ca * cb
    clean = {}
    for e, c in out.items():
        if c:
            clean[e] = _norm(c)
    return LaurentPoly(a.vars, clean, _trusted=True)


def poly_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient ``q`` with ``q * b == a``; raises ``NonDivisible`` otherwise.

    Leading-term reduction in graded-lex order.  In a Laurent ring every
    monomial divides every other, so termination is enforced by the per-variable
    exponent window a true quotient must live in.
    """
    _check_same(a, b)
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.terms:
        return a
    k = len(a.vars)
    a_lo = [min(e[i] for e in a.terms) for i in range(k)]
    a_hi = [max(e[i] for e in a.terms) for i in range(k)]
    b_lo = [min(e[i] for e in b.terms) for i in range(k)]
    b_hi = [max(e[i] for e in b.terms) for i in range(k)]
    lo = [x - y for x, y in zip(a_lo, b_lo)]
    hi = [x - y for x, y in zip(a_hi, b_hi)]
    if any(l > h for l, h in zip(lo, hi)):
        raise NonDivisible("exponent window is empty")

    lead_e, lead_c = b.leading_term()
    rest = [(e, c) for e, c in b.terms.items() if e != lead_e]
    rem = dict(a.terms)
    heap = [(_neg_key(e), e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while rem:
        _, e = heapq.heappop(heap)
        c = rem.pop(e, None)
        if c is None:
            continue
        qe = tuple(map(sub, e, lead_e))
        if any(x < l or x > h for x, l, h in zip(qe, lo, hi)):
            raise NonDivisible(f"remainder term outside quotient window at {e}")
        qc = _div(c, lead_c)
        quot[qe] = qc
        for eb, cb in rest:
            t = tuple(map(add, qe, eb))
            v = rem.get(t)
            if v is None:
                rem[t] = _norm(-qc * cb)
                heapq.heappush(heap, (_neg_key(t), t))
            else:
                v = _norm(v - qc * cb)
                if v:
                    rem[t] = v
                else:
                    del rem[t]
    return LaurentPoly(a.vars, quot, _trusted=True)


def _neg_key(e: tuple) -> tuple:
    return (-sum(e), tuple(-x for x in reversed(e)))


def permute_positions(a: LaurentPoly, dest: Sequence[int]) -> LaurentPoly:
    """Move the exponent at position ``i`` to position ``dest[i]``."""
    k = len(dest)
    out = {}
    for e, c in a.terms.items():
        f = [0] * k
        for i, x in enumerate(e):
            f[dest[i]] = x
        out[tuple(f)] = c
    return LaurentPoly(a.vars, out, _trusted=True)


def poly_permute(a: LaurentPoly, sigma: Mapping[str, str]) -> LaurentPoly:
    """Rename variables by a permutation ``sigma`` of one variable family.

    ``sigma`` maps old names to new names; unmentioned variables are fixed.
    """
    keys = set(sigma)
    if keys != set(sigma.values()):
        raise ValueError("sigma is not a permutation of its support")
    fams = {family(x) for x in keys}
    if len(fams) > 1:
        raise ValueError(f"sigma mixes variable families {sorted(fams)}")
    for x in keys:
        if x not in a.vars:
            raise KeyError(f"{x!r} not in {a.vars}")
    idx = a.vars.index
    dest = list(range(len(a.vars)))
    for src, dst in sigma.items():
        dest[idx[src]] = idx[dst]
    return permute_positions(a, dest)


def _check_point(a: LaurentPoly, point: Mapping[str, object], names: Iterable[str]):
    for name in names:
        i = a.vars.index[name]
        exps = [e[i] for e in a.terms]
        if not any(exps):
            continue
        if name not in point:
            raise KeyError(f"no value for variable {name!r}")
        if _scalar(point[name]) == 0 and min(exps) < 0:
            raise ZeroDivisionError(f"{name!r} = 0 but it appears with a negative exponent")


def poly_eval(a: LaurentPoly, point: Mapping[str, object]) -> Scalar:
    """Exact value of ``a`` at a point (all used variables must be assigned)."""
    _check_point(a, point, a.vars.names)
    vals = [Fraction(_scalar(point[n])) if n in point else None for n in a.vars.names]
    total = Fraction(0)
    for e, c in a.terms.items():
        t = Fraction(c)
        for v, d in zip(vals, e):
            if d:
                t *= v ** d
        total += t
    return _norm(total)


def poly_specialize(a: LaurentPoly, values: Mapping[str, object]) -> LaurentPoly:
    """Substitute scalars for some variables, keeping the same VarTable."""
    _check_point(a, values, values.keys())
    pos = [(a.vars.index[n], Fraction(_scalar(v))) for n, v in values.items()]
    out: dict = {}
    for e, c in a.terms.items():
        t = Fraction(c)
        f = list(e)
        for i, v in pos:
            if f[i]:
                t *= v ** f[i]
                f[i] = 0
        if t:
            key = tuple(f)
            out[key] = out.get(key, 0) + t
    return LaurentPoly(a.vars, out)


def poly_substitute(a: LaurentPoly, images: Mapping[str, LaurentPoly], target: VarTable) -> LaurentPoly:
    """Ring map sending variable ``x`` to ``images[x]`` (or to the same-named
    variable of ``target``).  Negative powers need monomial images."""
    cache: dict = {}

    def power(name: str, d: int) -> LaurentPoly:
        key = (name, d)
        if key not in cache:
            img = images.get(name)
            if img is None:
                img = LaurentPoly.var(target, name)
            elif img.vars != target:
                raise VarTableMismatch(f"image of {name} lives in {img.vars}")
            cache[key] = img ** d
        return cache[key]

    total = LaurentPoly.zero(target)
    for e, c in a.terms.items():
        t = LaurentPoly.const(target, c)
        for name, d in zip(a.vars.names, e):
            if d:
                t = t * power(name, d)
        total = total + t
    return total


class RatFun:
    """Unreduced quotient ``num / den`` of Laurent polynomials.

    Equality is decided by cross-multiplication, so ``RatFun`` is unhashable.
    """

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.vars)
        _check_same(num, den)
        if not den.terms:
            raise ZeroDivisionError("RatFun with zero denominator")
        self.num = num
        self.den = den

    @property
    def vars(self) -> VarTable:
        return self.num.vars

    def _lift(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, LaurentPoly):
            return RatFun(other)
        return RatFun(LaurentPoly.const(self.vars, other))

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o.num.terms:
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RatFun, LaurentPoly, int, Fraction)):
            return NotImplemented
        o = self._lift(other)
        return self.num * o.den == o.num * self.den

    def is_zero(self) -> bool:
        return not self.num.terms

    def evaluate(self, point: Mapping[str, object]) -> Scalar:
        d = poly_eval(self.den, point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return _div(poly_eval(self.num, point), d)

    def to_poly(self) -> LaurentPoly:
        return poly_exact_div(self.num, self.den)

    def __repr__(self) -> str:
        return f"RatFun(({self.num}) / ({self.den}))"
