"""Sparse exact integer polynomials in one and two variables.

Coefficients are Python ints, so arithmetic never overflows.  Both classes
keep a canonical dict with no zero entries; equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .errors import DivisibilityError, InputError


class Poly:
    """Univariate polynomial ``sum c_k * x**k``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[int] | int = ()):
        if isinstance(coeffs, int):
            coeffs = {0: coeffs}
        elif not isinstance(coeffs, Mapping):
            coeffs = dict(enumerate(coeffs))
        c = {}
        for k, v in coeffs.items():
            if k < 0:
                raise InputError("negative exponent")
            if v:
                c[int(k)] = int(v)
        self._c = c

    @classmethod
    def _raw(cls, c):
        p = cls.__new__(cls)
        p._c = c
        return p

    @classmethod
    def x(cls) -> "Poly":
        return cls._raw({1: 1})

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "Poly":
        return cls({k: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self._c, default=-1)

    def __getitem__(self, k: int) -> int:
        return self._c.get(k, 0)

    def coefficient_list(self) -> list[int]:
        return [self._c.get(k, 0) for k in range(self.degree + 1)]

    def is_zero(self) -> bool:
        return not self._c

    def leading(self) -> int:
        return self._c[self.degree] if self._c else 0

    # arithmetic

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly._raw({0: other} if other else {})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return Poly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                c[a + b] = c.get(a + b, 0) + x * y
        return Poly._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power of a polynomial")
        result, base = Poly(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x):
        """Horner evaluation; ``x`` may be int, Fraction, float, complex or Poly."""
        if not self._c:
            return 0 * x if not isinstance(x, Poly) else Poly()
        acc = 0
        for k in range(self.degree, -1, -1):
            acc = acc * x + self._c.get(k, 0)
        return acc

    def compose_power(self, m: int) -> "Poly":
        """``p(x**m)``."""
        return Poly._raw({k * m: v for k, v in self._c.items()})

    def divmod(self, d: "Poly") -> tuple["Poly", "Poly"]:
        """Long division over the integers.

        Stops with the current remainder as soon as a leading coefficient is
        not divisible by ``lc(d)``; for an exact division that never happens.
        """
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = dict(self._c)
        q: dict[int, int] = {}
        dd, lc = d.degree, d.leading()
        while rem:
            top = max(rem)
            if top < dd:
                break
            c, r = divmod(rem[top], lc)
            if r:
                break
            shift = top - dd
            q[shift] = c
            for k, v in d._c.items():
                s = rem.get(k + shift, 0) - c * v
                if s:
                    rem[k + shift] = s
                else:
                    rem.pop(k + shift, None)
        return Poly._raw(q), Poly._raw(rem)

    def __repr__(self):
        return f"Poly({self.coefficient_list()})"

    def __str__(self):
        return format_terms({(k,): v for k, v in self._c.items()}, ("x",))


def divide_exact(p: Poly, d: Poly) -> Poly:
    """``p / d``, raising DivisibilityError unless the remainder is zero."""
    q, r = p.divmod(d)
    if r:
        raise DivisibilityError(f"{p!s} is not divisible by {d!s}")
    return q


ONE_MINUS_X = Poly({0: 1, 1: -1})


class BiPoly:
    """Bivariate polynomial ``sum c_ij * a**i * b**j``.

    ``names`` only matter for printing and serialization; by default the
    variables are beta and gamma.
    """

    __slots__ = ("_c", "names")

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | int = (), names=("beta", "gamma")):
        if isinstance(coeffs, int):
            coeffs = {(0, 0): coeffs}
        c = {}
        for (i, j), v in dict(coeffs).items():
            if i < 0 or j < 0:
                raise InputError("negative exponent")
            if v:
                c[(int(i), int(j))] = int(v)
        self._c = c
        self.names = tuple(names)

    @classmethod
    def _raw(cls, c, names):
        p = cls.__new__(cls)
        p._c = c
        p.names = names
        return p

    @classmethod
    def from_poly(cls, p: Poly, var: int = 0, names=("beta", "gamma")) -> "BiPoly":
        if var == 0:
            return cls({(k, 0): v for k, v in p.coeffs.items()}, names)
        return cls({(0, k): v for k, v in p.coeffs.items()}, names)

    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._c)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._c.get(key, 0)

    def is_zero(self) -> bool:
        return not self._c

    def degrees(self) -> tuple[int, int]:
        if not self._c:
            return (-1, -1)
        return max(i for i, _ in self._c), max(j for _, j in self._c)

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, int):
            return BiPoly._raw({(0, 0): other} if other else {}, self.names)
        if isinstance(other, Poly):
            return BiPoly._raw({(k, 0): v for k, v in other.coeffs.items()}, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return BiPoly._raw(c, self.names)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -v for k, v in self._c.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[tuple[int, int], int] = {}
        for (a, b), x in self._c.items():
            for (p, q), y in other._c.items():
                key = (a + p, b + q)
                c[key] = c.get(key, 0) + x * y
        return BiPoly._raw({k: v for k, v in c.items() if v}, self.names)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power of a polynomial")
        result, base = BiPoly(1, self.names), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def evaluate(self, a, b):
        total = 0
        for (i, j), v in self._c.items():
            total += v * a**i * b**j
        return total

    def substitute_second(self, value: int) -> Poly:
        """Integer specialization of the second variable, as a Poly in the first."""
        c: dict[int, int] = {}
        for (i, j), v in self._c.items():
            c[i] = c.get(i, 0) + v * value**j
        return Poly(c)

    def substitute_first(self, value: int) -> Poly:
        c: dict[int, int] = {}
        for (i, j), v in self._c.items():
            c[j] = c.get(j, 0) + v * value**i
        return Poly(c)

    def specialize_second_2i(self) -> tuple[Poly, Poly]:
        """Real and imaginary parts, as Polys in the first variable, at second = 2*sqrt(-1)."""
        re: dict[int, int] = {}
        im: dict[int, int] = {}
        for (i, j), v in self._c.items():
            mag = v * 2**j
            sign = -1 if j % 4 in (2, 3) else 1
            target = re if j % 2 == 0 else im
            target[i] = target.get(i, 0) + sign * mag
        return Poly(re), Poly(im)

    def __repr__(self):
        return f"BiPoly({dict(sorted(self._c.items()))}, names={self.names})"

    def __str__(self):
        return format_terms(self._c, self.names)


def format_terms(coeffs: Mapping[tuple, int], names: tuple[str, ...]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for exps in sorted(coeffs):
        c = coeffs[exps]
        mono = "*".join(
            (n if e == 1 else f"{n}^{e}") for n, e in zip(names, exps) if e
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# -- the f_n family -------------------------------------------------------


@lru_cache(maxsize=None)
def f_poly(n: int) -> Poly:
    """f_0 = 1, f_1 = 0, f_{n+1} = x f_n + f_{n-1}."""
    if n < 0:
        raise InputError("f_n needs n >= 0")
    if n == 0:
        return Poly(1)
    if n == 1:
        return Poly()
    return Poly.x() * f_poly(n - 1) + f_poly(n - 2)


def f_eval_2i(n: int) -> tuple[int, int]:
    """f_n(2*sqrt(-1)) = i**n * (1 - n), as a (real, imag) integer pair."""
    if n < 0:
        raise InputError("f_n needs n >= 0")
    unit = [(1, 0), (0, 1), (-1, 0), (0, -1)][n % 4]
    return unit[0] * (1 - n), unit[1] * (1 - n)


def f_values(x, n_max: int) -> list:
    """Numeric f_0(x) .. f_{n_max}(x) by the recurrence."""
    vals = [1, 0]
    for _ in range(n_max - 1):
        vals.append(x * vals[-1] + vals[-2])
    one = x ** 0
    return [v * one for v in vals[: n_max + 1]]


def bouquet_theta_at_one(n: int) -> Poly:
    """theta_{B_n}(1, gamma) = sum_k C(n,k) f_{2k}(gamma), as a Poly in gamma."""
    return sum((comb(n, k) * f_poly(2 * k) for k in range(n + 1)), Poly())


# -- JSON -----------------------------------------------------------------


def poly_to_json(p: Poly | BiPoly, names: tuple[str, ...] | None = None) -> dict:
    """``{"vars": [...], "terms": [{<var>: exp, ..., "coeff": "<decimal>"}]}``."""
    if isinstance(p, BiPoly):
        names = names or p.names
        items = sorted(p.coeffs.items())
    else:
        names = names or ("beta",)
        items = sorted(((k,), v) for k, v in p.coeffs.items())
    terms = []
    for exps, c in items:
        term = {n: e for n, e in zip(names, exps)}
        term["coeff"] = str(c)
        terms.append(term)
    return {"vars": list(names), "terms": terms}


def poly_from_json(data: dict) -> Poly | BiPoly:
    names = tuple(data["vars"])
    if len(names) == 1:
        return Poly({t[names[0]]: int(t["coeff"]) for t in data["terms"]})
    if len(names) == 2:
        return BiPoly({(t[names[0]], t[names[1]]): int(t["coeff"]) for t in data["terms"]}, names)
    raise InputError("only one or two variables are supported")


def evaluate_rational(p: Poly, x: Fraction | int) -> Fraction:
    return Fraction(p.evaluate(Fraction(x)))
