"""Sparse multivariate and dense univariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`.  Both polynomial types are
immutable after construction; arithmetic always returns new objects.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class MultiPoly:
    """Polynomial in an ordered tuple of named variables.

    ``terms`` maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        variables = tuple(variables)
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(variables):
                raise ValueError(f"exponent {exp} does not match variables {variables}")
            c = _frac(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.variables = variables
        self.terms = clean

    # construction helpers

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> MultiPoly:
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> MultiPoly:
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def from_list(cls, variables: Sequence[str], data: Iterable) -> MultiPoly:
        """Build from ``[[coeff, [e1, e2, ...]], ...]``."""
        terms: dict[Exponent, Fraction] = {}
        for c, exp in data:
            exp = tuple(int(e) for e in exp)
            terms[exp] = terms.get(exp, Fraction(0)) + _frac(c)
        return cls(variables, terms)

    def to_list(self) -> list:
        return [[_jsonable(c), list(e)] for e, c in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)]

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(self.variables, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        k = self._index(var)
        if not self.terms:
            return -1
        return max(e[k] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}; have {self.variables}") from None

    # arithmetic

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            c = _frac(other)
            return MultiPoly(self.variables, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def leading_term(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def divexact(self, other: MultiPoly) -> MultiPoly:
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading_term()
        rem = self
        quot: dict[Exponent, Fraction] = {}
        while rem.terms:
            e, c = rem.leading_term()
            diff = tuple(a - b for a, b in zip(e, le))
            if any(d < 0 for d in diff):
                raise ArithmeticError("inexact polynomial division")
            q = c / lc
            quot[diff] = q
            rem = rem - MultiPoly(self.variables, {diff: q}) * other
        return MultiPoly(self.variables, quot)

    # calculus and evaluation

    def partial(self, var: str, order: int = 1) -> MultiPoly:
        return partial_derivative(self, var, order)

    def substitute(self, values: Mapping[str, object]) -> MultiPoly:
        """Substitute scalars for some variables; the remaining variables keep their order."""
        idx = [self._index(v) for v in values]
        keep = [k for k in range(len(self.variables)) if k not in idx]
        new_vars = tuple(self.variables[k] for k in keep)
        vals = [_frac(values[self.variables[k]]) for k in idx]
        terms: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            for k, v in zip(idx, vals):
                c *= v ** e[k]
            ne = tuple(e[k] for k in keep)
            terms[ne] = terms.get(ne, Fraction(0)) + c
        return MultiPoly(new_vars, terms)

    def __call__(self, *point) -> Fraction:
        if len(point) != len(self.variables):
            raise ValueError("wrong number of coordinates")
        pt = [_frac(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            for p, k in zip(pt, e):
                if k:
                    c *= p ** k
            total += c
        return total

    def compose(self, images: Mapping[str, MultiPoly]) -> MultiPoly:
        """Substitute polynomials (all in one common ring) for every variable."""
        target = next(iter(images.values())).variables
        powers = {v: {} for v in self.variables}
        result = MultiPoly(target)
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for v, k in zip(self.variables, e):
                if k:
                    cache = powers[v]
                    if k not in cache:
                        cache[k] = images[v] ** k
                    term = term * cache[k]
            result = result + term
        return result

    def coefficients_in(self, var: str) -> list[MultiPoly]:
        """Coefficients (ascending powers of ``var``) as polys in the other variables."""
        k = self._index(var)
        rest = self.variables[:k] + self.variables[k + 1:]
        deg = self.degree(var)
        buckets: list[dict[Exponent, Fraction]] = [dict() for _ in range(max(deg, 0) + 1)]
        for e, c in self.terms.items():
            buckets[e[k]][e[:k] + e[k + 1:]] = c
        return [MultiPoly(rest, b) for b in buckets]

    def integer_primitive(self) -> MultiPoly:
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        nums = [int(c * den) for c in self.terms.values()]
        g = reduce(gcd, nums)
        if self.leading_term()[1] < 0:
            g = -g
        return self * Fraction(den, g)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True):
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


def _jsonable(c: Fraction):
    return int(c) if c.denominator == 1 else str(c)


def partial_derivative(p: MultiPoly, var: str, order: int = 1) -> MultiPoly:
    """``order``-th partial derivative of ``p`` with respect to ``var``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    k = p._index(var)
    terms: dict[Exponent, Fraction] = {}
    for e, c in p.terms.items():
        if e[k] < order:
            continue
        factor = 1
        for j in range(order):
            factor *= e[k] - j
        ne = e[:k] + (e[k] - order,) + e[k + 1:]
        terms[ne] = c * factor
    return MultiPoly(p.variables, terms)


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense univariate polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> UniPoly:
        return cls([0] * k + [c])

    @classmethod
    def from_multipoly(cls, p: MultiPoly) -> UniPoly:
        if len(p.variables) != 1:
            if p.is_constant():
                return cls([p.constant_value()])
            raise ValueError(f"not univariate: {p.variables}")
        deg = p.total_degree()
        cs = [Fraction(0)] * (deg + 1)
        for (k,), c in p.terms.items():
            cs[k] = c
        return cls(cs)

    def to_multipoly(self, var: str) -> MultiPoly:
        return MultiPoly((var,), {(k,): c for k, c in enumerate(self.coeffs)})

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> UniPoly:
        other = _as_uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> UniPoly:
        return self + (-_as_uni(other))

    def __rsub__(self, other) -> UniPoly:
        return _as_uni(other) - self

    def __mul__(self, other) -> UniPoly:
        other = _as_uni(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UniPoly:
        result, base = UniPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        other = _as_uni(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        inv_lc = 1 / other.coeffs[-1]
        for k in range(dq, -1, -1):
            q = rem[k + len(other.coeffs) - 1] * inv_lc
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(quot), UniPoly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> UniPoly:
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return UniPoly(c / self.coeffs[-1] for c in self.coeffs)

    def primitive(self) -> UniPoly:
        """Coprime integer coefficients, positive leading coefficient."""
        if not self.coeffs:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        nums = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, nums)
        if nums[-1] < 0:
            g = -g
        return UniPoly(Fraction(n, g) for n in nums)

    def integer_coeffs(self) -> list[int]:
        return [int(c) for c in self.primitive().coeffs]

    def compose(self, other: UniPoly) -> UniPoly:
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def __repr__(self) -> str:
        return f"UniPoly({[_jsonable(c) for c in self.coeffs]})"


def _as_uni(p) -> UniPoly:
    return p if isinstance(p, UniPoly) else UniPoly([p])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def extended_gcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = UniPoly([1]), UniPoly()
    t0, t1 = UniPoly(), UniPoly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = 1 / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


class ZeroDivisorError(ArithmeticError):
    """Raised when an element is not invertible in Q[t]/(f)."""


def mod_inverse(g: UniPoly, f: UniPoly) -> UniPoly:
    """Inverse of ``g`` in Q[t]/(f)."""
    if f.degree < 1:
        raise ValueError("modulus must have positive degree")
    g = g % f
    d, s, _ = extended_gcd(g, f)
    if d.degree != 0:
        raise ZeroDivisorError(f"gcd of degree {d.degree}: not invertible modulo f")
    return s % f


def squarefree_part(f: UniPoly) -> UniPoly:
    """``f / gcd(f, f')`` made primitive."""
    if not f:
        raise ValueError("squarefree part of the zero polynomial")
    if f.degree == 0:
        return UniPoly([1])
    g = poly_gcd(f, f.derivative())
    return (f // g).primitive()


def is_squarefree(f: UniPoly) -> bool:
    return squarefree_part(f).degree == f.degree


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(f: UniPoly) -> list[Fraction]:
    """Distinct rational roots, ascending (rational root theorem)."""
    if not f:
        raise ValueError("zero polynomial has every root")
    cs = f.integer_coeffs()
    roots = set()
    k = 0
    while k < len(cs) and cs[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    cs = cs[k:]
    if len(cs) > 1:
        g = UniPoly(cs)
        for p in _divisors(cs[0]):
            for q in _divisors(cs[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if not g(cand):
                        roots.add(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# resultants


def _to_univariate(p: MultiPoly, var: str) -> list[MultiPoly]:
    return p.coefficients_in(var)


def _prem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) a mod b`` in R[x]."""
    r = list(a)
    db = len(b) - 1
    e = len(a) - len(b) + 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bc in enumerate(b):
            r[shift + j] = r[shift + j] - lr * bc
        r.pop()
        while r and r[-1].is_zero():
            r.pop()
        e -= 1
    if e > 0:
        factor = lb ** e
        r = [c * factor for c in r]
    return r


def subresultant_prs(p: MultiPoly, q: MultiPoly, var: str) -> list[list[MultiPoly]]:
    """Subresultant polynomial remainder sequence of ``p, q`` in ``var``.

    Elements are coefficient lists (ascending in ``var``) over the ring of the
    remaining variables.  ``deg p >= deg q`` is required.
    """
    a, b = _to_univariate(p, var), _to_univariate(q, var)
    if len(a) < len(b):
        raise ValueError("need deg p >= deg q")
    seq = [a, b]
    rest = a[0].variables
    one = MultiPoly.constant(rest, 1)
    psi = -one
    delta = len(a) - len(b)
    beta = one * (-1) ** (delta + 1)
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            break
        r = [c.divexact(beta) for c in r]
        seq.append(r)
        a, b = b, r
        lc_a = a[-1]
        if delta >= 1:
            psi = ((-lc_a) ** delta).divexact(psi ** (delta - 1))
        delta = len(a) - len(b)
        beta = -lc_a * psi ** delta
    return seq


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant with respect to ``var`` by the subresultant algorithm.

    The result lives in the ring of the remaining variables.
    """
    dp, dq = p.degree(var), q.degree(var)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if dp < 1 or dq < 1:
        raise ValueError(f"both inputs need positive degree in {var!r}")
    a, b = _to_univariate(p, var), _to_univariate(q, var)
    rest = a[0].variables
    sign = 1
    if len(a) < len(b):
        a, b = b, a
        if dp % 2 == 1 and dq % 2 == 1:
            sign = -1
    one = MultiPoly.constant(rest, 1)
    g = h = one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = _prem(a, b)
        a = b
        if not r:
            return MultiPoly(rest)
        divisor = g * h ** delta
        b = [c.divexact(divisor) for c in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).divexact(h ** (delta - 1))
        if len(b) == 1:
            break
    da = len(a) - 1
    lb = b[-1]
    if da == 0:
        res = h
    elif da == 1:
        res = lb
    else:
        res = (lb ** da).divexact(h ** (da - 1))
    return res * sign


# ---------------------------------------------------------------------------
# polynomials over F_p (ascending int lists), used for irreducibility certificates


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(f[-1], -1, p)
    df = len(f) - 1
    for k in range(len(a) - 1, df - 1, -1):
        q = a[k] * inv % p
        if q:
            for j, c in enumerate(f):
                a[k - df + j] = (a[k - df + j] - q * c) % p
    return _fp_trim(a[:df])


def _fp_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_mod(out, f, p)


def _fp_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result, base = [1], _fp_mod(a, f, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, f, p)
        base = _fp_mulmod(base, base, f, p)
        e >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def irreducible_mod_p(f: UniPoly, p: int) -> bool:
    """Rabin's test for ``f`` reduced mod ``p`` (``p`` must not divide lc(f)).

    Irreducibility mod p of the primitive integer polynomial certifies
    irreducibility over Q.
    """
    cs = [c % p for c in f.integer_coeffs()]
    if cs[-1] == 0:
        raise ValueError(f"{p} divides the leading coefficient")
    n = len(cs) - 1
    if n <= 1:
        return n == 1
    x = [0, 1]
    if _fp_powmod(x, p ** n, cs, p) != _fp_mod(x, cs, p):
        return False
    for q in _prime_factors(n):
        h = _fp_powmod(x, p ** (n // q), cs, p)
        h = h + [0] * (2 - len(h)) if len(h) < 2 else list(h)
        h[1] = (h[1] - 1) % p
        if len(_fp_gcd(cs, _fp_trim(h), p)) != 1:
            return False
    return True


def irreducibility_certificate(f: UniPoly, primes: Iterable[int]) -> int | None:
    """First prime modulo which ``f`` stays irreducible, or None."""
    lead = f.integer_coeffs()[-1]
    for p in primes:
        if lead % p and irreducible_mod_p(f, p):
            return p
    return None
