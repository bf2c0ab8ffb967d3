"""Sparse multivariate polynomial arithmetic over exact coefficients.

A MultiPoly maps exponent tuples to nonzero Fraction or QuadraticNumber
coefficients over an ordered variable tuple.  The variable universe is
fixed: x, y, the distance variables d1, d2, ..., and the surd variable t,
ordered x > y > d1 > d2 > ... > t.  Term order everywhere (leading terms,
canonical sign, text rendering) is graded lexicographic over that variable
order.

Algorithms beyond ring arithmetic:

* exact division   - multivariate long division treating the last variable
                     as main and recursing on the coefficients; a nonzero
                     remainder raises NotDivisibleError.
* gcd              - primitive pseudo-remainder sequence on the main
                     variable with content management over the remaining
                     variables (intended for at most the two curve
                     variables x, y).
* squarefree part  - content/primitive-part split per variable, then
                     pp / gcd(pp, dpp/dmain) on the primitive part.
* resultant        - Sylvester matrix eliminated by fraction-free Bareiss
                     determinant expansion over polynomial entries.
* canonical form   - denominators cleared, integer content removed, sign
                     fixed so the graded-lex leading coefficient is
                     positive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .numeric import (
    ExactValue,
    MixedRadicandError,
    QuadraticNumber,
    Scalar,
    normalize_value,
    radicand_of,
    conjugate_value,
)


class NotDivisibleError(ArithmeticError):
    """Exact division left a nonzero remainder (a meaningful negative result)."""


class UnboundVariableError(ValueError):
    """Evaluation point is missing an assignment for some variable."""


_DIST_VAR = re.compile(r"^d([1-9][0-9]*)$")


def _var_key(name: str) -> tuple[int, int]:
    if name == "x":
        return (0, 0)
    if name == "y":
        return (1, 0)
    m = _DIST_VAR.match(name)
    if m:
        return (2, int(m.group(1)))
    if name == "t":
        return (3, 0)
    raise ValueError(f"unknown variable name {name!r}")


def _sort_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_var_key))


Exponents = tuple[int, ...]
Terms = dict[Exponents, ExactValue]


class MultiPoly:
    """Immutable sparse polynomial: exponent tuples -> nonzero coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[Exponents, Scalar]):
        vs = _sort_vars(vars)
        clean: Terms = {}
        for exps, coeff in terms.items():
            key = tuple(exps)
            if len(key) != len(vs):
                raise ValueError(f"exponent tuple {key} does not match vars {vs}")
            if any(e < 0 or not isinstance(e, int) for e in key):
                raise ValueError(f"negative or non-integer exponent in {key}")
            c = normalize_value(coeff)
            if c == 0:
                continue
            if key in clean:
                c = normalize_value(clean[key] + c)
                if c == 0:
                    del clean[key]
                    continue
            clean[key] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly((), {})

    @staticmethod
    def const(value: Scalar) -> "MultiPoly":
        return MultiPoly((), {(): value})

    @staticmethod
    def variable(name: str) -> "MultiPoly":
        return MultiPoly((name,), {(1,): Fraction(1)})

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> ExactValue:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    @property
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return max(sum(exps) for exps in self.terms)

    def degree_in(self, var: str) -> int:
        if self.is_zero:
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(exps[i] for exps in self.terms)

    def used_vars(self) -> tuple[str, ...]:
        used = set()
        for exps in self.terms:
            for name, e in zip(self.vars, exps):
                if e > 0:
                    used.add(name)
        return _sort_vars(used)

    def strip(self) -> "MultiPoly":
        """Drop variables that never occur with a positive exponent."""
        used = self.used_vars()
        if used == self.vars:
            return self
        keep = [i for i, name in enumerate(self.vars) if name in used]
        terms = {tuple(exps[i] for i in keep): c for exps, c in self.terms.items()}
        return MultiPoly(used, terms)

    def _with_vars(self, vs: tuple[str, ...]) -> Terms:
        """Re-express terms over the (super)set vs of variables."""
        if vs == self.vars:
            return dict(self.terms)
        pos = {name: i for i, name in enumerate(self.vars)}
        out: Terms = {}
        for exps, coeff in self.terms.items():
            key = tuple(exps[pos[name]] if name in pos else 0 for name in vs)
            out[key] = coeff
        return out

    def leading(self) -> tuple[Exponents, ExactValue]:
        """Graded-lex leading (exponents, coefficient); error on zero."""
        if self.is_zero:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=lambda e: (sum(e), e))
        return exps, self.terms[exps]

    def radicand(self) -> int | None:
        """The radicand used by any irrational coefficient, or None."""
        for coeff in self.terms.values():
            d = radicand_of(coeff)
            if d is not None:
                return d
        return None

    @property
    def has_surd_coeff(self) -> bool:
        return self.radicand() is not None

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(value: "MultiPoly | Scalar") -> "MultiPoly | None":
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction, QuadraticNumber)) and not isinstance(
            value, bool
        ):
            return MultiPoly.const(value)
        return None

    def __add__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        vs = _sort_vars(self.vars + o.vars)
        terms = self._with_vars(vs)
        for exps, coeff in o._with_vars(vs).items():
            cur = terms.get(exps)
            terms[exps] = coeff if cur is None else cur + coeff
        return MultiPoly(vs, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return MultiPoly.zero()
        vs = _sort_vars(self.vars + o.vars)
        a = self._with_vars(vs)
        b = o._with_vars(vs)
        if len(a) > len(b):
            a, b = b, a
        out: Terms = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(i + j for i, j in zip(ea, eb))
                c = ca * cb
                cur = out.get(key)
                out[key] = c if cur is None else cur + c
        return MultiPoly(vs, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPoly.const(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)  # type: ignore[arg-type]
        if o is None:
            return NotImplemented
        vs = _sort_vars(self.vars + o.vars)
        return self._with_vars(vs) == o._with_vars(vs)

    def __hash__(self) -> int:
        p = self.strip()
        return hash((p.vars, frozenset(p.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({poly_text(self)!r})"

    # -- calculus / evaluation ---------------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        """Formal partial derivative with respect to var."""
        if var not in self.vars:
            _var_key(var)  # validate the name
            return MultiPoly.zero()
        i = self.vars.index(var)
        terms: Terms = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            key = exps[:i] + (e - 1,) + exps[i + 1 :]
            terms[key] = coeff * e
        return MultiPoly(self.vars, terms)

    def eval(self, point: Mapping[str, Scalar | float]):
        """Evaluate at a point assigning every variable.

        Exact inputs give an exact result; any float input switches the
        whole evaluation to double precision.
        """
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise UnboundVariableError(f"no value for variable(s) {missing}")
        values = [point[v] for v in self.vars]
        as_float = any(isinstance(v, float) for v in values)
        if as_float:
            values = [float(v) for v in values]
        # cache powers per variable
        pows: list[dict[int, object]] = [
            {0: 1.0 if as_float else Fraction(1), 1: v} for v in values
        ]
        total = 0.0 if as_float else Fraction(0)
        for exps, coeff in self.terms.items():
            term = float(coeff) if as_float else coeff
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                cache = pows[i]
                if e not in cache:
                    have = max(k for k in cache if k <= e)
                    acc = cache[have]
                    base = values[i]
                    for _ in range(e - have):
                        acc = acc * base
                    cache[e] = acc
                term = term * cache[e]
            total = total + term
        if as_float:
            return total
        return normalize_value(total)

    def subst_var(self, var: str, replacement: "MultiPoly | Scalar") -> "MultiPoly":
        """Polynomial composition: substitute `replacement` for `var`."""
        r = self._lift(replacement)
        if r is None:
            raise TypeError("replacement must be a polynomial or scalar")
        if var not in self.vars:
            return self
        groups = split_by(self, var)
        if not groups:
            return MultiPoly.zero()
        result = MultiPoly.zero()
        prev: int | None = None
        for e in sorted(groups, reverse=True):  # Horner over var
            if prev is None:
                result = groups[e]
            else:
                result = result * r ** (prev - e) + groups[e]
            prev = e
        if prev:
            result = result * r**prev
        return result


def split_by(p: MultiPoly, var: str) -> dict[int, MultiPoly]:
    """Decompose p by powers of var; values are polynomials without var."""
    if var not in p.vars:
        return {} if p.is_zero else {0: p}
    i = p.vars.index(var)
    rest = p.vars[:i] + p.vars[i + 1 :]
    groups: dict[int, Terms] = {}
    for exps, coeff in p.terms.items():
        e = exps[i]
        key = exps[:i] + exps[i + 1 :]
        groups.setdefault(e, {})[key] = coeff
    return {e: MultiPoly(rest, terms) for e, terms in groups.items()}


def join_by(coeffs: Mapping[int, MultiPoly], var: str) -> MultiPoly:
    """Inverse of split_by: sum coeff_e * var**e."""
    v = MultiPoly.variable(var)
    total = MultiPoly.zero()
    for e, c in coeffs.items():
        total = total + c * v**e
    return total


# ---------------------------------------------------------------------------
# exact division


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return r with p = q * r, or raise NotDivisibleError.

    Long division treats the last variable as main and divides the
    coefficient polynomials recursively; the base case is coefficient
    field division.
    """
    if q.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero:
        return MultiPoly.zero()
    p = p.strip()
    q = q.strip()
    if not q.vars:
        c = q.constant_value()
        return MultiPoly(p.vars, {e: v / c for e, v in p.terms.items()})
    main = q.vars[-1]
    pd = split_by(p, main)
    qd = split_by(q, main)
    dq = max(qd)
    lcq = qd[dq]
    quotient: dict[int, MultiPoly] = {}
    while pd:
        dp = max(pd)
        if dp < dq:
            raise NotDivisibleError(f"remainder of degree {dp} in {main}")
        t = exact_div(pd[dp], lcq)
        quotient[dp - dq] = t
        for e, c in qd.items():
            k = e + dp - dq
            cur = pd.get(k, MultiPoly.zero())
            upd = cur - c * t
            if upd.is_zero:
                pd.pop(k, None)
            else:
                pd[k] = upd
    return join_by(quotient, main)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    """True when q exactly divides p."""
    try:
        exact_div(p, q)
        return True
    except NotDivisibleError:
        return False


# ---------------------------------------------------------------------------
# content, primitive part, canonical form


def _coeff_fractions(coeff: ExactValue) -> list[Fraction]:
    if isinstance(coeff, QuadraticNumber):
        return [coeff.a, coeff.b]
    return [coeff]


def _rational_content(p: MultiPoly) -> Fraction:
    """Positive rational c with p / c integer-coefficient and content 1."""
    from math import gcd, lcm

    nums: list[int] = []
    dens: list[int] = []
    for coeff in p.terms.values():
        for f in _coeff_fractions(coeff):
            if f != 0:
                nums.append(abs(f.numerator))
                dens.append(f.denominator)
    if not nums:
        return Fraction(1)
    g = 0
    for v in nums:
        g = gcd(g, v)
    m = 1
    for v in dens:
        m = lcm(m, v)
    return Fraction(g, m)


def _leading_sign(p: MultiPoly) -> int:
    _, lead = p.leading()
    if isinstance(lead, QuadraticNumber):
        ref = lead.a if lead.a != 0 else lead.b
    else:
        ref = lead
    return 1 if ref > 0 else -1


def canonical_poly(p: MultiPoly) -> MultiPoly:
    """Primitive integer-coefficient form with positive graded-lex lead."""
    p = p.strip()
    if p.is_zero:
        return p
    content = _rational_content(p)
    scaled = p * (1 / content)
    if _leading_sign(scaled) < 0:
        scaled = -scaled
    return scaled


@dataclass(frozen=True)
class CanonicalForm:
    """A polynomial pinned to its canonical representative."""

    poly: MultiPoly

    @property
    def total_degree(self) -> int:
        return self.poly.total_degree

    @property
    def text(self) -> str:
        return poly_text(self.poly)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CanonicalForm):
            return self.poly == other.poly
        if isinstance(other, MultiPoly):
            return self.poly == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.poly)


def poly_canonical(p: MultiPoly) -> CanonicalForm:
    return CanonicalForm(canonical_poly(p))


# ---------------------------------------------------------------------------
# gcd / squarefree part


def _content_pp(p: MultiPoly, main: str) -> tuple[MultiPoly, MultiPoly]:
    """Content (a poly in the other variables) and primitive part wrt main."""
    coeffs = list(split_by(p, main).values())
    content = MultiPoly.zero()
    for c in coeffs:
        content = poly_gcd(content, c)
        if content.is_constant and not content.is_zero:
            break
    if content.is_zero:
        return MultiPoly.const(1), MultiPoly.zero()
    return content, exact_div(p, content)


def _primitive_in(p: MultiPoly, main: str) -> MultiPoly:
    """Primitive part wrt main with rational content and sign stripped too.

    Keeping remainders primitive at every step is what stops the
    pseudo-remainder sequence's coefficient growth.
    """
    if p.is_zero:
        return p
    _, pp = _content_pp(p, main)
    return canonical_poly(pp)


def _pseudo_rem(f: MultiPoly, g: MultiPoly, main: str) -> MultiPoly:
    """Pseudo-remainder of f by g in the main variable (up to lc(g) powers)."""
    gd = split_by(g, main)
    dg = max(gd)
    lcg = gd[dg]
    while True:
        if f.is_zero:
            return f
        fd = split_by(f, main)
        df = max(fd)
        if df < dg:
            return f
        lcf = fd[df]
        shift = df - dg
        f = lcg * f - lcf * join_by({e + shift: c for e, c in gd.items()}, main)


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """A gcd in canonical form, via a primitive pseudo-remainder sequence.

    Intended for the small bivariate inputs this package produces; the
    recursion on contents makes it work for any variable count.
    """
    p = p.strip()
    q = q.strip()
    if p.is_zero:
        return canonical_poly(q)
    if q.is_zero:
        return canonical_poly(p)
    if not p.vars and not q.vars:
        return MultiPoly.const(1)
    vs = _sort_vars(p.vars + q.vars)
    main = vs[-1]
    cp, pp = _content_pp(canonical_poly(p), main)
    cq, qq = _content_pp(canonical_poly(q), main)
    c = poly_gcd(cp, cq)
    pp = canonical_poly(pp)
    qq = canonical_poly(qq)
    f, g = (pp, qq) if pp.degree_in(main) >= qq.degree_in(main) else (qq, pp)
    while not g.is_zero:
        r = _pseudo_rem(f, g, main)
        f, g = g, _primitive_in(r, main)
    return canonical_poly(c * _primitive_in(f, main))


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of p, canonicalized.

    Splits off the content in the main (last) variable, reduces the
    primitive part by gcd(pp, dpp/dmain), and recurses on the content, so
    repeated factors are removed no matter which variables they involve.
    The exact divisions verify themselves: a nonzero remainder would raise.
    """
    if p.is_zero:
        raise ValueError("squarefree part of the zero polynomial")
    p = canonical_poly(p)
    if p.is_constant:
        return MultiPoly.const(1)
    main = p.vars[-1]
    content, pp = _content_pp(p, main)
    g = poly_gcd(pp, pp.derivative(main))
    reduced = exact_div(pp, g)
    rest = (
        MultiPoly.const(1)
        if content.is_constant
        else squarefree_part(content)
    )
    return canonical_poly(rest * reduced)


# ---------------------------------------------------------------------------
# resultant


def _coeff_list(p: MultiPoly, var: str) -> list[MultiPoly]:
    """Coefficients of p in var, highest degree first."""
    groups = split_by(p, var)
    deg = max(groups)
    return [groups.get(e, MultiPoly.zero()) for e in range(deg, -1, -1)]


def poly_resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester-matrix resultant eliminating var, by Bareiss elimination."""
    if p.is_zero or q.is_zero:
        return MultiPoly.zero()
    p = p.strip()
    q = q.strip()
    m = p.degree_in(var)
    n = q.degree_in(var)
    if m <= 0 or n <= 0:
        raise ValueError(f"both polynomials must depend on {var!r}")
    fc = _coeff_list(p, var)
    gc = _coeff_list(q, var)
    size = m + n
    matrix: list[list[MultiPoly]] = []
    for i in range(n):
        row = [MultiPoly.zero()] * size
        row[i : i + m + 1] = fc
        matrix.append(row)
    for i in range(m):
        row = [MultiPoly.zero()] * size
        row[i : i + n + 1] = gc
        matrix.append(row)
    return _bareiss_det(matrix)


def _bareiss_det(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant; all interior divisions are exact."""
    n = len(matrix)
    sign = 1
    prev: MultiPoly | None = None
    for k in range(n - 1):
        if matrix[k][k].is_zero:
            pivot_row = next(
                (i for i in range(k + 1, n) if not matrix[i][k].is_zero), None
            )
            if pivot_row is None:
                return MultiPoly.zero()
            matrix[k], matrix[pivot_row] = matrix[pivot_row], matrix[k]
            sign = -sign
        pivot = matrix[k][k]
        for i in range(k + 1, n):
            row_i = matrix[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - lead * matrix[k][j]
                row_i[j] = num if prev is None else exact_div(num, prev)
            row_i[k] = MultiPoly.zero()
        prev = pivot
    det = matrix[n - 1][n - 1]
    return -det if sign < 0 else det


# ---------------------------------------------------------------------------
# surd-coefficient helpers


def conjugate_poly(p: MultiPoly) -> MultiPoly:
    """Apply the quadratic-field conjugation to every coefficient."""
    return MultiPoly(p.vars, {e: conjugate_value(c) for e, c in p.terms.items()})


def reduce_surd_var(p: MultiPoly, d: int) -> MultiPoly:
    """Fold powers of the surd variable t by t^2 -> d."""
    if "t" not in p.vars or p.degree_in("t") < 2:
        return p
    groups = split_by(p, "t")
    folded: dict[int, MultiPoly] = {}
    for e, c in groups.items():
        r = c * Fraction(d) ** (e // 2)
        key = e % 2
        folded[key] = folded.get(key, MultiPoly.zero()) + r
    return join_by(folded, "t")


# ---------------------------------------------------------------------------
# text rendering


def _coeff_text(coeff: ExactValue) -> tuple[int, str]:
    """(sign, magnitude text) for one coefficient."""
    if isinstance(coeff, QuadraticNumber):
        sign = 1 if (coeff.a > 0 or (coeff.a == 0 and coeff.b > 0)) else -1
        mag = coeff if sign > 0 else -coeff
        if mag.a == 0:
            b = mag.b
            btxt = _frac_text(b)
            return sign, f"{btxt}*sqrt({mag.d})" if btxt != "1" else f"sqrt({mag.d})"
        return sign, f"({mag})"
    sign = 1 if coeff > 0 else -1
    return sign, _frac_text(abs(coeff))


def _frac_text(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"({f.numerator}/{f.denominator})"


def poly_text(p: MultiPoly) -> str:
    """Render in descending graded-lex order: "9 x^8 + ... + 3600 y - 14175"."""
    if p.is_zero:
        return "0"
    p = p.strip()
    pieces: list[str] = []
    order = sorted(p.terms, key=lambda e: (sum(e), e), reverse=True)
    for idx, exps in enumerate(order):
        sign, mag = _coeff_text(p.terms[exps])
        monomial = " ".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(p.vars, exps)
            if e > 0
        )
        if monomial and mag == "1":
            body = monomial
        elif monomial:
            body = f"{mag} {monomial}"
        else:
            body = mag
        if idx == 0:
            pieces.append(body if sign > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if sign > 0 else f"- {body}")
    return " ".join(pieces)


# spec-facing aliases kept as plain functions


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if (
        p.radicand() is not None
        and q.radicand() is not None
        and p.radicand() != q.radicand()
    ):
        raise MixedRadicandError(
            f"cannot multiply polynomials over sqrt({p.radicand()}) and sqrt({q.radicand()})"
        )
    return p * q


def poly_eval(p: MultiPoly, point: Mapping[str, Scalar | float]):
    return p.eval(point)


def poly_derivative(p: MultiPoly, var: str) -> MultiPoly:
    return p.derivative(var)


def poly_exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return exact_div(p, q)


def poly_squarefree(p: MultiPoly) -> MultiPoly:
    return squarefree_part(p)
