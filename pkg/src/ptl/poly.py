"""Sparse multivariate polynomials with exact rational coefficients.

Terms live in a hash map keyed by dense exponent tuples; a canonical
graded-lex ordering is imposed only when serializing, so hot loops never pay
for ordered storage.  Laurent behaviour (negative exponents) is permitted in
exactly one declared variable per context, the localization variable.

The canonical text form is the interchange format used by every other
module: terms sorted graded-lex descending, rational coefficients printed
explicitly, e.g. ``3/2*s2^-1*s3``.  ``parse_polynomial`` inverts
``SparsePolynomial.text`` exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ptl.context import VariableContext

ExactScalar = Fraction


def _as_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


class SparsePolynomial:
    """Finitely supported map from exponent vectors to exact rationals."""

    __slots__ = ("context", "terms")

    def __init__(self, context: VariableContext, terms=None, *, validate: bool = True):
        self.context = context
        tt = {}
        if terms:
            for expo, coeff in (terms.items() if isinstance(terms, dict) else terms):
                c = _as_scalar(coeff)
                if c == 0:
                    continue
                expo = tuple(expo)
                prev = tt.get(expo)
                if prev is None:
                    tt[expo] = c
                else:
                    s = prev + c
                    if s:
                        tt[expo] = s
                    else:
                        del tt[expo]
        self.terms = tt
        if validate:
            self._validate()

    def _validate(self):
        arity = self.context.arity
        loc = self.context.localized
        for expo in self.terms:
            if len(expo) != arity:
                raise ValueError(f"exponent vector {expo} does not match arity {arity}")
            for i, e in enumerate(expo):
                if e < 0 and i != loc:
                    raise ValueError(
                        f"negative exponent in non-localized variable {self.context.names[i]}")

    @classmethod
    def _raw(cls, context: VariableContext, terms: dict) -> "SparsePolynomial":
        p = object.__new__(cls)
        p.context = context
        p.terms = terms
        return p

    @classmethod
    def zero(cls, context: VariableContext) -> "SparsePolynomial":
        return cls._raw(context, {})

    @classmethod
    def constant(cls, context: VariableContext, c) -> "SparsePolynomial":
        c = _as_scalar(c)
        if c == 0:
            return cls.zero(context)
        return cls._raw(context, {(0,) * context.arity: c})

    @classmethod
    def variable(cls, context: VariableContext, name: str, exponent: int = 1) -> "SparsePolynomial":
        i = context.var_index(name)
        if exponent < 0 and i != context.localized:
            raise ValueError(f"negative exponent in non-localized variable {name}")
        expo = [0] * context.arity
        expo[i] = exponent
        return cls._raw(context, {tuple(expo): Fraction(1)})

    @classmethod
    def monomial(cls, context: VariableContext, expo, coeff=1) -> "SparsePolynomial":
        return cls(context, {tuple(expo): coeff})

    # -- ring structure -------------------------------------------------

    def _check_context(self, other: "SparsePolynomial"):
        if self.context is not other.context and self.context != other.context:
            raise ValueError("context mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(self.context, other)
        self._check_context(other)
        out = dict(self.terms)
        for expo, c in other.terms.items():
            s = out.get(expo, 0) + c
            if s:
                out[expo] = s
            else:
                out.pop(expo, None)
        return SparsePolynomial._raw(self.context, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw(self.context, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(self.context, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_scalar(other)
            if c == 0:
                return SparsePolynomial.zero(self.context)
            return SparsePolynomial._raw(
                self.context, {e: cc * c for e, cc in self.terms.items()})
        self._check_context(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return SparsePolynomial._raw(self.context, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePolynomial.constant(self.context, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(self.context, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return hash((self.context.names, frozenset(self.terms.items())))

    # -- calculus and grading -------------------------------------------

    def derivative(self, name: str) -> "SparsePolynomial":
        """Partial derivative; for the localized variable this is the Laurent d/dv."""
        i = self.context.var_index(name)
        out = {}
        for expo, c in self.terms.items():
            e = expo[i]
            if e == 0:
                continue
            new = expo[:i] + (e - 1,) + expo[i + 1:]
            if e - 1 < 0 and i != self.context.localized:
                raise ValueError("derivative would create a negative exponent")
            s = out.get(new, 0) + c * e
            if s:
                out[new] = s
            else:
                del out[new]
        return SparsePolynomial._raw(self.context, out)

    def degree(self) -> int | None:
        """Total context degree (None for the zero polynomial)."""
        if not self.terms:
            return None
        return max(self.context.degree_of(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.context.degree_of(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_component(self, *, degree: int | None = None,
                              weight: int | None = None) -> "SparsePolynomial":
        """Graded piece under the context's grading; exact extraction.

        Exactly one of `degree`, `weight` may be given, or both to select a
        single bigraded component.
        """
        if degree is None and weight is None:
            raise ValueError("specify degree and/or weight")
        ctx = self.context
        out = {}
        for expo, c in self.terms.items():
            if degree is not None and ctx.degree_of(expo) != degree:
                continue
            if weight is not None and ctx.weight_of(expo) != weight:
                continue
            out[expo] = c
        return SparsePolynomial._raw(ctx, out)

    def weight_components(self) -> dict[int, "SparsePolynomial"]:
        buckets: dict[int, dict] = {}
        for expo, c in self.terms.items():
            buckets.setdefault(self.context.weight_of(expo), {})[expo] = c
        return {w: SparsePolynomial._raw(self.context, t) for w, t in sorted(buckets.items())}

    # -- substitution ----------------------------------------------------

    def subs_zero(self, names) -> "SparsePolynomial":
        """Set the given variables to zero (drop every term they divide)."""
        idx = [self.context.var_index(n) for n in names]
        out = {}
        for expo, c in self.terms.items():
            if any(expo[i] != 0 for i in idx):
                continue
            out[expo] = c
        return SparsePolynomial._raw(self.context, out)

    def evaluate(self, assignment: dict) -> Fraction:
        """Evaluate at a full rational point {name: value}."""
        vals = [None] * self.context.arity
        for name, v in assignment.items():
            vals[self.context.var_index(name)] = _as_scalar(v)
        total = Fraction(0)
        for expo, c in self.terms.items():
            term = c
            for i, e in enumerate(expo):
                if e == 0:
                    continue
                if vals[i] is None:
                    raise ValueError(f"no value for variable {self.context.names[i]}")
                if e < 0 and vals[i] == 0:
                    raise ZeroDivisionError("evaluating a Laurent pole at zero")
                term *= vals[i] ** e
            total += term
        return total

    def substitute(self, images: dict, target: VariableContext | None = None,
                   _power_cache: dict | None = None) -> "SparsePolynomial":
        """Ring homomorphism sending each variable to `images[name]`.

        Variables absent from `images` must exist in the target context and
        map to themselves.  Used for linear group actions; exponents must be
        nonnegative.
        """
        ctx = self.context
        tgt = target if target is not None else next(
            (p.context for p in images.values() if isinstance(p, SparsePolynomial)), ctx)
        cache = _power_cache if _power_cache is not None else {}
        var_polys = []
        for i, name in enumerate(ctx.names):
            img = images.get(name)
            if img is None:
                img = SparsePolynomial.variable(tgt, name)
            elif not isinstance(img, SparsePolynomial):
                img = SparsePolynomial.constant(tgt, img)
            var_polys.append(img)
        result = SparsePolynomial.zero(tgt)
        for expo, c in self.terms.items():
            term = SparsePolynomial.constant(tgt, c)
            for i, e in enumerate(expo):
                if e == 0:
                    continue
                if e < 0:
                    raise ValueError("cannot substitute into a Laurent exponent")
                key = (i, e)
                pw = cache.get(key)
                if pw is None:
                    pw = var_polys[i] ** e
                    cache[key] = pw
                term = term * pw
            result = result + term
        return result

    # -- canonical text form ----------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lex order (leading term first)."""
        ctx = self.context
        return sorted(self.terms.items(),
                      key=lambda kv: (ctx.degree_of(kv[0]), kv[0]), reverse=True)

    def text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for expo, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.context.names, expo):
                if e == 0:
                    continue
                factors.append(name if e == 1 else f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            pieces.append((c < 0, body))
        first_neg, first_body = pieces[0]
        out = ("-" if first_neg else "") + first_body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"<poly {self.text()}>"


_TERM_RE = re.compile(r"^(?:(-?\d+(?:/\d+)?)(?:\*|$))?(.*)$")
_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")


def parse_polynomial(text: str, context: VariableContext) -> SparsePolynomial:
    """Exact inverse of SparsePolynomial.text()."""
    s = text.strip()
    if s == "0":
        return SparsePolynomial.zero(context)
    # normalize to '+'-separated signed terms
    s = s.replace(" - ", " + -").replace(" + ", "\x00")
    chunks = s.split("\x00")
    terms = {}
    for chunk in chunks:
        chunk = chunk.strip()
        sign = 1
        while chunk.startswith("-"):
            sign = -sign
            chunk = chunk[1:].strip()
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r}")
        coeff_s, rest = m.groups()
        coeff = Fraction(coeff_s) if coeff_s else Fraction(1)
        expo = [0] * context.arity
        if rest:
            for factor in rest.split("*"):
                fm = _FACTOR_RE.match(factor.strip())
                if not fm:
                    raise ValueError(f"cannot parse factor {factor!r}")
                name, e = fm.groups()
                expo[context.var_index(name)] += int(e) if e else 1
        key = tuple(expo)
        c = terms.get(key, Fraction(0)) + sign * coeff
        if c:
            terms[key] = c
        else:
            terms.pop(key, None)
    return SparsePolynomial(context, terms)


def laurent_clear_denominators(p: SparsePolynomial, name: str) -> tuple[SparsePolynomial, int]:
    """Return (q, m) with q = p * name^m polynomial and m minimal.

    `p` may carry negative exponents only in `name`; m is max(0, -min exp).
    """
    i = p.context.var_index(name)
    if not p.terms:
        return p, 0
    m = max(0, -min(expo[i] for expo in p.terms))
    if m == 0:
        return p, 0
    out = {expo[:i] + (expo[i] + m,) + expo[i + 1:]: c for expo, c in p.terms.items()}
    return SparsePolynomial._raw(p.context, out), m
