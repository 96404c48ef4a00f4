"""Exact multivariate Laurent polynomials over the rationals.

Terms map exponent tuples to Fractions. Division is exact or fails: cluster
variables are Laurent polynomials with a monomial denominator, so every
division arising here must terminate with zero remainder.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NonExactDivision, ValidationError


class Laurent:
    """Laurent polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValidationError(f"exponent {e} has wrong length")
                c = Fraction(c)
                if c != 0:
                    self.terms[e] = self.terms.get(e, Fraction(0)) + c
            self.terms = {e: c for e, c in self.terms.items() if c != 0}

    @classmethod
    def zero(cls, nvars: int) -> "Laurent":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "Laurent":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Laurent":
        e = tuple(int(x) for x in exps)
        return cls(len(e), {e: Fraction(coeff)})

    @classmethod
    def variable(cls, idx: int, nvars: int) -> "Laurent":
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial_parts(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.is_monomial():
            raise ValidationError(f"{self} is not a monomial")
        ((e, c),) = self.terms.items()
        return e, c

    def __add__(self, other: "Laurent") -> "Laurent":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Laurent(self.nvars, out)

    def __neg__(self) -> "Laurent":
        return Laurent(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Laurent(self.nvars, out)

    def scale(self, k) -> "Laurent":
        k = Fraction(k)
        return Laurent(self.nvars, {e: k * c for e, c in self.terms.items()})

    def shift(self, exps: Sequence[int]) -> "Laurent":
        """Multiply by the monomial with the given exponents."""
        d = tuple(int(x) for x in exps)
        return Laurent(
            self.nvars, {tuple(a + b for a, b in zip(e, d)): c for e, c in self.terms.items()}
        )

    def __truediv__(self, other: "Laurent") -> "Laurent":
        """Exact division; raises NonExactDivision when the quotient is not a
        Laurent polynomial."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return Laurent.zero(self.nvars)
        if other.is_monomial():
            e, c = other.monomial_parts()
            return self.shift(tuple(-x for x in e)).scale(Fraction(1) / c)
        # shift both so the divisor is an honest polynomial with nonzero
        # constant candidate; then long division by the leading term
        shift_div = tuple(-min(e[k] for e in other.terms) for k in range(self.nvars))
        den = other.shift(shift_div)
        num = self.shift(shift_div)
        lead = max(den.terms)
        lead_c = den.terms[lead]
        # any exact quotient term lies in the exponent box given by the
        # Newton polytope relation num = quo + den coordinatewise
        lo = tuple(min(e[k] for e in num.terms) for k in range(self.nvars))
        hi = tuple(
            max(e[k] for e in num.terms) - max(e[k] for e in den.terms)
            for k in range(self.nvars)
        )
        quo: dict[tuple[int, ...], Fraction] = {}
        rem = num
        while not rem.is_zero():
            top = max(rem.terms)
            qe = tuple(a - b for a, b in zip(top, lead))
            if any(q < a or q > b for q, a, b in zip(qe, lo, hi)):
                raise NonExactDivision(f"{self} is not divisible by {other}")
            qc = rem.terms[top] / lead_c
            quo[qe] = quo.get(qe, Fraction(0)) + qc
            rem = rem - den * Laurent.monomial(qe, qc)
        return Laurent(self.nvars, quo)

    def substitute_one(self) -> Fraction:
        """Value with every variable set to 1."""
        return sum(self.terms.values(), Fraction(0))

    def min_exponents(self) -> tuple[int, ...]:
        if self.is_zero():
            raise ValidationError("zero polynomial has no exponents")
        return tuple(min(e[k] for e in self.terms) for k in range(self.nvars))

    def _check(self, other: "Laurent"):
        if self.nvars != other.nvars:
            raise ValidationError("variable counts differ")

    def __eq__(self, other):
        return (
            isinstance(other, Laurent)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"Laurent({self})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{k + 1}" for k in range(self.nvars)]

        def render(terms) -> str:
            bits = []
            for e, c in sorted(terms.items(), reverse=True):
                factors = []
                for name, k in zip(names, e):
                    if k == 1:
                        factors.append(name)
                    elif k != 0:
                        factors.append(f"{name}^{k}")
                mono = "*".join(factors)
                if not mono:
                    bits.append(str(c))
                elif c == 1:
                    bits.append(mono)
                elif c == -1:
                    bits.append(f"-{mono}")
                else:
                    bits.append(f"{c}*{mono}")
            return " + ".join(bits).replace("+ -", "- ")

        # show negative exponents common to every term as one denominator
        lo = self.min_exponents()
        den = tuple(-min(e, 0) for e in lo)
        if not any(den):
            return render(self.terms)
        num_terms = {
            tuple(x + d for x, d in zip(e, den)): c for e, c in self.terms.items()
        }
        num = render(num_terms)
        if len(num_terms) > 1 or num.startswith("-") or "*" in num:
            num = f"({num})"
        dfactors = [
            name if k == 1 else f"{name}^{k}"
            for name, k in zip(names, den)
            if k
        ]
        dstr = f"({'*'.join(dfactors)})" if len(dfactors) > 1 else dfactors[0]
        return f"{num}/{dstr}"

    def __str__(self):
        return self.to_string()


def project_exponents(p: Laurent, var_map: Sequence[int], nvars_out: int) -> Laurent:
    """Sum exponents along a surjection of variable indices.

    ``var_map[k]`` gives the output variable for input variable k; folding a
    cluster variable onto orbit variables is exactly this remap.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for e, c in p.terms.items():
        ne = [0] * nvars_out
        for k, x in enumerate(e):
            ne[var_map[k]] += x
        key = tuple(ne)
        out[key] = out.get(key, Fraction(0)) + c
    return Laurent(nvars_out, out)
