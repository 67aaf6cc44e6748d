"""Sparse multivariate Laurent polynomials with integer coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import NonLaurentDivision, ShapeMismatch

Exp = tuple[int, ...]


class LaurentPoly:
    """Immutable Laurent polynomial: exponent tuple -> nonzero integer."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exp, int] | Iterable[tuple[Exp, int]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exp, int] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ShapeMismatch(f"exponent {e} has length {len(e)}, expected {nvars}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.nvars = nvars
        self.terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exp, int]) -> "LaurentPoly":
        out = cls.__new__(cls)
        out.nvars = nvars
        out.terms = terms
        out._hash = None
        return out

    @classmethod
    def const(cls, nvars: int, c: int = 1) -> "LaurentPoly":
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exp: Iterable[int], c: int = 1) -> "LaurentPoly":
        e = tuple(exp)
        return cls._raw(len(e), {e: c} if c else {})

    @classmethod
    def var(cls, i: int, nvars: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    # arithmetic ------------------------------------------------------
    def _check(self, other: "LaurentPoly") -> None:
        if other.nvars != self.nvars:
            raise ShapeMismatch("Laurent polynomials over different variable sets")

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly._raw(self.nvars, {})
            return LaurentPoly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise NonLaurentDivision("negative power of a non-monomial")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise NonLaurentDivision("negative power of a non-unit monomial")
            return LaurentPoly._raw(self.nvars, {tuple(-x * -k for x in e): c ** (-k)})
        result = LaurentPoly.const(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exp: Exp) -> "LaurentPoly":
        """Multiply by the monomial with exponent ``exp``."""
        return LaurentPoly._raw(
            self.nvars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}
        )

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in the Laurent ring, or :class:`NonLaurentDivision`."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self
        n = self.nvars
        if other.is_monomial():
            (e, c), = other.terms.items()
            out = {}
            for e1, c1 in self.terms.items():
                q, r = divmod(c1, c)
                if r:
                    raise NonLaurentDivision("coefficient not divisible")
                out[tuple(a - b for a, b in zip(e1, e))] = q
            return LaurentPoly._raw(n, out)
        # clear denominators: divisor without monomial factor, numerator polynomial
        lo_d = tuple(min(e[i] for e in other.terms) for i in range(n))
        lo_n = tuple(min(e[i] for e in self.terms) for i in range(n))
        den = {tuple(a - b for a, b in zip(e, lo_d)): c for e, c in other.terms.items()}
        num = {tuple(a - b for a, b in zip(e, lo_n)): c for e, c in self.terms.items()}
        lead_e = max(den)
        lead_c = den[lead_e]
        quot: dict[Exp, int] = {}
        while num:
            e = max(num)
            c = num[e]
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if min(qe) < 0:
                raise NonLaurentDivision("leading term not divisible")
            qc, r = divmod(c, lead_c)
            if r:
                raise NonLaurentDivision("leading coefficient not divisible")
            quot[qe] = qc
            for de, dc in den.items():
                t = tuple(a + b for a, b in zip(qe, de))
                v = num.get(t, 0) - qc * dc
                if v:
                    num[t] = v
                else:
                    num.pop(t, None)
        offset = tuple(a - b for a, b in zip(lo_n, lo_d))
        return LaurentPoly._raw(n, {tuple(a + b for a, b in zip(e, offset)): c for e, c in quot.items()})

    # predicates ------------------------------------------------------
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_positive(self) -> bool:
        """All coefficients nonnegative."""
        return all(c > 0 for c in self.terms.values())

    def is_polynomial(self) -> bool:
        return all(min(e, default=0) >= 0 for e in self.terms)

    def denominator(self) -> Exp:
        """Exponents of the smallest monomial clearing all negative powers."""
        return tuple(max(0, -min(e[i] for e in self.terms)) for i in range(self.nvars)) if self.terms else (0,) * self.nvars

    def substitute_monomials(self, images: list["LaurentPoly"]) -> "LaurentPoly":
        """Replace variable i by the monomial ``images[i]``."""
        if any(not m.is_monomial() for m in images):
            raise ValueError("only monomial substitutions are supported")
        nv = images[0].nvars if images else 0
        out: dict[Exp, int] = {}
        mons = [next(iter(m.terms.items())) for m in images]
        for e, c in self.terms.items():
            t = [0] * nv
            coef = c
            for x, (me, mc) in zip(e, mons):
                if x:
                    if mc != 1 and x < 0:
                        raise NonLaurentDivision("negative power of non-unit")
                    coef *= mc ** x if x > 0 else 1
                    for j in range(nv):
                        t[j] += x * me[j]
            key = tuple(t)
            v = out.get(key, 0) + coef
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return LaurentPoly._raw(nv, out)

    def drop_vars(self, keep: int) -> "LaurentPoly":
        """Set the variables with index >= keep to one."""
        out: dict[Exp, int] = {}
        for e, c in self.terms.items():
            t = e[:keep]
            v = out.get(t, 0) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return LaurentPoly._raw(keep, out)

    # comparison ------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def sort_key(self) -> tuple:
        """Order by total degree of the leading term, then lexicographically."""
        items = sorted(self.terms.items(), reverse=True)
        top = items[0][0] if items else ()
        return (sum(top), tuple(items))

    def __lt__(self, other: "LaurentPoly") -> bool:
        return self.sort_key() < other.sort_key()

    # io ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vars": self.nvars,
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        return cls(int(data["vars"]), [(tuple(t["exp"]), int(t["coef"])) for t in data["terms"]])

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = [f"x{i + 1}" for i in range(self.nvars)]
        return format_laurent(self, names)


def format_laurent(p: LaurentPoly, names: list[str]) -> str:
    """Human-readable form ``numerator/denominator`` with a common denominator."""
    if not p.terms:
        return "0"
    den = p.denominator()
    num = p.shift(den)

    def mono(e: Exp) -> str:
        parts = []
        for name, x in zip(names, e):
            if x == 1:
                parts.append(name)
            elif x:
                parts.append(f"{name}^{x}")
        return "*".join(parts)

    pieces = []
    for e, c in sorted(num.terms.items(), key=lambda t: (sum(t[0]), t[0])):
        m = mono(e)
        if not m:
            pieces.append(str(c))
        elif c == 1:
            pieces.append(m)
        elif c == -1:
            pieces.append("-" + m)
        else:
            pieces.append(f"{c}*{m}")
    text = " + ".join(pieces).replace("+ -", "- ")
    d = mono(den)
    if not d:
        return text
    if len(pieces) > 1:
        text = f"({text})"
    return f"{text}/({d})" if "*" in d else f"{text}/{d}"


__all__ = ["LaurentPoly", "format_laurent"]
