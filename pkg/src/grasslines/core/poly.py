"""Sparse homogeneous polynomials in two or three variables over Q.

Variable names follow the pencil/net convention: (λ, μ) for binary forms and
(λ, μ, ν) for ternary ones. The zero polynomial is always stored with degree 0
and an empty coefficient map.
"""

from fractions import Fraction

from .rational import format_rational, to_rational

__all__ = ["HomogPoly", "poly_matrix_kernel_check", "monomials"]

VAR_NAMES = {2: ("λ", "μ"), 3: ("λ", "μ", "ν")}


def monomials(num_vars, degree):
    """Exponent tuples of the given degree, lexicographically decreasing."""
    if num_vars == 1:
        return [(degree,)]
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(num_vars - 1, degree - e):
            out.append((e,) + rest)
    return out


class HomogPoly:
    __slots__ = ("num_vars", "degree", "coeffs", "_hash")

    def __init__(self, num_vars, degree, coeffs=None):
        if num_vars not in (2, 3):
            raise ValueError("only binary and ternary forms are supported")
        if degree < 0:
            raise ValueError("negative degree")
        clean = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            if sum(exps) != degree:
                raise ValueError(f"exponent tuple {exps} does not have degree {degree}")
            c = to_rational(c)
            if c != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if clean[exps] == 0:
                    del clean[exps]
        if not clean:
            degree = 0
        self.num_vars = num_vars
        self.degree = degree
        self.coeffs = clean
        self._hash = None

    @classmethod
    def zero(cls, num_vars):
        return cls(num_vars, 0)

    @classmethod
    def constant(cls, num_vars, c):
        return cls(num_vars, 0, {(0,) * num_vars: c})

    @classmethod
    def var(cls, num_vars, i):
        e = [0] * num_vars
        e[i] = 1
        return cls(num_vars, 1, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs):
        """The linear form Σ cᵢ xᵢ."""
        n = len(coeffs)
        return cls(n, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def _raw(cls, num_vars, degree, clean):
        p = cls.__new__(cls)
        p.num_vars = num_vars
        p.degree = degree if clean else 0
        p.coeffs = clean
        p._hash = None
        return p

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, exps):
        return self.coeffs.get(tuple(exps), Fraction(0))

    def coefficient_vector(self):
        """Coefficients in the order given by ``monomials``."""
        return tuple(self.coefficient(m) for m in monomials(self.num_vars, self.degree))

    def _coerce(self, other):
        if isinstance(other, HomogPoly):
            if other.num_vars != self.num_vars:
                raise ValueError("variable count mismatch")
            return other
        c = to_rational(other)
        if c == 0:
            return HomogPoly.zero(self.num_vars)
        return HomogPoly.constant(self.num_vars, c)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        if other.degree != self.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return HomogPoly._raw(self.num_vars, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return HomogPoly._raw(self.num_vars, self.degree, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, HomogPoly):
            c = to_rational(other)
            if c == 0:
                return HomogPoly.zero(self.num_vars)
            return HomogPoly._raw(self.num_vars, self.degree, {e: c * v for e, v in self.coeffs.items()})
        if other.num_vars != self.num_vars:
            raise ValueError("variable count mismatch")
        if not self.coeffs or not other.coeffs:
            return HomogPoly.zero(self.num_vars)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: c for e, c in out.items() if c}
        return HomogPoly._raw(self.num_vars, self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = HomogPoly.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, HomogPoly):
            return self.num_vars == other.num_vars and self.degree == other.degree and self.coeffs == other.coeffs
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, self.degree, frozenset(self.coeffs.items())))
        return self._hash

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        point = [to_rational(x) for x in point]
        if len(point) != self.num_vars:
            raise ValueError("point has the wrong number of coordinates")
        total = Fraction(0)
        for e, c in self.coeffs.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x**k
            total += term
        return total

    def derivative(self, i):
        out = {}
        for e, c in self.coeffs.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return HomogPoly._raw(self.num_vars, max(self.degree - 1, 0), out)

    def substitute(self, forms):
        """Compose with homogeneous forms of a common degree (one per variable)."""
        if len(forms) != self.num_vars:
            raise ValueError("need one form per variable")
        target = forms[0].num_vars
        result = HomogPoly.zero(target)
        cache = {}
        for e, c in self.coeffs.items():
            term = HomogPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = forms[i] ** k
                    term = term * cache[key]
            result = result + term
        return result

    def is_constant_multiple_of(self, other):
        """Return c with self = c·other, or None."""
        if not other.coeffs:
            return Fraction(0) if not self.coeffs else None
        if not self.coeffs:
            return Fraction(0)
        if self.degree != other.degree or self.coeffs.keys() != other.coeffs.keys():
            return None
        e0 = next(iter(other.coeffs))
        c = self.coeffs[e0] / other.coeffs[e0]
        if all(self.coeffs[e] == c * v for e, v in other.coeffs.items()):
            return c
        return None

    def to_sympy(self, symbols=None):
        import sympy

        if symbols is None:
            symbols = sympy.symbols(VAR_NAMES[self.num_vars][: self.num_vars])
        expr = sympy.Integer(0)
        for e, c in self.coeffs.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for s, k in zip(symbols, e):
                term *= s**k
            expr += term
        return expr

    @classmethod
    def from_sympy(cls, expr, symbols):
        import sympy

        p = sympy.Poly(sympy.expand(expr), *symbols)
        if p.is_zero:
            return cls.zero(len(symbols))
        coeffs = {
            tuple(m): Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for m, c in zip(p.monoms(), p.coeffs())
        }
        degree = sum(next(iter(coeffs)))
        return cls(len(symbols), degree, coeffs)

    def to_json(self):
        return {
            "num_vars": self.num_vars,
            "degree": self.degree,
            "terms": [[list(e), format_rational(c)] for e, c in sorted(self.coeffs.items(), reverse=True)],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["num_vars"], obj["degree"], {tuple(e): c for e, c in obj["terms"]})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = VAR_NAMES[self.num_vars]
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_matrix_kernel_check(mat_of_polys, vec_of_polys):
    """True iff the polynomial matrix times the polynomial vector is identically zero."""
    if not mat_of_polys:
        return True
    width = len(mat_of_polys[0])
    if any(len(r) != width for r in mat_of_polys) or width != len(vec_of_polys):
        raise ValueError("incompatible dimensions")
    for row in mat_of_polys:
        acc = None
        for a, c in zip(row, vec_of_polys):
            term = _times(a, c)
            acc = term if acc is None else acc + term
        if acc is not None and acc != 0:
            return False
    return True


def _times(a, b):
    if isinstance(a, HomogPoly):
        return a * b
    if isinstance(b, HomogPoly):
        return b * a
    return to_rational(a) * to_rational(b)


def random_poly(rng, num_vars, degree, bound=5, density=0.7):
    coeffs = {}
    for m in monomials(num_vars, degree):
        if rng.random() < density:
            coeffs[m] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return HomogPoly(num_vars, degree, coeffs)

