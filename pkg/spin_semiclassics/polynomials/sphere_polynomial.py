"""Sparse polynomials in (x, y, z) restricted to the unit sphere.

A :class:`SpherePolynomial` is a finite map from exponent triples ``(a, b, c)``
to complex coefficients. The canonical representative modulo
``x² + y² + z² = 1`` eliminates ``z²``, so every canonical monomial has
``c <= 1``.

Text format: signed terms ``coeff x^a y^b z^c`` such as ``-0.5 z^2 - 0.5 x``.
Whitespace is ignored, ``*`` between factors is optional, exponent 1 and
coefficient 1 may be elided, and complex coefficients are written in
parentheses, e.g. ``(1+2j) x y``.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from spin_semiclassics.polynomials.points import SpherePoint
from spin_semiclassics.utils.exceptions import PolynomialError

logger = logging.getLogger(__name__)

Monomial = tuple[int, int, int]

ZERO_TOLERANCE = 1e-15
DEFAULT_MAX_DEGREE = 64

_AXES = ("x", "y", "z")
_UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _prune(terms: Mapping[Monomial, complex]) -> dict[Monomial, complex]:
    return {m: complex(c) for m, c in terms.items() if abs(c) >= ZERO_TOLERANCE}


@dataclass(frozen=True)
class SpherePolynomial:
    """Immutable sparse polynomial on S².

    Attributes:
        terms: Monomial exponent triple → coefficient. Coefficients below
            ``ZERO_TOLERANCE`` in magnitude are dropped on construction.
        max_degree: Configured total-degree cap.
    """

    terms: Mapping[Monomial, complex] = field(default_factory=dict)
    max_degree: int = DEFAULT_MAX_DEGREE

    def __post_init__(self) -> None:
        """Prune tiny coefficients and enforce the degree cap."""
        pruned = _prune(self.terms)
        for a, b, c in pruned:
            if min(a, b, c) < 0:
                raise PolynomialError(f"Negative exponent in monomial {(a, b, c)}")
            if a + b + c > self.max_degree:
                raise PolynomialError(
                    f"Monomial x^{a} y^{b} z^{c} exceeds the degree cap {self.max_degree}; "
                    "raise max_degree in the configuration"
                )
        object.__setattr__(self, "terms", pruned)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def constant(cls, value: complex) -> SpherePolynomial:
        """The constant polynomial ``value``."""
        return cls({(0, 0, 0): value})

    @classmethod
    def coordinate(cls, axis: str) -> SpherePolynomial:
        """One of the coordinate functions ``x``, ``y`` or ``z``."""
        if axis not in _AXES:
            raise PolynomialError(f"Unknown coordinate '{axis}'")
        return cls({_UNIT[_AXES.index(axis)]: 1.0})

    @classmethod
    def parse(cls, text: str) -> SpherePolynomial:
        """Parse the plain-text polynomial format."""
        return _Parser(text).parse()

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree (0 for the zero polynomial)."""
        return max((sum(m) for m in self.terms), default=0)

    @property
    def canonical(self) -> bool:
        """Whether every monomial has z-exponent at most 1."""
        return all(c <= 1 for _, _, c in self.terms)

    @property
    def is_real(self) -> bool:
        """Whether all coefficients are real within ``ZERO_TOLERANCE``."""
        return all(abs(c.imag) <= ZERO_TOLERANCE for c in self.terms.values())

    @property
    def is_zero(self) -> bool:
        """Whether no term survives pruning."""
        return not self.terms

    @property
    def scale(self) -> float:
        """Largest coefficient magnitude."""
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def coefficient(self, monomial: Monomial) -> complex:
        """Coefficient of ``monomial`` (0 when absent)."""
        return self.terms.get(monomial, 0j)

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def _combine(self, terms: dict[Monomial, complex]) -> SpherePolynomial:
        return SpherePolynomial(terms, max_degree=self.max_degree)

    def __add__(self, other: SpherePolynomial | complex) -> SpherePolynomial:
        other = _as_polynomial(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0j) + c
        return self._combine(out)

    __radd__ = __add__

    def __neg__(self) -> SpherePolynomial:
        return self._combine({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: SpherePolynomial | complex) -> SpherePolynomial:
        return self + (-_as_polynomial(other))

    def __rsub__(self, other: complex) -> SpherePolynomial:
        return _as_polynomial(other) - self

    def __mul__(self, other: SpherePolynomial | complex) -> SpherePolynomial:
        if not isinstance(other, SpherePolynomial):
            return self._combine({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, complex] = {}
        for (a1, b1, c1), v1 in self.terms.items():
            for (a2, b2, c2), v2 in other.terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                out[key] = out.get(key, 0j) + v1 * v2
        return self._combine(out)

    __rmul__ = __mul__

    def __truediv__(self, other: complex) -> SpherePolynomial:
        return self * (1.0 / other)

    def __pow__(self, exponent: int) -> SpherePolynomial:
        if exponent < 0:
            raise PolynomialError("Negative powers are not polynomials")
        result = SpherePolynomial.constant(1.0)
        for _ in range(exponent):
            result = result * self
        return result

    def conj(self) -> SpherePolynomial:
        """Complex conjugate (coefficientwise, the coordinates are real)."""
        return self._combine({m: c.conjugate() for m, c in self.terms.items()})

    def real(self) -> SpherePolynomial:
        """Real part of the coefficients."""
        return self._combine({m: c.real for m, c in self.terms.items()})

    def reduce(self) -> SpherePolynomial:
        """Canonical representative modulo the sphere relation."""
        return reduce_mod_sphere(self)

    def derivative(self, axis: int) -> SpherePolynomial:
        """Ambient partial derivative along axis 0, 1 or 2."""
        out: dict[Monomial, complex] = {}
        for m, c in self.terms.items():
            if m[axis] == 0:
                continue
            lowered = list(m)
            lowered[axis] -= 1
            key = (lowered[0], lowered[1], lowered[2])
            out[key] = out.get(key, 0j) + c * m[axis]
        return self._combine(out)

    def gradient(self) -> tuple[SpherePolynomial, SpherePolynomial, SpherePolynomial]:
        """Ambient gradient (∂x, ∂y, ∂z)."""
        return self.derivative(0), self.derivative(1), self.derivative(2)

    def allclose(self, other: SpherePolynomial, tol: float = 1e-12) -> bool:
        """Coefficientwise comparison of canonical forms."""
        diff = reduce_mod_sphere(self - other)
        return all(abs(c) <= tol for c in diff.terms.values())

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def evaluate_xyz(self, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at ambient coordinates.

        Returns:
            A real array when the polynomial is real, complex otherwise.
        """
        x, y, z = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float), np.asarray(z, float))
        real = self.is_real
        out = np.zeros(x.shape, dtype=float if real else complex)
        for (a, b, c), coef in self.terms.items():
            term = np.ones(x.shape)
            if a:
                term = term * x**a
            if b:
                term = term * y**b
            if c:
                term = term * z**c
            out += (coef.real if real else coef) * term
        return out

    def __call__(self, point: SpherePoint) -> complex:
        return evaluate(self, point)

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        """Render in the plain-text format (``repr`` precision, round-trips)."""
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for mono in sorted(self.terms, key=lambda m: (-sum(m), -m[0], -m[1], -m[2])):
            coef = self.terms[mono]
            factors = " ".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(_AXES, mono) if e > 0
            )
            if abs(coef.imag) > ZERO_TOLERANCE:
                body = f"({coef.real!r}{coef.imag:+}j)"
                sign = "+"
            else:
                value = coef.real
                sign = "-" if value < 0 else "+"
                magnitude = abs(value)
                body = "" if magnitude == 1.0 and factors else repr(magnitude)
            term = " ".join(p for p in (body, factors) if p)
            if not pieces:
                pieces.append(term if sign == "+" else f"-{term}")
            else:
                pieces.append(f"{sign} {term}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()


def _as_polynomial(value: SpherePolynomial | complex) -> SpherePolynomial:
    if isinstance(value, SpherePolynomial):
        return value
    return SpherePolynomial.constant(value)


# ----------------------------------------------------------------------
# Reduction, evaluation and brackets
# ----------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _reduced_monomial(a: int, b: int, c: int) -> tuple[tuple[Monomial, int], ...]:
    """Integer expansion of x^a y^b z^c with every z² replaced by 1 − x² − y²."""
    if c <= 1:
        return (((a, b, c), 1),)
    out: dict[Monomial, int] = {}
    for (mono, sign) in (((a, b, c - 2), 1), ((a + 2, b, c - 2), -1), ((a, b + 2, c - 2), -1)):
        for key, coef in _reduced_monomial(*mono):
            out[key] = out.get(key, 0) + sign * coef
    return tuple((k, v) for k, v in out.items() if v != 0)


def reduce_mod_sphere(p: SpherePolynomial) -> SpherePolynomial:
    """Canonical representative of ``p`` on S² (no monomial with z-exponent ≥ 2).

    Args:
        p: Any polynomial.

    Returns:
        A canonical polynomial agreeing with ``p`` at every point of S².
    """
    if p.canonical:
        return p
    out: dict[Monomial, complex] = {}
    for (a, b, c), coef in p.terms.items():
        for key, weight in _reduced_monomial(a, b, c):
            out[key] = out.get(key, 0j) + coef * weight
    return SpherePolynomial(out, max_degree=p.max_degree)


def evaluate(p: SpherePolynomial, point: SpherePoint) -> complex:
    """Value of ``p`` at the Cartesian coordinates of ``point``."""
    x, y, z = point.x, point.y, point.z
    return complex(sum(c * x**a * y**b * z**e for (a, b, e), c in p.terms.items()))


def poisson_bracket(f: SpherePolynomial, g: SpherePolynomial) -> SpherePolynomial:
    """Sphere Poisson bracket ``{f, g} = Σ ε_abc x_c ∂_a f ∂_b g = x · (∇f × ∇g)``.

    Ambient gradients are used, which is legitimate because the bracket is
    tangential: adding a multiple of ``x² + y² + z² − 1`` to ``f`` changes it
    only off the sphere.

    Args:
        f: First polynomial.
        g: Second polynomial.

    Returns:
        The canonical form of the bracket.
    """
    df = f.gradient()
    dg = g.gradient()
    coords = [SpherePolynomial.coordinate(a) for a in _AXES]
    total = SpherePolynomial(max_degree=max(f.max_degree, g.max_degree))
    # (∇f × ∇g)_c for c = x, y, z
    for c, (a, b) in enumerate(((1, 2), (2, 0), (0, 1))):
        cross = df[a] * dg[b] - df[b] * dg[a]
        total = total + coords[c] * cross
    return reduce_mod_sphere(total)


def canonical_monomials(max_degree: int) -> list[Monomial]:
    """All canonical monomials (z-exponent ≤ 1) up to ``max_degree``, by degree."""
    out: list[Monomial] = []
    for d in range(max_degree + 1):
        for c in (0, 1):
            for a in range(d - c, -1, -1):
                b = d - c - a
                if b >= 0:
                    out.append((a, b, c))
    return out


def random_polynomial(
    rng: np.random.Generator,
    degree: int,
    complex_coefficients: bool = False,
) -> SpherePolynomial:
    """Canonical polynomial with standard-normal coefficients on every canonical monomial.

    Args:
        rng: Seeded numpy generator.
        degree: Maximal total degree.
        complex_coefficients: Draw independent real and imaginary parts.

    Returns:
        A canonical random polynomial.
    """
    monos = canonical_monomials(degree)
    coefs = rng.standard_normal(len(monos))
    if complex_coefficients:
        coefs = coefs + 1j * rng.standard_normal(len(monos))
    return SpherePolynomial(dict(zip(monos, coefs)))


def as_polynomials(items: Iterable[str | SpherePolynomial]) -> list[SpherePolynomial]:
    """Parse strings, pass polynomials through."""
    return [SpherePolynomial.parse(i) if isinstance(i, str) else i for i in items]


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<cplx>\([^()]*\))"
    r"|(?P<var>[xyz])"
    r"|(?P<op>[+\-*^])"
)


class _Parser:
    """Recursive-descent parser for signed sums of monomial terms."""

    def __init__(self, text: str) -> None:
        self.text = text
        compact = re.sub(r"\s+", "", text)
        if not compact:
            raise PolynomialError("Empty polynomial text")
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        while pos < len(compact):
            match = _TOKEN.match(compact, pos)
            if match is None:
                raise PolynomialError(f"Unexpected character {compact[pos]!r} in polynomial '{text}'")
            kind = match.lastgroup or ""
            self.tokens.append((kind, match.group()))
            pos = match.end()
        self.index = 0

    def _peek(self) -> tuple[str, str] | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _next(self) -> tuple[str, str]:
        token = self._peek()
        if token is None:
            raise PolynomialError(f"Unexpected end of polynomial '{self.text}'")
        self.index += 1
        return token

    def parse(self) -> SpherePolynomial:
        terms: dict[Monomial, complex] = {}
        sign = 1.0
        token = self._peek()
        if token is not None and token[0] == "op" and token[1] in "+-":
            sign = -1.0 if self._next()[1] == "-" else 1.0
        while True:
            coef, mono = self._term()
            terms[mono] = terms.get(mono, 0j) + sign * coef
            token = self._peek()
            if token is None:
                break
            if token[0] != "op" or token[1] not in "+-":
                raise PolynomialError(f"Expected '+' or '-' in polynomial '{self.text}', got {token[1]!r}")
            sign = -1.0 if self._next()[1] == "-" else 1.0
        return SpherePolynomial(terms)

    def _term(self) -> tuple[complex, Monomial]:
        coef: complex = 1.0
        exps = [0, 0, 0]
        seen = False
        while True:
            token = self._peek()
            if token is None or (token[0] == "op" and token[1] in "+-"):
                break
            kind, value = self._next()
            if kind == "op" and value == "*":
                continue
            if kind == "num":
                coef *= float(value)
            elif kind == "cplx":
                try:
                    coef *= complex(value[1:-1])
                except ValueError as exc:
                    raise PolynomialError(f"Bad complex coefficient {value!r}") from exc
            elif kind == "var":
                power = 1
                nxt = self._peek()
                if nxt is not None and nxt == ("op", "^"):
                    self._next()
                    kind_e, exponent = self._next()
                    if kind_e != "num" or not exponent.isdigit():
                        raise PolynomialError(f"Exponent must be a non-negative integer, got {exponent!r}")
                    power = int(exponent)
                exps[_AXES.index(value)] += power
            else:
                raise PolynomialError(f"Unexpected token {value!r} in polynomial '{self.text}'")
            seen = True
        if not seen:
            raise PolynomialError(f"Empty term in polynomial '{self.text}'")
        return coef, (exps[0], exps[1], exps[2])