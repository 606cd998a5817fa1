"""Truncated power series over exact rationals, plus the expansions they feed.

Everything here is exact: coefficients are `fractions.Fraction` (or elements
of a small extension ring carrying the two initial-heading symbols cos0/sin0,
see :class:`HeadingScalar`).  A series of order N stores coefficients c0..cN
of sum(c_i t^i); arithmetic truncates at N and never silently extends it.

The module rederives, by series arithmetic alone, the ladder of expansions
used by the squared-distance computation for a unit-speed horizontal curve
with polynomial heading:

* `psi_series` / `phi_series` -- the monotone map u -> (2u - sin 2u)/(8 sin^2 u)
  and its compositional inverse,
* `inv_sinc2_phi_series` -- 1/sinc^2 composed with that inverse,
* `curve_series` / `xy_sq_series` -- the coordinate expansions of the curve,
* `distance_sq_series` -- the squared distance from the start point, whose
  t^6 coefficient is -(theta''(0))^2/720.

No expansion coefficient beyond the defining formulas is hand-entered.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "HeadingScalar",
    "PowerSeries",
    "sin_series",
    "cos_series",
    "sinc_series",
    "psi_series",
    "phi_series",
    "inv_sinc2_phi_series",
    "curve_series",
    "xy_sq_series",
    "z_series",
    "distance_sq_series",
    "DEFAULT_ORDER",
]

#: one order beyond the O(t^7) remainder of the squared-distance expansion,
#: so the t^6 coefficient is cleanly isolated
DEFAULT_ORDER = 8

RationalLike = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected (int or Fraction), got {type(x).__name__}")


class HeadingScalar:
    """Element of Q[cos0, sin0] / (cos0^2 + sin0^2 - 1).

    The initial heading of a curve enters its coordinate series only through
    cos(theta(0)) and sin(theta(0)).  Keeping those two values symbolic lets
    the series stay exact for irrational headings, and makes "the heading
    cancels" a checkable property (`is_rational`).  Monomials are reduced so
    the cos0 exponent is 0 or 1, via cos0^2 = 1 - sin0^2.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        # terms: dict {(cos_exp, sin_exp): Fraction}, cos_exp in {0, 1}
        self._terms = {} if terms is None else terms

    # -- construction -------------------------------------------------

    @classmethod
    def of(cls, x) -> "HeadingScalar":
        if isinstance(x, HeadingScalar):
            return x
        f = _as_fraction(x)
        return cls({(0, 0): f} if f else {})

    @classmethod
    def cos0(cls) -> "HeadingScalar":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def sin0(cls) -> "HeadingScalar":
        return cls({(0, 1): Fraction(1)})

    @classmethod
    def _from_raw(cls, raw) -> "HeadingScalar":
        # reduce cos0^a with a >= 2 and drop zero coefficients
        out = {}
        stack = list(raw.items())
        while stack:
            (a, b), v = stack.pop()
            if not v:
                continue
            if a >= 2:
                # cos0^2 = 1 - sin0^2
                stack.append(((a - 2, b), v))
                stack.append(((a - 2, b + 2), -v))
                continue
            key = (a, b)
            w = out.get(key, Fraction(0)) + v
            if w:
                out[key] = w
            elif key in out:
                del out[key]
        return cls(out)

    # -- predicates ----------------------------------------------------

    def is_rational(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def rational_value(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"heading symbols did not cancel: {self!r}")
        return self._terms[(0, 0)]

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = HeadingScalar.of(other)
        raw = dict(self._terms)
        for k, v in other._terms.items():
            raw[k] = raw.get(k, Fraction(0)) + v
        return HeadingScalar._from_raw(raw)

    __radd__ = __add__

    def __neg__(self):
        return HeadingScalar({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-HeadingScalar.of(other))

    def __rsub__(self, other):
        return HeadingScalar.of(other) + (-self)

    def __mul__(self, other):
        other = HeadingScalar.of(other)
        raw = {}
        for (a1, b1), v1 in self._terms.items():
            for (a2, b2), v2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                raw[key] = raw.get(key, Fraction(0)) + v1 * v2
        return HeadingScalar._from_raw(raw)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by rational values is ever needed
        q = HeadingScalar.of(other).rational_value()
        if not q:
            raise ZeroDivisionError("division of heading scalar by zero")
        return HeadingScalar({k: v / q for k, v in self._terms.items()})

    def __eq__(self, other):
        try:
            other = HeadingScalar.of(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "0"
        bits = []
        for (a, b), v in sorted(self._terms.items()):
            sym = "cos0" * a + ("" if not b else f"sin0^{b}" if b > 1 else "sin0")
            bits.append(f"{v}*{sym}" if sym else str(v))
        return " + ".join(bits)


def _coeff_zero(sample):
    """Additive zero of the coefficient type of `sample`."""
    if isinstance(sample, HeadingScalar):
        return HeadingScalar()
    return Fraction(0)


class PowerSeries:
    """Univariate series sum(c_i t^i) truncated at a fixed order N.

    Coefficients are exact (Fraction or HeadingScalar).  Binary arithmetic
    requires equal orders; composition requires the inner series to have a
    vanishing constant term; reversion is by undetermined coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = []
        for c in coeffs:
            if isinstance(c, HeadingScalar):
                cs.append(c)
            else:
                cs.append(_as_fraction(c))
        if not cs:
            raise ValueError("a series needs at least its constant term")
        self.coeffs = tuple(cs)

    # -- basics ----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([Fraction(0)] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([Fraction(1)] + [Fraction(0)] * order)

    @classmethod
    def identity(cls, order: int) -> "PowerSeries":
        if order < 1:
            raise ValueError("identity series needs order >= 1")
        c = [Fraction(0)] * (order + 1)
        c[1] = Fraction(1)
        return cls(c)

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PowerSeries({list(self.coeffs)!r})"

    def _check_order(self, other: "PowerSeries"):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check_order(other)
        return PowerSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        self._check_order(other)
        return PowerSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-a for a in self.coeffs])

    def __mul__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            self._check_order(other)
            n = self.order
            zero = _coeff_zero(self.coeffs[0])
            out = [zero] * (n + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j in range(0, n - i + 1):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
            return PowerSeries(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, k) -> "PowerSeries":
        return PowerSeries([c * k for c in self.coeffs])

    def __truediv__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            # scalar division
            return PowerSeries([c / other for c in self.coeffs])
        self._check_order(other)
        if not other.coeffs[0]:
            raise ZeroDivisionError("series division needs a nonzero constant term")
        n = self.order
        b0 = other.coeffs[0]
        out = [self.coeffs[0] / b0]
        for k in range(1, n + 1):
            acc = self.coeffs[k]
            for i in range(0, k):
                bj = other.coeffs[k - i]
                if bj and out[i]:
                    acc = acc - out[i] * bj
            out.append(acc / b0)
        return PowerSeries(out)

    # -- calculus ----------------------------------------------------------

    def differentiate(self) -> "PowerSeries":
        """Term-by-term derivative; order drops by one."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 series")
        return PowerSeries([i * self.coeffs[i] for i in range(1, self.order + 1)])

    def integrate(self) -> "PowerSeries":
        """Antiderivative vanishing at 0; order grows by one."""
        zero = _coeff_zero(self.coeffs[0])
        return PowerSeries(
            [zero] + [self.coeffs[i] / (i + 1) for i in range(self.order + 1)]
        )

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("truncate cannot extend the order")
        return PowerSeries(self.coeffs[: order + 1])

    def shift_down(self, k: int) -> "PowerSeries":
        """Divide by t^k; the k lowest coefficients must vanish."""
        for i in range(k):
            if self.coeffs[i]:
                raise ValueError(f"t^{i} coefficient nonzero, cannot shift down by {k}")
        return PowerSeries(self.coeffs[k:])

    def shift_up(self, k: int) -> "PowerSeries":
        zero = _coeff_zero(self.coeffs[0])
        return PowerSeries((zero,) * k + self.coeffs)

    # -- composition and reversion ------------------------------------------

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(t)), truncated at this order.  inner(0) must be 0."""
        self._check_order(inner)
        if inner.coeffs[0]:
            raise ValueError("composition needs a vanishing inner constant term")
        n = self.order
        # Horner from the top coefficient down.
        acc = PowerSeries([self.coeffs[n]] + [_coeff_zero(self.coeffs[0])] * n)
        for k in range(n - 1, -1, -1):
            acc = acc * inner
            acc = PowerSeries(
                [acc.coeffs[0] + self.coeffs[k]] + list(acc.coeffs[1:])
            )
        return acc

    def revert(self) -> "PowerSeries":
        """Compositional inverse r with self(r(t)) = t up to the order.

        Requires a vanishing constant term and an invertible linear one.
        Solved coefficient by coefficient against the identity series.
        """
        if self.coeffs[0]:
            raise ValueError("reversion needs a vanishing constant term")
        if not self.coeffs[1]:
            raise ValueError("reversion needs a nonzero linear coefficient")
        n = self.order
        s1 = self.coeffs[1]
        r = [Fraction(0)] * (n + 1)
        r[1] = 1 / s1 if isinstance(s1, Fraction) else HeadingScalar.of(1) / s1
        for k in range(2, n + 1):
            trial = self.compose(PowerSeries(r))
            r[k] = -trial.coeffs[k] / s1
        return PowerSeries(r)

    # -- conversion -----------------------------------------------------------

    def to_rational(self) -> "PowerSeries":
        """Collapse heading-symbol coefficients; fails if symbols survive."""
        out = []
        for c in self.coeffs:
            out.append(c.rational_value() if isinstance(c, HeadingScalar) else c)
        return PowerSeries(out)

    def as_fraction_strings(self) -> list[str]:
        """Coefficients as 'num/den' strings (golden-file / JSON format)."""
        return [
            f"{c.numerator}/{c.denominator}"
            for c in self.to_rational().coeffs
        ]

    def eval_float(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.to_rational().coeffs):
            acc = acc * t + float(c)
        return acc


# -- elementary series -------------------------------------------------------


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def sin_series(order: int, scale: RationalLike = 1) -> PowerSeries:
    """Taylor series of sin(scale * t)."""
    s = _as_fraction(scale)
    cs = [Fraction(0)] * (order + 1)
    for k in range(0, order + 1):
        if k % 2 == 1:
            cs[k] = Fraction((-1) ** ((k - 1) // 2), _factorial(k)) * s**k
    return PowerSeries(cs)


def cos_series(order: int, scale: RationalLike = 1) -> PowerSeries:
    """Taylor series of cos(scale * t)."""
    s = _as_fraction(scale)
    cs = [Fraction(0)] * (order + 1)
    for k in range(0, order + 1):
        if k % 2 == 0:
            cs[k] = Fraction((-1) ** (k // 2), _factorial(k)) * s**k
    return PowerSeries(cs)


def sinc_series(order: int) -> PowerSeries:
    """sin(t)/t, derived from the sine series rather than entered by hand."""
    return sin_series(order + 1).shift_down(1)


def psi_series(order: int) -> PowerSeries:
    """Taylor series at 0 of (2u - sin 2u) / (4 (1 - cos 2u)).

    Obtained by exact series division of the numerator and denominator
    (each shifted down by u^2), so no coefficient is hand-entered.
    Leading behaviour: u/6 + u^3/45 + ...
    """
    if order < 1:
        raise ValueError("psi series needs order >= 1")
    m = order + 2
    num = PowerSeries.identity(m).scale(2) - sin_series(m, scale=2)
    den = (PowerSeries.one(m) - cos_series(m, scale=2)).scale(4)
    return (num.shift_down(2)) / (den.shift_down(2))


def phi_series(order: int) -> PowerSeries:
    """Compositional inverse of `psi_series`: 6u - (144/5) u^3 + ..."""
    return psi_series(order).revert()


def inv_sinc2_phi_series(order: int) -> PowerSeries:
    """1 / sinc^2 composed with the inverse map: 1 + 12 u^2 - (144/5) u^4 + ..."""
    if order < 4:
        raise ValueError("needs order >= 4 to resolve the quartic term")
    s = sinc_series(order).compose(phi_series(order))
    return PowerSeries.one(order) / (s * s)


# -- curve expansions ----------------------------------------------------------


def _heading_poly(theta_coeffs: Sequence[RationalLike]) -> list[Fraction]:
    return [_as_fraction(c) for c in theta_coeffs]


def curve_series(theta_coeffs: Sequence[RationalLike], order: int):
    """Coordinate series (x, y, z) of the unit-speed horizontal curve.

    The curve starts at the origin with heading polynomial
    theta(t) = sum(theta_i t^i); its velocity has frame components
    (cos theta, sin theta).  x and y carry the heading symbols cos0/sin0;
    z is heading-free (the symbols cancel identically) but is returned in
    the extended ring so callers can assert that cancellation.
    """
    if order < 2:
        raise ValueError("curve series needs order >= 2")
    theta = _heading_poly(theta_coeffs)
    n = order

    # sigma = theta - theta(0), as a series of order n-1 (x,y gain one order
    # through integration)
    sig = [Fraction(0)] * n
    for i, c in enumerate(theta[1:], start=1):
        if i <= n - 1:
            sig[i] = c
    sigma = PowerSeries(sig)

    cos_sig = cos_series(n - 1).compose(sigma)
    sin_sig = sin_series(n - 1).compose(sigma)

    c0 = HeadingScalar.cos0()
    s0 = HeadingScalar.sin0()

    def lift(ps: PowerSeries) -> PowerSeries:
        return PowerSeries([HeadingScalar.of(c) for c in ps.coeffs])

    cos_sig = lift(cos_sig)
    sin_sig = lift(sin_sig)

    # angle addition: cos(theta0 + sigma), sin(theta0 + sigma)
    xdot = cos_sig * c0 - sin_sig * s0
    ydot = sin_sig * c0 + cos_sig * s0

    x = xdot.integrate()   # order n
    y = ydot.integrate()

    # zdot = (x ydot - y xdot)/2, needs factors at order n-1
    zdot = (x.truncate(n - 1) * ydot - y.truncate(n - 1) * xdot) / 2
    z = zdot.integrate()   # order n
    return x, y, z


def xy_sq_series(theta_coeffs: Sequence[RationalLike], order: int) -> PowerSeries:
    """Exact series of x^2 + y^2; heading symbols must cancel."""
    if order < 2:
        raise ValueError("needs order >= 2")
    x, y, _ = curve_series(theta_coeffs, order)
    return (x * x + y * y).to_rational()


def z_series(theta_coeffs: Sequence[RationalLike], order: int) -> PowerSeries:
    """Exact series of the vertical coordinate; heading-free."""
    _, _, z = curve_series(theta_coeffs, order)
    return z.to_rational()


def distance_sq_series(
    theta_coeffs: Sequence[RationalLike], order: int = DEFAULT_ORDER
) -> PowerSeries:
    """Exact series of the squared distance between curve start and curve point.

    Assembles (x^2+y^2) / sinc^2(phi(z/(x^2+y^2))) by exact series arithmetic.
    The quotient z/(x^2+y^2) is formed after shifting numerator and
    denominator down by t^2 (z starts at t^3, x^2+y^2 at t^2), which makes
    the division a legitimate constant-term-1 series division.

    For every heading polynomial the result is t^2 - (theta''(0)^2/720) t^6
    + O(t^7); for affine theta it is exactly t^2.
    """
    if order < 6:
        raise ValueError("needs order >= 6 to resolve the t^6 coefficient")
    x, y, z = curve_series(theta_coeffs, order)
    r2 = (x * x + y * y).to_rational()
    zr = z.to_rational()

    r2_low = r2.shift_down(2)          # constant term 1
    w = zr.shift_down(2) / r2_low      # z/(x^2+y^2), starts at t^1
    w = w.truncate(order - 2)
    g = inv_sinc2_phi_series(order - 2).compose(w)
    return (r2_low.truncate(order - 2) * g).shift_up(2)
