"""Frequency-dependent coefficients and phase-lag evaluators for the
two-step hybrid family.

The family advances y'' = f(x, y) on a uniform grid through an off-grid
stage built from second-derivative differences:

    ybar_n = y_n - a0 * h^2 * (y''_{n+1} - 2 y''_n + y''_{n-1})
    y_{n+1} + c1 y_n + y_{n-1}
        = h^2 * [ b0 * (y''_{n+1} + y''_{n-1}) + b1 * f(x_n, ybar_n) ]

Applied to the oscillatory test equation y'' = -omega^2 y the scheme
reduces to A1(H) y_{n+1} + A0(H) y_n + A1(H) y_{n-1} = 0 with H = omega*h,

    A1(H) = 1 + H^2 b0 + H^4 b1 a0
    A0(H) = c1 + H^2 b1 - 2 H^4 b1 a0

and the phase lag is phl(H) = (2 A1 cos H + A0) / (2 A1).

Members
-------
NUMEROV : constant coefficients (a0, b0, b1, c1) = (0, 1/12, 10/12, -2);
    fourth algebraic order, nonzero phase lag.
PL1..PL4 : at every H the free coefficients are chosen so that the phase
    lag and its first n-1 derivatives with respect to the explicit H
    occurrences vanish.  Coefficients not solved for keep their fixed
    values (PL1/PL2: b0 = 1/12, b1 = 5/6, plus c1 = -2 for PL1;
    PL3: b0 = 1/12).  All members are sixth algebraic order.

The closed-form coefficient expressions suffer catastrophic cancellation
as H -> 0; below ``H_SWITCH`` the evaluation falls back to Taylor
expansions carried through H^16, whose truncation error at the switch
point is below 1e-18.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

__all__ = [
    "MethodId",
    "CoefficientSet",
    "CharacteristicPair",
    "coefficients",
    "characteristic_pair",
    "phase_lag",
    "phase_lag_derivative",
    "H_SWITCH",
]

# Below this H the Taylor expansions are used instead of the closed forms.
H_SWITCH = 0.1

# A closed-form quotient num/den is rejected when |den| falls below this
# floor relative to the numerator scale (evaluation too near a pole).
_DENOM_FLOOR = 1e-12


class MethodId(str, Enum):
    """Selects one member of the integrator family."""

    NUMEROV = "numerov"
    PL1 = "pl1"
    PL2 = "pl2"
    PL3 = "pl3"
    PL4 = "pl4"

    @property
    def annihilation_order(self) -> int:
        """Number of vanishing quantities: phase lag plus n-1 derivatives."""
        return 0 if self is MethodId.NUMEROV else int(self.value[2])

    @classmethod
    def parse(cls, name: str) -> "MethodId":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown method {name!r} (expected one of: {valid})")


PL_METHODS = (MethodId.PL1, MethodId.PL2, MethodId.PL3, MethodId.PL4)
ALL_METHODS = (MethodId.NUMEROV,) + PL_METHODS


@dataclass(frozen=True)
class CoefficientSet:
    """The quadruple (a0, b0, b1, c1) evaluated at a given H = omega*h."""

    a0: float
    b0: float
    b1: float
    c1: float
    h_arg: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a0, self.b0, self.b1, self.c1)


@dataclass(frozen=True)
class CharacteristicPair:
    """Coefficients of the symmetric characteristic equation
    A1 lambda^2 + A0 lambda + A1 = 0."""

    A0: float
    A1: float


def _div(num: float, den: float, what: str, H: float) -> float:
    if abs(den) < _DENOM_FLOOR * max(1.0, abs(num)):
        raise DomainError(f"{what}: closed form evaluated too near a pole at H={H!r}")
    return num / den


# ---------------------------------------------------------------------------
# Closed-form coefficient engines.  Each returns (a0, b0, b1, c1).
# ---------------------------------------------------------------------------

def _pl1_closed(H: float) -> tuple[float, float, float, float]:
    c = math.cos(H)
    a0 = _div(-12.0 * c - c * H**2 + 12.0 - 5.0 * H**2,
              10.0 * c * H**4 - 10.0 * H**4, "pl1 a0", H)
    return a0, 1.0 / 12.0, 5.0 / 6.0, -2.0


def _pl2_closed(H: float) -> tuple[float, float, float, float]:
    c, s = math.cos(H), math.sin(H)
    c2 = math.cos(2.0 * H)
    a0 = _div(-s * H**2 + 10.0 * H + 2.0 * c * H - 12.0 * s,
              10.0 * s * H**4 - 40.0 * c * H**3 + 40.0 * H**3, "pl2 a0", H)
    c1 = _div(24.0 * c2 + 24.0 - 48.0 * c + H**2 * c2 - 9.0 * H**2
              + 8.0 * c * H**2 - 6.0 * H**3 * s - 12.0 * s * H,
              6.0 * s * H - 24.0 * c + 24.0, "pl2 c1", H)
    return a0, 1.0 / 12.0, 5.0 / 6.0, c1


def _pl3_closed(H: float) -> tuple[float, float, float, float]:
    c, s = math.cos(H), math.sin(H)
    # Shared bracket: numerator of b1 (up to factor) and denominator of a0.
    r = (c * c * H**3 + 16.0 * c * c * H + 5.0 * c * H**2 * s + 72.0 * c * s
         + 2.0 * c * H**3 + 32.0 * c * H + 2.0 * s * H**2
         - 48.0 * H - 2.0 * H**3 - 72.0 * s)
    q = c * H**2 + 7.0 * s * H + 8.0 - 8.0 * c
    a0 = 0.5 * _div(c * H**3 + 12.0 * c * H - 12.0 * s + 3.0 * s * H**2,
                    r * H**2, "pl3 a0", H)
    c1 = (1.0 / 6.0) * _div(
        24.0 * c * c * H**2 + c * c * H**4 + 96.0 * c * c + c * s * H**3
        + 12.0 * c * H**2 - 24.0 * c * s * H - 96.0 * c + c * H**4
        - s * H**3 - 2.0 * H**4 - 60.0 * s * H - 48.0 * H**2,
        q, "pl3 c1", H)
    b1 = -(1.0 / 6.0) * _div(r, H * q, "pl3 b1", H)
    return a0, 1.0 / 12.0, b1, c1


def _pl4_closed(H: float) -> tuple[float, float, float, float]:
    c, s = math.cos(H), math.sin(H)
    # Shared bracket: numerator of b1 (up to factor) and denominator of a0.
    r = (6.0 * c**3 * H + 6.0 * s * c * c - 2.0 * c * c * H**2 * s
         + c * c * H**3 + 3.0 * c * c * H - 6.0 * c * s - 4.0 * c * H**2 * s
         - 12.0 * c * H + 2.0 * H**3 + 3.0 * H + 12.0 * s * H**2)
    q = (c * c * H**3 - 21.0 * c * c * H + 8.0 * c * H**2 * s - 12.0 * c * H
         - 12.0 * c * s + 4.0 * s * H**2 + 33.0 * H + 12.0 * s + 2.0 * H**3)
    a0 = 0.25 * _div(3.0 * c * c + c * c * H**2 + 2.0 * H**2 - 3.0,
                     r * H, "pl4 a0", H)
    c1 = -2.0 * _div(
        -12.0 * c**3 * H + c * c * H**3 - 21.0 * c * c * H - 12.0 * s * c * c
        - 4.0 * c * c * H**2 * s + 12.0 * c * s - 8.0 * c * H**2 * s
        + 24.0 * c * H + 2.0 * H**3 + 9.0 * H + 24.0 * s * H**2,
        q, "pl4 c1", H)
    b0 = -2.0 * _div(
        3.0 * c * c * H + c * c * H**3 + 6.0 * c * s + 4.0 * c * H**2 * s
        + 6.0 * c * H + 2.0 * s * H**2 - 9.0 * H - 6.0 * s + 2.0 * H**3,
        q * H**2, "pl4 b0", H)
    b1 = 4.0 * _div(r, q * H**2, "pl4 b1", H)
    return a0, b0, b1, c1


_CLOSED = {
    MethodId.PL1: _pl1_closed,
    MethodId.PL2: _pl2_closed,
    MethodId.PL3: _pl3_closed,
    MethodId.PL4: _pl4_closed,
}

# ---------------------------------------------------------------------------
# Taylor expansions through H^16 (used for |H| < H_SWITCH).  Each entry is a
# tuple of (power, coefficient) pairs; integer ratios keep full precision.
# ---------------------------------------------------------------------------

_SERIES: dict[MethodId, dict[str, tuple[tuple[int, float], ...]]] = {
    MethodId.PL1: {
        "a0": ((0, 1 / 200), (2, 1 / 5040), (4, 1 / 144000), (6, 1 / 4435200),
               (8, 691 / 99066240000), (10, 1 / 4790016000),
               (12, 3617 / 592812380160000),
               (14, 43867 / 250445794959360000),
               (16, 174611 / 35213055381504000000)),
        "b0": ((0, 1 / 12),),
        "b1": ((0, 5 / 6),),
        "c1": ((0, -2.0),),
    },
    MethodId.PL2: {
        "a0": ((0, 1 / 200), (2, 1 / 3780), (4, 73 / 5443200),
               (6, 509 / 769824000), (8, 2833543 / 88268019840000),
               (10, 4912333 / 3177648714240000),
               (12, 288303913 / 3889442026229760000),
               (14, 165095552521 / 46556621053970227200000),
               (16, 15619496804053 / 92182109686861049856000000)),
        "b0": ((0, 1 / 12),),
        "b1": ((0, 5 / 6),),
        "c1": ((0, -2.0), (8, 1 / 18144), (10, 13 / 16329600),
               (12, 31 / 461894400), (14, 308851 / 105921623808000),
               (16, 537907 / 3813178457088000)),
    },
    MethodId.PL3: {
        "a0": ((0, 1 / 200), (2, 1 / 2520), (4, 31 / 907200),
               (6, 1229 / 1197504000), (8, 18427 / 980755776000),
               (10, -669341 / 98075577600000),
               (12, -13764419 / 25184162304000000),
               (14, -281298850211 / 5747730994317312000000),
               (16, -161773544323 / 103459157897711616000000)),
        "b0": ((0, 1 / 12),),
        "b1": ((0, 5 / 6), (6, 1 / 3024), (8, 11 / 725760),
               (10, 2353 / 1437004800), (12, 186533 / 1307674368000),
               (14, 112457 / 8826801984000),
               (16, 1635421 / 1440534083788800)),
        "c1": ((0, -2.0), (8, -1 / 6048), (10, -17 / 2721600),
               (12, -43 / 57480192), (14, -1515133 / 23538138624000),
               (16, -25819 / 4483454976000)),
    },
    MethodId.PL4: {
        "a0": ((0, 1 / 200), (2, 1 / 1260), (4, 29 / 504000),
               (6, 1433 / 1164240000), (8, -63101 / 363242880000),
               (10, -2228861 / 127135008000000),
               (12, -8804897 / 77806624896000000),
               (14, 240953700049 / 2048959660011264000000),
               (16, 9699610781879 / 819583864004505600000000)),
        "b0": ((0, 1 / 12), (4, -1 / 1008), (6, -31 / 181440),
               (8, -221 / 13685760), (10, -619 / 1345344000),
               (12, 25031 / 174356582400),
               (14, 84256583 / 2667655710720000),
               (16, 1030007057 / 290289444157440000)),
        "b1": ((0, 5 / 6), (4, 1 / 504), (6, -29 / 90720),
               (8, -3271 / 47900160), (10, -35293 / 4540536000),
               (12, -36019 / 87178291200),
               (14, 47333617 / 1333827855360000),
               (16, 294008389 / 24562952967168000)),
        "c1": ((0, -2.0), (8, 1 / 6048), (10, 1 / 43200), (12, 1 / 532224),
               (14, 41 / 5943974400), (16, -601 / 24141680640)),
    },
}


def _series_eval(terms: tuple[tuple[int, float], ...], H: float) -> float:
    return math.fsum(coef * H**power for power, coef in terms)


def _pl_series(method: MethodId, H: float) -> tuple[float, float, float, float]:
    tbl = _SERIES[method]
    return (_series_eval(tbl["a0"], H), _series_eval(tbl["b0"], H),
            _series_eval(tbl["b1"], H), _series_eval(tbl["c1"], H))


def coefficients(method: MethodId, H: float, mode: str = "auto") -> CoefficientSet:
    """Evaluate the coefficient quadruple of ``method`` at H = omega*h.

    Parameters
    ----------
    method : MethodId
    H : float
        Non-negative, finite fitting argument.
    mode : {"auto", "closed", "series"}
        "auto" uses the Taylor expansions for H < H_SWITCH and the closed
        forms above; "closed"/"series" force one route (testing hook).

    Raises
    ------
    DomainError
        When a closed-form denominator is below the pole floor.
    ValueError
        On negative or non-finite H, or an unknown mode.
    """
    if not math.isfinite(H) or H < 0.0:
        raise ValueError(f"H must be finite and non-negative, got {H!r}")
    if method is MethodId.NUMEROV:
        return CoefficientSet(0.0, 1.0 / 12.0, 10.0 / 12.0, -2.0, H)
    if mode == "auto":
        mode = "series" if H < H_SWITCH else "closed"
    if mode == "series":
        a0, b0, b1, c1 = _pl_series(method, H)
    elif mode == "closed":
        if H == 0.0:
            raise DomainError(f"{method.value}: closed forms are indeterminate at H=0")
        a0, b0, b1, c1 = _CLOSED[method](H)
    else:
        raise ValueError(f"unknown coefficient mode {mode!r}")
    return CoefficientSet(a0, b0, b1, c1, H)


def characteristic_pair(coeffs: CoefficientSet, H: float) -> CharacteristicPair:
    """Build (A0, A1) of the test-equation difference scheme from ``coeffs``
    evaluated at argument ``H`` (which need not equal ``coeffs.h_arg``)."""
    a0, b0, b1, c1 = coeffs.as_tuple()
    H2 = H * H
    H4 = H2 * H2
    A1 = 1.0 + H2 * b0 + H4 * b1 * a0
    A0 = c1 + H2 * b1 - 2.0 * H4 * b1 * a0
    return CharacteristicPair(A0=A0, A1=A1)


def phase_lag(coeffs: CoefficientSet, H: float) -> float:
    """Phase lag (2 A1 cos H + A0) / (2 A1) of the scheme defined by
    ``coeffs`` on the test equation with argument ``H``.

    For a PL member evaluated at its own fitting argument this vanishes to
    rounding level by construction.
    """
    pair = characteristic_pair(coeffs, H)
    a0, b0, b1, _ = coeffs.as_tuple()
    scale = 1.0 + abs(H * H * b0) + abs(H**4 * b1 * a0)
    if abs(pair.A1) < _DENOM_FLOOR * scale:
        raise DomainError(f"phase lag undefined: A1 vanishes near H={H!r}")
    return (2.0 * pair.A1 * math.cos(H) + pair.A0) / (2.0 * pair.A1)


def phase_lag_derivative(method: MethodId, H: float, order: int) -> float:
    """Closed-form derivative of the phase lag with respect to its explicit
    H occurrences, of the given ``order`` (1..3), with the coefficients
    frozen at their values for ``method`` at ``H``.

    For PL(n) the orders 1..n-1 vanish at the method's own H by
    construction; higher orders are generally nonzero.
    """
    if order not in (1, 2, 3):
        raise ValueError(f"order must be 1, 2 or 3, got {order!r}")
    a0, b0, b1, c1 = coefficients(method, H).as_tuple()
    c, s = math.cos(H), math.sin(H)
    A1 = 1.0 + H**2 * b0 + H**4 * b1 * a0
    scale = 1.0 + abs(H**2 * b0) + abs(H**4 * b1 * a0)
    if abs(A1) < _DENOM_FLOOR * scale:
        raise DomainError(f"phase-lag derivative undefined near A1=0 at H={H!r}")
    # Recurring building blocks: A1, its H-derivatives, and the numerator
    # 2 A1 cos H + A0 of the phase lag itself.
    dA1 = 2.0 * H * b0 + 4.0 * H**3 * b1 * a0
    ddA1 = 2.0 * b0 + 12.0 * b1 * a0 * H**2
    num = 2.0 * A1 * c + c1 + H**2 * b1 - 2.0 * H**4 * b1 * a0
    dA0 = 2.0 * H * b1 - 8.0 * H**3 * b1 * a0
    if order == 1:
        return (0.5 * (2.0 * dA1 * c - 2.0 * A1 * s + dA0) / A1
                - 0.5 * num * dA1 / A1**2)
    if order == 2:
        ddA0 = 2.0 * b1 - 24.0 * b1 * a0 * H**2
        return (0.5 * (2.0 * ddA1 * c - 4.0 * dA1 * s - 2.0 * A1 * c + ddA0) / A1
                - (2.0 * dA1 * c - 2.0 * A1 * s + dA0) * dA1 / A1**2
                + num * dA1**2 / A1**3
                - 0.5 * num * ddA1 / A1**2)
    dddA0 = -48.0 * b1 * a0 * H
    dddA1 = 24.0 * b1 * a0 * H
    return (0.5 * (2.0 * dddA1 * c - 6.0 * ddA1 * s - 6.0 * dA1 * c
                   + 2.0 * A1 * s + dddA0) / A1
            - 1.5 * (2.0 * ddA1 * c - 4.0 * dA1 * s - 2.0 * A1 * c
                     + 2.0 * b1 - 24.0 * b1 * a0 * H**2) * dA1 / A1**2
            + 3.0 * (2.0 * dA1 * c - 2.0 * A1 * s + dA0) * dA1**2 / A1**3
            - 1.5 * (2.0 * dA1 * c - 2.0 * A1 * s + dA0) * ddA1 / A1**2
            - 3.0 * num * dA1**3 / A1**4
            + 3.0 * num * dA1 * ddA1 / A1**3
            - 12.0 * num * b1 * a0 * H / A1**2)
