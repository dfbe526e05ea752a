"""Orthogonality, parallelism and the family of angles built from alpha/beta."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import linalg
from .errors import DegenerateOperand, DomainError, NumericalFailure
from .schatten import _Prepared, as_context, schatten_norm

# 1 - |alpha| below this counts as |alpha| = 1
PARALLEL_TOL = 1e-8
# arccos arguments this far outside [-1, 1] are clamped silently
ARCCOS_SLACK = 1e-9

MEAN_KINDS = ("am", "gm", "hm", "qm", "heinz")


@dataclass(frozen=True)
class MeanKind:
    """A two-variable mean.

    ``heinz`` is the normalised Heinz mean
    ``H_t(a, b) = (a^t b^{1-t} + a^{1-t} b^t) / 2``, which interpolates
    between GM (``t = 1/2``) and AM (``t = 0, 1``).
    """

    kind: str = "am"
    t: float = 0.5

    def __post_init__(self):
        k = self.kind.lower()
        if k not in MEAN_KINDS:
            raise DomainError(f"unknown mean {self.kind!r}")
        object.__setattr__(self, "kind", k)
        if k == "heinz" and not 0.0 <= self.t <= 1.0:
            raise DomainError(f"Heinz parameter must lie in [0, 1], got {self.t}")

    @classmethod
    def parse(cls, text: str) -> "MeanKind":
        """Parse ``am``, ``gm``, ``hm``, ``qm`` or ``heinz:t``."""
        name, _, arg = text.strip().lower().partition(":")
        if name == "heinz":
            return cls("heinz", float(arg) if arg else 0.5)
        if arg:
            raise DomainError(f"mean {name!r} takes no parameter")
        return cls(name)

    def label(self) -> str:
        return f"heinz:{self.t:g}" if self.kind == "heinz" else self.kind


def mean_value(m: MeanKind, a: float, b: float) -> float:
    if a < 0 or b < 0:
        raise DomainError("means are defined for non-negative arguments")
    k = m.kind
    if k == "am":
        return 0.5 * (a + b)
    if k == "gm":
        return math.sqrt(a * b)
    if k == "hm":
        if a == 0 or b == 0:
            raise DomainError("harmonic mean needs positive arguments")
        return 2.0 / (1.0 / a + 1.0 / b)
    if k == "qm":
        return math.sqrt(0.5 * (a * a + b * b))
    t = m.t
    return 0.5 * (a**t * b ** (1 - t) + a ** (1 - t) * b**t)


def heinz_unnormalized(a: float, b: float, t: float) -> float:
    """``a^t b^{1-t} + a^{1-t} b^t`` without the 1/2 factor (twice the mean)."""
    return a**t * b ** (1 - t) + a ** (1 - t) * b**t


def safe_arccos(x: float, slack: float = ARCCOS_SLACK) -> float:
    """``arccos`` with round-off clamping; larger excursions are errors."""
    if not np.isfinite(x) or x > 1.0 + slack or x < -1.0 - slack:
        raise NumericalFailure(f"arccos argument {x!r} outside [-1, 1]")
    return math.acos(min(1.0, max(-1.0, x)))


class _Pair:
    """Both semi-inner products of a pair of nonzero operators."""

    def __init__(self, X, Y, ctx):
        self.ctx = as_context(ctx)
        self.X = linalg.as_matrix(X)
        self.Y = linalg.as_matrix(Y)
        px = _Prepared(self.X, self.ctx.p)
        py = _Prepared(self.Y, self.ctx.p)
        self.nx, self.ny = px.norm, py.norm
        self.sip_yx = px.bracket(self.Y)
        self.sip_xy = py.bracket(self.X)
        self.a_yx = self.sip_yx / (self.nx * self.ny)
        self.a_xy = self.sip_xy / (self.nx * self.ny)


def is_bj_orthogonal(X, Y, ctx) -> bool:
    """Birkhoff-James ``X ⊥_p Y``, decided by ``[Y, X]_p = 0``.

    The tolerance is ``tol_abs + tol_rel * ||X||_p ||Y||_p``.
    """
    ctx = as_context(ctx)
    prep = _Prepared(X, ctx.p)
    B = linalg.as_matrix(Y)
    value = prep.bracket(B)
    return abs(value) <= ctx.tol(prep.norm * schatten_norm(B, ctx))


def parallel_ratio(X, Y, ctx) -> float:
    """``||X|| |tr(|X|^{p-1} U* Y)| / (||Y|| tr(|X|^p))``, equal to ``|alpha_{Y,X}|``."""
    ctx = as_context(ctx)
    prep = _Prepared(X, ctx.p)
    B = linalg.as_matrix(Y)
    ny = schatten_norm(B, ctx)
    if ny == 0.0:
        raise DegenerateOperand("parallelism needs Y != 0")
    lhs = prep.norm * abs(linalg.trace_product(prep.weight, B))
    rhs = ny * prep.norm**ctx.p
    return lhs / rhs


def is_parallel(X, Y, ctx) -> bool:
    """``X ∥_p Y`` via the trace characterisation, i.e. ``|alpha_{Y,X}| = 1``."""
    return 1.0 - parallel_ratio(X, Y, ctx) <= PARALLEL_TOL


@dataclass(frozen=True)
class AngleSuiteReport:
    """Every angle notion for one pair, in radians."""

    milicic: float
    weighted_g: float
    gg: float
    p_angle: float
    p_weighted: float
    gg_p: float
    p_mean: float
    mean: str

    def to_dict(self) -> dict:
        return asdict(self)


def angle_suite(X, Y, ctx, mean: MeanKind | None = None) -> AngleSuiteReport:
    """Evaluate all angle definitions for nonzero ``X, Y``.

    ``mean`` selects the mean behind ``p_mean``; it defaults to the Heinz
    mean at ``t = 1/2``.
    """
    mean = mean or MeanKind("heinz", 0.5)
    pr = _Pair(X, Y, ctx)
    b_yx, b_xy = pr.a_yx.real, pr.a_xy.real
    m_yx, m_xy = abs(pr.a_yx), abs(pr.a_xy)
    wx, wy = pr.nx**2, pr.ny**2
    return AngleSuiteReport(
        milicic=safe_arccos(0.5 * (b_yx + b_xy)),
        weighted_g=safe_arccos((wx * b_yx + wy * b_xy) / (wx + wy)),
        gg=safe_arccos(math.sqrt(abs(b_yx) * abs(b_xy))),
        p_angle=safe_arccos(0.5 * (m_yx + m_xy)),
        p_weighted=safe_arccos((wx * m_yx + wy * m_xy) / (wx + wy)),
        gg_p=safe_arccos(math.sqrt(m_yx * m_xy)),
        p_mean=safe_arccos(mean_value(mean, m_yx, m_xy)),
        mean=mean.label(),
    )


def p_angle(X, Y, ctx) -> float:
    pr = _Pair(X, Y, ctx)
    return safe_arccos(0.5 * (abs(pr.a_yx) + abs(pr.a_xy)))


def mean_angle(X, Y, ctx, mean: MeanKind) -> float:
    """``arccos(M(|alpha_{Y,X}|, |alpha_{X,Y}|))``."""
    pr = _Pair(X, Y, ctx)
    return safe_arccos(mean_value(mean, abs(pr.a_yx), abs(pr.a_xy)))


def moduli_alphas(X, Y, ctx) -> dict:
    """The four alpha values of the moduli used by the Cauchy-Schwarz bounds.

    Keys: ``adj_yx`` = alpha_{|Y*|,|X*|}, ``abs_yx`` = alpha_{|Y|,|X|},
    ``adj_xy`` = alpha_{|X*|,|Y*|}, ``abs_xy`` = alpha_{|X|,|Y|}.
    """
    ctx = as_context(ctx)
    Ux, Px = linalg.polar_decompose(X)
    Uy, Py = linalg.polar_decompose(Y)
    Qx = Ux @ Px @ Ux.conj().T
    Qy = Uy @ Py @ Uy.conj().T
    adj = _Pair(0.5 * (Qx + Qx.conj().T), 0.5 * (Qy + Qy.conj().T), ctx)
    mod = _Pair(Px, Py, ctx)
    return {
        "adj_yx": adj.a_yx,
        "abs_yx": mod.a_yx,
        "adj_xy": adj.a_xy,
        "abs_xy": mod.a_xy,
    }


def quadratic_mean_lower_bound(X, Y, ctx) -> tuple[float, float]:
    """Return ``(lower, p_angle)`` where ``lower <= p_angle``.

    ``lower = arccos(sqrt((a_{|Y*|,|X*|} a_{|Y|,|X|} + a_{|X*|,|Y*|} a_{|X|,|Y|}) / 2))``.
    """
    al = moduli_alphas(X, Y, ctx)
    s = 0.5 * (al["adj_yx"] * al["abs_yx"] + al["adj_xy"] * al["abs_xy"]).real
    lower = safe_arccos(math.sqrt(max(s, 0.0)))
    return lower, p_angle(X, Y, ctx)
