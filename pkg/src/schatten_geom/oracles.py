"""Brute-force verifiers and the catalog of worked example operators.

Nothing here calls the semi-inner product to decide a predicate: the
orthogonality and parallelism oracles work from the norm alone, and the
Gâteaux oracle differentiates the norm numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from . import linalg
from .errors import DegenerateOperand, DomainError
from .geometry import PARALLEL_TOL
from .schatten import _norm_from_sv, as_context, schatten_norm, sip_value


# ---------------------------------------------------------------------------
# norm-based searches


@dataclass(frozen=True)
class GridSpec:
    """Polar grid for the ``gamma`` (or ``lambda``) quantifier.

    ``radius=None`` means ``4 ||X||_p / max(||Y||_p, tol_abs)``.
    """

    radius: Optional[float] = None
    radial_steps: int = 64
    angular_steps: int = 64

    def __post_init__(self):
        if self.radial_steps < 8 or self.angular_steps < 8:
            raise DomainError("grid needs at least 8 radial and 8 angular steps")
        if self.radius is not None and not self.radius > 0:
            raise DomainError("grid radius must be positive")


def _batch_norms(X: np.ndarray, Y: np.ndarray, gammas: np.ndarray, p: float) -> np.ndarray:
    stack = X[None, :, :] + gammas[:, None, None] * Y[None, :, :]
    s = np.linalg.svd(stack, compute_uv=False)
    smax = s.max(axis=1)
    safe = np.where(smax > 0, smax, 1.0)
    return np.where(smax > 0, safe * np.sum((s / safe[:, None]) ** p, axis=1) ** (1.0 / p), 0.0)


def _norm(A: np.ndarray, p: float) -> float:
    return _norm_from_sv(np.linalg.svd(A, compute_uv=False), p)


@dataclass(frozen=True)
class SearchResult:
    """Extremum of ``||X + c Y||_p`` over the searched scalars ``c``."""

    holds: bool
    extremum: float
    argument: complex
    target: float


def bj_search(X, Y, ctx, grid: GridSpec | None = None) -> SearchResult:
    """Minimise ``||X + gamma Y||_p`` over complex ``gamma``.

    A polar grid locates the basin; the function is convex in ``gamma``,
    so a Nelder-Mead pass started at the grid incumbent polishes it.
    ``holds`` is ``min >= ||X||_p - tol``.
    """
    ctx = as_context(ctx)
    grid = grid or GridSpec()
    X, Y = linalg.as_matrix(X), linalg.as_matrix(Y)
    p = ctx.p
    nx, ny = _norm(X, p), _norm(Y, p)
    tol = ctx.tol(nx)
    if ny == 0.0:
        return SearchResult(True, nx, 0j, nx)
    radius = grid.radius or 4.0 * nx / max(ny, ctx.tol_abs)
    radii = radius * np.arange(1, grid.radial_steps + 1) / grid.radial_steps
    thetas = 2.0 * np.pi * np.arange(grid.angular_steps) / grid.angular_steps
    gammas = np.concatenate([[0.0], (radii[:, None] * np.exp(1j * thetas)[None, :]).ravel()])
    vals = _batch_norms(X, Y, gammas, p)
    k = int(np.argmin(vals))
    best, g0 = float(vals[k]), complex(gammas[k])

    step = radius / grid.radial_steps

    def f(v):
        return _norm(X + complex(v[0], v[1]) * Y, p)

    x0 = np.array([g0.real, g0.imag])
    simplex = np.array([x0, x0 + [step, 0.0], x0 + [0.0, step]])
    res = optimize.minimize(
        f, x0, method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": 1e-13 * (1 + radius),
                 "fatol": 1e-16 * nx, "maxiter": 4000},
    )
    if res.fun < best:
        best, g0 = float(res.fun), complex(res.x[0], res.x[1])
    return SearchResult(best >= nx - tol, best, g0, nx)


def oracle_bj_orthogonal(X, Y, ctx, grid: GridSpec | None = None) -> bool:
    """``||X + gamma Y||_p >= ||X||_p`` for all ``gamma``, by direct search."""
    return bj_search(X, Y, ctx, grid).holds


def parallel_search(X, Y, ctx, angular_steps: int = 64) -> SearchResult:
    """Maximise ``||X + lambda Y||_p`` over unimodular ``lambda``.

    ``holds`` is ``max >= (||X||_p + ||Y||_p)(1 - 1e-8)``.
    """
    ctx = as_context(ctx)
    if angular_steps < 8:
        raise DomainError("need at least 8 angular steps")
    X, Y = linalg.as_matrix(X), linalg.as_matrix(Y)
    p = ctx.p
    target = _norm(X, p) + _norm(Y, p)
    thetas = 2.0 * np.pi * np.arange(angular_steps) / angular_steps
    vals = _batch_norms(X, Y, np.exp(1j * thetas), p)
    k = int(np.argmax(vals))
    best, th = float(vals[k]), float(thetas[k])
    h = 2.0 * np.pi / angular_steps
    res = optimize.minimize_scalar(
        lambda t: -_norm(X + np.exp(1j * t) * Y, p),
        bounds=(th - h, th + h), method="bounded", options={"xatol": 1e-12},
    )
    if -res.fun > best:
        best, th = float(-res.fun), float(res.x)
    return SearchResult(best >= target * (1.0 - PARALLEL_TOL) - ctx.tol_abs, best,
                        complex(np.exp(1j * th)), target)


def oracle_parallel(X, Y, ctx, angular_steps: int = 64) -> bool:
    """Some unimodular ``lambda`` gives ``||X + lambda Y|| = ||X|| + ||Y||``."""
    return parallel_search(X, Y, ctx, angular_steps).holds


def oracle_gateaux(X, Y, ctx, t_sequence=None) -> float:
    """Richardson-extrapolated one-sided derivative of ``t -> ||X + tY||_p`` at 0.

    ``t_sequence`` must be geometrically halving; by default four steps
    starting at ``1e-2 ||X||_p / ||Y||_p``.
    """
    ctx = as_context(ctx)
    X, Y = linalg.as_matrix(X), linalg.as_matrix(Y)
    p = ctx.p
    nx, ny = _norm(X, p), _norm(Y, p)
    if nx == 0.0:
        raise DegenerateOperand("the norm is not differentiable at X = 0")
    if ny == 0.0:
        return 0.0
    if t_sequence is None:
        h0 = 1e-2 * nx / ny
        t_sequence = [h0 / 2**k for k in range(4)]
    ts = [float(t) for t in t_sequence]
    row = [(_norm(X + t * Y, p) - nx) / t for t in ts]
    # forward differences have error c1 h + c2 h^2 + ...; eliminate order by order
    for j in range(1, len(row)):
        f = 2.0**j
        row = [(f * row[i + 1] - row[i]) / (f - 1.0) for i in range(len(row) - 1)]
    return float(row[0])


# ---------------------------------------------------------------------------
# random ensembles

ENSEMBLES = ("ComplexGaussian", "RealGaussian", "PSD", "ZeroTrace", "Diagonal")


def _rng(kind: str, n: int, seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng([int(seed), int(n), ENSEMBLES.index(kind)])


def random_ensemble(kind: str, n: int, seed) -> np.ndarray:
    """One ``n x n`` draw; deterministic for fixed ``(kind, n, seed)``.

    ``seed`` may also be a ``numpy.random.Generator`` to draw sequentially.
    """
    if kind not in ENSEMBLES:
        raise DomainError(f"unknown ensemble {kind!r}; choose from {ENSEMBLES}")
    if n < 1:
        raise DomainError("n must be positive")
    rng = _rng(kind, n, seed)
    if kind == "RealGaussian":
        return rng.standard_normal((n, n)).astype(np.complex128)
    if kind == "Diagonal":
        d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return np.diag(d / math.sqrt(2.0))
    G = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    if kind == "PSD":
        P = G.conj().T @ G
        return 0.5 * (P + P.conj().T)
    if kind == "ZeroTrace":
        return G - (np.trace(G) / n) * np.eye(n)
    return G


def random_pair(kind: str, n: int, seed) -> tuple[np.ndarray, np.ndarray]:
    rng = _rng(kind, n, seed)
    return random_ensemble(kind, n, rng), random_ensemble(kind, n, rng)


# ---------------------------------------------------------------------------
# catalog of worked examples

FAMILIES = ("AlternatingDiagonal", "DecayDiagonal", "WeightedShift", "PaperExample1", "ZeroTrace2x2")


@dataclass(frozen=True)
class ExampleOperatorSpec:
    """Parameters of a catalog operator.

    ``p`` is only needed to validate ``alpha_decay > 1/p``; without it the
    weaker ``alpha_decay > 0`` (membership for some ``p > 1``) is enforced.
    """

    family: str
    dimension: int = 2
    a: float = 1.0
    alpha_decay: float = 1.0
    gamma_decay: float = 1.0
    p: Optional[float] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.dimension < 1:
            raise DomainError("dimension must be positive")
        if self.a <= 0:
            raise DomainError("amplitude a must be positive")


def _check_alpha(spec: ExampleOperatorSpec) -> None:
    bound = 1.0 / spec.p if spec.p is not None else 0.0
    if not spec.alpha_decay > bound:
        raise DomainError(f"decay exponent alpha={spec.alpha_decay} must exceed {bound:g}")


def build_example(spec: ExampleOperatorSpec):
    """Materialise a catalog entry.

    ``PaperExample1`` -> ``(X, Y)``; ``WeightedShift`` -> ``(Y, Z)`` (the
    weighted shift and its shift witness); every other family -> one matrix.
    Indices ``n`` run from 1 to ``dimension`` and truncated shifts send the
    last basis vector to 0.
    """
    N = spec.dimension
    fam = spec.family
    if fam == "PaperExample1":
        X = np.diag([2.0, 1.0]).astype(np.complex128)
        Y = np.array([[0, 1], [1, 0]], dtype=np.complex128)
        return X, Y
    if fam == "ZeroTrace2x2":
        return np.array([[1, 2], [-2, -1]], dtype=np.complex128)
    if fam == "AlternatingDiagonal":
        d = [spec.a * (-1) ** k for k in range(N)]
        if N % 2:
            d[-1] = 0.0
        return np.diag(d).astype(np.complex128)
    n = np.arange(1, N + 1, dtype=float)
    if fam == "DecayDiagonal":
        _check_alpha(spec)
        return np.diag((-1.0) ** n / n**spec.alpha_decay).astype(np.complex128)
    # WeightedShift
    _check_alpha(spec)
    if not spec.gamma_decay > 0.5:
        raise DomainError(f"witness exponent gamma={spec.gamma_decay} must exceed 1/2")
    m = n[:-1]
    Y = np.zeros((N, N), dtype=np.complex128)
    Z = np.zeros((N, N), dtype=np.complex128)
    idx = np.arange(N - 1)
    Y[idx + 1, idx] = (m + 1.0) ** (-spec.alpha_decay)
    # sign (-1)^n makes every term of <Z, B>_2 negative
    Z[idx + 1, idx] = (-1.0) ** m / m**spec.gamma_decay
    return Y, Z


def example1_witness(p: float) -> np.ndarray:
    """Unnormalised ``Z0 = [[-1, 1], [1, 2^{(p-1)/2}]]``, orthogonal to ``A``."""
    return np.array([[-1.0, 1.0], [1.0, 2.0 ** (0.5 * (p - 1.0))]], dtype=np.complex128)


def example1_delta(p: float) -> float:
    """Closed form ``(2^{(p-1)/2}+1)^2 (2^{p-1}+1) (2^p+1)^{(4-2p)/p}``."""
    return (2.0 ** (0.5 * (p - 1.0)) + 1.0) ** 2 * (2.0 ** (p - 1.0) + 1.0) * (2.0**p + 1.0) ** ((4.0 - 2.0 * p) / p)


@dataclass(frozen=True)
class TruncationReport:
    """Diagonal/shift example evaluated at one truncation dimension."""

    dimension: int
    inner_z_a: complex
    inner_z_b: complex
    partial_sums: np.ndarray = field(repr=False)
    half_gap: float  # |S(N) - S(N/2)|
    monotone: bool


def shift_example_truncation(N: int = 200, alpha_decay: float = 1.0, gamma_decay: float = 1.0,
                             p: float = 2.0) -> TruncationReport:
    """Evaluate ``<Z, A>_2`` and ``<Z, B>_2`` for the diagonal ``X``,
    weighted shift ``Y`` and shift witness ``Z`` truncated to ``N``."""
    from .inequalities import refinement_pair

    X = build_example(ExampleOperatorSpec("DecayDiagonal", N, alpha_decay=alpha_decay, p=p))
    Y, Z = build_example(ExampleOperatorSpec("WeightedShift", N, alpha_decay=alpha_decay,
                                             gamma_decay=gamma_decay, p=p))
    pair = refinement_pair(X, Y, p)
    terms = (np.conj(pair.B) * Z).sum(axis=0)  # column n holds <Z e_n, B e_n>
    sums = np.cumsum(terms)
    real = sums.real
    return TruncationReport(
        dimension=N,
        inner_z_a=linalg.hs_inner(Z, pair.A),
        inner_z_b=linalg.hs_inner(Z, pair.B),
        partial_sums=sums,
        half_gap=float(abs(sums[N - 1] - sums[N // 2 - 1])),
        monotone=bool(np.all(np.diff(real[: N - 1]) < 0)),
    )


# ---------------------------------------------------------------------------
# zero-trace symmetry search


@dataclass(frozen=True)
class SymmetryRecord:
    """A zero-trace ``Z`` with ``[Z, I]_p != [I, Z]_p``."""

    trial: int
    Z: np.ndarray
    sip_z_i: complex
    sip_i_z: complex
    trace_expression: complex
    identity_orthogonal: Optional[bool]  # oracle verdict for I ⊥ W, None if not run


def symmetry_witness_operator(Z, ctx) -> np.ndarray:
    """``W = (n^{2/p-1}|Z| - ||Z||_p^{2-p}|Z|^{p-1}) U*``."""
    ctx = as_context(ctx)
    Zm = linalg.as_matrix(Z)
    n = Zm.shape[0]
    U, P = linalg.polar_decompose(Zm)
    nz = schatten_norm(Zm, ctx)
    M = n ** (2.0 / ctx.p - 1.0) * P - nz ** (2.0 - ctx.p) * linalg.psd_power(P, ctx.p - 1.0)
    return M @ U.conj().T


def trace_symmetry_search(n: int, ctx, trials: int, seed: int, oracle_limit: int = 8,
                          grid: GridSpec | None = None) -> list[SymmetryRecord]:
    """Sample zero-trace matrices and report those with ``[Z,I]_p != [I,Z]_p``.

    Each record carries both values and ``tr(W)`` for the operator ``W`` of
    :func:`symmetry_witness_operator`; the first ``oracle_limit`` records
    also get a brute-force verdict on ``I ⊥_p W``.
    """
    ctx = as_context(ctx)
    if n < 2:
        raise DomainError("n must be at least 2")
    rng = np.random.default_rng([int(seed), int(n), 7919])
    eye = np.eye(n, dtype=np.complex128)
    found: list[SymmetryRecord] = []
    for t in range(trials):
        Z = random_ensemble("ZeroTrace", n, rng)
        a = sip_value(Z, eye, ctx)
        b = sip_value(eye, Z, ctx)
        scale = schatten_norm(Z, ctx) * n ** (1.0 / ctx.p)
        if abs(a - b) <= ctx.tol(scale):
            continue
        W = symmetry_witness_operator(Z, ctx)
        orth = oracle_bj_orthogonal(eye, W, ctx, grid) if len(found) < oracle_limit else None
        found.append(SymmetryRecord(t, Z, a, b, linalg.trace(W), orth))
    return found
