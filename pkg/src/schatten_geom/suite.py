"""Randomised property suite behind ``schatten-geom verify``.

Each trial draws one pair from a seeded ensemble and runs every check on
it. Trials are independent, so they may run on a thread pool; results are
always reduced in trial order, which keeps reports byte-identical.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import geometry as geo
from . import inequalities as ineq
from . import linalg
from .oracles import random_pair
from .schatten import SchattenContext, schatten_norm, sip_value

SUITE_ENSEMBLES = ("ComplexGaussian", "PSD", "ZeroTrace", "RealGaussian")
THREADS_ENV = "SCHATTEN_GEOM_THREADS"


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


class _Checker:
    def __init__(self, trial: int, tol: float):
        self.trial = trial
        self.tol = tol
        self.counts: Counter = Counter()
        self.violations: list[dict] = []

    def __call__(self, name: str, ok: bool, **detail) -> None:
        self.counts[name] += 1
        if not ok:
            self.violations.append({
                "trial": self.trial,
                "check": name,
                "detail": {k: _jsonable(v) for k, v in detail.items()},
            })

    def le(self, a: float, b: float, scale: float = 1.0) -> bool:
        return a <= b + self.tol * scale

    def eq(self, a, b, scale: float = 1.0) -> bool:
        return abs(a - b) <= self.tol * scale


def _jsonable(v):
    if isinstance(v, complex) or isinstance(v, np.complexfloating):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    return v


def _disjoint(X: np.ndarray, Y: np.ndarray):
    n = X.shape[0]
    k = max(1, n // 2)
    Xd = np.zeros_like(X)
    Yd = np.zeros_like(Y)
    Xd[:k, :k] = X[:k, :k]
    Yd[k:, k:] = Y[k:, k:]
    if not np.any(Yd):
        Yd[-1, -1] = 1.0
    return Xd, Yd


def run_trial(trial: int, p: float, seed: int, dims: tuple[int, int], tol: float) -> _Checker:
    lo, hi = dims
    span = hi - lo + 1
    n = lo + trial % span
    kind = SUITE_ENSEMBLES[(trial // span) % len(SUITE_ENSEMBLES)]
    rng = np.random.default_rng([int(seed), int(trial)])
    X, Y = random_pair(kind, n, rng)
    ctx = SchattenContext(p)
    chk = _Checker(trial, tol)

    nx, ny = schatten_norm(X, ctx), schatten_norm(Y, ctx)
    s_yx = sip_value(Y, X, ctx)
    s_xy = sip_value(X, Y, ctx)
    a_yx, a_xy = s_yx / (nx * ny), s_xy / (nx * ny)

    # Cauchy-Schwarz and its refinement
    lhs, rhs = ineq.cs_inequality(X, Y, ctx)
    chk("cs", chk.le(lhs, rhs, rhs), lhs=lhs, rhs=rhs)
    w = ineq.find_witness(X, Y, ctx)
    if isinstance(w, ineq.WitnessResult):
        pair = ineq.refinement_pair(X, Y, ctx)
        chk("refinement", chk.le(w.cs_lhs + w.delta, w.cs_rhs, w.cs_rhs), lhs=w.cs_lhs, delta=w.delta, rhs=w.cs_rhs)
        chk("witness.unit", chk.eq(linalg.hs_norm(w.Z), 1.0), norm=linalg.hs_norm(w.Z))
        ov = abs(linalg.hs_inner(w.Z, pair.A))
        chk("witness.orthogonal", ov <= tol * linalg.hs_norm(pair.A), overlap=ov)

    # identities relating A, B and the moduli
    pair = ineq.refinement_pair(X, Y, ctx)
    Ux, Px = linalg.polar_decompose(X)
    Uy, Py = linalg.polar_decompose(Y)
    Qx, Qy = Ux @ Px @ Ux.conj().T, Uy @ Py @ Uy.conj().T
    mod = sip_value(Py, Px, ctx)
    adj = sip_value(Qy, Qx, ctx)
    t1 = nx ** (2 - p) * linalg.trace_product(linalg.psd_power(Px, p - 1), Py)
    t1s = nx ** (2 - p) * linalg.trace_product(linalg.psd_power(Qx, p - 1), Qy)
    chk("lem1.1", chk.eq(mod, t1, abs(t1)) and chk.eq(adj, t1s, abs(t1s)), sip=mod, trace=t1)
    na2, nb2 = linalg.hs_norm(pair.A) ** 2, linalg.hs_norm(pair.B) ** 2
    chk("lem1.2", chk.eq(na2, mod.real / nx ** (2 - p), na2), lhs=na2, rhs=mod.real / nx ** (2 - p))
    chk("lem1.3", chk.eq(nb2, adj.real / nx ** (2 - p), nb2), lhs=nb2, rhs=adj.real / nx ** (2 - p))
    chk("lem1.4", mod.real >= -tol * abs(mod) and adj.real >= -tol * abs(adj), mod=mod, adj=adj)
    t5 = nx ** (2 - p) * linalg.hs_inner(pair.B, pair.A)
    chk("lem1.5", chk.eq(s_yx, t5, nx * ny), sip=s_yx, via_pair=t5)

    # basic properties of alpha
    chk("alpha.bound", chk.le(abs(a_yx), 1.0), alpha=abs(a_yx))
    a_xx = sip_value(X, X, ctx) / nx**2
    chk("alpha.self", chk.eq(a_xx, 1.0), alpha=a_xx)
    ca = complex(*rng.standard_normal(2))
    cb = complex(*rng.standard_normal(2))
    scaled = sip_value(ca * Y, cb * X, ctx) / (abs(ca) * abs(cb) * nx * ny)
    chk("alpha.scaling", chk.eq(scaled, np.conj(cb) * ca / (abs(ca) * abs(cb)) * a_yx), lhs=scaled)
    a_ay = sip_value(ca * Y, X, ctx) / (nx * abs(ca) * ny)
    chk("alpha.homogeneity", chk.eq(ca * a_yx, abs(ca) * a_ay, abs(ca)), lhs=ca * a_yx, rhs=abs(ca) * a_ay)
    Yo = Y - (s_yx / nx**2) * X
    chk("alpha.orthogonal", geo.is_bj_orthogonal(X, Yo, SchattenContext(p, tol_rel=max(tol, 1e-15))))

    # parallel pairs: |alpha| = 1 both ways, p-angle 0
    Yp = ca * X
    par = [geo.is_parallel(X, Yp, ctx), geo.is_parallel(Yp, X, ctx)]
    ang_par = geo.p_angle(X, Yp, ctx)
    chk("parallel.dependent", all(par) and ang_par <= math.sqrt(max(tol, 1e-15)) * 10, verdicts=par, angle=ang_par)
    chk("parallel.random", geo.is_parallel(X, Y, ctx) == geo.is_parallel(Y, X, ctx))

    # properties of the p-angle
    rep = geo.angle_suite(X, Y, ctx)
    chk("angle.range", -tol <= rep.p_angle <= math.pi / 2 + tol, angle=rep.p_angle)
    rev = geo.p_angle(Y, X, ctx)
    chk("angle.symmetry", chk.eq(rep.p_angle, rev), forward=rep.p_angle, backward=rev)
    sc = geo.p_angle(ca * X, cb * Y, ctx)
    chk("angle.scaling", chk.eq(rep.p_angle, sc), angle=rep.p_angle, scaled=sc)
    chk("angle.gg", chk.le(rep.p_angle, rep.gg), p_angle=rep.p_angle, gg=rep.gg)
    lower, pa = geo.quadratic_mean_lower_bound(X, Y, ctx)
    chk("angle.qm_lower", chk.le(lower, pa), lower=lower, p_angle=pa)
    Xd, Yd = _disjoint(X, Y)
    for label, (A, B) in (("random", (X, Y)), ("disjoint", (Xd, Yd))):
        m = 0.5 * (abs(geo._Pair(A, B, ctx).a_yx) + abs(geo._Pair(A, B, ctx).a_xy))
        right = m <= max(tol, 1e-15)
        mutual = geo.is_bj_orthogonal(A, B, ctx) and geo.is_bj_orthogonal(B, A, ctx)
        chk(f"angle.right_{label}", right == mutual, cosine=m, mutual=mutual)

    # Cauchy-Schwarz bounds on alpha and beta
    al = geo.moduli_alphas(X, Y, ctx)
    bound = (al["adj_yx"] * al["abs_yx"]).real
    chk("cota.alpha", chk.le(abs(a_yx) ** 2, bound, bound), lhs=abs(a_yx) ** 2, rhs=bound)
    bbound = al["adj_yx"].real * al["abs_yx"].real
    chk("cota.beta", chk.le(a_yx.real ** 2, bbound, bbound), lhs=a_yx.real ** 2, rhs=bbound)

    # means and the induced angles
    u, v = abs(a_yx), abs(a_xy)
    if u > 0 and v > 0:
        hm, gm, am, qm = (geo.mean_value(geo.MeanKind(k), u, v) for k in ("hm", "gm", "am", "qm"))
        chk("mean.chain", chk.le(hm, gm) and chk.le(gm, am) and chk.le(am, qm), hm=hm, gm=gm, am=am, qm=qm)
        t = float(rng.uniform())
        ht = geo.mean_value(geo.MeanKind("heinz", t), u, v)
        chk("mean.heinz", chk.le(gm, ht) and chk.le(ht, am), gm=gm, heinz=ht, am=am)
        angs = [geo.safe_arccos(min(1.0, x)) for x in (qm, am, gm, hm)]
        chk("mean.angles", all(chk.le(angs[i], angs[i + 1]) for i in range(3)), angles=angs)

    # zero products of positive operators
    chk("zero_product", ineq.zero_product_equivalences(Px, Py) and ineq.zero_product_equivalences(
        linalg.polar_decompose(Xd).P, linalg.polar_decompose(Yd).P))
    return chk


def run_suite(p: float, trials: int, seed: int, dims: tuple[int, int] = (2, 8),
              tol: float = 1e-9, threads: int | None = None) -> dict:
    """Run ``trials`` trials and return a JSON-ready summary."""
    SchattenContext(p)  # validates p
    threads = threads or thread_count()

    def job(i):
        return run_trial(i, p, seed, dims, tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, range(trials)))
    else:
        results = [job(i) for i in range(trials)]
    counts: Counter = Counter()
    violations: list[dict] = []
    for r in results:
        counts.update(r.counts)
        violations.extend(r.violations)
    failed = Counter(v["check"] for v in violations)
    return {
        "checks": {k: {"evaluated": counts[k], "violations": failed.get(k, 0)} for k in sorted(counts)},
        "violation_count": len(violations),
        "violations": violations,
    }
