"""Floating-point moment-map sampler used to cross-check the exact systems.

For G/K Hermitian, the Kirwan polyhedron of G.Lambda is the one of
K.Lambda x p with moment map (k, X) -> Ad(k) Lambda + Phi_p(X), where
Phi_p(X) = -[X, [z0, X]] is read in k through the trace form.  The models
below realize g inside gl(N, C):

* sp       g = {[[A, B], [B^H, conj(A)]] : A in u(n), B symmetric}
* so_star  same with B skew-symmetric
* su       g = {[[A, B], [B^H, D]]} traceless, A in u(p), D in u(q)
* so       g = {[[A, B], [B^T, D]]} real, A in so(p), D in so(2)

In every case p is the off-diagonal part [[0, B], [B^H, 0]].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .polyhedron import HPolyhedron
from .rootdata import Family, HermitianPair

J2 = np.array([[0.0, -1.0], [1.0, 0.0]])

SLACK_TOL = 1e-9
FACET_THRESHOLD = 0.05
DEFAULT_SCALES = tuple(round(0.1 * i, 1) for i in range(31))


def _pfaffian(a: np.ndarray) -> np.ndarray:
    """Pfaffian of a batch (..., n, n) of antisymmetric matrices, by row expansion."""
    n = a.shape[-1]
    if n == 0:
        return np.ones(a.shape[:-2])
    if n % 2:
        return np.zeros(a.shape[:-2])
    total = np.zeros(a.shape[:-2])
    for idx, j in enumerate(range(1, n)):
        keep = [k for k in range(1, n) if k != j]
        total = total + (-1) ** idx * a[..., 0, j] * _pfaffian(a[..., keep, :][..., :, keep])
    return total


def _haar_unitary(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    z = (rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    ph = d / np.abs(d)
    return q * ph[:, None, :]


def _haar_special_orthogonal(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    z = rng.standard_normal((size, n, n))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diagonal(r, axis1=1, axis2=2))
    q = q * d[:, None, :]
    det = np.linalg.det(q)
    q[:, :, 0] *= np.sign(det)[:, None]
    return q


@dataclass
class MatrixModel:
    pair: HermitianPair
    N: int              # matrix size
    top: int            # size of the upper-left block

    def __post_init__(self):
        fam = self.pair.family
        n = self.top
        z = np.zeros((self.N, self.N), dtype=complex)
        if fam in (Family.SpR, Family.SOstar):
            z[:n, :n] = 0.5j * np.eye(n)
            z[n:, n:] = -0.5j * np.eye(n)
        elif fam is Family.SUpq:
            p, q = self.pair.param("p"), self.pair.param("q")
            z[:p, :p] = 1j * q / (p + q) * np.eye(p)
            z[p:, p:] = -1j * p / (p + q) * np.eye(q)
        else:
            z[n:, n:] = J2
        self.z0 = z
        self._weight_vectors = self._p_weight_vectors()

    # -- structure
    @property
    def family(self) -> Family:
        return self.pair.family

    @staticmethod
    def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return x @ y - y @ x

    @staticmethod
    def inner(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Invariant trace form Re tr(XY): negative on k, positive on p."""
        return np.real(np.einsum("...ij,...ji->...", x, y))

    def _p_weight_vectors(self) -> list[np.ndarray]:
        """Basis of the B-space made of torus weight vectors (B-block only)."""
        fam, n = self.family, self.top
        cols = self.N - n
        out = []
        if fam is Family.SpR:
            for j in range(n):
                for k in range(j, n):
                    b = np.zeros((n, n), complex)
                    b[j, k] = b[k, j] = 1
                    out.append(b)
        elif fam is Family.SOstar:
            for j in range(n):
                for k in range(j + 1, n):
                    b = np.zeros((n, n), complex)
                    b[j, k], b[k, j] = 1, -1
                    out.append(b)
        elif fam is Family.SUpq:
            for j in range(n):
                for k in range(cols):
                    b = np.zeros((n, cols), complex)
                    b[j, k] = 1
                    out.append(b)
        else:
            # p ~ C^p through v = B[:, 0] + i B[:, 1]; weight vectors of SO(p)
            p = n
            for j in range(p // 2):
                for sgn in (1, -1):
                    v = np.zeros(p, complex)
                    v[2 * j], v[2 * j + 1] = 1, -1j * sgn
                    out.append(v)
            if p % 2:
                v = np.zeros(p, complex)
                v[p - 1] = 1
                out.append(v)
        return out

    def _b_to_x(self, b: np.ndarray) -> np.ndarray:
        n = self.top
        x = np.zeros(b.shape[:-2] + (self.N, self.N), complex)
        x[..., :n, n:] = b
        x[..., n:, :n] = np.conj(np.swapaxes(b, -1, -2))
        return x

    def random_p(self, rng: np.random.Generator, size: int, scale=1.0,
                 sparse_fraction: float = 0.5) -> np.ndarray:
        """Gaussian X in p; a fraction of samples keep a random subset of weight directions."""
        vecs = np.array(self._weight_vectors)
        k = len(vecs)
        c = (rng.standard_normal((size, k)) + 1j * rng.standard_normal((size, k))) / math.sqrt(2)
        sparse = rng.random(size) < sparse_fraction
        mask = rng.random((size, k)) < 0.5
        c = np.where(sparse[:, None] & ~mask, 0, c)
        c = c * np.asarray(scale, dtype=float).reshape(-1, 1) if np.ndim(scale) else c * scale
        if self.family is Family.SOp2:
            v = np.tensordot(c, vecs, axes=(1, 0))
            # X real: B = [Re v, Im v]
            b = np.stack([v.real, v.imag], axis=-1).astype(complex)
        else:
            b = np.tensordot(c, vecs, axes=(1, 0))
        return self._b_to_x(b)

    def project_p(self, x: np.ndarray) -> np.ndarray:
        n = self.top
        b = x[..., :n, n:]
        b2 = np.conj(np.swapaxes(x[..., n:, :n], -1, -2))
        b = (b + b2) / 2
        if self.family is Family.SpR:
            b = (b + np.swapaxes(b, -1, -2)) / 2
        elif self.family is Family.SOstar:
            b = (b - np.swapaxes(b, -1, -2)) / 2
        elif self.family is Family.SOp2:
            b = b.real.astype(complex)
        return self._b_to_x(b)

    def phi_p(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        err = np.max(np.abs(x - self.project_p(x))) if x.size else 0.0
        if err > 1e-10 * max(1.0, float(np.max(np.abs(x)))):
            raise ValueError("X is not in p")
        return -self.bracket(x, self.bracket(self.z0, x))

    # -- K, Lambda and the readout
    def random_k(self, rng: np.random.Generator, size: int) -> np.ndarray:
        fam, n = self.family, self.top
        k = np.zeros((size, self.N, self.N), complex)
        if fam in (Family.SpR, Family.SOstar):
            u = _haar_unitary(rng, size, n)
            k[:, :n, :n] = u
            k[:, n:, n:] = np.conj(u)
        elif fam is Family.SUpq:
            k[:, :n, :n] = _haar_unitary(rng, size, n)
            k[:, n:, n:] = _haar_unitary(rng, size, self.N - n)
        else:
            k[:, :n, :n] = _haar_special_orthogonal(rng, size, n)
            th = rng.uniform(0, 2 * math.pi, size)
            c, s = np.cos(th), np.sin(th)
            k[:, n, n], k[:, n, n + 1], k[:, n + 1, n], k[:, n + 1, n + 1] = c, -s, s, c
        return k

    def perturb_k(self, k: np.ndarray, rng: np.random.Generator, eps: float) -> np.ndarray:
        """Right-multiply a batch of K elements by random elements eps-close to 1."""
        fam, n = self.family, self.top
        size = len(k)

        def near(m, real=False):
            z = rng.standard_normal((size, m, m))
            if not real:
                z = z + 1j * rng.standard_normal((size, m, m))
            q, r = np.linalg.qr(np.eye(m) + eps * z)
            d = np.diagonal(r, axis1=1, axis2=2)
            q = q * (d / np.abs(d))[:, None, :]
            if real:
                q[:, :, 0] *= np.sign(np.linalg.det(q))[:, None]
            return q

        d = np.zeros_like(k)
        if fam in (Family.SpR, Family.SOstar):
            u = near(n)
            d[:, :n, :n], d[:, n:, n:] = u, np.conj(u)
        elif fam is Family.SUpq:
            d[:, :n, :n], d[:, n:, n:] = near(n), near(self.N - n)
        else:
            d[:, :n, :n] = near(n, real=True)
            th = eps * rng.standard_normal(size)
            c, s = np.cos(th), np.sin(th)
            d[:, n, n], d[:, n, n + 1], d[:, n + 1, n], d[:, n + 1, n + 1] = c, -s, s, c
        return k @ d

    def embed_weight(self, lam: Sequence) -> np.ndarray:
        """Element of t in k representing a weight (trace-form duality, up to a fixed scalar)."""
        lam = np.array([float(x) for x in self.pair.canonical(lam)])
        fam, n = self.family, self.top
        y = np.zeros((self.N, self.N), complex)
        if fam in (Family.SpR, Family.SOstar):
            y[:n, :n] = 1j * np.diag(lam)
            y[n:, n:] = -1j * np.diag(lam)
        elif fam is Family.SUpq:
            y[:, :] = 1j * np.diag(lam)
        else:
            y[n:, n:] = lam[0] * J2
            for j, a in enumerate(lam[1:]):
                y[2 * j, 2 * j + 1] = -a
                y[2 * j + 1, 2 * j] = a
        return y

    def dominant(self, y: np.ndarray) -> np.ndarray:
        """Dominant representative in t*_+ of a batch of k-elements."""
        fam, n = self.family, self.top
        if fam in (Family.SpR, Family.SOstar):
            ev = np.linalg.eigvalsh(-1j * y[..., :n, :n])
            return ev[..., ::-1]
        if fam is Family.SUpq:
            a = np.linalg.eigvalsh(-1j * y[..., :n, :n])[..., ::-1]
            d = np.linalg.eigvalsh(-1j * y[..., n:, n:])[..., ::-1]
            return np.concatenate([a, d], axis=-1)
        m = n // 2
        a = np.real(y[..., :n, :n])
        ev = np.linalg.eigvalsh(-1j * a.astype(complex))[..., ::-1][..., :m]
        xi0 = np.real(y[..., n + 1, n])
        if n % 2 == 0:
            sg = np.sign(_pfaffian(a))
            sg = np.where(sg == 0, 1.0, sg * (-1) ** m)
            ev = ev.copy()
            ev[..., -1] *= sg
        return np.concatenate([xi0[..., None], ev], axis=-1)

    def moment(self, k: np.ndarray, lam_mat: np.ndarray, x: np.ndarray) -> np.ndarray:
        y = k @ lam_mat @ np.conj(np.swapaxes(k, -1, -2)) + self.phi_p(x)
        return self.dominant(y)

    def moment_sample(self, lam: Sequence, rng: np.random.Generator, size: int = 1,
                      scale=1.0) -> np.ndarray:
        k = self.random_k(rng, size)
        x = self.random_p(rng, size, scale)
        return self.moment(k, self.embed_weight(lam), x)


def build_model(pair: HermitianPair) -> MatrixModel:
    fam = pair.family
    if fam in (Family.SpR, Family.SOstar):
        n = pair.param("n")
        return MatrixModel(pair, 2 * n, n)
    if fam is Family.SUpq:
        return MatrixModel(pair, pair.ncoords, pair.param("p"))
    p = pair.param("p")
    return MatrixModel(pair, p + 2, p)


def _in_hull(points: np.ndarray, xi: np.ndarray, tol: float = 1e-7) -> bool:
    m = len(points)
    a_eq = np.vstack([points.T, np.ones((1, m))])
    b_eq = np.concatenate([xi, [1.0]])
    res = linprog(np.zeros(m), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * m, method="highs")
    if res.status == 0:
        return True
    # allow for rounding: minimize the L1 residual
    res = linprog(np.concatenate([np.zeros(m), np.ones(2 * len(b_eq))]),
                  A_eq=np.hstack([a_eq, np.eye(len(b_eq)), -np.eye(len(b_eq))]), b_eq=b_eq,
                  bounds=[(0, None)] * (m + 2 * len(b_eq)), method="highs")
    return res.status == 0 and res.fun <= tol


CONE_CHECKS = 200
REFINE_FRACTION = 0.3
REFINE_POPULATION = 100
REFINE_STEPS = (0.3, 0.1, 0.03, 0.01, 0.003)


def validate(model: MatrixModel, hpoly: HPolyhedron, lam: Sequence, n_samples: int = 10**5,
             scales: Sequence[float] = DEFAULT_SCALES, seed: int = 0,
             facets: HPolyhedron | None = None, batch: int = 5000,
             refine_fraction: float = REFINE_FRACTION) -> dict:
    """Sample the moment image and compare it with an instantiated system.

    ``violations`` counts samples breaking some row of ``hpoly`` by more than
    SLACK_TOL after each row is scaled to a unit normal.  The minimal observed
    slack is reported for every row of ``facets`` (default: ``hpoly``).

    Most of the budget goes to independent draws over the scale sweep.  The
    last ``refine_fraction`` of it is a local search per facet: starting from
    the closest draw, (k, X) is perturbed and the move kept when the slack of
    that facet drops.  Refined points are genuine samples and are checked
    against every row like the others.
    """
    pair = model.pair
    facets = facets or hpoly
    rng = np.random.default_rng(seed)
    lam_mat = model.embed_weight(lam)

    def unit(h: HPolyhedron):
        a = np.array([[float(x) for x in r.a] for r in h.rows]).reshape(len(h.rows), pair.ncoords)
        b = np.array([float(r.b) for r in h.rows])
        nrm = np.linalg.norm(a, axis=1)
        return a / nrm[:, None], b / nrm

    a_all, b_all = unit(hpoly)
    a_fac, b_fac = unit(facets)
    n_fac = len(facets.rows)
    min_slack = np.full(n_fac, np.inf)
    best_kx: list = [None] * n_fac
    simple_co = np.array([[float(x) for x in r] for r in pair.simple_compact_roots]).reshape(-1, pair.ncoords)
    stats = {"violations": 0, "worst": np.inf, "chamber": 0}

    def evaluate(k, x):
        xi = model.moment(k, lam_mat, x)
        if pair.sum_zero:
            xi = xi - xi.mean(axis=1, keepdims=True)
        s_all = b_all[None, :] - xi @ a_all.T
        stats["violations"] += int((s_all < -SLACK_TOL).any(axis=1).sum())
        if s_all.size:
            stats["worst"] = min(stats["worst"], float(s_all.min()))
        if len(simple_co):
            stats["chamber"] += int(((xi @ simple_co.T) < -SLACK_TOL).any(axis=1).sum())
        s_fac = b_fac[None, :] - xi @ a_fac.T
        if s_fac.size:
            idx = s_fac.argmin(axis=0)
            for f in range(n_fac):
                v = s_fac[idx[f], f]
                if v < min_slack[f]:
                    min_slack[f] = v
                    best_kx[f] = (k[idx[f]].copy(), x[idx[f]].copy())
        return xi, s_fac

    scales = [float(s) for s in scales]
    n_refine = int(n_samples * refine_fraction) if n_fac else 0
    n_random = n_samples - n_refine
    zero_scale_pts: list = []
    cone_pts: list = []
    done = 0
    while done < n_random:
        size = min(batch, n_random - done)
        sc = np.array([scales[(done + i) % len(scales)] for i in range(size)])
        k = model.random_k(rng, size)
        x = model.random_p(rng, size, sc)
        xi, _ = evaluate(k, x)
        if len(zero_scale_pts) < 20:
            zero_scale_pts.extend(xi[sc == 0][: 20 - len(zero_scale_pts)])
        if len(cone_pts) < CONE_CHECKS:
            cone_pts.extend(xi[sc > 0][: CONE_CHECKS - len(cone_pts)])
        done += size

    # local search, budget split evenly over facets and step sizes
    refined = 0
    if n_refine and n_random:
        for f in range(n_fac):
            quota = n_refine // n_fac + (f < n_refine % n_fac)
            chunks = [REFINE_POPULATION] * (quota // REFINE_POPULATION)
            if quota % REFINE_POPULATION:
                chunks.append(quota % REFINE_POPULATION)
            for r, size in enumerate(chunks):
                eps = REFINE_STEPS[r * len(REFINE_STEPS) // len(chunks)]
                k0, x0 = best_kx[f]
                k = model.perturb_k(np.repeat(k0[None], size, axis=0), rng, eps)
                xnorm = max(1.0, float(np.linalg.norm(x0)))
                x = x0[None] + eps * xnorm * model.random_p(rng, size, 1.0, sparse_fraction=0.0)
                evaluate(k, x)
                refined += size
    total = done + refined

    report = {
        "group": pair.spec,
        "lambda": [str(x) for x in pair.canonical(lam)],
        "seed": seed,
        "n_samples": total,
        "n_refinement_samples": refined,
        "scales": scales,
        "tolerance": SLACK_TOL,
        "violations": stats["violations"],
        "min_slack_overall": None if not np.isfinite(stats["worst"]) else stats["worst"],
        "chamber_violations": stats["chamber"],
        "facet_threshold": FACET_THRESHOLD,
        "per_facet_min_slack": [
            {"row": i, "source": r.source or {}, "min_slack": None if not np.isfinite(v) else float(v)}
            for i, (r, v) in enumerate(zip(facets.rows, min_slack))],
    }
    if total:
        report["facets_approached"] = bool(np.all(min_slack < FACET_THRESHOLD))
        orbit = _weyl_orbit(pair, lam)
        report["zero_scale_in_orbit_hull"] = all(_in_hull(orbit, p) for p in zero_scale_pts)
        # sign convention: samples must stay in Lambda + Cone(noncompact positive roots)
        lam_f = np.array([float(x) for x in pair.canonical(lam)])
        gens = np.array([[float(x) for x in pair.canonical(b)] for b in pair.noncompact_pos_roots])
        report["samples_in_translated_cone"] = all(_in_cone(gens, p - lam_f) for p in cone_pts)
    return report


def _in_cone(gens: np.ndarray, v: np.ndarray, tol: float = 1e-7) -> bool:
    m = len(gens)
    res = linprog(np.concatenate([np.zeros(m), np.ones(2 * len(v))]),
                  A_eq=np.hstack([gens.T, np.eye(len(v)), -np.eye(len(v))]), b_eq=v,
                  bounds=[(0, None)] * (m + 2 * len(v)), method="highs")
    return res.status == 0 and res.fun <= tol * max(1.0, float(np.abs(v).max()))


def _weyl_orbit(pair: HermitianPair, lam: Sequence) -> np.ndarray:
    from .weyl import WeylGroup
    g = WeylGroup(pair)
    pts = {g.act(w, pair.canonical(lam)) for w in g.elements}
    return np.array([[float(x) for x in p] for p in sorted(pts)])
