"""Canonical products with lattice-like zero sets, in log form.

The central object is the entire function vanishing on a square lattice
(the Weierstrass sigma function of that lattice) and its generalization
to point sets uniformly close to a lattice:

    g(z) = (z - z00) * prod' (1 - z/z_mn) exp(z/z_mn + z^2/(2*lambda_mn^2)),

where ``z_mn`` are the actual points, ``lambda_mn = s*(m+in)`` the
matched lattice sites, ``z00`` the point closest to the origin, and the
prime skips its index. Note the mixed convention: the linear factors use
the true points while the quadratic exponent keeps the lattice site.

Everything is evaluated in log form. Products are truncated at shell
index ``M`` (factors with ``max(|m|,|n|) <= M``) and the skipped shells
are restored by a series correction: the tail of the regularized product
is ``-sum_{j>=3} z^j/j * sum_{|lambda| beyond} lambda^{-j}``, and for a
square lattice the inner sums vanish unless ``j`` is a multiple of 4.
The surviving lattice sums are precomputed per shell with a fitted
Hurwitz-zeta tail, which brings the truncation error down to the
1e-12 scale the tolerances here need; the first neglected series term
(order 24) is the reported truncation diagnostic. Beyond the shells
where actual points are known, the zero set is completed by the lattice
itself, which is also what the correction series assumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import zeta

from .errors import (
    InconsistentProbes,
    NodeIndexMissing,
    NotUniformlyClose,
    PointNotInSet,
    TruncationTooSmall,
    ValidationError,
)
from .pointsets import PointSet, SquareLattice, nearest_distance, separation
from .space import LogComplex, reduce_phase

__all__ = [
    "CanonicalProduct",
    "GrowthBoundFit",
    "sigma_log",
    "quasi_period_constants",
    "canonical_product",
    "gfun_log",
    "gfun_derivative_at_node",
    "growth_check",
]

# Only exponents divisible by 4 survive the square-lattice symmetry.
_CORRECTION_ORDERS = (4, 8, 12, 16, 20)
_DIAGNOSTIC_ORDER = 24
_RESIDUAL_TOL = 1e-12
_PROBES = (0.1 + 0.2j, 0.25 - 0.15j, -0.3 + 0.05j)
# Power-series order for factors in shells beyond 2|z|/spacing, where
# |z/node| <= 1/2; the neglected remainder is below 2^-60 per factor.
_SERIES_ORDER = 60


@lru_cache(maxsize=None)
def _ring(k: int) -> np.ndarray:
    """Unit-lattice shell {m+in : max(|m|,|n|) = k}, fixed order."""
    ms = np.arange(-k, k + 1, dtype=np.float64)
    inner = ms[1:-1]
    return np.concatenate(
        [ms + 1j * k, ms - 1j * k, -k + 1j * inner, k + 1j * inner]
    ).astype(np.complex128)


@lru_cache(maxsize=None)
def _unit_lattice_shells(M: int) -> np.ndarray:
    """Unit-lattice points with shell index 1..M, shell-ordered."""
    return np.concatenate([_ring(k) for k in range(1, M + 1)])


@lru_cache(maxsize=None)
def _unit_tail_sums(M: int):
    """Skipped-shell power sums T_j(M) = sum_{k>M} sum_{ring k} lambda^-j.

    Shells up to K are summed directly; the remainder is captured by a
    least-squares model S_j(k)*k^(j-1) ~ a0 + a1/k + a2/k^2 + a3/k^3
    over the last 40 computed shells, whose tail sums are Hurwitz zeta
    values. Accuracy is at rounding level (validated against the exact
    order-4 lattice sum of the unit square lattice).
    """
    K = max(300, M + 60)
    sums = {}
    for j in _CORRECTION_ORDERS + (_DIAGNOSTIC_ORDER,):
        p = float(j)
        shell_vals = np.array(
            [np.sum(_ring(k) ** (-p)).real for k in range(M + 1, K + 1)]
        )
        partial = float(np.sum(shell_vals))
        ks = np.arange(K - 39, K + 1, dtype=np.float64)
        scaled = np.array(
            [np.sum(_ring(int(k)) ** (-p)).real * k ** (j - 1) for k in ks]
        )
        design = np.vstack([np.ones_like(ks), 1 / ks, 1 / ks**2, 1 / ks**3]).T
        coef, *_ = np.linalg.lstsq(design, scaled, rcond=None)
        tail = sum(coef[i] * zeta(j - 1 + i, K + 1) for i in range(4))
        sums[j] = partial + float(tail)
    return sums


def _check_truncation(rho: np.ndarray, M: int):
    """Raise if the post-correction truncation residual is above 1e-12.

    ``rho`` is ``|z|/spacing``. The residual of the correction series is
    estimated by its first neglected term (order 24) with a geometric
    factor for the remaining orders; the series requires ``rho < M+1``.
    """
    top = float(np.max(rho)) if np.size(rho) else 0.0
    if top >= M + 1:
        raise TruncationTooSmall(
            f"evaluation radius {top:.3g} spacings exceeds the truncation "
            f"index {M}; increase M to at least {math.ceil(2 * top + 20)}"
        )
    t24 = _unit_tail_sums(M)[_DIAGNOSTIC_ORDER]
    geo = 1.0 - (top / (M + 1)) ** 4
    est = top**_DIAGNOSTIC_ORDER * abs(t24) / _DIAGNOSTIC_ORDER / geo
    if est > _RESIDUAL_TOL:
        raise TruncationTooSmall(
            f"estimated truncation residual {est:.3g} exceeds "
            f"{_RESIDUAL_TOL:g} at radius {top:.3g} spacings; increase M "
            f"to at least {math.ceil(2 * top + 20)}"
        )
    return est


def _tail_correction(z_over_s: np.ndarray, M: int) -> np.ndarray:
    """Log contribution of all shells beyond M, as a complex array."""
    sums = _unit_tail_sums(M)
    out = np.zeros_like(z_over_s)
    for j in _CORRECTION_ORDERS:
        out = out - z_over_s ** float(j) * (sums[j] / j)
    return out


def _sigma_raw_log(spacing: float, M: int, zs: np.ndarray) -> np.ndarray:
    """Complex log of the truncated-and-corrected lattice product.

    No quasi-period reduction is applied; accuracy degrades as |z| grows,
    which the truncation diagnostic enforces.
    """
    zs = np.asarray(zs, dtype=np.complex128)
    _check_truncation(np.abs(zs) / spacing, M)
    lam = _unit_lattice_shells(M) * spacing
    u = zs[:, None] / lam[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.log(1.0 - u) + u + 0.5 * u * u
        lead = np.log(zs)
    return lead + np.sum(terms, axis=1) + _tail_correction(zs / spacing, M)


def _quasi_constants(spacing: float, M: int):
    probes = np.array(_PROBES, dtype=np.complex128) * spacing
    s = spacing

    def eta_from(period, half):
        vals = []
        for z in probes:
            pair = _sigma_raw_log(s, M, np.array([z + period, z]))
            diff = pair[0] - pair[1] - 1j * math.pi
            diff = complex(diff.real, float(reduce_phase(diff.imag)))
            vals.append(diff / (z + half))
        return np.array(vals)

    e1 = eta_from(s, s / 2)
    e2 = eta_from(1j * s, 1j * s / 2)
    eta1 = complex(np.mean(e1))
    eta2 = complex(np.mean(e2))
    scale = max(1.0, abs(eta1))
    spread = max(float(np.max(np.abs(e1 - eta1))), float(np.max(np.abs(e2 - eta2))))
    if spread > 1e-10 * scale:
        raise InconsistentProbes(
            f"quasi-period probes disagree by {spread:.3g}; increase M"
        )
    if abs(eta2 + 1j * eta1) > 1e-10 * scale:
        raise InconsistentProbes(
            "quasi-period constants break the quarter-turn symmetry "
            f"eta2 = -i*eta1 by {abs(eta2 + 1j * eta1):.3g}"
        )
    legendre = eta1 * (1j * s) - eta2 * s - 2j * math.pi
    if abs(legendre) > 1e-10:
        raise InconsistentProbes(
            f"Legendre-type relation residual {abs(legendre):.3g} exceeds 1e-10"
        )
    return eta1, eta2


@lru_cache(maxsize=None)
def _quasi_constants_cached(spacing: float, M: int):
    return _quasi_constants(spacing, M)


def quasi_period_constants(lattice: SquareLattice, M: int):
    """Constants eta1, eta2 of the lattice translation law.

    They are defined by ``sigma(z+s) = -sigma(z) exp(eta1 (z + s/2))``
    and ``sigma(z+is) = -sigma(z) exp(eta2 (z + is/2))`` and computed
    from raw truncated products at three probe points each. The probe
    spread, the quarter-turn symmetry ``eta2 = -i eta1``, and the
    Legendre-type relation ``eta1 (is) - eta2 s = 2 pi i`` are all
    verified to 1e-10 before the values are returned.

    Raises
    ------
    InconsistentProbes
        If any of the three consistency checks fails.
    TruncationTooSmall
        If M is too small for accurate probes.
    """
    if int(M) < 1:
        raise ValidationError("M must be a positive integer")
    return _quasi_constants_cached(lattice.spacing, int(M))


def sigma_log(lattice: SquareLattice, z: complex, M: int) -> LogComplex:
    """Log form of the lattice sigma function at ``z``.

    The argument is first reduced to the fundamental cell centered at
    the origin with the quasi-period law (constants from
    :func:`quasi_period_constants`), then the truncated, tail-corrected
    product is evaluated. Lattice points return an exact zero.

    Raises
    ------
    TruncationTooSmall
        If the truncation diagnostic exceeds 1e-12.
    """
    if int(M) < 1:
        raise ValidationError("M must be a positive integer")
    M = int(M)
    s = lattice.spacing
    z = complex(z)
    k = int(np.rint(z.real / s))
    l = int(np.rint(z.imag / s))
    w = z - s * complex(k, l)
    if w == 0:
        return LogComplex(-math.inf, 0.0)
    eta1, eta2 = quasi_period_constants(lattice, M)
    raw = complex(_sigma_raw_log(s, M, np.array([w]))[0])
    shift = (
        eta1 * k * (w + k * s / 2.0)
        + eta2 * l * (w + k * s + 1j * l * s / 2.0)
        + 1j * math.pi * ((k + l) % 2)
    )
    total = raw + shift
    return LogComplex(total.real, total.imag)


@dataclass(frozen=True)
class GrowthBoundFit:
    """Fitted constants of the two-sided weighted growth bound.

    The scan certifies ``C1 * exp(-c*phi(z)) * dist(z, points) <= w(z)``
    and ``w(z) <= C2 * exp(c*phi(z))`` at every grid point, where
    ``w(z) = exp(-alpha |z|^2 / 2) |g(z)|`` and
    ``phi(z) = max(|z|,1) * log(max(|z|,1))``. ``violations`` counts
    structural failures (a vanishing w away from the zero set, or
    non-finite values); it is 0 for a successful fit.
    """

    c: float
    C1: float
    C2: float
    grid_radius: float
    violations: int


class CanonicalProduct:
    """Truncated canonical product for a point set near a square lattice.

    Use :func:`canonical_product` to build. Factors carry the actual
    points at indices where the set provides them and lattice sites
    elsewhere, up to shell ``truncation_index``; remaining shells enter
    through the series correction.
    """

    __slots__ = (
        "gamma",
        "lattice",
        "z00",
        "z00_index",
        "truncation_index",
        "closeness_Q",
        "separation_q",
        "_nodes",
        "_lambdas",
        "_index_of",
        "_shell_starts",
        "_far_coeffs",
        "_far_quad",
    )

    def __init__(self, gamma, lattice, z00, z00_index, truncation_index,
                 closeness_Q, separation_q, nodes, lambdas, index_of,
                 shell_starts, far_coeffs, far_quad):
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "z00", z00)
        object.__setattr__(self, "z00_index", z00_index)
        object.__setattr__(self, "truncation_index", truncation_index)
        object.__setattr__(self, "closeness_Q", closeness_Q)
        object.__setattr__(self, "separation_q", separation_q)
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_lambdas", lambdas)
        object.__setattr__(self, "_index_of", index_of)
        object.__setattr__(self, "_shell_starts", shell_starts)
        object.__setattr__(self, "_far_coeffs", far_coeffs)
        object.__setattr__(self, "_far_quad", far_quad)

    def __setattr__(self, name, value):
        raise AttributeError("CanonicalProduct is immutable")

    def node_at(self, m: int, n: int) -> complex:
        """The point (or completing lattice site) at index (m, n)."""
        key = (int(m), int(n))
        if key in self._index_of:
            return complex(self.gamma.points[self._index_of[key]])
        return self.lattice.point(*key)

    def __repr__(self):
        return (
            f"CanonicalProduct({len(self.gamma)} points, "
            f"s={self.lattice.spacing:g}, M={self.truncation_index}, "
            f"Q={self.closeness_Q:g})"
        )


def canonical_product(gamma: PointSet, lattice: SquareLattice, truncation_index: int) -> CanonicalProduct:
    """Build the canonical product of an indexed point set.

    Raises
    ------
    NodeIndexMissing
        If the point set has no lattice indices.
    NotUniformlyClose
        If some point strays by spacing/2 or more from its lattice site,
        which would break the index bijection.
    """
    M = int(truncation_index)
    if M < 1:
        raise ValidationError("truncation_index must be a positive integer")
    if gamma.indices is None:
        raise NodeIndexMissing("canonical products need a lattice-indexed set")
    s = lattice.spacing
    sites = s * (gamma.indices[:, 0] + 1j * gamma.indices[:, 1])
    disp = np.abs(gamma.points - sites)
    q_max = float(np.max(disp))
    if q_max >= s / 2:
        raise NotUniformlyClose(
            f"closeness {q_max:g} is not below spacing/2 = {s / 2:g}"
        )
    sep = separation(gamma) if len(gamma) >= 2 else math.inf

    # closest point to 0; ties broken by the smaller canonical phase
    absv = np.abs(gamma.points)
    phases = reduce_phase(np.angle(gamma.points))
    pos = int(np.lexsort((phases, absv))[0])
    z00 = complex(gamma.points[pos])
    z00_index = (int(gamma.indices[pos, 0]), int(gamma.indices[pos, 1]))

    # Factor table over the full index square: the set's own points where
    # it provides them, lattice sites beyond the window's reach, nothing
    # at interior indices the set genuinely lacks (removed points).
    side = np.arange(-M, M + 1, dtype=np.int64)
    mm, nn = np.meshgrid(side, side)  # row-major in (n, m)
    lambdas = s * (mm.astype(np.float64) + 1j * nn.astype(np.float64))
    nodes = lambdas.copy()
    present = np.zeros(nodes.shape, dtype=bool)
    index_of = {}
    for i, (m, n) in enumerate(map(tuple, gamma.indices)):
        index_of[(int(m), int(n))] = i
        if abs(m) <= M and abs(n) <= M:
            nodes[n + M, m + M] = gamma.points[i]
            present[n + M, m + M] = True
    beyond = np.abs(lambdas) > gamma.window_radius - s / 2
    keep = present | (beyond & (lambdas != 0))
    m0, n0 = z00_index
    if abs(m0) <= M and abs(n0) <= M:
        keep[n0 + M, m0 + M] = False

    # shell-sort the factors and precompute suffix power sums so that
    # evaluation can treat far shells through a short series instead of
    # one log per factor
    shells = np.maximum(np.abs(mm), np.abs(nn))[keep].ravel()
    order = np.argsort(shells, kind="stable")
    nodes_s = nodes[keep].ravel()[order]
    lambdas_s = lambdas[keep].ravel()[order]
    shells_s = shells[order]
    shell_starts = np.searchsorted(shells_s, np.arange(M + 2))

    def suffix(values):
        return np.concatenate([np.cumsum(values[::-1])[::-1], [0.0]])

    js = np.arange(2, _SERIES_ORDER + 1)
    inv = 1.0 / nodes_s
    powj = inv.copy()
    far_coeffs = np.empty((M + 2, js.size), dtype=np.complex128)
    for col, j in enumerate(js):
        powj = powj * inv
        far_coeffs[:, col] = -suffix(powj)[shell_starts] / float(j)
    far_quad = suffix(0.5 / (lambdas_s * lambdas_s))[shell_starts]

    return CanonicalProduct(
        gamma=gamma,
        lattice=lattice,
        z00=z00,
        z00_index=z00_index,
        truncation_index=M,
        closeness_Q=q_max,
        separation_q=sep,
        nodes=nodes_s,
        lambdas=lambdas_s,
        index_of=index_of,
        shell_starts=shell_starts,
        far_coeffs=far_coeffs,
        far_quad=far_quad,
    )


def _gfun_log_many(cp: CanonicalProduct, zs: np.ndarray) -> np.ndarray:
    """Complex log of g at many points (phase not yet reduced).

    Factors in shells below ``2|z|/s`` are evaluated one log apiece;
    the remaining shells enter through the precomputed power-sum series
    (each such factor has ``|z/node| <= 1/2``), which keeps the cost
    per point proportional to ``(|z|/s)^2`` instead of the full table.
    """
    zs = np.asarray(zs, dtype=np.complex128).ravel()
    s = cp.lattice.spacing
    M = cp.truncation_index
    az = np.abs(zs)
    _check_truncation(az / s, M)
    nodes = cp._nodes
    lams = cp._lambdas
    out = np.empty(zs.shape, dtype=np.complex128)
    cuts = np.minimum(
        M + 1, np.ceil(2.0 * az / s + 0.5).astype(np.int64).clip(min=1)
    )
    for k0 in np.unique(cuts):
        sel = np.flatnonzero(cuts == k0)
        stop = int(cp._shell_starts[k0])
        near_nodes = nodes[:stop][None, :]
        inv_l2 = (0.5 / (lams[:stop] * lams[:stop]))[None, :]
        coeffs = cp._far_coeffs[k0]
        chunk = max(1, int(2_000_000 // max(stop, 1)))
        for start in range(0, sel.size, chunk):
            idx = sel[start : start + chunk]
            part = zs[idx]
            sq = (part * part)[:, None]
            u = part[:, None] / near_nodes
            # (node - z)/node rather than 1 - z/node: exact zero when z
            # hits a node, no cancellation right next to one
            lin = (near_nodes - part[:, None]) / near_nodes
            with np.errstate(divide="ignore", invalid="ignore"):
                terms = np.log(lin) + u + sq * inv_l2
                lead = np.log(part - cp.z00)
            acc = np.full(part.shape, coeffs[-1])
            for col in range(coeffs.size - 2, -1, -1):
                acc = acc * part + coeffs[col]
            far = (acc + cp._far_quad[k0]) * (part * part)
            out[idx] = (
                lead
                + np.sum(terms, axis=1)
                + far
                + _tail_correction(part / s, M)
            )
    return out


def gfun_log(cp: CanonicalProduct, z: complex) -> LogComplex:
    """Log form of the canonical product at ``z``.

    Exact zeros (log_mag = -inf) at the set's points and at the
    lattice sites completing the truncation square.

    Raises
    ------
    TruncationTooSmall
        If the truncation diagnostic exceeds 1e-12 at this radius.
    """
    val = complex(_gfun_log_many(cp, np.array([complex(z)]))[0])
    if val.real == -math.inf or math.isnan(val.imag):
        return LogComplex(-math.inf, 0.0)
    return LogComplex(val.real, val.imag)


def gfun_derivative_at_node(cp: CanonicalProduct, node_index) -> LogComplex:
    """Log form of g'(z_mn) at a simple zero.

    At a simple zero the derivative is the product of all remaining
    factors, so it is evaluated factor-by-factor in log form rather
    than by differencing.

    Raises
    ------
    PointNotInSet
        If the index does not belong to the point set.
    """
    m, n = int(node_index[0]), int(node_index[1])
    if (m, n) not in cp._index_of:
        raise PointNotInSet(f"index ({m}, {n}) is not in the point set")
    zq = complex(cp.gamma.points[cp._index_of[(m, n)]])
    s = cp.lattice.spacing
    M = cp.truncation_index
    _check_truncation(np.abs(np.array([zq])) / s, M)
    if (m, n) == cp.z00_index:
        # g(z) = (z - z00) P(z) with P the primed product: g'(z00) = P(z00)
        u = zq / cp._nodes
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = (
                np.log((cp._nodes - zq) / cp._nodes)
                + u
                + (zq * zq) * (0.5 / (cp._lambdas**2))
            )
        total = np.sum(terms) + complex(_tail_correction(np.array([zq / s]), M)[0])
        return LogComplex(total.real, total.imag)
    if abs(m) > M or abs(n) > M:
        raise TruncationTooSmall(
            f"node index ({m}, {n}) lies outside the truncation square M={M}"
        )
    lam_q = cp.lattice.point(m, n)
    u = zq / cp._nodes
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = (
            np.log((cp._nodes - zq) / cp._nodes)
            + u
            + (zq * zq) * (0.5 / (cp._lambdas**2))
        )
    # drop this node's own vanishing factor; its derivative contributes
    # -1/zq times the surviving exponential exp(1 + zq^2/(2 lam_q^2))
    mask = cp._nodes != zq
    total = np.sum(terms[mask])
    total = total + np.log(zq - cp.z00)
    total = total + np.log(-1.0 / zq) + 1.0 + (zq * zq) * (0.5 / (lam_q * lam_q))
    total = total + complex(_tail_correction(np.array([zq / s]), M)[0])
    return LogComplex(total.real, total.imag)


def growth_check(cp: CanonicalProduct, alpha: float, grid_radius: float, grid_step: float) -> GrowthBoundFit:
    """Scan the weighted modulus of g against two-sided growth bounds.

    The scan covers the disk ``|z| <= grid_radius``. The growth exponent
    ``c`` is fitted by anchoring the constants on the reference disk
    ``|z| <= max(1, 2s)`` where ``phi`` vanishes or is small, then
    taking the smallest ``c`` that absorbs every excursion of the upper
    envelope of ``log w`` and the lower envelope of ``log(w/dist)``
    beyond the anchors (slopes are measured against ``max(phi, 1)`` so
    the asymptotic exponent is not dominated by points just outside the
    unit disk). The returned constants are then re-optimized at that
    ``c``, so the reported triple satisfies both bounds at every grid
    point by construction. Periodic weighted moduli therefore fit with
    ``c`` at rounding level.
    """
    alpha = float(alpha)
    if alpha <= 0.0:
        raise ValidationError("alpha must be positive")
    grid_radius = float(grid_radius)
    grid_step = float(grid_step)
    if not (grid_radius > 0.0 and grid_step > 0.0):
        raise ValidationError("grid_radius and grid_step must be positive")
    if grid_radius > 0.6 * cp.gamma.window_radius + 1e-12:
        raise ValidationError(
            "grid_radius must stay within 0.6 of the window radius to "
            "avoid edge effects"
        )
    half = int(math.floor(grid_radius / grid_step))
    axis = grid_step * np.arange(-half, half + 1, dtype=np.float64)
    zz = (axis[None, :] + 1j * axis[:, None]).ravel()
    zz = zz[np.abs(zz) <= grid_radius]

    logs = _gfun_log_many(cp, zz)
    logw = logs.real - 0.5 * alpha * np.abs(zz) ** 2
    dist = nearest_distance(cp.gamma, zz)
    r = np.abs(zz)
    rr = np.maximum(r, 1.0)
    phi = rr * np.log(rr)

    nan_bad = int(np.count_nonzero(np.isnan(logw)))
    zero_bad = int(np.count_nonzero(np.isneginf(logw) & (dist > 0)))
    violations = nan_bad + zero_bad
    ok = ~np.isnan(logw)

    s = cp.lattice.spacing
    ref = (r <= max(1.0, 2.0 * s)) & ok
    if not np.any(ref):
        ref = ok
    upper_ref = float(np.max(logw[ref]))
    low_mask = (dist > 0) & ok & np.isfinite(logw)
    with np.errstate(divide="ignore"):
        logwd = logw - np.log(dist, where=dist > 0, out=np.full_like(dist, np.inf))
    lower_ref = float(np.min(logwd[ref & low_mask])) if np.any(ref & low_mask) else 0.0

    out = ~ref & ok
    denom = np.maximum(phi, 1.0)
    c_up = 0.0
    if np.any(out & np.isfinite(logw)):
        sel = out & np.isfinite(logw)
        c_up = float(np.max((logw[sel] - upper_ref) / denom[sel]))
    c_dn = 0.0
    if np.any(out & low_mask):
        sel = out & low_mask
        c_dn = float(np.max((lower_ref - logwd[sel]) / denom[sel]))
    c = max(0.0, c_up, c_dn)

    finite_w = ok & np.isfinite(logw)
    c2 = float(np.exp(np.max(logw[finite_w] - c * phi[finite_w])))
    c1 = float(np.exp(np.min(logwd[low_mask] + c * phi[low_mask])))
    return GrowthBoundFit(
        c=c, C1=c1, C2=c2, grid_radius=grid_radius, violations=violations
    )
