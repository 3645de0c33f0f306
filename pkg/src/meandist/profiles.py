"""One-dimensional cross-section densities and the distance functional I.

A profile stores a density h on [-1, 1] through its concavity root
f = h^{1/(d-1)} as a piecewise-linear knot list, so that the Brunn concavity
property is a linear constraint on knot values (non-increasing slopes) and
projection onto the admissible cone is exact. The admissible class is

    (a) h >= 0,
    (b) topological support of h equal to [-1, 1] (endpoints may vanish),
    (c) integral of h equal to 1,
    (d) f concave on [-1, 1],

and the functional under study is

    I(h) = 1/2 * int int |t1 - t2| h(t1) h(t2) dt1 dt2,

which equals E|P_u X1 - P_u X2| / |P_u K| when h is the normalized
cross-section density of a body K along u. Over the class (a)-(d) the
functional is sandwiched between (3d+1) / (2(d+1)(2d+1)), attained by the
extremal density h0(t) = (d/2)(1-|t|)^{d-1}, and 1/3, attained by the uniform
density; the optimizers below recover both ends numerically.

Because f is piecewise linear, h is a polynomial of degree d-1 on each cell,
and every integral here (cell masses, moments, the running integral of h, the
double integral with the |t1 - t2| kink split along the diagonal) is evaluated
by Gauss-Legendre rules of sufficient order to be exact up to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import expm1, log1p, exp, inf

import numpy as np
from numpy.polynomial.legendre import leggauss

from .bodies import ConvexBody, orthonormal_complement
from .sampling import RngStream

CONCAVITY_TOL = 1e-12
EVEN_TOL = 1e-12
MASS_TOL = 1e-10

__all__ = [
    "Profile",
    "PropertyCheck",
    "ValidationReport",
    "AffineProfileParams",
    "h0",
    "uniform_profile",
    "normalize",
    "validate_profile",
    "functional_I",
    "functional_I_via_H",
    "rearrange",
    "affine_I",
    "affine_profile",
    "profile_from_body",
    "random_profile",
    "maximize_I",
    "minimize_I",
    "profile_l1_distance",
]


# -- representation ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Profile:
    """Density h = f^{d-1} on [-1, 1], f piecewise linear and nonnegative.

    The constructor checks structure (knots strictly increasing from -1 to 1,
    nonnegative finite values, d >= 2); the analytic properties (b)-(d) are
    measured by ``validate_profile`` so that defective profiles can be built
    and reported on.
    """

    d: int
    knots: np.ndarray
    f_values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        d = int(self.d)
        if d < 2:
            raise ValueError(f"d: profiles need dimension >= 2, got {self.d!r}")
        t = np.asarray(self.knots, dtype=float).reshape(-1)
        f = np.asarray(self.f_values, dtype=float).reshape(-1)
        if t.size != f.size or t.size < 2:
            raise ValueError("knots/f_values: need matching arrays with at least 2 knots")
        if not (np.isfinite(t).all() and np.isfinite(f).all()):
            raise ValueError("knots/f_values: entries must be finite")
        if abs(t[0] + 1.0) > 1e-12 or abs(t[-1] - 1.0) > 1e-12:
            raise ValueError("knots: must start at -1 and end at 1")
        if not (np.diff(t) > 0).all():
            raise ValueError("knots: must be strictly increasing")
        if (f < -1e-12).any():
            raise ValueError("f_values: must be nonnegative")
        t = t.copy()
        t[0], t[-1] = -1.0, 1.0
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "knots", t)
        object.__setattr__(self, "f_values", np.maximum(f, 0.0))

    def f(self, t) -> np.ndarray:
        """Piecewise-linear root evaluated at t (vectorized)."""
        return np.interp(t, self.knots, self.f_values)

    def h(self, t) -> np.ndarray:
        """Density h = f^{d-1} evaluated at t (vectorized)."""
        return self.f(t) ** (self.d - 1)

    @property
    def mass(self) -> float:
        """Integral of h over [-1, 1], exact for the piecewise representation."""
        return _mass(self.d, self.knots, self.f_values)


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(k: int) -> tuple[np.ndarray, np.ndarray]:
    if k not in _GL_CACHE:
        _GL_CACHE[k] = leggauss(k)
    return _GL_CACHE[k]


def _cell_masses(d: int, knots: np.ndarray, f: np.ndarray) -> np.ndarray:
    # int of (linear f)^{d-1} over each cell via the homogeneous identity
    # (f1^d - f0^d) / (f1 - f0) = sum_i f0^i f1^{d-1-i}, cancellation-free
    f0, f1 = f[:-1], f[1:]
    w = np.diff(knots)
    acc = np.zeros_like(f0)
    for i in range(d):
        acc += f0**i * f1 ** (d - 1 - i)
    return w * acc / d


def _mass(d: int, knots: np.ndarray, f: np.ndarray) -> float:
    return float(_cell_masses(d, knots, f).sum())


def normalize(profile: Profile) -> Profile:
    """Rescale f so that the density integrates to exactly 1."""
    m = profile.mass
    if m <= 0.0:
        raise ValueError("cannot normalize a profile with zero mass")
    lam = m ** (-1.0 / (profile.d - 1))
    return Profile(profile.d, profile.knots, lam * profile.f_values, normalized=True)


def h0(d: int) -> Profile:
    """The extremal density (d/2)(1 - |t|)^{d-1}, exactly representable.

    Its root is the tent f(t) = (d/2)^{1/(d-1)} (1 - |t|) with knots at
    -1, 0, 1; the mass is 1 by construction.
    """
    if int(d) != d or d < 2:
        raise ValueError(f"d: need an integer dimension >= 2, got {d!r}")
    peak = (d / 2.0) ** (1.0 / (d - 1))
    return Profile(int(d), np.array([-1.0, 0.0, 1.0]), np.array([0.0, peak, 0.0]), normalized=True)


def uniform_profile(d: int) -> Profile:
    """The uniform density h = 1/2 on [-1, 1]."""
    c = 0.5 ** (1.0 / (d - 1))
    return Profile(d, np.array([-1.0, 1.0]), np.array([c, c]), normalized=True)


# -- validation ------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyCheck:
    passed: bool
    defect: float


@dataclass(frozen=True)
class ValidationReport:
    """Measured defects of the admissibility properties (a)-(d).

    ``unit_mass`` is None (not applicable) when the profile does not claim to
    be normalized.
    """

    nonnegative: PropertyCheck
    full_support: PropertyCheck
    unit_mass: PropertyCheck | None
    concave_root: PropertyCheck

    @property
    def all_passed(self) -> bool:
        checks = [self.nonnegative, self.full_support, self.concave_root]
        if self.unit_mass is not None:
            checks.append(self.unit_mass)
        return all(c.passed for c in checks)


def _slope_increase(knots: np.ndarray, f: np.ndarray) -> float:
    slopes = np.diff(f) / np.diff(knots)
    if slopes.size < 2:
        return 0.0
    return float(np.diff(slopes).max())


def validate_profile(profile: Profile) -> ValidationReport:
    """Measure the defects of properties (a)-(d) for a profile."""
    f = profile.f_values
    neg = float(max(0.0, -(f.min())))
    nonnegative = PropertyCheck(neg == 0.0, neg)

    interior = f[1:-1]
    min_int = float(interior.min()) if interior.size else float(f.min())
    full_support = PropertyCheck(min_int > 0.0, max(0.0, -min_int))

    if profile.normalized:
        defect = abs(profile.mass - 1.0)
        unit_mass = PropertyCheck(defect <= MASS_TOL, defect)
    else:
        unit_mass = None

    scale = max(1.0, float(np.abs(np.diff(f)).max() / np.diff(profile.knots).min()))
    rise = _slope_increase(profile.knots, f)
    concave_root = PropertyCheck(rise <= CONCAVITY_TOL * scale, max(0.0, rise))

    return ValidationReport(nonnegative, full_support, unit_mass, concave_root)


# -- the functional I ---------------------------------------------------------


def _functional_I_raw(d: int, knots: np.ndarray, f: np.ndarray) -> float:
    """I(h) by composite Gauss-Legendre, |t1 - t2| split along diagonal cells.

    Off-diagonal cell pairs reduce exactly to per-cell masses and first
    moments; diagonal cells are integrated over the lower triangle with a
    collapsed (Duffy) substitution that removes the kink. All rules are exact
    for the piecewise-polynomial integrand.
    """
    t0, t1 = knots[:-1], knots[1:]
    w = t1 - t0
    f0, f1 = f[:-1], f[1:]
    k = d + 2
    x, gw = _gl(k)
    lam = 0.5 * (x + 1.0)
    W = 0.5 * np.outer(w, gw)
    T = t0[:, None] + np.outer(w, lam)
    F = f0[:, None] + np.outer(f1 - f0, lam)
    H = F ** (d - 1)
    A = (W * H).sum(axis=1)
    B = (W * T * H).sum(axis=1)
    cumA = np.cumsum(A)
    cumB = np.cumsum(B)
    off = float((B[1:] * cumA[:-1]).sum() - (A[1:] * cumB[:-1]).sum())

    sig = lam
    wsig = 0.5 * gw
    dT = T - t0[:, None]
    slope = np.where(w > 0, (f1 - f0) / w, 0.0)
    Finner = f0[:, None, None] + slope[:, None, None] * dT[:, :, None] * sig[None, None, :]
    Hinner = Finner ** (d - 1)
    S = (Hinner * ((1.0 - sig) * wsig)[None, None, :]).sum(axis=-1)
    tri = float((W * H * dT * dT * S).sum())
    return off + tri


def functional_I(profile: Profile) -> float:
    """I(h) = 1/2 * double integral of |t1 - t2| against h x h.

    Requires a normalized profile; absolute accuracy is limited only by
    roundoff because the quadrature is exact for the representation.
    """
    if not profile.normalized:
        raise ValueError("functional_I requires a normalized profile")
    return _functional_I_raw(profile.d, profile.knots, profile.f_values)


def _require_even(profile: Profile) -> None:
    t, f = profile.knots, profile.f_values
    if not (
        np.allclose(t, -t[::-1], rtol=0.0, atol=EVEN_TOL)
        and np.allclose(f, f[::-1], rtol=0.0, atol=EVEN_TOL)
    ):
        raise ValueError("this identity requires an even profile (mirror-symmetric knots and values)")


def functional_I_via_H(profile: Profile) -> float:
    """I(h) = 1/2 - 2 * int_0^1 H~(t)^2 dt with H~(t) = int_0^t h, even h only.

    An independent closed-form route to the same number as ``functional_I``,
    used as a cross-check; valid only for even profiles.
    """
    if not profile.normalized:
        raise ValueError("functional_I_via_H requires a normalized profile")
    _require_even(profile)
    d = profile.d
    t, f = profile.knots, profile.f_values

    # restrict to [0, 1], splitting the cell that straddles 0 if needed
    if (t == 0.0).any():
        i0 = int(np.where(t == 0.0)[0][0])
        rt, rf = t[i0:], f[i0:]
    else:
        i0 = int(np.searchsorted(t, 0.0))
        fmid = float(np.interp(0.0, t, f))
        rt = np.concatenate([[0.0], t[i0:]])
        rf = np.concatenate([[fmid], f[i0:]])

    k = d + 2
    x, gw = _gl(k)
    lam = 0.5 * (x + 1.0)
    ta, tb = rt[:-1], rt[1:]
    fa, fb = rf[:-1], rf[1:]
    w = tb - ta
    cell_mass = _cell_masses(d, rt, rf)
    H_start = np.concatenate([[0.0], np.cumsum(cell_mass)[:-1]])

    T = ta[:, None] + np.outer(w, lam)
    F = fa[:, None] + np.outer(fb - fa, lam)
    # running integral of f^{d-1} from the cell start, cancellation-free form
    acc = np.zeros_like(F)
    for i in range(d):
        acc += F**i * fa[:, None] ** (d - 1 - i)
    Hrun = (T - ta[:, None]) * acc / d
    Hnodes = H_start[:, None] + Hrun
    W = 0.5 * np.outer(w, gw)
    int_H2 = float((W * Hnodes * Hnodes).sum())
    return 0.5 - 2.0 * int_H2


# -- symmetric decreasing rearrangement ---------------------------------------


def _flank_position(T: np.ndarray, F: np.ndarray, v: float, side: str) -> float:
    """Crossing position of level v on a monotone non-decreasing flank."""
    idx = int(np.searchsorted(F, v, side=side))
    if idx == 0:
        return float(T[0])
    if idx == len(F):
        return float(T[-1])
    fa, fb = F[idx - 1], F[idx]
    if fb == fa:
        return float(T[idx])
    return float(T[idx - 1] + (v - fa) / (fb - fa) * (T[idx] - T[idx - 1]))


def rearrange(profile: Profile) -> Profile:
    """Symmetric decreasing rearrangement of the profile.

    Level sets of the piecewise-linear root f are intervals (f is concave,
    hence unimodal), and their lengths are piecewise linear in the level, so
    the rearranged root is computed exactly at the image knots: f* is even,
    non-increasing on [0, 1], equimeasurable with f, and concave again. The
    density rearranges consistently because t -> t^{d-1} is monotone.
    """
    report = validate_profile(profile)
    if not report.concave_root.passed:
        raise ValueError("rearrange requires a concave root (property (d))")
    t, f = profile.knots, profile.f_values

    i_first = int(np.argmax(f))
    i_last = int(len(f) - 1 - np.argmax(f[::-1]))
    vmax = float(f[i_first])
    left_t, left_f = t[: i_first + 1], f[: i_first + 1]
    right_t, right_f = t[i_last:], f[i_last:]
    # right flank reversed becomes non-decreasing for the searchsorted helpers
    rrt, rrf = right_t[::-1], right_f[::-1]

    def strict_length(v: float) -> float:
        if v >= vmax:
            return 0.0
        a = _flank_position(left_t, left_f, v, side="right")
        b = -_flank_position(-rrt, rrf, v, side="right")
        return max(b - a, 0.0)

    def closed_length(v: float) -> float:
        if v > vmax:
            return 0.0
        a = _flank_position(left_t, left_f, v, side="left")
        b = -_flank_position(-rrt, rrf, v, side="left")
        return max(b - a, 0.0)

    xs: list[float] = []
    vs: list[float] = []
    for v in np.unique(f)[::-1]:
        v = float(v)
        ls = strict_length(v)
        lc = closed_length(v)
        xs.append(ls / 2.0)
        vs.append(v)
        if lc - ls > 1e-14:
            xs.append(lc / 2.0)
            vs.append(v)

    xs_arr = np.asarray(xs)
    vs_arr = np.asarray(vs)
    order = np.argsort(xs_arr, kind="stable")
    xs_arr, vs_arr = xs_arr[order], vs_arr[order]
    keep = np.concatenate([[True], np.diff(xs_arr) > 1e-14])
    xs_arr, vs_arr = xs_arr[keep], vs_arr[keep]
    xs_arr[-1] = 1.0  # support closure is exactly [-1, 1]

    if xs_arr[0] == 0.0:
        full_t = np.concatenate([-xs_arr[::-1], xs_arr[1:]])
        full_f = np.concatenate([vs_arr[::-1], vs_arr[1:]])
    else:
        full_t = np.concatenate([-xs_arr[::-1], xs_arr])
        full_f = np.concatenate([vs_arr[::-1], vs_arr])
    full_t = full_t + 0.0  # canonicalize -0.0
    full_t, full_f = _drop_collinear_knots(full_t, full_f)
    return Profile(profile.d, full_t, full_f, normalized=profile.normalized)


def _drop_collinear_knots(t: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Remove interior knots that lie exactly on the chord of their neighbours."""
    keep = np.ones(t.size, dtype=bool)
    scale = max(1.0, float(np.abs(f).max()))
    for i in range(1, t.size - 1):
        lam = (t[i] - t[i - 1]) / (t[i + 1] - t[i - 1])
        interp = (1.0 - lam) * f[i - 1] + lam * f[i + 1]
        if abs(f[i] - interp) <= 1e-14 * scale:
            keep[i] = False
    return t[keep], f[keep]


# -- the affine family -----------------------------------------------------------


@dataclass(frozen=True)
class AffineProfileParams:
    """Parameters of the affine-root family h(t) = C (a t + b)^{d-1} on [-1, 1].

    Derived quantities: r1 = b - a >= 0 and r2 = a + b, the root values at the
    endpoints up to the normalization constant, and p = r2/r1 - 1 (infinite
    when r1 = 0). C is fixed by unit mass; for a = 0 the density is the
    uniform 1/2 independently of b.
    """

    d: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"d: need an integer dimension >= 2, got {self.d!r}")
        if self.a < 0.0:
            raise ValueError(f"a: slope must be nonnegative, got {self.a!r}")
        if self.b < self.a:
            raise ValueError(f"b: need b >= a so the root stays nonnegative, got a={self.a!r}, b={self.b!r}")
        if self.b <= 0.0:
            raise ValueError(f"b: must be positive, got {self.b!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    @classmethod
    def from_p(cls, d: int, p: float) -> "AffineProfileParams":
        """Member with endpoint ratio parameter p = (a+b)/(b-a) - 1 > 0."""
        if not p > 0.0:
            raise ValueError(f"p must be positive, got {p!r}")
        return cls(d, a=p / 2.0, b=1.0 + p / 2.0)

    @property
    def r1(self) -> float:
        return self.b - self.a

    @property
    def r2(self) -> float:
        return self.a + self.b

    @property
    def p(self) -> float:
        return self.r2 / self.r1 - 1.0 if self.r1 > 0.0 else inf

    @property
    def c_ab(self) -> float:
        if self.a == 0.0:
            return 0.5 / self.b ** (self.d - 1)
        return self.d * self.a / (self.r2**self.d - self.r1**self.d)


def affine_profile(params: AffineProfileParams) -> Profile:
    """The normalized two-knot profile representing the family member."""
    c_root = params.c_ab ** (1.0 / (params.d - 1))
    f = np.array([c_root * params.r1, c_root * params.r2])
    prof = Profile(params.d, np.array([-1.0, 1.0]), f)
    return normalize(prof)


def affine_I(params: AffineProfileParams) -> float:
    """Closed-form I on the affine family.

    Boundary cases: a = 0 gives 1/3 (uniform); r1 = 0 gives
    2d / ((d+1)(2d+1)). Otherwise, with p = r2/r1 - 1,

        value(p) = 2d / ((d+1) p ((p+1)^d - 1)^2)
                   * ( ((p+1)^{2d+1} - 1) / (2d+1) - (p+1)^d p ),

    evaluated through expm1/log1p; below p = 1e-4 the cancellation in the
    bracket outgrows the 1/3 - O(p^2) signal, so the value is taken from the
    exact two-knot quadrature instead.
    """
    d = params.d
    if params.a == 0.0:
        return 1.0 / 3.0
    if params.r1 == 0.0:
        return 2.0 * d / ((d + 1) * (2 * d + 1))
    p = params.p
    if p < 1e-4:
        return functional_I(affine_profile(params))
    lp = log1p(p)
    A = expm1(d * lp)
    bracket = expm1((2 * d + 1) * lp) / (2 * d + 1) - exp(d * lp) * p
    return 2.0 * d / ((d + 1) * p * A * A) * bracket


# -- profiles of bodies ------------------------------------------------------------


def profile_from_body(
    body: ConvexBody,
    u,
    n_knots: int,
    n_inner: int = 20_000,
    inner_seed: int = 0,
) -> Profile:
    """Normalized cross-section profile of a body along a unit direction.

    Cross-section volumes |K cap (s u + u-perp)| are sampled at n_knots
    stations, mapped affinely to [-1, 1] and rescaled by |P_u K| / 2. In the
    plane the sections are chords and exact; for d >= 3 the section areas are
    estimated by a fixed-budget membership Monte Carlo over the shadow box
    (common random offsets across stations), followed by an exact projection
    of the root onto the concave cone to strip the sampling noise.
    """
    if n_knots < 3:
        raise ValueError(f"need at least 3 knots, got {n_knots}")
    d = body.dim
    if d < 2:
        raise ValueError("profiles need a body of dimension >= 2")
    u = np.asarray(u, dtype=float).reshape(-1)
    hi = body.support(u)
    lo = -body.support(-u)
    half_width = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    t = np.linspace(-1.0, 1.0, n_knots)
    stations = mid + t * half_width

    if d == 2:
        perp = orthonormal_complement(u)[:, 0]
        sections = body.chord_lengths(stations[:, None] * u[None, :], perp)
    else:
        W = orthonormal_complement(u)
        slo = -body.support_many(-W.T)
        shi = body.support_many(W.T)
        box_vol = float(np.prod(shi - slo))
        gen = RngStream(inner_seed, 0).generator
        y = slo + gen.random((n_inner, d - 1)) * (shi - slo)
        offsets = y @ W.T
        sections = np.empty(n_knots)
        for i, s in enumerate(stations):
            pts = s * u + offsets
            sections[i] = box_vol * float(body.contains_many(pts).mean())

    h_vals = half_width * sections / body.volume()
    f_vals = np.maximum(h_vals, 0.0) ** (1.0 / (d - 1))
    f_vals = _project_concave_values(t, f_vals)
    prof = Profile(d, t, np.maximum(f_vals, 0.0))
    return normalize(prof)


# -- random admissible profiles ---------------------------------------------------


def random_profile(
    d: int,
    rng: RngStream,
    m_knots: int | None = None,
    even: bool = False,
) -> Profile:
    """Random normalized profile satisfying (a)-(d).

    The root is a minimum of random affine functions positive on (-1, 1)
    (hence concave), occasionally pinned to zero at the endpoints through
    roof lines; evaluating at the knots keeps concavity exactly. With
    ``even`` the construction is symmetrized.
    """
    gen = rng.generator
    if m_knots is None:
        m_knots = int(gen.integers(5, 12))
    if even:
        half = np.sort(gen.random(max(m_knots // 2 - 1, 1)))
        right = np.unique(np.concatenate([[0.0], half, [1.0]]))
        knots = np.concatenate([-right[::-1], right[1:]])
    else:
        inner = np.sort(gen.random(m_knots - 2)) * 2.0 - 1.0
        knots = np.unique(np.concatenate([[-1.0], inner, [1.0]]))

    n_lines = int(gen.integers(2, 5))
    ends = gen.uniform(0.05, 2.0, size=(n_lines, 2))
    vals = np.full(knots.shape, np.inf)
    for e0, e1 in ends:
        line = e0 * (1.0 - knots) / 2.0 + e1 * (1.0 + knots) / 2.0
        vals = np.minimum(vals, line)
        if even:
            vals = np.minimum(vals, e0 * (1.0 + knots) / 2.0 + e1 * (1.0 - knots) / 2.0)
    if gen.random() < 0.4:
        c = gen.uniform(0.5, 2.5)
        vals = np.minimum(vals, c * (1.0 - knots))
        vals = np.minimum(vals, c * (1.0 + knots))
    return normalize(Profile(d, knots, vals))


# -- optimization over the admissible cone ----------------------------------------


def _pav_nonincreasing(y: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Weighted least-squares projection onto non-increasing sequences."""
    vals: list[float] = []
    wts: list[float] = []
    cnts: list[int] = []
    for yi, wi in zip(y, w):
        vals.append(float(yi))
        wts.append(float(wi))
        cnts.append(1)
        while len(vals) > 1 and vals[-2] < vals[-1]:
            v = (vals[-1] * wts[-1] + vals[-2] * wts[-2]) / (wts[-1] + wts[-2])
            wts[-2] += wts[-1]
            cnts[-2] += cnts[-1]
            vals[-2] = v
            vals.pop()
            wts.pop()
            cnts.pop()
    return np.repeat(vals, cnts)


def _project_concave_values(knots: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Pool-adjacent-violators on the slopes, anchored at the left value."""
    dt = np.diff(knots)
    slopes = np.diff(f) / dt
    if slopes.size >= 2 and np.diff(slopes).max() > 0.0:
        slopes = _pav_nonincreasing(slopes, dt)
        f = np.concatenate([[f[0]], f[0] + np.cumsum(slopes * dt)])
    return f


def _search(
    d: int,
    m_knots: int,
    iters: int,
    seed: int,
    maximize: bool,
    even: bool,
    init: Profile | None,
) -> tuple[Profile, float]:
    if m_knots < 3:
        raise ValueError(f"need at least 3 knots, got {m_knots}")
    if iters < 1:
        raise ValueError(f"need at least 1 iteration, got {iters}")
    if even and m_knots % 2 == 0:
        m_knots += 1  # an even search needs a knot at 0
    knots = np.linspace(-1.0, 1.0, m_knots)
    mid = m_knots // 2

    if init is not None:
        f = np.interp(knots, init.knots, init.f_values)
    elif maximize:
        f = 1.0 - np.abs(knots)  # ascent starts from the opposite extremal shape
        f[mid if m_knots % 2 == 1 else 0] = 1.0
    else:
        f = np.ones_like(knots)

    def rebuild_even(rf: np.ndarray) -> np.ndarray | None:
        dt = np.diff(knots[mid:])
        slopes = np.diff(rf) / dt
        slopes = np.minimum(_pav_nonincreasing(slopes, dt), 0.0)
        rf = np.concatenate([[rf[0]], rf[0] + np.cumsum(slopes * dt)])
        if rf[-1] < -1e-12:
            return None
        rf = np.maximum(rf, 0.0)
        return np.concatenate([rf[::-1], rf[1:]])

    def clean(cand: np.ndarray) -> np.ndarray | None:
        cand = _project_concave_values(knots, cand)
        if cand[0] < -1e-12 or cand[-1] < -1e-12:
            return None
        cand = np.maximum(cand, 0.0)
        if cand[1:-1].min() <= 0.0:
            return None
        m = _mass(d, knots, cand)
        if not m > 0.0:
            return None
        return cand * m ** (-1.0 / (d - 1))

    gen = RngStream(seed, 0).generator
    f = clean(f)
    if f is None:
        raise ValueError("initial profile is infeasible")
    best = _functional_I_raw(d, knots, f)
    sign = 1.0 if maximize else -1.0
    step = 0.3

    for _ in range(iters):
        if even:
            rf = f[mid:].copy()
            j = int(gen.integers(rf.size))
            rf[j] += step * gen.standard_normal()
            if rf[j] < 0.0:
                rf[j] = 0.0
            full = rebuild_even(rf)
        else:
            full = f.copy()
            j = int(gen.integers(full.size))
            full[j] += step * gen.standard_normal()
        if full is None:
            step = max(step * 0.98, 1e-5)
            continue
        cand = clean(full)
        if cand is None:
            step = max(step * 0.98, 1e-5)
            continue
        val = _functional_I_raw(d, knots, cand)
        if sign * (val - best) > 0.0:
            f, best = cand, val
            step = min(step * 1.3, 1.0)
        else:
            step = max(step * 0.985, 1e-5)
    return Profile(d, knots, f, normalized=True), best


def maximize_I(
    d: int, m_knots: int = 9, iters: int = 5000, seed: int = 0, init: Profile | None = None
) -> tuple[Profile, float]:
    """Seeded ascent of I over the admissible cone.

    Projected coordinate ascent: perturb one knot of the root, project back
    onto the nonnegative concave cone (pool-adjacent-violators on the
    slopes), renormalize, accept on improvement. The supremum of I over the
    class is 1/3, approached by flat roots.
    """
    return _search(d, m_knots, iters, seed, maximize=True, even=False, init=init)


def minimize_I(
    d: int, m_knots: int = 9, iters: int = 5000, seed: int = 0, init: Profile | None = None
) -> tuple[Profile, float]:
    """Seeded descent of I over even admissible profiles.

    The restriction to even profiles is justified by the rearrangement
    inequality I(h) >= I(h*); the minimum over the class is
    (3d+1)/(2(d+1)(2d+1)), attained by the tent root of h0.
    """
    return _search(d, m_knots, iters, seed, maximize=False, even=True, init=init)


def profile_l1_distance(p: Profile, q: Profile, n_points: int = 20_001) -> float:
    """L1 distance between the two densities on [-1, 1] (midpoint rule)."""
    t = np.linspace(-1.0, 1.0, n_points)
    mid = 0.5 * (t[:-1] + t[1:])
    return float(np.abs(p.h(mid) - q.h(mid)).sum() * (2.0 / (n_points - 1)))
