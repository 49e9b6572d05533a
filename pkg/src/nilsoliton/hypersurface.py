"""Codimension-one subalgebras s = n - R xi of a nilpotent Iwasawa algebra.

The normal vector is xi = sum_{gamma in Phi} a_gamma xi_gamma with xi_gamma a
unit vector of g_gamma (gamma simple).  Internally xi = v / sqrt(q) where v
has coefficients in a single field (rationals in exact mode) and q = <v, v>;
every operator quadratic in xi is then exact.  All vectors below are
n_algebra coordinates unless stated otherwise.
"""
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import mpmath
import numpy as np
from gmpy2 import mpq

from . import linalg
from .algebra import subalgebra_restrict, to_float_algebra
from .errors import (CrossCheckFailure, DegenerateDimension, InvalidSpec, NotASubalgebra,
                     NotTangent)
from .geometry import SolitonVerdict, decide_from_ricci, ricci_operator
from .iwasawa import ad_on_n, mean_curvature_vector, ricci_N_structure
from .scalars import (EXACT, FLOAT, FLOAT_TOL, QuadraticNumber, parse_coefficient, squarefree_decompose,
                      to_float, zeros)

AUTO = "auto"


@dataclass(frozen=True)
class NormalVectorSpec:
    phi: tuple                  # simple root names, e.g. ('alpha1', 'alpha3')
    coeffs: tuple               # coefficient strings as given
    seed: int = None            # None: first basis vector of each g_gamma
    squares: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if not self.phi:
            raise InvalidSpec("phi must be nonempty")
        if len(self.phi) != len(self.coeffs):
            raise InvalidSpec("one coefficient per root is required")
        if len(set(self.phi)) != len(self.phi):
            raise InvalidSpec("repeated root in phi")
        sq = []
        for t in self.coeffs:
            try:
                s, _ = parse_coefficient(str(t))
            except ValueError as e:
                raise InvalidSpec(str(e)) from None
            if s <= 0:
                raise InvalidSpec(f"coefficient {t!r} must be positive")
            sq.append(s)
        object.__setattr__(self, "squares", tuple(sq))

    @property
    def decimal(self):
        return any("." in str(t) for t in self.coeffs)

    def text(self):
        return ",".join(f"{p}={c}" for p, c in zip(self.phi, self.coeffs))


def parse_spec(text, seed=None):
    """'alpha1=0.70710678,alpha3=s2/2' -> NormalVectorSpec."""
    phi, coeffs = [], []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise InvalidSpec(f"expected name=value, got {part!r}")
        name, val = (s.strip() for s in part.split("=", 1))
        phi.append(name)
        coeffs.append(val)
    return NormalVectorSpec(tuple(phi), tuple(coeffs), seed)


def root_name(coords):
    parts = []
    for i, c in enumerate(coords):
        if c:
            parts.append(f"{'' if c == 1 else c}alpha{i + 1}")
    return "+".join(parts)


def _simple_coords(name, rank):
    if not name.startswith("alpha") or not name[5:].isdigit():
        raise InvalidSpec(f"{name!r} is not a simple root name")
    k = int(name[5:])
    if not 1 <= k <= rank:
        raise InvalidSpec(f"{name!r} is not a simple root of a rank {rank} system")
    return tuple(int(i == k - 1) for i in range(rank))


@lru_cache(maxsize=None)
def _float_n(iw):
    return to_float_algebra(iw.n_algebra)


@lru_cache(maxsize=None)
def theta_bracket_tensor(iw):
    """T[a, j, k]: coefficient of b_k in the n-projection of [theta b_a, b_j]."""
    g = iw.g
    br = linalg.einsum("ai,bj,ijk->abk", iw.theta_n, iw.n_vectors, g.c_scaled)
    return linalg.einsum("abk,ck->abc", br, iw.n_projector)


@lru_cache(maxsize=None)
def mean_curvature_on_n(iw):
    Hm, _ = mean_curvature_vector(iw)
    return Hm, ad_on_n(iw, Hm)


@lru_cache(maxsize=None)
def einstein_constant(iw):
    return ricci_N_structure(iw)[0]


def _mode_value(x, mode):
    return x if mode == EXACT else to_float(x)


def _unit_choice(iw, coords, seed, idx):
    sl = iw.slices[coords]
    m = iw.n_algebra.dim
    u = zeros(m)
    if seed is None:
        u[sl.start] = mpq(1)
        return u
    rng = np.random.default_rng([int(seed), idx])
    while True:
        w = rng.integers(-3, 4, size=sl.stop - sl.start)
        if np.any(w):
            break
    for j, x in enumerate(w):
        u[sl.start + j] = mpq(int(x))
    return u


@dataclass(frozen=True, eq=False)
class HypersurfaceAlgebra:
    iw: object
    spec: NormalVectorSpec
    mode: str
    phi: tuple                  # root coords of Phi, in spec order
    units: dict                 # gamma -> u_gamma (unnormalized vector of g_gamma)
    parts: dict                 # gamma -> V_gamma, v = sum V_gamma, a_gamma^2 = |V_gamma|^2 / q
    v: np.ndarray
    xi_norm2: object            # q
    s_basis: np.ndarray         # rows
    labels: tuple               # ('root', nu) | ('perp', gamma) | ('eta', (alpha, lambda))
    eta_vectors: dict           # (alpha, lambda) -> unnormalized eta
    s_algebra: object
    fallback: bool = False      # exact requested but coefficients forced float

    @property
    def n(self):
        return _float_n(self.iw) if self.mode == FLOAT else self.iw.n_algebra

    @property
    def dim(self):
        return len(self.s_basis)

    def a2(self, gamma):
        """a_gamma^2 after normalization."""
        V = self.parts[gamma]
        return linalg.inner(V, self.n.gram, V) / self.xi_norm2

    def part_norm2(self, gamma):
        V = self.parts[gamma]
        return linalg.inner(V, self.n.gram, V)

    @cached_property
    def inv_sqrt_q(self):
        q = self.xi_norm2
        if self.mode == FLOAT:
            return 1 / mpmath.sqrt(q)
        s, d = squarefree_decompose(q)
        return mpq(1) / s if d == 1 else QuadraticNumber(0, mpq(1) / (s * d), d)

    @property
    def xi(self):
        return np.array([x * self.inv_sqrt_q for x in self.v], dtype=object)

    # operators on n (matrices acting on coordinate columns)

    @cached_property
    def L1(self):
        """X -> [X, v]."""
        return linalg.einsum("a,jak->kj", self.v, self.n.c)

    @cached_property
    def L2(self):
        """X -> [X, theta v]_n."""
        return -linalg.einsum("a,ajk->kj", self.v, theta_bracket_tensor(self.iw))

    @cached_property
    def rs_matrix(self):
        """R_xi + S_xi^2 on n via the general formula (valid on s)."""
        L1, L2 = self.L1, self.L2
        return (linalg.matmul(L2, L1) - linalg.matmul(L1, L2)) / (2 * self.xi_norm2)

    @cached_property
    def shape_matrix_v(self):
        """sqrt(q) S_xi on n: -1/2 [X, v] + 1/2 [X, theta v]_n."""
        half = mpq(1, 2) if self.mode == EXACT else mpmath.mpf(1) / 2
        return (self.L2 - self.L1) * half

    @cached_property
    def adH(self):
        m = mean_curvature_on_n(self.iw)[1]
        return m if self.mode == EXACT else np.frompyfunc(to_float, 1, 1)(m)

    @cached_property
    def _coords_map(self):
        """Q with s-coordinates = Q y for y in s."""
        E, G = self.s_basis, self.n.gram
        gs = linalg.einsum("ai,ij,bj->ab", E, G, E)
        return linalg.matmul(linalg.inverse(gs, self.mode), linalg.matmul(E, G))

    def tol(self, scale=1):
        return None if self.mode == EXACT else FLOAT_TOL * max(mpmath.mpf(1), to_float(scale))

    def normal_component(self, y):
        return linalg.inner(y, self.n.gram, self.v) / self.xi_norm2

    def project(self, y):
        """Orthogonal projection of y in n onto s."""
        return y - self.v * self.normal_component(y)

    def to_s(self, y, check=True):
        """s-coordinates of y in s."""
        c = linalg.matmul(self._coords_map, y)
        if check:
            back = linalg.matmul(c, self.s_basis)
            if not linalg.all_zero(back - y, self.mode, self.tol(linalg.max_abs(y))):
                raise NotTangent("vector is not tangent to s")
        return c

    def check_tangent(self, x):
        if not linalg.all_zero([self.normal_component(x)], self.mode, self.tol()):
            raise NotTangent("vector is not orthogonal to xi")

    def operator_in_s(self, M, project=False):
        """Matrix of an n-endomorphism restricted to s (projected onto s if asked)."""
        imgs = linalg.einsum("ij,aj->ai", M, self.s_basis)
        if project:
            imgs = np.array([self.project(y) for y in imgs], dtype=object)
        cols = [self.to_s(y) for y in imgs]
        return np.array(cols, dtype=object).T.copy()

    @cached_property
    def D0(self):
        """(ad H|_s)^T - (R_xi + S_xi^2) in s-coordinates."""
        return self.operator_in_s(self.adH, project=True) - self.operator_in_s(self.rs_matrix)


def make_hypersurface(iw, spec, mode=AUTO):
    """Build s = n - R xi; raises InvalidSpec, DegenerateDimension, NotASubalgebra."""
    rank = iw.rank
    phi = tuple(_simple_coords(name, rank) for name in spec.phi)
    m = iw.n_algebra.dim
    if m <= 1:
        raise DegenerateDimension("n is one-dimensional, so s would be zero")
    units = {g: _unit_choice(iw, g, spec.seed, i) for i, g in enumerate(phi)}
    G = iw.n_algebra.gram
    # v_gamma = w_gamma u_gamma with w_gamma^2 = a_gamma^2 / |u_gamma|^2
    w2 = {g: sq / linalg.inner(units[g], G, units[g]) for g, sq in zip(phi, spec.squares)}
    classes = {g: squarefree_decompose(x) for g, x in w2.items()}
    # at most two square classes fit in a single quadratic field after dropping a common factor
    ds = sorted({d for _, d in classes.values()})
    exact_ok = len(ds) <= 2
    fallback = False
    if mode == AUTO:
        mode = EXACT if exact_ok else FLOAT
    elif mode == EXACT and not exact_ok:
        mode, fallback = FLOAT, True
    if mode == EXACT:
        parts = {}
        for g in phi:
            s, d = classes[g]
            if d == ds[0]:
                parts[g] = units[g] * s
            else:
                # s sqrt(d) / sqrt(d0) = s t sqrt(D) / d0 with d d0 = t^2 D
                t, D = squarefree_decompose(mpq(d * ds[0]))
                parts[g] = units[g] * QuadraticNumber(0, s * t / ds[0], D)
    else:
        parts = {g: np.array([to_float(x) * mpmath.sqrt(to_float(w2[g])) for x in units[g]], dtype=object)
                 for g in phi}
    v = sum(parts.values(), zeros(m) if mode == EXACT else np.array([mpmath.mpf(0)] * m, dtype=object))
    n_alg = iw.n_algebra if mode == EXACT else _float_n(iw)
    q = linalg.inner(v, n_alg.gram, v)
    if isinstance(q, QuadraticNumber):
        if q.b != 0:
            raise NotASubalgebra("normal vector norm left the rationals")
        q = q.a
    rows, labels = [], []
    for root in iw.roots.positive_roots:
        g = root.coords
        sl = iw.slices[g]
        basis = []
        for j in range(sl.start, sl.stop):
            e = zeros(m)
            e[j] = mpq(1)
            basis.append(e)
        if g not in phi:
            rows.extend(basis)
            labels.extend([("root", g)] * len(basis))
            continue
        u = units[g]
        uu = linalg.inner(u, G, u)
        perp = []
        for e in basis:
            x = e - u * (linalg.inner(e, G, u) / uu)
            for p in perp:
                x = x - p * (linalg.inner(x, G, p) / linalg.inner(p, G, p))
            if any(x):
                perp.append(x)
        rows.extend(perp)
        labels.extend([("perp", g)] * len(perp))
    etas = {}
    alpha = phi[0]
    Na = linalg.inner(parts[alpha], n_alg.gram, parts[alpha])
    for lam in phi[1:]:
        Nl = linalg.inner(parts[lam], n_alg.gram, parts[lam])
        eta = parts[alpha] * Nl - parts[lam] * Na
        etas[(alpha, lam)] = eta
        rows.append(eta)
        labels.append(("eta", (alpha, lam)))
    E = np.array(rows, dtype=object)
    if len(E) != m - 1:
        raise NotASubalgebra(f"s basis has {len(E)} vectors, expected {m - 1}")
    tol = None if mode == EXACT else FLOAT_TOL
    normal = linalg.einsum("ai,ij,j->a", E, n_alg.gram, v)
    if not linalg.all_zero(normal, mode, tol):
        raise NotASubalgebra("s basis is not orthogonal to xi")
    # normality [s, n] in s
    Gv = linalg.matmul(n_alg.gram, v)
    K = linalg.einsum("ai,ijk,k->aj", E, n_alg.c, Gv)
    if not linalg.all_zero(K, mode, tol):
        bad = next((a, j) for a in range(K.shape[0]) for j in range(K.shape[1])
                   if not linalg.all_zero([K[a, j]], mode, tol))
        raise NotASubalgebra("[s, n] is not contained in s", bad)
    s_alg = subalgebra_restrict(n_alg, E)
    return HypersurfaceAlgebra(iw, spec, mode, phi, units, parts, v, q, E, tuple(labels), etas, s_alg,
                               fallback)


def shape_operator(h, X):
    """S_xi X = -1/2 [X, xi] + 1/2 [X, theta xi]_n for X in s (n-coordinates)."""
    h.check_tangent(X)
    y = linalg.matmul(h.shape_matrix_v, X)
    h.to_s(y)
    return np.array([t * h.inv_sqrt_q for t in y], dtype=object)


def shape_trace(h):
    M = h.operator_in_s(h.shape_matrix_v)
    return sum(M[i, i] for i in range(M.shape[0])) * h.inv_sqrt_q if M.size else mpq(0)


def jacobi_plus_shape_sq(h, X):
    """(R_xi + S_xi^2) X by the general formula; closed forms are compared in closed_form_checks."""
    h.check_tangent(X)
    y = linalg.matmul(h.rs_matrix, X)
    h.to_s(y)
    return y


def D_endomorphism(h, c):
    D = h.D0.copy()
    for i in range(D.shape[0]):
        D[i, i] = D[i, i] + c
    return D


# ---------------------------------------------------------------------------
# closed forms

def _g_bracket(h, x_g, y_g):
    g = h.iw.g
    return linalg.einsum("i,j,ijk->k", x_g, y_g, g.c_scaled if h.mode == EXACT else g.c)


def closed_form_checks(h):
    """{name: (count, max residual)} comparing closed forms with the general formula / direct ad(H)."""
    iw = h.iw
    out = {}

    def record(name, diff):
        cnt, worst = out.get(name, (0, mpq(0) if h.mode == EXACT else mpmath.mpf(0)))
        r = linalg.max_abs(diff)
        out[name] = (cnt + 1, r if r > worst else worst)

    phi = h.phi
    simple = [r.coords for r in iw.roots.simple_roots]
    rs = h.rs_matrix
    adH = h.adH

    def cart(a, b):
        return _mode_value(iw.cartan(a, b), h.mode)

    def l2(a):
        return _mode_value(iw.length2(a), h.mode)

    def doubled(a):
        return tuple(2 * x for x in a) in iw.slices

    def kmult(a):
        return iw.mult(a) + 2 * iw.mult(tuple(2 * x for x in a))

    for x, lab in zip(h.s_basis, h.labels):
        kind, key = lab
        gx = linalg.matmul(rs, x)
        if kind == "root":
            nu = key
            coef = sum(h.a2(gm) * l2(gm) * cart(gm, nu) for gm in phi) / 2
            record("rxi_sxi_ii", gx - x * coef)
        if kind == "perp":
            al = key
            others = [lm for lm in phi if lm != al]
            if not doubled(al) and all(cart(al, lm) == 0 for lm in others):
                record("rxi_sxi_iii", gx)
            if len(phi) == 2 and not doubled(al) and cart(al, others[0]) < 0:
                lm = others[0]
                Va_g = iw.to_g(h.parts[al])
                t = _g_bracket(h, linalg.matmul(iw.source.theta, Va_g), iw.to_g(x))
                t = _g_bracket(h, t, iw.to_g(h.parts[lm]))
                t_n = linalg.matmul(iw.n_projector, t)
                expect = (x * (h.part_norm2(lm) * l2(al) * cart(al, lm)) - t_n) / (2 * h.xi_norm2)
                record("rxi_sxi_iv", gx - expect)
        if kind in ("root", "perp"):
            nu = key
            b = nu
            coef = sum(b[i] * l2(simple[i]) * kmult(simple[i]) for i in range(len(b)))
            y = linalg.matmul(adH, x)
            record("ad_i", y - x * coef)
            record("ad_i_tangent", y - h.project(y))
        if kind == "eta":
            al, lm = key
            q = h.xi_norm2
            N = {g: h.part_norm2(g) for g in phi}
            V = h.parts

            def plus_root(a, b):
                return tuple(i + j for i, j in zip(a, b)) in iw.slices

            phi_a = [nu for nu in phi if nu != al and plus_root(al, nu)]
            phi_l = [mu for mu in phi if mu != lm and plus_root(lm, mu)]
            expect = zeros(len(x)) if h.mode == EXACT else np.array([mpmath.mpf(0)] * len(x), dtype=object)
            for nu in phi_a:
                expect = expect + (V[al] * N[nu] - V[nu] * N[al]) * (l2(al) * cart(al, nu) * N[lm] / q)
            for mu in phi_l:
                expect = expect + (V[mu] * N[lm] - V[lm] * N[mu]) * (l2(lm) * cart(lm, mu) * N[al] / q)
            record("rs_eta_i", gx - expect / 2)
            rest = [nu for nu in phi if nu not in (al, lm)]
            if all(cart(al, nu) == 0 and cart(lm, nu) == 0 for nu in rest):
                coef = (h.a2(al) + h.a2(lm)) * l2(al) * cart(al, lm) / 2
                record("rs_eta_ii", gx - x * coef)
            y = h.project(linalg.matmul(adH, x))
            if l2(al) == l2(lm) if h.mode == EXACT else abs(l2(al) - l2(lm)) < 1e-20:
                record("ad_ii", y - x * (l2(al) * iw.mult(al)))
            if len(phi) == 2:
                s_, t_ = (al, lm) if l2(al) <= l2(lm) else (lm, al)
                coef = h.a2(t_) * l2(s_) * kmult(s_) + h.a2(s_) * l2(t_) * iw.mult(t_)
                record("ad_iii", y - x * coef)
    return out


# ---------------------------------------------------------------------------
# decision

@dataclass(frozen=True, eq=False)
class CaseResult:
    formula: SolitonVerdict
    oracle: SolitonVerdict
    k: object
    gauss_residual: object
    paths_agree: bool
    nilpotency: int = None


def decide_both(h):
    """Run the formula path and the intrinsic-Ricci path; they must agree."""
    s = h.s_algebra
    mode = h.mode
    k = _mode_value(einstein_constant(h.iw), mode)
    D0 = h.D0
    zero = mpq(0) if mode == EXACT else mpmath.mpf(0)
    # D(c) = D0 + c id is a derivation  <=>  D0 - (-c) id is
    raw = decide_from_ricci(s, D0)
    c_formula = -raw.c_fit if raw.c_fit is not None else zero
    D = D_endomorphism(h, c_formula) if raw.is_soliton else None
    formula = SolitonVerdict(raw.is_soliton, c_formula if raw.is_soliton else None, D, raw.residual,
                             mode, c_formula)
    ric = ricci_operator(s)
    oracle = decide_from_ricci(s, ric)      # identical to geometry.soliton_decide(s)
    dev = ric - D0
    for i in range(dev.shape[0]):
        dev[i, i] = dev[i, i] - k
    gauss = linalg.max_abs(dev) if dev.size else zero
    scale = max(to_float(linalg.max_abs(ric)) if ric.size else 0, 1)
    tol = None if mode == EXACT else FLOAT_TOL * scale
    gauss_ok = linalg.all_zero([gauss], mode, tol)
    agree = gauss_ok and formula.is_soliton == oracle.is_soliton
    if agree and formula.is_soliton and not linalg.all_zero(s.c, mode, tol):
        agree = linalg.all_zero([c_formula - (k - oracle.c)], mode, tol)
    return CaseResult(formula, oracle, k, gauss, bool(agree))


def soliton_decide_formula(h):
    res = decide_both(h)
    if not res.paths_agree:
        raise CrossCheckFailure(
            f"formula path {res.formula.summary()} disagrees with oracle {res.oracle.summary()} "
            f"(gauss residual {res.gauss_residual})")
    return res.formula


def lemma_suite(target, samples=100, seed=0):
    """Structural identity suite for an IwasawaPackage or a HypersurfaceAlgebra."""
    from .lemmas import lemma_suite as run
    if isinstance(target, HypersurfaceAlgebra):
        return run(target.iw, (target,), samples, seed)
    return run(target, (), samples, seed)
