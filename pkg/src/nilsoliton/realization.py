"""Concrete real semisimple Lie algebras with Cartan involution and maximal abelian a.

Matrix models are real integer matrices (complex and quaternionic entries are
embedded as 2x2 / 4x4 left-multiplication blocks) with theta(X) = -X^T.  A
Frobenius-orthogonal basis adapted to the restricted root decomposition is
built first, so structure constants are exact rationals.  Split algebras come
from a Chevalley basis.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import gmpy2
import numpy as np
from gmpy2 import mpq

from . import linalg
from .algebra import MetricLieAlgebra, ad_matrix, check_jacobi, killing_form
from .errors import (ConstructionError, MaximalityFailure, NumericalDegeneracy,
                     UnsupportedRealForm, UnsupportedSystem)
from .rootsys import (RootSystemData, SimpleSystem, build_root_system, cartan_integer,
                      identify, simple_system)
from .scalars import EXACT, zeros

FAMILIES = ("sl_real", "sl_complex", "sl_quaternion", "su_pq", "so_pq", "sp_pq",
            "so_complex", "split_from_rootsystem")


@dataclass(frozen=True)
class RealFormDescriptor:
    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedRealForm(f"unknown family {self.family}")


@dataclass(frozen=True, eq=False)
class CartanPackage:
    g: MetricLieAlgebra
    theta: np.ndarray
    a_basis: tuple
    killing: np.ndarray
    descriptor: RealFormDescriptor
    positive_direction: tuple      # H0 = sum w_i a_i is regular; lambda > 0 iff lambda(H0) > 0
    matrices: np.ndarray = None    # basis matrices for matrix models
    name: str = ""


# ---------------------------------------------------------------------------
# matrix models

def _units(s):
    if s == 1:
        return [np.array([[1]], dtype=np.int64)]
    if s == 2:
        return [np.eye(2, dtype=np.int64), np.array([[0, -1], [1, 0]], dtype=np.int64)]
    one = np.eye(4, dtype=np.int64)
    li = np.zeros((4, 4), dtype=np.int64)
    lj = np.zeros((4, 4), dtype=np.int64)
    lk = np.zeros((4, 4), dtype=np.int64)
    # left multiplication on the basis (1, i, j, k); column c is the image of e_c
    for src, dst, sign in ((0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)):
        li[dst, src] = sign
    for src, dst, sign in ((0, 2, 1), (1, 3, -1), (2, 0, -1), (3, 1, 1)):
        lj[dst, src] = sign
    for src, dst, sign in ((0, 3, 1), (1, 2, 1), (2, 1, -1), (3, 0, -1)):
        lk[dst, src] = sign
    return [one, li, lj, lk]


def _embed(entries, n, s):
    """Real (n*s)x(n*s) matrix from entries (row, col, unit index, integer coefficient)."""
    units = _units(s)
    m = np.zeros((n * s, n * s), dtype=np.int64)
    for a, b, u, coef in entries:
        m[a * s:(a + 1) * s, b * s:(b + 1) * s] += coef * units[u]
    return m


def _traceless_diagonals(n):
    """Mutually orthogonal integer diagonals spanning the traceless ones."""
    out = []
    for k in range(1, n):
        out.append([1] * k + [-k] + [0] * (n - k - 1))
    return out


def _sl_basis(n, s):
    raw, a_idx = [], []
    for a in range(n):
        for b in range(n):
            if a != b:
                for u in range(s):
                    raw.append(_embed([(a, b, u, 1)], n, s))
    for d in _traceless_diagonals(n):
        a_idx.append(len(raw))
        raw.append(_embed([(a, a, 0, d[a]) for a in range(n)], n, s))
    if s == 2:
        for d in _traceless_diagonals(n):
            raw.append(_embed([(a, a, 1, d[a]) for a in range(n)], n, s))
    elif s == 4:
        for a in range(n):
            for u in (1, 2, 3):
                raw.append(_embed([(a, a, u, 1)], n, s))
    h0 = np.diag(np.arange(n - 1, -n, -2))
    w = []
    for d in _traceless_diagonals(n):
        w.append(mpq(int(np.dot(np.diag(h0), d)), int(np.dot(d, d))))
    return raw, a_idx, w


def _pq_basis(p, q, s, traceless):
    n = p + q
    eps = [1] * p + [-1] * q
    raw, a_idx = [], []
    for a in range(n):
        for b in range(a + 1, n):
            for u in range(s):
                conj = 1 if u == 0 else -1
                coef = -eps[a] * eps[b] * conj
                if u == 0 and a < p <= b and b - p == a and a < min(p, q):
                    a_idx.append(len(raw))
                raw.append(_embed([(a, b, u, 1), (b, a, u, coef)], n, s))
    if s == 2:
        diags = _traceless_diagonals(n) if traceless else [[int(i == a) for i in range(n)] for a in range(n)]
        for d in diags:
            raw.append(_embed([(a, a, 1, d[a]) for a in range(n)], n, s))
    elif s == 4:
        for a in range(n):
            for u in (1, 2, 3):
                raw.append(_embed([(a, a, u, 1)], n, s))
    r = min(p, q)
    w = [mpq(r - i) for i in range(r)]
    return raw, a_idx, w


def _so_complex_basis(n):
    raw, a_idx = [], []
    for a in range(n):
        for b in range(a + 1, n):
            for u in range(2):
                if u == 1 and b == a + 1 and a % 2 == 0 and b < n:
                    a_idx.append(len(raw))
                raw.append(_embed([(a, b, u, 1), (b, a, u, -1)], n, 2))
    r = n // 2
    w = [mpq(r - i) for i in range(r)]
    return raw, a_idx, w


def _raw_basis(desc):
    f, prm = desc.family, desc.params
    if f == "sl_real":
        return _sl_basis(prm[0], 1)
    if f == "sl_complex":
        return _sl_basis(prm[0], 2)
    if f == "sl_quaternion":
        return _sl_basis(prm[0], 4)
    if f == "so_pq":
        p, q = prm
        return _pq_basis(p, q, 1, False)
    if f == "su_pq":
        p, q = prm
        return _pq_basis(p, q, 2, True)
    if f == "sp_pq":
        p, q = prm
        return _pq_basis(p, q, 4, False)
    if f == "so_complex":
        return _so_complex_basis(prm[0])
    raise UnsupportedRealForm(f"no matrix model for {f}")


class _MatrixSpace:
    """Coordinates of integer matrices in a Frobenius-orthogonal integer basis."""

    def __init__(self, mats):
        self.mats = np.asarray(mats, dtype=np.int64)
        self.flat = self.mats.reshape(len(mats), -1)
        gram = self.flat @ self.flat.T
        if np.count_nonzero(gram - np.diag(np.diag(gram))):
            raise ConstructionError("basis matrices are not Frobenius-orthogonal")
        self.norms = np.diag(gram).astype(object)

    def coords(self, ys):
        """Rational coordinates of a stack of matrices; verifies they lie in the span."""
        ys = np.asarray(ys, dtype=np.int64).reshape(len(ys), -1)
        num = ys @ self.flat.T
        lcm = int(gmpy2.mpz(1))
        for v in set(int(x) for x in self.norms):
            lcm = int(gmpy2.lcm(lcm, v))
        mult = np.array([lcm // int(v) for v in self.norms], dtype=object)
        recon = (num.astype(object) * mult) @ self.flat.astype(object)
        if not np.array_equal(recon, ys.astype(object) * lcm):
            raise ConstructionError("matrix outside the span of the basis")
        out = np.empty(num.shape, dtype=object)
        for i in range(num.shape[0]):
            for j in range(num.shape[1]):
                out[i, j] = mpq(int(num[i, j]), int(self.norms[j]))
        return out

    def combine(self, coeffs):
        """Integer matrix sum_j coeffs_j B_j scaled to primitive integer entries."""
        coeffs = np.asarray(coeffs, dtype=object)
        den = 1
        for x in coeffs:
            den = int(gmpy2.lcm(den, mpq(x).denominator))
        ints = np.array([int(mpq(x) * den) for x in coeffs], dtype=object)
        m = np.tensordot(ints, self.mats.astype(object), axes=(0, 0))
        g = 0
        for x in m.reshape(-1):
            g = int(gmpy2.gcd(g, int(x)))
        return (m // g).astype(np.int64)


def _commutators(mats, others):
    a = np.asarray(mats, dtype=np.int64)
    b = np.asarray(others, dtype=np.int64)
    ab = np.einsum("iab,jbc->ijac", a, b)
    ba = np.einsum("jab,ibc->ijac", b, a)
    return ab - ba


def _frobenius_gs(vecs, norms):
    """Gram-Schmidt for raw-coordinate row vectors under the diagonal Gram ``norms``."""
    out = []
    for v in vecs:
        w = np.array(v, dtype=object)
        for u in out:
            num = sum(w[k] * u[k] * norms[k] for k in range(len(w)))
            if num:
                den = sum(u[k] * u[k] * norms[k] for k in range(len(w)))
                w = w - u * (num / den)
        if any(w):
            out.append(w)
    return out


def _joint_eigenspaces(ads, mode=EXACT):
    """Simultaneous eigenspaces of commuting diagonalisable rational matrices.

    Returns a list of (eigenvalue tuple, basis rows).  Eigenvalues must be
    integers (true for every model here); a separating integer combination
    of the matrices is diagonalised exactly.
    """
    n = ads[0].shape[0]
    bound = 0
    floats = [np.array(a, dtype=float) for a in ads]
    for fa in floats:
        ev = np.linalg.eigvals(fa)
        if np.max(np.abs(ev.imag)) > 1e-8 or np.max(np.abs(ev.real - np.round(ev.real))) > 1e-6:
            raise NumericalDegeneracy("ad(a) has non-integral eigenvalues")
        bound = max(bound, int(np.max(np.abs(np.round(ev.real)))))
    base = 2 * bound + 1
    weights = [base ** i for i in range(len(ads))]
    sep = sum((a * w for a, w in zip(ads, weights)), zeros((n, n)))
    ev = np.round(np.linalg.eigvals(sum(f * w for f, w in zip(floats, weights))).real).astype(int)
    spaces = []
    total = 0
    for mu in sorted(set(ev.tolist())):
        m = sep.copy()
        for i in range(n):
            m[i, i] = m[i, i] - mu
        ns = linalg.nullspace(m, mode)
        if len(ns) == 0:
            continue
        total += len(ns)
        # read off joint eigenvalues and verify them on the whole eigenspace
        v = ns[0]
        vals = []
        for a in ads:
            av = linalg.matmul(a, v)
            k = next(i for i in range(n) if v[i])
            lam = av[k] / v[k]
            vals.append(lam)
        for a, lam in zip(ads, vals):
            check = linalg.einsum("ij,kj->ki", a, ns) - ns * lam
            if not linalg.all_zero(check, mode):
                raise NumericalDegeneracy("separating element failed to split root spaces")
        spaces.append((tuple(vals), ns))
    if total != n:
        raise NumericalDegeneracy("ad(a) is not diagonalisable over the rationals")
    return spaces


def _is_positive(vals, w):
    s = sum(mpq(v) * x for v, x in zip(vals, w))
    if s == 0:
        raise NumericalDegeneracy("the chosen regular element is not regular")
    return s > 0


def build_matrix_realization(desc):
    """CartanPackage for a classical matrix model."""
    if desc.family == "split_from_rootsystem":
        return build_split_realization(desc.params[0])
    _check_params(desc)
    raw, a_idx, w = _raw_basis(desc)
    space = _MatrixSpace(raw)
    n = len(raw)
    # ad of a on the raw basis and theta on the raw basis
    comms = _commutators([raw[i] for i in a_idx], raw)
    ads = []
    for k in range(len(a_idx)):
        ads.append(space.coords(comms[k]).T.copy())
    theta_raw = space.coords(-np.transpose(np.asarray(raw), (0, 2, 1))).T.copy()
    spaces = _joint_eigenspaces(ads)
    zero = [sp for vals, sp in spaces if all(v == 0 for v in vals)]
    if len(zero) != 1:
        raise ConstructionError("no zero eigenspace")
    g0 = zero[0]
    # theta-split g0; the p-part must be exactly a
    kparts = [(v + linalg.matmul(theta_raw, v)) / 2 for v in g0]
    pparts = [(v - linalg.matmul(theta_raw, v)) / 2 for v in g0]
    r = len(a_idx)
    if linalg.rank(np.array(pparts, dtype=object)) != r:
        raise MaximalityFailure("centralizer of a meets p in more than a")
    mats = []
    kind = []
    if kparts:
        rr, piv = linalg.rref(np.array(kparts, dtype=object))
        for v in _frobenius_gs(list(rr[:len(piv)]), space.norms):
            mats.append(space.combine(v))
            kind.append(("k0", None))
    for i in a_idx:
        mats.append(np.asarray(raw[i], dtype=np.int64))
        kind.append(("a", None))
    pos = [(vals, sp) for vals, sp in spaces if any(vals) and _is_positive(vals, w)]
    pos.sort(key=lambda t: (sum(mpq(v) * x for v, x in zip(t[0], w)), t[0]))
    neg = []
    for vals, sp in pos:
        for v in _frobenius_gs(list(sp), space.norms):
            m = space.combine(v)
            mats.append(m)
            kind.append(("+", vals))
            # g_{-lambda} is spanned by theta of g_lambda
            neg.append((-m.T, ("-", tuple(-x for x in vals))))
    for m, k in neg:
        mats.append(m)
        kind.append(k)
    if len(mats) != n:
        raise ConstructionError(f"adapted basis has {len(mats)} elements, expected {n}")
    return _package_from_matrices(mats, kind, w, desc)


def _package_from_matrices(mats, kind, w, desc):
    space = _MatrixSpace(mats)
    n = len(mats)
    comm = _commutators(mats, mats).reshape(n * n, *mats[0].shape)
    c = space.coords(comm).reshape(n, n, n)
    npos = sum(1 for k in kind if k[0] == "+")
    theta = zeros((n, n))
    for i, (t, _) in enumerate(kind):
        if t == "k0":
            theta[i, i] = mpq(1)
        elif t == "a":
            theta[i, i] = mpq(-1)
        elif t == "+":
            theta[i + npos, i] = mpq(1)
        else:
            theta[i - npos, i] = mpq(1)
    a_vecs = []
    for i, (t, _) in enumerate(kind):
        if t == "a":
            v = zeros(n)
            v[i] = mpq(1)
            a_vecs.append(v)
    return _finish_package(c, theta, a_vecs, w, desc, np.asarray(mats))


def _finish_package(c, theta, a_vecs, w, desc, matrices=None, jacobi=False):
    n = c.shape[0]
    provisional = MetricLieAlgebra(c, _identity(n), EXACT)
    if jacobi and not check_jacobi(provisional):
        raise ConstructionError("structure constants violate the Jacobi identity")
    B = killing_form(provisional)
    gram = -linalg.matmul(B, theta)
    g = MetricLieAlgebra(c, gram, EXACT)
    pkg = CartanPackage(g, theta, tuple(a_vecs), B, desc, tuple(w), matrices, _descriptor_name(desc))
    _check_package(pkg)
    return pkg


def _identity(n):
    m = zeros((n, n))
    for i in range(n):
        m[i, i] = mpq(1)
    return m


def _check_package(pkg):
    g, th = pkg.g, pkg.theta
    n = g.dim
    if not linalg.all_zero(linalg.matmul(th, th) - _identity(n)):
        raise ConstructionError("theta is not an involution")
    lhs = linalg.einsum("ijl,kl->ijk", g.c, th)
    rhs = linalg.einsum("ai,bj,abk->ijk", th, th, g.c)
    if not linalg.all_zero(lhs - rhs):
        raise ConstructionError("theta is not an automorphism")
    for x in pkg.a_basis:
        if not linalg.all_zero(linalg.matmul(th, x) + x):
            raise ConstructionError("theta is not -id on a")
        for y in pkg.a_basis:
            if not linalg.all_zero(linalg.matmul(ad_matrix(g, x), y)):
                raise ConstructionError("a is not abelian")


def _check_params(desc):
    f, prm = desc.family, desc.params
    ok = True
    if f in ("sl_real", "sl_complex", "sl_quaternion"):
        ok = len(prm) == 1 and 2 <= prm[0] <= 5
    elif f in ("so_pq", "su_pq", "sp_pq"):
        ok = len(prm) == 2 and 1 <= prm[0] <= prm[1] and prm[0] + prm[1] <= 10
        if f == "so_pq" and prm[0] == prm[1] == 2:
            ok = False
        ok = ok or (len(prm) == 2 and prm[1] == 1 and 1 <= prm[0] <= 6)
    elif f == "so_complex":
        ok = len(prm) == 1 and prm[0] in (3, 5, 7)
    if not ok:
        raise UnsupportedRealForm(f"unsupported parameters {prm} for {f}")


def _descriptor_name(desc):
    f, prm = desc.family, desc.params
    if f == "split_from_rootsystem":
        return f"split {prm[0].kind_label}"
    names = {"sl_real": "sl({},R)", "sl_complex": "sl({},C)", "sl_quaternion": "sl({},H)",
             "so_complex": "so({},C)", "so_pq": "so({},{})", "su_pq": "su({},{})", "sp_pq": "sp({},{})"}
    return names[f].format(*prm)


# ---------------------------------------------------------------------------
# Chevalley basis for split algebras

def chevalley_constants(rs):
    """Structure constants N[(r, s)] for all roots r, s with r + s a root.

    Extraspecial pairs get N = +(p+1); every other constant follows from the
    standard relations among the N's, and N_{-r,-s} = -N_{r,s} so that
    e_r -> -e_{-r} is an automorphism.
    """
    pos = [r.coords for r in rs.positive_roots]
    order = {c: i for i, c in enumerate(pos)}
    sq = {}
    for r in rs.positive_roots:
        sq[r.coords] = r.squared_length
        sq[tuple(-x for x in r.coords)] = r.squared_length
    roots = set(sq)

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(a):
        return tuple(-x for x in a)

    def is_pos(a):
        return a in order

    def p_of(r, s):
        p = 0
        while add(s, tuple(-(p + 1) * x for x in r)) in roots:
            p += 1
        return p

    extraspecial = {}
    for x in pos:
        best = None
        for r in pos:
            s = tuple(a - b for a, b in zip(x, r))
            if s in order and order[r] < order[s]:
                if best is None or order[r] < order[best[0]]:
                    best = (r, s)
        if best is not None:
            extraspecial[x] = best

    memo = {}

    def N(a, b):
        x = add(a, b)
        if x not in roots:
            return 0
        key = (a, b)
        if key in memo:
            return memo[key]
        if is_pos(a) and is_pos(b):
            val = n_pos(a, b)
        elif not is_pos(a) and not is_pos(b):
            val = -N(neg(a), neg(b))
        elif is_pos(a):
            if is_pos(x):
                val = -sq[x] / sq[a] * N(neg(b), x)
            else:
                val = sq[x] / sq[b] * N(neg(x), a)
        else:
            val = -N(b, a)
        memo[key] = val
        return val

    def n_pos(r, s):
        if order[r] > order[s]:
            return -n_pos(s, r)
        x = add(r, s)
        r1, s1 = extraspecial[x]
        n1 = mpq(p_of(r1, s1) + 1)
        if (r, s) == (r1, s1):
            return n1
        total = mpq(0)
        d = add(s, neg(r1))
        if d in roots:
            total += N(s, neg(r1)) * N(r, neg(s1)) / sq[d]
        d = add(r, neg(r1))
        if d in roots:
            total += N(neg(r1), r) * N(s, neg(s1)) / sq[d]
        return sq[x] * total / n1

    table = {}
    allr = sorted(roots)
    for a in allr:
        for b in allr:
            if add(a, b) in roots:
                v = mpq(N(a, b))
                p = p_of(a, b)
                if abs(v) != p + 1:
                    raise ConstructionError(f"|N| = {v} differs from p+1 = {p + 1} for {a}, {b}")
                table[(a, b)] = v
    return table


def build_split_realization(simple):
    """Split real form of the complex simple algebra with the given simple system."""
    if isinstance(simple, str):
        simple = simple_system(simple)
    if not simple.reduced:
        raise UnsupportedSystem("split realizations need a reduced system")
    rs = build_root_system(simple)
    r = simple.rank
    pos = [x.coords for x in rs.positive_roots]
    neg = [tuple(-y for y in x) for x in pos]
    index = {}
    for i, x in enumerate(pos):
        index[x] = r + i
    for i, x in enumerate(neg):
        index[x] = r + len(pos) + i
    n = r + 2 * len(pos)
    sroots = rs.simple_roots
    c = zeros((n, n, n))
    table = chevalley_constants(rs)
    for x_root in rs.positive_roots:
        for sign in (1, -1):
            x = x_root.coords if sign == 1 else tuple(-y for y in x_root.coords)
            xr = x_root if sign == 1 else -x_root
            ex = index[x]
            for i, al in enumerate(sroots):
                a = cartan_integer(al, xr)
                if a:
                    c[i, ex, ex] = mpq(a)
                    c[ex, i, ex] = mpq(-a)
            # [e_x, e_-x] = h_x with h_x = sum_i x_i |alpha_i|^2/|x|^2 h_i
            ey = index[tuple(-y for y in x)]
            for i, al in enumerate(sroots):
                k = mpq(x[i]) * al.squared_length / x_root.squared_length
                if k:
                    c[ex, ey, i] = k
    for (a, b), v in table.items():
        c[index[a], index[b], index[tuple(p + q for p, q in zip(a, b))]] = v
    theta = zeros((n, n))
    for i in range(r):
        theta[i, i] = mpq(-1)
    for x in pos:
        theta[index[tuple(-y for y in x)], index[x]] = mpq(-1)
        theta[index[x], index[tuple(-y for y in x)]] = mpq(-1)
    a_vecs = []
    for i in range(r):
        v = zeros(n)
        v[i] = mpq(1)
        a_vecs.append(v)
    # regular direction: alpha_j(H0) = 1 for every simple root
    cm = np.array([[mpq(cartan_integer(sroots[i], sroots[j])) for j in range(r)] for i in range(r)],
                  dtype=object)
    w = linalg.solve(cm.T.copy(), np.array([mpq(1)] * r, dtype=object))
    desc = RealFormDescriptor("split_from_rootsystem", (simple,))
    return _finish_package(c, theta, a_vecs, list(w), desc, jacobi=True)


# ---------------------------------------------------------------------------
# restricted root decomposition

@dataclass(frozen=True, eq=False)
class RestrictedDecomposition:
    roots: RootSystemData
    spaces: dict          # root coords (positive and negative) -> rows spanning g_lambda
    a_basis: tuple
    k0_basis: tuple
    functionals: dict     # root coords -> (lambda(a_1), ..., lambda(a_r))
    H: dict               # root coords -> H_lambda as a vector of g
    killing_a: np.ndarray = field(repr=False, default=None)

    @property
    def simple_roots(self):
        return self.roots.simple_roots


def _bt_gs(rows, gram):
    out = []
    for v in rows:
        w = np.array(v, dtype=object)
        for u in out:
            num = linalg.inner(w, gram, u)
            if num:
                w = w - u * (num / linalg.inner(u, gram, u))
        if any(w):
            out.append(w)
    return out


def restricted_decomposition(pkg):
    """Joint ad(a)-eigenspaces, roots identified in Bourbaki order, multiplicities, H_lambda."""
    g = pkg.g
    n = g.dim
    r = len(pkg.a_basis)
    ads = [ad_matrix(g, a) for a in pkg.a_basis]
    spaces = _joint_eigenspaces(ads)
    w = pkg.positive_direction
    zero = [sp for vals, sp in spaces if all(v == 0 for v in vals)]
    g0 = zero[0] if zero else np.zeros((0, n), dtype=object)
    a_rows = np.array(pkg.a_basis, dtype=object)
    # k0 = g0 minus a, orthogonally for B_theta
    k0 = []
    for v in g0:
        x = np.array(v, dtype=object)
        for u in _bt_gs(list(a_rows), g.gram):
            x = x - u * (linalg.inner(x, g.gram, u) / linalg.inner(u, g.gram, u))
        k0.append(x)
    k0 = _bt_gs(k0, g.gram)
    if len(k0) + r != len(g0):
        raise MaximalityFailure("a is not contained in the centralizer of a")
    for v in k0:
        if not linalg.all_zero(linalg.matmul(pkg.theta, v) - v):
            raise MaximalityFailure("centralizer of a meets p outside a")
    # roots
    funcs = {}
    for vals, sp in spaces:
        if any(vals):
            funcs[tuple(vals)] = sp
    positive = [v for v in funcs if _is_positive(v, w)]
    pos_set = set(positive)
    simple = []
    for v in positive:
        decomposable = False
        for u in positive:
            d = tuple(a - b for a, b in zip(v, u))
            if d in pos_set:
                decomposable = True
                break
        if not decomposable:
            simple.append(v)
    if len(simple) != r:
        raise ConstructionError(f"found {len(simple)} simple roots for rank {r}")
    # Killing form on a and inner products of functionals
    Ba = np.array([[linalg.inner(x, pkg.killing, y) for y in pkg.a_basis] for x in pkg.a_basis], dtype=object)
    Ba_inv = linalg.inverse(Ba)

    def ip(u, v):
        return linalg.matmul(linalg.matmul(np.array(u, dtype=object), Ba_inv), np.array(v, dtype=object))

    lengths = [ip(s, s) for s in simple]
    cartan = [[2 * ip(simple[i], simple[j]) / lengths[i] for j in range(r)] for i in range(r)]
    cartan = [[int(x) for x in row] for row in cartan]
    doubled = any(tuple(2 * x for x in s) in funcs for s in simple)
    ss, perm = identify(cartan, lengths, doubled)
    simple = [simple[perm[k]] for k in range(r)]
    lengths = [lengths[perm[k]] for k in range(r)]
    ss = SimpleSystem(r, ss.cartan_matrix, tuple(lengths), ss.kind_label)
    rs = build_root_system(ss)
    S = np.array(simple, dtype=object).T.copy()   # columns are simple functionals
    coords_of = {}
    for v in funcs:
        cvec = linalg.solve(S, np.array(v, dtype=object))
        if any(mpq(x).denominator != 1 for x in cvec):
            raise ConstructionError("non-integral root coordinates")
        coords_of[v] = tuple(int(x) for x in cvec)
    found = {coords_of[v] for v in positive}
    expected = {x.coords for x in rs.positive_roots}
    if found != expected:
        raise ConstructionError(f"roots found {sorted(found)} differ from the closure {sorted(expected)}")
    mults = {}
    out_spaces = {}
    out_funcs = {}
    H = {}
    for v, sp in funcs.items():
        cc = coords_of[v]
        out_spaces[cc] = np.array(_bt_gs(list(sp), g.gram), dtype=object)
        out_funcs[cc] = v
        if cc in expected:
            mults[cc] = len(sp)
        x = linalg.matmul(Ba_inv, np.array(v, dtype=object))
        H[cc] = sum((a * xi for a, xi in zip(pkg.a_basis, x)), zeros(n))
    rs = rs.with_multiplicities(mults)
    return RestrictedDecomposition(rs, out_spaces, pkg.a_basis, tuple(k0), out_funcs, H, Ba)


# ---------------------------------------------------------------------------
# catalog

def _catalog():
    cat = {
        "sl2r": RealFormDescriptor("sl_real", (2,)),
        "sl3r": RealFormDescriptor("sl_real", (3,)),
        "sl4r": RealFormDescriptor("sl_real", (4,)),
        "sl3c": RealFormDescriptor("sl_complex", (3,)),
        "sl4c": RealFormDescriptor("sl_complex", (4,)),
        "sl3h": RealFormDescriptor("sl_quaternion", (3,)),
        "sl4h": RealFormDescriptor("sl_quaternion", (4,)),
        "so23": RealFormDescriptor("so_pq", (2, 3)),
        "so5c": RealFormDescriptor("so_complex", (5,)),
    }
    for q in range(4, 9):
        cat[f"so2q:{q}"] = RealFormDescriptor("so_pq", (2, q))
    for k in range(2, 5):
        cat[f"sun1:{k}"] = RealFormDescriptor("su_pq", (k, 1))
    for k in (2, 3):
        cat[f"spn1:{k}"] = RealFormDescriptor("sp_pq", (k, 1))
    for lab in ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2"):
        cat[f"split:{lab}"] = RealFormDescriptor("split_from_rootsystem", (simple_system(lab),))
    # additions beyond the required list: real hyperbolic spaces and two non-split higher-rank spaces
    for k in range(3, 6):
        cat[f"son1:{k}"] = RealFormDescriptor("so_pq", (k, 1))
    cat["so46"] = RealFormDescriptor("so_pq", (4, 6))
    cat["su23"] = RealFormDescriptor("su_pq", (2, 3))
    return cat


CATALOG = _catalog()

ALIASES = {}
for _q in range(4, 9):
    ALIASES[f"so2{_q}"] = f"so2q:{_q}"
for _k in range(2, 5):
    ALIASES[f"su{_k}1"] = f"sun1:{_k}"
for _k in (2, 3):
    ALIASES[f"sp{_k}1"] = f"spn1:{_k}"
for _k in range(3, 6):
    ALIASES[f"so{_k}1"] = f"son1:{_k}"


def catalog_ids():
    return list(CATALOG)


def canonical_id(space_id):
    sid = ALIASES.get(space_id, space_id)
    if sid not in CATALOG:
        raise UnsupportedRealForm(f"unknown space identifier {space_id!r}")
    return sid


def descriptor(space_id):
    return CATALOG[canonical_id(space_id)]


@lru_cache(maxsize=None)
def build_space(space_id):
    desc = descriptor(space_id)
    pkg = build_matrix_realization(desc)
    return CartanPackage(pkg.g, pkg.theta, pkg.a_basis, pkg.killing, pkg.descriptor,
                         pkg.positive_direction, pkg.matrices, canonical_id(space_id))
