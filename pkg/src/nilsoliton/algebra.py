"""Finite-dimensional real Lie algebras given by structure constants and a Gram matrix.

Linear maps are square object arrays acting on coordinate columns:
``(D e_j) = sum_i D[i, j] e_i``.
"""
import json
from dataclasses import dataclass
from functools import cached_property

import mpmath
import numpy as np
from gmpy2 import mpq

from . import linalg
from .errors import DimensionError, NilsolitonError, NotASubalgebra
from .linalg import Scaled
from .scalars import (EXACT, FLOAT, FLOAT_TOL, QuadraticNumber, array_to_mode, field_of,
                      format_scalar, is_zero, to_float, zeros)


@dataclass(frozen=True, eq=False)
class MetricLieAlgebra:
    structure_constants: np.ndarray
    gram: np.ndarray
    mode: str = EXACT
    labels: tuple = None

    def __post_init__(self):
        c = np.asarray(self.structure_constants, dtype=object)
        g = np.asarray(self.gram, dtype=object)
        n = g.shape[0]
        if c.shape != (n, n, n) or g.shape != (n, n):
            raise DimensionError(f"structure constants {c.shape} do not match gram {g.shape}")
        object.__setattr__(self, "structure_constants", c)
        object.__setattr__(self, "gram", g)
        if n and not linalg.all_zero(c + c.transpose(1, 0, 2), self.mode, self._tol()):
            raise NilsolitonError("structure constants are not antisymmetric")
        if n and not linalg.all_zero(g - g.T, self.mode, self._tol()):
            raise NilsolitonError("gram matrix is not symmetric")
        if n and not linalg.is_positive_definite(g, self.mode):
            raise NilsolitonError("gram matrix is not positive definite")

    def _tol(self):
        return None if self.mode == EXACT else mpmath.mpf("1e-30")

    @property
    def dim(self):
        return self.gram.shape[0]

    @property
    def c(self):
        return self.structure_constants

    @cached_property
    def c_scaled(self):
        """Integer-scaled structure constants (rational algebras only)."""
        mode, d = field_of(self.structure_constants)
        if mode == FLOAT or d != 1:
            return None
        return linalg.scale_rational(self.structure_constants)

    @cached_property
    def gram_inverse(self):
        return linalg.inverse(self.gram, self.mode)

    def basis_vector(self, i):
        v = zeros(self.dim)
        v[i] = mpq(1) if self.mode == EXACT else mpmath.mpf(1)
        return v

    def c_rows(self, idx):
        """Structure constants restricted to first index in idx (Scaled when possible)."""
        cs = self.c_scaled
        if cs is not None:
            return Scaled(cs.ints[idx], cs.den, cs.maxabs)
        return self.structure_constants[idx]


def _check_vec(alg, x):
    x = np.asarray(x, dtype=object)
    if x.shape != (alg.dim,):
        raise DimensionError(f"vector of shape {x.shape} for an algebra of dimension {alg.dim}")
    return x


def _support(x):
    return [i for i, v in enumerate(x) if v]


def bracket(alg, x, y):
    """[x, y] for coordinate vectors x, y."""
    x = _check_vec(alg, x)
    y = _check_vec(alg, y)
    idx = _support(x)
    if not idx:
        return zeros(alg.dim)
    return linalg.einsum("i,j,ijk->k", x[idx], y, alg.c_rows(idx))


def ad_matrix(alg, x):
    """Matrix of ad(x): column j is [x, e_j]."""
    x = _check_vec(alg, x)
    idx = _support(x)
    if not idx:
        return zeros((alg.dim, alg.dim))
    return linalg.einsum("i,ijk->kj", x[idx], alg.c_rows(idx))


def apply(mat, x):
    return linalg.matmul(mat, x)


def inner(alg, x, y):
    return linalg.inner(x, alg.gram, y)


def killing_form(alg):
    """B_ij = trace(ad e_i ad e_j)."""
    c = alg.c_scaled if alg.c_scaled is not None else alg.c
    return linalg.einsum("ikl,jlk->ij", c, c)


def jacobi_residual(alg):
    """Largest |sum_cyc [[e_i,e_j],e_k]| over all basis triples (0 means exact Jacobi)."""
    c = alg.c_scaled if alg.c_scaled is not None else alg.c
    n = alg.dim
    worst = 0
    for i in range(n):
        ci = Scaled(c.ints[i], c.den, c.maxabs) if isinstance(c, Scaled) else c[i]
        cmid = Scaled(c.ints[:, i, :], c.den, c.maxabs) if isinstance(c, Scaled) else c[:, i, :]
        t1 = linalg.einsum("jl,lkm->jkm", ci, c)
        t2 = linalg.einsum("jkl,lm->jkm", c, cmid)
        t3 = linalg.einsum("kl,ljm->jkm", cmid, c)
        m = linalg.max_abs(t1 + t2 + t3)
        if m > worst:
            worst = m
    return worst


def check_jacobi(alg):
    res = jacobi_residual(alg)
    if alg.mode == EXACT:
        return res == 0
    scale = linalg.max_abs(alg.c) if alg.dim else 1
    return to_float(res) <= mpmath.mpf("1e-15") * max(to_float(scale), 1)


def derivation_defect(alg, D):
    """defect[i, j] = D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] (full antisymmetric table)."""
    D = np.asarray(D, dtype=object)
    if D.shape != (alg.dim, alg.dim):
        raise DimensionError(f"map of shape {D.shape} for an algebra of dimension {alg.dim}")
    c = alg.c
    t1 = linalg.einsum("mk,ijk->ijm", D, c)
    t2 = linalg.einsum("ai,ajm->ijm", D, c)
    t3 = linalg.einsum("bj,ibm->ijm", D, c)
    return t1 - t2 - t3


def is_derivation(alg, D, tol=None):
    mode = alg.mode
    return linalg.all_zero(derivation_defect(alg, D), mode, tol if tol is not None else FLOAT_TOL)


def derivation_space(alg):
    """Basis (list of matrices) of Der(alg); exact nullspace, intended for small algebras."""
    n = alg.dim
    c = alg.c
    rows = []
    # unknown D[p, q] sits at column p*n + q
    for i in range(n):
        for j in range(i + 1, n):
            for m in range(n):
                row = zeros(n * n)
                for k in range(n):
                    if c[i, j, k]:
                        row[m * n + k] += c[i, j, k]
                for a in range(n):
                    if c[a, j, m]:
                        row[a * n + i] -= c[a, j, m]
                    if c[i, a, m]:
                        row[a * n + j] -= c[i, a, m]
                if any(row):
                    rows.append(row)
    if not rows:
        ns = linalg.nullspace(zeros((0, n * n)))
    else:
        ns = linalg.nullspace(np.array(rows, dtype=object), alg.mode)
    return [v.reshape(n, n) for v in ns]


def subalgebra_restrict(alg, basis_vectors, labels=None):
    """Induced metric Lie algebra on span(basis_vectors); raises NotASubalgebra if not closed."""
    V = np.array([_check_vec(alg, v) for v in basis_vectors], dtype=object)
    k = V.shape[0]
    if k == 0:
        return MetricLieAlgebra(zeros((0, 0, 0)), zeros((0, 0)), alg.mode)
    gram = linalg.einsum("ai,ij,bj->ab", V, alg.gram, V)
    if linalg.rank(gram, alg.mode) < k:
        raise DimensionError("basis vectors are linearly dependent")
    # brackets of basis pairs in ambient coordinates
    brackets = zeros((k, k, alg.dim))
    for a in range(k):
        idx = _support(V[a])
        brackets[a] = linalg.einsum("i,bj,ijm->bm", V[a][idx], V, alg.c_rows(idx))
    rhs = linalg.einsum("abm,mj,cj->abc", brackets, alg.gram, V)
    ginv = linalg.inverse(gram, alg.mode)
    coords = linalg.einsum("abc,cd->abd", rhs, ginv)
    recon = linalg.einsum("abd,dm->abm", coords, V)
    diff = recon - brackets
    for a in range(k):
        for b in range(a + 1, k):
            if not linalg.all_zero(diff[a, b], alg.mode, FLOAT_TOL * 1e-10):
                raise NotASubalgebra(f"bracket of basis vectors {a} and {b} leaves the span", (a, b))
    return MetricLieAlgebra(coords, gram, alg.mode, labels)


def abelian(n, mode=EXACT):
    g = zeros((n, n))
    for i in range(n):
        g[i, i] = mpq(1)
    return MetricLieAlgebra(zeros((n, n, n)), array_to_mode(g, mode), mode)


def heisenberg(mode=EXACT):
    """3-dim Heisenberg algebra, orthonormal basis, [e1, e2] = e3."""
    c = zeros((3, 3, 3))
    c[0, 1, 2] = mpq(1)
    c[1, 0, 2] = mpq(-1)
    g = zeros((3, 3))
    for i in range(3):
        g[i, i] = mpq(1)
    return MetricLieAlgebra(array_to_mode(c, mode), array_to_mode(g, mode), mode)


def with_gram(alg, gram):
    return MetricLieAlgebra(alg.structure_constants, np.asarray(gram, dtype=object), alg.mode, alg.labels)


def to_float_algebra(alg):
    return MetricLieAlgebra(array_to_mode(alg.c, FLOAT), array_to_mode(alg.gram, FLOAT), FLOAT, alg.labels)


def lower_central_series(alg):
    """Dimensions of g = g^1, g^2 = [g, g], g^{k+1} = [g, g^k], ... until it stabilises."""
    n = alg.dim
    dims = [n]
    if n == 0:
        return dims
    current = linalg.einsum("ij->ij", np.array([alg.basis_vector(i) for i in range(n)], dtype=object))
    while True:
        prods = linalg.einsum("ijk,lj->ilk", alg.c, current).reshape(-1, n)
        if prods.shape[0] == 0:
            break
        r, piv = linalg.rref(prods, alg.mode)
        nxt = r[:len(piv)]
        if len(piv) == dims[-1] or len(piv) == 0:
            dims.append(len(piv))
            break
        dims.append(len(piv))
        current = nxt
    return dims


def nilpotency_degree(alg):
    """Number of nonzero terms of the lower central series; None if not nilpotent."""
    dims = lower_central_series(alg)
    if dims[-1] != 0:
        return None if dims[0] else 0
    return len(dims) - 1


def is_nilpotent(alg):
    return nilpotency_degree(alg) is not None


# ---- serialisation ---------------------------------------------------------

def _parse_scalar(text, mode):
    if mode == FLOAT:
        return mpmath.mpf(text)
    if "s" in text:
        # a+b*sD or b*sD or sD forms written by format_scalar
        body, d = text.rsplit("s", 1)
        d = int(d)
        body = body.rstrip("*")
        split = max(body.rfind("+"), body.rfind("-", 1))
        if split > 0:
            a_txt, b_txt = body[:split], body[split:]
        else:
            a_txt, b_txt = "0", body
        if b_txt in ("", "+"):
            b_txt = "1"
        elif b_txt == "-":
            b_txt = "-1"
        return QuadraticNumber(mpq(a_txt), mpq(b_txt.lstrip("+")), d)
    return mpq(text)


def dump(alg):
    """Structured text: {dim, mode, c: sparse triples, gram: dense}."""
    n = alg.dim
    triples = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = alg.c[i, j, k]
                if not is_zero(v, alg.mode, 0):
                    triples.append([i, j, k, _fmt(v, alg.mode)])
    gram = [[_fmt(alg.gram[i, j], alg.mode) for j in range(n)] for i in range(n)]
    return json.dumps({"dim": n, "mode": alg.mode, "c": triples, "gram": gram}, sort_keys=True)


def _fmt(v, mode):
    if mode == FLOAT:
        return mpmath.nstr(to_float(v), 60)
    return format_scalar(v)


def load(text):
    data = json.loads(text)
    n = data["dim"]
    mode = data["mode"]
    c = zeros((n, n, n))
    for i, j, k, v in data["c"]:
        c[i, j, k] = _parse_scalar(v, mode)
    if mode == FLOAT:
        c = array_to_mode(c, FLOAT)
    gram = np.array([[_parse_scalar(v, mode) for v in row] for row in data["gram"]], dtype=object).reshape(n, n)
    return MetricLieAlgebra(c, gram, mode)
