"""Left-invariant Riemannian geometry of a metric Lie algebra (the brute-force oracle).

Conventions: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z and
Ric(Y,Z) = trace(X -> R(X,Y)Z).  Everything is written against the Gram
matrix; no orthonormal frame is ever formed.
"""
from dataclasses import dataclass

import mpmath
import numpy as np
from gmpy2 import mpq

from . import linalg
from .algebra import derivation_defect
from .scalars import EXACT, FLOAT, FLOAT_TOL, format_scalar, identity, is_zero, to_float


@dataclass(frozen=True, eq=False)
class ConnectionTable:
    """nabla_{e_i} e_j = sum_k gamma[i, j, k] e_k; ``lower`` holds <nabla_{e_i} e_j, e_k>."""
    gamma: np.ndarray
    lower: np.ndarray


@dataclass(frozen=True, eq=False)
class SolitonVerdict:
    is_soliton: bool
    c: object
    derivation: np.ndarray
    residual: object
    mode: str
    c_fit: object = None

    def summary(self):
        c = format_scalar(self.c) if self.c is not None else "none"
        return f"is_soliton={self.is_soliton} c={c} residual={format_scalar(self.residual, 6)} mode={self.mode}"


def bracket_form(alg):
    """L[i, j, k] = <[e_i, e_j], e_k>."""
    return linalg.einsum("ijm,mk->ijk", alg.c, alg.gram)


def levi_civita(alg):
    """Koszul: 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>."""
    L = bracket_form(alg)
    half = mpq(1, 2) if alg.mode == EXACT else mpmath.mpf(1) / 2
    lower = (L - L.transpose(2, 0, 1) + L.transpose(1, 2, 0)) * half
    gamma = linalg.einsum("ijk,kl->ijl", lower, alg.gram_inverse)
    return ConnectionTable(gamma, lower)


def connection_residuals(alg, conn=None):
    """(metric compatibility, torsion) maximal deviations."""
    conn = conn or levi_civita(alg)
    K = conn.lower
    metric = linalg.max_abs(K + K.transpose(0, 2, 1)) if alg.dim else 0
    torsion = linalg.max_abs(conn.gamma - conn.gamma.transpose(1, 0, 2) - alg.c) if alg.dim else 0
    return metric, torsion


def ricci_form(alg, conn=None):
    """Symmetric (0,2) Ricci tensor Ric_jk."""
    if alg.dim == 0:
        return np.zeros((0, 0), dtype=object)
    g = (conn or levi_civita(alg)).gamma
    t1 = linalg.einsum("jkl,ili->jk", g, g)
    t2 = linalg.einsum("ikl,jli->jk", g, g)
    t3 = linalg.einsum("ijl,lki->jk", alg.c, g)
    return t1 - t2 - t3


def ricci_operator(alg, conn=None):
    """(1,1) Ricci operator as a matrix acting on coordinate columns."""
    if alg.dim == 0:
        return np.zeros((0, 0), dtype=object)
    return linalg.matmul(alg.gram_inverse, ricci_form(alg, conn))


def ricci_nilpotent_formula(alg):
    """Two-term Ricci form valid for nilpotent algebras, contracted with G^{-1}.

    ric(X,Y) = -1/2 sum <[X,e_i],e_j><[Y,e_i],e_j> + 1/4 sum <[e_i,e_j],X><[e_i,e_j],Y>
    over an orthonormal frame; with a general basis the frame sums become
    contractions with the inverse Gram matrix.
    """
    L = bracket_form(alg)
    gi = alg.gram_inverse
    t1 = linalg.einsum("xij,yab,ia,jb->xy", L, L, gi, gi)
    # <[e_i,e_j], X> for frame vectors: use the bracket vectors themselves
    t2 = linalg.einsum("ijx,abY,ia,jb->xY", L, L, gi, gi)
    half = mpq(1, 2) if alg.mode == EXACT else mpmath.mpf(1) / 2
    return -t1 * half + t2 * half * half


def _scale(arr):
    m = linalg.max_abs(arr) if np.asarray(arr).size else 0
    return max(to_float(m), mpmath.mpf(1))


def einstein_check(alg):
    """k if Ric = k id, else None."""
    ric = ricci_operator(alg)
    n = alg.dim
    if n == 0:
        return mpq(0)
    k = ric[0, 0]
    dev = ric - identity(n) * k
    tol = FLOAT_TOL * _scale(ric) if alg.mode == FLOAT else None
    if linalg.all_zero(dev, alg.mode, tol):
        return k
    return None


def decide_from_ricci(alg, ric):
    """Solve defect(ric - c id) = 0 for the single unknown c and test the residual."""
    n = alg.dim
    zero = mpq(0) if alg.mode == EXACT else mpmath.mpf(0)
    if n == 0:
        return SolitonVerdict(True, zero, ric, zero, alg.mode, zero)
    defect = derivation_defect(alg, ric)
    b = alg.c
    bb = linalg.einsum("ijk,ijk->", b, b)[()]
    if is_zero(bb, alg.mode):
        c = zero
    else:
        c = -linalg.einsum("ijk,ijk->", defect, b)[()] / bb
    resid_arr = defect + b * c
    residual = linalg.max_abs(resid_arr)
    if alg.mode == EXACT:
        ok = residual == 0
    else:
        ok = to_float(residual) <= FLOAT_TOL * _scale(ric)
    D = ric - identity(n) * c
    return SolitonVerdict(bool(ok), c if ok else None, D if ok else None, residual, alg.mode, c)


def soliton_decide(alg):
    """Ric = D + c id with D a derivation?"""
    return decide_from_ricci(alg, ricci_operator(alg))
