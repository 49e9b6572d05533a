"""Linear algebra over object arrays (rationals, Q(sqrt d), or mpf).

Products of rational arrays are computed by clearing denominators and
contracting integer arrays (int64 when a magnitude bound proves it safe,
Python ints otherwise), so exactness never depends on floating point.
Elements of Q(sqrt d) are split into rational and irrational parts and
contracted the same way.
"""
from functools import reduce
from itertools import product

import gmpy2
import mpmath
import numpy as np
from gmpy2 import mpq

from .scalars import (EXACT, FLOAT, ELIM_TOL, QuadraticNumber, is_zero, to_float,
                      zeros)

_MPQ = type(mpq(0))
_INT64_LIMIT = 2 ** 62

_den = np.frompyfunc(lambda x: x.denominator if isinstance(x, _MPQ) else 1, 1, 1)


class Scaled:
    """Integer array ``ints`` and positive integer ``den`` with array == ints / den."""

    __slots__ = ("ints", "den", "maxabs")

    def __init__(self, ints, den, maxabs):
        self.ints = ints
        self.den = den
        self.maxabs = maxabs


def scale_rational(arr):
    arr = np.asarray(arr, dtype=object)
    if arr.size == 0:
        return Scaled(np.zeros(arr.shape, dtype=np.int64), 1, 0)
    dens = set(_den(arr).reshape(-1))
    den = int(reduce(gmpy2.lcm, dens, gmpy2.mpz(1)))
    ints = np.frompyfunc(lambda x: int(x * den), 1, 1)(arr)
    maxabs = max(abs(int(v)) for v in ints.reshape(-1))
    if maxabs < _INT64_LIMIT:
        ints = ints.astype(np.int64)
    return Scaled(ints, den, maxabs)


_exactify = np.frompyfunc(lambda x: mpq(x) if isinstance(x, (int, np.integer)) else x, 1, 1)


def _classify(arr):
    """'q' for rational, 'r' for Q(sqrt d) with its d, 'f' for floats ('Q': rational held as a+0*sqrt d)."""
    d = 0
    wrapped = False
    for x in arr.reshape(-1):
        if isinstance(x, QuadraticNumber):
            wrapped = True
            if x.b != 0:
                d = x.d
        elif isinstance(x, (mpmath.mpf, float)):
            return "f", 0
    if d:
        return "r", d
    return ("Q", 0) if wrapped else ("q", 0)


_unwrap = np.frompyfunc(lambda x: x.a if isinstance(x, QuadraticNumber) else x, 1, 1)


def _mpf_to_mpfr(x):
    x = to_float(x)
    sign, man, exp, _ = x._mpf_
    if not man:
        return gmpy2.mpfr(0)
    y = gmpy2.mul_2exp(gmpy2.mpfr(man), exp)
    return -y if sign else y


def _mpfr_to_mpf(x):
    if isinstance(x, (int, np.integer)):
        return mpmath.mpf(int(x))
    m, e = x.as_mantissa_exp()
    return mpmath.mpf((int(m), int(e)))


# float contractions run on gmpy2.mpfr at the mpmath working precision (C-level arithmetic),
# converting exactly in and out
_to_mpfr = np.frompyfunc(_mpf_to_mpfr, 1, 1)
_from_mpfr = np.frompyfunc(_mpfr_to_mpf, 1, 1)


def _split_quadratic(arr):
    re = np.frompyfunc(lambda x: x.a if isinstance(x, QuadraticNumber) else x, 1, 1)(arr)
    ir = np.frompyfunc(lambda x: x.b if isinstance(x, QuadraticNumber) else mpq(0), 1, 1)(arr)
    return re, ir


def _summed_size(subscripts, shapes):
    ins, out = subscripts.split("->")
    sizes = {}
    for term, shp in zip(ins.split(","), shapes):
        for ch, n in zip(term, shp):
            sizes[ch] = n
    k = 1
    for ch, n in sizes.items():
        if ch not in out:
            k *= n
    return k


def _int_einsum(subscripts, scaled):
    shapes = [s.ints.shape for s in scaled]
    bound = _summed_size(subscripts, shapes)
    for s in scaled:
        bound *= max(s.maxabs, 1)
    if bound < _INT64_LIMIT and all(s.ints.dtype == np.int64 for s in scaled):
        res = np.einsum(subscripts, *[s.ints for s in scaled], optimize=True)
    else:
        res = np.einsum(subscripts, *[s.ints.astype(object) for s in scaled], optimize=True)
    den = 1
    for s in scaled:
        den *= s.den
    den = int(den)
    return np.asarray(np.frompyfunc(lambda v: mpq(int(v), den), 1, 1)(np.asarray(res, dtype=object)), dtype=object)


def einsum(subscripts, *ops):
    """Exact-aware einsum over object arrays (explicit '->' form required)."""
    if "->" not in subscripts:
        raise ValueError("einsum requires an explicit output")
    arrs = []
    kinds = []
    for op in ops:
        if isinstance(op, Scaled):
            arrs.append(op)
            kinds.append(("q", 0))
        else:
            a = np.asarray(op, dtype=object)
            k = _classify(a)
            if k[0] == "Q":
                a, k = np.asarray(_unwrap(a), dtype=object), ("q", 0)
            arrs.append(a)
            kinds.append(k)
    if any(k[0] == "f" for k in kinds):
        plain = [a.ints.astype(object) / a.den if isinstance(a, Scaled) else a for a in arrs]
        with gmpy2.context(precision=mpmath.mp.prec):
            plain = [_to_mpfr(a) for a in plain]
            res = np.einsum(subscripts, *plain, optimize=True)
            return np.asarray(_from_mpfr(np.asarray(res, dtype=object)), dtype=object)
    ds = {k[1] for k in kinds if k[0] == "r"}
    if len(ds) > 1:
        raise ValueError("operands live in different quadratic fields")
    if not ds:
        scaled = [a if isinstance(a, Scaled) else scale_rational(a) for a in arrs]
        return _int_einsum(subscripts, scaled)
    d = ds.pop()
    parts = []
    for a, k in zip(arrs, kinds):
        if k[0] == "r":
            re, ir = _split_quadratic(a)
            parts.append((scale_rational(re), scale_rational(ir)))
        else:
            parts.append((a if isinstance(a, Scaled) else scale_rational(a), None))
    re_total = None
    ir_total = None
    for choice in product((0, 1), repeat=len(parts)):
        if any(c == 1 and p[1] is None for c, p in zip(choice, parts)):
            continue
        m = sum(choice)
        term = _int_einsum(subscripts, [p[c] for c, p in zip(choice, parts)])
        factor = d ** (m // 2)
        if factor != 1:
            term = term * factor
        if m % 2 == 0:
            re_total = term if re_total is None else re_total + term
        else:
            ir_total = term if ir_total is None else ir_total + term
    if ir_total is None:
        return re_total
    if re_total is None:
        re_total = zeros(ir_total.shape)
    out = np.frompyfunc(lambda a, b: QuadraticNumber(a, b, d) if b else a, 2, 1)(re_total, ir_total)
    return np.asarray(out, dtype=object)


def matmul(a, b):
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.ndim == 1 and b.ndim == 1:
        return einsum("i,i->", a, b)[()]
    if a.ndim == 1:
        return einsum("i,ij->j", a, b)
    if b.ndim == 1:
        return einsum("ij,j->i", a, b)
    return einsum("ij,jk->ik", a, b)


def inner(x, gram, y):
    """x^T G y."""
    return einsum("i,ij,j->", np.asarray(x, dtype=object), gram, np.asarray(y, dtype=object))[()]


def max_abs(arr):
    arr = np.asarray(arr, dtype=object)
    if arr.size == 0:
        return mpq(0)
    vals = [abs(x) for x in arr.reshape(-1)]
    best = vals[0]
    for v in vals[1:]:
        if v > best:
            best = v
    return best


def all_zero(arr, mode=EXACT, tol=None):
    return all(is_zero(x, mode, tol) for x in np.asarray(arr, dtype=object).reshape(-1))


def rref(mat, mode=EXACT, tol=None):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    a = np.array(mat, dtype=object, copy=True)
    if a.ndim != 2:
        raise ValueError("rref needs a matrix")
    rows, cols = a.shape
    if mode == FLOAT:
        a = np.frompyfunc(to_float, 1, 1)(a) if a.size else a
        scale = max([abs(x) for x in a.reshape(-1)] + [mpmath.mpf(1)])
        thr = (ELIM_TOL if tol is None else tol) * scale
    elif a.size:
        a = _exactify(a)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = a[r:, c]
        if mode == FLOAT:
            mags = [abs(x) for x in col]
            p = int(np.argmax(np.array([float(m) for m in mags]))) if mags else 0
            if not mags or mags[p] <= thr:
                continue
        else:
            nz = [i for i, x in enumerate(col) if x]
            if not nz:
                continue
            p = nz[0]
        p += r
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        others = [i for i in range(rows) if i != r and not is_zero(a[i, c], mode, 0 if mode == EXACT else thr)]
        if others:
            factors = a[others, c].copy()
            a[others] = a[others] - np.outer(factors, a[r])
        if mode == FLOAT:
            a[others, c] = mpmath.mpf(0)
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat, mode=EXACT, tol=None):
    mat = np.asarray(mat, dtype=object)
    if mat.size == 0:
        return 0
    return len(rref(mat, mode, tol)[1])


def nullspace(mat, mode=EXACT, tol=None):
    """Basis of {x : mat x = 0} as the rows of the returned array."""
    mat = np.asarray(mat, dtype=object)
    cols = mat.shape[1]
    if mat.shape[0] == 0:
        basis = zeros((cols, cols))
        for i in range(cols):
            basis[i, i] = mpq(1)
        return basis
    r, piv = rref(mat, mode, tol)
    free = [c for c in range(cols) if c not in piv]
    out = zeros((len(free), cols))
    for k, f in enumerate(free):
        out[k, f] = mpq(1) if mode == EXACT else mpmath.mpf(1)
        for i, p in enumerate(piv):
            out[k, p] = -r[i, f]
    if mode == FLOAT:
        out = np.frompyfunc(to_float, 1, 1)(out) if out.size else out
    return out


def solve(a, b, mode=EXACT):
    """Solve a x = b for square invertible a (b a vector or matrix)."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    n = a.shape[0]
    vec = b.ndim == 1
    bb = b.reshape(n, 1) if vec else b
    aug = np.concatenate([a, bb], axis=1)
    r, piv = rref(aug, mode)
    if piv[:n] != list(range(n)) or len(piv) != n:
        raise np.linalg.LinAlgError("singular system")
    x = r[:, n:]
    return x.reshape(-1) if vec else x


def inverse(a, mode=EXACT):
    n = np.asarray(a).shape[0]
    eye = zeros((n, n))
    for i in range(n):
        eye[i, i] = mpq(1)
    return solve(a, eye, mode)


def is_positive_definite(gram, mode=EXACT):
    """Sylvester-style check via symmetric Gaussian elimination (LDL^T)."""
    a = np.array(gram, dtype=object, copy=True)
    n = a.shape[0]
    for k in range(n):
        piv = a[k, k]
        if mode == FLOAT:
            if to_float(piv) <= ELIM_TOL:
                return False
        elif not piv > 0:
            return False
        if k + 1 < n:
            col = a[k + 1:, k].copy()
            a[k + 1:, k + 1:] = a[k + 1:, k + 1:] - np.outer(col, a[k, k + 1:]) / piv
    return True
