"""Iwasawa data: the nilpotent algebra n, the solvable algebra a + n and their metrics.

The metric on a + n is <X, Y> = <X_a, Y_a>_B + 1/2 <X_n, Y_n>_B where
<., .>_B = -B(., theta .).  Basis order: the a-basis first, then each
positive root space in root order.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from gmpy2 import mpq

from . import linalg
from .algebra import MetricLieAlgebra, subalgebra_restrict
from .errors import StructureMismatch
from .geometry import levi_civita, ricci_operator
from .realization import CartanPackage, restricted_decomposition
from .scalars import EXACT, zeros


@dataclass(frozen=True, eq=False)
class IwasawaPackage:
    source: CartanPackage
    roots: object                 # RootSystemData with multiplicities
    n_basis: dict                 # root coords -> rows (g coordinates) spanning g_lambda
    an_algebra: MetricLieAlgebra
    n_algebra: MetricLieAlgebra
    k0_basis: tuple
    H_vectors: dict               # root coords -> H_lambda (g coordinates), B(H_lambda, H) = lambda(H)
    an_vectors: np.ndarray        # rows: the a + n basis in g coordinates
    slices: dict                  # root coords -> slice of n_algebra indices
    decomposition: object

    @property
    def rank(self):
        return len(self.source.a_basis)

    @property
    def g(self):
        return self.source.g

    @property
    def n_vectors(self):
        return self.an_vectors[self.rank:]

    def root_inner(self, a, b):
        """<a, b> = B(H_a, H_b) for root coordinate tuples."""
        return linalg.inner(self.H_vectors[tuple(a)], self.source.killing, self.H_vectors[tuple(b)])

    def length2(self, a):
        return self.root_inner(a, a)

    def cartan(self, a, b):
        return 2 * self.root_inner(a, b) / self.length2(a)

    def mult(self, coords):
        coords = tuple(coords)
        return self.roots.multiplicities.get(coords, 0)

    def root_of_index(self, i):
        for coords, sl in self.slices.items():
            if sl.start <= i < sl.stop:
                return coords
        raise IndexError(i)

    @cached_property
    def n_projector(self):
        """Matrix (dim n x dim g) taking g coordinates to n_algebra coordinates, B_theta-orthogonally."""
        V = self.n_vectors
        G = self.g.gram
        num = linalg.einsum("ai,ij->aj", V, G)
        norms = [linalg.inner(v, G, v) for v in V]
        return np.array([num[a] / norms[a] for a in range(len(V))], dtype=object)

    @cached_property
    def theta_n(self):
        """theta applied to the n basis, as g-coordinate rows."""
        return linalg.einsum("ij,aj->ai", self.source.theta, self.n_vectors)

    def to_g(self, x):
        """n_algebra coordinates -> g coordinates."""
        return linalg.einsum("a,ai->i", np.asarray(x, dtype=object), self.n_vectors)


def build_iwasawa(pkg):
    dec = restricted_decomposition(pkg)
    rs = dec.roots
    g = pkg.g
    rows = [np.array(a, dtype=object) for a in pkg.a_basis]
    slices = {}
    n_basis = {}
    r = len(rows)
    for root in rs.positive_roots:
        sp = dec.spaces[root.coords]
        start = len(rows) - r
        rows.extend(sp)
        slices[root.coords] = slice(start, start + len(sp))
        n_basis[root.coords] = sp
    V = np.array(rows, dtype=object)
    an_bt = subalgebra_restrict(g, V)
    gram = an_bt.gram.copy()
    half = mpq(1, 2)
    if not linalg.all_zero(gram[:r, r:]):
        raise StructureMismatch("a and n are not orthogonal")
    gram[r:, r:] = gram[r:, r:] * half
    an = MetricLieAlgebra(an_bt.c, gram, EXACT)
    n_alg = MetricLieAlgebra(an.c[r:, r:, r:].copy(), gram[r:, r:].copy(), EXACT)
    if not linalg.all_zero(an.c[r:, r:, :r]):
        raise StructureMismatch("[n, n] has an a-component")
    return IwasawaPackage(pkg, rs, n_basis, an, n_alg, dec.k0_basis, dec.H, V, slices, dec)


def an_connection_check(iw):
    """Max deviation between the Koszul connection of a + n and the closed form via theta."""
    g = iw.g
    V = iw.an_vectors
    TV = linalg.einsum("ij,aj->ai", iw.source.theta, V)
    c = g.c_scaled
    br = linalg.einsum("ai,bj,ijk->abk", V, V, c)
    w = br + linalg.einsum("ai,bj,ijk->abk", TV, V, c) - linalg.einsum("ai,bj,ijk->abk", V, TV, c)
    closed = linalg.einsum("abk,kl,cl->abc", w, g.gram, V) * mpq(1, 4)
    lower = levi_civita(iw.an_algebra).lower
    return linalg.max_abs(lower - closed)


def mean_curvature_vector(iw):
    """(H, residual): H = sum dim g_lambda H_lambda, checked against <II(X, X), H'> = <H', H_lambda>."""
    n = iw.g.dim
    Hm = zeros(n)
    for root in iw.roots.positive_roots:
        Hm = Hm + iw.H_vectors[root.coords] * iw.mult(root.coords)
    worst = mpq(0)
    an = iw.an_algebra
    r = iw.rank
    for coords, sl in iw.slices.items():
        for j in range(sl.start, sl.stop):
            x = an.basis_vector(r + j)
            nx = linalg.inner(x, an.gram, x)
            for i, h in enumerate(iw.source.a_basis):
                hv = an.basis_vector(i)
                # <ad(H) X, X> / <X, X> in the a + n metric
                adx = linalg.einsum("i,j,ijk->k", hv, x, an.c)
                lhs = linalg.inner(adx, an.gram, x) / nx
                rhs = linalg.inner(h, iw.source.killing, iw.H_vectors[coords])
                worst = max(worst, abs(lhs - rhs))
    return Hm, worst


def ad_on_n(iw, h):
    """Matrix of ad(h)|_n in n_algebra coordinates, for h in g coordinates."""
    g = iw.g
    imgs = linalg.einsum("i,aj,ijk->ak", np.asarray(h, dtype=object), iw.n_vectors, g.c_scaled)
    return linalg.einsum("ak,bk->ba", imgs, iw.n_projector)


def ricci_N_structure(iw):
    """(k, residual) with Ric^N = k id + ad(H)|_n; k must be negative."""
    ric = ricci_operator(iw.n_algebra)
    Hm, _ = mean_curvature_vector(iw)
    rem = ric - ad_on_n(iw, Hm)
    m = rem.shape[0]
    k = rem[0, 0]
    dev = rem.copy()
    for i in range(m):
        dev[i, i] = dev[i, i] - k
    resid = linalg.max_abs(dev)
    if resid != 0 or not k < 0:
        raise StructureMismatch(f"Ric^N - ad(H) is not a negative multiple of the identity (residual {resid})")
    return k, resid
