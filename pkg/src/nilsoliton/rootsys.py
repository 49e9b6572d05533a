"""Abstract (restricted) root systems with multiplicities.

Conventions: the Cartan integer is A_{a,b} = 2<a,b>/|a|^2 and
``cartan_matrix[i][j] = A_{alpha_i, alpha_j}``.  Simple roots follow the
Bourbaki numbering; the short simple root has squared length 2.
"""
from dataclasses import dataclass, field, replace
from itertools import permutations

import numpy as np
from gmpy2 import mpq

from .errors import MultiplicitiesUnset, ProportionalRoots, UnsupportedSystem

SUPPORTED_KINDS = ("A", "B", "C", "D", "BC", "G2", "F4")


@dataclass(frozen=True)
class SimpleSystem:
    rank: int
    cartan_matrix: tuple
    squared_lengths: tuple
    kind_label: str

    def __post_init__(self):
        a = self.cartan_matrix
        n = self.rank
        if len(a) != n or any(len(row) != n for row in a) or len(self.squared_lengths) != n:
            raise UnsupportedSystem("cartan matrix / lengths do not match the rank")
        for i in range(n):
            if a[i][i] != 2:
                raise UnsupportedSystem("diagonal of the cartan matrix must be 2")
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] not in (0, -1, -2, -3) or (a[i][j] == 0) != (a[j][i] == 0):
                    raise UnsupportedSystem(f"bad cartan entry ({i},{j})")
                if a[i][j] * self.squared_lengths[i] != a[j][i] * self.squared_lengths[j]:
                    raise UnsupportedSystem("squared lengths inconsistent with cartan matrix")

    @property
    def kind(self):
        if self.kind_label in ("G2", "F4"):
            return self.kind_label
        return self.kind_label.rstrip("0123456789")

    @property
    def gram(self):
        """Matrix of <alpha_i, alpha_j>."""
        n = self.rank
        return tuple(tuple(mpq(self.cartan_matrix[i][j]) * self.squared_lengths[i] / 2
                           for j in range(n)) for i in range(n))

    @property
    def reduced(self):
        return self.kind != "BC"


def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def simple_system(kind, rank=None):
    """Standard simple system, e.g. simple_system('B', 3) or simple_system('G2')."""
    if rank is None:
        label = kind
        if label in ("G2", "F4"):
            kind, rank = label, int(label[1])
        else:
            kind = label.rstrip("0123456789")
            rank = int(label[len(kind):])
    if kind not in SUPPORTED_KINDS or not 1 <= rank <= 4:
        raise UnsupportedSystem(f"unsupported root system {kind}{rank}")
    a = _chain(rank)
    lengths = [mpq(2)] * rank
    if kind == "A":
        pass
    elif kind in ("B", "BC"):
        if rank >= 2:
            a[rank - 1][rank - 2] = -2
            lengths = [mpq(4)] * (rank - 1) + [mpq(2)]
    elif kind == "C":
        if rank < 2:
            raise UnsupportedSystem("C needs rank >= 2")
        a[rank - 2][rank - 1] = -2
        lengths = [mpq(2)] * (rank - 1) + [mpq(4)]
    elif kind == "D":
        if rank < 4:
            raise UnsupportedSystem("D needs rank >= 4 here")
        a = _chain(rank)
        a[rank - 2][rank - 1] = a[rank - 1][rank - 2] = 0
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
    elif kind == "G2":
        if rank != 2:
            raise UnsupportedSystem("G2 has rank 2")
        a = [[2, -3], [-1, 2]]
        lengths = [mpq(2), mpq(6)]
    elif kind == "F4":
        if rank != 4:
            raise UnsupportedSystem("F4 has rank 4")
        a = _chain(4)
        a[2][1] = -2
        lengths = [mpq(4), mpq(4), mpq(2), mpq(2)]
    label = kind if kind in ("G2", "F4") else f"{kind}{rank}"
    return SimpleSystem(rank, tuple(tuple(r) for r in a), tuple(lengths), label)


@dataclass(frozen=True, order=True)
class Root:
    level: int
    coords: tuple
    squared_length: object = field(compare=False)
    simple_gram: tuple = field(compare=False, repr=False)

    def __neg__(self):
        return Root(-self.level, tuple(-c for c in self.coords), self.squared_length, self.simple_gram)

    def __add__(self, other):
        return make_root(tuple(a + b for a, b in zip(self.coords, other.coords)), self.simple_gram)

    def scaled(self, k):
        return make_root(tuple(k * c for c in self.coords), self.simple_gram)

    @property
    def is_positive(self):
        return self.level > 0

    def name(self):
        """Readable name, e.g. 'alpha1' or 'alpha1+2alpha2'."""
        parts = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            k = abs(c)
            parts.append(f"{sign}{'' if k == 1 else k}alpha{i + 1}")
        return "".join(parts)


def root_sort_key(r):
    # by level, then alpha1-heavy first so simple roots come in Dynkin order
    return (r.level, tuple(-c for c in r.coords))


def root_inner(coords1, coords2, gram):
    n = len(coords1)
    return sum(mpq(coords1[i]) * coords2[j] * gram[i][j] for i in range(n) for j in range(n))


def make_root(coords, gram):
    coords = tuple(int(c) for c in coords)
    return Root(sum(coords), coords, root_inner(coords, coords, gram), gram)


def inner(alpha, lam):
    return root_inner(alpha.coords, lam.coords, alpha.simple_gram)


def cartan_integer(alpha, lam):
    """A_{alpha,lambda} = 2<alpha,lambda>/|alpha|^2, an exact integer."""
    v = 2 * inner(alpha, lam) / alpha.squared_length
    if v.denominator != 1:
        raise UnsupportedSystem(f"non-integral cartan number between {alpha.name()} and {lam.name()}")
    return int(v)


def proportional(a, b):
    ca, cb = a.coords, b.coords
    return all(ca[i] * cb[j] == ca[j] * cb[i] for i in range(len(ca)) for j in range(len(ca)))


@dataclass(frozen=True)
class RootSystemData:
    simple: SimpleSystem
    positive_roots: tuple
    multiplicities: dict = None

    def __post_init__(self):
        object.__setattr__(self, "_index", {r.coords: i for i, r in enumerate(self.positive_roots)})

    @property
    def rank(self):
        return self.simple.rank

    @property
    def simple_roots(self):
        return tuple(self.root(tuple(int(i == k) for i in range(self.rank))) for k in range(self.rank))

    def root(self, coords):
        coords = tuple(coords)
        if coords in self._index:
            return self.positive_roots[self._index[coords]]
        neg = tuple(-c for c in coords)
        if neg in self._index:
            return -self.positive_roots[self._index[neg]]
        raise KeyError(coords)

    def is_root(self, coords):
        coords = tuple(coords)
        return coords in self._index or tuple(-c for c in coords) in self._index

    def index(self, root):
        return self._index[root.coords]

    def multiplicity(self, root):
        if self.multiplicities is None:
            raise MultiplicitiesUnset("multiplicities have not been populated")
        coords = tuple(abs(c) for c in root.coords) if root.level < 0 else root.coords
        return self.multiplicities.get(coords, 0)

    def doubled(self, root):
        """The root 2*root if it belongs to the system, else None."""
        c = tuple(2 * x for x in root.coords)
        return self.root(c) if self.is_root(c) else None

    def with_multiplicities(self, mults):
        """Copy with multiplicities, given as a mapping from Root or coords to int."""
        table = {}
        for k, v in mults.items():
            table[k.coords if isinstance(k, Root) else tuple(k)] = int(v)
        for r in self.positive_roots:
            if r.coords not in table or table[r.coords] <= 0:
                raise MultiplicitiesUnset(f"no multiplicity for {r.name()}")
        return replace(self, multiplicities=table)

    @property
    def is_split(self):
        return self.multiplicities is not None and all(v == 1 for v in self.multiplicities.values())

    def to_dict(self):
        roots = []
        for r in self.positive_roots:
            d2 = self.doubled(r)
            roots.append({
                "coords": list(r.coords),
                "length2": str(r.squared_length),
                "mult": self.multiplicity(r) if self.multiplicities else None,
                "mult2": (self.multiplicity(d2) if d2 is not None else 0) if self.multiplicities else None,
            })
        return {"kind": self.simple.kind_label, "rank": self.rank, "roots": roots}


def from_dict(data):
    """Inverse of RootSystemData.to_dict (the simple system is rebuilt from its label)."""
    rs = build_root_system(simple_system(data["kind"]))
    if all(r["mult"] is not None for r in data["roots"]):
        rs = rs.with_multiplicities({tuple(r["coords"]): r["mult"] for r in data["roots"]})
    return rs


def build_root_system(simple):
    """Positive roots of a simple system by string closure (plus doubled roots for BC)."""
    if simple.kind not in SUPPORTED_KINDS or simple.rank > 4:
        raise UnsupportedSystem(f"unsupported system {simple.kind_label}")
    n = simple.rank
    gram = simple.gram
    simples = [make_root(tuple(int(i == k) for i in range(n)), gram) for k in range(n)]
    found = {r.coords: r for r in simples}
    layer = list(simples)
    while layer:
        nxt = []
        for lam in layer:
            for a in simples:
                if lam.coords == a.coords:
                    continue
                # p = how far the alpha-string extends downwards from lambda
                p = 0
                while True:
                    c = tuple(x - (p + 1) * y for x, y in zip(lam.coords, a.coords))
                    if c in found:
                        p += 1
                    else:
                        break
                q = p - cartan_integer(a, lam)
                if q > 0:
                    c = tuple(x + y for x, y in zip(lam.coords, a.coords))
                    if c not in found:
                        found[c] = make_root(c, gram)
                        nxt.append(found[c])
        layer = nxt
    roots = list(found.values())
    if simple.kind == "BC":
        short = min(r.squared_length for r in roots)
        roots += [r.scaled(2) for r in roots if r.squared_length == short]
    roots.sort(key=root_sort_key)
    return RootSystemData(simple, tuple(roots))


def root_string(alpha, lam, data):
    """(p, q): lam - p alpha, ..., lam + q alpha are roots, maximal."""
    if proportional(alpha, lam):
        raise ProportionalRoots(f"{alpha.name()} and {lam.name()} are proportional")

    def shifted(k):
        return tuple(x + k * y for x, y in zip(lam.coords, alpha.coords))

    p = 0
    while data.is_root(shifted(-(p + 1))):
        p += 1
    q = 0
    while data.is_root(shifted(q + 1)):
        q += 1
    return p, q


def sum_strings_identity(alpha, data):
    """(sum_gamma m_gamma A_{alpha,gamma}, 2 m_alpha + 4 m_{2 alpha})."""
    if data.multiplicities is None:
        raise MultiplicitiesUnset("multiplicities have not been populated")
    lhs = sum(data.multiplicity(g) * cartan_integer(alpha, g) for g in data.positive_roots)
    d2 = data.doubled(alpha)
    rhs = 2 * data.multiplicity(alpha) + 4 * (data.multiplicity(d2) if d2 is not None else 0)
    return lhs, rhs


def identify(cartan, squared_lengths, doubled=False):
    """Match a cartan matrix to a supported kind.

    Returns (SimpleSystem, perm) where perm[k] is the index of the input
    simple root playing the role of Bourbaki's alpha_{k+1}.
    """
    n = len(cartan)
    kinds = ["BC"] if doubled else ["A", "B", "C", "D", "G2", "F4"]
    for kind in kinds:
        try:
            ss = simple_system(kind, n)
        except UnsupportedSystem:
            continue
        for perm in permutations(range(n)):
            if all(cartan[perm[i]][perm[j]] == ss.cartan_matrix[i][j] for i in range(n) for j in range(n)):
                return ss, perm
    raise UnsupportedSystem(f"cartan matrix {cartan} not recognised")


def cartan_array(data):
    return np.array(data.simple.cartan_matrix, dtype=np.int64)
