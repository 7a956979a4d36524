"""Float and exact spectral-radius tools.

The float side runs power iteration per connected component on the shifted
operator A+I (so bipartite components cannot oscillate between the +/- Perron
pair), reports a Rayleigh-quotient estimate with an infinity-norm residual,
and finishes in extended precision when the requested tolerance sits below
what double arithmetic can certify.

The exact side works over Fractions: equitable-partition quotient matrices,
monic characteristic polynomials, a leading-principal-minor test certifying
q > perron root (the M-matrix criterion for qI - A), and an exact three-way
comparison of Perron roots by joint bisection with Sturm-sequence equality
detection.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, Partition, _iter_bits, adjacency_matrix, induced_subgraph

__all__ = [
    "SpectralResult",
    "ConvergenceError",
    "spectral_radius",
    "is_equitable",
    "quotient_matrix",
    "RationalMatrix",
    "RationalPoly",
    "char_poly",
    "perron_less_than",
    "perron_root_interval",
    "compare_lambda_exact",
]

_STALL_LIMIT = 50


class SpectralResult:
    """Converged spectral-radius estimate.

    ``vector`` has infinity norm exactly 1, is nonnegative, and is supported
    on a component attaining the radius; ``residual`` is the infinity norm of
    A v - value * v.
    """

    __slots__ = ("value", "vector", "residual", "iterations")

    def __init__(self, value: float, vector: tuple[float, ...],
                 residual: float, iterations: int):
        self.value = value
        self.vector = vector
        self.residual = residual
        self.iterations = iterations

    def __repr__(self) -> str:
        return (f"SpectralResult(value={self.value!r}, residual={self.residual:.3e}, "
                f"iterations={self.iterations})")


class ConvergenceError(RuntimeError):
    """Power iteration hit its iteration cap; ``best`` holds the last estimate."""

    def __init__(self, message: str, best: SpectralResult):
        super().__init__(message)
        self.best = best


def _iterate(A: np.ndarray, x: np.ndarray, tol: float, budget: int,
             start_iter: int) -> tuple[float, np.ndarray, float, int, bool]:
    it = start_iter
    best = None
    stall = 0
    lam = 0.0
    res = float("inf")
    while it < budget:
        z = A @ x
        lam = float((x @ z) / (x @ x))
        res = float(np.abs(z - lam * x).max())
        if res <= tol:
            return lam, x, res, it, True
        if best is None or res < best:
            best = res
            stall = 0
        else:
            stall += 1
            if stall >= _STALL_LIMIT:
                return lam, x, res, it, False
        x = z + x  # one shifted step of A+I, reusing the matvec
        x /= x.max()
        it += 1
    return lam, x, res, it, False


def _power_component(g: Graph, comp: int, tol: float,
                     budget: int) -> tuple[float, np.ndarray, float, int]:
    sub = induced_subgraph(g, comp)
    if sub.edge_count == 0:
        return 0.0, np.ones(sub.n), 0.0, 0
    A = adjacency_matrix(sub)
    x = np.ones(sub.n)
    lam, x, res, it, done = _iterate(A, x, tol, budget, 0)
    if not done and it < budget:
        # double precision stalled above tol; retry in extended precision
        A_l = A.astype(np.longdouble)
        lam, x, res, it, done = _iterate(A_l, x.astype(np.longdouble), tol, budget, it)
    if not done:
        raise ConvergenceError(
            f"power iteration did not reach tol={tol:g} within {budget} iterations "
            f"(best residual {res:.3e})",
            SpectralResult(float(lam), tuple(float(v) for v in x), float(res), it))
    return float(lam), x, float(res), it


def spectral_radius(g: Graph, tol: float = 1e-10,
                    max_iter: int = 1_000_000) -> SpectralResult:
    """Largest adjacency eigenvalue of g with a certified residual.

    Runs per component and returns an eigenvector supported on a component
    attaining the radius (zero elsewhere). The empty graph has radius 0.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if g.n == 0:
        return SpectralResult(0.0, (), 0.0, 0)
    total_iters = 0
    best: tuple[float, int, np.ndarray, float] | None = None
    for comp in g.components():
        lam, x, res, it = _power_component(g, comp, tol, max_iter - total_iters)
        total_iters += it
        if best is None or lam > best[0]:
            best = (lam, comp, x, res)
    lam, comp, x, res = best
    vector = [0.0] * g.n
    for i, v in enumerate(sorted(_iter_bits(comp))):
        vector[v] = float(x[i])
    return SpectralResult(lam, tuple(vector), res, total_iters)


# -- equitable partitions ----------------------------------------------------

def quotient_matrix(g: Graph, partition: Partition | None = None) -> "RationalMatrix":
    """Quotient matrix of an equitable partition (entry i,j: neighbors in class j).

    Inequitable input raises a ValueError naming a violating vertex pair.
    """
    if partition is None:
        partition = g.partition
    if partition is None:
        raise ValueError("graph carries no partition and none was given")
    if partition.n != g.n:
        raise ValueError("partition does not match graph order")
    masks = []
    for cls in partition.classes:
        mask = 0
        for v in cls:
            mask |= 1 << v
        masks.append(mask)
    rows = []
    for i, cls in enumerate(partition.classes):
        row = []
        for j, mask in enumerate(masks):
            counts = {(g.adj[v] & mask).bit_count() for v in cls}
            if len(counts) > 1:
                by = {}
                for v in cls:
                    by.setdefault((g.adj[v] & mask).bit_count(), v)
                a, b = sorted(by)[:2]
                raise ValueError(
                    f"partition not equitable: vertices {by[a]} and {by[b]} in "
                    f"class {i} have {a} and {b} neighbors in class {j}")
            row.append(Fraction(counts.pop()))
        rows.append(row)
    return RationalMatrix(rows)


def is_equitable(g: Graph, partition: Partition | None = None) -> bool:
    try:
        quotient_matrix(g, partition)
    except ValueError:
        return False
    return True


# -- exact matrices and polynomials -------------------------------------------

def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x)  # exact binary value of the float
    return Fraction(x)


class RationalMatrix:
    """Immutable square matrix over Fraction."""

    __slots__ = ("entries", "n")

    def __init__(self, rows: Iterable[Iterable]):
        entries = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_graph(cls, g: Graph) -> "RationalMatrix":
        return cls([[Fraction(g.adj[i] >> j & 1) for j in range(g.n)]
                    for i in range(g.n)])

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(self.n)), Fraction(0))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        n = self.n
        a, b = self.entries, other.entries
        cols = list(zip(*b))
        return RationalMatrix(
            [[sum(map(lambda x, y: x * y, row, col), Fraction(0)) for col in cols]
             for row in a])

    def char_poly(self) -> "RationalPoly":
        """Monic characteristic polynomial det(tI - A), by Faddeev-LeVerrier."""
        n = self.n
        coeffs = [Fraction(1)]  # descending from t^n
        m = RationalMatrix([[Fraction(i == j) for j in range(n)] for i in range(n)])
        for k in range(1, n + 1):
            m = self @ m
            ck = -m.trace() / k
            coeffs.append(ck)
            m = RationalMatrix(
                [[m.entries[i][j] + (ck if i == j else 0) for j in range(n)]
                 for i in range(n)])
        return RationalPoly(reversed(coeffs))

    def __repr__(self) -> str:
        return f"RationalMatrix({[[str(x) for x in row] for row in self.entries]})"


class RationalPoly:
    """Dense polynomial over Fraction; coefficient i multiplies t**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x) -> Fraction:
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "RationalPoly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return RationalPoly(c / lead for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RationalPoly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            t = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            mag = "" if (abs(c) == 1 and i > 0) else str(abs(c))
            terms.append(("-" if c < 0 else ("+" if terms else "")) + mag + t)
        return f"RationalPoly({' '.join(terms)})"


def _poly_divmod(a: RationalPoly, b: RationalPoly) -> tuple[RationalPoly, RationalPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    bc = b.coeffs
    db = len(bc) - 1
    quo = [Fraction(0)] * max(0, len(rem) - db)
    while len(rem) - 1 >= db and any(rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - 1 - db
        f = rem[-1] / bc[-1]
        quo[shift] = f
        for i, c in enumerate(bc):
            rem[shift + i] -= f * c
        rem.pop()
    return RationalPoly(quo), RationalPoly(rem)


def _poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return a.monic()


def _squarefree(p: RationalPoly) -> RationalPoly:
    d = _poly_gcd(p, p.derivative())
    if d.degree <= 0:
        return p.monic()
    return _poly_divmod(p, d)[0].monic()


def _sturm_chain(p: RationalPoly) -> list[RationalPoly]:
    chain = [p, p.derivative()]
    while chain[-1]:
        rem = _poly_divmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(RationalPoly(-c for c in rem.coeffs))
    return chain


def _sign_variations(chain: list[RationalPoly], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = p(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _roots_in(chain: list[RationalPoly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi], for a squarefree base poly."""
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def char_poly(matrix) -> RationalPoly:
    """Monic characteristic polynomial of a square exact matrix (or a Graph)."""
    return _coerce_matrix(matrix).char_poly()


def _coerce_matrix(m) -> RationalMatrix:
    if isinstance(m, RationalMatrix):
        return m
    if isinstance(m, Graph):
        return RationalMatrix.from_graph(m)
    return RationalMatrix(m)


def perron_less_than(matrix, q) -> bool:
    """Certify q > spectral radius of an entrywise-nonnegative matrix, exactly.

    Tests whether qI - A is a nonsingular M-matrix via positivity of all
    leading principal minors; returns False at q equal to the radius.
    """
    a = _coerce_matrix(matrix)
    if any(x < 0 for row in a.entries for x in row):
        raise ValueError("matrix must be entrywise nonnegative")
    q = _as_fraction(q)
    n = a.n
    rows = [[(q if i == j else Fraction(0)) - a.entries[i][j] for j in range(n)]
            for i in range(n)]
    for k in range(n):
        piv = rows[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            f = rows[i][k] / piv
            if f:
                rk = rows[k]
                ri = rows[i]
                for j in range(k + 1, n):
                    ri[j] -= f * rk[j]
    return True


def perron_root_interval(matrix, width) -> tuple[Fraction, Fraction]:
    """Rational interval (lo, hi] of length <= width containing the Perron root."""
    a = _coerce_matrix(matrix)
    width = _as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    hi = max((sum(row, Fraction(0)) for row in a.entries), default=Fraction(0)) + 1
    lo = Fraction(-1)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if perron_less_than(a, mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def compare_lambda_exact(g: Graph, h: Graph) -> int:
    """Exact sign of lambda(g) - lambda(h): -1, 0, or +1.

    Joint bisection with the M-matrix certificate separates distinct radii;
    equality is recognized when the shrinking window isolates one root of each
    squarefree characteristic polynomial and their gcd has a root there too.
    Intended for graphs up to a dozen or so vertices.
    """
    ge = g.edge_count
    he = h.edge_count
    if ge == 0 or he == 0:
        if ge == 0 and he == 0:
            return 0
        return -1 if ge == 0 else 1

    ag = RationalMatrix.from_graph(g)
    ah = RationalMatrix.from_graph(h)
    pg = _squarefree(ag.char_poly())
    ph = _squarefree(ah.char_poly())
    chain_g = _sturm_chain(pg)
    chain_h = _sturm_chain(ph)
    d = _poly_gcd(pg, ph)
    chain_d = _sturm_chain(d) if d.degree >= 1 else None

    lo = Fraction(-1)
    hi = Fraction(max(g.n, h.n))
    while True:
        # pick a bisection point that is not a root of either polynomial, so
        # both brackets stay strict
        mid = None
        steps = 2 * (pg.degree + ph.degree) + 3
        for i in range(1, steps):
            cand = lo + (hi - lo) * i / steps
            if pg(cand) != 0 and ph(cand) != 0:
                mid = cand
                break
        assert mid is not None
        less_g = perron_less_than(ag, mid)
        less_h = perron_less_than(ah, mid)
        if less_g != less_h:
            return -1 if less_g else 1
        if less_g:
            hi = mid
        else:
            lo = mid
        if chain_d is not None and _roots_in(chain_g, lo, hi) == 1 \
                and _roots_in(chain_h, lo, hi) == 1 \
                and _roots_in(chain_d, lo, hi) >= 1:
            return 0
