"""Hand-built finite models for cyclic groups.

The simply connected cover is n disks sharing one boundary circle, as a
poset: each disk i has a center a_i over 2n spokes b_{i,j} over 2n
sectors c_{i,j}; the shared circle alternates boundary vertices a'_j with
arcs b'_j.  Rotating everything two steps around the circle and cycling
the disks is a free action of Z_n, and the orbit space is a space with
4n + 5 points whose fundamental group is Z_n.  Products of these (and of
the 4-point circle for free factors) realize every finitely generated
abelian group."""

from __future__ import annotations

from .groups import AbelianizationOracle
from .orbit_model import quotient_model
from .posets import ActionTable, FinitePoset
from .presentations import parse_presentation, reduce_presentation


def _cover_indexer(n: int):
    two_n = 2 * n

    def center(i):  # 1..n
        return i - 1

    def boundary(j):  # 1..2n
        return n + (j - 1) % two_n

    def arc(j):
        return 3 * n + (j - 1) % two_n

    def spoke(i, j):
        return 5 * n + ((i - 1) % n) * two_n + (j - 1) % two_n

    def sector(i, j):
        return 5 * n + 2 * n * n + ((i - 1) % n) * two_n + (j - 1) % two_n

    return center, boundary, arc, spoke, sector


def build_zn_cover(n: int) -> FinitePoset:
    """The n-disk cover: 4n^2 + 5n points."""
    if n < 2:
        raise ValueError("need n >= 2")
    two_n = 2 * n
    center, boundary, arc, spoke, sector = _cover_indexer(n)
    labels = (
        [f"a{i}" for i in range(1, n + 1)]
        + [f"a'{j}" for j in range(1, two_n + 1)]
        + [f"b'{j}" for j in range(1, two_n + 1)]
        + [f"b{i},{j}" for i in range(1, n + 1) for j in range(1, two_n + 1)]
        + [f"c{i},{j}" for i in range(1, n + 1) for j in range(1, two_n + 1)]
    )
    covers = []
    for i in range(1, n + 1):
        for j in range(1, two_n + 1):
            covers.append((sector(i, j - 1), spoke(i, j)))
            covers.append((sector(i, j), spoke(i, j)))
            covers.append((spoke(i, j), center(i)))
            covers.append((sector(i, j), arc(j)))
            covers.append((spoke(i, j), boundary(j)))
    for j in range(1, two_n + 1):
        covers.append((arc(j - 1), boundary(j)))
        covers.append((arc(j), boundary(j)))
    return FinitePoset.from_covers(labels, covers)


def zn_generator_action(n: int) -> ActionTable:
    """Z_n acting on the cover: the generator advances the circle two steps
    (a'_j -> a'_{j+2}, b'_j -> b'_{j+2}) and cycles the disks
    (a_i -> a_{i+1}, b_{i,j} -> b_{i+1,j+2}, likewise sectors)."""
    space = build_zn_cover(n)
    two_n = 2 * n
    center, boundary, arc, spoke, sector = _cover_indexer(n)
    perms = []
    for k in range(n):
        perm = [0] * space.n
        for i in range(1, n + 1):
            perm[center(i)] = center((i - 1 + k) % n + 1)
            for j in range(1, two_n + 1):
                perm[spoke(i, j)] = spoke(i + k, j + 2 * k)
                perm[sector(i, j)] = sector(i + k, j + 2 * k)
        for j in range(1, two_n + 1):
            perm[boundary(j)] = boundary(j + 2 * k)
            perm[arc(j)] = arc(j + 2 * k)
        perms.append(tuple(perm))
    mult = tuple(tuple((g + h) % n for h in range(n)) for g in range(n))
    return ActionTable(tuple(perms), mult)


def build_zn_quotient(n: int) -> FinitePoset:
    """The orbit space written down directly: one center class a, boundary
    and arc classes split by parity (a'_1, a'_2, b'_1, b'_2), and spoke and
    sector classes b_k, c_k indexed by k = j - 2(i-1) mod 2n, the position
    a disk-one point rotates to.  4n + 5 points, 10n + 4 covers."""
    if n < 2:
        raise ValueError("need n >= 2")
    two_n = 2 * n
    labels = (
        ["a", "a'1", "a'2", "b'1", "b'2"]
        + [f"b{k}" for k in range(1, two_n + 1)]
        + [f"c{k}" for k in range(1, two_n + 1)]
    )
    a = 0
    a1, a2, bp1, bp2 = 1, 2, 3, 4

    def b(k):  # 1..2n
        return 5 + (k - 1) % two_n

    def c(k):
        return 5 + two_n + (k - 1) % two_n

    covers = []
    for k in range(1, two_n + 1):
        covers.append((c(k - 1), b(k)))
        covers.append((c(k), b(k)))
        covers.append((b(k), a))
        covers.append((b(k), a1 if k % 2 == 1 else a2))
        covers.append((c(k), bp1 if k % 2 == 1 else bp2))
    for ap in (a1, a2):
        covers.append((bp1, ap))
        covers.append((bp2, ap))
    return FinitePoset.from_covers(labels, covers)


def circle_model() -> FinitePoset:
    """The 4-point circle: the orbit model of the one-generator free
    presentation."""
    pres = parse_presentation("< a | >")
    rp = reduce_presentation(pres, AbelianizationOracle(pres))
    return quotient_model(rp).poset


def abelian_space(orders) -> FinitePoset:
    """A finite space whose fundamental group is the product of cyclic
    groups of the given orders (0 meaning an infinite cyclic factor).
    Order 1 factors are rejected rather than silently dropped."""
    factors = []
    for d in orders:
        if d == 0:
            factors.append(circle_model())
        elif d >= 2:
            factors.append(build_zn_quotient(d))
        else:
            raise ValueError(f"cyclic factor order must be 0 or >= 2, got {d}")
    if not factors:
        return FinitePoset(("*",), (frozenset({0}),))
    space = factors[0]
    for f in factors[1:]:
        space = space.product(f)
    return space
