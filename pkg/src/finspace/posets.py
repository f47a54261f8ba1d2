"""Finite T0 spaces as finite posets.

A point's minimal open set is its down-set, so order data and topology
are interchangeable: continuous maps are order-preserving maps, opens are
down-closed sets.  This module holds the poset type plus the operations
the constructions need: chain spaces of graded cell complexes, group
actions and their quotients, products, beat points, order complexes, and
order-isomorphism testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


class CycleDetected(ValueError):
    def __init__(self, cycle):
        super().__init__(f"cover relation contains a cycle: {' < '.join(map(str, cycle))}")
        self.cycle = tuple(cycle)


class NotPartialOrder(ValueError):
    pass


class QuotientNotT0(ValueError):
    def __init__(self, a, b):
        super().__init__(
            f"quotient preorder is not antisymmetric: classes {a} and {b} "
            "are comparable both ways"
        )
        self.witness = (a, b)


class InvalidAction(ValueError):
    pass


class NotOrderPreserving(InvalidAction):
    def __init__(self, element, witness):
        super().__init__(
            f"group element {element} does not preserve the order (witness: {witness})"
        )
        self.element = element
        self.witness = witness


class HasFixedPoint(InvalidAction):
    def __init__(self, element, point):
        super().__init__(f"group element {element} fixes {point}")
        self.element = element
        self.point = point


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, budget):
        super().__init__(f"isomorphism search exceeded {budget} candidate assignments")
        self.budget = budget


class FinitePoset:
    """An immutable finite poset on points 0..n-1 with unique string labels.
    down(x) is the down-set {y : y <= x}, equal to the minimal open set of
    x in the associated topology."""

    __slots__ = ("labels", "_down", "_up", "_index")

    def __init__(self, labels, down):
        labels = tuple(labels)
        if not labels:
            raise ValueError("a finite space needs at least one point")
        if len(set(labels)) != len(labels):
            raise ValueError("point labels must be unique")
        n = len(labels)
        down = tuple(frozenset(d) for d in down)
        if len(down) != n:
            raise ValueError("one down-set per point required")
        for x, d in enumerate(down):
            if x not in d:
                raise NotPartialOrder(f"order is not reflexive at {labels[x]}")
            for y in d:
                if not 0 <= y < n:
                    raise ValueError(f"point id {y} out of range")
        for x, d in enumerate(down):
            for y in d:
                if y != x and x in down[y]:
                    raise NotPartialOrder(
                        f"order is not antisymmetric on {labels[x]}, {labels[y]}"
                    )
                if not down[y] <= d:
                    raise NotPartialOrder(
                        f"order is not transitive below {labels[x]} at {labels[y]}"
                    )
        self.labels = labels
        self._down = down
        up = [set() for _ in range(n)]
        for x, d in enumerate(down):
            for y in d:
                up[y].add(x)
        self._up = tuple(frozenset(u) for u in up)
        self._index = {lab: i for i, lab in enumerate(labels)}

    # -- basic queries --

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    def down(self, x: int) -> frozenset:
        return self._down[x]

    def up(self, x: int) -> frozenset:
        return self._up[x]

    def minimal_open(self, x: int) -> frozenset:
        return self._down[x]

    def leq(self, x: int, y: int) -> bool:
        return x in self._down[y]

    def __eq__(self, other):
        return (
            isinstance(other, FinitePoset)
            and self.labels == other.labels
            and self._down == other._down
        )

    def __hash__(self):
        return hash((self.labels, self._down))

    def __repr__(self):
        return f"FinitePoset({self.n} points, {len(self.hasse())} covers)"

    # -- construction --

    @classmethod
    def from_covers(cls, labels, covers) -> "FinitePoset":
        labels = tuple(labels)
        n = len(labels)
        adj = [[] for _ in range(n)]
        indeg = [0] * n
        for lo, hi in covers:
            if not (0 <= lo < n and 0 <= hi < n):
                raise ValueError(f"cover ({lo}, {hi}) out of range")
            adj[lo].append(hi)
            indeg[hi] += 1
        _raise_on_cycle(n, adj)
        down = [{x} for x in range(n)]
        queue = [x for x in range(n) if indeg[x] == 0]
        seen = 0
        while queue:
            x = queue.pop()
            seen += 1
            for y in adj[x]:
                down[y] |= down[x]
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        assert seen == n
        return cls(labels, down)

    def relabel(self, fn) -> "FinitePoset":
        return FinitePoset(tuple(fn(lab) for lab in self.labels), self._down)

    # -- structure --

    def hasse(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs (lo, hi): lo < hi with nothing strictly between."""
        covers = []
        for y in range(self.n):
            strict = self._down[y] - {y}
            for z in strict:
                if self._up[z] & strict == {z}:
                    covers.append((z, y))
        return tuple(sorted(covers))

    def lower_covers(self, y: int) -> list[int]:
        strict = self._down[y] - {y}
        return sorted(z for z in strict if self._up[z] & strict == {z})

    def heights(self) -> tuple[int, ...]:
        h = [0] * self.n
        for y in sorted(range(self.n), key=lambda x: len(self._down[x])):
            strict = self._down[y] - {y}
            h[y] = 1 + max((h[z] for z in strict), default=-1)
        return tuple(h)

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in (self._down[x] | self._up[x]) - seen:
                seen.add(y)
                stack.append(y)
        return len(seen) == self.n

    def maximal_points(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if self._up[x] == {x})

    def minimal_points(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if self._down[x] == {x})

    def product(self, other: "FinitePoset") -> "FinitePoset":
        nb = other.n
        labels = [
            f"({la},{lb})" for la in self.labels for lb in other.labels
        ]
        down = [
            frozenset(ia * nb + ib for ia in self._down[xa] for ib in other._down[xb])
            for xa in range(self.n)
            for xb in range(other.n)
        ]
        return FinitePoset(labels, down)

    def beat_points(self) -> tuple[int, ...]:
        """Points whose strict down-set has a maximum or whose strict up-set
        has a minimum; removing such a point does not change the homotopy
        type."""
        beats = []
        for x in range(self.n):
            strict_down = self._down[x] - {x}
            if any(strict_down <= self._down[z] for z in strict_down):
                beats.append(x)
                continue
            strict_up = self._up[x] - {x}
            if any(strict_up <= self._up[z] for z in strict_up):
                beats.append(x)
        return tuple(beats)

    def chains(self, k: int) -> list[tuple[int, ...]]:
        """Strictly increasing k-tuples, in lexicographic point order."""
        if k <= 0:
            return []
        ups = [sorted(self._up[x] - {x}) for x in range(self.n)]
        out = []

        def extend(chain):
            if len(chain) == k:
                out.append(tuple(chain))
                return
            for y in ups[chain[-1]]:
                chain.append(y)
                extend(chain)
                chain.pop()

        for x in range(self.n):
            extend([x])
        return out

    def order_complex(self) -> "OrderComplex":
        return OrderComplex(
            self.n, tuple(self.chains(2)), tuple(self.chains(3))
        )

    # -- isomorphism --

    def isomorphism(self, other: "FinitePoset", budget: int = 1_000_000):
        """An order isomorphism self -> other as an id mapping, or None.
        Backtracking over a joint degree/level color refinement; labels are
        ignored (only order structure counts)."""
        if self.n != other.n:
            return None
        cols_a, cols_b = _joint_refinement(self, other)
        if sorted(cols_a) != sorted(cols_b):
            return None
        by_color: dict[int, list[int]] = {}
        for y, c in enumerate(cols_b):
            by_color.setdefault(c, []).append(y)
        order = sorted(range(self.n), key=lambda x: (len(by_color[cols_a[x]]), x))
        mapping: dict[int, int] = {}
        used = [False] * self.n
        attempts = 0

        def backtrack(k: int) -> bool:
            nonlocal attempts
            if k == len(order):
                return True
            x = order[k]
            for y in by_color[cols_a[x]]:
                if used[y]:
                    continue
                attempts += 1
                if attempts > budget:
                    raise SearchBudgetExceeded(budget)
                ok = True
                for u, v in mapping.items():
                    if (u in self._down[x]) != (v in other._down[y]) or (
                        x in self._down[u]
                    ) != (y in other._down[v]):
                        ok = False
                        break
                if not ok:
                    continue
                mapping[x] = y
                used[y] = True
                if backtrack(k + 1):
                    return True
                del mapping[x]
                used[y] = False
            return False

        return dict(mapping) if backtrack(0) else None


def _raise_on_cycle(n: int, adj) -> None:
    color = [0] * n  # 0 new, 1 active, 2 done
    stack_path: list[int] = []

    def visit(start):
        work = [(start, iter(adj[start]))]
        color[start] = 1
        stack_path.append(start)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 1:
                    cycle = stack_path[stack_path.index(nxt) :] + [nxt]
                    raise CycleDetected(cycle)
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack_path.append(nxt)
                    work.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack_path.pop()
                work.pop()

    for s in range(n):
        if color[s] == 0:
            visit(s)


def _joint_refinement(p: FinitePoset, q: FinitePoset):
    """Iterated neighbor color refinement over the Hasse diagrams of both
    posets in one shared color table, so colors are comparable."""
    lower_p = [p.lower_covers(x) for x in range(p.n)]
    lower_q = [q.lower_covers(x) for x in range(q.n)]
    upper_p = [[] for _ in range(p.n)]
    upper_q = [[] for _ in range(q.n)]
    for y, los in enumerate(lower_p):
        for z in los:
            upper_p[z].append(y)
    for y, los in enumerate(lower_q):
        for z in los:
            upper_q[z].append(y)
    hp, hq = p.heights(), q.heights()
    cols_p = [(hp[x], len(p.down(x)), len(p.up(x))) for x in range(p.n)]
    cols_q = [(hq[x], len(q.down(x)), len(q.up(x))) for x in range(q.n)]

    def canon(values):
        table = {}
        out = []
        for v in values:
            if v not in table:
                table[v] = len(table)
            out.append(table[v])
        return out

    both = canon(cols_p + cols_q)
    cols_p, cols_q = both[: p.n], both[p.n :]
    for _ in range(max(p.n, q.n)):
        sig_p = [
            (
                cols_p[x],
                tuple(sorted(cols_p[z] for z in lower_p[x])),
                tuple(sorted(cols_p[z] for z in upper_p[x])),
            )
            for x in range(p.n)
        ]
        sig_q = [
            (
                cols_q[x],
                tuple(sorted(cols_q[z] for z in lower_q[x])),
                tuple(sorted(cols_q[z] for z in upper_q[x])),
            )
            for x in range(q.n)
        ]
        both = canon(sig_p + sig_q)
        new_p, new_q = both[: p.n], both[p.n :]
        if len(set(new_p)) == len(set(cols_p)) and new_p == cols_p and new_q == cols_q:
            break
        cols_p, cols_q = new_p, new_q
    return cols_p, cols_q


def poset_from_covers(labels, covers) -> FinitePoset:
    return FinitePoset.from_covers(labels, covers)


def isomorphic(p: FinitePoset, q: FinitePoset, budget: int = 1_000_000):
    """Order isomorphism as a point mapping, or None."""
    return p.isomorphism(q, budget)


@dataclass(frozen=True)
class OrderComplex:
    """The 2-skeleton of the simplicial complex of nonempty chains."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.triangles)


# --- chain spaces ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ChainSpace:
    """The poset of nonempty chains of a graded cell order, ordered by
    reverse inclusion: a larger chain lies below each of its subchains, so
    the minimal open set of a chain is the set of chains containing it."""

    poset: FinitePoset
    cells: tuple
    below: dict
    chains: tuple[tuple, ...]  # each chain as a rank-ascending cell tuple
    index: dict  # frozenset of cells -> point id

    @property
    def n(self) -> int:
        return self.poset.n


def chain_space(cells, below, label=str) -> ChainSpace:
    """Build the chain space of a strict graded order on cells.

    `below` maps each cell to the set of cells strictly below it and must
    be transitively closed (as cell_boundary of a 2-complex is).
    """
    cells = tuple(cells)
    pos = {c: i for i, c in enumerate(cells)}
    if len(pos) != len(cells):
        raise ValueError("cells must be distinct")
    bel = {c: frozenset(below.get(c, ())) for c in cells}
    for c, bs in bel.items():
        for b in bs:
            if b not in pos:
                raise ValueError(f"below[{c!r}] mentions unknown cell {b!r}")
            if b == c:
                raise ValueError(f"cell {c!r} listed below itself")
            if not bel[b] <= bs:
                raise ValueError("below relation is not transitively closed")

    above: list[list[int]] = [[] for _ in cells]
    for c, bs in bel.items():
        for b in bs:
            above[pos[b]].append(pos[c])
    for lst in above:
        lst.sort()

    found: list[tuple[int, ...]] = []

    def extend(chain: list[int]):
        found.append(tuple(chain))
        for j in above[chain[-1]]:
            chain.append(j)
            extend(chain)
            chain.pop()

    for i in range(len(cells)):
        extend([i])

    found.sort(key=lambda ch: (len(ch), ch))
    chains = tuple(tuple(cells[i] for i in ch) for ch in found)
    index = {frozenset(ch): i for i, ch in enumerate(chains)}
    labels = ["{" + ",".join(label(c) for c in ch) + "}" for ch in chains]

    down = [set() for _ in chains]
    for cid, ch in enumerate(chains):
        members = list(ch)
        for size in range(1, len(members) + 1):
            for sub in combinations(members, size):
                down[index[frozenset(sub)]].add(cid)
    poset = FinitePoset(labels, down)
    return ChainSpace(poset, cells, bel, chains, index)


# --- group actions -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ActionTable:
    """A finite group acting on the points of a poset: perms[g][x] is the
    image of point x under element g; mult is the group's multiplication
    table and index 0 is the identity."""

    perms: tuple[tuple[int, ...], ...]
    mult: tuple[tuple[int, ...], ...]

    @property
    def group_size(self) -> int:
        return len(self.perms)


def validate_action(space: FinitePoset, action: ActionTable) -> None:
    n = space.n
    size = action.group_size
    ident = tuple(range(n))
    if action.perms[0] != ident:
        raise InvalidAction("element 0 must act as the identity")
    for g, perm in enumerate(action.perms):
        if sorted(perm) != list(range(n)):
            raise InvalidAction(f"element {g} does not act by a bijection")
        for x in range(n):
            if {perm[y] for y in space.down(x)} != space.down(perm[x]):
                raise NotOrderPreserving(g, space.labels[x])
    for g in range(size):
        for h in range(size):
            composed = tuple(action.perms[g][action.perms[h][x]] for x in range(n))
            if composed != action.perms[action.mult[g][h]]:
                raise InvalidAction(f"composition law fails at ({g}, {h})")


def induced_action(cell_perms, mult, cs: ChainSpace) -> ActionTable:
    """Lift a cell-level action to the chain space.

    The cell action must be by order automorphisms of the cell order that
    preserve dimension and move every cell when the element is not the
    identity; these are exactly the hypotheses under which the lift is
    again a free action.
    """
    cells = cs.cells
    cellset = set(cells)
    dims = _cell_heights(cs)
    for g, perm in enumerate(cell_perms):
        if set(perm.keys()) != cellset or set(perm.values()) != cellset:
            raise InvalidAction(f"cell map {g} is not a bijection on the cells")
        for c in cells:
            if dims[c] != dims[perm[c]]:
                raise InvalidAction(
                    f"cell map {g} does not preserve dimension at {c!r}"
                )
        for c in cells:
            if {perm[b] for b in cs.below[c]} != cs.below[perm[c]]:
                raise NotOrderPreserving(g, c)
        if g != 0:
            for c in cells:
                if perm[c] == c:
                    raise HasFixedPoint(g, c)
    point_perms = []
    for perm in cell_perms:
        images = []
        for ch in cs.chains:
            image = frozenset(perm[c] for c in ch)
            images.append(cs.index[image])
        point_perms.append(tuple(images))
    table = ActionTable(tuple(point_perms), tuple(tuple(row) for row in mult))
    validate_action(cs.poset, table)
    return table


def _cell_heights(cs: ChainSpace) -> dict:
    dims = {}
    for c in sorted(cs.cells, key=lambda c: len(cs.below[c])):
        dims[c] = 1 + max((dims[b] for b in cs.below[c]), default=-1)
    return dims


@dataclass(frozen=True)
class PropDiscReport:
    """Outcome of checking that every point's minimal open set is disjoint
    from all its translates by non-identity elements."""

    passed: bool
    violations: tuple[tuple[str, int, str], ...]
    points_checked: int
    elements_checked: int


def check_properly_discontinuous(
    space: FinitePoset, action: ActionTable
) -> PropDiscReport:
    validate_action(space, action)
    violations = []
    for g in range(1, action.group_size):
        perm = action.perms[g]
        for x in range(space.n):
            u = space.down(x)
            overlap = u & {perm[y] for y in u}
            if overlap:
                violations.append(
                    (space.labels[x], g, space.labels[min(overlap)])
                )
    return PropDiscReport(
        not violations, tuple(violations), space.n, action.group_size - 1
    )


def quotient(space: FinitePoset, action: ActionTable) -> FinitePoset:
    """The orbit space: points are orbits, and an orbit lies below another
    iff some translate of its representative does.  The relation computed
    from representatives is automatically transitive because the action is
    by order automorphisms; antisymmetry is verified and its failure (a
    non-T0 quotient) is reported with a witness."""
    validate_action(space, action)
    n = space.n
    orbit_of = [-1] * n
    reps = []
    for x in range(n):
        if orbit_of[x] >= 0:
            continue
        oid = len(reps)
        reps.append(x)
        for perm in action.perms:
            orbit_of[perm[x]] = oid
    down = [
        frozenset(orbit_of[y] for y in space.down(rep)) for rep in reps
    ]
    for a in range(len(reps)):
        for b in down[a]:
            if b != a and a in down[b]:
                raise QuotientNotT0(
                    f"[{space.labels[reps[a]]}]", f"[{space.labels[reps[b]]}]"
                )
    labels = [f"[{space.labels[rep]}]" for rep in reps]
    return FinitePoset(labels, down)
