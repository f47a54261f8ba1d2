"""Concrete group computations behind the presentations: coset enumeration
of the trivial subgroup (so cosets are group elements), integer Smith
normal form with its unimodular transforms, abelian invariants, and the
word-triviality oracles built from these."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .presentations import (
    NONTRIVIAL,
    TRIVIAL,
    UNKNOWN,
    Presentation,
    Word,
    word,
)


class NotEnumerated(RuntimeError):
    def __init__(self, max_cosets: int):
        super().__init__(
            f"coset enumeration did not complete within {max_cosets} cosets "
            "(the group may be infinite or the budget too small)"
        )
        self.max_cosets = max_cosets


@dataclass(frozen=True, eq=False)
class CosetTable:
    """A complete coset table of the trivial subgroup, standardized by a
    breadth-first renumbering from the identity coset, so coset indices can
    be used as canonical group element indices (0 is the identity)."""

    presentation: Presentation
    rows: tuple[tuple[int, ...], ...]
    rep_words: tuple[tuple[int, ...], ...]  # column paths from coset 0

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def complete(self) -> bool:
        return all(all(t >= 0 for t in row) for row in self.rows)

    def column(self, gen: str, sign: int) -> int:
        g = self.presentation.generators.index(gen)
        return 2 * g + (0 if sign == 1 else 1)

    def step(self, coset: int, letter) -> int:
        return self.rows[coset][self.column(letter.gen, letter.sign)]

    def apply(self, coset: int, w: Word) -> int:
        cols = [self.column(l.gen, l.sign) for l in w.letters]
        for col in cols:
            coset = self.rows[coset][col]
        return coset

    def word_to_element(self, w: Word) -> int:
        return self.apply(0, w)

    def left_multiply(self, g: int, h: int) -> int:
        c = g
        for col in self.rep_words[h]:
            c = self.rows[c][col]
        return c

    def multiplication_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.size
        return tuple(
            tuple(self.left_multiply(g, h) for h in range(n)) for g in range(n)
        )

    def generator_permutation(self, gen: str) -> tuple[int, ...]:
        col = self.column(gen, 1)
        return tuple(row[col] for row in self.rows)


def todd_coxeter(pres: Presentation, max_cosets: int = 100_000) -> CosetTable:
    """Enumerate the elements of the presented group.

    Relator-driven strategy: every live coset scans every relator, defining
    new cosets as needed and merging cosets (union-find) when a relator
    path closes on two different indices; afterwards every generator column
    is filled so the table is complete exactly when the group is finite.
    Raises NotEnumerated when more than max_cosets cosets get defined.
    """
    gens = pres.generators
    ncols = 2 * len(gens)
    col_of = {(g, 1): 2 * i for i, g in enumerate(gens)}
    col_of.update({(g, -1): 2 * i + 1 for i, g in enumerate(gens)})
    rel_cols = [
        [col_of[(l.gen, l.sign)] for l in r.letters] for r in pres.relators if len(r)
    ]

    neighbors: list[list[int]] = [[-1] * ncols]
    parent = [0]

    def find(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c: int, col: int) -> int:
        if len(parent) >= max_cosets:
            raise NotEnumerated(max_cosets)
        b = len(parent)
        parent.append(b)
        row = [-1] * ncols
        row[col ^ 1] = c
        neighbors.append(row)
        neighbors[c][col] = b
        return b

    def follow(c: int, col: int) -> int:
        c = find(c)
        t = neighbors[c][col]
        if t < 0:
            return define(c, col)
        return find(t)

    def unify(c1: int, c2: int) -> None:
        work = [(c1, c2)]
        while work:
            a, b = work.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            parent[b] = a
            ra, rb = neighbors[a], neighbors[b]
            for col in range(ncols):
                nb = rb[col]
                if nb < 0:
                    continue
                if ra[col] < 0:
                    ra[col] = nb
                else:
                    work.append((ra[col], nb))

    i = 0
    while i < len(parent):
        if find(i) == i:
            for rel in rel_cols:
                c = i
                for col in rel:
                    c = follow(c, col)
                unify(c, i)
            c = find(i)
            for col in range(ncols):
                follow(c, col)
        i += 1

    # breadth-first standardization from the identity coset
    start = find(0)
    index = {start: 0}
    order = [start]
    reps: list[tuple[int, ...]] = [()]
    qi = 0
    while qi < len(order):
        c = order[qi]
        qi += 1
        for col in range(ncols):
            t = find(neighbors[c][col])
            if t not in index:
                index[t] = len(order)
                order.append(t)
                reps.append(reps[qi - 1] + (col,))
    rows = tuple(
        tuple(index[find(neighbors[c][col])] for col in range(ncols)) for c in order
    )
    return CosetTable(pres, rows, tuple(reps))


# --- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SmithNormalForm:
    """diagonal of L*m*R together with the unimodular transforms L, R."""

    diagonal: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix) -> SmithNormalForm:
    """Diagonalize an integer matrix with row/column operations, keeping the
    transforms, so that left * matrix * right is diagonal with each entry
    dividing the next.  Exact integer arithmetic throughout."""
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    L = _identity(m)
    R = _identity(n)

    def row_sub(i, j, q):  # row_i -= q * row_j
        Ai, Aj = A[i], A[j]
        for k in range(n):
            Ai[k] -= q * Aj[k]
        Li, Lj = L[i], L[j]
        for k in range(m):
            Li[k] -= q * Lj[k]

    def col_sub(i, j, q):  # col_i -= q * col_j
        for row in A:
            row[i] -= q * row[j]
        for row in R:
            row[i] -= q * row[j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def row_negate(i):
        A[i] = [-v for v in A[i]]
        L[i] = [-v for v in L[i]]

    t = 0
    while t < min(m, n):
        # move a smallest-magnitude nonzero entry of the remaining block to (t, t)
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(A[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            if A[t][t] < 0:
                row_negate(t)
            a = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // a
                    row_sub(i, t, q)
                    if A[i][t]:
                        row_swap(i, t)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // a
                    col_sub(j, t, q)
                    if A[t][j]:
                        col_swap(j, t)
                        dirty = True
                        break
            if dirty:
                continue
            # row and column are clear; force divisibility of the rest
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % a:
                        offender = i
                        break
                if offender:
                    break
            if offender is None:
                break
            row_sub(t, offender, -1)  # pull the offending row up, then redo
        t += 1

    diag = tuple(A[i][i] for i in range(min(m, n)))
    return SmithNormalForm(
        diag,
        tuple(tuple(row) for row in L),
        tuple(tuple(row) for row in R),
    )


@dataclass(frozen=True)
class AbelianInvariants:
    torsion: tuple[int, ...]
    free_rank: int

    def order(self) -> int | None:
        return None if self.free_rank else prod(self.torsion, start=1)

    def __str__(self) -> str:
        parts = [f"Z_{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "trivial"


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    """Invariant factors of the abelianization, from the Smith normal form
    of the relator exponent matrix."""
    ngens = len(p.generators)
    if not p.relators or not ngens:
        return AbelianInvariants((), ngens)
    snf = smith_normal_form(p.exponent_matrix())
    torsion = tuple(d for d in snf.diagonal if d > 1)
    return AbelianInvariants(torsion, ngens - snf.rank)


# --- oracles -----------------------------------------------------------------


class CosetTableOracle:
    """Exact triviality oracle for a finite group realized by a coset table:
    a word is trivial iff it traces the identity coset to itself."""

    def __init__(self, table: CosetTable):
        self.table = table
        self.description = f"coset table of order {table.size}"

    def answer(self, w: Word) -> str:
        return TRIVIAL if self.table.word_to_element(w) == 0 else NONTRIVIAL


class AbelianizationOracle:
    """Sound one-sided oracle: a word whose abelianized image lies outside
    the lattice spanned by the relator exponent vectors is certainly
    nontrivial; only freely trivial words are declared trivial; everything
    else is UNKNOWN."""

    def __init__(self, p: Presentation):
        self.presentation = p
        self.description = "abelianization"
        if p.relators and p.generators:
            self._snf = smith_normal_form(p.exponent_matrix())
        else:
            self._snf = None

    def _in_relator_lattice(self, vec: tuple[int, ...]) -> bool:
        if self._snf is None:
            return all(v == 0 for v in vec)
        right = self._snf.right
        n = len(vec)
        image = [sum(vec[i] * right[i][j] for i in range(n)) for j in range(n)]
        diag = self._snf.diagonal
        for j, v in enumerate(image):
            d = diag[j] if j < len(diag) else 0
            if d == 0:
                if v != 0:
                    return False
            elif v % d:
                return False
        return True

    def answer(self, w: Word) -> str:
        if not len(w.free_reduce()):
            return TRIVIAL
        vec = w.exponent_vector(self.presentation.generators)
        if not self._in_relator_lattice(vec):
            return NONTRIVIAL
        return UNKNOWN
