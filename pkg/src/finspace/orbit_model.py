"""The orbit space of the chain space of a presentation's 2-complex,
written down symbolically from the presentation alone.

Left multiplication permutes the cells of the complex freely, so chains
map to chains and each orbit of chains has a canonical representative
based at the identity.  Enumerating those representatives gives finitely
many point shapes, independent of the group's size (or finiteness):

  V          the single vertex orbit
  E(s)       the edge orbit of generator s
  E-(s)      the orbit of {vertex, edge} chains entering edge s at its tail
  E+(s)      the same at its head
  F(k)       the face orbit of relator k
  Fv(k, i)   {vertex, face} chains: the i-th corner of the relator walk
  Fe(k, i)   {edge, face} chains: the i-th edge of the walk
  Fel(k, i)  {vertex, edge, face} chains at the start of walk step i
  Feh(k, i)  {vertex, edge, face} chains at the end of walk step i

Chains are ordered by reverse inclusion, so the covers of the quotient
are exactly "drop one cell from the chain", pushed down to orbit labels.
The total count is 1 + 3|S| + sum over relators of (4 length + 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .posets import FinitePoset
from .presentations import Presentation, ReducedPresentation


@dataclass(frozen=True, order=True)
class OrbitPoint:
    kind: str  # V | E | E- | E+ | F | Fv | Fe | Fel | Feh
    gen: str | None = None
    relator: int | None = None
    index: int | None = None

    @property
    def label(self) -> str:
        if self.kind == "V":
            return "V"
        if self.kind in ("E", "E-", "E+"):
            return f"{self.kind}({self.gen})"
        if self.kind == "F":
            return f"F({self.relator})"
        return f"{self.kind}({self.relator},{self.index})"


@dataclass(frozen=True, eq=False)
class SpaceModel:
    """A finite space together with the symbolic orbit points that name
    its elements."""

    presentation: ReducedPresentation
    poset: FinitePoset
    points: tuple[OrbitPoint, ...]

    def point_id(self, point: OrbitPoint) -> int:
        return self.points.index(point)


def predicted_cardinality(p: Presentation) -> int:
    """Number of chain orbits: 1 + 3|S| + sum_r (4 length(r) + 1)."""
    return 1 + 3 * len(p.generators) + sum(4 * len(r) + 1 for r in p.relators)


def quotient_model(rp: ReducedPresentation) -> SpaceModel:
    """Build the orbit space of the chain space symbolically.

    Reducedness is what makes the orbit shapes distinct and the covers
    uniform, which is why a certificate is required rather than a bare
    presentation.
    """
    if not isinstance(rp, ReducedPresentation):
        raise TypeError(
            "quotient_model requires a certified ReducedPresentation; "
            "use reduce_presentation or certify_reduced first"
        )
    pres = rp.presentation
    points: list[OrbitPoint] = [OrbitPoint("V")]
    for s in pres.generators:
        points.append(OrbitPoint("E", gen=s))
        points.append(OrbitPoint("E-", gen=s))
        points.append(OrbitPoint("E+", gen=s))
    for k, r in enumerate(pres.relators):
        points.append(OrbitPoint("F", relator=k))
        L = len(r)
        for kind in ("Fv", "Fe", "Fel", "Feh"):
            for i in range(L):
                points.append(OrbitPoint(kind, relator=k, index=i))

    pid = {pt: i for i, pt in enumerate(points)}
    covers: list[tuple[int, int]] = []

    def cover(lo: OrbitPoint, hi: OrbitPoint):
        covers.append((pid[lo], pid[hi]))

    V = OrbitPoint("V")
    for s in pres.generators:
        for kind in ("E-", "E+"):
            cover(OrbitPoint(kind, gen=s), V)
            cover(OrbitPoint(kind, gen=s), OrbitPoint("E", gen=s))
    for k, r in enumerate(pres.relators):
        F = OrbitPoint("F", relator=k)
        L = len(r)
        for i in range(L):
            letter = r.letters[i]
            fv = OrbitPoint("Fv", relator=k, index=i)
            fe = OrbitPoint("Fe", relator=k, index=i)
            fel = OrbitPoint("Fel", relator=k, index=i)
            feh = OrbitPoint("Feh", relator=k, index=i)
            cover(fv, V)
            cover(fv, F)
            cover(fe, OrbitPoint("E", gen=letter.gen))
            cover(fe, F)
            # walk step i runs from corner i to corner i + 1; a positively
            # signed letter traverses its edge cell tail-to-head, a negative
            # letter head-to-tail
            start_kind, end_kind = ("E-", "E+") if letter.sign == 1 else ("E+", "E-")
            cover(fel, fe)
            cover(fel, fv)
            cover(fel, OrbitPoint(start_kind, gen=letter.gen))
            cover(feh, fe)
            cover(feh, OrbitPoint("Fv", relator=k, index=(i + 1) % L))
            cover(feh, OrbitPoint(end_kind, gen=letter.gen))

    poset = FinitePoset.from_covers([pt.label for pt in points], covers)
    assert poset.n == predicted_cardinality(pres)
    return SpaceModel(rp, poset, tuple(points))
