"""Named-generator presentations over Z/2 and link-complement homology.

An F2Presentation is a Z/2 vector space given by named generators and
linear relations.  reduce() row-reduces the relations, selects the
canonical basis (the pivot-free generators, with generator order as
column order) and rewrites every generator in that basis.

complement_homology() produces the presentation, in each homological
degree 0..3, of the homology of a framed-link complement: one point
class per boundary torus (all identified), meridian and longitude
classes in degree one with the longitude of each component equal to the
mod-2 sum of the meridians of the components it links oddly, the
boundary tori in degree two summing to zero, and nothing in degree
three.  The Z/2 Betti numbers are (1, k, k-1, 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import f2
from .errors import DuplicateGeneratorName
from .links import LinkingMatrix


@dataclass(frozen=True)
class GradedClass:
    """Bookkeeping tag for a named generator.

    degree is retained but never used in rank computations; component
    names the geometric piece the class lives on.
    """

    name: str
    degree: Optional[int] = None
    component: Optional[str] = None


class F2Presentation:
    """Z/2 vector space with named generators and linear relations."""

    def __init__(self, generators: Sequence[str],
                 relations: Iterable[Sequence[str] | int] = (),
                 classes: Sequence[GradedClass] | None = None):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise DuplicateGeneratorName(
                "duplicate generator name in %r" % (gens,))
        self.generators = gens
        self._index = {g: i for i, g in enumerate(gens)}
        rels = []
        for r in relations:
            rels.append(r if isinstance(r, int) else self.vector(r))
        self.relations = tuple(rels)
        self.classes = tuple(classes) if classes is not None else None
        self._rref, self._pivots = f2.rref(list(self.relations))

    # --- vector helpers -------------------------------------------------

    def vector(self, names: Iterable[str]) -> int:
        """Mod-2 sum of named generators as a bitmask."""
        v = 0
        for name in names:
            v ^= 1 << self._index[name]
        return v

    def names(self, v: int) -> tuple[str, ...]:
        return tuple(self.generators[i] for i in f2.bits(v))

    # --- reduction ------------------------------------------------------

    @property
    def basis(self) -> tuple[str, ...]:
        """Canonical basis: generators that are not relation pivots."""
        piv = set(self._pivots)
        return tuple(g for i, g in enumerate(self.generators) if i not in piv)

    @property
    def dim(self) -> int:
        return len(self.generators) - len(self._rref)

    def canonicalize(self, v: int) -> int:
        """Rewrite a vector in the canonical basis."""
        return f2.reduce_vector(v, self._rref)

    def canonical_names(self, names: Iterable[str]) -> tuple[str, ...]:
        return self.names(self.canonicalize(self.vector(names)))

    def expression_map(self) -> dict[str, tuple[str, ...]]:
        """Each generator written in the canonical basis."""
        return {g: self.names(self.canonicalize(1 << i))
                for i, g in enumerate(self.generators)}

    def reduce(self) -> "F2Presentation":
        """Presentation with relations in reduced row-echelon form.

        Idempotent: reducing a reduced presentation returns an equal one.
        """
        return F2Presentation(self.generators, self._rref, self.classes)

    # --- comparisons and export ------------------------------------------

    def relation_set(self) -> frozenset[int]:
        return frozenset(self._rref)

    def __eq__(self, other) -> bool:
        return (isinstance(other, F2Presentation)
                and self.generators == other.generators
                and self.relations == other.relations)

    def __repr__(self) -> str:
        return ("F2Presentation(generators=%r, relations=%r)"
                % (list(self.generators),
                   [list(self.names(r)) for r in self.relations]))

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [sorted(self.names(r)) for r in self._rref],
            "basis": list(self.basis),
            "betti": self.dim,
        }


@dataclass(frozen=True)
class ComplementHomology:
    """Per-degree presentations of a link-complement homology."""

    degrees: tuple[F2Presentation, F2Presentation,
                   F2Presentation, F2Presentation]
    betti: tuple[int, int, int, int] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "betti",
                           tuple(p.dim for p in self.degrees))

    def __getitem__(self, degree: int) -> F2Presentation:
        return self.degrees[degree]

    def to_json(self) -> dict:
        return {
            "betti": list(self.betti),
            "degrees": [p.to_json() for p in self.degrees],
        }


def complement_homology(matrix: LinkingMatrix) -> ComplementHomology:
    """Homology presentation of the complement of a framed link.

    Only the off-diagonal (linking) entries matter; the framings on the
    diagonal do not change the complement.
    """
    k = matrix.size
    if k < 1:
        raise ValueError("complement homology needs at least one component")
    ell = matrix.entries

    q = [f"q^{j + 1}" for j in range(k)]
    deg0 = F2Presentation(
        q,
        [(q[j], q[j + 1]) for j in range(k - 1)],
        [GradedClass(n, 0, f"torus_{j + 1}") for j, n in enumerate(q)])

    # meridians first so the longitude relations pivot on the lambdas
    # and the canonical basis is the meridian classes
    lam = [f"lambda^{j + 1}" for j in range(k)]
    mu = [f"mu^{j + 1}" for j in range(k)]
    rels1 = []
    for j in range(k):
        rel = [lam[j]]
        rel += [mu[i] for i in range(k) if i != j and ell[j][i] % 2 == 1]
        rels1.append(rel)
    deg1 = F2Presentation(
        mu + lam, rels1,
        [GradedClass(n, 1, f"torus_{j + 1}") for j, n in enumerate(mu)]
        + [GradedClass(n, 1, f"torus_{j + 1}") for j, n in enumerate(lam)])

    du = [f"dU^{j + 1}" for j in range(k)]
    deg2 = F2Presentation(
        du, [tuple(du)],
        [GradedClass(n, 2, f"torus_{j + 1}") for j, n in enumerate(du)])

    deg3 = F2Presentation(())

    return ComplementHomology((deg0, deg1, deg2, deg3))
