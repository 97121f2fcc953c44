"""Three-level directed category presentations and the flow category of a
framed link.

Objects sit in three layers: one top object, k middle objects, one
bottom object.  Morphism spaces point strictly downward; hom(a, a) is
spanned by a formal identity and hom spaces against the order are zero.
Composition is a bilinear table from hom(top, mid_j) x hom(mid_j,
bottom) into hom(top, bottom); products through distinct middle objects
vanish.  Triple and higher products vanish identically for three-level
directed categories; higher_product keeps that slot explicit so
associativity-style checks can be phrased uniformly.

build_flow_category computes, for a framed link, the category whose
hom(top, mid_j) is spanned by the classes [K+^j], [p+^j] of the j-th
attaching circle above, hom(mid_j, bottom) by [K-^j], [p-^j] below, and
hom(top, bottom) by the link-complement homology classes; the
composition table is

    [K+^j] * [p-^j] = mu^j           [p+^j] * [K-^j] = lambda^j + m_j mu^j
    [K+^j] * [K-^j] = dU^j           [p+^j] * [p-^j] = q^j

with all outputs rewritten in the canonical basis of the complement
homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .homology import ComplementHomology, F2Presentation, GradedClass, \
    complement_homology
from .links import FramedLink, LinkingMatrix, linking_matrix


@dataclass(frozen=True)
class DirectedCategoryPresentation:
    top: str
    middles: tuple[str, ...]
    bottom: str
    hom_top_mid: tuple[F2Presentation, ...]
    hom_mid_bottom: tuple[F2Presentation, ...]
    hom_top_bottom: F2Presentation
    # (middle index, generator of hom(top,mid), generator of hom(mid,bottom))
    # -> canonical-basis support in hom(top,bottom)
    table: Mapping[tuple[int, str, str], tuple[str, ...]]
    # the framed linking data the category was built from, when link-built
    linking: LinkingMatrix | None = None

    @property
    def objects(self) -> tuple[str, ...]:
        return (self.top,) + self.middles + (self.bottom,)

    def hom(self, a: str, b: str) -> F2Presentation | None:
        """Presentation of hom(a, b); None encodes the zero space."""
        if a == self.top and b == self.bottom:
            return self.hom_top_bottom
        if a == self.top and b in self.middles:
            return self.hom_top_mid[self.middles.index(b)]
        if a in self.middles and b == self.bottom:
            return self.hom_mid_bottom[self.middles.index(a)]
        return None

    def compose(self, mid: int, u: Iterable[str] | str,
                v: Iterable[str] | str) -> tuple[str, ...]:
        """Bilinear composition of chains through middle object mid.

        u and v are generator names or iterables of names (mod-2 chains
        in hom(top, mid) and hom(mid, bottom)).
        """
        if isinstance(u, str):
            u = (u,)
        if isinstance(v, str):
            v = (v,)
        target = self.hom_top_bottom
        acc = 0
        for gu in u:
            for gv in v:
                acc ^= target.vector(self.table.get((mid, gu, gv), ()))
        return target.names(target.canonicalize(acc))

    def compose_cross(self, mid_u: int, u: str, mid_v: int, v: str
                      ) -> tuple[str, ...]:
        """Composition through distinct middle objects: identically zero."""
        if mid_u == mid_v:
            return self.compose(mid_u, u, v)
        return ()

    def higher_product(self, order: int, *chains) -> tuple[str, ...]:
        """Products of order >= 3 vanish identically; the slot is kept so
        associativity-style checks can be phrased uniformly."""
        if order < 3:
            raise ValueError("higher_product is for order >= 3")
        return ()

    # --- structural checks ------------------------------------------------

    def validate(self) -> None:
        k = len(self.middles)
        if len(self.hom_top_mid) != k or len(self.hom_mid_bottom) != k:
            raise ValueError("hom layers out of step with middle objects")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object names must be distinct")
        for (mid, gu, gv), out in self.table.items():
            if gu not in self.hom_top_mid[mid].generators:
                raise ValueError("unknown generator %r" % (gu,))
            if gv not in self.hom_mid_bottom[mid].generators:
                raise ValueError("unknown generator %r" % (gv,))
            vec = self.hom_top_bottom.vector(out)
            if self.hom_top_bottom.canonicalize(vec) != vec:
                raise ValueError(
                    "table entry %r not in canonical form" % ((mid, gu, gv),))

    # --- export -----------------------------------------------------------

    def to_json(self) -> dict:
        entries = [
            {"middle": self.middles[mid], "left": gu, "right": gv,
             "product": sorted(out)}
            for (mid, gu, gv), out in sorted(self.table.items())
        ]
        return {
            "objects": list(self.objects),
            "hom_top_mid": [p.to_json() for p in self.hom_top_mid],
            "hom_mid_bottom": [p.to_json() for p in self.hom_mid_bottom],
            "hom_top_bottom": self.hom_top_bottom.to_json(),
            "table": entries,
        }

    def to_dot(self) -> str:
        lines = ["digraph category {", "  rankdir=LR;"]
        for obj in self.objects:
            lines.append('  "%s";' % obj)
        for mid, name in enumerate(self.middles):
            for g in self.hom_top_mid[mid].generators:
                lines.append('  "%s" -> "%s" [label="%s"];'
                             % (self.top, name, g))
            for g in self.hom_mid_bottom[mid].generators:
                lines.append('  "%s" -> "%s" [label="%s"];'
                             % (name, self.bottom, g))
        for g in self.hom_top_bottom.generators:
            lines.append('  "%s" -> "%s" [label="%s"];'
                         % (self.top, self.bottom, g))
        lines.append("}")
        return "\n".join(lines) + "\n"


def flow_generator_names(k: int) -> dict[str, list[str]]:
    return {
        "top_mid": [["K+^%d" % (j + 1), "p+^%d" % (j + 1)] for j in range(k)],
        "mid_bottom": [["K-^%d" % (j + 1), "p-^%d" % (j + 1)]
                       for j in range(k)],
    }


def _complement_presentation(homology: ComplementHomology) -> F2Presentation:
    """Single presentation joining the complement homology degrees,
    ordered degree 0, 1, 2."""
    gens: list[str] = []
    classes: list[GradedClass] = []
    rels: list[tuple[str, ...]] = []
    for degree in (0, 1, 2):
        pres = homology[degree]
        gens.extend(pres.generators)
        if pres.classes:
            classes.extend(pres.classes)
        rels.extend(pres.names(r) for r in pres.relations)
    return F2Presentation(gens, rels, classes)


def build_flow_category(fl: FramedLink) -> DirectedCategoryPresentation:
    """Flow category of the framed link: generators from the attaching
    circles, hom(top, bottom) from the complement homology, and the
    four-product composition table, canonicalized."""
    matrix = linking_matrix(fl)
    k = matrix.size
    homology = complement_homology(matrix)
    bottom_pres = _complement_presentation(homology)
    names = flow_generator_names(k)

    hom_top_mid = tuple(
        F2Presentation(names["top_mid"][j], (),
                       (GradedClass(names["top_mid"][j][0], 1,
                                    "K+^%d" % (j + 1)),
                        GradedClass(names["top_mid"][j][1], 0,
                                    "K+^%d" % (j + 1))))
        for j in range(k))
    hom_mid_bottom = tuple(
        F2Presentation(names["mid_bottom"][j], (),
                       (GradedClass(names["mid_bottom"][j][0], 1,
                                    "K-^%d" % (j + 1)),
                        GradedClass(names["mid_bottom"][j][1], 0,
                                    "K-^%d" % (j + 1))))
        for j in range(k))

    table: dict[tuple[int, str, str], tuple[str, ...]] = {}
    for j in range(k):
        kp, pp = names["top_mid"][j]
        km, pm = names["mid_bottom"][j]
        m_j = matrix.framing(j) % 2
        lam_vec = ["lambda^%d" % (j + 1)] + (["mu^%d" % (j + 1)] if m_j
                                             else [])
        entries = {
            (j, kp, pm): ("mu^%d" % (j + 1),),
            (j, pp, km): tuple(lam_vec),
            (j, kp, km): ("dU^%d" % (j + 1),),
            (j, pp, pm): ("q^%d" % (j + 1),),
        }
        for key, support in entries.items():
            vec = bottom_pres.canonicalize(bottom_pres.vector(support))
            table[key] = bottom_pres.names(vec)

    cat = DirectedCategoryPresentation(
        top="x_4",
        middles=tuple("x_2^%d" % (j + 1) for j in range(k)),
        bottom="x_0",
        hom_top_mid=hom_top_mid,
        hom_mid_bottom=hom_mid_bottom,
        hom_top_bottom=bottom_pres,
        table=table,
        linking=matrix,
    )
    cat.validate()
    return cat


@dataclass(frozen=True)
class CompositeRelation:
    """A linear relation among composite products, with every pair
    (mid, u, v) standing for the product of u and v through mid."""

    name: str
    terms: tuple[tuple[int, str, str], ...]

    def holds(self, cat: DirectedCategoryPresentation) -> bool:
        acc = 0
        pres = cat.hom_top_bottom
        for mid, u, v in self.terms:
            acc ^= pres.vector(cat.compose(mid, u, v))
        return pres.canonicalize(acc) == 0


def relation_table(cat: DirectedCategoryPresentation
                   ) -> list[CompositeRelation]:
    """The relation families among the composite classes, coefficients
    reduced mod 2:

    - the [K+^j][K-^j] products sum to zero;
    - all [p+^j][p-^j] products agree;
    - [p+^j][K-^j] equals m_j [K+^j][p-^j] plus the [K+^i][p-^i] of the
      components linking j oddly.
    """
    matrix = cat.linking
    if matrix is None:
        raise ValueError("relation_table needs a link-built category")
    k = len(cat.middles)
    names = flow_generator_names(k)
    rels = [CompositeRelation(
        "sum_KK",
        tuple((j, names["top_mid"][j][0], names["mid_bottom"][j][0])
              for j in range(k)))]
    for j in range(1, k):
        rels.append(CompositeRelation(
            "pp_%d_equals_pp_1" % (j + 1),
            ((0, names["top_mid"][0][1], names["mid_bottom"][0][1]),
             (j, names["top_mid"][j][1], names["mid_bottom"][j][1]))))
    for j in range(k):
        terms = [(j, names["top_mid"][j][1], names["mid_bottom"][j][0])]
        if matrix.framing(j) % 2:
            terms.append((j, names["top_mid"][j][0],
                          names["mid_bottom"][j][1]))
        for i in range(k):
            if i != j and matrix.entries[j][i] % 2:
                terms.append((i, names["top_mid"][i][0],
                              names["mid_bottom"][i][1]))
        rels.append(CompositeRelation("pK_%d" % (j + 1), tuple(terms)))
    return rels


def rp2_category() -> DirectedCategoryPresentation:
    """Hardcoded two-dimensional sanity fixture: three objects, two
    generators per hom space, products

        B2 A2 = B1 A1 = C1,   B1 A2 = B2 A1 = C2.

    A fixture, not a general 2d pipeline: the link machinery above is
    four-dimensional.
    """
    hom_a = F2Presentation(("A_1", "A_2"))
    hom_b = F2Presentation(("B_1", "B_2"))
    hom_c = F2Presentation(("C_1", "C_2"))
    table = {
        (0, "A_2", "B_2"): ("C_1",),
        (0, "A_1", "B_1"): ("C_1",),
        (0, "A_2", "B_1"): ("C_2",),
        (0, "A_1", "B_2"): ("C_2",),
    }
    cat = DirectedCategoryPresentation(
        top="x_2", middles=("x_1",), bottom="x_0",
        hom_top_mid=(hom_a,), hom_mid_bottom=(hom_b,),
        hom_top_bottom=hom_c, table=table)
    cat.validate()
    return cat
