"""Link diagrams from PD codes, linking numbers, and framed linking matrices.

PD convention: each crossing is a quadruple X(a,b,c,d) of arc labels
listed counter-clockwise starting from the incoming under-strand, so the
under-strand runs a -> c and the over-strand occupies positions b, d.
The over-strand direction is resolved globally (every arc has exactly
one head and one tail); a crossing is positive when the over-strand
runs d -> b.

The grammar also accepts O(a) tokens for crossingless circle
components (a is a fresh arc label), which plain quadruples cannot
express; these are needed for round unknots and split unlinks.

All values are immutable after construction and every operation is a
pure function.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

from .errors import (ArcLabelNotPairedTwice, InconsistentOrientation,
                     MalformedToken, SameComponent)

_TOKEN = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)"
                    r"|O\(\s*(\d+)\s*\)")


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram.

    crossings: PD quadruples, under-strand a -> c, rotated so the stored
        form matches the resolved orientation.
    circles: arc labels of crossingless circle components.
    components: arcs of each component in circuit order, components
        ordered by smallest arc label.
    over_to_b: per crossing, True when the over-strand runs d -> b.
    signs: per crossing, +1 or -1.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    circles: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    over_to_b: tuple[bool, ...]
    signs: tuple[int, ...]

    @property
    def component_count(self) -> int:
        return len(self.components)

    def component_of(self, arc: int) -> int:
        for i, comp in enumerate(self.components):
            if arc in comp:
                return i
        raise KeyError(arc)

    def component_map(self) -> dict[int, int]:
        return {a: i for i, comp in enumerate(self.components) for a in comp}

    def crossing_components(self, c: int) -> tuple[int, int]:
        """(under component, over component) of crossing c."""
        cmap = self.component_map()
        a, b, _, _ = self.crossings[c]
        return cmap[a], cmap[b]

    def to_pd_text(self) -> str:
        parts = ["X(%d,%d,%d,%d)" % q for q in self.crossings]
        parts += ["O(%d)" % a for a in self.circles]
        return ",".join(parts)

    def to_json(self) -> dict:
        return {
            "crossings": [list(q) for q in self.crossings],
            "circles": list(self.circles),
            "components": [list(c) for c in self.components],
            "signs": list(self.signs),
        }


@dataclass(frozen=True)
class FramedLink:
    """A link diagram with one integer framing coefficient per component."""

    diagram: LinkDiagram
    framings: tuple[int, ...]

    def __post_init__(self):
        k = self.diagram.component_count
        if k < 1:
            raise ValueError("a framed link needs at least one component")
        if len(self.framings) != k:
            raise ValueError(
                "got %d framings for %d components"
                % (len(self.framings), k))

    def to_json(self) -> dict:
        d = self.diagram.to_json()
        d["framings"] = list(self.framings)
        return d


@dataclass(frozen=True)
class LinkingMatrix:
    """Symmetric integer matrix: linking numbers off the diagonal,
    framing coefficients on it."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("linking matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("linking matrix must be symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    def framing(self, j: int) -> int:
        return self.entries[j][j]

    def to_json(self) -> dict:
        return {"entries": [list(r) for r in self.entries]}


def _tokenize(text: str) -> tuple[list[tuple[int, int, int, int]], list[int]]:
    stripped = text.strip()
    if not stripped:
        return [], []
    quadruples: list[tuple[int, int, int, int]] = []
    circles: list[int] = []
    pos = 0
    expecting_token = True
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        if not expecting_token:
            if stripped[pos] != ",":
                raise MalformedToken(
                    "expected ',' at offset %d in %r" % (pos, text))
            pos += 1
            expecting_token = True
            continue
        m = _TOKEN.match(stripped, pos)
        if m is None:
            raise MalformedToken(
                "bad token at offset %d in %r" % (pos, text))
        if m.group(5) is not None:
            circles.append(int(m.group(5)))
        else:
            quadruples.append(tuple(int(m.group(i)) for i in (1, 2, 3, 4)))
        pos = m.end()
        expecting_token = False
    if expecting_token:
        raise MalformedToken("trailing ',' in %r" % (text,))
    return quadruples, circles


def _resolve_orientations(
        quadruples: list[tuple[int, int, int, int]]) -> list[bool]:
    """Decide, per crossing, whether the over-strand runs d -> b.

    Position 0 is always an arc head (the arc ends there) and position 2
    a tail.  For positions 1 and 3 exactly one is a head; propagating
    "each arc has one head and one tail" fixes the choice up to
    components that only ever cross over, which get a deterministic
    free choice.
    """
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, quad in enumerate(quadruples):
        for p, arc in enumerate(quad):
            ends.setdefault(arc, []).append((ci, p))
    for arc, occ in ends.items():
        if len(occ) != 2:
            raise ArcLabelNotPairedTwice(
                "arc %d occurs %d times" % (arc, len(occ)))

    # over_head[c] is 1 or 3: the over position where an arc comes in.
    over_head: dict[int, int] = {}
    # role of an endpoint: True = head (arc ends), False = tail.
    def known_role(ci: int, p: int) -> Optional[bool]:
        if p == 0:
            return True
        if p == 2:
            return False
        if ci in over_head:
            return over_head[ci] == p
        return None

    def other_end(arc: int, ci: int, p: int) -> tuple[int, int]:
        occ = ends[arc]
        return occ[1] if occ[0] == (ci, p) else occ[0]

    def set_over_head(ci: int, p: int, queue: list[int]) -> None:
        if ci in over_head:
            if over_head[ci] != p:
                raise InconsistentOrientation(
                    "crossing %d cannot be oriented" % ci)
            return
        over_head[ci] = p
        queue.append(ci)

    queue = list(range(len(quadruples)))
    while True:
        while queue:
            ci = queue.pop()
            quad = quadruples[ci]
            for p in range(4):
                role = known_role(ci, p)
                if role is None:
                    continue
                oc, op = other_end(quad[p], ci, p)
                # opposite role at the other end of the arc
                want_head = not role
                other_role = known_role(oc, op)
                if other_role is None:
                    # op is 1 or 3 at an undecided crossing
                    set_over_head(oc, op if want_head else (4 - op), queue)
                elif other_role != want_head:
                    raise InconsistentOrientation(
                        "arc %d has two %s" % (quad[p],
                                               "heads" if role else "tails"))
        undecided = [ci for ci in range(len(quadruples))
                     if ci not in over_head]
        if not undecided:
            break
        # components that only cross over: free choice, made deterministic
        # by letting the smaller over-arc of the first undecided crossing
        # leave it (the other over position takes the incoming role)
        ci = min(undecided)
        smallest_pos = 1 if quadruples[ci][1] <= quadruples[ci][3] else 3
        set_over_head(ci, 4 - smallest_pos, queue)
    return [over_head[ci] == 3 for ci in range(len(quadruples))]


def _trace_components(quadruples, circles, over_to_b) -> tuple[tuple[int, ...], ...]:
    successor: dict[int, int] = {}
    for ci, (a, b, c, d) in enumerate(quadruples):
        successor[a] = c
        if over_to_b[ci]:
            successor[d] = b
        else:
            successor[b] = d
    comps = []
    seen: set[int] = set()
    for arc in successor:
        if arc in seen:
            continue
        cycle = [arc]
        seen.add(arc)
        nxt = successor[arc]
        while nxt != arc:
            if nxt in seen:
                raise InconsistentOrientation(
                    "arc successor relation is not a disjoint union of cycles")
            cycle.append(nxt)
            seen.add(nxt)
            nxt = successor[nxt]
        start = cycle.index(min(cycle))
        comps.append(tuple(cycle[start:] + cycle[:start]))
    comps.extend((a,) for a in circles)
    comps.sort(key=lambda c: c[0])
    return tuple(comps)


def parse_pd(text: str, allow_empty: bool = False) -> LinkDiagram:
    """Parse a PD-code string into a validated, oriented diagram."""
    quadruples, circles = _tokenize(text)
    if not quadruples and not circles:
        if allow_empty:
            return LinkDiagram((), (), (), (), ())
        raise MalformedToken("empty PD code (pass allow_empty to accept)")
    for arc in circles:
        if circles.count(arc) > 1 or any(arc in q for q in quadruples):
            raise ArcLabelNotPairedTwice(
                "circle arc %d reused elsewhere" % arc)
    over_to_b = _resolve_orientations(quadruples)
    components = _trace_components(quadruples, circles, over_to_b)
    signs = tuple(1 if o else -1 for o in over_to_b)
    # store quadruples as given; the under direction a -> c already
    # matches the resolved orientation by convention
    return LinkDiagram(tuple(tuple(q) for q in quadruples), tuple(circles),
                       components, tuple(over_to_b), signs)


def linking_number(diagram: LinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between components i and j."""
    if i == j:
        raise SameComponent(
            "self-linking is not defined; framings live in FramedLink")
    k = diagram.component_count
    if not (0 <= i < k and 0 <= j < k):
        raise IndexError("component index out of range")
    total = 0
    for c in range(len(diagram.crossings)):
        cu, co = diagram.crossing_components(c)
        if {cu, co} == {i, j}:
            total += diagram.signs[c]
    if total % 2 != 0:
        raise InconsistentOrientation(
            "odd signed crossing count between components %d and %d" % (i, j))
    return total // 2


def self_writhe(diagram: LinkDiagram, j: int) -> int:
    """Signed count of self-crossings of component j."""
    total = 0
    for c in range(len(diagram.crossings)):
        cu, co = diagram.crossing_components(c)
        if cu == j and co == j:
            total += diagram.signs[c]
    return total


def linking_matrix(fl: FramedLink) -> LinkingMatrix:
    """Symmetric matrix with lk(K_i, K_j) off the diagonal and the
    framing coefficients m_j on it."""
    d = fl.diagram
    k = d.component_count
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            row.append(fl.framings[i] if i == j else linking_number(d, i, j))
        rows.append(tuple(row))
    return LinkingMatrix(tuple(rows))


def reverse_component(diagram: LinkDiagram, comp: int) -> LinkDiagram:
    """Diagram with the orientation of one component reversed."""
    arcs = set(diagram.components[comp])
    new_quads = []
    new_over = []
    for ci, quad in enumerate(diagram.crossings):
        a, b, c, d = quad
        over = diagram.over_to_b[ci]
        if a in arcs:
            # reversed under-strand: rotate so the new incoming
            # under-arc (c) sits first
            quad = (c, d, a, b)
            over = not over
        if b in arcs:
            over = not over
        new_quads.append(quad)
        new_over.append(over)
    components = _trace_components(list(new_quads), list(diagram.circles),
                                   new_over)
    signs = tuple(1 if o else -1 for o in new_over)
    return LinkDiagram(tuple(new_quads), diagram.circles, components,
                       tuple(new_over), signs)


def diagram_from_json(data: dict) -> LinkDiagram:
    quads = [tuple(q) for q in data["crossings"]]
    circles = list(data.get("circles", ()))
    parts = ["X(%d,%d,%d,%d)" % q for q in quads]
    parts += ["O(%d)" % a for a in circles]
    return parse_pd(",".join(parts), allow_empty=True)


def framed_link_from_json(data: dict) -> FramedLink:
    return FramedLink(diagram_from_json(data), tuple(data["framings"]))


# --- fixture catalog ----------------------------------------------------

def catalog_path() -> Optional[str]:
    return os.environ.get("FUKAYA_FLOW_FIXTURES")


def load_catalog() -> dict[str, tuple[str, tuple[int, ...]]]:
    """Named links: name -> (pd text, default framings).

    The FUKAYA_FLOW_FIXTURES environment variable overrides the
    packaged catalog.
    """
    override = catalog_path()
    if override:
        with open(override, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = (resources.files("fukaya_flow") / "data" / "links.catalog"
                ).read_text(encoding="utf-8")
    catalog = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, pd, framings = (part.strip() for part in line.split(";"))
        default = tuple(int(x) for x in framings.split(",")) if framings \
            else ()
        catalog[name] = (pd, default)
    return catalog


def fixture(name: str,
            framings: Optional[Sequence[int]] = None) -> FramedLink:
    """Build a named catalog link, optionally overriding its framings."""
    catalog = load_catalog()
    if name not in catalog:
        raise KeyError("unknown fixture %r (have: %s)"
                       % (name, ", ".join(sorted(catalog))))
    pd, default = catalog[name]
    diagram = parse_pd(pd)
    chosen = tuple(framings) if framings is not None else default
    return FramedLink(diagram, chosen)


def fixture_names() -> list[str]:
    return sorted(load_catalog())


def dumps_link(fl: FramedLink) -> str:
    return json.dumps(fl.to_json(), indent=2, sort_keys=True)
