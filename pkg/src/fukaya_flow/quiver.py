"""Quivers with relations and their representations over the two-element
field.

A relation is a mod-2 sum of paths with common endpoints that must
evaluate to zero in any representation.  Paths are tuples of arrow
names in diagrammatic order (first arrow applied first), so a path
(a, b) evaluates to matrix(b) @ matrix(a).

Representations are checked exactly; isomorphism between small
representations is decided by exhaustive search over invertible
vertex-wise matrices, capped at dimension three per vertex
(|GL(3, F2)| = 168, so the products stay tractable).  Larger dimensions
raise DimensionTooLarge rather than fall back to an unsound heuristic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DimensionTooLarge, ShapeMismatch
from .flow import DirectedCategoryPresentation

Path = tuple[str, ...]


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)
    relations: tuple[tuple[Path, ...], ...]

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        for rel in self.relations:
            ends = {self.path_endpoints(p) for p in rel}
            if len(ends) != 1:
                raise ValueError(
                    "paths of one relation must share endpoints: %r" % (rel,))

    def arrow(self, name: str) -> tuple[str, str, str]:
        for a in self.arrows:
            if a[0] == name:
                return a
        raise KeyError(name)

    def path_endpoints(self, path: Path) -> tuple[str, str]:
        if not path:
            raise ValueError("empty path")
        src = self.arrow(path[0])[1]
        at = src
        for name in path:
            _, s, t = self.arrow(name)
            if s != at:
                raise ValueError("path %r is not composable" % (path,))
            at = t
        return src, at

    def to_dot(self) -> str:
        lines = ["digraph quiver {", "  rankdir=LR;"]
        for v in self.vertices:
            lines.append('  "%s";' % v)
        for name, s, t in self.arrows:
            lines.append('  "%s" -> "%s" [label="%s"];' % (s, t, name))
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class QuiverRepresentation:
    dims: Mapping[str, int]
    matrices: Mapping[str, tuple[tuple[int, ...], ...]]  # arrow -> rows

    def matrix(self, name: str) -> np.ndarray:
        return np.array(self.matrices[name], dtype=np.int64) % 2

    def to_json(self) -> dict:
        return {
            "dims": dict(sorted(self.dims.items())),
            "matrices": {name: [list(row) for row in rows]
                         for name, rows in sorted(self.matrices.items())},
        }


def _check_shapes(q: QuiverPresentation, rep: QuiverRepresentation) -> None:
    for name, s, t in q.arrows:
        if name not in rep.matrices:
            raise ShapeMismatch("no matrix for arrow %r" % name)
        mat = rep.matrix(name)
        want = (rep.dims[t], rep.dims[s])
        if mat.shape != want:
            raise ShapeMismatch(
                "arrow %r needs shape %r, got %r" % (name, want, mat.shape))


def _path_matrix(q: QuiverPresentation, rep: QuiverRepresentation,
                 path: Path) -> np.ndarray:
    src, _ = q.path_endpoints(path)
    mat = np.eye(rep.dims[src], dtype=np.int64)
    for name in path:
        mat = (rep.matrix(name) @ mat) % 2
    return mat


def check_relations(q: QuiverPresentation, rep: QuiverRepresentation
                    ) -> tuple[bool, list[str]]:
    """True iff every relation evaluates to the zero matrix; violations
    name the failing relations."""
    _check_shapes(q, rep)
    violations = []
    for rel in q.relations:
        src, tgt = q.path_endpoints(rel[0])
        total = np.zeros((rep.dims[tgt], rep.dims[src]), dtype=np.int64)
        for path in rel:
            total = (total + _path_matrix(q, rep, path)) % 2
        if total.any():
            violations.append(" + ".join(".".join(p) for p in rel))
    return not violations, violations


def _gl_matrices(n: int) -> list[np.ndarray]:
    if n == 0:
        return [np.zeros((0, 0), dtype=np.int64)]
    out = []
    for bits in itertools.product((0, 1), repeat=n * n):
        mat = np.array(bits, dtype=np.int64).reshape(n, n)
        if _det2(mat):
            out.append(mat)
    return out


def _det2(mat: np.ndarray) -> int:
    m = mat.copy() % 2
    n = m.shape[0]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r, c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[[c, piv]] = m[[piv, c]]
        for r in range(n):
            if r != c and m[r, c]:
                m[r] = (m[r] + m[c]) % 2
    return 1


_GL_CACHE: dict[int, list[np.ndarray]] = {}


def _gl(n: int) -> list[np.ndarray]:
    if n not in _GL_CACHE:
        if n > 3:
            raise DimensionTooLarge(
                "exhaustive search is capped at dimension 3, got %d" % n)
        _GL_CACHE[n] = _gl_matrices(n)
    return _GL_CACHE[n]


def transform(q: QuiverPresentation, rep: QuiverRepresentation,
              maps: Mapping[str, np.ndarray]) -> QuiverRepresentation:
    """Base change of a representation by invertible vertex maps."""
    new = {}
    for name, s, t in q.arrows:
        g_t = maps[t]
        g_s_inv = _inverse2(maps[s])
        new[name] = tuple(tuple(int(x) for x in row)
                          for row in (g_t @ rep.matrix(name) @ g_s_inv) % 2)
    return QuiverRepresentation(dict(rep.dims), new)


def _inverse2(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    aug = np.concatenate([mat.copy() % 2, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r, c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != c:
            aug[[c, piv]] = aug[[piv, c]]
        for r in range(n):
            if r != c and aug[r, c]:
                aug[r] = (aug[r] + aug[c]) % 2
    return aug[:, n:]


def isomorphic(q: QuiverPresentation, rep1: QuiverRepresentation,
               rep2: QuiverRepresentation) -> bool:
    """Exhaustively decide whether invertible vertex-wise matrices
    intertwine all arrows (dims at most 3 per vertex)."""
    _check_shapes(q, rep1)
    _check_shapes(q, rep2)
    for v in q.vertices:
        if rep1.dims[v] > 3 or rep2.dims[v] > 3:
            raise DimensionTooLarge(
                "vertex %r has dimension > 3" % v)
    if any(rep1.dims[v] != rep2.dims[v] for v in q.vertices):
        return False
    groups = [_gl(rep1.dims[v]) for v in q.vertices]
    mats1 = {name: rep1.matrix(name) for name, _, _ in q.arrows}
    mats2 = {name: rep2.matrix(name) for name, _, _ in q.arrows}
    vert_index = {v: i for i, v in enumerate(q.vertices)}
    for choice in itertools.product(*groups):
        ok = True
        for name, s, t in q.arrows:
            g_s = choice[vert_index[s]]
            g_t = choice[vert_index[t]]
            if (((g_t @ mats1[name]) % 2) != ((mats2[name] @ g_s) % 2)).any():
                ok = False
                break
        if ok:
            return True
    return False


def orbit(q: QuiverPresentation, rep: QuiverRepresentation
          ) -> set[tuple]:
    """All base changes of a representation, as hashable matrix tuples;
    the independent oracle for isomorphism testing."""
    groups = [_gl(rep.dims[v]) for v in q.vertices]
    vert_index = {v: i for i, v in enumerate(q.vertices)}
    seen = set()
    for choice in itertools.product(*groups):
        key = []
        for name, s, t in q.arrows:
            g_s_inv = _inverse2(choice[vert_index[s]])
            g_t = choice[vert_index[t]]
            mat = (g_t @ rep.matrix(name) @ g_s_inv) % 2
            key.append((name, tuple(map(tuple, mat.tolist()))))
        seen.add(tuple(key))
    return seen


def rep_key(q: QuiverPresentation, rep: QuiverRepresentation) -> tuple:
    return tuple((name, tuple(map(tuple, rep.matrix(name).tolist())))
                 for name, _, _ in q.arrows)


# --------------------------------------------------------------------------
# category -> quiver
# --------------------------------------------------------------------------

def from_category(cat: DirectedCategoryPresentation) -> QuiverPresentation:
    """One vertex per object, one arrow per hom-space basis element,
    and one relation per composition-table pair: the composite path
    equals its expansion in the top-to-bottom basis arrows."""
    vertices = cat.objects
    arrows: list[tuple[str, str, str]] = []
    for j, mid in enumerate(cat.middles):
        for g in cat.hom_top_mid[j].generators:
            arrows.append((g, cat.top, mid))
        for g in cat.hom_mid_bottom[j].generators:
            arrows.append((g, mid, cat.bottom))
    for g in cat.hom_top_bottom.basis:
        arrows.append((g, cat.top, cat.bottom))
    relations: list[tuple[Path, ...]] = []
    for j, mid in enumerate(cat.middles):
        for u in cat.hom_top_mid[j].generators:
            for v in cat.hom_mid_bottom[j].generators:
                expansion = cat.compose(j, u, v)
                rel: list[Path] = [(u, v)]
                rel.extend((w,) for w in expansion)
                relations.append(tuple(rel))
    return QuiverPresentation(tuple(vertices), tuple(arrows),
                              tuple(relations))


def regular_representation(cat: DirectedCategoryPresentation
                           ) -> QuiverRepresentation:
    """The representation assembled from the category's own composition
    table: the top vertex carries the span of the identity, each middle
    vertex carries hom(top, mid), the bottom vertex hom(top, bottom) in
    its canonical basis; arrows act by right composition."""
    dims: dict[str, int] = {cat.top: 1}
    mats: dict[str, tuple] = {}
    bottom_basis = list(cat.hom_top_bottom.basis)
    dims[cat.bottom] = len(bottom_basis)

    for j, mid in enumerate(cat.middles):
        basis = list(cat.hom_top_mid[j].generators)
        dims[mid] = len(basis)
        for u in basis:
            col = [1 if g == u else 0 for g in basis]
            mats[u] = tuple((c,) for c in col)
        for v in cat.hom_mid_bottom[j].generators:
            rows = []
            for w in bottom_basis:
                row = []
                for u in basis:
                    out = cat.compose(j, u, v)
                    row.append(1 if w in out else 0)
                rows.append(tuple(row))
            mats[v] = tuple(rows)
    for w in bottom_basis:
        col = [1 if g == w else 0 for g in bottom_basis]
        mats[w] = tuple((c,) for c in col)
    return QuiverRepresentation(dims, mats)


def cp2_quiver() -> QuiverPresentation:
    """Documented fixture: the standard three-vertex quiver with two
    arrows at each level and relations

        b1 a1 = 0,   b0 a0 = c0,   b0 a1 + b1 a0 = c1

    (the middle relation's sign collapses mod 2).  This is a recorded
    fixture, not the pipeline output: the pipeline computes its own
    presentation over Z/2.
    """
    vertices = ("x_4", "x_2", "x_0")
    arrows = (
        ("a_0", "x_4", "x_2"), ("a_1", "x_4", "x_2"),
        ("b_0", "x_2", "x_0"), ("b_1", "x_2", "x_0"),
        ("c_0", "x_4", "x_0"), ("c_1", "x_4", "x_0"),
    )
    relations = (
        (("a_1", "b_1"),),
        (("a_0", "b_0"), ("c_0",)),
        (("a_1", "b_0"), ("a_0", "b_1"), ("c_1",)),
    )
    return QuiverPresentation(vertices, arrows, relations)


def cp2_standard_representation() -> QuiverRepresentation:
    """All vertex spaces one-dimensional; a0, b0, c0 the identity and
    a1, b1, c1 zero."""
    dims = {"x_4": 1, "x_2": 1, "x_0": 1}
    one = ((1,),)
    zero = ((0,),)
    return QuiverRepresentation(dims, {
        "a_0": one, "b_0": one, "c_0": one,
        "a_1": zero, "b_1": zero, "c_1": zero,
    })
