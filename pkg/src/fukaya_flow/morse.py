"""Combinatorial Morse-Bott cascade complexes on flat models.

Critical components are points, circles R/Z, or tori (R/Z)^2 with
product Morse data; all coordinates are rational, unstable and stable
sets are axis-aligned cells, and every intersection is decided exactly.
No floating point enters this module.

A correspondence packages the strip moduli between two components: a
product cell (R/Z)^m with two affine evaluation maps into the source
(higher action) and target (lower action) flat models.  The cascade
differential adds, to the internal Morse differential of each
component, cross terms counting zero-dimensional transverse
intersections of ev_-^{-1}(U(x)) with ev_+^{-1}(S(y)) mod 2.

handle_complex_from_link builds the Z/2 complex of the handle
decomposition of a link complement: one torus of classes per component,
a 1-handle per crossing, a 2-handle per bounded face of the
singularized diagram, connecting 1-handles between split pieces, and a
single 3-handle killing the sum of the torus fundamental classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from . import f2
from .errors import (ActionOrderViolation, DifferentialNotSquareZero,
                     NonPlanarPD, NonTransverse, UnsupportedModel)
from .homology import F2Presentation, GradedClass
from .links import FramedLink, LinkDiagram, self_writhe

Frac = Fraction


def _mod1(x: Frac) -> Frac:
    return x - (x.numerator // x.denominator)


# --------------------------------------------------------------------------
# flat models
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleProfile:
    """Morse function on R/Z given by its critical points.

    points: (position, index) pairs, positions in [0,1), sorted,
    alternating index 0 (minimum) / 1 (maximum) around the circle.
    """

    points: tuple[tuple[Frac, int], ...]

    def __post_init__(self):
        pts = self.points
        if len(pts) < 2 or len(pts) % 2 != 0:
            raise UnsupportedModel(
                "a circle Morse function needs an even number >= 2 of "
                "critical points")
        for (p, i), (q, j) in zip(pts, pts[1:]):
            if not (0 <= p < q < 1):
                raise UnsupportedModel("positions must be sorted in [0,1)")
            if i == j:
                raise UnsupportedModel("indices must alternate")
        if pts[0][1] == pts[-1][1]:
            raise UnsupportedModel("indices must alternate around the circle")

    def neighbors(self, i: int) -> tuple[int, int]:
        n = len(self.points)
        return (i - 1) % n, (i + 1) % n

    def unstable_cell(self, i: int):
        pos, idx = self.points[i]
        if idx == 0:
            return ("pt", pos)
        left, right = self.neighbors(i)
        if len(self.points) == 2:
            return ("copt", self.points[left][0])
        a = self.points[left][0]
        b = self.points[right][0]
        return ("arc", a, _mod1(b - a) if b != a else Frac(1))

    def stable_cell(self, i: int):
        pos, idx = self.points[i]
        if idx == 1:
            return ("pt", pos)
        left, right = self.neighbors(i)
        if len(self.points) == 2:
            return ("copt", self.points[left][0])
        a = self.points[left][0]
        b = self.points[right][0]
        return ("arc", a, _mod1(b - a) if b != a else Frac(1))

    def boundary(self, i: int) -> tuple[int, ...]:
        """Morse differential: a maximum bounds its two neighbor minima."""
        if self.points[i][1] == 0:
            return ()
        left, right = self.neighbors(i)
        if left == right:
            return ()
        return (left, right)


def two_point_profile(min_pos: Frac, max_pos: Frac) -> CircleProfile:
    a, b = Frac(min_pos), Frac(max_pos)
    pts = sorted([(_mod1(a), 0), (_mod1(b), 1)])
    return CircleProfile(tuple(pts))


@dataclass(frozen=True)
class PointModel:
    name: str
    index: int = 0

    dim = 0

    def generator_names(self):
        return (self.name,)

    def degrees(self):
        return (self.index,)

    def unstable(self, name):
        return ()

    stable = unstable

    def boundary(self, name):
        return ()


@dataclass(frozen=True)
class CircleModel:
    profile: CircleProfile
    names: tuple[str, ...]

    dim = 1

    def __post_init__(self):
        if len(self.names) != len(self.profile.points):
            raise UnsupportedModel("one name per critical point")

    def generator_names(self):
        return self.names

    def degrees(self):
        return tuple(idx for _, idx in self.profile.points)

    def _i(self, name):
        return self.names.index(name)

    def unstable(self, name):
        return (self.profile.unstable_cell(self._i(name)),)

    def stable(self, name):
        return (self.profile.stable_cell(self._i(name)),)

    def boundary(self, name):
        return tuple(self.names[i] for i in self.profile.boundary(self._i(name)))


@dataclass(frozen=True)
class TorusModel:
    """Product Morse data on (R/Z)^2; names keyed by point-index pairs."""

    profile_x: CircleProfile
    profile_y: CircleProfile
    names: Mapping[tuple[int, int], str]

    dim = 2

    def __post_init__(self):
        want = {(i, j) for i in range(len(self.profile_x.points))
                for j in range(len(self.profile_y.points))}
        if set(self.names) != want:
            raise UnsupportedModel("torus names must cover the point grid")

    def generator_names(self):
        return tuple(self.names[key] for key in sorted(self.names))

    def degrees(self):
        return tuple(self.profile_x.points[i][1] + self.profile_y.points[j][1]
                     for i, j in sorted(self.names))

    def _key(self, name):
        for key, val in self.names.items():
            if val == name:
                return key
        raise KeyError(name)

    def unstable(self, name):
        i, j = self._key(name)
        return (self.profile_x.unstable_cell(i),
                self.profile_y.unstable_cell(j))

    def stable(self, name):
        i, j = self._key(name)
        return (self.profile_x.stable_cell(i), self.profile_y.stable_cell(j))

    def boundary(self, name):
        i, j = self._key(name)
        out = [self.names[(b, j)] for b in self.profile_x.boundary(i)]
        out += [self.names[(i, b)] for b in self.profile_y.boundary(j)]
        # mod 2
        return tuple(n for n in set(out) if out.count(n) % 2 == 1)


@dataclass(frozen=True)
class CriticalComponent:
    """A named critical component with flat Morse data and an action level."""

    name: str
    model: PointModel | CircleModel | TorusModel
    action: Frac

    def __post_init__(self):
        if not isinstance(self.model, (PointModel, CircleModel, TorusModel)):
            raise UnsupportedModel(
                "component model must be a point, circle, or torus")

    def generator_names(self):
        return self.model.generator_names()


@dataclass(frozen=True)
class AffineMap:
    """w -> rows @ w + offsets from (R/Z)^m to (R/Z)^n, integer linear part."""

    rows: tuple[tuple[int, ...], ...]
    offsets: tuple[Frac, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.offsets):
            raise ValueError("one offset per row")

    @property
    def target_dim(self):
        return len(self.rows)

    def source_dim(self):
        return len(self.rows[0]) if self.rows else 0


def identity_map(n: int) -> AffineMap:
    return AffineMap(tuple(tuple(1 if i == j else 0 for j in range(n))
                           for i in range(n)),
                     tuple(Frac(0) for _ in range(n)))


def projection_map(m: int, coord: int) -> AffineMap:
    return AffineMap((tuple(1 if j == coord else 0 for j in range(m)),),
                     (Frac(0),))


@dataclass(frozen=True)
class Correspondence:
    """Strip moduli between two components: a cell (R/Z)^dim with
    evaluation maps onto the source (higher action) and target."""

    source: str
    target: str
    dim: int
    ev_minus: AffineMap
    ev_plus: AffineMap

    def __post_init__(self):
        if self.dim not in (0, 1, 2):
            raise UnsupportedModel("correspondence cells up to (R/Z)^2 only")


# --------------------------------------------------------------------------
# exact intersection counting
# --------------------------------------------------------------------------

def _q_rank(rows: list[tuple[int, ...]]) -> int:
    mat = [list(map(Frac, r)) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c] / mat[r][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        r += 1
        rank += 1
    return rank


def _constraints(ev: AffineMap, cell) -> tuple[list, list]:
    eqs, opens = [], []
    for r, coord_cell in enumerate(cell):
        row, off = ev.rows[r], ev.offsets[r]
        kind = coord_cell[0]
        if kind == "pt":
            eqs.append((row, _mod1(coord_cell[1] - off)))
        elif kind == "arc":
            opens.append((row, off, "arc", coord_cell[1], coord_cell[2]))
        elif kind == "copt":
            opens.append((row, off, "copt", coord_cell[1]))
        elif kind == "full":
            pass
        else:
            raise UnsupportedModel("unknown cell kind %r" % (kind,))
    return eqs, opens


def _dependent_consistent(eqs: list) -> bool:
    """Whether a Q-dependent system row.w = rhs (mod 1) admits solutions.

    Vanishing Q-combinations are scaled to primitive integer vectors y
    and tested for y.rhs integral; exact for the integral dependencies
    arising from flat cells.
    """
    rows = [list(map(Frac, r)) for r, _ in eqs]
    rhs = [b for _, b in eqs]
    n = len(rows)
    combos = [[Frac(int(i == j)) for j in range(n)] for i in range(n)]
    r = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        combos[r], combos[piv] = combos[piv], combos[r]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c] / rows[r][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
                combos[i] = [a - factor * b
                             for a, b in zip(combos[i], combos[r])]
        r += 1
    for i in range(n):
        if any(v != 0 for v in rows[i]):
            continue
        denom = 1
        for v in combos[i]:
            denom = denom * v.denominator // _gcd(denom, v.denominator)
        ints = [int(v * denom) for v in combos[i]]
        g = 0
        for v in ints:
            g = _gcd(g, abs(v))
        if g:
            ints = [v // g for v in ints]
        val = sum(Frac(y) * b for y, b in zip(ints, rhs))
        if val.denominator != 1:
            return False
    return True


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class IntersectionDescription:
    dim: int
    points: tuple[tuple[Frac, ...], ...] = ()
    empty: bool = False

    @property
    def count_mod2(self) -> int:
        return len(self.points) % 2 if self.dim == 0 else 0


def intersect_cell_groups(m: int, groups: list[tuple[list, list]]
                          ) -> IntersectionDescription:
    """Exact description of the mutual intersection of pulled-back open
    cells on (R/Z)^m, one (equations, open conditions) pair per cell.
    Raises NonTransverse on rank-deficient overlaps and on candidate
    points meeting a cell boundary."""
    ranks = [_q_rank([r for r, _ in eqs]) for eqs, _ in groups]
    eqs = [eq for group_eqs, _ in groups for eq in group_eqs]
    opens = [op for _, group_opens in groups for op in group_opens]
    rank_all = _q_rank([r for r, _ in eqs])

    if rank_all < sum(ranks):
        if _dependent_consistent(eqs):
            raise NonTransverse(
                "rank-deficient cell overlap; perturb marked points")
        return IntersectionDescription(dim=m - rank_all, empty=True)

    if rank_all < m:
        return IntersectionDescription(dim=m - rank_all)

    # finite candidate set: enumerate lattice translates exhaustively
    chosen: list[tuple[tuple[int, ...], Frac]] = []
    for row, rhs in eqs:
        if _q_rank([r for r, _ in chosen] + [row]) > len(chosen):
            chosen.append((row, rhs))
    matrix = [list(map(Frac, r)) for r, _ in chosen]
    rhsv = [b for _, b in chosen]
    bounds = []
    for row, rhs in chosen:
        bounds.append(sum(abs(v) for v in row) + int(abs(rhs)) + 1)
    candidates: set[tuple[Frac, ...]] = set()
    for shift in itertools.product(*[range(-b, b + 1) for b in bounds]):
        target = [rhsv[i] + shift[i] for i in range(m)]
        sol = _solve_square(matrix, target)
        if sol is not None:
            candidates.add(tuple(_mod1(x) for x in sol))
    survivors = []
    for w in sorted(candidates):
        ok = True
        for row, rhs in eqs:
            if _mod1(sum(Frac(a) * x for a, x in zip(row, w)) - rhs) != 0:
                ok = False
                break
        if not ok:
            continue
        for op in opens:
            row, off = op[0], op[1]
            val = _mod1(sum(Frac(a) * x for a, x in zip(row, w)) + off)
            if op[2] == "arc":
                t = _mod1(val - op[3])
                if t == 0 or t == op[4]:
                    raise NonTransverse(
                        "intersection point on a cell boundary; "
                        "perturb marked points")
                if not (0 < t < op[4]):
                    ok = False
                    break
            else:  # copt
                if val == op[3]:
                    raise NonTransverse(
                        "intersection point at a deleted marked point; "
                        "perturb marked points")
        if ok:
            survivors.append(w)
    return IntersectionDescription(dim=0, points=tuple(survivors),
                                   empty=not survivors)


def intersect_cells(m: int, eqs_a: list, opens_a: list,
                    eqs_b: list, opens_b: list) -> IntersectionDescription:
    return intersect_cell_groups(m, [(eqs_a, opens_a), (eqs_b, opens_b)])


def _solve_square(matrix: list[list[Frac]], rhs: list[Frac]
                  ) -> Optional[list[Frac]]:
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        for i in range(n):
            if i != c and a[i][c] != 0:
                factor = a[i][c] / a[c][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


# --------------------------------------------------------------------------
# cascade complexes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CascadeComplex:
    """Finite Z/2 chain complex with generators tagged by component."""

    generators: tuple[str, ...]
    differential: Mapping[str, tuple[str, ...]]
    degrees: Mapping[str, int] = field(default_factory=dict)
    components: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        index = {g: i for i, g in enumerate(self.generators)}
        cols = []
        for g in self.generators:
            v = 0
            for h in self.differential.get(g, ()):
                v ^= 1 << index[h]
            cols.append(v)
        sq = []
        for g, col in zip(self.generators, cols):
            acc = 0
            for i in f2.bits(col):
                acc ^= cols[i]
            if acc:
                raise DifferentialNotSquareZero(
                    "d(d %s) = %r" % (g, [self.generators[i]
                                          for i in f2.bits(acc)]))
        object.__setattr__(self, "_cols", tuple(cols))

    def boundary(self, name: str) -> tuple[str, ...]:
        return tuple(self.differential.get(name, ()))

    def boundary_columns(self) -> tuple[int, ...]:
        return self._cols

    def homology_basis(self) -> tuple[str, ...]:
        """Representatives of a homology basis, chosen among single
        generators whenever possible."""
        index = {g: i for i, g in enumerate(self.generators)}
        cols = self._cols
        # seed the reducer with the image; anything it absorbs is zero
        # in homology
        classes = f2.Reducer()
        for c in cols:
            if c:
                classes.add(c)
        reps = []
        # single-generator cycles first
        for g in self.generators:
            if cols[index[g]] == 0:
                v = 1 << index[g]
                if classes.reduce(v) != 0:
                    classes.add(v)
                    reps.append(g)
        # remaining kernel classes (cycles supported on several generators)
        kernel = f2.kernel_basis(list(cols))
        for combo in kernel:
            if classes.reduce(combo) != 0:
                classes.add(combo)
                reps.append("+".join(self.generators[i]
                                     for i in f2.bits(combo)))
        return tuple(reps)

    def homology(self) -> F2Presentation:
        """ker/im as a free presentation on chosen representatives."""
        reps = self.homology_basis()
        classes = None
        if self.degrees:
            classes = tuple(
                GradedClass(r, self.degrees.get(r),
                            self.components.get(r)) for r in reps)
        return F2Presentation(reps, (), classes)

    def betti(self) -> int:
        cols = self._cols
        n = len(self.generators)
        r = f2.rank(list(cols))
        return n - 2 * r

    def betti_by_degree(self) -> tuple[int, ...]:
        """Per-degree Betti numbers; requires the differential to drop
        the stored degree by exactly one."""
        if not self.degrees:
            raise ValueError("complex carries no degrees")
        for g in self.generators:
            for h in self.differential.get(g, ()):
                if self.degrees[h] != self.degrees[g] - 1:
                    raise ValueError(
                        "differential does not drop degree by one")
        top = max(self.degrees.values())
        index = {g: i for i, g in enumerate(self.generators)}
        out = []
        for d in range(top + 1):
            gens_d = [g for g in self.generators if self.degrees[g] == d]
            cols_d = [self._cols[index[g]] for g in gens_d]
            rank_d = f2.rank(cols_d)
            gens_up = [g for g in self.generators
                       if self.degrees[g] == d + 1]
            rank_up = f2.rank([self._cols[index[g]] for g in gens_up])
            out.append(len(gens_d) - rank_d - rank_up)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "generators": [
                {"name": g, "degree": self.degrees.get(g),
                 "component": self.components.get(g)}
                for g in self.generators],
            "differential": [
                [g, sorted(self.differential[g])]
                for g in self.generators if self.differential.get(g)],
        }


def homology(complex_: CascadeComplex) -> F2Presentation:
    return complex_.homology()


def _cross_count(source: CriticalComponent, target: CriticalComponent,
                 corr: Correspondence, x: str, y: str) -> int:
    ucell = source.model.unstable(x)
    scell = target.model.stable(y)
    eqs_a, opens_a = _constraints(corr.ev_minus, ucell)
    eqs_b, opens_b = _constraints(corr.ev_plus, scell)
    desc = intersect_cells(corr.dim, eqs_a, opens_a, eqs_b, opens_b)
    return desc.count_mod2


def differential_case_I(source: CriticalComponent,
                        target: CriticalComponent,
                        corr: Optional[Correspondence]) -> CascadeComplex:
    """Cascade differential for two components joined by one
    correspondence (or none, leaving the block Morse differential)."""
    if corr is not None:
        if corr.source != source.name or corr.target != target.name:
            raise ValueError("correspondence endpoints do not match")
        if not source.action > target.action:
            raise ActionOrderViolation(
                "action(%s) must exceed action(%s)"
                % (source.name, target.name))
        if corr.ev_minus.target_dim != source.model.dim \
                or corr.ev_plus.target_dim != target.model.dim:
            raise ValueError("evaluation maps do not match the models")

    gens: list[str] = []
    degrees: dict[str, int] = {}
    comp_of: dict[str, str] = {}
    diff: dict[str, tuple[str, ...]] = {}
    for comp in (source, target):
        names = comp.model.generator_names()
        degs = comp.model.degrees()
        for n, d in zip(names, degs):
            gens.append(n)
            degrees[n] = d
            comp_of[n] = comp.name

    for comp in (source, target):
        for n in comp.model.generator_names():
            diff[n] = tuple(sorted(comp.model.boundary(n)))

    if corr is not None:
        for x in source.model.generator_names():
            extra = []
            for y in target.model.generator_names():
                if _cross_count(source, target, corr, x, y):
                    extra.append(y)
            if extra:
                diff[x] = tuple(sorted(set(diff[x]) ^ set(extra)))

    return CascadeComplex(tuple(gens), diff, degrees, comp_of)


# --------------------------------------------------------------------------
# standard torus/circle data
# --------------------------------------------------------------------------

def square_torus(prefix: str, offset: Frac) -> TorusModel:
    """Product torus with minima at offset and maxima at offset + 1/2 in
    each factor; critical points are named <prefix>2, <prefix>1 (minimum
    in the first factor), <prefix>1' (minimum in the second factor), and
    <prefix>0."""
    prof = two_point_profile(offset, Frac(1, 2) + offset)
    names = {}
    for i, (_, idx_i) in enumerate(prof.points):
        for j, (_, idx_j) in enumerate(prof.points):
            total = idx_i + idx_j
            if total != 1:
                names[(i, j)] = "%s%d" % (prefix, total)
            elif idx_i == 0:
                names[(i, j)] = "%s1" % prefix
            else:
                names[(i, j)] = "%s1'" % prefix
    return TorusModel(prof, prof, names)


def standard_upper_pair(shift: Frac = Frac(0)):
    """Torus above a circle with the product Morse data whose cascade
    differential is d x1' = a1, d x0 = a0 (and zero otherwise); the
    homology is freely spanned by x2, x1.

    The circle's marked points may be shifted; the differential matrix
    is invariant under a common shift.
    """
    torus = square_torus("x", Frac(0))
    circle = CircleModel(
        two_point_profile(Frac(1, 4) + shift, Frac(3, 4) + shift),
        _circle_names(Frac(1, 4) + shift, "a0", "a1"))
    upper = CriticalComponent("Sigma42", torus, Frac(1))
    lower = CriticalComponent("K+", circle, Frac(0))
    corr = Correspondence("Sigma42", "K+", 2, identity_map(2),
                          projection_map(2, 0))
    return upper, lower, corr


def standard_lower_pair(shift: Frac = Frac(0)):
    """Companion data for the pair below the middle level: torus marked
    points offset by (1/8, 1/8), evaluation onto the second circle
    factor; the differential is d y1 = b1, d y0 = b0 and the homology is
    freely spanned by y2, y1'."""
    torus = square_torus("y", Frac(1, 8))
    circle = CircleModel(
        two_point_profile(Frac(1, 4) + shift, Frac(3, 4) + shift),
        _circle_names(Frac(1, 4) + shift, "b0", "b1"))
    upper = CriticalComponent("Sigma20", torus, Frac(1))
    lower = CriticalComponent("K-", circle, Frac(0))
    corr = Correspondence("Sigma20", "K-", 2, identity_map(2),
                          projection_map(2, 1))
    return upper, lower, corr


def triangle_product_table() -> dict[tuple[str, str], tuple[str, ...]]:
    """Local triangle products computed in the flat model.

    The three tori are identified with one (R/Z)^2 carrying the x data,
    the y data offset by (1/8, 1/8), and the z data offset by
    (-1/8, -1/8); the product of x and y is the mod-2 count of
    zero-dimensional components of U(x) meeting U(y) meeting S(z):

        x2 y2 = z2,  x1 y2 = z1,  x2 y1' = z1',  x1 y1' = z0.

    This is the independent oracle for the local (unframed) part of the
    category composition tables.
    """
    tx = square_torus("x", Frac(0))
    ty = square_torus("y", Frac(1, 8))
    tz = square_torus("z", Frac(-1, 8) + 1)
    ident = identity_map(2)
    table: dict[tuple[str, str], tuple[str, ...]] = {}
    for x in tx.generator_names():
        for y in ty.generator_names():
            out = []
            for z in tz.generator_names():
                groups = [_constraints(ident, tx.unstable(x)),
                          _constraints(ident, ty.unstable(y)),
                          _constraints(ident, tz.stable(z))]
                if intersect_cell_groups(2, groups).count_mod2:
                    out.append(z)
            table[(x, y)] = tuple(sorted(out))
    return table


def _circle_names(min_pos: Frac, min_name: str, max_name: str
                  ) -> tuple[str, str]:
    # names follow the sorted point order of two_point_profile
    if _mod1(min_pos) < _mod1(min_pos + Frac(1, 2)):
        return (min_name, max_name)
    return (max_name, min_name)


# --------------------------------------------------------------------------
# cascade enumeration (diagnostics)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CascadeData:
    components: tuple[CriticalComponent, ...]
    correspondences: tuple[Correspondence, ...]

    def component(self, name: str) -> CriticalComponent:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)

    def __post_init__(self):
        for corr in self.correspondences:
            src = self.component(corr.source)
            tgt = self.component(corr.target)
            if not src.action > tgt.action:
                raise ActionOrderViolation(
                    "correspondence %s -> %s does not decrease the action"
                    % (corr.source, corr.target))


def cascade_moduli(data: CascadeData, x: str, y: str, k: int) -> list[dict]:
    """Enumerate cascade configurations from x to y with k strips.

    k = 0 describes U(x) and S(y) intersections inside one component;
    k = 1 runs through a single correspondence.  For k >= 2 chains of
    correspondences with strictly decreasing action are enumerated; the
    fixtures here have two action levels, so those chains are empty.
    """
    comp_x = comp_y = None
    for c in data.components:
        if x in c.generator_names():
            comp_x = c
        if y in c.generator_names():
            comp_y = c
    if comp_x is None or comp_y is None:
        raise KeyError("unknown generators %r, %r" % (x, y))

    if k == 0:
        if comp_x.name != comp_y.name:
            return []
        eqs_a, opens_a = _constraints(identity_map(comp_x.model.dim),
                                      comp_x.model.unstable(x))
        eqs_b, opens_b = _constraints(identity_map(comp_x.model.dim),
                                      comp_x.model.stable(y))
        desc = intersect_cells(comp_x.model.dim, eqs_a, opens_a,
                               eqs_b, opens_b)
        if desc.empty and desc.dim == 0:
            return []
        return [{"cascades": 0, "component": comp_x.name,
                 "dim": desc.dim,
                 "points": [[str(v) for v in p] for p in desc.points]}]

    chains = [
        chain for chain in itertools.product(data.correspondences, repeat=k)
        if chain[0].source == comp_x.name
        and chain[-1].target == comp_y.name
        and all(chain[i].target == chain[i + 1].source
                for i in range(k - 1))
        and all(data.component(chain[i].source).action
                > data.component(chain[i].target).action
                for i in range(k))
    ]
    if k >= 2 and chains:
        raise UnsupportedModel(
            "gradient-segment matching for chains of %d cascades is not "
            "modeled; only single-correspondence data is supported" % k)
    out = []
    for chain in chains:
        corr = chain[0]
        eqs_a, opens_a = _constraints(corr.ev_minus, comp_x.model.unstable(x))
        eqs_b, opens_b = _constraints(corr.ev_plus, comp_y.model.stable(y))
        desc = intersect_cells(corr.dim, eqs_a, opens_a, eqs_b, opens_b)
        if desc.empty and desc.dim == 0:
            continue
        out.append({"cascades": 1,
                    "through": [corr.source, corr.target],
                    "dim": desc.dim,
                    "points": [[str(v) for v in p] for p in desc.points]})
    return out


# --------------------------------------------------------------------------
# handle decomposition of a link complement
# --------------------------------------------------------------------------

# Parity conventions for the 2-handle attaching walks, calibrated once
# against the complement-homology rank oracle over the fixture catalog
# and frozen here: each corner contributes the meridian class of the
# crossing's under-strand component; each traversal of a component's
# marked (smallest) arc closes a longitude and contributes
# z1 + (framing + writhe) z1'.
PICKUP_UNDER = 1
PICKUP_OVER = 0
CLOSURE_FRAMING = 1
CLOSURE_WRITHE = 1


def _pieces(diagram: LinkDiagram) -> tuple[list[dict], dict]:
    """Connected pieces of the diagram: crossing sets joined by arcs,
    plus one piece per crossingless circle."""
    parent = list(range(len(diagram.crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, quad in enumerate(diagram.crossings):
        for p, arc in enumerate(quad):
            ends.setdefault(arc, []).append((ci, p))
    for occ in ends.values():
        a, b = find(occ[0][0]), find(occ[1][0])
        if a != b:
            parent[a] = b

    cmap = diagram.component_map()
    by_root: dict[int, dict] = {}
    for ci in range(len(diagram.crossings)):
        root = find(ci)
        piece = by_root.setdefault(root, {"crossings": [], "components": set(),
                                          "circle": None})
        piece["crossings"].append(ci)
        a, b, _, _ = diagram.crossings[ci]
        piece["components"].update((cmap[a], cmap[b]))
    pieces = list(by_root.values())
    for arc in diagram.circles:
        pieces.append({"crossings": [], "components": {cmap[arc]},
                       "circle": arc})
    pieces.sort(key=lambda p: min(p["components"]))
    return pieces, ends


def _faces_of_piece(diagram: LinkDiagram, piece: dict,
                    ends: dict[int, list[tuple[int, int]]]) -> list[dict]:
    """Face walks of one connected piece via the rotation system.

    A dart (ci, p) is an arrival at crossing ci along the arc in
    position p; the walk turns counter-clockwise and leaves via the arc
    at position p + 1.  Returns all faces, each as {"arcs", "corners",
    "darts", "outer"}; the face containing the arrival dart (smallest
    crossing, position 0) is marked outer, a deterministic stand-in for
    the unbounded region (a PD code lives on the sphere, so any face
    works and the homology ranks do not depend on the choice).  Raises
    NonPlanarPD when the Euler count fails.
    """
    if piece["circle"] is not None:
        arc = piece["circle"]
        return [{"arcs": [arc], "corners": [], "darts": [], "outer": False},
                {"arcs": [arc], "corners": [], "darts": [], "outer": True}]

    crossings = set(piece["crossings"])
    visited: set[tuple[int, int]] = set()
    faces = []
    for start_ci in sorted(crossings):
        for start_p in range(4):
            if (start_ci, start_p) in visited:
                continue
            walk_arcs, walk_corners, walk_darts = [], [], []
            ci, p = start_ci, start_p
            while (ci, p) not in visited:
                visited.add((ci, p))
                walk_darts.append((ci, p))
                walk_corners.append(ci)
                q = (p + 1) % 4
                arc = diagram.crossings[ci][q]
                walk_arcs.append(arc)
                occ = ends[arc]
                ci, p = occ[1] if occ[0] == (ci, q) else occ[0]
            faces.append({"arcs": walk_arcs, "corners": walk_corners,
                          "darts": walk_darts, "outer": False})
    v = len(crossings)
    e = 2 * v
    if v - e + len(faces) != 2:
        raise NonPlanarPD(
            "face extraction found %d faces on %d crossings; the PD code "
            "is not planar" % (len(faces), v))
    outer_dart = (min(crossings), 0)
    for face in faces:
        if outer_dart in face["darts"]:
            face["outer"] = True
            break
    return faces


def handle_complex_from_link(fl: FramedLink) -> CascadeComplex:
    """Z/2 complex of the handle decomposition of the link complement.

    Homology ranks agree with complement_homology: (1, k, k-1, 0).
    """
    diagram = fl.diagram
    k = diagram.component_count
    cmap = diagram.component_map()
    pieces, ends = _pieces(diagram)

    gens: list[str] = []
    degrees: dict[str, int] = {}
    comp_of: dict[str, str] = {}
    diff: dict[str, tuple[str, ...]] = {}

    def add(name, degree, component, boundary=()):
        gens.append(name)
        degrees[name] = degree
        comp_of[name] = component
        diff[name] = tuple(sorted(boundary))

    for j in range(k):
        tag = "torus_%d" % (j + 1)
        add("z0^%d" % (j + 1), 0, tag)
        add("z1^%d" % (j + 1), 1, tag)
        add("z1'^%d" % (j + 1), 1, tag)
        add("z2^%d" % (j + 1), 2, tag)

    marked_arc = {j: min(diagram.components[j]) for j in range(k)}
    closure_parity = {
        j: (CLOSURE_FRAMING * fl.framings[j]
            + CLOSURE_WRITHE * self_writhe(diagram, j)) % 2
        for j in range(k)}

    for ci in range(len(diagram.crossings)):
        cu, co = diagram.crossing_components(ci)
        boundary = () if cu == co else ("z0^%d" % (cu + 1),
                                        "z0^%d" % (co + 1))
        add("P^%d" % (ci + 1), 1, "handle", boundary)

    face_counter = 0
    for piece in pieces:
        for face in _faces_of_piece(diagram, piece, ends):
            if face["outer"]:
                continue
            face_counter += 1
            chain: set[str] = set()
            for ci in face["corners"]:
                _toggle(chain, "P^%d" % (ci + 1))
                cu, co = diagram.crossing_components(ci)
                if PICKUP_UNDER:
                    _toggle(chain, "z1'^%d" % (cu + 1))
                if PICKUP_OVER:
                    _toggle(chain, "z1'^%d" % (co + 1))
            for arc in face["arcs"]:
                j = cmap[arc]
                if arc == marked_arc[j]:
                    _toggle(chain, "z1^%d" % (j + 1))
                    if closure_parity[j]:
                        _toggle(chain, "z1'^%d" % (j + 1))
            add("F^%d" % face_counter, 2, "handle", chain)

    for t in range(len(pieces) - 1):
        rep_a = min(pieces[t]["components"])
        rep_b = min(pieces[t + 1]["components"])
        add("Q^%d" % (t + 1), 1, "handle",
            ("z0^%d" % (rep_a + 1), "z0^%d" % (rep_b + 1)))

    add("p''", 3, "handle", tuple("z2^%d" % (j + 1) for j in range(k)))

    return CascadeComplex(tuple(gens), diff, degrees, comp_of)


def _toggle(chain: set[str], name: str) -> None:
    if name in chain:
        chain.remove(name)
    else:
        chain.add(name)
