"""Finite orthogonal group actions and their real irreducible representations.

Groups are given by exact orthogonal generator matrices on R^n and closed by
breadth-first multiplication with exact deduplication.  All shipped catalog
actions are signed permutations (coordinate permutations with sign flips), so
group elements carry a fast signed-permutation form next to the dense exact
matrix.

Catalogs:
  * ``c2n:n``        sign flips of n coordinates, 2^n one-dimensional irreps
  * ``cyclic:m``     planar rotation for m in {1,2,4}, else m-cycle on vertices
  * ``dihedral:m``   planar for m in {1,2,4}, else vertex permutation action
  * ``symmetric:n``  coordinate permutations, n <= 5, Young orthogonal irreps
  * ``trivial:n``    the one-element group on R^n

Irrep matrices are exact (rational or quadratic-extension entries) except for
cyclic/dihedral rotation blocks at m in {5,7,9,10,11}, whose entries are
flagged 50-digit rational approximations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from .linalg import Matrix, is_orthogonal, mat_identity, mat_mul, mat_transpose
from .scalars import Quad, Scalar, exact

DEFAULT_MAX_ORDER = 10080


# -- signed permutations -------------------------------------------------------


@dataclass(frozen=True)
class SignedPerm:
    """Matrix M with M e_i = sign[i] * e_{perm[i]} (one nonzero per column)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @staticmethod
    def identity(n: int) -> "SignedPerm":
        return SignedPerm(tuple(range(n)), (1,) * n)

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """Matrix product self @ other."""
        perm = tuple(self.perm[p] for p in other.perm)
        signs = tuple(other.signs[i] * self.signs[other.perm[i]]
                      for i in range(len(other.perm)))
        return SignedPerm(perm, signs)

    def inverse(self) -> "SignedPerm":
        n = len(self.perm)
        inv = [0] * n
        sg = [1] * n
        for i, p in enumerate(self.perm):
            inv[p] = i
            sg[p] = self.signs[i]
        return SignedPerm(tuple(inv), tuple(sg))

    def matrix(self) -> Matrix:
        n = len(self.perm)
        m = [[Fraction(0)] * n for _ in range(n)]
        for i, p in enumerate(self.perm):
            m[p][i] = Fraction(self.signs[i])
        return m

    def signed_cycles(self) -> list[tuple[int, int]]:
        """(length, sign product) per cycle of the underlying permutation."""
        n = len(self.perm)
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            length, sign, i = 0, 1, start
            while not seen[i]:
                seen[i] = True
                sign *= self.signs[i]
                i = self.perm[i]
                length += 1
            out.append((length, sign))
        return out


def as_signed_perm(m: Matrix) -> SignedPerm | None:
    n = len(m)
    perm, signs = [0] * n, [0] * n
    for col in range(n):
        hits = [(row, m[row][col]) for row in range(n) if m[row][col] != 0]
        if len(hits) != 1 or abs(hits[0][1]) != 1:
            return None
        perm[col], signs[col] = hits[0][0], int(hits[0][1] if isinstance(hits[0][1], Fraction)
                                                else hits[0][1].as_fraction())
    return SignedPerm(tuple(perm), tuple(signs))


# -- group actions --------------------------------------------------------------


def _freeze(m: Matrix) -> tuple:
    return tuple(tuple(exact(x) for x in row) for row in m)


@dataclass
class GroupElement:
    index: int
    matrix: tuple
    sp: SignedPerm | None = None


class GroupAction:
    """Finite matrix group: element list (identity first) plus index tables."""

    def __init__(self, n: int, elements: list[GroupElement],
                 parents: list[tuple[int, int]], generators: list[int]):
        self.n = n
        self.elements = elements
        self.parents = parents          # (parent index, generator position), identity = (-1, -1)
        self.generators = generators    # element indices of the generators
        self._key_index = {self._key(e): e.index for e in elements}
        self._mult: list[list[int]] | None = None
        self.inverse_table = [self._invert(e) for e in elements]

    @staticmethod
    def _key(e: GroupElement):
        return ("sp", e.sp.perm, e.sp.signs) if e.sp is not None else e.matrix

    def _invert(self, e: GroupElement) -> int:
        if e.sp is not None:
            inv = e.sp.inverse()
            return self._key_index[("sp", inv.perm, inv.signs)]
        return self._key_index[_freeze(mat_transpose([list(r) for r in e.matrix]))]

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, i: int, j: int) -> int:
        a, b = self.elements[i], self.elements[j]
        if a.sp is not None and b.sp is not None:
            c = a.sp.compose(b.sp)
            return self._key_index[("sp", c.perm, c.signs)]
        prod = mat_mul([list(r) for r in a.matrix], [list(r) for r in b.matrix])
        return self._key_index[_freeze(prod)]

    @property
    def mult_table(self) -> list[list[int]]:
        if self._mult is None:
            self._mult = [[self.mult(i, j) for j in range(self.order)]
                          for i in range(self.order)]
        return self._mult

    def matrix(self, i: int) -> Matrix:
        return [list(row) for row in self.elements[i].matrix]

    def is_signed_permutation_action(self) -> bool:
        return all(e.sp is not None for e in self.elements)


class ClosureError(ValueError):
    pass


def close_group(generators: Sequence[Matrix], max_order: int = DEFAULT_MAX_ORDER) -> GroupAction:
    """BFS closure of exactly orthogonal generators, identity first."""
    if not generators:
        raise ValueError("need at least one generator")
    n = len(generators[0])
    gens: list[GroupElement] = []
    for g in generators:
        g = [[exact(x) for x in row] for row in g]
        if len(g) != n or any(len(r) != n for r in g):
            raise ValueError("generators must be square matrices of equal size")
        if not is_orthogonal(g):
            raise ClosureError("generator is not exactly orthogonal")
        gens.append(GroupElement(-1, _freeze(g), as_signed_perm(g)))

    use_sp = all(e.sp is not None for e in gens)
    if not use_sp:
        gens = [GroupElement(-1, e.matrix, None) for e in gens]
    ident = GroupElement(0, _freeze(mat_identity(n)),
                         SignedPerm.identity(n) if use_sp else None)
    elements = [ident]
    parents: list[tuple[int, int]] = [(-1, -1)]
    seen = {GroupAction._key(ident): 0}
    queue = [0]
    while queue:
        cur = queue.pop(0)
        cur_el = elements[cur]
        for gi, gen in enumerate(gens):
            if use_sp:
                sp = cur_el.sp.compose(gen.sp)
                key = ("sp", sp.perm, sp.signs)
                mat = None
            else:
                prod = mat_mul([list(r) for r in cur_el.matrix],
                               [list(r) for r in gen.matrix])
                key = _freeze(prod)
                sp, mat = None, key
            if key in seen:
                continue
            idx = len(elements)
            if idx >= max_order:
                raise ClosureError(f"closure exceeds max_order={max_order}")
            if use_sp:
                mat = _freeze(sp.matrix())
            elements.append(GroupElement(idx, mat, sp))
            parents.append((cur, gi))
            seen[key] = idx
            queue.append(idx)
    action = GroupAction(n, elements, parents, [])
    action.generators = [action._key_index[GroupAction._key(g)] for g in gens]
    return action


# -- real irreducible representations -------------------------------------------


@dataclass
class RealIrrep:
    """Real irrep given by generator images, extended along closure words."""

    label: str
    dim: int
    kind: str                      # "absolutely-real" or "complex-type"
    action: GroupAction
    generator_images: list[tuple]  # frozen matrices, one per action generator
    approximate: bool = False
    molien_meta: tuple | None = None   # fast-path data for exact Molien series
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def sum_sq_contribution(self) -> Fraction:
        # complex-type real irreps come from a conjugate pair of complex
        # irreps of dimension dim/2, contributing 2*(dim/2)^2 = dim^2/2
        return Fraction(self.dim ** 2, 2 if self.kind == "complex-type" else 1)

    def matrix(self, i: int) -> Matrix:
        if i in self._cache:
            return self._cache[i]
        if i == 0:
            m = mat_identity(self.dim)
        else:
            parent, gi = self.action.parents[i]
            m = mat_mul(self.matrix(parent),
                        [list(r) for r in self.generator_images[gi]])
        self._cache[i] = m
        return m

    def character(self, i: int) -> Scalar:
        m = self.matrix(i)
        return exact(sum((m[k][k] for k in range(self.dim)), Fraction(0)))


@dataclass
class IrrepCatalog:
    name: str
    action: GroupAction
    irreps: list[RealIrrep]

    def check_sum_of_squares(self) -> bool:
        return sum(r.sum_sq_contribution for r in self.irreps) == self.action.order

    def irrep(self, label: str) -> RealIrrep:
        for r in self.irreps:
            if r.label == label:
                return r
        raise KeyError(label)


@dataclass
class RepReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_representation(matrices: Callable[[int], Matrix] | RealIrrep,
                          action: GroupAction, tol: float | None = None,
                          max_pairs: int = 4000) -> RepReport:
    """Check homomorphism over the multiplication table and orthogonality.

    ``tol`` None means exact comparison; otherwise entries may differ by tol
    (used for flagged-approximate irreps).  Large groups are spot-checked on a
    deterministic sample of pairs.
    """
    get = matrices.matrix if isinstance(matrices, RealIrrep) else matrices
    violations = []

    def close(a: Matrix, b: Matrix) -> bool:
        if tol is None:
            return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))
        return all(abs(float(Quad.of(x) - Quad.of(y))) <= tol
                   for ra, rb in zip(a, b) for x, y in zip(ra, rb))

    order = action.order
    for i in range(order):
        m = get(i)
        if not close(mat_mul(mat_transpose(m), m), mat_identity(len(m))):
            violations.append(f"element {i}: matrix not orthogonal")
    pairs = [(i, j) for i in range(order) for j in range(order)]
    if len(pairs) > max_pairs:
        step = len(pairs) // max_pairs + 1
        pairs = pairs[::step]
    for i, j in pairs:
        if not close(mat_mul(get(i), get(j)), get(action.mult(i, j))):
            violations.append(f"homomorphism violated at ({i},{j})")
            if len(violations) > 20:
                break
    return RepReport(violations)


def character_orthogonality(catalog: IrrepCatalog, tol: float | None = None) -> RepReport:
    """Characters of distinct irreps are orthogonal; norms are 1 (or 2, complex-type)."""
    violations = []
    irreps = [r for r in catalog.irreps if not r.approximate] if tol is None \
        else catalog.irreps
    chars = {r.label: [r.character(i) for i in range(catalog.action.order)]
             for r in irreps}
    order = catalog.action.order
    inv = catalog.action.inverse_table
    for a in irreps:
        for b in irreps:
            val = exact(sum((Quad.of(chars[a.label][i]) * Quad.of(chars[b.label][inv[i]])
                             for i in range(order)), Quad(0)) * Fraction(1, order))
            if a.label == b.label:
                expect = Fraction(2 if a.kind == "complex-type" else 1)
            else:
                expect = Fraction(0)
            bad = (val != expect) if tol is None else abs(float(Quad.of(val) - expect)) > tol
            if bad:
                violations.append(f"<{a.label},{b.label}> = {val}, expected {expect}")
    return RepReport(violations)


# -- realification of conjugate complex pairs ------------------------------------


@dataclass
class ComplexIrrep:
    """Complex irrep split into exact real and imaginary parts per generator."""

    dim: int
    re_images: list[Matrix]
    im_images: list[Matrix]


def realify_pair(first: ComplexIrrep, second: ComplexIrrep, action: GroupAction,
                 label: str = "pair", approximate: bool = False) -> RealIrrep:
    """Merge a conjugate pair of complex irreps into one real irrep.

    The result acts by [[Re, -Im], [Im, Re]] blocks and has twice the complex
    dimension.  Raises if the inputs are not a genuine conjugate pair (in
    particular, if the imaginary parts vanish identically).
    """
    if first.dim != second.dim or len(first.re_images) != len(second.re_images):
        raise ValueError("not a conjugate pair: shape mismatch")
    some_imag = False
    for re1, im1, re2, im2 in zip(first.re_images, first.im_images,
                                  second.re_images, second.im_images):
        for r in range(first.dim):
            for c in range(first.dim):
                if exact(re1[r][c]) != exact(re2[r][c]) or \
                        exact(im1[r][c]) != exact(-Quad.of(im2[r][c])):
                    raise ValueError("not a conjugate pair: second is not the conjugate")
                if im1[r][c] != 0:
                    some_imag = True
    if not some_imag:
        raise ValueError("not a conjugate pair: representation is absolutely real")
    d = first.dim
    images = []
    for re, im in zip(first.re_images, first.im_images):
        block = [[Fraction(0)] * (2 * d) for _ in range(2 * d)]
        for r in range(d):
            for c in range(d):
                block[r][c] = exact(re[r][c])
                block[r][c + d] = exact(-Quad.of(im[r][c]))
                block[r + d][c] = exact(im[r][c])
                block[r + d][c + d] = exact(re[r][c])
        images.append(_freeze(block))
    rep = RealIrrep(label, 2 * d, "complex-type", action, images, approximate=approximate)
    report = verify_representation(rep, action, tol=1e-40 if approximate else None)
    if not report.ok:
        raise ValueError(f"realified pair fails verification: {report.violations[:3]}")
    return rep


# -- rotation entries ------------------------------------------------------------

_EXACT_COS: dict[tuple[int, int], tuple[Quad, Quad]] = {}


def _cos_sin(m: int, k: int) -> tuple[Scalar, Scalar] | None:
    """Exact (cos, sin) of 2*pi*k/m in the quadratic tower, or None."""
    k = k % m
    key = (m, k)
    if key in _EXACT_COS:
        return _EXACT_COS[key]
    table = {
        (1, 0): (Quad(1), Quad(0)),
    }
    base = {
        2: (Quad(-1), Quad(0)),
        3: (Quad(Fraction(-1, 2)), Quad.root(3, Fraction(1, 2))),
        4: (Quad(0), Quad(1)),
        6: (Quad(Fraction(1, 2)), Quad.root(3, Fraction(1, 2))),
        8: (Quad.root(2, Fraction(1, 2)), Quad.root(2, Fraction(1, 2))),
        12: (Quad.root(3, Fraction(1, 2)), Quad(Fraction(1, 2))),
    }
    if m == 1:
        return table[(1, 0)]
    if m not in base:
        return None
    c1, s1 = base[m]
    c, s = Quad(1), Quad(0)
    for _ in range(k):
        c, s = exact(c * c1 - s * s1), exact(c * s1 + s * c1)
    _EXACT_COS[key] = (c, s)
    return c, s


def _approx_cos_sin(m: int, k: int, dps: int = 50) -> tuple[Fraction, Fraction]:
    with mpmath.workdps(dps):
        ang = 2 * mpmath.pi * k / m
        scale = 10 ** dps
        c = Fraction(int(mpmath.nint(mpmath.cos(ang) * scale)), scale)
        s = Fraction(int(mpmath.nint(mpmath.sin(ang) * scale)), scale)
    return c, s


def rotation_matrix(m: int, k: int) -> tuple[Matrix, bool]:
    """2x2 rotation by 2*pi*k/m; second value marks an approximate result."""
    ex = _cos_sin(m, k)
    if ex is not None:
        c, s = ex
        return [[exact(c), exact(-1 * s)], [exact(s), exact(c)]], False
    c, s = _approx_cos_sin(m, k)
    return [[c, -s], [s, c]], True


# -- catalogs --------------------------------------------------------------------


def trivial_catalog(n: int) -> IrrepCatalog:
    action = close_group([mat_identity(n)])
    triv = RealIrrep("theta1", 1, "absolutely-real", action, [((Fraction(1),),)])
    return IrrepCatalog(f"trivial:{n}", action, [triv])


def c2n_catalog(n: int) -> IrrepCatalog:
    """Sign flips of each coordinate; 2^n one-dimensional character irreps."""
    if not 1 <= n <= 10:
        raise ValueError("c2n catalog supports 1 <= n <= 10")
    gens = []
    for i in range(n):
        d = mat_identity(n)
        d[i][i] = Fraction(-1)
        gens.append(d)
    action = close_group(gens, max_order=2 ** n + 1)
    # one irrep per subset, ordered by (type r, subset); value = product of signs
    irreps = []
    sign_vectors = [e.sp.signs for e in action.elements]
    for subset in sorted(itertools.chain.from_iterable(
            itertools.combinations(range(n), r) for r in range(n + 1)),
            key=lambda s: (len(s), s)):
        label = "chi_" + ("0" if not subset else "".join(str(i + 1) for i in subset))
        images = []
        for gidx in action.generators:
            sg = sign_vectors[gidx]
            val = 1
            for i in subset:
                val *= sg[i]
            images.append(((Fraction(val),),))
        rep = RealIrrep(label, 1, "absolutely-real", action, images,
                        molien_meta=("c2n", n, subset))
        irreps.append(rep)
    return IrrepCatalog(f"c2n:{n}", action, irreps)


def _cyclic_action(m: int, variant: str) -> GroupAction:
    if variant == "planar":
        if m not in (1, 2, 4):
            raise ValueError("planar cyclic action is only exact (and monomial-"
                             "permuting) for m in {1,2,4}; use the permutation variant")
        if m == 1:
            return close_group([mat_identity(1)])
        rot, _ = rotation_matrix(m, 1)
        return close_group([rot])
    # permutation of m vertices
    perm = [[Fraction(1) if r == (c + 1) % m else Fraction(0) for c in range(m)]
            for r in range(m)]
    if m == 1:
        perm = mat_identity(1)
    return close_group([perm])


def _cyclic_irreps(m: int, action: GroupAction) -> list[RealIrrep]:
    irreps = []
    triv = RealIrrep("theta1", 1, "absolutely-real", action, [((Fraction(1),),)],
                     molien_meta=("cyclic", m, 0))
    irreps.append(triv)
    if m % 2 == 0 and m > 1:
        irreps.append(RealIrrep(f"theta{len(irreps) + 1}", 1, "absolutely-real", action,
                                [((Fraction(-1),),)], molien_meta=("cyclic", m, m // 2)))
    for j in range(1, (m + 1) // 2):
        rot, approx = rotation_matrix(m, j)
        if approx:
            re = [[rot[0][0]]]
            im = [[rot[1][0]]]
            re2 = [[rot[0][0]]]
            im2 = [[-rot[1][0]]]
        else:
            c, s = _cos_sin(m, j)
            re, im = [[c]], [[s]]
            re2, im2 = [[c]], [[-1 * s]]
        pair = realify_pair(ComplexIrrep(1, [re], [im]),
                            ComplexIrrep(1, [re2], [im2]), action,
                            label=f"rot{j}", approximate=approx)
        pair.molien_meta = ("cyclic-pair", m, j)
        irreps.append(pair)
    for i, r in enumerate(irreps):
        r.label = f"theta{i + 1}"
    return irreps


def cyclic_catalog(m: int, variant: str | None = None) -> IrrepCatalog:
    if not 1 <= m <= 12:
        raise ValueError("cyclic catalog supports 1 <= m <= 12")
    if variant is None:
        variant = "planar" if m in (1, 2, 4) else "permutation"
    action = _cyclic_action(m, variant)
    return IrrepCatalog(f"cyclic:{m}:{variant}", action, _cyclic_irreps(m, action))


def _dihedral_action(m: int, variant: str) -> GroupAction:
    if variant == "planar":
        if m not in (1, 2, 4):
            raise ValueError("planar dihedral action is only exact (and monomial-"
                             "permuting) for m in {1,2,4}; use the permutation variant")
        if m == 1:
            return close_group([[[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]])
        rot, _ = rotation_matrix(m, 1)
        swap = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
        return close_group([rot, swap])
    rot = [[Fraction(1) if r == (c + 1) % m else Fraction(0) for c in range(m)]
           for r in range(m)]
    refl = [[Fraction(1) if r == (-c) % m else Fraction(0) for c in range(m)]
            for r in range(m)]
    if m == 1:
        return close_group([[[Fraction(1)]]])
    return close_group([rot, refl])


def _dihedral_irreps(m: int, action: GroupAction) -> list[RealIrrep]:
    # generator order follows the action: [rotation, reflection]
    ngens = len(action.generators)
    one = ((Fraction(1),),)
    neg = ((Fraction(-1),),)
    irreps = [RealIrrep("t", 1, "absolutely-real", action, [one] * ngens,
                        molien_meta=("dihedral", m, 0, 1, 1))]
    if ngens > 1:
        irreps.append(RealIrrep("t", 1, "absolutely-real", action, [one, neg],
                                molien_meta=("dihedral", m, 0, 1, -1)))
        if m % 2 == 0 and m > 2:
            irreps.append(RealIrrep("t", 1, "absolutely-real", action, [neg, one],
                                    molien_meta=("dihedral", m, m // 2, 1, 1)))
            irreps.append(RealIrrep("t", 1, "absolutely-real", action, [neg, neg],
                                    molien_meta=("dihedral", m, m // 2, 1, -1)))
    for j in range(1, (m + 1) // 2 if m % 2 else m // 2):
        rot, approx = rotation_matrix(m, j)
        refl = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]
        images = [_freeze(rot), _freeze(refl)]
        irreps.append(RealIrrep("t", 2, "absolutely-real", action, images,
                                approximate=approx,
                                molien_meta=("dihedral", m, j, 2, 0)))
    for i, r in enumerate(irreps):
        r.label = f"theta{i + 1}"
    return irreps


def dihedral_catalog(m: int, variant: str | None = None) -> IrrepCatalog:
    if not 1 <= m <= 12:
        raise ValueError("dihedral catalog supports 1 <= m <= 12")
    if variant is None:
        variant = "planar" if m in (1, 2, 4) else "permutation"
    action = _dihedral_action(m, variant)
    irreps = _dihedral_irreps(m, action)
    if m == 4 and variant == "planar":
        # the classical unitary table for the order-8 dihedral group: the
        # two-dimensional irrep sends the rotation d to a quarter turn and the
        # reflection s to the coordinate swap
        d_img = _freeze([[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]])
        s_img = _freeze([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]])
        irreps[4] = RealIrrep("theta5", 2, "absolutely-real", action, [d_img, s_img],
                              molien_meta=("dihedral", 4, 1, 2, 0))
    return IrrepCatalog(f"dihedral:{m}:{variant}", action, irreps)


# -- symmetric group via Young's orthogonal form ----------------------------------


def partitions_desc(n: int) -> list[tuple[int, ...]]:
    """Partitions of n in descending lexicographic order."""
    out = []

    def rec(rest: int, maxpart: int, prefix: tuple[int, ...]):
        if rest == 0:
            out.append(prefix)
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + (p,))

    rec(n, n, ())
    return out


def standard_tableaux(shape: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    n = sum(shape)
    rows = len(shape)

    def rec(filled: list[list[int]], k: int):
        if k > n:
            yield tuple(tuple(r) for r in filled)
            return
        for r in range(rows):
            c = len(filled[r])
            if c < shape[r] and (r == 0 or len(filled[r - 1]) > c):
                filled[r].append(k)
                yield from rec(filled, k + 1)
                filled[r].pop()

    return list(rec([[] for _ in range(rows)], 1))


def _yor_generator_matrix(shape: tuple[int, ...], k: int) -> Matrix:
    """Young orthogonal matrix of the adjacent transposition (k, k+1)."""
    tabs = standard_tableaux(shape)
    index = {t: i for i, t in enumerate(tabs)}
    dim = len(tabs)
    m = [[Fraction(0)] * dim for _ in range(dim)]

    def find(t, v):
        for r, row in enumerate(t):
            for c, x in enumerate(row):
                if x == v:
                    return r, c
        raise AssertionError

    for t in tabs:
        i = index[t]
        r1, c1 = find(t, k)
        r2, c2 = find(t, k + 1)
        d = (c2 - r2) - (c1 - r1)
        m[i][i] = exact(Fraction(1, d))
        swapped = [list(row) for row in t]
        swapped[r1][c1], swapped[r2][c2] = k + 1, k
        key = tuple(tuple(r) for r in swapped)
        if key in index:
            j = index[key]
            val = Quad.root(d * d - 1, Fraction(1, abs(d)))
            m[i][j] = val
    return m


def symmetric_catalog(n: int) -> IrrepCatalog:
    """Coordinate-permutation action of the symmetric group, n <= 5."""
    if not 2 <= n <= 5:
        raise ValueError("symmetric catalog supports 2 <= n <= 5")
    gens = []
    for k in range(n - 1):
        p = mat_identity(n)
        p[k][k] = p[k + 1][k + 1] = Fraction(0)
        p[k][k + 1] = p[k + 1][k] = Fraction(1)
        gens.append(p)
    action = close_group(gens, max_order=math.factorial(n) + 1)
    shapes = partitions_desc(n)
    if n == 3:
        # classical table order: trivial, sign, then the planar standard irrep
        # realized with entries 1/2 and sqrt(3)/2
        shapes = [(3,), (1, 1, 1), (2, 1)]
    irreps = []
    for si, shape in enumerate(shapes):
        tabs = standard_tableaux(shape)
        images = [_freeze(_yor_generator_matrix(shape, k + 1)) for k in range(n - 1)]
        rep = RealIrrep(f"theta{si + 1}", len(tabs), "absolutely-real", action, images)
        irreps.append(rep)
    if n == 3:
        a, b = Fraction(1, 2), Quad.root(3, Fraction(1, 2))
        s12 = _freeze([[-a, b], [b, a]])
        s23 = _freeze([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]])
        irreps[2] = RealIrrep("theta3", 2, "absolutely-real", action, [s12, s23])
    return IrrepCatalog(f"symmetric:{n}", action, irreps)


# -- dispatcher -------------------------------------------------------------------


def catalog(spec: str) -> IrrepCatalog:
    """Build a catalog from a "family:param[:variant]" spec string."""
    parts = spec.split(":")
    family = parts[0]
    if family == "trivial":
        return trivial_catalog(int(parts[1]) if len(parts) > 1 else 1)
    if family == "c2n":
        return c2n_catalog(int(parts[1]))
    if family == "cyclic":
        return cyclic_catalog(int(parts[1]), parts[2] if len(parts) > 2 else None)
    if family == "dihedral":
        return dihedral_catalog(int(parts[1]), parts[2] if len(parts) > 2 else None)
    if family == "symmetric":
        return symmetric_catalog(int(parts[1]))
    raise ValueError(f"unsupported catalog entry {spec!r}")


# -- user-supplied irrep tables ----------------------------------------------------


def _parse_rational(tok: str) -> Fraction:
    return Fraction(tok)


def _read_matrix(lines: list[str], pos: int) -> tuple[Matrix, int]:
    header = lines[pos].split()
    if header[0] != "matrix":
        raise ValueError(f"expected 'matrix r c' at line {pos + 1}")
    r, c = int(header[1]), int(header[2])
    rows = []
    for i in range(r):
        rows.append([_parse_rational(t) for t in lines[pos + 1 + i].split()])
        if len(rows[-1]) != c:
            raise ValueError(f"row {i} has wrong width at line {pos + 2 + i}")
    return rows, pos + 1 + r


def load_irrep_table(text: str) -> IrrepCatalog:
    """Parse the documented group/irrep text format (rational entries).

    Format::

        group n=<n>
        generators <count>
        matrix <r> <c>
        <rows of space-separated rationals>
        ...
        irrep label=<label> dim=<d> kind=<absolutely-real|complex-type>
        matrix <d> <d>     # one image per generator, in generator order
        ...
        end

    The group is closed from the generators; every irrep is verified as a
    homomorphism before the catalog is returned.
    """
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    pos = 0
    if not lines[pos].startswith("group"):
        raise ValueError("file must start with 'group n=<n>'")
    pos += 1
    if not lines[pos].startswith("generators"):
        raise ValueError("expected 'generators <count>'")
    count = int(lines[pos].split()[1])
    pos += 1
    gens = []
    for _ in range(count):
        m, pos = _read_matrix(lines, pos)
        gens.append(m)
    action = close_group(gens)
    irreps = []
    while pos < len(lines) and lines[pos] != "end":
        fields = dict(kv.split("=") for kv in lines[pos].split()[1:])
        pos += 1
        images = []
        for _ in range(count):
            m, pos = _read_matrix(lines, pos)
            images.append(_freeze(m))
        rep = RealIrrep(fields["label"], int(fields["dim"]), fields["kind"],
                        action, images)
        report = verify_representation(rep, action)
        if not report.ok:
            raise ValueError(f"irrep {fields['label']} fails verification: "
                             f"{report.violations[:3]}")
        irreps.append(rep)
    return IrrepCatalog("user", action, irreps)
