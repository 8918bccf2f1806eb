"""Isotypic decomposition machinery for orthogonal matrix representations.

Covers the induced representation on graded monomial spaces, the Reynolds
(group-average) projection onto the fixed-point subspace of symmetric
matrices, component-projection symmetry-adapted bases, and the resulting
block diagonalization of invariant matrices.

Bases are exact (entries in the quadratic tower) whenever the projections
admit exact orthonormalization; otherwise the segment is computed in 50-digit
fixed precision with rank decisions at 1e-30 and flagged as floating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .groups import GroupAction, IrrepCatalog, RealIrrep, SignedPerm
from .linalg import (Matrix, dot, gram_schmidt_exact, mat_mul, mat_transpose,
                     mat_vec, to_ndarray)
from .poly import MonomialVector, monomial_vector
from .scalars import Quad, Scalar, exact

RANK_DPS = 50
RANK_THRESHOLD = mpmath.mpf("1e-30")


@dataclass
class MatrixRep:
    """Orthogonal matrices, one per group element, indexed like the action."""

    action: GroupAction
    mats: list  # SignedPerm or exact Matrix per element

    @property
    def size(self) -> int:
        m = self.mats[0]
        return len(m.perm) if isinstance(m, SignedPerm) else len(m)

    def is_signed_perm(self) -> bool:
        return all(isinstance(m, SignedPerm) for m in self.mats)

    def dense(self, i: int) -> Matrix:
        m = self.mats[i]
        return m.matrix() if isinstance(m, SignedPerm) else [list(r) for r in m]

    def conjugate(self, i: int, x):
        """rho(g)^T X rho(g) for exact list-matrices or float ndarrays."""
        m = self.mats[i]
        if isinstance(x, np.ndarray):
            d = to_ndarray(self.dense(i)) if not isinstance(m, SignedPerm) else None
            if isinstance(m, SignedPerm):
                n = self.size
                out = np.empty_like(x)
                p, s = m.perm, m.signs
                for a in range(n):
                    for b in range(n):
                        out[a, b] = s[a] * s[b] * x[p[a], p[b]]
                return out
            return d.T @ x @ d
        if isinstance(m, SignedPerm):
            n = self.size
            p, s = m.perm, m.signs
            return [[exact(Fraction(s[a] * s[b]) * x[p[a]][p[b]]) for b in range(n)]
                    for a in range(n)]
        d = self.dense(i)
        return mat_mul(mat_transpose(d), mat_mul(x, d))


@dataclass
class InducedRep(MatrixRep):
    """Action on the monomial basis of R[x]_{<=d}: rho(g) Y(x) = Y(theta(g) x)."""

    degree: int = 0
    basis: MonomialVector = None


def action_rep(action: GroupAction) -> MatrixRep:
    """The defining representation itself, wrapped for basis computations."""
    mats = [e.sp if e.sp is not None else [list(r) for r in e.matrix]
            for e in action.elements]
    return MatrixRep(action, mats)


def induced_representation(action: GroupAction, d: int) -> InducedRep:
    """Representation induced on monomials of degree <= d.

    When the action is by signed permutations the induced matrices are signed
    permutations of the monomial basis and are stored in that compressed form.
    """
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    basis = monomial_vector(action.n, d)
    index = basis.index()
    mats = []
    if action.is_signed_permutation_action():
        for e in action.elements:
            sp = e.sp
            perm = [0] * len(basis)
            signs = [1] * len(basis)
            for i, mono in enumerate(basis.entries):
                # substituting x -> theta(g) x sends x_k to sign * x_{q(k)}
                # with q the inverse permutation, so the image exponent at
                # position l is mono[perm[l]]
                new = tuple(mono[sp.perm[l]] for l in range(action.n))
                sign = 1
                for l in range(action.n):
                    if new[l] % 2 and sp.signs[l] < 0:
                        sign = -sign
                j = index[new]
                # row i of rho(g) hits column j: as a signed permutation,
                # column j maps to row i with this sign
                perm[j] = i
                signs[j] = sign
            mats.append(SignedPerm(tuple(perm), tuple(signs)))
    else:
        from .poly import Polynomial, substitute_linear
        for e in action.elements:
            theta = [list(r) for r in e.matrix]
            rows = []
            for mono in basis.entries:
                img = substitute_linear(Polynomial.monomial(action.n, mono), theta)
                rows.append([img.coefficient(m) for m in basis.entries])
            mats.append(rows)
    return InducedRep(action, mats, degree=d, basis=basis)


def fixed_point_project(x, rep: MatrixRep):
    """Reynolds average (1/|G|) sum_g rho(g)^T X rho(g); exact for exact input."""
    order = rep.action.order
    if isinstance(x, np.ndarray):
        acc = np.zeros_like(x, dtype=float)
        for i in range(order):
            acc += rep.conjugate(i, x)
        return acc / order
    n = len(x)
    if any(len(row) != n for row in x) or n != rep.size:
        raise ValueError("matrix size does not match the representation")
    acc = [[Fraction(0)] * n for _ in range(n)]
    for i in range(order):
        c = rep.conjugate(i, x)
        for a in range(n):
            for b in range(n):
                acc[a][b] = exact(acc[a][b] + c[a][b])
    w = Fraction(1, order)
    return [[exact(v * w) for v in row] for row in acc]


# -- component projections ---------------------------------------------------------


def _accumulate_projection(rep: MatrixRep, coeffs: list[Scalar]) -> Matrix:
    """sum_g coeffs[g] * rho(g) as a dense exact matrix."""
    n = rep.size
    acc: list[list[Scalar]] = [[Fraction(0)] * n for _ in range(n)]
    for gi, c in enumerate(coeffs):
        if c == 0:
            continue
        m = rep.mats[gi]
        if isinstance(m, SignedPerm):
            for a in range(n):
                acc[m.perm[a]][a] = exact(acc[m.perm[a]][a] + c * m.signs[a])
        else:
            for a in range(n):
                row = m[a]
                for b in range(n):
                    if row[b] != 0:
                        acc[a][b] = exact(acc[a][b] + c * row[b])
    return acc


def component_projection(rep: MatrixRep, irrep: RealIrrep, l: int, k: int,
                         weight: Fraction) -> Matrix:
    """(weight/|G|) sum_g theta_i(g^{-1})[l][k] * rho(g)."""
    inv = rep.action.inverse_table
    order = rep.action.order
    w = Fraction(weight, order)
    coeffs = [exact(Quad.of(irrep.matrix(inv[gi])[l][k]) * w) for gi in range(order)]
    return _accumulate_projection(rep, coeffs)


@dataclass
class Segment:
    irrep_index: int
    label: str
    n_i: int
    m_i: int
    kind: str          # "real" or "complex"
    exact: bool
    col_start: int = 0

    @property
    def width(self) -> int:
        return self.n_i * self.m_i


@dataclass
class SymmetryAdaptedBasis:
    """Orthogonal change of basis T whose column segments span the V_ij."""

    size: int
    columns: list            # exact scalar vectors, or float lists for fallback segments
    layout: list[Segment]
    multiplicities: dict[str, int]

    @property
    def is_exact(self) -> bool:
        return all(s.exact for s in self.layout)

    def t_matrix(self) -> Matrix:
        if not self.is_exact:
            raise ValueError("basis has floating segments; use t_float()")
        return [[self.columns[j][i] for j in range(self.size)] for i in range(self.size)]

    def t_float(self) -> np.ndarray:
        t = np.empty((self.size, self.size))
        for j, col in enumerate(self.columns):
            for i, v in enumerate(col):
                t[i, j] = float(v)
        return t


class ProjectionRankError(ValueError):
    pass


def _to_mpf(x):
    if isinstance(x, Quad):
        return x.to_mpf(RANK_DPS)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return mpmath.mpf(x)
    return x if isinstance(x, mpmath.mpf) else mpmath.mpf(float(x))


def _mp_orthonormalize(vectors: list[list], have: list[list] | None = None):
    """50-digit Gram-Schmidt; drops vectors below the 1e-30 rank threshold.

    Vectors in ``have`` are assumed to be already-orthonormal mpf lists and
    only the newly added directions are returned.
    """
    with mpmath.workdps(RANK_DPS):
        basis = [list(v) for v in (have or [])]
        fixed = len(basis)
        for v in vectors:
            w = [_to_mpf(x) for x in v]
            for u in basis:
                c = mpmath.fsum(a * b for a, b in zip(w, u))
                w = [a - c * b for a, b in zip(w, u)]
            nrm = mpmath.sqrt(mpmath.fsum(a * a for a in w))
            if nrm > RANK_THRESHOLD:
                basis.append([a / nrm for a in w])
        return basis[fixed:]


def _nonzero_columns(m: Matrix) -> list[list[Scalar]]:
    cols = [[m[r][c] for r in range(len(m))] for c in range(len(m[0]))]
    return [c for c in cols if any(v != 0 for v in c)]


def _segment_real(rep: MatrixRep, irrep: RealIrrep, w: Fraction):
    """First-copy orthonormal basis plus companion copies via p_j1."""
    p11 = component_projection(rep, irrep, 0, 0, w)
    tr = exact(sum((Quad.of(p11[i][i]) for i in range(rep.size)), Quad(0)))
    if irrep.approximate:
        m_i = int(round(float(tr)))
    else:
        trf = tr if isinstance(tr, Fraction) else tr.as_fraction()
        if trf.denominator != 1 or trf < 0:
            raise ProjectionRankError(
                f"projection trace {trf} of {irrep.label} is not a nonnegative integer")
        m_i = int(trf)
    if m_i == 0:
        return 0, [], True
    candidates = _nonzero_columns(p11)
    copies_ops = [component_projection(rep, irrep, 0, j, w)
                  for j in range(1, irrep.dim)]
    exact_cols: list[list[Scalar]] | None = None
    if not irrep.approximate:
        exact_cols = gram_schmidt_exact(candidates)
    if exact_cols is not None and len(exact_cols) == m_i:
        segment = list(exact_cols)
        for op in copies_ops:
            segment.extend(mat_vec(op, u) for u in exact_cols)
        return m_i, segment, True
    first = _mp_orthonormalize(candidates)
    if len(first) != m_i:
        raise ProjectionRankError(
            f"rank of first-copy projection for {irrep.label} is {len(first)}, "
            f"expected multiplicity {m_i}")
    segment_f = list(first)
    with mpmath.workdps(RANK_DPS):
        for op in copies_ops:
            opf = [[_to_mpf(x) for x in row] for row in op]
            for u in first:
                segment_f.append([mpmath.fsum(opf[r][c] * u[c] for c in range(len(u)))
                                  for r in range(len(opf))])
    return m_i, segment_f, False


def _segment_complex(rep: MatrixRep, irrep: RealIrrep, catalog_order: int):
    """Complex-type segment: isotypic projection plus the complex structure J."""
    n_i = irrep.dim
    n_c = n_i // 2
    if n_c != 1:
        raise NotImplementedError("complex-type irreps of complex dimension > 1 "
                                  "are outside the catalog scope")
    w = Fraction(n_c)
    inv = rep.action.inverse_table
    order = rep.action.order
    char_coeffs = [exact(Quad.of(irrep.character(inv[g])) * Fraction(n_c, order))
                   for g in range(order)]
    proj = _accumulate_projection(rep, char_coeffs)
    j_coeffs = [exact(Quad.of(irrep.matrix(inv[g])[0][n_c]) * Fraction(2 * n_c, order))
                for g in range(order)]
    jop = _accumulate_projection(rep, j_coeffs)
    # verify the structure exactly: P idempotent, J^2 = -P
    if not irrep.approximate:
        p2 = mat_mul(proj, proj)
        if not all(exact(a) == exact(b) for ra, rb in zip(p2, proj)
                   for a, b in zip(ra, rb)):
            raise ProjectionRankError(f"isotypic projection of {irrep.label} "
                                      "is not idempotent")
        j2 = mat_mul(jop, jop)
        negp = [[exact(-Quad.of(v)) for v in row] for row in proj]
        if not all(exact(a) == exact(b) for ra, rb in zip(j2, negp)
                   for a, b in zip(ra, rb)):
            raise ProjectionRankError(f"complex structure of {irrep.label} fails "
                                      "J^2 = -P; no constructive pairing found")
    tr = exact(sum((Quad.of(proj[i][i]) for i in range(rep.size)), Quad(0)))
    total = int(round(float(tr)))
    if total % n_i:
        raise ProjectionRankError(f"isotypic dimension {total} of {irrep.label} "
                                  f"is not divisible by {n_i}")
    m_i = total // n_i
    if m_i == 0:
        return 0, [], True
    candidates = _nonzero_columns(proj)
    if not irrep.approximate:
        us: list[list[Scalar]] = []
        pairs: list[list[Scalar]] = []
        ok = True
        for v in candidates:
            if len(us) == m_i:
                break
            wv = [exact(x) for x in v]
            for u in us + pairs:
                c = dot(wv, u)
                if c != 0:
                    wv = [exact(a - c * b) for a, b in zip(wv, u)]
            nrm2 = dot(wv, wv)
            if nrm2 == 0:
                continue
            try:
                inv_nrm = Quad.of(nrm2).sqrt().inverse()
            except ValueError:
                ok = False
                break
            u = [exact(x * inv_nrm) for x in wv]
            us.append(u)
            pairs.append(mat_vec(jop, u))
        if ok and len(us) == m_i:
            return m_i, us + pairs, True
    # floating fallback
    first: list[list] = []
    all_cols: list[list] = []
    with mpmath.workdps(RANK_DPS):
        jf = [[_to_mpf(x) for x in row] for row in jop]
        for v in candidates:
            if len(first) == m_i:
                break
            new = _mp_orthonormalize([v], have=first + all_cols)
            if not new:
                continue
            u = new[0]
            ju = [mpmath.fsum(jf[r][c] * u[c] for c in range(len(u)))
                  for r in range(len(jf))]
            first.append(u)
            all_cols.append(ju)
    if len(first) != m_i:
        raise ProjectionRankError(f"could not extract {m_i} aligned copies for "
                                  f"{irrep.label}")
    return m_i, first + all_cols, False


def symmetry_adapted_basis(rep: MatrixRep, catalog: IrrepCatalog) -> SymmetryAdaptedBasis:
    """Copy-aligned orthogonal basis from component projections.

    Segment columns are copy-major: the m_i first-copy vectors, then their
    images under p_j1 for each further copy j.  Multiplicities are the exact
    traces of the first-copy projections.
    """
    if catalog.action is not rep.action and catalog.action.order != rep.action.order:
        raise ValueError("catalog does not match the representation's group")
    columns: list = []
    layout: list[Segment] = []
    mults: dict[str, int] = {}
    for idx, irrep in enumerate(catalog.irreps):
        if irrep.kind == "complex-type":
            m_i, cols, is_exact = _segment_complex(rep, irrep, catalog.action.order)
            kind = "complex"
        else:
            m_i, cols, is_exact = _segment_real(rep, irrep, Fraction(irrep.dim))
            kind = "real"
        mults[irrep.label] = m_i
        if m_i == 0:
            continue
        seg = Segment(idx, irrep.label, irrep.dim, m_i, kind, is_exact,
                      col_start=len(columns))
        layout.append(seg)
        columns.extend(cols)
    total = sum(s.width for s in layout)
    if total != rep.size:
        raise ProjectionRankError(
            f"isotypic widths sum to {total}, expected {rep.size}; "
            "irrep data is inconsistent with the representation")
    return SymmetryAdaptedBasis(rep.size, columns, layout, mults)


# -- block diagonalization -----------------------------------------------------------


@dataclass
class BlockDiagonalization:
    segments: list[Segment]
    blocks: list              # one representative per segment
    off_block_residual: float


def _col_dot_exact(x: Matrix, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    xu = mat_vec(x, v)
    return dot(u, xu)


def block_diagonalize(x, basis: SymmetryAdaptedBasis, tol: float = 1e-10,
                      rep: MatrixRep | None = None) -> BlockDiagonalization:
    """T^T X T split into per-irrep blocks; X must commute with the action.

    For absolutely-real segments the n_i repeated copies are checked for
    equality and a single m_i x m_i representative is returned; complex-type
    segments return the full coupled block.  Raises if the off-block residual
    exceeds ``tol`` (exact zero is demanded for exact inputs).
    """
    exact_mode = basis.is_exact and not isinstance(x, np.ndarray) and \
        all(not isinstance(v, float) for row in x for v in row)
    if exact_mode:
        t = basis.t_matrix()
        cols = [[t[r][c] for r in range(basis.size)] for c in range(basis.size)]
        full = [[_col_dot_exact(x, cols[a], cols[b]) for b in range(basis.size)]
                for a in range(basis.size)]
        fullf = to_ndarray(full)
    else:
        tf = basis.t_float()
        xf = x if isinstance(x, np.ndarray) else to_ndarray(x)
        fullf = tf.T @ xf @ tf
        full = None
    # off-block residual
    mask = np.zeros_like(fullf, dtype=bool)
    for seg in basis.layout:
        a, w = seg.col_start, seg.width
        mask[a:a + w, a:a + w] = True
    resid = float(np.max(np.abs(np.where(mask, 0.0, fullf)))) if fullf.size else 0.0
    if exact_mode:
        for a in range(basis.size):
            for b in range(basis.size):
                if not mask[a, b] and full[a][b] != 0:
                    raise ValueError(f"off-block entry ({a},{b}) = {full[a][b]} != 0; "
                                     "input is not invariant or basis inconsistent")
    elif resid > tol:
        raise ValueError(f"off-block residual {resid:.3e} exceeds tolerance {tol:.1e}")
    blocks = []
    for seg in basis.layout:
        a, m = seg.col_start, seg.m_i
        if seg.kind == "complex":
            if exact_mode:
                blocks.append([[full[a + r][a + c] for c in range(seg.width)]
                               for r in range(seg.width)])
            else:
                blocks.append(fullf[a:a + seg.width, a:a + seg.width].copy())
            continue
        if exact_mode:
            rep_block = [[full[a + r][a + c] for c in range(m)] for r in range(m)]
            for j in range(seg.n_i):
                for k in range(seg.n_i):
                    sub = [[full[a + j * m + r][a + k * m + c] for c in range(m)]
                           for r in range(m)]
                    if j == k:
                        if sub != rep_block:
                            raise ValueError(f"copies of block {seg.label} disagree")
                    elif any(v != 0 for row in sub for v in row):
                        raise ValueError(f"cross-copy coupling in {seg.label}")
            blocks.append(rep_block)
        else:
            rep_block = fullf[a:a + m, a:a + m].copy()
            for j in range(seg.n_i):
                for k in range(seg.n_i):
                    sub = fullf[a + j * m:a + (j + 1) * m, a + k * m:a + (k + 1) * m]
                    bad = np.max(np.abs(sub - rep_block)) if j == k else \
                        np.max(np.abs(sub))
                    if bad > tol:
                        raise ValueError(f"block structure of {seg.label} violated "
                                         f"by {bad:.3e}")
            blocks.append(rep_block)
    return BlockDiagonalization(list(basis.layout), blocks, resid)
