"""Block-diagonal SDP data model and the two Gram-constraint assemblies.

A :class:`BlockSDP` is a list of PSD blocks plus free scalar variables, a
linear cost (minimized), and exact linear equations over block entries and
free variables.  Entry coefficients are attached to upper-triangle positions
(r <= c); an off-diagonal coefficient q means q * X[r][c] with X symmetric,
so a functional <A, X> contributes 2*A[r][c] there.

Two assemblies produce these programs: the plain Gram formulation over a
monomial vector, and the invariant formulation whose blocks are Gram matrices
of SOS factors paired with the equivariant Pi matrices.  The
``restrict_invariant`` reduction Reynolds-averages the constraint functionals
and rotates them into a symmetry-adapted basis, yielding one small block per
irrep with the copy multiplicity folded into the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .equivariants import PiMatrix
from .invariants import InvariantPoly, InvariantPresentation
from .isotypic import MatrixRep, Segment, SymmetryAdaptedBasis, fixed_point_project
from .linalg import Matrix, RowBasis, to_ndarray
from .poly import Monomial, Polynomial, monomial_mul, monomial_vector
from .scalars import Scalar, exact

VarKey = tuple


@dataclass(frozen=True)
class BlockSpec:
    name: str
    size: int
    weight: int = 1


@dataclass
class LinearConstraint:
    coeffs: dict[VarKey, Scalar]
    rhs: Scalar

    def scaled(self, c: Scalar) -> "LinearConstraint":
        return LinearConstraint({k: exact(v * c) for k, v in self.coeffs.items()},
                                exact(self.rhs * c))


@dataclass
class BlockSDP:
    blocks: list[BlockSpec]
    free_vars: list[str]
    cost: dict[VarKey, Scalar]            # minimized; may reference free vars
    constraints: list[LinearConstraint]
    meta: dict = field(default_factory=dict)

    def var_order(self) -> list[VarKey]:
        keys: list[VarKey] = []
        for bi, blk in enumerate(self.blocks):
            for r in range(blk.size):
                for c in range(r, blk.size):
                    keys.append(("blk", bi, r, c))
        keys.extend(("free", name) for name in self.free_vars)
        return keys

    def entry_count(self) -> int:
        return sum(b.size * (b.size + 1) // 2 for b in self.blocks)

    def functional_matrices(self, coeffs: dict[VarKey, Scalar]) -> list[np.ndarray]:
        """Per-block symmetric matrices A with <A, X> = sum coeffs * entries."""
        mats = [np.zeros((b.size, b.size)) for b in self.blocks]
        for key, v in coeffs.items():
            if key[0] != "blk":
                continue
            _, bi, r, c = key
            x = float(v)
            if r == c:
                mats[bi][r, r] += x
            else:
                mats[bi][r, c] += x / 2
                mats[bi][c, r] += x / 2
        return mats

    def free_coeff_vector(self, coeffs: dict[VarKey, Scalar]) -> np.ndarray:
        out = np.zeros(len(self.free_vars))
        for j, name in enumerate(self.free_vars):
            out[j] = float(coeffs.get(("free", name), 0))
        return out

    # -- text serialization --------------------------------------------------

    def to_text(self) -> str:
        lines = [f"blocksdp blocks={len(self.blocks)} free={len(self.free_vars)}"]
        for b in self.blocks:
            lines.append(f"block {b.name} {b.size} {b.weight}")
        for name in self.free_vars:
            lines.append(f"freevar {name}")

        def keystr(k: VarKey) -> str:
            return f"b{k[1]}[{k[2]},{k[3]}]" if k[0] == "blk" else k[1]

        cost = " ".join(f"{keystr(k)}:{v}" for k, v in sorted(self.cost.items(),
                                                              key=str))
        lines.append(f"cost {cost}" if cost else "cost")
        for con in self.constraints:
            body = " ".join(f"{keystr(k)}:{v}" for k, v in sorted(con.coeffs.items(),
                                                                  key=str))
            lines.append(f"eq {body} = {con.rhs}")
        lines.append("end")
        return "\n".join(lines)

    @staticmethod
    def from_text(text: str) -> "BlockSDP":
        lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
        if not lines[0].startswith("blocksdp"):
            raise ValueError("missing blocksdp header")
        blocks, frees = [], []
        cost: dict[VarKey, Scalar] = {}
        cons: list[LinearConstraint] = []

        def parsekey(tok: str) -> VarKey:
            if tok.startswith("b") and "[" in tok:
                bi = int(tok[1:tok.index("[")])
                r, c = tok[tok.index("[") + 1:-1].split(",")
                return ("blk", bi, int(r), int(c))
            return ("free", tok)

        for ln in lines[1:]:
            if ln == "end":
                break
            tag, *rest = ln.split()
            if tag == "block":
                blocks.append(BlockSpec(rest[0], int(rest[1]), int(rest[2])))
            elif tag == "freevar":
                frees.append(rest[0])
            elif tag == "cost":
                for tok in rest:
                    k, v = tok.rsplit(":", 1)
                    cost[parsekey(k)] = Fraction(v)
            elif tag == "eq":
                eqidx = rest.index("=")
                coeffs = {}
                for tok in rest[:eqidx]:
                    k, v = tok.rsplit(":", 1)
                    coeffs[parsekey(k)] = Fraction(v)
                cons.append(LinearConstraint(coeffs, Fraction(rest[eqidx + 1])))
        return BlockSDP(blocks, frees, cost, cons)


class AssemblyInfeasible(ValueError):
    """The linear system is contradictory before any cone constraint."""


# -- plain Gram assembly --------------------------------------------------------


def assemble_gram(f: Polynomial, with_lambda: bool = True) -> BlockSDP:
    """Single-block Gram program: Y^T Q Y = f (- lambda), Q of size C(n+d, d).

    One exact equation per monomial of degree <= deg f; when ``with_lambda``
    the constant-monomial equation carries the free bound variable and the
    cost maximizes it.
    """
    deg = f.degree()
    if deg is not None and not isinstance(deg, int):
        raise ValueError("cannot assemble the zero polynomial")
    if deg % 2:
        raise ValueError(f"degree {deg} is odd; Gram assembly needs even degree")
    d = deg // 2
    y = monomial_vector(f.nvars, d)
    n = len(y)
    zero_mono = (0,) * f.nvars
    eq: dict[Monomial, LinearConstraint] = {}
    for a in range(n):
        for b in range(a, n):
            mono = monomial_mul(y.entries[a], y.entries[b])
            con = eq.setdefault(mono, LinearConstraint({}, Fraction(0)))
            key = ("blk", 0, a, b)
            con.coeffs[key] = exact(con.coeffs.get(key, Fraction(0)) +
                                    (1 if a == b else 2))
    for mono, con in eq.items():
        con.rhs = f.coefficient(mono)
    for mono in f.terms:
        if mono not in eq:
            raise AssemblyInfeasible(f"monomial {mono} cannot appear in Y^T Q Y")
    free = []
    cost: dict[VarKey, Scalar] = {}
    if with_lambda:
        free = ["lambda"]
        eq[zero_mono].coeffs[("free", "lambda")] = Fraction(1)
        cost[("free", "lambda")] = Fraction(-1)
    cons = [eq[m] for m in sorted(eq, key=lambda m: (sum(m), m))]
    sdp = BlockSDP([BlockSpec("gram", n, 1)], free, cost, cons,
                   meta={"mode": "plain", "monomials": y, "nvars": f.nvars})
    return sdp


# -- invariant restriction --------------------------------------------------------


@dataclass
class ReducedMap:
    """Bookkeeping to lift reduced block solutions back to the full program."""

    basis: SymmetryAdaptedBasis
    segments: list[Segment]

    def lift(self, block_values: Sequence[np.ndarray]) -> np.ndarray:
        n = self.basis.size
        t = self.basis.t_float()
        d = np.zeros((n, n))
        for seg, val in zip(self.segments, block_values):
            a = seg.col_start
            if seg.kind == "complex":
                d[a:a + seg.width, a:a + seg.width] = val
            else:
                for j in range(seg.n_i):
                    o = a + j * seg.m_i
                    d[o:o + seg.m_i, o:o + seg.m_i] = val
        return t @ d @ t.T


def _functional_to_exact_matrix(sdp: BlockSDP, coeffs: dict[VarKey, Scalar],
                                size: int) -> Matrix:
    m = [[Fraction(0)] * size for _ in range(size)]
    for key, v in coeffs.items():
        if key[0] != "blk":
            continue
        _, _, r, c = key
        if r == c:
            m[r][r] = exact(m[r][r] + v)
        else:
            half = exact(v * Fraction(1, 2))
            m[r][c] = exact(m[r][c] + half)
            m[c][r] = exact(m[c][r] + half)
    return m


def _matrix_to_entry_coeffs(bi: int, m: Matrix) -> dict[VarKey, Scalar]:
    out: dict[VarKey, Scalar] = {}
    size = len(m)
    for r in range(size):
        if m[r][r] != 0:
            out[("blk", bi, r, r)] = exact(m[r][r])
        for c in range(r + 1, size):
            v = exact(m[r][c] + m[c][r])
            if v != 0:
                out[("blk", bi, r, c)] = v
    return out


class InvarianceError(ValueError):
    pass


def _sym_entry_vector(m: Matrix) -> list[Scalar]:
    n = len(m)
    return [m[r][c] for r in range(n) for c in range(r, n)]


def check_invariance(sdp: BlockSDP, rep: MatrixRep) -> None:
    """Spot-check on generators: cost matrix fixed, constraint set preserved."""
    n = sdp.blocks[0].size
    cmat = _functional_to_exact_matrix(sdp, sdp.cost, n)
    rows = []
    for con in sdp.constraints:
        amat = _functional_to_exact_matrix(sdp, con.coeffs, n)
        frees = [con.coeffs.get(("free", f), Fraction(0)) for f in sdp.free_vars]
        rows.append((amat, frees, con.rhs))
    span = RowBasis(n * (n + 1) // 2 + len(sdp.free_vars) + 1)
    for amat, frees, rhs in rows:
        span.add(_sym_entry_vector(amat) + frees + [rhs])
    for g in rep.action.generators:
        gmat = rep.conjugate(g, cmat)
        if any(exact(a) != exact(b) for ra, rb in zip(gmat, cmat)
               for a, b in zip(ra, rb)):
            raise InvarianceError("cost functional is not invariant")
        for amat, frees, rhs in rows:
            moved = rep.conjugate(g, amat)
            if not span.contains(_sym_entry_vector(moved) + frees + [rhs]):
                raise InvarianceError("constraint set is not invariant under the group")


def restrict_invariant(sdp: BlockSDP, rep: MatrixRep,
                       basis: SymmetryAdaptedBasis) -> tuple[BlockSDP, ReducedMap]:
    """Fixed-point restriction plus block rotation of a single-block program.

    Every constraint functional is Reynolds-averaged (its action on the
    fixed-point subspace is unchanged), rotated by T, and its repeated
    per-copy subblocks are folded together, so the reduced objective already
    carries the copy weights.  The reduced system is exactly row-reduced to
    an independent set.  Optimal values are preserved.
    """
    if len(sdp.blocks) != 1:
        raise ValueError("restriction applies to single-block programs")
    n = sdp.blocks[0].size
    if n != rep.size or n != basis.size:
        raise ValueError("size mismatch between program, representation and basis")
    check_invariance(sdp, rep)
    use_exact = basis.is_exact
    tcols = basis.columns if use_exact else None
    tfloat = None if use_exact else basis.t_float()

    def reduce_functional(coeffs: dict[VarKey, Scalar]) -> list:
        amat = _functional_to_exact_matrix(sdp, coeffs, n)
        ravg = fixed_point_project(amat, rep)
        out = []
        if use_exact:
            for seg in basis.layout:
                cols = tcols[seg.col_start: seg.col_start + seg.width]
                sub = [[None] * seg.width for _ in range(seg.width)]
                rv = [ [exact(sum((ravg[r][k] * col[k] for k in range(n)), Fraction(0)))
                        for r in range(n)] for col in cols ]
                for a in range(seg.width):
                    for b in range(seg.width):
                        sub[a][b] = exact(sum((cols[a][r] * rv[b][r] for r in range(n)),
                                              Fraction(0)))
                if seg.kind == "complex":
                    out.append(sub)
                else:
                    m = seg.m_i
                    folded = [[Fraction(0)] * m for _ in range(m)]
                    for j in range(seg.n_i):
                        o = j * m
                        for r in range(m):
                            for c in range(m):
                                folded[r][c] = exact(folded[r][c] + sub[o + r][o + c])
                    out.append(folded)
        else:
            ra = to_ndarray(ravg)
            full = tfloat.T @ ra @ tfloat
            for seg in basis.layout:
                a0 = seg.col_start
                sub = full[a0:a0 + seg.width, a0:a0 + seg.width]
                if seg.kind == "complex":
                    out.append(sub)
                else:
                    m = seg.m_i
                    folded = sum(sub[j * m:(j + 1) * m, j * m:(j + 1) * m]
                                 for j in range(seg.n_i))
                    out.append(folded)
        return out

    blocks = [BlockSpec(seg.label, seg.width if seg.kind == "complex" else seg.m_i,
                        1 if seg.kind == "complex" else seg.n_i)
              for seg in basis.layout]

    def to_coeffs(parts: list, extras: dict[VarKey, Scalar]) -> dict[VarKey, Scalar]:
        out: dict[VarKey, Scalar] = dict(extras)
        for bi, mat in enumerate(parts):
            if isinstance(mat, np.ndarray):
                mat = [[Fraction(x).limit_denominator(10 ** 12) for x in row]
                       for row in mat]
            out.update(_matrix_to_entry_coeffs(bi, mat))
        return out

    new_cost = to_coeffs(reduce_functional(sdp.cost),
                         {k: v for k, v in sdp.cost.items() if k[0] == "free"})
    new_cons: list[LinearConstraint] = []
    keyorder: list[VarKey] = []
    for bi, blk in enumerate(blocks):
        for r in range(blk.size):
            for c in range(r, blk.size):
                keyorder.append(("blk", bi, r, c))
    keyorder.extend(("free", f) for f in sdp.free_vars)
    keypos = {k: i for i, k in enumerate(keyorder)}
    if use_exact:
        # rows carry the rhs in a trailing column the pivot search never
        # touches, so dependent rows with mismatched rhs show up as
        # inconsistencies rather than pivots
        span = RowBasis(len(keyorder))
        for con in sdp.constraints:
            coeffs = to_coeffs(reduce_functional(con.coeffs),
                               {k: v for k, v in con.coeffs.items() if k[0] == "free"})
            row = [Fraction(0)] * len(keyorder)
            for k, v in coeffs.items():
                row[keypos[k]] = v
            row.append(con.rhs)
            if span.add(row):
                new_cons.append(LinearConstraint(coeffs, con.rhs))
            elif not span.contains(row):
                raise AssemblyInfeasible("restricted constraint system is inconsistent")
    else:
        kept: list[np.ndarray] = []
        for con in sdp.constraints:
            coeffs = to_coeffs(reduce_functional(con.coeffs),
                               {k: v for k, v in con.coeffs.items() if k[0] == "free"})
            vec = np.zeros(len(keyorder) + 1)
            for k, v in coeffs.items():
                vec[keypos[k]] = float(v)
            vec[-1] = float(con.rhs)
            w = vec.copy()
            for u in kept:
                w -= np.dot(w, u) * u
            if np.linalg.norm(w[:-1]) > 1e-9 * max(1.0, np.linalg.norm(vec)):
                kept.append(w / np.linalg.norm(w))
                new_cons.append(LinearConstraint(coeffs, con.rhs))
    red = BlockSDP(blocks, list(sdp.free_vars), new_cost, new_cons,
                   meta={"mode": "reduced", "parent": sdp.meta})
    return red, ReducedMap(basis, list(basis.layout))


# -- invariant SOS assembly ---------------------------------------------------------


def assemble_invariant_sos(ft: InvariantPoly, pres: InvariantPresentation,
                           pis: list[PiMatrix],
                           envelopes: list[list[list[Monomial]]],
                           with_lambda: bool = True,
                           target_degree: int | None = None) -> BlockSDP:
    """Coupled Gram blocks for f_j(theta) = sum_i <S_i, Pi_i^j> per eta part.

    Block i indexes pairs (row k, theta-monomial alpha in envelope row k); the
    equation for (eta_j, theta^gamma) matches the coefficient of f.  Blocks
    with empty envelopes are dropped.  Raises AssemblyInfeasible when a
    nonzero coefficient of f has no matching variables at all.
    """
    s = len(pres.theta)
    blocks: list[BlockSpec] = []
    indexers: list[list[tuple[int, Monomial]]] = []
    used: list[tuple[int, PiMatrix, list[list[Monomial]]]] = []
    for pi, env in zip(pis, envelopes):
        pairs = [(k, alpha) for k, row in enumerate(env) for alpha in row]
        if not pairs:
            continue
        used.append((len(blocks), pi, env))
        blocks.append(BlockSpec(pi.irrep_label, len(pairs), 1))
        indexers.append(pairs)
    eq: dict[tuple[int, Monomial], LinearConstraint] = {}
    zero_gamma = (0,) * s

    def equation(j: int, gamma: Monomial) -> LinearConstraint:
        key = (j, gamma)
        if key not in eq:
            eq[key] = LinearConstraint({}, Fraction(0))
        return eq[key]

    for bi, pi, env in used:
        pairs = indexers[bi]
        for a in range(len(pairs)):
            k, alpha = pairs[a]
            for b in range(a, len(pairs)):
                l, beta = pairs[b]
                entry = pi.entries[k][l]
                mult = 1 if a == b else 2
                for j, part in entry.parts.items():
                    for delta, coef in part.terms.items():
                        gamma = tuple(x + y + z for x, y, z in zip(alpha, beta, delta))
                        con = equation(j, gamma)
                        vkey = ("blk", bi, a, b)
                        con.coeffs[vkey] = exact(con.coeffs.get(vkey, Fraction(0)) +
                                                 mult * coef)
    for j, part in ft.parts.items():
        for gamma, coef in part.terms.items():
            if (j, gamma) not in eq:
                raise AssemblyInfeasible(
                    f"no SOS structure reaches eta_{j + 1} * theta^{gamma}")
    for (j, gamma), con in eq.items():
        con.rhs = ft.part(j).coefficient(gamma)
    free: list[str] = []
    cost: dict[VarKey, Scalar] = {}
    if with_lambda:
        free = ["lambda"]
        equation(0, zero_gamma).coeffs[("free", "lambda")] = Fraction(1)
        cost[("free", "lambda")] = Fraction(-1)
    cons = [eq[k] for k in sorted(eq)]
    return BlockSDP(blocks, free, cost, cons,
                    meta={"mode": "invariant", "pres": pres, "pis": pis,
                          "envelopes": envelopes, "indexers": indexers,
                          "target_degree": target_degree})


def with_interior_variable(sdp: BlockSDP, cap: Fraction = Fraction(1)
                           ) -> tuple[BlockSDP, str]:
    """Reformulate X = X' + t*I to maximize the feasibility margin t <= cap.

    Returns the shifted program (minimizing -t) plus the variable name; the
    original blocks are recovered by adding t* back to the diagonals.
    """
    name = "_interior_t"
    blocks = list(sdp.blocks) + [BlockSpec("_tcap", 1, 1)]
    cons = []
    for con in sdp.constraints:
        coeffs = dict(con.coeffs)
        diag = Fraction(0)
        for key, v in con.coeffs.items():
            if key[0] == "blk" and key[2] == key[3]:
                diag = exact(diag + v)
        if diag != 0:
            coeffs[("free", name)] = diag
        cons.append(LinearConstraint(coeffs, con.rhs))
    capcon = LinearConstraint({("free", name): Fraction(1),
                               ("blk", len(sdp.blocks), 0, 0): Fraction(1)}, cap)
    cons.append(capcon)
    cost = {("free", name): Fraction(-1)}
    return BlockSDP(blocks, list(sdp.free_vars) + [name], cost, cons,
                    meta=dict(sdp.meta, interior=True)), name
