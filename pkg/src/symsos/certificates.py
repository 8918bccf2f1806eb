"""End-to-end SOS lower bounds, rational rounding, and exact verification.

The two preprocessing/solving stages mirror the classical split: a
group-dependent stage collects the invariant presentation, equivariant module
bases and their Gram matrices Pi into a :class:`GeneratorBundle`; an
instance-dependent stage rewrites the target polynomial in the invariants,
bounds the SOS factor supports by weighted degree, assembles coupled Gram
blocks, solves, and polishes.

Numeric optima are turned into exact certificates by rounding the free
parameters of the exactly-eliminated constraint system (pivot entries are
recomputed exactly, so the polynomial identity holds by construction) and
testing each Gram block PSD via rational LDL^T.  The bound variable is always
rounded to a value whose certificate verifies exactly, so emitted rational
bounds are valid unconditionally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import groups as groups_mod
from .equivariants import (EquivariantBasis, MissingEquivariantData, PiMatrix,
                           equivariant_catalog, monomial_envelope, pi_matrix)
from .groups import IrrepCatalog, catalog as load_catalog
from .invariants import (InvariantPoly, InvariantPresentation, NotInvariantError,
                         presentation as load_presentation_for,
                         rewrite_in_invariants, expand_invariants,
                         verify_invariant, weighted_degree,
                         symmetric_presentation)
from .linalg import RowBasis, ldl_psd
from .poly import Monomial, Polynomial, monomial_mul
from .scalars import exact
from .sdp import (AssemblyInfeasible, BlockSDP, VarKey, assemble_gram,
                  assemble_invariant_sos, with_interior_variable)
from .solver import SDPSolution, solve, polish_solution

DEFAULT_SCHEDULE = (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 6)


class NoCertificateError(RuntimeError):
    pass


class RoundingError(RuntimeError):
    pass


@dataclass
class GeneratorBundle:
    """Group-dependent data: presentation, module bases, Pi matrices."""

    group: str
    catalog: IrrepCatalog | None
    pres: InvariantPresentation
    bases: dict[str, EquivariantBasis]
    pis: dict[str, PiMatrix]
    missing: list[str] = field(default_factory=list)

    @property
    def irrep_labels(self) -> list[str]:
        if self.catalog is not None:
            return [r.label for r in self.catalog.irreps if r.label in self.pis]
        return list(self.pis)


def algorithm_one(catalog: IrrepCatalog | str) -> GeneratorBundle:
    """Collect invariants, module bases and Pi matrices for a catalog group."""
    if isinstance(catalog, str):
        catalog = load_catalog(catalog)
    pres = load_presentation_for(catalog.name)
    bases, missing = equivariant_catalog(catalog, pres)
    pis = {label: pi_matrix(basis, pres) for label, basis in bases.items()}
    return GeneratorBundle(catalog.name, catalog, pres, bases, pis, missing)


def symmetric_bundle(n: int, max_degree: int) -> GeneratorBundle:
    """Analytic bundle for coordinate permutations on any number of variables.

    Only the trivial and (embedded) standard modules can contribute below
    degree 3, so bounded-degree instances avoid materializing the n! group
    elements; generators above the degree budget are trimmed before the Gram
    matrices are computed.
    """
    from .equivariants import _power_sum_centered, _perm_generator_matrices
    pres = symmetric_presentation(n)
    gens = _perm_generator_matrices(n)
    one = Polynomial.constant(n, 1)
    bases: dict[str, EquivariantBasis] = {
        "trivial": EquivariantBasis("trivial", n, [(one,)],
                                    [[[Fraction(1)]] for _ in gens], gens),
    }
    std_vecs = [_power_sum_centered(n, k) for k in range(1, n)
                if 2 * k <= max_degree]
    if std_vecs:
        bases["standard"] = EquivariantBasis("standard", n, std_vecs, gens, gens)
    for b in bases.values():
        b.verify()
    pis = {label: pi_matrix(basis, pres) for label, basis in bases.items()}
    return GeneratorBundle(f"symmetric:{n}", None, pres, bases, pis,
                           missing=[f"modules beyond degree {max_degree} omitted"])


def bundle_for(group_spec: str, max_degree: int | None = None) -> GeneratorBundle:
    parts = group_spec.split(":")
    if parts[0] == "symmetric":
        n = int(parts[1])
        if max_degree is not None and max_degree <= 2:
            # quadratic instances need only the analytic trivial + standard
            # modules, for any number of variables
            return symmetric_bundle(n, max_degree)
        if n > 5:
            raise MissingEquivariantData(
                "symmetric groups beyond n=5 are only bundled for quadratics")
    return algorithm_one(group_spec)


# -- certificates -------------------------------------------------------------------


@dataclass
class CertBlock:
    label: str
    rows: list[list[Monomial]]        # theta-monomial envelope per generator row
    gram: list                        # exact Matrix or float ndarray
    pi: PiMatrix


@dataclass
class Certificate:
    mode: str                         # "plain" or "invariant"
    group: str
    var_names: list[str]
    lam: Fraction | float
    exact: bool
    pres: InvariantPresentation | None = None
    blocks: list[CertBlock] = field(default_factory=list)
    monomials: tuple | None = None    # plain mode
    gram: list | None = None          # plain mode
    objective: str = "maximize-lambda"
    diagnostics: dict = field(default_factory=dict)

    def block_sizes(self) -> list[int]:
        if self.mode == "plain":
            return [len(self.monomials)]
        return [sum(len(r) for r in b.rows) for b in self.blocks]


def _sos_poly_from_gram(block: CertBlock, pres: InvariantPresentation,
                        nvars: int) -> Polynomial:
    """Expand <S_i, Pi_i> back into the original variables, exactly."""
    pairs = [(k, alpha) for k, row in enumerate(block.rows) for alpha in row]
    s = len(pres.theta)
    total = Polynomial.zero(nvars)
    for a, (k, alpha) in enumerate(pairs):
        for b, (l, beta) in enumerate(pairs):
            g = block.gram[a][b] if not isinstance(block.gram, np.ndarray) else \
                block.gram[a][b]
            if g == 0:
                continue
            entry = block.pi.entries[k][l]
            for j, part in entry.parts.items():
                for delta, coef in part.terms.items():
                    gamma = tuple(x + y + z for x, y, z in zip(alpha, beta, delta))
                    mono_poly = Polynomial.monomial(s, gamma, exact(g * coef))
                    contrib = InvariantPoly(s, {j: mono_poly})
                    total = total + expand_invariants(contrib, pres)
    return total


def verify_certificate(cert: Certificate, f: Polynomial) -> tuple[bool, list[str]]:
    """Exact replay: Gram blocks PSD via rational LDL^T and the literal identity.

    Plain mode checks Y^T Q Y = f - lambda; invariant mode checks
    sum_i <S_i(theta), Pi_i> = f - lambda after full expansion.
    """
    report: list[str] = []
    if not cert.exact:
        report.append("certificate is floating point; round it first")
        return False, report
    lam = cert.lam
    target = f - lam
    if cert.mode == "plain":
        psd, why = ldl_psd(cert.gram)
        if not psd:
            report.append(f"Gram matrix not PSD: {why}")
            return False, report
        n = f.nvars
        recon = Polynomial.zero(n)
        for a, ma in enumerate(cert.monomials):
            for b, mb in enumerate(cert.monomials):
                v = cert.gram[a][b]
                if v != 0:
                    recon = recon + Polynomial.monomial(n, monomial_mul(ma, mb), v)
        if recon != target:
            diff = recon - target
            report.append(f"identity fails; first residual term {next(iter(diff.terms.items()))}")
            return False, report
        return True, ["plain Gram identity and PSD check passed"]
    total = Polynomial.zero(f.nvars)
    for block in cert.blocks:
        psd, why = ldl_psd(block.gram)
        if not psd:
            report.append(f"block {block.label}: Gram not PSD ({why})")
            return False, report
        total = total + _sos_poly_from_gram(block, cert.pres, f.nvars)
    if total != target:
        diff = total - target
        report.append(f"identity fails; first residual term {next(iter(diff.terms.items()))}")
        return False, report
    return True, ["invariant identity and all PSD checks passed"]


# -- algorithm two ------------------------------------------------------------------


def _invariant_sdp(f: Polynomial, bundle: GeneratorBundle, with_lambda: bool):
    pres = bundle.pres
    if pres.generators and not verify_invariant(f, pres.generators):
        raise NotInvariantError("polynomial is not invariant under the group")
    ft = rewrite_in_invariants(f, pres, check_invariance=False)
    target = weighted_degree(ft, pres)
    labels = bundle.irrep_labels
    pis = [bundle.pis[l] for l in labels]
    envs = [monomial_envelope(pres, pi, target) for pi in pis]
    sdp = assemble_invariant_sos(ft, pres, pis, envs, with_lambda=with_lambda,
                                 target_degree=target)
    return sdp, ft, target, labels, pis, envs


def _certificate_from_solution(bundle: GeneratorBundle, sdp: BlockSDP,
                               sol: SDPSolution, f: Polynomial, lam,
                               objective: str) -> Certificate:
    blocks = []
    label_of = {b.name: i for i, b in enumerate(sdp.blocks)}
    for pi, env in zip(sdp.meta["pis"], sdp.meta["envelopes"]):
        if pi.irrep_label not in label_of:
            continue
        gram = sol.blocks[sol.block_names.index(pi.irrep_label)]
        blocks.append(CertBlock(pi.irrep_label, env, gram, pi))
    names = [f"x{i + 1}" for i in range(f.nvars)] if f.nvars > 3 else \
        ["x", "y", "z"][: f.nvars]
    return Certificate("invariant", bundle.group, names, lam, exact=False,
                       pres=bundle.pres, blocks=blocks, objective=objective,
                       diagnostics={"status": sol.status,
                                    "block_sizes": [b.size for b in sdp.blocks],
                                    "iterations": sol.iterations})


def algorithm_two(f: Polynomial, bundle: GeneratorBundle,
                  objective: str = "maximize-lambda",
                  lambda_value: Fraction = Fraction(0),
                  tol: float = 1e-8,
                  feas_margin: float = 1e-7,
                  concentrate: bool = False) -> Certificate:
    """Rewrite, bound supports, assemble and solve; returns a float certificate.

    ``maximize-lambda`` returns the SOS lower bound; ``feasibility`` decides
    whether f - lambda_value is a sum of squares at the given degree, raising
    NoCertificateError when the margin is decisively negative.  With
    ``concentrate`` the feasibility solve afterwards minimizes the total trace,
    pushing the support onto as few isotypic blocks as possible.
    """
    if bundle.catalog is not None and bundle.missing:
        raise MissingEquivariantData(
            f"bundle for {bundle.group} lacks module data for {bundle.missing}")
    if objective == "maximize-lambda":
        sdp, ft, target, labels, pis, envs = _invariant_sdp(f, bundle, True)
        sol = solve(sdp, tol=tol)
        if sol.status in ("infeasible-suspect", "unbounded"):
            raise NoCertificateError(
                f"no SOS representation found at this degree ({sol.status})")
        sol = polish_solution(sdp, sol)
        cert = _certificate_from_solution(bundle, sdp, sol, f,
                                          sol.free_values["lambda"], objective)
        cert.diagnostics["sdp"] = sdp
        cert.diagnostics["free_values"] = sol.free_values
        return cert
    # feasibility at a fixed lambda: maximize the interior margin t
    shifted = f - lambda_value
    sdp, ft, target, labels, pis, envs = _invariant_sdp(shifted, bundle, False)
    inter, tname = with_interior_variable(sdp)
    sol = solve(inter, tol=tol)
    if not sol.ok:
        raise NoCertificateError(f"margin solve failed ({sol.status})")
    tstar = sol.free_values[tname]
    if tstar < -feas_margin:
        raise NoCertificateError(
            f"no SOS representation found at this degree (margin {tstar:.2e})")
    if concentrate:
        # resolve with a pure trace objective to drive unused blocks to zero
        steered = BlockSDP(sdp.blocks, sdp.free_vars,
                           {("blk", bi, r, r): Fraction(1)
                            for bi, b in enumerate(sdp.blocks)
                            for r in range(b.size)},
                           sdp.constraints, sdp.meta)
        sol2 = solve(steered, tol=tol)
        if sol2.ok:
            cert = _certificate_from_solution(bundle, sdp, sol2, f, lambda_value,
                                              "feasibility")
            cert.diagnostics["margin"] = tstar
            cert.diagnostics["sdp"] = sdp
            return cert
    # shift the interior variable back onto the diagonals
    blocks = []
    for bi, spec in enumerate(sdp.blocks):
        mat = sol.blocks[sol.block_names.index(spec.name)] + \
            max(tstar, 0.0) * np.eye(spec.size)
        blocks.append(mat)
    patched = SDPSolution(sol.status, sol.objective, sol.dual_objective, sol.gap,
                          blocks, [b.name for b in sdp.blocks],
                          {}, sol.y, sol.iterations, sol.primal_residual,
                          sol.dual_residual)
    patched = polish_solution(sdp, patched)
    cert = _certificate_from_solution(bundle, sdp, patched, f, lambda_value,
                                      "feasibility")
    cert.diagnostics["margin"] = tstar
    cert.diagnostics["sdp"] = sdp
    return cert


def plain_sos_bound(f: Polynomial, tol: float = 1e-8) -> Certificate:
    """Gram-matrix bound with no symmetry exploitation."""
    sdp = assemble_gram(f, with_lambda=True)
    sol = solve(sdp, tol=tol)
    if sol.status in ("infeasible-suspect", "unbounded"):
        raise NoCertificateError(
            f"no SOS representation found at this degree ({sol.status})")
    sol = polish_solution(sdp, sol)
    names = [f"x{i + 1}" for i in range(f.nvars)] if f.nvars > 3 else \
        ["x", "y", "z"][: f.nvars]
    return Certificate("plain", "trivial", names, sol.free_values["lambda"],
                       exact=False, monomials=sdp.meta["monomials"].entries,
                       gram=sol.blocks[0],
                       diagnostics={"status": sol.status, "sdp": sdp,
                                    "free_values": sol.free_values})


def sos_lower_bound(f: Polynomial, group_spec: str,
                    tol: float = 1e-8) -> tuple[float, Certificate]:
    """Largest lambda with f - lambda SOS, exploiting the given symmetry."""
    deg = f.degree()
    if not isinstance(deg, int) or deg % 2:
        raise ValueError("the target polynomial must have even degree")
    if group_spec.startswith("trivial"):
        cert = plain_sos_bound(f, tol=tol)
        return float(cert.lam), cert
    bundle = bundle_for(group_spec, max_degree=deg)
    cert = algorithm_two(f, bundle, "maximize-lambda", tol=tol)
    return float(cert.lam), cert


# -- rational rounding --------------------------------------------------------------


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Simplest rational in [lo, hi] (Stern-Brocot)."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -_simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl == math.floor(hi) and lo != fl:
        rest = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
        return fl + 1 / rest
    return Fraction(fl if lo == fl else fl + 1)


def _lambda_candidates(lam_float: float, max_den: int,
                       slack: float) -> list[Fraction]:
    lamf = Fraction(lam_float)
    cands = set()
    for window in (1e-9, 1e-8, 1e-7, 1e-6, 1e-5):
        c = _simplest_between(lamf - Fraction(window), lamf + Fraction(window))
        if c.denominator <= max_den:
            cands.add(c)
    for k in (2, 3, 4, 6):
        d = 10 ** k
        if d <= max_den:
            cands.add(Fraction(math.floor(lam_float * d), d))
    out = [c for c in cands if float(c) <= lam_float + slack]
    return sorted(out, reverse=True)


@dataclass
class _AffineParam:
    """Exact parametrization of {A v = b}: pivots as affine maps of the frees."""

    keys: list[VarKey]
    pivots: dict[int, tuple[Fraction, dict[int, Fraction]]]  # col -> (rhs, coeffs)
    free_cols: list[int]


def _parametrize(sdp: BlockSDP) -> _AffineParam:
    keys = sdp.var_order()
    pos = {k: i for i, k in enumerate(keys)}
    rows = []
    for con in sdp.constraints:
        row = [Fraction(0)] * (len(keys) + 1)
        for k, v in con.coeffs.items():
            row[pos[k]] = exact(v)
        row[-1] = exact(con.rhs)
        rows.append(row)
    basis = RowBasis(len(keys))
    for row in rows:
        if not basis.add(row) and not basis.contains(row):
            raise AssemblyInfeasible("constraint system inconsistent")
    # back substitution to reduced echelon form
    for i in range(len(basis.rows) - 1, -1, -1):
        pc = basis.pivots[i]
        for j in range(i):
            fct = basis.rows[j][pc]
            if fct != 0:
                basis.rows[j] = [exact(x - fct * y)
                                 for x, y in zip(basis.rows[j], basis.rows[i])]
    pivots = {}
    pivot_cols = set(basis.pivots)
    for prow, pc in zip(basis.rows, basis.pivots):
        coeffs = {j: exact(-prow[j]) for j in range(len(keys))
                  if j != pc and prow[j] != 0}
        pivots[pc] = (exact(prow[-1]), coeffs)
    free_cols = [j for j in range(len(keys)) if j not in pivot_cols]
    return _AffineParam(keys, pivots, free_cols)


def _exact_point(param: _AffineParam, free_vals: dict[int, Fraction]
                 ) -> list[Fraction]:
    vals: list[Fraction] = [Fraction(0)] * len(param.keys)
    for j in param.free_cols:
        vals[j] = free_vals.get(j, Fraction(0))
    for pc, (rhs, coeffs) in param.pivots.items():
        acc = rhs
        for j, c in coeffs.items():
            if vals[j] != 0:
                acc = exact(acc + c * vals[j])
        vals[pc] = acc
    return vals


def _blocks_from_values(sdp: BlockSDP, keys, vals) -> list[list[list[Fraction]]]:
    pos = {k: i for i, k in enumerate(keys)}
    out = []
    for bi, blk in enumerate(sdp.blocks):
        mat = [[Fraction(0)] * blk.size for _ in range(blk.size)]
        for r in range(blk.size):
            for c in range(r, blk.size):
                v = vals[pos[("blk", bi, r, c)]]
                mat[r][c] = mat[c][r] = v
        out.append(mat)
    return out


def _lambda_boundary(sdp: BlockSDP, param: _AffineParam,
                     free_vals: dict[int, Fraction],
                     lam_idx: int) -> Fraction | None:
    """Exact largest lambda keeping the blocks PSD, for fixed free parameters.

    Applies when lambda moves exactly one diagonal entry (the usual
    constant-equation pivot): the extreme value solves the exact Schur
    condition E >= v^T M^+ v of that block.
    """
    v0 = dict(free_vals)
    v0[lam_idx] = Fraction(0)
    v1 = dict(free_vals)
    v1[lam_idx] = Fraction(1)
    p0 = _exact_point(param, v0)
    p1 = _exact_point(param, v1)
    b0 = _blocks_from_values(sdp, param.keys, p0)
    b1 = _blocks_from_values(sdp, param.keys, p1)
    moved = []
    for bi in range(len(b0)):
        for r in range(len(b0[bi])):
            for c in range(r, len(b0[bi])):
                delta = b1[bi][r][c] - b0[bi][r][c]
                if delta != 0:
                    moved.append((bi, r, c, delta))
    if len(moved) != 1 or moved[0][1] != moved[0][2] or moved[0][3] >= 0:
        return None
    bi, r, _, beta = moved[0]
    block = b0[bi]
    n = len(block)
    idx = [i for i in range(n) if i != r]
    sub = [[block[i][j] for j in idx] for i in idx]
    if sub and not ldl_psd(sub)[0]:
        return None
    vvec = [block[i][r] for i in idx]
    from .linalg import solve_exact
    z = solve_exact(sub, vvec) if idx else []
    if z is None:
        return None
    bound = sum((vi * zi for vi, zi in zip(vvec, z)), Fraction(0))
    e0 = block[r][r]
    # entry E(lambda) = e0 + beta*lambda must stay >= bound, beta < 0
    return exact((bound - e0) / beta)


def round_certificate(cert: Certificate, f: Polynomial,
                      schedule: Sequence[int] = DEFAULT_SCHEDULE,
                      solver_tol: float = 1e-8,
                      quality: float = 1e-6) -> Certificate:
    """Round a floating certificate to an exact one, verified by construction.

    Free parameters of the exactly-eliminated constraint system are rounded by
    continued fractions under each denominator bound of the schedule; pivot
    entries are recomputed exactly, so the polynomial identity is automatic,
    and each Gram block is tested PSD by rational LDL^T.  When the bound
    variable shifts a single diagonal entry, its exact boundary value for the
    rounded parameters is computed by a rational Schur condition, which snaps
    boundary optima with small rational vertices to their exact value.  A
    candidate is accepted on the first schedule entry whose bound stays within
    ``quality`` of the floating bound and verifies; if none does, the best
    verifying candidate from the whole schedule is returned.
    """
    if cert.exact:
        return cert
    sdp: BlockSDP = cert.diagnostics.get("sdp")
    if sdp is None:
        raise RoundingError("certificate carries no assembly to round against")
    maximize = cert.objective == "maximize-lambda"
    param = _parametrize(sdp)
    pos = {k: i for i, k in enumerate(param.keys)}
    lam_idx = pos.get(("free", "lambda"))
    # float values of all variables, to seed the free parameters
    float_vals = np.zeros(len(param.keys))
    for bi, blk in enumerate(sdp.blocks):
        src = None
        if cert.mode == "plain":
            src = np.asarray(cert.gram)
        else:
            for cb in cert.blocks:
                if cb.label == blk.name:
                    src = np.asarray(cb.gram)
        if src is None:
            src = np.zeros((blk.size, blk.size))
        for r in range(blk.size):
            for c in range(r, blk.size):
                float_vals[pos[("blk", bi, r, c)]] = src[r, c]
    if maximize and lam_idx is not None:
        float_vals[lam_idx] = float(cert.lam)
    lam_float = float(cert.lam)
    slack = 10 * solver_tol * (1 + abs(lam_float))
    bound_mode = maximize and lam_idx is not None and lam_idx in param.free_cols
    fallback: Certificate | None = None

    def attempt(lam_hat: Fraction, free_vals: dict[int, Fraction]):
        vals = _exact_point(param, free_vals)
        mats = _blocks_from_values(sdp, param.keys, vals)
        if not all(ldl_psd(m)[0] for m in mats):
            return None
        lam_exact = vals[lam_idx] if lam_idx is not None else lam_hat
        out = _exact_certificate(cert, sdp, mats, lam_exact)
        okay, _ = verify_certificate(out, f)
        return out if okay else None

    for max_den in schedule:
        free_vals: dict[int, Fraction] = {}
        for j in param.free_cols:
            if j != lam_idx:
                free_vals[j] = Fraction(float(float_vals[j])).limit_denominator(max_den)
        if bound_mode:
            cands: list[Fraction] = []
            tight = _lambda_boundary(sdp, param, free_vals, lam_idx)
            if tight is not None:
                cands.append(tight)
                lo = Fraction(lam_float) - Fraction(1, 10 ** 3)
                if lo < tight:
                    cands.append(_simplest_between(lo, tight))
            cands.extend(c for c in _lambda_candidates(lam_float, max_den, slack))
            seen = set()
            ordered = []
            for c in sorted(cands, reverse=True):
                if c not in seen and (tight is None or c <= tight):
                    seen.add(c)
                    ordered.append(c)
            for lam_hat in ordered:
                fv = dict(free_vals)
                fv[lam_idx] = lam_hat
                out = attempt(lam_hat, fv)
                if out is not None:
                    if float(out.lam) >= lam_float - quality:
                        return out
                    if fallback is None or out.lam > fallback.lam:
                        fallback = out
                    break  # lower candidates at this denominator are worse
        else:
            lam_hat = cert.lam if isinstance(cert.lam, Fraction) else \
                Fraction(cert.lam).limit_denominator(max_den)
            fv = dict(free_vals)
            if lam_idx is not None and lam_idx in param.free_cols:
                fv[lam_idx] = lam_hat
            out = attempt(lam_hat, fv)
            if out is not None:
                return out
    if fallback is not None:
        return fallback
    raise RoundingError("no schedule entry produced an exactly verifying "
                        "certificate; lambda sits at the boundary - retry with "
                        "lambda - epsilon or larger denominators")


def _exact_certificate(cert: Certificate, sdp: BlockSDP, mats,
                       lam: Fraction) -> Certificate:
    if cert.mode == "plain":
        return Certificate("plain", cert.group, cert.var_names, lam, exact=True,
                           monomials=cert.monomials, gram=mats[0],
                           objective=cert.objective,
                           diagnostics=dict(cert.diagnostics))
    blocks = []
    name_index = {b.name: i for i, b in enumerate(sdp.blocks)}
    for cb in cert.blocks:
        blocks.append(CertBlock(cb.label, cb.rows, mats[name_index[cb.label]],
                                cb.pi))
    return Certificate("invariant", cert.group, cert.var_names, lam, exact=True,
                       pres=cert.pres, blocks=blocks, objective=cert.objective,
                       diagnostics=dict(cert.diagnostics))


# -- exact SOS replay (Gram factorization to explicit squares) -----------------------


def sos_squares_from_gram(gram, monomials, nvars: int) -> list[tuple[Fraction, Polynomial]]:
    """Exact (weight, polynomial) pairs with sum w_i p_i^2 = Y^T Q Y."""
    from .linalg import ldl_decomposition
    L, D, perm = ldl_decomposition(gram)
    out = []
    for k, d in enumerate(D):
        if d == 0:
            continue
        poly = Polynomial.zero(nvars)
        for i, mono in enumerate(monomials):
            if L[i][k] != 0:
                poly = poly + Polynomial.monomial(nvars, mono, L[i][k])
        out.append((exact(d), poly))
    return out
