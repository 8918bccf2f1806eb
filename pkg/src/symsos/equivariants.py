"""Free-module bases of equivariant polynomial maps and their Gram matrices.

For each irrep the catalog ships module generators b_1..b_r (polynomial
column vectors) over the primary-invariant ring, verified against the group
generators.  The compressed matrix Pi has entries <b_k, b_l> rewritten in the
fundamental invariants; it is pointwise PSD on real orbits because it is a
Gram matrix of real vectors.

Component vectors either transform by the irrep matrices themselves (D4, C4,
S3 data as classically printed, with quadratic-extension coefficients) or are
embedded in a coordinate-permutation representation (symmetric-group standard
and sign-twisted modules), which leaves every inner product untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import GroupAction, IrrepCatalog, RealIrrep
from .invariants import (InvariantPoly, InvariantPresentation, rewrite_in_invariants,
                         theta_monomials, weighted_degree)
from .linalg import Matrix, RowBasis
from .poly import Monomial, Polynomial, monomial_vector, parse_polynomial, \
    substitute_linear
from .scalars import Quad, exact


@dataclass
class EquivariantBasis:
    """Module generators for one irrep; components may be an embedded rep."""

    irrep_label: str
    nvars: int
    vectors: list[tuple[Polynomial, ...]]
    comp_images: list[Matrix]        # component transform per group generator
    group_generators: list[Matrix]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    @property
    def degrees(self) -> list[int]:
        return [max(p.degree() for p in v if not p.is_zero()) for v in self.vectors]

    def verify(self) -> None:
        """b(theta(g) x) = M_g b(x) exactly, for every generator and vector."""
        for g, m in zip(self.group_generators, self.comp_images):
            for b in self.vectors:
                lhs = [substitute_linear(p, g) for p in b]
                rhs = [sum((Polynomial.constant(self.nvars, m[r][c]) * b[c]
                            for c in range(len(b))), Polynomial.zero(self.nvars))
                       for r in range(len(b))]
                if lhs != rhs:
                    raise ValueError(f"equivariance fails for {self.irrep_label}")


@dataclass
class PiMatrix:
    """Symmetric r x r matrix of <b_k, b_l> written in the invariants."""

    irrep_label: str
    entries: list[list[InvariantPoly]]

    @property
    def rank(self) -> int:
        return len(self.entries)

    def diagonal_degrees(self, pres: InvariantPresentation) -> list[int]:
        return [weighted_degree(self.entries[k][k], pres) for k in range(self.rank)]


# discriminant of the monic quintic in elementary symmetric coordinates:
# the Gram entry of the alternating module generator for five letters.
# Recomputing it through the graded rewrite takes a minute, so the catalog
# value is frozen; a slow test re-derives it from scratch.
_S5_DISCRIMINANT = {
    (0, 0, 0, 0, 4): 3125, (0, 0, 0, 5, 0): 256, (0, 0, 1, 3, 1): -1600,
    (0, 0, 2, 1, 2): 2250, (0, 0, 4, 2, 0): -27, (0, 0, 5, 0, 1): 108,
    (0, 1, 0, 2, 2): 2000, (0, 1, 1, 0, 3): -3750, (0, 1, 2, 3, 0): 144,
    (0, 1, 3, 1, 1): -630, (0, 2, 0, 4, 0): -128, (0, 2, 1, 2, 1): 560,
    (0, 2, 2, 0, 2): 825, (0, 3, 0, 1, 2): -900, (0, 3, 2, 2, 0): -4,
    (0, 3, 3, 0, 1): 16, (0, 4, 0, 3, 0): 16, (0, 4, 1, 1, 1): -72,
    (0, 5, 0, 0, 2): 108, (1, 0, 0, 1, 3): -2500, (1, 0, 1, 4, 0): -192,
    (1, 0, 2, 2, 1): 1020, (1, 0, 3, 0, 2): -900, (1, 1, 0, 3, 1): 160,
    (1, 1, 1, 1, 2): -2050, (1, 1, 3, 2, 0): 18, (1, 1, 4, 0, 1): -72,
    (1, 2, 0, 0, 3): 2250, (1, 2, 1, 3, 0): -80, (1, 2, 2, 1, 1): 356,
    (1, 3, 0, 2, 1): 24, (1, 3, 1, 0, 2): -630, (2, 0, 0, 2, 2): -50,
    (2, 0, 1, 0, 3): 2000, (2, 0, 2, 3, 0): -6, (2, 0, 3, 1, 1): 24,
    (2, 1, 0, 4, 0): 144, (2, 1, 1, 2, 1): -746, (2, 1, 2, 0, 2): 560,
    (2, 2, 0, 1, 2): 1020, (2, 2, 2, 2, 0): 1, (2, 2, 3, 0, 1): -4,
    (2, 3, 0, 3, 0): -4, (2, 3, 1, 1, 1): 18, (2, 4, 0, 0, 2): -27,
    (3, 0, 0, 3, 1): -36, (3, 0, 1, 1, 2): 160, (3, 0, 3, 2, 0): -4,
    (3, 0, 4, 0, 1): 16, (3, 1, 0, 0, 3): -1600, (3, 1, 1, 3, 0): 18,
    (3, 1, 2, 1, 1): -80, (3, 2, 0, 2, 1): -6, (3, 2, 1, 0, 2): 144,
    (4, 0, 0, 4, 0): -27, (4, 0, 1, 2, 1): 144, (4, 0, 2, 0, 2): -128,
    (4, 1, 0, 1, 2): -192, (5, 0, 0, 0, 3): 256,
}


def pi_matrix(basis: EquivariantBasis, pres: InvariantPresentation,
              use_catalog_shortcuts: bool = True) -> PiMatrix:
    """Gram matrix of the module generators, rewritten in (theta, eta)."""
    r = basis.rank
    if use_catalog_shortcuts and pres.name == "symmetric:5" and \
            basis.irrep_label in ("sign", "theta7") and r == 1:
        disc = Polynomial(5, {m: Fraction(c) for m, c in _S5_DISCRIMINANT.items()})
        return PiMatrix(basis.irrep_label, [[InvariantPoly(5, {0: disc})]])
    entries: list[list[InvariantPoly]] = [[None] * r for _ in range(r)]
    for k in range(r):
        for l in range(k, r):
            prod = Polynomial.zero(basis.nvars)
            for pk, pl in zip(basis.vectors[k], basis.vectors[l]):
                prod = prod + pk * pl
            if not prod.is_rational():
                raise ValueError("inner product of equivariants must be rational; "
                                 "basis data is inconsistent")
            ip = rewrite_in_invariants(prod, pres)
            entries[k][l] = entries[l][k] = ip
    return PiMatrix(basis.irrep_label, entries)


def monomial_envelope(pres: InvariantPresentation, pi: PiMatrix,
                      target_degree: int) -> list[list[Monomial]]:
    """Per-row theta-monomials bounding the Gram support of the SOS factor.

    Row k holds all theta-monomials of weighted degree at most
    floor((target - deg pi_kk)/2); rows with a negative budget are empty, and
    a block whose rows are all empty cannot contribute at this degree.
    """
    degs = pres.theta_degrees
    rows = []
    for k, dkk in enumerate(pi.diagonal_degrees(pres)):
        budget = (target_degree - dkk) // 2 if target_degree >= dkk else -1
        rows.append(theta_monomials(degs, budget) if budget >= 0 else [])
    return rows


# -- generic exact generator search (embedded component representations) ----------


def _homogeneous_action(action: GroupAction, d: int):
    """Per element: degree-d monomial index -> (sign, image index)."""
    basis = monomial_vector(action.n, d, homogeneous=True)
    index = basis.index()
    maps = []
    for e in action.elements:
        sp = e.sp
        out = []
        for mono in basis.entries:
            new = tuple(mono[sp.perm[l]] for l in range(action.n))
            sign = 1
            for l in range(action.n):
                if new[l] % 2 and sp.signs[l] < 0:
                    sign = -sign
            out.append((sign, index[new]))
        maps.append(out)
    return basis, maps


def find_equivariant_generators(action: GroupAction, comp_rep: RealIrrep,
                                thetas: list[Polynomial], degrees: list[int],
                                expected: dict[int, int] | None = None
                                ) -> list[tuple[Polynomial, ...]]:
    """Module generators of maps b with b(theta(g)x) = M_g b(x), degree by degree.

    Works for exact rational component representations over signed-permutation
    actions.  At each degree the Reynolds average projects coordinate vectors
    onto the equivariant space; generators are the directions independent of
    the span of theta-multiples of lower-degree generators.
    """
    c = comp_rep.dim
    inv = action.inverse_table
    theta_degs = [p.degree() for p in thetas]
    gens: list[tuple[Polynomial, ...]] = []
    gens_with_degree: list[tuple[int, tuple[Polynomial, ...]]] = []
    for d in degrees:
        basis, maps = _homogeneous_action(action, d)
        h = len(basis)
        ncols = c * h
        index = basis.index()

        def project(comp: int, mono_idx: int) -> list[Fraction]:
            row = [Fraction(0)] * ncols
            for g in range(action.order):
                minv = comp_rep.matrix(inv[g])
                sign, img = maps[g][mono_idx]
                for r in range(c):
                    val = minv[r][comp]
                    if val != 0:
                        row[r * h + img] += Fraction(sign) * val
            return [exact(v / action.order) for v in row]

        # span of module products theta^alpha * lower-degree generator
        module = RowBasis(ncols)
        for gd, gvec in gens_with_degree:
            if gd >= d:
                continue
            for alpha in theta_monomials(theta_degs, d - gd, exactly=d - gd):
                mult = Polynomial.constant(action.n, 1)
                for i, e in enumerate(alpha):
                    for _ in range(e):
                        mult = mult * thetas[i]
                row = [Fraction(0)] * ncols
                for comp in range(c):
                    prod = mult * gvec[comp]
                    for m, coef in prod.terms.items():
                        row[comp * h + index[m]] = coef
                module.add(row)
        space = RowBasis(ncols)
        found = 0
        target = expected.get(d) if expected else None
        for mono_idx in range(h):
            for comp in range(c):
                row = project(comp, mono_idx)
                if any(v != 0 for v in row) and space.add(row) and \
                        not module.contains(row):
                    module.add(row)
                    vec = tuple(Polynomial(action.n,
                                           {basis.entries[i]: row[c2 * h + i]
                                            for i in range(h) if row[c2 * h + i] != 0})
                                for c2 in range(c))
                    gens_with_degree.append((d, vec))
                    gens.append(vec)
                    found += 1
                if target is not None and found == target:
                    break
            if target is not None and found == target:
                break
    return gens


# -- catalog data ------------------------------------------------------------------


def _poly(text: str, names) -> Polynomial:
    return parse_polynomial(text, names)


def _power_sum_centered(n: int, k: int) -> tuple[Polynomial, ...]:
    """(x_i^k - p_k/n)_i, the embedded standard-component equivariant."""
    pk = sum((Polynomial.monomial(n, tuple(k if j == i else 0 for j in range(n)))
              for i in range(n)), Polynomial.zero(n))
    return tuple(Polynomial.monomial(n, tuple(k if j == i else 0 for j in range(n)))
                 - pk.scale(Fraction(1, n)) for i in range(n))


def _vandermonde(n: int) -> Polynomial:
    out = Polynomial.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (Polynomial.variable(n, i) - Polynomial.variable(n, j))
    return out


def _perm_generator_matrices(n: int) -> list[Matrix]:
    gens = []
    for k in range(n - 1):
        g = [[Fraction(1) if (r, c) in ((k, k + 1), (k + 1, k)) else
              (Fraction(1) if r == c and r not in (k, k + 1) else Fraction(0))
              for c in range(n)] for r in range(n)]
        gens.append(g)
    return gens


def _symmetric_bases(n: int, catalog: IrrepCatalog | None) -> dict[str, EquivariantBasis]:
    """Trivial, embedded standard, sign modules; S4 additionally gets the
    two-dimensional and sign-twisted-standard modules."""
    gens = _perm_generator_matrices(n)
    one = Polynomial.constant(n, 1)
    out: dict[str, EquivariantBasis] = {}
    ident1 = [((Fraction(1),),) for _ in gens]
    out["trivial"] = EquivariantBasis("trivial", n, [(one,)],
                                      [[[Fraction(1)]] for _ in gens], gens)
    out["standard"] = EquivariantBasis(
        "standard", n, [_power_sum_centered(n, k) for k in range(1, n)],
        gens, gens)
    out["sign"] = EquivariantBasis("sign", n, [(_vandermonde(n),)],
                                   [[[Fraction(-1)]] for _ in gens], gens)
    if n == 3:
        # the planar standard module in its classical normalization, matching
        # the cataloged two-dimensional irrep matrices
        names = ["x", "y", "z"]
        r2h = Quad.root(2, Fraction(1, 2))
        r6h = Quad.root(6, Fraction(1, 2))
        b1 = ((_poly("2*x - y - z", names)).scale(r2h),
              (_poly("y - z", names)).scale(r6h))
        b2 = ((_poly("2*y*z - z*x - x*y", names)).scale(r2h),
              (_poly("z*x - x*y", names)).scale(r6h))
        a, bq = Fraction(1, 2), Quad.root(3, Fraction(1, 2))
        m12 = [[-a, bq], [bq, a]]
        m23 = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]
        out["standard"] = EquivariantBasis("standard", 3, [b1, b2],
                                           [m12, m23], gens)
    if n == 4 and catalog is not None:
        names = ["x1", "x2", "x3", "x4"]
        u1 = _poly("x1*x2 + x3*x4", names)
        u2 = _poly("x1*x3 + x2*x4", names)
        u3 = _poly("x1*x4 + x2*x3", names)
        r2h = Quad.root(2, Fraction(1, 2))
        r6h = Quad.root(6, Fraction(1, 2))
        b1 = ((u1.scale(2) - u2 - u3).scale(r2h), (u2 - u3).scale(r6h))
        b2 = (((u2 * u3).scale(2) - u3 * u1 - u1 * u2).scale(r2h),
              (u3 * u1 - u1 * u2).scale(r6h))
        a, bq = Fraction(1, 2), Quad.root(3, Fraction(1, 2))
        m_u1u2 = [[-a, bq], [bq, a]]          # swaps u1,u2
        m_u2u3 = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]
        # generator images: (12)->(u2 u3), (23)->(u1 u2), (34)->(u2 u3)
        out["two_dim"] = EquivariantBasis("two_dim", 4, [b1, b2],
                                          [m_u2u3, m_u1u2, m_u2u3], gens)
        # sign-twisted standard: components transform by -P(g) on transpositions
        twisted_images = [[[Fraction(-v) for v in row] for row in g] for g in gens]
        twisted = RealIrrep("perm_sign", 4, "absolutely-real", catalog.action,
                            [tuple(tuple(v for v in row) for row in m)
                             for m in twisted_images])
        from .invariants import elementary_symmetric
        vecs = find_equivariant_generators(catalog.action, twisted,
                                           elementary_symmetric(4), [3, 4, 5],
                                           expected={3: 1, 4: 1, 5: 1})
        if len(vecs) != 3:
            raise ValueError("sign-twisted standard module search failed")
        out["twisted_standard"] = EquivariantBasis("twisted_standard", 4, vecs,
                                                   twisted_images, gens)
    return out


_SYM_IRREP_MODULE = {
    # catalog irrep label -> module key, per symmetric group order
    2: {"theta1": "trivial", "theta2": "standard"},
    3: {"theta1": "trivial", "theta2": "sign", "theta3": "standard"},
    4: {"theta1": "trivial", "theta2": "standard", "theta3": "two_dim",
        "theta4": "twisted_standard", "theta5": "sign"},
    5: {"theta1": "trivial", "theta2": "standard", "theta7": "sign"},
}


class MissingEquivariantData(KeyError):
    pass


def render_equivariant_basis(basis: EquivariantBasis,
                             variables: list[str]) -> str:
    """Text form mirroring the presentation format; rational data only."""
    from .poly import render_polynomial
    lines = [f"equivariant-basis irrep={basis.irrep_label} "
             f"components={len(basis.vectors[0])}"]
    for vec in basis.vectors:
        lines.append("vector " + " ; ".join(render_polynomial(p, variables)
                                            for p in vec))
    for m in basis.comp_images:
        lines.append(f"image {len(m)}")
        for row in m:
            lines.append(" ".join(str(Fraction(v)) for v in row))
    lines.append("end")
    return "\n".join(lines)


def load_equivariant_basis(text: str, variables: list[str],
                           group_generators: list[Matrix]) -> EquivariantBasis:
    """Parse a user-supplied module basis; equivariance is always re-verified.

    Format: a header line, one "vector p1 ; p2 ; ..." line per module
    generator, then per group generator an "image <c>" header followed by c
    rows of rationals.
    """
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    header = dict(kv.split("=") for kv in lines[0].split()[1:])
    ncomp = int(header["components"])
    vectors = []
    images = []
    i = 1
    while i < len(lines) and lines[i].startswith("vector"):
        parts = lines[i][7:].split(";")
        if len(parts) != ncomp:
            raise ValueError(f"vector needs {ncomp} components")
        vectors.append(tuple(parse_polynomial(p.strip(), variables)
                             for p in parts))
        i += 1
    while i < len(lines) and lines[i].startswith("image"):
        size = int(lines[i].split()[1])
        if size != ncomp:
            raise ValueError("image size must match the component count")
        rows = [[Fraction(tok) for tok in lines[i + 1 + r].split()]
                for r in range(size)]
        images.append(rows)
        i += 1 + size
    if i >= len(lines) or lines[i] != "end":
        raise ValueError("missing 'end'")
    if len(images) != len(group_generators):
        raise ValueError("need one component image per group generator")
    basis = EquivariantBasis(header["irrep"], len(variables), vectors, images,
                             group_generators)
    basis.verify()
    return basis


def equivariant_catalog(catalog: IrrepCatalog, pres: InvariantPresentation
                        ) -> tuple[dict[str, EquivariantBasis], list[str]]:
    """Verified module bases per irrep label, plus labels with no shipped data.

    The second return value is nonempty only for the symmetric group on five
    letters, whose modules beyond trivial/standard/sign are not cataloged.
    """
    family = catalog.name.split(":")[0]
    param = int(catalog.name.split(":")[1]) if ":" in catalog.name else 0
    missing: list[str] = []
    out: dict[str, EquivariantBasis] = {}
    if family == "trivial":
        # the whole ring is the invariant ring; the module basis is eta = (1)
        n = catalog.action.n
        out["theta1"] = EquivariantBasis("theta1", n, [(Polynomial.constant(n, 1),)],
                                         [[[Fraction(1)]]], [catalog.action.matrix(0)])
    elif family == "c2n":
        n = param
        gens = [catalog.action.matrix(g) for g in catalog.action.generators]
        for irrep in catalog.irreps:
            subset = irrep.molien_meta[2]
            mono = tuple(1 if i in subset else 0 for i in range(n))
            vec = (Polynomial.monomial(n, mono),)
            images = [[[irrep.matrix(g)[0][0]]] for g in catalog.action.generators]
            out[irrep.label] = EquivariantBasis(irrep.label, n, [vec], images, gens)
    elif family == "dihedral" and param == 4:
        names = ["x", "y"]
        gens = [catalog.action.matrix(g) for g in catalog.action.generators]
        data = {
            "theta1": [( _poly("1", names),)],
            "theta2": [(_poly("x^3*y - x*y^3", names),)],
            "theta3": [(_poly("x*y", names),)],
            "theta4": [(_poly("x^2 - y^2", names),)],
            "theta5": [(_poly("x", names), _poly("y", names)),
                       (_poly("x^3", names), _poly("y^3", names))],
        }
        for irrep in catalog.irreps:
            vecs = data[irrep.label]
            images = [irrep.matrix(g) for g in catalog.action.generators]
            out[irrep.label] = EquivariantBasis(irrep.label, 2, vecs, images, gens)
    elif family == "cyclic" and param == 4:
        names = ["x", "y"]
        gens = [catalog.action.matrix(g) for g in catalog.action.generators]
        data = {
            "theta1": [(_poly("1", names),), (_poly("x^3*y - x*y^3", names),)],
            "theta2": [(_poly("x*y", names),), (_poly("x^2 - y^2", names),)],
            "theta3": [(_poly("x", names), _poly("y", names)),
                       (_poly("x^3", names), _poly("y^3", names))],
        }
        for irrep in catalog.irreps:
            vecs = data[irrep.label]
            images = [irrep.matrix(g) for g in catalog.action.generators]
            out[irrep.label] = EquivariantBasis(irrep.label, 2, vecs, images, gens)
    elif family == "symmetric":
        import dataclasses
        modules = _symmetric_bases(param, catalog)
        table = _SYM_IRREP_MODULE[param]
        missing = [r.label for r in catalog.irreps if r.label not in table]
        for irrep in catalog.irreps:
            if irrep.label in table:
                out[irrep.label] = dataclasses.replace(modules[table[irrep.label]],
                                                       irrep_label=irrep.label)
    else:
        raise MissingEquivariantData(f"no equivariant catalog for {catalog.name}")
    for basis in out.values():
        basis.verify()
    return out, missing
