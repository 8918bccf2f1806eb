"""Primary/secondary invariant presentations and exact rewriting.

Invariant polynomials are rewritten as f = sum_j eta_j * f_j(theta) by
solving one exact linear system per graded component: the columns are the
expansions of all products eta_j * theta^alpha of matching degree, and the
Hironaka decomposition guarantees a unique solution whenever the input is
really invariant.  No Groebner machinery is needed at these degrees.

Abstract symbols are rendered t1..ts for the primary and h1..ht for the
secondary invariants (h1 = 1 is implicit and never printed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import Matrix, rank_exact, solve_exact
from .poly import Polynomial, parse_polynomial, render_polynomial, substitute_linear
from .scalars import Scalar


def elementary_symmetric(n: int) -> list[Polynomial]:
    """e_1 .. e_n in n variables."""
    polys = [Polynomial.zero(n) for _ in range(n + 1)]
    polys[0] = Polynomial.constant(n, 1)
    for i in range(n):
        x = Polynomial.variable(n, i)
        for k in range(min(i + 1, n), 0, -1):
            polys[k] = polys[k] + polys[k - 1] * x
    return polys[1:]


@dataclass
class InvariantPresentation:
    """Hironaka data: algebraically independent theta, module basis eta."""

    nvars: int
    theta: list[Polynomial]
    eta: list[Polynomial]                 # eta[0] is the constant 1
    syzygies: list[Polynomial] = field(default_factory=list)  # in symbol variables
    generators: list[Matrix] = field(default_factory=list)    # group generators
    name: str = ""
    # canonical orbit representative of a monomial, when one is cheap to
    # compute; rewriting then matches coefficients on representatives only
    orbit_representative: object = None

    def __post_init__(self):
        if not self.eta or self.eta[0] != Polynomial.constant(self.nvars, 1):
            raise ValueError("eta must start with the constant 1")

    @property
    def theta_degrees(self) -> list[int]:
        return [p.degree() for p in self.theta]

    @property
    def eta_degrees(self) -> list[int]:
        return [0] + [p.degree() for p in self.eta[1:]]

    def symbol_names(self) -> list[str]:
        s = len(self.theta)
        return [f"t{i + 1}" for i in range(s)] + \
            [f"h{j + 2}" for j in range(len(self.eta) - 1)]

    def verify(self) -> None:
        """Invariance of every generator and exactness of every syzygy."""
        for g in self.generators:
            for p in self.theta + self.eta:
                if substitute_linear(p, g) != p:
                    raise ValueError("presentation polynomial is not invariant")
        for s in self.syzygies:
            if not self.expand_symbol_poly(s).is_zero():
                raise ValueError("syzygy does not expand to zero")

    def expand_symbol_poly(self, sp: Polynomial) -> Polynomial:
        """Expand a polynomial in (t1..ts, h2..ht) back into the x variables."""
        s, t = len(self.theta), len(self.eta)
        if sp.nvars != s + t - 1:
            raise ValueError("symbol polynomial has wrong variable count")
        values = self.theta + self.eta[1:]
        powers: dict[tuple[int, int], Polynomial] = {}

        def pw(i: int, e: int) -> Polynomial:
            if e == 0:
                return Polynomial.constant(self.nvars, 1)
            if (i, e) not in powers:
                powers[(i, e)] = pw(i, e - 1) * values[i]
            return powers[(i, e)]

        out = Polynomial.zero(self.nvars)
        for m, c in sp.terms.items():
            term = Polynomial.constant(self.nvars, c)
            for i, e in enumerate(m):
                if e:
                    term = term * pw(i, e)
            out = out + term
        return out


@dataclass
class InvariantPoly:
    """f = sum_j eta_j * parts[j](theta), each part a polynomial in s symbols."""

    s: int                       # number of primary invariants
    parts: dict[int, Polynomial]  # eta index -> polynomial in the theta symbols

    def part(self, j: int) -> Polynomial:
        return self.parts.get(j, Polynomial.zero(self.s))

    def __eq__(self, other):
        if not isinstance(other, InvariantPoly):
            return NotImplemented
        keys = set(self.parts) | set(other.parts)
        return self.s == other.s and all(self.part(j) == other.part(j) for j in keys)

    def constant_offset(self, delta: Scalar) -> "InvariantPoly":
        parts = dict(self.parts)
        parts[0] = self.part(0) + Polynomial.constant(self.s, delta)
        return InvariantPoly(self.s, {j: p for j, p in parts.items() if not p.is_zero()}
                             or {0: Polynomial.zero(self.s)})


def theta_monomials(degrees: Sequence[int], budget: int,
                    exactly: int | None = None) -> list[tuple[int, ...]]:
    """Exponent tuples alpha with sum(alpha_i * degrees_i) <= budget (or == exactly)."""
    target = exactly if exactly is not None else budget
    out = []

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == len(degrees):
            if exactly is None or remaining == 0:
                out.append(prefix)
            return
        d = degrees[i]
        for e in range(remaining // d + 1 if d > 0 else 1):
            rec(i + 1, remaining - e * d, prefix + (e,))

    if target < 0:
        return []
    rec(0, target, ())
    return sorted(out, key=lambda a: (sum(e * d for e, d in zip(a, degrees)), a))


def weighted_degree(f: InvariantPoly, pres: InvariantPresentation) -> int:
    """Max over terms of sum_i alpha_i deg(theta_i) + deg(eta_j); 0 for constants."""
    degs = pres.theta_degrees
    etadegs = pres.eta_degrees
    best = 0
    for j, part in f.parts.items():
        for m in part.terms:
            best = max(best, sum(e * d for e, d in zip(m, degs)) + etadegs[j])
    return best


def expand_invariants(f: InvariantPoly, pres: InvariantPresentation) -> Polynomial:
    """Full expansion of sum_j eta_j f_j(theta) in the original variables."""
    if f.s != len(pres.theta):
        raise ValueError("symbol count mismatch with the presentation")
    powers: dict[tuple[int, int], Polynomial] = {}

    def pw(i: int, e: int) -> Polynomial:
        if e == 0:
            return Polynomial.constant(pres.nvars, 1)
        if (i, e) not in powers:
            powers[(i, e)] = pw(i, e - 1) * pres.theta[i]
        return powers[(i, e)]

    out = Polynomial.zero(pres.nvars)
    for j, part in f.parts.items():
        acc = Polynomial.zero(pres.nvars)
        for m, c in part.terms.items():
            term = Polynomial.constant(pres.nvars, c)
            for i, e in enumerate(m):
                if e:
                    term = term * pw(i, e)
            acc = acc + term
        out = out + pres.eta[j] * acc
    return out


class NotInvariantError(ValueError):
    pass


class RewriteError(ValueError):
    pass


def verify_invariant(p: Polynomial, generators: Iterable[Matrix]) -> bool:
    return all(substitute_linear(p, g) == p for g in generators)


def rewrite_in_invariants(p: Polynomial, pres: InvariantPresentation,
                          check_invariance: bool = True) -> InvariantPoly:
    """Unique representation of an invariant p as sum_j eta_j f_j(theta).

    Solved degree by degree: candidates are all products eta_j * theta^alpha
    of the right total degree, compared coefficientwise against p.  Raises
    NotInvariantError / RewriteError accordingly.
    """
    if p.nvars != pres.nvars:
        raise ValueError("variable count mismatch")
    if check_invariance and pres.generators and not verify_invariant(p, pres.generators):
        raise NotInvariantError("polynomial is not invariant under the group")
    s = len(pres.theta)
    degs = pres.theta_degrees
    etadegs = pres.eta_degrees
    parts: dict[int, dict] = {}
    cache: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def candidate(j: int, alpha: tuple[int, ...]) -> Polynomial:
        key = (j, alpha)
        if key not in cache:
            for i in range(s - 1, -1, -1):
                if alpha[i]:
                    prev = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
                    cache[key] = candidate(j, prev) * pres.theta[i]
                    break
            else:
                cache[key] = pres.eta[j]
        return cache[key]

    for d in p.degrees_present():
        comp = p.graded_part(d)
        cands: list[tuple[int, tuple[int, ...]]] = []
        for j in range(len(pres.eta)):
            rem = d - etadegs[j]
            if rem < 0:
                continue
            cands.extend((j, a) for a in theta_monomials(degs, rem, exactly=rem))
        if not cands:
            raise RewriteError(f"no invariant products of degree {d} exist")
        expanded = [candidate(j, a) for j, a in cands]
        monos = sorted({m for q in expanded for m in q.terms} | set(comp.terms))
        if pres.orbit_representative is not None:
            # all rows are invariant, so matching the coefficients of one
            # representative per orbit decides the whole identity
            rep = pres.orbit_representative
            monos = [m for m in monos if rep(m) == m]
        a_rows = [[q.coefficient(m) for q in expanded] for m in monos]
        b = [comp.coefficient(m) for m in monos]
        sol = solve_exact(a_rows, b)
        if sol is None:
            raise RewriteError(f"degree-{d} component is outside the span of the "
                               "presentation (incomplete presentation?)")
        if rank_exact(a_rows) < len(cands):
            raise RewriteError("rewrite is not unique; presentation is malformed")
        for (j, alpha), c in zip(cands, sol):
            if c != 0:
                parts.setdefault(j, {})[alpha] = c
    out_parts = {j: Polynomial(s, terms) for j, terms in parts.items()}
    if not out_parts:
        out_parts = {0: Polynomial.zero(s)}
    return InvariantPoly(s, out_parts)


# -- the presentation catalog --------------------------------------------------------


def symmetric_presentation(n: int) -> InvariantPresentation:
    """theta = elementary symmetric polynomials, no secondary invariants."""
    gens = []
    for k in range(n - 1):
        g = [[Fraction(1) if (r, c) in ((k, k + 1), (k + 1, k)) else
              (Fraction(1) if r == c and r not in (k, k + 1) else Fraction(0))
              for c in range(n)] for r in range(n)]
        gens.append(g)
    return InvariantPresentation(n, elementary_symmetric(n),
                                 [Polynomial.constant(n, 1)], [], gens,
                                 name=f"symmetric:{n}",
                                 orbit_representative=lambda m: tuple(
                                     sorted(m, reverse=True)))


def c2n_presentation(n: int) -> InvariantPresentation:
    theta = [Polynomial.monomial(n, tuple(2 if j == i else 0 for j in range(n)))
             for i in range(n)]
    gens = []
    for i in range(n):
        g = [[Fraction(-1) if r == c == i else (Fraction(1) if r == c else Fraction(0))
              for c in range(n)] for r in range(n)]
        gens.append(g)
    return InvariantPresentation(n, theta, [Polynomial.constant(n, 1)], [], gens,
                                 name=f"c2n:{n}")


def dihedral4_presentation() -> InvariantPresentation:
    theta1 = parse_polynomial("x^2+y^2", ["x", "y"])
    theta2 = parse_polynomial("x^2*y^2", ["x", "y"])
    d = [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]
    s = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    return InvariantPresentation(2, [theta1, theta2],
                                 [Polynomial.constant(2, 1)], [], [d, s],
                                 name="dihedral:4")


def cyclic4_presentation() -> InvariantPresentation:
    theta1 = parse_polynomial("x^2+y^2", ["x", "y"])
    theta2 = parse_polynomial("x^2*y^2", ["x", "y"])
    eta2 = parse_polynomial("x^3*y - x*y^3", ["x", "y"])
    # eta2^2 + 4 theta2^2 - theta1^2 theta2 = 0 in the symbols (t1, t2, h2)
    syzygy = parse_polynomial("h2^2 + 4*t2^2 - t1^2*t2", ["t1", "t2", "h2"])
    d = [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]
    return InvariantPresentation(2, [theta1, theta2],
                                 [Polynomial.constant(2, 1), eta2], [syzygy], [d],
                                 name="cyclic:4")


def presentation(spec) -> InvariantPresentation:
    """Presentation for a catalog or "family:param" spec string."""
    name = spec if isinstance(spec, str) else spec.name
    parts = name.split(":")
    family = parts[0]
    pres = None
    if family == "symmetric":
        pres = symmetric_presentation(int(parts[1]))
    elif family == "c2n":
        pres = c2n_presentation(int(parts[1]))
    elif family == "dihedral" and int(parts[1]) == 4:
        pres = dihedral4_presentation()
    elif family == "cyclic" and int(parts[1]) == 4:
        pres = cyclic4_presentation()
    elif family == "trivial":
        n = int(parts[1])
        pres = InvariantPresentation(
            n, [Polynomial.variable(n, i) for i in range(n)],
            [Polynomial.constant(n, 1)], [], [], name=name)
    if pres is None:
        raise KeyError(f"no invariant presentation cataloged for {name!r}; "
                       "supply one in the presentation file format")
    pres.verify()
    return pres


# -- text format -----------------------------------------------------------------


def render_presentation(pres: InvariantPresentation, variables: Sequence[str]) -> str:
    lines = [f"presentation nvars={pres.nvars}"]
    lines += [f"theta {render_polynomial(p, variables)}" for p in pres.theta]
    lines += [f"eta {render_polynomial(p, variables)}" for p in pres.eta]
    lines += [f"syzygy {render_polynomial(s, pres.symbol_names())}"
              for s in pres.syzygies]
    lines.append("end")
    return "\n".join(lines)


def load_presentation(text: str, variables: Sequence[str],
                      generators: list[Matrix] | None = None) -> InvariantPresentation:
    """Parse the presentation file format; always re-verifies the data."""
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("presentation"):
        raise ValueError("expected 'presentation nvars=<n>' header")
    nvars = int(dict(kv.split("=") for kv in lines[0].split()[1:])["nvars"])
    if len(variables) != nvars:
        raise ValueError("variable list does not match header")
    theta, eta, syz_raw = [], [], []
    for ln in lines[1:]:
        if ln == "end":
            break
        tag, body = ln.split(None, 1)
        if tag == "theta":
            theta.append(parse_polynomial(body, variables))
        elif tag == "eta":
            eta.append(parse_polynomial(body, variables))
        elif tag == "syzygy":
            syz_raw.append(body)
        else:
            raise ValueError(f"unknown line tag {tag!r}")
    pres = InvariantPresentation(nvars, theta, eta, [], generators or [])
    pres.syzygies = [parse_polynomial(b, pres.symbol_names()) for b in syz_raw]
    pres.verify()
    return pres
