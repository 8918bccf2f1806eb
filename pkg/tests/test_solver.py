from fractions import Fraction

import numpy as np
import pytest

from symsos.poly import parse_polynomial
from symsos.sdp import BlockSDP, BlockSpec, LinearConstraint, assemble_gram
from symsos.solver import polish_solution, solve


def mat_coeffs(bi, mat, n):
    out = {}
    for r in range(n):
        out[("blk", bi, r, r)] = Fraction(mat[r, r])
        for c in range(r + 1, n):
            out[("blk", bi, r, c)] = Fraction(2 * mat[r, c])
    return out


class TestBasics:
    def test_pinned_scalar(self):
        sdp = BlockSDP([BlockSpec("b", 1, 1)], [], {("blk", 0, 0, 0): Fraction(1)},
                       [LinearConstraint({("blk", 0, 0, 0): Fraction(1)},
                                         Fraction(3))])
        sol = solve(sdp)
        assert sol.ok and abs(sol.objective - 3) < 1e-7

    def test_unconstrained_trace_min_is_cone_vertex(self):
        sdp = BlockSDP([BlockSpec("b", 3, 1)], [],
                       {("blk", 0, i, i): Fraction(1) for i in range(3)}, [])
        sol = solve(sdp)
        assert sol.ok and abs(sol.objective) < 1e-9
        assert np.allclose(sol.blocks[0], 0)

    def test_unbounded_cost_detected(self):
        sdp = BlockSDP([BlockSpec("b", 1, 1)], ["u"],
                       {("free", "u"): Fraction(1)}, [])
        assert solve(sdp).status == "unbounded"

    def test_infeasible_diagonal(self):
        sdp = BlockSDP([BlockSpec("b", 1, 1)], [], {},
                       [LinearConstraint({("blk", 0, 0, 0): Fraction(1)},
                                         Fraction(-1))])
        assert solve(sdp).status in ("infeasible-suspect", "max-iterations")

    def test_exactly_contradictory_equations(self):
        sdp = BlockSDP([BlockSpec("b", 1, 1)], [], {},
                       [LinearConstraint({("blk", 0, 0, 0): Fraction(1)}, Fraction(1)),
                        LinearConstraint({("blk", 0, 0, 0): Fraction(1)}, Fraction(2))])
        assert solve(sdp).status == "infeasible-suspect"


class TestConstructedOptimum:
    @pytest.mark.parametrize("seed", [7, 19, 23])
    def test_recovers_known_value(self, seed):
        rng = np.random.default_rng(seed)
        n, m = 6, 4
        q, _ = np.linalg.qr(rng.normal(size=(n, n)))
        u, v = q[:, :3], q[:, 3:]
        xstar = u @ np.diag([1.0, 2.0, 0.5]) @ u.T
        zstar = v @ np.diag([1.5, 0.7, 2.2]) @ v.T
        amats = []
        for _ in range(m):
            a = rng.normal(size=(n, n))
            amats.append((a + a.T) / 2)
        ystar = rng.normal(size=m)
        cmat = zstar + sum(ystar[j] * amats[j] for j in range(m))
        cons = [LinearConstraint(mat_coeffs(0, amats[j], n),
                                 Fraction(float(np.tensordot(amats[j], xstar))))
                for j in range(m)]
        sdp = BlockSDP([BlockSpec("b", n, 1)], [], mat_coeffs(0, cmat, n), cons)
        sol = solve(sdp)
        expect = float(np.tensordot(cmat, xstar))
        assert sol.ok
        assert abs(sol.objective - expect) < 1e-6 * (1 + abs(expect))

    def test_soundness_on_optimal_exit(self):
        f = parse_polynomial("x^4+y^4+z^4-4*x*y*z+x+y+z", ["x", "y", "z"])
        sdp = assemble_gram(f, with_lambda=True)
        tol = 1e-8
        sol = solve(sdp, tol=tol)
        assert sol.ok
        for blk in sol.blocks:
            assert np.linalg.eigvalsh((blk + blk.T) / 2)[0] >= -10 * tol
        assert sol.primal_residual <= 10 * tol


class TestPolish:
    def test_degenerate_boundary_instance_reaches_high_accuracy(self):
        f = parse_polynomial(
            "x^6+y^6-x^4*y^2-x^2*y^4-x^4-y^4-x^2-y^2+3*x^2*y^2+1", ["x", "y"])
        sdp = assemble_gram(f, with_lambda=True)
        sol = solve(sdp)
        polished = polish_solution(sdp, sol)
        assert abs(polished.free_values["lambda"] + 3825 / 4096) < 1e-6
        for blk in polished.blocks:
            assert np.linalg.eigvalsh((blk + blk.T) / 2)[0] >= -1e-12

    def test_polish_keeps_well_posed_solutions(self):
        f = parse_polynomial("x^4 + 2*x^2 + 3", ["x"])
        sdp = assemble_gram(f, with_lambda=True)
        sol = solve(sdp)
        polished = polish_solution(sdp, sol)
        assert abs(polished.free_values["lambda"] - sol.free_values["lambda"]) < 1e-5
