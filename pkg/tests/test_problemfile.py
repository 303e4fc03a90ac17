"""Problem-file parsing: happy paths and error reporting."""

from fractions import Fraction

import pytest

import weilnear as wn
from weilnear import APoly, ParseError, Poly, ProblemError, StructureError
from weilnear.parsing import ExprContext, as_base_poly, eval_expression
from weilnear.problemfile import load_problem_text

F = Fraction

LCS_TEXT = """
# comment line
algebra = truncated { generators = [eps], relations = [eps^2] }
n = 2
seed = 9
samples = 12
poly f = x^2*y - 3/2*x
apoly F = eps*x1^2 + x2
diffop X = { Z = [1 + x, y^2], mu = eps*x }
structure = lcs {
  alpha = form1 { (1): 1 },
  omega = form2 { (1,2): 1 }
}
checks = [prop1, lie-rinehart, jacobi-axioms, prolongation]
"""


def test_parse_lcs_file():
    pf = load_problem_text(LCS_TEXT)
    assert pf.algebra.dim == 2
    assert pf.n == 2 and pf.seed == 9 and pf.samples == 12
    assert str(pf.polys["f"]) == "x1^2*x2 - 3/2*x1"
    assert pf.apolys["F"].terms
    assert pf.diffops["X"].multiplier == (
        APoly.coordinate(pf.algebra, 2, 1) * pf.algebra.by_label("eps"))
    assert pf.structure_kind == "lcs"
    assert pf.lcs is not None and pf.lcs.alpha_closed
    assert pf.checks == ["prop1", "lie-rinehart", "jacobi-axioms",
                         "prolongation"]


def test_parse_table_algebra():
    text = """
algebra = table {
  dim = 3
  labels = [1, e, e2]
  constants = [
    [[1,0,0],[0,1,0],[0,0,1]],
    [[0,1,0],[0,0,1],[0,0,0]],
    [[0,0,1],[0,0,0],[0,0,0]]
  ]
}
n = 1
"""
    pf = load_problem_text(text)
    assert pf.algebra.height == 2
    e = pf.algebra.by_label("e")
    assert e * e == pf.algebra.by_label("e2")


def test_parse_jacobi_structure():
    text = """
algebra = truncated { generators = [t], relations = [t^3] }
n = 2
structure = jacobi { Lambda = [[0, 1 + x], [-1 - x, 0]], E = [0, 1/2] }
"""
    pf = load_problem_text(text)
    assert pf.structure_kind == "jacobi"
    assert pf.jacobi_data.lam[0][1] == Poly.one(2) + Poly.variable(2, 1)
    assert pf.jacobi_data.e[1] == Poly.constant(2, F(1, 2))


def test_rational_literal_in_expression():
    pf = load_problem_text("algebra = truncated { generators = [e], "
                           "relations = [e^2] }\nn = 1\npoly f = 3/2*x1")
    assert pf.polys["f"] == Poly.variable(1, 1) * F(3, 2)


def test_zero_denominator_rejected():
    with pytest.raises(ParseError, match="division by zero"):
        load_problem_text("algebra = truncated { generators = [e], "
                          "relations = [e^2] }\nn = 1\npoly f = 3/0*x1")


def test_unknown_name_rejected():
    with pytest.raises(ParseError, match="unknown name"):
        load_problem_text("algebra = truncated { generators = [e], "
                          "relations = [e^2] }\nn = 1\npoly f = q + 1")


def test_apoly_label_out_of_scope():
    # base polynomials cannot use algebra labels
    with pytest.raises(ParseError, match="base-level"):
        load_problem_text("algebra = truncated { generators = [e], "
                          "relations = [e^2] }\nn = 1\npoly f = e*x1")


def test_missing_algebra_rejected():
    with pytest.raises(ProblemError, match="no algebra"):
        load_problem_text("n = 2\npoly f = x")


def test_name_collision_rejected():
    with pytest.raises(ParseError, match="collides"):
        load_problem_text("algebra = truncated { generators = [e], "
                          "relations = [e^2] }\nn = 2\npoly x = x1")


def test_wrong_component_count():
    with pytest.raises(ProblemError, match="components"):
        load_problem_text("algebra = truncated { generators = [e], "
                          "relations = [e^2] }\nn = 2\n"
                          "diffop X = { Z = [1], mu = 0 }")


def test_lcs_compatibility_error_in_dim4():
    text = """
algebra = truncated { generators = [e], relations = [e^2] }
n = 4
structure = lcs {
  alpha = form1 { },
  omega = form2 { (1,2): 1, (3,4): x1 }
}
"""
    with pytest.raises(StructureError, match="compatibility"):
        load_problem_text(text)


def test_expression_power_A():
    pf = load_problem_text(LCS_TEXT)
    ctx = pf.expr_context()
    value = eval_expression("f^A", ctx, want="apoly")
    assert value == wn.prolong(pf.polys["f"], pf.algebra)
    assert as_base_poly(value) == pf.polys["f"]
    mixed = eval_expression("eps*x + F", ctx, want="apoly")
    assert as_base_poly(mixed) is None


def test_expression_double_lift_rejected():
    pf = load_problem_text(LCS_TEXT)
    with pytest.raises(ParseError, match="already A-valued"):
        eval_expression("F^A", pf.expr_context(), want="apoly")


def test_variable_aliases():
    ctx = ExprContext(3, wn.dual_numbers())
    assert eval_expression("z", ctx, want="poly") == Poly.variable(3, 3)
    assert eval_expression("x2", ctx, want="poly") == Poly.variable(3, 2)


def test_alias_shadowed_by_label():
    # 2-jet generators named x, y shadow the coordinate aliases
    alg = wn.truncated_algebra(["x", "y"], ["x^2", "x*y", "y^2"])
    ctx = ExprContext(2, alg)
    value = eval_expression("x", ctx, want="apoly")
    assert value == APoly.constant(alg, 2, alg.by_label("x"))
    coord = eval_expression("x1", ctx, want="apoly")
    assert coord == APoly.coordinate(alg, 2, 1)
