"""Problem files: a declarative text format binding an algebra, a manifold
dimension, named entities, one structure section and a check list.

    algebra = truncated { generators = [eps], relations = [eps^2] }
    n = 2
    seed = 42
    samples = 100
    poly f = x^2*y - 3/2*x
    apoly F = eps*x1^2 + y
    diffop X = { Z = [1 + x, y^2], mu = eps*x }
    structure = lcs { alpha = form1 { (1): 1 }, omega = form2 { (1,2): 1 } }
    checks = [prop1, lie-rinehart, jacobi-axioms, prolongation]

Rationals are written p/q; commas between fields are optional where the
grammar is unambiguous.  Algebra tables are given as nested constant
lists: constants[i][j][k] is the coefficient of basis k in e_i * e_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ParseError, ProblemError
from .forms import RForm
from .jacobi import JacobiData, LcsData
from .ops import DiffOp
from .parsing import (ExprContext, TokenStream, Token, coerce_value,
                      parse_expression, tokenize)
from .poly import APoly, Poly
from .weil import WeilAlgebra, truncated_algebra

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 100


@dataclass
class ProblemFile:
    path: str
    algebra: WeilAlgebra
    n: int
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    polys: dict = field(default_factory=dict)
    apolys: dict = field(default_factory=dict)
    diffops: dict = field(default_factory=dict)
    structure_kind: Optional[str] = None
    lcs: Optional[LcsData] = None
    jacobi_data: Optional[JacobiData] = None
    checks: list = field(default_factory=list)

    def expr_context(self) -> ExprContext:
        names = {}
        names.update(self.polys)
        names.update(self.apolys)
        return ExprContext(self.n, self.algebra, names)


class _FileParser:
    def __init__(self, text: str, path: str):
        self.ts = TokenStream(tokenize(text))
        self.path = path
        self.algebra: Optional[WeilAlgebra] = None
        self.n: Optional[int] = None
        self.seed = DEFAULT_SEED
        self.samples = DEFAULT_SAMPLES
        self.polys: dict = {}
        self.apolys: dict = {}
        self.diffops: dict = {}
        self.structure_kind: Optional[str] = None
        self.structure_body: Optional[dict] = None
        self.checks: list = []

    # -- helpers ---------------------------------------------------------------

    def ctx(self) -> ExprContext:
        if self.n is None:
            raise ProblemError("set n before defining polynomials or structures")
        names = {}
        names.update(self.polys)
        names.update(self.apolys)
        return ExprContext(self.n, self.algebra, names)

    def _expr(self, want: str):
        value = parse_expression(self.ts, self.ctx())
        return coerce_value(value, self.ctx(), want)

    def _check_name_free(self, name: str, tok: Token):
        taken = set(self.polys) | set(self.apolys) | set(self.diffops)
        if self.algebra is not None:
            taken |= set(self.algebra.labels)
        if name in taken or name in ("x", "y", "z") or (
                name.startswith("x") and name[1:].isdigit()):
            raise ParseError(f"name {name!r} collides with an existing name, "
                             f"label or coordinate", tok.line, tok.col)

    # -- grammar ----------------------------------------------------------------

    def parse(self) -> ProblemFile:
        while not self.ts.at_end():
            tok = self.ts.expect_ident()
            handler = getattr(self, f"_stmt_{tok.value}", None)
            if handler is None:
                raise ParseError(f"unknown statement {tok.value!r}",
                                 tok.line, tok.col)
            handler()
        if self.algebra is None:
            raise ProblemError("problem file defines no algebra")
        if self.n is None:
            raise ProblemError("problem file defines no manifold dimension n")
        pf = ProblemFile(
            path=self.path, algebra=self.algebra, n=self.n, seed=self.seed,
            samples=self.samples, polys=self.polys, apolys=self.apolys,
            diffops=self.diffops, checks=self.checks,
            structure_kind=self.structure_kind,
        )
        if self.structure_kind == "lcs":
            pf.lcs = LcsData(self.n, self.structure_body["alpha"],
                             self.structure_body["omega"], self.algebra)
        elif self.structure_kind == "jacobi":
            pf.jacobi_data = JacobiData(self.n, self.structure_body["Lambda"],
                                        self.structure_body["E"])
        return pf

    def _stmt_algebra(self):
        self.ts.expect_sym("=")
        kind = self.ts.expect_ident()
        if kind.value == "truncated":
            self.algebra = self._parse_truncated()
        elif kind.value == "table":
            self.algebra = self._parse_table()
        else:
            raise ParseError(f"unknown algebra kind {kind.value!r}",
                             kind.line, kind.col)

    def _parse_truncated(self) -> WeilAlgebra:
        self.ts.expect_sym("{")
        generators: list = []
        relations: list = []
        degree_cap = None
        while not self.ts.accept_sym("}"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("}"):
                break
            key = self.ts.expect_ident()
            self.ts.expect_sym("=")
            if key.value == "generators":
                generators = self._ident_list()
            elif key.value == "relations":
                relations = self._monomial_list()
            elif key.value == "degree_cap":
                degree_cap = self.ts.expect_int().value
            else:
                raise ParseError(f"unknown field {key.value!r} in truncated algebra",
                                 key.line, key.col)
        return truncated_algebra(generators, relations, degree_cap)

    def _ident_list(self) -> list:
        self.ts.expect_sym("[")
        out = []
        while not self.ts.accept_sym("]"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("]"):
                break
            out.append(self.ts.expect_ident().value)
        return out

    def _monomial_list(self) -> list:
        """Monomials like eps^2 or x*y, kept as strings for the constructor."""
        self.ts.expect_sym("[")
        out = []
        while not self.ts.accept_sym("]"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("]"):
                break
            parts = [self.ts.expect_ident().value]
            while True:
                if self.ts.accept_sym("^"):
                    parts.append(f"^{self.ts.expect_int().value}")
                elif self.ts.accept_sym("*"):
                    parts.append(f"*{self.ts.expect_ident().value}")
                else:
                    break
            out.append("".join(parts))
        return out

    def _parse_table(self) -> WeilAlgebra:
        self.ts.expect_sym("{")
        labels = None
        constants = None
        dim = None
        while not self.ts.accept_sym("}"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("}"):
                break
            key = self.ts.expect_ident()
            self.ts.expect_sym("=")
            if key.value == "labels":
                labels = self._label_list()
            elif key.value == "dim":
                dim = self.ts.expect_int().value
            elif key.value == "constants":
                constants = self._nested_rationals(depth=3)
            else:
                raise ParseError(f"unknown field {key.value!r} in algebra table",
                                 key.line, key.col)
        if labels is None or constants is None:
            raise ProblemError("algebra table needs labels and constants")
        if dim is not None and dim != len(labels):
            raise ProblemError(f"declared dim {dim} != number of labels {len(labels)}")
        return WeilAlgebra.from_table(labels, constants)

    def _label_list(self) -> list:
        self.ts.expect_sym("[")
        out = []
        while not self.ts.accept_sym("]"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("]"):
                break
            tok = self.ts.next()
            if tok.kind == "IDENT":
                out.append(tok.value)
            elif tok.kind == "INT" and tok.value == 1:
                out.append("1")
            else:
                raise ParseError(f"bad basis label {tok.value!r}",
                                 tok.line, tok.col)
        return out

    def _rational(self) -> Fraction:
        neg = False
        while True:
            if self.ts.accept_sym("-"):
                neg = not neg
            elif self.ts.accept_sym("+"):
                pass
            else:
                break
        num = self.ts.expect_int().value
        value = Fraction(num)
        if self.ts.accept_sym("/"):
            den = self.ts.expect_int()
            if den.value == 0:
                raise ParseError("division by zero in rational literal",
                                 den.line, den.col)
            value = Fraction(num, den.value)
        return -value if neg else value

    def _nested_rationals(self, depth: int):
        self.ts.expect_sym("[")
        out = []
        while not self.ts.accept_sym("]"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("]"):
                break
            if depth > 1:
                out.append(self._nested_rationals(depth - 1))
            else:
                out.append(self._rational())
        return out

    def _stmt_n(self):
        self.ts.expect_sym("=")
        self.n = self.ts.expect_int().value
        if self.n < 1:
            raise ProblemError("manifold dimension n must be positive")

    def _stmt_seed(self):
        self.ts.expect_sym("=")
        neg = self.ts.accept_sym("-")
        value = self.ts.expect_int().value
        self.seed = -value if neg else value

    def _stmt_samples(self):
        self.ts.expect_sym("=")
        self.samples = self.ts.expect_int().value

    def _stmt_poly(self):
        name = self.ts.expect_ident()
        self._check_name_free(name.value, name)
        self.ts.expect_sym("=")
        self.polys[name.value] = self._expr("poly")

    def _stmt_apoly(self):
        if self.algebra is None:
            raise ProblemError("define the algebra before apoly entries")
        name = self.ts.expect_ident()
        self._check_name_free(name.value, name)
        self.ts.expect_sym("=")
        self.apolys[name.value] = self._expr("apoly")

    def _stmt_diffop(self):
        if self.algebra is None:
            raise ProblemError("define the algebra before diffop entries")
        name = self.ts.expect_ident()
        self._check_name_free(name.value, name)
        self.ts.expect_sym("=")
        self.ts.expect_sym("{")
        components = None
        mu = None
        while not self.ts.accept_sym("}"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("}"):
                break
            key = self.ts.expect_ident()
            self.ts.expect_sym("=")
            if key.value == "Z":
                self.ts.expect_sym("[")
                components = []
                while not self.ts.accept_sym("]"):
                    self.ts.accept_sym(",")
                    if self.ts.accept_sym("]"):
                        break
                    components.append(self._expr("apoly"))
            elif key.value == "mu":
                mu = self._expr("apoly")
            else:
                raise ParseError(f"unknown field {key.value!r} in diffop",
                                 key.line, key.col)
        if components is None:
            raise ProblemError(f"diffop {name.value!r} needs a Z component list")
        if mu is None:
            mu = APoly.zero(self.algebra, self.n)
        if len(components) != self.n:
            raise ProblemError(
                f"diffop {name.value!r} has {len(components)} components, "
                f"expected n = {self.n}")
        self.diffops[name.value] = DiffOp(components, mu)

    def _stmt_structure(self):
        if self.algebra is None or self.n is None:
            raise ProblemError("define algebra and n before the structure section")
        self.ts.expect_sym("=")
        kind = self.ts.expect_ident()
        if kind.value == "lcs":
            self.structure_kind = "lcs"
            self.structure_body = self._parse_lcs_body()
        elif kind.value == "jacobi":
            self.structure_kind = "jacobi"
            self.structure_body = self._parse_jacobi_body()
        else:
            raise ParseError(f"unknown structure kind {kind.value!r}",
                             kind.line, kind.col)

    def _parse_lcs_body(self) -> dict:
        self.ts.expect_sym("{")
        alpha = None
        omega = None
        while not self.ts.accept_sym("}"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("}"):
                break
            key = self.ts.expect_ident()
            self.ts.expect_sym("=")
            if key.value == "alpha":
                alpha = self._parse_form(expected_degree=1)
            elif key.value == "omega":
                omega = self._parse_form(expected_degree=2)
            else:
                raise ParseError(f"unknown field {key.value!r} in lcs structure",
                                 key.line, key.col)
        if alpha is None or omega is None:
            raise ProblemError("lcs structure needs alpha and omega")
        return {"alpha": alpha, "omega": omega}

    def _parse_form(self, expected_degree: int) -> RForm:
        kind = self.ts.expect_ident()
        if kind.value not in ("form1", "form2"):
            raise ParseError(f"expected form1 or form2, found {kind.value!r}",
                             kind.line, kind.col)
        degree = 1 if kind.value == "form1" else 2
        if degree != expected_degree:
            raise ParseError(f"expected a degree-{expected_degree} form here",
                             kind.line, kind.col)
        self.ts.expect_sym("{")
        coeffs = {}
        while not self.ts.accept_sym("}"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("}"):
                break
            self.ts.expect_sym("(")
            indices = [self.ts.expect_int().value]
            while self.ts.accept_sym(","):
                indices.append(self.ts.expect_int().value)
            self.ts.expect_sym(")")
            self.ts.expect_sym(":")
            coeff = self._expr("poly")
            key = tuple(indices)
            if len(key) != degree:
                raise ProblemError(f"form key {key} has wrong arity for "
                                   f"degree {degree}")
            if key in coeffs:
                raise ProblemError(f"duplicate form key {key}")
            coeffs[key] = coeff
        return RForm(self.n, degree, coeffs)

    def _parse_jacobi_body(self) -> dict:
        self.ts.expect_sym("{")
        lam = None
        e = None
        while not self.ts.accept_sym("}"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("}"):
                break
            key = self.ts.expect_ident()
            self.ts.expect_sym("=")
            if key.value == "Lambda":
                self.ts.expect_sym("[")
                lam = []
                while not self.ts.accept_sym("]"):
                    self.ts.accept_sym(",")
                    if self.ts.accept_sym("]"):
                        break
                    row = []
                    self.ts.expect_sym("[")
                    while not self.ts.accept_sym("]"):
                        self.ts.accept_sym(",")
                        if self.ts.accept_sym("]"):
                            break
                        row.append(self._expr("poly"))
                    lam.append(row)
            elif key.value == "E":
                self.ts.expect_sym("[")
                e = []
                while not self.ts.accept_sym("]"):
                    self.ts.accept_sym(",")
                    if self.ts.accept_sym("]"):
                        break
                    e.append(self._expr("poly"))
            else:
                raise ParseError(f"unknown field {key.value!r} in jacobi structure",
                                 key.line, key.col)
        if lam is None or e is None:
            raise ProblemError("jacobi structure needs Lambda and E")
        return {"Lambda": lam, "E": e}

    def _stmt_checks(self):
        self.ts.expect_sym("=")
        self.ts.expect_sym("[")
        out = []
        while not self.ts.accept_sym("]"):
            self.ts.accept_sym(",")
            if self.ts.accept_sym("]"):
                break
            name = [self.ts.expect_ident().value]
            while self.ts.accept_sym("-"):
                name.append(self.ts.expect_ident().value)
            out.append("-".join(name))
        self.checks = out


def load_problem(path: str) -> ProblemFile:
    """Parse and build a problem file; raises typed errors on any defect."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return _FileParser(text, path).parse()


def load_problem_text(text: str, path: str = "<string>") -> ProblemFile:
    return _FileParser(text, path).parse()
