"""Exception types shared across the package."""


class WeilnearError(Exception):
    """Base class for all library errors."""


class AlgebraError(WeilnearError):
    """An algebra table violates a ring axiom or is not local.

    ``witness`` names the offending basis triple/pair when there is one.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MismatchError(WeilnearError):
    """Operands live over different algebras or coordinate dimensions."""


class NotInvertibleError(WeilnearError):
    """Element lies in the maximal ideal, or a matrix has singular image."""


class DegenerateFormError(WeilnearError):
    """A 2-form is degenerate where a Hamiltonian solve needs it invertible."""


class StructureError(WeilnearError):
    """Input structure data violates one of its required exact identities."""


class ParseError(WeilnearError):
    """Problem-file or expression syntax error, with position info."""

    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class ProblemError(WeilnearError):
    """Semantic error in a problem file (unresolved name, bad section...)."""
