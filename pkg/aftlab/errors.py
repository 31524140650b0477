class AftlabError(Exception):
    """Base class for every error raised on purpose by aftlab."""


class ParseError(AftlabError):
    def __init__(self, line_no, line, reason):
        self.line_no = line_no
        self.line = line
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}: {line.strip()!r}")


class CategoryLawError(AftlabError):
    """A composition table breaks a category law.

    validate_category raises the first violation it finds; `violations` holds
    all of them in discovery order.
    """

    violations = ()


class AssociativityError(CategoryLawError):
    def __init__(self, h, g, f):
        self.triple = (h, g, f)
        super().__init__(f"(h.g).f != h.(g.f) for h={h}, g={g}, f={f}")


class IdentityLawError(CategoryLawError):
    def __init__(self, f, reason="identity law fails"):
        self.morphism = f
        super().__init__(f"{reason} at {f}")


class UndefinedCompositeError(CategoryLawError):
    def __init__(self, g, f):
        self.pair = (g, f)
        super().__init__(f"composite {g} . {f} is not defined")


class FunctorLawError(AftlabError):
    pass


class NaturalityError(AftlabError):
    def __init__(self, morphism, reason="naturality square does not commute"):
        self.morphism = morphism
        super().__init__(f"{reason} at {morphism}")


class PresheafLawError(AftlabError):
    pass


class ObjectNotFound(AftlabError):
    def __init__(self, obj, where=""):
        self.obj = obj
        super().__init__(f"object {obj!r} not found{' in ' + where if where else ''}")


class UnsupportedClass(AftlabError):
    def __init__(self, weight_class, operation):
        self.weight_class = weight_class
        super().__init__(f"{operation} has no semantics for weight class {weight_class}")


class UnsupportedPair(AftlabError):
    def __init__(self, psi, phi):
        self.pair = (psi, phi)
        super().__init__(f"({psi}, {phi}) is not a supported table pair")


class ShapeMismatch(AftlabError):
    pass


class HypothesisFailure(AftlabError):
    """A construction was called outside its hypotheses.

    `cell` names the 2-cell that should have been invertible, `obj` the object
    whose component is not.
    """

    def __init__(self, cell, obj):
        self.cell = cell
        self.obj = obj
        super().__init__(f"2-cell {cell} is not invertible at {obj}")


class PreconditionFailure(AftlabError):
    def __init__(self, side, diagram):
        self.side = side
        self.diagram = diagram
        super().__init__(f"{side} category lacks a colimit required by the weight class")


class NotCompleteLattice(AftlabError):
    def __init__(self, missing):
        self.missing = missing
        super().__init__(f"no join for {sorted(map(str, missing))}")


class OrderError(AftlabError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"not a partial order: {reason}")


class CorpusError(AftlabError):
    """A corpus manifest or msgpack pack is unreadable or has the wrong schema."""
