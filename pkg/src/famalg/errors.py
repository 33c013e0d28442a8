"""Exception hierarchy shared by every module."""


class FamalgError(Exception):
    pass


class FieldMismatch(FamalgError, TypeError):
    pass


class SemigroupError(FamalgError, ValueError):
    pass


class AssociativityViolation(SemigroupError):
    def __init__(self, a, b, c):
        self.a, self.b, self.c = a, b, c
        super().__init__(f"table is not associative at ({a}, {b}, {c})")


class CommutativityViolation(SemigroupError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"table is not commutative at ({a}, {b})")


class IndexOutOfRange(FamalgError, ValueError):
    pass


class ArityMismatch(FamalgError, ValueError):
    pass


class DimensionMismatch(FamalgError, ValueError):
    pass


class MissingProduct(FamalgError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownIdentity(FamalgError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class IndependenceViolation(FamalgError, ValueError):
    def __init__(self, product, indices):
        self.product, self.indices = product, tuple(indices)
        super().__init__(f"product {product!r} depends on the fixed slot at indices {self.indices}")


class AlgebraSyntaxError(FamalgError, ValueError):
    def __init__(self, msg, lineno=None, colno=None):
        self.lineno, self.colno = lineno, colno
        where = f" (line {lineno}, column {colno})" if lineno is not None else ""
        super().__init__(msg + where)


class SemanticError(FamalgError, ValueError):
    pass


class BudgetExhausted(FamalgError, RuntimeError):
    def __init__(self, tried):
        self.tried = tried
        super().__init__(f"no witness found after {tried} candidates")


class StateSpaceTooLarge(FamalgError, ValueError):
    pass


class OrderTooLarge(FamalgError, ValueError):
    pass


class CentralityNotSatisfied(FamalgError, ValueError):
    pass
