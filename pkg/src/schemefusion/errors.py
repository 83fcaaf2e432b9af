"""Exception hierarchy shared by all modules."""


class SchemeError(Exception):
    """Base class for every error raised by this package."""


class InputError(SchemeError):
    """Malformed user input (files, partitions, parameters)."""


class SingularMatrix(SchemeError):
    pass


class NonMonicOrNonIntegral(SchemeError):
    pass


class NotSymmetric(InputError):
    pass


class BadDiagonal(InputError):
    pass


class MissingClass(InputError):
    pass


class InconsistentTriple(SchemeError):
    """The table is not an association scheme: a count p^h_ij is not constant."""

    def __init__(self, h, i, j, witnesses):
        self.h, self.i, self.j = h, i, j
        self.witnesses = witnesses
        (x1, y1, c1), (x2, y2, c2) = witnesses
        super().__init__(
            f"h={h} i={i} j={j}: pair ({x1},{y1}) counts {c1}, "
            f"pair ({x2},{y2}) counts {c2}"
        )


class NonIntegralSpectrum(SchemeError):
    def __init__(self, residual, relation=None):
        from .exact import format_poly

        self.residual = residual
        self.relation = relation
        where = f" (relation {relation})" if relation is not None else ""
        super().__init__(f"residual{where}: {format_poly(residual)}")


class NoFusion(SchemeError):
    def __init__(self, group_count, expected):
        self.group_count = group_count
        self.expected = expected
        super().__init__(f"{group_count} row groups, expected {expected}")


class BadPartition(InputError):
    pass


class InternalMismatch(SchemeError):
    pass


class NotAnEdge(SchemeError):
    pass


class TooLarge(SchemeError):
    pass


class TooManyClasses(SchemeError):
    pass


class InvalidSrgParams(SchemeError):
    pass


class DegenerateDenominator(SchemeError):
    pass


class TypeMismatch(SchemeError):
    pass


class HypothesisFails(SchemeError):
    pass


class BadSize(InputError):
    pass


class NotPrime(InputError):
    pass


class BadT(InputError):
    pass


class ParseError(InputError):
    pass
